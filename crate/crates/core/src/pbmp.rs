//! Exact solvers for the placement-given problem.

use crate::alphabet::Symbol;
use crate::config::{Meter, SharedBound, Solved, SolverConfig};
use crate::cost::{compute_bl, CostMethod, DistanceTable};
use crate::embedding::DepositionSequence;
use crate::enumeration::{enumerate_good_depositions, expanded_primals, FrontierState};
use crate::error::Result;
use crate::instance::Instance;
use crate::par;
use crate::placement::Placement;
use crate::solution::Solution;

/// Number of top-level subtrees the search tries to split into before
/// handing them to workers.
const SPLIT_TARGET: usize = 64;

/// Neighbor-pair counts between distinct probe classes under a class grid.
/// Pairs of the same class never contribute and are left out.
pub(crate) fn class_pair_weights(instance: &Instance, classes: &[usize]) -> Vec<(usize, usize, u64)> {
    let p = instance.distinct_count();
    let mut w = vec![0u64; p * p];
    for (a, b) in instance.neighbor_pairs() {
        let (x, y) = (classes[a].min(classes[b]), classes[a].max(classes[b]));
        if x != y {
            w[x * p + y] += 1;
        }
    }
    let mut out = Vec::new();
    for x in 0..p {
        for y in (x + 1)..p {
            if w[x * p + y] > 0 {
                out.push((x, y, w[x * p + y]));
            }
        }
    }
    out
}

struct Node {
    state: FrontierState,
    prefix: Vec<Symbol>,
    cost: u64,
}

struct PbmpSearch<'a> {
    instance: &'a Instance,
    weights: Vec<(usize, usize, u64)>,
    meter: &'a Meter,
    bound: &'a SharedBound,
}

impl PbmpSearch<'_> {
    /// Border length of the mask for `x` applied at `state`, plus the state
    /// it leads to.
    fn step(&self, state: &FrontierState, x: Symbol) -> Option<(FrontierState, u64)> {
        let next = state.advance(self.instance, x)?;
        let moved = |c: usize| next.positions()[c] != state.positions()[c];
        let cost = self
            .weights
            .iter()
            .filter(|&&(a, b, _)| moved(a) != moved(b))
            .map(|&(_, _, w)| w)
            .sum();
        Some((next, cost))
    }

    fn children(&self, node: &Node) -> Vec<Node> {
        self.instance
            .alphabet()
            .symbols()
            .filter_map(|x| {
                let (state, c) = self.step(&node.state, x)?;
                let mut prefix = node.prefix.clone();
                prefix.push(x);
                Some(Node { state, prefix, cost: node.cost + c })
            })
            .collect()
    }

    /// Lexicographic depth-first search below `root`. Returns the cheapest
    /// completion, the lexicographically smallest among equals.
    fn dfs(&self, root: Node) -> Result<Option<(u64, Vec<Symbol>)>> {
        let alen = self.instance.alphabet().len();
        let mut best: Option<(u64, Vec<Symbol>)> = None;
        let mut prefix = root.prefix;
        let base = prefix.len();
        let mut stack: Vec<(FrontierState, u64, usize)> = vec![(root.state, root.cost, 0)];
        while let Some((state, cost, next_sym)) = stack.last_mut() {
            if *next_sym >= alen {
                stack.pop();
                if prefix.len() > base {
                    prefix.pop();
                }
                continue;
            }
            let x = Symbol(*next_sym as u8);
            *next_sym += 1;
            let Some((child, step)) = self.step(state, x) else { continue };
            self.meter.tick(1)?;
            let child_cost = *cost + step;
            // Strict against the shared bound so equal-cost subtrees owned by
            // other workers are still explored for the tie-break.
            if child_cost > self.bound.get() || best.as_ref().is_some_and(|(b, _)| child_cost >= *b) {
                continue;
            }
            if child.is_terminal(self.instance) {
                let mut d = prefix.clone();
                d.push(x);
                self.bound.offer(child_cost);
                best = Some((child_cost, d));
                continue;
            }
            prefix.push(x);
            stack.push((child, child_cost, 0));
        }
        Ok(best)
    }
}

/// Minimum-border-length deposition sequence for a fixed placement, found by
/// a pruned search over all good deposition sequences.
pub fn solve_pbmp(instance: &Instance, placement: &Placement) -> Result<Solution> {
    solve_pbmp_with(instance, placement, &SolverConfig::default()).map(|s| s.value)
}

pub fn solve_pbmp_with(instance: &Instance, placement: &Placement, config: &SolverConfig) -> Result<Solved<Solution>> {
    Placement::new(instance, placement.slots().to_vec())?;
    let meter = Meter::new(config);
    let bound = SharedBound::new(u64::MAX);
    let search = PbmpSearch {
        instance,
        weights: class_pair_weights(instance, &placement.class_grid(instance)),
        meter: &meter,
        bound: &bound,
    };

    // Breadth-first split of the top of the tree into independent subtrees.
    let root = Node { state: FrontierState::initial(instance), prefix: Vec::new(), cost: 0 };
    let mut frontier = vec![root];
    let mut finished: Vec<(u64, Vec<Symbol>)> = Vec::new();
    while frontier.len() < SPLIT_TARGET && !frontier.is_empty() {
        let mut next = Vec::new();
        for node in &frontier {
            for child in search.children(node) {
                meter.tick(1)?;
                if child.state.is_terminal(instance) {
                    bound.offer(child.cost);
                    finished.push((child.cost, child.prefix));
                } else {
                    next.push(child);
                }
            }
        }
        frontier = next;
    }
    meter.tick(0)?;
    meter.branch_n(frontier.len() as u64);

    let results = par::try_map(frontier, |node| search.dfs(node))?;
    let best = finished
        .into_iter()
        .chain(results.into_iter().flatten())
        .min()
        .expect("every instance has a good deposition sequence");
    let solution = Solution::evaluate(instance, placement.clone(), DepositionSequence::from_symbols(best.1))?;
    debug_assert_eq!(solution.border_length, best.0);
    Ok(Solved { value: solution, stats: meter.stats() })
}

/// Good deposition sequences whose primal sequence has length at most
/// `budget`.
pub(crate) fn budget_depositions(instance: &Instance, budget: u64, meter: &Meter) -> Result<Vec<Vec<Symbol>>> {
    // A primal character's mask has border length at least one, and the
    // primal can use at most as many characters as the probes hold.
    let max_len = usize::try_from(budget).unwrap_or(usize::MAX).min(instance.distinct_length_sum());
    expanded_primals(instance, max_len, &mut || meter.tick(1))
}

/// Distance tables for a list of deposition sequences, reused across
/// placements.
pub(crate) struct ScoredDepositions {
    pub(crate) entries: Vec<(Vec<Symbol>, DistanceTable)>,
}

impl ScoredDepositions {
    pub(crate) fn new(instance: &Instance, depositions: Vec<Vec<Symbol>>) -> Result<Self> {
        let entries = depositions
            .into_iter()
            .map(|d| DistanceTable::new(instance, &d).map(|t| (d, t)))
            .collect::<Result<_>>()?;
        Ok(ScoredDepositions { entries })
    }

    /// Cheapest `(cost, deposition)` for a class grid with cost at most
    /// `limit`; ties go to the smaller deposition.
    pub(crate) fn best_for(&self, instance: &Instance, classes: &[usize], limit: u64) -> Option<(u64, &[Symbol])> {
        let mut best: Option<(u64, &[Symbol])> = None;
        for (d, table) in &self.entries {
            let cost = table.placement_cost(instance, classes);
            if cost <= limit && best.is_none_or(|b| (cost, d.as_slice()) < b) {
                best = Some((cost, d.as_slice()));
            }
        }
        best
    }
}

/// Budgeted solver: branches over primal sequences of length at most
/// `budget`, expands each into its good deposition sequence and keeps the
/// cheapest. Returns `None` when no deposition sequence meets the budget.
pub fn solve_pbmp_budget(instance: &Instance, placement: &Placement, budget: u64) -> Result<Option<Solution>> {
    solve_pbmp_budget_with(instance, placement, budget, &SolverConfig::default()).map(|s| s.value)
}

pub fn solve_pbmp_budget_with(
    instance: &Instance,
    placement: &Placement,
    budget: u64,
    config: &SolverConfig,
) -> Result<Solved<Option<Solution>>> {
    Placement::new(instance, placement.slots().to_vec())?;
    let meter = Meter::new(config);
    // The grid is connected, so p distinct probes force at least p - 1
    // borders.
    if instance.distinct_count() as u64 > budget.saturating_add(1) {
        return Ok(Solved { value: None, stats: meter.stats() });
    }
    let depositions = budget_depositions(instance, budget, &meter)?;
    let classes = placement.class_grid(instance);
    let scored = par::try_map(depositions, |d| -> Result<(u64, Vec<Symbol>)> {
        let table = DistanceTable::new(instance, &d)?;
        Ok((table.placement_cost(instance, &classes), d))
    })?;
    meter.branch_n(scored.len() as u64);
    let best = scored.into_iter().filter(|(c, _)| *c <= budget).min();
    let value = match best {
        Some((cost, d)) => {
            let s = Solution::evaluate(instance, placement.clone(), DepositionSequence::from_symbols(d))?;
            debug_assert_eq!(s.border_length, cost);
            Some(s)
        }
        None => None,
    };
    Ok(Solved { value, stats: meter.stats() })
}

/// Reference solver: every good deposition sequence, scored by summing
/// Hamming distances over neighbor pairs. No pruning.
pub fn solve_pbmp_exhaustive(instance: &Instance, placement: &Placement) -> Result<Solution> {
    let mut best: Option<(u64, DepositionSequence)> = None;
    for d in enumerate_good_depositions(instance, instance.distinct_length_sum()) {
        let bl = compute_bl(instance, placement, &d, CostMethod::Hamming)?;
        if best.as_ref().is_none_or(|(b, _)| bl < *b) {
            best = Some((bl, d));
        }
    }
    let (border_length, deposition) = best.expect("every instance has a good deposition sequence");
    Ok(Solution { placement: placement.clone(), deposition, border_length })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn show(inst: &Instance, s: &Solution) -> (u64, String) {
        (s.border_length, s.deposition.to_string_in(inst.alphabet()))
    }

    #[test]
    fn aba_optimum() {
        let inst = Instance::from_strs(1, 3, &["a", "b", "a"]).unwrap();
        let pl = Placement::identity(&inst);
        assert_eq!(show(&inst, &solve_pbmp(&inst, &pl).unwrap()), (4, "ab".into()));
        assert_eq!(show(&inst, &solve_pbmp_budget(&inst, &pl, 4).unwrap().unwrap()), (4, "ab".into()));
        assert_eq!(solve_pbmp_budget(&inst, &pl, 3).unwrap(), None);
    }

    #[test]
    fn identical_probes() {
        let inst = Instance::from_strs(2, 2, &["CAT"; 4]).unwrap();
        let pl = Placement::identity(&inst);
        assert_eq!(show(&inst, &solve_pbmp(&inst, &pl).unwrap()), (0, "CAT".into()));
        assert_eq!(show(&inst, &solve_pbmp_budget(&inst, &pl, 0).unwrap().unwrap()), (0, "CAT".into()));
    }

    #[test]
    fn golden_2x2_optimum_matches_exhaustive() {
        let inst = Instance::from_strs(2, 2, &["CA", "CT", "TA", "AC"]).unwrap();
        let pl = Placement::identity(&inst);
        let fast = solve_pbmp(&inst, &pl).unwrap();
        let slow = solve_pbmp_exhaustive(&inst, &pl).unwrap();
        assert_eq!(fast.border_length, slow.border_length);
        assert_eq!(fast.deposition, slow.deposition);
        assert!(fast.verify(&inst).unwrap());
    }

    #[test]
    fn distinct_probe_precheck() {
        let inst = Instance::from_strs(1, 4, &["A", "B", "C", "A"]).unwrap();
        let pl = Placement::identity(&inst);
        let s = solve_pbmp_budget_with(&inst, &pl, 1, &SolverConfig::default()).unwrap();
        assert_eq!(s.value, None);
        assert_eq!(s.stats.nodes, 0);
    }

    #[test]
    fn node_budget_is_enforced() {
        let inst = Instance::from_strs(2, 3, &["ABC", "CBA", "BAC", "ACB", "CAB", "BCA"]).unwrap();
        let pl = Placement::identity(&inst);
        let cfg = SolverConfig::default().with_node_budget(10);
        assert!(matches!(solve_pbmp_with(&inst, &pl, &cfg), Err(Error::InstanceTooLarge(_))));
    }
}
