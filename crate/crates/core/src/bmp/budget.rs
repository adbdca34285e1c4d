use crate::alphabet::Symbol;
use crate::config::{Meter, Solved, SolverConfig};
use crate::embedding::DepositionSequence;
use crate::error::Result;
use crate::instance::{Instance, Probe};
use crate::par;
use crate::pbmp::{budget_depositions, ScoredDepositions};
use crate::placement::Placement;
use crate::solution::Solution;

use super::grids::GridFill;
use super::template::template_search;

/// Which branch of the budgeted solver handled an instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BudgetCase {
    /// Rejected before any search: more distinct probes than the budget
    /// allows, or (both sides large) no probe envelops the rest.
    Precheck,
    /// Both sides exceed `2o`: a majority probe fills all but the corners.
    BothLarge,
    /// One side exceeds `2o`: template search over expanded primal
    /// sequences, on the transposed instance if the rows were long.
    OneLarge { transposed: bool },
    /// Both sides at most `2o`: all placements.
    BothSmall,
}

#[derive(Clone, Debug)]
pub struct BudgetOutcome {
    pub solution: Option<Solution>,
    pub case: BudgetCase,
}

/// The probe `s` for which at most `o²` probes differ from `s`, if any.
/// Picks the most frequent probe (first in sorted order among equals), which
/// is the only candidate once `o² < |S| / 2`.
pub fn check_enveloped(instance: &Instance, o: u64) -> Option<Probe> {
    let (class, &count) = instance
        .multiplicities()
        .iter()
        .enumerate()
        .rev()
        .max_by_key(|&(_, c)| *c)?;
    let others = (instance.cell_count() - count) as u128;
    (others <= u128::from(o) * u128::from(o)).then(|| instance.distinct_probes()[class].clone())
}

/// An optimal solution if one has border length at most `o`, otherwise
/// `None`.
pub fn solve_bmp_budget(instance: &Instance, o: u64) -> Result<Option<Solution>> {
    solve_bmp_budget_with(instance, o, &SolverConfig::default()).map(|s| s.value.solution)
}

pub fn solve_bmp_budget_with(instance: &Instance, o: u64, config: &SolverConfig) -> Result<Solved<BudgetOutcome>> {
    let meter = Meter::new(config);
    let rejected = |meter: &Meter| Solved {
        value: BudgetOutcome { solution: None, case: BudgetCase::Precheck },
        stats: meter.stats(),
    };
    if instance.distinct_count() as u64 > o.saturating_add(1) {
        return Ok(rejected(&meter));
    }
    let large = |n: usize| n as u128 > 2 * u128::from(o);
    let (r_large, m_large) = (large(instance.rows()), large(instance.cols()));
    let (solution, case) = match (r_large, m_large) {
        (true, true) => {
            let Some(s) = majority(instance, o) else { return Ok(rejected(&meter)) };
            (both_large(instance, s, o, &meter)?, BudgetCase::BothLarge)
        }
        (false, true) => (one_large(instance, o, &meter)?, BudgetCase::OneLarge { transposed: false }),
        (true, false) => {
            let t = instance.transposed();
            let sol = one_large(&t, o, &meter)?;
            let sol = match sol {
                Some(s) => Some(Solution::evaluate(instance, s.placement.transposed(), s.deposition)?),
                None => None,
            };
            (sol, BudgetCase::OneLarge { transposed: true })
        }
        (false, false) => (both_small(instance, o, &meter)?, BudgetCase::BothSmall),
    };
    debug_assert!(solution.as_ref().is_none_or(|s| s.border_length <= o));
    Ok(Solved { value: BudgetOutcome { solution, case }, stats: meter.stats() })
}

/// Class of the probe held by more than half the cells, provided it also
/// envelops the instance.
fn majority(instance: &Instance, o: u64) -> Option<usize> {
    let s = check_enveloped(instance, o)?;
    let class = instance.distinct_probes().iter().position(|p| *p == s)?;
    (2 * instance.multiplicity(class) > instance.cell_count()).then_some(class)
}

fn one_large(instance: &Instance, o: u64, meter: &Meter) -> Result<Option<Solution>> {
    let depositions = budget_depositions(instance, o, meter)?;
    Ok(template_search(instance, depositions, o, meter)?.map(|t| t.solution))
}

fn both_small(instance: &Instance, o: u64, meter: &Meter) -> Result<Option<Solution>> {
    let order: Vec<usize> = (0..instance.cell_count()).collect();
    let grid = vec![0; instance.cell_count()];
    best_grid(instance, o, meter, &order, grid, instance.multiplicities().to_vec())
}

/// Non-majority probes go into the four `o × o` corner blocks; every other
/// cell holds the majority probe.
fn both_large(instance: &Instance, s: usize, o: u64, meter: &Meter) -> Result<Option<Solution>> {
    let (rows, cols) = (instance.rows(), instance.cols());
    let o = o as usize;
    let edge = |i: usize, n: usize| i < o || i >= n - o;
    let order: Vec<usize> =
        (0..rows * cols).filter(|&c| edge(c / cols, rows) && edge(c % cols, cols)).collect();
    let mut left = instance.multiplicities().to_vec();
    left[s] -= rows * cols - order.len();
    best_grid(instance, o as u64, meter, &order, vec![s; rows * cols], left)
}

/// Cheapest class grid (within `o`) among those that fill `order` from
/// `left`, scored against every expanded primal sequence.
fn best_grid(
    instance: &Instance,
    o: u64,
    meter: &Meter,
    order: &[usize],
    mut grid: Vec<usize>,
    mut left: Vec<usize>,
) -> Result<Option<Solution>> {
    let scored = ScoredDepositions::new(instance, budget_depositions(instance, o, meter)?)?;
    let mut grids = Vec::new();
    GridFill {
        rows: instance.rows(),
        cols: instance.cols(),
        order,
        max_mixed: o,
        flip_canonical_only: true,
        meter,
    }
    .run(&mut grid, &mut left, &mut |g| grids.push(g.to_vec()))?;
    meter.tick((grids.len() as u64).saturating_mul(scored.entries.len() as u64))?;
    let best: Option<(u64, Vec<Symbol>, Vec<usize>)> = par::map(grids, |g| {
        scored.best_for(instance, &g, o).map(|(cost, d)| (cost, d.to_vec(), g))
    })
    .into_iter()
    .flatten()
    .min();
    let Some((cost, d, g)) = best else { return Ok(None) };
    let solution =
        Solution::evaluate(instance, Placement::from_classes(instance, &g)?, DepositionSequence::from_symbols(d))?;
    debug_assert_eq!(solution.border_length, cost);
    Ok(Some(solution))
}
