use crate::alphabet::Symbol;
use crate::config::{Meter, SharedBound, Solved, SolverConfig};
use crate::cost::DistanceTable;
use crate::embedding::DepositionSequence;
use crate::enumeration::{column_placements, enumerate_good_depositions, ColumnPlacement};
use crate::error::Result;
use crate::ilp::{solve_min, IntegerProgram};
use crate::instance::Instance;
use crate::par;
use crate::placement::Placement;
use crate::solution::Solution;

/// Ordered distinct column types of a consecutive placement.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Template {
    pub columns: Vec<ColumnPlacement>,
}

/// How many times each template column is repeated.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiplicityFunction {
    pub counts: Vec<usize>,
}

impl Template {
    /// Row-major class grid of the placement `(h(1)·Q(1), ..., h(t)·Q(t))`.
    pub fn expand(&self, h: &MultiplicityFunction, rows: usize) -> Vec<usize> {
        let columns: Vec<&ColumnPlacement> = self
            .columns
            .iter()
            .zip(&h.counts)
            .flat_map(|(c, &n)| std::iter::repeat_n(c, n))
            .collect();
        let cols = columns.len();
        let mut grid = vec![0; rows * cols];
        for (j, col) in columns.iter().enumerate() {
            for (i, &class) in col.classes().iter().enumerate() {
                grid[i * cols + j] = class;
            }
        }
        grid
    }
}

#[derive(Clone, Debug)]
pub struct TemplateOutcome {
    pub solution: Solution,
    pub template: Template,
    pub multiplicities: MultiplicityFunction,
}

/// Optimal solution by branching on deposition sequences and templates, with
/// the multiplicities of each template chosen by an integer program.
pub fn solve_bmp_template(instance: &Instance) -> Result<TemplateOutcome> {
    solve_bmp_template_with(instance, &SolverConfig::default()).map(|s| s.value)
}

pub fn solve_bmp_template_with(instance: &Instance, config: &SolverConfig) -> Result<Solved<TemplateOutcome>> {
    let meter = Meter::new(config);
    let mut depositions = Vec::new();
    for d in enumerate_good_depositions(instance, instance.distinct_length_sum()) {
        meter.tick(1)?;
        depositions.push(d.symbols().to_vec());
    }
    let value = template_search(instance, depositions, u64::MAX, &meter)?
        .expect("an unbounded search always finds a placement");
    Ok(Solved { value, stats: meter.stats() })
}

struct Candidate {
    cost: u64,
    grid: Vec<usize>,
    template: Vec<usize>,
    counts: Vec<usize>,
}

struct PerDeposition<'a> {
    instance: &'a Instance,
    types: &'a [ColumnPlacement],
    demand: &'a [Vec<usize>],
    table: DistanceTable,
    vert: Vec<u64>,
    limit: u64,
    meter: &'a Meter,
    bound: &'a SharedBound,
}

impl PerDeposition<'_> {
    fn horizontal(&self, a: usize, b: usize) -> u64 {
        let (x, y) = (self.types[a].classes(), self.types[b].classes());
        x.iter().zip(y).map(|(&p, &q)| self.table.get(p, q)).sum()
    }

    /// Constraints: every class count is met, every multiplicity is at least
    /// one, and `cost_v` equals the summed vertical borders. The last
    /// variable is `cost_v`, the only one in the objective.
    fn program(&self, template: &[usize]) -> IntegerProgram {
        let t = template.len();
        let m = self.instance.cols() as i64;
        let max_vert = template.iter().map(|&z| self.vert[z]).max().unwrap_or(0) as i64;
        let mut p = IntegerProgram::boxed(t + 1, 1, m);
        p.lower_bounds[t] = 0;
        p.upper_bounds[t] = m * max_vert;
        p.objective[t] = 1;
        for (class, &count) in self.instance.multiplicities().iter().enumerate() {
            let mut coefficients: Vec<i64> = template.iter().map(|&z| self.demand[z][class] as i64).collect();
            coefficients.push(0);
            p.add_equality(coefficients, count as i64);
        }
        let mut coefficients: Vec<i64> = template.iter().map(|&z| -(self.vert[z] as i64)).collect();
        coefficients.push(1);
        p.add_equality(coefficients, 0);
        p
    }

    fn search(&self) -> Result<Option<Candidate>> {
        let mut best: Option<Candidate> = None;
        let mut template = Vec::new();
        let mut used = vec![false; self.types.len()];
        let mut demand = vec![0usize; self.instance.distinct_count()];
        self.rec(&mut template, &mut used, &mut demand, 0, &mut best)?;
        Ok(best)
    }

    fn rec(
        &self,
        template: &mut Vec<usize>,
        used: &mut [bool],
        demand: &mut [usize],
        cost_h: u64,
        best: &mut Option<Candidate>,
    ) -> Result<()> {
        if !template.is_empty() {
            self.meter.tick(1)?;
            self.meter.branch();
            if let Some(sol) = solve_min(&self.program(template))? {
                let t = template.len();
                let cost = cost_h + sol.assignment[t] as u64;
                let counts: Vec<usize> = sol.assignment[..t].iter().map(|&h| h as usize).collect();
                if cost <= self.limit && cost <= self.bound.get() {
                    let grid = expand(self.types, template, &counts, self.instance.rows());
                    if best.as_ref().is_none_or(|b| (cost, &grid) < (b.cost, &b.grid)) {
                        self.bound.offer(cost);
                        *best = Some(Candidate { cost, grid, template: template.clone(), counts });
                    }
                }
            }
        }
        if template.len() == self.instance.cols() {
            return Ok(());
        }
        for z in 0..self.types.len() {
            if used[z] || demand.iter().zip(&self.demand[z]).zip(self.instance.multiplicities()).any(|((d, e), m)| d + e > *m)
            {
                continue;
            }
            let step = template.last().map_or(0, |&last| self.horizontal(last, z));
            let next = cost_h + step;
            // Vertical cost is non-negative, so the horizontal part bounds
            // the total. Equal costs stay in for the tie-break.
            if next > self.limit || next > self.bound.get() || best.as_ref().is_some_and(|b| next > b.cost) {
                continue;
            }
            used[z] = true;
            template.push(z);
            for (d, e) in demand.iter_mut().zip(&self.demand[z]) {
                *d += e;
            }
            self.rec(template, used, demand, next, best)?;
            for (d, e) in demand.iter_mut().zip(&self.demand[z]) {
                *d -= e;
            }
            template.pop();
            used[z] = false;
        }
        Ok(())
    }
}

fn expand(types: &[ColumnPlacement], template: &[usize], counts: &[usize], rows: usize) -> Vec<usize> {
    Template { columns: template.iter().map(|&z| types[z].clone()).collect() }
        .expand(&MultiplicityFunction { counts: counts.to_vec() }, rows)
}

/// Best consecutive placement over the given deposition sequences with
/// border length at most `limit`. Shared by the unbudgeted solver and the
/// budgeted one, which feeds it expanded primal sequences instead.
pub(crate) fn template_search(
    instance: &Instance,
    depositions: Vec<Vec<Symbol>>,
    limit: u64,
    meter: &Meter,
) -> Result<Option<TemplateOutcome>> {
    let types = column_placements(instance);
    let demand: Vec<Vec<usize>> = types.iter().map(|t| t.demand(instance.distinct_count())).collect();
    let bound = SharedBound::new(limit);
    meter.branch_n(depositions.len() as u64);
    let results = par::try_map(depositions, |d| -> Result<Option<(u64, Vec<Symbol>, Candidate)>> {
        let table = DistanceTable::new(instance, &d)?;
        let vert = types
            .iter()
            .map(|t| t.classes().windows(2).map(|w| table.get(w[0], w[1])).sum())
            .collect();
        let search = PerDeposition {
            instance,
            types: &types,
            demand: &demand,
            table,
            vert,
            limit,
            meter,
            bound: &bound,
        };
        Ok(search.search()?.map(|c| (c.cost, d, c)))
    })?;
    let best = results
        .into_iter()
        .flatten()
        .min_by(|a, b| (a.0, &a.1, &a.2.grid).cmp(&(b.0, &b.1, &b.2.grid)));
    let Some((cost, d, cand)) = best else { return Ok(None) };
    let placement = Placement::from_classes(instance, &cand.grid)?;
    let solution = Solution::evaluate(instance, placement, DepositionSequence::from_symbols(d))?;
    debug_assert_eq!(solution.border_length, cost);
    Ok(Some(TemplateOutcome {
        solution,
        template: Template { columns: cand.template.iter().map(|&z| types[z].clone()).collect() },
        multiplicities: MultiplicityFunction { counts: cand.counts },
    }))
}
