//! A small exact integer program solver for boxed variables and equality
//! constraints.
//!
//! Depth-first branch and bound over the variables in index order, trying
//! values in increasing order. Each equality keeps the range its unassigned
//! variables can still contribute, so a partial assignment is dropped as soon
//! as some equality can no longer be met. The objective is bounded the same
//! way. Visiting assignments in lexicographic order means the first optimum
//! found is the lexicographically smallest one.

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearEquality {
    pub coefficients: Vec<i64>,
    pub rhs: i64,
}

/// Minimize `objective · x` subject to `A x = b` and `lower <= x <= upper`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerProgram {
    pub num_vars: usize,
    pub equalities: Vec<LinearEquality>,
    pub lower_bounds: Vec<i64>,
    pub upper_bounds: Vec<i64>,
    pub objective: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IlpSolution {
    pub assignment: Vec<i64>,
    pub objective_value: i64,
}

impl IntegerProgram {
    /// Program over `num_vars` variables boxed in `[lower, upper]` with a zero
    /// objective and no equalities.
    pub fn boxed(num_vars: usize, lower: i64, upper: i64) -> Self {
        IntegerProgram {
            num_vars,
            equalities: Vec::new(),
            lower_bounds: vec![lower; num_vars],
            upper_bounds: vec![upper; num_vars],
            objective: vec![0; num_vars],
        }
    }

    pub fn add_equality(&mut self, coefficients: Vec<i64>, rhs: i64) {
        self.equalities.push(LinearEquality { coefficients, rhs });
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.num_vars;
        if self.lower_bounds.len() != n || self.upper_bounds.len() != n || self.objective.len() != n {
            return Err(Error::InvalidProgram("bound or objective length differs from num_vars".into()));
        }
        if self.equalities.iter().any(|e| e.coefficients.len() != n) {
            return Err(Error::InvalidProgram("equality length differs from num_vars".into()));
        }
        Ok(())
    }

    /// True when `x` satisfies every bound and equality.
    pub fn is_feasible(&self, x: &[i64]) -> bool {
        x.len() == self.num_vars
            && x.iter()
                .zip(self.lower_bounds.iter().zip(&self.upper_bounds))
                .all(|(v, (lo, hi))| lo <= v && v <= hi)
            && self.equalities.iter().all(|e| dot(&e.coefficients, x) == e.rhs)
    }

    pub fn objective_value(&self, x: &[i64]) -> i64 {
        dot(&self.objective, x)
    }
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Contribution range of `coef * x` for `x` in `[lo, hi]`.
fn term_range(coef: i64, lo: i64, hi: i64) -> (i64, i64) {
    if coef >= 0 {
        (coef * lo, coef * hi)
    } else {
        (coef * hi, coef * lo)
    }
}

/// Suffix sums of term ranges: entry `k` covers variables `k..`.
fn suffix_ranges(coefs: &[i64], lo: &[i64], hi: &[i64]) -> Vec<(i64, i64)> {
    let n = coefs.len();
    let mut out = vec![(0, 0); n + 1];
    for k in (0..n).rev() {
        let (a, b) = term_range(coefs[k], lo[k], hi[k]);
        out[k] = (out[k + 1].0 + a, out[k + 1].1 + b);
    }
    out
}

struct Search<'a> {
    program: &'a IntegerProgram,
    eq_suffix: Vec<Vec<(i64, i64)>>,
    obj_suffix: Vec<(i64, i64)>,
    x: Vec<i64>,
    eq_partial: Vec<i64>,
    best: Option<IlpSolution>,
}

impl Search<'_> {
    fn feasible_so_far(&self, k: usize) -> bool {
        self.program.equalities.iter().enumerate().all(|(e, eq)| {
            let need = eq.rhs - self.eq_partial[e];
            let (lo, hi) = self.eq_suffix[e][k];
            lo <= need && need <= hi
        })
    }

    fn run(&mut self, k: usize, obj_partial: i64) {
        if let Some(best) = &self.best {
            if obj_partial + self.obj_suffix[k].0 >= best.objective_value {
                return;
            }
        }
        if !self.feasible_so_far(k) {
            return;
        }
        if k == self.program.num_vars {
            self.best = Some(IlpSolution { assignment: self.x.clone(), objective_value: obj_partial });
            return;
        }
        let p = self.program;
        for v in p.lower_bounds[k]..=p.upper_bounds[k] {
            self.x[k] = v;
            for (e, eq) in p.equalities.iter().enumerate() {
                self.eq_partial[e] += eq.coefficients[k] * v;
            }
            self.run(k + 1, obj_partial + p.objective[k] * v);
            for (e, eq) in p.equalities.iter().enumerate() {
                self.eq_partial[e] -= eq.coefficients[k] * v;
            }
        }
    }
}

/// Returns a feasible assignment minimizing the objective (lexicographically
/// smallest among optima), or `None` if the program is infeasible.
pub fn solve_min(program: &IntegerProgram) -> Result<Option<IlpSolution>> {
    program.validate()?;
    let (lo, hi) = (&program.lower_bounds, &program.upper_bounds);
    if lo.iter().zip(hi).any(|(l, h)| l > h) {
        return Ok(None);
    }
    let mut search = Search {
        program,
        eq_suffix: program.equalities.iter().map(|e| suffix_ranges(&e.coefficients, lo, hi)).collect(),
        obj_suffix: suffix_ranges(&program.objective, lo, hi),
        x: lo.clone(),
        eq_partial: vec![0; program.equalities.len()],
        best: None,
    };
    search.run(0, 0);
    if let Some(sol) = &search.best {
        debug_assert!(program.is_feasible(&sol.assignment));
    }
    Ok(search.best)
}
