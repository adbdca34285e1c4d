use crate::alphabet::Symbol;
use crate::cost::{compute_bl, CostMethod};
use crate::embedding::DepositionSequence;
use crate::error::Result;
use crate::instance::Instance;
use crate::placement::Placement;

/// A placement, a deposition sequence and the border length they produce.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub placement: Placement,
    pub deposition: DepositionSequence,
    pub border_length: u64,
}

impl Solution {
    /// Scores `(placement, deposition)` and wraps the result.
    pub fn evaluate(instance: &Instance, placement: Placement, deposition: DepositionSequence) -> Result<Self> {
        let border_length = compute_bl(instance, &placement, &deposition, CostMethod::Fast)?;
        Ok(Solution { placement, deposition, border_length })
    }

    /// Recomputes the border length with the per-pair Hamming route and
    /// compares it with the stored value.
    pub fn verify(&self, instance: &Instance) -> Result<bool> {
        let bl = compute_bl(instance, &self.placement, &self.deposition, CostMethod::Hamming)?;
        Ok(bl == self.border_length)
    }

    /// Ordering used to break ties: border length, then deposition sequence,
    /// then the grid of probe classes.
    pub fn rank_key(&self, instance: &Instance) -> (u64, Vec<Symbol>, Vec<usize>) {
        (
            self.border_length,
            self.deposition.symbols().to_vec(),
            self.placement.class_grid(instance),
        )
    }
}
