//! Border-length evaluation.
//!
//! Three independent routes compute the same number:
//! - [`CostMethod::Hamming`] sums Hamming distances between the embeddings of
//!   every pair of neighboring cells;
//! - [`CostMethod::Masks`] derives the mask of each deposition step and sums
//!   their individual border lengths;
//! - [`CostMethod::Fast`] deduplicates probes, builds a pairwise distance
//!   table over the distinct probes and accumulates it over neighbor pairs.

use crate::alphabet::Symbol;
use crate::embedding::{border_pair, embed, embed_positions, DepositionSequence, Embedding};
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::mask::derive_masks;
use crate::placement::Placement;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CostMethod {
    Hamming,
    Masks,
    Fast,
}

pub fn compute_bl(
    instance: &Instance,
    placement: &Placement,
    deposition: &DepositionSequence,
    method: CostMethod,
) -> Result<u64> {
    check_placement(instance, placement)?;
    match method {
        CostMethod::Hamming => bl_hamming(instance, placement, deposition),
        CostMethod::Masks => Ok(derive_masks(instance, placement, deposition)?
            .iter()
            .map(|m| m.border_length())
            .sum()),
        CostMethod::Fast => {
            let table = DistanceTable::new(instance, deposition.symbols())?;
            Ok(table.placement_cost(instance, &placement.class_grid(instance)))
        }
    }
}

fn check_placement(instance: &Instance, placement: &Placement) -> Result<()> {
    if placement.rows() != instance.rows() || placement.cols() != instance.cols() {
        return Err(Error::InvalidPlacement(format!(
            "placement is {}x{}, instance is {}x{}",
            placement.rows(),
            placement.cols(),
            instance.rows(),
            instance.cols()
        )));
    }
    Placement::new(instance, placement.slots().to_vec()).map(|_| ())
}

fn bl_hamming(instance: &Instance, placement: &Placement, deposition: &DepositionSequence) -> Result<u64> {
    let embeddings: Vec<Embedding> = placement
        .slots()
        .iter()
        .map(|&s| embed(instance.probe(s), deposition))
        .collect::<Result<_>>()?;
    let mut total = 0;
    for (a, b) in instance.neighbor_pairs() {
        total += border_pair(&embeddings[a], &embeddings[b])?;
    }
    Ok(total)
}

/// Pairwise border distances between the distinct probes of an instance
/// under one deposition sequence.
#[derive(Clone, Debug)]
pub(crate) struct DistanceTable {
    n: usize,
    dist: Vec<u64>,
}

impl DistanceTable {
    pub(crate) fn new(instance: &Instance, deposition: &[Symbol]) -> Result<Self> {
        let words = deposition.len().div_ceil(64).max(1);
        let mut used: Vec<Vec<u64>> = Vec::with_capacity(instance.distinct_count());
        for p in instance.distinct_probes() {
            let pos = embed_positions(p.symbols(), deposition).ok_or_else(|| Error::NotASupersequence {
                probe: p.to_string_in(instance.alphabet()),
            })?;
            let mut bits = vec![0u64; words];
            for i in pos {
                bits[i / 64] |= 1 << (i % 64);
            }
            used.push(bits);
        }
        Ok(Self::from_usage(&used))
    }

    /// Two embeddings under the same deposition differ exactly where one
    /// probe uses a position and the other does not.
    fn from_usage(used: &[Vec<u64>]) -> Self {
        let n = used.len();
        let mut dist = vec![0; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let d: u64 =
                    used[i].iter().zip(&used[j]).map(|(a, b)| (a ^ b).count_ones() as u64).sum();
                dist[i * n + j] = d;
                dist[j * n + i] = d;
            }
        }
        DistanceTable { n, dist }
    }

    pub(crate) fn get(&self, a: usize, b: usize) -> u64 {
        self.dist[a * self.n + b]
    }

    /// Border length of a class grid. Each neighbor relation is visited from
    /// both sides and the total halved.
    pub(crate) fn placement_cost(&self, instance: &Instance, classes: &[usize]) -> u64 {
        let (rows, cols) = (instance.rows(), instance.cols());
        let mut twice = 0;
        for r in 0..rows {
            for c in 0..cols {
                let here = classes[r * cols + c];
                let mut visit = |nr: usize, nc: usize| twice += self.get(here, classes[nr * cols + nc]);
                if r > 0 {
                    visit(r - 1, c);
                }
                if r + 1 < rows {
                    visit(r + 1, c);
                }
                if c > 0 {
                    visit(r, c - 1);
                }
                if c + 1 < cols {
                    visit(r, c + 1);
                }
            }
        }
        twice / 2
    }
}

/// Positions of `deposition` at which no probe receives a character.
pub fn idle_positions(instance: &Instance, deposition: &DepositionSequence) -> Result<Vec<bool>> {
    let mut idle = vec![true; deposition.len()];
    for p in instance.distinct_probes() {
        let pos = embed_positions(p.symbols(), deposition.symbols()).ok_or_else(|| {
            Error::NotASupersequence { probe: p.to_string_in(instance.alphabet()) }
        })?;
        for i in pos {
            idle[i] = false;
        }
    }
    Ok(idle)
}

/// Deletes every position at which no probe is synthesized. The border length
/// under any placement is unchanged.
pub fn strip_redundant(
    instance: &Instance,
    placement: &Placement,
    deposition: &DepositionSequence,
) -> Result<DepositionSequence> {
    check_placement(instance, placement)?;
    let idle = idle_positions(instance, deposition)?;
    let kept = deposition
        .symbols()
        .iter()
        .zip(&idle)
        .filter(|(_, &i)| !i)
        .map(|(&s, _)| s)
        .collect();
    Ok(DepositionSequence::from_symbols(kept))
}

/// True when every position deposits into at least one cell.
pub fn is_good(instance: &Instance, placement: &Placement, deposition: &DepositionSequence) -> Result<bool> {
    check_placement(instance, placement)?;
    Ok(idle_positions(instance, deposition)?.iter().all(|&i| !i))
}

/// First idle position, if any.
pub(crate) fn first_idle(instance: &Instance, deposition: &DepositionSequence) -> Result<Option<usize>> {
    Ok(idle_positions(instance, deposition)?.iter().position(|&i| i))
}
