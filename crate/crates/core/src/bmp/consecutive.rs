use crate::embedding::DepositionSequence;
use crate::error::Result;
use crate::instance::Instance;
use crate::placement::Placement;

fn class_columns(instance: &Instance, placement: &Placement) -> Vec<Vec<usize>> {
    (0..placement.cols())
        .map(|c| placement.column(c).into_iter().map(|s| instance.class_of(s)).collect())
        .collect()
}

/// True when equal columns (compared by probe class) form contiguous blocks.
pub fn is_consecutive(instance: &Instance, placement: &Placement) -> bool {
    find_move(&class_columns(instance, placement)).is_none()
}

/// Some `(a, b)` with `a + 1 < b`, column `a` equal to column `b` and column
/// `a + 1` different from it.
fn find_move(cols: &[Vec<usize>]) -> Option<(usize, usize)> {
    for a in 0..cols.len() {
        if a + 1 < cols.len() && cols[a + 1] == cols[a] {
            continue;
        }
        if let Some(b) = (a + 2..cols.len()).find(|&b| cols[b] == cols[a]) {
            return Some((a, b));
        }
    }
    None
}

/// Pulls every column next to the leftmost earlier copy of itself until equal
/// columns are contiguous. Each move takes column `b` out and reinserts it
/// right after its twin at `a`; the only borders that change are around the
/// two gaps, and by the triangle inequality on embeddings the border length
/// under `deposition` never grows.
///
/// `deposition` is only checked for being a supersequence; the moves do not
/// depend on it.
pub fn make_consecutive(
    instance: &Instance,
    placement: &Placement,
    deposition: &DepositionSequence,
) -> Result<Placement> {
    let placement = Placement::new(instance, placement.slots().to_vec())?;
    DepositionSequence::new(instance, deposition.symbols().to_vec())?;
    let mut cols = class_columns(instance, &placement);
    let mut slots: Vec<Vec<usize>> = (0..placement.cols()).map(|c| placement.column(c)).collect();
    while let Some((a, b)) = find_move(&cols) {
        let c = cols.remove(b);
        cols.insert(a + 1, c);
        let s = slots.remove(b);
        slots.insert(a + 1, s);
    }
    Placement::from_columns(instance, &slots)
}
