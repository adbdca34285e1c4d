use crate::alphabet::{Alphabet, Symbol, GAP};
use crate::embedding::DepositionSequence;
use crate::error::{Error, Result};
use crate::instance::{neighbor_pairs, Instance};
use crate::placement::Placement;

/// One photolithographic mask: the cells that receive `symbol` in a step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mask {
    symbol: Symbol,
    rows: usize,
    cols: usize,
    transparent: Vec<bool>,
}

impl Mask {
    pub fn symbol(&self) -> Symbol {
        self.symbol
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_transparent(&self, row: usize, col: usize) -> bool {
        self.transparent[row * self.cols + col]
    }

    /// No opaque cell.
    pub fn is_trivial(&self) -> bool {
        self.transparent.iter().all(|&t| t)
    }

    /// No transparent cell; the step deposits nothing.
    pub fn is_empty(&self) -> bool {
        !self.transparent.iter().any(|&t| t)
    }

    /// Number of neighboring cell pairs with one transparent and one opaque
    /// cell.
    pub fn border_length(&self) -> u64 {
        neighbor_pairs(self.rows, self.cols)
            .into_iter()
            .filter(|&(a, b)| self.transparent[a] != self.transparent[b])
            .count() as u64
    }

    /// ASCII rendering, one line per row.
    pub fn render(&self, alphabet: &Alphabet) -> String {
        let ch = alphabet.char_of(self.symbol);
        let mut out = String::new();
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.push(if self.is_transparent(r, c) { ch } else { GAP });
            }
            out.push('\n');
        }
        out
    }
}

/// Masks for every step of `deposition`. Transparency is recomputed from the
/// residual probe in each cell: a cell is open exactly when its next
/// unsynthesized character is the one being deposited.
pub fn derive_masks(
    instance: &Instance,
    placement: &Placement,
    deposition: &DepositionSequence,
) -> Result<Vec<Mask>> {
    let rows = instance.rows();
    let cols = instance.cols();
    let probes: Vec<&[Symbol]> =
        placement.slots().iter().map(|&s| instance.probe(s).symbols()).collect();
    let mut cursor = vec![0usize; probes.len()];
    let mut masks = Vec::with_capacity(deposition.len());
    for &x in deposition.symbols() {
        let transparent: Vec<bool> = probes
            .iter()
            .zip(cursor.iter_mut())
            .map(|(p, k)| {
                let open = p.get(*k) == Some(&x);
                if open {
                    *k += 1;
                }
                open
            })
            .collect();
        masks.push(Mask { symbol: x, rows, cols, transparent });
    }
    if let Some(cell) = probes.iter().zip(&cursor).position(|(p, &k)| k < p.len()) {
        return Err(Error::NotASupersequence { probe: instance.probe_string(placement.slots()[cell]) });
    }
    Ok(masks)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn golden() -> (Instance, Placement, DepositionSequence) {
        let inst = Instance::from_strs(2, 2, &["CA", "CT", "TA", "AC"]).unwrap();
        let pl = Placement::identity(&inst);
        let d = DepositionSequence::parse(&inst, "CTAC").unwrap();
        (inst, pl, d)
    }

    #[test]
    fn golden_2x2_mask_borders() {
        let (inst, pl, d) = golden();
        let masks = derive_masks(&inst, &pl, &d).unwrap();
        let borders: Vec<u64> = masks.iter().map(Mask::border_length).collect();
        assert_eq!(borders, vec![2, 4, 2, 2]);
        assert_eq!(masks[1].render(inst.alphabet()), "-T\nT-\n");
    }

    #[test]
    fn single_cell_mask_is_trivial() {
        let inst = Instance::from_strs(1, 1, &["A"]).unwrap();
        let d = DepositionSequence::parse(&inst, "A").unwrap();
        let masks = derive_masks(&inst, &Placement::identity(&inst), &d).unwrap();
        assert_eq!(masks.len(), 1);
        assert!(masks[0].is_trivial());
        assert_eq!(masks[0].border_length(), 0);
    }

    #[test]
    fn aba_masks() {
        let inst = Instance::from_strs(1, 3, &["a", "b", "a"]).unwrap();
        let d = DepositionSequence::parse(&inst, "ab").unwrap();
        let masks = derive_masks(&inst, &Placement::identity(&inst), &d).unwrap();
        assert_eq!(masks[0].render(inst.alphabet()), "a-a\n");
        assert_eq!(masks[1].render(inst.alphabet()), "-b-\n");
    }

    #[test]
    fn exhaustive_maximality() {
        let (inst, pl, d) = golden();
        let masks = derive_masks(&inst, &pl, &d).unwrap();
        // Residual before step i must not start with the step's symbol at any
        // opaque cell.
        let mut cursor = [0usize; 4];
        for m in &masks {
            for cell in 0..4 {
                let p = inst.probe(pl.slots()[cell]).symbols();
                let open = m.transparent[cell];
                assert_eq!(open, p.get(cursor[cell]) == Some(&m.symbol()));
                if open {
                    cursor[cell] += 1;
                }
            }
        }
    }

    #[test]
    fn unfinished_probe_is_reported() {
        let inst = Instance::from_strs(1, 2, &["AB", "BA"]).unwrap();
        let d = DepositionSequence::from_symbols(inst.alphabet().encode("AB").unwrap());
        assert!(matches!(
            derive_masks(&inst, &Placement::identity(&inst), &d),
            Err(Error::NotASupersequence { .. })
        ));
    }
}
