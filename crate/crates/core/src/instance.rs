use std::collections::BTreeMap;
use std::fmt;

use crate::alphabet::{Alphabet, Symbol};
use crate::error::{Error, Result};

/// A non-empty probe sequence over an alphabet.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Probe(Vec<Symbol>);

impl Probe {
    pub fn new(symbols: Vec<Symbol>) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::EmptyProbe);
        }
        Ok(Probe(symbols))
    }

    pub fn parse(alphabet: &Alphabet, text: &str) -> Result<Self> {
        Self::new(alphabet.encode(text)?)
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_string_in(&self, alphabet: &Alphabet) -> String {
        alphabet.decode(&self.0)
    }
}

/// A cell of the array, zero-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub fn new(row: usize, col: usize) -> Self {
        Cell { row, col }
    }

    pub fn is_neighbor(&self, other: &Cell) -> bool {
        self.row.abs_diff(other.row) + self.col.abs_diff(other.col) == 1
    }
}

impl fmt::Display for Cell {
    // One-based, matching how arrays are usually written down.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row + 1, self.col + 1)
    }
}

/// Unordered neighbor pairs of an `rows x cols` grid as row-major cell
/// indices, horizontal pairs first.
pub fn neighbor_pairs(rows: usize, cols: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::with_capacity(2 * rows * cols);
    for r in 0..rows {
        for c in 0..cols.saturating_sub(1) {
            pairs.push((r * cols + c, r * cols + c + 1));
        }
    }
    for r in 0..rows.saturating_sub(1) {
        for c in 0..cols {
            pairs.push((r * cols + c, (r + 1) * cols + c));
        }
    }
    pairs
}

/// A border-minimization instance: a multiset of `rows * cols` probes.
///
/// Probes are kept in input order (their index is the probe's slot id). The
/// distinct probes are sorted so that class ids follow the alphabet's
/// lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    alphabet: Alphabet,
    probes: Vec<Probe>,
    rows: usize,
    cols: usize,
    budget: Option<u64>,
    distinct: Vec<Probe>,
    class_of: Vec<usize>,
    multiplicity: Vec<usize>,
}

impl Instance {
    pub fn new(alphabet: Alphabet, probes: Vec<Probe>, rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyArray { rows, cols });
        }
        if probes.len() != rows * cols {
            return Err(Error::CountMismatch { expected: rows * cols, actual: probes.len() });
        }
        for p in &probes {
            if p.is_empty() {
                return Err(Error::EmptyProbe);
            }
            if let Some(s) = p.symbols().iter().find(|s| s.index() >= alphabet.len()) {
                return Err(Error::ForeignSymbol(s.index()));
            }
        }
        let mut counts: BTreeMap<&Probe, usize> = BTreeMap::new();
        for p in &probes {
            *counts.entry(p).or_default() += 1;
        }
        let distinct: Vec<Probe> = counts.keys().map(|p| (*p).clone()).collect();
        let multiplicity: Vec<usize> = counts.values().copied().collect();
        let class_of = probes
            .iter()
            .map(|p| distinct.binary_search(p).expect("probe is among the distinct probes"))
            .collect();
        Ok(Instance { alphabet, probes, rows, cols, budget: None, distinct, class_of, multiplicity })
    }

    /// Parses probes given as strings; the alphabet is every character that
    /// occurs, in code-point order.
    pub fn from_strs(rows: usize, cols: usize, probes: &[&str]) -> Result<Self> {
        let alphabet = Alphabet::sorted_from(probes.iter().flat_map(|p| p.chars()))?;
        Self::with_alphabet(alphabet, rows, cols, probes)
    }

    pub fn with_alphabet(alphabet: Alphabet, rows: usize, cols: usize, probes: &[&str]) -> Result<Self> {
        let probes = probes
            .iter()
            .map(|p| Probe::parse(&alphabet, p))
            .collect::<Result<Vec<_>>>()?;
        Self::new(alphabet, probes, rows, cols)
    }

    pub fn with_budget(mut self, budget: Option<u64>) -> Self {
        self.budget = budget;
        self
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn probes(&self) -> &[Probe] {
        &self.probes
    }

    pub fn probe(&self, slot: usize) -> &Probe {
        &self.probes[slot]
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn cell_count(&self) -> usize {
        self.rows * self.cols
    }

    pub fn budget(&self) -> Option<u64> {
        self.budget
    }

    /// Longest probe length (`ℓ`).
    pub fn max_probe_len(&self) -> usize {
        self.probes.iter().map(Probe::len).max().unwrap_or(0)
    }

    pub fn distinct_probes(&self) -> &[Probe] {
        &self.distinct
    }

    pub fn distinct_count(&self) -> usize {
        self.distinct.len()
    }

    /// Class (index into [`Self::distinct_probes`]) of the probe in `slot`.
    pub fn class_of(&self, slot: usize) -> usize {
        self.class_of[slot]
    }

    pub fn multiplicity(&self, class: usize) -> usize {
        self.multiplicity[class]
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicity
    }

    /// Sum of distinct probe lengths; no good deposition sequence is longer.
    pub fn distinct_length_sum(&self) -> usize {
        self.distinct.iter().map(Probe::len).sum()
    }

    pub fn neighbor_pairs(&self) -> Vec<(usize, usize)> {
        neighbor_pairs(self.rows, self.cols)
    }

    /// Same multiset on the `cols x rows` array.
    pub fn transposed(&self) -> Instance {
        let mut t = self.clone();
        std::mem::swap(&mut t.rows, &mut t.cols);
        t
    }

    pub fn probe_string(&self, slot: usize) -> String {
        self.probes[slot].to_string_in(&self.alphabet)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distinct_classes_are_sorted() {
        let inst = Instance::from_strs(2, 2, &["CT", "CA", "TA", "CA"]).unwrap();
        let names: Vec<String> =
            inst.distinct_probes().iter().map(|p| p.to_string_in(inst.alphabet())).collect();
        assert_eq!(names, ["CA", "CT", "TA"]);
        assert_eq!(inst.multiplicities(), &[2, 1, 1]);
        assert_eq!(inst.class_of(0), 1);
        assert_eq!(inst.class_of(3), 0);
    }

    #[test]
    fn count_mismatch_and_empty_probe() {
        assert_eq!(
            Instance::from_strs(2, 2, &["A", "B", "A"]),
            Err(Error::CountMismatch { expected: 4, actual: 3 })
        );
        assert_eq!(Instance::from_strs(1, 2, &["A", ""]), Err(Error::EmptyProbe));
    }

    #[test]
    fn neighbor_pair_count() {
        assert_eq!(neighbor_pairs(2, 3).len(), 2 * 2 + 3);
        assert_eq!(neighbor_pairs(1, 1).len(), 0);
        for (a, b) in neighbor_pairs(3, 4) {
            let ca = Cell::new(a / 4, a % 4);
            let cb = Cell::new(b / 4, b % 4);
            assert!(ca.is_neighbor(&cb));
        }
    }
}
