use std::fmt::Write as _;

use crate::alphabet::{Alphabet, Symbol, GAP};
use crate::error::{Error, Result};
use crate::instance::{Instance, Probe};

/// A deposition sequence: the order in which characters are synthesized.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DepositionSequence(Vec<Symbol>);

impl DepositionSequence {
    /// Wraps `symbols` after checking it is a common supersequence of every
    /// probe in `instance`.
    pub fn new(instance: &Instance, symbols: Vec<Symbol>) -> Result<Self> {
        let d = DepositionSequence(symbols);
        for p in instance.distinct_probes() {
            if let Some(s) = d.0.iter().find(|s| s.index() >= instance.alphabet().len()) {
                return Err(Error::ForeignSymbol(s.index()));
            }
            if embed_positions(p.symbols(), &d.0).is_none() {
                return Err(Error::NotASupersequence { probe: p.to_string_in(instance.alphabet()) });
            }
        }
        Ok(d)
    }

    pub fn parse(instance: &Instance, text: &str) -> Result<Self> {
        Self::new(instance, instance.alphabet().encode(text)?)
    }

    /// No supersequence check; callers guarantee it.
    pub(crate) fn from_symbols(symbols: Vec<Symbol>) -> Self {
        DepositionSequence(symbols)
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

/// Greedy-leftmost positions of `probe` inside `deposition`, or `None` if it
/// is not a subsequence.
pub(crate) fn embed_positions(probe: &[Symbol], deposition: &[Symbol]) -> Option<Vec<usize>> {
    let mut out = Vec::with_capacity(probe.len());
    let mut next = 0;
    for &ch in probe {
        let offset = deposition[next..].iter().position(|&d| d == ch)?;
        out.push(next + offset);
        next += offset + 1;
    }
    Some(out)
}

/// The length-`|D|` trace of a probe under a deposition sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Embedding(Vec<Option<Symbol>>);

impl Embedding {
    pub fn cells(&self) -> &[Option<Symbol>] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The symbols with gaps removed.
    pub fn residue(&self) -> Vec<Symbol> {
        self.0.iter().flatten().copied().collect()
    }

    pub fn to_string_in(&self, alphabet: &Alphabet) -> String {
        let mut s = String::with_capacity(self.0.len());
        for cell in &self.0 {
            let _ = write!(s, "{}", cell.map_or(GAP, |c| alphabet.char_of(c)));
        }
        s
    }

    /// Parses the textual form, `-` being a gap.
    pub fn parse(alphabet: &Alphabet, text: &str) -> Result<Self> {
        text.chars()
            .map(|ch| if ch == GAP { Ok(None) } else { alphabet.symbol(ch).map(Some) })
            .collect::<Result<Vec<_>>>()
            .map(Embedding)
    }
}

/// Embeds `probe` into `deposition` under the exhaustive rule: each probe
/// character sits at the first matching position after the previous one.
pub fn embed(probe: &Probe, deposition: &DepositionSequence) -> Result<Embedding> {
    let positions = embed_positions(probe.symbols(), deposition.symbols()).ok_or_else(|| {
        Error::NotASupersequence { probe: format!("{:?}", probe.symbols()) }
    })?;
    let mut cells = vec![None; deposition.len()];
    for (&pos, &ch) in positions.iter().zip(probe.symbols()) {
        cells[pos] = Some(ch);
    }
    Ok(Embedding(cells))
}

/// Hamming distance between two embeddings.
pub fn border_pair(a: &Embedding, b: &Embedding) -> Result<u64> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    Ok(a.0.iter().zip(&b.0).filter(|(x, y)| x != y).count() as u64)
}
