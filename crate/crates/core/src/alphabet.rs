use std::fmt;

use crate::error::{Error, Result};

/// Character used for idle positions in embeddings and opaque mask cells.
pub const GAP: char = '-';

/// Index of a character inside its [`Alphabet`].
///
/// Symbols compare by alphabet position, so sorting symbol vectors gives the
/// lexicographic order under the alphabet's declared ordering.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(pub(crate) u8);

impl Symbol {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// An ordered set of single-character symbols.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    chars: Vec<char>,
}

impl Alphabet {
    /// Builds an alphabet keeping the given order.
    pub fn new<I: IntoIterator<Item = char>>(chars: I) -> Result<Self> {
        let mut out: Vec<char> = Vec::new();
        for ch in chars {
            if ch == GAP || ch.is_whitespace() || ch.is_control() {
                return Err(Error::InvalidSymbol(ch));
            }
            if out.contains(&ch) {
                return Err(Error::DuplicateSymbol(ch));
            }
            out.push(ch);
        }
        if out.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        if out.len() > u8::MAX as usize {
            return Err(Error::AlphabetTooLarge);
        }
        Ok(Alphabet { chars: out })
    }

    /// Collects the distinct characters in code-point order.
    pub fn sorted_from<I: IntoIterator<Item = char>>(chars: I) -> Result<Self> {
        let mut all: Vec<char> = chars.into_iter().collect();
        all.sort_unstable();
        all.dedup();
        Self::new(all)
    }

    pub fn len(&self) -> usize {
        self.chars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chars.is_empty()
    }

    pub fn chars(&self) -> &[char] {
        &self.chars
    }

    pub fn contains(&self, ch: char) -> bool {
        self.chars.contains(&ch)
    }

    pub fn symbol(&self, ch: char) -> Result<Symbol> {
        self.chars
            .iter()
            .position(|&c| c == ch)
            .map(|i| Symbol(i as u8))
            .ok_or(Error::UnknownSymbol(ch))
    }

    pub fn char_of(&self, symbol: Symbol) -> char {
        self.chars[symbol.index()]
    }

    /// All symbols in alphabet order.
    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        (0..self.chars.len()).map(|i| Symbol(i as u8))
    }

    pub fn encode(&self, text: &str) -> Result<Vec<Symbol>> {
        text.chars().map(|ch| self.symbol(ch)).collect()
    }

    pub fn decode(&self, symbols: &[Symbol]) -> String {
        symbols.iter().map(|&s| self.char_of(s)).collect()
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for ch in &self.chars {
            write!(f, "{ch}")?;
        }
        Ok(())
    }
}
