//! Search spaces for the exact solvers: good deposition sequences, primal
//! sequences and column placements.

use crate::alphabet::{Alphabet, Symbol};
use crate::cost::first_idle;
use crate::embedding::DepositionSequence;
use crate::error::{Error, Result};
use crate::instance::{Instance, Probe};
use crate::placement::Placement;

/// How much of each distinct probe has been synthesized so far.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FrontierState {
    positions: Vec<usize>,
}

impl FrontierState {
    pub fn initial(instance: &Instance) -> Self {
        FrontierState { positions: vec![0; instance.distinct_count()] }
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn is_terminal(&self, instance: &Instance) -> bool {
        self.positions
            .iter()
            .zip(instance.distinct_probes())
            .all(|(&k, p)| k == p.len())
    }

    /// Applies `x` under the exhaustive rule. Returns `None` when no probe
    /// would receive the character.
    pub fn advance(&self, instance: &Instance, x: Symbol) -> Option<FrontierState> {
        let mut next = self.clone();
        let mut any = false;
        for (k, p) in next.positions.iter_mut().zip(instance.distinct_probes()) {
            if p.symbols().get(*k) == Some(&x) {
                *k += 1;
                any = true;
            }
        }
        any.then_some(next)
    }

    /// Longest remaining suffix; a lower bound on the steps still needed.
    pub fn remaining_lower_bound(&self, instance: &Instance) -> usize {
        self.positions
            .iter()
            .zip(instance.distinct_probes())
            .map(|(&k, p)| p.len() - k)
            .max()
            .unwrap_or(0)
    }
}

/// Lazy, lexicographically ordered stream of the good deposition sequences of
/// an instance up to a length bound.
///
/// Runs a depth-first search over [`FrontierState`]s. A character may extend
/// the current prefix only if it advances at least one distinct probe, so
/// every emitted sequence is good and every good sequence is reached. No good
/// sequence is a proper prefix of another, so preorder emission is
/// lexicographic.
pub struct GoodDepositions<'a> {
    instance: &'a Instance,
    max_len: usize,
    prefix: Vec<Symbol>,
    stack: Vec<(FrontierState, usize)>,
}

impl Iterator for GoodDepositions<'_> {
    type Item = DepositionSequence;

    fn next(&mut self) -> Option<DepositionSequence> {
        let alen = self.instance.alphabet().len();
        loop {
            let depth = self.stack.len();
            let (state, next_sym) = self.stack.last_mut()?;
            if *next_sym >= alen {
                self.stack.pop();
                if depth > 1 {
                    self.prefix.pop();
                }
                continue;
            }
            let x = Symbol(*next_sym as u8);
            *next_sym += 1;
            let Some(child) = state.advance(self.instance, x) else { continue };
            if self.prefix.len() + 1 + child.remaining_lower_bound(self.instance) > self.max_len {
                continue;
            }
            if child.is_terminal(self.instance) {
                let mut out = self.prefix.clone();
                out.push(x);
                return Some(DepositionSequence::from_symbols(out));
            }
            self.prefix.push(x);
            self.stack.push((child, 0));
        }
    }
}

pub fn enumerate_good_depositions(instance: &Instance, max_len: usize) -> GoodDepositions<'_> {
    GoodDepositions {
        instance,
        max_len,
        prefix: Vec::new(),
        stack: vec![(FrontierState::initial(instance), 0)],
    }
}

/// A deposition sequence with its trivial-mask characters removed.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrimalSequence(Vec<Symbol>);

impl PrimalSequence {
    pub fn new(symbols: Vec<Symbol>) -> Self {
        PrimalSequence(symbols)
    }

    pub fn parse(alphabet: &Alphabet, text: &str) -> Result<Self> {
        alphabet.encode(text).map(PrimalSequence)
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

/// All sequences of length `0..=max_len` over the alphabet, shortest first
/// and lexicographic within a length.
pub struct PrimalSequences {
    alphabet_len: usize,
    max_len: usize,
    current: Option<Vec<usize>>,
}

impl Iterator for PrimalSequences {
    type Item = PrimalSequence;

    fn next(&mut self) -> Option<PrimalSequence> {
        let cur = self.current.take()?;
        let out = PrimalSequence(cur.iter().map(|&i| Symbol(i as u8)).collect());
        let mut succ = cur;
        // Odometer increment; on overflow move to the next length.
        let mut i = succ.len();
        loop {
            if i == 0 {
                let len = succ.len() + 1;
                self.current = (len <= self.max_len).then(|| vec![0; len]);
                break;
            }
            i -= 1;
            succ[i] += 1;
            if succ[i] < self.alphabet_len {
                self.current = Some(succ);
                break;
            }
            succ[i] = 0;
        }
        Some(out)
    }
}

pub fn enumerate_primal_sequences(alphabet: &Alphabet, max_len: usize) -> PrimalSequences {
    PrimalSequences { alphabet_len: alphabet.len(), max_len, current: Some(Vec::new()) }
}

/// Number of primal sequences of length at most `max_len`: `1 + Σ c^i`,
/// saturating at `u128::MAX`.
pub fn primal_sequence_count(alphabet_len: usize, max_len: usize) -> u128 {
    let c = alphabet_len as u128;
    let mut total: u128 = 0;
    let mut term: u128 = 1;
    for _ in 0..=max_len {
        total = total.saturating_add(term);
        if total == u128::MAX {
            break;
        }
        term = term.saturating_mul(c);
    }
    total
}

/// The unique good deposition sequence whose primal sequence is `primal`, if
/// there is one.
///
/// Trivial masks are forced: whenever every residual probe starts with the
/// same character, a good sequence must deposit it next. Between those, the
/// primal characters are applied in order; a primal character that would
/// deposit nowhere, or probes left unfinished at the end, reject.
pub fn expand_primal(
    primal: &PrimalSequence,
    instance: &Instance,
    placement: &Placement,
) -> Result<Option<DepositionSequence>> {
    Placement::new(instance, placement.slots().to_vec())?;
    if primal.symbols().iter().any(|s| s.index() >= instance.alphabet().len()) {
        return Err(Error::ForeignSymbol(instance.alphabet().len()));
    }
    Ok(expand_primal_symbols(instance, primal.symbols()).map(DepositionSequence::from_symbols))
}

/// Placement-free core of [`expand_primal`]: trivial masks depend only on
/// the probe multiset.
pub(crate) fn expand_primal_symbols(instance: &Instance, primal: &[Symbol]) -> Option<Vec<Symbol>> {
    let probes = instance.distinct_probes();
    let mut cursor = vec![0usize; probes.len()];
    let mut out = Vec::with_capacity(primal.len() + instance.max_probe_len());
    for &y in primal {
        apply_trivial(probes, &mut cursor, &mut out);
        if !apply_primal(probes, &mut cursor, y) {
            return None;
        }
        out.push(y);
    }
    apply_trivial(probes, &mut cursor, &mut out);
    is_finished(probes, &cursor).then_some(out)
}

/// Deposits characters as long as every residual probe starts with the same
/// one.
fn apply_trivial(probes: &[Probe], cursor: &mut [usize], out: &mut Vec<Symbol>) {
    loop {
        let Some(&x) = probes[0].symbols().get(cursor[0]) else { return };
        if !probes.iter().zip(cursor.iter()).all(|(p, &k)| p.symbols().get(k) == Some(&x)) {
            return;
        }
        cursor.iter_mut().for_each(|k| *k += 1);
        out.push(x);
    }
}

/// Deposits `y`; false if no probe takes it.
fn apply_primal(probes: &[Probe], cursor: &mut [usize], y: Symbol) -> bool {
    let mut any = false;
    for (k, p) in cursor.iter_mut().zip(probes) {
        if p.symbols().get(*k) == Some(&y) {
            *k += 1;
            any = true;
        }
    }
    any
}

fn is_finished(probes: &[Probe], cursor: &[usize]) -> bool {
    cursor.iter().zip(probes).all(|(&k, p)| k == p.len())
}

/// Expansions of every primal sequence of length at most `max_len` that has
/// one, found by a depth-first search over primal prefixes. A prefix is
/// dropped as soon as a character deposits nowhere, so the search visits at
/// most one node per prefix of a good deposition sequence rather than all
/// `c^i` candidates. `visit` is called once per node and may abort the
/// search.
pub(crate) fn expanded_primals(
    instance: &Instance,
    max_len: usize,
    visit: &mut dyn FnMut() -> Result<()>,
) -> Result<Vec<Vec<Symbol>>> {
    fn rec(
        instance: &Instance,
        max_len: usize,
        depth: usize,
        cursor: &mut Vec<usize>,
        prefix: &mut Vec<Symbol>,
        out: &mut Vec<Vec<Symbol>>,
        visit: &mut dyn FnMut() -> Result<()>,
    ) -> Result<()> {
        visit()?;
        let probes = instance.distinct_probes();
        if is_finished(probes, cursor) {
            out.push(prefix.clone());
            return Ok(());
        }
        if depth == max_len {
            return Ok(());
        }
        for y in instance.alphabet().symbols() {
            let (saved_cursor, saved_len) = (cursor.clone(), prefix.len());
            if apply_primal(probes, cursor, y) {
                prefix.push(y);
                apply_trivial(probes, cursor, prefix);
                rec(instance, max_len, depth + 1, cursor, prefix, out, visit)?;
            }
            *cursor = saved_cursor;
            prefix.truncate(saved_len);
        }
        Ok(())
    }
    let probes = instance.distinct_probes();
    let mut cursor = vec![0usize; probes.len()];
    let mut prefix = Vec::new();
    apply_trivial(probes, &mut cursor, &mut prefix);
    let mut out = Vec::new();
    rec(instance, max_len, 0, &mut cursor, &mut prefix, &mut out, visit)?;
    Ok(out)
}

/// Characters of a good `deposition` whose mask has at least one opaque cell.
pub fn primal_of(
    instance: &Instance,
    placement: &Placement,
    deposition: &DepositionSequence,
) -> Result<PrimalSequence> {
    Placement::new(instance, placement.slots().to_vec())?;
    if let Some(position) = first_idle(instance, deposition)? {
        return Err(Error::NotGood { position });
    }
    let probes = instance.distinct_probes();
    let mut cursor = vec![0usize; probes.len()];
    let mut primal = Vec::new();
    for &x in deposition.symbols() {
        let mut all = true;
        for (k, p) in cursor.iter_mut().zip(probes) {
            if p.symbols().get(*k) == Some(&x) {
                *k += 1;
            } else {
                all = false;
            }
        }
        if !all {
            primal.push(x);
        }
    }
    Ok(PrimalSequence(primal))
}

/// Probe classes assigned to one column, top to bottom.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColumnPlacement(pub Vec<usize>);

impl ColumnPlacement {
    pub fn classes(&self) -> &[usize] {
        &self.0
    }

    /// How often each class occurs in the column.
    pub fn demand(&self, classes: usize) -> Vec<usize> {
        let mut d = vec![0; classes];
        for &c in &self.0 {
            d[c] += 1;
        }
        d
    }
}

/// Every `rows`-tuple of probe classes whose per-class count fits the
/// instance's multiplicities, in lexicographic order.
pub fn column_placements(instance: &Instance) -> Vec<ColumnPlacement> {
    fn rec(instance: &Instance, left: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<ColumnPlacement>) {
        if cur.len() == instance.rows() {
            out.push(ColumnPlacement(cur.clone()));
            return;
        }
        for class in 0..instance.distinct_count() {
            if left[class] > 0 {
                left[class] -= 1;
                cur.push(class);
                rec(instance, left, cur, out);
                cur.pop();
                left[class] += 1;
            }
        }
    }
    let mut out = Vec::new();
    rec(instance, &mut instance.multiplicities().to_vec(), &mut Vec::new(), &mut out);
    out
}
