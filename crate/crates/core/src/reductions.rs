//! Constructions from the hardness reductions, usable as instance
//! generators: the separator block, the a/b grid gadget, the reduction from
//! the fixed-placement problem to the full problem, and the reduction from
//! balanced partitioning of grid graphs.

use crate::alphabet::Alphabet;
use crate::embedding::DepositionSequence;
use crate::error::{Error, Result};
use crate::instance::{Cell, Instance, Probe};
use crate::placement::Placement;
use crate::solution::Solution;

/// Generated instances above this many probe characters are refused.
pub const MAX_GENERATED_SYMBOLS: u128 = 1 << 26;

/// Parameters of the block `(x^{rmu} y^{rmu})^{rmu}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SeparatorSpec {
    pub x_char: char,
    pub y_char: char,
    pub u: u64,
    pub r: usize,
    pub m: usize,
}

impl SeparatorSpec {
    pub fn new(x_char: char, y_char: char, u: u64, r: usize, m: usize) -> Result<Self> {
        if x_char == y_char {
            return Err(Error::InvalidParameter(format!("separator characters coincide ({x_char:?})")));
        }
        if u == 0 || r == 0 || m == 0 {
            return Err(Error::InvalidParameter("separator needs u, r, m >= 1".into()));
        }
        Ok(SeparatorSpec { x_char, y_char, u, r, m })
    }

    /// Smallest `u` with `u >= 8 max|prefix| + 8 max|suffix| + 1`, which is
    /// what forces every optimal good deposition sequence to keep the
    /// separator in one piece.
    pub fn faithful_u(max_prefix: usize, max_suffix: usize) -> u64 {
        8 * max_prefix as u64 + 8 * max_suffix as u64 + 1
    }

    /// Length of the separator, `2 (rmu)²`.
    pub fn len(&self) -> u128 {
        let run = self.run();
        2 * run * run
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn run(&self) -> u128 {
        self.r as u128 * self.m as u128 * u128::from(self.u)
    }
}

pub fn build_separator(spec: &SeparatorSpec) -> Result<String> {
    if spec.len() > MAX_GENERATED_SYMBOLS {
        return Err(Error::InstanceTooLarge(format!("separator of length {}", spec.len())));
    }
    let run = spec.run() as usize;
    let mut block = String::with_capacity(2 * run);
    block.extend(std::iter::repeat_n(spec.x_char, run));
    block.extend(std::iter::repeat_n(spec.y_char, run));
    Ok(block.repeat(run))
}

/// The a/b grid gadget with its canonical placement and deposition sequence.
#[derive(Clone, Debug)]
pub struct AbGrid {
    pub instance: Instance,
    /// Probe `a^{it} sep b^{jt}` in cell `(i, j)`.
    pub placement: Placement,
    /// `a^{rt} sep b^{mt}`.
    pub deposition: DepositionSequence,
}

/// Probes `a^{it} · sep · b^{jt}` for `i` in `1..=r`, `j` in `1..=m`, listed
/// row-major so the identity placement is the canonical one.
pub fn make_ab_grid(r: usize, m: usize, t: usize, sep: &str) -> Result<AbGrid> {
    if t == 0 {
        return Err(Error::InvalidParameter("t must be at least 1".into()));
    }
    if let Some(ch) = sep.chars().find(|&c| c == 'a' || c == 'b') {
        return Err(Error::AlphabetCollision(ch));
    }
    let probe_len = (r + m) as u128 * t as u128 + sep.len() as u128;
    if probe_len * (r * m) as u128 > MAX_GENERATED_SYMBOLS {
        return Err(Error::InstanceTooLarge(format!("{}x{m} grid of probes of length {probe_len}", r)));
    }
    let alphabet = Alphabet::sorted_from("ab".chars().chain(sep.chars()))?;
    let mut probes = Vec::with_capacity(r * m);
    for i in 1..=r {
        for j in 1..=m {
            let text = format!("{}{sep}{}", "a".repeat(i * t), "b".repeat(j * t));
            probes.push(Probe::parse(&alphabet, &text)?);
        }
    }
    let instance = Instance::new(alphabet, probes, r, m)?;
    let d0 = format!("{}{sep}{}", "a".repeat(r * t), "b".repeat(m * t));
    let deposition = DepositionSequence::parse(&instance, &d0)?;
    Ok(AbGrid { placement: Placement::identity(&instance), instance, deposition })
}

/// The six characters added by the reduction to the full problem.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FreshChars {
    pub a: char,
    pub b: char,
    pub x1: char,
    pub y1: char,
    pub x2: char,
    pub y2: char,
}

impl Default for FreshChars {
    fn default() -> Self {
        FreshChars { a: 'a', b: 'b', x1: 'x', y1: 'y', x2: 'u', y2: 'v' }
    }
}

impl FreshChars {
    fn all(&self) -> [char; 6] {
        [self.a, self.b, self.x1, self.y1, self.x2, self.y2]
    }

    /// First six printable ASCII characters (lowercase letters first) that are
    /// not in `alphabet`.
    pub fn avoiding(alphabet: &Alphabet) -> Result<Self> {
        let pool = ('a'..='z').chain('A'..='Z').chain('0'..='9').chain('!'..='~');
        let mut free = pool.filter(|&c| c != crate::GAP && !alphabet.contains(c));
        let mut next = || free.next().ok_or(Error::AlphabetTooLarge);
        Ok(FreshChars { a: next()?, b: next()?, x1: next()?, y1: next()?, x2: next()?, y2: next()? })
    }
}

/// Constants of the reduction to the full problem.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReductionMode {
    /// `t = (ℓrm)² + 1`, `u2 = 100t³ + 1`, `u1 = 1000t⁴ + 1`.
    PaperFaithful,
    /// User constants; the placement-forcing property is not guaranteed.
    DeskScale { t: u64, u1: u64, u2: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReductionConstants {
    pub t: u64,
    pub u1: u64,
    pub u2: u64,
}

impl ReductionConstants {
    pub fn paper_faithful(instance: &Instance) -> Result<Self> {
        let base = instance.max_probe_len() as u128 * instance.cell_count() as u128;
        let t = base
            .checked_mul(base)
            .and_then(|v| v.checked_add(1))
            .and_then(|v| u64::try_from(v).ok())
            .ok_or_else(|| Error::InstanceTooLarge("t overflows".into()))?;
        let pow = |e: u32, k: u64| {
            u128::from(t)
                .checked_pow(e)
                .and_then(|v| v.checked_mul(u128::from(k)))
                .and_then(|v| v.checked_add(1))
                .and_then(|v| u64::try_from(v).ok())
                .ok_or_else(|| Error::InstanceTooLarge("separator constant overflows".into()))
        };
        Ok(ReductionConstants { t, u2: pow(3, 100)?, u1: pow(4, 1000)? })
    }
}

#[derive(Clone, Debug)]
pub struct ReducedInstance {
    pub instance: Instance,
    /// The input placement carried over: the reduced probe built from the
    /// probe at cell `(i, j)` sits at `(i, j)`.
    pub placement: Placement,
    pub constants: ReductionConstants,
    /// True only in paper-faithful mode, where optimal solutions are known to
    /// use the input placement up to flips.
    pub guaranteed: bool,
}

/// Reduces a fixed-placement instance to a full instance: the probe `s` at
/// 1-based cell `(i, j)` becomes `a^{it} · sep1 · b^{jt} · sep2 · s`.
pub fn reduce_pbmp_to_bmp(
    instance: &Instance,
    placement: &Placement,
    mode: ReductionMode,
    fresh: FreshChars,
) -> Result<ReducedInstance> {
    let placement = Placement::new(instance, placement.slots().to_vec())?;
    let fresh_all = fresh.all();
    for (k, &ch) in fresh_all.iter().enumerate() {
        if instance.alphabet().contains(ch) || fresh_all[..k].contains(&ch) {
            return Err(Error::AlphabetCollision(ch));
        }
    }
    let (constants, guaranteed) = match mode {
        ReductionMode::PaperFaithful => (ReductionConstants::paper_faithful(instance)?, true),
        ReductionMode::DeskScale { t, u1, u2 } => (ReductionConstants { t, u1, u2 }, false),
    };
    if constants.t == 0 {
        return Err(Error::InvalidParameter("t must be at least 1".into()));
    }
    let (r, m) = (instance.rows(), instance.cols());
    let spec1 = SeparatorSpec::new(fresh.x1, fresh.y1, constants.u1, r, m)?;
    let spec2 = SeparatorSpec::new(fresh.x2, fresh.y2, constants.u2, r, m)?;
    let t = u128::from(constants.t);
    let per_probe = spec1.len() + spec2.len() + (r + m) as u128 * t + instance.max_probe_len() as u128;
    if per_probe.saturating_mul(instance.cell_count() as u128) > MAX_GENERATED_SYMBOLS {
        return Err(Error::InstanceTooLarge(format!(
            "reduced probes would hold up to {per_probe} characters each"
        )));
    }
    let (sep1, sep2) = (build_separator(&spec1)?, build_separator(&spec2)?);
    let t = constants.t as usize;
    let alphabet = Alphabet::sorted_from(instance.alphabet().chars().iter().copied().chain(fresh_all))?;
    let mut probes = Vec::with_capacity(instance.cell_count());
    for i in 0..r {
        for j in 0..m {
            let slot = placement.slot_at(Cell::new(i, j));
            let text = format!(
                "{}{sep1}{}{sep2}{}",
                fresh.a.to_string().repeat((i + 1) * t),
                fresh.b.to_string().repeat((j + 1) * t),
                instance.probe_string(slot)
            );
            probes.push(Probe::parse(&alphabet, &text)?);
        }
    }
    let reduced = Instance::new(alphabet, probes, r, m)?;
    Ok(ReducedInstance { placement: Placement::identity(&reduced), instance: reduced, constants, guaranteed })
}

/// A solid rectangular grid graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GridGraph {
    pub rows: usize,
    pub cols: usize,
}

impl GridGraph {
    pub fn new(rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyArray { rows, cols });
        }
        Ok(GridGraph { rows, cols })
    }

    pub fn vertex_count(&self) -> usize {
        self.rows * self.cols
    }

    /// Edges between row-major vertex indices.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        crate::instance::neighbor_pairs(self.rows, self.cols)
    }
}

const PART_CHARS: &str = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";

/// One single-character probe type per part: with `n = lk + x`, the first
/// `x` characters appear `l + 1` times and the rest `l` times.
pub fn reduce_kbp_to_bmp(grid: GridGraph, k: usize) -> Result<Instance> {
    let n = grid.vertex_count();
    if k == 0 || k > n {
        return Err(Error::InvalidParameter(format!("k = {k} must be in 1..={n}")));
    }
    if k > PART_CHARS.len() {
        return Err(Error::InvalidParameter(format!("at most {} parts are supported", PART_CHARS.len())));
    }
    let (l, x) = (n / k, n % k);
    let chars: Vec<char> = PART_CHARS.chars().take(k).collect();
    let mut probes = Vec::with_capacity(n);
    for (i, &ch) in chars.iter().enumerate() {
        let copies = if i < x { l + 1 } else { l };
        probes.extend(std::iter::repeat_n(ch.to_string(), copies));
    }
    let refs: Vec<&str> = probes.iter().map(String::as_str).collect();
    Instance::with_alphabet(Alphabet::new(chars)?, grid.rows, grid.cols, &refs)
}

/// Cells grouped by the character placed on them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    /// Part index (alphabet position) of every cell, row-major.
    pub part_of: Vec<usize>,
    pub parts: Vec<Vec<Cell>>,
    pub cut_size: u64,
}

/// Reads a balanced partition off a solution of a single-character
/// instance. Each cut edge separates two different one-character probes,
/// whose embeddings differ in exactly two positions, so the cut is half the
/// border length.
pub fn extract_partition(instance: &Instance, solution: &Solution, k: usize) -> Result<Partition> {
    if let Some(p) = instance.probes().iter().find(|p| p.len() != 1) {
        return Err(Error::MalformedSolution(format!(
            "probe {} is not a single character",
            p.to_string_in(instance.alphabet())
        )));
    }
    if instance.alphabet().len() > k {
        return Err(Error::MalformedSolution(format!(
            "{} characters for {k} parts",
            instance.alphabet().len()
        )));
    }
    let cols = instance.cols();
    let part_of: Vec<usize> =
        solution.placement.slots().iter().map(|&s| instance.probe(s).symbols()[0].index()).collect();
    let mut parts = vec![Vec::new(); k];
    for (cell, &p) in part_of.iter().enumerate() {
        parts[p].push(Cell::new(cell / cols, cell % cols));
    }
    let cut_size =
        instance.neighbor_pairs().iter().filter(|&&(a, b)| part_of[a] != part_of[b]).count() as u64;
    if 2 * cut_size != solution.border_length {
        return Err(Error::MalformedSolution(format!(
            "cut {cut_size} does not match border length {}",
            solution.border_length
        )));
    }
    Ok(Partition { part_of, parts, cut_size })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cost::{compute_bl, CostMethod};

    #[test]
    fn separator_closed_form() {
        let s = |r, m, u| build_separator(&SeparatorSpec::new('x', 'y', u, r, m).unwrap()).unwrap();
        assert_eq!(s(1, 1, 1), "xy");
        assert_eq!(s(1, 2, 1), "xxyyxxyy");
        let spec = SeparatorSpec::new('x', 'y', 33, 2, 2).unwrap();
        assert_eq!(spec.len(), 34848);
        assert_eq!(build_separator(&spec).unwrap().len(), 34848);
        assert_eq!(SeparatorSpec::faithful_u(2, 2), 33);
        assert!(SeparatorSpec::new('x', 'x', 1, 1, 1).is_err());
    }

    #[test]
    fn ab_grid_two_by_two() {
        let g = make_ab_grid(2, 2, 1, "xy").unwrap();
        let strs: Vec<String> = (0..4).map(|s| g.instance.probe_string(s)).collect();
        assert_eq!(strs, ["axyb", "axybb", "aaxyb", "aaxybb"]);
        assert_eq!(g.deposition.to_string_in(g.instance.alphabet()), "aaxybb");
        assert_eq!(compute_bl(&g.instance, &g.placement, &g.deposition, CostMethod::Hamming).unwrap(), 4);
        assert!(matches!(make_ab_grid(1, 1, 1, "ab"), Err(Error::AlphabetCollision('a'))));
    }

    #[test]
    fn desk_scale_reduction() {
        let inst = Instance::from_strs(1, 2, &["A", "B"]).unwrap();
        let mode = ReductionMode::DeskScale { t: 2, u1: 1, u2: 1 };
        let red = reduce_pbmp_to_bmp(&inst, &Placement::identity(&inst), mode, FreshChars::default()).unwrap();
        assert!(!red.guaranteed);
        assert_eq!(red.instance.probe_string(0), "aaxxyyxxyybbuuvvuuvvA");
        assert_eq!(red.instance.probe_string(1), "aaxxyyxxyybbbbuuvvuuvvB");

        let one = Instance::from_strs(1, 1, &["A"]).unwrap();
        let mode = ReductionMode::DeskScale { t: 1, u1: 1, u2: 1 };
        let red = reduce_pbmp_to_bmp(&one, &Placement::identity(&one), mode, FreshChars::default()).unwrap();
        assert_eq!(red.instance.probe_string(0), "axybuvA");
    }

    #[test]
    fn reduction_follows_placement() {
        let inst = Instance::from_strs(1, 2, &["A", "B"]).unwrap();
        let swapped = Placement::new(&inst, vec![1, 0]).unwrap();
        let mode = ReductionMode::DeskScale { t: 1, u1: 1, u2: 1 };
        let red = reduce_pbmp_to_bmp(&inst, &swapped, mode, FreshChars::default()).unwrap();
        assert_eq!(red.instance.probe_string(0), "axxyyxxyybuuvvuuvvB");
        assert_eq!(red.instance.probe_string(1), "axxyyxxyybbuuvvuuvvA");
    }

    #[test]
    fn paper_faithful_constants() {
        let inst = Instance::from_strs(1, 2, &["A", "B"]).unwrap();
        let c = ReductionConstants::paper_faithful(&inst).unwrap();
        assert_eq!(c.t, 5);
        assert_eq!(c.u2, 12501);
        assert_eq!(c.u1, 625001);
        let err = reduce_pbmp_to_bmp(&inst, &Placement::identity(&inst), ReductionMode::PaperFaithful, FreshChars::default());
        assert!(matches!(err, Err(Error::InstanceTooLarge(_))));
    }

    #[test]
    fn fresh_chars() {
        let inst = Instance::from_strs(1, 2, &["a", "x"]).unwrap();
        let mode = ReductionMode::DeskScale { t: 1, u1: 1, u2: 1 };
        let pl = Placement::identity(&inst);
        assert!(matches!(
            reduce_pbmp_to_bmp(&inst, &pl, mode, FreshChars::default()),
            Err(Error::AlphabetCollision('a'))
        ));
        let fresh = FreshChars::avoiding(inst.alphabet()).unwrap();
        assert_eq!(fresh.all(), ['b', 'c', 'd', 'e', 'f', 'g']);
        assert!(reduce_pbmp_to_bmp(&inst, &pl, mode, fresh).is_ok());
    }

    #[test]
    fn kbp_multiplicities() {
        let inst = reduce_kbp_to_bmp(GridGraph::new(2, 2).unwrap(), 2).unwrap();
        assert_eq!(inst.multiplicities(), &[2, 2]);
        let inst = reduce_kbp_to_bmp(GridGraph::new(1, 5).unwrap(), 2).unwrap();
        assert_eq!(inst.multiplicities(), &[3, 2]);
        let inst = reduce_kbp_to_bmp(GridGraph::new(2, 3).unwrap(), 1).unwrap();
        assert_eq!(inst.distinct_count(), 1);
        assert!(reduce_kbp_to_bmp(GridGraph::new(1, 2).unwrap(), 3).is_err());
    }

    #[test]
    fn partition_from_solution() {
        let inst = reduce_kbp_to_bmp(GridGraph::new(2, 2).unwrap(), 2).unwrap();
        let s = crate::bmp::solve_bmp_oracle(&inst).unwrap();
        let p = extract_partition(&inst, &s, 2).unwrap();
        assert_eq!((s.border_length, p.cut_size), (4, 2));
        assert_eq!(p.parts.iter().map(Vec::len).collect::<Vec<_>>(), vec![2, 2]);

        let golden = Instance::from_strs(2, 2, &["CA", "CT", "TA", "AC"]).unwrap();
        let s = crate::bmp::solve_bmp_oracle(&golden).unwrap();
        assert!(matches!(extract_partition(&golden, &s, 4), Err(Error::MalformedSolution(_))));
    }
}
