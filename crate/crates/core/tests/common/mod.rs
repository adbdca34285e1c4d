//! Seeded instance generators shared by the integration tests.
#![allow(dead_code)]

use bordermin::enumeration::FrontierState;
use bordermin::{Alphabet, DepositionSequence, Instance, Placement, Probe};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;
pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

const LETTERS: &str = "ACGT";

/// Alphabet of the first `c` letters of ACGT.
pub fn alphabet(c: usize) -> Alphabet {
    Alphabet::new(LETTERS.chars().take(c)).unwrap()
}

/// Every `(r, m)` with `r * m <= max_cells`.
pub fn shapes(max_cells: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for r in 1..=max_cells {
        for m in 1..=max_cells / r {
            out.push((r, m));
        }
    }
    out
}

pub fn random_probe(rng: &mut TestRng, alphabet: &Alphabet, max_len: usize) -> Probe {
    let len = rng.gen_range(1..=max_len);
    let text: String = (0..len).map(|_| *alphabet.chars().choose(rng).unwrap()).collect();
    Probe::parse(alphabet, &text).unwrap()
}

/// `r x m` probes over `c` letters of length at most `max_len`. With a pool,
/// cells draw from that many random probes, so duplicates are common.
pub fn random_instance(
    rng: &mut TestRng,
    r: usize,
    m: usize,
    c: usize,
    max_len: usize,
    pool: Option<usize>,
) -> Instance {
    let alphabet = alphabet(c);
    let probes: Vec<Probe> = match pool {
        Some(k) => {
            let pool: Vec<Probe> = (0..k).map(|_| random_probe(rng, &alphabet, max_len)).collect();
            (0..r * m).map(|_| pool.choose(rng).unwrap().clone()).collect()
        }
        None => (0..r * m).map(|_| random_probe(rng, &alphabet, max_len)).collect(),
    };
    Instance::new(alphabet, probes, r, m).unwrap()
}

pub fn random_placement(rng: &mut TestRng, instance: &Instance) -> Placement {
    let mut slots: Vec<usize> = (0..instance.cell_count()).collect();
    slots.shuffle(rng);
    Placement::new(instance, slots).unwrap()
}

/// Random walk over characters that advance at least one probe.
pub fn random_good_deposition(rng: &mut TestRng, instance: &Instance) -> DepositionSequence {
    let mut state = FrontierState::initial(instance);
    let mut symbols = Vec::new();
    while !state.is_terminal(instance) {
        let options: Vec<_> =
            instance.alphabet().symbols().filter_map(|x| state.advance(instance, x).map(|s| (x, s))).collect();
        let (x, next) = options.choose(rng).unwrap().clone();
        symbols.push(x);
        state = next;
    }
    DepositionSequence::new(instance, symbols).unwrap()
}

/// Instances for the placement-given checks: every shape with at most six
/// cells, every `c <= 3` and `l <= 3`, six random draws each, paired with a
/// random placement.
pub fn pbmp_corpus() -> Vec<(Instance, Placement)> {
    let mut rng = rng(0x5eed_0004);
    let mut out = Vec::new();
    for (r, m) in shapes(6) {
        for c in 1..=3 {
            for l in 1..=3 {
                for draw in 0..6 {
                    let pool = if draw < 2 { None } else { Some(draw) };
                    let inst = random_instance(&mut rng, r, m, c, l, pool);
                    let pl = random_placement(&mut rng, &inst);
                    out.push((inst, pl));
                }
            }
        }
    }
    out
}

/// Instances for the full-problem checks: at most six cells, `c <= 3`,
/// `l <= 2`, eight draws each.
pub fn bmp_corpus() -> Vec<Instance> {
    let mut rng = rng(0x5eed_0005);
    let mut out = Vec::new();
    for (r, m) in shapes(6) {
        for c in 1..=3 {
            for l in 1..=2 {
                for draw in 0..8 {
                    let pool = if draw < 3 { None } else { Some(draw - 1) };
                    out.push(random_instance(&mut rng, r, m, c, l, pool));
                }
            }
        }
    }
    out
}
