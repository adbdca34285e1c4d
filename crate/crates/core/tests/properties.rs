mod common;

use bordermin::{border_pair, compute_bl, embed, is_good, strip_redundant, CostMethod, DepositionSequence, Instance};
use common::*;
use proptest::prelude::*;

/// Seed, dimensions, alphabet size and probe length for one random case.
fn case(max_cells: usize, max_c: usize, max_len: usize) -> impl Strategy<Value = (u64, usize, usize, usize, usize)> {
    (any::<u64>(), 1..=max_cells, 1..=max_c, 1..=max_len).prop_flat_map(move |(seed, cells, c, l)| {
        let dims: Vec<(usize, usize)> = shapes(cells).into_iter().filter(|(r, m)| r * m == cells).collect();
        proptest::sample::select(dims).prop_map(move |(r, m)| (seed, r, m, c, l))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn three_cost_routes_agree((seed, r, m, c, l) in case(12, 4, 5)) {
        let mut rng = rng(seed);
        let inst = random_instance(&mut rng, r, m, c, l, None);
        let pl = random_placement(&mut rng, &inst);
        let d = random_good_deposition(&mut rng, &inst);
        let h = compute_bl(&inst, &pl, &d, CostMethod::Hamming).unwrap();
        prop_assert_eq!(h, compute_bl(&inst, &pl, &d, CostMethod::Masks).unwrap());
        prop_assert_eq!(h, compute_bl(&inst, &pl, &d, CostMethod::Fast).unwrap());
    }

    #[test]
    fn idle_characters_do_not_change_cost((seed, r, m, c, l) in case(9, 3, 4), extra in 1usize..4) {
        let mut rng = rng(seed);
        let inst = random_instance(&mut rng, r, m, c, l, Some(3));
        let pl = random_placement(&mut rng, &inst);
        let d = random_good_deposition(&mut rng, &inst);
        // Appending characters after every probe is finished deposits nothing.
        let mut padded = d.symbols().to_vec();
        let symbols: Vec<_> = inst.alphabet().symbols().collect();
        padded.extend(symbols.iter().cycle().take(extra));
        let padded = DepositionSequence::new(&inst, padded).unwrap();
        prop_assert!(!is_good(&inst, &pl, &padded).unwrap());
        let bl = compute_bl(&inst, &pl, &d, CostMethod::Hamming).unwrap();
        prop_assert_eq!(bl, compute_bl(&inst, &pl, &padded, CostMethod::Hamming).unwrap());
        let stripped = strip_redundant(&inst, &pl, &padded).unwrap();
        prop_assert_eq!(&stripped, &d);
        prop_assert!(is_good(&inst, &pl, &stripped).unwrap());
    }

    #[test]
    fn border_pair_is_a_metric((seed, c, l) in (any::<u64>(), 1usize..=4, 1usize..=5)) {
        let mut rng = rng(seed);
        let inst = random_instance(&mut rng, 1, 3, c, l, None);
        let d = random_good_deposition(&mut rng, &inst);
        let e: Vec<_> = (0..3).map(|s| embed(inst.probe(s), &d).unwrap()).collect();
        let b = |i: usize, j: usize| border_pair(&e[i], &e[j]).unwrap();
        prop_assert_eq!(b(0, 0), 0);
        prop_assert_eq!(b(0, 1), b(1, 0));
        prop_assert!(b(0, 2) <= b(0, 1) + b(1, 2));
        if inst.probe(0) != inst.probe(1) {
            prop_assert!(b(0, 1) >= 1);
        }
    }

    #[test]
    fn flips_and_transposition_keep_cost((seed, r, m, c, l) in case(12, 4, 4)) {
        let mut rng = rng(seed);
        let inst = random_instance(&mut rng, r, m, c, l, None);
        let pl = random_placement(&mut rng, &inst);
        let d = random_good_deposition(&mut rng, &inst);
        let bl = compute_bl(&inst, &pl, &d, CostMethod::Fast).unwrap();
        prop_assert_eq!(bl, compute_bl(&inst, &pl.flipped_horizontally(), &d, CostMethod::Fast).unwrap());
        prop_assert_eq!(bl, compute_bl(&inst, &pl.flipped_vertically(), &d, CostMethod::Fast).unwrap());
        let t: Instance = inst.transposed();
        prop_assert_eq!(bl, compute_bl(&t, &pl.transposed(), &d, CostMethod::Fast).unwrap());
    }
}
