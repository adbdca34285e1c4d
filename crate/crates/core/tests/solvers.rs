mod common;

use bordermin::bmp::{
    is_consecutive, solve_bmp_budget, solve_bmp_budget_with, solve_bmp_oracle, solve_bmp_oracle_with,
    solve_bmp_template, BudgetCase,
};
use bordermin::enumeration::enumerate_good_depositions;
use bordermin::pbmp::{solve_pbmp, solve_pbmp_budget, solve_pbmp_exhaustive};
use bordermin::{compute_bl, CostMethod, Error, Instance, Placement, SolverConfig};
use common::*;

fn all_placements(inst: &Instance) -> Vec<Placement> {
    fn rec(inst: &Instance, grid: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Placement>) {
        if grid.len() == inst.cell_count() {
            out.push(Placement::new(inst, grid.clone()).unwrap());
            return;
        }
        for s in 0..inst.cell_count() {
            if !used[s] {
                used[s] = true;
                grid.push(s);
                rec(inst, grid, used, out);
                grid.pop();
                used[s] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(inst, &mut Vec::new(), &mut vec![false; inst.cell_count()], &mut out);
    out
}

#[test]
fn oracle_matches_unreduced_enumeration() {
    // Every slot permutation, no symmetry reduction, every good sequence.
    let mut rng = rng(21);
    for (r, m) in [(1, 3), (2, 2), (1, 4), (2, 3)] {
        for c in 1..=3 {
            let inst = random_instance(&mut rng, r, m, c, 2, None);
            let good: Vec<_> = enumerate_good_depositions(&inst, inst.distinct_length_sum()).collect();
            let best = all_placements(&inst)
                .iter()
                .flat_map(|pl| good.iter().map(move |d| (pl, d)))
                .map(|(pl, d)| compute_bl(&inst, pl, d, CostMethod::Hamming).unwrap())
                .min()
                .unwrap();
            assert_eq!(solve_bmp_oracle(&inst).unwrap().border_length, best);
        }
    }
}

#[test]
fn some_optimum_is_consecutive() {
    for inst in bmp_corpus().into_iter().filter(|i| i.cell_count() >= 3).take(150) {
        let good: Vec<_> = enumerate_good_depositions(&inst, inst.distinct_length_sum()).collect();
        let best_consecutive = all_placements(&inst)
            .into_iter()
            .filter(|pl| is_consecutive(&inst, pl))
            .flat_map(|pl| good.iter().map(move |d| (pl.clone(), d)))
            .map(|(pl, d)| compute_bl(&inst, &pl, d, CostMethod::Fast).unwrap())
            .min()
            .unwrap();
        assert_eq!(best_consecutive, solve_bmp_oracle(&inst).unwrap().border_length);
    }
}

#[test]
fn template_returns_consecutive_placements() {
    for inst in bmp_corpus().into_iter().take(120) {
        let out = solve_bmp_template(&inst).unwrap();
        assert!(is_consecutive(&inst, &out.solution.placement));
        assert_eq!(out.multiplicities.counts.iter().sum::<usize>(), inst.cols());
        assert!(out.multiplicities.counts.iter().all(|&h| h >= 1));
        assert!(out.solution.verify(&inst).unwrap());
    }
}

#[test]
fn budget_answers_iff_optimum_fits() {
    for inst in bmp_corpus().into_iter().step_by(3) {
        let opt = solve_bmp_oracle(&inst).unwrap().border_length;
        for o in opt.saturating_sub(2)..=opt + 2 {
            let got = solve_bmp_budget(&inst, o).unwrap();
            assert_eq!(got.is_some(), o >= opt, "o={o}, opt={opt}");
            if let Some(s) = got {
                assert_eq!(s.border_length, opt);
                assert!(s.verify(&inst).unwrap());
            }
        }
    }
}

#[test]
fn transposed_instances_have_the_same_optimum() {
    for inst in bmp_corpus().into_iter().step_by(5) {
        let t = inst.transposed();
        let a = solve_bmp_oracle(&inst).unwrap().border_length;
        assert_eq!(a, solve_bmp_oracle(&t).unwrap().border_length);
        assert_eq!(a, solve_bmp_template(&t).unwrap().solution.border_length);
    }
}

#[test]
fn pbmp_budget_agrees_with_unbudgeted_solver() {
    for (inst, pl) in pbmp_corpus().into_iter().step_by(4) {
        let opt = solve_pbmp(&inst, &pl).unwrap();
        assert_eq!(opt.border_length, solve_pbmp_exhaustive(&inst, &pl).unwrap().border_length);
        let b = solve_pbmp_budget(&inst, &pl, opt.border_length).unwrap().unwrap();
        assert_eq!(b.border_length, opt.border_length);
    }
}

#[test]
fn corner_case_matches_oracle() {
    // Both sides above 2o, so only the corner blocks may hold minority probes.
    let cfg = SolverConfig::default().with_oracle_cell_cap(30);
    let cases: [(usize, usize, &[(&str, usize)], u64); 4] = [
        (5, 5, &[("A", 24), ("B", 1)], 2),
        (5, 5, &[("A", 23), ("B", 2)], 2),
        (5, 6, &[("AC", 28), ("CA", 2)], 2),
        (3, 3, &[("A", 8), ("C", 1)], 1),
    ];
    for (r, m, parts, o) in cases {
        let probes: Vec<&str> = parts.iter().flat_map(|&(p, n)| std::iter::repeat_n(p, n)).collect();
        let inst = Instance::from_strs(r, m, &probes).unwrap();
        let out = solve_bmp_budget_with(&inst, o, &SolverConfig::default()).unwrap().value;
        assert_eq!(out.case, BudgetCase::BothLarge);
        let oracle = solve_bmp_oracle_with(&inst, &cfg).unwrap().value.border_length;
        assert_eq!(out.solution.map(|s| s.border_length), (oracle <= o).then_some(oracle), "{r}x{m} {parts:?}");
    }
}

#[test]
fn corner_case_with_feasible_budget() {
    // B adjacent to A costs 2 under D = AB; two B's side by side in a corner
    // share one edge and expose three.
    let cfg = SolverConfig::default().with_oracle_cell_cap(36);
    let mut probes = vec!["A"; 34];
    probes.extend(["B", "B"]);
    let inst = Instance::from_strs(6, 6, &probes).unwrap();
    let oracle = solve_bmp_oracle_with(&inst, &cfg).unwrap().value.border_length;
    assert_eq!(oracle, 6);
    let out = solve_bmp_budget_with(&inst, 6, &SolverConfig::default()).unwrap().value;
    assert_eq!(out.case, BudgetCase::BothSmall);
    assert_eq!(out.solution.unwrap().border_length, 6);
    assert_eq!(solve_bmp_budget(&inst, 5).unwrap(), None);
    let mut probes = vec!["A"; 167];
    probes.extend(["B", "B"]);
    let inst = Instance::from_strs(13, 13, &probes).unwrap();
    let out = solve_bmp_budget_with(&inst, 6, &SolverConfig::default()).unwrap().value;
    assert_eq!(out.case, BudgetCase::BothLarge);
    assert_eq!(out.solution.unwrap().border_length, 6);
}

#[test]
fn oracle_cap_and_node_budget_fail_loudly() {
    let inst = Instance::from_strs(3, 3, &["AB", "BA", "AB", "BA", "AB", "BA", "AB", "BA", "AB"]).unwrap();
    assert!(matches!(solve_bmp_oracle(&inst), Err(Error::InstanceTooLarge(_))));
    let tight = SolverConfig::default().with_node_budget(5);
    assert!(matches!(
        bordermin::bmp::solve_bmp_template_with(&inst, &tight),
        Err(Error::InstanceTooLarge(_))
    ));
}

#[test]
fn results_do_not_depend_on_thread_count() {
    let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let four = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
    for inst in bmp_corpus().into_iter().step_by(7) {
        let pl = Placement::identity(&inst);
        let run = || {
            (
                solve_bmp_oracle(&inst).unwrap(),
                solve_bmp_template(&inst).unwrap().solution,
                solve_pbmp(&inst, &pl).unwrap(),
            )
        };
        assert_eq!(one.install(run), four.install(run));
    }
}
