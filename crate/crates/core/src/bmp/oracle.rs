use crate::config::{Meter, Solved, SolverConfig};
use crate::enumeration::enumerate_good_depositions;
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::par;
use crate::pbmp::ScoredDepositions;
use crate::placement::Placement;
use crate::solution::Solution;

use super::grids::GridFill;

/// Exhaustive reference solver: every placement (up to identical probes and
/// the four flips) against every good deposition sequence.
pub fn solve_bmp_oracle(instance: &Instance) -> Result<Solution> {
    solve_bmp_oracle_with(instance, &SolverConfig::default()).map(|s| s.value)
}

pub fn solve_bmp_oracle_with(instance: &Instance, config: &SolverConfig) -> Result<Solved<Solution>> {
    if instance.cell_count() > config.oracle_cell_cap {
        return Err(Error::InstanceTooLarge(format!(
            "{} cells exceed the oracle cap of {}",
            instance.cell_count(),
            config.oracle_cell_cap
        )));
    }
    let meter = Meter::new(config);
    let mut depositions = Vec::new();
    for d in enumerate_good_depositions(instance, instance.distinct_length_sum()) {
        meter.tick(1)?;
        depositions.push(d.symbols().to_vec());
    }
    let scored = ScoredDepositions::new(instance, depositions)?;

    let mut grids: Vec<Vec<usize>> = Vec::new();
    let order: Vec<usize> = (0..instance.cell_count()).collect();
    GridFill {
        rows: instance.rows(),
        cols: instance.cols(),
        order: &order,
        max_mixed: u64::MAX,
        flip_canonical_only: true,
        meter: &meter,
    }
    .run(
        &mut vec![0; instance.cell_count()],
        &mut instance.multiplicities().to_vec(),
        &mut |g| grids.push(g.to_vec()),
    )?;
    meter.tick(grids.len() as u64 * scored.entries.len() as u64)?;

    let best = par::map(grids, |g| {
        let (cost, d) = scored.best_for(instance, &g, u64::MAX).expect("deposition list is non-empty");
        (cost, d.to_vec(), g)
    })
    .into_iter()
    .min()
    .expect("at least one placement");
    let placement = Placement::from_classes(instance, &best.2)?;
    let solution = Solution::evaluate(
        instance,
        placement,
        crate::embedding::DepositionSequence::from_symbols(best.1),
    )?;
    debug_assert_eq!(solution.border_length, best.0);
    Ok(Solved { value: solution, stats: meter.stats() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two_pairs() {
        let inst = Instance::from_strs(2, 2, &["A", "A", "B", "B"]).unwrap();
        let s = solve_bmp_oracle(&inst).unwrap();
        assert_eq!(s.border_length, 4);
        assert_eq!(s.deposition.to_string_in(inst.alphabet()), "AB");
        assert!(s.verify(&inst).unwrap());
    }

    #[test]
    fn single_cell() {
        let inst = Instance::from_strs(1, 1, &["A"]).unwrap();
        assert_eq!(solve_bmp_oracle(&inst).unwrap().border_length, 0);
    }

    #[test]
    fn aba() {
        // With the placement free the two a's sit together; 4 is only the
        // cost of the fixed a|b|a layout.
        let inst = Instance::from_strs(1, 3, &["a", "b", "a"]).unwrap();
        let s = solve_bmp_oracle(&inst).unwrap();
        assert_eq!(s.border_length, 2);
        assert_eq!(s.placement.class_grid(&inst), vec![0, 0, 1]);
    }

    #[test]
    fn cap() {
        let inst = Instance::from_strs(3, 3, &["A"; 9]).unwrap();
        assert!(matches!(solve_bmp_oracle(&inst), Err(Error::InstanceTooLarge(_))));
        let cfg = SolverConfig::default().with_oracle_cell_cap(9);
        assert_eq!(solve_bmp_oracle_with(&inst, &cfg).unwrap().value.border_length, 0);
    }
}
