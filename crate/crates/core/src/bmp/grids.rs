//! Enumeration of class grids (placements up to permutations of identical
//! probes).

use crate::config::Meter;
use crate::error::Result;
use crate::placement::is_flip_canonical;

/// Fills the cells listed in `order` with classes drawn from `left`, cells
/// not in `order` keeping their value from `grid`. A partial grid is dropped
/// once the number of neighboring pairs of differing classes among decided
/// cells exceeds `max_mixed`. Calls `leaf` on every complete grid.
pub(crate) struct GridFill<'a> {
    pub(crate) rows: usize,
    pub(crate) cols: usize,
    pub(crate) order: &'a [usize],
    pub(crate) max_mixed: u64,
    pub(crate) flip_canonical_only: bool,
    pub(crate) meter: &'a Meter,
}

impl GridFill<'_> {
    pub(crate) fn run(&self, grid: &mut [usize], left: &mut [usize], leaf: &mut dyn FnMut(&[usize])) -> Result<()> {
        let mut decided = vec![true; grid.len()];
        for &c in self.order {
            decided[c] = false;
        }
        self.rec(0, 0, grid, &mut decided, left, leaf)
    }

    fn neighbors(&self, cell: usize) -> impl Iterator<Item = usize> {
        let (r, c, cols, rows) = (cell / self.cols, cell % self.cols, self.cols, self.rows);
        [
            (r > 0).then(|| cell - cols),
            (r + 1 < rows).then(|| cell + cols),
            (c > 0).then(|| cell - 1),
            (c + 1 < cols).then(|| cell + 1),
        ]
        .into_iter()
        .flatten()
    }

    fn rec(
        &self,
        k: usize,
        mixed: u64,
        grid: &mut [usize],
        decided: &mut [bool],
        left: &mut [usize],
        leaf: &mut dyn FnMut(&[usize]),
    ) -> Result<()> {
        self.meter.tick(1)?;
        if k == self.order.len() {
            if !self.flip_canonical_only || is_flip_canonical(self.rows, self.cols, grid) {
                self.meter.branch();
                leaf(grid);
            }
            return Ok(());
        }
        let cell = self.order[k];
        for class in 0..left.len() {
            if left[class] == 0 {
                continue;
            }
            grid[cell] = class;
            let added = self.neighbors(cell).filter(|&n| decided[n] && grid[n] != class).count() as u64;
            if mixed + added > self.max_mixed {
                continue;
            }
            left[class] -= 1;
            decided[cell] = true;
            self.rec(k + 1, mixed + added, grid, decided, left, leaf)?;
            decided[cell] = false;
            left[class] += 1;
        }
        Ok(())
    }
}
