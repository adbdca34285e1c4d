use crate::error::{Error, Result};
use crate::instance::{Cell, Instance};

/// Assignment of probe slots to array cells, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Placement {
    rows: usize,
    cols: usize,
    grid: Vec<usize>,
}

impl Placement {
    /// Checks that `grid` is a bijection onto the instance's probe slots.
    pub fn new(instance: &Instance, grid: Vec<usize>) -> Result<Self> {
        let n = instance.cell_count();
        if grid.len() != n {
            return Err(Error::InvalidPlacement(format!("grid has {} cells, array has {n}", grid.len())));
        }
        let mut seen = vec![false; n];
        for &slot in &grid {
            if slot >= n {
                return Err(Error::InvalidPlacement(format!("slot {slot} out of range")));
            }
            if std::mem::replace(&mut seen[slot], true) {
                return Err(Error::InvalidPlacement(format!("slot {slot} placed twice")));
            }
        }
        Ok(Placement { rows: instance.rows(), cols: instance.cols(), grid })
    }

    /// Probe `i` in cell `i` (row-major).
    pub fn identity(instance: &Instance) -> Self {
        Placement { rows: instance.rows(), cols: instance.cols(), grid: (0..instance.cell_count()).collect() }
    }

    /// Builds a placement from a grid of probe classes, handing out the slots
    /// of each class in increasing order. Fails if the class counts do not
    /// match the instance's multiplicities.
    pub fn from_classes(instance: &Instance, classes: &[usize]) -> Result<Self> {
        let mut pools: Vec<Vec<usize>> = vec![Vec::new(); instance.distinct_count()];
        for slot in (0..instance.cell_count()).rev() {
            pools[instance.class_of(slot)].push(slot);
        }
        let mut grid = Vec::with_capacity(classes.len());
        for &class in classes {
            let slot = pools
                .get_mut(class)
                .and_then(Vec::pop)
                .ok_or_else(|| Error::InvalidPlacement(format!("class {class} over-used")))?;
            grid.push(slot);
        }
        Self::new(instance, grid)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn slots(&self) -> &[usize] {
        &self.grid
    }

    pub fn slot_at(&self, cell: Cell) -> usize {
        self.grid[cell.row * self.cols + cell.col]
    }

    pub fn cell_of(&self, slot: usize) -> Option<Cell> {
        self.grid
            .iter()
            .position(|&s| s == slot)
            .map(|i| Cell::new(i / self.cols, i % self.cols))
    }

    /// Probe class per cell, row-major.
    pub fn class_grid(&self, instance: &Instance) -> Vec<usize> {
        self.grid.iter().map(|&s| instance.class_of(s)).collect()
    }

    pub fn rows_iter(&self) -> impl Iterator<Item = &[usize]> {
        self.grid.chunks(self.cols)
    }

    /// Slots of column `col`, top to bottom.
    pub fn column(&self, col: usize) -> Vec<usize> {
        (0..self.rows).map(|r| self.grid[r * self.cols + col]).collect()
    }

    /// Rebuilds a placement from columns given left to right.
    pub fn from_columns(instance: &Instance, columns: &[Vec<usize>]) -> Result<Self> {
        let rows = instance.rows();
        let mut grid = vec![0; instance.cell_count()];
        if columns.len() != instance.cols() || columns.iter().any(|c| c.len() != rows) {
            return Err(Error::InvalidPlacement("column shape mismatch".into()));
        }
        for (c, column) in columns.iter().enumerate() {
            for (r, &slot) in column.iter().enumerate() {
                grid[r * instance.cols() + c] = slot;
            }
        }
        Self::new(instance, grid)
    }

    pub fn flipped_horizontally(&self) -> Self {
        self.remap(|r, c| (r, self.cols - 1 - c), self.rows, self.cols)
    }

    pub fn flipped_vertically(&self) -> Self {
        self.remap(|r, c| (self.rows - 1 - r, c), self.rows, self.cols)
    }

    pub fn transposed(&self) -> Self {
        self.remap(|r, c| (c, r), self.cols, self.rows)
    }

    fn remap(&self, to: impl Fn(usize, usize) -> (usize, usize), rows: usize, cols: usize) -> Self {
        let mut grid = vec![0; self.grid.len()];
        for r in 0..self.rows {
            for c in 0..self.cols {
                let (nr, nc) = to(r, c);
                grid[nr * cols + nc] = self.grid[r * self.cols + c];
            }
        }
        Placement { rows, cols, grid }
    }

    #[cfg(test)]
    pub(crate) fn from_raw(rows: usize, cols: usize, grid: Vec<usize>) -> Self {
        Placement { rows, cols, grid }
    }
}

/// The four horizontal/vertical flip images of a row-major grid, identity
/// first.
pub fn flip_images<T: Clone>(rows: usize, cols: usize, grid: &[T]) -> [Vec<T>; 4] {
    let map = |f: &dyn Fn(usize, usize) -> usize| -> Vec<T> {
        (0..rows * cols).map(|i| grid[f(i / cols, i % cols)].clone()).collect()
    };
    [
        grid.to_vec(),
        map(&|r, c| r * cols + (cols - 1 - c)),
        map(&|r, c| (rows - 1 - r) * cols + c),
        map(&|r, c| (rows - 1 - r) * cols + (cols - 1 - c)),
    ]
}

/// True when `grid` is the lexicographically smallest of its flip images.
pub fn is_flip_canonical<T: Clone + Ord>(rows: usize, cols: usize, grid: &[T]) -> bool {
    flip_images(rows, cols, grid).iter().all(|img| grid <= img.as_slice())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst() -> Instance {
        Instance::from_strs(2, 3, &["A", "B", "A", "C", "B", "A"]).unwrap()
    }

    #[test]
    fn rejects_non_bijection() {
        let i = inst();
        assert!(Placement::new(&i, vec![0, 1, 2, 3, 4, 4]).is_err());
        assert!(Placement::new(&i, vec![0, 1, 2, 3, 4]).is_err());
        assert!(Placement::new(&i, vec![0, 1, 2, 3, 4, 6]).is_err());
        assert!(Placement::new(&i, vec![5, 4, 3, 2, 1, 0]).is_ok());
    }

    #[test]
    fn from_classes_respects_multiplicity() {
        let i = inst();
        let p = Placement::from_classes(&i, &[0, 0, 0, 1, 1, 2]).unwrap();
        assert_eq!(p.class_grid(&i), vec![0, 0, 0, 1, 1, 2]);
        assert_eq!(p.slots(), &[0, 2, 5, 1, 4, 3]);
        assert!(Placement::from_classes(&i, &[0, 0, 0, 0, 1, 2]).is_err());
    }

    #[test]
    fn flips_are_involutions() {
        let i = inst();
        let p = Placement::new(&i, vec![3, 1, 4, 0, 5, 2]).unwrap();
        assert_eq!(p.flipped_horizontally().flipped_horizontally(), p);
        assert_eq!(p.flipped_vertically().slots(), &[0, 5, 2, 3, 1, 4]);
        assert_eq!(p.transposed().transposed(), p);
        assert_eq!(p.transposed().slot_at(Cell::new(2, 1)), p.slot_at(Cell::new(1, 2)));
        let imgs = flip_images(2, 3, p.slots());
        assert_eq!(imgs[1], p.flipped_horizontally().slots());
        assert_eq!(imgs[2], p.flipped_vertically().slots());
    }
}
