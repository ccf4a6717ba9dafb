//! Redelmeier enumeration of fixed polyominoes.

use crate::error::{Error, Result};
use crate::polyomino::{CellRef, Polyomino};

pub const MAX_ENUM_CELLS: usize = 10;

type Emit<'a> = dyn FnMut(&[(i32, i32)]) + 'a;

struct Redelmeier {
    target: usize,
    span: i32,
    // cells ever queued on the current branch
    seen: Vec<bool>,
    current: Vec<(i32, i32)>,
}

impl Redelmeier {
    fn slot(&self, x: i32, y: i32) -> usize {
        (y * (2 * self.span + 1) + x + self.span) as usize
    }

    fn allowed(&self, x: i32, y: i32) -> bool {
        (y > 0 || (y == 0 && x >= 0)) && x.abs() <= self.span && y <= self.span
    }

    fn grow(&mut self, mut untried: Vec<(i32, i32)>, emit: &mut Emit<'_>) {
        while let Some((x, y)) = untried.pop() {
            self.current.push((x, y));
            if self.current.len() == self.target {
                emit(&self.current);
            } else {
                let mut fresh = Vec::new();
                for (nx, ny) in [(x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)] {
                    if self.allowed(nx, ny) {
                        let slot = self.slot(nx, ny);
                        if !self.seen[slot] {
                            self.seen[slot] = true;
                            fresh.push((nx, ny));
                        }
                    }
                }
                let mut next = untried.clone();
                next.extend(&fresh);
                self.grow(next, emit);
                for (nx, ny) in fresh {
                    let slot = self.slot(nx, ny);
                    self.seen[slot] = false;
                }
            }
            self.current.pop();
        }
    }
}

/// Calls `visit` once per fixed polyomino with exactly `n` cells, in the
/// enumeration order of the search.
pub fn for_each_fixed_polyomino(n: usize, mut visit: impl FnMut(Polyomino)) -> Result<()> {
    if !(1..=MAX_ENUM_CELLS).contains(&n) {
        return Err(Error::OutOfRange(n));
    }
    let span = n as i32;
    let mut search = Redelmeier {
        target: n,
        span,
        seen: vec![false; ((2 * span + 1) * (span + 1)) as usize],
        current: Vec::with_capacity(n),
    };
    let origin = search.slot(0, 0);
    search.seen[origin] = true;
    search.grow(vec![(0, 0)], &mut |cells| {
        let p = Polyomino::new(cells.iter().map(|&(x, y)| CellRef::new(x, y)))
            .expect("redelmeier emits connected sets");
        visit(p);
    });
    Ok(())
}

/// All fixed polyominoes with `n` cells, sorted by their cell lists.
pub fn enumerate_fixed_polyominoes(n: usize) -> Result<Vec<Polyomino>> {
    let mut out = Vec::new();
    for_each_fixed_polyomino(n, |p| out.push(p))?;
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        assert_eq!(
            enumerate_fixed_polyominoes(1).unwrap(),
            vec![Polyomino::rectangle(1, 1)]
        );
        assert_eq!(enumerate_fixed_polyominoes(2).unwrap().len(), 2);
        assert_eq!(enumerate_fixed_polyominoes(3).unwrap().len(), 6);
    }

    #[test]
    fn range_checked() {
        assert_eq!(enumerate_fixed_polyominoes(0), Err(Error::OutOfRange(0)));
        assert_eq!(enumerate_fixed_polyominoes(11), Err(Error::OutOfRange(11)));
    }

    #[test]
    fn no_duplicates() {
        let all = enumerate_fixed_polyominoes(7).unwrap();
        let mut dedup = all.clone();
        dedup.dedup();
        assert_eq!(all.len(), dedup.len());
        assert!(all.iter().all(|p| p.len() == 7));
    }
}
