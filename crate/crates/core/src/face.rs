//! Faces (axis-aligned subcubes) of `Q_q^n`.

use std::fmt;

use crate::error::{Error, Result};
use crate::point::{coord_bit, rank_unchecked, Alphabet, Point};

/// The set of points of `Q_q^n` agreeing with `fixed` on its coordinates.
///
/// Coordinates are 1-based; `fixed` is kept sorted by coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face {
    n: usize,
    q: Alphabet,
    fixed: Vec<(usize, u8)>,
}

impl Face {
    pub fn new(
        q: Alphabet,
        n: usize,
        fixed: impl IntoIterator<Item = (usize, u8)>,
    ) -> Result<Self> {
        let mut fixed: Vec<(usize, u8)> = fixed.into_iter().collect();
        fixed.sort_unstable();
        for w in fixed.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::InvalidFace(format!(
                    "coordinate {} fixed twice",
                    w[0].0
                )));
            }
        }
        for &(c, s) in &fixed {
            if c == 0 || c > n {
                return Err(Error::InvalidFace(format!(
                    "coordinate {c} outside 1..={n}"
                )));
            }
            if s as usize >= q.size() {
                return Err(Error::InvalidFace(format!(
                    "symbol {s} at coordinate {c} is not below q = {}",
                    q.size()
                )));
            }
        }
        Ok(Face { n, q, fixed })
    }

    /// The whole cube `Q_q^n`.
    pub fn whole(q: Alphabet, n: usize) -> Self {
        Face {
            n,
            q,
            fixed: Vec::new(),
        }
    }

    /// Binary face with free coordinates `free` and all other coordinates
    /// taken from `base`, both given as rank bit masks.
    pub(crate) fn from_binary_masks(n: usize, free: u32, base: u32) -> Self {
        let fixed = (1..=n)
            .filter(|&c| free & coord_bit(n, c) == 0)
            .map(|c| (c, (base & coord_bit(n, c) != 0) as u8))
            .collect();
        Face {
            n,
            q: Alphabet::Binary,
            fixed,
        }
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn alphabet(&self) -> Alphabet {
        self.q
    }

    pub fn fixed(&self) -> &[(usize, u8)] {
        &self.fixed
    }

    pub fn is_fixed(&self, coord: usize) -> bool {
        self.fixed.iter().any(|&(c, _)| c == coord)
    }

    /// Free coordinates in ascending order.
    pub fn free_coords(&self) -> Vec<usize> {
        (1..=self.n).filter(|&c| !self.is_fixed(c)).collect()
    }

    pub fn dimension(&self) -> usize {
        self.n - self.fixed.len()
    }

    /// Number of points, `q^dim`.
    pub fn size(&self) -> usize {
        self.q.cube_size(self.dimension())
    }

    pub fn contains(&self, x: &Point) -> bool {
        x.arity() == self.n && self.contains_coords(x.coords())
    }

    #[inline]
    pub(crate) fn contains_coords(&self, coords: &[u8]) -> bool {
        self.fixed.iter().all(|&(c, s)| coords[c - 1] == s)
    }

    /// Point with all free coordinates set to 0, the face's lowest rank.
    pub fn min_point(&self) -> Point {
        let mut coords = vec![0u8; self.n];
        for &(c, s) in &self.fixed {
            coords[c - 1] = s;
        }
        Point(coords)
    }

    pub fn min_rank(&self) -> usize {
        rank_unchecked(self.min_point().coords(), self.q)
    }

    /// All points of the face in ascending rank order.
    pub fn points(&self) -> Vec<Point> {
        let free = self.free_coords();
        let base = self.min_point();
        let q = self.q.size();
        (0..self.size())
            .map(|mut k| {
                let mut coords = base.0.clone();
                for &c in free.iter().rev() {
                    coords[c - 1] = (k % q) as u8;
                    k /= q;
                }
                Point(coords)
            })
            .collect()
    }

    /// Ranks of all points, ascending.
    pub fn point_ranks(&self) -> Vec<usize> {
        self.points()
            .iter()
            .map(|p| rank_unchecked(p.coords(), self.q))
            .collect()
    }

    /// Rank bit masks `(free, base)` of a binary face.
    pub(crate) fn binary_masks(&self) -> (u32, u32) {
        debug_assert_eq!(self.q, Alphabet::Binary);
        let mut free = (1u32 << self.n) - 1;
        let mut base = 0u32;
        for &(c, s) in &self.fixed {
            free &= !coord_bit(self.n, c);
            if s == 1 {
                base |= coord_bit(self.n, c);
            }
        }
        (free, base)
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // x_1=0,x_3=1 ; "*" for the whole cube
        if self.fixed.is_empty() {
            return write!(f, "*");
        }
        for (i, (c, s)) in self.fixed.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "x{c}={s}")?;
        }
        Ok(())
    }
}
