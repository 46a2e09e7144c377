//! Points of `Q_q^n` and their positional ranks.
//!
//! Coordinate 1 is the most significant digit: `rank(x) = Σ x_i · q^(n-i)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Alphabet of a hypercube. Only binary and quaternary cubes are supported.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Alphabet {
    Binary,
    Quaternary,
}

impl Alphabet {
    pub fn from_size(q: usize) -> Result<Self> {
        match q {
            2 => Ok(Alphabet::Binary),
            4 => Ok(Alphabet::Quaternary),
            _ => Err(Error::UnsupportedAlphabet(q)),
        }
    }

    #[inline]
    pub fn size(self) -> usize {
        match self {
            Alphabet::Binary => 2,
            Alphabet::Quaternary => 4,
        }
    }

    /// Bits per symbol.
    #[inline]
    pub(crate) fn bits(self) -> u32 {
        match self {
            Alphabet::Binary => 1,
            Alphabet::Quaternary => 2,
        }
    }

    /// Number of points of the `n`-dimensional cube, `q^n`.
    pub fn cube_size(self, n: usize) -> usize {
        1usize << (self.bits() as usize * n)
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.size())
    }
}

/// An element of `Q_q^n`, stored as its coordinate symbols `(x_1, ..., x_n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point(pub Vec<u8>);

impl Point {
    pub fn new(coords: impl Into<Vec<u8>>) -> Self {
        Point(coords.into())
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[u8] {
        &self.0
    }

    pub fn validate(&self, q: Alphabet) -> Result<()> {
        for (i, &s) in self.0.iter().enumerate() {
            if s as usize >= q.size() {
                return Err(Error::InvalidPoint {
                    coord: i + 1,
                    symbol: s,
                    q: q.size(),
                });
            }
        }
        Ok(())
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, ")")
    }
}

/// Positional rank of `x` in `Q_q^n`, coordinate 1 most significant.
pub fn rank(x: &Point, q: Alphabet) -> Result<usize> {
    x.validate(q)?;
    Ok(rank_unchecked(&x.0, q))
}

#[inline]
pub(crate) fn rank_unchecked(coords: &[u8], q: Alphabet) -> usize {
    let b = q.bits();
    coords
        .iter()
        .fold(0usize, |acc, &s| (acc << b) | s as usize)
}

/// Inverse of [`rank`].
pub fn unrank(index: usize, q: Alphabet, n: usize) -> Result<Point> {
    let size = q.cube_size(n);
    if index >= size {
        return Err(Error::IndexOutOfRange { index, size });
    }
    Ok(Point(unrank_unchecked(index, q, n)))
}

pub(crate) fn unrank_unchecked(index: usize, q: Alphabet, n: usize) -> Vec<u8> {
    let b = q.bits() as usize;
    let digit_mask = q.size() - 1;
    (0..n)
        .map(|i| ((index >> (b * (n - 1 - i))) & digit_mask) as u8)
        .collect()
}

/// Parity of the Hamming weight of a binary point.
pub fn parity_weight(y: &Point) -> Result<u8> {
    y.validate(Alphabet::Binary)?;
    Ok(y.0.iter().fold(0u8, |acc, &s| acc ^ s))
}

/// Bit mask for coordinate `coord` (1-based) in the rank of a binary point.
#[inline]
pub(crate) fn coord_bit(n: usize, coord: usize) -> u32 {
    1u32 << (n - coord)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&Point::new([1, 0, 1]), Alphabet::Binary).unwrap(), 5);
        assert_eq!(rank(&Point::new([3, 2]), Alphabet::Quaternary).unwrap(), 14);
        assert_eq!(rank(&Point::new([0]), Alphabet::Binary).unwrap(), 0);
    }

    #[test]
    fn rank_rejects_large_symbol() {
        let err = rank(&Point::new([0, 2]), Alphabet::Binary).unwrap_err();
        assert_eq!(
            err,
            Error::InvalidPoint {
                coord: 2,
                symbol: 2,
                q: 2
            }
        );
        assert!(rank(&Point::new([4]), Alphabet::Quaternary).is_err());
    }

    #[test]
    fn unrank_out_of_range() {
        assert!(unrank(8, Alphabet::Binary, 3).is_err());
        assert_eq!(unrank(0, Alphabet::Binary, 0).unwrap(), Point::new([]));
    }

    #[test]
    fn parity_examples() {
        assert_eq!(parity_weight(&Point::new([1, 0, 1])).unwrap(), 0);
        assert_eq!(parity_weight(&Point::new([0, 0, 0])).unwrap(), 0);
        assert_eq!(parity_weight(&Point::new([1, 1, 1])).unwrap(), 1);
        assert!(parity_weight(&Point::new([2])).is_err());
    }

    #[test]
    fn alphabet_sizes() {
        assert_eq!(Alphabet::from_size(3), Err(Error::UnsupportedAlphabet(3)));
        assert_eq!(Alphabet::Quaternary.cube_size(3), 64);
    }

    proptest! {
        #[test]
        fn rank_unrank_bijection(quaternary in any::<bool>(), n in 0usize..7, seed in any::<usize>()) {
            let q = if quaternary { Alphabet::Quaternary } else { Alphabet::Binary };
            let size = q.cube_size(n);
            let index = seed % size;
            let p = unrank(index, q, n).unwrap();
            prop_assert_eq!(p.arity(), n);
            prop_assert_eq!(rank(&p, q).unwrap(), index);
        }
    }
}
