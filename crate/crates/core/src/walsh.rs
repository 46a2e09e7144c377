//! Walsh–Hadamard spectrum of binary truth tables.
//!
//! Convention: `W(w) = Σ_x (-1)^(f(x) ⊕ <w,x>)`, masks ranked like points.

use crate::error::{Error, Result};
use crate::point::Alphabet;
use crate::table::TruthTable;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalshSpectrum {
    n: usize,
    coefficients: Vec<i64>,
}

impl WalshSpectrum {
    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.coefficients
    }

    pub fn at(&self, mask: usize) -> i64 {
        self.coefficients[mask]
    }

    /// `Σ_w W(w)^2`, which equals `4^n` for every Boolean function.
    pub fn energy(&self) -> i64 {
        self.coefficients.iter().map(|c| c * c).sum()
    }

    /// Largest `|W(w)|`.
    pub fn max_abs(&self) -> i64 {
        self.coefficients.iter().map(|c| c.abs()).max().unwrap_or(0)
    }

    /// Smallest nonzero mask weight carrying a nonzero coefficient, if any.
    pub fn min_nonzero_weight(&self) -> Option<u32> {
        self.coefficients
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, &c)| c != 0)
            .map(|(w, _)| w.count_ones())
            .min()
    }

    /// True iff `W(w) = 0` for every mask with `1 <= wt(w) <= order`.
    pub fn vanishes_up_to(&self, order: usize) -> bool {
        self.coefficients
            .iter()
            .enumerate()
            .skip(1)
            .all(|(w, &c)| c == 0 || w.count_ones() as usize > order)
    }
}

/// Fast Walsh–Hadamard transform, `n` butterfly stages.
pub fn walsh_transform(f: &TruthTable) -> Result<WalshSpectrum> {
    if f.alphabet() != Alphabet::Binary {
        return Err(Error::NotBinary(f.q()));
    }
    let mut a: Vec<i64> = f.values().iter().map(|&b| if b { -1 } else { 1 }).collect();
    let mut h = 1;
    while h < a.len() {
        for block in a.chunks_exact_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (x, y) in lo.iter_mut().zip(hi.iter_mut()) {
                let (s, d) = (*x + *y, *x - *y);
                *x = s;
                *y = d;
            }
        }
        h *= 2;
    }
    Ok(WalshSpectrum {
        n: f.arity(),
        coefficients: a,
    })
}
