//! Correlation immunity and resilience.
//!
//! `f` is correlation immune of order `r` when every face obtained by fixing
//! exactly `r` coordinates holds the same number of ones; resilient when it is
//! additionally balanced. Two independent checkers are provided: the face
//! counting definition (any alphabet) and the Walsh spectrum criterion
//! (binary only).

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::face::Face;
use crate::point::Alphabet;
use crate::table::TruthTable;
use crate::walsh::walsh_transform;

/// Number of points `x` in `face` with `f(x) = 1`.
pub fn ones_count_on_face(f: &TruthTable, face: &Face) -> Result<usize> {
    if face.alphabet() != f.alphabet() || face.arity() != f.arity() {
        return Err(Error::DimensionMismatch {
            expected_q: f.q(),
            expected_n: f.arity(),
            q: face.alphabet().size(),
            n: face.arity(),
        });
    }
    Ok(face
        .point_ranks()
        .into_iter()
        .filter(|&i| f.value_at(i))
        .count())
}

/// All `k`-subsets of `1..=n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for c in start..=n {
            if n - c + 1 < k - cur.len() {
                break;
            }
            cur.push(c);
            go(c + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(1, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// Ones counts of every face fixing exactly the coordinates `coords`,
/// indexed by the rank of the fixed symbols (in coordinate order).
fn projection_counts(f: &TruthTable, coords: &[usize]) -> Vec<usize> {
    let q = f.alphabet();
    let b = q.bits() as usize;
    let n = f.arity();
    let digit = q.size() - 1;
    let mut counts = vec![0usize; q.cube_size(coords.len())];
    for (i, &v) in f.values().iter().enumerate() {
        if v {
            let bucket = coords.iter().fold(0usize, |acc, &c| {
                (acc << b) | ((i >> (b * (n - c))) & digit)
            });
            counts[bucket] += 1;
        }
    }
    counts
}

/// Ones counts of all faces fixing exactly `order` coordinates, grouped by
/// the fixed coordinate set (lexicographic), then by fixed symbols.
pub fn face_counts(f: &TruthTable, order: usize) -> Result<Vec<(Vec<usize>, Vec<usize>)>> {
    check_order(f, order)?;
    Ok(combinations(f.arity(), order)
        .into_iter()
        .map(|coords| {
            let counts = projection_counts(f, &coords);
            (coords, counts)
        })
        .collect())
}

fn check_order(f: &TruthTable, order: usize) -> Result<()> {
    if order > f.arity() {
        return Err(Error::OrderOutOfRange {
            order,
            n: f.arity(),
        });
    }
    Ok(())
}

/// Face-counting checker. Order 0 is vacuously true.
pub fn is_correlation_immune(f: &TruthTable, order: usize) -> Result<bool> {
    check_order(f, order)?;
    if order == 0 {
        return Ok(true);
    }
    let mut expected = None;
    for coords in combinations(f.arity(), order) {
        for c in projection_counts(f, &coords) {
            match expected {
                None => expected = Some(c),
                Some(e) if e != c => return Ok(false),
                Some(_) => {}
            }
        }
    }
    Ok(true)
}

pub fn is_resilient(f: &TruthTable, order: usize) -> Result<bool> {
    Ok(is_correlation_immune(f, order)? && f.is_balanced())
}

/// Largest `r` with `f` resilient of order `r`; `None` if `f` is unbalanced.
pub fn max_resiliency_order(f: &TruthTable) -> Option<usize> {
    if !f.is_balanced() {
        return None;
    }
    // CI is monotone in the order, so scan upward until the first failure.
    let mut best = 0;
    for r in 1..=f.arity() {
        if is_correlation_immune(f, r).unwrap_or(false) {
            best = r;
        } else {
            break;
        }
    }
    Some(best)
}

/// Spectral checker: `W(w) = 0` for all masks with `1 <= wt(w) <= order`.
pub fn is_ci_spectral(f: &TruthTable, order: usize) -> Result<bool> {
    if f.alphabet() != Alphabet::Binary {
        return Err(Error::NotBinary(f.q()));
    }
    check_order(f, order)?;
    Ok(walsh_transform(f)?.vanishes_up_to(order))
}

/// Spectral resilience: the CI criterion plus `W(0) = 0`.
pub fn is_resilient_spectral(f: &TruthTable, order: usize) -> Result<bool> {
    if f.alphabet() != Alphabet::Binary {
        return Err(Error::NotBinary(f.q()));
    }
    check_order(f, order)?;
    let s = walsh_transform(f)?;
    Ok(s.at(0) == 0 && s.vanishes_up_to(order))
}

/// Number of binary truth tables on `n <= 4` variables that are resilient of
/// order `order`, by scanning all `2^(2^n)` tables.
pub fn exhaustive_resilient_census(n: usize, order: usize) -> Result<u64> {
    if n > crate::MAX_ENUM_N {
        return Err(Error::Capacity {
            what: "exhaustive resilient census",
            max: crate::MAX_ENUM_N,
            n,
        });
    }
    if order > n {
        return Err(Error::OrderOutOfRange { order, n });
    }
    let total = 1u64 << (1u32 << n);
    (0..total)
        .into_par_iter()
        .map(|code| {
            let f = TruthTable::binary_from_code(n, code)?;
            Ok(is_resilient(&f, order)? as u64)
        })
        .sum()
}
