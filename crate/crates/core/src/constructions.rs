//! Constructions of resilient functions.
//!
//! * [`simple_lift`] / [`xor_extend`]: `F(x, y) = f(x) ⊕ |y|`.
//! * [`q4_from_splitting`]: a splitting of `Q_2^n` induces a partition of
//!   `Q_4^n` into blocks under `z_i = 2u_i + v_i`; on the block of face `L`
//!   the function is `⊕_{i fixed in L} v_i ⊕ ⊕_{j free in L} u_j`.
//! * [`boolean_lift`]: `F(x, y) = f(φ(x_1, y_1), ..., φ(x_n, y_n))`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::point::{coord_bit, Alphabet};
use crate::splitting::Splitting;
use crate::table::TruthTable;

/// A bijection `Q_2^2 -> Q_4`: the permutation `perm` applied to the
/// canonical pairing `(x, y) -> 2x + y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Phi([u8; 4]);

impl Phi {
    pub const IDENTITY: Phi = Phi([0, 1, 2, 3]);
    /// `(x, y) -> 2y + x`.
    pub const SWAP: Phi = Phi([0, 2, 1, 3]);

    pub fn new(perm: [u8; 4]) -> Result<Self> {
        let mut seen = [false; 4];
        for &p in &perm {
            if p > 3 || seen[p as usize] {
                return Err(Error::InvalidArgument(format!(
                    "phi {perm:?} is not a permutation of 0..4"
                )));
            }
            seen[p as usize] = true;
        }
        Ok(Phi(perm))
    }

    /// All 24 bijections, lexicographic.
    pub fn all() -> Vec<Phi> {
        let mut out = Vec::with_capacity(24);
        for a in 0..4u8 {
            for b in 0..4u8 {
                for c in 0..4u8 {
                    let Some(d) = 6u8.checked_sub(a + b + c) else {
                        continue;
                    };
                    if let Ok(p) = Phi::new([a, b, c, d]) {
                        out.push(p);
                    }
                }
            }
        }
        out
    }

    #[inline]
    pub fn apply(self, x: u8, y: u8) -> u8 {
        self.0[(2 * x + y) as usize]
    }

    pub fn permutation(self) -> [u8; 4] {
        self.0
    }
}

impl Default for Phi {
    fn default() -> Self {
        Phi::IDENTITY
    }
}

impl fmt::Display for Phi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in self.0 {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl FromStr for Phi {
    type Err = Error;

    /// Four digits, e.g. `"0123"`.
    fn from_str(s: &str) -> Result<Self> {
        let digits: Vec<u8> = s
            .chars()
            .map(|c| c.to_digit(10).map(|d| d as u8))
            .collect::<Option<_>>()
            .ok_or_else(|| Error::InvalidArgument(format!("phi {s:?} must be four digits")))?;
        let perm: [u8; 4] = digits
            .try_into()
            .map_err(|_| Error::InvalidArgument(format!("phi {s:?} must be four digits")))?;
        Phi::new(perm)
    }
}

fn require_binary(f: &TruthTable) -> Result<()> {
    if f.alphabet() != Alphabet::Binary {
        return Err(Error::NotBinary(f.q()));
    }
    Ok(())
}

/// `result(x, y) = f(x) ⊕ |y|` over `extra >= 1` fresh variables `y`
/// appended after the variables of `f`.
pub fn xor_extend(f: &TruthTable, extra: usize) -> Result<TruthTable> {
    require_binary(f)?;
    if extra == 0 {
        return Err(Error::InvalidArgument(
            "xor_extend needs at least one new variable".into(),
        ));
    }
    let low = (1usize << extra) - 1;
    TruthTable::from_index_fn(Alphabet::Binary, f.arity() + extra, |i| {
        f.value_at(i >> extra) ^ ((i & low).count_ones() & 1 == 1)
    })
}

/// `F(x, y) = f(x) ⊕ |y|` with `x`, `y` each of the arity of `f`.
pub fn simple_lift(f: &TruthTable) -> Result<TruthTable> {
    require_binary(f)?;
    if f.arity() == 0 {
        // F(y) over zero extra variables is f itself
        return Ok(f.clone());
    }
    xor_extend(f, f.arity())
}

/// Quaternary function of the splitting `s` of `Q_2^n`; balanced and
/// correlation immune of order `n - 1`.
pub fn q4_from_splitting(s: &Splitting) -> Result<TruthTable> {
    let n = s.arity();
    let owner = s.owner_table();
    // per face: mask of fixed coordinates (in u-rank bits)
    let fixed_masks: Vec<u32> = s
        .faces()
        .iter()
        .map(|f| {
            f.fixed()
                .iter()
                .fold(0u32, |m, &(c, _)| m | coord_bit(n, c))
        })
        .collect();
    TruthTable::from_index_fn(Alphabet::Quaternary, n, |z| {
        // split z into its high bits u and low bits v, coordinate 1 first
        let (mut u, mut v) = (0u32, 0u32);
        for c in 1..=n {
            let digit = (z >> (2 * (n - c))) & 3;
            if digit & 2 != 0 {
                u |= coord_bit(n, c);
            }
            if digit & 1 != 0 {
                v |= coord_bit(n, c);
            }
        }
        let fixed = fixed_masks[owner[u as usize]];
        ((v & fixed) ^ (u & !fixed)).count_ones() & 1 == 1
    })
}

/// Boolean function on `2n` variables `(x_1..x_n, y_1..y_n)` obtained by
/// feeding each pair `(x_i, y_i)` through `phi` into the quaternary `f`.
pub fn boolean_lift(f: &TruthTable, phi: Phi) -> Result<TruthTable> {
    if f.alphabet() != Alphabet::Quaternary {
        return Err(Error::InvalidArgument(format!(
            "boolean_lift needs a quaternary table, got q = {}",
            f.q()
        )));
    }
    let n = f.arity();
    TruthTable::from_index_fn(Alphabet::Binary, 2 * n, |i| {
        let (xs, ys) = (i >> n, i & ((1 << n) - 1));
        let z = (0..n).fold(0usize, |acc, k| {
            let shift = n - 1 - k;
            let (x, y) = ((xs >> shift) & 1, (ys >> shift) & 1);
            (acc << 2) | phi.apply(x as u8, y as u8) as usize
        });
        f.value_at(z)
    })
}

/// `boolean_lift(q4_from_splitting(s), phi)`: resilient of order `n - 1`
/// on `2n` variables.
pub fn splitting_to_resilient(s: &Splitting, phi: Phi) -> Result<TruthTable> {
    boolean_lift(&q4_from_splitting(s)?, phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ci::{is_correlation_immune, is_resilient};
    use crate::face::Face;
    use crate::point::Point;

    fn bin(n: usize, bits: &str) -> TruthTable {
        TruthTable::from_bits(Alphabet::Binary, n, bits).unwrap()
    }

    fn quat(n: usize, bits: &str) -> TruthTable {
        TruthTable::from_bits(Alphabet::Quaternary, n, bits).unwrap()
    }

    fn x1_split() -> Splitting {
        Splitting::new(
            2,
            vec![
                Face::new(Alphabet::Binary, 2, [(1, 0)]).unwrap(),
                Face::new(Alphabet::Binary, 2, [(1, 1)]).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn phi_parsing() {
        assert_eq!("0123".parse::<Phi>().unwrap(), Phi::IDENTITY);
        assert_eq!("0213".parse::<Phi>().unwrap(), Phi::SWAP);
        assert!("0113".parse::<Phi>().is_err());
        assert!("012".parse::<Phi>().is_err());
        assert!("01a3".parse::<Phi>().is_err());
        assert_eq!(Phi::all().len(), 24);
        assert_eq!(Phi::SWAP.to_string(), "0213");
    }

    #[test]
    fn simple_lift_examples() {
        assert_eq!(simple_lift(&bin(1, "01")).unwrap(), bin(2, "0110"));
        assert_eq!(simple_lift(&bin(1, "00")).unwrap(), bin(2, "0101"));
        let parity4 = TruthTable::from_fn(Alphabet::Binary, 4, |p| {
            p.coords().iter().sum::<u8>() % 2 == 1
        })
        .unwrap();
        assert_eq!(simple_lift(&bin(2, "0110")).unwrap(), parity4);
        assert!(simple_lift(&quat(1, "0011")).is_err());
    }

    #[test]
    fn xor_extend_examples() {
        let parity3 = bin(3, "01101001");
        assert_eq!(xor_extend(&bin(1, "01"), 2).unwrap(), parity3);
        assert_eq!(xor_extend(&bin(2, "0110"), 1).unwrap(), parity3);
        assert!(is_resilient(&parity3, 2).unwrap());
        let g = xor_extend(&bin(2, "0011"), 1).unwrap();
        // x1 ⊕ y on (x1, x2, y)
        let expected =
            TruthTable::from_fn(Alphabet::Binary, 3, |p| p.coords()[0] ^ p.coords()[2] == 1)
                .unwrap();
        assert_eq!(g, expected);
        assert!(is_resilient(&g, 1).unwrap());
        assert!(xor_extend(&bin(1, "01"), 0).is_err());
    }

    #[test]
    fn q4_examples() {
        assert_eq!(
            q4_from_splitting(&Splitting::whole(1)).unwrap(),
            quat(1, "0011")
        );
        assert_eq!(
            q4_from_splitting(&Splitting::singletons(1)).unwrap(),
            quat(1, "0101")
        );
        assert_eq!(
            q4_from_splitting(&Splitting::whole(2)).unwrap(),
            quat(2, "0011001111001100")
        );
    }

    #[test]
    fn q4_matches_block_formula_on_canonical_block() {
        // B = {0,1}^k × {0,1,2,3}^(n-k): χ_1 on the first k coordinates,
        // χ_{2,3} on the rest
        let n = 3;
        for k in 0..=n {
            let face = Face::new(Alphabet::Binary, n, (1..=k).map(|c| (c, 0u8))).unwrap();
            let mut faces = vec![face.clone()];
            // complete the splitting with singletons
            for v in 0..(1usize << n) {
                let p = crate::point::unrank(v, Alphabet::Binary, n).unwrap();
                if !face.contains(&p) {
                    faces.push(
                        Face::new(
                            Alphabet::Binary,
                            n,
                            p.coords().iter().enumerate().map(|(i, &s)| (i + 1, s)),
                        )
                        .unwrap(),
                    );
                }
            }
            let s = Splitting::new(n, faces).unwrap();
            let f = q4_from_splitting(&s).unwrap();
            for z in 0..f.len() {
                let p = crate::point::unrank(z, Alphabet::Quaternary, n).unwrap();
                let in_block = p.coords()[..k].iter().all(|&s| s <= 1);
                if !in_block {
                    continue;
                }
                let expected = p.coords()[..k].iter().fold(false, |a, &s| a ^ (s == 1))
                    ^ p.coords()[k..].iter().fold(false, |a, &s| a ^ (s >= 2));
                assert_eq!(f.value_at(z), expected, "k={k} z={p}");
            }
        }
    }

    #[test]
    fn boolean_lift_examples() {
        assert_eq!(
            boolean_lift(&quat(1, "0011"), Phi::IDENTITY).unwrap(),
            bin(2, "0011")
        );
        assert_eq!(
            boolean_lift(&quat(1, "0101"), Phi::IDENTITY).unwrap(),
            bin(2, "0101")
        );
        assert_eq!(
            boolean_lift(&quat(1, "0011"), Phi::SWAP).unwrap(),
            bin(2, "0101")
        );
        assert!(boolean_lift(&bin(2, "0011"), Phi::IDENTITY).is_err());
    }

    #[test]
    fn pipeline_examples() {
        let f = splitting_to_resilient(&Splitting::whole(1), Phi::IDENTITY).unwrap();
        assert_eq!(f, bin(2, "0011"));
        assert!(is_resilient(&f, 0).unwrap());

        // variables (x1, x2, y1, y2)
        let g = splitting_to_resilient(&x1_split(), Phi::IDENTITY).unwrap();
        let y1_x2 =
            TruthTable::from_fn(Alphabet::Binary, 4, |p| p.coords()[2] ^ p.coords()[1] == 1)
                .unwrap();
        assert_eq!(g, y1_x2);
        assert!(is_resilient(&g, 1).unwrap());

        let h = splitting_to_resilient(&Splitting::whole(2), Phi::IDENTITY).unwrap();
        let x1_x2 =
            TruthTable::from_fn(Alphabet::Binary, 4, |p| p.coords()[0] ^ p.coords()[1] == 1)
                .unwrap();
        assert_eq!(h, x1_x2);
        assert!(is_resilient(&h, 1).unwrap());
    }

    #[test]
    fn q4_output_is_ci_for_all_phis_and_splittings_n2() {
        for s in crate::splitting::enumerate_splittings(2).unwrap() {
            let f = q4_from_splitting(&s).unwrap();
            assert!(f.is_balanced());
            assert!(is_correlation_immune(&f, 1).unwrap());
            for phi in Phi::all() {
                assert!(is_resilient(&boolean_lift(&f, phi).unwrap(), 1).unwrap());
            }
        }
    }

    #[test]
    fn eval_uses_block_layout() {
        // F(x1, y1) with F = f(φ(x1, y1)); x first
        let f = quat(1, "0001");
        let g = boolean_lift(&f, Phi::IDENTITY).unwrap();
        assert!(g.eval(&Point::new([1, 1])).unwrap());
        assert!(!g.eval(&Point::new([1, 0])).unwrap());
    }
}
