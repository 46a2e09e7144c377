//! Direction words for splittings of `Q_2^n`.
//!
//! Every even-weight vertex `x` gets a label in `0..=n`: `0` when its face is
//! a single vertex, otherwise a coordinate `d` such that `x ⊕ e_d` lies in
//! the same face and has the smallest weight among such neighbours. Words
//! index the even vertices in ascending rank order, so there are
//! `(n + 1)^(2^(n-1))` possible words. Decoding is a consistency search over
//! all splittings, since a word need not determine its splitting.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::face::Face;
use crate::splitting::{enumerate_splittings, Splitting};
use crate::MAX_ENUM_N;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DirectionCode {
    n: usize,
    labels: Vec<u8>,
}

/// Ranks of the even-weight vertices of `Q_2^n`, ascending. Empty for
/// `n = 0`, where the word carries no information.
pub fn even_vertices(n: usize) -> Vec<u32> {
    if n == 0 {
        return Vec::new();
    }
    (0..1u32 << n).filter(|v| v.count_ones() % 2 == 0).collect()
}

/// `(n + 1)^(2^(n-1))`, the number of direction words (1 for `n = 0`).
pub fn code_space_size(n: usize) -> BigUint {
    if n == 0 {
        return BigUint::from(1u32);
    }
    assert!(n <= 32, "code space of n = {n} is too large to materialize");
    BigUint::from(n as u64 + 1).pow(1u32 << (n - 1))
}

impl DirectionCode {
    pub fn new(n: usize, labels: Vec<u8>) -> Result<Self> {
        let expected = even_vertices(n).len();
        if labels.len() != expected {
            return Err(Error::InvalidCode(format!(
                "expected {expected} labels for n = {n}, got {}",
                labels.len()
            )));
        }
        if let Some(&bad) = labels.iter().find(|&&l| l as usize > n) {
            return Err(Error::InvalidCode(format!("label {bad} exceeds n = {n}")));
        }
        Ok(DirectionCode { n, labels })
    }

    /// Parses comma-separated labels, e.g. `"1,2"`.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let text = text.trim();
        let labels = if text.is_empty() {
            Vec::new()
        } else {
            text.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<u8>()
                        .map_err(|_| Error::InvalidCode(format!("bad label {t:?}")))
                })
                .collect::<Result<Vec<_>>>()?
        };
        Self::new(n, labels)
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }
}

impl fmt::Display for DirectionCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.labels.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Labels allowed for vertex `v` inside `face`, ascending.
fn admissible_labels(n: usize, face: &Face, v: u32) -> Vec<u8> {
    if face.dimension() == 0 {
        return vec![0];
    }
    let free = face.free_coords();
    let descending: Vec<u8> = free
        .iter()
        .filter(|&&c| v & crate::point::coord_bit(n, c) != 0)
        .map(|&c| c as u8)
        .collect();
    if descending.is_empty() {
        free.iter().map(|&c| c as u8).collect()
    } else {
        descending
    }
}

/// Deterministic word: the smallest admissible label at every vertex.
pub fn encode_splitting(s: &Splitting) -> DirectionCode {
    let n = s.arity();
    let labels = even_vertices(n)
        .into_iter()
        .map(|v| admissible_labels(n, s.face_of_rank(v as usize), v)[0])
        .collect();
    DirectionCode { n, labels }
}

/// Every word obtainable by some choice of minimum-weight neighbour,
/// lexicographically ordered.
pub fn admissible_codes(s: &Splitting) -> Vec<DirectionCode> {
    let n = s.arity();
    let choices: Vec<Vec<u8>> = even_vertices(n)
        .into_iter()
        .map(|v| admissible_labels(n, s.face_of_rank(v as usize), v))
        .collect();
    let mut out = vec![Vec::with_capacity(choices.len())];
    for options in &choices {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<u8>| {
                options.iter().map(move |&l| {
                    let mut w = prefix.clone();
                    w.push(l);
                    w
                })
            })
            .collect();
    }
    out.into_iter()
        .map(|labels| DirectionCode { n, labels })
        .collect()
}

/// Whether `c` is one of the admissible words of `s`.
pub fn is_admissible(s: &Splitting, c: &DirectionCode) -> bool {
    let n = s.arity();
    c.n == n
        && even_vertices(n)
            .into_iter()
            .zip(&c.labels)
            .all(|(v, l)| admissible_labels(n, s.face_of_rank(v as usize), v).contains(l))
}

/// All splittings admitting the word `c`, in enumeration order.
pub fn consistent_splittings(c: &DirectionCode) -> Result<Vec<Splitting>> {
    if c.n > MAX_ENUM_N {
        return Err(Error::Capacity {
            what: "decoding",
            max: MAX_ENUM_N,
            n: c.n,
        });
    }
    Ok(enumerate_splittings(c.n)?
        .filter(|s| is_admissible(s, c))
        .collect())
}

/// A word produced by more than one splitting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Collision {
    pub code: DirectionCode,
    pub members: Vec<Splitting>,
}

/// Grouping of all splittings of `Q_2^n` by their deterministic word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InjectivityAudit {
    pub n: usize,
    pub splittings: u64,
    pub codes: u64,
    pub collisions: Vec<Collision>,
}

#[derive(Serialize)]
struct AuditJson {
    splittings: u64,
    codes: u64,
    collisions: Vec<CollisionJson>,
}

#[derive(Serialize)]
struct CollisionJson {
    code: String,
    members: Vec<String>,
}

impl InjectivityAudit {
    pub fn is_injective(&self) -> bool {
        self.collisions.is_empty()
    }

    /// `{"splittings":..,"codes":..,"collisions":[{"code":"1,1","members":[hash,..]}]}`.
    pub fn to_json(&self) -> String {
        let doc = AuditJson {
            splittings: self.splittings,
            codes: self.codes,
            collisions: self
                .collisions
                .iter()
                .map(|c| CollisionJson {
                    code: c.code.to_string(),
                    members: c.members.iter().map(Splitting::hash).collect(),
                })
                .collect(),
        };
        serde_json::to_string(&doc).expect("audit serializes")
    }
}

pub fn injectivity_audit(n: usize) -> Result<InjectivityAudit> {
    let mut groups: BTreeMap<DirectionCode, Vec<Splitting>> = BTreeMap::new();
    let mut total = 0u64;
    for s in enumerate_splittings(n)? {
        total += 1;
        groups.entry(encode_splitting(&s)).or_default().push(s);
    }
    let codes = groups.len() as u64;
    let collisions = groups
        .into_iter()
        .filter(|(_, members)| members.len() > 1)
        .map(|(code, members)| Collision { code, members })
        .collect();
    Ok(InjectivityAudit {
        n,
        splittings: total,
        codes,
        collisions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point::Alphabet;

    fn split2(fixed_coord: usize) -> Splitting {
        Splitting::new(
            2,
            vec![
                Face::new(Alphabet::Binary, 2, [(fixed_coord, 0)]).unwrap(),
                Face::new(Alphabet::Binary, 2, [(fixed_coord, 1)]).unwrap(),
            ],
        )
        .unwrap()
    }

    fn code(n: usize, s: &str) -> DirectionCode {
        DirectionCode::parse(n, s).unwrap()
    }

    #[test]
    fn encode_examples() {
        assert_eq!(encode_splitting(&Splitting::singletons(2)), code(2, "0,0"));
        assert_eq!(encode_splitting(&split2(2)), code(2, "1,1"));
        assert_eq!(encode_splitting(&Splitting::whole(2)), code(2, "1,1"));
        assert_eq!(
            encode_splitting(&Splitting::whole(0)).labels(),
            &[] as &[u8]
        );
    }

    #[test]
    fn admissible_examples() {
        let all: Vec<String> = admissible_codes(&Splitting::whole(2))
            .iter()
            .map(ToString::to_string)
            .collect();
        assert_eq!(all, ["1,1", "1,2", "2,1", "2,2"]);
        assert_eq!(admissible_codes(&split2(1)), vec![code(2, "2,2")]);
        assert_eq!(admissible_codes(&Splitting::whole(1)), vec![code(1, "1")]);
    }

    #[test]
    fn decode_examples() {
        assert_eq!(
            consistent_splittings(&code(2, "0,0")).unwrap(),
            vec![Splitting::singletons(2)]
        );
        assert_eq!(
            consistent_splittings(&code(2, "2,1")).unwrap(),
            vec![Splitting::whole(2)]
        );
        let mut got = consistent_splittings(&code(2, "1,1")).unwrap();
        got.sort();
        let mut want = vec![Splitting::whole(2), split2(2)];
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn audit_examples() {
        let a1 = injectivity_audit(1).unwrap();
        assert_eq!((a1.splittings, a1.codes), (2, 2));
        assert!(a1.is_injective());

        let a2 = injectivity_audit(2).unwrap();
        assert_eq!((a2.splittings, a2.codes), (8, 7));
        assert_eq!(a2.collisions.len(), 1);
        assert_eq!(a2.collisions[0].code, code(2, "1,1"));
        assert_eq!(a2.collisions[0].members.len(), 2);

        let a0 = injectivity_audit(0).unwrap();
        assert_eq!((a0.splittings, a0.codes), (1, 1));
        assert!(a0.is_injective());
        assert_eq!(
            a0.to_json(),
            r#"{"splittings":1,"codes":1,"collisions":[]}"#
        );
    }

    #[test]
    fn code_validation() {
        assert!(DirectionCode::parse(2, "1").is_err());
        assert!(DirectionCode::parse(2, "1,3").is_err());
        assert!(DirectionCode::parse(2, "1,x").is_err());
        assert_eq!(DirectionCode::parse(0, "").unwrap().labels().len(), 0);
        assert!(matches!(
            consistent_splittings(&DirectionCode::new(5, vec![0; 16]).unwrap()),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn code_space() {
        assert_eq!(code_space_size(1), BigUint::from(2u32));
        assert_eq!(code_space_size(2), BigUint::from(9u32));
        assert_eq!(code_space_size(3), BigUint::from(256u32));
        assert_eq!(code_space_size(4), BigUint::from(390_625u32));
    }

    #[test]
    fn forced_words_for_matchings_and_singletons() {
        for n in 1..=3 {
            for s in enumerate_splittings(n).unwrap() {
                if s.is_perfect_matching() || s.faces().iter().all(|f| f.dimension() == 0) {
                    assert_eq!(admissible_codes(&s).len(), 1, "{s}");
                }
            }
        }
    }
}
