//! Splittings of `Q_2^n` into pairwise disjoint faces.
//!
//! Enumeration is canonical backtracking: take the lowest-rank uncovered
//! vertex `v` and branch over every face whose minimum point is `v` and
//! which lies inside the uncovered set. Each partition is reached exactly
//! once. An exact-cover formulation over the face/vertex incidence gives an
//! independent count.

use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::exact_cover::ExactCover;
use crate::face::Face;
use crate::point::{unrank_unchecked, Alphabet, Point};
use crate::MAX_ENUM_N;

/// Splittings are only validated for cubes up to this arity.
pub const MAX_SPLITTING_N: usize = 20;

/// A partition of `Q_2^n` into faces, stored in canonical order (ascending
/// rank of each face's minimum point).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Splitting {
    n: usize,
    faces: Vec<Face>,
}

/// Why a list of faces is not a splitting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    BadFace {
        index: usize,
        reason: String,
    },
    Overlap {
        vertex: Point,
        first: usize,
        second: usize,
    },
    Gap {
        vertex: Point,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::BadFace { index, reason } => write!(f, "face #{index}: {reason}"),
            Violation::Overlap {
                vertex,
                first,
                second,
            } => write!(f, "faces #{first} and #{second} overlap at {vertex}"),
            Violation::Gap { vertex } => write!(f, "vertex {vertex} is not covered"),
        }
    }
}

impl From<Violation> for Error {
    fn from(v: Violation) -> Self {
        Error::InvalidSplitting(v.to_string())
    }
}

/// Checks that `faces` are binary faces of `Q_2^n`, pairwise disjoint and
/// covering. Reports the first offending face, the first doubly covered
/// vertex, or the lowest uncovered vertex, in that order.
pub fn validate_splitting(n: usize, faces: &[Face]) -> std::result::Result<(), Violation> {
    if n > MAX_SPLITTING_N {
        return Err(Violation::BadFace {
            index: 0,
            reason: format!("arity {n} exceeds {MAX_SPLITTING_N}"),
        });
    }
    for (index, face) in faces.iter().enumerate() {
        if face.alphabet() != Alphabet::Binary {
            return Err(Violation::BadFace {
                index,
                reason: "face is not binary".into(),
            });
        }
        if face.arity() != n {
            return Err(Violation::BadFace {
                index,
                reason: format!("face has arity {}, expected {n}", face.arity()),
            });
        }
    }
    let mut owner: Vec<Option<usize>> = vec![None; 1 << n];
    for (index, face) in faces.iter().enumerate() {
        for v in face.point_ranks() {
            if let Some(first) = owner[v] {
                return Err(Violation::Overlap {
                    vertex: Point(unrank_unchecked(v, Alphabet::Binary, n)),
                    first,
                    second: index,
                });
            }
            owner[v] = Some(index);
        }
    }
    if let Some(v) = owner.iter().position(Option::is_none) {
        return Err(Violation::Gap {
            vertex: Point(unrank_unchecked(v, Alphabet::Binary, n)),
        });
    }
    Ok(())
}

#[derive(Serialize, Deserialize)]
struct SplittingJson {
    n: usize,
    faces: Vec<FaceJson>,
}

#[derive(Serialize, Deserialize)]
struct FaceJson {
    fixed: Vec<(usize, u8)>,
}

impl Splitting {
    /// Validates `faces` and stores them in canonical order.
    pub fn new(n: usize, mut faces: Vec<Face>) -> Result<Self> {
        validate_splitting(n, &faces)?;
        faces.sort_by_key(Face::min_rank);
        Ok(Splitting { n, faces })
    }

    /// Already validated and canonically ordered.
    pub(crate) fn from_canonical(n: usize, faces: Vec<Face>) -> Self {
        debug_assert!(validate_splitting(n, &faces).is_ok());
        debug_assert!(faces.windows(2).all(|w| w[0].min_rank() < w[1].min_rank()));
        Splitting { n, faces }
    }

    /// The trivial splitting `{Q_2^n}`.
    pub fn whole(n: usize) -> Self {
        Splitting {
            n,
            faces: vec![Face::whole(Alphabet::Binary, n)],
        }
    }

    /// The splitting into `2^n` single vertices.
    pub fn singletons(n: usize) -> Self {
        let full = (1u32 << n) - 1;
        Splitting {
            n,
            faces: (0..=full)
                .map(|v| Face::from_binary_masks(n, 0, v))
                .collect(),
        }
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    /// The unique face containing the vertex of rank `v`.
    pub fn face_of_rank(&self, v: usize) -> &Face {
        let v = v as u32;
        self.faces
            .iter()
            .find(|f| {
                let (free, base) = f.binary_masks();
                v & !free == base
            })
            .expect("splitting covers every vertex")
    }

    pub fn face_containing(&self, x: &Point) -> Option<&Face> {
        self.faces.iter().find(|f| f.contains(x))
    }

    /// Face index for every vertex, indexed by rank.
    pub fn owner_table(&self) -> Vec<usize> {
        let mut owner = vec![0; 1 << self.n];
        for (i, f) in self.faces.iter().enumerate() {
            for v in f.point_ranks() {
                owner[v] = i;
            }
        }
        owner
    }

    pub fn has_zero_faces(&self) -> bool {
        self.faces.iter().any(|f| f.dimension() == 0)
    }

    /// True iff every face is an edge.
    pub fn is_perfect_matching(&self) -> bool {
        self.faces.iter().all(|f| f.dimension() == 1)
    }

    /// Canonical compact JSON, `{"n":..,"faces":[{"fixed":[[coord,value],..]},..]}`.
    pub fn to_json(&self) -> String {
        let doc = SplittingJson {
            n: self.n,
            faces: self
                .faces
                .iter()
                .map(|f| FaceJson {
                    fixed: f.fixed().to_vec(),
                })
                .collect(),
        };
        serde_json::to_string(&doc).expect("splitting serializes")
    }

    /// Parses the JSON form; faces may come in any order.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: SplittingJson = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        if doc.n > MAX_SPLITTING_N {
            return Err(Error::Capacity {
                what: "splitting",
                max: MAX_SPLITTING_N,
                n: doc.n,
            });
        }
        let faces = doc
            .faces
            .into_iter()
            .map(|f| Face::new(Alphabet::Binary, doc.n, f.fixed))
            .collect::<Result<Vec<_>>>()?;
        Splitting::new(doc.n, faces)
    }

    /// First 16 hex digits of the SHA-256 of the canonical JSON.
    pub fn hash(&self) -> String {
        let digest = Sha256::digest(self.to_json().as_bytes());
        digest[..8].iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Display for Splitting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, face) in self.faces.iter().enumerate() {
            if i > 0 {
                write!(f, " | ")?;
            }
            write!(f, "{face}")?;
        }
        write!(f, "}}")
    }
}

/// Which face dimensions an enumeration may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DimFilter(u32);

impl DimFilter {
    pub const ALL: DimFilter = DimFilter(u32::MAX);
    /// Faces of dimension at least 1.
    pub const NO_ZERO_FACES: DimFilter = DimFilter(u32::MAX - 1);
    /// Edges only.
    pub const EDGES: DimFilter = DimFilter(1 << 1);

    #[inline]
    pub fn allows(self, dim: u32) -> bool {
        self.0 >> dim & 1 == 1
    }
}

fn check_capacity(what: &'static str, n: usize) -> Result<()> {
    if n > MAX_ENUM_N {
        return Err(Error::Capacity {
            what,
            max: MAX_ENUM_N,
            n,
        });
    }
    Ok(())
}

/// Bitset of the vertices (by rank) covered by the face `(free, base)`.
#[inline]
fn cover_mask(free: u32, base: u32) -> u64 {
    let mut mask = 0u64;
    let mut s = 0u32;
    loop {
        mask |= 1u64 << (base | s);
        s = s.wrapping_sub(free) & free;
        if s == 0 {
            return mask;
        }
    }
}

struct Frame {
    covered: u64,
    anchor: u32,
    pool: u32,
    next_free: Option<u32>,
}

/// Stream of splittings in canonical generation order.
pub struct SplittingIter {
    n: usize,
    full: u64,
    filter: DimFilter,
    stack: Vec<Frame>,
    path: Vec<(u32, u32)>,
}

impl SplittingIter {
    fn new(n: usize, filter: DimFilter) -> Self {
        let full = if n == 6 {
            u64::MAX
        } else {
            (1u64 << (1u32 << n)) - 1
        };
        let mut it = SplittingIter {
            n,
            full,
            filter,
            stack: Vec::new(),
            path: Vec::new(),
        };
        it.push_frame(0);
        it
    }

    fn push_frame(&mut self, covered: u64) {
        let anchor = (!covered).trailing_zeros();
        let pool = !anchor & ((1u32 << self.n) - 1);
        self.stack.push(Frame {
            covered,
            anchor,
            pool,
            next_free: Some(0),
        });
    }

    fn current(&self) -> Splitting {
        let faces = self
            .path
            .iter()
            .map(|&(free, base)| Face::from_binary_masks(self.n, free, base))
            .collect();
        Splitting::from_canonical(self.n, faces)
    }
}

impl Iterator for SplittingIter {
    type Item = Splitting;

    fn next(&mut self) -> Option<Splitting> {
        loop {
            let frame = self.stack.last_mut()?;
            let Some(free) = frame.next_free else {
                self.stack.pop();
                if !self.stack.is_empty() {
                    self.path.pop();
                }
                continue;
            };
            let nxt = free.wrapping_sub(frame.pool) & frame.pool;
            frame.next_free = (nxt != 0).then_some(nxt);
            if !self.filter.allows(free.count_ones()) {
                continue;
            }
            let mask = cover_mask(free, frame.anchor);
            if mask & frame.covered != 0 {
                continue;
            }
            let covered = frame.covered | mask;
            self.path.push((free, frame.anchor));
            if covered == self.full {
                let s = self.current();
                self.path.pop();
                return Some(s);
            }
            self.push_frame(covered);
        }
    }
}

/// Every splitting of `Q_2^n` exactly once, `n <= 4`.
pub fn enumerate_splittings(n: usize) -> Result<SplittingIter> {
    enumerate_filtered(n, DimFilter::ALL)
}

/// Splittings using only faces of dimension >= 1.
pub fn enumerate_splittings_without_zero_faces(n: usize) -> Result<SplittingIter> {
    enumerate_filtered(n, DimFilter::NO_ZERO_FACES)
}

/// Perfect matchings of the `n`-cube graph as splittings into edges.
pub fn enumerate_matchings(n: usize) -> Result<SplittingIter> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "perfect matchings need n >= 1".into(),
        ));
    }
    enumerate_filtered(n, DimFilter::EDGES)
}

pub fn enumerate_filtered(n: usize, filter: DimFilter) -> Result<SplittingIter> {
    check_capacity("splitting enumeration", n)?;
    Ok(SplittingIter::new(n, filter))
}

/// Exact-cover instance whose rows are the admissible faces of `Q_2^n`.
fn exact_cover_instance(n: usize, filter: DimFilter) -> (ExactCover, Vec<(u32, u32)>) {
    let full = (1u32 << n) - 1;
    let mut ec = ExactCover::new(1 << n);
    let mut faces = Vec::new();
    for free in 0..=full {
        if !filter.allows(free.count_ones()) {
            continue;
        }
        let fixed = full & !free;
        // base ranges over the subsets of the fixed coordinates
        let mut base = 0u32;
        loop {
            let cover = cover_mask(free, base);
            ec.add_row((0..1usize << n).filter(|&v| cover >> v & 1 == 1));
            faces.push((free, base));
            base = base.wrapping_sub(fixed) & fixed;
            if base == 0 {
                break;
            }
        }
    }
    (ec, faces)
}

/// Splittings found by the exact-cover solver, canonically ordered.
pub fn exact_cover_splittings(n: usize, filter: DimFilter) -> Result<Vec<Splitting>> {
    check_capacity("exact-cover enumeration", n)?;
    let (ec, rows) = exact_cover_instance(n, filter);
    let mut out: Vec<Splitting> = ec
        .solutions()
        .into_iter()
        .map(|sol| {
            let mut faces: Vec<Face> = sol
                .into_iter()
                .map(|r| Face::from_binary_masks(n, rows[r].0, rows[r].1))
                .collect();
            faces.sort_by_key(Face::min_rank);
            Splitting::from_canonical(n, faces)
        })
        .collect();
    out.sort();
    Ok(out)
}

pub fn count_backtracking(n: usize, filter: DimFilter) -> Result<u64> {
    Ok(enumerate_filtered(n, filter)?.count() as u64)
}

pub fn count_exact_cover(n: usize, filter: DimFilter) -> Result<u64> {
    check_capacity("exact-cover count", n)?;
    Ok(exact_cover_instance(n, filter).0.count())
}

/// Count by both strategies; disagreement is a verification error.
pub fn count_cross_checked(n: usize, filter: DimFilter) -> Result<u64> {
    let a = count_backtracking(n, filter)?;
    let b = count_exact_cover(n, filter)?;
    if a != b {
        return Err(Error::Verification(format!(
            "splitting count mismatch at n = {n}: backtracking {a}, exact cover {b}"
        )));
    }
    Ok(a)
}

pub fn count_splittings(n: usize) -> Result<u64> {
    count_cross_checked(n, DimFilter::ALL)
}

pub fn count_splittings_without_zero_faces(n: usize) -> Result<u64> {
    count_cross_checked(n, DimFilter::NO_ZERO_FACES)
}

pub fn count_matchings(n: usize) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "perfect matchings need n >= 1".into(),
        ));
    }
    count_cross_checked(n, DimFilter::EDGES)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn face(n: usize, fixed: &[(usize, u8)]) -> Face {
        Face::new(Alphabet::Binary, n, fixed.iter().copied()).unwrap()
    }

    #[test]
    fn validate_examples() {
        assert!(validate_splitting(2, &[Face::whole(Alphabet::Binary, 2)]).is_ok());
        assert_eq!(
            validate_splitting(2, &[face(2, &[(1, 0)]), face(2, &[(1, 0)])]),
            Err(Violation::Overlap {
                vertex: Point::new([0, 0]),
                first: 0,
                second: 1
            })
        );
        assert_eq!(
            validate_splitting(2, &[face(2, &[(1, 0)])]),
            Err(Violation::Gap {
                vertex: Point::new([1, 0])
            })
        );
        assert!(matches!(
            validate_splitting(2, &[Face::whole(Alphabet::Binary, 3)]),
            Err(Violation::BadFace { index: 0, .. })
        ));
        assert!(matches!(
            validate_splitting(1, &[Face::whole(Alphabet::Quaternary, 1)]),
            Err(Violation::BadFace { .. })
        ));
    }

    #[test]
    fn canonical_order_is_by_min_rank() {
        let s = Splitting::new(2, vec![face(2, &[(1, 1)]), face(2, &[(1, 0)])]).unwrap();
        assert_eq!(s.faces()[0], face(2, &[(1, 0)]));
        assert_eq!(s.face_of_rank(3), &face(2, &[(1, 1)]));
    }

    #[test]
    fn json_round_trip_and_format() {
        let s = Splitting::new(2, vec![face(2, &[(1, 1)]), face(2, &[(1, 0)])]).unwrap();
        assert_eq!(
            s.to_json(),
            r#"{"n":2,"faces":[{"fixed":[[1,0]]},{"fixed":[[1,1]]}]}"#
        );
        assert_eq!(Splitting::from_json(&s.to_json()).unwrap(), s);
        assert_eq!(s.hash().len(), 16);
        assert!(matches!(
            Splitting::from_json(r#"{"n":2,"faces":[{"fixed":[[1,0]]}]}"#),
            Err(Error::InvalidSplitting(_))
        ));
        assert!(matches!(
            Splitting::from_json("{\"n\":2,"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_splittings(0).unwrap().count(), 1);
        assert_eq!(enumerate_splittings(1).unwrap().count(), 2);
        assert_eq!(enumerate_splittings(2).unwrap().count(), 8);
        assert_eq!(enumerate_matchings(1).unwrap().count(), 1);
        assert_eq!(enumerate_matchings(2).unwrap().count(), 2);
        assert_eq!(enumerate_matchings(3).unwrap().count(), 9);
        assert!(enumerate_matchings(0).is_err());
        assert!(matches!(
            enumerate_splittings(5),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn n0_splitting_is_single_vertex() {
        let all: Vec<_> = enumerate_splittings(0).unwrap().collect();
        assert_eq!(all, vec![Splitting::whole(0)]);
        assert_eq!(Splitting::whole(0), Splitting::singletons(0));
    }

    #[test]
    fn square_splittings_by_shape() {
        let all: Vec<_> = enumerate_splittings(2).unwrap().collect();
        let shape = |s: &Splitting| {
            let mut d: Vec<usize> = s.faces().iter().map(Face::dimension).collect();
            d.sort();
            d
        };
        let count = |d: &[usize]| all.iter().filter(|s| shape(s) == d).count();
        assert_eq!(count(&[2]), 1);
        assert_eq!(count(&[1, 1]), 2);
        assert_eq!(count(&[0, 0, 1]), 4);
        assert_eq!(count(&[0, 0, 0, 0]), 1);
    }

    #[test]
    fn every_emitted_splitting_is_valid_and_unique() {
        for n in 0..=3 {
            let all: Vec<_> = enumerate_splittings(n).unwrap().collect();
            for s in &all {
                assert!(validate_splitting(n, s.faces()).is_ok());
            }
            let set: BTreeSet<_> = all.iter().cloned().collect();
            assert_eq!(set.len(), all.len());
            let ec: BTreeSet<_> = exact_cover_splittings(n, DimFilter::ALL)
                .unwrap()
                .into_iter()
                .collect();
            assert_eq!(set, ec);
        }
    }

    #[test]
    fn filters_agree_with_post_filtering() {
        for n in 1..=3 {
            let all: Vec<_> = enumerate_splittings(n).unwrap().collect();
            let m: Vec<_> = all
                .iter()
                .filter(|s| s.is_perfect_matching())
                .cloned()
                .collect();
            assert_eq!(enumerate_matchings(n).unwrap().collect::<Vec<_>>(), m);
            let z: Vec<_> = all
                .iter()
                .filter(|s| !s.has_zero_faces())
                .cloned()
                .collect();
            assert_eq!(
                enumerate_splittings_without_zero_faces(n)
                    .unwrap()
                    .collect::<Vec<_>>(),
                z
            );
        }
    }

    #[test]
    fn counts_cross_check() {
        assert_eq!(count_splittings(1).unwrap(), 2);
        assert_eq!(count_splittings(2).unwrap(), 8);
        assert_eq!(count_matchings(3).unwrap(), 9);
        assert_eq!(count_splittings_without_zero_faces(1).unwrap(), 1);
        assert_eq!(count_splittings_without_zero_faces(2).unwrap(), 3);
    }
}
