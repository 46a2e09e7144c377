//! Exact small-`n` censuses of the splitting -> resilient function chain,
//! and bound tables.

use std::collections::HashSet;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::ci::{face_counts, is_correlation_immune, is_resilient, is_resilient_spectral};
use crate::codec::{code_space_size, injectivity_audit};
use crate::constructions::{boolean_lift, q4_from_splitting, Phi};
use crate::error::{Error, Result};
use crate::splitting::{
    count_matchings, count_splittings, count_splittings_without_zero_faces, enumerate_splittings,
    Splitting,
};
use crate::table::TruthTable;
use crate::MAX_ENUM_N;

/// Largest `n` for which the census builds and verifies every function.
pub const MAX_FUNCTION_CENSUS_N: usize = 3;

/// `log2` of an arbitrarily large integer; `-inf` for zero.
pub fn log2_big(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 53 {
        return x.to_f64().expect("fits").log2();
    }
    let shift = bits - 53;
    (x >> shift).to_f64().expect("fits").log2() + shift as f64
}

#[derive(Debug, Clone, PartialEq)]
pub struct CensusReport {
    pub n: usize,
    pub phi: Phi,
    pub splitting_count: u64,
    pub splitting_count_no_0faces: u64,
    pub matching_count: u64,
    pub distinct_q4_tables: Option<u64>,
    pub distinct_boolean_lifts: Option<u64>,
    pub distinct_direction_codes: Option<u64>,
    pub splitting_upper_bound: BigUint,
    /// Fields left empty and why.
    pub skipped: Vec<String>,
}

#[derive(Serialize)]
struct CensusJson<'a> {
    n: usize,
    phi: String,
    splitting_count: u64,
    splitting_count_no_0faces: u64,
    matching_count: u64,
    distinct_q4_tables: Option<u64>,
    distinct_boolean_lifts: Option<u64>,
    distinct_direction_codes: Option<u64>,
    splitting_upper_bound: String,
    log2_splitting_count: f64,
    log2_splitting_count_no_0faces: f64,
    log2_matching_count: Option<f64>,
    log2_distinct_q4_tables: Option<f64>,
    log2_distinct_boolean_lifts: Option<f64>,
    log2_splitting_upper_bound: f64,
    skipped: &'a [String],
}

fn log2_u64(x: u64) -> f64 {
    (x as f64).log2()
}

fn fmt_log2(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.6}")
    } else {
        "-inf".to_string()
    }
}

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

impl CensusReport {
    pub const CSV_HEADER: &'static str = "n,phi,splittings,splittings_no_0faces,matchings,\
distinct_q4_tables,distinct_boolean_lifts,distinct_direction_codes,splitting_upper_bound,\
log2_splittings,log2_splittings_no_0faces,log2_matchings,log2_distinct_q4_tables,\
log2_distinct_boolean_lifts,log2_splitting_upper_bound";

    pub fn csv_row(&self) -> String {
        [
            self.n.to_string(),
            self.phi.to_string(),
            self.splitting_count.to_string(),
            self.splitting_count_no_0faces.to_string(),
            self.matching_count.to_string(),
            opt(self.distinct_q4_tables),
            opt(self.distinct_boolean_lifts),
            opt(self.distinct_direction_codes),
            self.splitting_upper_bound.to_string(),
            fmt_log2(log2_u64(self.splitting_count)),
            fmt_log2(log2_u64(self.splitting_count_no_0faces)),
            fmt_log2(log2_u64(self.matching_count)),
            opt(self.distinct_q4_tables.map(|x| fmt_log2(log2_u64(x)))),
            opt(self.distinct_boolean_lifts.map(|x| fmt_log2(log2_u64(x)))),
            fmt_log2(log2_big(&self.splitting_upper_bound)),
        ]
        .join(",")
    }

    pub fn to_json(&self) -> String {
        let finite = |x: f64| x.is_finite().then_some(x);
        let doc = CensusJson {
            n: self.n,
            phi: self.phi.to_string(),
            splitting_count: self.splitting_count,
            splitting_count_no_0faces: self.splitting_count_no_0faces,
            matching_count: self.matching_count,
            distinct_q4_tables: self.distinct_q4_tables,
            distinct_boolean_lifts: self.distinct_boolean_lifts,
            distinct_direction_codes: self.distinct_direction_codes,
            splitting_upper_bound: self.splitting_upper_bound.to_string(),
            log2_splitting_count: log2_u64(self.splitting_count),
            log2_splitting_count_no_0faces: log2_u64(self.splitting_count_no_0faces),
            log2_matching_count: finite(log2_u64(self.matching_count)),
            log2_distinct_q4_tables: self.distinct_q4_tables.map(log2_u64),
            log2_distinct_boolean_lifts: self.distinct_boolean_lifts.map(log2_u64),
            log2_splitting_upper_bound: log2_big(&self.splitting_upper_bound),
            skipped: &self.skipped,
        };
        serde_json::to_string(&doc).expect("census serializes")
    }

    /// `matchings <= splittings <= (n+1)^(2^(n-1))`, and one distinct
    /// function per splitting wherever functions were counted.
    pub fn check_invariants(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Verification(format!("census n = {}: {msg}", self.n)));
        if self.matching_count > self.splitting_count {
            return fail(format!(
                "matchings {} exceed splittings {}",
                self.matching_count, self.splitting_count
            ));
        }
        if self.splitting_count_no_0faces > self.splitting_count {
            return fail("splittings without 0-faces exceed all splittings".into());
        }
        if BigUint::from(self.splitting_count) > self.splitting_upper_bound {
            return fail(format!(
                "splittings {} exceed the direction-word bound {}",
                self.splitting_count, self.splitting_upper_bound
            ));
        }
        for (name, value) in [
            ("distinct_q4_tables", self.distinct_q4_tables),
            ("distinct_boolean_lifts", self.distinct_boolean_lifts),
        ] {
            if let Some(v) = value {
                if v != self.splitting_count {
                    return fail(format!(
                        "{name} = {v} but splittings = {}",
                        self.splitting_count
                    ));
                }
            }
        }
        if let Some(c) = self.distinct_direction_codes {
            if BigUint::from(c) > self.splitting_upper_bound || c > self.splitting_count {
                return fail(format!("distinct_direction_codes = {c} out of range"));
            }
        }
        Ok(())
    }
}

/// Checks every promise made about the quaternary function of a splitting
/// and its Boolean lift: balance, order `n - 1` correlation immunity, two
/// ones on every line, and order `n - 1` resilience under both checkers.
pub fn verify_construction(s: &Splitting, q4: &TruthTable, lift: &TruthTable) -> Result<()> {
    let n = s.arity();
    let fail = |what: &str| {
        Err(Error::Verification(format!(
            "splitting {} ({}): {what}",
            s.hash(),
            s
        )))
    };
    if n == 0 {
        return Ok(());
    }
    if !q4.is_balanced() {
        return fail("quaternary table unbalanced");
    }
    if !is_correlation_immune(q4, n - 1)? {
        return fail("quaternary table not correlation immune of order n-1");
    }
    if !face_counts(q4, n - 1)?
        .iter()
        .all(|(_, counts)| counts.iter().all(|&c| c == 2))
    {
        return fail("a line of Q_4^n does not hold exactly two ones");
    }
    if !is_resilient(lift, n - 1)? {
        return fail("Boolean lift fails the face-counting resilience check");
    }
    if !is_resilient_spectral(lift, n - 1)? {
        return fail("Boolean lift fails the spectral resilience check");
    }
    Ok(())
}

/// Runs the full counting chain for `n`. Functions are built and verified
/// for `n <= 3`; at `n = 4` only splitting-level counts are filled.
pub fn census(n: usize, phi: Phi) -> Result<CensusReport> {
    if n > MAX_ENUM_N {
        return Err(Error::Capacity {
            what: "census",
            max: MAX_ENUM_N,
            n,
        });
    }
    let splitting_count = count_splittings(n)?;
    let splitting_count_no_0faces = count_splittings_without_zero_faces(n)?;
    let matching_count = if n == 0 { 0 } else { count_matchings(n)? };
    let mut skipped = Vec::new();

    let (distinct_q4_tables, distinct_boolean_lifts) = if n <= MAX_FUNCTION_CENSUS_N {
        let mut q4s = HashSet::new();
        let mut lifts = HashSet::new();
        for s in enumerate_splittings(n)? {
            let q4 = q4_from_splitting(&s)?;
            let lift = boolean_lift(&q4, phi)?;
            verify_construction(&s, &q4, &lift)?;
            q4s.insert(q4);
            lifts.insert(lift);
        }
        (Some(q4s.len() as u64), Some(lifts.len() as u64))
    } else {
        for field in ["distinct_q4_tables", "distinct_boolean_lifts"] {
            skipped.push(format!(
                "{field}: function-level census needs n <= {MAX_FUNCTION_CENSUS_N}"
            ));
        }
        (None, None)
    };

    let distinct_direction_codes = Some(injectivity_audit(n)?.codes);

    let report = CensusReport {
        n,
        phi,
        splitting_count,
        splitting_count_no_0faces,
        matching_count,
        distinct_q4_tables,
        distinct_boolean_lifts,
        distinct_direction_codes,
        splitting_upper_bound: code_space_size(n),
        skipped,
    };
    report.check_invariants()?;
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    /// Exact closed form.
    Exact,
    /// Counted by enumeration.
    Enumerated,
    /// Leading term of an asymptotic formula; not an equality at small n.
    Asymptotic,
}

impl BoundKind {
    fn as_str(self) -> &'static str {
        match self {
            BoundKind::Exact => "exact",
            BoundKind::Enumerated => "enumerated",
            BoundKind::Asymptotic => "asymptotic",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundRow {
    pub quantity: &'static str,
    pub formula: &'static str,
    pub kind: BoundKind,
    pub log2: f64,
    /// Exact decimal value when it has at most `EXACT_BITS` bits.
    pub exact: Option<String>,
}

/// Bound values larger than this many bits are reported in log2 only.
pub const EXACT_BITS: f64 = 1024.0;

/// Largest `n` accepted by [`bounds`].
pub const MAX_BOUNDS_N: usize = 1000;

/// Bound table for splittings of `Q_2^n` and resilient functions of order
/// `n - 1` on `2n` variables.
pub fn bounds(n: usize) -> Result<Vec<BoundRow>> {
    if n == 0 || n > MAX_BOUNDS_N {
        return Err(Error::InvalidArgument(format!(
            "bounds need 1 <= n <= {MAX_BOUNDS_N}, got {n}"
        )));
    }
    let half = 2f64.powi(n as i32 - 1);
    let mut rows = Vec::new();

    let simple_log2 = 2f64.powi(n as i32);
    rows.push(BoundRow {
        quantity: "simple_construction_count",
        formula: "2^(2^n)",
        kind: BoundKind::Exact,
        log2: simple_log2,
        exact: (simple_log2 <= EXACT_BITS)
            .then(|| (BigUint::from(1u32) << (1u64 << n)).to_string()),
    });

    let bound_log2 = half * ((n + 1) as f64).log2();
    rows.push(BoundRow {
        quantity: "splitting_upper_bound",
        formula: "(n+1)^(2^(n-1))",
        kind: BoundKind::Exact,
        log2: bound_log2,
        exact: (bound_log2 <= EXACT_BITS).then(|| code_space_size(n).to_string()),
    });

    if n <= MAX_ENUM_N {
        let count = count_splittings(n)?;
        rows.push(BoundRow {
            quantity: "splittings_enumerated",
            formula: "#splittings of Q_2^n",
            kind: BoundKind::Enumerated,
            log2: log2_u64(count),
            exact: Some(count.to_string()),
        });
    }

    rows.push(BoundRow {
        quantity: "splittings_asymptotic",
        formula: "n^(2^(n-1)(1+o(1)))",
        kind: BoundKind::Asymptotic,
        log2: half * (n as f64).log2(),
        exact: None,
    });
    rows.push(BoundRow {
        quantity: "resilient_lower_bound_asymptotic",
        formula: "(2n)^(2^(n-1)(1+o(1))) on 2n variables, order n-1",
        kind: BoundKind::Asymptotic,
        log2: half * ((2 * n) as f64).log2(),
        exact: None,
    });
    Ok(rows)
}

pub const BOUNDS_CSV_HEADER: &str = "quantity,formula,kind,log2,exact";

pub fn bounds_csv(rows: &[BoundRow]) -> String {
    let mut out = String::from(BOUNDS_CSV_HEADER);
    out.push('\n');
    for r in rows {
        let formula = if r.formula.contains(',') {
            format!("\"{}\"", r.formula)
        } else {
            r.formula.to_string()
        };
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.quantity,
            formula,
            r.kind.as_str(),
            fmt_log2(r.log2),
            r.exact.as_deref().unwrap_or("")
        ));
    }
    out
}
