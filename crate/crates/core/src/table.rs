//! Truth tables `f: Q_q^n -> {0,1}` and their text file format.
//!
//! File format: line 1 is `"q n"`, line 2 is the `q^n` characters of the
//! table, character `i` being `f(unrank(i))`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::point::{rank, unrank_unchecked, Alphabet, Point};

/// Truth tables larger than this are refused.
pub const MAX_TABLE_LEN: usize = 1 << 26;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TruthTable {
    q: Alphabet,
    n: usize,
    values: Vec<bool>,
}

impl TruthTable {
    pub fn new(q: Alphabet, n: usize, values: Vec<bool>) -> Result<Self> {
        let expected = checked_len(q, n)?;
        if values.len() != expected {
            return Err(Error::LengthMismatch {
                expected,
                got: values.len(),
            });
        }
        Ok(TruthTable { q, n, values })
    }

    /// Builds a table by evaluating `f` on every point in rank order.
    pub fn from_fn(q: Alphabet, n: usize, mut f: impl FnMut(&Point) -> bool) -> Result<Self> {
        let len = checked_len(q, n)?;
        let values = (0..len)
            .map(|i| f(&Point(unrank_unchecked(i, q, n))))
            .collect();
        Ok(TruthTable { q, n, values })
    }

    /// Builds a table by evaluating `f` on every rank.
    pub fn from_index_fn(q: Alphabet, n: usize, f: impl FnMut(usize) -> bool) -> Result<Self> {
        let len = checked_len(q, n)?;
        Ok(TruthTable {
            q,
            n,
            values: (0..len).map(f).collect(),
        })
    }

    /// Parses a bare `0`/`1` string, e.g. `"0110"`.
    pub fn from_bits(q: Alphabet, n: usize, bits: &str) -> Result<Self> {
        let values = parse_bits(bits, 1)?;
        Self::new(q, n, values)
    }

    /// The binary table on `n <= 6` variables whose bit string is the
    /// `2^n`-digit binary expansion of `code`.
    pub fn binary_from_code(n: usize, code: u64) -> Result<Self> {
        if n > 6 {
            return Err(Error::Capacity {
                what: "binary_from_code",
                max: 6,
                n,
            });
        }
        let len = 1usize << n;
        Self::from_index_fn(Alphabet::Binary, n, |i| (code >> (len - 1 - i)) & 1 == 1)
    }

    pub fn alphabet(&self) -> Alphabet {
        self.q
    }

    pub fn q(&self) -> usize {
        self.q.size()
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    #[inline]
    pub fn value_at(&self, index: usize) -> bool {
        self.values[index]
    }

    pub fn eval(&self, x: &Point) -> Result<bool> {
        if x.arity() != self.n {
            return Err(Error::DimensionMismatch {
                expected_q: self.q(),
                expected_n: self.n,
                q: self.q(),
                n: x.arity(),
            });
        }
        Ok(self.values[rank(x, self.q)?])
    }

    /// Number of ones.
    pub fn weight(&self) -> usize {
        self.values.iter().filter(|&&b| b).count()
    }

    pub fn is_balanced(&self) -> bool {
        2 * self.weight() == self.values.len()
    }

    pub fn complement(&self) -> Self {
        TruthTable {
            q: self.q,
            n: self.n,
            values: self.values.iter().map(|b| !b).collect(),
        }
    }

    /// The table as a `0`/`1` string in rank order.
    pub fn bit_string(&self) -> String {
        self.values
            .iter()
            .map(|&b| if b { '1' } else { '0' })
            .collect()
    }

    /// Serialization in the two-line file format, newline terminated.
    pub fn to_file_string(&self) -> String {
        format!("{} {}\n{}\n", self.q(), self.n, self.bit_string())
    }

    /// Parses the two-line file format. Trailing blank lines are accepted.
    pub fn parse_file(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| parse_err(1, 1, "missing header line"))?;
        let header = header.trim_end_matches('\r');
        let mut fields = header.split(' ');
        let q_str = fields.next().unwrap_or("");
        let q_val: usize = q_str
            .parse()
            .map_err(|_| parse_err(1, 1, format!("expected alphabet size, found {q_str:?}")))?;
        let q = Alphabet::from_size(q_val)
            .map_err(|_| parse_err(1, 1, format!("alphabet size must be 2 or 4, found {q_val}")))?;
        let n_col = q_str.len() + 2;
        let n_str = fields
            .next()
            .ok_or_else(|| parse_err(1, n_col, "missing arity"))?;
        let n: usize = n_str
            .parse()
            .map_err(|_| parse_err(1, n_col, format!("expected arity, found {n_str:?}")))?;
        if let Some(extra) = fields.next() {
            return Err(parse_err(
                1,
                n_col + n_str.len() + 1,
                format!("unexpected trailing field {extra:?}"),
            ));
        }
        let expected = checked_len(q, n).map_err(|e| parse_err(1, n_col, e.to_string()))?;
        let body = lines
            .next()
            .ok_or_else(|| parse_err(2, 1, "missing truth table line"))?
            .trim_end_matches('\r');
        let values = parse_bits(body, 2)?;
        if values.len() != expected {
            return Err(parse_err(
                2,
                values.len() + 1,
                format!("expected {expected} table entries, found {}", values.len()),
            ));
        }
        for (offset, line) in lines.enumerate() {
            if !line.trim().is_empty() {
                return Err(parse_err(
                    offset + 3,
                    1,
                    "unexpected content after truth table",
                ));
            }
        }
        Ok(TruthTable { q, n, values })
    }
}

impl fmt::Display for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.bit_string())
    }
}

impl FromStr for TruthTable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse_file(s)
    }
}

fn checked_len(q: Alphabet, n: usize) -> Result<usize> {
    let bits = q.bits() as usize * n;
    if bits > MAX_TABLE_LEN.trailing_zeros() as usize {
        return Err(Error::Capacity {
            what: "truth table",
            max: MAX_TABLE_LEN.trailing_zeros() as usize / q.bits() as usize,
            n,
        });
    }
    Ok(1usize << bits)
}

fn parse_bits(s: &str, line: usize) -> Result<Vec<bool>> {
    s.chars()
        .enumerate()
        .map(|(i, c)| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(parse_err(
                line,
                i + 1,
                format!("unexpected character {other:?}"),
            )),
        })
        .collect()
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(q: Alphabet, n: usize, bits: &str) -> TruthTable {
        TruthTable::from_bits(q, n, bits).unwrap()
    }

    #[test]
    fn balancedness_examples() {
        assert!(t(Alphabet::Binary, 2, "0110").is_balanced());
        assert!(!t(Alphabet::Binary, 2, "0000").is_balanced());
        assert!(t(Alphabet::Quaternary, 1, "0011").is_balanced());
    }

    #[test]
    fn length_is_checked() {
        assert_eq!(
            TruthTable::from_bits(Alphabet::Binary, 2, "011"),
            Err(Error::LengthMismatch {
                expected: 4,
                got: 3
            })
        );
    }

    #[test]
    fn file_format_is_bit_exact() {
        let f = t(Alphabet::Binary, 2, "0011");
        assert_eq!(f.to_file_string(), "2 2\n0011\n");
        assert_eq!(TruthTable::parse_file("2 2\n0011\n").unwrap(), f);
        assert_eq!(TruthTable::parse_file("2 2\r\n0011").unwrap(), f);
        let g = t(Alphabet::Quaternary, 1, "0101");
        assert_eq!(g.to_file_string(), "4 1\n0101\n");
    }

    #[test]
    fn parse_errors_carry_position() {
        match TruthTable::parse_file("2 2\n01x1\n") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 3)),
            other => panic!("unexpected {other:?}"),
        }
        match TruthTable::parse_file("3 2\n0110\n") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (1, 1)),
            other => panic!("unexpected {other:?}"),
        }
        match TruthTable::parse_file("2 z\n0110\n") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (1, 3)),
            other => panic!("unexpected {other:?}"),
        }
        match TruthTable::parse_file("2 2\n011\n") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 4)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(TruthTable::parse_file("2 2\n").is_err());
        assert!(TruthTable::parse_file("2 2\n0110\n0110\n").is_err());
    }

    #[test]
    fn eval_follows_rank_order() {
        let f = t(Alphabet::Binary, 2, "0011");
        assert!(f.eval(&Point::new([1, 0])).unwrap());
        assert!(!f.eval(&Point::new([0, 1])).unwrap());
        assert!(f.eval(&Point::new([0])).is_err());
    }

    #[test]
    fn binary_code_matches_bit_string() {
        assert_eq!(
            TruthTable::binary_from_code(2, 0b0110)
                .unwrap()
                .bit_string(),
            "0110"
        );
        assert_eq!(
            TruthTable::binary_from_code(3, 0b0110_1001)
                .unwrap()
                .bit_string(),
            "01101001"
        );
    }
}
