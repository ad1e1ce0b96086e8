//! Number of m-shift de Bruijn sequences:
//!
//! - `a^n! · a^{(m−n)(a^n−1)}` when `n <= m`,
//! - `(a^m!)^{a^{n−m}}` when `m <= n`.

use std::collections::HashSet;

use num_bigint::BigUint;
use num_traits::{One, Pow};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graphs::factorial;
use crate::limits::{Limits, MAX_ENUMERATION_LENGTH};
use crate::word::{DbParams, Symbol, Word};

/// Which closed form applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    OrderAtMostShift,
    ShiftAtMostOrder,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CountResult {
    /// The exact value, omitted when it would exceed the digit guard.
    pub exact: Option<BigUint>,
    pub log10: f64,
    /// Decimal digits of the exact value.
    pub digits: u64,
    pub branch: Branch,
}

impl CountResult {
    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "branch": self.branch,
            "log10": self.log10,
            "digits": self.digits,
        });
        if let Some(exact) = &self.exact {
            v["exact"] = Value::String(exact.to_string());
        }
        v
    }
}

/// Above this argument `log10(N!)` switches from direct summation to the
/// log-gamma function.
const DIRECT_LOG_FACTORIAL: f64 = 1e6;

fn log10_factorial(n: f64) -> f64 {
    if n <= DIRECT_LOG_FACTORIAL {
        (2..=n as u64).map(|k| (k as f64).log10()).sum()
    } else {
        libm::lgamma(n + 1.0) / std::f64::consts::LN_10
    }
}

/// `log10(#(m, n))` without forming the integer.
pub fn count_log10(p: DbParams) -> f64 {
    let a = p.a as f64;
    if p.n <= p.m {
        let words = a.powi(p.n as i32);
        log10_factorial(words) + (p.m - p.n) as f64 * (words - 1.0) * a.log10()
    } else {
        a.powi((p.n - p.m) as i32) * log10_factorial(a.powi(p.m as i32))
    }
}

fn digits_from_log10(log10: f64) -> u64 {
    log10.floor() as u64 + 1
}

fn guard_digits(log10: f64, limits: &Limits) -> Result<Option<u64>> {
    if !log10.is_finite() {
        return Err(Error::guard(
            "count magnitude",
            "beyond f64 range",
            f64::MAX,
        ));
    }
    let digits = digits_from_log10(log10);
    Ok((digits <= limits.max_digits).then_some(digits))
}

fn small_pow(a: u32, e: usize) -> Result<u64> {
    crate::word::checked_pow(a as u64, e)
}

fn exponent_u32(x: u64) -> Result<u32> {
    u32::try_from(x).map_err(|_| Error::guard("exponent", x, u32::MAX))
}

/// `a^n! · a^{(m−n)(a^n−1)}`
fn order_at_most_shift(p: DbParams) -> Result<BigUint> {
    let words = small_pow(p.a, p.n)?;
    let e = exponent_u32((p.m - p.n) as u64 * (words - 1))?;
    Ok(factorial(words) * BigUint::from(p.a).pow(e))
}

/// `(a^m!)^{a^{n−m}}`
fn shift_at_most_order(p: DbParams) -> Result<BigUint> {
    let block = factorial(small_pow(p.a, p.m)?);
    Ok(block.pow(exponent_u32(small_pow(p.a, p.n - p.m)?)?))
}

/// Closed-form count. The exact value is present only when its estimated
/// size is within `limits.max_digits`.
pub fn count_formula(p: DbParams) -> Result<CountResult> {
    count_formula_with(p, &Limits::default())
}

pub fn count_formula_with(p: DbParams, limits: &Limits) -> Result<CountResult> {
    let log10 = count_log10(p);
    let branch = if p.n <= p.m {
        Branch::OrderAtMostShift
    } else {
        Branch::ShiftAtMostOrder
    };
    let exact = match guard_digits(log10, limits)? {
        None => None,
        Some(_) => {
            let value = match branch {
                Branch::OrderAtMostShift => order_at_most_shift(p)?,
                Branch::ShiftAtMostOrder => shift_at_most_order(p)?,
            };
            if p.n == p.m {
                let other = shift_at_most_order(p)?;
                if other != value {
                    return Err(Error::Internal(format!(
                        "closed forms disagree at n = m: {value} vs {other}"
                    )));
                }
            }
            Some(value)
        }
    };
    let digits = match &exact {
        Some(x) => x.to_string().len() as u64,
        None => digits_from_log10(log10),
    };
    Ok(CountResult {
        exact,
        log10,
        digits,
        branch,
    })
}

/// Evaluates `#(m, n)` for `m <= n` by unwinding
/// `#(m, n) = (a^m!)^{a^{n−2m}(a^m−1)} · #(m, n−m)` until `n <= 2m`, where
/// `#(m, n) = (a^m!)^{a^{n−m}}`.
pub fn count_recursion(p: DbParams) -> Result<BigUint> {
    count_recursion_with(p, &Limits::default())
}

pub fn count_recursion_with(p: DbParams, limits: &Limits) -> Result<BigUint> {
    if p.m > p.n {
        return Err(Error::Precondition(format!(
            "recursion needs m <= n, got m={}, n={}",
            p.m, p.n
        )));
    }
    let log10 = count_log10(p);
    if guard_digits(log10, limits)?.is_none() {
        return Err(Error::guard(
            "count digits",
            digits_from_log10(log10),
            limits.max_digits,
        ));
    }
    let degree = small_pow(p.a, p.m)?;
    let block = factorial(degree);
    let mut result = BigUint::one();
    let mut n = p.n;
    while n > 2 * p.m {
        let e = small_pow(p.a, n - 2 * p.m)? * (degree - 1);
        result *= Pow::pow(&block, exponent_u32(e)?);
        n -= p.m;
    }
    result *= Pow::pow(&block, exponent_u32(small_pow(p.a, n - p.m)?)?);
    Ok(result)
}

/// Result of an exhaustive search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    pub count: BigUint,
    /// All sequences in lexicographic order, kept when there are at most
    /// [`Enumeration::SAMPLE_LIMIT`] of them.
    pub words: Option<Vec<Word>>,
}

impl Enumeration {
    pub const SAMPLE_LIMIT: usize = 1024;
}

/// Counts every word of length `m·a^n + n − m` whose modulo-`m` windows are
/// pairwise distinct, by depth-first search with pruning on repeats.
pub fn enumerate_all(p: DbParams, cap: u64) -> Result<Enumeration> {
    let len = p.sequence_length()?;
    if len > MAX_ENUMERATION_LENGTH {
        return Err(Error::guard(
            "enumeration length",
            len,
            MAX_ENUMERATION_LENGTH,
        ));
    }

    struct Search {
        a: u32,
        m: usize,
        n: usize,
        len: usize,
        cap: u64,
        count: u64,
        word: Vec<Symbol>,
        seen: HashSet<Vec<Symbol>>,
        words: Option<Vec<Word>>,
    }

    impl Search {
        fn run(&mut self) -> Result<()> {
            let pos = self.word.len();
            if pos == self.len {
                self.count += 1;
                if self.count > self.cap {
                    return Err(Error::CapExceeded { cap: self.cap });
                }
                if let Some(words) = &mut self.words {
                    if words.len() < Enumeration::SAMPLE_LIMIT {
                        words.push(Word::from(&self.word[..]));
                    } else {
                        self.words = None;
                    }
                }
                return Ok(());
            }
            for s in 0..self.a {
                self.word.push(s);
                let end = pos + 1;
                let closes_window = end >= self.n && (end - self.n).is_multiple_of(self.m);
                if closes_window {
                    let window = self.word[end - self.n..].to_vec();
                    if self.seen.insert(window.clone()) {
                        self.run()?;
                        self.seen.remove(&window);
                    }
                } else {
                    self.run()?;
                }
                self.word.pop();
            }
            Ok(())
        }
    }

    let mut search = Search {
        a: p.a,
        m: p.m,
        n: p.n,
        len: len as usize,
        cap,
        count: 0,
        word: Vec::with_capacity(len as usize),
        seen: HashSet::new(),
        words: Some(Vec::new()),
    };
    search.run()?;
    Ok(Enumeration {
        count: BigUint::from(search.count),
        words: search.words,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::limits::DEFAULT_ENUMERATION_CAP;
    use crate::verify::is_multishift_db;

    fn params(a: u32, m: usize, n: usize) -> DbParams {
        DbParams::new(a, m, n).unwrap()
    }

    fn exact(a: u32, m: usize, n: usize) -> BigUint {
        count_formula(params(a, m, n)).unwrap().exact.unwrap()
    }

    #[test]
    fn formula_examples() {
        assert_eq!(exact(2, 1, 1), BigUint::from(2u32));
        assert_eq!(exact(2, 2, 3), BigUint::from(576u32));
        assert_eq!(exact(2, 2, 1), BigUint::from(4u32));
        assert_eq!(exact(2, 3, 1), BigUint::from(8u32));
        assert_eq!(exact(2, 2, 4), BigUint::from(331_776u32));
        for n in 1..=8 {
            let ordinary = BigUint::from(2u32).pow(1u32 << (n - 1));
            assert_eq!(exact(2, 1, n), ordinary, "n={n}");
        }
    }

    #[test]
    fn branch_selection() {
        assert_eq!(
            count_formula(params(2, 3, 1)).unwrap().branch,
            Branch::OrderAtMostShift
        );
        assert_eq!(
            count_formula(params(2, 1, 3)).unwrap().branch,
            Branch::ShiftAtMostOrder
        );
    }

    #[test]
    fn recursion_examples() {
        assert_eq!(
            count_recursion(params(2, 1, 3)).unwrap(),
            BigUint::from(16u32)
        );
        assert_eq!(
            count_recursion(params(2, 2, 5)).unwrap(),
            BigUint::from(24u32).pow(8u32)
        );
        assert_eq!(
            count_recursion(params(2, 2, 4)).unwrap(),
            BigUint::from(331_776u32)
        );
        assert!(matches!(
            count_recursion(params(2, 3, 2)),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn large_counts_keep_only_the_logarithm() {
        let r = count_formula(params(2, 1, 40)).unwrap();
        assert!(r.exact.is_none());
        assert!((r.log10 - 2f64.powi(39) * 2f64.log10()).abs() / r.log10 < 1e-12);
        let r = count_formula(params(2, 2, 30)).unwrap();
        assert!(r.exact.is_none());
        assert!(r.digits > 1_000_000);
        assert!(count_recursion(params(2, 2, 30)).is_err());
    }

    #[test]
    fn digits_match_exact_values() {
        for (a, m, n) in [(2, 1, 5), (3, 2, 4), (2, 4, 3), (4, 1, 3)] {
            let r = count_formula(params(a, m, n)).unwrap();
            let e = r.exact.clone().unwrap();
            assert_eq!(r.digits as usize, e.to_string().len());
        }
    }

    #[test]
    fn enumeration_examples() {
        let cap = DEFAULT_ENUMERATION_CAP;
        assert_eq!(
            enumerate_all(params(2, 1, 2), cap).unwrap().count,
            BigUint::from(4u32)
        );
        assert_eq!(
            enumerate_all(params(2, 2, 1), cap).unwrap().count,
            BigUint::from(4u32)
        );
        assert_eq!(
            enumerate_all(params(2, 3, 1), cap).unwrap().count,
            BigUint::from(8u32)
        );
    }

    #[test]
    fn enumerated_words_all_verify() {
        let p = params(2, 2, 3);
        let e = enumerate_all(p, DEFAULT_ENUMERATION_CAP).unwrap();
        let words = e.words.unwrap();
        assert_eq!(words.len(), 576);
        assert!(words.windows(2).all(|w| w[0] < w[1]));
        assert!(words.iter().all(|w| is_multishift_db(w, p).unwrap().ok));
    }

    #[test]
    fn enumeration_guards() {
        assert!(matches!(
            enumerate_all(params(2, 2, 3), 100),
            Err(Error::CapExceeded { cap: 100 })
        ));
        assert!(matches!(
            enumerate_all(params(2, 1, 6), DEFAULT_ENUMERATION_CAP),
            Err(Error::Guard { .. })
        ));
    }

    #[test]
    fn word_list_dropped_above_sample_limit() {
        // #(1,4) over a binary alphabet is 2^8 = 256; over a ternary alphabet
        // with m = n = 2 it is 9! = 362880.
        let e = enumerate_all(params(2, 1, 4), DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(e.words.unwrap().len(), 256);
    }
}
