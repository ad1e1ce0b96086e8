//! Deciding whether a word is an m-shift de Bruijn sequence of order n.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::limits::MAX_TALLY;
use crate::word::{factor, unrank, window_count, window_ranks, DbParams, Word};

/// Number of missing / duplicated words kept as samples in a report.
pub const SAMPLE_LIMIT: usize = 16;

/// Outcome of [`is_multishift_db`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub params: DbParams,
    pub ok: bool,
    pub length_ok: bool,
    pub length: usize,
    pub expected_length: u64,
    /// Number of modulo-`m` windows inspected.
    pub windows: u64,
    pub missing_count: u64,
    pub duplicated_count: u64,
    /// First [`SAMPLE_LIMIT`] words never seen, in rank order.
    pub missing: Vec<Word>,
    /// First [`SAMPLE_LIMIT`] words seen more than once, with their counts.
    pub duplicated: Vec<(Word, u64)>,
}

impl VerifyReport {
    /// Stable key/value JSON form.
    pub fn to_json(&self) -> Value {
        let a = self.params.a;
        json!({
            "ok": self.ok,
            "length_ok": self.length_ok,
            "length": self.length,
            "expected_length": self.expected_length,
            "missing_count": self.missing_count,
            "duplicated_count": self.duplicated_count,
            "missing_sample": self.missing.iter().map(|w| w.render(a)).collect::<Vec<_>>(),
            "duplicated_sample": self
                .duplicated
                .iter()
                .map(|(w, c)| json!({ "word": w.render(a), "count": c }))
                .collect::<Vec<_>>(),
        })
    }
}

/// Checks the length `m·a^n + n − m` and that every word of `Σ^n` occurs
/// exactly once at a modulo-`m` position.
pub fn is_multishift_db(w: &Word, p: DbParams) -> Result<VerifyReport> {
    w.check_alphabet(p.a)?;
    let size = p.word_count()?;
    if size > MAX_TALLY {
        return Err(Error::guard("occurrence tally", size, MAX_TALLY));
    }
    let expected_length = p.sequence_length()?;
    let length_ok = w.len() as u64 == expected_length;

    let mut tally = vec![0u32; size as usize];
    let ranks = window_ranks(w.symbols(), p.a, p.m, p.n);
    debug_assert_eq!(ranks.len(), window_count(w.len(), p.m, p.n));
    for &r in &ranks {
        tally[r as usize] = tally[r as usize].saturating_add(1);
    }

    let mut missing = Vec::new();
    let mut duplicated = Vec::new();
    let (mut missing_count, mut duplicated_count) = (0u64, 0u64);
    for (r, &c) in tally.iter().enumerate() {
        match c {
            0 => {
                missing_count += 1;
                if missing.len() < SAMPLE_LIMIT {
                    missing.push(unrank(r as u64, p.n, p.a)?);
                }
            }
            1 => {}
            _ => {
                duplicated_count += 1;
                if duplicated.len() < SAMPLE_LIMIT {
                    duplicated.push((unrank(r as u64, p.n, p.a)?, c as u64));
                }
            }
        }
    }

    Ok(VerifyReport {
        params: p,
        ok: length_ok && missing_count == 0 && duplicated_count == 0,
        length_ok,
        length: w.len(),
        expected_length,
        windows: ranks.len() as u64,
        missing_count,
        duplicated_count,
        missing,
        duplicated,
    })
}

/// Whether the suffix of length `n − m` equals the prefix of length `n − m`.
/// Only meaningful for `n > m` and a word of the right length.
pub fn check_wrap(w: &Word, p: DbParams) -> Result<bool> {
    if p.n <= p.m {
        return Err(Error::Precondition(format!(
            "wrap property needs n > m, got m={}, n={}",
            p.m, p.n
        )));
    }
    let expected = p.sequence_length()?;
    if w.len() as u64 != expected {
        return Err(Error::Precondition(format!(
            "word has length {}, expected {expected}",
            w.len()
        )));
    }
    let overlap = p.n - p.m;
    let len = w.len();
    Ok(factor(w, len - overlap + 1, len)? == factor(w, 1, overlap)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s, 10).unwrap()
    }

    fn params(a: u32, m: usize, n: usize) -> DbParams {
        DbParams::new(a, m, n).unwrap()
    }

    #[test]
    fn accepts_known_sequences() {
        assert!(is_multishift_db(&w("00110"), params(2, 1, 2)).unwrap().ok);
        assert!(
            is_multishift_db(&w("00010011100110110"), params(2, 2, 3))
                .unwrap()
                .ok
        );
    }

    #[test]
    fn constant_word_diagnostics() {
        let report = is_multishift_db(&w("00000"), params(2, 1, 2)).unwrap();
        assert!(!report.ok);
        assert!(report.length_ok);
        assert_eq!(report.duplicated, vec![(w("00"), 4)]);
        assert_eq!(report.missing, vec![w("01"), w("10"), w("11")]);
        assert_eq!(report.missing_count, 3);
        assert_eq!(report.duplicated_count, 1);
    }

    #[test]
    fn samples_are_truncated_but_counts_are_not() {
        let p = params(2, 1, 6);
        let zeros = Word::repeat(0, p.sequence_length().unwrap() as usize);
        let report = is_multishift_db(&zeros, p).unwrap();
        assert_eq!(report.missing_count, 63);
        assert_eq!(report.missing.len(), SAMPLE_LIMIT);
    }

    #[test]
    fn wrong_length_is_reported() {
        let report = is_multishift_db(&w("0011"), params(2, 1, 2)).unwrap();
        assert!(!report.length_ok);
        assert!(!report.ok);
    }

    #[test]
    fn out_of_alphabet_is_a_domain_error() {
        assert!(matches!(
            is_multishift_db(&w("00210"), params(2, 1, 2)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn tally_guard() {
        let p = params(2, 1, 30);
        assert!(matches!(
            is_multishift_db(&w("0"), p),
            Err(Error::Guard { .. })
        ));
    }

    #[test]
    fn wrap_examples() {
        assert!(check_wrap(&w("00010011100110110"), params(2, 2, 3)).unwrap());
        let p = params(2, 2, 5);
        let zeros = Word::repeat(0, 67);
        assert!(check_wrap(&zeros, p).unwrap());
        assert!(matches!(
            check_wrap(&w("0011"), params(2, 2, 2)),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            check_wrap(&w("0011"), params(2, 2, 3)),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn json_keys() {
        let v = is_multishift_db(&w("00000"), params(2, 1, 2))
            .unwrap()
            .to_json();
        assert_eq!(v["ok"], false);
        assert_eq!(v["length_ok"], true);
        assert_eq!(v["missing_count"], 3);
        assert_eq!(v["duplicated_count"], 1);
        assert_eq!(v["duplicated_sample"][0]["word"], "00");
    }
}
