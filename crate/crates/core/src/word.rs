//! Words over the alphabet `{0, 1, ..., a-1}`, 1-based factors, radix ranks
//! and modulo-`m` windows.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A letter of the alphabet. Always interpreted relative to some alphabet
/// size `a`, with `0 <= symbol < a`.
pub type Symbol = u32;

/// An immutable finite word. The empty word is valid.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Box<[Symbol]>);

impl Word {
    pub fn new(symbols: Vec<Symbol>) -> Self {
        Word(symbols.into_boxed_slice())
    }

    pub fn empty() -> Self {
        Word::default()
    }

    /// The word `c^len`.
    pub fn repeat(symbol: Symbol, len: usize) -> Self {
        Word::new(vec![symbol; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Symbol> {
        self.0.into_vec()
    }

    /// Concatenation `self · other`.
    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word::new(v)
    }

    /// Fails with a domain error if any symbol is `>= a`.
    pub fn check_alphabet(&self, a: u32) -> Result<()> {
        match self.0.iter().position(|&s| s >= a) {
            None => Ok(()),
            Some(pos) => Err(Error::Domain(format!(
                "symbol {} at position {} is outside the alphabet of size {}",
                self.0[pos],
                pos + 1,
                a
            ))),
        }
    }

    /// Canonical text form: a digit string when `a <= 10`, otherwise
    /// comma-separated integers.
    pub fn render(&self, a: u32) -> String {
        if a <= 10 {
            self.0
                .iter()
                .map(|&s| char::from_digit(s, 10).unwrap_or('?'))
                .collect()
        } else {
            let parts: Vec<String> = self.0.iter().map(|s| s.to_string()).collect();
            parts.join(",")
        }
    }

    /// Inverse of [`Word::render`]. Whitespace is ignored in digit form.
    pub fn parse(text: &str, a: u32) -> Result<Word> {
        let text = text.trim();
        let symbols: Vec<Symbol> = if a <= 10 {
            text.chars()
                .filter(|c| !c.is_whitespace())
                .map(|c| {
                    c.to_digit(10)
                        .ok_or_else(|| Error::Domain(format!("'{c}' is not a digit")))
                })
                .collect::<Result<_>>()?
        } else if text.is_empty() {
            Vec::new()
        } else {
            text.split(',')
                .map(|p| {
                    p.trim()
                        .parse::<Symbol>()
                        .map_err(|_| Error::Domain(format!("'{}' is not a symbol", p.trim())))
                })
                .collect::<Result<_>>()?
        };
        let w = Word::new(symbols);
        w.check_alphabet(a)?;
        Ok(w)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let max = self.0.iter().copied().max().unwrap_or(0);
        write!(f, "Word(\"{}\")", self.render(max.saturating_add(1)))
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(v: Vec<Symbol>) -> Self {
        Word::new(v)
    }
}

impl From<&[Symbol]> for Word {
    fn from(v: &[Symbol]) -> Self {
        Word::new(v.to_vec())
    }
}

/// Parameters `(a, m, n)`: alphabet size, shift and order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DbParams {
    pub a: u32,
    pub m: usize,
    pub n: usize,
}

impl DbParams {
    pub fn new(a: u32, m: usize, n: usize) -> Result<Self> {
        if a == 0 || m == 0 || n == 0 {
            return Err(Error::Domain(format!(
                "parameters must be positive, got a={a}, m={m}, n={n}"
            )));
        }
        Ok(DbParams { a, m, n })
    }

    /// `floor(n / m)`
    pub fn k(&self) -> usize {
        self.n / self.m
    }

    /// `n mod m`
    pub fn r(&self) -> usize {
        self.n % self.m
    }

    /// `a^n`, the number of words of length `n`.
    pub fn word_count(&self) -> Result<u64> {
        checked_pow(self.a as u64, self.n)
    }

    /// Length every sequence with these parameters must have: `m·a^n + n − m`.
    pub fn sequence_length(&self) -> Result<u64> {
        self.word_count()?
            .checked_mul(self.m as u64)
            .and_then(|x| x.checked_add(self.n as u64))
            .map(|x| x - self.m as u64)
            .ok_or_else(|| Error::guard("sequence length", "more than 2^64", u64::MAX))
    }
}

/// `base^exp`, failing with a guard error on overflow.
pub fn checked_pow(base: u64, exp: usize) -> Result<u64> {
    let e =
        u32::try_from(exp).map_err(|_| Error::guard("power", format!("{base}^{exp}"), u64::MAX))?;
    base.checked_pow(e)
        .ok_or_else(|| Error::guard("power", format!("{base}^{exp}"), u64::MAX))
}

/// The factor `w[i..j]` with 1-based inclusive bounds; `j = i − 1` gives the
/// empty word.
pub fn factor(w: &Word, i: usize, j: usize) -> Result<Word> {
    if i == 0 || j + 1 < i || j > w.len() {
        return Err(Error::Index {
            i,
            j: j as isize,
            len: w.len(),
        });
    }
    Ok(Word::from(&w.symbols()[i - 1..j]))
}

/// All factors `w[im+1..im+n]` for `i = 0, 1, ...` while `im + n <= |w|`.
pub fn modulo_factors(w: &Word, m: usize, n: usize) -> Result<Vec<Word>> {
    if m == 0 || n == 0 {
        return Err(Error::Domain("shift and order must be positive".into()));
    }
    if w.len() < n {
        return Err(Error::EmptyInput(format!(
            "word of length {} has no factor of length {n}",
            w.len()
        )));
    }
    Ok((0..)
        .map(|i| i * m)
        .take_while(|&start| start + n <= w.len())
        .map(|start| Word::from(&w.symbols()[start..start + n]))
        .collect())
}

/// Number of modulo-`m` windows of length `n` in a word of length `len`.
pub fn window_count(len: usize, m: usize, n: usize) -> usize {
    if len < n {
        0
    } else {
        (len - n) / m + 1
    }
}

/// Radix-`a` rank of a word, first symbol most significant.
pub fn rank(w: &Word, a: u32) -> Result<u64> {
    w.check_alphabet(a)?;
    rank_slice(w.symbols(), a)
}

pub(crate) fn rank_slice(symbols: &[Symbol], a: u32) -> Result<u64> {
    symbols.iter().try_fold(0u64, |acc, &s| {
        acc.checked_mul(a as u64)
            .and_then(|x| x.checked_add(s as u64))
            .ok_or_else(|| Error::guard("rank", format!("{a}^{}", symbols.len()), u64::MAX))
    })
}

/// Inverse of [`rank`]: the word of length `len` whose radix-`a` value is `x`.
pub fn unrank(x: u64, len: usize, a: u32) -> Result<Word> {
    if a == 0 {
        return Err(Error::Domain("alphabet size must be positive".into()));
    }
    if let Ok(bound) = checked_pow(a as u64, len) {
        if x >= bound {
            return Err(Error::Domain(format!("{x} is not below {a}^{len}")));
        }
    }
    let mut out = vec![0; len];
    let mut rest = x;
    for slot in out.iter_mut().rev() {
        *slot = (rest % a as u64) as Symbol;
        rest /= a as u64;
    }
    Ok(Word::new(out))
}

/// Ranks of the modulo-`m` windows of length `n`, in order, computed with a
/// rolling update when consecutive windows overlap. Caller guarantees the
/// symbols are `< a` and `a^n` fits in `u64`.
pub(crate) fn window_ranks(symbols: &[Symbol], a: u32, m: usize, n: usize) -> Vec<u64> {
    let count = window_count(symbols.len(), m, n);
    let mut out = Vec::with_capacity(count);
    if count == 0 {
        return out;
    }
    let a = a as u64;
    let digits = |s: &[Symbol]| s.iter().fold(0u64, |acc, &x| acc * a + x as u64);
    let mut current = digits(&symbols[..n]);
    out.push(current);
    if m < n {
        let keep = a.pow((n - m) as u32);
        for i in 1..count {
            let start = i * m;
            current =
                (current % keep) * a.pow(m as u32) + digits(&symbols[start + n - m..start + n]);
            out.push(current);
        }
    } else {
        for i in 1..count {
            let start = i * m;
            out.push(digits(&symbols[start..start + n]));
        }
    }
    out
}
