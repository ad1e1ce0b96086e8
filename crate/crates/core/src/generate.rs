//! Constructions of m-shift de Bruijn sequences. Every public generator
//! verifies its own output before returning it.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::verify::is_multishift_db;
use crate::word::{checked_pow, factor, DbParams, Symbol, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    /// Permutation of `Σ^n` separated by zero padding; needs `n <= m`.
    Block,
    /// Lift of an ordinary sequence over `Σ^m`; needs `m | n`.
    Multiple,
    /// Rearrangement of two multiple-order sequences; needs `m < n`, `m ∤ n`.
    Interleave,
    /// Prefer-largest greedy; works for all parameters.
    Greedy,
    /// Block if `n <= m`, Multiple if `m | n`, Greedy otherwise.
    Auto,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Block => "block",
            Algorithm::Multiple => "multiple",
            Algorithm::Interleave => "interleave",
            Algorithm::Greedy => "greedy",
            Algorithm::Auto => "auto",
        }
    }

    /// The concrete algorithm `Auto` dispatches to.
    pub fn resolve(self, p: DbParams) -> Algorithm {
        match self {
            Algorithm::Auto if p.n <= p.m => Algorithm::Block,
            Algorithm::Auto if p.n.is_multiple_of(p.m) => Algorithm::Multiple,
            Algorithm::Auto => Algorithm::Greedy,
            other => other,
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "block" => Ok(Algorithm::Block),
            "multiple" => Ok(Algorithm::Multiple),
            "interleave" => Ok(Algorithm::Interleave),
            "greedy" => Ok(Algorithm::Greedy),
            "auto" => Ok(Algorithm::Auto),
            _ => Err(Error::Domain(format!("unknown algorithm '{s}'"))),
        }
    }
}

/// Which extreme word of length `m` the greedy generator appends.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GreedyPreference {
    #[default]
    Largest,
    /// Mirror image of `Largest`: starts from `(a−1)^n` and appends the
    /// smallest admissible word, i.e. the letter-wise complement.
    Smallest,
}

impl FromStr for GreedyPreference {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "largest" => Ok(GreedyPreference::Largest),
            "smallest" => Ok(GreedyPreference::Smallest),
            _ => Err(Error::Domain(format!("unknown preference '{s}'"))),
        }
    }
}

fn check_symbol_guard(p: DbParams, limits: &Limits) -> Result<()> {
    let len = p.sequence_length()?;
    if len > limits.max_symbols {
        return Err(Error::guard("sequence length", len, limits.max_symbols));
    }
    Ok(())
}

fn self_check(w: Word, p: DbParams, what: &str) -> Result<Word> {
    let report = is_multishift_db(&w, p)?;
    if !report.ok {
        return Err(Error::Internal(format!(
            "{what} produced a word that is not a {}-shift sequence of order {} \
             (length_ok={}, missing={}, duplicated={})",
            p.m, p.n, report.length_ok, report.missing_count, report.duplicated_count
        )));
    }
    Ok(w)
}

fn push_digits(out: &mut Vec<Symbol>, mut x: u64, len: usize, alpha: u64) {
    let start = out.len();
    out.resize(start + len, 0);
    for slot in out[start..].iter_mut().rev() {
        *slot = (x % alpha) as Symbol;
        x /= alpha;
    }
}

/// `u_1 0^{m−n} u_2 0^{m−n} ⋯ 0^{m−n} u_l` where `u_i = unrank(perm[i−1])`.
pub fn gen_block(p: DbParams, perm: &[u64]) -> Result<Word> {
    gen_block_with(p, perm, &Limits::default())
}

pub fn gen_block_with(p: DbParams, perm: &[u64], limits: &Limits) -> Result<Word> {
    if p.n > p.m {
        return Err(Error::Precondition(format!(
            "block construction needs n <= m, got m={}, n={}",
            p.m, p.n
        )));
    }
    check_symbol_guard(p, limits)?;
    let size = p.word_count()?;
    if perm.len() as u64 != size {
        return Err(Error::Domain(format!(
            "permutation has {} entries, expected {size}",
            perm.len()
        )));
    }
    let mut hit = vec![false; size as usize];
    for &x in perm {
        if x >= size || std::mem::replace(&mut hit[x as usize], true) {
            return Err(Error::Domain(format!(
                "not a permutation of [0, {size}): bad or repeated entry {x}"
            )));
        }
    }
    let mut out = Vec::with_capacity(p.sequence_length()? as usize);
    for (i, &x) in perm.iter().enumerate() {
        if i > 0 {
            out.resize(out.len() + (p.m - p.n), 0);
        }
        push_digits(&mut out, x, p.n, p.a as u64);
    }
    self_check(Word::new(out), p, "block construction")
}

/// Prefer-largest greedy over an alphabet of size `alpha`, starting at `0^n`.
///
/// A window is `prefix · s` where the prefix is the last `n − m` symbols
/// already written (empty when `m >= n`) and `s` ranges over the last
/// `min(m, n)` symbols of the appended block. Windows with a given prefix are
/// only ever consumed while that prefix is current, so one descending cursor
/// per prefix visits each candidate once overall.
fn greedy_largest(alpha: u64, m: usize, n: usize) -> Vec<Symbol> {
    let total = alpha.pow(n as u32);
    let keep = alpha.pow(n.saturating_sub(m) as u32);
    let low_len = m.min(n);
    let low = alpha.pow(low_len as u32);
    let pad = m.saturating_sub(n);

    let mut seen = vec![0u64; total.div_ceil(64) as usize];
    let mark = |seen: &mut [u64], r: u64| seen[(r / 64) as usize] |= 1 << (r % 64);
    let is_seen = |seen: &[u64], r: u64| seen[(r / 64) as usize] >> (r % 64) & 1 == 1;

    let mut cursor = vec![low; keep as usize];
    let mut out: Vec<Symbol> = vec![0; n];
    out.reserve((m as u64 * total) as usize);
    mark(&mut seen, 0);
    let mut current = 0u64;

    loop {
        let prefix = current % keep;
        let slot = &mut cursor[prefix as usize];
        let mut chosen = None;
        while *slot > 0 {
            *slot -= 1;
            let candidate = prefix * low + *slot;
            if !is_seen(&seen, candidate) {
                chosen = Some((candidate, *slot));
                break;
            }
        }
        let Some((window, s)) = chosen else { break };
        mark(&mut seen, window);
        out.resize(out.len() + pad, (alpha - 1) as Symbol);
        push_digits(&mut out, s, low_len, alpha);
        current = window;
    }
    out
}

fn greedy_symbols(alpha: u64, m: usize, n: usize, pref: GreedyPreference) -> Vec<Symbol> {
    let mut out = greedy_largest(alpha, m, n);
    if pref == GreedyPreference::Smallest {
        let top = (alpha - 1) as Symbol;
        out.iter_mut().for_each(|s| *s = top - *s);
    }
    out
}

/// Ordinary (1-shift) de Bruijn sequence by the prefer-largest rule.
pub fn gen_ordinary(a: u32, n: usize, pref: GreedyPreference) -> Result<Word> {
    gen_greedy(DbParams::new(a, 1, n)?, pref)
}

/// Greedy generator: start from `0^n` and keep appending the extreme word of
/// length `m` whose new length-`n` suffix has not occurred at a modulo-`m`
/// position.
pub fn gen_greedy(p: DbParams, pref: GreedyPreference) -> Result<Word> {
    gen_greedy_with(p, pref, &Limits::default())
}

pub fn gen_greedy_with(p: DbParams, pref: GreedyPreference, limits: &Limits) -> Result<Word> {
    check_symbol_guard(p, limits)?;
    let w = Word::new(greedy_symbols(p.a as u64, p.m, p.n, pref));
    self_check(w, p, "greedy generator")
}

/// m-shift sequence of order `k·m`: an ordinary sequence of order `k` over the
/// alphabet `Σ^m`, with every letter replaced by its length-`m` word.
pub fn gen_multiple(a: u32, m: usize, k: usize) -> Result<Word> {
    gen_multiple_with(a, m, k, &Limits::default())
}

pub fn gen_multiple_with(a: u32, m: usize, k: usize, limits: &Limits) -> Result<Word> {
    let n = m
        .checked_mul(k)
        .ok_or_else(|| Error::guard("order", "overflow", usize::MAX))?;
    let p = DbParams::new(a, m, n)?;
    check_symbol_guard(p, limits)?;
    let big = checked_pow(a as u64, m)?;
    let ordinary = greedy_symbols(big, 1, k, GreedyPreference::Largest);
    let mut out = Vec::with_capacity(ordinary.len() * m);
    for &x in &ordinary {
        push_digits(&mut out, x as u64, m, a as u64);
    }
    self_check(Word::new(out), p, "multiple-order lift")
}

/// Intermediate words of the interleaving construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterleaveParts {
    /// `τ(m1, n1)·0^{m1}` with `m1 = r`, `n1 = (k+1)r`.
    pub w1: Word,
    /// `τ(m2, n2)·0^{m2}` with `m2 = m − r`, `n2 = k(m − r)`.
    pub w2: Word,
    /// `u_1, …, u_{N1}`, the length-`m1` blocks of `w1` after its first `n1` symbols.
    pub u_blocks: Vec<Word>,
    /// `v_1, …, v_{N2}`, the length-`m2` blocks of `w2` after its first `n2` symbols.
    pub v_blocks: Vec<Word>,
}

pub fn interleave_parts(p: DbParams) -> Result<InterleaveParts> {
    interleave_parts_with(p, &Limits::default())
}

fn interleave_parts_with(p: DbParams, limits: &Limits) -> Result<InterleaveParts> {
    if p.a < 2 || p.m >= p.n || p.r() == 0 {
        return Err(Error::Precondition(format!(
            "interleave needs a >= 2, m < n and m not dividing n, got a={}, m={}, n={}",
            p.a, p.m, p.n
        )));
    }
    let (k, r) = (p.k(), p.r());
    let (m1, n1) = (r, (k + 1) * r);
    let (m2, n2) = (p.m - r, k * (p.m - r));

    let w1 = gen_multiple_with(p.a, m1, k + 1, limits)?.concat(&Word::repeat(0, m1));
    let w2 = gen_multiple_with(p.a, m2, k, limits)?.concat(&Word::repeat(0, m2));
    let blocks = |w: &Word, order: usize, shift: usize| -> Result<Vec<Word>> {
        let count = (w.len() - order) / shift;
        (1..=count)
            .map(|i| factor(w, order + (i - 1) * shift + 1, order + i * shift))
            .collect()
    };
    let u_blocks = blocks(&w1, n1, m1)?;
    let v_blocks = blocks(&w2, n2, m2)?;
    debug_assert_eq!(u_blocks.len() as u64, checked_pow(p.a as u64, n1)?);
    debug_assert_eq!(v_blocks.len() as u64, checked_pow(p.a as u64, n2)?);
    Ok(InterleaveParts {
        w1,
        w2,
        u_blocks,
        v_blocks,
    })
}

/// Interleaving construction for `m < n` with `n mod m ≠ 0`:
/// `0^n v_1 0^{m1} v_2 ⋯ v_{N2−1} 0^{m1} v_{N2} u'_{(N1−1)N2} v'_1 u'_1 ⋯`.
pub fn gen_interleave(p: DbParams) -> Result<Word> {
    gen_interleave_with(p, &Limits::default())
}

pub fn gen_interleave_with(p: DbParams, limits: &Limits) -> Result<Word> {
    check_symbol_guard(p, limits)?;
    let parts = interleave_parts_with(p, limits)?;
    let (u, v) = (&parts.u_blocks, &parts.v_blocks);
    let (n1_count, n2_count) = (u.len(), v.len());
    let m1 = p.r();
    // 1-based u'_i and v'_i
    let u_prime = |i: usize| &u[i % (n1_count - 1)];
    let v_prime = |i: usize| &v[(i - 1) % n2_count];

    let mut out: Vec<Symbol> = Vec::with_capacity(p.sequence_length()? as usize);
    out.resize(p.n, 0);
    for (i, block) in v.iter().enumerate() {
        if i > 0 {
            out.resize(out.len() + m1, 0);
        }
        out.extend_from_slice(block.symbols());
    }
    let pairs = (n1_count - 1) * n2_count;
    out.extend_from_slice(u_prime(pairs).symbols());
    for i in 1..pairs {
        out.extend_from_slice(v_prime(i).symbols());
        out.extend_from_slice(u_prime(i).symbols());
    }
    self_check(Word::new(out), p, "interleave construction")
}

/// Dispatches to the requested construction; `Auto` picks Block, Multiple
/// or Greedy.
pub fn generate(p: DbParams, alg: Algorithm) -> Result<Word> {
    generate_with(p, alg, GreedyPreference::Largest, &Limits::default())
}

pub fn generate_with(
    p: DbParams,
    alg: Algorithm,
    pref: GreedyPreference,
    limits: &Limits,
) -> Result<Word> {
    match alg.resolve(p) {
        Algorithm::Block => {
            if p.n > p.m {
                return Err(Error::Precondition(format!(
                    "block construction needs n <= m, got m={}, n={}",
                    p.m, p.n
                )));
            }
            check_symbol_guard(p, limits)?;
            let perm: Vec<u64> = (0..p.word_count()?).collect();
            gen_block_with(p, &perm, limits)
        }
        Algorithm::Multiple => {
            if !p.n.is_multiple_of(p.m) {
                return Err(Error::Precondition(format!(
                    "multiple-order lift needs m | n, got m={}, n={}",
                    p.m, p.n
                )));
            }
            gen_multiple_with(p.a, p.m, p.k(), limits)
        }
        Algorithm::Interleave => gen_interleave_with(p, limits),
        Algorithm::Greedy => gen_greedy_with(p, pref, limits),
        Algorithm::Auto => unreachable!("resolve never returns Auto"),
    }
}
