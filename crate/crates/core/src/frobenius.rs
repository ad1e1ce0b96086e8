//! Sets `S ⊆ Σ^m ∪ Σ^n` built from an m-shift sequence `τ` of order `n − m`,
//! and the longest words outside the free monoid `S*`.
//!
//! `S` contains all of `Σ^m` and all of `Σ^n` except the length-`n` windows
//! of `τ` at modulo-`m` positions. The longest words not in `S*` have length
//! `g(m, l) = ml − m − l` with `l = m·a^{n−m} + n − m`.

use std::collections::{HashMap, HashSet, VecDeque};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::generate::{generate_with, Algorithm, GreedyPreference};
use crate::limits::Limits;
use crate::verify::is_multishift_db;
use crate::word::{checked_pow, modulo_factors, rank, rank_slice, unrank, DbParams, Word};

/// Largest explicit list of longest words returned.
pub const MAX_LISTED_WORDS: u64 = 4096;
/// Largest `a^{m(m−2)}` for which the predicted language is enumerated.
pub const MAX_LANGUAGE_SIZE: u64 = 4096;

/// `g(m, l) = ml − m − l`, the largest integer that is not a non-negative
/// combination of `m` and `l`.
pub fn frobenius_number(m: u64, l: u64) -> Result<u64> {
    if m < 2 || l < 2 {
        return Err(Error::Domain(format!(
            "Frobenius number needs m, l >= 2, got m={m}, l={l}"
        )));
    }
    if m.gcd(&l) != 1 {
        return Err(Error::Domain(format!(
            "gcd({m}, {l}) = {} has no finite Frobenius number",
            m.gcd(&l)
        )));
    }
    m.checked_mul(l)
        .map(|x| x - m - l)
        .ok_or_else(|| Error::guard("Frobenius number", "overflow", u64::MAX))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobeniusInstance {
    a: u32,
    m: usize,
    n: usize,
    tau: Word,
    excluded: Vec<Word>,
    excluded_ranks: HashSet<u64>,
}

impl FrobeniusInstance {
    pub fn alphabet(&self) -> u32 {
        self.a
    }

    pub fn short_len(&self) -> usize {
        self.m
    }

    pub fn long_len(&self) -> usize {
        self.n
    }

    pub fn tau(&self) -> &Word {
        &self.tau
    }

    /// Removed words of length `n`, in the order they occur in `τ`.
    pub fn excluded(&self) -> &[Word] {
        &self.excluded
    }

    pub fn is_excluded(&self, w: &Word) -> bool {
        w.len() == self.n
            && rank(w, self.a)
                .map(|r| self.excluded_ranks.contains(&r))
                .unwrap_or(false)
    }

    /// `l = m·a^{n−m} + n − m`
    pub fn l(&self) -> u64 {
        self.tau.len() as u64 + self.m as u64
    }

    /// `g(m, l)`, the predicted length of the longest non-representable words.
    pub fn predicted_longest(&self) -> Result<u64> {
        frobenius_number(self.m as u64, self.l())
    }

    /// Whether `w ∈ S`.
    pub fn contains(&self, w: &Word) -> bool {
        w.check_alphabet(self.a).is_ok()
            && (w.len() == self.m || (w.len() == self.n && !self.is_excluded(w)))
    }

    /// All words of `S`: `Σ^m` in rank order, then `Σ^n ∖ excluded`.
    pub fn s_words(&self) -> Result<impl Iterator<Item = Word> + '_> {
        let short = checked_pow(self.a as u64, self.m)?;
        let long = checked_pow(self.a as u64, self.n)?;
        let (a, m, n) = (self.a, self.m, self.n);
        Ok((0..short)
            .map(move |x| unrank(x, m, a).expect("rank below a^m"))
            .chain(
                (0..long)
                    .filter(|x| !self.excluded_ranks.contains(x))
                    .map(move |x| unrank(x, n, a).expect("rank below a^n")),
            ))
    }

    fn window_excluded(&self, window_rank: u64) -> bool {
        self.excluded_ranks.contains(&window_rank)
    }
}

/// Builds the instance for word lengths `m < n`. Without an explicit `τ`,
/// the deterministic `Auto` generator supplies one.
pub fn build_instance(a: u32, m: usize, n: usize, tau: Option<Word>) -> Result<FrobeniusInstance> {
    build_instance_with(a, m, n, tau, &Limits::default())
}

pub fn build_instance_with(
    a: u32,
    m: usize,
    n: usize,
    tau: Option<Word>,
    limits: &Limits,
) -> Result<FrobeniusInstance> {
    if m == 0 || m >= n {
        return Err(Error::Precondition(format!(
            "word lengths need 0 < m < n, got m={m}, n={n}"
        )));
    }
    if m.gcd(&(n - m)) != 1 {
        return Err(Error::Domain(format!(
            "gcd(m, n − m) = gcd({m}, {}) must be 1 for a finite complement",
            n - m
        )));
    }
    // ranks of length-n windows must fit
    checked_pow(a as u64, n)?;
    let params = DbParams::new(a, m, n - m)?;
    let tau = match tau {
        Some(t) => {
            let report = is_multishift_db(&t, params)?;
            if !report.ok {
                return Err(Error::Verification(format!(
                    "τ is not a {m}-shift sequence of order {} (length_ok={}, missing={}, duplicated={})",
                    n - m,
                    report.length_ok,
                    report.missing_count,
                    report.duplicated_count
                )));
            }
            t
        }
        None => generate_with(params, Algorithm::Auto, GreedyPreference::Largest, limits)?,
    };
    let excluded = if tau.len() >= n {
        modulo_factors(&tau, m, n)?
    } else {
        Vec::new()
    };
    let excluded_ranks = excluded
        .iter()
        .map(|w| rank(w, a))
        .collect::<Result<HashSet<u64>>>()?;
    Ok(FrobeniusInstance {
        a,
        m,
        n,
        tau,
        excluded,
        excluded_ranks,
    })
}

/// Membership in `S*` by dynamic programming over prefix lengths. Since
/// `Σ^m ⊆ S`, a prefix of length `i` is representable iff the prefix of
/// length `i − m` is, or the prefix of length `i − n` is and the last `n`
/// letters are not excluded.
pub fn is_representable(w: &Word, inst: &FrobeniusInstance) -> Result<bool> {
    w.check_alphabet(inst.a)?;
    let (m, n) = (inst.m, inst.n);
    let s = w.symbols();
    let mut repr = vec![false; s.len() + 1];
    repr[0] = true;
    for i in 1..=s.len() {
        repr[i] = (i >= m && repr[i - m])
            || (i >= n && repr[i - n] && !inst.window_excluded(rank_slice(&s[i - n..i], inst.a)?));
    }
    Ok(repr[s.len()])
}

/// Deterministic automaton reading a word left to right and tracking
/// whether the prefix read so far lies in `S*`.
///
/// A state packs the last `n − 1` letters (as a rank) with `n` bits holding
/// representability of the last `n` prefixes; bit 0 is the current prefix.
/// Prefixes of negative length are non-representable, so the letters used to
/// pad the first `n − 1` positions are never consulted.
#[derive(Debug, Clone)]
pub struct RepresentabilityAutomaton {
    a: u32,
    codes: Vec<u64>,
    /// `transitions[state * a + letter]`
    transitions: Vec<usize>,
}

impl RepresentabilityAutomaton {
    pub fn build(inst: &FrobeniusInstance, limits: &Limits) -> Result<Self> {
        let (a, m, n) = (inst.a as u64, inst.m, inst.n);
        let bound =
            checked_pow(a, n - 1)?.saturating_mul(1u64.checked_shl(n as u32).unwrap_or(u64::MAX));
        if bound > limits.max_states {
            return Err(Error::guard("automaton states", bound, limits.max_states));
        }
        let mask = (1u64 << n) - 1;
        let keep = a.pow((n - 1) as u32);
        let step = |code: u64, letter: u64| -> u64 {
            let bits = code & mask;
            let window = (code >> n) * a + letter;
            let via_short = bits >> (m - 1) & 1 == 1;
            let via_long = bits >> (n - 1) & 1 == 1 && !inst.window_excluded(window);
            let next_bits = ((bits << 1) | u64::from(via_short || via_long)) & mask;
            ((window % keep) << n) | next_bits
        };

        let mut index: HashMap<u64, usize> = HashMap::new();
        let mut codes = vec![1u64];
        index.insert(1, 0);
        let mut transitions = Vec::new();
        let mut next = 0;
        while next < codes.len() {
            let code = codes[next];
            for letter in 0..a {
                let target = step(code, letter);
                let id = *index.entry(target).or_insert_with(|| {
                    codes.push(target);
                    codes.len() - 1
                });
                transitions.push(id);
            }
            next += 1;
        }
        Ok(RepresentabilityAutomaton {
            a: inst.a,
            codes,
            transitions,
        })
    }

    pub fn state_count(&self) -> usize {
        self.codes.len()
    }

    pub fn initial(&self) -> usize {
        0
    }

    pub fn next(&self, state: usize, letter: u32) -> usize {
        self.transitions[state * self.a as usize + letter as usize]
    }

    pub fn accepting(&self, state: usize) -> bool {
        self.codes[state] & 1 == 1
    }

    pub fn accepts(&self, w: &Word) -> bool {
        let end = w
            .symbols()
            .iter()
            .fold(self.initial(), |s, &c| self.next(s, c));
        self.accepting(end)
    }
}

/// Longest words outside `S*`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LongestWords {
    /// `false` when infinitely many words are non-representable.
    pub finite: bool,
    /// `None` when every word is representable, or the complement is infinite.
    pub max_length: Option<u64>,
    /// Number of non-representable words of length `max_length`.
    pub count: BigUint,
    /// The words themselves, sorted, when `count <= MAX_LISTED_WORDS`.
    pub words: Option<Vec<Word>>,
    pub states: usize,
}

impl LongestWords {
    pub fn to_json(&self, a: u32) -> Value {
        json!({
            "finite": self.finite,
            "longest_length": self.max_length,
            "longest_count": self.count.to_string(),
            "longest_words": self
                .words
                .as_ref()
                .map(|ws| ws.iter().map(|w| w.render(a)).collect::<Vec<_>>()),
            "states": self.states,
        })
    }
}

pub fn longest_nonrepresentable(inst: &FrobeniusInstance) -> Result<LongestWords> {
    longest_nonrepresentable_with(inst, &Limits::default())
}

/// Builds the automaton, keeps the states from which a rejecting state is
/// reachable, and finds the longest paths from the start to a rejecting
/// state. A cycle among the kept states means infinitely many
/// non-representable words.
pub fn longest_nonrepresentable_with(
    inst: &FrobeniusInstance,
    limits: &Limits,
) -> Result<LongestWords> {
    let auto = RepresentabilityAutomaton::build(inst, limits)?;
    let states = auto.state_count();
    let a = inst.a as usize;

    let mut reverse: Vec<Vec<(usize, u32)>> = vec![Vec::new(); states];
    for s in 0..states {
        for letter in 0..inst.a {
            reverse[auto.next(s, letter)].push((s, letter));
        }
    }

    let mut live = vec![false; states];
    let mut queue: VecDeque<usize> = (0..states).filter(|&s| !auto.accepting(s)).collect();
    for &s in &queue {
        live[s] = true;
    }
    while let Some(v) = queue.pop_front() {
        for &(u, _) in &reverse[v] {
            if !std::mem::replace(&mut live[u], true) {
                queue.push_back(u);
            }
        }
    }

    let none = |finite| LongestWords {
        finite,
        max_length: None,
        count: BigUint::zero(),
        words: finite.then(Vec::new),
        states,
    };
    if !live[auto.initial()] {
        return Ok(none(true));
    }

    // topological order of the live subgraph
    let mut indegree = vec![0usize; states];
    for s in (0..states).filter(|&s| live[s]) {
        for letter in 0..inst.a {
            let t = auto.next(s, letter);
            if live[t] {
                indegree[t] += 1;
            }
        }
    }
    let live_count = live.iter().filter(|&&x| x).count();
    let mut order = Vec::with_capacity(live_count);
    let mut ready: VecDeque<usize> = (0..states)
        .filter(|&s| live[s] && indegree[s] == 0)
        .collect();
    while let Some(s) = ready.pop_front() {
        order.push(s);
        for letter in 0..inst.a {
            let t = auto.next(s, letter);
            if live[t] {
                indegree[t] -= 1;
                if indegree[t] == 0 {
                    ready.push_back(t);
                }
            }
        }
    }
    if order.len() < live_count {
        return Ok(none(false));
    }

    let mut dist: Vec<Option<u64>> = vec![None; states];
    let mut paths: Vec<BigUint> = vec![BigUint::zero(); states];
    dist[auto.initial()] = Some(0);
    paths[auto.initial()] = BigUint::from(1u32);
    for &s in &order {
        let Some(d) = dist[s] else { continue };
        for letter in 0..a {
            let t = auto.next(s, letter as u32);
            if !live[t] {
                continue;
            }
            match dist[t] {
                Some(dt) if dt > d + 1 => {}
                Some(dt) if dt == d + 1 => {
                    let add = paths[s].clone();
                    paths[t] += add;
                }
                _ => {
                    dist[t] = Some(d + 1);
                    paths[t] = paths[s].clone();
                }
            }
        }
    }

    let rejecting = |s: usize| live[s] && !auto.accepting(s) && dist[s].is_some();
    let max_length = (0..states)
        .filter(|&s| rejecting(s))
        .filter_map(|s| dist[s])
        .max();
    let Some(max_length) = max_length else {
        return Ok(none(true));
    };
    let ends: Vec<usize> = (0..states)
        .filter(|&s| rejecting(s) && dist[s] == Some(max_length))
        .collect();
    let count: BigUint = ends.iter().map(|&s| paths[s].clone()).sum();

    let words = if count.to_u64().is_some_and(|c| c <= MAX_LISTED_WORDS) {
        let mut out = Vec::new();
        let mut suffix = Vec::with_capacity(max_length as usize);
        for &end in &ends {
            collect_paths(end, &reverse, &dist, &live, &mut suffix, &mut out);
        }
        out.sort();
        Some(out)
    } else {
        None
    };

    Ok(LongestWords {
        finite: true,
        max_length: Some(max_length),
        count,
        words,
        states,
    })
}

fn collect_paths(
    state: usize,
    reverse: &[Vec<(usize, u32)>],
    dist: &[Option<u64>],
    live: &[bool],
    suffix: &mut Vec<u32>,
    out: &mut Vec<Word>,
) {
    let d = dist[state].expect("state on a longest path");
    if d == 0 {
        out.push(Word::new(suffix.iter().rev().copied().collect()));
        return;
    }
    for &(prev, letter) in &reverse[state] {
        if live[prev] && dist[prev] == Some(d - 1) {
            suffix.push(letter);
            collect_paths(prev, reverse, dist, live, suffix, out);
            suffix.pop();
        }
    }
}

/// The predicted longest words `(τ Σ^m)^{m−2} τ`.
pub fn theorem_language(inst: &FrobeniusInstance) -> Result<Vec<Word>> {
    let (a, m) = (inst.a, inst.m);
    if m < 2 {
        return Err(Error::Precondition(format!(
            "the predicted language needs m >= 2, got m={m}"
        )));
    }
    let gaps = m - 2;
    let size = checked_pow(a as u64, m * gaps)?;
    if size > MAX_LANGUAGE_SIZE {
        return Err(Error::guard("language size", size, MAX_LANGUAGE_SIZE));
    }
    let tau = inst.tau.symbols();
    (0..size)
        .map(|x| {
            let fill = unrank(x, m * gaps, a)?;
            let mut out = tau.to_vec();
            for chunk in fill.symbols().chunks(m) {
                out.extend_from_slice(chunk);
                out.extend_from_slice(tau);
            }
            Ok(Word::new(out))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s, 10).unwrap()
    }

    #[test]
    fn frobenius_numbers() {
        assert_eq!(frobenius_number(3, 5).unwrap(), 7);
        assert_eq!(frobenius_number(3, 52).unwrap(), 101);
        assert_eq!(frobenius_number(2, 3).unwrap(), 1);
        assert!(matches!(frobenius_number(4, 6), Err(Error::Domain(_))));
        assert!(matches!(frobenius_number(1, 6), Err(Error::Domain(_))));
    }

    /// Brute-force integer Frobenius number for two generators.
    fn brute_frobenius(m: u64, l: u64) -> u64 {
        let limit = m * l;
        let mut reachable = vec![false; limit as usize + 1];
        reachable[0] = true;
        for i in 1..=limit as usize {
            reachable[i] = (i >= m as usize && reachable[i - m as usize])
                || (i >= l as usize && reachable[i - l as usize]);
        }
        (0..=limit).rev().find(|&i| !reachable[i as usize]).unwrap()
    }

    #[test]
    fn frobenius_number_matches_brute_force() {
        for m in 2..8 {
            for l in 2..30 {
                if m.gcd(&l) == 1 {
                    assert_eq!(frobenius_number(m, l).unwrap(), brute_frobenius(m, l));
                }
            }
        }
    }

    #[test]
    fn tiny_instance() {
        let inst = build_instance(2, 2, 3, Some(w("001"))).unwrap();
        assert_eq!(inst.excluded(), &[w("001")]);
        assert_eq!(inst.l(), 5);
        assert!(is_representable(&Word::empty(), &inst).unwrap());
        assert!(!is_representable(&w("001"), &inst).unwrap());
        assert!(is_representable(&w("011"), &inst).unwrap());
        assert!(!is_representable(&w("0"), &inst).unwrap());
        let longest = longest_nonrepresentable(&inst).unwrap();
        assert!(longest.finite);
        assert_eq!(longest.max_length, Some(3));
        assert_eq!(longest.words, Some(vec![w("001")]));
        assert_eq!(theorem_language(&inst).unwrap(), vec![w("001")]);
    }

    #[test]
    fn automaton_agrees_with_dp() {
        let inst = build_instance(2, 2, 3, Some(w("001"))).unwrap();
        let auto = RepresentabilityAutomaton::build(&inst, &Limits::default()).unwrap();
        for len in 0..=10 {
            for x in 0..(1u64 << len) {
                let word = unrank(x, len, 2).unwrap();
                assert_eq!(auto.accepts(&word), is_representable(&word, &inst).unwrap());
            }
        }
        assert!(auto.state_count() <= 4 * 8);
    }

    #[test]
    fn instance_preconditions() {
        assert!(matches!(
            build_instance(2, 3, 3, None),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            build_instance(2, 2, 4, None),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            build_instance(2, 2, 3, Some(w("010"))),
            Err(Error::Verification(_))
        ));
    }

    #[test]
    fn default_tau_is_generated() {
        let inst = build_instance(2, 3, 5, None).unwrap();
        assert_eq!(inst.tau().len(), 11);
        assert_eq!(inst.excluded().len(), 3);
        assert_eq!(inst.predicted_longest().unwrap(), 25);
    }

    #[test]
    fn shift_one_represents_everything() {
        let inst = build_instance(2, 1, 3, None).unwrap();
        let longest = longest_nonrepresentable(&inst).unwrap();
        assert!(longest.finite);
        assert_eq!(longest.max_length, None);
        assert!(matches!(
            theorem_language(&inst),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn s_words_excludes_windows() {
        let inst = build_instance(2, 2, 3, Some(w("001"))).unwrap();
        let s: Vec<Word> = inst.s_words().unwrap().collect();
        assert_eq!(s.len(), 4 + 7);
        assert!(!s.contains(&w("001")));
        assert!(s.iter().all(|x| inst.contains(x)));
    }

    #[test]
    fn state_guard() {
        let inst = build_instance(2, 3, 7, None).unwrap();
        let tight = Limits {
            max_states: 1000,
            ..Limits::default()
        };
        assert!(matches!(
            longest_nonrepresentable_with(&inst, &tight),
            Err(Error::Guard { .. })
        ));
    }
}
