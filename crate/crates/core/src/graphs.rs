//! The word graph `G(m, n)`: vertices `Σ^n`, arcs `Σ^{n+m}`, and an arc `w`
//! joining `w[1..n]` to `w[m+1..m+n]`. Vertices and arcs are identified with
//! their radix ranks.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::limits::{
    Limits, MAX_BRUTE_ARCS, MAX_DETERMINANT_VERTICES, MAX_FACTORIAL_DEGREE, MAX_GRAPH_ARCS,
};
use crate::linalg::determinant;
use crate::verify::is_multishift_db;
use crate::word::{checked_pow, unrank, window_ranks, DbParams, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordGraph {
    a: u32,
    m: usize,
    n: usize,
    tails: Vec<u64>,
    heads: Vec<u64>,
}

impl WordGraph {
    pub fn alphabet(&self) -> u32 {
        self.a
    }

    pub fn shift(&self) -> usize {
        self.m
    }

    /// Length of the words labelling vertices.
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> u64 {
        // a^n fits: checked at construction
        (self.a as u64).pow(self.n as u32)
    }

    pub fn arc_count(&self) -> u64 {
        self.tails.len() as u64
    }

    pub fn tail(&self, arc: u64) -> u64 {
        self.tails[arc as usize]
    }

    pub fn head(&self, arc: u64) -> u64 {
        self.heads[arc as usize]
    }

    /// Arc labels as words of length `n + m`.
    pub fn arc_label(&self, arc: u64) -> Result<Word> {
        unrank(arc, self.n + self.m, self.a)
    }

    pub fn vertex_label(&self, vertex: u64) -> Result<Word> {
        unrank(vertex, self.n, self.a)
    }

    pub fn out_degrees(&self) -> Vec<u64> {
        let mut out = vec![0; self.vertex_count() as usize];
        for &t in &self.tails {
            out[t as usize] += 1;
        }
        out
    }

    pub fn in_degrees(&self) -> Vec<u64> {
        let mut out = vec![0; self.vertex_count() as usize];
        for &h in &self.heads {
            out[h as usize] += 1;
        }
        out
    }

    /// Common in- and out-degree, if every vertex has the same one.
    pub fn regular_degree(&self) -> Option<u64> {
        let outs = self.out_degrees();
        let ins = self.in_degrees();
        let d = *outs.first()?;
        (outs.iter().all(|&x| x == d) && ins.iter().all(|&x| x == d)).then_some(d)
    }

    /// Strong connectivity, checked by search from and to vertex `0^n`.
    pub fn is_connected(&self) -> bool {
        let vertices = self.vertex_count() as usize;
        let reach = |forward: bool| {
            let mut adj = vec![Vec::new(); vertices];
            for (&t, &h) in self.tails.iter().zip(&self.heads) {
                let (from, to) = if forward { (t, h) } else { (h, t) };
                adj[from as usize].push(to as usize);
            }
            let mut seen = vec![false; vertices];
            let mut stack = vec![0usize];
            seen[0] = true;
            while let Some(v) = stack.pop() {
                for &u in &adj[v] {
                    if !std::mem::replace(&mut seen[u], true) {
                        stack.push(u);
                    }
                }
            }
            seen.into_iter().all(|s| s)
        };
        reach(true) && reach(false)
    }

    fn arcs(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.tails.iter().copied().zip(self.heads.iter().copied())
    }
}

/// Builds `G(m, n)` over an alphabet of size `a`. The vertex order `n` may
/// be zero (a single vertex carrying every arc as a loop).
pub fn build_word_graph(a: u32, m: usize, n: usize) -> Result<WordGraph> {
    build_word_graph_with(a, m, n, &Limits::default())
}

pub fn build_word_graph_with(a: u32, m: usize, n: usize, limits: &Limits) -> Result<WordGraph> {
    if a == 0 || m == 0 {
        return Err(Error::Domain(format!(
            "alphabet and shift must be positive, got a={a}, m={m}"
        )));
    }
    let vertices = checked_pow(a as u64, n)?;
    if vertices > limits.max_graph_vertices {
        return Err(Error::guard(
            "graph vertices",
            vertices,
            limits.max_graph_vertices,
        ));
    }
    let arcs = checked_pow(a as u64, n + m)?;
    if arcs > MAX_GRAPH_ARCS {
        return Err(Error::guard("graph arcs", arcs, MAX_GRAPH_ARCS));
    }
    let shift = (a as u64).pow(m as u32);
    let tails = (0..arcs).map(|w| w / shift).collect();
    let heads = (0..arcs).map(|w| w % vertices).collect();
    Ok(WordGraph {
        a,
        m,
        n,
        tails,
        heads,
    })
}

/// The arc-graph of `G(m, n)`, which is `G(m, n + m)`.
///
/// The result is built directly and then checked against the explicit
/// pairing of consecutive arcs `(a1, a2)`, labelled `a1 · a2[n+1..n+m]`.
pub fn arc_graph(g: &WordGraph) -> Result<WordGraph> {
    arc_graph_with(g, &Limits::default())
}

pub fn arc_graph_with(g: &WordGraph, limits: &Limits) -> Result<WordGraph> {
    let big = build_word_graph_with(g.a, g.m, g.n + g.m, limits)?;
    let shift = (g.a as u64).pow(g.m as u32);
    let mut hit = vec![false; big.arc_count() as usize];
    for first in 0..g.arc_count() {
        let v = g.head(first);
        // arcs leaving v are exactly the ranks v·a^m .. (v+1)·a^m − 1
        for second in v * shift..(v + 1) * shift {
            debug_assert_eq!(g.tail(second), v);
            let label = first * shift + second % shift;
            if big.tail(label) != first || big.head(label) != second {
                return Err(Error::Internal(format!(
                    "arc-graph label {label} does not join {first} to {second}"
                )));
            }
            if std::mem::replace(&mut hit[label as usize], true) {
                return Err(Error::Internal(format!("arc-graph label {label} repeated")));
            }
        }
    }
    if hit.iter().any(|&h| !h) {
        return Err(Error::Internal("arc-graph misses some labels".into()));
    }
    Ok(big)
}

/// Spanning arborescences rooted at `0^n`, from a cofactor of the directed
/// Laplacian (out-degree diagonal minus adjacency; loops cancel).
pub fn arborescence_count(g: &WordGraph) -> Result<BigUint> {
    let size = g.vertex_count();
    if size > MAX_DETERMINANT_VERTICES {
        return Err(Error::guard(
            "cofactor vertices",
            size,
            MAX_DETERMINANT_VERTICES,
        ));
    }
    let size = size as usize;
    let mut lap = vec![vec![0i64; size]; size];
    for (t, h) in g.arcs() {
        if t != h {
            lap[t as usize][t as usize] += 1;
            lap[t as usize][h as usize] -= 1;
        }
    }
    let minor: Vec<Vec<BigInt>> = lap[1..]
        .iter()
        .map(|row| row[1..].iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let det = determinant(minor);
    if det.is_negative() {
        return Err(Error::Internal(format!("negative cofactor {det}")));
    }
    Ok(det.magnitude().clone())
}

pub(crate) fn factorial(n: u64) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// Euler tours up to rotation: `((a^m − 1)!)^{a^n} · |arborescences|`.
pub fn euler_count_best(g: &WordGraph) -> Result<BigUint> {
    let degree = (g.a as u64).pow(g.m as u32);
    if degree > MAX_FACTORIAL_DEGREE {
        return Err(Error::guard(
            "out-degree factorial",
            degree,
            MAX_FACTORIAL_DEGREE,
        ));
    }
    let trees = arborescence_count(g)?;
    let per_vertex = factorial(degree - 1);
    Ok(per_vertex.pow(g.vertex_count() as u32) * trees)
}

/// Euler tours up to rotation by exhaustive search over a small graph.
pub fn euler_count_brute(g: &WordGraph) -> Result<BigUint> {
    let arcs: Vec<(u64, u64)> = g.arcs().collect();
    if arcs.len() > MAX_BRUTE_ARCS {
        return Err(Error::guard("brute-force arcs", arcs.len(), MAX_BRUTE_ARCS));
    }
    Ok(BigUint::from(count_euler_tours(
        g.vertex_count() as usize,
        &arcs,
    )))
}

/// Closed walks using every arc once, counted up to rotation. Each rotation
/// class has exactly one member starting with arc 0, so the search fixes arc
/// 0 first and counts completions.
pub fn count_euler_tours(vertices: usize, arcs: &[(u64, u64)]) -> u64 {
    if arcs.is_empty() {
        return 0;
    }
    assert!(
        arcs.len() <= 64,
        "brute-force tour search is for tiny graphs"
    );
    let mut out_arcs = vec![Vec::new(); vertices];
    for (i, &(t, _)) in arcs.iter().enumerate() {
        out_arcs[t as usize].push(i);
    }

    fn extend(
        at: u64,
        used: u64,
        placed: usize,
        arcs: &[(u64, u64)],
        out_arcs: &[Vec<usize>],
    ) -> u64 {
        if placed == arcs.len() {
            return u64::from(at == arcs[0].0);
        }
        out_arcs[at as usize]
            .iter()
            .filter(|&&i| used & (1 << i) == 0)
            .map(|&i| extend(arcs[i].1, used | (1 << i), placed + 1, arcs, out_arcs))
            .sum()
    }

    extend(arcs[0].1, 1, 1, arcs, &out_arcs)
}

fn check_tour(g: &WordGraph, tour: &[u64]) -> Result<()> {
    if tour.len() as u64 != g.arc_count() {
        return Err(Error::Domain(format!(
            "tour has {} arcs, graph has {}",
            tour.len(),
            g.arc_count()
        )));
    }
    let mut used = vec![false; tour.len()];
    for (i, &arc) in tour.iter().enumerate() {
        if arc >= g.arc_count() || std::mem::replace(&mut used[arc as usize], true) {
            return Err(Error::Domain(format!("arc {arc} is invalid or repeated")));
        }
        let next = tour[(i + 1) % tour.len()];
        if next < g.arc_count() && g.head(arc) != g.tail(next) {
            return Err(Error::Domain(format!(
                "arc {arc} does not lead into arc {next}"
            )));
        }
    }
    Ok(())
}

/// Unrolls an Euler tour of `G(m, n')` from arc `tour[start]` into an
/// m-shift sequence of order `n' + m`: the first arc's label followed by the
/// last `m` letters of every later arc.
pub fn sequence_from_euler(g: &WordGraph, tour: &[u64], start: usize) -> Result<Word> {
    check_tour(g, tour)?;
    if start >= tour.len() {
        return Err(Error::Domain(format!(
            "start index {start} outside a tour of length {}",
            tour.len()
        )));
    }
    let shift = (g.a as u64).pow(g.m as u32);
    let mut out = g.arc_label(tour[start])?.into_vec();
    for j in 1..tour.len() {
        let arc = tour[(start + j) % tour.len()];
        out.extend_from_slice(unrank(arc % shift, g.m, g.a)?.symbols());
    }
    Ok(Word::new(out))
}

/// The Euler tour of `G(m, n − m)` traced by a sequence: its modulo-`m`
/// windows of length `n`, in order.
pub fn euler_from_sequence(w: &Word, p: DbParams) -> Result<Vec<u64>> {
    if p.m > p.n {
        return Err(Error::Precondition(format!(
            "tour correspondence needs m <= n, got m={}, n={}",
            p.m, p.n
        )));
    }
    let report = is_multishift_db(w, p)?;
    if !report.ok {
        return Err(Error::Domain(format!(
            "word is not a {}-shift sequence of order {}",
            p.m, p.n
        )));
    }
    Ok(window_ranks(w.symbols(), p.a, p.m, p.n))
}
