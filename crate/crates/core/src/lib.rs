//! m-shift de Bruijn sequences and related word combinatorics.
//!
//! A word `w` over `{0, …, a−1}` is an *m-shift de Bruijn sequence of order
//! n* when every word of length `n` occurs exactly once in `w` as a factor
//! starting at a position `im + 1`. Such a word has length `m·a^n + n − m`.
//!
//! The crate provides:
//!
//! - [`word`]: words, 1-based factors, ranks and modulo-`m` windows;
//! - [`verify`]: the defining predicate with diagnostics;
//! - [`generate`]: block, multiple-order, interleaving and greedy constructions;
//! - [`graphs`]: the word graph `G(m, n)`, arborescence and Euler-tour counts;
//! - [`counting`]: exact and logarithmic counts, with a brute-force oracle;
//! - [`frobenius`]: sets of words of lengths `m` and `n` whose complement in
//!   the free monoid is finite, and the longest words they cannot represent.

pub mod counting;
pub mod error;
pub mod frobenius;
pub mod generate;
pub mod graphs;
pub mod limits;
mod linalg;
pub mod verify;
pub mod word;

pub use counting::{count_formula, count_recursion, enumerate_all, Branch, CountResult};
pub use error::{Error, Result};
pub use frobenius::{
    build_instance, frobenius_number, is_representable, longest_nonrepresentable, theorem_language,
    FrobeniusInstance, LongestWords,
};
pub use generate::{
    gen_block, gen_greedy, gen_interleave, gen_multiple, gen_ordinary, generate, Algorithm,
    GreedyPreference,
};
pub use graphs::{
    arborescence_count, arc_graph, build_word_graph, euler_count_best, euler_count_brute,
    euler_from_sequence, sequence_from_euler, WordGraph,
};
pub use limits::Limits;
pub use verify::{check_wrap, is_multishift_db, VerifyReport};
pub use word::{factor, modulo_factors, rank, unrank, DbParams, Symbol, Word};

/// Arbitrary-precision non-negative integer used for all exact counts.
pub type BigCount = num_bigint::BigUint;
