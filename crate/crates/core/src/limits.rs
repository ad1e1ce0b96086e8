/// Resource guards. Every operation that can blow up checks one of these
/// before allocating, and fails with [`crate::Error::Guard`] instead.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum length of a generated sequence, in symbols.
    pub max_symbols: u64,
    /// Maximum number of decimal digits of an exact count.
    pub max_digits: u64,
    /// Maximum number of representability-automaton states.
    pub max_states: u64,
    /// Maximum number of vertices of an explicitly built word graph.
    pub max_graph_vertices: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_symbols: 100_000_000,
            max_digits: 1_000_000,
            max_states: 1 << 22,
            max_graph_vertices: 4096,
        }
    }
}

/// Largest occurrence tally the verifier will allocate (entries).
pub const MAX_TALLY: u64 = 1 << 28;
/// Largest vertex count for the cofactor determinant.
pub const MAX_DETERMINANT_VERTICES: u64 = 64;
/// Largest arc count for brute-force Euler tour enumeration.
pub const MAX_BRUTE_ARCS: usize = 16;
/// Largest out-degree whose factorial enters the BEST product.
pub const MAX_FACTORIAL_DEGREE: u64 = 10_000;
/// Largest arc count for an explicitly built word graph.
pub const MAX_GRAPH_ARCS: u64 = 1 << 22;
/// Longest word the exhaustive enumerator will search.
pub const MAX_ENUMERATION_LENGTH: u64 = 40;
/// Default cap on the number of words the enumerator may count.
pub const DEFAULT_ENUMERATION_CAP: u64 = 10_000_000;
