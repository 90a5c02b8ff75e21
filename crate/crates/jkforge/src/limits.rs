//! Resource limits guarding the combinatorial constructions.

/// Bounds applied by operations that can blow up combinatorially. All
/// violations surface as [`crate::Error::SizeLimit`].
#[derive(Debug, Clone, Copy)]
pub struct Limits {
    /// Maximum number of basis symbols in any single algebra.
    pub max_basis: usize,
    /// Maximum number of simplices in a complex.
    pub max_simplices: usize,
    /// Maximum number of maps returned by exhaustive enumeration.
    pub max_maps: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_basis: 20_000,
            max_simplices: 200_000,
            max_maps: 100_000,
        }
    }
}
