/// Size caps for the exponential and enumerative computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Edge cap for subset expansion.
    pub subset_edges: usize,
    /// Edge cap for deletion–contraction.
    pub recursion_edges: usize,
    /// Largest `k` accepted when building `A_k`/`B_k`.
    pub family_index: usize,
    /// Largest `k` or `l` accepted by the pair constructions.
    pub pair_index: usize,
    /// Largest vertex count for rooted-tree enumeration.
    pub rooted_vertices: usize,
    /// Largest vertex count for free-tree enumeration.
    pub free_vertices: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            subset_edges: 24,
            recursion_edges: 24,
            family_index: 6,
            pair_index: 3,
            rooted_vertices: 16,
            free_vertices: 18,
        }
    }
}
