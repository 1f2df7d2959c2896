//! Shared fixtures for the benchmarks.

use diffkit::{Morphism, Space};

/// `Stream(Z3, k)`
pub fn stream_space(k: usize) -> Space {
    Space::stream(&Space::Cyclic(3), k)
}

/// Every rotation of a subject pool, so each map takes a turn as the subject.
pub fn rotations(subjects: &[Morphism]) -> impl Iterator<Item = Vec<Morphism>> + '_ {
    (0..subjects.len()).map(move |i| subjects[i..].iter().chain(&subjects[..i]).cloned().collect())
}
