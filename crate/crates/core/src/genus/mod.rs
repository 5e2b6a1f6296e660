//! Classes, genera and automorphisms of small positive ternary forms.

mod cache;
mod classes;
mod fixtures;
mod isometry;
mod neighbors;
mod reduce;

pub use cache::{cache_key, cached_neighbor_class_set, CacheStatus, CACHE_ENV};
pub use classes::{
    genus_average, neighbor_class_set, ratio_check, ClassEntry, GenusAverage, GenusClassSet, Provenance,
    RatioCheck,
};
pub use fixtures::{
    check_fixture, genus_fixture_check, genus_fixtures, spinor_instance_check, FixtureOutcome,
    GenusFixture, SpinorInstance, SpinorReport,
};
pub use isometry::{aut_size, is_equivalent, IsometryMatrix};
pub use neighbors::{isotropic_lines, p_neighbors};
pub use reduce::{reduce, Reduction};

/// Ordering key of a form: its six coefficients.
pub(crate) fn form_key(f: &crate::forms::TernaryForm) -> [i64; 6] {
    [f.a11, f.a22, f.a33, f.a23, f.a13, f.a12]
}
