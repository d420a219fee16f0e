//! Classical root systems, signed-permutation Weyl groups and their
//! extensions, exact invariant polynomial algebra, and mechanical checks
//! of the restriction theorems for propagation of Lie algebras and
//! symmetric spaces.
//!
//! All arithmetic is exact rational; verification outcomes are reports,
//! never floating-point comparisons.

pub mod error;
pub mod group;
pub mod invariants;
pub mod poly;
pub mod rat;
pub mod root_system;
pub mod signed_perm;
pub mod spaces;
pub mod sweep;
pub mod transfer;

pub use error::{Error, Result};
pub use group::{
    compare_groups, generate_extended, generate_weyl, restrict_element, restricted_image,
    stabilizer, GroupComparison, GroupKind, GroupTable, DEFAULT_ENUM_CAP,
};
pub use poly::{is_invariant, reynolds, Monomial, Polynomial};
pub use root_system::{verify_simple_restriction, RootSystem, TypeLabel, DEFAULT_RANK_CAP};
pub use signed_perm::SignedPermutation;

/// JSON schema version stamped on every report.
pub const SCHEMA_VERSION: &str = "1";

/// Enumeration cap honoring the `WEYL_RESTRICT_MAX_RANK` override.
pub fn enumeration_cap_from_env() -> usize {
    std::env::var("WEYL_RESTRICT_MAX_RANK")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_ENUM_CAP)
}
