//! Codes over `F_p`, cyclotomic lattices, their theta series and the
//! representation ring of the associated lattice vertex algebras, with the
//! Clifford and hyperoctahedral group computations that sit alongside them.

// `!(x > 0.0)` guards are meant to reject NaN too; matrix code indexes rows in place.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod cliffcode;
pub mod codelattice;
pub mod cyclotomic;
pub mod fpcode;
pub mod hilbert_eval;
pub mod octower;
pub mod qexp;
pub mod suite;
pub mod voarep;

/// Default cap on lattice enumeration norm bounds.
pub const DEFAULT_MAX_NORM: u32 = 40;

/// Norm cap from `THETA_FORGE_MAX_NORM`, or [`DEFAULT_MAX_NORM`] when unset
/// or unparsable.
pub fn max_norm_cap() -> u32 {
    std::env::var("THETA_FORGE_MAX_NORM").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_MAX_NORM)
}
