//! Exact-arithmetic toolkit for the Lie algebra of strictly block upper
//! triangular matrices and its derivations.
//!
//! Fix a field (GF(p) or the rationals) and a partition (n1, ..., nt) of n.
//! The strictly block upper triangular matrices form a nilpotent Lie algebra
//! N under the commutator bracket. This crate:
//!
//! * builds N with its standard basis and exact structure constants
//!   ([`algebra`]);
//! * computes the full derivation algebra Der(N) two independent ways: as the
//!   nullspace of the product-rule linear system ([`endo`]) and as the span
//!   of explicit structural families ([`decomp`]);
//! * splits any single derivation into an inner part plus explicit corner,
//!   center, and (in characteristic 2) paired maps, and reassembles it
//!   exactly ([`decomp`]);
//! * solves the matrix functional equations that drive the splitting
//!   ([`factor`]).
//!
//! Every capability has a runnable walkthrough under `examples/`:
//!
//! ```text
//! cargo run --example field_arithmetic       exact scalars: GF(p) and rationals
//! cargo run --example kernel_solving         RREF and nullspace over any field
//! cargo run --example algebra_tour           basis, bracket, center, derived algebra
//! cargo run --example derivation_oracle      Der(N) by brute force
//! cargo run --example factor_recovery        the four functional-equation solvers
//! cargo run --example decompose_walkthrough  split a derivation into parts
//! cargo run --example char2_phenomenon       the characteristic-2 extra derivations
//! cargo run --example support_audit          block-support certificates
//! cargo run --example verification_sweep     brute force vs structural over many cases
//! ```
//!
//! The thin `nilblock` binary exposes the same flows as subcommands
//! (`dim`, `decompose`, `example41`, `verify`).

pub mod algebra;
pub mod cli;
pub mod decomp;
pub mod endo;
pub mod error;
pub mod factor;
pub mod field;
pub mod io;
pub mod matrix;

pub use algebra::{Algebra, BasisId, CenterBasis};
pub use decomp::{
    char2_showcase, decompose, derivation_space_structural, omega, psi_12_13_class_dim,
    psi_t1_t2_class_dim, synthesize, varphi_class_dim, Decomposition,
};
pub use endo::{ad, check_support_lemmas, derivation_space_bruteforce, DerBasis, Endo};
pub use error::{Error, Result};
pub use factor::{
    solve_balanced, solve_left_factor, solve_right_factor, solve_sandwich, BlockLinMap,
    SandwichSolution,
};
pub use field::{Field, Scalar};
pub use matrix::{Mat, Partition};
