//! Exact symbolic kernel for conformal-algebra computations.
//!
//! Everything here is computed over exact rationals ([`scalar::Rat`]); there
//! is no floating point and no tolerance anywhere. The crate is organized
//! around the algebraic structures it manipulates:
//!
//! - [`hopf`] — the polynomial Hopf algebra `H = k[T_1..T_n]`: product,
//!   coproduct, antipode, counit, augmentation filtration, the divided-power
//!   dual and its pairing.
//! - [`weyl`] — normal-ordered arithmetic in the Weyl algebra `A_n` and in
//!   `M_N(A_n)`, the canonical representation on `H ⊗ k^N`, derivations,
//!   the q-adic filtration, and the sign involution.
//! - [`confalg`] — translation-invariant continuous maps `H → A` in
//!   canonical finite form, their f-products, locality sets, and the axiom
//!   verifiers.
//! - [`fdist`] — finitely supported formal distributions and the residue
//!   n-products.
//! - [`operad`] — partitions, symmetric-group combinatorics, free and
//!   associative multilinear operads with substitution composition.
//! - [`structures`] — Poisson brackets, hamiltonian fields, polynomial
//!   derivations, divergence-free and symplectic membership, and the
//!   Jordan/Lie parts of matrix Weyl algebras.
//! - [`suites`] — batch verification suites with per-check reports, shared
//!   by the test harness and the command-line driver.
//!
//! All values are immutable after construction and all operations are pure;
//! everything is `Send + Sync` and safe to share across threads.

pub mod confalg;
pub mod error;
pub mod fdist;
mod fmtutil;
pub mod hopf;
pub mod multiindex;
pub mod operad;
pub mod ring;
pub mod sample;
pub mod scalar;
pub mod structures;
pub mod suites;
pub mod weyl;

pub(crate) use fmtutil::{fmt_terms, format_monomial};

pub use error::{Error, Result};
pub use multiindex::{Degree, MultiIndex};
pub use ring::{RatMatrix, Ring, SquareMatrix};
pub use scalar::Rat;
