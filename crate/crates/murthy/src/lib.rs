//! Exact commutative algebra on the split quadric.
//!
//! This crate computes with points of the affine quadric Q_{2n} defined by
//! Σ xᵢyᵢ = z(1−z) over polynomial rings k[x₁,…,x_m] (k = ℚ or F_p, p odd),
//! the action of the elementary orthogonal group EO_{2n+1} on those points,
//! naive homotopy witnesses between points, and lifting certificates that
//! exhibit n generators for an ideal I given n generators of I/I².
//!
//! Everything is exact: rational arithmetic is arbitrary precision, finite
//! field arithmetic is modular, and every identity the library claims is
//! checked by polynomial equality, never numerically.
//!
//! A narrative guide with runnable examples lives in [`guide`] and, in book
//! form, under `book/` in the repository.

pub mod error;
pub mod field;
pub mod files;
pub mod ring;
pub mod samples;
pub mod segre;
pub mod pipeline;
pub mod poly;
pub mod homotopy;
pub mod ideal;
pub mod quadric;
pub mod reduction;

pub use error::{Error, Result};
pub use field::{Field, Scalar};
pub use homotopy::{HomotopyChain, HomotopyWitness};
pub use ideal::{GroebnerData, Ideal, MembershipWitness, NakayamaResult};
pub use poly::Polynomial;
pub use reduction::{enumerate_points, enumeration_report, orbit_of, reduce_over_field, EnumerationReport, ReductionTrace};
pub use quadric::{alpha, beta, switch_word, ElementaryOp, ElementaryWord, QPoint, QPrimePoint};
pub use segre::{LiftingCertificate, SearchBudget, SegreInput};
pub use ring::{Monomial, MonomialOrder, Ring};
