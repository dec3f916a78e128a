//! Exact-arithmetic cohomology of classifying spaces of rank 3 Kac-Moody
//! groups of infinite type.
//!
//! The library classifies rank 3 generalized Cartan matrices, computes
//! Weyl-invariant subrings of `H^*(BT; F)` degreewise by exact linear
//! algebra over `Q` or a prime field, and assembles the Poincare series of
//! `H^*(BK(A); F)` along two independent routes: the closed direct-sum
//! formulas attached to the four homotopy classes, and a degreewise
//! Mayer-Vietoris pipeline over the pasting diagram of maximal finite
//! parabolic subgroups. On top of that it produces p-torsion certificates
//! and the rational ring-structure report.
//!
//! Module map:
//! - [`cartan`]: Cartan matrix parsing, type trichotomy, parabolic profile
//!   and the four/ten class labels.
//! - [`field`], [`matrix`], [`graded`]: exact linear algebra over `Q` and
//!   prime fields on graded monomial bases.
//! - [`weyl`]: reflection matrices, induced substitutions on each graded
//!   piece, finite Weyl subgroup enumeration, Molien series.
//! - [`invariants`]: invariant rings `P_J` as joint kernels, the degree-4
//!   special elements, and the sum-identity checks.
//! - [`series`]: truncated integer power series and factored rational
//!   functions.
//! - [`assembly`]: the two cohomology pipelines, worked-example
//!   comparison, and the rational ring-structure report.
//! - [`torsion`]: torsion certificates from rational/mod-p invariant
//!   dimension comparison.
//! - [`reporting`], [`acceptance`]: report schema, analysis driver and the
//!   built-in acceptance corpus used by `kmc check`.

pub mod acceptance;
pub mod assembly;
pub mod cartan;
pub mod field;
pub mod graded;
pub mod invariants;
pub mod matrix;
pub(crate) mod modlift;
pub mod reporting;
pub mod series;
pub mod torsion;
pub mod weyl;

pub use cartan::{CartanMatrix, CartanError, ClassLabel, MatrixType, ParabolicProfile, RefinedClass};
pub use field::{Field, FieldSpec, PrimeField, Rationals};
pub use reporting::{AnalysisReport, AnalysisRequest, KmcError};
pub use series::{FactoredRational, TruncatedSeries};
