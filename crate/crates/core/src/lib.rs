//! Exact computer algebra for truncated arc constructions on differential
//! graded presentations.
//!
//! The engine works with free super-commutative algebras in non-positive
//! cohomological degrees, presented by generators and a differential
//! ([`gradedalg`]). On top of that sit the jet/arc extension of a
//! presentation ([`arcs`]), homotopy-group dimensions of bigraded pieces by
//! exact linear algebra ([`homology`]), the conformal-weight-one cotangent
//! subcomplex and weak-smoothness checks ([`cotangent`]), the top-weight
//! filtration and its associated graded ([`degeneration`]), and truncated
//! bivariate Euler series ([`qseries`]).
//!
//! All arithmetic is exact. Coefficients default to arbitrary-precision
//! rationals ([`Rat`]); the core is generic over any exact scalar ring
//! implementing [`Scalar`].

pub mod arcs;
pub mod cotangent;
pub mod degeneration;
pub mod error;
pub mod gradedalg;
pub mod homology;
pub mod linalg;
pub mod presets;
pub mod qseries;
pub mod scalar;

pub use arcs::{
    arc_presentation, classical_jet_ring, expand_series, truncation_map, ArcPresentation,
    ClassicalJetRing,
};
pub use cotangent::{
    cotangent_complex, jacobian, weakly_smooth_check, CotangentComplex, WeakSmoothness,
};
pub use degeneration::{
    associated_graded, compare_graded, filtration_degree, sym_model, CoeffConvention,
    GradedComparison,
};
pub use error::{Error, Result};
pub use gradedalg::{
    GenId, Generator, Monomial, Parity, Polynomial, Presentation, PresentationBuilder,
    ValidationIssue, ValidationReport, Weighting,
};
pub use homology::{
    classicality_report, cohomology_dim, differential_matrix, is_boundary, is_cycle,
    ClassicalityReport, ColumnRange, PiEntry, PieceMatrix,
};
pub use linalg::Matrix;
pub use qseries::{
    cohomology_euler_series, complex_euler_series, free_euler_series, pochhammer,
    pochhammer_finite, BiSeries, EulerConvention,
};
pub use scalar::{FieldScalar, Scalar};

/// Exact rational coefficients, the default scalar everywhere.
pub type Rat = num_rational::BigRational;
/// Arbitrary-precision integers, the default Euler-series coefficients.
pub type Int = num_bigint::BigInt;

/// Shorthand for an integer rational coefficient.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

/// Shorthand for a rational coefficient `num/den`.
pub fn ratio(num: i64, den: i64) -> Rat {
    Rat::new(Int::from(num), Int::from(den))
}
