//! Coefficient scalars.
//!
//! Everything in the engine that touches coefficients is generic over
//! [`Scalar`], an exact ring with by-value arithmetic. Row reduction,
//! kernels and linear solves additionally need exact field division and are
//! bounded by [`FieldScalar`], which is implemented for the rational types
//! only.

use std::fmt;

use num_traits::{Num, Signed};

/// An exact scalar ring.
pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display + Num + Signed + 'static {}

impl<T> Scalar for T where T: Clone + PartialEq + fmt::Debug + fmt::Display + Num + Signed + 'static {}

/// Scalars whose `Div` is exact field division.
pub trait FieldScalar: Scalar {}

impl FieldScalar for num_rational::BigRational {}
impl FieldScalar for num_rational::Rational64 {}
impl FieldScalar for num_rational::Rational32 {}
