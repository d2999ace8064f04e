//! Scalar traits for the generic algebraic layer.
//!
//! Polynomials and matrices are generic over their coefficient type; the
//! bounds are collected here so the rest of the crate can write
//! `T: Coeff` instead of repeating a num-traits bound list.

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{Num, One, Zero};
use std::fmt;
use std::ops::{Neg, Sub};

/// Ring scalar: addition, subtraction, multiplication, exact equality.
/// Satisfied by the coefficient scalars below and by polynomials over
/// them, so matrices can hold either.
pub trait RingScalar:
    Clone + PartialEq + fmt::Debug + Zero + One + Sub<Output = Self>
{
}

impl<T> RingScalar for T where T: Clone + PartialEq + fmt::Debug + Zero + One + Sub<Output = Self> {}

/// Coefficient scalar for polynomials: a ring with (checked) division,
/// native parsing and printing. Satisfied by `BigInt`, `Ratio<BigInt>`,
/// `f64`, ...
pub trait Coeff: RingScalar + Num + Neg<Output = Self> + fmt::Display {}

impl<T> Coeff for T where T: RingScalar + Num + Neg<Output = Self> + fmt::Display {}

/// Marker for scalars whose `Div` is a true field inverse (every nonzero
/// element invertible). Required by the exact linear solver; notably NOT
/// implemented for `BigInt`, whose `Div` truncates.
pub trait FieldScalar: Coeff {}

impl FieldScalar for Ratio<BigInt> {}
impl FieldScalar for f32 {}
impl FieldScalar for f64 {}
