use std::cmp::Ordering;
use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Which coefficient field a value lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldKind {
    Rational,
    Complex,
}

/// Coefficient field shared by polynomials, points and matrices.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    const FIELD: FieldKind;

    /// Absolute value as a float, for diagnostics.
    fn modulus(&self) -> f64;

    /// Compares absolute values, exactly where the field allows it.
    fn modulus_cmp(&self, other: &Self) -> Ordering;

    fn is_finite(&self) -> bool;
}

impl Scalar for BigRational {
    const FIELD: FieldKind = FieldKind::Rational;

    fn modulus(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }

    fn modulus_cmp(&self, other: &Self) -> Ordering {
        self.abs().cmp(&other.abs())
    }

    fn is_finite(&self) -> bool {
        true
    }
}

impl Scalar for Complex64 {
    const FIELD: FieldKind = FieldKind::Complex;

    fn modulus(&self) -> f64 {
        self.norm()
    }

    fn modulus_cmp(&self, other: &Self) -> Ordering {
        self.norm_sqr().total_cmp(&other.norm_sqr())
    }

    fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}
