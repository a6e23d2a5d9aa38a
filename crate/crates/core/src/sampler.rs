//! Point sets sampled from homogeneous parametrizations `P^1 -> P^n`.

use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::eval::{Point, PointSet};

/// A homogeneous polynomial in `(s, t)` with exact coefficients.
///
/// `coeffs[j]` is the coefficient of `s^(degree - j) t^j`.
#[derive(Clone, PartialEq, Eq)]
pub struct BivariatePolynomial {
    degree: usize,
    coeffs: Vec<BigRational>,
}

impl BivariatePolynomial {
    pub fn zero(degree: usize) -> Self {
        Self {
            degree,
            coeffs: vec![BigRational::zero(); degree + 1],
        }
    }

    pub fn one() -> Self {
        Self {
            degree: 0,
            coeffs: vec![BigRational::one()],
        }
    }

    /// Builds `sum c s^a t^b` from `(c, a, b)` triples; all `a + b` must equal
    /// `degree`. Repeated exponents are summed.
    pub fn from_terms(degree: usize, terms: impl IntoIterator<Item = (BigRational, u32, u32)>) -> Result<Self> {
        let mut p = Self::zero(degree);
        for (c, a, b) in terms {
            let (a, b) = (a as usize, b as usize);
            if a + b != degree {
                return Err(Error::Parse(format!(
                    "term s^{a} t^{b} does not have degree {degree}"
                )));
            }
            p.coeffs[b] += c;
        }
        Ok(p)
    }

    /// Coefficients listed by increasing power of `t`.
    pub fn from_integers(coeffs: &[i64]) -> Self {
        assert!(!coeffs.is_empty(), "a homogeneous polynomial needs at least one coefficient");
        Self {
            degree: coeffs.len() - 1,
            coeffs: coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Nonzero terms as `(coefficient, e_s, e_t)`.
    pub fn terms(&self) -> impl Iterator<Item = (&BigRational, u32, u32)> {
        let d = self.degree;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(j, c)| (c, (d - j) as u32, j as u32))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.degree + other.degree);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        out
    }

    pub fn add_scaled(&mut self, other: &Self, c: &BigRational) -> Result<()> {
        if self.degree != other.degree {
            return Err(Error::DimensionMismatch(format!(
                "adding forms of degrees {} and {}",
                self.degree, other.degree
            )));
        }
        for (x, y) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *x += c * y;
        }
        Ok(())
    }

    pub fn eval_exact(&self, s: &BigRational, t: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        let mut s_pow = BigRational::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c * &s_pow;
            s_pow *= s;
        }
        acc
    }

    /// Value at `s = 1` and `t = exp(2 pi i k / h)`.
    ///
    /// Each power `t^j` is computed directly from the reduced angle
    /// `(k j mod h) / h`, so no rounding error accumulates across powers.
    pub fn eval_root_of_unity(&self, k: u64, h: u64) -> Complex64 {
        let mut acc = Complex64::zero();
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let r = (k as u128 * j as u128 % h as u128) as f64;
            let cf = c.to_f64().unwrap_or(f64::NAN);
            acc += Complex64::from_polar(cf, TAU * r / h as f64);
        }
        acc
    }

    fn l1_f64(&self) -> f64 {
        self.coeffs.iter().map(|c| c.to_f64().unwrap_or(f64::INFINITY).abs()).sum()
    }
}

impl fmt::Display for BivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (c, a, b) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            if a > 0 {
                write!(f, "*s^{a}")?;
            }
            if b > 0 {
                write!(f, "*t^{b}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `[F_0(s, t) : ... : F_n(s, t)]`, all components of one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parametrization {
    n: usize,
    degree: usize,
    components: Vec<BivariatePolynomial>,
}

impl Parametrization {
    pub fn new(n: usize, degree: usize, components: Vec<BivariatePolynomial>) -> Result<Self> {
        if components.len() != n + 1 {
            return Err(Error::DimensionMismatch(format!(
                "{} components for a curve in P^{n}",
                components.len()
            )));
        }
        if let Some((i, c)) = components.iter().enumerate().find(|(_, c)| c.degree != degree) {
            return Err(Error::DimensionMismatch(format!(
                "component {i} has degree {}, expected {degree}",
                c.degree
            )));
        }
        if components.iter().all(BivariatePolynomial::is_zero) {
            return Err(Error::InvalidProfile("all components vanish identically".into()));
        }
        Ok(Self { n, degree, components })
    }

    /// Components given as integer coefficient rows, by increasing power of `t`.
    pub fn from_integer_rows(rows: &[&[i64]]) -> Result<Self> {
        let components: Vec<_> = rows.iter().map(|r| BivariatePolynomial::from_integers(r)).collect();
        let degree = components.first().map_or(0, BivariatePolynomial::degree);
        Self::new(rows.len().saturating_sub(1), degree, components)
    }

    /// The rational normal curve `[s^n : s^(n-1) t : ... : t^n]`.
    pub fn rational_normal_curve(n: usize) -> Self {
        let components = (0..=n)
            .map(|i| {
                let mut c = vec![0; n + 1];
                c[i] = 1;
                BivariatePolynomial::from_integers(&c)
            })
            .collect();
        Self {
            n,
            degree: n,
            components,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn components(&self) -> &[BivariatePolynomial] {
        &self.components
    }

    pub fn eval_exact(&self, s: &BigRational, t: &BigRational) -> Vec<BigRational> {
        self.components.iter().map(|c| c.eval_exact(s, t)).collect()
    }
}

/// Relative size below which a sampled point counts as the zero vector.
const ZERO_POINT_TOL: f64 = 1e-12;

/// Samples `[F(1, t_k)]` at `t_k = exp(2 pi i k / h)` for `k = 1..=h`.
pub fn sample_roots_of_unity(p: &Parametrization, h: usize) -> Result<PointSet<Complex64>> {
    if h == 0 {
        return Err(Error::DimensionMismatch("at least one sample point is needed".into()));
    }
    let scale: f64 = p.components.iter().map(BivariatePolynomial::l1_f64).fold(0.0, f64::max);
    let mut points = Vec::with_capacity(h);
    for k in 1..=h as u64 {
        let coords: Vec<Complex64> = p
            .components
            .iter()
            .map(|c| c.eval_root_of_unity(k, h as u64))
            .collect();
        let size = coords.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if size <= ZERO_POINT_TOL * scale {
            return Err(Error::ZeroPoint { index: k as usize });
        }
        points.push(Point::new(coords));
    }
    PointSet::approx(p.n, points)
}

/// Exact samples `[F(1, t)]` at the given parameter values.
pub fn sample_exact_rational(p: &Parametrization, params: &[BigRational]) -> Result<PointSet<BigRational>> {
    if params.is_empty() {
        return Err(Error::DimensionMismatch("at least one parameter value is needed".into()));
    }
    let one = BigRational::one();
    let points = params.iter().map(|t| Point::new(p.eval_exact(&one, t))).collect();
    PointSet::exact(p.n, points)
}

/// Integer parameter values `t = start, start + 1, ...`.
pub fn integer_params(start: i64, count: usize) -> Vec<BigRational> {
    (0..count as i64).map(|i| BigRational::from_integer((start + i).into())).collect()
}
