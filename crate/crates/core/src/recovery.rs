//! Exact coefficients from floating ones, and checks of the result.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::algebra::{GeneratorSet, HomogeneousPolynomial, Monomial};
use crate::error::{Error, Result};
use crate::eval::PointSet;
use crate::sampler::{BivariatePolynomial, Parametrization};
use crate::scalar::Scalar;

/// Limits for continued-fraction recovery.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RationalizationPolicy {
    pub max_denominator: u64,
    pub accept_tol: f64,
}

impl Default for RationalizationPolicy {
    fn default() -> Self {
        Self {
            max_denominator: 1_000_000,
            accept_tol: 1e-6,
        }
    }
}

impl RationalizationPolicy {
    pub fn new(max_denominator: u64, accept_tol: f64) -> Result<Self> {
        if max_denominator == 0 {
            return Err(Error::InvalidProfile("max denominator must be at least 1".into()));
        }
        if !(accept_tol > 0.0 && accept_tol.is_finite()) {
            return Err(Error::InvalidProfile(format!("acceptance tolerance {accept_tol} is not positive")));
        }
        Ok(Self {
            max_denominator,
            accept_tol,
        })
    }
}

/// The first continued-fraction convergent `p/q` of `x` with
/// `q <= max_denominator` and `|x - p/q| <= accept_tol`, or `None`.
///
/// Taking the first acceptable convergent rather than the last one means the
/// simplest fraction consistent with the tolerance wins.
pub fn rationalize(x: f64, policy: &RationalizationPolicy) -> Option<BigRational> {
    if !x.is_finite() || x.abs() >= 1e15 {
        return None;
    }
    let (mut p0, mut q0, mut p1, mut q1) = (0i128, 1i128, 1i128, 0i128);
    let mut rem = x;
    for _ in 0..64 {
        let a = rem.floor();
        let ai = a as i128;
        let (p, q) = (ai * p1 + p0, ai * q1 + q0);
        if q > policy.max_denominator as i128 {
            return None;
        }
        if (x - p as f64 / q as f64).abs() <= policy.accept_tol {
            return Some(BigRational::new(BigInt::from(p), BigInt::from(q)));
        }
        let frac = rem - a;
        if frac <= 0.0 {
            return None;
        }
        rem = 1.0 / frac;
        if !rem.is_finite() || rem >= 1e18 {
            return None;
        }
        (p0, q0, p1, q1) = (p1, q1, p, q);
    }
    None
}

/// Complex input: the imaginary part must be below the tolerance and is
/// dropped.
pub fn rationalize_complex(z: Complex64, policy: &RationalizationPolicy) -> Option<BigRational> {
    if z.im.abs() > policy.accept_tol {
        return None;
    }
    rationalize(z.re, policy)
}

/// One coefficient that could not be recovered.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoefficientFailure {
    pub monomial: String,
    pub value: [f64; 2],
}

/// A polynomial left in floating point because some coefficient failed.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FlaggedPolynomial {
    pub degree: usize,
    pub index: usize,
    pub failures: Vec<CoefficientFailure>,
}

#[derive(Clone, Debug)]
pub struct RecoveredGenerators {
    /// Fully recovered polynomials only.
    pub exact: GeneratorSet<BigRational>,
    pub flagged: Vec<FlaggedPolynomial>,
}

impl RecoveredGenerators {
    pub fn is_complete(&self) -> bool {
        self.flagged.is_empty()
    }
}

/// Rationalizes every coefficient. Polynomials with a failing coefficient are
/// reported in `flagged` and left out of `exact`.
pub fn rationalize_generators(g: &GeneratorSet<Complex64>, policy: &RationalizationPolicy) -> Result<RecoveredGenerators> {
    let mut exact = GeneratorSet::new(g.nvars(), g.kind());
    let mut flagged = Vec::new();
    for (&k, polys) in g.by_degree() {
        let mut recovered = Vec::with_capacity(polys.len());
        for (index, p) in polys.iter().enumerate() {
            let mut terms = Vec::with_capacity(p.len());
            let mut failures = Vec::new();
            for (m, c) in p.terms() {
                match rationalize_complex(*c, policy) {
                    Some(r) => terms.push((m.clone(), r)),
                    None => failures.push(CoefficientFailure {
                        monomial: m.to_string(),
                        value: [c.re, c.im],
                    }),
                }
            }
            if failures.is_empty() {
                recovered.push(HomogeneousPolynomial::from_terms(p.nvars(), k, terms)?);
            } else {
                flagged.push(FlaggedPolynomial {
                    degree: k,
                    index,
                    failures,
                });
            }
        }
        exact.insert(k, recovered)?;
    }
    Ok(RecoveredGenerators { exact, flagged })
}

/// Exact generators embedded as complex floats.
pub fn to_approx_generators(g: &GeneratorSet<BigRational>) -> Result<GeneratorSet<Complex64>> {
    let mut out = GeneratorSet::new(g.nvars(), g.kind());
    for (&k, polys) in g.by_degree() {
        let converted = polys
            .iter()
            .map(|p| {
                HomogeneousPolynomial::from_terms(
                    p.nvars(),
                    k,
                    p.terms()
                        .map(|(m, c)| (m.clone(), Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0))),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        out.insert(k, converted)?;
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct SubstitutionEntry {
    pub degree: usize,
    pub index: usize,
    /// `g(F_0, ..., F_n)` when it is not identically zero.
    pub residual: Option<BivariatePolynomial>,
}

#[derive(Clone, Debug, Default)]
pub struct SubstitutionReport {
    pub entries: Vec<SubstitutionEntry>,
}

impl SubstitutionReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.residual.is_none())
    }

    pub fn failures(&self) -> impl Iterator<Item = &SubstitutionEntry> {
        self.entries.iter().filter(|e| e.residual.is_some())
    }
}

/// `g(F_0, ..., F_n)` as an exact form in `(s, t)`.
pub fn substitute(g: &HomogeneousPolynomial<BigRational>, p: &Parametrization) -> Result<BivariatePolynomial> {
    if g.nvars() != p.n() + 1 {
        return Err(Error::DimensionMismatch(format!(
            "polynomial in {} variables composed with a map to P^{}",
            g.nvars(),
            p.n()
        )));
    }
    let powers = power_table(p, g.degree());
    let mut acc = BivariatePolynomial::zero(g.degree() * p.degree());
    for (m, c) in g.terms() {
        acc.add_scaled(&monomial_image(m, &powers), c)?;
    }
    Ok(acc)
}

fn power_table(p: &Parametrization, max: usize) -> Vec<Vec<BivariatePolynomial>> {
    p.components()
        .iter()
        .map(|f| {
            let mut row = vec![BivariatePolynomial::one()];
            for e in 1..=max {
                let next = row[e - 1].mul(f);
                row.push(next);
            }
            row
        })
        .collect()
}

fn monomial_image(m: &Monomial, powers: &[Vec<BivariatePolynomial>]) -> BivariatePolynomial {
    m.exponents()
        .iter()
        .zip(powers)
        .fold(BivariatePolynomial::one(), |acc, (&e, row)| acc.mul(&row[e as usize]))
}

/// Checks that every generator vanishes identically on the parametrized
/// curve.
pub fn verify_by_substitution(g: &GeneratorSet<BigRational>, p: &Parametrization) -> Result<SubstitutionReport> {
    let mut report = SubstitutionReport::default();
    for (&k, polys) in g.by_degree() {
        for (index, poly) in polys.iter().enumerate() {
            let r = substitute(poly, p)?;
            report.entries.push(SubstitutionEntry {
                degree: k,
                index,
                residual: (!r.is_zero()).then_some(r),
            });
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResidualEntry {
    pub degree: usize,
    pub index: usize,
    pub max: f64,
    pub mean: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ResidualReport {
    pub entries: Vec<ResidualEntry>,
}

impl ResidualReport {
    pub fn max(&self) -> f64 {
        self.entries.iter().map(|e| e.max).fold(0.0, f64::max)
    }

    pub fn within(&self, tol: f64) -> bool {
        self.max() <= tol
    }
}

/// Max and mean of `|g(R_i)|` over the points, per generator.
pub fn verify_on_points<T: Scalar>(g: &GeneratorSet<T>, points: &PointSet<T>) -> Result<ResidualReport> {
    if g.nvars() != points.nvars() {
        return Err(Error::DimensionMismatch(format!(
            "generators in {} variables evaluated at points of P^{}",
            g.nvars(),
            points.n()
        )));
    }
    let mut report = ResidualReport::default();
    if points.is_empty() {
        return Ok(report);
    }
    let tables: Vec<_> = points.points().iter().map(|p| p.power_table(g.max_degree())).collect();
    for (&k, polys) in g.by_degree() {
        for (index, poly) in polys.iter().enumerate() {
            let mut max = 0.0f64;
            let mut sum = 0.0;
            for powers in &tables {
                let v = poly
                    .terms()
                    .fold(T::zero(), |acc, (m, c)| acc + c.clone() * m.eval_with_powers(powers))
                    .modulus();
                max = max.max(v);
                sum += v;
            }
            report.entries.push(ResidualEntry {
                degree: k,
                index,
                max,
                mean: sum / points.len() as f64,
            });
        }
    }
    Ok(report)
}
