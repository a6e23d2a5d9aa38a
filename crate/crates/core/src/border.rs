//! Degree-by-degree construction of a complement connected to 1 and the
//! associated border basis.
//!
//! For each degree `k` the candidates are `N_{k-1}+`. A basis of
//! `J_k ∩ <N_{k-1}+>` is obtained from the ideal oracle, the border monomials
//! are chosen among the candidates (pivot columns of an exact echelon form, or
//! the leading QRP columns of the kernel in the approximate case) and the
//! remaining candidates become `N_k`.

use std::collections::BTreeMap;

use num_complex::Complex64;
use num_rational::BigRational;
use serde::Serialize;

use crate::algebra::{Complement, GeneratorKind, GeneratorSet, HomogeneousPolynomial, MonomialSet};
use crate::approx::{self, RankDecision};
use crate::error::{Error, Result};
use crate::eval::{evaluation_matrix, PointSet};
use crate::exact;
use crate::matrix::{ApproxMatrix, ExactMatrix};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    PointsExact,
    PointsApprox,
    Custom,
}

/// An ideal `J` known only through bases of `J ∩ <N>` for finite monomial
/// sets `N` of one degree.
pub trait IdealOracle<T: Scalar> {
    /// Linearly independent polynomials supported on `support` spanning
    /// `J ∩ <support>`.
    fn compute_basis(&self, support: &MonomialSet) -> Result<Vec<HomogeneousPolynomial<T>>>;

    fn provenance(&self) -> Provenance;
}

/// The vanishing ideal of exact points.
pub struct ExactPointsOracle<'a> {
    points: &'a PointSet<BigRational>,
}

impl<'a> ExactPointsOracle<'a> {
    pub fn new(points: &'a PointSet<BigRational>) -> Self {
        Self { points }
    }
}

impl IdealOracle<BigRational> for ExactPointsOracle<'_> {
    fn compute_basis(&self, support: &MonomialSet) -> Result<Vec<HomogeneousPolynomial<BigRational>>> {
        compute_basis_points_exact(self.points, support)
    }

    fn provenance(&self) -> Provenance {
        Provenance::PointsExact
    }
}

/// Basis of the polynomials on `support` vanishing at every exact point.
pub fn compute_basis_points_exact(
    points: &PointSet<BigRational>,
    support: &MonomialSet,
) -> Result<Vec<HomogeneousPolynomial<BigRational>>> {
    let m = evaluation_matrix(points, support)?;
    exact::kernel_exact(&m)
        .iter()
        .map(|v| HomogeneousPolynomial::from_coeffs(support, v))
        .collect()
}

/// Orthonormal basis (as coefficient vectors) of the numerical null-space of
/// the evaluation matrix.
pub fn compute_basis_points_approx(
    points: &PointSet<Complex64>,
    support: &MonomialSet,
    rank_hint: Option<usize>,
    tol: f64,
) -> Result<(RankDecision, Vec<HomogeneousPolynomial<Complex64>>)> {
    let m = evaluation_matrix(points, support)?;
    let (dec, kernel) = approx::svd_nullspace(&m, rank_hint, tol)?;
    let polys = kernel
        .iter()
        .map(|v| HomogeneousPolynomial::from_coeffs(support, v))
        .collect::<Result<_>>()?;
    Ok((dec, polys))
}

/// Per-degree record of one border-basis step.
#[derive(Clone, Debug, Serialize)]
pub struct DegreeDiagnostics {
    pub degree: usize,
    /// `|N_{k-1}+|`
    pub candidates: usize,
    /// `|N_k|`, the rank of the evaluation matrix on the candidates.
    pub complement_size: usize,
    /// `|B_k|`
    pub generators: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank_decision: Option<RankDecision>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub qrp_decision: Option<RankDecision>,
    /// Largest `|f(R_i)|` over generators and (normalized) points.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_residual: Option<f64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct RunDiagnostics {
    pub degrees: Vec<DegreeDiagnostics>,
    /// The points lie on a hyperplane (`I_1 != 0`).
    pub degenerate: bool,
    /// `dim I_1`
    pub linear_forms: usize,
    pub warnings: Vec<String>,
}

impl RunDiagnostics {
    pub fn all_warnings(&self) -> impl Iterator<Item = &String> {
        self.warnings
            .iter()
            .chain(self.degrees.iter().flat_map(|d| d.warnings.iter()))
    }
}

/// Complement and generators up to a degree bound.
#[derive(Clone, Debug)]
pub struct BorderRun<T> {
    pub complement: Complement,
    pub generators: GeneratorSet<T>,
    pub diagnostics: RunDiagnostics,
}

impl<T: Scalar> BorderRun<T> {
    pub fn degree_bound(&self) -> usize {
        self.complement.max_degree()
    }

    pub fn nvars(&self) -> usize {
        self.complement.nvars()
    }
}

/// Exact border basis up to degree `s` for the ideal represented by `oracle`.
///
/// At each degree the oracle basis of `J_k ∩ <N_{k-1}+>` is put in completely
/// reduced row echelon form; pivot columns are the border monomials, the rest
/// form `N_k`, and the echelon rows are the border polynomials.
pub fn border_basis_with_complement(
    oracle: &dyn IdealOracle<BigRational>,
    n: usize,
    s: usize,
) -> Result<BorderRun<BigRational>> {
    if s < 1 {
        return Err(Error::DegreeOutOfRange { degree: s, max: 1 });
    }
    let nvars = n + 1;
    if !oracle.compute_basis(&MonomialSet::unit(nvars))?.is_empty() {
        return Err(Error::NotProper);
    }
    let mut complement = Complement::unit(nvars);
    let mut generators = GeneratorSet::new(nvars, GeneratorKind::Border);
    let mut diagnostics = RunDiagnostics::default();

    for k in 1..=s {
        let candidates = complement.level(k - 1).expand_plus();
        let basis = oracle.compute_basis(&candidates)?;
        let rows = basis
            .iter()
            .map(|p| p.coeffs(&candidates))
            .collect::<Result<Vec<_>>>()?;
        let a = ExactMatrix::from_rows(candidates.len(), rows)?;
        let res = exact::rre(&a);
        if res.rank() != basis.len() {
            return Err(Error::DependentBasis { degree: k });
        }
        let level = MonomialSet::from_monomials(
            nvars,
            k,
            res.free_columns().into_iter().map(|j| candidates.get(j).clone()),
        )?;
        let polys = (0..res.echelon.rows())
            .map(|i| HomogeneousPolynomial::from_coeffs(&candidates, res.echelon.row(i)))
            .collect::<Result<Vec<_>>>()?;
        diagnostics.degrees.push(DegreeDiagnostics {
            degree: k,
            candidates: candidates.len(),
            complement_size: level.len(),
            generators: polys.len(),
            rank_decision: None,
            qrp_decision: None,
            max_residual: None,
            warnings: Vec::new(),
        });
        complement.push(level)?;
        generators.insert(k, polys)?;
    }
    note_degeneracy(&mut diagnostics, generators.degree(1).len());
    Ok(BorderRun {
        complement,
        generators,
        diagnostics,
    })
}

/// Exact border basis of the vanishing ideal of `points`.
pub fn border_basis_exact(points: &PointSet<BigRational>, s: usize) -> Result<BorderRun<BigRational>> {
    border_basis_with_complement(&ExactPointsOracle::new(points), points.n(), s)
}

fn note_degeneracy(diagnostics: &mut RunDiagnostics, linear: usize) {
    if linear > 0 {
        diagnostics.degenerate = true;
        diagnostics.linear_forms = linear;
        diagnostics.warnings.push(format!(
            "points lie on {linear} independent hyperplane(s); degree bounds apply with n replaced by n - {linear}"
        ));
    }
}

/// Options for [`border_basis_approx`].
#[derive(Clone, Debug)]
pub struct ApproxOptions {
    /// Relative threshold for spectral rank decisions.
    pub tol: f64,
    /// Imposed rank `|N_k|` per degree.
    pub ranks: BTreeMap<usize, usize>,
    /// Convert each degree to border form; otherwise keep the rows of the QRP
    /// factor as an intermediate basis.
    pub border_form: bool,
}

impl Default for ApproxOptions {
    fn default() -> Self {
        Self {
            tol: crate::DEFAULT_TOL,
            ranks: BTreeMap::new(),
            border_form: true,
        }
    }
}

/// Approximate border basis of the vanishing ideal of `points` up to degree
/// `s`.
///
/// Per degree: the SVD gives the rank `r` of the evaluation matrix on
/// `N_{k-1}+` and an orthonormal kernel; QRP of the `(t - r) x t` kernel
/// matrix picks the first `t - r` permuted columns as border monomials and the
/// rest as `N_k`. The rows of `R1^{-1} R` are the border polynomials. If that
/// solve is ill-conditioned the run keeps the rows of `R` and is downgraded to
/// an intermediate basis.
pub fn border_basis_approx(
    points: &PointSet<Complex64>,
    s: usize,
    options: &ApproxOptions,
) -> Result<BorderRun<Complex64>> {
    if s < 1 {
        return Err(Error::DegreeOutOfRange { degree: s, max: 1 });
    }
    let nvars = points.nvars();
    let mut complement = Complement::unit(nvars);
    let kind = if options.border_form {
        GeneratorKind::Border
    } else {
        GeneratorKind::Intermediate
    };
    let mut generators = GeneratorSet::new(nvars, kind);
    let mut diagnostics = RunDiagnostics::default();
    for (i, j) in points.near_duplicates() {
        diagnostics
            .warnings
            .push(format!("points {i} and {j} coincide to within 1e-12"));
    }

    for k in 1..=s {
        let candidates = complement.level(k - 1).expand_plus();
        let t = candidates.len();
        let m = evaluation_matrix(points, &candidates)?;
        let imposed = options.ranks.get(&k).copied();
        let (decision, kernel) = approx::svd_nullspace(&m, imposed, options.tol)?;
        let mut warnings = Vec::new();
        if imposed.is_some() {
            let spectral = approx::spectral_rank(&decision.singular_values, options.tol);
            if spectral != decision.rank {
                warnings.push(format!(
                    "degree {k}: imposed rank {} differs from spectral-gap rank {spectral}",
                    decision.rank
                ));
            }
        }
        let q = kernel.len();
        let (level, polys, qrp_decision) = if q == 0 {
            (candidates.clone(), Vec::new(), None)
        } else {
            let rows: Vec<Vec<Complex64>> = kernel;
            let kmat = ApproxMatrix::from_rows(t, rows)?;
            let f = approx::qrp_with_tol(&kmat, options.tol)?;
            if f.rank.rank != q {
                warnings.push(format!(
                    "degree {k}: kernel matrix has QRP rank {} but {q} rows",
                    f.rank.rank
                ));
            }
            let level = MonomialSet::from_monomials(
                nvars,
                k,
                f.perm[q..].iter().map(|&j| candidates.get(j).clone()),
            )?;
            let rows = if generators.kind() == GeneratorKind::Border {
                match approx::border_form(&f.r, q, options.tol) {
                    Ok(b) => b,
                    Err(e) => {
                        warnings.push(format!(
                            "degree {k}: border form unavailable ({e}); keeping an intermediate basis"
                        ));
                        generators.set_kind(GeneratorKind::Intermediate);
                        top_rows(&f.r, q)
                    }
                }
            } else {
                top_rows(&f.r, q)
            };
            let polys = (0..q)
                .map(|i| {
                    let mut coeffs = vec![Complex64::new(0.0, 0.0); t];
                    for (pos, &orig) in f.perm.iter().enumerate() {
                        coeffs[orig] = rows[(i, pos)];
                    }
                    HomogeneousPolynomial::from_coeffs(&candidates, &coeffs)
                })
                .collect::<Result<Vec<_>>>()?;
            (level, polys, Some(f.rank))
        };
        let max_residual = polys
            .iter()
            .flat_map(|p| points.points().iter().map(move |pt| p.evaluate(pt.coords()).norm()))
            .fold(0.0, f64::max);
        diagnostics.degrees.push(DegreeDiagnostics {
            degree: k,
            candidates: t,
            complement_size: level.len(),
            generators: polys.len(),
            rank_decision: Some(decision),
            qrp_decision,
            max_residual: Some(max_residual),
            warnings,
        });
        complement.push(level)?;
        generators.insert(k, polys)?;
    }
    note_degeneracy(&mut diagnostics, generators.degree(1).len());
    Ok(BorderRun {
        complement,
        generators,
        diagnostics,
    })
}

fn top_rows(r: &ApproxMatrix, q: usize) -> ApproxMatrix {
    let mut out = ApproxMatrix::zeros(q, r.cols());
    for i in 0..q {
        for j in 0..r.cols() {
            out[(i, j)] = r[(i, j)];
        }
    }
    out
}
