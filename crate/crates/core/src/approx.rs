//! Complex floating-point linear algebra for approximate points: a one-sided
//! Jacobi SVD with null-space extraction and rank determination, and
//! Householder QR with column pivoting.

use num_complex::Complex64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::ApproxMatrix;

const JACOBI_EPS: f64 = 1e-15;
const MAX_SWEEPS: usize = 80;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RankMode {
    Imposed,
    SpectralGap,
}

/// How a numerical rank was decided, together with the evidence.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RankDecision {
    pub rank: usize,
    pub mode: RankMode,
    /// Nonincreasing, `min(rows, cols)` values. For a QRP decision these are
    /// the moduli of the diagonal of `R`.
    pub singular_values: Vec<f64>,
    /// `σ_rank / σ_{rank+1}`; infinite when there is no next value or it is 0.
    pub gap_ratio: f64,
}

/// Ratio `values[rank-1] / values[rank]` with the conventions of
/// [`RankDecision::gap_ratio`].
pub fn gap_ratio(values: &[f64], rank: usize) -> f64 {
    let Some(&next) = values.get(rank) else {
        return f64::INFINITY;
    };
    if rank == 0 {
        // an all-zero spectrum is certainly rank 0; anything else is not
        return if next == 0.0 { f64::INFINITY } else { 0.0 };
    }
    let cur = values[rank - 1];
    match (cur == 0.0, next == 0.0) {
        (true, true) => 1.0,
        (false, true) => f64::INFINITY,
        _ => cur / next,
    }
}

/// Spectral-gap rank rule on a nonincreasing list.
///
/// Values above `tol * σ_1` are signal. If some value falls below, the cut is
/// placed at the largest ratio `σ_r / σ_{r+1}` among positions whose next
/// value is below the threshold. Cuts after a value that is itself at
/// rounding level (`ε σ_1 len`) are not considered.
pub fn spectral_rank(values: &[f64], tol: f64) -> usize {
    let Some(&top) = values.first() else {
        return 0;
    };
    if top == 0.0 {
        return 0;
    }
    let threshold = tol * top;
    let first_small = values.iter().position(|&v| v <= threshold);
    let Some(start) = first_small else {
        return values.len();
    };
    // start >= 1 because top > threshold
    let mut best = start;
    let mut best_ratio = gap_ratio(values, start);
    let floor = f64::EPSILON * top * values.len() as f64;
    for r in start + 1..values.len() {
        if values[r - 1] <= floor {
            break;
        }
        let ratio = gap_ratio(values, r);
        if ratio > best_ratio {
            best = r;
            best_ratio = ratio;
        }
    }
    best
}

/// Singular value decomposition `A = U Σ V*` with full square `V`.
#[derive(Clone, Debug)]
pub struct Svd {
    /// All `cols` singular values, nonincreasing. Entries past
    /// `min(rows, cols)` are numerically zero.
    pub singular_values: Vec<f64>,
    /// `rows x cols`; column `j` is `A v_j / σ_j`, or zero when `σ_j = 0`.
    pub left: ApproxMatrix,
    /// `cols x cols` unitary.
    pub right: ApproxMatrix,
}

const SUBNORMAL_FLOOR: f64 = f64::MIN_POSITIVE / f64::EPSILON;

/// One-sided (Hestenes) Jacobi SVD.
///
/// Pairs of columns of `A V` are rotated until mutually orthogonal; `V`
/// accumulates the rotations. The sweep order is fixed, so the result is
/// deterministic.
pub fn svd(a: &ApproxMatrix) -> Result<Svd> {
    a.check_finite()?;
    let (m, n) = (a.rows(), a.cols());
    // column-major working copies
    let mut w: Vec<Vec<Complex64>> = (0..n).map(|j| a.column(j)).collect();
    let mut v: Vec<Vec<Complex64>> = (0..n)
        .map(|j| {
            let mut e = vec![Complex64::zero(); n];
            e[j] = Complex64::new(1.0, 0.0);
            e
        })
        .collect();
    let mut norms: Vec<f64> = w.iter().map(|c| norm_sqr(c)).collect();

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha = norms[p];
                let beta = norms[q];
                // below this the squared norms are subnormal and the phase
                // below stops being unimodular
                if alpha < SUBNORMAL_FLOOR || beta < SUBNORMAL_FLOOR {
                    continue;
                }
                let gamma = dot(&w[p], &w[q]);
                let g = gamma.norm();
                if g <= JACOBI_EPS * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = Complex64::from_polar(1.0, gamma.arg());
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                // rotate (w_p, e^{-iφ} w_q) by the real Jacobi rotation
                let phase_conj = phase.conj();
                rotate(&mut w, p, q, c, s, phase_conj);
                rotate(&mut v, p, q, c, s, phase_conj);
                norms[p] = norm_sqr(&w[p]);
                norms[q] = norm_sqr(&w[q]);
            }
        }
        if !rotated {
            break;
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let sigma: Vec<f64> = norms.iter().map(|x| x.sqrt()).collect();
    order.sort_by(|&i, &j| sigma[j].total_cmp(&sigma[i]).then(i.cmp(&j)));

    let mut left = ApproxMatrix::zeros(m, n);
    let mut right = ApproxMatrix::zeros(n, n);
    let mut singular_values = Vec::with_capacity(n);
    for (k, &j) in order.iter().enumerate() {
        let s = sigma[j];
        singular_values.push(s);
        for i in 0..n {
            right[(i, k)] = v[j][i];
        }
        if s > 0.0 {
            for i in 0..m {
                left[(i, k)] = w[j][i] / s;
            }
        }
    }
    Ok(Svd {
        singular_values,
        left,
        right,
    })
}

fn norm_sqr(x: &[Complex64]) -> f64 {
    x.iter().map(Complex64::norm_sqr).sum()
}

/// `x^H y`
fn dot(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    x.iter().zip(y).map(|(a, b)| a.conj() * b).sum()
}

fn rotate(cols: &mut [Vec<Complex64>], p: usize, q: usize, c: f64, s: f64, phase: Complex64) {
    let (lo, hi) = cols.split_at_mut(q);
    let (cp, cq) = (&mut lo[p], &mut hi[0]);
    for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
        let yq = *y * phase;
        let xp = *x;
        *x = xp * c - yq * s;
        *y = xp * s + yq * c;
    }
}

/// Rank and an orthonormal kernel basis of `a`.
///
/// With `rank_hint` the rank is imposed; otherwise it is chosen by
/// [`spectral_rank`] with relative threshold `tol`. The kernel is spanned by
/// the last `cols - rank` right singular vectors.
pub fn svd_nullspace(
    a: &ApproxMatrix,
    rank_hint: Option<usize>,
    tol: f64,
) -> Result<(RankDecision, Vec<Vec<Complex64>>)> {
    let full = a.rows().min(a.cols());
    if let Some(r) = rank_hint {
        if r > full {
            return Err(Error::RankOutOfRange { rank: r, max: full });
        }
    } else if !(tol > 0.0 && tol < 1.0) {
        return Err(Error::Inconsistent(format!(
            "rank tolerance {tol} must lie in (0, 1)"
        )));
    }
    let dec = svd(a)?;
    let values: Vec<f64> = dec.singular_values[..full].to_vec();
    let (rank, mode) = match rank_hint {
        Some(r) => (r, RankMode::Imposed),
        None => (spectral_rank(&values, tol), RankMode::SpectralGap),
    };
    let kernel = (rank..a.cols()).map(|k| dec.right.column(k)).collect();
    let gap = gap_ratio(&values, rank);
    Ok((
        RankDecision {
            rank,
            mode,
            singular_values: values,
            gap_ratio: gap,
        },
        kernel,
    ))
}

/// QR with column pivoting, `A[:, perm] = Q R`.
#[derive(Clone, Debug)]
pub struct Qrp {
    /// `rows x rows` unitary.
    pub q: ApproxMatrix,
    /// `rows x cols` upper triangular with nonincreasing `|R[i,i]|`.
    pub r: ApproxMatrix,
    /// `perm[j]` is the original column placed at position `j`.
    pub perm: Vec<usize>,
    pub rank: RankDecision,
}

impl Qrp {
    /// The permutation as a `cols x cols` matrix `P` with `A = Q R P`.
    pub fn permutation_matrix(&self) -> ApproxMatrix {
        let n = self.perm.len();
        let mut p = ApproxMatrix::zeros(n, n);
        for (j, &orig) in self.perm.iter().enumerate() {
            p[(j, orig)] = Complex64::new(1.0, 0.0);
        }
        p
    }
}

pub fn qrp(a: &ApproxMatrix) -> Result<Qrp> {
    qrp_with_tol(a, crate::DEFAULT_TOL)
}

/// Householder QR; at each step the remaining column of largest norm is
/// moved to the front.
pub fn qrp_with_tol(a: &ApproxMatrix, tol: f64) -> Result<Qrp> {
    a.check_finite()?;
    let (m, n) = (a.rows(), a.cols());
    let mut r = a.clone();
    let mut q = ApproxMatrix::identity(m);
    let mut perm: Vec<usize> = (0..n).collect();
    let steps = m.min(n);

    for j in 0..steps {
        let norms: Vec<f64> = (j..n)
            .map(|c| (j..m).map(|i| r[(i, c)].norm_sqr()).sum::<f64>())
            .collect();
        let (offset, &best) = norms
            .iter()
            .enumerate()
            .fold((0, &norms[0]), |acc, (i, x)| if *x > *acc.1 { (i, x) } else { acc });
        let p = j + offset;
        if p != j {
            for i in 0..m {
                let tmp = r[(i, j)];
                r[(i, j)] = r[(i, p)];
                r[(i, p)] = tmp;
            }
            perm.swap(j, p);
        }
        let xnorm = best.sqrt();
        if xnorm == 0.0 {
            continue;
        }
        let x0 = r[(j, j)];
        let phase = if x0.norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            x0 / x0.norm()
        };
        let alpha = -phase * xnorm;
        let mut hv: Vec<Complex64> = (j..m).map(|i| r[(i, j)]).collect();
        hv[0] -= alpha;
        let hnorm = norm_sqr(&hv);
        if hnorm == 0.0 {
            continue;
        }
        // R <- (I - 2 v v^H / v^H v) R
        for c in j..n {
            let s: Complex64 = hv
                .iter()
                .enumerate()
                .map(|(k, h)| h.conj() * r[(j + k, c)])
                .sum();
            let f = s * (2.0 / hnorm);
            for (k, h) in hv.iter().enumerate() {
                r[(j + k, c)] -= h * f;
            }
        }
        // Q <- Q H
        for i in 0..m {
            let s: Complex64 = hv
                .iter()
                .enumerate()
                .map(|(k, h)| q[(i, j + k)] * h)
                .sum();
            let f = s * (2.0 / hnorm);
            for (k, h) in hv.iter().enumerate() {
                q[(i, j + k)] -= f * h.conj();
            }
        }
        r[(j, j)] = alpha;
        for i in j + 1..m {
            r[(i, j)] = Complex64::zero();
        }
    }

    let diag: Vec<f64> = (0..steps).map(|i| r[(i, i)].norm()).collect();
    let rank = spectral_rank(&diag, tol);
    let gap = gap_ratio(&diag, rank);
    Ok(Qrp {
        q,
        r,
        perm,
        rank: RankDecision {
            rank,
            mode: RankMode::SpectralGap,
            singular_values: diag,
            gap_ratio: gap,
        },
    })
}

/// `R1^{-1} R = (I | R1^{-1} R2)` where `R1` is the leading `rank x rank`
/// block of the triangular factor `r`.
///
/// Fails when `R1` is numerically singular relative to `tol`, i.e. when the
/// diagonal ratio `|R1[0,0]| / |R1[i,i]|` exceeds `1 / tol`.
pub fn border_form(r: &ApproxMatrix, rank: usize, tol: f64) -> Result<ApproxMatrix> {
    if rank > r.rows() || rank > r.cols() {
        return Err(Error::RankOutOfRange {
            rank,
            max: r.rows().min(r.cols()),
        });
    }
    let n = r.cols();
    if rank == 0 {
        return Ok(ApproxMatrix::zeros(0, n));
    }
    let d0 = r[(0, 0)].norm();
    let dmin = (0..rank).map(|i| r[(i, i)].norm()).fold(f64::INFINITY, f64::min);
    let estimate = if dmin == 0.0 { f64::INFINITY } else { d0 / dmin };
    if !(estimate.is_finite() && estimate * tol <= 1.0) {
        return Err(Error::IllConditioned { estimate });
    }
    // back substitution on every column
    let mut out = ApproxMatrix::zeros(rank, n);
    for c in 0..n {
        for i in (0..rank).rev() {
            let mut s = r[(i, c)];
            for k in i + 1..rank {
                s -= r[(i, k)] * out[(k, c)];
            }
            out[(i, c)] = s / r[(i, i)];
        }
    }
    // the leading block is the identity up to rounding; make it exact
    for i in 0..rank {
        for k in 0..rank {
            out[(i, k)] = if i == k {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::zero()
            };
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn real(rows: &[&[f64]]) -> ApproxMatrix {
        let cols = rows[0].len();
        ApproxMatrix::from_rows(cols, rows.iter().map(|r| r.iter().map(|&x| c(x)).collect()).collect())
            .unwrap()
    }

    fn phase_free_close(v: &[Complex64], expected: &[f64], tol: f64) -> bool {
        let inner: Complex64 = v.iter().zip(expected).map(|(a, b)| a.conj() * b).sum();
        (inner.norm() - 1.0).abs() < tol
    }

    #[test]
    fn nullspace_of_diagonal() {
        let (dec, ker) = svd_nullspace(&real(&[&[1.0, 0.0], &[0.0, 0.0]]), None, 1e-10).unwrap();
        assert_eq!(dec.rank, 1);
        assert_eq!(dec.mode, RankMode::SpectralGap);
        assert_eq!(ker.len(), 1);
        assert!(phase_free_close(&ker[0], &[0.0, 1.0], 1e-12));
    }

    #[test]
    fn nullspace_of_rank_one_symmetric() {
        let (dec, ker) = svd_nullspace(&real(&[&[1.0, 1.0], &[1.0, 1.0]]), None, 1e-8).unwrap();
        assert_eq!(dec.rank, 1);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!(phase_free_close(&ker[0], &[h, -h], 1e-12));
    }

    #[test]
    fn imposed_rank_and_errors() {
        let a = real(&[&[1.0, 0.0], &[0.0, 1e-3]]);
        let (dec, ker) = svd_nullspace(&a, Some(1), 1e-8).unwrap();
        assert_eq!(dec.mode, RankMode::Imposed);
        assert_eq!(ker.len(), 1);
        assert!(matches!(
            svd_nullspace(&a, Some(3), 1e-8),
            Err(Error::RankOutOfRange { .. })
        ));
        let mut bad = a.clone();
        bad[(0, 1)] = Complex64::new(f64::NAN, 0.0);
        assert!(matches!(svd_nullspace(&bad, None, 1e-8), Err(Error::NonFinite { .. })));
    }

    #[test]
    fn spectral_rank_rules() {
        assert_eq!(spectral_rank(&[1.0, 0.5, 0.1], 1e-8), 3);
        assert_eq!(spectral_rank(&[1.0, 1e-3, 1e-12, 1e-13], 1e-8), 2);
        assert_eq!(spectral_rank(&[0.0, 0.0], 1e-8), 0);
        assert_eq!(spectral_rank(&[], 1e-8), 0);
        // a deep cut below the threshold beats a shallow one
        assert_eq!(spectral_rank(&[1.0, 1e-9, 1e-25], 1e-8), 2);
        // trailing rounding noise followed by an exact zero is not a cut
        assert_eq!(spectral_rank(&[1.0, 1e-17, 1e-17, 1e-33, 0.0], 1e-8), 1);
    }

    #[test]
    fn qrp_identity_and_zero() {
        let id = ApproxMatrix::identity(4);
        let f = qrp(&id).unwrap();
        assert_eq!(f.rank.rank, 4);
        assert_eq!(f.perm, vec![0, 1, 2, 3]);
        let z = ApproxMatrix::zeros(3, 5);
        assert_eq!(qrp(&z).unwrap().rank.rank, 0);
    }

    #[test]
    fn border_form_small() {
        let r = real(&[&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0]]);
        assert_eq!(border_form(&r, 2, 1e-8).unwrap(), r);
        let r = real(&[&[2.0, 4.0]]);
        let b = border_form(&r, 1, 1e-8).unwrap();
        assert!((b[(0, 1)] - c(2.0)).norm() < 1e-15);
        let sing = real(&[&[1.0, 1.0], &[0.0, 1e-12]]);
        assert!(matches!(
            border_form(&sing, 2, 1e-8),
            Err(Error::IllConditioned { .. })
        ));
    }

    fn complex_matrix() -> impl Strategy<Value = ApproxMatrix> {
        (1usize..7, 1usize..7).prop_flat_map(|(r, cc)| {
            proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), r * cc).prop_map(move |v| {
                ApproxMatrix::from_vec(r, cc, v.into_iter().map(|(a, b)| Complex64::new(a, b)).collect())
                    .unwrap()
            })
        })
    }

    fn max_entry_diff(a: &ApproxMatrix, b: &ApproxMatrix) -> f64 {
        let mut m: f64 = 0.0;
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                m = m.max((a[(i, j)] - b[(i, j)]).norm());
            }
        }
        m
    }

    proptest! {
        #[test]
        fn svd_reconstructs(a in complex_matrix()) {
            let d = svd(&a).unwrap();
            let mut sigma = ApproxMatrix::zeros(a.cols(), a.cols());
            for k in 0..a.cols() {
                sigma[(k, k)] = c(d.singular_values[k]);
            }
            let rebuilt = d.left.mul(&sigma).unwrap().mul(&d.right.adjoint()).unwrap();
            prop_assert!(max_entry_diff(&a, &rebuilt) <= 1e-10 * a.frobenius_norm().max(1.0));
            prop_assert!(d.singular_values.windows(2).all(|w| w[0] >= w[1]));
        }

        #[test]
        fn kernel_is_orthonormal_and_small(a in complex_matrix()) {
            let (dec, ker) = svd_nullspace(&a, None, 1e-8).unwrap();
            prop_assert!(dec.rank <= a.rows().min(a.cols()));
            for (i, u) in ker.iter().enumerate() {
                for (j, v) in ker.iter().enumerate() {
                    let g: Complex64 = u.iter().zip(v).map(|(x, y)| x.conj() * y).sum();
                    let expected = if i == j { 1.0 } else { 0.0 };
                    prop_assert!((g - c(expected)).norm() < 1e-12);
                }
                let next = dec.singular_values.get(dec.rank).copied().unwrap_or(0.0);
                let residual: f64 = a.mul_vec(u).unwrap().iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                prop_assert!(residual <= next * (1.0 + 1e-10) + 1e-13 * a.frobenius_norm());
            }
        }

        #[test]
        fn qrp_reconstructs_with_monotone_diagonal(a in complex_matrix()) {
            let f = qrp(&a).unwrap();
            let rebuilt = f.q.mul(&f.r).unwrap().mul(&f.permutation_matrix()).unwrap();
            prop_assert!(max_entry_diff(&a, &rebuilt) <= 1e-10 * a.max_modulus().max(1.0));
            let d = &f.rank.singular_values;
            prop_assert!(d.windows(2).all(|w| w[0] + 1e-12 >= w[1]));
            let qq = f.q.adjoint().mul(&f.q).unwrap();
            prop_assert!(max_entry_diff(&qq, &ApproxMatrix::identity(a.rows())) < 1e-12);
        }

        #[test]
        fn svd_and_qrp_agree_on_separated_spectra(
            r in 1usize..4,
            seed in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 2 * 3 * 6),
        ) {
            // A = B C with B 6x r, C r x 6 has rank r; generic data gives a clear gap
            let to_c = |(a, b): &(f64, f64)| Complex64::new(*a, *b);
            let b = ApproxMatrix::from_vec(6, r, seed[..6 * r].iter().map(to_c).collect()).unwrap();
            let cm = ApproxMatrix::from_vec(r, 6, seed[18..18 + 6 * r].iter().map(to_c).collect()).unwrap();
            let a = b.mul(&cm).unwrap();
            let (dec, _) = svd_nullspace(&a, None, 1e-8).unwrap();
            prop_assume!(dec.gap_ratio > 1e3);
            let f = qrp(&a).unwrap();
            prop_assert_eq!(dec.rank, f.rank.rank);
        }
    }
}
