//! Projective point sets and evaluation matrices.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;

use crate::algebra::MonomialSet;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{FieldKind, Scalar};

/// Normalized approximate points closer than this are reported as near
/// duplicates.
pub const NEAR_DUPLICATE_TOL: f64 = 1e-12;

/// A point of projective space given by homogeneous coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct Point<T> {
    coords: Vec<T>,
    normalized: bool,
}

impl<T: Scalar> Point<T> {
    pub fn new(coords: Vec<T>) -> Self {
        Self {
            coords,
            normalized: false,
        }
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// Divides by the first coordinate of maximal modulus, which becomes
    /// exactly 1.
    pub fn normalize(&self) -> Result<Self> {
        let pivot = self
            .coords
            .iter()
            .enumerate()
            .fold(None::<usize>, |best, (i, c)| match best {
                Some(b) if self.coords[b].modulus_cmp(c).is_ge() => Some(b),
                _ => Some(i),
            })
            .filter(|&i| !self.coords[i].is_zero())
            .ok_or(Error::ZeroPoint { index: 0 })?;
        let d = self.coords[pivot].clone();
        let mut coords: Vec<T> = self.coords.iter().map(|c| c.clone() / d.clone()).collect();
        coords[pivot] = T::one();
        Ok(Self {
            coords,
            normalized: true,
        })
    }

    /// Powers `p_i^e` for `e <= max_degree`, per coordinate.
    pub fn power_table(&self, max_degree: usize) -> Vec<Vec<T>> {
        self.coords
            .iter()
            .map(|x| {
                let mut row = Vec::with_capacity(max_degree + 1);
                row.push(T::one());
                for e in 1..=max_degree {
                    row.push(row[e - 1].clone() * x.clone());
                }
                row
            })
            .collect()
    }
}

/// Projective equality: all 2x2 minors vanish.
fn proportional(a: &[BigRational], b: &[BigRational]) -> bool {
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            if &a[i] * &b[j] != &a[j] * &b[i] {
                return false;
            }
        }
    }
    true
}

/// A finite set of points in `P^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct PointSet<T> {
    n: usize,
    points: Vec<Point<T>>,
}

impl<T: Scalar> PointSet<T> {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nvars(&self) -> usize {
        self.n + 1
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point<T>] {
        &self.points
    }

    pub fn field_kind(&self) -> FieldKind {
        T::FIELD
    }

    fn check_shape(n: usize, points: &[Point<T>]) -> Result<()> {
        for (i, p) in points.iter().enumerate() {
            if p.coords.len() != n + 1 {
                return Err(Error::DimensionMismatch(format!(
                    "point {i} has {} coordinates, expected {}",
                    p.coords.len(),
                    n + 1
                )));
            }
            if p.is_zero() {
                return Err(Error::ZeroPoint { index: i });
            }
        }
        Ok(())
    }
}

impl PointSet<BigRational> {
    /// Exact points; rejects zero vectors and repeated projective points.
    pub fn exact(n: usize, points: Vec<Point<BigRational>>) -> Result<Self> {
        Self::check_shape(n, &points)?;
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                if proportional(&points[i].coords, &points[j].coords) {
                    return Err(Error::DuplicatePoint {
                        first: i,
                        second: j,
                    });
                }
            }
        }
        Ok(Self { n, points })
    }

    /// Embeds exact points as complex floats.
    pub fn to_approx(&self) -> Result<PointSet<Complex64>> {
        use num_traits::ToPrimitive;
        let points = self
            .points
            .iter()
            .map(|p| {
                Point::new(
                    p.coords
                        .iter()
                        .map(|c| Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0))
                        .collect(),
                )
            })
            .collect();
        PointSet::approx(self.n, points)
    }
}

impl Point<Complex64> {
    /// True when some coordinate is exactly 1 and none exceeds 1 by more than
    /// rounding. Such points are left untouched on ingestion so that a
    /// written and re-read point set is bit-identical.
    fn in_normal_form(&self) -> bool {
        self.coords.iter().any(|c| *c == Complex64::new(1.0, 0.0))
            && self.coords.iter().all(|c| c.norm() <= 1.0 + 4.0 * f64::EPSILON)
    }
}

impl PointSet<Complex64> {
    /// Approximate points, normalized on ingestion.
    pub fn approx(n: usize, points: Vec<Point<Complex64>>) -> Result<Self> {
        Self::check_shape(n, &points)?;
        let mut normalized = Vec::with_capacity(points.len());
        for (i, p) in points.iter().enumerate() {
            if !p.coords.iter().all(Scalar::is_finite) {
                return Err(Error::NonFinite { row: i, col: 0 });
            }
            if p.in_normal_form() {
                normalized.push(Point {
                    coords: p.coords.clone(),
                    normalized: true,
                });
            } else {
                normalized.push(p.normalize().map_err(|_| Error::ZeroPoint { index: i })?);
            }
        }
        Ok(Self {
            n,
            points: normalized,
        })
    }

    /// Pairs of normalized points within [`NEAR_DUPLICATE_TOL`].
    pub fn near_duplicates(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.points.len() {
            for j in i + 1..self.points.len() {
                let d: f64 = self.points[i]
                    .coords
                    .iter()
                    .zip(&self.points[j].coords)
                    .map(|(a, b)| (a - b).norm_sqr())
                    .sum::<f64>()
                    .sqrt();
                if d < NEAR_DUPLICATE_TOL {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// `h x t` matrix with entry `(i, j) = S[j](R[i])`.
pub fn evaluation_matrix<T: Scalar>(points: &PointSet<T>, support: &MonomialSet) -> Result<Matrix<T>> {
    if points.is_empty() {
        return Err(Error::DimensionMismatch("empty point set".into()));
    }
    if support.nvars() != points.nvars() {
        return Err(Error::DimensionMismatch(format!(
            "monomials in {} variables evaluated at points of P^{}",
            support.nvars(),
            points.n()
        )));
    }
    let k = support.degree();
    let mut data = Vec::with_capacity(points.len() * support.len());
    for p in &points.points {
        let powers = p.power_table(k);
        data.extend(support.iter().map(|m| m.eval_with_powers(&powers)));
    }
    Matrix::from_vec(points.len(), support.len(), data)
}

/// Convenience constructor for exact points from integer rows.
pub fn exact_points_from_integers(rows: &[Vec<i64>]) -> Result<PointSet<BigRational>> {
    let n = rows.first().map_or(0, |r| r.len().saturating_sub(1));
    let points = rows
        .iter()
        .map(|r| Point::new(r.iter().map(|&x| BigRational::from_integer(x.into())).collect()))
        .collect();
    PointSet::exact(n, points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{kernel_exact, rank, rre};
    use crate::matrix::ExactMatrix;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn normalize_examples() {
        let p = Point::new(vec![q(2, 1), q(4, 1)]).normalize().unwrap();
        assert_eq!(p.coords(), &[q(1, 2), q(1, 1)]);
        assert!(p.is_normalized());

        let z = Point::new(vec![Complex64::new(0.0, 0.0), Complex64::new(0.0, 3.0)])
            .normalize()
            .unwrap();
        assert_eq!(z.coords(), &[Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]);

        let s = Point::new(vec![q(9, 1), q(9, 1), q(9, 1), q(6, 1)]).normalize().unwrap();
        assert_eq!(s.coords(), &[q(1, 1), q(1, 1), q(1, 1), q(2, 3)]);

        assert!(matches!(
            Point::new(vec![q(0, 1), q(0, 1)]).normalize(),
            Err(Error::ZeroPoint { .. })
        ));
    }

    #[test]
    fn normalize_is_idempotent() {
        let p = Point::new(vec![q(-3, 7), q(5, 2), q(-5, 2)]);
        let once = p.normalize().unwrap();
        assert_eq!(once.normalize().unwrap(), once);
    }

    #[test]
    fn exact_sets_reject_duplicates_and_zero() {
        let dup = exact_points_from_integers(&[vec![1, 2, 3], vec![2, 4, 6]]);
        assert!(matches!(dup, Err(Error::DuplicatePoint { first: 0, second: 1 })));
        let zero = exact_points_from_integers(&[vec![1, 2, 3], vec![0, 0, 0]]);
        assert!(matches!(zero, Err(Error::ZeroPoint { index: 1 })));
    }

    #[test]
    fn approx_sets_flag_near_duplicates() {
        let c = |x: f64| Complex64::new(x, 0.0);
        let set = PointSet::approx(
            1,
            vec![
                Point::new(vec![c(1.0), c(0.5)]),
                Point::new(vec![c(2.0), c(1.0)]),
                Point::new(vec![c(1.0), c(-1.0)]),
            ],
        )
        .unwrap();
        assert_eq!(set.near_duplicates(), vec![(0, 1)]);
    }

    #[test]
    fn evaluation_small_cases() {
        let pts = exact_points_from_integers(&[vec![1, 0], vec![0, 1]]).unwrap();
        let m = evaluation_matrix(&pts, &MonomialSet::enumerate(1, 1).unwrap()).unwrap();
        assert_eq!(m, ExactMatrix::identity(2));

        let pts = exact_points_from_integers(&[vec![1, 2, 3], vec![4, 5, 7]]).unwrap();
        let m = evaluation_matrix(&pts, &MonomialSet::unit(3)).unwrap();
        assert_eq!(m.column(0), vec![q(1, 1), q(1, 1)]);

        assert!(matches!(
            evaluation_matrix(&pts, &MonomialSet::unit(4)),
            Err(Error::DimensionMismatch(_))
        ));
    }

    fn twisted_cubic(ts: &[i64]) -> PointSet<BigRational> {
        exact_points_from_integers(
            &ts.iter().map(|&t| vec![1, t, t * t, t * t * t]).collect::<Vec<_>>(),
        )
        .unwrap()
    }

    #[test]
    fn twisted_cubic_quadric_matrix_has_rank_seven() {
        let pts = twisted_cubic(&[0, 1, 2, 3, 4, 5, 6]);
        let m = evaluation_matrix(&pts, &MonomialSet::enumerate(3, 2).unwrap()).unwrap();
        assert_eq!((m.rows(), m.cols()), (7, 10));
        assert_eq!(rank(&m), 7);
    }

    #[test]
    fn kernel_is_invariant_under_point_scaling() {
        let pts = twisted_cubic(&[0, 1, 2, 3, 4, 5, 6]);
        let scaled = PointSet::exact(
            3,
            pts.points()
                .iter()
                .enumerate()
                .map(|(i, p)| {
                    let f = q(i as i64 + 2, 3);
                    Point::new(p.coords().iter().map(|c| c * &f).collect())
                })
                .collect(),
        )
        .unwrap();
        let s = MonomialSet::enumerate(3, 2).unwrap();
        let a = evaluation_matrix(&pts, &s).unwrap();
        let b = evaluation_matrix(&scaled, &s).unwrap();
        let ka = ExactMatrix::from_rows(10, kernel_exact(&a)).unwrap();
        let kb = ExactMatrix::from_rows(10, kernel_exact(&b)).unwrap();
        assert_eq!(rre(&ka), rre(&kb));
    }
}
