//! Removal of redundant generators.
//!
//! Only linear relations between `V_{k-1}+` and `V_k` need to be examined at
//! degree `k`: the syzygies of a basis whose complement is connected to 1 are
//! generated in degree at most one. Every routine here therefore works degree
//! by degree on the matrix `Ũ` whose columns are the coefficients of
//! `V_{k-1}+ ∪ V_k` on the monomial blocks
//! `S1 = (∂N)_{k-1}+ \ N_{k-1}+` and `S2 = (∂N)_k`. Rows for `S3 = N_k` never
//! change the kernel and are not built.

use std::collections::{BTreeMap, HashMap};

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::One;

use crate::algebra::{Complement, GeneratorKind, GeneratorSet, HomogeneousPolynomial, Monomial};
use crate::approx;
use crate::error::{Error, Result};
use crate::exact;
use crate::matrix::{ApproxMatrix, ExactMatrix, Matrix};
use crate::scalar::Scalar;

/// Minimal generators together with what was discarded.
#[derive(Clone, Debug)]
pub struct MinimizationReport<T> {
    pub minimal: GeneratorSet<T>,
    /// Indices into the input `V_k` that were kept.
    pub kept: BTreeMap<usize, Vec<usize>>,
    /// Indices into the input `V_k` that were discarded as redundant.
    pub removed: BTreeMap<usize, Vec<usize>>,
    /// `dim(<V_{k-1}+> ∩ <V_k>)`
    pub kernel_dims: BTreeMap<usize, usize>,
    pub warnings: Vec<String>,
}

impl<T: Scalar> MinimizationReport<T> {
    fn new(nvars: usize) -> Self {
        Self {
            minimal: GeneratorSet::new(nvars, GeneratorKind::Minimal),
            kept: BTreeMap::new(),
            removed: BTreeMap::new(),
            kernel_dims: BTreeMap::new(),
            warnings: Vec::new(),
        }
    }

    fn record(&mut self, k: usize, input: &[HomogeneousPolynomial<T>], redundant: &[usize], dim: usize) -> Result<()> {
        let mut removed = redundant.to_vec();
        removed.sort_unstable();
        let kept: Vec<usize> = (0..input.len()).filter(|i| removed.binary_search(i).is_err()).collect();
        self.minimal
            .insert(k, kept.iter().map(|&i| input[i].clone()).collect())?;
        self.kept.insert(k, kept);
        self.removed.insert(k, removed);
        self.kernel_dims.insert(k, dim);
        Ok(())
    }

    /// Per-degree count of kept generators for degrees `1..=s`.
    pub fn counts(&self, s: usize) -> Vec<usize> {
        self.minimal.counts(s)
    }
}

/// The monomial blocks of `Ũ` at degree `k`.
struct Blocks {
    /// `S1` followed by `S2`.
    rows: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    s1: usize,
    s2: usize,
}

fn blocks(c: &Complement, k: usize) -> Result<Blocks> {
    let prev_border = c.border_monomials(k - 1)?;
    let prev_plus = c.level(k - 1).expand_plus();
    let s1 = prev_border.expand_plus().difference(&prev_plus);
    let s2 = c.border_monomials(k)?;
    let rows: Vec<Monomial> = s1.iter().chain(s2.iter()).cloned().collect();
    let index = rows.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    Ok(Blocks {
        rows,
        index,
        s1: s1.len(),
        s2: s2.len(),
    })
}

fn check_shapes<T: Scalar>(c: &Complement, v: &GeneratorSet<T>) -> Result<usize> {
    let s = c.max_degree();
    if v.max_degree() > s {
        return Err(Error::Inconsistent(format!(
            "generators reach degree {} but the complement stops at {s}",
            v.max_degree()
        )));
    }
    if v.nvars() != c.nvars() {
        return Err(Error::DimensionMismatch(
            "complement and generators use different variable counts".into(),
        ));
    }
    for k in 1..=s {
        let border = c.border_monomials(k)?.len();
        if v.degree(k).len() != border {
            return Err(Error::Inconsistent(format!(
                "degree {k}: {} generators but {border} border monomials",
                v.degree(k).len()
            )));
        }
    }
    Ok(s)
}

fn plus_list<T: Scalar>(polys: &[HomogeneousPolynomial<T>], nvars: usize) -> Vec<HomogeneousPolynomial<T>> {
    polys
        .iter()
        .flat_map(|p| (0..nvars).map(move |j| p.mul_var(j)))
        .collect()
}

/// `Ũ` as a `(s1 + s2) x (l + s2)` matrix.
fn u_tilde<T: Scalar>(b: &Blocks, plus: &[HomogeneousPolynomial<T>], current: &[HomogeneousPolynomial<T>]) -> Result<Matrix<T>> {
    let cols: Vec<Vec<T>> = plus
        .iter()
        .chain(current)
        .map(|p| p.restricted_coeffs(&b.rows, &b.index))
        .collect();
    Ok(Matrix::from_rows(b.rows.len(), cols)?.transpose())
}

/// Exact minimal generators from any per-degree bases `V_k` of
/// `J_k ∩ <N_{k-1}+>`.
///
/// `π2(Ker Ũ)` gives the coordinates (w.r.t. `V_k`) of `<V_{k-1}+> ∩ <V_k>`;
/// its echelon pivots mark the redundant elements.
pub fn minimal_basis(c: &Complement, v: &GeneratorSet<BigRational>) -> Result<MinimizationReport<BigRational>> {
    let s = check_shapes(c, v)?;
    let nvars = c.nvars();
    let mut report = MinimizationReport::new(nvars);
    if s >= 1 {
        report.record(1, v.degree(1), &[], 0)?;
    }
    for k in 2..=s {
        let current = v.degree(k);
        let plus = plus_list(v.degree(k - 1), nvars);
        if current.is_empty() || plus.is_empty() {
            report.record(k, current, &[], 0)?;
            continue;
        }
        let b = blocks(c, k)?;
        let u = u_tilde(&b, &plus, current)?;
        let kernel = exact::kernel_exact(&u);
        let l = plus.len();
        let projected: Vec<Vec<BigRational>> = kernel.into_iter().map(|w| w[l..].to_vec()).collect();
        let mk = ExactMatrix::from_rows(b.s2, projected)?;
        let res = exact::rre(&mk);
        report.record(k, current, &res.pivot_columns, res.rank())?;
    }
    Ok(report)
}

/// Exact minimal generators from a border basis, using its structure.
///
/// With `B_k` ordered by border monomial the `S2 x B_k` block is the identity
/// and the `S1 x B_{k-1}+` block is 0/1 with at most one 1 per column. One
/// column per `S1` row is kept as a pivot and subtracted from the other
/// columns meeting that row; the remaining columns restricted to `S2` form
/// `P2`, whose column echelon pivots are the redundant border polynomials.
pub fn minimal_basis_border(c: &Complement, b: &GeneratorSet<BigRational>) -> Result<MinimizationReport<BigRational>> {
    let s = check_shapes(c, b)?;
    let nvars = c.nvars();
    let mut report = MinimizationReport::new(nvars);
    if s >= 1 {
        report.record(1, b.degree(1), &[], 0)?;
    }
    for k in 2..=s {
        let current = b.degree(k);
        let plus = plus_list(b.degree(k - 1), nvars);
        if current.is_empty() || plus.is_empty() {
            report.record(k, current, &[], 0)?;
            continue;
        }
        let blocks = blocks(c, k)?;
        let order = border_order(current, &blocks, k)?;
        match structured_pivots(&blocks, &plus)? {
            Some(p2_cols) => {
                let l = plus.len();
                let p2 = ExactMatrix::from_rows(blocks.s2, p2_cols)?.transpose();
                debug_assert_eq!(p2.cols(), l - blocks.s1);
                let (_, pivot_rows) = exact::column_reduce_to_echelon(&p2);
                let redundant: Vec<usize> = pivot_rows.iter().map(|&r| order[r]).collect();
                report.record(k, current, &redundant, pivot_rows.len())?;
            }
            None => {
                report.warnings.push(format!(
                    "degree {k}: structured reduction preconditions failed; used the general algorithm"
                ));
                let u = u_tilde(&blocks, &plus, current)?;
                let kernel = exact::kernel_exact(&u);
                let l = plus.len();
                let projected: Vec<Vec<BigRational>> = kernel.into_iter().map(|w| w[l..].to_vec()).collect();
                let res = exact::rre(&ExactMatrix::from_rows(blocks.s2, projected)?);
                report.record(k, current, &res.pivot_columns, res.rank())?;
            }
        }
    }
    Ok(report)
}

/// `order[i]` is the index in `current` of the border polynomial whose border
/// monomial is `S2[i]`.
fn border_order(current: &[HomogeneousPolynomial<BigRational>], blocks: &Blocks, k: usize) -> Result<Vec<usize>> {
    let mut order = vec![usize::MAX; blocks.s2];
    for (idx, p) in current.iter().enumerate() {
        let mut hit = None;
        for (m, coeff) in p.terms() {
            if let Some(&row) = blocks.index.get(m) {
                if row < blocks.s1 {
                    return Err(Error::NotBorderForm { degree: k });
                }
                if hit.is_some() || !coeff.is_one() {
                    return Err(Error::NotBorderForm { degree: k });
                }
                hit = Some(row - blocks.s1);
            }
        }
        let slot = hit.ok_or(Error::NotBorderForm { degree: k })?;
        if order[slot] != usize::MAX {
            return Err(Error::NotBorderForm { degree: k });
        }
        order[slot] = idx;
    }
    Ok(order)
}

/// Performs the column subtractions that bring `Ũ` to
/// `[[I, 0, 0], [P1, P2, I]]` and returns the `S2` parts of the `P2` columns.
/// Returns `None` when the `S1` block does not have the expected 0/1 shape.
fn structured_pivots(
    blocks: &Blocks,
    plus: &[HomogeneousPolynomial<BigRational>],
) -> Result<Option<Vec<Vec<BigRational>>>> {
    let mut s1_hit: Vec<Option<usize>> = Vec::with_capacity(plus.len());
    for p in plus {
        let mut hit = None;
        for (m, coeff) in p.terms() {
            if let Some(&row) = blocks.index.get(m) {
                if row < blocks.s1 {
                    if hit.is_some() || !coeff.is_one() {
                        return Ok(None);
                    }
                    hit = Some(row);
                }
            }
        }
        s1_hit.push(hit);
    }
    let mut pivot_for_row: Vec<Option<usize>> = vec![None; blocks.s1];
    for (c, hit) in s1_hit.iter().enumerate() {
        if let Some(r) = *hit {
            if pivot_for_row[r].is_none() {
                pivot_for_row[r] = Some(c);
            }
        }
    }
    if pivot_for_row.iter().any(Option::is_none) {
        return Ok(None);
    }
    let s2_part = |p: &HomogeneousPolynomial<BigRational>| -> Vec<BigRational> {
        let full = p.restricted_coeffs(&blocks.rows, &blocks.index);
        full[blocks.s1..].to_vec()
    };
    let pivot_cols: Vec<Vec<BigRational>> = pivot_for_row
        .iter()
        .map(|c| s2_part(&plus[c.expect("checked above")]))
        .collect();
    let mut out = Vec::with_capacity(plus.len() - blocks.s1);
    for (c, p) in plus.iter().enumerate() {
        match s1_hit[c] {
            Some(r) if pivot_for_row[r] == Some(c) => continue,
            Some(r) => {
                let base = &pivot_cols[r];
                out.push(s2_part(p).into_iter().zip(base).map(|(x, y)| x - y).collect());
            }
            None => out.push(s2_part(p)),
        }
    }
    Ok(Some(out))
}

/// Confidence threshold on gap ratios below which a warning is attached.
pub const MIN_GAP_RATIO: f64 = 10.0;

/// Approximate minimal generators.
///
/// `Ker Ũ` is taken from an SVD with its dimension imposed as `l - s1`; QRP of
/// the `π2`-projected kernel matrix ranks the columns, and the generators in
/// the first `r'` permuted positions are discarded.
pub fn minimal_basis_approx(
    c: &Complement,
    v: &GeneratorSet<Complex64>,
    tol: f64,
) -> Result<MinimizationReport<Complex64>> {
    let s = check_shapes(c, v)?;
    let nvars = c.nvars();
    let mut report = MinimizationReport::new(nvars);
    if s >= 1 {
        report.record(1, v.degree(1), &[], 0)?;
    }
    for k in 2..=s {
        let current = v.degree(k);
        let plus = plus_list(v.degree(k - 1), nvars);
        if current.is_empty() || plus.is_empty() {
            report.record(k, current, &[], 0)?;
            continue;
        }
        let b = blocks(c, k)?;
        let l = plus.len();
        let u = u_tilde(&b, &plus, current)?;
        let max_rank = u.rows().min(u.cols());
        let imposed = (b.s1 + b.s2 <= max_rank && b.s1 <= l).then_some(b.s1 + b.s2);
        if imposed.is_none() {
            report.warnings.push(format!(
                "degree {k}: cannot impose kernel dimension l - s1 = {l} - {}; using the spectral rank",
                b.s1
            ));
        }
        let (decision, kernel) = approx::svd_nullspace(&u, imposed, tol)?;
        let spectral = approx::spectral_rank(&decision.singular_values, tol);
        if spectral != decision.rank || decision.gap_ratio < MIN_GAP_RATIO {
            report.warnings.push(format!(
                "degree {k}: low-confidence kernel of Ũ (rank {}, spectral {spectral}, gap {:.3e})",
                decision.rank, decision.gap_ratio
            ));
        }
        if kernel.is_empty() {
            report.record(k, current, &[], 0)?;
            continue;
        }
        let projected: Vec<Vec<Complex64>> = kernel.into_iter().map(|w| w[l..].to_vec()).collect();
        let nmat = ApproxMatrix::from_rows(b.s2, projected)?;
        let f = approx::qrp_with_tol(&nmat, tol)?;
        let r = f.rank.rank;
        if r > 0 && r < f.rank.singular_values.len() && f.rank.gap_ratio < MIN_GAP_RATIO {
            report.warnings.push(format!(
                "degree {k}: low-confidence QRP rank {r} (gap {:.3e})",
                f.rank.gap_ratio
            ));
        }
        report.record(k, current, &f.perm[..r], r)?;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::border::border_basis_exact;
    use crate::eval::exact_points_from_integers;

    #[test]
    fn single_point_degree_two_is_redundant() {
        let pts = exact_points_from_integers(&[vec![1, 0, 0]]).unwrap();
        let run = border_basis_exact(&pts, 2).unwrap();
        let rep = minimal_basis(&run.complement, &run.generators).unwrap();
        assert_eq!(rep.counts(2), vec![2, 0]);
        assert_eq!(rep.removed[&2], vec![0, 1]);
        assert_eq!(rep.kernel_dims[&2], 2);
        let rep_b = minimal_basis_border(&run.complement, &run.generators).unwrap();
        assert_eq!(rep_b.kept, rep.kept);
    }

    #[test]
    fn empty_previous_degree_keeps_everything() {
        let pts = exact_points_from_integers(
            &(0..7).map(|t| vec![1, t, t * t, t * t * t]).collect::<Vec<_>>(),
        )
        .unwrap();
        let run = border_basis_exact(&pts, 2).unwrap();
        let rep = minimal_basis(&run.complement, &run.generators).unwrap();
        assert_eq!(rep.counts(2), vec![0, 3]);
        let rep_b = minimal_basis_border(&run.complement, &run.generators).unwrap();
        assert_eq!(rep_b.counts(2), vec![0, 3]);
        assert!(rep_b.kernel_dims.values().all(|&d| d == 0));
    }

    #[test]
    fn inconsistent_shapes_are_rejected() {
        let pts = exact_points_from_integers(&[vec![1, 0, 0]]).unwrap();
        let run = border_basis_exact(&pts, 2).unwrap();
        let mut v = run.generators.clone();
        v.insert(2, vec![run.generators.degree(2)[0].clone()]).unwrap();
        assert!(matches!(minimal_basis(&run.complement, &v), Err(Error::Inconsistent(_))));
    }

    #[test]
    fn border_variant_requires_border_form() {
        let pts = exact_points_from_integers(&[vec![1, 0, 0]]).unwrap();
        let run = border_basis_exact(&pts, 2).unwrap();
        let mut v = run.generators.clone();
        let doubled: Vec<_> = run
            .generators
            .degree(2)
            .iter()
            .map(|p| p.scale(&BigRational::from_integer(2.into())))
            .collect();
        v.insert(2, doubled).unwrap();
        assert!(matches!(
            minimal_basis_border(&run.complement, &v),
            Err(Error::NotBorderForm { degree: 2 })
        ));
        // the general algorithm accepts any basis
        assert_eq!(minimal_basis(&run.complement, &v).unwrap().counts(2), vec![2, 0]);
    }
}
