//! Independent reference computations. Nothing here calls the crate's linear
//! algebra: ranks are taken modulo a large prime and subspace angles come from
//! a separate Gram-Schmidt.

use curve_ideal::{BigRational, Complex64};
use num_traits::ToPrimitive;

pub const PRIME: u128 = (1 << 61) - 1;

fn reduce(x: i128) -> u128 {
    x.rem_euclid(PRIME as i128) as u128
}

fn inv(a: u128) -> u128 {
    let (mut r, mut b, mut e) = (1u128, a % PRIME, PRIME - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % PRIME;
        }
        b = b * b % PRIME;
        e >>= 1;
    }
    r
}

pub fn rational_mod(x: &BigRational) -> u128 {
    let p = num_bigint::BigInt::from(PRIME);
    let n = (x.numer() % &p + &p) % &p;
    let d = (x.denom() % &p + &p) % &p;
    n.to_u128().unwrap() * inv(d.to_u128().unwrap()) % PRIME
}

/// Rank over `Z/p`; equals the rational rank unless `p` divides a minor.
pub fn rank_mod_p(mut m: Vec<Vec<u128>>) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, piv);
        let iv = inv(m[r][c]);
        for x in m[r].iter_mut() {
            *x = *x * iv % PRIME;
        }
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                let pivot_row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    *x = (*x + PRIME - f * y % PRIME) % PRIME;
                }
            }
        }
        r += 1;
    }
    r
}

/// Exponent vectors of degree `k` in `nvars` variables.
pub fn exponents(nvars: usize, k: u32) -> Vec<Vec<u32>> {
    if nvars == 1 {
        return vec![vec![k]];
    }
    (0..=k)
        .flat_map(|e| {
            exponents(nvars - 1, k - e).into_iter().map(move |mut rest| {
                rest.insert(0, e);
                rest
            })
        })
        .collect()
}

/// `dim P_k / I(R)_k` for integer points.
pub fn hilbert_function(points: &[Vec<i64>], k: u32) -> usize {
    let nvars = points[0].len();
    let monos = exponents(nvars, k);
    let rows = points
        .iter()
        .map(|p| {
            monos
                .iter()
                .map(|e| {
                    e.iter().zip(p).fold(1u128, |acc, (&ei, &x)| {
                        (0..ei).fold(acc, |a, _| a * reduce(x as i128) % PRIME)
                    })
                })
                .collect()
        })
        .collect();
    rank_mod_p(rows)
}

/// Rank of a set of coefficient vectors with rational entries.
pub fn rational_rank(rows: &[Vec<BigRational>]) -> usize {
    rank_mod_p(rows.iter().map(|r| r.iter().map(rational_mod).collect()).collect())
}

/// Orthonormal basis of the span, twice-iterated Gram-Schmidt.
pub fn orthonormalize(vectors: &[Vec<Complex64>]) -> Vec<Vec<Complex64>> {
    let mut basis: Vec<Vec<Complex64>> = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        for _ in 0..2 {
            for b in &basis {
                let c: Complex64 = b.iter().zip(&w).map(|(x, y)| x.conj() * y).sum();
                for (wi, bi) in w.iter_mut().zip(b) {
                    *wi -= c * bi;
                }
            }
        }
        let norm = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let scale = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-10 * scale.max(1e-300) {
            basis.push(w.into_iter().map(|z| z / norm).collect());
        }
    }
    basis
}

/// Upper bound on the sine of the largest principal angle between two
/// subspaces of equal dimension: Frobenius norm of the part of `b` outside
/// `span(a)`, both given by orthonormal bases.
pub fn subspace_sine(a: &[Vec<Complex64>], b: &[Vec<Complex64>]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let mut total = 0.0;
    for v in b {
        let mut w = v.clone();
        for u in a {
            let c: Complex64 = u.iter().zip(v).map(|(x, y)| x.conj() * y).sum();
            for (wi, ui) in w.iter_mut().zip(u) {
                *wi -= c * ui;
            }
        }
        total += w.iter().map(|z| z.norm_sqr()).sum::<f64>();
    }
    total.sqrt()
}
