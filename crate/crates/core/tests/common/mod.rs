//! Fixtures shared by the integration tests.
#![allow(dead_code)]

pub mod oracle;

use curve_ideal::io::parse_rational;
use curve_ideal::{
    BigRational, GeneratorKind, GeneratorSet, HomogeneousPolynomial, Monomial, Parametrization,
};

/// Degree 6 rational space curve with coefficient rows by increasing power of
/// `t`, variables `x, y, z, w`.
pub fn sextic() -> Parametrization {
    Parametrization::from_integer_rows(&[
        &[0, 0, 3, -9, -3, 12, 6],
        &[-3, 18, -27, -12, 33, 6, -6],
        &[1, -6, 13, -16, 9, 14, -6],
        &[0, 0, -2, 8, -14, 20, -6],
    ])
    .unwrap()
}

pub fn twisted_cubic() -> Parametrization {
    Parametrization::rational_normal_curve(3)
}

pub fn q(text: &str) -> BigRational {
    parse_rational(text).unwrap()
}

/// Builds a form from `(coefficient, [e_x, e_y, e_z, e_w])` pairs.
pub fn form(terms: &[(&str, [u32; 4])]) -> HomogeneousPolynomial<BigRational> {
    let degree = terms[0].1.iter().sum::<u32>() as usize;
    HomogeneousPolynomial::from_terms(
        4,
        degree,
        terms.iter().map(|(c, e)| (Monomial::new(e.to_vec()), q(c))),
    )
    .unwrap()
}

// exponent vectors of the cubic monomials that occur below
const Z2X: [u32; 4] = [1, 0, 2, 0];
const Z2Y: [u32; 4] = [0, 1, 2, 0];
const ZY2: [u32; 4] = [0, 2, 1, 0];
const Y3: [u32; 4] = [0, 3, 0, 0];
const ZYX: [u32; 4] = [1, 1, 1, 0];
const Y2X: [u32; 4] = [1, 2, 0, 0];
const ZX2: [u32; 4] = [2, 0, 1, 0];
const YX2: [u32; 4] = [2, 1, 0, 0];
const ZYW: [u32; 4] = [0, 1, 1, 1];
const ZXW: [u32; 4] = [1, 0, 1, 1];
const X2W: [u32; 4] = [2, 0, 0, 1];
const YXW: [u32; 4] = [1, 1, 0, 1];
const Y2W: [u32; 4] = [0, 2, 0, 1];
const Z2W: [u32; 4] = [0, 0, 2, 1];
const Z3: [u32; 4] = [0, 0, 3, 0];
const ZW2: [u32; 4] = [0, 0, 1, 2];
const YW2: [u32; 4] = [0, 1, 0, 2];
const XW2: [u32; 4] = [1, 0, 0, 2];

/// Border monomials of the sextic's cubic generators, in the order of
/// [`sextic_cubics`].
pub const SEXTIC_LEADS: [[u32; 4]; 4] = [Z2X, YXW, Y2W, Z2W];

/// The four cubics cutting out the sextic, each normalized to coefficient 1
/// on its border monomial.
pub fn sextic_cubics() -> Vec<HomogeneousPolynomial<BigRational>> {
    vec![
        form(&[
            ("1", Z2X), ("1/15", Z2Y), ("49/720", ZY2), ("11/720", Y3), ("-13/360", ZYX),
            ("-11/120", Y2X), ("-11/20", ZX2), ("11/36", YX2), ("-17/60", ZYW), ("-16/15", ZXW),
            ("11/60", X2W),
        ]),
        form(&[
            ("1", YXW), ("1/5", Z2Y), ("17/120", ZY2), ("1/40", Y3), ("-29/60", ZYX),
            ("-3/20", Y2X), ("-9/10", ZX2), ("1/2", YX2), ("-1/10", ZYW), ("-1/5", ZXW),
            ("3/10", X2W),
        ]),
        form(&[
            ("1", Y2W), ("-4/5", Z2Y), ("-19/60", ZY2), ("-1/60", Y3), ("-17/30", ZYX),
            ("1/10", Y2X), ("3/5", ZX2), ("-1/3", YX2), ("2/5", ZYW), ("4/5", ZXW),
            ("-1/5", X2W),
        ]),
        form(&[
            ("1", Z2W), ("-2/3", Z3), ("-22/135", Z2Y), ("49/810", ZY2), ("11/810", Y3),
            ("-13/405", ZYX), ("-11/135", Y2X), ("-22/45", ZX2), ("22/81", YX2), ("131/135", ZYW),
            ("52/135", ZXW), ("22/135", X2W), ("-1/6", ZW2), ("-17/18", YW2), ("-2/9", XW2),
        ]),
    ]
}

pub fn cubic_set() -> GeneratorSet<BigRational> {
    let mut g = GeneratorSet::new(4, GeneratorKind::Minimal);
    g.insert(3, sextic_cubics()).unwrap();
    g
}

/// The three quadrics of the twisted cubic.
pub fn twisted_cubic_quadrics() -> Vec<HomogeneousPolynomial<BigRational>> {
    vec![
        form(&[("1", [1, 0, 1, 0]), ("-1", [0, 2, 0, 0])]),
        form(&[("1", [0, 1, 0, 1]), ("-1", [0, 0, 2, 0])]),
        form(&[("1", [1, 0, 0, 1]), ("-1", [0, 1, 1, 0])]),
    ]
}
