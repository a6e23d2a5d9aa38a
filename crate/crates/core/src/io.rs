//! JSON file formats for points, parametrizations, generators and profiles.
//!
//! Rationals travel as strings (`"p/q"`, or `"p"` for integers) and complex
//! numbers as `[re, im]` pairs, so neither side goes through a lossy decimal
//! conversion.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_complex::Complex64;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::{GeneratorKind, GeneratorSet, HomogeneousPolynomial, Monomial};
use crate::bounds::CurveProfile;
use crate::error::{Error, Result};
use crate::eval::{Point, PointSet};
use crate::sampler::{BivariatePolynomial, Parametrization};
use crate::scalar::{FieldKind, Scalar};

/// Scalars with a JSON encoding.
pub trait JsonScalar: Scalar {
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> std::result::Result<Self, String>;
}

impl JsonScalar for BigRational {
    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }

    fn from_json(v: &Value) -> std::result::Result<Self, String> {
        match v {
            Value::String(s) => parse_rational(s),
            Value::Number(n) => n
                .as_i64()
                .map(|i| BigRational::from_integer(i.into()))
                .ok_or_else(|| format!("{n} is not an integer; write rationals as \"p/q\"")),
            other => Err(format!("expected a rational, found {other}")),
        }
    }
}

impl JsonScalar for Complex64 {
    fn to_json(&self) -> Value {
        serde_json::json!([self.re, self.im])
    }

    fn from_json(v: &Value) -> std::result::Result<Self, String> {
        let pair = v
            .as_array()
            .filter(|a| a.len() == 2)
            .ok_or_else(|| format!("expected [re, im], found {v}"))?;
        let part = |x: &Value| x.as_f64().ok_or_else(|| format!("{x} is not a number"));
        Ok(Complex64::new(part(&pair[0])?, part(&pair[1])?))
    }
}

pub fn parse_rational(s: &str) -> std::result::Result<BigRational, String> {
    let t = s.trim();
    if let Some((_, den)) = t.split_once('/') {
        if den.trim().trim_start_matches(['+', '-']).chars().all(|c| c == '0') {
            return Err(format!("\"{s}\" has a zero denominator"));
        }
    }
    BigRational::from_str(t).map_err(|_| format!("\"{s}\" is not an integer or p/q"))
}

#[derive(Serialize, Deserialize)]
struct PointsFile {
    n: usize,
    field: FieldKind,
    points: Vec<Vec<Value>>,
}

/// A point set of either field, as read from a file.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyPointSet {
    Rational(PointSet<BigRational>),
    Complex(PointSet<Complex64>),
}

impl AnyPointSet {
    pub fn n(&self) -> usize {
        match self {
            Self::Rational(p) => p.n(),
            Self::Complex(p) => p.n(),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Self::Rational(p) => p.len(),
            Self::Complex(p) => p.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn to_json(&self) -> String {
        match self {
            Self::Rational(p) => points_to_json(p),
            Self::Complex(p) => points_to_json(p),
        }
    }
}

pub fn points_to_json<T: JsonScalar>(points: &PointSet<T>) -> String {
    let file = PointsFile {
        n: points.n(),
        field: T::FIELD,
        points: points
            .points()
            .iter()
            .map(|p| p.coords().iter().map(JsonScalar::to_json).collect())
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("points serialize")
}

fn parse_points<T: JsonScalar>(rows: &[Vec<Value>]) -> Result<Vec<Point<T>>> {
    rows.iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, v)| T::from_json(v).map_err(|e| Error::Parse(format!("point {i}, coordinate {j}: {e}"))))
                .collect::<Result<Vec<T>>>()
                .map(Point::new)
        })
        .collect()
}

pub fn points_from_json(text: &str) -> Result<AnyPointSet> {
    let file: PointsFile = serde_json::from_str(text).map_err(|e| Error::Parse(format!("points file: {e}")))?;
    Ok(match file.field {
        FieldKind::Rational => AnyPointSet::Rational(PointSet::exact(file.n, parse_points(&file.points)?)?),
        FieldKind::Complex => AnyPointSet::Complex(PointSet::approx(file.n, parse_points(&file.points)?)?),
    })
}

#[derive(Serialize, Deserialize)]
struct ParamTerm {
    coeff: Value,
    e_s: u32,
    e_t: u32,
}

#[derive(Serialize, Deserialize)]
struct ParamFile {
    n: usize,
    degree: usize,
    components: Vec<Vec<ParamTerm>>,
}

pub fn parametrization_to_json(p: &Parametrization) -> String {
    let file = ParamFile {
        n: p.n(),
        degree: p.degree(),
        components: p
            .components()
            .iter()
            .map(|c| {
                c.terms()
                    .map(|(coeff, e_s, e_t)| ParamTerm {
                        coeff: coeff.to_json(),
                        e_s,
                        e_t,
                    })
                    .collect()
            })
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("parametrization serializes")
}

pub fn parametrization_from_json(text: &str) -> Result<Parametrization> {
    let file: ParamFile =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("parametrization file: {e}")))?;
    let mut components = Vec::with_capacity(file.components.len());
    for (i, terms) in file.components.iter().enumerate() {
        let mut parsed = Vec::with_capacity(terms.len());
        for (j, t) in terms.iter().enumerate() {
            let c = BigRational::from_json(&t.coeff)
                .map_err(|e| Error::Parse(format!("component {i}, term {j}: {e}")))?;
            if (t.e_s + t.e_t) as usize != file.degree {
                return Err(Error::Parse(format!(
                    "component {i}, term {j}: s^{} t^{} is not of degree {}",
                    t.e_s, t.e_t, file.degree
                )));
            }
            parsed.push((c, t.e_s, t.e_t));
        }
        components.push(BivariatePolynomial::from_terms(file.degree, parsed)?);
    }
    Parametrization::new(file.n, file.degree, components)
}

#[derive(Serialize, Deserialize)]
struct TermFile {
    exponents: Vec<u32>,
    coeff: Value,
}

#[derive(Serialize, Deserialize)]
struct PolyFile {
    terms: Vec<TermFile>,
}

#[derive(Serialize, Deserialize)]
struct GeneratorsFile {
    n: usize,
    degree_bound: usize,
    kind: GeneratorKind,
    by_degree: BTreeMap<usize, Vec<PolyFile>>,
    #[serde(default)]
    diagnostics: Value,
}

#[derive(Clone, Debug)]
pub enum AnyGenerators {
    Rational(GeneratorSet<BigRational>),
    Complex(GeneratorSet<Complex64>),
}

/// Contents of a generators file.
#[derive(Clone, Debug)]
pub struct GeneratorsDocument {
    pub degree_bound: usize,
    pub generators: AnyGenerators,
    pub diagnostics: Value,
}

pub fn generators_to_json<T: JsonScalar>(g: &GeneratorSet<T>, degree_bound: usize, diagnostics: Value) -> String {
    let by_degree = g
        .by_degree()
        .iter()
        .map(|(&k, polys)| {
            let polys = polys
                .iter()
                .map(|p| PolyFile {
                    terms: p
                        .terms()
                        .map(|(m, c)| TermFile {
                            exponents: m.exponents().to_vec(),
                            coeff: c.to_json(),
                        })
                        .collect(),
                })
                .collect();
            (k, polys)
        })
        .collect();
    let file = GeneratorsFile {
        n: g.nvars() - 1,
        degree_bound,
        kind: g.kind(),
        by_degree,
        diagnostics,
    };
    serde_json::to_string_pretty(&file).expect("generators serialize")
}

fn parse_generators<T: JsonScalar>(file: &GeneratorsFile) -> Result<GeneratorSet<T>> {
    let nvars = file.n + 1;
    let mut g = GeneratorSet::new(nvars, file.kind);
    for (&k, polys) in &file.by_degree {
        let mut parsed = Vec::with_capacity(polys.len());
        for (i, p) in polys.iter().enumerate() {
            let mut terms = Vec::with_capacity(p.terms.len());
            for (j, t) in p.terms.iter().enumerate() {
                let at = || format!("degree {k}, generator {i}, term {j}");
                if t.exponents.len() != nvars || t.exponents.iter().sum::<u32>() as usize != k {
                    return Err(Error::Parse(format!(
                        "{}: exponents {:?} do not form a degree {k} monomial in {nvars} variables",
                        at(),
                        t.exponents
                    )));
                }
                let c = T::from_json(&t.coeff).map_err(|e| Error::Parse(format!("{}: {e}", at())))?;
                terms.push((Monomial::new(t.exponents.clone()), c));
            }
            parsed.push(HomogeneousPolynomial::from_terms(nvars, k, terms)?);
        }
        g.insert(k, parsed)?;
    }
    Ok(g)
}

pub fn generators_from_json(text: &str) -> Result<GeneratorsDocument> {
    let file: GeneratorsFile =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("generators file: {e}")))?;
    let complex = file
        .by_degree
        .values()
        .flatten()
        .flat_map(|p| &p.terms)
        .next()
        .is_some_and(|t| t.coeff.is_array());
    let generators = if complex {
        AnyGenerators::Complex(parse_generators(&file)?)
    } else {
        AnyGenerators::Rational(parse_generators(&file)?)
    };
    Ok(GeneratorsDocument {
        degree_bound: file.degree_bound,
        generators,
        diagnostics: file.diagnostics,
    })
}

pub fn profile_from_json(text: &str) -> Result<CurveProfile> {
    let p: CurveProfile = serde_json::from_str(text).map_err(|e| Error::Parse(format!("profile file: {e}")))?;
    p.validate()?;
    Ok(p)
}
