//! Generator degree bounds, point counts and predicted complement sizes.
//!
//! Nothing here inspects data: the caller declares what kind of curve it has
//! and the module returns the bound that holds under that declaration.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sampler::Parametrization;

/// Declared geometry of the curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CurveClass {
    /// Reduced, irreducible and nondegenerate (regularity bound).
    Generic,
    /// Canonical model of a non-hyperelliptic curve, `g >= 4`.
    CanonicalNonhyperelliptic,
    /// Embedded by a complete linear series of degree `d >= 2g + 1`.
    CompleteSeries,
    /// Bicanonical model, `g >= 3`.
    Bicanonical,
    /// Tricanonical model of a genus 2 curve.
    TricanonicalG2,
    /// Smooth hyperelliptic curve, complete series of degree `2g`.
    HyperellipticD2g,
    /// Smooth hyperelliptic curve, complete series of degree `2g - 1`.
    #[serde(rename = "hyperelliptic-d2g-1")]
    HyperellipticD2gMinus1,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveProfile {
    pub n: usize,
    pub d: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<usize>,
    #[serde(rename = "curve_class", default = "generic")]
    pub class: CurveClass,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub divisor_degree: Option<usize>,
    /// `dim I_1`, the number of independent hyperplanes containing the curve.
    #[serde(default)]
    pub degenerate_dim: usize,
}

fn generic() -> CurveClass {
    CurveClass::Generic
}

/// Result of [`degree_bound`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeBound {
    /// Largest degree a minimal generator can have.
    pub max_degree: usize,
    /// The exact generator degrees, when the theorem pins them down.
    pub degrees: Option<Vec<usize>>,
    pub rule: &'static str,
}

impl CurveProfile {
    pub fn generic(n: usize, d: usize) -> Self {
        Self {
            n,
            d,
            g: None,
            class: CurveClass::Generic,
            divisor_degree: None,
            degenerate_dim: 0,
        }
    }

    /// Profile for one of the named embeddings of a genus `g` curve, with
    /// `n` and `d` filled in from `g`.
    pub fn for_genus(class: CurveClass, g: usize) -> Result<Self> {
        let (n, d) = match class {
            CurveClass::CanonicalNonhyperelliptic => (g.checked_sub(1), Some(2 * g).and_then(|x| x.checked_sub(2))),
            CurveClass::Bicanonical => ((3 * g).checked_sub(4), (4 * g).checked_sub(4)),
            CurveClass::TricanonicalG2 => ((5 * g).checked_sub(6), (6 * g).checked_sub(6)),
            CurveClass::HyperellipticD2g => (Some(g), Some(2 * g)),
            CurveClass::HyperellipticD2gMinus1 => (g.checked_sub(1), (2 * g).checked_sub(1)),
            CurveClass::Generic | CurveClass::CompleteSeries => {
                return Err(Error::InvalidProfile(format!(
                    "{class:?} curves are not determined by the genus alone"
                )))
            }
        };
        let (Some(n), Some(d)) = (n, d) else {
            return Err(Error::InvalidProfile(format!("genus {g} is too small for {class:?}")));
        };
        let p = Self {
            n,
            d,
            g: Some(g),
            class,
            divisor_degree: Some(d),
            degenerate_dim: 0,
        };
        p.validate()?;
        Ok(p)
    }

    /// `n - dim I_1`: the dimension of the linear span of the curve.
    pub fn effective_n(&self) -> usize {
        self.n.saturating_sub(self.degenerate_dim)
    }

    fn genus(&self) -> Result<usize> {
        self.g
            .ok_or_else(|| Error::InvalidProfile(format!("{:?} requires the genus", self.class)))
    }

    /// Degree of the embedding divisor: declared, or implied by the class.
    pub fn embedding_degree(&self) -> Option<usize> {
        if self.divisor_degree.is_some() {
            return self.divisor_degree;
        }
        match self.class {
            CurveClass::Generic => None,
            _ => Some(self.d),
        }
    }

    /// Checks the class-specific constraints.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidProfile(msg));
        if self.d < 1 {
            return bad("curve degree must be at least 1".into());
        }
        if self.n < 2 {
            return bad(format!("ambient dimension {} is below 2", self.n));
        }
        if self.degenerate_dim > self.n - 1 {
            return bad(format!(
                "dim I_1 = {} leaves no room for a curve in P^{}",
                self.degenerate_dim, self.n
            ));
        }
        let n = self.effective_n();
        if let Some(dd) = self.divisor_degree {
            if self.class != CurveClass::Generic && dd != self.d {
                return bad(format!("divisor degree {dd} differs from the curve degree {}", self.d));
            }
        }
        match self.class {
            CurveClass::Generic => {
                if self.d < n {
                    return bad(format!("a nondegenerate curve in P^{n} has degree at least {n}"));
                }
            }
            CurveClass::CanonicalNonhyperelliptic => {
                let g = self.genus()?;
                if g < 4 {
                    return bad(format!("canonical bound needs g >= 4, got g = {g}"));
                }
                if n != g - 1 || self.d != 2 * g - 2 {
                    return bad(format!(
                        "canonical curve of genus {g} lies in P^{} with degree {}",
                        g - 1,
                        2 * g - 2
                    ));
                }
            }
            CurveClass::CompleteSeries => {
                let g = self.genus()?;
                if self.d < 2 * g + 1 {
                    return bad(format!("complete series bound needs d >= 2g + 1 = {}", 2 * g + 1));
                }
                if n != self.d - g {
                    return bad(format!(
                        "a complete series of degree {} on genus {g} embeds in P^{}",
                        self.d,
                        self.d - g
                    ));
                }
            }
            CurveClass::Bicanonical => {
                let g = self.genus()?;
                if g < 3 {
                    return bad(format!("bicanonical bound needs g >= 3, got g = {g}"));
                }
                if n != 3 * g - 4 || self.d != 4 * g - 4 {
                    return bad(format!(
                        "bicanonical curve of genus {g} lies in P^{} with degree {}",
                        3 * g - 4,
                        4 * g - 4
                    ));
                }
            }
            CurveClass::TricanonicalG2 => {
                let g = self.genus()?;
                if g != 2 || n != 4 || self.d != 6 {
                    return bad("tricanonical bound covers genus 2 curves of degree 6 in P^4".into());
                }
            }
            CurveClass::HyperellipticD2g | CurveClass::HyperellipticD2gMinus1 => {
                let g = self.genus()?;
                if g < 2 {
                    return bad(format!("hyperelliptic curves have g >= 2, got g = {g}"));
                }
                let d = if self.class == CurveClass::HyperellipticD2g { 2 * g } else { 2 * g - 1 };
                if self.d != d || n != d - g {
                    return bad(format!(
                        "this hyperelliptic bound covers degree {d} curves in P^{}",
                        d - g
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Degree bound for minimal generators of the curve's ideal.
///
/// For a degenerate curve every formula is evaluated with `n - dim I_1` in
/// place of `n`; the linear generators themselves come on top.
pub fn degree_bound(p: &CurveProfile) -> Result<DegreeBound> {
    p.validate()?;
    let n = p.effective_n();
    let list = |degrees: Vec<usize>, rule| DegreeBound {
        max_degree: *degrees.last().expect("nonempty"),
        degrees: Some(degrees),
        rule,
    };
    let bound = match p.class {
        CurveClass::Generic => match p.g {
            Some(g) if g > 1 => DegreeBound {
                max_degree: p.d - n + 1,
                degrees: None,
                rule: "regularity d - n + 1 (g > 1)",
            },
            _ => DegreeBound {
                max_degree: p.d - n + 2,
                degrees: None,
                rule: "regularity d - n + 2",
            },
        },
        CurveClass::CanonicalNonhyperelliptic => list(vec![2, 3], "canonical, non-hyperelliptic"),
        CurveClass::CompleteSeries => {
            let g = p.genus()?;
            if p.d >= 2 * g + 2 {
                list(vec![2], "complete series, d >= 2g + 2")
            } else {
                list(vec![2, 3], "complete series, d = 2g + 1")
            }
        }
        CurveClass::Bicanonical => list(vec![2], "bicanonical, g >= 3"),
        CurveClass::TricanonicalG2 => list(vec![2], "tricanonical, g = 2"),
        CurveClass::HyperellipticD2g => list(vec![2, 3, 4], "hyperelliptic, d = 2g"),
        CurveClass::HyperellipticD2gMinus1 => list(vec![2, 3, 4, 5], "hyperelliptic, d = 2g - 1"),
    };
    Ok(bound)
}

/// Least `h` with `h > m d`.
pub fn required_points(m: usize, d: usize) -> Result<usize> {
    if m == 0 || d == 0 {
        return Err(Error::Hypothesis("degree bound and curve degree must be positive".into()));
    }
    m.checked_mul(d)
        .and_then(|x| x.checked_add(1))
        .ok_or_else(|| Error::Hypothesis(format!("{m} * {d} + 1 overflows")))
}

/// `|N_k| = dim P_k - dim I_k = k deg D - g + 1`.
///
/// Valid when `k deg D >= 2g - 1` and the restriction map in degree `k` is
/// surjective; the second condition is the caller's responsibility.
pub fn predicted_complement_size(k: usize, divisor_degree: usize, g: usize) -> Result<usize> {
    let kd = k
        .checked_mul(divisor_degree)
        .ok_or_else(|| Error::Hypothesis("k deg D overflows".into()))?;
    if kd + 1 < 2 * g {
        return Err(Error::Hypothesis(format!(
            "k deg D = {kd} is below 2g - 1 = {}",
            (2 * g).saturating_sub(1)
        )));
    }
    Ok(kd + 1 - g)
}

/// Predicted `|N_k|` for `k = 1..=s`, as an imposed rank schedule. Degrees
/// where the hypothesis fails are left out.
pub fn predicted_ranks(p: &CurveProfile, s: usize) -> Result<Vec<(usize, usize)>> {
    p.validate()?;
    let (Some(dd), Some(g)) = (p.embedding_degree(), p.g) else {
        return Err(Error::Hypothesis(
            "rank prediction needs the genus and the embedding degree".into(),
        ));
    };
    Ok((1..=s)
        .filter_map(|k| predicted_complement_size(k, dd, g).ok().map(|r| (k, r)))
        .collect())
}

/// The parametrization degree bounds the degree of its image curve.
pub fn curve_degree_bound(p: &Parametrization) -> usize {
    p.degree()
}
