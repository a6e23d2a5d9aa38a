//! Monomials, graded monomial sets, homogeneous polynomials and the graded
//! families (complements, generator sets) built from them.
//!
//! Every monomial set is kept in one canonical order: graded lexicographic
//! with `x0 > x1 > ... > xn`, largest first. The order only fixes matrix
//! column indexing and output presentation; nothing downstream depends on it
//! beyond a permutation.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Upper bound on the size of a fully enumerated monomial set.
pub const MAX_ENUMERATION: usize = 1 << 24;

/// A power product `x0^e0 * ... * xn^en`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exponents: Vec<u32>,
    degree: usize,
}

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        let degree = exponents.iter().map(|&e| e as usize).sum();
        Self { exponents, degree }
    }

    /// The constant monomial in `nvars` variables.
    pub fn one(nvars: usize) -> Self {
        Self::new(vec![0; nvars])
    }

    pub fn variable(nvars: usize, j: usize) -> Self {
        let mut e = vec![0; nvars];
        e[j] = 1;
        Self::new(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.exponents.len()
    }

    /// `x_j * self`.
    pub fn times_var(&self, j: usize) -> Self {
        let mut exponents = self.exponents.clone();
        exponents[j] += 1;
        Self {
            exponents,
            degree: self.degree + 1,
        }
    }

    /// Value at a point, using a per-coordinate power table
    /// (`powers[i][e] = p_i^e`).
    pub fn eval_with_powers<T: Scalar>(&self, powers: &[Vec<T>]) -> T {
        let mut acc = T::one();
        for (i, &e) in self.exponents.iter().enumerate() {
            if e > 0 {
                acc = acc * powers[i][e as usize].clone();
            }
        }
        acc
    }

    pub fn eval<T: Scalar>(&self, point: &[T]) -> T {
        let mut acc = T::one();
        for (x, &e) in point.iter().zip(&self.exponents) {
            for _ in 0..e {
                acc = acc * x.clone();
            }
        }
        acc
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| other.exponents.cmp(&self.exponents))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree == 0 {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exponents.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{i}")?;
            } else {
                write!(f, "x{i}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Binomial coefficient, `None` on overflow.
pub fn binomial(n: usize, k: usize) -> Option<usize> {
    let k = k.min(n.checked_sub(k)?);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc.checked_mul(n - i)? / (i + 1);
    }
    Some(acc)
}

/// Duplicate-free monomials of a single degree, in canonical order, with an
/// O(1) position lookup.
#[derive(Clone)]
pub struct MonomialSet {
    nvars: usize,
    degree: usize,
    members: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl MonomialSet {
    /// Collects monomials, sorting into canonical order and dropping
    /// duplicates. Every monomial must have `nvars` variables and degree
    /// `degree`.
    pub fn from_monomials(
        nvars: usize,
        degree: usize,
        monomials: impl IntoIterator<Item = Monomial>,
    ) -> Result<Self> {
        let mut members: Vec<Monomial> = monomials.into_iter().collect();
        for m in &members {
            if m.nvars() != nvars || m.degree() != degree {
                return Err(Error::DimensionMismatch(format!(
                    "monomial {m} does not have {nvars} variables and degree {degree}"
                )));
            }
        }
        members.sort();
        members.dedup();
        Ok(Self::from_sorted(nvars, degree, members))
    }

    fn from_sorted(nvars: usize, degree: usize, members: Vec<Monomial>) -> Self {
        let index = members
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        Self {
            nvars,
            degree,
            members,
            index,
        }
    }

    pub fn empty(nvars: usize, degree: usize) -> Self {
        Self::from_sorted(nvars, degree, Vec::new())
    }

    /// `{1}`.
    pub fn unit(nvars: usize) -> Self {
        Self::from_sorted(nvars, 0, vec![Monomial::one(nvars)])
    }

    /// All `C(n+k, k)` monomials of degree `k` in `n + 1` variables.
    pub fn enumerate(n: usize, k: usize) -> Result<Self> {
        let nvars = n + 1;
        let size = binomial(n + k, k)
            .filter(|&s| s <= MAX_ENUMERATION)
            .ok_or(Error::Capacity { nvars, degree: k })?;
        let mut members = Vec::with_capacity(size);
        let mut current = vec![0u32; nvars];
        fill_descending(&mut current, 0, k as u32, &mut members);
        Ok(Self::from_sorted(nvars, k, members))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Monomial] {
        &self.members
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Monomial> {
        self.members.iter()
    }

    pub fn get(&self, i: usize) -> &Monomial {
        &self.members[i]
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.index.contains_key(m)
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// `S+ = { x_j m : 0 <= j <= n, m in S }`.
    pub fn expand_plus(&self) -> Self {
        let mut out: Vec<Monomial> = Vec::with_capacity(self.len() * self.nvars);
        for m in &self.members {
            for j in 0..self.nvars {
                out.push(m.times_var(j));
            }
        }
        out.sort();
        out.dedup();
        Self::from_sorted(self.nvars, self.degree + 1, out)
    }

    /// Members of `self` not in `other`.
    pub fn difference(&self, other: &Self) -> Self {
        let members = self
            .members
            .iter()
            .filter(|m| !other.contains(m))
            .cloned()
            .collect();
        Self::from_sorted(self.nvars, self.degree, members)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.members.iter().all(|m| other.contains(m))
    }
}

fn fill_descending(current: &mut Vec<u32>, var: usize, remaining: u32, out: &mut Vec<Monomial>) {
    if var + 1 == current.len() {
        current[var] = remaining;
        out.push(Monomial::new(current.clone()));
        return;
    }
    for e in (0..=remaining).rev() {
        current[var] = e;
        fill_descending(current, var + 1, remaining - e, out);
    }
    current[var] = 0;
}

impl PartialEq for MonomialSet {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.degree == other.degree && self.members == other.members
    }
}

impl Eq for MonomialSet {}

impl fmt::Debug for MonomialSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.members.iter()).finish()
    }
}

impl<'a> IntoIterator for &'a MonomialSet {
    type Item = &'a Monomial;
    type IntoIter = std::slice::Iter<'a, Monomial>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

/// A homogeneous polynomial stored as a sparse term map. Zero coefficients
/// are never stored.
#[derive(Clone, PartialEq)]
pub struct HomogeneousPolynomial<T> {
    nvars: usize,
    degree: usize,
    terms: BTreeMap<Monomial, T>,
}

impl<T: Scalar> HomogeneousPolynomial<T> {
    pub fn zero(nvars: usize, degree: usize) -> Self {
        Self {
            nvars,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(
        nvars: usize,
        degree: usize,
        terms: impl IntoIterator<Item = (Monomial, T)>,
    ) -> Result<Self> {
        let mut p = Self::zero(nvars, degree);
        for (m, c) in terms {
            if m.nvars() != nvars || m.degree() != degree {
                return Err(Error::DimensionMismatch(format!(
                    "term {m} does not fit a degree-{degree} polynomial in {nvars} variables"
                )));
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    /// Polynomial with coefficient `coeffs[i]` on `support[i]`.
    pub fn from_coeffs(support: &MonomialSet, coeffs: &[T]) -> Result<Self> {
        if coeffs.len() != support.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients for {} monomials",
                coeffs.len(),
                support.len()
            )));
        }
        let terms = support
            .iter()
            .zip(coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        Ok(Self {
            nvars: support.nvars(),
            degree: support.degree(),
            terms,
        })
    }

    fn add_term(&mut self, m: Monomial, c: T) {
        let sum = match self.terms.remove(&m) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(m, sum);
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &T)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> T {
        self.terms.get(m).cloned().unwrap_or_else(T::zero)
    }

    /// Coefficient vector aligned to `support`; fails if a term lies outside.
    pub fn coeffs(&self, support: &MonomialSet) -> Result<Vec<T>> {
        let mut out = vec![T::zero(); support.len()];
        for (m, c) in &self.terms {
            let i = support
                .position(m)
                .ok_or_else(|| Error::SupportNotContained {
                    monomial: m.to_string(),
                })?;
            out[i] = c.clone();
        }
        Ok(out)
    }

    /// Coefficients on `rows`, silently ignoring terms outside it.
    pub fn restricted_coeffs(&self, rows: &[Monomial], index: &HashMap<Monomial, usize>) -> Vec<T> {
        let mut out = vec![T::zero(); rows.len()];
        for (m, c) in &self.terms {
            if let Some(&i) = index.get(m) {
                out[i] = c.clone();
            }
        }
        out
    }

    pub fn mul_var(&self, j: usize) -> Self {
        Self {
            nvars: self.nvars,
            degree: self.degree + 1,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.times_var(j), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, a: &T) -> Self {
        if a.is_zero() {
            return Self::zero(self.nvars, self.degree);
        }
        Self {
            nvars: self.nvars,
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.clone() * a.clone()))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.nvars != other.nvars || self.degree != other.degree {
            return Err(Error::DimensionMismatch(
                "adding polynomials of different shape".into(),
            ));
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn evaluate(&self, point: &[T]) -> T {
        self.terms
            .iter()
            .fold(T::zero(), |acc, (m, c)| acc + c.clone() * m.eval(point))
    }

    /// Sum of absolute coefficient values.
    pub fn l1_norm(&self) -> f64 {
        self.terms.values().map(Scalar::modulus).sum()
    }

    /// Largest absolute coefficient value.
    pub fn max_coeff(&self) -> f64 {
        self.terms.values().map(Scalar::modulus).fold(0.0, f64::max)
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for HomogeneousPolynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*{m}")?;
        }
        Ok(())
    }
}

impl<T: fmt::Debug> fmt::Debug for HomogeneousPolynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

/// A complement `{N_0, ..., N_s}` of a homogeneous ideal up to degree `s`,
/// connected to 1: `N_0 = {1}` and `N_k ⊆ N_{k-1}+`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complement {
    levels: Vec<MonomialSet>,
}

impl Complement {
    /// The degree-0 complement `{ {1} }`.
    pub fn unit(nvars: usize) -> Self {
        Self {
            levels: vec![MonomialSet::unit(nvars)],
        }
    }

    pub fn new(levels: Vec<MonomialSet>) -> Result<Self> {
        let first = levels
            .first()
            .ok_or_else(|| Error::InvalidComplement("no levels".into()))?;
        if first.degree() != 0 || first.len() != 1 {
            return Err(Error::InvalidComplement("N_0 must be {1}".into()));
        }
        let c = Self { levels };
        for k in 1..c.levels.len() {
            c.check_level(k)?;
        }
        Ok(c)
    }

    fn check_level(&self, k: usize) -> Result<()> {
        let level = &self.levels[k];
        let prev = &self.levels[k - 1];
        if level.degree() != k || level.nvars() != prev.nvars() {
            return Err(Error::InvalidComplement(format!(
                "level {k} has degree {} in {} variables",
                level.degree(),
                level.nvars()
            )));
        }
        if !level.is_subset(&prev.expand_plus()) {
            return Err(Error::InvalidComplement(format!(
                "N_{k} is not contained in N_{}+",
                k - 1
            )));
        }
        Ok(())
    }

    /// Appends `N_k` for the next degree, checking connectedness.
    pub fn push(&mut self, level: MonomialSet) -> Result<()> {
        self.levels.push(level);
        let k = self.levels.len() - 1;
        if let Err(e) = self.check_level(k) {
            self.levels.pop();
            return Err(e);
        }
        Ok(())
    }

    pub fn nvars(&self) -> usize {
        self.levels[0].nvars()
    }

    /// Highest degree `s` covered.
    pub fn max_degree(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn levels(&self) -> &[MonomialSet] {
        &self.levels
    }

    pub fn level(&self, k: usize) -> &MonomialSet {
        &self.levels[k]
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.levels.iter().map(MonomialSet::len).collect()
    }

    /// Border monomials `(∂N)_k = N_{k-1}+ \ N_k`.
    pub fn border_monomials(&self, k: usize) -> Result<MonomialSet> {
        let s = self.max_degree();
        if k == 0 || k > s {
            return Err(Error::DegreeOutOfRange { degree: k, max: s });
        }
        Ok(self.levels[k - 1].expand_plus().difference(&self.levels[k]))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GeneratorKind {
    Border,
    Intermediate,
    Minimal,
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Border => "border",
            Self::Intermediate => "intermediate",
            Self::Minimal => "minimal",
        })
    }
}

/// Ideal elements grouped by degree.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorSet<T> {
    nvars: usize,
    kind: GeneratorKind,
    by_degree: BTreeMap<usize, Vec<HomogeneousPolynomial<T>>>,
}

impl<T: Scalar> GeneratorSet<T> {
    pub fn new(nvars: usize, kind: GeneratorKind) -> Self {
        Self {
            nvars,
            kind,
            by_degree: BTreeMap::new(),
        }
    }

    /// Sets the generators of degree `k`. Zero polynomials are dropped.
    pub fn insert(&mut self, k: usize, polys: Vec<HomogeneousPolynomial<T>>) -> Result<()> {
        for p in &polys {
            if p.degree() != k || p.nvars() != self.nvars {
                return Err(Error::DimensionMismatch(format!(
                    "polynomial of degree {} filed under degree {k}",
                    p.degree()
                )));
            }
        }
        self.by_degree
            .insert(k, polys.into_iter().filter(|p| !p.is_zero()).collect());
        Ok(())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn kind(&self) -> GeneratorKind {
        self.kind
    }

    pub fn set_kind(&mut self, kind: GeneratorKind) {
        self.kind = kind;
    }

    pub fn degree(&self, k: usize) -> &[HomogeneousPolynomial<T>] {
        self.by_degree.get(&k).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn by_degree(&self) -> &BTreeMap<usize, Vec<HomogeneousPolynomial<T>>> {
        &self.by_degree
    }

    pub fn max_degree(&self) -> usize {
        self.by_degree.keys().next_back().copied().unwrap_or(0)
    }

    /// Number of generators in each degree `1..=s`.
    pub fn counts(&self, s: usize) -> Vec<usize> {
        (1..=s).map(|k| self.degree(k).len()).collect()
    }

    pub fn total(&self) -> usize {
        self.by_degree.values().map(Vec::len).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &HomogeneousPolynomial<T>)> {
        self.by_degree
            .iter()
            .flat_map(|(&k, v)| v.iter().map(move |p| (k, p)))
    }
}
