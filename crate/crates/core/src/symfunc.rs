//! Sparse integer polynomials and the generating functions of labellings
//! and factorizations.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::affine::AffinePermutation;
use crate::diagram::rothe_diagram;
use crate::error::{Error, Result};
use crate::factorization::{factorizations, FactorizationKind, Flag};
use crate::labelling::enumerate_column_strict;
use crate::set_valued::enumerate_column_strict_sv;

/// Exponent vector ordered by total degree, then reverse lexicographically
/// (so `x1` precedes `x2`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparsePolynomial {
    vars: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl SparsePolynomial {
    pub fn zero(vars: usize) -> Self {
        Self { vars, terms: BTreeMap::new() }
    }

    pub fn one(vars: usize) -> Self {
        Self::monomial(vec![0; vars], BigInt::one())
    }

    pub fn monomial(exponents: Vec<u32>, coeff: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(exponents.len());
        p.add_term(exponents, coeff.into());
        p
    }

    /// `x_i`, 1-based.
    pub fn variable(vars: usize, i: usize) -> Self {
        let mut e = vec![0; vars];
        e[i - 1] = 1;
        Self::monomial(e, 1)
    }

    pub fn add_term(&mut self, exponents: Vec<u32>, coeff: BigInt) {
        assert_eq!(exponents.len(), self.vars, "exponent vector length");
        let key = Monomial(exponents);
        let slot = self.terms.entry(key.clone()).or_insert_with(BigInt::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigInt)> {
        self.terms.iter().map(|(m, c)| (m.0.as_slice(), c))
    }

    pub fn coefficient(&self, exponents: &[u32]) -> BigInt {
        self.terms.get(&Monomial(exponents.to_vec())).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sets the last variable to zero.
    pub fn restrict_last_to_zero(&self) -> Self {
        let vars = self.vars.saturating_sub(1);
        let mut out = Self::zero(vars);
        for (m, c) in &self.terms {
            if self.vars == 0 || m.0[vars] == 0 {
                out.add_term(m.0[..vars].to_vec(), c.clone());
            }
        }
        out
    }

    pub fn homogeneous_part(&self, degree: u32) -> Self {
        Self {
            vars: self.vars,
            terms: self.terms.iter().filter(|(m, _)| m.degree() == degree).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Terms of the lowest total degree present.
    pub fn min_degree_part(&self) -> Self {
        match self.terms.keys().next() {
            Some(m) => self.homogeneous_part(m.degree()),
            None => self.clone(),
        }
    }

    /// Invariant under every transposition `x_i <-> x_{i+1}`.
    pub fn is_symmetric(&self) -> bool {
        (0..self.vars.saturating_sub(1)).all(|i| {
            self.terms.iter().all(|(m, c)| {
                let mut e = m.0.clone();
                e.swap(i, i + 1);
                self.terms.get(&Monomial(e)) == Some(c)
            })
        })
    }

    fn check_vars(&self, other: &Self) {
        assert_eq!(self.vars, other.vars, "polynomials over different variable sets");
    }
}

impl Add for &SparsePolynomial {
    type Output = SparsePolynomial;

    fn add(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        self.check_vars(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.0.clone(), c.clone());
        }
        out
    }
}

impl Neg for &SparsePolynomial {
    type Output = SparsePolynomial;

    fn neg(self) -> SparsePolynomial {
        SparsePolynomial { vars: self.vars, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Sub for &SparsePolynomial {
    type Output = SparsePolynomial;

    fn sub(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        self + &-rhs
    }
}

impl Mul for &SparsePolynomial {
    type Output = SparsePolynomial;

    fn mul(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        self.check_vars(rhs);
        let mut out = SparsePolynomial::zero(self.vars);
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                let e = a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            match (k, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                _ => write!(f, " {sign} ")?,
            }
            let abs = c.abs();
            let factors: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { format!("x{}", i + 1) } else { format!("x{}^{e}", i + 1) })
                .collect();
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{abs}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

/// `{"vars": m, "terms": [[[e1, ..., em], c], ...]}`; coefficients are
/// decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialJson {
    pub vars: usize,
    pub terms: Vec<(Vec<u32>, String)>,
}

impl From<&SparsePolynomial> for PolynomialJson {
    fn from(p: &SparsePolynomial) -> Self {
        Self { vars: p.vars, terms: p.terms().map(|(e, c)| (e.to_vec(), c.to_string())).collect() }
    }
}

impl TryFrom<PolynomialJson> for SparsePolynomial {
    type Error = Error;

    fn try_from(j: PolynomialJson) -> Result<Self> {
        let mut p = SparsePolynomial::zero(j.vars);
        for (e, c) in j.terms {
            if e.len() != j.vars {
                return Err(Error::Parse(format!("exponent vector {e:?} has wrong length")));
            }
            let c: BigInt = c.parse().map_err(|_| Error::Parse(format!("bad coefficient {c:?}")))?;
            p.add_term(e, c);
        }
        Ok(p)
    }
}

fn signed(sign_exponent: usize) -> BigInt {
    if sign_exponent % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

fn to_exponents(counts: Vec<usize>) -> Vec<u32> {
    counts.into_iter().map(|c| c as u32).collect()
}

/// `Σ_T x^T` over column-strict balanced labellings with labels `<= m`.
pub fn stanley_via_labellings(w: &AffinePermutation, m: usize) -> SparsePolynomial {
    let mut p = SparsePolynomial::zero(m);
    for t in enumerate_column_strict(w, m as u32) {
        p.add_term(to_exponents(t.type_vector(m)), BigInt::one());
    }
    p
}

/// `Σ x_1^{ℓ(v_1)} ... x_m^{ℓ(v_m)}` over cyclically decreasing
/// factorizations `w = v_1 ... v_m`.
pub fn stanley_via_factorizations(w: &AffinePermutation, m: usize) -> SparsePolynomial {
    let mut p = SparsePolynomial::zero(m);
    for f in factorizations(w, m, FactorizationKind::Reduced, Flag::None).expect("unflagged") {
        p.add_term(to_exponents(f.type_vector()), BigInt::one());
    }
    p
}

/// `Σ_T (−1)^{|T|−ℓ(w)} x^T` over column-strict s-v balanced labellings.
pub fn grothendieck_stable_via_labellings(w: &AffinePermutation, m: usize) -> SparsePolynomial {
    let len = w.length();
    let mut p = SparsePolynomial::zero(m);
    for t in enumerate_column_strict_sv(w, m as u32) {
        p.add_term(to_exponents(t.type_vector(m)), signed(t.size() - len));
    }
    p
}

/// Signed sum over cyclically decreasing nilHecke factorizations.
pub fn grothendieck_stable_via_factorizations(w: &AffinePermutation, m: usize) -> SparsePolynomial {
    let len = w.length();
    let mut p = SparsePolynomial::zero(m);
    for f in factorizations(w, m, FactorizationKind::NilHecke, Flag::None).expect("unflagged") {
        p.add_term(to_exponents(f.type_vector()), signed(f.size() - len));
    }
    p
}

fn finite_vars(w: &AffinePermutation) -> Result<usize> {
    if !w.is_finite() {
        return Err(Error::NotFinite(w.to_string()));
    }
    Ok(w.period() - 1)
}

/// Grothendieck polynomial: s-v labellings whose labels in row `i` are `<= i`.
pub fn grothendieck_polynomial(w: &AffinePermutation) -> Result<SparsePolynomial> {
    let m = finite_vars(w)?;
    let len = w.length();
    let mut p = SparsePolynomial::zero(m);
    for t in enumerate_column_strict_sv(w, m as u32) {
        if t.values().iter().all(|(c, s)| s.iter().all(|&v| v as i64 <= c.row)) {
            p.add_term(to_exponents(t.type_vector(m)), signed(t.size() - len));
        }
    }
    Ok(p)
}

/// Grothendieck polynomial from flagged decreasing nilHecke factorizations.
pub fn grothendieck_via_flagged_factorizations(w: &AffinePermutation) -> Result<SparsePolynomial> {
    let m = finite_vars(w)?;
    let len = w.length();
    let mut p = SparsePolynomial::zero(m);
    for f in factorizations(w, m, FactorizationKind::NilHecke, Flag::Grothendieck)? {
        p.add_term(to_exponents(f.type_vector()), signed(f.size() - len));
    }
    Ok(p)
}

/// Schubert polynomial: single-valued labellings whose labels in row `i`
/// are `<= i`.
pub fn schubert_polynomial(w: &AffinePermutation) -> Result<SparsePolynomial> {
    let m = finite_vars(w)?;
    let mut p = SparsePolynomial::zero(m);
    for t in enumerate_column_strict(w, m as u32) {
        if t.values().iter().all(|(c, &v)| v as i64 <= c.row) {
            p.add_term(to_exponents(t.type_vector(m)), BigInt::one());
        }
    }
    Ok(p)
}

/// No `i < j < k` with `w(i) > w(j) > w(k)`.
pub fn is_321_avoiding(w: &AffinePermutation) -> bool {
    let n = w.period() as i64;
    let band = n * w.spread();
    (1..=n).all(|i| {
        (i + 1..=i + 2 * band).all(|j| {
            w.apply(i) < w.apply(j) || (j + 1..=i + 2 * band).all(|k| w.apply(j) < w.apply(k))
        })
    })
}

/// Skew shape `(λ, μ)` of `D(w)` for a finite 321-avoiding `w`: empty rows
/// and columns are dropped and the diagram is mirrored left to right.
pub fn skew_shape(w: &AffinePermutation) -> Option<(Vec<usize>, Vec<usize>)> {
    if !w.is_finite() || !is_321_avoiding(w) {
        return None;
    }
    let d = rothe_diagram(w);
    let rows: Vec<i64> = {
        let mut r: Vec<i64> = d.cells().iter().map(|c| c.row).collect();
        r.dedup();
        r
    };
    let mut cols: Vec<i64> = d.cells().iter().map(|c| c.col).collect();
    cols.sort_unstable();
    cols.dedup();
    let width = cols.len();
    let mut lambda = Vec::new();
    let mut mu = Vec::new();
    for r in rows {
        let mut mirrored: Vec<usize> = d
            .row(r)
            .into_iter()
            .map(|c| width - 1 - cols.binary_search(&c).unwrap())
            .collect();
        mirrored.sort_unstable();
        let (lo, hi) = (mirrored[0], *mirrored.last().unwrap());
        if hi - lo + 1 != mirrored.len() {
            return None;
        }
        mu.push(lo);
        lambda.push(hi + 1);
    }
    let decreasing = |v: &[usize]| v.windows(2).all(|p| p[0] >= p[1]);
    (decreasing(&lambda) && decreasing(&mu)).then_some((lambda, mu))
}

/// Skew Schur polynomial `s_{λ/μ}(x_1, ..., x_m)` as a sum over
/// semistandard tableaux.
pub fn skew_schur(lambda: &[usize], mu: &[usize], m: usize) -> SparsePolynomial {
    let cells: Vec<(usize, usize)> = lambda
        .iter()
        .enumerate()
        .flat_map(|(r, &l)| (mu.get(r).copied().unwrap_or(0)..l).map(move |c| (r, c)))
        .collect();
    let mut filling: BTreeMap<(usize, usize), u32> = BTreeMap::new();
    let mut p = SparsePolynomial::zero(m);

    fn fill(
        k: usize,
        cells: &[(usize, usize)],
        filling: &mut BTreeMap<(usize, usize), u32>,
        m: usize,
        p: &mut SparsePolynomial,
    ) {
        if k == cells.len() {
            let mut e = vec![0u32; m];
            for &v in filling.values() {
                e[v as usize - 1] += 1;
            }
            p.add_term(e, BigInt::one());
            return;
        }
        let (r, c) = cells[k];
        let left = if c > 0 { filling.get(&(r, c - 1)).copied().unwrap_or(1) } else { 1 };
        let above = if r > 0 { filling.get(&(r - 1, c)).map(|v| v + 1).unwrap_or(1) } else { 1 };
        for v in left.max(above)..=m as u32 {
            filling.insert((r, c), v);
            fill(k + 1, cells, filling, m, p);
        }
        filling.remove(&(r, c));
    }

    fill(0, &cells, &mut filling, m, &mut p);
    p
}
