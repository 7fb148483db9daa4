//! Sparse multivariate polynomials over a prime field or the rationals.
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`], whose ordering is
//! graded lexicographic, so the last entry is always the leading term.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use super::{Domain, Scalar};

/// Exponent vector ordered by total degree, then lexicographically with the
/// first variable most significant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, idx: usize) -> Self {
        let mut e = vec![0; nvars];
        e[idx] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    base: Domain,
    nvars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero(base: &Domain, nvars: usize) -> Self {
        Poly {
            base: base.clone(),
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Scalar, nvars: usize) -> Self {
        let mut p = Poly::zero(c.domain(), nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    pub fn one(base: &Domain, nvars: usize) -> Self {
        Poly::constant(Scalar::one(base), nvars)
    }

    pub fn var(base: &Domain, nvars: usize, idx: usize) -> Self {
        Poly::monomial(Scalar::one(base), Monomial::var(nvars, idx))
    }

    pub fn monomial(c: Scalar, m: Monomial) -> Self {
        let nvars = m.0.len();
        let mut p = Poly::zero(c.domain(), nvars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(base: &Domain, nvars: usize, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut p = Poly::zero(base, nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn base(&self) -> &Domain {
        &self.base
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .map(|(m, c)| m.is_one() && c.is_one())
                .unwrap_or(false)
    }

    /// Constant coefficient if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero(&self.base)),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = &*existing + &c;
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly {
            base: self.base.clone(),
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.base, self.nvars);
        }
        Poly {
            base: self.base.clone(),
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.base, self.nvars);
        }
        Poly {
            base: self.base.clone(),
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero(&self.base, self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut acc = Poly::one(&self.base, self.nvars);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Scale so the leading coefficient is one. Zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.inv().expect("base coefficients lie in a field");
                self.scale(&inv)
            }
        }
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        let (lm, lc) = divisor.leading()?;
        let lc_inv = lc.inv().ok()?;
        let mut rem = self.clone();
        let mut quot = Poly::zero(&self.base, self.nvars);
        while let Some((m, c)) = rem.leading() {
            let qm = m.div(lm)?;
            let qc = c * &lc_inv;
            rem = rem.sub(&divisor.mul_term(&qm, &qc));
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Coefficients with respect to `var`, indexed by degree.
    fn to_univariate(&self, var: usize) -> Vec<Poly> {
        let deg = self.degree_in(var) as usize;
        let mut out = vec![Poly::zero(&self.base, self.nvars); deg + 1];
        for (m, c) in &self.terms {
            let mut e = m.clone();
            let d = e.0[var] as usize;
            e.0[var] = 0;
            out[d].add_term(e, c.clone());
        }
        out
    }

    fn from_univariate(coeffs: &[Poly], var: usize, base: &Domain, nvars: usize) -> Poly {
        let mut out = Poly::zero(base, nvars);
        for (d, c) in coeffs.iter().enumerate() {
            for (m, a) in &c.terms {
                let mut e = m.clone();
                e.0[var] += d as u32;
                out.add_term(e, a.clone());
            }
        }
        out
    }

    /// Greatest common divisor, normalised to a monic leading coefficient.
    ///
    /// Recursive primitive polynomial remainder sequences: the gcd of the
    /// contents times the gcd of the primitive parts.
    pub fn gcd(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        let var = (0..self.nvars)
            .rev()
            .find(|&v| self.degree_in(v) > 0 || other.degree_in(v) > 0);
        let Some(var) = var else {
            return Poly::one(&self.base, self.nvars);
        };
        let ua = self.to_univariate(var);
        let ub = other.to_univariate(var);
        let ca = content(&ua);
        let cb = content(&ub);
        let c = ca.gcd(&cb);
        let mut f = primitive(&ua, &ca);
        let mut g = primitive(&ub, &cb);
        if f.len() < g.len() {
            std::mem::swap(&mut f, &mut g);
        }
        while !(g.len() == 1 && g[0].is_zero()) {
            let r = pseudo_remainder(&f, &g);
            f = g;
            g = if r.iter().all(Poly::is_zero) {
                vec![Poly::zero(&self.base, self.nvars)]
            } else {
                let cr = content(&r);
                primitive(&r, &cr)
            };
        }
        let f = Poly::from_univariate(&f, var, &self.base, self.nvars);
        c.mul(&f).monic()
    }
}

fn trim(mut v: Vec<Poly>) -> Vec<Poly> {
    while v.len() > 1 && v.last().map(Poly::is_zero).unwrap_or(false) {
        v.pop();
    }
    v
}

fn content(coeffs: &[Poly]) -> Poly {
    let mut g = Poly::zero(coeffs[0].base(), coeffs[0].nvars());
    for c in coeffs {
        if c.is_zero() {
            continue;
        }
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn primitive(coeffs: &[Poly], content: &Poly) -> Vec<Poly> {
    if content.is_zero() {
        return coeffs.to_vec();
    }
    trim(
        coeffs
            .iter()
            .map(|c| c.div_exact(content).expect("content divides every coefficient"))
            .collect(),
    )
}

fn pseudo_remainder(f: &[Poly], g: &[Poly]) -> Vec<Poly> {
    let n = g.len() - 1;
    let lc = &g[n];
    let mut r = trim(f.to_vec());
    while r.len() > n && !(r.len() == 1 && r[0].is_zero()) {
        let m = r.len() - 1;
        let lead = r[m].clone();
        let shift = m - n;
        let mut next: Vec<Poly> = r.iter().map(|c| c.mul(lc)).collect();
        for (i, gc) in g.iter().enumerate() {
            next[i + shift] = next[i + shift].sub(&gc.mul(&lead));
        }
        r = trim(next);
    }
    r
}
