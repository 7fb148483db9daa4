//! Iterated Ore extensions of derivation type
//! `F[x_1][x_2; d_2]...[x_n; d_n]` with normal-form arithmetic.
//!
//! Elements are stored as sums of ordered monomials `x_1^e_1 ... x_n^e_n`
//! (lower-index variables on the left). Products are brought back to normal
//! form with `x_i^a * u = sum_k C(a, k) d_i^k(u) x_i^(a - k)` for `u` in the
//! subalgebra generated by `x_1, ..., x_(i-1)`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::json::{field, field_str, parse_domain, domain_to_json};
use crate::scalar::{format_terms, parse_expression, Builder, Domain, Monomial, Scalar, ScalarDomain};

pub const DEFAULT_DEGREE_BOUND: u32 = 24;

pub(crate) type Terms = BTreeMap<Monomial, Scalar>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OreTower {
    domain: Domain,
    vars: Vec<String>,
    /// `derivations[i][j]` is `d_i(x_j)` for `j < i`.
    derivations: Vec<Vec<Terms>>,
    degree_bound: u32,
}

impl OreTower {
    /// Commutative polynomial ring on `vars`; add derivations with
    /// [`OreTower::with_derivation`] in increasing level order.
    pub fn new<S: AsRef<str>>(domain: &Domain, vars: &[S]) -> Result<OreTower> {
        if !matches!(**domain, ScalarDomain::Rational | ScalarDomain::PrimeField(_)) {
            return Err(Error::InvalidDomain(format!(
                "Ore towers need Q or F_p coefficients, got {domain}"
            )));
        }
        // reuse the polynomial-domain checks for names
        ScalarDomain::poly(domain, vars)?;
        let n = vars.len();
        Ok(OreTower {
            domain: domain.clone(),
            vars: vars.iter().map(|v| v.as_ref().to_string()).collect(),
            derivations: (0..n).map(|i| vec![Terms::new(); i]).collect(),
            degree_bound: DEFAULT_DEGREE_BOUND,
        })
    }

    /// Set `d_level(x_target) = image`, parsed in the subalgebra below `level`.
    pub fn with_derivation(mut self, level: &str, target: &str, image: &str) -> Result<OreTower> {
        let i = self.var_index(level)?;
        let j = self.var_index(target)?;
        if j >= i {
            return Err(Error::VariableOutOfLevel {
                var: target.to_string(),
                level: i,
            });
        }
        let terms = self.parse_terms(image)?;
        self.check_level(&terms, i)?;
        self.derivations[i][j] = terms;
        Ok(self)
    }

    pub fn with_degree_bound(mut self, bound: u32) -> OreTower {
        self.degree_bound = bound;
        self
    }

    pub fn into_arc(self) -> Arc<OreTower> {
        Arc::new(self)
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn degree_bound(&self) -> u32 {
        self.degree_bound
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::InvalidDomain(format!("tower has no variable `{name}`")))
    }

    /// `d_level(x_target)` as an element.
    pub fn derivation_image(self: &Arc<Self>, level: usize, target: usize) -> OreElement {
        OreElement {
            tower: self.clone(),
            terms: self.derivations[level][target].clone(),
        }
    }

    /// True when `d_level` is the zero derivation.
    pub fn derivation_is_zero(&self, level: usize) -> bool {
        self.derivations[level].iter().all(Terms::is_empty)
    }

    /// True when every derivation vanishes, i.e. the tower is commutative.
    pub fn is_commutative(&self) -> bool {
        (0..self.nvars()).all(|i| self.derivation_is_zero(i))
    }

    /// Same tower with every coefficient sent through `f` into `target`.
    pub fn map_coefficients(&self, target: &Domain, f: impl Fn(&Scalar) -> Result<Scalar>) -> Result<OreTower> {
        let derivations = self
            .derivations
            .iter()
            .map(|row| row.iter().map(|t| map_terms(t, &f)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(OreTower {
            domain: target.clone(),
            vars: self.vars.clone(),
            derivations,
            degree_bound: self.degree_bound,
        })
    }

    /// All coefficients that appear in derivation images.
    pub fn coefficients(&self) -> Vec<Scalar> {
        self.derivations
            .iter()
            .flat_map(|row| row.iter().flat_map(|t| t.values().cloned()))
            .collect()
    }

    fn check_level(&self, terms: &Terms, level: usize) -> Result<()> {
        for m in terms.keys() {
            if let Some(v) = (level..self.nvars()).find(|&v| m.0[v] > 0) {
                return Err(Error::VariableOutOfLevel {
                    var: self.vars[v].clone(),
                    level,
                });
            }
        }
        Ok(())
    }

    fn parse_terms(&self, input: &str) -> Result<Terms> {
        parse_expression(&TermBuilder { tower: self }, input)
    }

    pub(crate) fn one_terms(&self) -> Terms {
        let mut t = Terms::new();
        t.insert(Monomial::one(self.nvars()), Scalar::one(&self.domain));
        t
    }

    fn binomial(&self, n: u32, k: u32) -> Scalar {
        let mut b = BigInt::from(1);
        for i in 0..k {
            b = b * (n - i) / (i + 1);
        }
        Scalar::from_bigint(&self.domain, &b)
    }

    pub(crate) fn mul_terms(&self, a: &Terms, b: &Terms) -> Terms {
        let mut out = Terms::new();
        for (m1, c1) in a {
            for (m2, c2) in b {
                let c = c1 * c2;
                if c.is_zero() {
                    continue;
                }
                for (m, v) in self.mul_monomials(m1, m2) {
                    add_term(&mut out, m, &c * &v);
                }
            }
        }
        out
    }

    fn mul_monomials(&self, m1: &Monomial, m2: &Monomial) -> Terms {
        let Some(top) = (0..self.nvars()).rev().find(|&v| m1.0[v] > 0) else {
            return single(m2.clone(), Scalar::one(&self.domain));
        };
        if m2.0[..top].iter().all(|&e| e == 0) || self.derivation_is_zero_below(top, m2) {
            return single(m1.mul(m2), Scalar::one(&self.domain));
        }
        let a = m1.0[top];
        let mut rest = m1.clone();
        rest.0[top] = 0;
        let mut low = m2.clone();
        let mut high = m2.clone();
        for v in 0..self.nvars() {
            if v < top {
                high.0[v] = 0;
            } else {
                low.0[v] = 0;
            }
        }
        let rest_terms = single(rest, Scalar::one(&self.domain));
        let mut out = Terms::new();
        let mut dk = single(low, Scalar::one(&self.domain));
        for k in 0..=a {
            if dk.is_empty() {
                break;
            }
            let coef = self.binomial(a, k);
            if !coef.is_zero() {
                let mut shift = high.clone();
                shift.0[top] += a - k;
                for (m, c) in self.mul_terms(&rest_terms, &dk) {
                    add_term(&mut out, m.mul(&shift), &coef * &c);
                }
            }
            if k < a {
                dk = self.derive_terms(top, &dk);
            }
        }
        out
    }

    /// True when `d_level` kills every variable occurring in `m` below `level`.
    fn derivation_is_zero_below(&self, level: usize, m: &Monomial) -> bool {
        (0..level).all(|j| m.0[j] == 0 || self.derivations[level][j].is_empty())
    }

    /// Leibniz extension of `d_level` to `a`, which must live below `level`.
    pub(crate) fn derive_terms(&self, level: usize, a: &Terms) -> Terms {
        let mut out = Terms::new();
        let n = self.nvars();
        for (m, c) in a {
            for j in 0..level {
                if m.0[j] == 0 || self.derivations[level][j].is_empty() {
                    continue;
                }
                let image = &self.derivations[level][j];
                for r in 0..m.0[j] {
                    let mut left = m.clone();
                    let mut right = m.clone();
                    for v in 0..n {
                        if v > j {
                            left.0[v] = 0;
                        }
                        if v < j {
                            right.0[v] = 0;
                        }
                    }
                    left.0[j] = r;
                    right.0[j] = m.0[j] - 1 - r;
                    let lhs = self.mul_terms(&single(left, c.clone()), image);
                    for (mm, cc) in self.mul_terms(&lhs, &single(right, Scalar::one(&self.domain))) {
                        add_term(&mut out, mm, cc);
                    }
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let mut derivs = serde_json::Map::new();
        for (i, row) in self.derivations.iter().enumerate() {
            let mut inner = serde_json::Map::new();
            for (j, t) in row.iter().enumerate() {
                if !t.is_empty() {
                    inner.insert(self.vars[j].clone(), Value::String(self.format(t)));
                }
            }
            if !inner.is_empty() {
                derivs.insert(self.vars[i].clone(), Value::Object(inner));
            }
        }
        json!({
            "coeff_field": domain_to_json(&self.domain),
            "vars": self.vars,
            "derivations": derivs,
        })
    }

    pub fn from_json(v: &Value, path: &str) -> Result<OreTower> {
        let domain = parse_domain(field(v, path, "coeff_field")?, &format!("{path}.coeff_field"))?;
        let vars_v = field(v, path, "vars")?;
        let vars: Vec<String> = vars_v
            .as_array()
            .ok_or_else(|| crate::json::perr(&format!("{path}.vars"), "expected an array of names"))?
            .iter()
            .enumerate()
            .map(|(k, x)| {
                x.as_str()
                    .map(str::to_string)
                    .ok_or_else(|| crate::json::perr(&format!("{path}.vars[{k}]"), "expected a string"))
            })
            .collect::<Result<_>>()?;
        let mut tower = OreTower::new(&domain, &vars).map_err(|e| crate::json::perr(&format!("{path}.vars"), &e.to_string()))?;
        let mut entries = Vec::new();
        if let Some(d) = v.get("derivations") {
            let obj = d
                .as_object()
                .ok_or_else(|| crate::json::perr(&format!("{path}.derivations"), "expected an object"))?;
            for (level, inner) in obj {
                let p = format!("{path}.derivations.{level}");
                let i = tower.var_index(level).map_err(|e| crate::json::perr(&p, &e.to_string()))?;
                let inner = inner.as_object().ok_or_else(|| crate::json::perr(&p, "expected an object"))?;
                for (target, image) in inner {
                    let pp = format!("{p}.{target}");
                    let image = field_str(image, &pp)?;
                    entries.push((i, level.clone(), target.clone(), image.to_string(), pp));
                }
            }
        }
        entries.sort_by_key(|e| e.0);
        for (_, level, target, image, pp) in entries {
            tower = tower
                .with_derivation(&level, &target, &image)
                .map_err(|e| crate::json::perr(&pp, &e.to_string()))?;
        }
        Ok(tower)
    }

    fn format(&self, t: &Terms) -> String {
        format_terms(t.iter().rev().map(|(m, c)| (m.0.as_slice(), c)), &self.vars)
    }
}

pub(crate) fn single(m: Monomial, c: Scalar) -> Terms {
    let mut t = Terms::new();
    if !c.is_zero() {
        t.insert(m, c);
    }
    t
}

pub(crate) fn add_term(t: &mut Terms, m: Monomial, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match t.get_mut(&m) {
        Some(existing) => {
            let s = &*existing + &c;
            if s.is_zero() {
                t.remove(&m);
            } else {
                *existing = s;
            }
        }
        None => {
            t.insert(m, c);
        }
    }
}

fn map_terms(t: &Terms, f: &impl Fn(&Scalar) -> Result<Scalar>) -> Result<Terms> {
    let mut out = Terms::new();
    for (m, c) in t {
        add_term(&mut out, m.clone(), f(c)?);
    }
    Ok(out)
}

struct TermBuilder<'a> {
    tower: &'a OreTower,
}

impl Builder for TermBuilder<'_> {
    type Out = Terms;

    fn number(&self, n: &BigRational) -> Result<Terms> {
        let c = Scalar::from_rational(&self.tower.domain, n)?;
        Ok(single(Monomial::one(self.tower.nvars()), c))
    }

    fn variable(&self, name: &str) -> Result<Terms> {
        let i = self.tower.var_index(name)?;
        Ok(single(Monomial::var(self.tower.nvars(), i), Scalar::one(&self.tower.domain)))
    }

    fn add(&self, mut a: Terms, b: Terms) -> Result<Terms> {
        for (m, c) in b {
            add_term(&mut a, m, c);
        }
        Ok(a)
    }

    fn neg(&self, a: Terms) -> Result<Terms> {
        Ok(a.into_iter().map(|(m, c)| (m, -c)).collect())
    }

    fn mul(&self, a: Terms, b: Terms) -> Result<Terms> {
        Ok(self.tower.mul_terms(&a, &b))
    }

    fn div(&self, a: Terms, b: Terms) -> Result<Terms> {
        let one = Monomial::one(self.tower.nvars());
        match (b.len(), b.get(&one)) {
            (1, Some(c)) => {
                let inv = c.inv()?;
                Ok(a.into_iter().map(|(m, v)| (m, &v * &inv)).collect())
            }
            _ => Err(Error::Syntax {
                input: String::new(),
                message: "only division by nonzero constants is supported".into(),
            }),
        }
    }

    fn pow(&self, a: Terms, e: u32) -> Result<Terms> {
        let mut acc = self.tower.one_terms();
        for _ in 0..e {
            acc = self.tower.mul_terms(&acc, &a);
        }
        Ok(acc)
    }
}

/// Element of an Ore tower in normal form.
#[derive(Clone, Debug)]
pub struct OreElement {
    tower: Arc<OreTower>,
    terms: Terms,
}

impl PartialEq for OreElement {
    fn eq(&self, other: &Self) -> bool {
        same_tower(&self.tower, &other.tower) && self.terms == other.terms
    }
}

impl Eq for OreElement {}

fn same_tower(a: &Arc<OreTower>, b: &Arc<OreTower>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl OreElement {
    pub fn zero(tower: &Arc<OreTower>) -> OreElement {
        OreElement {
            tower: tower.clone(),
            terms: Terms::new(),
        }
    }

    pub fn one(tower: &Arc<OreTower>) -> OreElement {
        OreElement::constant(tower, Scalar::one(&tower.domain))
    }

    pub fn constant(tower: &Arc<OreTower>, c: Scalar) -> OreElement {
        OreElement {
            tower: tower.clone(),
            terms: single(Monomial::one(tower.nvars()), c),
        }
    }

    pub fn var(tower: &Arc<OreTower>, idx: usize) -> OreElement {
        OreElement {
            tower: tower.clone(),
            terms: single(Monomial::var(tower.nvars(), idx), Scalar::one(&tower.domain)),
        }
    }

    pub fn var_named(tower: &Arc<OreTower>, name: &str) -> Result<OreElement> {
        Ok(OreElement::var(tower, tower.var_index(name)?))
    }

    /// `c * x_1^e_1 ... x_n^e_n` (exponents already in normal order).
    pub fn monomial(tower: &Arc<OreTower>, exps: &[u32], c: Scalar) -> OreElement {
        OreElement {
            tower: tower.clone(),
            terms: single(Monomial(exps.to_vec()), c),
        }
    }

    pub(crate) fn from_terms(tower: &Arc<OreTower>, terms: Terms) -> OreElement {
        OreElement {
            tower: tower.clone(),
            terms,
        }
    }

    pub fn parse(tower: &Arc<OreTower>, input: &str) -> Result<OreElement> {
        Ok(OreElement {
            tower: tower.clone(),
            terms: tower.parse_terms(input)?,
        })
    }

    pub fn tower(&self) -> &Arc<OreTower> {
        &self.tower
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Scalar)> {
        self.terms.iter().map(|(m, c)| (m.0.as_slice(), c))
    }

    pub(crate) fn term_map(&self) -> &Terms {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of the normal-form monomial `exps`.
    pub fn coefficient(&self, exps: &[u32]) -> Scalar {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_else(|| Scalar::zero(&self.tower.domain))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    /// Highest variable index occurring, if any.
    pub fn max_var(&self) -> Option<usize> {
        (0..self.tower.nvars()).rev().find(|&v| self.degree_in(v) > 0)
    }

    fn check_tower(&self, other: &OreElement) -> Result<()> {
        if same_tower(&self.tower, &other.tower) {
            Ok(())
        } else {
            Err(Error::TowerMismatch)
        }
    }

    pub fn add(&self, other: &OreElement) -> Result<OreElement> {
        self.check_tower(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            add_term(&mut terms, m.clone(), c.clone());
        }
        Ok(OreElement::from_terms(&self.tower, terms))
    }

    pub fn sub(&self, other: &OreElement) -> Result<OreElement> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> OreElement {
        OreElement::from_terms(&self.tower, self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect())
    }

    pub fn scale(&self, c: &Scalar) -> OreElement {
        let mut terms = Terms::new();
        for (m, v) in &self.terms {
            add_term(&mut terms, m.clone(), v * c);
        }
        OreElement::from_terms(&self.tower, terms)
    }

    /// Normal form of `self * other`, subject to the tower's degree bound.
    pub fn mul(&self, other: &OreElement) -> Result<OreElement> {
        self.check_tower(other)?;
        let bound = self.tower.degree_bound;
        let degree = self.total_degree() + other.total_degree();
        if degree > bound && !self.is_zero() && !other.is_zero() {
            return Err(Error::DegreeBoundExceeded { degree, bound });
        }
        Ok(OreElement::from_terms(&self.tower, self.tower.mul_terms(&self.terms, &other.terms)))
    }

    pub fn pow(&self, e: u64) -> Result<OreElement> {
        let mut acc = OreElement::one(&self.tower);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &OreElement) -> Result<OreElement> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    /// Same element with coefficients mapped into a tower over another field.
    pub fn map_into(&self, tower: &Arc<OreTower>, f: impl Fn(&Scalar) -> Result<Scalar>) -> Result<OreElement> {
        Ok(OreElement::from_terms(tower, map_terms(&self.terms, &f)?))
    }
}

impl fmt::Display for OreElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tower.format(&self.terms))
    }
}

/// Normal-form monomials in `nvars` variables of total degree at most `bound`,
/// in increasing graded order.
pub fn monomials_up_to(nvars: usize, bound: u32) -> Vec<Monomial> {
    let mut out = vec![Monomial::one(nvars)];
    let mut frontier = out.clone();
    for _ in 0..bound {
        let mut next = std::collections::BTreeSet::new();
        for m in &frontier {
            for v in 0..nvars {
                let mut e = m.clone();
                e.0[v] += 1;
                next.insert(e);
            }
        }
        frontier = next.into_iter().collect();
        out.extend(frontier.iter().cloned());
    }
    out
}

/// Normal form of `a * b`.
pub fn multiply(a: &OreElement, b: &OreElement) -> Result<OreElement> {
    a.mul(b)
}

/// Apply `d_level` (zero-based variable index) to an element of the
/// subalgebra generated by the variables below `level`.
pub fn apply_derivation(tower: &Arc<OreTower>, level: usize, a: &OreElement) -> Result<OreElement> {
    if !same_tower(tower, &a.tower) {
        return Err(Error::TowerMismatch);
    }
    if let Some(v) = a.max_var().filter(|&v| v >= level) {
        return Err(Error::VariableOutOfLevel {
            var: tower.vars[v].clone(),
            level,
        });
    }
    Ok(OreElement::from_terms(tower, tower.derive_terms(level, &a.terms)))
}

/// True iff `a` commutes with every generator.
pub fn is_central(a: &OreElement) -> Result<bool> {
    is_central_below(a, a.tower.nvars())
}

/// True iff `a` commutes with `x_0, ..., x_(level-1)`.
pub fn is_central_below(a: &OreElement, level: usize) -> Result<bool> {
    for i in 0..level {
        let x = OreElement::var(&a.tower, i);
        if a.mul(&x)? != x.mul(a)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Centrality test on raw terms with no degree bound.
pub(crate) fn commutes_below(tower: &OreTower, a: &Terms, level: usize) -> bool {
    let n = tower.nvars();
    (0..level).all(|i| {
        let x = single(Monomial::var(n, i), Scalar::one(tower.domain()));
        tower.mul_terms(a, &x) == tower.mul_terms(&x, a)
    })
}

pub(crate) fn pow_terms(tower: &OreTower, a: &Terms, e: u64) -> Terms {
    let mut acc = tower.one_terms();
    let mut base = a.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = tower.mul_terms(&acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = tower.mul_terms(&base, &base);
        }
    }
    acc
}

/// One failed compatibility identity
/// `d_i(d_k(x_j)) = [d_i(x_k), x_j] + [x_k, d_i(x_j)]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerFailure {
    pub level: String,
    pub upper: String,
    pub lower: String,
    pub lhs: String,
    pub rhs: String,
}

impl fmt::Display for TowerFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "d_{}([{}, {}]) = {} but the Leibniz expansion gives {}",
            self.level, self.upper, self.lower, self.lhs, self.rhs
        )
    }
}

/// Check that every `d_i` respects the relations of the algebra below it.
pub fn validate_tower(tower: &Arc<OreTower>) -> Vec<TowerFailure> {
    let mut failures = Vec::new();
    let n = tower.nvars();
    for i in 0..n {
        if tower.derivation_is_zero(i) {
            continue;
        }
        for k in 0..i {
            for j in 0..k {
                let lhs = OreElement::from_terms(tower, tower.derive_terms(i, &tower.derivations[k][j]));
                let xk = OreElement::var(tower, k);
                let xj = OreElement::var(tower, j);
                let dk = tower.derivation_image(i, k);
                let dj = tower.derivation_image(i, j);
                let t1 = OreElement::from_terms(
                    tower,
                    tower.mul_terms(&dk.terms, &xj.terms),
                )
                .sub(&OreElement::from_terms(tower, tower.mul_terms(&xj.terms, &dk.terms)))
                .unwrap();
                let t2 = OreElement::from_terms(tower, tower.mul_terms(&xk.terms, &dj.terms))
                    .sub(&OreElement::from_terms(tower, tower.mul_terms(&dj.terms, &xk.terms)))
                    .unwrap();
                let rhs = t1.add(&t2).unwrap();
                if lhs != rhs {
                    failures.push(TowerFailure {
                        level: tower.vars[i].clone(),
                        upper: tower.vars[k].clone(),
                        lower: tower.vars[j].clone(),
                        lhs: lhs.to_string(),
                        rhs: rhs.to_string(),
                    });
                }
            }
        }
    }
    failures
}

#[cfg(test)]
mod tests {
    use super::*;

    fn weyl(domain: &Domain) -> Arc<OreTower> {
        OreTower::new(domain, &["y", "x"])
            .unwrap()
            .with_derivation("x", "y", "1")
            .unwrap()
            .into_arc()
    }

    fn jordan(domain: &Domain) -> Arc<OreTower> {
        OreTower::new(domain, &["x", "y"])
            .unwrap()
            .with_derivation("y", "x", "x^2")
            .unwrap()
            .into_arc()
    }

    fn el(t: &Arc<OreTower>, s: &str) -> OreElement {
        OreElement::parse(t, s).unwrap()
    }

    #[test]
    fn weyl_defining_relation() {
        let t = weyl(&ScalarDomain::rational());
        assert_eq!(multiply(&el(&t, "x"), &el(&t, "y")).unwrap(), el(&t, "y*x + 1"));
        assert_eq!(multiply(&el(&t, "x"), &el(&t, "y^2")).unwrap(), el(&t, "y^2*x + 2*y"));
        assert_eq!(el(&t, "x*y").to_string(), "y*x + 1");
    }

    #[test]
    fn jordan_defining_relation() {
        let t = jordan(&ScalarDomain::rational());
        assert_eq!(multiply(&el(&t, "y"), &el(&t, "x")).unwrap(), el(&t, "x*y + x^2"));
    }

    #[test]
    fn derivation_examples() {
        let t = weyl(&ScalarDomain::rational());
        assert_eq!(apply_derivation(&t, 1, &el(&t, "y^3")).unwrap(), el(&t, "3*y^2"));
        assert!(apply_derivation(&t, 1, &el(&t, "5")).unwrap().is_zero());
        assert!(matches!(
            apply_derivation(&t, 1, &el(&t, "x")),
            Err(Error::VariableOutOfLevel { .. })
        ));

        let f3 = ScalarDomain::prime_field(3).unwrap();
        let j = jordan(&f3);
        let d1 = apply_derivation(&j, 1, &el(&j, "x")).unwrap();
        assert_eq!(d1, el(&j, "x^2"));
        let d2 = apply_derivation(&j, 1, &d1).unwrap();
        assert_eq!(d2, el(&j, "2*x^3"));
        assert!(apply_derivation(&j, 1, &d2).unwrap().is_zero());
    }

    #[test]
    fn centrality_examples() {
        let f3 = ScalarDomain::prime_field(3).unwrap();
        let t = weyl(&f3);
        assert!(is_central(&el(&t, "1")).unwrap());
        assert!(is_central(&el(&t, "x^3")).unwrap());
        assert!(is_central(&el(&t, "y^3")).unwrap());
        assert!(!is_central(&el(&t, "x")).unwrap());
    }

    #[test]
    fn tower_validation_examples() {
        let q = ScalarDomain::rational();
        assert!(validate_tower(&weyl(&q)).is_empty());
        let heis = OreTower::new(&q, &["z", "x", "y"])
            .unwrap()
            .with_derivation("y", "x", "z")
            .unwrap()
            .into_arc();
        assert!(validate_tower(&heis).is_empty());
        let bad = OreTower::new(&q, &["x1", "x2", "x3"])
            .unwrap()
            .with_derivation("x2", "x1", "x1")
            .unwrap()
            .with_derivation("x3", "x2", "x1")
            .unwrap()
            .with_derivation("x3", "x1", "x2")
            .unwrap()
            .into_arc();
        assert_eq!(validate_tower(&bad).len(), 1);
    }

    #[test]
    fn derivation_images_must_stay_below_their_level() {
        let q = ScalarDomain::rational();
        let r = OreTower::new(&q, &["a", "b"]).unwrap().with_derivation("b", "a", "b");
        assert!(matches!(r, Err(Error::VariableOutOfLevel { .. })));
    }

    #[test]
    fn degree_bound_is_enforced() {
        let q = ScalarDomain::rational();
        let t = OreTower::new(&q, &["y", "x"])
            .unwrap()
            .with_derivation("x", "y", "1")
            .unwrap()
            .with_degree_bound(4)
            .into_arc();
        let x3 = el(&t, "x^3");
        assert!(matches!(x3.mul(&el(&t, "y^2")), Err(Error::DegreeBoundExceeded { .. })));
    }

    #[test]
    fn json_round_trip() {
        let q = ScalarDomain::rational();
        let t = OreTower::new(&q, &["z", "x", "y"])
            .unwrap()
            .with_derivation("y", "x", "1/2*z")
            .unwrap();
        let back = OreTower::from_json(&t.to_json(), "tower").unwrap();
        assert_eq!(back, t);
    }
}
