//! Central polynomial subrings of Ore towers in characteristic `p`.
//!
//! Walking up the tower, a level whose derivation vanishes contributes its own
//! variable. A level with a nonzero derivation `d` raises every earlier central
//! to the `p`-th power, finds a `p`-polynomial `g` with `g(d) = 0` over the
//! ring `B'` those powers generate, and contributes
//! `x^(p^k) + sum a_i x^(p^i)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ore::{add_term, commutes_below, monomials_up_to, pow_terms, single, OreElement, OreTower, Terms};
use crate::scalar::{char_poly, solve_linear, Domain, Matrix, Monomial, Poly, Scalar, ScalarDomain, UniPoly};

pub const DEFAULT_K_MAX: u32 = 4;

/// Largest matrix for which the characteristic-polynomial route is also run.
pub const REMAINDER_CHECK_LIMIT: usize = 9;

/// A central element, monic in `var` of degree `p^exponent`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Central {
    pub var: usize,
    pub element: OreElement,
    pub exponent: u32,
}

impl Central {
    pub fn degree(&self, p: u64) -> u64 {
        p.pow(self.exponent)
    }
}

/// `g(z) = z^(p^k) + sum_(i<k) a_i z^(p^i)` with `a_i` in a polynomial ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PPolynomial {
    pub p: u64,
    pub k: u32,
    pub coefficients: Vec<Scalar>,
}

impl PPolynomial {
    /// Evaluate at a matrix whose entries share the coefficients' domain.
    pub fn eval_matrix(&self, m: &Matrix) -> Result<Matrix> {
        let mut power = m.clone();
        let mut acc = Matrix::zeros(m.domain(), m.rows(), m.cols());
        for i in 0..=self.k {
            if i > 0 {
                power = power.pow(self.p)?;
            }
            let c = if i == self.k {
                Scalar::one(m.domain())
            } else {
                self.coefficients[i as usize].clone()
            };
            if !c.is_zero() {
                acc = acc.add(&power.scale(&c))?;
            }
        }
        Ok(acc)
    }

    pub fn is_monomial(&self) -> bool {
        self.coefficients.iter().all(Scalar::is_zero)
    }
}

impl std::fmt::Display for PPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "z^{}", self.p.pow(self.k))?;
        for (i, c) in self.coefficients.iter().enumerate().rev() {
            if !c.is_zero() {
                write!(f, " + ({c})*z^{}", self.p.pow(i as u32))?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LevelKind {
    /// The derivation vanishes; the variable itself is central.
    Generator,
    /// Built from a `p`-polynomial of the level's derivation.
    Theta,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelContribution {
    pub var: String,
    pub kind: LevelKind,
    /// Exponent when the central was created (`k` of the `p`-polynomial).
    pub own_exponent: u32,
    /// Exponent after the Frobenius raises applied by later levels.
    pub final_exponent: u32,
    pub p_polynomial: Option<PPolynomial>,
    /// Whether the characteristic-polynomial route confirmed `g(d) = 0`.
    pub cross_checked: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralSubringData {
    pub p: u64,
    pub tower: Arc<OreTower>,
    /// One central per variable, in tower order.
    pub centrals: Vec<Central>,
    pub levels: Vec<LevelContribution>,
}

impl CentralSubringData {
    /// `s` with rank `p^s`.
    pub fn rank_exponent(&self) -> u32 {
        self.centrals.iter().map(|c| c.exponent).sum()
    }

    pub fn rank(&self) -> u128 {
        (self.p as u128).pow(self.rank_exponent())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "p": self.p,
            "centrals": self.centrals.iter().map(|c| c.element.to_string()).collect::<Vec<_>>(),
            "exponents": self.centrals.iter().map(|c| c.exponent).collect::<Vec<_>>(),
            "levels": self.levels.iter().map(|l| json!({
                "var": l.var,
                "kind": match l.kind { LevelKind::Generator => "generator", LevelKind::Theta => "theta" },
                "own_exponent": l.own_exponent,
                "final_exponent": l.final_exponent,
                "p_polynomial": l.p_polynomial.as_ref().map(ToString::to_string),
            })).collect::<Vec<_>>(),
            "rank": { "p": self.p, "s": self.rank_exponent() },
        })
    }
}

fn prime_of(tower: &OreTower) -> Result<u64> {
    match **tower.domain() {
        ScalarDomain::PrimeField(p) => Ok(p),
        _ => Err(Error::InvalidDomain(format!(
            "central subrings need a prime field, got {}",
            tower.domain()
        ))),
    }
}

/// Raise centrals to the `p`-th power and check they stay central up to `level`.
fn raise(tower: &OreTower, centrals: &[Central], p: u64, level: usize) -> Result<Vec<Central>> {
    centrals
        .iter()
        .map(|c| {
            let t = pow_terms(tower, c.element.term_map(), p);
            if !commutes_below(tower, &t, level + 1) {
                return Err(Error::CentralityFailed(format!(
                    "({})^{p}",
                    c.element
                )));
            }
            Ok(Central {
                var: c.var,
                element: OreElement::from_terms(c.element.tower(), t),
                exponent: c.exponent + 1,
            })
        })
        .collect()
}

/// `p`-th powers of the centrals of the subalgebra below `level`, each
/// checked to be central in the algebra up to and including `level`.
pub fn frobenius_centrals(tower: &Arc<OreTower>, level: usize) -> Result<Vec<OreElement>> {
    let p = prime_of(tower)?;
    let below = tower_prefix(tower, level, DEFAULT_K_MAX)?;
    Ok(raise(tower, &below.0, p, level)?.into_iter().map(|c| c.element).collect())
}

/// Ring `F_p[T_v]` with one variable per base central.
fn base_ring(tower: &OreTower, base: &[Central]) -> Result<Domain> {
    let names: Vec<String> = base.iter().map(|c| format!("T_{}", tower.vars()[c.var])).collect();
    ScalarDomain::poly(tower.domain(), &names)
}

/// Division by monic centrals. The result maps each reduced monomial (every
/// exponent below its central's degree) to a coefficient polynomial in the
/// central variables.
struct Reducer<'a> {
    tower: &'a OreTower,
    base: &'a [Central],
    degrees: Vec<u32>,
    ring: Domain,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DivisionOrder {
    /// Largest term first, dividing by the highest eligible central.
    TopDown,
    /// Smallest reducible term first, dividing by the lowest eligible central.
    BottomUp,
}

/// Monomials compared with the highest variable most significant.
fn top_key(m: &Monomial) -> Vec<u32> {
    m.0.iter().rev().copied().collect()
}

impl<'a> Reducer<'a> {
    fn new(tower: &'a OreTower, base: &'a [Central], p: u64) -> Result<Reducer<'a>> {
        Ok(Reducer {
            tower,
            base,
            degrees: base.iter().map(|c| p.pow(c.exponent) as u32).collect(),
            ring: base_ring(tower, base)?,
        })
    }

    fn eligible(&self, m: &Monomial) -> Vec<usize> {
        (0..self.base.len())
            .filter(|&j| m.0[self.base[j].var] >= self.degrees[j])
            .collect()
    }

    fn reduce(&self, u: &Terms, order: DivisionOrder) -> Result<BTreeMap<Monomial, Scalar>> {
        let r = self.base.len();
        let fp = self.tower.domain();
        // pending[ore monomial key] = (monomial, {T-monomial: coefficient})
        let mut pending: BTreeMap<Vec<u32>, (Monomial, BTreeMap<Monomial, Scalar>)> = BTreeMap::new();
        let mut done: BTreeMap<Monomial, Poly> = BTreeMap::new();
        let push = |pending: &mut BTreeMap<Vec<u32>, (Monomial, BTreeMap<Monomial, Scalar>)>,
                    done: &mut BTreeMap<Monomial, Poly>,
                    m: Monomial,
                    tau: Monomial,
                    c: Scalar| {
            if c.is_zero() {
                return;
            }
            if self.eligible(&m).is_empty() {
                let slot = done.entry(m).or_insert_with(|| Poly::zero(fp, r));
                slot.add_term(tau, c);
            } else {
                let entry = pending.entry(top_key(&m)).or_insert_with(|| (m, BTreeMap::new()));
                match entry.1.get_mut(&tau) {
                    Some(v) => {
                        let s = &*v + &c;
                        if s.is_zero() {
                            entry.1.remove(&tau);
                        } else {
                            *v = s;
                        }
                    }
                    None => {
                        entry.1.insert(tau, c);
                    }
                }
            }
        };
        for (m, c) in u {
            push(&mut pending, &mut done, m.clone(), Monomial::one(r), c.clone());
        }
        let mut steps = 0usize;
        loop {
            let next = match order {
                DivisionOrder::TopDown => pending.pop_last(),
                DivisionOrder::BottomUp => pending.pop_first(),
            };
            let Some((_, (m, coeffs))) = next else { break };
            if coeffs.is_empty() {
                continue;
            }
            steps += 1;
            if steps > 1_000_000 {
                return Err(Error::NotFreeOverBase("division did not terminate".into()));
            }
            let elig = self.eligible(&m);
            let j = match order {
                DivisionOrder::TopDown => *elig.last().unwrap(),
                DivisionOrder::BottomUp => elig[0],
            };
            let var = self.base[j].var;
            let mut rest = m.clone();
            rest.0[var] -= self.degrees[j];
            // m = T_j * rest + (m - central_j * rest)
            let prod = self
                .tower
                .mul_terms(self.base[j].element.term_map(), &single(rest.clone(), Scalar::one(fp)));
            let mut correction = single(m.clone(), Scalar::one(fp));
            for (mm, c) in prod {
                add_term(&mut correction, mm, -c);
            }
            for (tau, a) in &coeffs {
                let mut shifted = tau.clone();
                shifted.0[j] += 1;
                push(&mut pending, &mut done, rest.clone(), shifted, a.clone());
                for (mm, c) in &correction {
                    push(&mut pending, &mut done, mm.clone(), tau.clone(), a * c);
                }
            }
        }
        Ok(done
            .into_iter()
            .filter(|(_, p)| !p.is_zero())
            .map(|(m, p)| (m, Scalar::from_poly(&self.ring, p)))
            .collect())
    }

    /// Substitute the centrals into a coefficient polynomial.
    fn evaluate(&self, c: &Scalar) -> Terms {
        let mut out = Terms::new();
        let poly = c.as_poly().expect("coefficient polynomial");
        for (tau, a) in poly.terms() {
            let mut t = single(Monomial::one(self.tower.nvars()), a.clone());
            for (j, &e) in tau.0.iter().enumerate() {
                if e > 0 {
                    t = self.tower.mul_terms(&t, &pow_terms(self.tower, self.base[j].element.term_map(), e as u64));
                }
            }
            for (m, v) in t {
                add_term(&mut out, m, v);
            }
        }
        out
    }

    fn reconstruct(&self, rep: &BTreeMap<Monomial, Scalar>) -> Terms {
        let mut out = Terms::new();
        let fp = self.tower.domain();
        for (m, c) in rep {
            let coeff = self.evaluate(c);
            for (mm, v) in self.tower.mul_terms(&coeff, &single(m.clone(), Scalar::one(fp))) {
                add_term(&mut out, mm, v);
            }
        }
        out
    }

    /// Reduced monomials in the variables below `level`.
    fn basis(&self, level: usize) -> Vec<Monomial> {
        let n = self.tower.nvars();
        let mut out = vec![Monomial::one(n)];
        for (j, c) in self.base.iter().enumerate() {
            if c.var >= level {
                continue;
            }
            let mut next = Vec::new();
            for m in &out {
                for e in 0..self.degrees[j] {
                    let mut m = m.clone();
                    m.0[c.var] = e;
                    next.push(m);
                }
            }
            out = next;
        }
        out.sort();
        out
    }
}

/// Matrix of the level's derivation on the reduced monomial basis of the
/// subalgebra below it, over the ring generated by `base`.
fn derivation_matrix(tower: &OreTower, level: usize, reducer: &Reducer, basis: &[Monomial]) -> Result<Matrix> {
    let index: BTreeMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let n = basis.len();
    let mut m = Matrix::zeros(&reducer.ring, n, n);
    for (col, e) in basis.iter().enumerate() {
        let image = tower.derive_terms(level, &single(e.clone(), Scalar::one(tower.domain())));
        for (mono, c) in reducer.reduce(&image, DivisionOrder::TopDown)? {
            let row = *index
                .get(&mono)
                .ok_or_else(|| Error::NotFreeOverBase(format!("{mono:?} outside the reduced basis")))?;
            m.set(row, col, c);
        }
    }
    Ok(m)
}

fn to_fraction(s: &Scalar, frac: &Domain) -> Result<Scalar> {
    let poly = s.as_poly().expect("polynomial entry").clone();
    let one = Poly::one(poly.base(), poly.nvars());
    Scalar::fraction(frac, poly, one)
}

/// Solve `sum a_i v_i = -target` over the fraction field and keep the
/// solution only when every `a_i` is a polynomial.
fn solve_in_base(columns: &[Vec<Scalar>], target: &[Scalar], ring: &Domain) -> Result<Option<Vec<Scalar>>> {
    let frac = ScalarDomain::fraction(ring)?;
    let rows: Vec<usize> = (0..target.len())
        .filter(|&r| !target[r].is_zero() || columns.iter().any(|c| !c[r].is_zero()))
        .collect();
    if columns.is_empty() {
        return Ok(rows.is_empty().then(Vec::new));
    }
    if rows.is_empty() {
        return Ok(Some(vec![Scalar::zero(ring); columns.len()]));
    }
    let mut entries = Vec::with_capacity(rows.len());
    let mut rhs = Vec::with_capacity(rows.len());
    for &r in &rows {
        entries.push(columns.iter().map(|c| to_fraction(&c[r], &frac)).collect::<Result<Vec<_>>>()?);
        rhs.push(-&to_fraction(&target[r], &frac)?);
    }
    let a = Matrix::from_rows(&frac, entries)?;
    let b = Matrix::column(&frac, rhs)?;
    let Some(sol) = solve_linear(&a, &b)? else {
        return Ok(None);
    };
    let mut out = Vec::new();
    for i in 0..columns.len() {
        let (num, den) = sol.particular.get(i, 0).as_fraction().expect("fraction entry");
        if !den.is_one() {
            return Ok(None);
        }
        out.push(Scalar::from_poly(ring, num.clone()));
    }
    Ok(Some(out))
}

/// Primary route: powers `M^(p^i)` and a denominator-free dependence.
pub fn p_polynomial_from_matrix(m: &Matrix, p: u64, k_max: u32) -> Result<PPolynomial> {
    let ring = m.domain().clone();
    let mut powers = vec![m.clone()];
    for k in 0..=k_max {
        if k > 0 {
            let next = powers[k as usize - 1].pow(p)?;
            powers.push(next);
        }
        let top = &powers[k as usize];
        if top.is_zero() {
            return Ok(PPolynomial {
                p,
                k,
                coefficients: vec![Scalar::zero(&ring); k as usize],
            });
        }
        let columns: Vec<Vec<Scalar>> = powers[..k as usize].iter().map(|x| x.entries().to_vec()).collect();
        if let Some(coefficients) = solve_in_base(&columns, top.entries(), &ring)? {
            return Ok(PPolynomial { p, k, coefficients });
        }
    }
    Err(Error::PPolynomialSearchExceeded(k_max))
}

/// Cross-check route: remainders of `z^(p^i)` modulo the characteristic polynomial.
pub fn p_polynomial_by_remainders(m: &Matrix, p: u64, k_max: u32) -> Result<PPolynomial> {
    let ring = m.domain().clone();
    let f = char_poly(m)?;
    let n = f.degree().unwrap_or(0);
    let mut rems = vec![UniPoly::monomial(&ring, 1).rem_monic(&f)];
    let as_vec = |u: &UniPoly| (0..n).map(|i| u.coeff(i)).collect::<Vec<_>>();
    for k in 0..=k_max {
        if k > 0 {
            let prev = rems[k as usize - 1].clone();
            let mut acc = UniPoly::monomial(&ring, 0);
            for _ in 0..p {
                acc = acc.mul(&prev).rem_monic(&f);
            }
            rems.push(acc);
        }
        let top = as_vec(&rems[k as usize]);
        let columns: Vec<Vec<Scalar>> = rems[..k as usize].iter().map(as_vec).collect();
        if let Some(coefficients) = solve_in_base(&columns, &top, &ring)? {
            return Ok(PPolynomial { p, k, coefficients });
        }
    }
    Err(Error::PPolynomialSearchExceeded(k_max))
}

/// `p`-polynomial annihilating the derivation of `level`, over the ring
/// generated by `base` (centrals of the subalgebra below `level`).
pub fn p_polynomial_for_derivation(
    tower: &Arc<OreTower>,
    level: usize,
    base: &[Central],
    k_max: u32,
) -> Result<(PPolynomial, bool)> {
    let p = prime_of(tower)?;
    let reducer = Reducer::new(tower, base, p)?;
    let basis = reducer.basis(level);
    let m = derivation_matrix(tower, level, &reducer, &basis)?;
    let g = p_polynomial_from_matrix(&m, p, k_max)?;
    check_operator(tower, level, &reducer, &basis, &g)?;
    let mut cross_checked = false;
    if basis.len() <= REMAINDER_CHECK_LIMIT {
        if let Ok(h) = p_polynomial_by_remainders(&m, p, k_max) {
            if !h.eval_matrix(&m)?.is_zero() || !g.eval_matrix(&m)?.is_zero() {
                return Err(Error::ReductionMismatch(format!(
                    "p-polynomials {g} and {h} disagree on the derivation matrix"
                )));
            }
            cross_checked = true;
        }
    }
    Ok((g, cross_checked))
}

/// Apply `g(d)` to every reduced basis monomial inside the tower.
fn check_operator(tower: &OreTower, level: usize, reducer: &Reducer, basis: &[Monomial], g: &PPolynomial) -> Result<()> {
    let fp = tower.domain();
    let coeffs: Vec<Terms> = g.coefficients.iter().map(|c| reducer.evaluate(c)).collect();
    for e in basis {
        let mut iterate = single(e.clone(), Scalar::one(fp));
        let mut total = Terms::new();
        let mut steps = 0u64;
        for i in 0..=g.k {
            let target = g.p.pow(i);
            while steps < target {
                iterate = tower.derive_terms(level, &iterate);
                steps += 1;
            }
            let term = if i == g.k {
                iterate.clone()
            } else {
                tower.mul_terms(&coeffs[i as usize], &iterate)
            };
            for (m, c) in term {
                add_term(&mut total, m, c);
            }
        }
        if !total.is_empty() {
            return Err(Error::ReductionMismatch(format!("g(d) does not vanish on {e:?}")));
        }
    }
    Ok(())
}

/// Centrals for the variables below `level`.
fn tower_prefix(tower: &Arc<OreTower>, level: usize, k_max: u32) -> Result<(Vec<Central>, Vec<LevelContribution>)> {
    let p = prime_of(tower)?;
    let fp = tower.domain();
    let n = tower.nvars();
    let mut centrals: Vec<Central> = Vec::new();
    let mut levels: Vec<LevelContribution> = Vec::new();
    for i in 0..level {
        let name = tower.vars()[i].clone();
        if tower.derivation_is_zero(i) {
            centrals.push(Central {
                var: i,
                element: OreElement::var(tower, i),
                exponent: 0,
            });
            levels.push(LevelContribution {
                var: name,
                kind: LevelKind::Generator,
                own_exponent: 0,
                final_exponent: 0,
                p_polynomial: None,
                cross_checked: false,
            });
            continue;
        }
        centrals = raise(tower, &centrals, p, i)?;
        let (g, cross_checked) = p_polynomial_for_derivation(tower, i, &centrals, k_max)?;
        let reducer = Reducer::new(tower, &centrals, p)?;
        let mut top = Monomial::one(n);
        top.0[i] = p.pow(g.k) as u32;
        let mut theta = single(top, Scalar::one(fp));
        for (j, c) in g.coefficients.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut xm = Monomial::one(n);
            xm.0[i] = p.pow(j as u32) as u32;
            for (mm, v) in tower.mul_terms(&reducer.evaluate(c), &single(xm, Scalar::one(fp))) {
                add_term(&mut theta, mm, v);
            }
        }
        if !commutes_below(tower, &theta, i + 1) {
            return Err(Error::CentralityFailed(format!(
                "{}",
                OreElement::from_terms(tower, theta)
            )));
        }
        centrals.push(Central {
            var: i,
            element: OreElement::from_terms(tower, theta),
            exponent: g.k,
        });
        levels.push(LevelContribution {
            var: name,
            kind: LevelKind::Theta,
            own_exponent: g.k,
            final_exponent: g.k,
            p_polynomial: Some(g),
            cross_checked,
        });
    }
    for (l, c) in levels.iter_mut().zip(&centrals) {
        l.final_exponent = c.exponent;
    }
    Ok((centrals, levels))
}

/// Central polynomial subring of the whole tower, each element re-verified central.
pub fn central_tower(tower: &Arc<OreTower>, k_max: u32) -> Result<CentralSubringData> {
    let p = prime_of(tower)?;
    let (centrals, levels) = tower_prefix(tower, tower.nvars(), k_max)?;
    for c in &centrals {
        if !commutes_below(tower, c.element.term_map(), tower.nvars()) {
            return Err(Error::CentralityFailed(c.element.to_string()));
        }
    }
    Ok(CentralSubringData {
        p,
        tower: tower.clone(),
        centrals,
        levels,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreenessReport {
    pub p: u64,
    pub s: u32,
    pub degree_bound: u32,
    pub monomials_checked: usize,
}

impl FreenessReport {
    pub fn rank(&self) -> u128 {
        (self.p as u128).pow(self.s)
    }
}

/// Reduce every monomial of degree at most `degree_bound` along two division
/// orders, require identical results, and rebuild the monomial from its
/// reduction.
pub fn verify_freeness_rank(data: &CentralSubringData, degree_bound: u32) -> Result<FreenessReport> {
    let tower = &data.tower;
    let p = data.p;
    let reducer = Reducer::new(tower, &data.centrals, p)?;
    let basis = reducer.basis(tower.nvars());
    let fp = tower.domain();
    let monos = monomials_up_to(tower.nvars(), degree_bound);
    for m in &monos {
        let u = single(m.clone(), Scalar::one(fp));
        let top = reducer.reduce(&u, DivisionOrder::TopDown)?;
        let bottom = reducer.reduce(&u, DivisionOrder::BottomUp)?;
        if top != bottom {
            return Err(Error::ReductionMismatch(format!("division orders disagree on {m:?}")));
        }
        if top.keys().any(|k| basis.binary_search(k).is_err()) {
            return Err(Error::NotFreeOverBase(format!("{m:?} reduces outside the basis")));
        }
        if reducer.reconstruct(&top) != u {
            return Err(Error::ReductionMismatch(format!("reduction of {m:?} does not rebuild it")));
        }
    }
    let s = data.rank_exponent();
    if basis.len() as u128 != (p as u128).pow(s) {
        return Err(Error::NotFreeOverBase(format!("basis has {} elements, expected {p}^{s}", basis.len())));
    }
    Ok(FreenessReport {
        p,
        s,
        degree_bound,
        monomials_checked: monos.len(),
    })
}
