//! Hopf module-algebra actions on Ore towers.
//!
//! An action is fixed by the images `b_i . x_j`; it is extended to normal-form
//! monomials by `h . (u x_t) = sum (h_(1) . u)(h_(2) . x_t)`, splitting off the
//! right-most variable.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::hopf::{hopf_ideal_from_subspace, project_tensor_pair, quotient_by_hopf_ideal, HopfData, HopfIdealData, Vector};
use crate::json::{field, field_str, perr};
use crate::ore::{add_term, monomials_up_to, OreElement, OreTower, Terms};
use crate::scalar::{determinant, nullspace, Domain, Matrix, Monomial, Scalar, ScalarDomain};
use crate::subspace::Subspace;

/// Largest bound tried by certificate searches.
pub const DEFAULT_MAX_DEGREE: u32 = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionSpec {
    hopf: HopfData,
    tower: Arc<OreTower>,
    /// `images[i][j] = b_i . x_j`.
    images: Vec<Vec<OreElement>>,
}

impl ActionSpec {
    pub fn new(hopf: HopfData, tower: Arc<OreTower>, images: Vec<Vec<OreElement>>) -> Result<ActionSpec> {
        if hopf.domain() != tower.domain() {
            return Err(Error::DomainMismatch(hopf.domain().to_string(), tower.domain().to_string()));
        }
        if images.len() != hopf.dim() || images.iter().any(|r| r.len() != tower.nvars()) {
            return Err(Error::DimensionMismatch(format!(
                "need {} x {} action images",
                hopf.dim(),
                tower.nvars()
            )));
        }
        if images.iter().flatten().any(|e| e.tower() != &tower) {
            return Err(Error::TowerMismatch);
        }
        Ok(ActionSpec { hopf, tower, images })
    }

    /// Images given as `(basis label, variable, element)`; anything omitted
    /// defaults to `eps(b_i) x_j`.
    pub fn from_strings(hopf: HopfData, tower: Arc<OreTower>, entries: &[(&str, &str, &str)]) -> Result<ActionSpec> {
        let mut images = default_images(&hopf, &tower);
        for (b, x, e) in entries {
            let i = hopf
                .basis_index(b)
                .ok_or_else(|| Error::InvalidDomain(format!("no basis element `{b}`")))?;
            let j = tower.var_index(x)?;
            images[i][j] = OreElement::parse(&tower, e)?;
        }
        ActionSpec::new(hopf, tower, images)
    }

    /// Every basis element acts by its counit value.
    pub fn trivial(hopf: HopfData, tower: Arc<OreTower>) -> Result<ActionSpec> {
        let images = default_images(&hopf, &tower);
        ActionSpec::new(hopf, tower, images)
    }

    pub fn hopf(&self) -> &HopfData {
        &self.hopf
    }

    pub fn tower(&self) -> &Arc<OreTower> {
        &self.tower
    }

    pub fn domain(&self) -> &Domain {
        self.hopf.domain()
    }

    pub fn image(&self, basis: usize, var: usize) -> &OreElement {
        &self.images[basis][var]
    }

    /// Coefficients of the action images.
    pub fn image_coefficients(&self) -> Vec<Scalar> {
        self.images
            .iter()
            .flatten()
            .flat_map(|e| e.terms().map(|(_, c)| c.clone()).collect::<Vec<_>>())
            .collect()
    }

    /// Action of `H / I` through the complement representatives of `I`.
    pub fn quotient(&self, ideal: &HopfIdealData) -> Result<ActionSpec> {
        let hopf = quotient_by_hopf_ideal(&self.hopf, ideal)?;
        let images = ideal.space.complement().into_iter().map(|c| self.images[c].clone()).collect();
        ActionSpec::new(hopf, self.tower.clone(), images)
    }

    /// Same data pushed through a coefficient map into `target`.
    pub fn map_coefficients(&self, target: &Domain, f: impl Fn(&Scalar) -> Result<Scalar> + Copy) -> Result<ActionSpec> {
        let hopf = self.hopf.map_scalars(target, f)?;
        let tower = self.tower.map_coefficients(target, f)?.into_arc();
        let images = self
            .images
            .iter()
            .map(|row| row.iter().map(|e| e.map_into(&tower, f)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        ActionSpec::new(hopf, tower, images)
    }

    pub fn to_json(&self) -> Value {
        let mut action = serde_json::Map::new();
        for (i, row) in self.images.iter().enumerate() {
            let mut inner = serde_json::Map::new();
            for (j, e) in row.iter().enumerate() {
                inner.insert(self.tower.vars()[j].clone(), Value::String(e.to_string()));
            }
            action.insert(self.hopf.basis()[i].clone(), Value::Object(inner));
        }
        json!({
            "hopf": self.hopf.to_json(),
            "tower": self.tower.to_json(),
            "action": action,
        })
    }

    pub fn from_json(v: &Value) -> Result<ActionSpec> {
        let tower = OreTower::from_json(field(v, "$", "tower")?, "$.tower")?.into_arc();
        let hopf = HopfData::from_json(field(v, "$", "hopf")?, "$.hopf", tower.domain())?;
        if hopf.domain() != tower.domain() {
            return Err(perr("$.hopf.field", "Hopf algebra and tower use different coefficient fields"));
        }
        let mut images = default_images(&hopf, &tower);
        if let Some(a) = v.get("action") {
            let obj = a.as_object().ok_or_else(|| perr("$.action", "expected an object"))?;
            for (b, row) in obj {
                let p = format!("$.action.{b}");
                let i = hopf.basis_index(b).ok_or_else(|| perr(&p, "unknown basis element"))?;
                let row = row.as_object().ok_or_else(|| perr(&p, "expected an object"))?;
                for (x, e) in row {
                    let pp = format!("{p}.{x}");
                    let j = tower.var_index(x).map_err(|err| perr(&pp, &err.to_string()))?;
                    images[i][j] =
                        OreElement::parse(&tower, field_str(e, &pp)?).map_err(|err| perr(&pp, &err.to_string()))?;
                }
            }
        }
        ActionSpec::new(hopf, tower, images).map_err(|e| perr("$", &e.to_string()))
    }
}

fn default_images(hopf: &HopfData, tower: &Arc<OreTower>) -> Vec<Vec<OreElement>> {
    (0..hopf.dim())
        .map(|i| {
            (0..tower.nvars())
                .map(|j| OreElement::var(tower, j).scale(&hopf.counit()[i]))
                .collect()
        })
        .collect()
}

/// Memoised evaluation of basis elements on normal-form monomials.
pub struct Evaluator<'a> {
    spec: &'a ActionSpec,
    cache: HashMap<(usize, Monomial), Terms>,
}

impl<'a> Evaluator<'a> {
    pub fn new(spec: &'a ActionSpec) -> Evaluator<'a> {
        Evaluator {
            spec,
            cache: HashMap::new(),
        }
    }

    fn on_monomial(&mut self, i: usize, m: &Monomial) -> Result<Terms> {
        if let Some(t) = self.cache.get(&(i, m.clone())) {
            return Ok(t.clone());
        }
        let spec = self.spec;
        let tower = &spec.tower;
        let out = match (0..tower.nvars()).rev().find(|&v| m.0[v] > 0) {
            None => {
                let mut t = Terms::new();
                add_term(&mut t, m.clone(), spec.hopf.counit()[i].clone());
                t
            }
            Some(top) if m.degree() == 1 => spec.images[i][top].term_map().clone(),
            Some(top) => {
                let mut rest = m.clone();
                rest.0[top] -= 1;
                let d = spec.hopf.dim();
                let mut out = Terms::new();
                for a in 0..d {
                    let mut left: Option<Terms> = None;
                    for b in 0..d {
                        let c = spec.hopf.comult(i, a, b);
                        if c.is_zero() {
                            continue;
                        }
                        if left.is_none() {
                            left = Some(self.on_monomial(a, &rest)?);
                        }
                        let prod = tower.mul_terms(left.as_ref().unwrap(), spec.images[b][top].term_map());
                        for (mm, v) in prod {
                            add_term(&mut out, mm, c * &v);
                        }
                    }
                }
                out
            }
        };
        let degree = out.keys().map(Monomial::degree).max().unwrap_or(0);
        let bound = tower.degree_bound();
        if degree > bound {
            return Err(Error::DegreeBoundExceeded { degree, bound });
        }
        self.cache.insert((i, m.clone()), out.clone());
        Ok(out)
    }

    /// `b_i . a`.
    pub fn act_basis(&mut self, i: usize, a: &OreElement) -> Result<OreElement> {
        let mut out = Terms::new();
        for (m, c) in a.term_map() {
            for (mm, v) in self.on_monomial(i, m)? {
                add_term(&mut out, mm, c * &v);
            }
        }
        Ok(OreElement::from_terms(&self.spec.tower, out))
    }

    /// `h . a` for a coefficient vector `h`.
    pub fn act(&mut self, h: &[Scalar], a: &OreElement) -> Result<OreElement> {
        let mut out = Terms::new();
        for (i, hi) in h.iter().enumerate() {
            if hi.is_zero() {
                continue;
            }
            for (m, c) in a.term_map() {
                let coef = hi * c;
                for (mm, v) in self.on_monomial(i, m)? {
                    add_term(&mut out, mm, &coef * &v);
                }
            }
        }
        Ok(OreElement::from_terms(&self.spec.tower, out))
    }

    fn on_monomial_element(&mut self, i: usize, m: &Monomial) -> Result<OreElement> {
        Ok(OreElement::from_terms(&self.spec.tower, self.on_monomial(i, m)?))
    }
}

/// `h . a`.
pub fn act(spec: &ActionSpec, h: &[Scalar], a: &OreElement) -> Result<OreElement> {
    Evaluator::new(spec).act(h, a)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ModuleCheck {
    UnitIdentity,
    Associativity,
    Multiplicativity,
    Relation,
}

impl ModuleCheck {
    pub fn id(self) -> &'static str {
        match self {
            ModuleCheck::UnitIdentity => "module-algebra:unit",
            ModuleCheck::Associativity => "module-algebra:associativity",
            ModuleCheck::Multiplicativity => "module-algebra:multiplicativity",
            ModuleCheck::Relation => "module-algebra:relation",
        }
    }
}

impl fmt::Display for ModuleCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModuleCheck::UnitIdentity => "unit acts as identity",
            ModuleCheck::Associativity => "module associativity",
            ModuleCheck::Multiplicativity => "multiplicativity",
            ModuleCheck::Relation => "tower relation compatibility",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleFailure {
    pub check: ModuleCheck,
    pub detail: String,
}

impl fmt::Display for ModuleFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.check, self.detail)
    }
}

/// Module-algebra checks on monomials of degree at most `degree_bound`.
pub fn validate_module_algebra(spec: &ActionSpec, degree_bound: u32) -> Result<Vec<ModuleFailure>> {
    let mut ev = Evaluator::new(spec);
    let mut failures = Vec::new();
    let h = &spec.hopf;
    let d = h.dim();
    let tower = &spec.tower;
    let n = tower.nvars();
    let monos = monomials_up_to(n, degree_bound);
    let name = |i: usize| h.basis()[i].clone();

    for m in &monos {
        let e = OreElement::from_terms(tower, single(m, tower.domain()));
        if ev.act(h.unit(), &e)? != e {
            failures.push(ModuleFailure {
                check: ModuleCheck::UnitIdentity,
                detail: format!("1 . {e} != {e}"),
            });
        }
    }

    for i in 0..d {
        for j in 0..d {
            let prod = h.multiply(&h.basis_vector(i), &h.basis_vector(j));
            for m in &monos {
                let inner = ev.on_monomial_element(j, m)?;
                let lhs = ev.act_basis(i, &inner)?;
                let e = OreElement::from_terms(tower, single(m, tower.domain()));
                let rhs = ev.act(&prod, &e)?;
                if lhs != rhs {
                    failures.push(ModuleFailure {
                        check: ModuleCheck::Associativity,
                        detail: format!("{} . ({} . {e}) = {lhs} but ({} {}) . {e} = {rhs}", name(i), name(j), name(i), name(j)),
                    });
                }
            }
        }
    }

    let small: Vec<&Monomial> = monos.iter().filter(|m| m.degree() >= 1 && m.degree() < degree_bound.min(4)).collect();
    for u in &small {
        for v in &small {
            if u.degree() + v.degree() > degree_bound.min(4) {
                continue;
            }
            let ue = OreElement::from_terms(tower, single(u, tower.domain()));
            let ve = OreElement::from_terms(tower, single(v, tower.domain()));
            let uv = OreElement::from_terms(tower, tower.mul_terms(ue.term_map(), ve.term_map()));
            for i in 0..d {
                let lhs = ev.act_basis(i, &uv)?;
                let rhs = coproduct_product(&mut ev, i, &ue, &ve)?;
                if lhs != rhs {
                    failures.push(ModuleFailure {
                        check: ModuleCheck::Multiplicativity,
                        detail: format!("{} . (({ue}) ({ve})) = {lhs} but the coproduct gives {rhs}", name(i)),
                    });
                }
            }
        }
    }

    for k in 0..n {
        for j in 0..k {
            let xk = OreElement::var(tower, k);
            let xj = OreElement::var(tower, j);
            let dk = tower.derivation_image(k, j);
            for i in 0..d {
                let lhs = coproduct_product(&mut ev, i, &xk, &xj)?.sub(&coproduct_product(&mut ev, i, &xj, &xk)?)?;
                let rhs = ev.act_basis(i, &dk)?;
                if lhs != rhs {
                    failures.push(ModuleFailure {
                        check: ModuleCheck::Relation,
                        detail: format!(
                            "{b} . [{xk}, {xj}] expands to {lhs} but {b} . ({dk}) = {rhs}",
                            b = name(i)
                        ),
                    });
                }
            }
        }
    }
    Ok(failures)
}

fn single(m: &Monomial, domain: &Domain) -> Terms {
    let mut t = Terms::new();
    t.insert(m.clone(), Scalar::one(domain));
    t
}

/// `sum (b_i(1) . u)(b_i(2) . v)`.
fn coproduct_product(ev: &mut Evaluator, i: usize, u: &OreElement, v: &OreElement) -> Result<OreElement> {
    let spec = ev.spec;
    let d = spec.hopf.dim();
    let mut out = OreElement::zero(&spec.tower);
    for a in 0..d {
        for b in 0..d {
            let c = spec.hopf.comult(i, a, b);
            if c.is_zero() {
                continue;
            }
            let l = ev.act_basis(a, u)?;
            let r = ev.act_basis(b, v)?;
            let prod = OreElement::from_terms(&spec.tower, spec.tower.mul_terms(l.term_map(), r.term_map()));
            out = out.add(&prod.scale(c))?;
        }
    }
    Ok(out)
}

/// `K_1` at the given bound: elements of `H` killing every monomial of degree at most `degree_bound`.
fn first_annihilator(spec: &ActionSpec, degree_bound: u32) -> Result<Subspace> {
    let mut ev = Evaluator::new(spec);
    let d = spec.hopf.dim();
    let mut rows: BTreeMap<(Monomial, Monomial), Vec<Scalar>> = BTreeMap::new();
    let zero = Scalar::zero(spec.domain());
    for w in monomials_up_to(spec.tower.nvars(), degree_bound) {
        for i in 0..d {
            for (mu, c) in ev.on_monomial(i, &w)? {
                rows.entry((w.clone(), mu)).or_insert_with(|| vec![zero.clone(); d])[i] = c;
            }
        }
    }
    let rows: Vec<Vec<Scalar>> = rows.into_values().collect();
    let m = Matrix::from_fn(spec.domain(), rows.len(), d, |r, c| rows[r][c].clone());
    Ok(Subspace::span(spec.domain(), d, &nullspace(&m)?))
}

/// Elements `h` whose coproduct vanishes in `(H/L) (x) (H/R)`: the
/// annihilator of `M (x) N` when `L` and `R` annihilate `M` and `N`.
fn tensor_annihilator(h: &HopfData, left: &Subspace, right: &Subspace) -> Result<Subspace> {
    let d = h.dim();
    let columns: Vec<Vector> = (0..d)
        .map(|i| project_tensor_pair(left, right, &h.coproduct(&h.basis_vector(i)), d))
        .collect();
    let rows = columns.first().map(Vec::len).unwrap_or(0);
    if rows == 0 {
        return Ok(Subspace::full(h.domain(), d));
    }
    let m = Matrix::from_fn(h.domain(), rows, d, |r, c| columns[c][r].clone());
    Ok(Subspace::span(h.domain(), d, &nullspace(&m)?))
}

/// `K_m = Ann_H(A^(x)m)` on pure tensors of monomials of degree at most `degree_bound`.
pub fn annihilator_of_tensor_power(spec: &ActionSpec, m: usize, degree_bound: u32) -> Result<Subspace> {
    let k1 = first_annihilator(spec, degree_bound)?;
    let mut k = k1.clone();
    for _ in 1..m {
        k = tensor_annihilator(&spec.hopf, &k, &k1)?;
    }
    Ok(k)
}

/// Direct evaluation on every pure tensor of two monomials; used as a
/// cross-check of the factorised computation.
pub fn annihilator_by_enumeration(spec: &ActionSpec, m: usize, degree_bound: u32) -> Result<Subspace> {
    let d = spec.hopf.dim();
    let monos = monomials_up_to(spec.tower.nvars(), degree_bound);
    let mut ev = Evaluator::new(spec);
    let zero = Scalar::zero(spec.domain());
    let mut rows: BTreeMap<Vec<Monomial>, Vec<Scalar>> = BTreeMap::new();
    let mut tuples: Vec<Vec<Monomial>> = vec![Vec::new()];
    for _ in 0..m {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                monos.iter().map(move |w| {
                    let mut t = t.clone();
                    t.push(w.clone());
                    t
                })
            })
            .collect();
    }
    for (n, ws) in tuples.iter().enumerate() {
        for i in 0..d {
            for (mus, c) in tensor_action(&mut ev, i, ws)? {
                let mut key = vec![Monomial(vec![n as u32])];
                key.extend(mus);
                rows.entry(key).or_insert_with(|| vec![zero.clone(); d])[i] = c;
            }
        }
    }
    let rows: Vec<Vec<Scalar>> = rows.into_values().collect();
    let mat = Matrix::from_fn(spec.domain(), rows.len(), d, |r, c| rows[r][c].clone());
    Ok(Subspace::span(spec.domain(), d, &nullspace(&mat)?))
}

/// Iterated coproduct of `b_i` as a map from index tuples to coefficients.
fn iterated_coproduct(h: &HopfData, i: usize, m: usize) -> BTreeMap<Vec<usize>, Scalar> {
    let mut acc: BTreeMap<Vec<usize>, Scalar> = BTreeMap::new();
    acc.insert(vec![i], Scalar::one(h.domain()));
    for _ in 1..m {
        let mut next: BTreeMap<Vec<usize>, Scalar> = BTreeMap::new();
        for (idx, c) in acc {
            let last = *idx.last().unwrap();
            for a in 0..h.dim() {
                for b in 0..h.dim() {
                    let e = h.comult(last, a, b);
                    if e.is_zero() {
                        continue;
                    }
                    let mut key = idx[..idx.len() - 1].to_vec();
                    key.push(a);
                    key.push(b);
                    let v = &c * e;
                    let slot = next.entry(key).or_insert_with(|| Scalar::zero(h.domain()));
                    *slot = &*slot + &v;
                }
            }
        }
        next.retain(|_, v| !v.is_zero());
        acc = next;
    }
    acc
}

/// `b_i . (w_1 (x) ... (x) w_m)` as coefficients of pure tensors of monomials.
fn tensor_action(ev: &mut Evaluator, i: usize, ws: &[Monomial]) -> Result<BTreeMap<Vec<Monomial>, Scalar>> {
    let h = &ev.spec.hopf;
    let mut out: BTreeMap<Vec<Monomial>, Scalar> = BTreeMap::new();
    for (idx, c) in iterated_coproduct(h, i, ws.len()) {
        let mut partial: BTreeMap<Vec<Monomial>, Scalar> = BTreeMap::new();
        partial.insert(Vec::new(), c);
        for (a, w) in idx.iter().zip(ws) {
            let img = ev.on_monomial(*a, w)?;
            let mut next = BTreeMap::new();
            for (key, v) in &partial {
                for (mu, x) in &img {
                    let mut k = key.clone();
                    k.push(mu.clone());
                    next.insert(k, v * x);
                }
            }
            partial = next;
        }
        for (k, v) in partial {
            let slot = out.entry(k).or_insert_with(|| Scalar::zero(h.domain()));
            *slot = &*slot + &v;
        }
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnihilatorChain {
    pub degree_bound: u32,
    /// `terms[m - 1]` is `K_m`.
    pub terms: Vec<Subspace>,
    /// First `n` with `K_n = K_2n`.
    pub stabilization_index: usize,
    /// `K_2n` at the same bound.
    pub doubled: Subspace,
}

impl AnnihilatorChain {
    pub fn stable(&self) -> &Subspace {
        &self.terms[self.stabilization_index - 1]
    }
}

fn annihilator_chain(spec: &ActionSpec, degree_bound: u32) -> Result<AnnihilatorChain> {
    let h = &spec.hopf;
    let k1 = first_annihilator(spec, degree_bound)?;
    let mut terms = vec![k1.clone()];
    for m in 1..=h.dim() + 1 {
        let km = terms[m - 1].clone();
        let doubled = tensor_annihilator(h, &km, &km)?;
        if doubled == km {
            return Ok(AnnihilatorChain {
                degree_bound,
                terms,
                stabilization_index: m,
                doubled,
            });
        }
        terms.push(tensor_annihilator(h, &km, &k1)?);
    }
    Err(Error::StabilizationNotReached(h.dim() + 1))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalResult {
    /// Chain at the bound where stabilisation was accepted.
    pub chain: AnnihilatorChain,
    /// Bound at which the stable value was first observed.
    pub initial_bound: u32,
    pub ideal: HopfIdealData,
    pub quotient: HopfData,
}

impl RadicalResult {
    pub fn is_inner_faithful(&self) -> bool {
        self.ideal.dim() == 0
    }
}

/// Stabilise the annihilator chain, confirm at `bound + 2`, and check that
/// the result is a Hopf ideal.
pub fn inner_faithful_radical(spec: &ActionSpec, degree_bound: u32) -> Result<RadicalResult> {
    let mut bound = degree_bound;
    let mut chain = annihilator_chain(spec, bound)?;
    let mut confirmed = false;
    for _ in 0..3 {
        let larger = annihilator_chain(spec, bound + 2)?;
        let same = larger.stabilization_index == chain.stabilization_index && larger.stable() == chain.stable();
        bound += 2;
        chain = larger;
        if same {
            confirmed = true;
            break;
        }
    }
    if !confirmed {
        return Err(Error::StabilizationNotReached(chain.stabilization_index));
    }
    let ideal = hopf_ideal_from_subspace(&spec.hopf, chain.stable().clone());
    let quotient = quotient_by_hopf_ideal(&spec.hopf, &ideal)?;
    Ok(RadicalResult {
        chain,
        initial_bound: degree_bound,
        ideal,
        quotient,
    })
}

/// Coefficient extraction at a pure tensor of monomials, applied to the
/// image of the `vector`-th certificate vector and scaled by `weight`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Functional {
    pub vector: usize,
    pub monomial: Vec<Monomial>,
    pub weight: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub tensor_power: usize,
    pub degree_bound: u32,
    /// Pure tensors of normal-form monomials.
    pub vectors: Vec<Vec<Monomial>>,
    pub functionals: Vec<Functional>,
    /// Entry `(i, j)` is functional `j` applied to `b_i . w`.
    pub matrix: Matrix,
    pub determinant: Scalar,
}

impl Certificate {
    pub fn to_json(&self, vars: &[String]) -> Value {
        let mono = |m: &Monomial| {
            let s = crate::scalar::format_terms(std::iter::once((m.0.as_slice(), &Scalar::one(self.determinant.domain()))), vars);
            Value::String(s)
        };
        let tensor = |t: &[Monomial]| Value::Array(t.iter().map(mono).collect());
        json!({
            "tensor_power": self.tensor_power,
            "degree_bound": self.degree_bound,
            "vectors": self.vectors.iter().map(|w| tensor(w)).collect::<Vec<_>>(),
            "functionals": self.functionals.iter().map(|f| json!({
                "vector": f.vector,
                "monomial": tensor(&f.monomial),
                "weight": f.weight.to_string(),
            })).collect::<Vec<_>>(),
            "matrix": (0..self.matrix.rows())
                .map(|i| self.matrix.row(i).iter().map(ToString::to_string).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            "determinant": self.determinant.to_string(),
        })
    }
}

fn tuples_of(monos: &[Monomial], m: usize) -> Vec<Vec<Monomial>> {
    let mut tuples: Vec<Vec<Monomial>> = vec![Vec::new()];
    for _ in 0..m {
        let mut next = Vec::new();
        for t in &tuples {
            for w in monos {
                let mut t = t.clone();
                t.push(w.clone());
                next.push(t);
            }
        }
        tuples = next;
    }
    tuples
}

/// Pick `dim H` independent evaluation columns on pure tensors of `m`
/// monomials of degree at most `degree_bound`.
pub fn faithfulness_certificate(spec: &ActionSpec, m: usize, degree_bound: u32) -> Result<Certificate> {
    let h = &spec.hopf;
    let d = h.dim();
    let mut ev = Evaluator::new(spec);
    let monos = monomials_up_to(spec.tower.nvars(), degree_bound);
    let zero = Scalar::zero(spec.domain());
    let mut span = Subspace::zero(spec.domain(), d);
    let mut vectors: Vec<Vec<Monomial>> = Vec::new();
    let mut chosen: Vec<(usize, Vec<Monomial>, Vector)> = Vec::new();
    'outer: for ws in tuples_of(&monos, m) {
        let mut cols: BTreeMap<Vec<Monomial>, Vector> = BTreeMap::new();
        for i in 0..d {
            for (mus, c) in tensor_action(&mut ev, i, &ws)? {
                cols.entry(mus).or_insert_with(|| vec![zero.clone(); d])[i] = c;
            }
        }
        let mut used = false;
        for (mus, col) in cols {
            if span.insert(&col) {
                if !used {
                    vectors.push(ws.clone());
                    used = true;
                }
                chosen.push((vectors.len() - 1, mus, col));
                if span.dim() == d {
                    break 'outer;
                }
            }
        }
    }
    if span.dim() < d {
        return Err(Error::NotFaithfulAtBound {
            rank: span.dim(),
            dim: d,
            degree: degree_bound,
        });
    }
    let functionals: Vec<Functional> = chosen
        .iter()
        .map(|(k, mus, col)| Functional {
            vector: *k,
            monomial: mus.clone(),
            weight: clearing_weight(spec.domain(), col),
        })
        .collect();
    let matrix = Matrix::from_fn(spec.domain(), d, d, |i, j| &chosen[j].2[i] * &functionals[j].weight);
    let det = determinant(&matrix)?;
    Ok(Certificate {
        tensor_power: m,
        degree_bound,
        vectors,
        functionals,
        matrix,
        determinant: det,
    })
}

/// Smallest positive integer making a rational column integral; one elsewhere.
fn clearing_weight(domain: &Domain, col: &[Scalar]) -> Scalar {
    if !matches!(**domain, ScalarDomain::Rational) {
        return Scalar::one(domain);
    }
    let l = col
        .iter()
        .filter_map(Scalar::as_rational)
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    Scalar::from_bigint(domain, &l)
}

/// Recompute the certificate matrix from scratch and return its determinant.
pub fn recompute_certificate(spec: &ActionSpec, cert: &Certificate) -> Result<Scalar> {
    let d = spec.hopf.dim();
    let mut ev = Evaluator::new(spec);
    let zero = Scalar::zero(spec.domain());
    let mut images: Vec<Vec<BTreeMap<Vec<Monomial>, Scalar>>> = Vec::new();
    for w in &cert.vectors {
        images.push((0..d).map(|i| tensor_action(&mut ev, i, w)).collect::<Result<_>>()?);
    }
    let matrix = Matrix::from_fn(spec.domain(), d, d, |i, j| {
        let f = &cert.functionals[j];
        let c = images[f.vector][i].get(&f.monomial).cloned().unwrap_or_else(|| zero.clone());
        &c * &f.weight
    });
    determinant(&matrix)
}

/// Search bounds `0..=max_degree` for a certificate.
pub fn certificate_search(spec: &ActionSpec, m: usize, max_degree: u32) -> Result<Certificate> {
    let mut last = None;
    for bound in 0..=max_degree {
        match faithfulness_certificate(spec, m, bound) {
            Ok(c) => return Ok(c),
            Err(e @ Error::NotFaithfulAtBound { .. }) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.expect("at least one bound tried"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Domain {
        ScalarDomain::rational()
    }

    fn weyl() -> Arc<OreTower> {
        OreTower::new(&q(), &["y", "x"])
            .unwrap()
            .with_derivation("x", "y", "1")
            .unwrap()
            .into_arc()
    }

    fn sign() -> ActionSpec {
        ActionSpec::from_strings(HopfData::cyclic(&q(), 2).unwrap(), weyl(), &[("g", "x", "-x"), ("g", "y", "-y")]).unwrap()
    }

    fn el(t: &Arc<OreTower>, s: &str) -> OreElement {
        OreElement::parse(t, s).unwrap()
    }

    fn s(x: &str) -> Scalar {
        Scalar::parse(&q(), x).unwrap()
    }

    #[test]
    fn sign_action_values() {
        let a = sign();
        let t = a.tower().clone();
        let g = vec![s("0"), s("1")];
        assert_eq!(act(&a, &g, &el(&t, "x*y")).unwrap(), el(&t, "x*y"));
        let integral = vec![s("1/2"), s("1/2")];
        assert!(act(&a, &integral, &el(&t, "x")).unwrap().is_zero());
        let one = vec![s("1"), s("0")];
        assert_eq!(act(&a, &one, &el(&t, "y^2*x + 3")).unwrap(), el(&t, "y^2*x + 3"));
    }

    #[test]
    fn module_algebra_checks() {
        assert!(validate_module_algebra(&sign(), 3).unwrap().is_empty());
        let bad = ActionSpec::from_strings(HopfData::cyclic(&q(), 2).unwrap(), weyl(), &[("g", "x", "-x")]).unwrap();
        let failures = validate_module_algebra(&bad, 3).unwrap();
        assert!(failures.iter().any(|f| f.check == ModuleCheck::Relation));
        let trivial = ActionSpec::trivial(HopfData::cyclic(&q(), 2).unwrap(), weyl()).unwrap();
        assert!(validate_module_algebra(&trivial, 3).unwrap().is_empty());
    }

    #[test]
    fn annihilators() {
        assert!(annihilator_of_tensor_power(&sign(), 1, 1).unwrap().is_zero());
        let trivial = ActionSpec::trivial(HopfData::cyclic(&q(), 2).unwrap(), weyl()).unwrap();
        let k1 = annihilator_of_tensor_power(&trivial, 1, 2).unwrap();
        assert_eq!(k1, Subspace::span(&q(), 2, &[vec![s("-1"), s("1")]]));
        let r = inner_faithful_radical(&trivial, 2).unwrap();
        assert_eq!(r.quotient.dim(), 1);
        for m in 1..=2 {
            assert_eq!(
                annihilator_of_tensor_power(&trivial, m, 1).unwrap(),
                annihilator_by_enumeration(&trivial, m, 1).unwrap()
            );
        }
    }

    #[test]
    fn sign_certificate() {
        let a = sign();
        let c = faithfulness_certificate(&a, 1, 1).unwrap();
        assert_eq!(c.determinant, s("-2"));
        assert_eq!(recompute_certificate(&a, &c).unwrap(), c.determinant);
        let trivial = ActionSpec::trivial(HopfData::cyclic(&q(), 2).unwrap(), weyl()).unwrap();
        assert!(matches!(
            faithfulness_certificate(&trivial, 1, 3),
            Err(Error::NotFaithfulAtBound { rank: 1, dim: 2, .. })
        ));
    }

    #[test]
    fn json_round_trip() {
        let a = sign();
        let back = ActionSpec::from_json(&a.to_json()).unwrap();
        assert_eq!(back, a);
    }
}
