//! Finite-dimensional Hopf algebras given by structure-constant tables.
//!
//! With basis `b_0, ..., b_(d-1)`:
//! `b_i b_j = sum_k mult(i, j, k) b_k`,
//! `Delta(b_k) = sum_(i,j) comult(k, i, j) b_i (x) b_j`,
//! `S(b_i) = sum_j antipode(i, j) b_j`, and `counit(i) = eps(b_i)`.
//! The unit is stored as a coefficient vector.

use std::fmt;

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::json::{domain_to_json, field, field_array, field_str, field_usize, parse_domain, parse_scalar, perr};
use crate::scalar::{nullspace, Domain, Matrix, Scalar, ScalarDomain};
use crate::subspace::Subspace;

/// Coefficient vector of an element of `H` (or of `H (x) H`, flattened row-major).
pub type Vector = Vec<Scalar>;

/// Enumeration cap for grouplike searches over finite fields.
pub const GROUPLIKE_ENUMERATION_BOUND: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfData {
    domain: Domain,
    basis: Vec<String>,
    unit: Vector,
    mult: Vec<Scalar>,
    comult: Vec<Scalar>,
    antipode: Vec<Scalar>,
    counit: Vector,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    Associativity,
    Unit,
    Coassociativity,
    Counit,
    Bialgebra,
    Antipode,
}

impl Axiom {
    pub const ALL: [Axiom; 6] = [
        Axiom::Associativity,
        Axiom::Unit,
        Axiom::Coassociativity,
        Axiom::Counit,
        Axiom::Bialgebra,
        Axiom::Antipode,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Axiom::Associativity => "associativity",
            Axiom::Unit => "unit",
            Axiom::Coassociativity => "coassociativity",
            Axiom::Counit => "counit",
            Axiom::Bialgebra => "bialgebra",
            Axiom::Antipode => "antipode",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl HopfData {
    pub fn new(
        domain: &Domain,
        basis: Vec<String>,
        unit: Vector,
        mult: Vec<Scalar>,
        comult: Vec<Scalar>,
        antipode: Vec<Scalar>,
        counit: Vector,
    ) -> Result<HopfData> {
        if !domain.is_field() {
            return Err(Error::NotAField(domain.to_string()));
        }
        let d = basis.len();
        if d == 0 {
            return Err(Error::DimensionMismatch("a Hopf algebra needs a nonempty basis".into()));
        }
        let sizes = [
            ("unit", unit.len(), d),
            ("mult", mult.len(), d * d * d),
            ("comult", comult.len(), d * d * d),
            ("antipode", antipode.len(), d * d),
            ("counit", counit.len(), d),
        ];
        for (name, got, want) in sizes {
            if got != want {
                return Err(Error::DimensionMismatch(format!("{name} has {got} entries, expected {want}")));
            }
        }
        for s in unit.iter().chain(&mult).chain(&comult).chain(&antipode).chain(&counit) {
            if s.domain() != domain {
                return Err(Error::DomainMismatch(s.domain().to_string(), domain.to_string()));
            }
        }
        Ok(HopfData {
            domain: domain.clone(),
            basis,
            unit,
            mult,
            comult,
            antipode,
            counit,
        })
    }

    /// Group algebra with `table[i][j]` the index of `g_i g_j`; index 0 must be the identity.
    pub fn group_algebra<S: AsRef<str>>(domain: &Domain, names: &[S], table: &[Vec<usize>]) -> Result<HopfData> {
        let d = names.len();
        if table.len() != d || table.iter().any(|r| r.len() != d) {
            return Err(Error::DimensionMismatch("group table must be square".into()));
        }
        let zero = Scalar::zero(domain);
        let one = Scalar::one(domain);
        let mut mult = vec![zero.clone(); d * d * d];
        let mut comult = vec![zero.clone(); d * d * d];
        let mut antipode = vec![zero.clone(); d * d];
        for i in 0..d {
            for j in 0..d {
                mult[(i * d + j) * d + table[i][j]] = one.clone();
            }
            comult[(i * d + i) * d + i] = one.clone();
            let inv = (0..d)
                .find(|&j| table[i][j] == 0)
                .ok_or_else(|| Error::InvalidDomain(format!("element {} has no inverse", names[i].as_ref())))?;
            antipode[i * d + inv] = one.clone();
        }
        let mut unit = vec![zero; d];
        unit[0] = one.clone();
        HopfData::new(
            domain,
            names.iter().map(|n| n.as_ref().to_string()).collect(),
            unit,
            mult,
            comult,
            antipode,
            vec![one; d],
        )
    }

    /// Cyclic group algebra `k[C_n]` with basis `1, g, ..., g^(n-1)`.
    pub fn cyclic(domain: &Domain, n: usize) -> Result<HopfData> {
        let names: Vec<String> = (0..n)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "g".to_string(),
                _ => format!("g^{i}"),
            })
            .collect();
        let table: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        HopfData::group_algebra(domain, &names, &table)
    }

    /// The one-dimensional Hopf algebra `k`.
    pub fn trivial(domain: &Domain) -> Result<HopfData> {
        HopfData::group_algebra(domain, &["1"], &[vec![0]])
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn basis_index(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b == name)
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn counit(&self) -> &[Scalar] {
        &self.counit
    }

    pub fn mult(&self, i: usize, j: usize, k: usize) -> &Scalar {
        let d = self.dim();
        &self.mult[(i * d + j) * d + k]
    }

    pub fn comult(&self, k: usize, i: usize, j: usize) -> &Scalar {
        let d = self.dim();
        &self.comult[(k * d + i) * d + j]
    }

    pub fn antipode(&self, i: usize, j: usize) -> &Scalar {
        &self.antipode[i * self.dim() + j]
    }

    pub fn set_mult(&mut self, i: usize, j: usize, k: usize, v: Scalar) {
        let d = self.dim();
        self.mult[(i * d + j) * d + k] = v;
    }

    pub fn set_comult(&mut self, k: usize, i: usize, j: usize, v: Scalar) {
        let d = self.dim();
        self.comult[(k * d + i) * d + j] = v;
    }

    pub fn set_antipode(&mut self, i: usize, j: usize, v: Scalar) {
        let d = self.dim();
        self.antipode[i * d + j] = v;
    }

    pub fn set_counit(&mut self, i: usize, v: Scalar) {
        self.counit[i] = v;
    }

    /// Every table entry, for structure-constant collection.
    pub fn constants(&self) -> impl Iterator<Item = &Scalar> {
        self.unit
            .iter()
            .chain(&self.mult)
            .chain(&self.comult)
            .chain(&self.antipode)
            .chain(&self.counit)
    }

    pub fn zero_vector(&self) -> Vector {
        vec![Scalar::zero(&self.domain); self.dim()]
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        let mut v = self.zero_vector();
        v[i] = Scalar::one(&self.domain);
        v
    }

    pub fn multiply(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let d = self.dim();
        let mut out = self.zero_vector();
        for i in (0..d).filter(|&i| !x[i].is_zero()) {
            for j in (0..d).filter(|&j| !y[j].is_zero()) {
                let c = &x[i] * &y[j];
                for (k, o) in out.iter_mut().enumerate() {
                    let m = self.mult(i, j, k);
                    if !m.is_zero() {
                        *o = &*o + &(&c * m);
                    }
                }
            }
        }
        out
    }

    /// `Delta(x)` as a flattened `d x d` array indexed `i * d + j`.
    pub fn coproduct(&self, x: &[Scalar]) -> Vector {
        let d = self.dim();
        let mut out = vec![Scalar::zero(&self.domain); d * d];
        for k in (0..d).filter(|&k| !x[k].is_zero()) {
            for (ij, o) in out.iter_mut().enumerate() {
                let c = &self.comult[k * d * d + ij];
                if !c.is_zero() {
                    *o = &*o + &(&x[k] * c);
                }
            }
        }
        out
    }

    pub fn apply_antipode(&self, x: &[Scalar]) -> Vector {
        let d = self.dim();
        let mut out = self.zero_vector();
        for i in (0..d).filter(|&i| !x[i].is_zero()) {
            for (j, o) in out.iter_mut().enumerate() {
                let s = self.antipode(i, j);
                if !s.is_zero() {
                    *o = &*o + &(&x[i] * s);
                }
            }
        }
        out
    }

    pub fn apply_counit(&self, x: &[Scalar]) -> Scalar {
        x.iter()
            .zip(&self.counit)
            .fold(Scalar::zero(&self.domain), |acc, (a, e)| &acc + &(a * e))
    }

    /// Same tables pushed through a coefficient map into `target`.
    pub fn map_scalars(&self, target: &Domain, f: impl Fn(&Scalar) -> Result<Scalar>) -> Result<HopfData> {
        let map = |v: &Vec<Scalar>| v.iter().map(&f).collect::<Result<Vec<_>>>();
        HopfData::new(
            target,
            self.basis.clone(),
            map(&self.unit)?,
            map(&self.mult)?,
            map(&self.comult)?,
            map(&self.antipode)?,
            map(&self.counit)?,
        )
    }

    pub fn is_commutative(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| (0..d).all(|j| (0..d).all(|k| self.mult(i, j, k) == self.mult(j, i, k))))
    }

    pub fn to_json(&self) -> Value {
        let d = self.dim();
        let mut mult = Vec::new();
        let mut comult = Vec::new();
        let mut antipode = Vec::new();
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    let m = self.mult(a, b, c);
                    if !m.is_zero() {
                        mult.push(json!([a, b, c, m.to_string()]));
                    }
                    let e = self.comult(a, b, c);
                    if !e.is_zero() {
                        comult.push(json!([a, b, c, e.to_string()]));
                    }
                }
                let s = self.antipode(a, b);
                if !s.is_zero() {
                    antipode.push(json!([a, b, s.to_string()]));
                }
            }
        }
        let unit = match self.unit_index() {
            Some(i) => json!(i),
            None => json!(self.unit.iter().map(ToString::to_string).collect::<Vec<_>>()),
        };
        json!({
            "field": domain_to_json(&self.domain),
            "dim": d,
            "basis": self.basis,
            "unit": unit,
            "mult": mult,
            "comult": comult,
            "antipode": antipode,
            "counit": self.counit.iter().map(ToString::to_string).collect::<Vec<_>>(),
        })
    }

    /// Index of the basis vector equal to the unit, if there is one.
    pub fn unit_index(&self) -> Option<usize> {
        let one = self.unit.iter().position(|c| !c.is_zero())?;
        (self.unit[one].is_one() && self.unit.iter().filter(|c| !c.is_zero()).count() == 1).then_some(one)
    }

    /// Parse the table schema; `default_domain` is used when `field` is absent.
    pub fn from_json(v: &Value, path: &str, default_domain: &Domain) -> Result<HopfData> {
        let domain = match v.get("field") {
            Some(f) => parse_domain(f, &format!("{path}.field"))?,
            None => default_domain.clone(),
        };
        let d = field_usize(field(v, path, "dim")?, &format!("{path}.dim"))?;
        let basis: Vec<String> = match v.get("basis") {
            Some(b) => field_array(b, &format!("{path}.basis"))?
                .iter()
                .enumerate()
                .map(|(k, x)| field_str(x, &format!("{path}.basis[{k}]")).map(str::to_string))
                .collect::<Result<_>>()?,
            None => (0..d).map(|i| format!("b{i}")).collect(),
        };
        if basis.len() != d || d == 0 {
            return Err(perr(&format!("{path}.basis"), &format!("expected {d} basis labels")));
        }
        let zero = Scalar::zero(&domain);
        let upath = format!("{path}.unit");
        let unit = match field(v, path, "unit")? {
            Value::Number(n) => {
                let i = n.as_u64().map(|i| i as usize).filter(|&i| i < d).ok_or_else(|| perr(&upath, "unit index out of range"))?;
                let mut u = vec![zero.clone(); d];
                u[i] = Scalar::one(&domain);
                u
            }
            Value::Array(a) if a.len() == d => a
                .iter()
                .enumerate()
                .map(|(k, x)| parse_scalar(&domain, x, &format!("{upath}[{k}]")))
                .collect::<Result<_>>()?,
            _ => return Err(perr(&upath, "expected a basis index or a coefficient vector")),
        };
        let read_table = |key: &str, arity: usize| -> Result<Vec<Scalar>> {
            let p = format!("{path}.{key}");
            let mut table = vec![zero.clone(); d.pow(arity as u32)];
            for (n, entry) in field_array(field(v, path, key)?, &p)?.iter().enumerate() {
                let ep = format!("{p}[{n}]");
                let items = field_array(entry, &ep)?;
                if items.len() != arity + 1 {
                    return Err(perr(&ep, &format!("expected {} indices and a scalar", arity)));
                }
                let mut idx = 0;
                for (q, it) in items[..arity].iter().enumerate() {
                    let i = field_usize(it, &format!("{ep}[{q}]"))?;
                    if i >= d {
                        return Err(perr(&format!("{ep}[{q}]"), "index out of range"));
                    }
                    idx = idx * d + i;
                }
                table[idx] = parse_scalar(&domain, &items[arity], &format!("{ep}[{arity}]"))?;
            }
            Ok(table)
        };
        let mult = read_table("mult", 3)?;
        let comult = read_table("comult", 3)?;
        let antipode = read_table("antipode", 2)?;
        let cpath = format!("{path}.counit");
        let counit_v = field_array(field(v, path, "counit")?, &cpath)?;
        if counit_v.len() != d {
            return Err(perr(&cpath, &format!("expected {d} entries")));
        }
        let counit = counit_v
            .iter()
            .enumerate()
            .map(|(k, x)| parse_scalar(&domain, x, &format!("{cpath}[{k}]")))
            .collect::<Result<_>>()?;
        HopfData::new(&domain, basis, unit, mult, comult, antipode, counit).map_err(|e| perr(path, &e.to_string()))
    }
}

fn vec_eq(a: &[Scalar], b: &[Scalar]) -> bool {
    a == b
}

/// Failed axioms, in a fixed order; empty iff `h` is a Hopf algebra.
pub fn validate_hopf_axioms(h: &HopfData) -> Vec<Axiom> {
    let d = h.dim();
    let e: Vec<Vector> = (0..d).map(|i| h.basis_vector(i)).collect();
    let mut failed = Vec::new();

    let products: Vec<Vec<Vector>> = (0..d).map(|i| (0..d).map(|j| h.multiply(&e[i], &e[j])).collect()).collect();
    let assoc = (0..d).all(|i| {
        (0..d).all(|j| {
            (0..d).all(|l| vec_eq(&h.multiply(&products[i][j], &e[l]), &h.multiply(&e[i], &products[j][l])))
        })
    });
    if !assoc {
        failed.push(Axiom::Associativity);
    }

    let unit_ok = (0..d).all(|i| h.multiply(&h.unit, &e[i]) == e[i] && h.multiply(&e[i], &h.unit) == e[i]);
    if !unit_ok {
        failed.push(Axiom::Unit);
    }

    let zero = Scalar::zero(&h.domain);
    let coassoc = (0..d).all(|k| {
        (0..d).all(|a| {
            (0..d).all(|b| {
                (0..d).all(|c| {
                    // (Delta (x) id) Delta vs (id (x) Delta) Delta, coefficient of b_a (x) b_b (x) b_c
                    let left = (0..d).fold(zero.clone(), |acc, m| {
                        let x = h.comult(k, m, c);
                        if x.is_zero() {
                            acc
                        } else {
                            &acc + &(x * h.comult(m, a, b))
                        }
                    });
                    let right = (0..d).fold(zero.clone(), |acc, m| {
                        let x = h.comult(k, a, m);
                        if x.is_zero() {
                            acc
                        } else {
                            &acc + &(x * h.comult(m, b, c))
                        }
                    });
                    left == right
                })
            })
        })
    });
    if !coassoc {
        failed.push(Axiom::Coassociativity);
    }

    let counit_ok = (0..d).all(|k| {
        let left: Vector = (0..d)
            .map(|j| (0..d).fold(zero.clone(), |acc, i| &acc + &(&h.counit[i] * h.comult(k, i, j))))
            .collect();
        let right: Vector = (0..d)
            .map(|i| (0..d).fold(zero.clone(), |acc, j| &acc + &(h.comult(k, i, j) * &h.counit[j])))
            .collect();
        left == e[k] && right == e[k]
    });
    if !counit_ok {
        failed.push(Axiom::Counit);
    }

    let coproducts: Vec<Vector> = e.iter().map(|x| h.coproduct(x)).collect();
    let tensor_mul = |x: &[Scalar], y: &[Scalar]| -> Vector {
        let mut out = vec![zero.clone(); d * d];
        for (p, xp) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (q, yq) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let c = xp * yq;
                let (a, b) = (p / d, p % d);
                let (a2, b2) = (q / d, q % d);
                let left = &products[a][a2];
                let right = &products[b][b2];
                for (m, l) in left.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    for (n, r) in right.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                        out[m * d + n] = &out[m * d + n] + &(&c * &(l * r));
                    }
                }
            }
        }
        out
    };
    let unit_tensor: Vector = {
        let mut out = vec![zero.clone(); d * d];
        for a in 0..d {
            for b in 0..d {
                out[a * d + b] = &h.unit[a] * &h.unit[b];
            }
        }
        out
    };
    let bialgebra = h.coproduct(&h.unit) == unit_tensor
        && h.apply_counit(&h.unit).is_one()
        && (0..d).all(|i| {
            (0..d).all(|j| {
                h.coproduct(&products[i][j]) == tensor_mul(&coproducts[i], &coproducts[j])
                    && h.apply_counit(&products[i][j]) == &h.counit[i] * &h.counit[j]
            })
        });
    if !bialgebra {
        failed.push(Axiom::Bialgebra);
    }

    let antipode_rows: Vec<Vector> = e.iter().map(|x| h.apply_antipode(x)).collect();
    let antipode_ok = (0..d).all(|k| {
        let mut left = h.zero_vector();
        let mut right = h.zero_vector();
        for i in 0..d {
            for j in 0..d {
                let c = h.comult(k, i, j);
                if c.is_zero() {
                    continue;
                }
                let l = h.multiply(&antipode_rows[i], &e[j]);
                let r = h.multiply(&e[i], &antipode_rows[j]);
                for m in 0..d {
                    left[m] = &left[m] + &(c * &l[m]);
                    right[m] = &right[m] + &(c * &r[m]);
                }
            }
        }
        let target: Vector = h.unit.iter().map(|u| u * &h.counit[k]).collect();
        left == target && right == target
    });
    if !antipode_ok {
        failed.push(Axiom::Antipode);
    }
    failed
}

/// Left integrals of `H` and the semisimplicity verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralResult {
    pub space_basis: Vec<Vector>,
    /// An integral with counit value one, when one exists.
    pub normalized: Option<Vector>,
    pub semisimple: bool,
}

/// Solve `b_i t = eps(b_i) t` for every basis element.
pub fn find_left_integral(h: &HopfData) -> Result<IntegralResult> {
    let d = h.dim();
    let m = Matrix::from_fn(&h.domain, d * d, d, |row, j| {
        let (i, k) = (row / d, row % d);
        let mut v = h.mult(i, j, k).clone();
        if j == k {
            v = &v - &h.counit[i];
        }
        v
    });
    let space_basis = nullspace(&m)?;
    let normalized = space_basis.iter().find_map(|v| {
        let e = h.apply_counit(v);
        (!e.is_zero()).then(|| {
            let inv = e.inv().expect("nonzero field element");
            v.iter().map(|c| c * &inv).collect::<Vector>()
        })
    });
    Ok(IntegralResult {
        semisimple: normalized.is_some(),
        space_basis,
        normalized,
    })
}

/// Cosemisimplicity: the dual has an integral with counit value one.
pub fn find_dual_integral(h: &HopfData) -> Result<IntegralResult> {
    find_left_integral(&dual_hopf(h))
}

fn dual_name(name: &str) -> String {
    match name.strip_suffix('*') {
        Some(base) => base.to_string(),
        None => format!("{name}*"),
    }
}

/// The dual Hopf algebra on the dual basis.
pub fn dual_hopf(h: &HopfData) -> HopfData {
    let d = h.dim();
    let mut mult = Vec::with_capacity(d * d * d);
    let mut comult = Vec::with_capacity(d * d * d);
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                mult.push(h.comult(k, i, j).clone());
            }
        }
    }
    for k in 0..d {
        for i in 0..d {
            for j in 0..d {
                comult.push(h.mult(i, j, k).clone());
            }
        }
    }
    let mut antipode = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            antipode.push(h.antipode(j, i).clone());
        }
    }
    HopfData {
        domain: h.domain.clone(),
        basis: h.basis.iter().map(|b| dual_name(b)).collect(),
        unit: h.counit.clone(),
        mult,
        comult,
        antipode,
        counit: h.unit.clone(),
    }
}

pub fn is_cocommutative(h: &HopfData) -> bool {
    let d = h.dim();
    (0..d).all(|k| (0..d).all(|i| (0..d).all(|j| h.comult(k, i, j) == h.comult(k, j, i))))
}

fn is_grouplike(h: &HopfData, x: &[Scalar]) -> bool {
    if !h.apply_counit(x).is_one() {
        return false;
    }
    let d = h.dim();
    let delta = h.coproduct(x);
    (0..d).all(|i| (0..d).all(|j| delta[i * d + j] == &x[i] * &x[j]))
}

/// Grouplike elements: exhaustive search over `F_p^d` when `p^d` is at most
/// [`GROUPLIKE_ENUMERATION_BOUND`], otherwise verification of `candidates`.
pub fn grouplike_elements(h: &HopfData, candidates: Option<&[Vector]>) -> Result<Vec<Vector>> {
    let d = h.dim();
    if let Some(c) = candidates {
        return Ok(c.iter().filter(|x| is_grouplike(h, x)).cloned().collect());
    }
    let p = match **h.domain() {
        ScalarDomain::PrimeField(p) => p,
        _ => return Err(Error::EnumerationTooLarge(format!("{} over {}", d, h.domain()))),
    };
    let total = (p as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
    if total > GROUPLIKE_ENUMERATION_BOUND as u128 {
        return Err(Error::EnumerationTooLarge(format!("{p}^{d}")));
    }
    let mut out = Vec::new();
    for n in 1..total as u64 {
        let mut r = n;
        let x: Vector = (0..d)
            .map(|_| {
                let c = r % p;
                r /= p;
                Scalar::prime(h.domain(), c)
            })
            .collect();
        if is_grouplike(h, &x) {
            out.push(x);
        }
    }
    Ok(out)
}

/// A subspace of `H` saturated to a two-sided, antipode-stable ideal, with
/// flags recording the Hopf-ideal conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfIdealData {
    pub generators: Vec<Vector>,
    pub space: Subspace,
    pub is_two_sided_ideal: bool,
    pub is_coideal: bool,
    pub is_antipode_stable: bool,
}

impl HopfIdealData {
    pub fn basis(&self) -> &[Vector] {
        self.space.basis()
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn is_hopf_ideal(&self) -> bool {
        self.is_two_sided_ideal && self.is_coideal && self.is_antipode_stable
    }
}

/// Saturate `generators` under left and right multiplication and the
/// antipode, then verify each Hopf-ideal flag on the result.
pub fn hopf_ideal(h: &HopfData, generators: &[Vector]) -> HopfIdealData {
    let d = h.dim();
    let mut space = Subspace::span(&h.domain, d, generators);
    loop {
        let before = space.dim();
        let current: Vec<Vector> = space.basis().to_vec();
        for v in &current {
            for i in 0..d {
                let e = h.basis_vector(i);
                space.insert(&h.multiply(&e, v));
                space.insert(&h.multiply(v, &e));
            }
            space.insert(&h.apply_antipode(v));
        }
        if space.dim() == before {
            break;
        }
    }
    ideal_flags(h, generators.to_vec(), space)
}

/// Flags for a subspace taken as is, without saturation.
pub fn hopf_ideal_from_subspace(h: &HopfData, space: Subspace) -> HopfIdealData {
    ideal_flags(h, space.basis().to_vec(), space)
}

fn ideal_flags(h: &HopfData, generators: Vec<Vector>, space: Subspace) -> HopfIdealData {
    let d = h.dim();
    let basis = space.basis();
    let is_two_sided_ideal = basis.iter().all(|v| {
        (0..d).all(|i| {
            let e = h.basis_vector(i);
            space.contains(&h.multiply(&e, v)) && space.contains(&h.multiply(v, &e))
        })
    });
    let is_antipode_stable = basis.iter().all(|v| space.contains(&h.apply_antipode(v)));
    let is_coideal = basis.iter().all(|v| {
        h.apply_counit(v).is_zero() && project_tensor(&space, &h.coproduct(v), d).iter().all(Scalar::is_zero)
    });
    HopfIdealData {
        generators,
        space,
        is_two_sided_ideal,
        is_coideal,
        is_antipode_stable,
    }
}

fn project_tensor(space: &Subspace, t: &[Scalar], d: usize) -> Vector {
    project_tensor_pair(space, space, t, d)
}

fn unit_projections(space: &Subspace, d: usize) -> Vec<Vector> {
    (0..d)
        .map(|a| {
            let mut e = vec![Scalar::zero(space.domain()); d];
            e[a] = Scalar::one(space.domain());
            space.project(&e)
        })
        .collect()
}

/// Image of a flattened `d x d` tensor in `(H/L) (x) (H/R)`.
pub fn project_tensor_pair(left: &Subspace, right: &Subspace, t: &[Scalar], d: usize) -> Vector {
    let pl = unit_projections(left, d);
    let pr = unit_projections(right, d);
    let ql = d - left.dim();
    let qr = d - right.dim();
    let mut out = vec![Scalar::zero(left.domain()); ql * qr];
    for a in 0..d {
        for b in 0..d {
            let c = &t[a * d + b];
            if c.is_zero() {
                continue;
            }
            for (l, x) in pl[a].iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                let cl = c * x;
                for (r, y) in pr[b].iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                    out[l * qr + r] = &out[l * qr + r] + &(&cl * y);
                }
            }
        }
    }
    out
}

/// Structure constants of `H / I` on the complement of the ideal's pivot columns.
pub fn quotient_by_hopf_ideal(h: &HopfData, ideal: &HopfIdealData) -> Result<HopfData> {
    let mut failed = Vec::new();
    if !ideal.is_two_sided_ideal {
        failed.push("two-sided ideal");
    }
    if !ideal.is_coideal {
        failed.push("coideal");
    }
    if !ideal.is_antipode_stable {
        failed.push("antipode-stable");
    }
    if !failed.is_empty() {
        return Err(Error::NotAHopfIdeal(failed.join(", ")));
    }
    let space = &ideal.space;
    let comp = space.complement();
    let q = comp.len();
    let d = h.dim();
    let mut mult = Vec::with_capacity(q * q * q);
    for &a in &comp {
        for &b in &comp {
            mult.extend(space.project(&h.multiply(&h.basis_vector(a), &h.basis_vector(b))));
        }
    }
    let mut comult = Vec::with_capacity(q * q * q);
    for &c in &comp {
        comult.extend(project_tensor(space, &h.coproduct(&h.basis_vector(c)), d));
    }
    let mut antipode = Vec::with_capacity(q * q);
    for &a in &comp {
        antipode.extend(space.project(&h.apply_antipode(&h.basis_vector(a))));
    }
    let counit = comp.iter().map(|&a| h.counit[a].clone()).collect();
    HopfData::new(
        &h.domain,
        comp.iter().map(|&a| h.basis[a].clone()).collect(),
        space.project(&h.unit),
        mult,
        comult,
        antipode,
        counit,
    )
}

/// `n!` as a big integer.
pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::from(1), |acc, k| acc * k)
}
