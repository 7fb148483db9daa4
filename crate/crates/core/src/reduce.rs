//! Reduction modulo primes: the ring `Z[1/N]` generated by an action's
//! constants, good primes, and transport of Hopf data, towers, actions and
//! certificates to `F_p`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::action::{validate_module_algebra, ActionSpec, Certificate};
use crate::error::{Error, Result};
use crate::hopf::{find_dual_integral, find_left_integral, validate_hopf_axioms};
use crate::ore::validate_tower;
use crate::scalar::{determinant, is_prime, next_prime, Domain, Scalar, ScalarDomain};

/// `R = Z[1/N]` together with the constants that generate it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstantRing {
    /// Distinct nonzero constants, sorted.
    pub generators: Vec<BigRational>,
    /// Least common multiple of the generator denominators.
    pub modulus: BigInt,
}

impl StructureConstantRing {
    pub fn from_generators(values: impl IntoIterator<Item = BigRational>) -> StructureConstantRing {
        let mut generators: Vec<BigRational> = values.into_iter().filter(|q| !q.is_zero()).collect();
        generators.sort();
        generators.dedup();
        let modulus = generators.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        StructureConstantRing { generators, modulus }
    }

    /// Whether `q` lies in `Z[1/N]`.
    pub fn contains(&self, q: &BigRational) -> bool {
        let mut d = q.denom().clone();
        loop {
            let g = d.gcd(&self.modulus);
            if g.is_one() {
                return d.is_one();
            }
            d /= g;
        }
    }

    /// Whether `p` is invertible in the ring, i.e. `(p)` is a maximal ideal.
    pub fn is_unit_free(&self, p: u64) -> bool {
        !(&self.modulus % BigInt::from(p)).is_zero()
    }
}

fn rational_of(s: &Scalar) -> Result<BigRational> {
    s.as_rational()
        .cloned()
        .ok_or_else(|| Error::InvalidDomain(format!("expected a rational constant, got {}", s.domain())))
}

/// Every constant of the action: Hopf tables, both normalised integrals,
/// derivation images and action images.
pub fn structure_constant_ring(spec: &ActionSpec) -> Result<StructureConstantRing> {
    if !matches!(**spec.domain(), ScalarDomain::Rational) {
        return Err(Error::InvalidDomain(format!("structure constants live over Q, not {}", spec.domain())));
    }
    let h = spec.hopf();
    let integral = find_left_integral(h)?
        .normalized
        .ok_or_else(|| Error::NotSemisimple("no integral with counit one".into()))?;
    let dual = find_dual_integral(h)?
        .normalized
        .ok_or_else(|| Error::NotSemisimple("dual has no integral with counit one".into()))?;
    let mut values = Vec::new();
    for s in h
        .constants()
        .chain(integral.iter())
        .chain(dual.iter())
        .cloned()
        .chain(spec.tower().coefficients())
        .chain(spec.image_coefficients())
    {
        values.push(rational_of(&s)?);
    }
    Ok(StructureConstantRing::from_generators(values))
}

/// The maximal ideal `(p)` of `Z[1/N]` and its residue map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeSite {
    p: u64,
    field: Domain,
}

impl PrimeSite {
    pub fn new(ring: &StructureConstantRing, p: u64) -> Result<PrimeSite> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if !ring.is_unit_free(p) {
            return Err(Error::DenominatorVanishes(p));
        }
        Ok(PrimeSite {
            p,
            field: ScalarDomain::prime_field(p)?,
        })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn field(&self) -> &Domain {
        &self.field
    }

    /// `a/b` maps to `a * b^-1` in `F_p`.
    pub fn reduce(&self, q: &BigRational) -> Result<u64> {
        let p = BigInt::from(self.p);
        if (q.denom() % &p).is_zero() {
            return Err(Error::DenominatorVanishes(self.p));
        }
        let num = q.numer().mod_floor(&p);
        let den = q.denom().mod_floor(&p);
        let inv = den.modpow(&(&p - 2u32), &p);
        Ok(((num * inv) % &p).to_u64().expect("residue below p"))
    }

    pub fn reduce_scalar(&self, s: &Scalar) -> Result<Scalar> {
        Ok(Scalar::prime(&self.field, self.reduce(&rational_of(s)?)?))
    }
}

/// The first `count` primes `p > q` with `p` not dividing `N` or the
/// numerator of `a`. Empty when `a = 0`.
pub fn good_primes(ring: &StructureConstantRing, a: &BigRational, q: u64, count: usize) -> Vec<PrimeSite> {
    let mut out = Vec::with_capacity(count);
    if a.is_zero() {
        return out;
    }
    let numer = a.numer().abs();
    let mut p = q;
    while out.len() < count {
        p = next_prime(p);
        if (&numer % BigInt::from(p)).is_zero() {
            continue;
        }
        if let Ok(site) = PrimeSite::new(ring, p) {
            out.push(site);
        }
    }
    out
}

/// Reduce every constant of a rational action modulo the site's prime.
pub fn reduce_mod_p(spec: &ActionSpec, site: &PrimeSite) -> Result<ActionSpec> {
    if !matches!(**spec.domain(), ScalarDomain::Rational) {
        return Err(Error::InvalidDomain(format!("reduction starts over Q, not {}", spec.domain())));
    }
    spec.map_coefficients(site.field(), |c| site.reduce_scalar(c))
}

/// Validator outcomes on a reduced action.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransportCheck {
    pub hopf_axioms_failed: Vec<String>,
    pub tower_failures: usize,
    pub module_failures: Vec<String>,
    pub semisimple: bool,
    pub cosemisimple: bool,
}

impl TransportCheck {
    pub fn validators_passed(&self) -> bool {
        self.hopf_axioms_failed.is_empty() && self.tower_failures == 0 && self.module_failures.is_empty()
    }

    pub fn all_passed(&self) -> bool {
        self.validators_passed() && self.semisimple && self.cosemisimple
    }
}

pub fn check_transport(reduced: &ActionSpec, degree_bound: u32) -> Result<TransportCheck> {
    let h = reduced.hopf();
    Ok(TransportCheck {
        hopf_axioms_failed: validate_hopf_axioms(h).iter().map(|a| a.id().to_string()).collect(),
        tower_failures: validate_tower(reduced.tower()).len(),
        module_failures: validate_module_algebra(reduced, degree_bound)?
            .iter()
            .map(ToString::to_string)
            .collect(),
        semisimple: find_left_integral(h)?.semisimple,
        cosemisimple: find_dual_integral(h)?.semisimple,
    })
}

/// Reduce the certificate matrix and test its determinant over `F_p`. The
/// result must agree with the residue of the rational determinant.
pub fn certificate_mod_p(cert: &Certificate, site: &PrimeSite) -> Result<bool> {
    let reduced = cert.matrix.map(site.field(), |c| site.reduce_scalar(c))?;
    let det = determinant(&reduced)?;
    let expected = site.reduce_scalar(&cert.determinant)?;
    if det != expected {
        return Err(Error::ReductionMismatch(format!(
            "determinant {det} over F_{} but the rational determinant reduces to {expected}",
            site.prime()
        )));
    }
    Ok(!det.is_zero())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Detection {
    pub value: String,
    pub in_ring: bool,
    /// First site with a nonzero residue.
    pub first_site: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InjectivityReport {
    pub sites: Vec<u64>,
    pub detections: Vec<Detection>,
    /// Every nonzero value in the ring is detected.
    pub all_detected: bool,
    /// Zero values are never detected and detection persists along every
    /// prefix of the site list.
    pub consistent: bool,
}

/// Evidence that `R -> prod R/(p)` is injective on `values`.
pub fn subdirect_injectivity_check(
    ring: &StructureConstantRing,
    values: &[BigRational],
    sites: &[PrimeSite],
) -> InjectivityReport {
    let mut detections = Vec::with_capacity(values.len());
    let mut all_detected = true;
    let mut consistent = true;
    for v in values {
        let in_ring = ring.contains(v);
        let residues: Vec<Option<u64>> = sites.iter().map(|s| s.reduce(v).ok()).collect();
        let first = residues.iter().position(|r| matches!(r, Some(x) if *x != 0));
        // detected within the first k sites, for each k
        let mut seen = false;
        for k in 0..=sites.len() {
            let now = residues[..k].iter().any(|r| matches!(r, Some(x) if *x != 0));
            if seen && !now {
                consistent = false;
            }
            seen = now;
        }
        if v.is_zero() && first.is_some() {
            consistent = false;
        }
        if in_ring && !v.is_zero() && first.is_none() {
            all_detected = false;
        }
        detections.push(Detection {
            value: v.to_string(),
            in_ring,
            first_site: first.map(|i| sites[i].prime()),
        });
    }
    InjectivityReport {
        sites: sites.iter().map(PrimeSite::prime).collect(),
        detections,
        all_detected,
        consistent,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::faithfulness_certificate;
    use crate::hopf::HopfData;
    use crate::ore::OreTower;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn sign_action() -> ActionSpec {
        let dom = ScalarDomain::rational();
        let tower = OreTower::new(&dom, &["y", "x"])
            .unwrap()
            .with_derivation("x", "y", "1")
            .unwrap()
            .into_arc();
        let h = HopfData::cyclic(&dom, 2).unwrap();
        ActionSpec::from_strings(h, tower, &[("g", "x", "-x"), ("g", "y", "-y")]).unwrap()
    }

    fn ring(n: i64) -> StructureConstantRing {
        StructureConstantRing::from_generators([q(1, n)])
    }

    fn primes(sites: &[PrimeSite]) -> Vec<u64> {
        sites.iter().map(PrimeSite::prime).collect()
    }

    #[test]
    fn sign_action_ring() {
        let r = structure_constant_ring(&sign_action()).unwrap();
        assert_eq!(r.modulus, BigInt::from(2));
        assert!(r.generators.contains(&q(1, 2)));
        let toy = StructureConstantRing::from_generators([q(3, 1), q(-1, 1)]);
        assert_eq!(toy.modulus, BigInt::one());
        let tenths = StructureConstantRing::from_generators([q(3, 10)]);
        assert_eq!(tenths.modulus, BigInt::from(10));
        assert!(tenths.contains(&q(7, 100)) && !tenths.contains(&q(1, 3)));
    }

    #[test]
    fn good_prime_selection() {
        assert_eq!(primes(&good_primes(&ring(2), &q(1, 1), 1, 3)), vec![3, 5, 7]);
        assert_eq!(primes(&good_primes(&ring(2), &q(6, 1), 1, 3)), vec![5, 7, 11]);
        assert_eq!(primes(&good_primes(&ring(2), &q(1, 1), 5, 2)), vec![7, 11]);
        assert!(good_primes(&ring(2), &q(0, 1), 1, 3).is_empty());
    }

    #[test]
    fn reduction_of_sign_action() {
        let spec = sign_action();
        let r = structure_constant_ring(&spec).unwrap();
        let site = PrimeSite::new(&r, 3).unwrap();
        let red = reduce_mod_p(&spec, &site).unwrap();
        let t = find_left_integral(red.hopf()).unwrap().normalized.unwrap();
        let f3 = site.field().clone();
        assert_eq!(t, vec![Scalar::prime(&f3, 2), Scalar::prime(&f3, 2)]);
        assert!(check_transport(&red, 3).unwrap().all_passed());
        assert!(matches!(PrimeSite::new(&r, 2), Err(Error::DenominatorVanishes(2))));
        assert_eq!(site.reduce(&q(1, 2)).unwrap(), 2);
    }

    #[test]
    fn certificate_residues() {
        let spec = sign_action();
        let r = structure_constant_ring(&spec).unwrap();
        let cert = faithfulness_certificate(&spec, 1, 1).unwrap();
        for p in [3, 5, 7] {
            assert!(certificate_mod_p(&cert, &PrimeSite::new(&r, p).unwrap()).unwrap());
        }
        let site = PrimeSite::new(&r, 5).unwrap();
        assert_eq!(site.reduce_scalar(&cert.determinant).unwrap().as_prime(), Some(3));
    }

    #[test]
    fn injectivity_examples() {
        let r = ring(2);
        let sites: Vec<PrimeSite> = [3, 5, 7].iter().map(|&p| PrimeSite::new(&r, p).unwrap()).collect();
        let rep = subdirect_injectivity_check(&r, &[q(1, 2), q(0, 1), q(15, 1)], &sites);
        let firsts: Vec<Option<u64>> = rep.detections.iter().map(|d| d.first_site).collect();
        assert_eq!(firsts, vec![Some(3), None, Some(7)]);
        assert!(rep.all_detected && rep.consistent);
        let short = subdirect_injectivity_check(&r, &[q(15, 1)], &sites[..2]);
        assert!(!short.all_detected);
    }
}
