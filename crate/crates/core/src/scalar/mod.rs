//! Exact scalars: rationals, prime fields, one layer of multivariate
//! polynomials over either, and the fraction field of such a polynomial ring.
//!
//! Every [`Scalar`] carries its [`ScalarDomain`] and is always stored in a
//! canonical form, so structural equality is mathematical equality.

mod matrix;
mod parse;
mod poly;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use matrix::{char_poly, determinant, nullspace, solve_linear, LinearSolution, Matrix, UniPoly};
pub use parse::{parse_expression, Builder};
pub use poly::{Monomial, Poly};

pub type Domain = Arc<ScalarDomain>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ScalarDomain {
    Rational,
    PrimeField(u64),
    Poly { base: Domain, vars: Vec<String> },
    Fraction(Domain),
}

impl ScalarDomain {
    pub fn rational() -> Domain {
        Arc::new(ScalarDomain::Rational)
    }

    pub fn prime_field(p: u64) -> Result<Domain> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Arc::new(ScalarDomain::PrimeField(p)))
    }

    pub fn poly<S: AsRef<str>>(base: &Domain, vars: &[S]) -> Result<Domain> {
        if !matches!(**base, ScalarDomain::Rational | ScalarDomain::PrimeField(_)) {
            return Err(Error::InvalidDomain(format!(
                "polynomial coefficients must be Q or F_p, got {base}"
            )));
        }
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            if !is_identifier(v) {
                return Err(Error::InvalidDomain(format!("bad variable name `{v}`")));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidDomain(format!("duplicate variable `{v}`")));
            }
        }
        Ok(Arc::new(ScalarDomain::Poly {
            base: base.clone(),
            vars,
        }))
    }

    pub fn fraction(poly: &Domain) -> Result<Domain> {
        match **poly {
            ScalarDomain::Poly { .. } => Ok(Arc::new(ScalarDomain::Fraction(poly.clone()))),
            _ => Err(Error::InvalidDomain(format!(
                "fraction fields are only formed over polynomial domains, got {poly}"
            ))),
        }
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, ScalarDomain::Poly { .. })
    }

    /// Zero for the rationals, `p` otherwise.
    pub fn characteristic(&self) -> u64 {
        match self {
            ScalarDomain::Rational => 0,
            ScalarDomain::PrimeField(p) => *p,
            ScalarDomain::Poly { base, .. } => base.characteristic(),
            ScalarDomain::Fraction(inner) => inner.characteristic(),
        }
    }

    /// Coefficient field of a polynomial or fraction domain; `None` for Q and F_p.
    pub fn coefficient_field(&self) -> Option<&Domain> {
        match self {
            ScalarDomain::Poly { base, .. } => Some(base),
            ScalarDomain::Fraction(inner) => inner.coefficient_field(),
            _ => None,
        }
    }

    pub fn vars(&self) -> &[String] {
        match self {
            ScalarDomain::Poly { vars, .. } => vars,
            ScalarDomain::Fraction(inner) => inner.vars(),
            _ => &[],
        }
    }
}

impl fmt::Display for ScalarDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarDomain::Rational => write!(f, "Q"),
            ScalarDomain::PrimeField(p) => write!(f, "F_{p}"),
            ScalarDomain::Poly { base, vars } => write!(f, "{base}[{}]", vars.join(",")),
            ScalarDomain::Fraction(inner) => write!(f, "Frac({inner})"),
        }
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Value {
    Rational(BigRational),
    Prime(u64),
    Poly(Poly),
    Fraction(Poly, Poly),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    domain: Domain,
    value: Value,
}

impl Scalar {
    pub fn zero(domain: &Domain) -> Scalar {
        Scalar::from_int(domain, 0)
    }

    pub fn one(domain: &Domain) -> Scalar {
        Scalar::from_int(domain, 1)
    }

    pub fn from_int(domain: &Domain, n: i64) -> Scalar {
        Scalar::from_bigint(domain, &BigInt::from(n))
    }

    pub fn from_bigint(domain: &Domain, n: &BigInt) -> Scalar {
        let value = match &**domain {
            ScalarDomain::Rational => Value::Rational(BigRational::from_integer(n.clone())),
            ScalarDomain::PrimeField(p) => Value::Prime(bigint_mod(n, *p)),
            ScalarDomain::Poly { base, vars } => {
                Value::Poly(Poly::constant(Scalar::from_bigint(base, n), vars.len()))
            }
            ScalarDomain::Fraction(inner) => {
                let num = Scalar::from_bigint(inner, n).into_poly();
                Value::Fraction(num, Poly::one(inner.coefficient_field().unwrap(), inner.vars().len()))
            }
        };
        Scalar {
            domain: domain.clone(),
            value,
        }
    }

    /// Image of a rational number. Fails in F_p when `p` divides the denominator.
    pub fn from_rational(domain: &Domain, q: &BigRational) -> Result<Scalar> {
        let num = Scalar::from_bigint(domain, q.numer());
        let den = Scalar::from_bigint(domain, q.denom());
        match num.checked_div(&den) {
            Ok(s) => Ok(s),
            Err(_) => Err(Error::DenominatorVanishes(domain.characteristic())),
        }
    }

    pub fn rational(q: BigRational) -> Scalar {
        Scalar {
            domain: ScalarDomain::rational(),
            value: Value::Rational(q),
        }
    }

    /// Element `n mod p` of F_p.
    pub fn prime(domain: &Domain, n: u64) -> Scalar {
        match **domain {
            ScalarDomain::PrimeField(p) => Scalar {
                domain: domain.clone(),
                value: Value::Prime(n % p),
            },
            _ => panic!("Scalar::prime called on {domain}"),
        }
    }

    /// The polynomial variable `name` of a polynomial or fraction domain.
    pub fn variable(domain: &Domain, name: &str) -> Result<Scalar> {
        let idx = domain
            .vars()
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::InvalidDomain(format!("{domain} has no variable `{name}`")))?;
        match &**domain {
            ScalarDomain::Poly { base, vars } => Ok(Scalar {
                domain: domain.clone(),
                value: Value::Poly(Poly::var(base, vars.len(), idx)),
            }),
            ScalarDomain::Fraction(inner) => {
                let v = Scalar::variable(inner, name)?;
                Scalar::fraction(domain, v.into_poly(), Poly::one(inner.coefficient_field().unwrap(), inner.vars().len()))
            }
            _ => unreachable!(),
        }
    }

    pub fn from_poly(domain: &Domain, p: Poly) -> Scalar {
        match &**domain {
            ScalarDomain::Poly { .. } => Scalar {
                domain: domain.clone(),
                value: Value::Poly(p),
            },
            ScalarDomain::Fraction(inner) => {
                let one = Poly::one(inner.coefficient_field().unwrap(), inner.vars().len());
                Scalar {
                    domain: domain.clone(),
                    value: Value::Fraction(p, one),
                }
            }
            _ => panic!("from_poly on {domain}"),
        }
    }

    /// Canonical `num / den` in a fraction domain.
    pub fn fraction(domain: &Domain, num: Poly, den: Poly) -> Result<Scalar> {
        if !matches!(**domain, ScalarDomain::Fraction(_)) {
            return Err(Error::InvalidDomain(format!("{domain} is not a fraction field")));
        }
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (num, den) = normalize_fraction(num, den);
        Ok(Scalar {
            domain: domain.clone(),
            value: Value::Fraction(num, den),
        })
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn is_zero(&self) -> bool {
        match &self.value {
            Value::Rational(q) => q.is_zero(),
            Value::Prime(v) => *v == 0,
            Value::Poly(p) => p.is_zero(),
            Value::Fraction(n, _) => n.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.value {
            Value::Rational(q) => q.is_one(),
            Value::Prime(v) => *v == 1,
            Value::Poly(p) => p.is_one(),
            Value::Fraction(n, d) => n.is_one() && d.is_one(),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.value {
            Value::Rational(q) => Some(q),
            _ => None,
        }
    }

    pub fn as_prime(&self) -> Option<u64> {
        match &self.value {
            Value::Prime(v) => Some(*v),
            _ => None,
        }
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        match &self.value {
            Value::Poly(p) => Some(p),
            _ => None,
        }
    }

    /// Numerator and denominator of a fraction-field element.
    pub fn as_fraction(&self) -> Option<(&Poly, &Poly)> {
        match &self.value {
            Value::Fraction(n, d) => Some((n, d)),
            _ => None,
        }
    }

    fn into_poly(self) -> Poly {
        match self.value {
            Value::Poly(p) => p,
            _ => panic!("not a polynomial scalar"),
        }
    }

    pub fn same_domain(&self, other: &Scalar) -> bool {
        Arc::ptr_eq(&self.domain, &other.domain) || self.domain == other.domain
    }

    fn check_domain(&self, other: &Scalar) {
        assert!(
            self.same_domain(other),
            "scalar domain mismatch: {} vs {}",
            self.domain,
            other.domain
        );
    }

    pub fn add_ref(&self, other: &Scalar) -> Scalar {
        self.check_domain(other);
        let value = match (&self.value, &other.value) {
            (Value::Rational(a), Value::Rational(b)) => Value::Rational(a + b),
            (Value::Prime(a), Value::Prime(b)) => {
                let p = self.domain.characteristic();
                Value::Prime(((*a as u128 + *b as u128) % p as u128) as u64)
            }
            (Value::Poly(a), Value::Poly(b)) => Value::Poly(a.add(b)),
            (Value::Fraction(an, ad), Value::Fraction(bn, bd)) => {
                if ad == bd {
                    let (n, d) = normalize_fraction(an.add(bn), ad.clone());
                    Value::Fraction(n, d)
                } else {
                    let (n, d) = normalize_fraction(an.mul(bd).add(&bn.mul(ad)), ad.mul(bd));
                    Value::Fraction(n, d)
                }
            }
            _ => unreachable!(),
        };
        Scalar {
            domain: self.domain.clone(),
            value,
        }
    }

    pub fn neg_ref(&self) -> Scalar {
        let value = match &self.value {
            Value::Rational(a) => Value::Rational(-a),
            Value::Prime(a) => {
                let p = self.domain.characteristic();
                Value::Prime(if *a == 0 { 0 } else { p - a })
            }
            Value::Poly(a) => Value::Poly(a.neg()),
            Value::Fraction(n, d) => Value::Fraction(n.neg(), d.clone()),
        };
        Scalar {
            domain: self.domain.clone(),
            value,
        }
    }

    pub fn sub_ref(&self, other: &Scalar) -> Scalar {
        self.add_ref(&other.neg_ref())
    }

    pub fn mul_ref(&self, other: &Scalar) -> Scalar {
        self.check_domain(other);
        let value = match (&self.value, &other.value) {
            (Value::Rational(a), Value::Rational(b)) => Value::Rational(a * b),
            (Value::Prime(a), Value::Prime(b)) => {
                let p = self.domain.characteristic();
                Value::Prime(mul_mod(*a, *b, p))
            }
            (Value::Poly(a), Value::Poly(b)) => Value::Poly(a.mul(b)),
            (Value::Fraction(an, ad), Value::Fraction(bn, bd)) => {
                if an.is_zero() || bn.is_zero() {
                    Value::Fraction(Poly::zero(an.base(), an.nvars()), Poly::one(an.base(), an.nvars()))
                } else {
                    let (n, d) = normalize_fraction(an.mul(bn), ad.mul(bd));
                    Value::Fraction(n, d)
                }
            }
            _ => unreachable!(),
        };
        Scalar {
            domain: self.domain.clone(),
            value,
        }
    }

    /// Multiplicative inverse. Polynomials are invertible only when constant.
    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let value = match &self.value {
            Value::Rational(a) => Value::Rational(a.recip()),
            Value::Prime(a) => Value::Prime(pow_mod(*a, self.domain.characteristic() - 2, self.domain.characteristic())),
            Value::Poly(a) => match a.as_constant() {
                Some(c) => Value::Poly(Poly::constant(c.inv()?, a.nvars())),
                None => return Err(Error::NotInvertible(self.to_string())),
            },
            Value::Fraction(n, d) => {
                let (n, d) = normalize_fraction(d.clone(), n.clone());
                Value::Fraction(n, d)
            }
        };
        Ok(Scalar {
            domain: self.domain.clone(),
            value,
        })
    }

    /// Exact division. In a polynomial domain this succeeds only when the
    /// divisor divides the dividend.
    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        self.check_domain(other);
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match (&self.value, &other.value) {
            (Value::Poly(a), Value::Poly(b)) => match a.div_exact(b) {
                Some(q) => Ok(Scalar {
                    domain: self.domain.clone(),
                    value: Value::Poly(q),
                }),
                None => Err(Error::NotInvertible(format!("{other} does not divide {self}"))),
            },
            _ => Ok(self.mul_ref(&other.inv()?)),
        }
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut acc = Scalar::one(&self.domain);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Parse the textual form produced by `Display`.
    pub fn parse(domain: &Domain, input: &str) -> Result<Scalar> {
        parse_expression(&ScalarBuilder { domain }, input)
    }

    /// Map an integer-coefficient or rational scalar into another domain.
    pub fn convert(&self, target: &Domain) -> Result<Scalar> {
        match &self.value {
            Value::Rational(q) => Scalar::from_rational(target, q),
            Value::Prime(v) if target.characteristic() == self.domain.characteristic() => {
                Ok(Scalar::from_bigint(target, &BigInt::from(*v)))
            }
            _ => Err(Error::DomainMismatch(self.domain.to_string(), target.to_string())),
        }
    }
}

/// Divide out the gcd and make the denominator monic.
fn normalize_fraction(num: Poly, den: Poly) -> (Poly, Poly) {
    if num.is_zero() {
        return (Poly::zero(num.base(), num.nvars()), Poly::one(num.base(), num.nvars()));
    }
    let g = num.gcd(&den);
    let (num, den) = if g.is_one() {
        (num, den)
    } else {
        (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
    };
    let lc = den.leading().unwrap().1.clone();
    if lc.is_one() {
        (num, den)
    } else {
        let inv = lc.inv().unwrap();
        (num.scale(&inv), den.scale(&inv))
    }
}

struct ScalarBuilder<'a> {
    domain: &'a Domain,
}

impl Builder for ScalarBuilder<'_> {
    type Out = Scalar;

    fn number(&self, n: &BigRational) -> Result<Scalar> {
        Scalar::from_rational(self.domain, n)
    }

    fn variable(&self, name: &str) -> Result<Scalar> {
        Scalar::variable(self.domain, name)
    }

    fn add(&self, a: Scalar, b: Scalar) -> Result<Scalar> {
        Ok(&a + &b)
    }

    fn neg(&self, a: Scalar) -> Result<Scalar> {
        Ok(-&a)
    }

    fn mul(&self, a: Scalar, b: Scalar) -> Result<Scalar> {
        Ok(&a * &b)
    }

    fn div(&self, a: Scalar, b: Scalar) -> Result<Scalar> {
        a.checked_div(&b)
    }

    fn pow(&self, a: Scalar, e: u32) -> Result<Scalar> {
        Ok(a.pow(e as u64))
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        self.add_ref(rhs)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        self.sub_ref(rhs)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        self.mul_ref(rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        self.add_ref(&rhs)
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        self.sub_ref(&rhs)
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        self.mul_ref(&rhs)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            Value::Rational(q) => write!(f, "{}", format_rational(q)),
            Value::Prime(v) => write!(f, "{v}"),
            Value::Poly(p) => write!(f, "{}", format_poly(p, self.domain.vars())),
            Value::Fraction(n, d) => {
                if d.is_one() {
                    write!(f, "{}", format_poly(n, self.domain.vars()))
                } else {
                    write!(
                        f,
                        "({})/({})",
                        format_poly(n, self.domain.vars()),
                        format_poly(d, self.domain.vars())
                    )
                }
            }
        }
    }
}

pub(crate) fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Render `coefficient * monomial` terms, highest term first, using `x^e`
/// factors joined by `*`.
pub(crate) fn format_terms<'a, I>(terms: I, names: &[String]) -> String
where
    I: Iterator<Item = (&'a [u32], &'a Scalar)>,
{
    let mut out = String::new();
    for (exps, c) in terms {
        let mono: Vec<String> = exps
            .iter()
            .zip(names)
            .filter(|(e, _)| **e > 0)
            .map(|(e, n)| if *e == 1 { n.clone() } else { format!("{n}^{e}") })
            .collect();
        let coeff = c.to_string();
        let (negative, coeff) = match coeff.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, coeff),
        };
        let body = if mono.is_empty() {
            coeff
        } else if coeff == "1" {
            mono.join("*")
        } else {
            format!("{coeff}*{}", mono.join("*"))
        };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn format_poly(p: &Poly, names: &[String]) -> String {
    format_terms(p.terms().iter().rev().map(|(m, c)| (m.0.as_slice(), c)), names)
}

pub(crate) fn bigint_mod(n: &BigInt, p: u64) -> u64 {
    let r = n.mod_floor(&BigInt::from(p));
    r.to_u64().unwrap()
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Smallest prime strictly greater than `n`.
pub fn next_prime(n: u64) -> u64 {
    let mut c = n + 1;
    while !is_prime(c) {
        c += 1;
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::rational(BigRational::new(n.into(), d.into()))
    }

    #[test]
    fn prime_field_construction_rejects_composites() {
        assert!(ScalarDomain::prime_field(7).is_ok());
        assert_eq!(ScalarDomain::prime_field(9), Err(Error::NotPrime(9)));
        assert_eq!(ScalarDomain::prime_field(1), Err(Error::NotPrime(1)));
    }

    #[test]
    fn poly_domain_rules() {
        let qd = ScalarDomain::rational();
        let p = ScalarDomain::poly(&qd, &["a", "b"]).unwrap();
        assert!(ScalarDomain::poly(&p, &["c"]).is_err());
        assert!(ScalarDomain::poly(&qd, &["a", "a"]).is_err());
        assert!(ScalarDomain::fraction(&qd).is_err());
        let f = ScalarDomain::fraction(&p).unwrap();
        assert!(f.is_field());
        assert!(!p.is_field());
        assert_eq!(f.to_string(), "Frac(Q[a,b])");
    }

    #[test]
    fn rational_display_and_parse() {
        let x = q(6, -4);
        assert_eq!(x.to_string(), "-3/2");
        assert_eq!(Scalar::parse(&ScalarDomain::rational(), "-3/2").unwrap(), x);
        assert_eq!(q(4, 2).to_string(), "2");
    }

    #[test]
    fn prime_field_inverse_and_rational_image() {
        let f3 = ScalarDomain::prime_field(3).unwrap();
        let half = Scalar::from_rational(&f3, &BigRational::new(1.into(), 2.into())).unwrap();
        assert_eq!(half.as_prime(), Some(2));
        assert_eq!(
            Scalar::from_rational(&f3, &BigRational::new(1.into(), 3.into())),
            Err(Error::DenominatorVanishes(3))
        );
        assert_eq!(Scalar::from_int(&f3, -1).as_prime(), Some(2));
    }

    #[test]
    fn polynomial_canonical_display() {
        let qd = ScalarDomain::rational();
        let d = ScalarDomain::poly(&qd, &["x", "y"]).unwrap();
        let x = Scalar::variable(&d, "x").unwrap();
        let y = Scalar::variable(&d, "y").unwrap();
        let e = &(&x * &x) - &(&Scalar::from_int(&d, 3) * &y) + Scalar::from_int(&d, 1);
        assert_eq!(e.to_string(), "x^2 - 3*y + 1");
        assert_eq!(Scalar::parse(&d, "x^2 - 3*y + 1").unwrap(), e);
        let half = Scalar::parse(&d, "1/2*x*y").unwrap();
        assert_eq!(half.to_string(), "1/2*x*y");
    }

    #[test]
    fn fractions_cancel_common_factors() {
        let qd = ScalarDomain::rational();
        let d = ScalarDomain::poly(&qd, &["a", "b"]).unwrap();
        let fd = ScalarDomain::fraction(&d).unwrap();
        let lhs = Scalar::parse(&fd, "(a^2 - b^2)/(2*a + 2*b)").unwrap();
        let rhs = Scalar::parse(&fd, "1/2*a - 1/2*b").unwrap();
        assert_eq!(lhs, rhs);
        let r = Scalar::parse(&fd, "(a)/(3*a*b + 3*a)").unwrap();
        assert_eq!(r.to_string(), "(1/3)/(b + 1)");
        assert_eq!(Scalar::parse(&fd, &r.to_string()).unwrap(), r);
    }

    #[test]
    fn multivariate_gcd_over_f2() {
        let f2 = ScalarDomain::prime_field(2).unwrap();
        let d = ScalarDomain::poly(&f2, &["s", "t"]).unwrap();
        let a = Scalar::parse(&d, "(s + t)^3*(s*t + 1)").unwrap();
        let b = Scalar::parse(&d, "(s + t)^2*(s + 1)").unwrap();
        let g = a.as_poly().unwrap().gcd(b.as_poly().unwrap());
        assert_eq!(Scalar::from_poly(&d, g), Scalar::parse(&d, "s^2 + t^2").unwrap());
    }

    #[test]
    fn polynomial_exact_division() {
        let qd = ScalarDomain::rational();
        let d = ScalarDomain::poly(&qd, &["x", "y"]).unwrap();
        let a = Scalar::parse(&d, "x^2 - y^2").unwrap();
        let b = Scalar::parse(&d, "x - y").unwrap();
        assert_eq!(a.checked_div(&b).unwrap(), Scalar::parse(&d, "x + y").unwrap());
        assert!(b.checked_div(&a).is_err());
    }

    #[test]
    fn miller_rabin_matches_trial_division() {
        for n in 0..2000u64 {
            let trial = n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
            assert_eq!(is_prime(n), trial, "{n}");
        }
        assert!(is_prime(1_000_000_007));
        assert_eq!(next_prime(13), 17);
    }
}
