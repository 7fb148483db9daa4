//! End-to-end run on a rational action: inner-faithful quotient, structure
//! constant ring, certificate, good primes, per-prime reduction with central
//! subrings, and the cocommutativity verdict.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::action::{certificate_search, inner_faithful_radical, validate_module_algebra, ActionSpec, ModuleCheck};
use crate::charp::{central_tower, verify_freeness_rank};
use crate::error::{Error, Result};
use crate::hopf::{factorial, grouplike_elements, is_cocommutative, validate_hopf_axioms, HopfData};
use crate::ore::validate_tower;
use crate::reduce::{
    certificate_mod_p, check_transport, good_primes, reduce_mod_p, structure_constant_ring,
    subdirect_injectivity_check, InjectivityReport, PrimeSite,
};
use crate::scalar::ScalarDomain;

/// Degree bound for module-algebra checks at parse time and per prime.
pub const VALIDATION_DEGREE: u32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    Json,
    Text,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PipelineConfig {
    pub prime_count: usize,
    /// Replaces `q = dim(H)!` when set.
    pub q_override: Option<u64>,
    pub degree_bound: u32,
    pub k_max: u32,
    pub format: ReportFormat,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            prime_count: 5,
            q_override: None,
            degree_bound: 6,
            k_max: crate::charp::DEFAULT_K_MAX,
            format: ReportFormat::Json,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    FactorsThroughGroupAlgebra,
    HypothesisFailed { which: String, location: String },
    Inconclusive { reason: String },
}

impl Verdict {
    pub fn describe(&self) -> String {
        match self {
            Verdict::FactorsThroughGroupAlgebra => "the action factors through a group algebra".into(),
            Verdict::HypothesisFailed { which, location } => format!("hypothesis failed: {which} at {location}"),
            Verdict::Inconclusive { reason } => format!("inconclusive: {reason}"),
        }
    }

    pub fn is_conclusive(&self) -> bool {
        !matches!(self, Verdict::Inconclusive { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RadicalSummary {
    pub hopf_dim: usize,
    pub radical_dim: usize,
    pub quotient_dim: usize,
    pub stabilization_index: usize,
    pub degree_bound: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingSummary {
    pub modulus: String,
    pub generator_count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateSummary {
    pub tensor_power: usize,
    pub degree_bound: u32,
    pub determinant: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rank {
    pub p: u64,
    pub s: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeRecord {
    pub prime: u64,
    pub validators_passed: bool,
    pub semisimple: bool,
    pub cosemisimple: bool,
    pub certificate_nonzero: bool,
    pub centrals: Vec<String>,
    pub rank: Option<Rank>,
    /// `gcd(p^s, dim(H)!) = 1`.
    pub coprime: bool,
    pub prime_exceeds_dim: bool,
    pub cocommutative: bool,
    pub grouplike_count: Option<usize>,
    pub error: Option<String>,
}

impl PrimeRecord {
    fn empty(prime: u64) -> PrimeRecord {
        PrimeRecord {
            prime,
            validators_passed: false,
            semisimple: false,
            cosemisimple: false,
            certificate_nonzero: false,
            centrals: Vec::new(),
            rank: None,
            coprime: false,
            prime_exceeds_dim: false,
            cocommutative: false,
            grouplike_count: None,
            error: None,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.error.is_none()
            && self.validators_passed
            && self.semisimple
            && self.cosemisimple
            && self.certificate_nonzero
            && self.rank.is_some()
            && self.coprime
            && self.cocommutative
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftSummary {
    pub cocommutative_over_q: bool,
    pub antisymmetric_constants: usize,
    pub injectivity: InjectivityReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionReport {
    pub input_digest: String,
    pub prime_count: usize,
    pub degree_bound: u32,
    pub k_max: u32,
    pub radical: Option<RadicalSummary>,
    pub ring: Option<RingSummary>,
    pub certificate: Option<CertificateSummary>,
    pub q: Option<String>,
    pub primes: Vec<PrimeRecord>,
    pub lift: Option<LiftSummary>,
    pub verdict: Verdict,
}

/// Parse and validate an action document. Validation errors list every
/// failing check id, comma separated.
pub fn parse_spec(document: &str) -> Result<ActionSpec> {
    let v: Value = serde_json::from_str(document).map_err(|e| Error::Parse {
        path: format!("line {} column {}", e.line(), e.column()),
        message: e.to_string(),
    })?;
    let spec = ActionSpec::from_json(&v)?;
    let axioms = validate_hopf_axioms(spec.hopf());
    if !axioms.is_empty() {
        let ids: Vec<&str> = axioms.iter().map(|a| a.id()).collect();
        return Err(Error::Validation { axiom: ids.join(", ") });
    }
    if !validate_tower(spec.tower()).is_empty() {
        return Err(Error::Validation { axiom: "tower".into() });
    }
    let mut checks: Vec<ModuleCheck> = validate_module_algebra(&spec, VALIDATION_DEGREE)?
        .iter()
        .map(|f| f.check)
        .collect();
    checks.sort();
    checks.dedup();
    if !checks.is_empty() {
        let ids: Vec<&str> = checks.iter().map(|c| c.id()).collect();
        return Err(Error::Validation { axiom: ids.join(", ") });
    }
    Ok(spec)
}

pub fn input_digest(spec: &ActionSpec) -> String {
    let bytes = serde_json::to_vec(&spec.to_json()).expect("json serialisation");
    Sha256::digest(&bytes).iter().fold(String::new(), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

fn to_rational(s: &crate::scalar::Scalar) -> BigRational {
    s.as_rational().cloned().expect("rational constant")
}

fn antisymmetric_constants(h: &HopfData) -> Vec<BigRational> {
    let d = h.dim();
    let mut out = Vec::with_capacity(d * d * d);
    for k in 0..d {
        for i in 0..d {
            for j in i + 1..d {
                out.push(to_rational(h.comult(k, i, j)) - to_rational(h.comult(k, j, i)));
            }
        }
    }
    out
}

fn examine_prime(
    spec: &ActionSpec,
    site: &PrimeSite,
    cert: &crate::action::Certificate,
    cfg: &PipelineConfig,
) -> PrimeRecord {
    let p = site.prime();
    let mut rec = PrimeRecord::empty(p);
    let run = |rec: &mut PrimeRecord| -> Result<()> {
        let reduced = reduce_mod_p(spec, site)?;
        let transport = check_transport(&reduced, VALIDATION_DEGREE)?;
        rec.validators_passed = transport.validators_passed();
        rec.semisimple = transport.semisimple;
        rec.cosemisimple = transport.cosemisimple;
        rec.certificate_nonzero = certificate_mod_p(cert, site)?;
        let dim = reduced.hopf().dim();
        rec.cocommutative = is_cocommutative(reduced.hopf());
        rec.prime_exceeds_dim = p as usize > dim;
        rec.grouplike_count = match grouplike_elements(reduced.hopf(), None) {
            Ok(g) => Some(g.len()),
            Err(Error::EnumerationTooLarge(_)) => None,
            Err(e) => return Err(e),
        };
        let centre = central_tower(reduced.tower(), cfg.k_max)?;
        rec.centrals = centre.centrals.iter().map(|c| c.element.to_string()).collect();
        let verified = verify_freeness_rank(&centre, cfg.degree_bound)?;
        let power = BigInt::from(p).pow(verified.s);
        rec.coprime = power.gcd(&factorial(dim)).is_one();
        rec.rank = Some(Rank { p, s: verified.s });
        Ok(())
    };
    if let Err(e) = run(&mut rec) {
        rec.error = Some(e.to_string());
    }
    rec
}

fn first_failure(rec: &PrimeRecord) -> Option<Verdict> {
    let at = format!("p = {}", rec.prime);
    let fail = |which: &str| {
        Some(Verdict::HypothesisFailed {
            which: which.into(),
            location: at.clone(),
        })
    };
    if let Some(e) = &rec.error {
        return Some(Verdict::Inconclusive {
            reason: format!("{at}: {e}"),
        });
    }
    if !rec.validators_passed {
        return fail("validators");
    }
    if !rec.semisimple {
        return fail("semisimple");
    }
    if !rec.cosemisimple {
        return fail("cosemisimple");
    }
    if !rec.certificate_nonzero {
        return fail("faithful");
    }
    if !rec.coprime {
        return fail("coprime");
    }
    if !rec.cocommutative {
        return fail("consistency");
    }
    None
}

/// Run every stage; stage errors become an inconclusive verdict. Only input
/// problems (non-rational data, degree bound below 2) are returned as errors.
pub fn run_pipeline(spec: &ActionSpec, cfg: &PipelineConfig) -> Result<ReductionReport> {
    if !matches!(**spec.domain(), ScalarDomain::Rational) {
        return Err(Error::InvalidDomain(format!("the pipeline expects data over Q, got {}", spec.domain())));
    }
    if cfg.degree_bound < 2 {
        return Err(Error::Unsupported(format!("degree bound {} is below 2", cfg.degree_bound)));
    }
    let mut report = ReductionReport {
        input_digest: input_digest(spec),
        prime_count: cfg.prime_count,
        degree_bound: cfg.degree_bound,
        k_max: cfg.k_max,
        radical: None,
        ring: None,
        certificate: None,
        q: None,
        primes: Vec::new(),
        lift: None,
        verdict: Verdict::Inconclusive { reason: String::new() },
    };
    report.verdict = match stages(spec, cfg, &mut report) {
        Ok(v) => v,
        Err(Error::NotSemisimple(m)) => Verdict::HypothesisFailed {
            which: "semisimple".into(),
            location: format!("Q ({m})"),
        },
        Err(e) => Verdict::Inconclusive { reason: e.to_string() },
    };
    Ok(report)
}

fn stages(spec: &ActionSpec, cfg: &PipelineConfig, report: &mut ReductionReport) -> Result<Verdict> {
    let radical = inner_faithful_radical(spec, cfg.degree_bound)?;
    let quotient = if radical.is_inner_faithful() {
        spec.clone()
    } else {
        spec.quotient(&radical.ideal)?
    };
    let dim = quotient.hopf().dim();
    report.radical = Some(RadicalSummary {
        hopf_dim: spec.hopf().dim(),
        radical_dim: radical.ideal.dim(),
        quotient_dim: dim,
        stabilization_index: radical.chain.stabilization_index,
        degree_bound: radical.chain.degree_bound,
    });

    let ring = structure_constant_ring(&quotient)?;
    report.ring = Some(RingSummary {
        modulus: ring.modulus.to_string(),
        generator_count: ring.generators.len(),
    });

    let cert = certificate_search(&quotient, radical.chain.stabilization_index, cfg.degree_bound)?;
    report.certificate = Some(CertificateSummary {
        tensor_power: cert.tensor_power,
        degree_bound: cert.degree_bound,
        determinant: cert.determinant.to_string(),
    });

    let q = match cfg.q_override {
        Some(q) => q,
        None => factorial(dim)
            .to_u64()
            .ok_or_else(|| Error::Unsupported(format!("{dim}! does not fit a machine word")))?,
    };
    report.q = Some(q.to_string());
    let sites = good_primes(&ring, &to_rational(&cert.determinant), q, cfg.prime_count);
    report.primes = sites.iter().map(|s| examine_prime(&quotient, s, &cert, cfg)).collect();

    let antisym = antisymmetric_constants(quotient.hopf());
    let cocommutative_over_q = is_cocommutative(quotient.hopf());
    let injectivity = subdirect_injectivity_check(&ring, &antisym, &sites);
    report.lift = Some(LiftSummary {
        cocommutative_over_q,
        antisymmetric_constants: antisym.len(),
        injectivity,
    });

    if sites.is_empty() {
        return Ok(Verdict::Inconclusive { reason: "no primes".into() });
    }
    if let Some(v) = report.primes.iter().find_map(first_failure) {
        return Ok(v);
    }
    if !cocommutative_over_q {
        return Ok(Verdict::HypothesisFailed {
            which: "lift".into(),
            location: "Q".into(),
        });
    }
    Ok(Verdict::FactorsThroughGroupAlgebra)
}

fn flag(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// JSON (pretty, stable key order) or a per-prime text table.
pub fn emit_report(r: &ReductionReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => serde_json::to_string_pretty(r).expect("report serialises") + "\n",
        ReportFormat::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "input {}", r.input_digest);
            if let Some(rad) = &r.radical {
                let _ = writeln!(
                    s,
                    "radical dim {} of {}, quotient dim {}, tensor power {}",
                    rad.radical_dim, rad.hopf_dim, rad.quotient_dim, rad.stabilization_index
                );
            }
            if let Some(ring) = &r.ring {
                let _ = writeln!(s, "ring Z[1/{}] from {} constants", ring.modulus, ring.generator_count);
            }
            if let Some(c) = &r.certificate {
                let _ = writeln!(s, "certificate determinant {} at degree {}", c.determinant, c.degree_bound);
            }
            if let Some(q) = &r.q {
                let _ = writeln!(s, "q = {q}");
            }
            let _ = writeln!(
                s,
                "{:>6} {:>6} {:>6} {:>6} {:>6} {:>8} {:>6} {:>6} {:>6}",
                "p", "valid", "ss", "coss", "cert", "rank", "gcd1", "cocom", "group"
            );
            for p in &r.primes {
                let rank = p.rank.as_ref().map_or("-".to_string(), |k| format!("{}^{}", k.p, k.s));
                let groups = p.grouplike_count.map_or("-".to_string(), |g| g.to_string());
                let _ = writeln!(
                    s,
                    "{:>6} {:>6} {:>6} {:>6} {:>6} {:>8} {:>6} {:>6} {:>6}",
                    p.prime,
                    flag(p.validators_passed),
                    flag(p.semisimple),
                    flag(p.cosemisimple),
                    flag(p.certificate_nonzero),
                    rank,
                    flag(p.coprime),
                    flag(p.cocommutative),
                    groups
                );
                if let Some(e) = &p.error {
                    let _ = writeln!(s, "       error: {e}");
                }
            }
            if let Some(l) = &r.lift {
                let _ = writeln!(s, "cocommutative over Q: {}", flag(l.cocommutative_over_q));
            }
            let _ = writeln!(s, "verdict: {}", r.verdict.describe());
            s
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ore::OreTower;
    use crate::scalar::ScalarDomain;

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

    fn trivial_on_line() -> ActionSpec {
        let dom = ScalarDomain::rational();
        let tower = OreTower::new(&dom, &["x"]).unwrap().into_arc();
        ActionSpec::trivial(HopfData::cyclic(&dom, 2).unwrap(), tower).unwrap()
    }

    #[test]
    fn sign_action_factors() {
        let cfg = PipelineConfig {
            prime_count: 2,
            ..PipelineConfig::default()
        };
        let r = run_pipeline(&sign_action(), &cfg).unwrap();
        assert_eq!(r.verdict, Verdict::FactorsThroughGroupAlgebra);
        let ps: Vec<u64> = r.primes.iter().map(|p| p.prime).collect();
        assert_eq!(ps, vec![3, 5]);
        for p in &r.primes {
            assert_eq!(p.rank, Some(Rank { p: p.prime, s: 2 }));
            assert_eq!(p.grouplike_count, Some(2));
        }
        let text = emit_report(&r, ReportFormat::Text);
        assert!(text.contains("factors through a group algebra"));
        let json = emit_report(&r, ReportFormat::Json);
        let back: ReductionReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn trivial_action_quotient() {
        let cfg = PipelineConfig {
            prime_count: 2,
            ..PipelineConfig::default()
        };
        let r = run_pipeline(&trivial_on_line(), &cfg).unwrap();
        let rad = r.radical.clone().unwrap();
        assert_eq!((rad.radical_dim, rad.quotient_dim), (1, 1));
        assert_eq!(r.verdict, Verdict::FactorsThroughGroupAlgebra);
    }

    #[test]
    fn no_primes_is_inconclusive() {
        let cfg = PipelineConfig {
            prime_count: 0,
            ..PipelineConfig::default()
        };
        let r = run_pipeline(&sign_action(), &cfg).unwrap();
        assert_eq!(r.verdict, Verdict::Inconclusive { reason: "no primes".into() });
        assert!(emit_report(&r, ReportFormat::Text).contains("inconclusive"));
    }

    #[test]
    fn parse_errors_carry_locations() {
        let e = parse_spec("{\n  \"hopf\": [1,\n").unwrap_err();
        assert!(matches!(e, Error::Parse { ref path, .. } if path.starts_with("line 3")));
        let mut v = sign_action().to_json();
        v["action"]["g"]["y"] = Value::String("y".into());
        let e = parse_spec(&v.to_string()).unwrap_err();
        assert!(matches!(e, Error::Validation { ref axiom } if axiom.contains("module-algebra:relation")));
        let ok = parse_spec(&sign_action().to_json().to_string()).unwrap();
        assert_eq!(input_digest(&ok), input_digest(&sign_action()));
    }
}
