use std::path::PathBuf;

use num_rational::BigRational;
use num_traits::One;

use orehopf::charp::central_tower;
use orehopf::pipeline::{run_pipeline, PipelineConfig, Verdict};
use orehopf::reduce::{check_transport, good_primes, reduce_mod_p, structure_constant_ring};
use orehopf::{parse_spec, ActionSpec};

fn corpus(name: &str) -> ActionSpec {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus").join(name);
    parse_spec(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn quick() -> PipelineConfig {
    PipelineConfig {
        prime_count: 2,
        degree_bound: 4,
        ..PipelineConfig::default()
    }
}

#[test]
fn every_corpus_file_factors() {
    let expect = [
        ("weyl_c2.json", 0, 2, 2),
        ("trivial_c2_poly.json", 1, 1, 0),
        ("factor_c2xc2_weyl.json", 2, 2, 2),
        ("jordan_c2.json", 0, 2, 2),
        ("heisenberg_c2.json", 0, 2, 3),
        ("rotation_c3_plane.json", 0, 3, 0),
    ];
    for (name, radical, quotient, s) in expect {
        let r = run_pipeline(&corpus(name), &quick()).unwrap();
        assert_eq!(r.verdict, Verdict::FactorsThroughGroupAlgebra, "{name}");
        let rad = r.radical.as_ref().unwrap();
        assert_eq!((rad.radical_dim, rad.quotient_dim), (radical, quotient), "{name}");
        for rec in &r.primes {
            assert_eq!(rec.rank.as_ref().unwrap().s, s, "{name} at {}", rec.prime);
            assert!(rec.all_passed(), "{name} at {}", rec.prime);
        }
    }
}

#[test]
fn rotation_needs_primes_above_six() {
    let spec = corpus("rotation_c3_plane.json");
    let ring = structure_constant_ring(&spec).unwrap();
    assert_eq!(ring.modulus, 3.into());
    let r = run_pipeline(&spec, &quick()).unwrap();
    let ps: Vec<u64> = r.primes.iter().map(|p| p.prime).collect();
    assert_eq!(ps, vec![7, 11]);
    assert_eq!(r.primes[0].grouplike_count, Some(3));
}

#[test]
fn reduced_corpus_keeps_centres() {
    let spec = corpus("heisenberg_c2.json");
    let ring = structure_constant_ring(&spec).unwrap();
    for site in good_primes(&ring, &BigRational::one(), 2, 3) {
        let red = reduce_mod_p(&spec, &site).unwrap();
        assert!(check_transport(&red, 3).unwrap().all_passed());
        let c = central_tower(red.tower(), 4).unwrap();
        let p = site.prime();
        let names: Vec<String> = c.centrals.iter().map(|c| c.element.to_string()).collect();
        assert_eq!(names, vec![format!("z^{p}"), format!("x^{p}"), format!("y^{p}")]);
    }
}

#[test]
fn more_primes_keep_the_verdict() {
    for name in ["weyl_c2.json", "factor_c2xc2_weyl.json"] {
        let spec = corpus(name);
        let few = run_pipeline(&spec, &PipelineConfig { prime_count: 1, ..quick() }).unwrap();
        let many = run_pipeline(&spec, &PipelineConfig { prime_count: 4, ..quick() }).unwrap();
        assert_eq!(few.verdict, many.verdict, "{name}");
        assert_eq!(few.primes[..], many.primes[..1], "{name}");
        for rec in &many.primes {
            if rec.rank.as_ref().unwrap().s > 0 {
                assert_eq!(rec.coprime, rec.prime_exceeds_dim, "{name} at {}", rec.prime);
            }
        }
    }
}

#[test]
fn small_q_admits_small_primes() {
    let spec = corpus("rotation_c3_plane.json");
    let cfg = PipelineConfig { q_override: Some(1), prime_count: 1, ..quick() };
    let r = run_pipeline(&spec, &cfg).unwrap();
    let rec = &r.primes[0];
    assert_eq!((rec.prime, rec.rank.as_ref().unwrap().s), (2, 0));
    assert!(!rec.prime_exceeds_dim && rec.coprime);
}
