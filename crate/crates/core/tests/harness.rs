mod common;

use std::path::PathBuf;

use common::*;
use frobtest_core::duality::cohomology_profile;
use frobtest_core::harness::{
    log_exponent, run_all, verify_bound, verify_identities, Manifest, ManifestError, RunOptions, REPORT_SCHEMA,
};
use frobtest_core::{AlgebraError, MonomialOrder, QuotientRing};

fn corpus() -> Vec<Manifest> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../manifests");
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "toml"))
        .collect();
    paths.sort();
    paths.iter().map(|p| Manifest::load(p, MonomialOrder::Grevlex).unwrap()).collect()
}

fn parse(text: &str) -> Result<Manifest, ManifestError> {
    Manifest::parse(text, "inline", MonomialOrder::Grevlex)
}

#[test]
fn manifests_load() {
    let all = corpus();
    let ids: Vec<&str> = all.iter().map(|m| m.id.as_str()).collect();
    assert_eq!(
        ids,
        ["fermat_cubic_f2", "polynomial_f2", "polynomial_f5", "two_planes_f2", "two_planes_f3"]
    );
    let fermat = &all[0];
    assert_eq!(fermat.known.as_ref().unwrap().hsl_top, 1);
    assert!(!fermat.known.as_ref().unwrap().provenance.is_empty());
}

#[test]
fn manifest_validation() {
    let empty = parse("[ring]\np = 3\nvars = [\"x\", \"y\"]\n").unwrap();
    assert!(empty.ring.is_polynomial_ring());
    assert!(empty.sequences.is_empty());
    assert_eq!(empty.sampling.count, 0);

    let composite = parse("[ring]\np = 4\nvars = [\"x\"]\n").unwrap_err();
    assert!(matches!(composite, ManifestError::Algebra { source: AlgebraError::NotPrime(4), .. }));

    let unknown = parse("[ring]\np = 2\nvars = [\"x\"]\ncolour = 1\n").unwrap_err();
    assert!(unknown.to_string().contains("colour"), "{unknown}");

    let no_provenance = parse("[ring]\np = 2\nvars = [\"x\"]\n[known]\nhsl_top = 1\n").unwrap_err();
    assert!(matches!(no_provenance, ManifestError::Invalid { .. }));

    let negative = parse("[ring]\np = 2\nvars = [\"x\"]\n[known]\nhsl_top = -1\nprovenance = \"?\"\n");
    assert!(negative.is_err());

    let bad_poly = parse("[ring]\np = 2\nvars = [\"x\"]\nrelations = [\"x^^2\"]\n").unwrap_err();
    assert!(bad_poly.to_string().contains("relations"), "{bad_poly}");

    let truncated = parse("[ring]\np = 2\nvars = [\"x\"").unwrap_err();
    assert!(truncated.to_string().contains("line"), "{truncated}");
}

#[test]
fn bound_on_the_supersingular_cone() {
    let s = fermat();
    let r = s.ring().clone();
    let profile = cohomology_profile(&s).unwrap();
    let c = verify_bound("fermat", &s, &polys(&r, &["x", "y"]), &profile, Some(1), 12).unwrap();
    assert_eq!((c.fte, c.n0, c.e0, c.bound), (1, 1, 1, 2));
    assert!(c.holds && c.stop_consistent && c.heuristic_agrees);
    assert_eq!(c.witness.as_deref(), Some("z^2"));
    let refused = verify_bound("fermat", &s, &polys(&r, &["x", "y"]), &profile, None, 12).unwrap_err();
    assert!(matches!(refused, AlgebraError::Precondition(_)));
}

#[test]
fn bound_on_a_polynomial_ring() {
    let s = QuotientRing::polynomial_ring(&ring(5, &["x", "y", "z"]));
    let r = s.ring().clone();
    let profile = cohomology_profile(&s).unwrap();
    let c = verify_bound("poly", &s, &polys(&r, &["x", "y", "z"]), &profile, None, 12).unwrap();
    assert_eq!((c.fte, c.bound, c.hsl_used), (0, 1, 0));
    assert!(c.holds);
    assert_eq!(log_exponent(5, profile.n0), 1);
}

#[test]
fn identities_on_the_two_planes() {
    let s = two_planes(2);
    let r = s.ring().clone();
    let profile = cohomology_profile(&s).unwrap();
    let report = verify_identities(&s, &polys(&r, &["x1^2+x3^2", "x2^2+x4^2"]), &profile).unwrap();
    assert!(report.skipped.is_none());
    assert!(report.all_pass(), "{:?}", report.checks);
    let lim = report.checks.iter().find(|c| c.name == "limit-length").unwrap();
    assert_eq!((lim.lhs.as_str(), lim.rhs.as_str()), ("2", "2"));
    let socle = report
        .checks
        .iter()
        .find(|c| c.name == "socle-splitting" && c.j == Some(1) && c.k == Some(1))
        .unwrap();
    assert_eq!((socle.lhs.as_str(), socle.rhs.as_str()), ("1", "1"));

    let linear = verify_identities(&s, &polys(&r, &["x1+x3", "x2+x4"]), &profile).unwrap();
    assert!(linear.checks.is_empty() && linear.skipped.is_some());
}

#[test]
fn corpus_passes_and_is_deterministic() {
    let all = corpus();
    let serial = run_all(&all, &RunOptions::default()).unwrap();
    assert!(serial.all_pass);
    assert_eq!(serial.schema, REPORT_SCHEMA);
    for ring in &serial.rings {
        assert!(ring.summary.uncertified.is_empty());
        assert_eq!(ring.summary.passed, ring.tasks.len());
        assert_eq!(ring.evidence, "sampled evidence");
    }
    let parallel = run_all(
        &all,
        &RunOptions {
            jobs: 4,
            ..RunOptions::default()
        },
    )
    .unwrap();
    assert_eq!(serial.to_json(false), parallel.to_json(false));
    assert!(serial.to_json(true).contains("timings_ms"));
    assert!(!serial.to_json(false).contains("timings_ms"));
}

#[test]
fn seed_override_changes_samples() {
    let planes: Vec<Manifest> = corpus().into_iter().filter(|m| m.id == "two_planes_f3").collect();
    let a = run_all(&planes, &RunOptions::default()).unwrap();
    let b = run_all(
        &planes,
        &RunOptions {
            seed: Some(12345),
            ..RunOptions::default()
        },
    )
    .unwrap();
    assert!(b.all_pass);
    assert_ne!(a.to_json(false), b.to_json(false));
}

#[test]
fn empty_manifest_gives_an_empty_report() {
    let m = parse("[ring]\np = 2\nvars = [\"x\", \"y\"]\n[sampling]\ncount = 0\ndegree = 1\nseed = 0\n").unwrap();
    let report = run_all(&[m], &RunOptions::default()).unwrap();
    assert!(report.all_pass);
    assert!(report.rings[0].tasks.is_empty());
    assert_eq!(report.rings[0].summary.tasks, 0);
}

#[test]
fn wrong_length_sequences_are_rejected() {
    let m = parse("[ring]\np = 2\nvars = [\"x\", \"y\"]\n[[sequence]]\nelements = [\"x\"]\n").unwrap();
    let report = run_all(&[m], &RunOptions::default()).unwrap();
    assert_eq!(report.rings[0].rejected.len(), 1);
    assert!(report.rings[0].rejected[0].reason.contains("length"));
}
