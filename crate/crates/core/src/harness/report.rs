//! Manifest-wide runs and the JSON report.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::duality::{cohomology_profile, CohomologyProfile};
use crate::error::AlgebraError;
use crate::frobenius::fedder_is_f_pure;
use crate::harness::certificate::{effective_hsl_top, verify_bound, verify_identities, BoundCertificate, IdentityReport};
use crate::harness::manifest::Manifest;
use crate::poly::Polynomial;
use crate::sequences::{filter_regular, random_filter_regular_sequence, sequence_report, DEFAULT_SAMPLER_BUDGET};

pub const REPORT_SCHEMA: &str = "frobtest-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SequenceSource {
    Explicit,
    Sampled,
}

#[derive(Clone, Debug, Serialize)]
pub struct TaskReport {
    pub index: usize,
    pub source: SequenceSource,
    pub sequence: Vec<String>,
    pub is_sop: bool,
    pub in_m_power: u64,
    pub weak_n: Option<u32>,
    pub certificate: BoundCertificate,
    pub identities: IdentityReport,
}

impl TaskReport {
    /// Bound and identities hold, and the certified stop is self-consistent.
    pub fn pass(&self) -> bool {
        let c = &self.certificate;
        c.holds && c.stop_consistent && c.heuristic_agrees && self.identities.all_pass()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Rejected {
    pub index: usize,
    pub sequence: Vec<String>,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct HslTop {
    pub value: u32,
    pub provenance: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub tasks: usize,
    pub passed: usize,
    pub failed: Vec<usize>,
    pub uncertified: Vec<usize>,
    pub max_fte_observed: Option<u32>,
    pub all_pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RingReport {
    pub ring: String,
    pub characteristic: u32,
    pub vars: Vec<String>,
    pub relations: Vec<String>,
    pub f_pure: bool,
    pub hsl_top: HslTop,
    pub profile: CohomologyProfile,
    pub sampling_degree: u32,
    /// Sampled sequences are evidence for the supremum over parameter ideals, not a proof.
    pub evidence: &'static str,
    pub tasks: Vec<TaskReport>,
    pub rejected: Vec<Rejected>,
    pub summary: Summary,
    pub timings_ms: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub rings: Vec<RingReport>,
    pub all_pass: bool,
}

impl Report {
    /// Serialized report; without timings the output is reproducible.
    pub fn to_json(&self, with_timings: bool) -> String {
        let mut value = serde_json::to_value(self).expect("report serializes");
        if !with_timings {
            strip_timings(&mut value);
        }
        serde_json::to_string_pretty(&value).expect("value serializes")
    }
}

fn strip_timings(v: &mut serde_json::Value) {
    match v {
        serde_json::Value::Object(map) => {
            map.remove("timings_ms");
            for x in map.values_mut() {
                strip_timings(x);
            }
        }
        serde_json::Value::Array(xs) => xs.iter_mut().for_each(strip_timings),
        _ => {}
    }
}

#[derive(Clone, Copy, Debug)]
pub struct RunOptions {
    pub jobs: usize,
    pub max_e: u32,
    /// Replaces the manifest's sampling seed.
    pub seed: Option<u64>,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            jobs: 1,
            max_e: crate::frobenius::DEFAULT_MAX_E,
            seed: None,
        }
    }
}

#[derive(Debug, thiserror::Error)]
#[error("{ring}: {source}")]
pub struct RunError {
    pub ring: String,
    pub source: AlgebraError,
}

fn strings(ps: &[Polynomial]) -> Vec<String> {
    ps.iter().map(ToString::to_string).collect()
}

/// Verifies every explicit and sampled sequence of one manifest.
pub fn run_manifest(manifest: &Manifest, opts: &RunOptions) -> Result<RingReport, RunError> {
    let started = Instant::now();
    let err = |source: AlgebraError| RunError {
        ring: manifest.id.clone(),
        source,
    };
    let s = &manifest.ring;
    let profile = cohomology_profile(s).map_err(err)?;
    let f_pure = fedder_is_f_pure(s).map_err(err)?;
    let (hsl_value, _) = effective_hsl_top(s, manifest.known.as_ref().map(|k| k.hsl_top)).map_err(err)?;
    let hsl_top = HslTop {
        value: hsl_value,
        provenance: if f_pure {
            "forced to 0: ring is F-pure by Fedder's criterion".into()
        } else {
            manifest.known.as_ref().map(|k| k.provenance.clone()).unwrap_or_default()
        },
    };
    let t = profile.fin_dim;
    let degree = manifest.sampling.degree.max(2 * profile.n0);
    let seed = opts.seed.unwrap_or(manifest.sampling.seed);

    let mut candidates: Vec<(SequenceSource, Vec<Polynomial>)> = manifest
        .sequences
        .iter()
        .map(|q| (SequenceSource::Explicit, q.clone()))
        .collect();
    for i in 0..manifest.sampling.count {
        let q = random_filter_regular_sequence(s, t, degree, seed.wrapping_add(i as u64), DEFAULT_SAMPLER_BUDGET)
            .map_err(err)?;
        candidates.push((SequenceSource::Sampled, q));
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs.max(1))
        .build()
        .expect("thread pool");
    let outcomes: Vec<Result<TaskReport, Rejected>> = pool.install(|| {
        candidates
            .par_iter()
            .enumerate()
            .map(|(index, (source, q))| run_task(index, *source, &manifest.id, s, q, &profile, hsl_value, opts))
            .collect()
    });

    let mut tasks = Vec::new();
    let mut rejected = Vec::new();
    for o in outcomes {
        match o {
            Ok(tr) => tasks.push(tr),
            Err(r) => rejected.push(r),
        }
    }
    let uncertified: Vec<usize> = tasks
        .iter()
        .filter(|t| !t.certificate.certified_stops)
        .map(|t| t.index)
        .collect();
    let failed: Vec<usize> = tasks
        .iter()
        .filter(|t| t.certificate.certified_stops && !t.pass())
        .map(|t| t.index)
        .collect();
    let passed = tasks.iter().filter(|t| t.certificate.certified_stops && t.pass()).count();
    let max_fte_observed = tasks.iter().map(|t| t.certificate.fte).max();
    // a stop that fails its own consistency check is a failure, not a pass
    let all_pass = failed.is_empty() && uncertified.is_empty();
    Ok(RingReport {
        ring: manifest.id.clone(),
        characteristic: s.characteristic(),
        vars: s.ring().var_names().to_vec(),
        relations: manifest.relations.clone(),
        f_pure,
        hsl_top,
        profile,
        sampling_degree: degree,
        evidence: "sampled evidence",
        summary: Summary {
            tasks: tasks.len(),
            passed,
            failed,
            uncertified,
            max_fte_observed,
            all_pass,
        },
        tasks,
        rejected,
        timings_ms: started.elapsed().as_millis(),
    })
}

#[allow(clippy::too_many_arguments)]
fn run_task(
    index: usize,
    source: SequenceSource,
    ring_id: &str,
    s: &crate::ideal::QuotientRing,
    q: &[Polynomial],
    profile: &CohomologyProfile,
    hsl_top: u32,
    opts: &RunOptions,
) -> Result<TaskReport, Rejected> {
    let reject = |reason: String| Rejected {
        index,
        sequence: strings(q),
        reason,
    };
    if q.len() != profile.fin_dim {
        return Err(reject(format!("length {} differs from t = {}", q.len(), profile.fin_dim)));
    }
    match filter_regular(q, s) {
        Ok(true) => {}
        Ok(false) => return Err(reject("not filter regular".into())),
        Err(e) => return Err(reject(e.to_string())),
    }
    let report = sequence_report(q, s, profile.n0).map_err(|e| reject(e.to_string()))?;
    let certificate =
        verify_bound(ring_id, s, q, profile, Some(hsl_top), opts.max_e).map_err(|e| reject(e.to_string()))?;
    let identities = verify_identities(s, q, profile).map_err(|e| reject(e.to_string()))?;
    Ok(TaskReport {
        index,
        source,
        sequence: strings(q),
        is_sop: report.is_sop,
        in_m_power: report.in_m_power,
        weak_n: report.weak_n,
        certificate,
        identities,
    })
}

/// Runs every manifest; the report is assembled in manifest order.
pub fn run_all(manifests: &[Manifest], opts: &RunOptions) -> Result<Report, RunError> {
    let rings = manifests
        .iter()
        .map(|m| run_manifest(m, opts))
        .collect::<Result<Vec<_>, _>>()?;
    let all_pass = rings.iter().all(|r| r.summary.all_pass);
    Ok(Report {
        schema: REPORT_SCHEMA,
        rings,
        all_pass,
    })
}
