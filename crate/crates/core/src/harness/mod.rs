//! Manifest-driven verification.

pub mod certificate;
pub mod manifest;
pub mod report;

pub use certificate::{log_exponent, verify_bound, verify_identities, BoundCertificate, IdentityReport};
pub use manifest::{KnownHsl, Manifest, ManifestError, Sampling};
pub use report::{run_all, run_manifest, Report, RunError, RunOptions, REPORT_SCHEMA};
