//! Mahler measures of integer polynomials, detection of k-nonreciprocal
//! structure, the associated lower bound with its proof certificate, the
//! sharp example family, and exhaustive coefficient-box scans.

pub use rug;

pub mod certificate;
pub mod error;
pub mod measure;
pub mod nonreciprocal;
pub mod poly;
pub mod scan;
pub mod sharp_family;

pub use certificate::{Certificate, CheckName, CheckResult};
pub use error::{Error, Result};
pub use measure::{MahlerResult, ModulusClass, RootApprox, DEFAULT_PRECISION_BITS};
pub use nonreciprocal::{BoundExact, NonreciprocalProfile, Triviality};
pub use poly::IntPolynomial;
pub use scan::{OddAlphaReport, ScanConfig, ScanReport};
pub use sharp_family::{SharpFamilyParams, SharpnessReport};
