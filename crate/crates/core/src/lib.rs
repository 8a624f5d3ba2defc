//! Multiple testing with scaled error rates.
//!
//! The scaled false discovery proportion `SFDP = FP / s(R)` (0 when nothing
//! is rejected) interpolates between the classical error rates through the
//! choice of the non-decreasing scaling function `s`. This crate provides:
//!
//! * [`types`]: p-value sets, scaling/shape/weight specifications, threshold
//!   sequences, rejection outcomes and confusion counts.
//! * [`procedures`]: step-up procedures controlling `SEV = E[SFDP]` and
//!   step-down procedures controlling `STP = P[SFDP > beta]`.
//! * [`metrics`]: error-rate estimators over replications.
//! * [`simulation`]: the Gaussian-shift Monte-Carlo engine, control
//!   verification and the gain study.
//! * [`cli`]: the command-line front end and its file formats.
//!
//! ```
//! use scaled_mtp::procedures::{run_sev_procedure, SevProcedureConfig};
//! use scaled_mtp::types::{PValueSet, ScalingSpec};
//!
//! let p = PValueSet::new(vec![0.01, 0.04, 0.30, 0.90]).unwrap();
//! let cfg = SevProcedureConfig::new(0.2, ScalingSpec::Linear);
//! let out = run_sev_procedure(&p, &cfg).unwrap();
//! assert_eq!(out.boundary, 2);
//! ```

pub mod cli;
pub mod error;
pub mod metrics;
pub mod normal;
pub mod procedures;
pub mod simulation;
pub mod types;

pub use error::{Error, Result};
