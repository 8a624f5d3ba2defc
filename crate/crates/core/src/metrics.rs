//! Error-rate estimators over Monte-Carlo replications.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::types::{sfdp, Confusion, ScalingSpec};

/// One replication: its confusion counts and the SFDP under the scaling
/// in force for the run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReplicationRecord {
    pub confusion: Confusion,
    pub sfdp: f64,
}

impl ReplicationRecord {
    pub fn new(confusion: Confusion, scaling: &ScalingSpec) -> Self {
        Self {
            sfdp: sfdp(&confusion, scaling),
            confusion,
        }
    }
}

/// Sample mean with its standard error `sd / sqrt(n)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Estimate {
    pub estimate: f64,
    pub std_error: f64,
    pub n_reps: usize,
}

impl Estimate {
    /// Mean and standard error of `samples`, accumulated in iteration order.
    pub fn from_samples(samples: impl Iterator<Item = f64> + Clone) -> Self {
        let (n, sum) = samples.clone().fold((0usize, 0.0), |(n, s), x| (n + 1, s + x));
        if n == 0 {
            return Self { estimate: f64::NAN, std_error: f64::NAN, n_reps: 0 };
        }
        let mean = sum / n as f64;
        let std_error = if n > 1 {
            let ss: f64 = samples.map(|x| (x - mean) * (x - mean)).sum();
            (ss / (n - 1) as f64).sqrt() / (n as f64).sqrt()
        } else {
            0.0
        };
        Self { estimate: mean, std_error, n_reps: n }
    }

    /// `estimate <= bound + sigmas * std_error`.
    pub fn within(&self, bound: f64, sigmas: f64) -> bool {
        self.estimate <= bound + sigmas * self.std_error
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MetricParams {
    /// `k` of the k-FWER, `P[FP >= k]`.
    pub k: usize,
    /// Exceedance level of the STP, `P[SFDP > beta]`.
    pub beta: f64,
    /// Price of a false positive in the gain `E[TP] - lambda E[FP]`.
    pub lambda: f64,
}

impl Default for MetricParams {
    fn default() -> Self {
        Self { k: 1, beta: 0.0, lambda: 1.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricReport {
    pub params: MetricParams,
    pub n_reps: usize,
    pub sev: Estimate,
    pub fdr: Estimate,
    pub pfer: Estimate,
    pub pcer: Estimate,
    pub fwer: Estimate,
    pub kfwer: Estimate,
    pub stp: Estimate,
    pub mean_tp: Estimate,
    pub mean_r: Estimate,
    pub gain: Estimate,
}

fn indicator(b: bool) -> f64 {
    if b {
        1.0
    } else {
        0.0
    }
}

pub fn estimate_metrics(records: &[ReplicationRecord], params: MetricParams) -> Result<MetricReport> {
    if records.is_empty() {
        return Err(Error::NoRecords);
    }
    let est = |f: &dyn Fn(&ReplicationRecord) -> f64| Estimate::from_samples(records.iter().map(f));
    let MetricParams { k, beta, lambda } = params;
    Ok(MetricReport {
        params,
        n_reps: records.len(),
        sev: est(&|r| r.sfdp),
        fdr: est(&|r| r.confusion.fdp()),
        pfer: est(&|r| r.confusion.fp as f64),
        pcer: est(&|r| r.confusion.fp as f64 / r.confusion.m() as f64),
        fwer: est(&|r| indicator(r.confusion.fp > 0)),
        kfwer: est(&|r| indicator(r.confusion.fp >= k)),
        stp: est(&|r| indicator(r.sfdp > beta)),
        mean_tp: est(&|r| r.confusion.tp as f64),
        mean_r: est(&|r| r.confusion.r() as f64),
        gain: est(&|r| r.confusion.tp as f64 - lambda * r.confusion.fp as f64),
    })
}

/// Lower empirical quantile: the value of rank `ceil(q n)` among the sorted
/// SFDP values.
pub fn quantile_sfdp(records: &[ReplicationRecord], q: f64) -> Result<f64> {
    if records.is_empty() {
        return Err(Error::NoRecords);
    }
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::InvalidParameter(format!("quantile level must lie in (0, 1), got {q}")));
    }
    let mut values: Vec<f64> = records.iter().map(|r| r.sfdp).collect();
    values.sort_by(f64::total_cmp);
    let n = values.len();
    let pos = q * n as f64;
    let nearest = pos.round();
    // 0.95 * 100 must land on rank 95, not 96
    let rank = if (pos - nearest).abs() < 1e-9 { nearest } else { pos.ceil() } as usize;
    Ok(values[rank.clamp(1, n) - 1])
}
