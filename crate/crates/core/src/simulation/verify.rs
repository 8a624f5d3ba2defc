use serde::Serialize;

use super::model::{draw_pvalues, GaussianShiftModel};
use super::{run_replications, McSettings};
use crate::error::{Error, Result};
use crate::metrics::{estimate_metrics, Estimate, MetricParams, MetricReport, ReplicationRecord};
use crate::procedures::{run_sev_procedure, run_stp_procedure, SevProcedureConfig, StpProcedureConfig};
use crate::types::{confusion, PValueSet, RejectionOutcome, ScalingSpec};

/// Standard errors of slack granted to every control check.
pub const CHECK_SIGMAS: f64 = 3.0;

#[derive(Debug, Clone, PartialEq)]
pub enum Procedure {
    Sev(SevProcedureConfig),
    Stp(StpProcedureConfig),
}

impl Procedure {
    pub fn run(&self, pvals: &PValueSet) -> Result<RejectionOutcome> {
        match self {
            Procedure::Sev(cfg) => run_sev_procedure(pvals, cfg),
            Procedure::Stp(cfg) => run_stp_procedure(pvals, cfg),
        }
    }

    pub fn scaling(&self) -> &ScalingSpec {
        match self {
            Procedure::Sev(cfg) => &cfg.scaling,
            Procedure::Stp(cfg) => &cfg.scaling,
        }
    }

    pub fn alpha(&self) -> f64 {
        match self {
            Procedure::Sev(cfg) => cfg.alpha,
            Procedure::Stp(cfg) => cfg.alpha,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Procedure::Sev(cfg) => format!(
                "sev {:?} scaling={} shape={} alpha={}{}",
                cfg.mode,
                cfg.scaling,
                cfg.shape,
                cfg.alpha,
                if cfg.weights.is_some() { " weighted" } else { "" }
            ),
            Procedure::Stp(cfg) => format!(
                "stp scaling={} beta={} alpha={} dependence={:?}",
                cfg.scaling, cfg.beta, cfg.alpha, cfg.dependence
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ControlCheck {
    pub name: String,
    pub estimate: f64,
    pub std_error: f64,
    pub bound: f64,
    pub pass: bool,
}

impl ControlCheck {
    fn new(name: impl Into<String>, e: &Estimate, bound: f64) -> Self {
        Self {
            name: name.into(),
            estimate: e.estimate,
            std_error: e.std_error,
            bound,
            pass: e.within(bound, CHECK_SIGMAS),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub procedure: String,
    pub model: GaussianShiftModel,
    pub settings: McSettings,
    pub metrics: MetricReport,
    pub checks: Vec<ControlCheck>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&ControlCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Runs `procedure` on `settings.n_reps` independent draws of `model` and
/// checks the control guarantees that apply to it:
///
/// * SEV procedures: `SEV <= (alpha / m) * sum of null weights`. Constant
///   scalings also get the implied PFER bound, truncated-linear scalings
///   the FDR, PFER and tau-FWER bounds, and sub-linear scalings under the
///   complete null the weak FWER bound.
/// * STP procedures: `P[SFDP > beta] <= alpha`.
pub fn verify_control(
    model: &GaussianShiftModel,
    procedure: &Procedure,
    settings: &McSettings,
) -> Result<VerificationReport> {
    model.validate()?;
    let m = model.m();
    let scaling = procedure.scaling().clone();
    scaling.validate(m)?;
    if let Procedure::Sev(cfg) = procedure {
        cfg.validate(m)?;
    }
    let records = run_replications(settings, |rng| {
        let (pvals, truth) = draw_pvalues(model, rng)?;
        let outcome = procedure.run(&pvals)?;
        Ok(ReplicationRecord::new(confusion(&outcome, &truth)?, &scaling))
    })?;

    let alpha = procedure.alpha();
    let mut params = MetricParams::default();
    match (procedure, &scaling) {
        (Procedure::Stp(cfg), _) => params.beta = cfg.beta,
        (Procedure::Sev(_), ScalingSpec::TruncatedLinear(tau)) => params.k = *tau,
        _ => {}
    }
    let metrics = estimate_metrics(&records, params)?;

    let mut checks = Vec::new();
    match procedure {
        Procedure::Sev(cfg) => {
            let null_weight: f64 = (0..model.m0).map(|i| cfg.weight(i)).sum();
            let bound = alpha * null_weight / m as f64;
            checks.push(ControlCheck::new("sev", &metrics.sev, bound));
            let unit = cfg.weights.as_ref().is_none_or(|w| w.is_unit());
            match scaling {
                ScalingSpec::Constant(c) => checks.push(ControlCheck::new("pfer", &metrics.pfer, c * bound)),
                ScalingSpec::TruncatedLinear(tau) if unit => {
                    checks.push(ControlCheck::new("fdr", &metrics.fdr, alpha));
                    checks.push(ControlCheck::new("pfer", &metrics.pfer, tau as f64 * alpha));
                    checks.push(ControlCheck::new("tau_fwer", &metrics.kfwer, alpha));
                }
                _ => {}
            }
            if unit && model.m1 == 0 && scaling.is_sublinear(m) {
                checks.push(ControlCheck::new("fwer_weak", &metrics.fwer, alpha));
            }
        }
        Procedure::Stp(_) => checks.push(ControlCheck::new("stp", &metrics.stp, alpha)),
    }
    if checks.is_empty() {
        return Err(Error::InvalidParameter("no applicable control check".into()));
    }
    Ok(VerificationReport {
        procedure: procedure.describe(),
        model: *model,
        settings: *settings,
        metrics,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::procedures::Dependence;

    #[test]
    fn complete_null_linear_step_up() {
        let report = verify_control(
            &GaussianShiftModel::complete_null(50),
            &Procedure::Sev(SevProcedureConfig::linear(0.05)),
            &McSettings::new(4000, 1),
        )
        .unwrap();
        assert!(report.passed(), "{:?}", report.checks);
        let names: Vec<_> = report.checks.iter().map(|c| c.name.as_str()).collect();
        assert_eq!(names, ["sev", "fwer_weak"]);
        // SEV = FDR = FWER under the complete null with linear scaling
        assert_eq!(report.metrics.sev, report.metrics.fwer);
    }

    #[test]
    fn truncated_linear_dual_checks() {
        let report = verify_control(
            &GaussianShiftModel::new(80, 20, 3.0),
            &Procedure::Sev(SevProcedureConfig::new(0.05, ScalingSpec::TruncatedLinear(5))),
            &McSettings::new(2000, 2),
        )
        .unwrap();
        assert!(report.passed(), "{:?}", report.checks);
        assert_eq!(report.check("pfer").unwrap().bound, 0.25);
        assert!((report.check("sev").unwrap().bound - 0.04).abs() < 1e-15);
    }

    #[test]
    fn bonferroni_pfer() {
        let report = verify_control(
            &GaussianShiftModel::new(30, 10, 2.0),
            &Procedure::Sev(SevProcedureConfig::bonferroni(0.05)),
            &McSettings::new(3000, 3),
        )
        .unwrap();
        assert!(report.passed());
        assert_eq!(report.metrics.sev, report.metrics.pfer);
    }

    #[test]
    fn stp_check() {
        let cfg = StpProcedureConfig::new(0.05, 0.1, ScalingSpec::Linear).with_dependence(Dependence::Arbitrary);
        let report = verify_control(&GaussianShiftModel::new(40, 10, 3.0), &Procedure::Stp(cfg), &McSettings::new(2000, 4))
            .unwrap();
        assert_eq!(report.checks.len(), 1);
        assert!(report.passed());
    }

    #[test]
    fn check_tolerance_is_three_standard_errors() {
        let e = Estimate { estimate: 0.06, std_error: 0.004, n_reps: 100 };
        assert!(ControlCheck::new("x", &e, 0.05).pass);
        let e = Estimate { estimate: 0.063, std_error: 0.004, n_reps: 100 };
        assert!(!ControlCheck::new("x", &e, 0.05).pass);
    }
}
