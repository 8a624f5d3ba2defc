//! The classical procedures are particular scalings:
//!
//! | scaling         | engine     | procedure                      |
//! |-----------------|------------|--------------------------------|
//! | `linear`        | step-up    | Benjamini-Hochberg (FDR)       |
//! | `constant:1`    | step-up    | Bonferroni (FWER, PFER)        |
//! | `constant:k`    | step-up    | Hommel-Hoffmann (k-FWER)       |
//! | `linear`, β = 0 | step-down  | Holm (FWER)                    |
//! | `linear`, β > 0 | step-down  | Lehmann-Romano (FDP exceedance) |

use scaled_mtp::procedures::{run_sev_procedure, run_stp_procedure, SevProcedureConfig, StpProcedureConfig};
use scaled_mtp::types::{PValueSet, RejectionOutcome, ScalingSpec};

fn show(name: &str, p: &PValueSet, out: &RejectionOutcome) {
    println!("{name:<28} R = {:>2}  rejected: {:?}", out.r(), out.rejected_ids(p));
}

fn main() -> scaled_mtp::Result<()> {
    let p = PValueSet::new(vec![
        0.0001, 0.0004, 0.0019, 0.0095, 0.0201, 0.0278, 0.0298, 0.0344, 0.0459, 0.3240, 0.4262, 0.5719, 0.6528,
        0.7590, 1.0,
    ])?;
    let alpha = 0.05;

    show("Benjamini-Hochberg", &p, &run_sev_procedure(&p, &SevProcedureConfig::linear(alpha))?);
    show("Bonferroni", &p, &run_sev_procedure(&p, &SevProcedureConfig::bonferroni(alpha))?);
    let k = 3.0;
    show(
        "Hommel-Hoffmann, k = 3",
        &p,
        &run_sev_procedure(&p, &SevProcedureConfig::new(alpha, ScalingSpec::constant(k)?))?,
    );
    show("Holm", &p, &run_stp_procedure(&p, &StpProcedureConfig::holm(alpha))?);
    show(
        "Lehmann-Romano, beta = 0.1",
        &p,
        &run_stp_procedure(&p, &StpProcedureConfig::new(alpha, 0.1, ScalingSpec::Linear))?,
    );
    Ok(())
}
