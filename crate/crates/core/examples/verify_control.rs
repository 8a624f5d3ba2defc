//! Monte-Carlo check of the control guarantees on the Gaussian-shift model.
//!
//! ```bash
//! cargo run --release -p scaled-mtp --example verify_control -- 5000
//! ```

use scaled_mtp::procedures::{Dependence, SevProcedureConfig, StpProcedureConfig};
use scaled_mtp::simulation::{verify_control, Correlation, GaussianShiftModel, McSettings, Procedure};
use scaled_mtp::types::{ScalingSpec, ShapeSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let reps: usize = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(2000);
    let settings = McSettings::new(reps, 42);
    let mixed = GaussianShiftModel::new(150, 50, 3.0);
    let alpha = 0.05;

    let scenarios = [
        ("linear, complete null", GaussianShiftModel::complete_null(200), Procedure::Sev(SevProcedureConfig::linear(alpha))),
        ("power:0.5, mixed", mixed, Procedure::Sev(SevProcedureConfig::new(alpha, ScalingSpec::Power(0.5)))),
        (
            "truncated:10, rho = 0.3",
            mixed.with_correlation(Correlation::Equicorrelated(0.3)),
            Procedure::Sev(SevProcedureConfig::new(alpha, ScalingSpec::TruncatedLinear(10))),
        ),
        (
            "harmonic shape, rho = 0.5",
            mixed.with_correlation(Correlation::Equicorrelated(0.5)),
            Procedure::Sev(SevProcedureConfig::linear(alpha).with_shape(ShapeSpec::HarmonicLinear)),
        ),
        (
            "stp beta = 0.1, arbitrary",
            GaussianShiftModel::new(80, 20, 3.0),
            Procedure::Stp(StpProcedureConfig::new(alpha, 0.1, ScalingSpec::Linear).with_dependence(Dependence::Arbitrary)),
        ),
    ];

    for (name, model, procedure) in scenarios {
        let report = verify_control(&model, &procedure, &settings)?;
        println!("{name}");
        for c in &report.checks {
            println!(
                "  {:<9} {:.5} (se {:.5})  bound {:.5}  {}",
                c.name,
                c.estimate,
                c.std_error,
                c.bound,
                if c.pass { "ok" } else { "FAIL" }
            );
        }
    }
    Ok(())
}
