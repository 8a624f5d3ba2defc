//! Step-down control of `P[SFDP > beta]`, with and without the correction
//! for arbitrary dependence.

use scaled_mtp::procedures::{
    correction_constant, run_stp_procedure, stp_thresholds, CorrectionUpper, Dependence, StpProcedureConfig,
};
use scaled_mtp::types::{PValueSet, ScalingSpec};

fn main() -> scaled_mtp::Result<()> {
    let m = 12;
    let plain = StpProcedureConfig::new(0.05, 0.2, ScalingSpec::Linear);
    let arbitrary = plain.clone().with_dependence(Dependence::Arbitrary);

    let c = correction_constant(0.2, &ScalingSpec::Linear, m, CorrectionUpper::Conservative)?;
    println!("correction constant: sum of 1/i for i = {}..={} is {:.6}", c.lower, c.upper, c.value);

    let t = stp_thresholds(&plain, m)?;
    let tc = stp_thresholds(&arbitrary, m)?;
    println!("{:>3} {:>10} {:>10}", "i", "t_i", "t'_i");
    for i in 1..=m {
        println!("{i:>3} {:>10.6} {:>10.6}", t.at(i), tc.at(i));
    }

    let p = PValueSet::new(vec![
        0.0002, 0.0011, 0.0023, 0.0041, 0.0061, 0.0129, 0.0208, 0.0412, 0.2, 0.35, 0.61, 0.9,
    ])?;
    for (name, cfg) in [("simes", &plain), ("arbitrary", &arbitrary)] {
        let out = run_stp_procedure(&p, cfg)?;
        println!("{name:>10}: R = {}", out.r());
    }

    // tau-truncated scaling: exceedance of FP / min(R, tau)
    let trunc = StpProcedureConfig::new(0.05, 0.5, ScalingSpec::truncated_linear(4)?);
    println!("truncated:4, beta = 0.5: R = {}", run_stp_procedure(&p, &trunc)?.r());
    Ok(())
}
