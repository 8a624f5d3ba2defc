//! SEV critical values `t_i = alpha * xi(s(i)) / m` for the built-in
//! scaling families, and the harmonic shape that keeps SEV control under
//! arbitrary dependence.

use scaled_mtp::procedures::{sev_thresholds, SevProcedureConfig};
use scaled_mtp::types::{ScalingSpec, ShapeSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let m = 10;
    let alpha = 0.05;
    let families = ["constant:1", "constant:3", "truncated:4", "power:0.5", "linear"];

    print!("{:>14}", "i");
    for i in 1..=m {
        print!("{i:>9}");
    }
    println!();
    for name in families {
        let scaling: ScalingSpec = name.parse()?;
        let t = sev_thresholds(&SevProcedureConfig::new(alpha, scaling), m)?;
        print!("{name:>14}");
        for v in t.values() {
            print!("{v:>9.5}");
        }
        println!();
    }

    let harmonic = SevProcedureConfig::linear(alpha).with_shape(ShapeSpec::HarmonicLinear);
    let t = sev_thresholds(&harmonic, m)?;
    print!("{:>14}", "linear/H_m");
    for v in t.values() {
        print!("{v:>9.5}");
    }
    println!();

    // a shape equal to the inverse of the scaling gives back the linear thresholds
    let power = ScalingSpec::Power(0.5);
    let inverse = SevProcedureConfig::new(alpha, power.clone()).with_shape(ShapeSpec::inverse_of(&power, m)?);
    let t = sev_thresholds(&inverse, m)?;
    print!("{:>14}", "power^-1");
    for v in t.values() {
        print!("{v:>9.5}");
    }
    println!();
    Ok(())
}
