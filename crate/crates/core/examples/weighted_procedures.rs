//! Weighted step-up: each `p_i` is compared on the scale `p_i / w_i`, so a
//! weight above one makes a hypothesis easier to reject. Weights averaging
//! one keep the SEV bound at `alpha * m0 / m`.

use scaled_mtp::procedures::{run_sev_procedure, SevProcedureConfig};
use scaled_mtp::types::{PValueSet, WeightVector};

fn main() -> scaled_mtp::Result<()> {
    let ids = ["a", "b", "c", "d", "e", "f"].map(String::from).to_vec();
    let p = PValueSet::with_ids(ids, vec![0.004, 0.012, 0.02, 0.03, 0.2, 0.7])?;
    let prior = WeightVector::new(vec![0.5, 0.5, 2.0, 2.0, 0.5, 0.5])?;

    let plain = SevProcedureConfig::linear(0.05);
    let weighted = plain.clone().with_weights(prior);
    println!("unweighted rejects {:?}", run_sev_procedure(&p, &plain)?.rejected_ids(&p));
    println!("weighted   rejects {:?}", run_sev_procedure(&p, &weighted)?.rejected_ids(&p));
    Ok(())
}
