//! Monte-Carlo engine: Gaussian-shift p-value model, empirical verification
//! of the control guarantees, and the gain study.
//!
//! Every replication draws from its own ChaCha8 stream keyed by
//! `(seed, replication index)`, and results are gathered in index order, so
//! reports are bit-identical for any worker count.

mod gain;
mod model;
mod verify;

pub use gain::{
    critical_value_price, minimizing_effect, optimize_parameter, two_test_gain, two_test_optimal_cv, CurvePoint,
    GainCell, GainStudy, GainStudyConfig, ParameterGrid, TwoTestModel,
};
pub use model::{draw_pvalues, Correlation, GaussianShiftModel};
pub use verify::{verify_control, ControlCheck, Procedure, VerificationReport, CHECK_SIGMAS};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

/// Replication count, master seed and worker count of a Monte-Carlo run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct McSettings {
    pub n_reps: usize,
    pub seed: u64,
    /// Worker threads; `None` uses the ambient rayon pool.
    #[serde(skip)]
    pub workers: Option<usize>,
}

impl McSettings {
    pub fn new(n_reps: usize, seed: u64) -> Self {
        Self { n_reps, seed, workers: None }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = Some(workers);
        self
    }
}

/// The random stream of replication `rep`.
pub fn replication_rng(seed: u64, rep: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(rep);
    rng
}

/// Runs `f` once per replication and returns the results in replication order.
pub fn run_replications<T, F>(settings: &McSettings, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&mut ChaCha8Rng) -> Result<T> + Sync,
{
    if settings.n_reps == 0 {
        return Err(Error::InvalidParameter("n_reps must be at least 1".into()));
    }
    let job = || {
        (0..settings.n_reps)
            .into_par_iter()
            .map(|rep| f(&mut replication_rng(settings.seed, rep as u64)))
            .collect::<Result<Vec<T>>>()
    };
    match settings.workers {
        None => job(),
        Some(0) => Err(Error::InvalidParameter("workers must be at least 1".into())),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::InvalidParameter(format!("cannot start worker pool: {e}")))?
            .install(job),
    }
}
