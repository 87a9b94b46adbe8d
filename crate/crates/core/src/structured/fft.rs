use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

/// Forward and inverse plans for one transform length.
#[derive(Clone)]
pub(crate) struct FftPair {
    pub forward: Arc<dyn Fft<f64>>,
    pub inverse: Arc<dyn Fft<f64>>,
}

impl std::fmt::Debug for FftPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FftPair({})", self.len())
    }
}

impl FftPair {
    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn forward(&self, buf: &mut [Complex64]) {
        self.forward.process(buf);
    }

    /// Unnormalised inverse; callers fold the `1/n` into their spectra.
    pub fn inverse(&self, buf: &mut [Complex64]) {
        self.inverse.process(buf);
    }
}

struct PlanCache {
    planner: FftPlanner<f64>,
    pairs: HashMap<usize, FftPair>,
}

fn cache() -> &'static Mutex<PlanCache> {
    static CACHE: OnceLock<Mutex<PlanCache>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(PlanCache { planner: FftPlanner::new(), pairs: HashMap::new() }))
}

/// Process-wide plan lookup; plans are built once per length.
pub(crate) fn plan(len: usize) -> FftPair {
    let mut guard = cache().lock().unwrap_or_else(|e| e.into_inner());
    if let Some(pair) = guard.pairs.get(&len) {
        return pair.clone();
    }
    let forward = guard.planner.plan_fft_forward(len);
    let inverse = guard.planner.plan_fft_inverse(len);
    let pair = FftPair { forward, inverse };
    guard.pairs.insert(len, pair.clone());
    pair
}
