//! Worker-count plumbing. EXCESSUM_THREADS caps parallelism; results are
//! byte-identical for any worker count because reductions are exact integer
//! sums and RNG streams are keyed per run, not per worker.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::ThreadPool;

pub fn worker_count() -> usize {
    std::env::var("EXCESSUM_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&w| w >= 1)
        .unwrap_or_else(num_threads_default)
}

fn num_threads_default() -> usize {
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
}

/// A local pool, so different worker counts can coexist in one process.
pub fn pool(workers: usize) -> ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .expect("thread pool")
}

/// The RNG stream of one Monte-Carlo run, keyed by (seed, run index).
pub fn run_stream(seed: u64, run: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&run.to_le_bytes());
    key[16] = 0x5e;
    ChaCha8Rng::from_seed(key)
}

/// Mean and standard error of an integer statistic over seeded runs.
/// The accumulators are exact integers, so the result does not depend on
/// the worker count or reduction order.
#[derive(Clone, Copy, Debug)]
pub struct McSummary {
    pub runs: u64,
    pub sum: u128,
    pub sum_sq: u128,
}

impl McSummary {
    pub fn mean(&self) -> f64 {
        self.sum as f64 / self.runs as f64
    }

    pub fn stderr(&self) -> f64 {
        if self.runs < 2 {
            return 0.0;
        }
        let num = self.runs as u128 * self.sum_sq - self.sum * self.sum;
        let var = num as f64 / (self.runs as f64 * (self.runs as f64 - 1.0));
        (var / self.runs as f64).sqrt()
    }
}

pub fn monte_carlo<F>(runs: u64, seed: u64, workers: usize, statistic: F) -> McSummary
where
    F: Fn(&mut ChaCha8Rng) -> u64 + Sync,
{
    use rayon::prelude::*;
    assert!(runs >= 1);
    let (sum, sum_sq) = pool(workers).install(|| {
        (0..runs)
            .into_par_iter()
            .map(|i| {
                let mut rng = run_stream(seed, i);
                let y = statistic(&mut rng) as u128;
                (y, y * y)
            })
            .reduce(|| (0u128, 0u128), |a, b| (a.0 + b.0, a.1 + b.1))
    });
    McSummary { runs, sum, sum_sq }
}
