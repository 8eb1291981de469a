//! Deterministic floating-point reduction helpers shared by the quadrature
//! and lattice-sum code: compensated (Kahan) accumulation and an
//! order-preserving parallel sum whose result does not depend on the number
//! of worker threads.

use rayon::prelude::*;

/// Kahan-Babuska compensated accumulator.
#[derive(Clone, Copy, Debug, Default)]
pub struct Kahan {
    sum: f64,
    comp: f64,
}

impl Kahan {
    pub fn new() -> Self {
        Kahan::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Sum `f(i)` for `i` in `0..n`, splitting the range into fixed-size chunks
/// that are evaluated in parallel but reduced sequentially in ascending chunk
/// order. The chunk geometry depends only on `n` and `chunk`, never on the
/// thread count, so the result is bit-identical for any pool size.
pub fn parallel_sum_by_index<F>(n: usize, chunk: usize, f: F) -> f64
where
    F: Fn(usize) -> f64 + Sync,
{
    let chunk = chunk.max(1);
    let nchunks = n.div_ceil(chunk);
    let partials: Vec<f64> = (0..nchunks)
        .into_par_iter()
        .map(|c| {
            let lo = c * chunk;
            let hi = (lo + chunk).min(n);
            let mut acc = Kahan::new();
            for i in lo..hi {
                acc.add(f(i));
            }
            acc.value()
        })
        .collect();
    let mut total = Kahan::new();
    for p in partials {
        total.add(p);
    }
    total.value()
}

/// Build the global rayon pool from `K3ML_THREADS` (or the given fallback).
/// Safe to call repeatedly; only the first call wins, matching rayon's
/// global-pool semantics. Returns the thread count in effect.
pub fn configure_threads(fallback: usize) -> usize {
    let threads = std::env::var("K3ML_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&t| t >= 1)
        .unwrap_or(fallback);
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global();
    rayon::current_num_threads()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kahan_beats_naive_on_small_terms() {
        let mut k = Kahan::new();
        k.add(1.0);
        for _ in 0..1_000_000 {
            k.add(1e-16);
        }
        assert!((k.value() - (1.0 + 1e-10)).abs() < 1e-14);
    }

    #[test]
    fn parallel_sum_matches_sequential() {
        let f = |i: usize| ((i as f64) * 0.1).sin() / ((i + 1) as f64);
        let par = parallel_sum_by_index(100_000, 4096, f);
        let mut seq = Kahan::new();
        for i in 0..100_000 {
            seq.add(f(i));
        }
        // Same chunking, same order: identical to the last bit.
        let par2 = parallel_sum_by_index(100_000, 4096, f);
        assert_eq!(par.to_bits(), par2.to_bits());
        assert!((par - seq.value()).abs() < 1e-12);
    }
}
