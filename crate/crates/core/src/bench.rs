//! Throughput measurement for the remainder and full-division passes.

use std::hint::black_box;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::mont::MontCtx;
use crate::quotient::folded_div_rem_digits;
use crate::remainder::{remainder_odd_folded, Fold};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BenchOp {
    Remainder,
    DivRem,
}

impl BenchOp {
    pub fn name(self) -> &'static str {
        match self {
            BenchOp::Remainder => "rem",
            BenchOp::DivRem => "divmod",
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct BenchConfig {
    pub words: usize,
    pub trials: usize,
    pub seed: u64,
    pub modulus: u64,
}

#[derive(Debug, Clone, Copy)]
pub struct BenchRow {
    pub op: BenchOp,
    pub fold: Fold,
    pub words: usize,
    /// Median over the trials.
    pub ns_per_word: f64,
    pub words_per_sec: f64,
}

/// Dividend of `n` uniformly random words.
pub fn random_words(n: usize, seed: u64) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| rng.gen()).collect()
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        (v[n / 2 - 1] + v[n / 2]) / 2.0
    }
}

fn time_once<F: FnMut() -> Result<()>>(mut f: F) -> Result<f64> {
    let t = Instant::now();
    f()?;
    Ok(t.elapsed().as_nanos() as f64)
}

/// Times one operation at one fold; returns median nanoseconds per word.
pub fn measure(
    x: &[u64],
    ctx: &MontCtx<u64>,
    op: BenchOp,
    fold: Fold,
    trials: usize,
) -> Result<f64> {
    let mut samples = Vec::with_capacity(trials);
    // One untimed run to fault in pages and warm caches.
    for t in 0..=trials {
        let ns = time_once(|| {
            match op {
                BenchOp::Remainder => {
                    black_box(remainder_odd_folded(black_box(x), ctx, fold)?);
                }
                BenchOp::DivRem => {
                    black_box(folded_div_rem_digits(black_box(x), ctx, fold)?);
                }
            }
            Ok(())
        })?;
        if t > 0 {
            samples.push(ns / x.len() as f64);
        }
    }
    Ok(median(samples))
}

/// Every (operation, fold) combination on one random dividend.
pub fn run_bench(cfg: &BenchConfig) -> Result<Vec<BenchRow>> {
    let ctx = MontCtx::new(cfg.modulus)?;
    let x = random_words(cfg.words.max(1), cfg.seed);
    let mut rows = Vec::new();
    for op in [BenchOp::Remainder, BenchOp::DivRem] {
        for fold in Fold::ALL {
            let ns = measure(&x, &ctx, op, fold, cfg.trials.max(1))?;
            rows.push(BenchRow {
                op,
                fold,
                words: x.len(),
                ns_per_word: ns,
                words_per_sec: 1e9 / ns,
            });
        }
    }
    Ok(rows)
}
