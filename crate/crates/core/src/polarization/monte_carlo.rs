//! Monte-Carlo estimation of per-channel erasure probabilities, as a
//! statistical cross-check of the exact tables.

use crate::error::{Error, Result};
use crate::kernel::Kernel;
use crate::polarization::brute::killed_channels;
use crate::polarization::pattern::ErasurePattern;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Name of the generator recorded in reports; the stream is split per chunk
/// so results do not depend on the worker count.
pub const RNG_ALGORITHM: &str = "chacha8";

const CHUNK: u64 = 4096;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChannelEstimate {
    pub channel: usize,
    pub estimate: f64,
    pub std_error: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MonteCarloReport {
    pub l: usize,
    pub z: f64,
    pub samples: u64,
    pub seed: u64,
    pub rng: String,
    pub channels: Vec<ChannelEstimate>,
}

fn uniform01(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Estimates `p_i(z)` for every channel of `k` from `samples` i.i.d. erasure
/// patterns with per-position erasure probability `z`. Reproducible: the
/// seed fixes the sample stream regardless of thread count.
pub fn monte_carlo_pb(k: &Kernel, z: f64, samples: u64, seed: u64) -> Result<MonteCarloReport> {
    if samples == 0 {
        return Err(Error::InvalidInput("samples must be >= 1".into()));
    }
    if !(0.0..=1.0).contains(&z) {
        return Err(Error::InvalidInput(format!(
            "erasure probability {z} outside [0, 1]"
        )));
    }
    let l = k.size();
    let columns = k.matrix().columns();
    let chunks = samples.div_ceil(CHUNK);
    let kill_counts = (0..chunks)
        .into_par_iter()
        .fold(
            || vec![0u64; l],
            |mut acc, chunk| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(chunk);
                let in_chunk = CHUNK.min(samples - chunk * CHUNK);
                for _ in 0..in_chunk {
                    let mut bits = 0u64;
                    for pos in 0..l {
                        if uniform01(&mut rng) < z {
                            bits |= 1 << pos;
                        }
                    }
                    let e = ErasurePattern::from_bits(l, bits);
                    let killed = killed_channels(&columns, &e);
                    for (i, count) in acc.iter_mut().enumerate() {
                        *count += (killed >> i) & 1;
                    }
                }
                acc
            },
        )
        .reduce(
            || vec![0u64; l],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
    let n = samples as f64;
    let channels = kill_counts
        .iter()
        .enumerate()
        .map(|(channel, &count)| {
            let p = count as f64 / n;
            ChannelEstimate {
                channel,
                estimate: p,
                std_error: (p * (1.0 - p) / n).sqrt(),
            }
        })
        .collect();
    Ok(MonteCarloReport {
        l,
        z,
        samples,
        seed,
        rng: RNG_ALGORITHM.to_string(),
        channels,
    })
}
