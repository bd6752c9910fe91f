//! Seeded randomness: per-trial seed derivation and exact weighted draws.
//!
//! All draws are made with integer weights and `gen_range` over the integer
//! total, so sampling is exact (no floating-point rounding) and replayable
//! from a seed.

use num_bigint::{BigUint, RandBigInt};
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The RNG used for every seeded computation in this crate.
pub type SeededRng = ChaCha8Rng;

/// One splitmix64 output step.
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for trial `index` under `master`: `splitmix64(splitmix64(master) ^ index)`.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    splitmix64(splitmix64(master) ^ index)
}

pub fn rng_from_seed(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn trial_rng(master: u64, index: u64) -> SeededRng {
    rng_from_seed(derive_seed(master, index))
}

/// Index drawn with probability `weights[i] / Σ weights`; `None` if all
/// weights are zero.
pub fn sample_weighted<R: Rng + ?Sized>(weights: &[u128], rng: &mut R) -> Option<usize> {
    let total: u128 = weights.iter().sum();
    if total == 0 {
        return None;
    }
    let mut x = rng.gen_range(0..total);
    for (i, &w) in weights.iter().enumerate() {
        if x < w {
            return Some(i);
        }
        x -= w;
    }
    unreachable!("cumulative inversion ran past the total")
}

/// Big-integer variant of [`sample_weighted`].
pub fn sample_weighted_big<R: Rng + ?Sized>(weights: &[BigUint], rng: &mut R) -> Option<usize> {
    let total: BigUint = weights.iter().sum();
    if total.is_zero() {
        return None;
    }
    let mut x = rng.gen_biguint_below(&total);
    for (i, w) in weights.iter().enumerate() {
        if &x < w {
            return Some(i);
        }
        x -= w;
    }
    unreachable!("cumulative inversion ran past the total")
}

/// Permutation of `items` built by repeatedly drawing a not-yet-chosen item
/// with probability proportional to its weight. Items of weight zero can
/// never be drawn that way; they follow in uniformly random order.
pub fn weighted_permutation<R: Rng + ?Sized>(
    items: &[usize],
    weights: &[u64],
    rng: &mut R,
) -> Vec<usize> {
    debug_assert_eq!(items.len(), weights.len());
    let mut pool: Vec<(usize, u128)> = Vec::with_capacity(items.len());
    let mut zero: Vec<usize> = Vec::new();
    for (&it, &w) in items.iter().zip(weights) {
        if w == 0 {
            zero.push(it);
        } else {
            pool.push((it, w as u128));
        }
    }
    let mut out = Vec::with_capacity(items.len());
    let mut total: u128 = pool.iter().map(|p| p.1).sum();
    while !pool.is_empty() {
        let mut x = rng.gen_range(0..total);
        let mut pick = pool.len() - 1;
        for (i, &(_, w)) in pool.iter().enumerate() {
            if x < w {
                pick = i;
                break;
            }
            x -= w;
        }
        let (it, w) = pool.remove(pick);
        total -= w;
        out.push(it);
    }
    zero.shuffle(rng);
    out.extend(zero);
    out
}

/// Uniform subset of `0..k` (each element kept by a fair coin).
pub fn random_subset<R: Rng + ?Sized>(k: usize, rng: &mut R) -> Vec<bool> {
    (0..k).map(|_| rng.gen_bool(0.5)).collect()
}

/// Uniform nonempty proper subset of `0..k`, `k >= 2`.
pub fn random_proper_subset<R: Rng + ?Sized>(k: usize, rng: &mut R) -> Vec<bool> {
    assert!(
        k >= 2,
        "a proper nonempty subset needs at least two elements"
    );
    loop {
        let s = random_subset(k, rng);
        let ones = s.iter().filter(|&&b| b).count();
        if ones > 0 && ones < k {
            return s;
        }
    }
}
