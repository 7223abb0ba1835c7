use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::Interval;

/// The first `count` primes.
fn primes(count: usize) -> Vec<u64> {
    let mut found: Vec<u64> = Vec::with_capacity(count);
    let mut candidate = 2u64;
    while found.len() < count {
        if found
            .iter()
            .take_while(|&&p| p * p <= candidate)
            .all(|&p| !candidate.is_multiple_of(p))
        {
            found.push(candidate);
        }
        candidate += 1;
    }
    found
}

/// Base-`base` van der Corput value of `index`.
pub fn radical_inverse(base: u64, mut index: u64) -> f64 {
    let inv = 1.0 / base as f64;
    let mut scale = inv;
    let mut value = 0.0;
    while index > 0 {
        value += (index % base) as f64 * scale;
        index /= base;
        scale *= inv;
    }
    value
}

/// Unscrambled Halton points mapped onto `bounds`: row `i`, column `d` is
/// `lo_d + (hi_d - lo_d)·h_{p_d}(i + 1)` with `p_d` the d-th prime.
pub fn halton_population(dimension: usize, count: usize, bounds: &[Interval]) -> Vec<Vec<f64>> {
    assert_eq!(bounds.len(), dimension, "one interval per dimension");
    let bases = primes(dimension);
    (0..count as u64)
        .map(|i| {
            bases
                .iter()
                .zip(bounds)
                .map(|(&b, iv)| iv.lo + iv.width() * radical_inverse(b, i + 1))
                .collect()
        })
        .collect()
}

/// Number of base-`b` digits resolved by an f64 mantissa.
fn digits_for(base: u64) -> usize {
    (53.0 / (base as f64).log2()).ceil() as usize
}

/// Halton points with seeded digit-permutation scrambling: each base gets an
/// independent random permutation of `0..b` for every digit position.
pub fn scrambled_halton_population(
    dimension: usize,
    count: usize,
    bounds: &[Interval],
    seed: u64,
) -> Vec<Vec<f64>> {
    assert_eq!(bounds.len(), dimension, "one interval per dimension");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bases = primes(dimension);
    let perms: Vec<Vec<Vec<u64>>> = bases
        .iter()
        .map(|&b| {
            (0..digits_for(b))
                .map(|_| {
                    let mut p: Vec<u64> = (0..b).collect();
                    p.shuffle(&mut rng);
                    p
                })
                .collect()
        })
        .collect();
    (0..count as u64)
        .map(|i| {
            bases
                .iter()
                .zip(&perms)
                .zip(bounds)
                .map(|((&b, digit_perms), iv)| {
                    let inv = 1.0 / b as f64;
                    let mut index = i + 1;
                    let mut scale = inv;
                    let mut u = 0.0;
                    for perm in digit_perms {
                        u += perm[(index % b) as usize] as f64 * scale;
                        index /= b;
                        scale *= inv;
                    }
                    iv.lo + iv.width() * u.min(1.0)
                })
                .collect()
        })
        .collect()
}
