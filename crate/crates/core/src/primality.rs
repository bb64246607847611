//! Fermat's probabilistic primality test and Carmichael-number tooling.
//!
//! Bases are drawn as `a = r mod (p−1) + 1` where `r` is the next 64-bit
//! output of a [`RandomSource`], so `a = 1` can be drawn and always passes.
//! Set [`FermatOptions::exclude_trivial_base`] to draw from `[2, p−1]`.
//!
//! Stream contract: a `RandomSource` seeded with `s` is `ChaCha8Rng` from
//! `rand_chacha` seeded through `SeedableRng::seed_from_u64(s)`, consumed one
//! `next_u64` per base draw.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::modarith::{gcd, pow_unchecked, trial_division_is_prime};

/// Seeded 64-bit generator for base draws.
#[derive(Debug, Clone)]
pub struct RandomSource {
    seed: u64,
    rng: ChaCha8Rng,
}

impl RandomSource {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FermatOptions {
    /// Draw bases from `[2, p−1]` instead of `[1, p−1]`.
    pub exclude_trivial_base: bool,
}

/// Fermat test with random bases and default options.
pub fn fermat_test(p: u64, iterations: u32, rng: &mut RandomSource) -> Result<bool> {
    fermat_test_with(p, iterations, rng, FermatOptions::default())
}

pub fn fermat_test_with(
    p: u64,
    iterations: u32,
    rng: &mut RandomSource,
    options: FermatOptions,
) -> Result<bool> {
    if p == 0 {
        return Err(Error::domain("Fermat test is undefined for p = 0"));
    }
    if iterations == 0 {
        return Err(Error::domain("iterations must be at least 1"));
    }
    if p == 1 {
        return Ok(false);
    }
    for _ in 0..iterations {
        let r = rng.next_u64();
        let a = if options.exclude_trivial_base && p > 2 {
            r % (p - 2) + 2
        } else {
            r % (p - 1) + 1
        };
        if pow_unchecked(a, p - 1, p) != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Fermat test over an explicit list of bases, each reduced mod `p`.
pub fn fermat_test_bases(p: u64, bases: &[u64]) -> Result<bool> {
    if p == 0 {
        return Err(Error::domain("Fermat test is undefined for p = 0"));
    }
    if bases.is_empty() {
        return Err(Error::domain("at least one base is required"));
    }
    if p == 1 {
        return Ok(false);
    }
    Ok(bases.iter().all(|&a| pow_unchecked(a, p - 1, p) == 1))
}

/// Coprime bases in `[2, n−1]` that pass the Fermat check, over all coprime
/// bases in that interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WitnessFraction {
    pub fooling: u64,
    pub coprime: u64,
}

impl WitnessFraction {
    pub fn is_one(&self) -> bool {
        self.fooling == self.coprime
    }

    pub fn as_f64(&self) -> f64 {
        self.fooling as f64 / self.coprime as f64
    }
}

fn check_composite(n: u64) -> Result<()> {
    if n < 3 {
        return Err(Error::domain(format!("n must be at least 3, got {n}")));
    }
    if trial_division_is_prime(n) {
        return Err(Error::domain(format!("{n} is prime; every coprime base passes")));
    }
    Ok(())
}

/// Exhaustive scan of bases `a ∈ [2, n−1]` coprime to a composite `n`.
pub fn fermat_witness_fraction(n: u64) -> Result<WitnessFraction> {
    check_composite(n)?;
    let (fooling, coprime) = (2..n)
        .into_par_iter()
        .filter(|&a| gcd(a, n) == 1)
        .map(|a| (u64::from(pow_unchecked(a, n - 1, n) == 1), 1u64))
        .reduce(|| (0, 0), |x, y| (x.0 + y.0, x.1 + y.1));
    Ok(WitnessFraction { fooling, coprime })
}

/// Largest `limit` accepted by [`carmichael_scan`].
pub const CARMICHAEL_SCAN_MAX: u64 = 1_000_000;

/// Same verdict as `fermat_witness_fraction(n).is_one()` for composite `n`,
/// stopping at the first coprime base that exposes `n`.
fn fools_every_coprime_base(n: u64) -> bool {
    (2..n).all(|a| gcd(a, n) != 1 || pow_unchecked(a, n - 1, n) == 1)
}

/// Every composite `n <= limit` that fools the Fermat test for all coprime bases.
pub fn carmichael_scan(limit: u64) -> Result<Vec<u64>> {
    if limit > CARMICHAEL_SCAN_MAX {
        return Err(Error::domain(format!(
            "scan limit {limit} exceeds {CARMICHAEL_SCAN_MAX}"
        )));
    }
    if limit < 4 {
        return Ok(Vec::new());
    }
    let mut found: Vec<u64> = (4..=limit)
        .into_par_iter()
        .filter(|&n| !trial_division_is_prime(n) && fools_every_coprime_base(n))
        .collect();
    found.sort_unstable();
    Ok(found)
}

const CARMICHAEL_TABLE: &str = include_str!("../data/carmichael_1e6.txt");

/// Carmichael numbers up to [`CARMICHAEL_SCAN_MAX`], from the shipped table.
pub fn carmichael_table() -> Vec<u64> {
    CARMICHAEL_TABLE
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| l.trim().parse().expect("malformed Carmichael table"))
        .collect()
}

/// `Some(true/false)` for `n` within the shipped table's range, `None` above it.
pub fn is_known_carmichael(n: u64) -> Option<bool> {
    (n <= CARMICHAEL_SCAN_MAX).then(|| carmichael_table().binary_search(&n).is_ok())
}
