//! Exact modular arithmetic on 63-bit naturals.
//!
//! Products are formed in `u128` so `a * b` never wraps before reduction.
//! Inputs are accepted up to `u64::MAX`; the documented working range is
//! `[0, 2^63)`.

use crate::error::{Error, Result};

/// Largest value the library promises to handle (exclusive).
pub const NATURAL_LIMIT: u64 = 1 << 63;

/// `(a * b) mod c` with a double-width intermediate.
pub fn mod_mul(a: u64, b: u64, c: u64) -> Result<u64> {
    if c == 0 {
        return Err(Error::domain("modulus must be at least 1"));
    }
    Ok(mul_unchecked(a, b, c))
}

#[inline]
pub(crate) fn mul_unchecked(a: u64, b: u64, c: u64) -> u64 {
    ((a as u128 * b as u128) % c as u128) as u64
}

/// `(a ^ b) mod c` by square-and-multiply.
///
/// `mod_pow(a, 0, 1)` is `0`: every result is reduced mod `c`.
pub fn mod_pow(a: u64, b: u64, c: u64) -> Result<u64> {
    if c == 0 {
        return Err(Error::domain("modulus must be at least 1"));
    }
    Ok(pow_unchecked(a, b, c))
}

#[inline]
pub(crate) fn pow_unchecked(a: u64, b: u64, c: u64) -> u64 {
    pow_counted(a, b, c).0
}

/// Same as [`mod_pow`] but also returns the number of modular
/// multiplications performed. Used to check the `O(log b)` bound.
pub fn mod_pow_counted(a: u64, b: u64, c: u64) -> Result<(u64, u32)> {
    if c == 0 {
        return Err(Error::domain("modulus must be at least 1"));
    }
    Ok(pow_counted(a, b, c))
}

fn pow_counted(a: u64, mut b: u64, c: u64) -> (u64, u32) {
    let mut x = 1 % c;
    let mut y = a % c;
    let mut mults = 0;
    while b > 0 {
        if b & 1 == 1 {
            x = mul_unchecked(x, y, c);
            mults += 1;
        }
        b >>= 1;
        // the final squaring is never consumed
        if b > 0 {
            y = mul_unchecked(y, y, c);
            mults += 1;
        }
    }
    (x, mults)
}

/// Ground-truth primality by trial division up to `⌊√n⌋`.
pub fn trial_division_is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d <= n / d {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Greatest common divisor.
pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// `⌊√n⌋` computed exactly.
pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut r = (n as f64).sqrt() as u64;
    while r.checked_mul(r).is_none_or(|sq| sq > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|sq| sq <= n) {
        r += 1;
    }
    r
}
