//! Elementary number theory: primality, multiplicative order, and the search
//! for lengths `k` at which `p_k(x)` is irreducible over `F_q`.

use crate::algebra::AlgebraError;

/// Deterministic primality by trial division (inputs here are at most a few
/// million).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) || n.is_multiple_of(3) {
        return false;
    }
    let mut d = 5u64;
    while d * d <= n {
        if n.is_multiple_of(d) || n.is_multiple_of(d + 2) {
            return false;
        }
        d += 6;
    }
    true
}

/// Distinct prime divisors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn mod_pow(base: u64, mut e: u64, modulus: u64) -> u64 {
    let m = u128::from(modulus);
    let mut b = u128::from(base) % m;
    let mut acc = 1u128 % m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc as u64
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// True iff `q` has multiplicative order `k - 1` modulo the prime `k`.
///
/// Checks `q^((k-1)/p) != 1 (mod k)` for every prime `p | k - 1`. A `q`
/// divisible by `k` is not a unit and is reported as not primitive.
pub fn is_primitive_root(q: u64, k: u64) -> Result<bool, AlgebraError> {
    if !is_prime(k) {
        return Err(AlgebraError::NotPrime(k));
    }
    if gcd(q, k) != 1 {
        return Ok(false);
    }
    let phi = k - 1;
    Ok(prime_factors(phi)
        .into_iter()
        .all(|p| mod_pow(q, phi / p, k) != 1))
}

/// Smallest prime `k` in `[k_min, limit]` such that `q` is a primitive root
/// modulo `k`.
pub fn find_wozencraft_k(q: u64, k_min: u64, limit: u64) -> Result<u64, AlgebraError> {
    if !is_prime(q) {
        return Err(AlgebraError::NotPrime(q));
    }
    let start = k_min.max(2);
    for k in start..=limit {
        if is_prime(k) && is_primitive_root(q, k)? {
            return Ok(k);
        }
    }
    Err(AlgebraError::SearchExhausted {
        q,
        from: start,
        limit,
    })
}
