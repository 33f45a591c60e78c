//! Primality testing and prime search.
//!
//! Machine-sized integers use Miller–Rabin with the first twelve prime bases,
//! which is deterministic for every `u64`. Arbitrary-precision inputs use the
//! same bases: the answer is proven below 3.3 · 10^24 and a strong probable
//! prime above, which [`BigPrime::proven`] reports.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let (mut d, mut s) = (n - 1, 0u32);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &MR_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Smallest prime `>= lower`.
pub fn next_prime(lower: u64) -> u64 {
    let mut n = lower.max(2);
    while !is_prime(n) {
        n += 1;
    }
    n
}

/// Result of a prime search over arbitrary-precision integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigPrime {
    pub value: BigUint,
    /// `false` when the value lies above the range where the fixed bases are
    /// known to be deterministic.
    pub proven: bool,
}

fn big_is_probable_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if n < &two {
        return false;
    }
    for &p in &MR_BASES {
        let bp = BigUint::from(p);
        if n == &bp {
            return true;
        }
        if (n % &bp).is_zero() {
            return false;
        }
    }
    let n_minus_1 = n - 1u32;
    let mut d = n_minus_1.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'witness: for &a in &MR_BASES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Smallest (probable) prime `>= lower` for arbitrary-precision bounds.
pub fn next_prime_big(lower: &BigUint) -> BigPrime {
    if let Some(small) = lower.to_u64() {
        if small < u64::MAX / 2 {
            return BigPrime {
                value: BigUint::from(next_prime(small)),
                proven: true,
            };
        }
    }
    // 3.3 * 10^24 bound for the first twelve prime bases
    let proven_limit: BigUint = "3317044064679887385961981".parse().unwrap();
    let mut n = lower.clone();
    if n.is_even() {
        n += 1u32;
    }
    while !big_is_probable_prime(&n) {
        n += 2u32;
    }
    let proven = n < proven_limit;
    BigPrime { value: n, proven }
}
