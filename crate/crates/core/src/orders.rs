//! Integer helpers and the order functions the balanced constructions rely on.
//!
//! Everything here works on plain `u64` with `u128` intermediates, so no
//! modular product can overflow for any modulus representable as `u64`.

use crate::error::{Error, Result};

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

/// Extended Euclid: returns `(g, x, y)` with `a*x + b*y = g = gcd(a, b)`.
pub fn extended_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Inverse of `a` modulo `n`, if it exists. Modulo 1 every element is 0 and
/// its own inverse.
pub fn mod_inverse(a: u64, n: u64) -> Option<u64> {
    if n == 1 {
        return Some(0);
    }
    let (g, x, _) = extended_gcd((a % n) as i128, n as i128);
    (g == 1).then(|| x.rem_euclid(n as i128) as u64)
}

#[inline]
pub fn mod_mul(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

pub fn mod_pow(base: u64, mut exp: u64, n: u64) -> u64 {
    if n == 1 {
        return 0;
    }
    let mut result = 1 % n;
    let mut base = base % n;
    while exp > 0 {
        if exp & 1 == 1 {
            result = mod_mul(result, base, n);
        }
        base = mod_mul(base, base, n);
        exp >>= 1;
    }
    result
}

/// Prime factorization as `(prime, exponent)` pairs in increasing prime order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Factorization {
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    /// Multiplies the factors back together.
    pub fn value(&self) -> u64 {
        self.factors.iter().map(|&(p, e)| p.pow(e)).product()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }
}

/// Trial division up to the square root.
pub fn factorize(n: u64) -> Factorization {
    let mut factors = Vec::new();
    let mut rest = n;
    let mut p = 2u64;
    while rest > 1 && (p as u128) * (p as u128) <= rest as u128 {
        if rest % p == 0 {
            let mut e = 0;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    Factorization { factors }
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && factorize(p).factors == [(p, 1)]
}

/// Product of the distinct prime factors of `n`; `radical(1) = 1`.
pub fn radical(n: u64) -> u64 {
    factorize(n).primes().product()
}

/// Number of distinct prime factors.
pub fn omega(n: u64) -> u32 {
    factorize(n).factors.len() as u32
}

/// Euler's totient.
pub fn totient(n: u64) -> u64 {
    factorize(n)
        .factors
        .iter()
        .fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

/// Exponent of the prime `p` in `n`.
pub fn padic_valuation(p: u64, n: u64) -> Result<u32> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n == 0 {
        return Err(Error::InvalidModulus { n, max: u64::MAX });
    }
    let mut e = 0;
    let mut rest = n;
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    Ok(e)
}

/// Least `e >= 1` with `a^e = 1 (mod n)`, by iterated multiplication.
pub fn multiplicative_order(a: u64, n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidModulus { n, max: u64::MAX });
    }
    if gcd(a % n, n) != 1 {
        return Err(Error::NotCoprime { a, n });
    }
    if n == 1 {
        return Ok(1);
    }
    let a = a % n;
    let bound = totient(n);
    let mut power = a;
    let mut e = 1;
    while power != 1 {
        debug_assert!(e < bound);
        power = mod_mul(power, a, n);
        e += 1;
    }
    Ok(e)
}

fn require_odd(n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidModulus { n, max: u64::MAX });
    }
    if n % 2 == 0 {
        return Err(Error::EvenModulus(n));
    }
    Ok(())
}

/// Multiplicative order of `2^n` modulo the odd number `n`.
pub fn alpha(n: u64) -> Result<u64> {
    require_odd(n)?;
    multiplicative_order(mod_pow(2, n, n), n)
}

/// Least `e >= 1` with `2^(e n) = 1` or `-1 (mod n)`, for odd `n`.
pub fn beta(n: u64) -> Result<u64> {
    require_odd(n)?;
    if n == 1 {
        return Ok(1);
    }
    let step = mod_pow(2, n, n);
    let mut power = step;
    let mut e = 1;
    while power != 1 && power != n - 1 {
        power = mod_mul(power, step, n);
        e += 1;
    }
    Ok(e)
}
