//! Admissible lengths: the `m` for which `n` divides `C(m + 1, 2)`.
//!
//! Solving `m (m + 1) = 0 (mod 2n)` splits over prime powers into
//! `m = 0` or `m = -1` modulo `p^{v_p(n)}` (modulo `2^{v_2(n)+1}` for `p = 2`),
//! and the Chinese remainder theorem glues the `2^ω(n)` choices back together.

use std::fmt;

use crate::error::{Error, Result};
use crate::orders::{beta, extended_gcd, factorize, gcd, omega};

/// Solves `x = r_i (mod m_i)` for pairwise coprime moduli. Returns the
/// canonical representative in `[0, M)` together with `M = prod m_i`.
pub fn crt(congruences: &[(u64, u64)]) -> (u64, u64) {
    congruences
        .iter()
        .fold((0u64, 1u64), |(r, modulus), &(ri, mi)| {
            debug_assert_eq!(gcd(modulus, mi), 1, "moduli must be pairwise coprime");
            // x = r + modulus * t with modulus * t = ri - r (mod mi).
            let (_, inv, _) = extended_gcd(modulus as i128, mi as i128);
            let diff = (ri as i128 - r as i128).rem_euclid(mi as i128);
            let t = (diff * inv).rem_euclid(mi as i128);
            let combined = modulus as i128 * mi as i128;
            let x = (r as i128 + modulus as i128 * t).rem_euclid(combined);
            (x as u64, combined as u64)
        })
}

/// The residue classes of admissible lengths modulo their period
/// (`n` for odd `n`, `2n` for even `n`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibleClasses {
    period: u64,
    residues: Vec<u64>,
}

impl AdmissibleClasses {
    pub fn period(&self) -> u64 {
        self.period
    }

    /// Sorted class representatives in `[0, period)`.
    pub fn residues(&self) -> &[u64] {
        &self.residues
    }

    pub fn contains(&self, m: u64) -> bool {
        self.residues.binary_search(&(m % self.period)).is_ok()
    }

    /// All admissible `m` with `1 <= m <= max`, ascending.
    pub fn lengths_up_to(&self, max: u64) -> Vec<u64> {
        let mut out = Vec::new();
        let mut base = 0u64;
        while base <= max {
            out.extend(
                self.residues
                    .iter()
                    .map(|&r| base + r)
                    .filter(|&m| m >= 1 && m <= max),
            );
            base += self.period;
        }
        out
    }
}

pub fn admissible_classes(n: u64) -> Result<AdmissibleClasses> {
    if n == 0 {
        return Err(Error::InvalidModulus { n, max: u64::MAX });
    }
    let moduli: Vec<u64> = factorize(n)
        .factors()
        .iter()
        .map(|&(p, e)| if p == 2 { 1u64 << (e + 1) } else { p.pow(e) })
        .collect();
    let period = if n % 2 == 0 { 2 * n } else { n };
    let mut residues: Vec<u64> = (0u64..1 << moduli.len())
        .map(|mask| {
            let system: Vec<(u64, u64)> = moduli
                .iter()
                .enumerate()
                .map(|(k, &q)| (if mask >> k & 1 == 1 { q - 1 } else { 0 }, q))
                .collect();
            let (r, total) = crt(&system);
            debug_assert_eq!(total, period);
            r
        })
        .collect();
    residues.sort_unstable();
    Ok(AdmissibleClasses { period, residues })
}

/// `n | C(m + 1, 2)`.
pub fn is_admissible(n: u64, m: u64) -> bool {
    let m = m as u128;
    n != 0 && (m * (m + 1) / 2) % n as u128 == 0
}

/// An exact fraction in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fraction {
    numer: u64,
    denom: u64,
}

impl Fraction {
    pub fn new(numer: u64, denom: u64) -> Self {
        assert!(denom != 0, "zero denominator");
        let g = gcd(numer, denom).max(1);
        Fraction {
            numer: numer / g,
            denom: denom / g,
        }
    }

    pub fn numer(self) -> u64 {
        self.numer
    }

    pub fn denom(self) -> u64 {
        self.denom
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer, self.denom)
    }
}

/// Guaranteed share `1 / (2^{ω(n)-1} β(n))` of admissible lengths reached by
/// the antisymmetric progression construction, for odd `n >= 3`.
pub fn coverage_fraction(n: u64) -> Result<Fraction> {
    if n % 2 == 0 {
        return Err(Error::EvenModulus(n));
    }
    if n < 3 {
        return Err(Error::ModulusTooSmall { n, min: 3 });
    }
    let denom = (1u64 << (omega(n) - 1)) * beta(n)?;
    Ok(Fraction::new(1, denom))
}
