//! Arithmetic progressions `AP(a, d, m) = (a, a + d, ..., a + (m - 1) d)` and
//! the balanced sequences built from them for odd moduli.
//!
//! The `i`-th derived sequence of an arithmetic progression is again one:
//! `AP(2^i a + i 2^{i-1} d, 2^i d, m - i)`. Everything in this module is
//! computed from that closed form; the brute-force side lives in
//! [`crate::residue`] and [`crate::search`].

use std::fmt;

use crate::error::{Error, Result};
use crate::orders::{alpha, beta};
use crate::residue::{Modulus, Residue, Sequence};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ArithmeticProgression {
    modulus: Modulus,
    a: u64,
    d: u64,
    m: usize,
}

impl ArithmeticProgression {
    /// `a` and `d` are reduced modulo `n`.
    pub fn new(modulus: Modulus, a: u64, d: u64, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::EmptySequence);
        }
        Ok(ArithmeticProgression {
            modulus,
            a: modulus.reduce(a),
            d: modulus.reduce(d),
            m,
        })
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn first(&self) -> Residue {
        self.modulus.residue(self.a)
    }

    pub fn difference(&self) -> Residue {
        self.modulus.residue(self.d)
    }

    pub fn len(&self) -> usize {
        self.m
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn to_sequence(&self) -> Sequence {
        let n = self.modulus;
        let mut terms = Vec::with_capacity(self.m);
        let mut x = self.a;
        for _ in 0..self.m {
            terms.push(x);
            x = n.add(x, self.d);
        }
        Sequence::new(n, terms).expect("non-empty, reduced terms")
    }

    /// The `i`-th derived sequence, in closed form.
    pub fn derived(&self, i: usize) -> Result<Self> {
        if i >= self.m {
            return Err(Error::IndexOutOfRange {
                index: i,
                bound: self.m,
            });
        }
        if i == 0 {
            return Ok(*self);
        }
        let n = self.modulus;
        let two_i = n.pow(2, i as u64);
        let two_i_minus_1 = n.pow(2, i as u64 - 1);
        let shift = n.mul(n.mul(n.reduce(i as u64), two_i_minus_1), self.d);
        Ok(ArithmeticProgression {
            modulus: n,
            a: n.add(n.mul(two_i, self.a), shift),
            d: n.mul(two_i, self.d),
            m: self.m - i,
        })
    }

    /// Triangle entry `ΔX(i, j)` (1-based) in closed form:
    /// `a + (j-1) d` on the first row, `2^{i-1} a + 2^{i-2} (2j + i - 3) d` below.
    pub fn entry(&self, i: usize, j: usize) -> Result<Residue> {
        if i == 0 || i > self.m {
            return Err(Error::IndexOutOfRange {
                index: i,
                bound: self.m,
            });
        }
        let row_len = self.m - i + 1;
        if j == 0 || j > row_len {
            return Err(Error::IndexOutOfRange {
                index: j,
                bound: row_len,
            });
        }
        let n = self.modulus;
        let value = if i == 1 {
            n.add(self.a, n.mul(n.reduce(j as u64 - 1), self.d))
        } else {
            let coeff = n.reduce((2 * j + i - 3) as u64);
            n.add(
                n.mul(n.pow(2, i as u64 - 1), self.a),
                n.mul(n.pow(2, i as u64 - 2), n.mul(coeff, self.d)),
            )
        };
        Ok(n.residue(value))
    }

    /// The unique arithmetic progression of length `m + 1` whose derived
    /// sequence is `self`: `AP(2^{-1} a - 2^{-2} d, 2^{-1} d, m + 1)`.
    /// Only defined for odd `n`.
    pub fn primitive(&self) -> Result<Self> {
        let n = self.modulus;
        let half = n.half()?;
        let quarter = n.mul(half, half);
        Ok(ArithmeticProgression {
            modulus: n,
            a: n.sub(n.mul(half, self.a), n.mul(quarter, self.d)),
            d: n.mul(half, self.d),
            m: self.m + 1,
        })
    }
}

impl fmt::Display for ArithmeticProgression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AP({}, {}, {}) mod {}", self.a, self.d, self.m, self.modulus)
    }
}

/// The unique antisymmetric progression with difference `d` and length `m`
/// for odd `n`, `AP(2^{-1} (1 - m) d, d, m)`.
pub fn antisymmetric_ap(modulus: Modulus, d: u64, m: usize) -> Result<ArithmeticProgression> {
    let n = modulus;
    let half = n.half()?;
    let d = n.reduce(d);
    let one_minus_m = n.sub(n.reduce(1), n.reduce(m as u64));
    ArithmeticProgression::new(n, n.mul(half, n.mul(one_minus_m, d)), d, m)
}

/// Which sufficient condition a construction relies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// Antisymmetric progressions, lengths `m = 0, -1 (mod β(n) n)`.
    Beta,
    /// Any start `a`, lengths `m = 0, -1 (mod α(n) n)`.
    Alpha { a: u64 },
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Beta => "beta",
            Family::Alpha { .. } => "alpha",
        }
    }
}

/// Balanced arithmetic progression of length `m` in `Z/nZ` for odd `n`
/// with invertible difference `d` (default 1).
///
/// With [`Family::Beta`] this is `AP(2^{-1} d, d, m)` for `m = 0 (mod β(n) n)`
/// and `AP(d, d, m)` for `m = -1 (mod β(n) n)`. With [`Family::Alpha`] it is
/// `AP(a, d, m)` for `m = 0` or `-1 (mod α(n) n)`.
///
/// `UnsupportedLength` means the construction does not reach this length;
/// it says nothing about whether a balanced sequence exists.
pub fn construct_balanced_ap(
    n: u64,
    m: usize,
    d: Option<u64>,
    family: Family,
) -> Result<ArithmeticProgression> {
    let modulus = Modulus::new(n)?;
    if !modulus.is_odd() {
        return Err(Error::EvenModulus(n));
    }
    if m == 0 {
        return Err(Error::EmptySequence);
    }
    let d_raw = d.unwrap_or(1);
    let d = modulus.reduce(d_raw);
    if !modulus.is_unit(d) {
        return Err(Error::NotInvertible { d: d_raw, n });
    }
    let (order, label) = match family {
        Family::Beta => (beta(n)?, "beta"),
        Family::Alpha { .. } => (alpha(n)?, "alpha"),
    };
    let period = order as u128 * n as u128;
    let m_wide = m as u128;
    let zero_class = m_wide % period == 0;
    let minus_one_class = (m_wide + 1) % period == 0;
    if !zero_class && !minus_one_class {
        return Err(Error::UnsupportedLength {
            n,
            m,
            reason: format!("m is neither 0 nor -1 modulo {label}(n)*n = {period}"),
        });
    }
    match family {
        Family::Alpha { a } => ArithmeticProgression::new(modulus, a, d, m),
        Family::Beta if zero_class => {
            ArithmeticProgression::new(modulus, modulus.mul(modulus.half()?, d), d, m)
        }
        Family::Beta => ArithmeticProgression::new(modulus, d, d, m),
    }
}

/// [`construct_balanced_ap`] expanded into a sequence.
pub fn construct_balanced(n: u64, m: usize, d: Option<u64>, family: Family) -> Result<Sequence> {
    construct_balanced_ap(n, m, d, family).map(|ap| ap.to_sequence())
}
