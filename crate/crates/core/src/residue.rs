//! Sequences over `Z/nZ`, their derived sequences and Steinhaus triangles.
//!
//! Terms are stored as plain `u64` values in `[0, n)` next to a [`Modulus`].
//! Triangle coordinates are 1-based: `entry(i, j)` is the `j`-th element of
//! row `i`, and row `1` is the generating sequence.

use std::fmt;

use crate::error::{Error, Result};
use crate::orders::{gcd, mod_inverse, mod_mul, mod_pow};

/// Order `n >= 1` of the cyclic group `Z/nZ`.
///
/// Capped at `u32::MAX` so that sums of residues never leave `u64` and
/// per-residue count tables stay addressable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Modulus(u64);

impl Modulus {
    pub const MAX: u64 = u32::MAX as u64;

    pub fn new(n: u64) -> Result<Self> {
        if n == 0 || n > Self::MAX {
            return Err(Error::InvalidModulus { n, max: Self::MAX });
        }
        Ok(Modulus(n))
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    pub fn is_odd(self) -> bool {
        self.0 % 2 == 1
    }

    #[inline]
    pub fn reduce(self, v: u64) -> u64 {
        v % self.0
    }

    pub fn reduce_signed(self, v: i64) -> u64 {
        (v as i128).rem_euclid(self.0 as i128) as u64
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        mod_mul(a, b, self.0)
    }

    pub fn pow(self, base: u64, exp: u64) -> u64 {
        mod_pow(base, exp, self.0)
    }

    pub fn inverse(self, a: u64) -> Option<u64> {
        mod_inverse(a, self.0)
    }

    pub fn is_unit(self, a: u64) -> bool {
        gcd(a % self.0, self.0) == 1
    }

    /// `2^{-1}` for odd moduli, which is `(n + 1) / 2`.
    pub fn half(self) -> Result<u64> {
        if !self.is_odd() {
            return Err(Error::EvenModulus(self.0));
        }
        Ok(self.reduce(self.0.div_ceil(2)))
    }

    pub fn residue(self, value: u64) -> Residue {
        Residue {
            value: self.reduce(value),
            modulus: self,
        }
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// An element of `Z/nZ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u64,
    modulus: Modulus,
}

impl Residue {
    pub fn new(value: u64, modulus: Modulus) -> Result<Self> {
        if value >= modulus.get() {
            return Err(Error::ResidueOutOfRange {
                value,
                n: modulus.get(),
            });
        }
        Ok(Residue { value, modulus })
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> Modulus {
        self.modulus
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.value.fmt(f)
    }
}

/// Binomial coefficients `C(i, 0..=i)` reduced modulo `n`, built row by row
/// with Pascal's rule so that composite moduli are handled exactly.
pub fn binomial_row_mod(i: usize, modulus: Modulus) -> Vec<u64> {
    let mut row = Vec::with_capacity(i + 1);
    row.push(modulus.reduce(1));
    for r in 1..=i {
        row.push(0);
        for k in (1..=r).rev() {
            row[k] = modulus.add(row[k], row[k - 1]);
        }
    }
    row
}

/// `C(m + 1, 2) = m (m + 1) / 2`, the number of entries of a triangle with
/// base length `m`.
pub fn triangle_size(m: usize) -> u128 {
    let m = m as u128;
    m * (m + 1) / 2
}

/// A finite sequence `(x_1, ..., x_m)` of length `m >= 1` in `Z/nZ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sequence {
    modulus: Modulus,
    terms: Vec<u64>,
}

impl Sequence {
    /// Builds a sequence from terms that must already lie in `[0, n)`.
    pub fn new(modulus: Modulus, terms: Vec<u64>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::EmptySequence);
        }
        if let Some(&value) = terms.iter().find(|&&t| t >= modulus.get()) {
            return Err(Error::ResidueOutOfRange {
                value,
                n: modulus.get(),
            });
        }
        Ok(Sequence { modulus, terms })
    }

    /// Builds a sequence from arbitrary integers, reducing each into `[0, n)`.
    pub fn from_integers(modulus: Modulus, values: &[i64]) -> Result<Self> {
        let terms = values.iter().map(|&v| modulus.reduce_signed(v)).collect();
        Self::new(modulus, terms)
    }

    /// Parses the comma-separated decimal format, e.g. `0,1,2,2`. Values are
    /// reduced modulo `n`; negative values are normalized into `[0, n)`.
    pub fn parse(modulus: Modulus, text: &str) -> Result<Self> {
        let values = text
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                tok.parse::<i64>()
                    .map_err(|_| Error::Parse(format!("invalid residue {tok:?} in {text:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_integers(modulus, &values)
    }

    pub(crate) fn from_raw(modulus: Modulus, terms: Vec<u64>) -> Self {
        debug_assert!(!terms.is_empty());
        debug_assert!(terms.iter().all(|&t| t < modulus.get()));
        Sequence { modulus, terms }
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn terms(&self) -> &[u64] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<u64> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Always false: sequences have at least one term.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// The derived sequence `(x_1 + x_2, ..., x_{m-1} + x_m)`.
    pub fn derive(&self) -> Result<Sequence> {
        if self.len() < 2 {
            return Err(Error::LengthTooShort {
                len: self.len(),
                min: 2,
            });
        }
        let n = self.modulus;
        let terms = self.terms.windows(2).map(|w| n.add(w[0], w[1])).collect();
        Ok(Sequence::from_raw(n, terms))
    }

    /// The `i`-th derived sequence through its binomial closed form
    /// `sum_k C(i, k) x_{j+k}`.
    pub fn derive_n(&self, i: usize) -> Result<Sequence> {
        if i >= self.len() {
            return Err(Error::IndexOutOfRange {
                index: i,
                bound: self.len(),
            });
        }
        let n = self.modulus;
        let coeffs = binomial_row_mod(i, n);
        let terms = self
            .terms
            .windows(i + 1)
            .map(|w| {
                w.iter()
                    .zip(&coeffs)
                    .fold(0, |acc, (&x, &c)| n.add(acc, n.mul(c, x)))
            })
            .collect();
        Ok(Sequence::from_raw(n, terms))
    }

    /// Materializes the full Steinhaus triangle.
    pub fn triangle(&self) -> Triangle {
        let n = self.modulus;
        let mut rows = Vec::with_capacity(self.len());
        let mut row = self.terms.clone();
        loop {
            let next: Vec<u64> = row.windows(2).map(|w| n.add(w[0], w[1])).collect();
            rows.push(row);
            if next.is_empty() {
                break;
            }
            row = next;
        }
        Triangle { modulus: n, rows }
    }

    /// Multiplicity function of the triangle, computed row by row without
    /// materializing the triangle.
    pub fn multiplicities(&self) -> MultiplicityVector {
        let n = self.modulus;
        let mut counts = vec![0u64; n.get() as usize];
        let mut scratch = Vec::with_capacity(self.len());
        tally_triangle(&self.terms, n, &mut counts, &mut scratch);
        MultiplicityVector { modulus: n, counts }
    }

    /// Whether every residue occurs equally often in the triangle.
    pub fn is_balanced(&self) -> bool {
        let mut counts = Vec::new();
        let mut scratch = Vec::new();
        is_balanced_with(&self.terms, self.modulus, &mut counts, &mut scratch)
    }

    /// The projected sequence `pi_q(X)` in `Z/qZ`.
    pub fn project(&self, q: u64) -> Result<Sequence> {
        let n = self.modulus.get();
        if q == 0 || n % q != 0 {
            return Err(Error::NotADivisor { q, n });
        }
        let target = Modulus::new(q)?;
        let terms = self.terms.iter().map(|&x| target.reduce(x)).collect();
        Ok(Sequence::from_raw(target, terms))
    }

    /// `x_{m-i+1} = -x_i` for every `i`.
    pub fn is_antisymmetric(&self) -> bool {
        let n = self.modulus;
        self.terms
            .iter()
            .zip(self.terms.iter().rev())
            .all(|(&x, &y)| y == n.neg(x))
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, t) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

/// Adds the multiplicities of the triangle generated by `terms` into `counts`
/// (which must have length `n`). `scratch` is reused across calls.
pub fn tally_triangle(terms: &[u64], n: Modulus, counts: &mut [u64], scratch: &mut Vec<u64>) {
    debug_assert_eq!(counts.len() as u64, n.get());
    scratch.clear();
    scratch.extend_from_slice(terms);
    while !scratch.is_empty() {
        for &x in scratch.iter() {
            counts[x as usize] += 1;
        }
        let len = scratch.len();
        for j in 0..len - 1 {
            scratch[j] = n.add(scratch[j], scratch[j + 1]);
        }
        scratch.truncate(len - 1);
    }
}

/// Balance test over raw terms with caller-owned buffers; stops as soon as
/// some residue exceeds its fair share.
pub fn is_balanced_with(
    terms: &[u64],
    n: Modulus,
    counts: &mut Vec<u64>,
    scratch: &mut Vec<u64>,
) -> bool {
    let size = triangle_size(terms.len());
    if size % n.get() as u128 != 0 {
        return false;
    }
    let target = (size / n.get() as u128) as u64;
    counts.clear();
    counts.resize(n.get() as usize, 0);
    scratch.clear();
    scratch.extend_from_slice(terms);
    while !scratch.is_empty() {
        for &x in scratch.iter() {
            let c = &mut counts[x as usize];
            *c += 1;
            if *c > target {
                return false;
            }
        }
        let len = scratch.len();
        for j in 0..len - 1 {
            scratch[j] = n.add(scratch[j], scratch[j + 1]);
        }
        scratch.truncate(len - 1);
    }
    // Every count is at most the target and they sum to the size.
    true
}

/// The Steinhaus triangle `ΔX`: row `i` is the `(i-1)`-th derived sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangle {
    modulus: Modulus,
    rows: Vec<Vec<u64>>,
}

impl Triangle {
    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    /// Rows in order; `rows()[0]` is the generating sequence.
    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    /// Base length `m`, which is also the number of rows.
    pub fn base_len(&self) -> usize {
        self.rows.len()
    }

    /// Total number of entries, `C(m + 1, 2)`.
    pub fn size(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// Row `i` as a sequence (1-based).
    pub fn row(&self, i: usize) -> Result<Sequence> {
        let bound = self.rows.len();
        if i == 0 || i > bound {
            return Err(Error::IndexOutOfRange { index: i, bound });
        }
        Ok(Sequence::from_raw(self.modulus, self.rows[i - 1].clone()))
    }

    /// `ΔX(i, j)` for `1 <= i <= m`, `1 <= j <= m - i + 1`.
    pub fn entry(&self, i: usize, j: usize) -> Result<u64> {
        if i == 0 || i > self.rows.len() {
            return Err(Error::IndexOutOfRange {
                index: i,
                bound: self.rows.len(),
            });
        }
        let row = &self.rows[i - 1];
        if j == 0 || j > row.len() {
            return Err(Error::IndexOutOfRange {
                index: j,
                bound: row.len(),
            });
        }
        Ok(row[j - 1])
    }

    pub fn multiplicities(&self) -> MultiplicityVector {
        MultiplicityVector::from_values(self.modulus, self.rows.iter().flatten().copied())
    }
}

/// The multiplicity function `𝔪_M` of a finite multiset `M` of `Z/nZ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiplicityVector {
    modulus: Modulus,
    counts: Vec<u64>,
}

impl MultiplicityVector {
    pub fn from_values(modulus: Modulus, values: impl IntoIterator<Item = u64>) -> Self {
        let mut counts = vec![0u64; modulus.get() as usize];
        for v in values {
            counts[modulus.reduce(v) as usize] += 1;
        }
        MultiplicityVector { modulus, counts }
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn into_counts(self) -> Vec<u64> {
        self.counts
    }

    pub fn count(&self, x: u64) -> u64 {
        self.counts[self.modulus.reduce(x) as usize]
    }

    /// Cardinality `|M|`.
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn is_constant(&self) -> bool {
        self.counts.windows(2).all(|w| w[0] == w[1])
    }

    /// Pushes the multiset forward along `Z/nZ -> Z/qZ`, summing each coset.
    pub fn project(&self, q: u64) -> Result<MultiplicityVector> {
        let n = self.modulus.get();
        if q == 0 || n % q != 0 {
            return Err(Error::NotADivisor { q, n });
        }
        let target = Modulus::new(q)?;
        let mut counts = vec![0u64; q as usize];
        for (x, &c) in self.counts.iter().enumerate() {
            counts[x % q as usize] += c;
        }
        Ok(MultiplicityVector {
            modulus: target,
            counts,
        })
    }

    /// Whether the counts are constant on every coset `x + qZ/nZ`.
    pub fn constant_on_cosets(&self, q: u64) -> Result<bool> {
        let n = self.modulus.get();
        if q == 0 || n % q != 0 {
            return Err(Error::NotADivisor { q, n });
        }
        let q = q as usize;
        Ok((q..self.counts.len()).all(|x| self.counts[x] == self.counts[x - q]))
    }
}
