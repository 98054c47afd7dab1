//! Exhaustive oracles: every sequence of length `m` over `Z/nZ` is checked
//! directly for balance.
//!
//! The search space `(Z/nZ)^m` is split by fixed prefixes of length
//! `ceil(log_n(workers))`. Each prefix is walked with an odometer over the
//! remaining positions (last position fastest), so concatenating the prefix
//! results in prefix order yields lexicographic order for any worker count.

use std::sync::atomic::{AtomicUsize, Ordering};

use crate::admissible::is_admissible;
use crate::ap::{construct_balanced, ArithmeticProgression, Family};
use crate::error::{Error, Result};
use crate::par;
use crate::residue::{is_balanced_with, Modulus, Sequence};

pub const DEFAULT_MAX_STATES: u64 = 100_000_000;

/// Limits for an exhaustive search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    max_states: u64,
    workers: usize,
}

impl SearchBudget {
    /// Both values are clamped to at least 1.
    pub fn new(max_states: u64, workers: usize) -> Self {
        SearchBudget {
            max_states: max_states.max(1),
            workers: workers.max(1),
        }
    }

    pub fn max_states(&self) -> u64 {
        self.max_states
    }

    pub fn workers(&self) -> usize {
        self.workers
    }

    pub fn with_workers(self, workers: usize) -> Self {
        SearchBudget::new(self.max_states, workers)
    }

    /// Rejects `n^m` candidates above the cap before anything is allocated.
    pub fn check(&self, n: u64, m: usize) -> Result<u64> {
        match u32::try_from(m).ok().and_then(|e| n.checked_pow(e)) {
            Some(states) if states <= self.max_states => Ok(states),
            Some(states) => Err(Error::BudgetExceeded {
                states: states.to_string(),
                max_states: self.max_states,
            }),
            None => Err(Error::BudgetExceeded {
                states: format!("{n}^{m}"),
                max_states: self.max_states,
            }),
        }
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget::new(DEFAULT_MAX_STATES, par::available_workers())
    }
}

/// Outcome of an exhaustive search. `found` is empty in count-only mode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport {
    pub n: u64,
    pub m: usize,
    pub found: Vec<Sequence>,
    pub count: u64,
    pub states_examined: u64,
}

/// Smallest `L <= m` with `n^L >= workers`.
fn prefix_len(n: u64, m: usize, workers: usize) -> usize {
    if n < 2 {
        return 0;
    }
    let mut len = 0;
    let mut blocks = 1u64;
    while blocks < workers as u64 && len < m {
        blocks *= n;
        len += 1;
    }
    len
}

/// Writes the base-`n` digits of `index` into `out`, most significant first.
fn write_prefix(mut index: u64, n: u64, out: &mut [u64]) {
    for slot in out.iter_mut().rev() {
        *slot = index % n;
        index /= n;
    }
}

/// Walks every completion of a fixed prefix. `visit` returns `false` to stop.
fn walk_block(n: u64, terms: &mut [u64], prefix: usize, mut visit: impl FnMut(&[u64]) -> bool) {
    for t in &mut terms[prefix..] {
        *t = 0;
    }
    loop {
        if !visit(terms) {
            return;
        }
        let mut pos = terms.len();
        loop {
            if pos == prefix {
                return;
            }
            pos -= 1;
            terms[pos] += 1;
            if terms[pos] < n {
                break;
            }
            terms[pos] = 0;
        }
    }
}

struct Block {
    found: Vec<Vec<u64>>,
    count: u64,
    states: u64,
}

fn exhaust(n: u64, m: usize, budget: &SearchBudget, keep: bool) -> Result<SearchReport> {
    let modulus = Modulus::new(n)?;
    if m == 0 {
        return Err(Error::EmptySequence);
    }
    budget.check(n, m)?;
    let prefix = prefix_len(n, m, budget.workers());
    let blocks: Vec<u64> = (0..n.pow(prefix as u32)).collect();
    let results = par::map_collect(&blocks, budget.workers(), |&index| {
        let mut terms = vec![0u64; m];
        write_prefix(index, n, &mut terms[..prefix]);
        let mut counts = Vec::with_capacity(n as usize);
        let mut scratch = Vec::with_capacity(m);
        let mut block = Block {
            found: Vec::new(),
            count: 0,
            states: 0,
        };
        walk_block(n, &mut terms, prefix, |x| {
            block.states += 1;
            if is_balanced_with(x, modulus, &mut counts, &mut scratch) {
                block.count += 1;
                if keep {
                    block.found.push(x.to_vec());
                }
            }
            true
        });
        block
    });
    let mut report = SearchReport {
        n,
        m,
        found: Vec::new(),
        count: 0,
        states_examined: 0,
    };
    for block in results {
        report.count += block.count;
        report.states_examined += block.states;
        report
            .found
            .extend(block.found.into_iter().map(|t| Sequence::from_raw(modulus, t)));
    }
    debug_assert!(report.found.windows(2).all(|w| w[0] < w[1]));
    Ok(report)
}

/// All balanced sequences of length `m` in `Z/nZ`, in lexicographic order.
pub fn brute_force_balanced(n: u64, m: usize, budget: &SearchBudget) -> Result<SearchReport> {
    exhaust(n, m, budget, true)
}

/// Like [`brute_force_balanced`] but only counts.
pub fn count_balanced(n: u64, m: usize, budget: &SearchBudget) -> Result<SearchReport> {
    exhaust(n, m, budget, false)
}

/// Lexicographically first balanced sequence of length `m`, if any.
///
/// Blocks after the earliest block known to hold a witness are abandoned,
/// so the answer does not depend on the worker count.
pub fn first_balanced(n: u64, m: usize, budget: &SearchBudget) -> Result<Option<Sequence>> {
    let modulus = Modulus::new(n)?;
    if m == 0 {
        return Err(Error::EmptySequence);
    }
    budget.check(n, m)?;
    let prefix = prefix_len(n, m, budget.workers());
    let blocks: Vec<usize> = (0..n.pow(prefix as u32) as usize).collect();
    let earliest = AtomicUsize::new(usize::MAX);
    let results = par::map_collect(&blocks, budget.workers(), |&index| {
        if earliest.load(Ordering::Relaxed) < index {
            return None;
        }
        let mut terms = vec![0u64; m];
        write_prefix(index as u64, n, &mut terms[..prefix]);
        let mut counts = Vec::with_capacity(n as usize);
        let mut scratch = Vec::with_capacity(m);
        let mut witness = None;
        let mut steps = 0u32;
        walk_block(n, &mut terms, prefix, |x| {
            if is_balanced_with(x, modulus, &mut counts, &mut scratch) {
                witness = Some(x.to_vec());
                return false;
            }
            steps = steps.wrapping_add(1);
            steps % 4096 != 0 || earliest.load(Ordering::Relaxed) > index
        });
        if witness.is_some() {
            earliest.fetch_min(index, Ordering::Relaxed);
        }
        witness
    });
    Ok(results
        .into_iter()
        .flatten()
        .next()
        .map(|t| Sequence::from_raw(modulus, t)))
}

/// Every balanced arithmetic progression `AP(a, d, m)` in `Z/nZ` with
/// `1 <= m <= m_max`, found by expanding each progression and checking it
/// directly. Sorted by length, then lexicographically by terms.
///
/// Intended for even `n`, but valid for any modulus.
pub fn classify_even_aps(n: u64, m_max: usize, workers: usize) -> Result<Vec<ArithmeticProgression>> {
    let modulus = Modulus::new(n)?;
    let pairs: Vec<(u64, u64)> = (0..n).flat_map(|a| (0..n).map(move |d| (a, d))).collect();
    let per_pair = par::map_collect(&pairs, workers, |&(a, d)| {
        let mut counts = Vec::new();
        let mut scratch = Vec::new();
        let mut hits = Vec::new();
        for m in 1..=m_max {
            let ap = ArithmeticProgression::new(modulus, a, d, m).expect("m >= 1");
            let seq = ap.to_sequence();
            if is_balanced_with(seq.terms(), modulus, &mut counts, &mut scratch) {
                hits.push((seq, ap));
            }
        }
        hits
    });
    let mut all: Vec<(Sequence, ArithmeticProgression)> = per_pair.into_iter().flatten().collect();
    all.sort_by(|x, y| (x.0.len(), &x.0).cmp(&(y.0.len(), &y.0)));
    // Length-1 progressions coincide for every d; keep one representative.
    all.dedup_by(|x, y| x.0 == y.0);
    Ok(all.into_iter().map(|(_, ap)| ap).collect())
}

/// How a probe settled existence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProbeMethod {
    Construction,
    BruteForce,
}

impl ProbeMethod {
    pub fn name(self) -> &'static str {
        match self {
            ProbeMethod::Construction => "construction",
            ProbeMethod::BruteForce => "brute-force",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeResult {
    pub n: u64,
    pub m: usize,
    pub exists: bool,
    pub method: ProbeMethod,
    pub witness: Option<Sequence>,
}

/// Decides whether a balanced sequence of admissible length `m` exists in
/// `Z/nZ`: first through the antisymmetric progression construction, then by
/// exhaustive search within the budget. `exists == false` is only reported
/// after the whole space has been searched.
pub fn molluzzo_probe(n: u64, m: usize, budget: &SearchBudget) -> Result<ProbeResult> {
    Modulus::new(n)?;
    if m == 0 {
        return Err(Error::EmptySequence);
    }
    if !is_admissible(n, m as u64) {
        return Err(Error::NotAdmissible { n, m });
    }
    if n % 2 == 1 {
        if let Ok(seq) = construct_balanced(n, m, None, Family::Beta) {
            if seq.is_balanced() {
                return Ok(ProbeResult {
                    n,
                    m,
                    exists: true,
                    method: ProbeMethod::Construction,
                    witness: Some(seq),
                });
            }
        }
    }
    let witness = first_balanced(n, m, budget)?;
    Ok(ProbeResult {
        n,
        m,
        exists: witness.is_some(),
        method: ProbeMethod::BruteForce,
        witness,
    })
}
