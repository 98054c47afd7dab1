//! Acceptance suite. Each criterion runs once, is timed against its limit,
//! and prints a single PASS/FAIL line. The process exits non-zero if any
//! criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::RangeInclusive;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use steinhaus::orders::gcd;
use steinhaus::par;
use steinhaus::search::DEFAULT_MAX_STATES;
use steinhaus::{
    admissible_classes, alpha, brute_force_balanced, classify_even_aps, construct_balanced, is_admissible,
    radical, ArithmeticProgression, Family, Modulus, SearchBudget, Sequence,
};
use steinhaus_cli::render_triangle;

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

const CASES: usize = 200;

fn modulus(n: u64) -> Modulus {
    Modulus::new(n).unwrap()
}

fn seq(n: u64, terms: &[u64]) -> Sequence {
    Sequence::new(modulus(n), terms.to_vec()).unwrap()
}

fn fixture(name: &str) -> String {
    std::fs::read_to_string(format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

fn workers() -> usize {
    par::available_workers().max(2)
}

fn random_seq(rng: &mut ChaCha8Rng, n: u64, lens: RangeInclusive<usize>) -> Sequence {
    let len = rng.gen_range(lens);
    seq(n, &(0..len).map(|_| rng.gen_range(0..n)).collect::<Vec<_>>())
}

fn random_antisymmetric(rng: &mut ChaCha8Rng, n: u64, lens: RangeInclusive<usize>) -> Sequence {
    let len = rng.gen_range(lens);
    let md = modulus(n);
    let mut terms: Vec<u64> = (0..len).map(|_| rng.gen_range(0..n)).collect();
    for i in 0..len.div_ceil(2) {
        terms[len - 1 - i] = md.neg(terms[i]);
    }
    if len % 2 == 1 && md.add(terms[len / 2], terms[len / 2]) != 0 {
        terms[len / 2] = 0;
    }
    seq(n, &terms)
}

fn units(n: u64) -> Vec<u64> {
    (0..n).filter(|&d| gcd(d, n) == 1).collect()
}

fn c1_small_triangle() -> Check {
    let t = seq(3, &[0, 1, 2, 2]).triangle();
    let expected = vec![vec![0, 1, 2, 2], vec![1, 0, 1], vec![1, 1], vec![2]];
    ensure!(t.rows() == expected, "rows {:?}", t.rows());
    Ok("rows (0,1,2,2),(1,0,1),(1,1),(2)".into())
}

fn c2_balanced_mod5() -> Check {
    let x = seq(5, &[2, 2, 3, 3]);
    let counts = x.multiplicities();
    ensure!(x.is_balanced(), "not balanced");
    ensure!(counts.counts() == [2, 2, 2, 2, 2], "counts {:?}", counts.counts());
    Ok("balanced, multiplicities [2,2,2,2,2]".into())
}

fn c3_alpha_table() -> Check {
    let table = fixture("alpha_table.csv");
    let mut rows = 0;
    for line in table.lines().skip(1) {
        let v: Vec<u64> = line.split(',').map(|s| s.parse().unwrap()).collect();
        let (n, rad, a) = (v[0], v[1], v[2]);
        ensure!(alpha(n) == Ok(a), "alpha({n}) = {:?}, table {a}", alpha(n));
        ensure!(radical(n) == rad, "rad({n}) = {}, table {rad}", radical(n));
        rows += 1;
    }
    ensure!(rows == 52, "table has {rows} rows");
    ensure!(alpha(11) == Ok(10) && alpha(73) == Ok(9) && alpha(103) == Ok(51), "spot values");
    Ok(format!("{rows} rows of (n, rad, alpha) match"))
}

fn c4_admissible_825() -> Check {
    let c = admissible_classes(825).map_err(|e| e.to_string())?;
    ensure!(c.period() == 825, "period {}", c.period());
    ensure!(
        c.residues() == [0, 99, 275, 374, 450, 549, 725, 824],
        "classes {:?}",
        c.residues()
    );
    Ok("classes {0,99,275,374,450,549,725,824} mod 825".into())
}

fn c5_ap_1_3_20() -> Check {
    let ap = ArithmeticProgression::new(modulus(7), 1, 3, 20).unwrap();
    let x = ap.to_sequence();
    ensure!(x.is_balanced(), "not balanced");
    ensure!(x.multiplicities().counts() == [30; 7], "counts {:?}", x.multiplicities().counts());
    let t = x.triangle();
    let reference: Vec<Vec<u64>> = fixture("ap_1_3_20_mod7.txt")
        .lines()
        .map(|l| l.split(',').map(|s| s.parse().unwrap()).collect())
        .collect();
    ensure!(t.rows() == reference, "triangle differs from reference");
    let rendered = render_triangle(&t);
    let lines: Vec<&str> = rendered.lines().collect();
    ensure!(lines[0].trim() == "1 4 0 3 6 2 5 1 4 0 3 6 2 5 1 4 0 3 6 2", "first row {:?}", lines[0]);
    ensure!(lines.last().map(|l| l.trim()) == Some("3"), "apex {:?}", lines.last());
    Ok("balanced, each residue 30 times, all 210 entries match the reference".into())
}

fn c6_even_classification() -> Check {
    let expected: BTreeSet<(u64, Vec<u64>)> = [
        (2, vec![0, 1, 0]),
        (2, vec![1, 1, 1]),
        (2, vec![0, 1, 0, 1]),
        (2, vec![1, 0, 1, 0]),
        (6, vec![1, 3, 5]),
        (6, vec![2, 3, 4]),
        (6, vec![4, 3, 2]),
        (6, vec![5, 3, 1]),
    ]
    .into_iter()
    .collect();
    let mut got = BTreeSet::new();
    for n in [2u64, 4, 6, 8, 10, 12] {
        for ap in classify_even_aps(n, 40, workers()).map_err(|e| e.to_string())? {
            got.insert((n, ap.to_sequence().into_terms()));
        }
    }
    ensure!(got == expected, "found {got:?}");
    Ok("exactly 8 balanced APs (4 in Z/2Z, 4 in Z/6Z), none for n = 4, 8, 10, 12".into())
}

fn c7_binary_counts() -> Check {
    // Frozen regression counts from the first exhaustive run.
    let frozen = [(3usize, 4u64), (4, 6), (7, 12), (8, 40)];
    let budget = SearchBudget::new(DEFAULT_MAX_STATES, workers());
    let mut parts = Vec::new();
    for (m, count) in frozen {
        let r = brute_force_balanced(2, m, &budget).map_err(|e| e.to_string())?;
        ensure!(r.count >= 4, "m = {m}: only {} balanced", r.count);
        ensure!(r.count == count, "m = {m}: count {} != frozen {count}", r.count);
        parts.push(format!("m={m}: {}", r.count));
    }
    Ok(parts.join(", "))
}

fn c8_powers_of_three() -> Check {
    let mut checked = 0;
    for n in [3u64, 9, 27] {
        for m in 1..=200u64 {
            if !is_admissible(n, m) {
                continue;
            }
            let x = construct_balanced(n, m as usize, None, Family::Beta)
                .map_err(|e| format!("n = {n}, m = {m}: {e}"))?;
            ensure!(x.is_balanced(), "n = {n}, m = {m}: construction not balanced");
            checked += 1;
        }
    }
    Ok(format!("{checked} admissible (n, m) pairs constructed and verified"))
}

fn suite_closed_forms(rng: &mut ChaCha8Rng) -> Check {
    for _ in 0..CASES {
        let n = rng.gen_range(1..=50);
        let m = rng.gen_range(1..=60);
        let ap = ArithmeticProgression::new(modulus(n), rng.gen_range(0..n), rng.gen_range(0..n), m).unwrap();
        let x = ap.to_sequence();
        let t = x.triangle();
        for i in 0..m {
            let closed = ap.derived(i).unwrap().to_sequence();
            ensure!(closed == x.derive_n(i).unwrap(), "{ap}: derived {i}");
            ensure!(closed.terms() == &t.rows()[i][..], "{ap}: row {}", i + 1);
            for j in 1..=m - i {
                ensure!(ap.entry(i + 1, j).unwrap().value() == t.entry(i + 1, j).unwrap(), "{ap}: ({}, {j})", i + 1);
            }
        }
    }
    Ok(format!("closed forms {CASES}"))
}

fn suite_primitive(rng: &mut ChaCha8Rng) -> Check {
    for _ in 0..CASES {
        let n = 2 * rng.gen_range(0..25) + 1;
        let ap = ArithmeticProgression::new(modulus(n), rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(1..=40))
            .unwrap();
        let p = ap.primitive().unwrap();
        ensure!(p.to_sequence().derive().unwrap() == ap.to_sequence(), "{ap}: primitive {p}");
    }
    Ok(format!("primitive {CASES}"))
}

fn suite_projection(rng: &mut ChaCha8Rng) -> Check {
    for _ in 0..CASES {
        let n = rng.gen_range(1..=60);
        let x = random_seq(rng, n, 1..=40);
        let divisors: Vec<u64> = (1..=n).filter(|q| n % q == 0).collect();
        let q = divisors[rng.gen_range(0..divisors.len())];
        let full = x.multiplicities();
        let projected = x.project(q).unwrap().multiplicities();
        for y in 0..q {
            let summed: u64 = (0..n / q).map(|k| full.count(y + k * q)).sum();
            ensure!(projected.count(y) == summed, "{x} mod {n}, q = {q}, y = {y}");
        }
        let balanced_rhs = x.project(q).unwrap().is_balanced() && full.constant_on_cosets(q).unwrap();
        ensure!(x.is_balanced() == balanced_rhs, "{x} mod {n}, q = {q}: balance criterion");
    }
    Ok(format!("projection {CASES}"))
}

fn suite_antisymmetry(rng: &mut ChaCha8Rng) -> Check {
    for _ in 0..CASES {
        let n = rng.gen_range(1..=40);
        let x = random_antisymmetric(rng, n, 2..=40);
        let m = x.len();
        let c = m.div_ceil(2);
        ensure!(x.derive().unwrap().is_antisymmetric(), "{x}: derived not antisymmetric");
        ensure!(x.modulus().add(x.terms()[c - 1], x.terms()[m - c]) == 0, "{x}: middle");
    }
    // Converse: primitives of antisymmetric sequences, with random first term.
    let mut lifted = 0;
    for _ in 0..CASES {
        let n = rng.gen_range(1..=12);
        let md = modulus(n);
        let y = random_antisymmetric(rng, n, 1..=30);
        let mut terms = vec![rng.gen_range(0..n)];
        for &s in y.terms() {
            let last = *terms.last().unwrap();
            terms.push(md.sub(s, last));
        }
        let x = seq(n, &terms);
        ensure!(x.derive().unwrap() == y, "primitive construction");
        let m = x.len();
        let c = m.div_ceil(2);
        let middle = md.add(x.terms()[c - 1], x.terms()[m - c]) == 0;
        ensure!(x.is_antisymmetric() == middle, "{x} mod {n}: converse");
        lifted += usize::from(middle);
    }
    ensure!(lifted > 0, "converse direction never exercised");
    Ok(format!("antisymmetry {CASES}+{CASES}"))
}

fn suite_negation_symmetry(rng: &mut ChaCha8Rng) -> Check {
    for _ in 0..CASES {
        let n = rng.gen_range(1..=40);
        let x = random_antisymmetric(rng, n, 1..=50);
        let mv = x.multiplicities();
        for v in 0..n {
            ensure!(mv.count(v) == mv.count(x.modulus().neg(v)), "{x} mod {n}: residue {v}");
        }
    }
    Ok(format!("negation {CASES}"))
}

fn suite_windows(rng: &mut ChaCha8Rng) -> Check {
    for _ in 0..CASES {
        let n = rng.gen_range(1..=40);
        let us = units(n);
        let d = us[rng.gen_range(0..us.len())];
        let m = rng.gen_range(1..=4 * n as usize);
        let x = ArithmeticProgression::new(modulus(n), rng.gen_range(0..n), d, m).unwrap().to_sequence();
        for w in x.terms().windows(n as usize) {
            let distinct: BTreeSet<u64> = w.iter().copied().collect();
            ensure!(distinct.len() == n as usize, "{x} mod {n}: window not a permutation");
        }
    }
    Ok(format!("windows {CASES}"))
}

fn suite_recurrence() -> Check {
    let mut cases = 0;
    for n in [3u64, 5, 7] {
        let a_n = alpha(n).unwrap();
        let base_len = (a_n * n) as usize;
        for d in units(n) {
            for a in [0u64, 1] {
                let base = ArithmeticProgression::new(modulus(n), a, d, base_len).unwrap();
                let base_counts = base.to_sequence().multiplicities();
                for k in 1..=3u64 {
                    let x = ArithmeticProgression::new(modulus(n), a, d, k as usize * base_len).unwrap();
                    let counts = x.to_sequence().multiplicities();
                    let extra = k * (k - 1) / 2 * a_n * a_n * n;
                    for v in 0..n {
                        ensure!(
                            counts.count(v) == k * base_counts.count(v) + extra,
                            "n = {n}, a = {a}, d = {d}, k = {k}, residue {v}"
                        );
                    }
                    cases += 1;
                }
            }
        }
    }
    Ok(format!("recurrence {cases}"))
}

fn suite_non_invertible() -> Check {
    let jobs: Vec<(u64, u64)> = (3..=45u64)
        .step_by(2)
        .flat_map(|n| (0..n).filter(move |&d| gcd(d, n) != 1).map(move |d| (n, d)))
        .collect();
    let failures = par::map_collect(&jobs, workers(), |&(n, d)| {
        let lengths = admissible_classes(n).unwrap().lengths_up_to(4 * n);
        let mut checked = 0usize;
        for a in 0..n {
            for &m in &lengths {
                let x = ArithmeticProgression::new(modulus(n), a, d, m as usize).unwrap().to_sequence();
                if x.is_balanced() {
                    return Err(format!("AP({a}, {d}, {m}) mod {n} is balanced"));
                }
                checked += 1;
            }
        }
        Ok(checked)
    });
    let mut total = 0;
    for f in failures {
        total += f?;
    }
    Ok(format!("non-invertible {total}"))
}

fn c9_property_suites() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5734_1a05);
    let parts = [
        suite_closed_forms(&mut rng)?,
        suite_primitive(&mut rng)?,
        suite_projection(&mut rng)?,
        suite_antisymmetry(&mut rng)?,
        suite_negation_symmetry(&mut rng)?,
        suite_windows(&mut rng)?,
        suite_recurrence()?,
        suite_non_invertible()?,
    ];
    Ok(parts.join("; "))
}

fn c10_oracle_cross_check() -> Check {
    // Every construction output whose search space has at most 10^6 states.
    let mut outputs: BTreeMap<(u64, usize), BTreeSet<Vec<u64>>> = BTreeMap::new();
    for n in (1..=15u64).step_by(2) {
        let mut m = 1usize;
        while n.checked_pow(m as u32).is_some_and(|s| s <= 1_000_000) && m <= 30 {
            for d in units(n) {
                let mut families = vec![Family::Beta];
                families.extend((0..n).map(|a| Family::Alpha { a }));
                for family in families {
                    if let Ok(x) = construct_balanced(n, m, Some(d), family) {
                        outputs.entry((n, m)).or_default().insert(x.into_terms());
                    }
                }
            }
            m += 1;
        }
    }
    ensure!(!outputs.is_empty(), "no constructions in range");
    let mut constructions = 0;
    for (&(n, m), seqs) in &outputs {
        let single = brute_force_balanced(n, m, &SearchBudget::new(1_000_000, 1)).map_err(|e| e.to_string())?;
        let multi = brute_force_balanced(n, m, &SearchBudget::new(1_000_000, 4)).map_err(|e| e.to_string())?;
        ensure!(single == multi, "n = {n}, m = {m}: 1 and 4 workers disagree");
        let found: BTreeSet<Vec<u64>> = single.found.iter().map(|s| s.terms().to_vec()).collect();
        for s in seqs {
            ensure!(found.contains(s), "n = {n}, m = {m}: construction {s:?} missing from search");
        }
        constructions += seqs.len();
    }
    for (n, m) in [(2u64, 12usize), (4, 7), (6, 6), (5, 5)] {
        let single = brute_force_balanced(n, m, &SearchBudget::new(1_000_000, 1)).map_err(|e| e.to_string())?;
        let multi = brute_force_balanced(n, m, &SearchBudget::new(1_000_000, 4)).map_err(|e| e.to_string())?;
        ensure!(single == multi, "n = {n}, m = {m}: 1 and 4 workers disagree");
    }
    Ok(format!(
        "{constructions} constructions over {} (n, m) instances found by brute force; worker counts agree",
        outputs.len()
    ))
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    check: fn() -> Check,
}

fn main() {
    let criteria = [
        Criterion { id: 1, name: "triangle of (0,1,2,2) mod 3", limit: Duration::from_millis(1), check: c1_small_triangle },
        Criterion { id: 2, name: "(2,2,3,3) mod 5 balanced", limit: Duration::from_millis(1), check: c2_balanced_mod5 },
        Criterion { id: 3, name: "alpha/rad table", limit: Duration::from_secs(1), check: c3_alpha_table },
        Criterion { id: 4, name: "admissible classes of 825", limit: Duration::from_millis(1), check: c4_admissible_825 },
        Criterion { id: 5, name: "AP(1,3,20) mod 7", limit: Duration::from_millis(10), check: c5_ap_1_3_20 },
        Criterion { id: 6, name: "even-n AP classification", limit: Duration::from_secs(5), check: c6_even_classification },
        Criterion { id: 7, name: "binary balanced counts", limit: Duration::from_secs(1), check: c7_binary_counts },
        Criterion { id: 8, name: "powers of three", limit: Duration::from_secs(30), check: c8_powers_of_three },
        Criterion { id: 9, name: "property suites", limit: Duration::from_secs(120), check: c9_property_suites },
        Criterion { id: 10, name: "oracle cross-check", limit: Duration::from_secs(60), check: c10_oracle_cross_check },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let result = (c.check)();
        let elapsed = start.elapsed();
        let (status, detail) = match result {
            Ok(detail) if elapsed <= c.limit => ("PASS", detail),
            Ok(detail) => ("FAIL", format!("too slow; {detail}")),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!(
            "[{status}] criterion {:>2} {:<28} {:>10.3?} (limit {:?}): {detail}",
            c.id, c.name, elapsed, c.limit
        );
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
