//! Acceptance checks, one line per criterion.
//!
//! Runs as a plain binary (no libtest harness) so every line is printed
//! whether it passes or not, and so the timing checks run one at a time.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use orientable::bounds::{
    aos_upper_bound, count_asymmetric_bracelets, lower_bound, upper_bound, LowerBoundMethod,
};
use orientable::concat::{fast_rcl_sequence, fast_rcl_with_stats};
use orientable::cyclejoin::{build_tree, find_children, parent};
use orientable::search::{exhaustive_max, extend_cyclic, make_aos, Heuristic, DEFAULT_BUDGET};
use orientable::sequence::CountingSink;
use orientable::successor::generate_from_successor;
use orientable::verify::{covers_s, cyclic_equal, is_orientable};
use orientable::word::{asymmetric_bracelets, is_asymmetric_bracelet, necklace_of};
use orientable_cli::timing;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lower(n: usize) -> u128 {
    lower_bound(n, LowerBoundMethod::Formula).unwrap()
}

// Published bounds: (n, L_n, U_n).
const CYCLIC_BOUNDS: [(usize, u128, u128); 16] = [
    (5, 0, 6),
    (6, 6, 17),
    (7, 14, 40),
    (8, 48, 96),
    (9, 126, 206),
    (10, 300, 443),
    (11, 682, 918),
    (12, 1530, 1908),
    (13, 3276, 3882),
    (14, 6916, 7905),
    (15, 14520, 15948),
    (16, 29808, 32192),
    (17, 61200, 64662),
    (18, 124368, 129911),
    (19, 252434, 260386),
    (20, 509220, 521964),
];

// Published acyclic rows: (n, L_n + n - 1, acyclic upper bound).
const ACYCLIC_ROWS: [(usize, usize, u128); 15] = [
    (6, 11, 33),
    (7, 20, 62),
    (8, 55, 127),
    (9, 134, 248),
    (10, 309, 505),
    (11, 692, 1002),
    (12, 1541, 2027),
    (13, 3288, 4044),
    (14, 6929, 8141),
    (15, 14534, 16270),
    (16, 29823, 32655),
    (17, 61216, 65296),
    (18, 124461, 130833),
    (19, 252842, 261650),
    (20, 509239, 523795),
];

fn bounds_table() -> Check {
    for (n, l, u) in CYCLIC_BOUNDS {
        let (got_l, got_u) = (lower(n), upper_bound(n).unwrap());
        ensure(got_l == l && got_u == u, || format!("n={n}: got ({got_l}, {got_u}), want ({l}, {u})"))?;
    }
    for (n, _, hat) in ACYCLIC_ROWS {
        let got = aos_upper_bound(n).unwrap();
        ensure(got == hat, || format!("acyclic bound n={n}: got {got}, want {hat}"))?;
    }
    Ok("32 cyclic values and 15 acyclic values exact".into())
}

fn lower_bound_methods() -> Check {
    for n in 6..=18 {
        let (f, e) = (lower(n), lower_bound(n, LowerBoundMethod::Enumeration).unwrap());
        ensure(f == e, || format!("n={n}: formula {f}, enumeration {e}"))?;
    }
    Ok("formula = enumeration for n = 6..18".into())
}

fn bracelet_counts() -> Check {
    let want = [1u128, 2, 6, 14, 30, 62, 128, 252, 495, 968];
    let got: Vec<u128> = (6..=15).map(|n| count_asymmetric_bracelets(n).unwrap()).collect();
    ensure(got == want, || format!("got {got:?}"))?;
    Ok(format!("{got:?}"))
}

fn fixture(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name);
    std::fs::read_to_string(path)
        .unwrap()
        .chars()
        .filter(|c| !c.is_whitespace())
        .collect()
}

fn cli_stdout(args: &[&str]) -> Result<String, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_orientable"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || format!("{args:?} exited with {}", out.status))?;
    Ok(String::from_utf8(out.stdout).unwrap())
}

fn golden_sequences() -> Check {
    let rcl = cli_stdout(&["generate", "--n", "9", "--algo", "rcl"])?;
    ensure(rcl == format!("{}\n", fixture("rcl_9.txt")), || format!("rcl output {rcl:?}"))?;
    let succ = cli_stdout(&["generate", "--n", "9", "--algo", "successor", "--seed", "000001011"])?;
    ensure(succ == format!("{}\n", fixture("successor_9.txt")), || format!("successor output {succ:?}"))?;
    Ok("both 126-bit sequences bit-exact".into())
}

fn orientability() -> Check {
    for n in 6..=14 {
        let l = lower(n) as usize;
        for (name, seq) in [
            ("successor", generate_from_successor(n, None).unwrap()),
            ("rcl", fast_rcl_sequence(n).unwrap()),
        ] {
            ensure(seq.len() == l, || format!("{name} n={n}: length {}", seq.len()))?;
            ensure(is_orientable(&seq, n).unwrap(), || format!("{name} n={n}: not orientable"))?;
            let cov = covers_s(&seq, n).unwrap();
            ensure(cov.is_covered(), || format!("{name} n={n}: {cov}"))?;
        }
    }
    Ok("n = 6..14, both generators".into())
}

fn generator_equivalence() -> Check {
    for n in 6..=14 {
        let a = generate_from_successor(n, None).unwrap();
        let b = fast_rcl_sequence(n).unwrap();
        ensure(cyclic_equal(&a, &b), || format!("n={n}: not rotations of each other"))?;
    }
    Ok("n = 6..14".into())
}

fn tree_structure() -> Check {
    let mut worst = String::new();
    for n in 6..=16 {
        let tree = build_tree(n).unwrap();
        let h = tree.height();
        ensure(h < 2 * (n - 4), || format!("n={n}: height {h}"))?;
        let periodic: Vec<usize> = (0..tree.len()).filter(|&i| tree.node(i).is_periodic()).collect();
        for &i in &periodic {
            ensure(tree.children_of(i).is_empty(), || {
                format!("n={n}: periodic node {} has children", tree.node(i).label)
            })?;
        }
        let aperiodic = tree.len() - periodic.len();
        ensure(periodic.len() <= aperiodic, || {
            format!("n={n}: {} periodic vs {aperiodic} aperiodic", periodic.len())
        })?;
        let nodes = tree.len() as u128;
        ensure(n as u128 * nodes <= 2 * lower(n), || format!("n={n}: n|A(n)| > 2 L_n"))?;
        worst = format!("height {h} < {} at n=16", 2 * (n - 4));
    }
    Ok(worst)
}

fn find_children_oracle() -> Check {
    let mut nodes = 0;
    for n in 6..=14 {
        let members = asymmetric_bracelets(n);
        for alpha in &members {
            let fast = find_children(alpha).unwrap();
            for k in 1..=n {
                let child = necklace_of(&alpha.flipped(k));
                let brute = is_asymmetric_bracelet(&child)
                    && parent(&child).map(|p| p == *alpha).unwrap_or(false);
                ensure(fast.get(k) == brute, || format!("n={n} node {alpha} index {k}"))?;
            }
            nodes += 1;
        }
    }
    Ok(format!("{nodes} nodes, n = 6..14"))
}

fn optima() -> Check {
    let mut lens = Vec::new();
    for (n, want) in [(5, 6), (6, 16), (7, 36)] {
        let seq = exhaustive_max(n).unwrap();
        ensure(seq.len() == want, || format!("n={n}: got {}, want {want}", seq.len()))?;
        ensure(is_orientable(&seq, n).unwrap(), || format!("n={n}: result not orientable"))?;
        lens.push(seq.len());
    }
    Ok(format!("lengths {lens:?}"))
}

fn extension_floor() -> Check {
    let mut notes = Vec::new();
    for (n, want) in [(6usize, 16usize), (7, 36)] {
        let base = generate_from_successor(n, None).unwrap();
        let out = extend_cyclic(&base, n, Heuristic::B, DEFAULT_BUDGET).unwrap();
        ensure(out.len() == want, || format!("n={n}: reached {}, want {want}", out.len()))?;
        ensure(is_orientable(&out, n).unwrap(), || format!("n={n}: not orientable"))?;
        notes.push(format!("n={n}:{}", out.len()));
    }
    for n in 8..=12 {
        let base = generate_from_successor(n, None).unwrap();
        for h in [Heuristic::A, Heuristic::B, Heuristic::C] {
            let out = extend_cyclic(&base, n, h, 1_000_000).unwrap();
            ensure(out.len() >= base.len(), || format!("n={n} {h}: shrank"))?;
            ensure(is_orientable(&out, n).unwrap(), || format!("n={n} {h}: not orientable"))?;
            if h == Heuristic::B {
                notes.push(format!("n={n}:{}", out.len()));
            }
        }
    }
    Ok(notes.join(" "))
}

fn aos_construction() -> Check {
    let mut mismatches = Vec::new();
    for (n, want, _) in ACYCLIC_ROWS {
        let aos = make_aos(&fast_rcl_sequence(n).unwrap(), n).unwrap();
        let derived = lower(n) as usize + n - 1;
        ensure(aos.len() == derived, || format!("n={n}: length {} is not L_n + n - 1", aos.len()))?;
        if n <= 14 {
            ensure(is_orientable(&aos, n).unwrap(), || format!("n={n}: not orientable"))?;
        }
        if aos.len() != want {
            mismatches.push(format!("n={n} got {} table {want}", aos.len()));
        }
    }
    ensure(mismatches.is_empty(), || {
        format!(
            "{}; every length equals the published L_n + (n-1), so these published cells disagree with the published L_n",
            mismatches.join(", ")
        )
    })?;
    Ok("n = 6..20 lengths exact, acyclic check n <= 14".into())
}

/// Allowed slack over exactly linear growth of the successor cost.
const LINEAR_SLACK: f64 = 1.5;
/// Allowed spread of the traversal cost per bit.
const RCL_SPREAD: f64 = 3.0;
/// Membership tests per output bit allowed in the traversal.
const TESTS_PER_BIT: f64 = 2.0;

fn performance() -> Check {
    let orders = [12usize, 16, 20, 24];
    let succ: Vec<f64> = orders
        .iter()
        .map(|&n| timing::successor_ns_per_bit(n, timing::SUCCESSOR_BITS).unwrap())
        .collect();
    for (i, &n) in orders.iter().enumerate() {
        let growth = succ[i] / succ[0];
        let linear = n as f64 / orders[0] as f64;
        ensure(growth <= LINEAR_SLACK * linear, || {
            format!("successor n={n}: {growth:.2}x cost vs {linear:.2}x order ({succ:?})")
        })?;
    }

    let rcl: Vec<f64> = orders.iter().map(|&n| timing::rcl_ns_per_bit(n).unwrap()).collect();
    let max = rcl.iter().cloned().fold(f64::MIN, f64::max);
    let min = rcl.iter().cloned().fold(f64::MAX, f64::min);
    ensure(max / min < RCL_SPREAD, || format!("rcl spread {:.2} ({rcl:?})", max / min))?;

    let mut worst: f64 = 0.0;
    for n in 10..=20 {
        let stats = fast_rcl_with_stats(n, &mut CountingSink::default()).unwrap();
        let ratio = stats.membership_tests as f64 / lower(n) as f64;
        ensure(ratio <= TESTS_PER_BIT, || format!("n={n}: {ratio:.3} tests per bit"))?;
        worst = worst.max(ratio);
    }
    let fmt = |v: &[f64]| v.iter().map(|x| format!("{x:.0}")).collect::<Vec<_>>().join("/");
    Ok(format!(
        "successor ns/bit {} ; rcl ns/bit {} (spread {:.2}) ; max tests/bit {worst:.3}",
        fmt(&succ),
        fmt(&rcl),
        max / min
    ))
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Check,
    /// Documented reason this criterion cannot pass as stated. It still
    /// runs and prints FAIL; it just does not fail the harness.
    known_failure: Option<&'static str>,
}

const ACYCLIC_ROW_TYPO: &str = "the published acyclic lengths for n = 18, 19 contradict the published L_n";

fn main() {
    let criteria = [
        Criterion { id: 1, name: "bounds table", limit: Some(Duration::from_secs(1)), run: bounds_table, known_failure: None },
        Criterion { id: 2, name: "lower bound formula vs enumeration", limit: Some(Duration::from_secs(30)), run: lower_bound_methods, known_failure: None },
        Criterion { id: 3, name: "asymmetric bracelet counts", limit: None, run: bracelet_counts, known_failure: None },
        Criterion { id: 4, name: "golden order-9 sequences", limit: None, run: golden_sequences, known_failure: None },
        Criterion { id: 5, name: "orientability and coverage", limit: Some(Duration::from_secs(120)), run: orientability, known_failure: None },
        Criterion { id: 6, name: "generator equivalence", limit: None, run: generator_equivalence, known_failure: None },
        Criterion { id: 7, name: "tree structure", limit: None, run: tree_structure, known_failure: None },
        Criterion { id: 8, name: "children scan vs brute force", limit: None, run: find_children_oracle, known_failure: None },
        Criterion { id: 9, name: "exhaustive optima", limit: Some(Duration::from_secs(300)), run: optima, known_failure: None },
        Criterion { id: 10, name: "extension floor", limit: None, run: extension_floor, known_failure: None },
        Criterion { id: 11, name: "acyclic construction", limit: None, run: aos_construction, known_failure: Some(ACYCLIC_ROW_TYPO) },
        Criterion { id: 12, name: "performance contracts", limit: None, run: performance, known_failure: None },
    ];

    let mut failed = 0;
    let mut known = 0;
    for c in &criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(c.run))
            .unwrap_or_else(|_| Err("panicked".to_string()));
        let elapsed = start.elapsed();
        let result = match (result, c.limit) {
            (Ok(_), Some(limit)) if elapsed > limit => {
                Err(format!("took {elapsed:.2?}, limit {limit:?}"))
            }
            (r, _) => r,
        };
        match result {
            Ok(detail) => {
                println!("PASS criterion {:>2} {}: {detail} [{elapsed:.2?}]", c.id, c.name);
                if c.known_failure.is_some() {
                    failed += 1;
                    println!("     criterion {} was recorded as unattainable but passed; update the record", c.id);
                }
            }
            Err(why) => {
                println!("FAIL criterion {:>2} {}: {why} [{elapsed:.2?}]", c.id, c.name);
                match c.known_failure {
                    Some(reason) => {
                        known += 1;
                        println!("     known failure: {reason}");
                    }
                    None => failed += 1,
                }
            }
        }
    }
    println!(
        "{} of {} criteria passed ({known} known failure, {failed} unexpected)",
        criteria.len() - failed - known,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
