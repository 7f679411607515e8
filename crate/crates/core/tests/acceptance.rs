//! Acceptance criteria 1–8: one PASS/FAIL line each.
//!
//! All arithmetic is exact, so every comparison has zero tolerance. The sampling
//! parameters, seed, and runtime limits are pinned below. A criterion that fails prints
//! FAIL with its failing checks; the target itself fails only when the set of failing
//! checks differs from the analysed deviations listed in `KNOWN`, or a limit is exceeded.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use cu_lattice::selftest::{self, Config, Criterion};

const SEED: u64 = 0;
const TRIALS: usize = 1000;
const DENOMINATOR_BOUND: u32 = 4;
const COMPARE_PAIRS: usize = 500;
const LATTICE_SAMPLES: usize = 200;
const PROPERTY_CASES: usize = 500;
const AXIOM_LIMIT: Duration = Duration::from_secs(60);
const COMPARE_LIMIT: Duration = Duration::from_secs(120);

/// Checks known to fail, with the reason printed next to the FAIL line.
const KNOWN: &[(u8, &[&str], &str)] = &[
    (
        1,
        &["monotone_chain_2/O5", "monotone_chain_3/O5", "monotone_chain_4/O5"],
        "nondecreasing vectors are not closed under the differences O5 needs: (0,4) << (0,4) <= (2,4) would need r = (2,0)",
    ),
    (
        3,
        &["monotone_chain_2/complements", "monotone_chain_3/complements", "monotone_chain_4/complements"],
        "same cause: e.g. coefficients (1,0) <= (0,1) differ by (0,1), whose step values increase",
    ),
    (
        5,
        &["canonical/h_is_half"],
        "h_ij = 1/2 makes each row sum 1, and 1 << 1 fails in the realification; a D = 4 witness is found instead",
    ),
];

fn config() -> Config {
    Config {
        seed: SEED,
        trials: TRIALS,
        denominator_bound: DENOMINATOR_BOUND,
        compare_pairs: COMPARE_PAIRS,
        lattice_samples: LATTICE_SAMPLES,
        property_cases: PROPERTY_CASES,
        force: false,
    }
}

/// Prints the line; returns whether the outcome is the expected one.
fn report(c: &Criterion, elapsed: Duration, limit: Option<Duration>) -> bool {
    let failing: BTreeSet<&str> = c.failing().into_iter().collect();
    let known = KNOWN.iter().find(|(id, _, _)| *id == c.id);
    let expected: BTreeSet<&str> = known.map(|(_, names, _)| names.iter().copied().collect()).unwrap_or_default();
    let in_time = limit.is_none_or(|l| elapsed < l);
    let pass = c.pass && in_time;
    let timing = match limit {
        Some(l) => format!(" [{:.1}s, limit {}s]", elapsed.as_secs_f64(), l.as_secs()),
        None => format!(" [{:.1}s]", elapsed.as_secs_f64()),
    };
    println!("{} criterion {} ({}): {}{timing}", if pass { "PASS" } else { "FAIL" }, c.id, c.name, c.summary);
    for check in c.checks.iter().filter(|x| !x.pass) {
        println!("    {}: {}", check.name, check.detail);
    }
    if let (false, Some((_, _, why))) = (failing.is_empty(), known) {
        println!("    analysis: {why}");
    }
    if !in_time {
        println!("    runtime limit exceeded");
    }
    failing == expected && in_time
}

type Runner = fn(&Config) -> Criterion;

fn timed(f: Runner, cfg: &Config) -> (Criterion, Duration) {
    let start = Instant::now();
    let c = f(cfg);
    (c, start.elapsed())
}

fn strip_elapsed(json: &str) -> serde_json::Value {
    let mut v: serde_json::Value = serde_json::from_str(json).expect("selftest emits JSON");
    v.as_object_mut().expect("report object").remove("elapsed_ms");
    v
}

fn determinism() -> (Criterion, Duration) {
    let start = Instant::now();
    let run = || {
        let out = Command::new(env!("CARGO_BIN_EXE_cu-lattice"))
            .args(["selftest", "--json", "--seed", &SEED.to_string(), "--trials", &TRIALS.to_string()])
            .output()
            .expect("binary runs");
        String::from_utf8(out.stdout).expect("utf-8 output")
    };
    let (a, b) = (run(), run());
    let same = !a.is_empty()
        && serde_json::to_string(&strip_elapsed(&a)).unwrap() == serde_json::to_string(&strip_elapsed(&b)).unwrap();
    let check =
        cu_lattice::real::NamedCheck::new("two_cli_runs_identical_modulo_elapsed", same, format!("{} bytes", a.len()));
    let c = Criterion {
        id: 8,
        name: "determinism",
        pass: same,
        summary: if same {
            "two selftest runs identical".into()
        } else {
            "selftest output differs between runs".into()
        },
        checks: vec![check],
    };
    (c, start.elapsed())
}

fn main() -> ExitCode {
    let cfg = config();
    let runs: [(Runner, Option<Duration>); 7] = [
        (selftest::axiom_conformance, Some(AXIOM_LIMIT)),
        (selftest::oracle_equivalence, Some(COMPARE_LIMIT)),
        (selftest::pointwise_is_algebraic, None),
        (selftest::lattice_theorem, None),
        (selftest::refinement, None),
        (selftest::realification, None),
        (selftest::glimm_halving, None),
    ];
    let mut ok = true;
    for (f, limit) in runs {
        let (c, t) = timed(f, &cfg);
        ok &= report(&c, t, limit);
    }
    let (c, t) = determinism();
    ok &= report(&c, t, None);
    if ok {
        println!("acceptance: outcomes match the analysed expectations");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: unexpected outcome");
        ExitCode::FAILURE
    }
}
