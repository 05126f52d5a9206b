//! Acceptance harness: one line per criterion, each with a pinned time limit.
//!
//! Every criterion plans a suite afresh (so no cache is shared between
//! criteria), keeps the checks it is about, insists that certain named checks
//! are among them, runs them on the rayon pool and compares the wall-clock
//! time with its limit.  The process exits non-zero if any criterion fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use ncinst::frontend::suites::{plan, Planned, ASSOCIATIVITY_TRIPLES, CHARGE_RTOL, COMMUTATIVITY_PAIRS, PANEL_SIZE, TRIPLE_DEGREE};
use ncinst::index::numeric_charge;

/// Absolute tolerance on the numerically integrated charge.
const CHARGE_TOLERANCE: f64 = 1e-6;
/// Seed of the reproducibility criterion.
const REPRO_SEED: &str = "7";

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome { ok: true, detail: detail.into() }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome { ok: false, detail: detail.into() }
}

/// Plans `suite`, keeps the checks accepted by `keep`, requires every name in
/// `required` to be kept, and runs them.
fn run_checks(suite: &str, keep: impl Fn(&str) -> bool, required: &[&str]) -> Outcome {
    let planned: Vec<Planned> = match plan(suite, 0) {
        Ok(p) => p.into_iter().filter(|p| keep(&p.name)).collect(),
        Err(e) => return fail(e.to_string()),
    };
    let missing: Vec<&&str> = required.iter().filter(|r| !planned.iter().any(|p| p.name == **r)).collect();
    if !missing.is_empty() {
        return fail(format!("missing checks {:?}", missing));
    }
    if planned.is_empty() {
        return fail("no checks selected");
    }
    let failures: Vec<String> = planned
        .par_iter()
        .filter_map(|p| p.check.run(&p.context).err().map(|e| format!("{}: {}", p.name, e)))
        .collect();
    if failures.is_empty() {
        pass(format!("{} checks", planned.len()))
    } else {
        fail(format!("{} of {} checks failed; first: {}", failures.len(), planned.len(), failures[0]))
    }
}

fn both(a: Outcome, b: Outcome) -> Outcome {
    let detail = format!("{}; {}", a.detail, b.detail);
    Outcome { ok: a.ok && b.ok, detail }
}

fn criterion_associativity() -> Outcome {
    run_checks(
        "relations",
        |n| n.starts_with("associativity-") || n.starts_with("sphere-relations-") || n.starts_with("critical-pairs-"),
        &["associativity-s4", "associativity-s7", "associativity-chart", "sphere-relations-s4", "sphere-relations-s7"],
    )
}

fn criterion_projection() -> Outcome {
    run_checks("projection", |_| true, &["psi-dagger-psi-identity", "projection-idempotent", "projection-self-adjoint", "projection-explicit-form"])
}

fn criterion_clifford() -> Outcome {
    run_checks("clifford", |_| true, &["clifford-relations", "conjugation-relations", "gamma0-grading"])
}

fn criterion_so5() -> Outcome {
    let actions = run_checks(
        "so5",
        |n| n.starts_with("well-defined-") || n.starts_with("compatible-"),
        &["well-defined-s4-H1", "well-defined-s7-H1", "compatible-E(1,1)"],
    );
    let table = run_checks("brackets", |n| n.starts_with("so5-bracket-"), &["so5-bracket-[H1,E(1,1)]", "so5-bracket-[E(1,1),E(-1,-1)]"]);
    both(actions, table)
}

fn criterion_so51() -> Outcome {
    run_checks("so51", |_| true, &["worked-example-[E(-1,-1),G(1,0)]-on-z2", "well-defined-s4-H0", "well-defined-s7-G(1,0)", "compatible-H0"])
}

fn criterion_omega() -> Outcome {
    run_checks(
        "so5",
        |n| n.starts_with("omega-invariance-") || n.starts_with("matrix-invariance-"),
        &["omega-invariance-H1", "omega-invariance-E(1,1)", "matrix-invariance-H1", "matrix-invariance-E(1,1)"],
    )
}

fn criterion_instanton() -> Outcome {
    let core = run_checks("instanton", |_| true, &["bianchi-identity", "crucial-property-z0", "crucial-property-z2'"]);
    let deltas = run_checks("deltas", |_| true, &["delta-omega-z0", "delta-alpha-z0", "delta-f-z0", "delta-f-z2'"]);
    both(core, deltas)
}

fn criterion_chart() -> Outcome {
    run_checks("chart", |_| true, &["chart-unitary", "chart-local-curvature", "chart-curvature-self-dual", "chart-delta-f-self-dual-z0"])
}

fn criterion_index() -> Outcome {
    run_checks("index", |n| n == "top-charge=1" || n == "moduli-index=5", &["top-charge=1", "moduli-index=5"])
}

fn criterion_charge() -> Outcome {
    let check = run_checks("index", |n| n == "numeric-charge", &["numeric-charge"]);
    let direct = match numeric_charge(CHARGE_RTOL) {
        Ok(c) if (c - 1.0).abs() <= CHARGE_TOLERANCE => pass(format!("charge {:.12}", c)),
        Ok(c) => fail(format!("charge {:.12} differs from 1 by more than {:e}", c, CHARGE_TOLERANCE)),
        Err(e) => fail(e.to_string()),
    };
    both(check, direct)
}

fn criterion_classical() -> Outcome {
    run_checks(
        "classical-limit",
        |_| true,
        &[
            "q1:commutativity-s4",
            "q1:commutativity-s7",
            "q1:commutativity-chart",
            "q1:psi-dagger-psi-identity",
            "q1:moduli-index=5",
            "q1:bianchi-identity",
        ],
    )
}

fn verify_all_json(path: &std::path::Path) -> Result<Vec<u8>, String> {
    let status = Command::new(env!("CARGO_BIN_EXE_ncinst"))
        .args(["verify", "--suite", "all", "--seed", REPRO_SEED, "--json"])
        .arg(path)
        .stdout(std::process::Stdio::null())
        .status()
        .map_err(|e| e.to_string())?;
    if !status.success() {
        return Err(format!("verify exited with {}", status));
    }
    std::fs::read(path).map_err(|e| e.to_string())
}

fn criterion_reproducible() -> Outcome {
    let dir = std::env::temp_dir().join(format!("ncinst-acceptance-{}", std::process::id()));
    if let Err(e) = std::fs::create_dir_all(&dir) {
        return fail(e.to_string());
    }
    let first = verify_all_json(&dir.join("first.json"));
    let second = verify_all_json(&dir.join("second.json"));
    let _ = std::fs::remove_dir_all(&dir);
    match (first, second) {
        (Ok(a), Ok(b)) if a == b => pass(format!("{} identical bytes", a.len())),
        (Ok(a), Ok(b)) => fail(format!("reports differ ({} vs {} bytes)", a.len(), b.len())),
        (Err(e), _) | (_, Err(e)) => fail(e),
    }
}

struct Criterion {
    number: u32,
    label: String,
    limit: Duration,
    run: fn() -> Outcome,
}

fn criteria() -> Vec<Criterion> {
    let c = |number, label: String, secs, run| Criterion { number, label, limit: Duration::from_secs(secs), run };
    vec![
        c(
            1,
            format!("associativity on {} triples of degree <= {} and sphere relations", ASSOCIATIVITY_TRIPLES, TRIPLE_DEGREE),
            10,
            criterion_associativity as fn() -> Outcome,
        ),
        c(2, "projection: psi-dagger psi = 1, p^2 = p = p-dagger, explicit form".into(), 1, criterion_projection),
        c(3, "Clifford algebra relations".into(), 1, criterion_clifford),
        c(4, format!("so(5) actions and brackets on both spheres ({} monomials)", PANEL_SIZE), 20, criterion_so5),
        c(5, "so(5,1) actions, brackets and the worked example".into(), 30, criterion_so51),
        c(6, "omega-invariance and the matrix identity".into(), 10, criterion_omega),
        c(7, "instanton core: Bianchi, delta-omega, crucial property, delta-F".into(), 60, criterion_instanton),
        c(8, "local chart".into(), 30, criterion_chart),
        c(9, "top charge = 1 and moduli index = 5".into(), 1, criterion_index),
        c(10, format!("numeric charge within {:e} of 1", CHARGE_TOLERANCE), 5, criterion_charge),
        c(11, format!("classical limit: all suites at q = 1, commutativity on {} pairs", COMMUTATIVITY_PAIRS), 10, criterion_classical),
        c(12, format!("verify --suite all --seed {} --json is byte-identical across runs", REPRO_SEED), 180, criterion_reproducible),
    ]
}

fn main() -> ExitCode {
    let mut failed = 0;
    for c in criteria() {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let in_time = elapsed <= c.limit;
        let ok = outcome.ok && in_time;
        if !ok {
            failed += 1;
        }
        println!(
            "criterion {:>2} {}: {} ({}; {} ms, limit {} ms{})",
            c.number,
            c.label,
            if ok { "pass" } else { "fail" },
            outcome.detail,
            elapsed.as_millis(),
            c.limit.as_millis(),
            if in_time { "" } else { ", over time" }
        );
    }
    println!("{} criteria, {} failed", criteria().len(), failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
