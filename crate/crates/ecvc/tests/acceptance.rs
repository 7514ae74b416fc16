//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails. Run with `cargo test -p ecvc --test acceptance`.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use ecvc_core::lattice::symmetrize;
use ecvc_core::matrix::ExactMatrix;
use ecvc_core::modular::{check_relations, PAIR_LABELS};
use ecvc_core::reflection::{
    infinity_monodromy, intertwiner_check, is_unipotent, monodromy_from_gammas, vanishing_local_system,
};
use ecvc_core::{builtin_case, builtin_cases, fuzz_coxeter, fuzz_psi, verify_case, FanoCase, CHECK_GROUPS};

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn ecvc(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_ecvc"))
        .args(args)
        .output()
        .expect("run ecvc binary")
}

fn within(label: &str, elapsed: Duration, limit: Duration) -> Result<(), String> {
    if elapsed < limit {
        Ok(())
    } else {
        Err(format!("{label} took {elapsed:?}, limit {limit:?}"))
    }
}

fn criterion_1_verify_all() -> Verdict {
    let start = Instant::now();
    let out = ecvc(&["verify", "--all", "--format", "json"]);
    let elapsed = start.elapsed();
    if out.status.code() != Some(0) {
        return Err(format!("exit code {:?}", out.status.code()));
    }
    let reports: serde_json::Value =
        serde_json::from_slice(&out.stdout).map_err(|e| format!("invalid JSON: {e}"))?;
    let reports = reports.as_array().ok_or("expected an array of reports")?;
    if reports.len() != 4 {
        return Err(format!("{} reports", reports.len()));
    }
    for r in reports {
        if r["overall"] != true {
            return Err(format!("{} failed", r["case"]));
        }
        let mut groups: Vec<&str> = Vec::new();
        for c in r["checks"].as_array().ok_or("checks missing")? {
            let g = c["label"].as_str().unwrap_or("").split('/').next().unwrap_or("");
            if !groups.contains(&g) {
                groups.push(g);
            }
        }
        if groups != CHECK_GROUPS {
            return Err(format!("{}: groups {groups:?}", r["case"]));
        }
    }
    within("verify --all", elapsed, Duration::from_secs(1))?;
    Ok(format!("4 cases x 9 groups in {elapsed:?}"))
}

fn criterion_2_gram() -> Verdict {
    let displayed = ExactMatrix::from_i64_rows(&[[2, 7, 8, 18], [7, 2, 4, 13], [8, 4, 2, 4], [18, 13, 4, 2]]);
    for c in builtin_cases() {
        let u = c.u_space().map_err(|e| e.to_string())?;
        let g = ecvc_core::lattice::gram_matrix(&c.vectors(), &u).map_err(|e| e.to_string())?;
        let target = symmetrize(&c.gram().map_err(|e| e.to_string())?);
        if &g != target.gram() {
            return Err(format!("{}: {g} != {}", c.name, target.gram()));
        }
        if c.name == "V22" && g != displayed {
            return Err(format!("V22 Gram {g} differs from the displayed matrix"));
        }
    }
    Ok("4 Gram matrices exact".into())
}

fn criterion_3_traces() -> Verdict {
    let mut count = 0;
    for c in builtin_cases() {
        for o in check_relations(&c.gammas, &c.x_matrix()) {
            if o.label.starts_with("trace:") {
                if !o.passed {
                    return Err(format!("{} {}: {:?}", c.name, o.label, o.witness));
                }
                count += 1;
            }
        }
    }
    if count != 24 {
        return Err(format!("{count} trace identities, expected 24"));
    }
    Ok("24/24 trace identities".into())
}

fn criterion_4_reflections() -> Verdict {
    let mut count = 0;
    for c in builtin_cases() {
        let actual = vanishing_local_system(&c).map_err(|e| e.to_string())?.matrices();
        let expected = monodromy_from_gammas(&c).map_err(|e| e.to_string())?;
        for (j, (a, e)) in actual.iter().zip(&expected).enumerate() {
            if a != e {
                return Err(format!("{} R(v{}) = {a} != {e}", c.name, j + 1));
            }
            count += 1;
        }
    }
    // hand-derived witnesses
    let v22 = vanishing_local_system(&builtin_case("V22").unwrap()).unwrap();
    let want = ExactMatrix::from_i64_rows(&[[-11, -88, 16], [3, 23, -4], [9, 66, -11]]);
    if v22.generators()[1].matrix() != &want {
        return Err("V22 R(v2) differs from the hand-derived matrix".into());
    }
    let p3 = vanishing_local_system(&builtin_case("P3").unwrap()).unwrap();
    let want = ExactMatrix::from_i64_rows(&[[-2, -12, 9], [1, 5, -3], [1, 4, -2]]);
    if p3.generators()[1].matrix() != &want {
        return Err("P3 R(v2) differs from the hand-derived matrix".into());
    }
    if count != 16 {
        return Err(format!("{count} equalities, expected 16"));
    }
    Ok("16/16 reflection identities".into())
}

fn criterion_5_relations() -> Verdict {
    let mut count = 0;
    for c in builtin_cases() {
        for o in check_relations(&c.gammas, &c.x_matrix()) {
            if o.label.starts_with('g') {
                if !o.passed {
                    return Err(format!("{} {}: {:?}", c.name, o.label, o.witness));
                }
                count += 1;
            }
        }
    }
    if count != 12 {
        return Err(format!("{count} relations, expected 12"));
    }
    Ok("12/12 relations".into())
}

fn criterion_6_intertwiner() -> Verdict {
    for c in builtin_cases() {
        let out = intertwiner_check(&c).map_err(|e| format!("{}: {e}", c.name))?;
        if out.len() != 5 {
            return Err(format!("{}: {} clauses", c.name, out.len()));
        }
        if let Some(bad) = out.iter().find(|o| !o.passed) {
            return Err(format!("{} {}: {:?}", c.name, bad.label, bad.witness));
        }
    }
    Ok("5 clauses x 4 cases".into())
}

fn criterion_7_coxeter_fuzz() -> Verdict {
    let start = Instant::now();
    let o = fuzz_coxeter(200, 8, 42);
    let elapsed = start.elapsed();
    if !o.passed {
        return Err(o.witness.unwrap_or_default());
    }
    within("coxeter fuzz", elapsed, Duration::from_secs(5))?;
    Ok(format!("200 trials, 0 failures, {elapsed:?}"))
}

fn criterion_8_psi_fuzz() -> Verdict {
    let start = Instant::now();
    for n in [2, 3, 5, 11] {
        let o = fuzz_psi(500, n, 12, 7);
        if !o.passed {
            return Err(o.witness.unwrap_or_default());
        }
    }
    let elapsed = start.elapsed();
    within("psi fuzz", elapsed, Duration::from_secs(5))?;
    Ok(format!("4 levels x 500 pairs, 0 failures, {elapsed:?}"))
}

fn criterion_9_search() -> Verdict {
    let mut slowest = Duration::ZERO;
    for c in builtin_cases() {
        let start = Instant::now();
        let out = ecvc(&["search", "--case", &c.name, "--bound", "25"]);
        let elapsed = start.elapsed();
        slowest = slowest.max(elapsed);
        within(&format!("search {}", c.name), elapsed, Duration::from_secs(10))?;
        if out.status.code() != Some(0) {
            return Err(format!("{}: exit {:?}", c.name, out.status.code()));
        }
        let want = serde_json::to_string(&c.v).unwrap();
        let stdout = String::from_utf8_lossy(&out.stdout);
        if !stdout.lines().any(|l| l == want) {
            return Err(format!("{}: {want} not found", c.name));
        }
    }
    Ok(format!("4/4 tuples recovered, slowest {slowest:?}"))
}

fn criterion_10_infinity() -> Verdict {
    for c in builtin_cases() {
        let m = infinity_monodromy(&vanishing_local_system(&c).map_err(|e| e.to_string())?);
        let cube = is_unipotent(&m, 3).map_err(|e| e.to_string())?;
        let square = is_unipotent(&m, 2).map_err(|e| e.to_string())?;
        if !cube || square {
            return Err(format!("{}: M = {m} has wrong unipotency index", c.name));
        }
        if c.name == "P3" && m != ExactMatrix::from_i64_rows(&[[1, 16, -32], [0, 1, -4], [0, 0, 1]]) {
            return Err(format!("P3: M = {m}"));
        }
    }
    Ok("index exactly 3 in all cases; P3 witness exact".into())
}

fn perturbations(base: &FanoCase) -> Vec<(String, FanoCase)> {
    let mut out = Vec::new();
    for i in 0..4 {
        for j in 0..4 {
            let mut c = base.clone();
            c.x[i][j] += 1;
            out.push((format!("X[{i}][{j}]"), c));
        }
    }
    for (g, label) in PAIR_LABELS.iter().enumerate() {
        for k in 0..4 {
            let mut c = base.clone();
            c.gammas[g][k] += 1;
            out.push((format!("g{label}[{k}]"), c));
        }
    }
    for i in 0..3 {
        for j in 0..3 {
            let mut c = base.clone();
            c.u[i][j] += 1;
            out.push((format!("U[{i}][{j}]"), c));
        }
    }
    for i in 0..4 {
        for j in 0..3 {
            let mut c = base.clone();
            c.v[i][j] += 1;
            out.push((format!("v{}[{j}]", i + 1), c));
        }
    }
    out
}

fn criterion_11_faults() -> Verdict {
    let start = Instant::now();
    let cases = perturbations(&builtin_case("V22").unwrap());
    for (what, c) in &cases {
        let r = verify_case(c);
        if r.overall() {
            return Err(format!("perturbing {what} went undetected"));
        }
        if r.failures().any(|o| o.witness.is_none()) {
            return Err(format!("perturbing {what}: failure without witness"));
        }
    }
    let elapsed = start.elapsed();
    within("fault injection", elapsed, Duration::from_secs(30))?;
    Ok(format!("{} perturbations all detected, {elapsed:?}", cases.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("1 verify --all", criterion_1_verify_all),
        ("2 Gram reproduction", criterion_2_gram),
        ("3 trace identities", criterion_3_traces),
        ("4 reflection identities", criterion_4_reflections),
        ("5 relation identities", criterion_5_relations),
        ("6 intertwiner certificate", criterion_6_intertwiner),
        ("7 Coxeter fuzz", criterion_7_coxeter_fuzz),
        ("8 psi fuzz", criterion_8_psi_fuzz),
        ("9 oracle recovery", criterion_9_search),
        ("10 infinity monodromy", criterion_10_infinity),
        ("11 fault injection", criterion_11_faults),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why}");
            }
        }
    }
    println!("acceptance: {}/{} criteria passed", 11 - failed, 11);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
