//! One line per acceptance criterion, then a single assertion over all.

mod common;

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use serde_json::Value;

use common::suites::{betti_hilbert_suite, euler_suite, membership_suite};
use common::{p1_h0, p1_h1};
use powreg::asymptotics::{sheaf_regularity_of_power, verify_bounds, Hypothesis};
use powreg::cohomology::{default_window, normality_index, sheaf_regularity_of_structure_sheaf, vanishing_check, PhiAnalysis};
use powreg::corpus::{lookup, CORPUS};
use powreg::field::Rationals;
use powreg::resolve::partial_regularity;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn lib<T>(r: powreg::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

/// `reg (I^t)^sat = slope * t` for `t = 1..=max_t`, each within `per_t`.
fn power_line(name: &str, slope: i64, max_t: u32, per_t: Duration, total: Option<Duration>) -> Outcome {
    let ideal = lib(lookup(name).and_then(|e| e.ideal(Rationals)))?;
    let start = Instant::now();
    let mut got = Vec::new();
    for t in 1..=max_t {
        let t0 = Instant::now();
        let r = lib(sheaf_regularity_of_power(&ideal, t))?;
        let dt = t0.elapsed();
        ensure!(r == slope * t as i64, "t = {t}: reg {r}, expected {}", slope * t as i64);
        ensure!(dt <= per_t, "t = {t} took {dt:?}");
        got.push(r);
    }
    let elapsed = start.elapsed();
    if let Some(limit) = total {
        ensure!(elapsed <= limit, "took {elapsed:?} in total");
    }
    Ok(format!("reg = {got:?} in {:.2?}", elapsed))
}

fn criterion_1() -> Outcome {
    power_line("twisted-cubic", 2, 4, Duration::from_secs(60), None)
}

fn criterion_2() -> Outcome {
    power_line("cubic-surface", 3, 6, Duration::from_secs(1), Some(Duration::from_secs(1)))
}

fn criterion_3() -> Outcome {
    power_line("veronese", 2, 2, Duration::from_secs(600), None)
}

/// Vanishing of `h^1(T^a N*(k))` on the twisted cubic against
/// `T^a N* = O_P1(-5a)^(2^a)` with `O_X(1) = O_P1(3)`.
fn criterion_4() -> Outcome {
    let ideal = lib(lookup("twisted-cubic").and_then(|e| e.ideal(Rationals)))?;
    let window = default_window(lib(ideal.regularity())?);
    let mut gaps = Vec::new();
    for a in 1..=3u32 {
        let rep = lib(vanishing_check(&ideal, a, None, window))?;
        ensure!(rep.n == 1 && rep.r_p == 2 && rep.r_x == 1, "a = {a}: n {}, r_p {}, r_X {}", rep.n, rep.r_p, rep.r_x);
        ensure!(rep.rows.len() == 1, "a = {a}: expected one cohomological index");
        let row = &rep.rows[0];
        ensure!(row.index == 1 && row.threshold == 2 * a as i64, "a = {a}: threshold {}", row.threshold);
        ensure!(rep.pass, "a = {a}: check failed");
        let rank = 1u64 << a;
        for &(k, h) in &row.values {
            let want = rank * p1_h1(3 * k - 5 * a as i64);
            ensure!(h == want, "a = {a}, k = {k}: h^1 = {h}, split bundle gives {want}");
        }
        // least k with 3k - 5a >= -1
        let first = (5 * a as i64 - 1 + 2).div_euclid(3);
        ensure!(row.observed == Some(first), "a = {a}: observed {:?}, oracle {first}", row.observed);
        gaps.push(row.gap.unwrap());
    }
    ensure!(gaps == [0, 1, 1], "gaps {gaps:?}");
    Ok(format!("thresholds 2, 4, 6 hold; gaps {gaps:?}"))
}

fn criterion_5() -> Outcome {
    let ideal = lib(lookup("twisted-cubic").and_then(|e| e.ideal(Rationals)))?;
    let window = default_window(lib(ideal.regularity())?);
    let r_x = lib(sheaf_regularity_of_structure_sheaf(&ideal))?;
    let r_1 = lib(partial_regularity(&lib(ideal.betti_table())?, 1))?;
    let normal = lib(normality_index(&ideal, window))?;
    ensure!(r_x == 1 && r_1 == 2, "r_X {r_x}, r_1 {r_1}");
    ensure!(normal.vanishes_on_window, "h^1(I(k)) should vanish on the window");
    let base = normal.n0.max(r_x);
    let mut from = Vec::new();
    for a in 1..=3u32 {
        let phi = lib(PhiAnalysis::new(&ideal, a))?;
        let predicted = a as i64 * r_1 + base;
        for k in window.0..=window.1 {
            let r = lib(phi.at(k))?;
            let want = (a as u64 + 1) * p1_h0(3 * k - 5 * a as i64);
            ensure!(r.target_dim == want, "a = {a}, k = {k}: target {}, split bundle gives {want}", r.target_dim);
            ensure!(r.rank <= r.target_dim, "a = {a}, k = {k}: rank {} above target {}", r.rank, r.target_dim);
            ensure!(r.lci_consistent, "a = {a}, k = {k}: I^a/I^(a+1) disagrees with S^a N*");
            if k >= predicted {
                ensure!(r.surjective, "a = {a}, k = {k}: rank {} < {}", r.rank, r.target_dim);
            }
        }
        from.push(predicted);
    }
    Ok(format!("surjective for k >= {from:?} on [{}, {}]", window.0, window.1))
}

fn criterion_6() -> Outcome {
    let mut notes = Vec::new();
    let cases: [(&str, Option<Hypothesis>, u32, bool); 3] = [
        ("twisted-cubic", Some(Hypothesis::Lci { n: 1, r: 2 }), 4, true),
        ("veronese", Some(Hypothesis::Lci { n: 2, r: 2 }), 2, true),
        ("two-quadrics", None, 4, false),
    ];
    for (name, hyp, max_t, sharp) in cases {
        let ideal = lib(lookup(name).and_then(|e| e.ideal(Rationals)))?;
        let hyp = match hyp {
            Some(h) => h,
            None => Hypothesis::Lci {
                n: 1,
                r: lib(lib(ideal.saturate())?.regularity())?,
            },
        };
        let rep = lib(verify_bounds(&ideal, hyp, max_t))?;
        ensure!(rep.pass, "{name}: {:?}", rep.rows);
        ensure!(rep.rows.iter().all(|r| r.pass == Some(true)), "{name}: a row was not computed");
        if sharp {
            ensure!(rep.rows.iter().all(|r| r.sharp == Some(true)), "{name}: expected equality, got {:?}", rep.rows);
        }
        let regs: Vec<String> = rep.rows.iter().map(|r| format!("{}<={}", r.reg.unwrap(), r.bound)).collect();
        notes.push(format!("{name} {}", regs.join(" ")));
    }
    Ok(notes.join("; "))
}

fn criterion_7() -> Outcome {
    let mut queries = 0;
    for seed in 0..6u64 {
        queries += membership_suite(seed)?;
    }
    let mut degrees = 0;
    let mut twists = 0;
    for entry in CORPUS {
        degrees += betti_hilbert_suite(entry)?;
        twists += euler_suite(entry)?;
    }
    Ok(format!(
        "{queries} membership queries on 6 seeded ideals; Betti-Hilbert at {degrees} degrees; Euler at {twists} (module, twist) pairs"
    ))
}

fn run_cli(args: &[&str]) -> Result<(i32, String), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_powreg")).args(args).output().map_err(|e| e.to_string())?;
    let stdout = String::from_utf8(out.stdout).map_err(|e| e.to_string())?;
    Ok((out.status.code().unwrap_or(-1), stdout))
}

fn criterion_8() -> Outcome {
    let mut seen = Vec::new();
    for entry in CORPUS.iter().filter(|e| e.quadric_generated) {
        let max_t = match entry.nvars {
            0..=4 => "4",
            5 => "3",
            _ => "2",
        };
        let (code, out) = run_cli(&["powers", "--corpus", entry.name, "--max-power", max_t, "--format", "json"])?;
        ensure!(code == 0, "{}: exit {code}", entry.name);
        let v: Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
        let sum = &v["params"]["summary"];
        ensure!(sum["d"] == 2, "{}: d = {}", entry.name, sum["d"]);
        ensure!(sum["s"]["upper"] == "2", "{}: s_upper = {}", entry.name, sum["s"]["upper"]);
        ensure!(sum["all_e_t_nonnegative"] == true, "{}: negative e_t", entry.name);
        ensure!(sum["e"]["state"] == "stabilized", "{}: e not stabilized", entry.name);
        if let Some((_, e)) = entry.expected {
            ensure!(sum["e"]["e"] == e, "{}: e = {}, expected {e}", entry.name, sum["e"]["e"]);
        }
        seen.push(format!("{} e={}", entry.name, sum["e"]["e"]));
    }
    ensure!(seen.iter().any(|s| s == "twisted-cubic e=0"), "twisted cubic missing: {seen:?}");
    Ok(seen.join(", "))
}

fn cli_suite() -> Vec<Vec<&'static str>> {
    let mut suite = Vec::new();
    for entry in CORPUS {
        suite.push(vec!["betti", "--corpus", entry.name]);
        suite.push(vec!["reg", "--corpus", entry.name]);
        suite.push(vec!["powers", "--corpus", entry.name, "--max-power", if entry.nvars > 5 { "2" } else { "3" }]);
        suite.push(vec!["cohomology", "--corpus", entry.name, "--module", "O"]);
        suite.push(vec!["rees", "--corpus", entry.name]);
    }
    suite.extend([
        vec!["cohomology", "--corpus", "twisted-cubic", "--module", "T^2 N*"],
        vec!["cohomology", "--corpus", "twisted-cubic", "--module", "E^2 N*", "--char", "32003"],
        vec!["vanishing", "--corpus", "twisted-cubic", "--a", "3"],
        vec!["vanishing", "--corpus", "cubic-surface", "--a", "1"],
        vec!["phi", "--corpus", "twisted-cubic", "--a", "2"],
        vec!["verify-bounds", "--corpus", "veronese", "--lci", "--dim", "2", "--reg", "2", "--max-power", "2"],
        vec!["verify-bounds", "--corpus", "two-quadrics", "--lci", "--dim", "1", "--max-power", "3"],
        vec!["verify-bounds", "--corpus", "rational-normal-quartic", "--adjoint", "--dim", "1", "--max-power", "2"],
    ]);
    for s in &mut suite {
        s.extend(["--format", "json"]);
    }
    suite
}

fn criterion_9() -> Outcome {
    let suite = cli_suite();
    let mut runs = Vec::new();
    for _ in 0..2 {
        let mut all = Vec::new();
        for args in &suite {
            let (code, out) = run_cli(args)?;
            ensure!(code != 2 && code != 3, "{args:?}: exit {code}");
            serde_json::from_str::<Value>(&out).map_err(|e| format!("{args:?}: {e}"))?;
            all.push(out);
        }
        runs.push(all);
    }
    for (i, (a, b)) in runs[0].iter().zip(&runs[1]).enumerate() {
        ensure!(a == b, "{:?} differs between runs", suite[i]);
    }
    let bytes: usize = runs[0].iter().map(|s| s.len()).sum();
    Ok(format!("{} commands, {bytes} bytes, identical", suite.len()))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 9] = [
        ("twisted cubic reg I^t = 2t, t <= 4", criterion_1),
        ("cubic surface reg I^t = 3t, t <= 6", criterion_2),
        ("Veronese surface reg I^t = 2t, t <= 2", criterion_3),
        ("vanishing for T^a N* on the twisted cubic, a <= 3", criterion_4),
        ("phi_a surjectivity on the twisted cubic, a <= 3", criterion_5),
        ("regularity bounds", criterion_6),
        ("property suites", criterion_7),
        ("asymptotic reports for quadric-generated ideals", criterion_8),
        ("deterministic JSON", criterion_9),
    ];
    let mut failed = Vec::new();
    let mut out = std::io::stdout().lock();
    for (i, (title, f)) in criteria.iter().enumerate() {
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let (tag, detail) = match &result {
            Ok(d) => ("PASS", d.clone()),
            Err(e) => ("FAIL", e.clone()),
        };
        writeln!(out, "criterion {}: {tag} {title}: {detail}", i + 1).unwrap();
        if result.is_err() {
            failed.push(i + 1);
        }
    }
    drop(out);
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
