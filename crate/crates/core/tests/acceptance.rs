//! One pass/fail line per acceptance criterion. Runs without the libtest
//! harness so the lines print in order; exits nonzero if any fails.

use std::process::{Command, ExitCode};
use std::time::Instant;

use satforge::campaign::{run_campaign, CampaignParams};
use satforge::constructions::{make_t0k, make_t1k, make_tk};
use satforge::formulas::{order_constant, OrderKind};
use satforge::search::{enumerate_graphs, sat_bruteforce};
use satforge::Diameter;

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn campaign(id: &str) -> Outcome {
    let report = run_campaign(id, &CampaignParams::default()).map_err(|e| e.to_string())?;
    let failed: Vec<_> =
        report.cases.iter().filter(|c| c.status != satforge::campaign::Status::Pass).map(|c| c.case.clone()).collect();
    ensure(report.pass, || format!("{id}: failing cases {failed:?}"))
}

fn order_constants() -> Outcome {
    for k in 6..=16 {
        let (tk, t0) = (make_tk(k).map_err(|e| e.to_string())?, make_t0k(k).map_err(|e| e.to_string())?);
        ensure(tk.order() == order_constant(OrderKind::A, k).unwrap(), || format!("|T_{k}|"))?;
        ensure(t0.order() == order_constant(OrderKind::A0, k).unwrap(), || format!("|T0_{k}|"))?;
    }
    for k in 8..=16 {
        let t1 = make_t1k(k).map_err(|e| e.to_string())?;
        ensure(t1.order() == order_constant(OrderKind::A1, k).unwrap(), || format!("|T1_{k}|"))?;
    }
    let anchors = [(OrderKind::A1, 10, 20), (OrderKind::A1, 9, 16), (OrderKind::A0, 10, 22), (OrderKind::A, 10, 46)];
    for (kind, k, want) in anchors {
        ensure(order_constant(kind, k).unwrap() == want, || format!("{kind}({k}) != {want}"))?;
    }
    Ok(())
}

fn diameters() -> Outcome {
    for k in 6..=16 {
        ensure(make_tk(k).unwrap().diameter() == Diameter::Finite(k - 2), || format!("diam T_{k}"))?;
        ensure(make_t0k(k).unwrap().diameter() == Diameter::Finite(k - 3), || format!("diam T0_{k}"))?;
    }
    for k in 8..=16 {
        ensure(make_t1k(k).unwrap().diameter() == Diameter::Finite(k - 2), || format!("diam T1_{k}"))?;
    }
    Ok(())
}

fn bruteforce_values() -> Outcome {
    let value = |n, fam: &str| sat_bruteforce(n, &fam.parse().unwrap()).map(|r| r.value).map_err(|e| e.to_string());
    for n in 4..=7 {
        ensure(value(n, "K3")? == n - 1, || format!("sat({n}, K3)"))?;
    }
    for n in 5..=7 {
        ensure(value(n, "K4")? == 2 * (n - 2) + 1, || format!("sat({n}, K4)"))?;
    }
    ensure(value(4, "P4")? == 2, || "sat(4, P4)".into())
}

fn two_connected_diameter_two() -> Outcome {
    let mut seen = 0;
    for n in 3..=7 {
        for g in enumerate_graphs(n).map_err(|e| e.to_string())?.iter() {
            if g.diameter() == Diameter::Finite(2) && g.is_two_connected() {
                seen += 1;
                ensure(g.edge_count() + 5 >= 2 * n, || {
                    format!("{} has too few edges", satforge::io::graph6_encode(g))
                })?;
            }
        }
    }
    ensure(seen > 0, || "no graphs examined".into())
}

fn thread_independence() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_satforge");
    for id in ["thm-1.4", "lem-3.2", "prop-5.2", "lem-2.3-k10"] {
        let mut outputs = Vec::new();
        for threads in ["1", "4"] {
            let out = Command::new(bin)
                .args(["--threads", threads, "verify", id, "--no-timestamp"])
                .output()
                .map_err(|e| e.to_string())?;
            ensure(out.status.success(), || format!("{id} with {threads} threads exited {}", out.status))?;
            outputs.push(out.stdout);
        }
        ensure(outputs[0] == outputs[1], || format!("{id}: reports differ between thread counts"))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("order constants", order_constants),
        ("diameters", diameters),
        ("layered trees saturated (lem-2.4)", || campaign("lem-2.4")),
        ("G0 edges and saturation (thm-1.1, lem-3.1)", || campaign("thm-1.1").and_then(|_| campaign("lem-3.1"))),
        ("H0 edges and saturation (thm-1.2-upper, lem-3.2)", || {
            campaign("thm-1.2-upper").and_then(|_| campaign("lem-3.2"))
        }),
        ("brute-force cross-checks", bruteforce_values),
        ("join duality (thm-1.4)", || campaign("thm-1.4")),
        ("small-k saturated trees (prop-5.2)", || campaign("prop-5.2")),
        ("order-20 saturated trees (lem-2.3-k10)", || campaign("lem-2.3-k10")),
        ("2-connected diameter-2 graphs have e >= 2n-5", two_connected_diameter_two),
        ("reports independent of thread count", thread_independence),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("criterion {:>2}: PASS  {name} ({secs:.1}s)", i + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {:>2}: FAIL  {name} ({secs:.1}s): {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
