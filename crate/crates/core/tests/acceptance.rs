//! One PASS/FAIL line per acceptance criterion. Runs as a plain binary so
//! the lines are printed whether or not output capture is on.

use std::time::Instant;

use amalgam_core::harness::{verify, Config, Context, Verdict, VerificationReport};

const ALTERNATE_MODULUS: u32 = 0b100_0011;

struct Run {
    ctx: Context,
    report: VerificationReport,
}

fn run(modulus: u32) -> Run {
    let mut ctx = Context::new(Config { modulus, use_cache: false, ..Config::default() }).expect("setup");
    let report = verify(&mut ctx).expect("verification runs");
    Run { ctx, report }
}

fn passes(r: &VerificationReport, ids: &[&str]) -> Result<(), String> {
    let bad: Vec<String> = ids
        .iter()
        .filter_map(|id| match r.claim(id) {
            None => Some(format!("{id} missing")),
            Some(c) if c.verdict != Verdict::Pass => {
                Some(format!("{id}: {}", c.checks.iter().filter(|k| !k.passed).map(|k| k.name.as_str()).collect::<Vec<_>>().join("; ")))
            }
            _ => None,
        })
        .collect();
    if bad.is_empty() {
        Ok(())
    } else {
        Err(bad.join(" | "))
    }
}

fn reported(r: &VerificationReport, id: &str) -> Result<(), String> {
    match r.claim(id) {
        Some(c) if c.verdict == Verdict::Reported && !c.checks.is_empty() => Ok(()),
        _ => Err(format!("{id} not reported")),
    }
}

fn invariant_counts(run: &Run) -> serde_json::Value {
    let rows: Vec<_> = run.ctx.orbit_tables().iter().map(|r| (r.group.name(), r.side, r.s, r.arcs, r.orbits, r.sizes.clone())).collect();
    serde_json::json!({ "graph": run.ctx.graph().summary(), "orbits": rows })
}

fn main() {
    let t = Instant::now();
    let main = run(amalgam_core::DEFAULT_MODULUS);
    let r = &main.report;
    let criteria: Vec<(&str, Result<(), String>)> = vec![
        ("relation tables", passes(r, &["relations.commutators", "relations.sigma", "relations.powers"])),
        ("subgroup orders", passes(r, &["structure.orders"])),
        ("graph scale", passes(r, &["graph.scale", "graph.valencies"])),
        (
            "transitivity",
            passes(r, &["arcs.local-s.H", "arcs.local-s.K", "arcs.six-arcs-valency3.H", "arcs.six-arcs-valency3.K", "arcs.counts"])
                .and(reported(r, "arcs.six-arcs-valency4.H"))
                .and(reported(r, "arcs.six-arcs-valency4.K")),
        ),
        ("arc stabilizers", passes(r, &["arcs.five-arc-stabilizer.H", "arcs.five-arc-stabilizer.K", "arcs.named-5-arc"])),
        ("kernels", passes(r, &["kernels.H", "kernels.K"])),
        ("local structure", passes(r, &["local.characteristic.H", "local.characteristic.K", "local.pushing-up.H", "local.pushing-up.K"])),
        (
            "amalgam shapes",
            passes(
                r,
                &["amalgam.invariants.H", "amalgam.invariants.K", "amalgam.agl23s.H", "amalgam.agl23s.K", "amalgam.d2.H", "amalgam.e2.K"],
            ),
        ),
        ("non-splitness", passes(r, &["split.non-split"])),
        ("modulus invariance", {
            let alt = run(ALTERNATE_MODULUS);
            if alt.report.verdicts() != r.verdicts() {
                Err("claim verdicts differ".into())
            } else if invariant_counts(&alt) != invariant_counts(&main) {
                Err("invariant counts differ".into())
            } else {
                Ok(())
            }
        }),
        (
            "automorphisms and faithfulness",
            passes(r, &["graph.automorphisms", "graph.faithful", "graph.edge-transitive.H", "graph.edge-transitive.K"])
                .and(reported(r, "graph.full-automorphism-group")),
        ),
    ];
    let mut failed = 0;
    for (i, (name, res)) in criteria.iter().enumerate() {
        match res {
            Ok(()) => println!("criterion {:2} {:<32} PASS", i + 1, name),
            Err(why) => {
                failed += 1;
                println!("criterion {:2} {:<32} FAIL  {why}", i + 1, name);
            }
        }
    }
    println!("{} of {} criteria pass ({:.1} s)", criteria.len() - failed, criteria.len(), t.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}
