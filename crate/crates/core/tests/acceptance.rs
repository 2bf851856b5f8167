//! Prints one PASS/FAIL line per acceptance criterion and exits non-zero
//! if any criterion fails.

mod common;

use common::*;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;
use tabsynth::config::{EngineConfig, Simplify};
use tabsynth::covering::minimal_x_coverings;
use tabsynth::formula::{depth, holds_fin, to_nnf};
use tabsynth::game_oracle::solve;
use tabsynth::gen::{spec_corpus, GenConfig};
use tabsynth::parser::{parse, parse_formula, render};
use tabsynth::synthesis::{default_horizon, extract, verify};
use tabsynth::tableau::{decide, Verdict};
use tabsynth::tnf::{tnf, TnfFormula};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn golden_verdicts() -> Check {
    let start = Instant::now();
    for (name, expected) in GOLDEN {
        let got = decide(&load(name), &EngineConfig::default()).verdict;
        ensure(got == *expected, || format!("{name}: {got}, expected {expected}"))?;
    }
    let t = start.elapsed();
    ensure(t.as_secs_f64() < 5.0, || format!("took {t:?}"))?;
    Ok(format!("{} specs in {t:.2?}", GOLDEN.len()))
}

fn tnf_goldens() -> Check {
    for (decls, input, expected, moves) in TNF_CASES {
        let spec = parse(decls).unwrap();
        let vars = &spec.vars;
        let f = parse_formula(input, vars).unwrap();
        let golden = parse_formula(expected, vars).unwrap();
        let t = tnf(&to_nnf(&f), vars, Simplify::Subsume);
        let got = t.to_formula(vars);
        let len = depth(&f) as usize + 2;
        ensure(t.has_clash_property(), || format!("{input}: clash property"))?;
        ensure(t.moves.len() == *moves, || format!("{input}: {} moves", t.moves.len()))?;
        ensure(fin_difference(vars, &f, &got, len).is_none(), || format!("{input}: not equivalent to input"))?;
        ensure(fin_difference(vars, &golden, &got, len).is_none(), || {
            format!("{input}: {} differs from golden", render(&got, vars))
        })?;
    }
    Ok(format!("{} formulas", TNF_CASES.len()))
}

fn covering_counts() -> Check {
    let check = |fx: &CoverFixture, t: &TnfFormula, want: usize| -> Result<Vec<Vec<usize>>, String> {
        let mut got = minimal_x_coverings(t, &fx.vars, 64).map_err(|e| e.to_string())?;
        got.iter_mut().for_each(|c| c.sort());
        got.sort();
        ensure(got == brute_force_minimal_coverings(t, &fx.vars), || "brute force disagrees".into())?;
        ensure(got.len() == want, || format!("{} coverings, expected {want}", got.len()))?;
        Ok(got)
    };
    let fx = CoverFixture::new(&["p_e"], &["c"]);
    check(&fx, &fx.tnf(&[(&["p_e", "c"], 0), (&["!p_e", "c"], 1), (&["!c"], 2)]), 2)?;

    let fx2 = CoverFixture::new(&["p_e", "q_e"], &["c"]);
    let five = check(&fx2, &fx2.tnf(&[(&["p_e", "c"], 0), (&["!p_e", "q_e", "c"], 1), (&["!c"], 2)]), 1)?;
    ensure(five == vec![vec![2]], || format!("{five:?} lacks the third move"))?;

    let six_a = fx.tnf(&[(&["p_e", "c"], 0), (&["!p_e", "c"], 1), (&["p_e", "!c"], 2), (&["!p_e", "!c"], 3)]);
    check(&fx, &six_a, 4)?;
    let fx3 = CoverFixture::new(&["p_e"], &["c", "d"]);
    let six_b = fx3.tnf(&[
        (&["p_e", "c"], 0),
        (&["!p_e", "!c"], 1),
        (&["p_e", "!c", "d"], 2),
        (&["!p_e", "c", "!d"], 3),
    ]);
    check(&fx3, &six_b, 4)?;
    Ok("2 / 1 / 4 / 4".into())
}

fn oracle_agreement() -> Check {
    let cfg = EngineConfig::default();
    let start = Instant::now();
    let corpus = spec_corpus(ORACLE_SEED, 200, &GenConfig::default());
    let mut agree = 0;
    for spec in &corpus {
        let tab = decide(spec, &cfg).verdict;
        let game = solve(spec, cfg.oracle_budget, false).map_err(|e| e.to_string())?;
        agree += usize::from((tab == Verdict::Open && game.realizable) || (tab == Verdict::Closed && !game.realizable));
    }
    let t = start.elapsed();
    ensure(agree == 200, || format!("agreement {agree}/200"))?;
    ensure(t.as_secs() < 60, || format!("took {t:?}"))?;
    Ok(format!("{agree}/200 in {t:.2?}"))
}

fn strategies() -> Check {
    let mut checked = 0;
    for (name, verdict) in GOLDEN {
        if *verdict != Verdict::Open {
            continue;
        }
        let spec = load(name);
        let m = extract(&decide(&spec, &EngineConfig::default())).map_err(|e| e.to_string())?;
        let r = verify(&m, &spec, default_horizon(&spec));
        ensure(r.ok(), || format!("{name}: counterexample {:?}", r.counterexample))?;
        checked += 1;
    }
    let spec = load("fig5.sltl");
    let m = extract(&decide(&spec, &EngineConfig::default())).map_err(|e| e.to_string())?;
    ensure(m.is_input_total(), || "fig5 machine is not input-total".into())?;
    let states = m.reachable().len();
    ensure(states == 2, || format!("fig5 machine has {states} reachable states"))?;
    let text = std::fs::read_to_string(spec_path("fig5.sltl")).unwrap();
    let tight = parse(&text.replace("F[0,100]", "F[0,2]")).unwrap();
    ensure(verify(&m, &tight, default_horizon(&tight)).ok(), || "fig5 machine misses F[0,2]".into())?;
    Ok(format!("{checked} machines verified, fig5 has 2 states"))
}

fn properties() -> Check {
    for seed in 0..300u64 {
        let (vars, f) = small_formula(seed);
        let t = tnf(&to_nnf(&f), &vars, Simplify::Subsume);
        ensure(t.has_clash_property(), || format!("clash: {}", render(&f, &vars)))?;
        let moves: Vec<_> = t.moves.iter().map(|m| m.to_formula(&vars)).collect();
        let mut ok = true;
        for_each_trace(&vars, depth(&f) as usize + 2, |tr| {
            let n = moves.iter().filter(|m| holds_fin(tr, m)).count();
            ok &= n <= 1 && (n == 1) == holds_fin(tr, &f);
        });
        ensure(ok, || format!("exactly-one-move: {}", render(&f, &vars)))?;
    }
    let pairs = subsuming_pairs(0x5AB5, 500);
    ensure(pairs.len() == 500, || format!("only {} subsuming pairs", pairs.len()))?;
    for (vars, b, g) in &pairs {
        ensure(entailment_gap(vars, b, g).is_none(), || {
            format!("{} does not entail {}", render(b, vars), render(g, vars))
        })?;
    }
    for spec in spec_corpus(7, 200, &GenConfig::default()) {
        let tab = decide(&spec, &EngineConfig::default());
        ensure(tab.recompute_verdict() == tab.verdict, || "bunch recomputation differs".into())?;
    }
    for seed in 0..1000u64 {
        let (vars, f) = deep_formula(seed);
        let text = render(&f, &vars);
        ensure(parse_formula(&text, &vars).ok() == Some(f.clone()), || format!("render round trip: {text}"))?;
        let n = to_nnf(&f);
        ensure(n.is_nnf() && to_nnf(&n) == n, || format!("nnf: {text}"))?;
    }
    Ok("clash, one-move, 500 subsumptions, bunches, 1000 round trips".into())
}

fn budgets() -> Check {
    let cfg = EngineConfig::default();
    let mut largest = 0;
    for (name, _) in GOLDEN {
        let tab = decide(&load(name), &cfg);
        ensure(tab.budget.is_none(), || format!("{name} hit a budget"))?;
        largest = largest.max(tab.stats.nodes);
    }
    let adversarial = parse("env e; sys s; safety: F[0,1048576] e;").unwrap();
    let v = decide(&adversarial, &cfg).verdict;
    ensure(v == Verdict::Unknown, || format!("adversarial spec gave {v}"))?;
    Ok(format!("largest golden {largest} nodes, adversarial UNKNOWN"))
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("golden verdicts", golden_verdicts),
        ("tnf goldens", tnf_goldens),
        ("covering counts", covering_counts),
        ("random oracle agreement", oracle_agreement),
        ("strategy extraction", strategies),
        ("property suites", properties),
        ("budgets", budgets),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
