mod common;

use common::{load, GOLDEN};
use tabsynth::config::EngineConfig;
use tabsynth::game_oracle::solve;
use tabsynth::parser::parse;
use tabsynth::synthesis::{default_horizon, extract, machine_from_json, machine_to_dot, machine_to_json, verify};
use tabsynth::tableau::{decide, Verdict};

#[test]
fn every_open_golden_yields_a_verified_machine() {
    for cfg in [EngineConfig::default(), EngineConfig { prune_siblings: true, ..EngineConfig::default() }] {
        for (name, verdict) in GOLDEN {
            if *verdict != Verdict::Open {
                continue;
            }
            let spec = load(name);
            let m = extract(&decide(&spec, &cfg)).unwrap();
            assert!(m.is_input_total(), "{name}");
            let r = verify(&m, &spec, default_horizon(&spec));
            assert!(r.ok(), "{name}: counterexample {:?}", r.counterexample);
        }
    }
}

#[test]
fn fig5_machine_is_small_and_meets_the_tight_bound() {
    let spec = load("fig5.sltl");
    let m = extract(&decide(&spec, &EngineConfig::default())).unwrap();
    assert!(m.is_input_total());
    assert_eq!(m.reachable().len(), 2);

    let text = std::fs::read_to_string(common::spec_path("fig5.sltl")).unwrap();
    let tight = parse(&text.replace("F[0,100]", "F[0,2]")).unwrap();
    let r = verify(&m, &tight, default_horizon(&tight));
    assert!(r.ok(), "{:?}", r.counterexample);
    assert!(r.closed);
}

#[test]
fn oracle_machines_verify_too() {
    for (name, verdict) in GOLDEN {
        let spec = load(name);
        let res = solve(&spec, 1 << 22, true).unwrap();
        assert_eq!(res.realizable, *verdict == Verdict::Open, "{name}");
        if let Some(m) = res.to_mealy(&spec) {
            let r = verify(&m, &spec, default_horizon(&spec));
            assert!(r.ok(), "{name}: {:?}", r.counterexample);
        }
    }
}

#[test]
fn idle_arbiter_is_rejected_with_a_counterexample() {
    let spec = load("arbiter.sltl");
    let mut transitions = Vec::new();
    for r1 in [false, true] {
        for r2 in [false, true] {
            transitions.push(serde_json::json!({
                "from": "idle", "to": "idle",
                "env": {"r1": r1, "r2": r2},
                "sys": {"g1": false, "g2": false},
            }));
        }
    }
    let json = serde_json::json!({"states": ["idle"], "initial": "idle", "transitions": transitions});
    let m = machine_from_json(&json.to_string(), &spec.vars).unwrap();
    let r = verify(&m, &spec, default_horizon(&spec));
    let cex = r.counterexample.expect("an idle arbiter starves requests");
    // A request needs four idle steps before the bound is missed.
    assert_eq!(cex.len(), 4);
}

#[test]
fn partial_machine_fails_on_missing_input() {
    let spec = load("mimic.sltl");
    let json = r#"{"states":["a"],"initial":"a","transitions":[
        {"from":"a","env":{"e":true},"sys":{"s":true},"to":"a"}]}"#;
    let m = machine_from_json(json, &spec.vars).unwrap();
    assert!(!m.is_input_total());
    assert!(!verify(&m, &spec, 4).ok());
}

#[test]
fn json_round_trip_preserves_the_machine() {
    for name in ["fig3.sltl", "arbiter.sltl", "modes.sltl"] {
        let spec = load(name);
        let tab = decide(&spec, &EngineConfig::default());
        if tab.verdict != Verdict::Open {
            continue;
        }
        let m = extract(&tab).unwrap();
        let text = serde_json::to_string_pretty(&machine_to_json(&m)).unwrap();
        let back = machine_from_json(&text, &spec.vars).unwrap();
        assert_eq!(back.table, m.table, "{name}");
        assert_eq!(back.names, m.names);
        assert_eq!(back.initial, m.initial);
    }
}

#[test]
fn malformed_strategies_are_rejected() {
    let spec = load("mimic.sltl");
    let cases = [
        "not json",
        r#"{"states":["a","a"],"initial":"a","transitions":[]}"#,
        r#"{"states":["a"],"initial":"b","transitions":[]}"#,
        r#"{"states":["a"],"initial":"a","transitions":[{"from":"a","env":{"q":true},"sys":{"s":true},"to":"a"}]}"#,
        r#"{"states":["a"],"initial":"a","transitions":[{"from":"a","env":{},"sys":{"s":true},"to":"a"}]}"#,
        r#"{"states":["a"],"initial":"a","transitions":[
            {"from":"a","env":{"e":true},"sys":{"s":true},"to":"a"},
            {"from":"a","env":{"e":true},"sys":{"s":false},"to":"a"}]}"#,
    ];
    for c in cases {
        assert!(machine_from_json(c, &spec.vars).is_err(), "accepted {c}");
    }
}

#[test]
fn machine_dot_lists_every_transition() {
    let spec = load("mimic.sltl");
    let m = extract(&decide(&spec, &EngineConfig::default())).unwrap();
    let dot = machine_to_dot(&m);
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches("->").count() - dot.matches("init ->").count(), 2, "{dot}");
    assert!(dot.contains("!e/!s") && dot.contains("e/s"), "{dot}");
}
