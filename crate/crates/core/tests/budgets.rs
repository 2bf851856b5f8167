mod common;

use common::{load, GOLDEN};
use tabsynth::config::EngineConfig;
use tabsynth::error::BudgetError;
use tabsynth::parser::parse;
use tabsynth::tableau::{decide, Verdict};

#[test]
fn goldens_fit_in_the_default_node_budget() {
    let cfg = EngineConfig::default();
    assert_eq!(cfg.max_nodes, 100_000);
    for (name, verdict) in GOLDEN {
        let tab = decide(&load(name), &cfg);
        assert_eq!(tab.verdict, *verdict, "{name}");
        assert!(tab.budget.is_none());
        assert!(tab.stats.nodes < cfg.max_nodes, "{name}: {} nodes", tab.stats.nodes);
    }
}

#[test]
fn huge_eventuality_exhausts_nodes() {
    // The deadline counter never repeats, so no branch can close a loop.
    let spec = parse("env e; sys s; safety: F[0,1048576] e;").unwrap();
    let cfg = EngineConfig { max_nodes: 20_000, ..EngineConfig::default() };
    let tab = decide(&spec, &cfg);
    assert_eq!(tab.verdict, Verdict::Unknown);
    assert_eq!(tab.budget, Some(BudgetError::Nodes(20_000)));
    assert_eq!(tab.recompute_verdict(), Verdict::Unknown);
}

#[test]
fn huge_eventuality_on_a_system_variable_is_easy() {
    let spec = parse("env x; sys e; safety: F[0,1048576] e;").unwrap();
    let tab = decide(&spec, &EngineConfig::default());
    assert_eq!(tab.verdict, Verdict::Open);
    assert!(tab.stats.nodes < 20);
}

#[test]
fn wide_environment_exceeds_env_space() {
    let names: Vec<String> = (0..17).map(|i| format!("x{i}")).collect();
    let text = format!("env {}; sys s; safety: s <-> x0;", names.join(", "));
    let tab = decide(&parse(&text).unwrap(), &EngineConfig::default());
    assert_eq!(tab.verdict, Verdict::Unknown);
    assert!(matches!(tab.budget, Some(BudgetError::EnvSpace(65_536))));
}

#[test]
fn covering_limit_gives_unknown() {
    // Two moves with incomparable futures each answer every input.
    let spec = parse("env p; sys c, d; safety: (c & X d) | (!c & X !d);").unwrap();
    let ok = decide(&spec, &EngineConfig::default());
    assert_eq!(ok.verdict, Verdict::Open);
    let tab = decide(&spec, &EngineConfig { max_coverings: 1, ..EngineConfig::default() });
    assert_eq!(tab.verdict, Verdict::Unknown);
    assert!(matches!(tab.budget, Some(BudgetError::Coverings(1))));
}
