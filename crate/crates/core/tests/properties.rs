mod common;

use common::{deep_formula, entailment_gap, fin_difference, for_each_trace, small_formula, subsuming_pairs};
use proptest::prelude::*;
use tabsynth::config::{EngineConfig, Heuristic, Simplify};
use tabsynth::formula::{depth, holds_fin, negate, to_nnf, FiniteTrace, Formula};
use tabsynth::gen::{spec_corpus, GenConfig};
use tabsynth::parser::{parse_formula, render};
use tabsynth::tableau::{decide, Verdict};
use tabsynth::tnf::tnf;

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn tnf_moves_pairwise_clash(seed in any::<u64>(), simplify in any::<bool>()) {
        let (vars, f) = small_formula(seed);
        let mode = if simplify { Simplify::Subsume } else { Simplify::None };
        let t = tnf(&to_nnf(&f), &vars, mode);
        prop_assert!(t.has_clash_property(), "{}", render(&f, &vars));
    }

    #[test]
    fn trace_satisfies_formula_iff_exactly_one_move(seed in any::<u64>()) {
        let (vars, f) = small_formula(seed);
        let t = tnf(&to_nnf(&f), &vars, Simplify::Subsume);
        let moves: Vec<Formula> = t.moves.iter().map(|m| m.to_formula(&vars)).collect();
        let mut bad: Option<FiniteTrace> = None;
        for_each_trace(&vars, depth(&f) as usize + 2, |tr| {
            let n = moves.iter().filter(|m| holds_fin(tr, m)).count();
            if bad.is_none() && (n > 1 || (n == 1) != holds_fin(tr, &f)) {
                bad = Some(tr.clone());
            }
        });
        prop_assert!(bad.is_none(), "{} on {:?}", render(&f, &vars), bad);
    }

    #[test]
    fn recomputed_bunch_matches_engine(seed in any::<u64>(), prune in any::<bool>(), declared in any::<bool>()) {
        let spec = spec_corpus(seed, 1, &GenConfig::default()).remove(0);
        let cfg = EngineConfig {
            prune_siblings: prune,
            heuristic: if declared { Heuristic::Declared } else { Heuristic::Weakest },
            ..EngineConfig::default()
        };
        let tab = decide(&spec, &cfg);
        prop_assume!(tab.verdict != Verdict::Unknown);
        prop_assert_eq!(tab.recompute_verdict(), tab.verdict);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 1000, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn render_then_parse_is_identity(seed in any::<u64>()) {
        let (vars, f) = deep_formula(seed);
        let text = render(&f, &vars);
        let back = parse_formula(&text, &vars);
        prop_assert_eq!(back.as_ref().ok(), Some(&f), "{}", text);
    }

    #[test]
    fn nnf_is_idempotent_and_preserves_depth(seed in any::<u64>()) {
        let (_, f) = deep_formula(seed);
        let n = to_nnf(&f);
        prop_assert!(n.is_nnf());
        prop_assert_eq!(to_nnf(&n), n.clone());
        prop_assert!(depth(&n) <= depth(&f));
        prop_assert!(negate(&n).is_nnf());
    }

    #[test]
    fn nnf_and_negation_agree_with_semantics(seed in any::<u64>()) {
        let (vars, f) = small_formula(seed);
        let n = to_nnf(&f);
        let len = depth(&f) as usize + 2;
        prop_assert!(fin_difference(&vars, &f, &n, len).is_none(), "{}", render(&f, &vars));
        let neg = negate(&n);
        let mut bad = false;
        // Shorter traces leave future obligations vacuously satisfied on both sides.
        for_each_trace(&vars, len, |tr| bad |= tr.0.len() > len - 2 && holds_fin(tr, &neg) == holds_fin(tr, &n));
        prop_assert!(!bad, "negation of {} is not complementary", render(&f, &vars));
    }
}

#[test]
fn subsumption_is_sound_on_500_pairs() {
    let pairs = subsuming_pairs(0x5AB5, 500);
    assert_eq!(pairs.len(), 500);
    for (vars, b, g) in &pairs {
        if let Some(tr) = entailment_gap(vars, b, g) {
            panic!("{} claimed to subsume {} but fails on {tr:?}", render(b, vars), render(g, vars));
        }
    }
}
