mod common;

use common::{brute_force_minimal_coverings, CoverFixture};
use tabsynth::covering::{is_x_covering, minimal_x_coverings};
use tabsynth::tnf::TnfFormula;

fn coverings(fx: &CoverFixture, t: &TnfFormula) -> Vec<Vec<usize>> {
    let mut got = minimal_x_coverings(t, &fx.vars, 64).unwrap();
    for c in &mut got {
        c.sort();
    }
    got.sort();
    assert_eq!(got, brute_force_minimal_coverings(t, &fx.vars), "engine and brute force disagree");
    got
}

#[test]
fn three_moves_over_one_env_var() {
    let fx = CoverFixture::new(&["p_e"], &["c"]);
    let t = TnfFormula {
        moves: vec![fx.mv(&["p_e", "c"], 0), fx.mv(&["!p_e", "c"], 1), fx.mv(&["!c"], 2)],
    };
    assert!(t.has_clash_property());
    assert!(is_x_covering(&t, &fx.vars));
    assert_eq!(coverings(&fx, &t), vec![vec![0, 1], vec![2]]);
}

#[test]
fn two_env_vars_leave_a_gap() {
    let fx = CoverFixture::new(&["p_e", "q_e"], &["c"]);
    let t = TnfFormula {
        moves: vec![fx.mv(&["p_e", "c"], 0), fx.mv(&["!p_e", "q_e", "c"], 1), fx.mv(&["!c"], 2)],
    };
    let first_two = TnfFormula { moves: t.moves[..2].to_vec() };
    assert!(!is_x_covering(&first_two, &fx.vars));
    assert_eq!(coverings(&fx, &t), vec![vec![2]]);
}

#[test]
fn four_coverings_from_four_cells() {
    let fx = CoverFixture::new(&["p_e"], &["c"]);
    let t = TnfFormula {
        moves: vec![
            fx.mv(&["p_e", "c"], 0),
            fx.mv(&["!p_e", "c"], 1),
            fx.mv(&["p_e", "!c"], 2),
            fx.mv(&["!p_e", "!c"], 3),
        ],
    };
    assert_eq!(coverings(&fx, &t).len(), 4);
}

#[test]
fn four_coverings_with_extra_system_literal() {
    let fx = CoverFixture::new(&["p_e"], &["c", "d"]);
    let t = TnfFormula {
        moves: vec![
            fx.mv(&["p_e", "c"], 0),
            fx.mv(&["!p_e", "!c"], 1),
            fx.mv(&["p_e", "!c", "d"], 2),
            fx.mv(&["!p_e", "c", "!d"], 3),
        ],
    };
    assert!(t.has_clash_property());
    assert_eq!(coverings(&fx, &t).len(), 4);
}

#[test]
fn covering_limit_is_a_budget_error() {
    let fx = CoverFixture::new(&["p_e"], &["c"]);
    let t = TnfFormula {
        moves: vec![
            fx.mv(&["p_e", "c"], 0),
            fx.mv(&["!p_e", "c"], 1),
            fx.mv(&["p_e", "!c"], 2),
            fx.mv(&["!p_e", "!c"], 3),
        ],
    };
    assert!(minimal_x_coverings(&t, &fx.vars, 3).is_err());
}
