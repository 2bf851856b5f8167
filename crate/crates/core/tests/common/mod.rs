//! Helpers shared by the integration tests. Each oracle here is written
//! from the definitions, without calling the code it checks.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::path::PathBuf;
use tabsynth::formula::{holds_fin, to_nnf, FiniteTrace, Formula, Literal, Owner, ValSpace, Valuation, VarId, VarTable};
use tabsynth::gen::{bool_table, random_formula, GenConfig};
use tabsynth::parser::{parse, SpecFile};
use tabsynth::tableau::Verdict;
use tabsynth::tnf::{Cube, SeparatedMove, StrictFuture, TnfFormula};

pub fn spec_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../specs").join(name)
}

pub fn load(name: &str) -> SpecFile {
    parse(&std::fs::read_to_string(spec_path(name)).unwrap()).unwrap()
}

pub const GOLDEN: &[(&str, Verdict)] = &[
    ("mimic.sltl", Verdict::Open),
    ("clairvoyant.sltl", Verdict::Closed),
    ("fig1.sltl", Verdict::Open),
    ("fig2.sltl", Verdict::Open),
    ("fig3.sltl", Verdict::Open),
    ("fig5.sltl", Verdict::Open),
    ("fig8.sltl", Verdict::Closed),
    ("arbiter.sltl", Verdict::Open),
];

/// Calls `visit` on every trace of length `1..=max_len` over the full
/// valuation space of `vars`.
pub fn for_each_trace(vars: &VarTable, max_len: usize, mut visit: impl FnMut(&FiniteTrace)) {
    let space = ValSpace::full(vars);
    let vals: Vec<Valuation> = space.iter().collect();
    let mut trace = FiniteTrace(Vec::with_capacity(max_len));
    fn rec(vals: &[Valuation], trace: &mut FiniteTrace, max_len: usize, visit: &mut dyn FnMut(&FiniteTrace)) {
        for v in vals {
            trace.0.push(v.clone());
            visit(trace);
            if trace.0.len() < max_len {
                rec(vals, trace, max_len, visit);
            }
            trace.0.pop();
        }
    }
    rec(&vals, &mut trace, max_len, &mut visit);
}

/// First trace (up to `max_len`) on which `f` and `g` disagree.
pub fn fin_difference(vars: &VarTable, f: &Formula, g: &Formula, max_len: usize) -> Option<FiniteTrace> {
    let mut found = None;
    for_each_trace(vars, max_len, |t| {
        if found.is_none() && holds_fin(t, f) != holds_fin(t, g) {
            found = Some(t.clone());
        }
    });
    found
}

/// Whether each env valuation satisfies the env literals of some move.
fn covers(t: &TnfFormula, vars: &VarTable, chosen: &[usize]) -> bool {
    let env = ValSpace::env(vars);
    let all = env.iter().all(|x| {
        chosen.iter().any(|&i| {
            t.moves[i]
                .literals(vars)
                .iter()
                .filter(|l| env.vars().contains(&l.var()))
                .all(|l: &Literal| x.satisfies(l))
        })
    });
    all
}

/// Minimal coverings by exhaustive subset enumeration.
pub fn brute_force_minimal_coverings(t: &TnfFormula, vars: &VarTable) -> Vec<Vec<usize>> {
    let n = t.moves.len();
    assert!(n <= 16);
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let set: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        if !covers(t, vars, &set) {
            continue;
        }
        let minimal = set.iter().all(|&drop| {
            let rest: Vec<usize> = set.iter().copied().filter(|&i| i != drop).collect();
            !covers(t, vars, &rest)
        });
        if minimal {
            out.push(set);
        }
    }
    out.sort();
    out
}

/// (declarations, input, expected normal form, expected move count)
pub const TNF_CASES: &[(&str, &str, &str, usize)] = &[
    (
        "env p_e; sys s; safety: true;",
        "p_e <-> X s",
        "(p_e & X s) | (!p_e & X !s)",
        2,
    ),
    (
        "env p_e; sys s; safety: true;",
        "X p_e <-> X s",
        "(X p_e & X s) || (X !p_e & X !s)",
        1,
    ),
    (
        "env p_e; sys c; safety: true;",
        "c & (!p_e -> G[0,9] c) & (G[0,9] c | F[0,2] !c)",
        "(p_e & c & (X F[0,1] !c || X G[0,8] c)) | (!p_e & c & X G[0,8] c)",
        2,
    ),
];

/// Variables plus hand-written moves for covering checks. Fresh system
/// variables `eta1..eta4` stand in for distinct strict futures.
pub struct CoverFixture {
    pub vars: VarTable,
    ids: Vec<(String, VarId)>,
    futures: Vec<VarId>,
}

impl CoverFixture {
    pub fn new(env: &[&str], sys: &[&str]) -> CoverFixture {
        let mut vars = VarTable::new();
        let mut ids = Vec::new();
        for n in env {
            ids.push((n.to_string(), vars.bool_var(n, Owner::Env)));
        }
        for n in sys {
            ids.push((n.to_string(), vars.bool_var(n, Owner::Sys)));
        }
        let futures = (1..=4).map(|i| vars.bool_var(&format!("eta{i}"), Owner::Sys)).collect();
        CoverFixture { vars, ids, futures }
    }

    fn id(&self, name: &str) -> VarId {
        self.ids.iter().find(|(n, _)| n == name).unwrap().1
    }

    /// A move from literals like `p_e` or `!c` with future `X eta{k+1}`.
    pub fn mv(&self, lits: &[&str], k: usize) -> SeparatedMove {
        let lits: Vec<Literal> = lits
            .iter()
            .map(|l| match l.strip_prefix('!') {
                Some(n) => Literal::Neg(self.id(n)),
                None => Literal::Pos(self.id(l)),
            })
            .collect();
        SeparatedMove {
            cube: Cube::from_literals(&lits, &self.vars).unwrap(),
            future: StrictFuture {
                disjuncts: vec![vec![Formula::next(1, Formula::pos(self.futures[k]))]],
            },
        }
    }

    pub fn tnf(&self, moves: &[(&[&str], usize)]) -> TnfFormula {
        TnfFormula {
            moves: moves.iter().map(|(l, k)| self.mv(l, *k)).collect(),
        }
    }
}

/// Formulas for exhaustive checks: one env variable, at most two system
/// variables and temporal depth at most two.
pub fn small_formula(seed: u64) -> (VarTable, Formula) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xA5A5);
    let vars = bool_table(1, rng.gen_range(1..=2));
    let size = rng.gen_range(3..=10);
    let f = random_formula(&mut rng, &vars, size, 8, 2, &small_cfg());
    (vars, f)
}

pub fn small_cfg() -> GenConfig {
    GenConfig { max_bound: 3, max_depth: 3, ..GenConfig::default() }
}

/// Larger formulas for syntactic round trips: up to 24 nodes nested up to
/// 12 deep with bounds up to 12.
pub fn deep_formula(seed: u64) -> (VarTable, Formula) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vars = bool_table(rng.gen_range(1..=2), rng.gen_range(1..=2));
    let cfg = GenConfig { max_bound: 12, max_depth: 12, ..GenConfig::default() };
    let f = random_formula(&mut rng, &vars, 24, 12, 12, &cfg);
    (vars, f)
}

/// A formula at least as weak as `f` (in NNF), produced by one local edit.
pub fn weaken<R: Rng>(rng: &mut R, f: &Formula, vars: &VarTable) -> Formula {
    match f {
        Formula::And(cs) if rng.gen_bool(0.5) => {
            let drop = rng.gen_range(0..cs.len());
            Formula::and(cs.iter().enumerate().filter(|(i, _)| *i != drop).map(|(_, c)| c.clone()))
        }
        Formula::And(cs) | Formula::Or(cs) | Formula::DOr(cs) => {
            let pick = rng.gen_range(0..cs.len());
            let items = cs.iter().enumerate().map(|(i, c)| if i == pick { weaken(rng, c, vars) } else { c.clone() });
            match f {
                Formula::And(_) => Formula::and(items),
                _ => Formula::or(items),
            }
        }
        Formula::Always(lo, hi, g) => match rng.gen_range(0..3) {
            0 => {
                let l = rng.gen_range(*lo..=*hi);
                Formula::always(l, rng.gen_range(l..=*hi), (**g).clone())
            }
            1 => Formula::eventually(*lo, *hi, (**g).clone()),
            _ => Formula::always(*lo, *hi, weaken(rng, g, vars)),
        },
        Formula::Eventually(lo, hi, g) => match rng.gen_range(0..2) {
            0 => Formula::eventually(lo.saturating_sub(1), hi + rng.gen_range(0..2), (**g).clone()),
            _ => Formula::eventually(*lo, *hi, weaken(rng, g, vars)),
        },
        Formula::Next(k, g) => match rng.gen_range(0..2) {
            0 => Formula::eventually(k.saturating_sub(1), k + 1, (**g).clone()),
            _ => Formula::next(*k, weaken(rng, g, vars)),
        },
        _ => Formula::or([f.clone(), to_nnf(&random_formula(rng, vars, 3, 3, 2, &small_cfg()))]),
    }
}

/// Draws subsuming pairs `(vars, β, γ)` with `β ≠ γ` until `count` are found.
pub fn subsuming_pairs(seed: u64, count: usize) -> Vec<(VarTable, Formula, Formula)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = Vec::new();
    for _ in 0..200_000 {
        if pairs.len() == count {
            break;
        }
        let vars = bool_table(1, rng.gen_range(1..=2));
        let size = rng.gen_range(2..=8);
        let b = to_nnf(&random_formula(&mut rng, &vars, size, 6, 3, &small_cfg()));
        let g = if rng.gen_bool(0.7) {
            weaken(&mut rng, &b, &vars)
        } else {
            to_nnf(&random_formula(&mut rng, &vars, size, 6, 3, &small_cfg()))
        };
        if b != g && tabsynth::formula::subsumes(&b, &g) {
            pairs.push((vars, b, g));
        }
    }
    pairs
}

/// First trace on which `b` holds and `g` does not.
pub fn entailment_gap(vars: &VarTable, b: &Formula, g: &Formula) -> Option<FiniteTrace> {
    let len = tabsynth::formula::depth(b).max(tabsynth::formula::depth(g)) as usize + 2;
    let mut found = None;
    for_each_trace(vars, len, |tr| {
        if found.is_none() && holds_fin(tr, b) && !holds_fin(tr, g) {
            found = Some(tr.clone());
        }
    });
    found
}

/// Seed of the random corpus for the oracle agreement check.
pub const ORACLE_SEED: u64 = 0x5EED_2024;
