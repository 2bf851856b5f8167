//! Seeded random formulas and specifications for fuzzing and tests.

use crate::formula::{Formula, Owner, VarId, VarTable};
use crate::parser::SpecFile;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenConfig {
    pub max_env: usize,
    pub max_sys: usize,
    /// Upper bound on the number of operators and atoms in `ψ`.
    pub max_size: usize,
    /// Upper bound on interval ends.
    pub max_bound: u32,
    /// Upper bound on the temporal depth of `ψ`.
    pub max_depth: u32,
    /// Also produce `!`, `->` and `<->` above literals.
    pub full_syntax: bool,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            max_env: 2,
            max_sys: 2,
            max_size: 12,
            max_bound: 4,
            max_depth: 4,
            full_syntax: true,
        }
    }
}

pub fn bool_table(n_env: usize, n_sys: usize) -> VarTable {
    let mut t = VarTable::new();
    for i in 0..n_env {
        t.bool_var(&format!("e{i}"), Owner::Env);
    }
    for i in 0..n_sys {
        t.bool_var(&format!("s{i}"), Owner::Sys);
    }
    t
}

fn literal<R: Rng>(rng: &mut R, vars: &[VarId]) -> Formula {
    let v = *vars.choose(rng).expect("at least one variable");
    if rng.gen_bool(0.5) {
        Formula::pos(v)
    } else {
        Formula::neg(v)
    }
}

/// Random formula of at most `size` nodes and temporal depth at most
/// `depth`, nested no deeper than `nesting`.
pub fn random_formula<R: Rng>(
    rng: &mut R,
    vars: &VarTable,
    size: usize,
    nesting: usize,
    depth: u32,
    cfg: &GenConfig,
) -> Formula {
    let all = vars.all_vars();
    if size <= 1 || nesting == 0 {
        return match rng.gen_range(0..20) {
            0 => Formula::True,
            1 => Formula::False,
            _ => literal(rng, &all),
        };
    }
    let unary = size < 3 || rng.gen_bool(0.4);
    if unary {
        let choice = rng.gen_range(0..4);
        let body_depth = |d: u32| depth.saturating_sub(d);
        match choice {
            0 if cfg.full_syntax => {
                Formula::not(random_formula(rng, vars, size - 1, nesting - 1, depth, cfg))
            }
            1 if depth >= 1 => {
                let k = rng.gen_range(1..=depth.min(2));
                Formula::next(k, random_formula(rng, vars, size - 1, nesting - 1, body_depth(k), cfg))
            }
            2 | 3 if depth >= 1 => {
                let hi = rng.gen_range(1..=depth.min(cfg.max_bound));
                let lo = rng.gen_range(0..=hi);
                let body = random_formula(rng, vars, size - 1, nesting - 1, body_depth(hi), cfg);
                if choice == 2 {
                    Formula::always(lo, hi, body)
                } else {
                    Formula::eventually(lo, hi, body)
                }
            }
            _ => literal(rng, &all),
        }
    } else {
        let left = rng.gen_range(1..size - 1);
        let right = size - 1 - left;
        let a = random_formula(rng, vars, left, nesting - 1, depth, cfg);
        let b = random_formula(rng, vars, right, nesting - 1, depth, cfg);
        let ops = if cfg.full_syntax { 4 } else { 2 };
        match rng.gen_range(0..ops) {
            0 => Formula::and([a, b]),
            1 => Formula::or([a, b]),
            2 => Formula::implies(a, b),
            _ => Formula::iff(a, b),
        }
    }
}

/// Random boolean initial condition, `true` half of the time.
fn random_initial<R: Rng>(rng: &mut R, vars: &VarTable) -> Formula {
    if rng.gen_bool(0.5) {
        return Formula::True;
    }
    let all = vars.all_vars();
    let a = literal(rng, &all);
    if rng.gen_bool(0.5) {
        a
    } else {
        Formula::or([a, literal(rng, &all)])
    }
}

pub fn random_spec<R: Rng>(rng: &mut R, cfg: &GenConfig) -> SpecFile {
    let n_env = rng.gen_range(1..=cfg.max_env.max(1));
    let n_sys = rng.gen_range(1..=cfg.max_sys.max(1));
    let vars = bool_table(n_env, n_sys);
    let size = rng.gen_range(3..=cfg.max_size.max(3));
    let safety = random_formula(rng, &vars, size, 12, cfg.max_depth, cfg);
    let initial = random_initial(rng, &vars);
    SpecFile { vars, initial, safety }
}

/// `count` specifications from one seed; identical across runs and platforms.
pub fn spec_corpus(seed: u64, count: usize, cfg: &GenConfig) -> Vec<SpecFile> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_spec(&mut rng, cfg)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::depth;

    #[test]
    fn corpus_is_reproducible_and_bounded() {
        let cfg = GenConfig::default();
        let a = spec_corpus(7, 50, &cfg);
        let b = spec_corpus(7, 50, &cfg);
        assert_eq!(a, b);
        for s in &a {
            assert!(depth(&s.safety) <= cfg.max_depth);
            assert!(s.vars.env_vars().len() <= 2 && s.vars.sys_vars().len() <= 2);
        }
    }
}
