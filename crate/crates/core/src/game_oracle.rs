//! Explicit safety game for `α ∧ □ψ`, solved by an attractor computation.
//! It decides realizability independently of the tableau.
//!
//! A game state is the pseudo-state `Init` or the window of the last
//! `min(t, D)` full valuations, where `D = depth(ψ)`. A step is bad when
//! the window it completes has length `D + 1` and violates `ψ` at its first
//! position, or when it leaves `Init` with a valuation violating `α`.
//! The reachable-only variant identifies states by their pending
//! obligation instead (see [`solve`]).

use crate::error::BudgetError;
use crate::formula::{
    depth, holds_fin, holds_now, progress, to_nnf, FiniteTrace, Formula, SliceTrace, ValSpace, Valuation,
};
use crate::tnf::reduce_conjuncts;
use crate::parser::SpecFile;
use crate::synthesis::{compact, MealyMachine};
use std::collections::HashMap;

const BAD: u32 = u32::MAX;

/// Whether `λ` is a pre-witness: its first state satisfies `α` and every
/// suffix of `λ` satisfies `ψ` on finite traces.
pub fn is_pre_witness(lambda: &FiniteTrace, spec: &SpecFile) -> bool {
    !lambda.0.is_empty()
        && holds_now(&lambda.0[0], &spec.initial)
        && (0..lambda.0.len()).all(|i| holds_fin(&lambda.suffix(i), &spec.safety))
}

/// Whether the lasso `λ_0 ⋯ λ_{j-1} (λ_j ⋯ λ_{d-1})^ω` satisfies `α ∧ □ψ`.
/// Positions past `d` repeat earlier ones, so it suffices to unroll
/// `depth(ψ)` extra steps and check each of the first `d` positions.
pub fn lasso_satisfies(lambda: &FiniteTrace, j: usize, spec: &SpecFile) -> bool {
    let d = lambda.0.len();
    assert!(j < d, "loop start must lie inside the trace");
    let extra = depth(&spec.safety) as usize;
    let mut unrolled = lambda.0.clone();
    let period = d - j;
    for k in 0..extra {
        unrolled.push(lambda.0[j + k % period].clone());
    }
    let full = FiniteTrace(unrolled);
    holds_now(&full.0[0], &spec.initial) && (0..d).all(|i| holds_fin(&full.suffix(i).prefix(extra + 1), &spec.safety))
}

/// Whether `λ` is a pre-witness that some lasso over it turns into a model.
pub fn is_witness(lambda: &FiniteTrace, spec: &SpecFile) -> bool {
    is_pre_witness(lambda, spec) && (0..lambda.0.len()).any(|j| lasso_satisfies(lambda, j, spec))
}

/// The solved arena. State `0` is `Init`.
#[derive(Clone, Debug)]
pub struct StrategyTable {
    n_env: usize,
    n_sys: usize,
    /// `succ[s * V + v]` is the successor of `s` on full valuation `v`, or
    /// `BAD`.
    succ: Vec<u32>,
    /// Whether the environment can force a bad step from the state.
    losing: Vec<bool>,
}

impl StrategyTable {
    pub fn num_states(&self) -> usize {
        self.losing.len()
    }

    pub fn is_winning(&self, state: usize) -> bool {
        !self.losing[state]
    }

    /// First system answer that keeps the play safe, with the successor.
    pub fn choose(&self, state: usize, x: usize) -> Option<(usize, usize)> {
        let v_count = self.n_env * self.n_sys;
        (0..self.n_sys).find_map(|y| {
            let t = self.succ[state * v_count + x * self.n_sys + y];
            (t != BAD && !self.losing[t as usize]).then_some((y, t as usize))
        })
    }
}

#[derive(Clone, Debug)]
pub struct OracleResult {
    pub realizable: bool,
    pub strategy: StrategyTable,
    pub states: usize,
    pub edges: u64,
}

impl OracleResult {
    /// The memory-less strategy restricted to states it reaches, as a
    /// machine over the specification's variables.
    pub fn to_mealy(&self, spec: &SpecFile) -> Option<MealyMachine> {
        if !self.realizable {
            return None;
        }
        let s = &self.strategy;
        Some(compact(&spec.vars, 0, |id| format!("g{id}"), |state| {
            (0..s.n_env).map(|x| s.choose(state, x)).collect()
        }))
    }
}

struct Arena<'a> {
    alpha: Formula,
    psi: Formula,
    table: &'a [Valuation],
    d: usize,
    n_val: usize,
}

impl Arena<'_> {
    /// Successor window of `window` (or of `Init` when `None`) on full
    /// valuation `v`, or `None` when the step is bad.
    fn step(&self, window: Option<&[usize]>, v: usize) -> Option<Vec<usize>> {
        let mut w: Vec<usize> = match window {
            None => {
                if !holds_now(&self.table[v], &self.alpha) {
                    return None;
                }
                Vec::new()
            }
            Some(w) => w.to_vec(),
        };
        w.push(v);
        if w.len() == self.d + 1 {
            let trace = SliceTrace { table: self.table, steps: &w };
            if !holds_fin(&trace, &self.psi) {
                return None;
            }
            w.remove(0);
        }
        Some(w)
    }
}

fn check_budget(states: u64, n_val: u64, limit: u64) -> Result<(), BudgetError> {
    match states.checked_mul(n_val) {
        Some(e) if e <= limit => Ok(()),
        e => Err(BudgetError::Oracle {
            needed: e.unwrap_or(u64::MAX),
            limit,
        }),
    }
}

/// Builds the whole arena with windows numbered in mixed radix.
fn build_eager(arena: &Arena<'_>, budget: u64) -> Result<Vec<u32>, BudgetError> {
    let (d, n) = (arena.d, arena.n_val as u64);
    // Windows of length 1..=D, or only the empty window when D = 0.
    let lengths: Vec<usize> = if d == 0 { vec![0] } else { (1..=d).collect() };
    let mut offsets = HashMap::new();
    let mut count: u64 = 1;
    for &len in &lengths {
        offsets.insert(len, count);
        let block = n.checked_pow(len as u32).unwrap_or(u64::MAX);
        count = count.saturating_add(block);
    }
    check_budget(count, n, budget)?;
    if count > u64::from(u32::MAX - 1) {
        return Err(BudgetError::Oracle { needed: count * n, limit: budget });
    }
    let id_of = |w: &[usize]| -> u32 {
        let digits = w.iter().fold(0u64, |acc, &v| acc * n + v as u64);
        (offsets[&w.len()] + digits) as u32
    };
    let mut succ = Vec::with_capacity((count * n) as usize);
    let mut window = Vec::with_capacity(d);
    for state in 0..count {
        let current: Option<&[usize]> = if state == 0 {
            None
        } else {
            let len = lengths
                .iter()
                .rev()
                .copied()
                .find(|l| offsets[l] <= state)
                .expect("state inside some block");
            let mut digits = state - offsets[&len];
            window.clear();
            window.resize(len, 0);
            for slot in window.iter_mut().rev() {
                *slot = (digits % n) as usize;
                digits /= n;
            }
            Some(&window)
        };
        for v in 0..arena.n_val {
            succ.push(match arena.step(current, v) {
                Some(w) => id_of(&w),
                None => BAD,
            });
        }
    }
    Ok(succ)
}

fn conjoin(parts: [Formula; 2]) -> Formula {
    Formula::and(reduce_conjuncts(Formula::and(parts).conjuncts()))
}

/// Builds only the part of the game reachable from the start, with states
/// keyed by the obligation still pending instead of the raw window. Two
/// histories with the same pending obligation admit exactly the same safe
/// continuations, so this is a quotient of the window arena.
fn build_progression(arena: &Arena<'_>, budget: u64) -> Result<Vec<u32>, BudgetError> {
    let n = arena.n_val;
    let start = conjoin([arena.alpha.clone(), arena.psi.clone()]);
    let mut ids: HashMap<Formula, u32> = HashMap::from([(start.clone(), 0)]);
    let mut states: Vec<Formula> = vec![start];
    let mut succ: Vec<u32> = Vec::new();
    let mut i = 0;
    while i < states.len() {
        check_budget(states.len() as u64, n as u64, budget)?;
        let current = states[i].clone();
        for v in 0..n {
            let val = &arena.table[v];
            let t = if holds_now(val, &current) {
                let rest = conjoin([progress(&current, val), arena.psi.clone()]);
                *ids.entry(rest.clone()).or_insert_with(|| {
                    states.push(rest);
                    (states.len() - 1) as u32
                })
            } else {
                BAD
            };
            succ.push(t);
        }
        i += 1;
    }
    Ok(succ)
}

/// States from which the environment can force a bad step, computed with
/// one counter per (state, input) of answers not yet known to lose.
fn attractor(succ: &[u32], n_env: usize, n_sys: usize) -> Vec<bool> {
    let n_val = n_env * n_sys;
    let states = succ.len() / n_val;
    let mut counter = vec![0u32; states * n_env];
    let mut losing = vec![false; states];
    let mut queue = Vec::new();

    // Reverse edges in compressed form: predecessors of t are the
    // (state, input) pairs stored in preds[start[t]..start[t+1]].
    let mut start = vec![0usize; states + 1];
    for &t in succ {
        if t != BAD {
            start[t as usize + 1] += 1;
        }
    }
    for i in 0..states {
        start[i + 1] += start[i];
    }
    let mut fill = start.clone();
    let mut preds = vec![0u32; start[states]];
    for (e, &t) in succ.iter().enumerate() {
        if t != BAD {
            let s = e / n_val;
            let x = (e % n_val) / n_sys;
            preds[fill[t as usize]] = (s * n_env + x) as u32;
            fill[t as usize] += 1;
        }
    }

    for s in 0..states {
        for x in 0..n_env {
            let base = s * n_val + x * n_sys;
            let alive = succ[base..base + n_sys].iter().filter(|&&t| t != BAD).count() as u32;
            counter[s * n_env + x] = alive;
            if alive == 0 && !losing[s] {
                losing[s] = true;
                queue.push(s);
            }
        }
    }
    while let Some(t) = queue.pop() {
        for &p in &preds[start[t]..start[t + 1]] {
            let s = p as usize / n_env;
            counter[p as usize] -= 1;
            if counter[p as usize] == 0 && !losing[s] {
                losing[s] = true;
                queue.push(s);
            }
        }
    }
    losing
}

/// Solves the safety game. With `lazy` unset the full window arena is
/// enumerated; with `lazy` set only reachable obligation states are built.
/// Fails when the arena would exceed `budget` edges.
pub fn solve(spec: &SpecFile, budget: u64, lazy: bool) -> Result<OracleResult, BudgetError> {
    let vars = &spec.vars;
    let env = ValSpace::env(vars);
    let sys = ValSpace::sys(vars);
    let n_env = env.size_checked().unwrap_or(u64::MAX);
    let n_sys = sys.size_checked().unwrap_or(u64::MAX);
    let n_val = n_env.saturating_mul(n_sys);
    check_budget(1, n_val, budget)?;
    let (n_env, n_sys, n_val) = (n_env as usize, n_sys as usize, n_val as usize);

    let mut table = Vec::with_capacity(n_val);
    for x in 0..n_env {
        let xv = env.valuation(x);
        for y in 0..n_sys {
            table.push(Valuation::combine(&xv, &env, &sys.valuation(y), &sys));
        }
    }
    let arena = Arena {
        alpha: to_nnf(&spec.initial),
        psi: to_nnf(&spec.safety),
        table: &table,
        d: depth(&spec.safety) as usize,
        n_val,
    };
    let succ = if lazy { build_progression(&arena, budget)? } else { build_eager(&arena, budget)? };
    let losing = attractor(&succ, n_env, n_sys);
    let states = losing.len();
    Ok(OracleResult {
        realizable: !losing[0],
        strategy: StrategyTable { n_env, n_sys, succ, losing },
        states,
        edges: (states * n_val) as u64,
    })
}
