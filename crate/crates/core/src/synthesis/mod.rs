//! Mealy machines: extraction from an open tableau and verification
//! against a specification.

mod export;

pub use export::{machine_from_json, machine_to_dot, machine_to_json, StrategyJson, TransitionJson};

use crate::error::{Error, Result};
use crate::formula::{depth, holds_now, progress, to_nnf, Formula, ValSpace, Valuation, VarTable};
use crate::parser::SpecFile;
use crate::tableau::{LeafStatus, NodeKind, Role, Tableau, Verdict};
use crate::tnf::{reduce_conjuncts, Cube};
use std::collections::{HashMap, VecDeque};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Transition {
    /// Index into the system valuation space.
    pub sys: usize,
    pub to: usize,
}

/// A deterministic transducer reading environment valuations and writing
/// system valuations. `table[s][x]` is the move of state `s` on the `x`-th
/// environment valuation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MealyMachine {
    pub vars: VarTable,
    pub names: Vec<String>,
    pub initial: usize,
    pub table: Vec<Vec<Option<Transition>>>,
}

impl MealyMachine {
    pub fn env_space(&self) -> ValSpace {
        ValSpace::env(&self.vars)
    }

    pub fn sys_space(&self) -> ValSpace {
        ValSpace::sys(&self.vars)
    }

    pub fn num_states(&self) -> usize {
        self.names.len()
    }

    pub fn is_input_total(&self) -> bool {
        self.table.iter().all(|row| row.iter().all(Option::is_some))
    }

    /// Full valuation produced in `state` on input `x`, with the successor.
    pub fn step(&self, state: usize, x: usize) -> Option<(Valuation, usize)> {
        let t = self.table[state][x]?;
        let mut v = Valuation::zeros(&self.vars);
        self.env_space().write(x, &mut v);
        self.sys_space().write(t.sys, &mut v);
        Some((v, t.to))
    }

    /// States reachable from the initial one, in breadth-first order.
    pub fn reachable(&self) -> Vec<usize> {
        let mut seen = vec![false; self.names.len()];
        let mut order = vec![self.initial];
        seen[self.initial] = true;
        let mut i = 0;
        while i < order.len() {
            for t in self.table[order[i]].iter().flatten() {
                if !seen[t.to] {
                    seen[t.to] = true;
                    order.push(t.to);
                }
            }
            i += 1;
        }
        order
    }
}

/// Builds a machine from an indexed graph, keeping only states reachable
/// from `initial` and numbering them breadth-first.
pub(crate) fn compact(
    vars: &VarTable,
    initial: usize,
    names: impl Fn(usize) -> String,
    mut row: impl FnMut(usize) -> Vec<Option<(usize, usize)>>,
) -> MealyMachine {
    let mut index: HashMap<usize, usize> = HashMap::new();
    let mut order = vec![initial];
    index.insert(initial, 0);
    let mut rows = Vec::new();
    let mut i = 0;
    while i < order.len() {
        let r = row(order[i]);
        let mut out = Vec::with_capacity(r.len());
        for t in r {
            out.push(t.map(|(sys, to)| {
                let next = *index.entry(to).or_insert_with(|| {
                    order.push(to);
                    order.len() - 1
                });
                Transition { sys, to: next }
            }));
        }
        rows.push(out);
        i += 1;
    }
    MealyMachine {
        vars: vars.clone(),
        names: order.iter().map(|&s| names(s)).collect(),
        initial: 0,
        table: rows,
    }
}

/// Moves of the covering the engine committed to at an open state node.
fn committed_moves(tab: &Tableau, state: usize) -> Vec<usize> {
    let node = tab.node(state);
    match node.kind {
        NodeKind::AndBranch => node.children.clone(),
        NodeKind::OrBranch => node
            .children
            .iter()
            .copied()
            .find(|&c| tab.node(c).role == Role::Covering && tab.node(c).verdict == Verdict::Open)
            .map(|c| tab.node(c).children.clone())
            .unwrap_or_default(),
        NodeKind::Leaf(_) => Vec::new(),
    }
}

/// The state node a move leads to, following loops back to their target.
fn successor_state(tab: &Tableau, mv: usize) -> usize {
    let mv = tab.resolve(mv);
    let child = tab.node(mv).children[0];
    match tab.node(child).kind {
        NodeKind::Leaf(LeafStatus::Success) => tab.node(child).loop_target.expect("loop leaf without target"),
        _ => child,
    }
}

/// Reads a strategy off the bunch the engine committed to. Machine states
/// are the expanded state nodes reached, named after their node ids. On
/// each input the first move of the covering that admits it is taken and
/// unconstrained system variables get their first value.
pub fn extract(tab: &Tableau) -> Result<MealyMachine> {
    if tab.verdict != Verdict::Open {
        return Err(Error::NotOpen);
    }
    let vars = &tab.vars;
    let env = ValSpace::env(vars);
    let sys = ValSpace::sys(vars);
    let sys_vars = sys.vars().to_vec();
    let env_vals: Vec<Valuation> = env.iter().collect();
    let machine = compact(
        vars,
        tab.root,
        |s| format!("n{s}"),
        |state| {
            let moves = committed_moves(tab, state);
            let cubes: Vec<(&Cube, usize)> = moves
                .iter()
                .map(|&m| (tab.node(m).cube.as_ref().expect("move without cube"), m))
                .collect();
            env_vals
                .iter()
                .map(|x| {
                    let (cube, mv) = cubes
                        .iter()
                        .find(|(c, _)| env.vars().iter().all(|&v| c.mask(v) & (1u64 << x.get(v)) != 0))?;
                    let mut y = Valuation::zeros(vars);
                    for &v in &sys_vars {
                        y.set(v, cube.first_value(v));
                    }
                    Some((sys.index_of(&y), successor_state(tab, *mv)))
                })
                .collect()
        },
    );
    Ok(machine)
}

/// Outcome of [`verify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    /// Distinct (machine state, pending obligation) pairs visited.
    pub explored: usize,
    /// Whether the pair graph closed before the horizon, which makes the
    /// check valid for unbounded runs.
    pub closed: bool,
    /// Environment inputs leading to a violation, if any.
    pub counterexample: Option<Vec<Valuation>>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.counterexample.is_none()
    }
}

fn reduce(f: Formula) -> Formula {
    Formula::and(reduce_conjuncts(f.conjuncts()))
}

/// Drives `m` with every environment sequence of length up to `horizon`
/// and checks that every produced prefix satisfies the specification on
/// finite traces. Runs that reach the same machine state with the same
/// pending obligation behave identically afterwards, so they are merged;
/// a revisited pair closes a lasso whose loop has already been checked.
pub fn verify(m: &MealyMachine, spec: &SpecFile, horizon: usize) -> VerifyReport {
    let psi = to_nnf(&spec.safety);
    let start = reduce(Formula::and([to_nnf(&spec.initial), psi.clone()]));
    let n_env = m.env_space().size();

    // Each entry: (machine state, obligation, parent entry, input taken).
    let mut nodes: Vec<(usize, Formula, Option<usize>, usize)> = vec![(m.initial, start.clone(), None, 0)];
    let mut seen: HashMap<(usize, Formula), usize> = HashMap::new();
    seen.insert((m.initial, start), 0);
    let mut queue: VecDeque<(usize, usize)> = VecDeque::from([(0, 0)]);
    let mut closed = true;

    let trace_to = |nodes: &Vec<(usize, Formula, Option<usize>, usize)>, mut i: usize, last: usize| {
        let mut xs = vec![last];
        while let Some(p) = nodes[i].2 {
            xs.push(nodes[i].3);
            i = p;
        }
        xs.reverse();
        xs.into_iter().map(|x| m.env_space().valuation(x)).collect::<Vec<_>>()
    };

    while let Some((i, steps)) = queue.pop_front() {
        if steps >= horizon {
            closed = false;
            continue;
        }
        let (state, obligation) = (nodes[i].0, nodes[i].1.clone());
        for x in 0..n_env {
            let Some((v, next)) = m.step(state, x) else {
                return VerifyReport {
                    explored: nodes.len(),
                    closed: false,
                    counterexample: Some(trace_to(&nodes, i, x)),
                };
            };
            if !holds_now(&v, &obligation) {
                return VerifyReport {
                    explored: nodes.len(),
                    closed: false,
                    counterexample: Some(trace_to(&nodes, i, x)),
                };
            }
            let rest = reduce(Formula::and([progress(&obligation, &v), psi.clone()]));
            if let std::collections::hash_map::Entry::Vacant(slot) = seen.entry((next, rest.clone())) {
                slot.insert(nodes.len());
                nodes.push((next, rest, Some(i), x));
                queue.push_back((nodes.len() - 1, steps + 1));
            }
        }
    }
    VerifyReport {
        explored: nodes.len(),
        closed,
        counterexample: None,
    }
}

/// Default verification horizon `2·(depth(ψ)+2)`.
pub fn default_horizon(spec: &SpecFile) -> usize {
    2 * (depth(&spec.safety) as usize + 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::EngineConfig;
    use crate::parser::parse;
    use crate::tableau::decide;

    #[test]
    fn mimic_machine_copies_input() {
        let spec = parse("env e; sys s; safety: s <-> e;").unwrap();
        let tab = decide(&spec, &EngineConfig::default());
        let m = extract(&tab).unwrap();
        assert!(m.is_input_total());
        assert_eq!(m.reachable().len(), 1);
        assert!(verify(&m, &spec, 6).ok());
    }

    #[test]
    fn closed_tableau_has_no_machine() {
        let spec = parse("env e; sys s; safety: s <-> X e;").unwrap();
        let tab = decide(&spec, &EngineConfig::default());
        assert!(matches!(extract(&tab), Err(Error::NotOpen)));
    }

    #[test]
    fn false_initial_condition_fails_at_step_zero() {
        let spec = parse("env e; sys s; init: false; safety: true;").unwrap();
        let other = parse("env e; sys s; safety: true;").unwrap();
        let m = extract(&decide(&other, &EngineConfig::default())).unwrap();
        let r = verify(&m, &spec, 4);
        assert_eq!(r.counterexample.map(|c| c.len()), Some(1));
    }
}
