//! The tableau for `α ∧ □ψ`: state nodes expand through TNF into coverings
//! of the environment, move nodes step into the next state.

mod dot;
mod label;

pub use dot::to_dot;
pub use label::{label_leq, saturate, Chi, NodeLabel};

use crate::config::{EngineConfig, Heuristic};
use crate::covering::{env_cells_of, minimal_coverings_of_cells};
use crate::error::BudgetError;
use crate::formula::{to_nnf, Formula, VarTable};
use crate::parser::SpecFile;
use crate::tnf::{elementary, step_down_sets, tnf, Cube, SeparatedMove, StrictFuture};
use std::collections::HashMap;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Open,
    Closed,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Open => "REALIZABLE",
            Verdict::Closed => "UNREALIZABLE",
            Verdict::Unknown => "UNKNOWN",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LeafStatus {
    Success,
    Failure,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeKind {
    OrBranch,
    AndBranch,
    Leaf(LeafStatus),
}

/// What a node stands for in the tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Role {
    /// `Φ ∪ {□ψ}`.
    State,
    /// One minimal covering chosen at a state.
    Covering,
    /// `L(π) ∪ {F(π), X□ψ}` for one move `π`.
    Move,
    /// The `{false}` child of a state whose moves leave some input unanswered.
    Dead,
}

/// Rule that produced a node from its parent.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    Root,
    /// No covering exists.
    BoxFalse,
    /// Choice of one covering.
    BoxCover,
    /// One move of a chosen covering.
    BoxAnd,
    /// Single covering: moves attached straight to the state.
    BoxCoverAnd,
    /// Step from a move to the next state.
    Next,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::Root => "",
            Rule::BoxFalse => "(□F)",
            Rule::BoxCover => "(□‖)",
            Rule::BoxAnd => "(□&)",
            Rule::BoxCoverAnd => "(□‖)+(□&)",
            Rule::Next => "(X)",
        })
    }
}

#[derive(Clone, Debug)]
pub struct TableauNode {
    pub id: usize,
    pub label: NodeLabel,
    pub kind: NodeKind,
    pub role: Role,
    pub rule: Rule,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
    /// For a successful leaf: the ancestor state it loops back to.
    pub loop_target: Option<usize>,
    /// For a move node that was not expanded: the equivalent node whose
    /// subtree stands in for it.
    pub reuse_of: Option<usize>,
    /// Literal part of a move node.
    pub cube: Option<Cube>,
    /// Strict future of a move node (after dropping inconsistent disjuncts).
    pub future: Option<StrictFuture>,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    pub nodes: usize,
    pub state_nodes: usize,
    pub max_depth: usize,
    pub coverings: usize,
}

#[derive(Clone, Debug)]
pub struct Tableau {
    pub vars: VarTable,
    pub psi: Formula,
    pub nodes: Vec<TableauNode>,
    pub root: usize,
    pub verdict: Verdict,
    pub stats: Stats,
    /// Set when the verdict is `Unknown`.
    pub budget: Option<BudgetError>,
}

impl Tableau {
    pub fn node(&self, id: usize) -> &TableauNode {
        &self.nodes[id]
    }

    /// Follows `reuse_of` links to the node that was actually expanded.
    pub fn resolve(&self, mut id: usize) -> usize {
        while let Some(t) = self.nodes[id].reuse_of {
            id = t;
        }
        id
    }

    /// Recomputes every verdict bottom-up from the leaves, treating loop
    /// leaves as open, until nothing changes. On a fully built tableau
    /// this reproduces the verdict the engine reported.
    pub fn recompute_verdict(&self) -> Verdict {
        if self.verdict == Verdict::Unknown {
            return Verdict::Unknown;
        }
        let n = self.nodes.len();
        let mut open: Vec<Option<bool>> = vec![None; n];
        loop {
            let mut changed = false;
            for id in (0..n).rev() {
                if open[id].is_some() {
                    continue;
                }
                let node = &self.nodes[id];
                let value = if let Some(t) = node.reuse_of {
                    open[t]
                } else {
                    match node.kind {
                        NodeKind::Leaf(LeafStatus::Success) => Some(true),
                        NodeKind::Leaf(LeafStatus::Failure) => Some(false),
                        NodeKind::AndBranch => {
                            let vs: Vec<Option<bool>> = node.children.iter().map(|&c| open[c]).collect();
                            if vs.contains(&Some(false)) {
                                Some(false)
                            } else if vs.iter().all(Option::is_some) && !node.children.is_empty() {
                                Some(true)
                            } else if node.children.is_empty() {
                                Some(false)
                            } else {
                                None
                            }
                        }
                        NodeKind::OrBranch => {
                            let vs: Vec<Option<bool>> = node.children.iter().map(|&c| open[c]).collect();
                            if vs.contains(&Some(true)) {
                                Some(true)
                            } else if vs.iter().all(Option::is_some) {
                                Some(false)
                            } else {
                                None
                            }
                        }
                    }
                };
                if value.is_some() {
                    open[id] = value;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        match open[self.root] {
            Some(true) => Verdict::Open,
            Some(false) => Verdict::Closed,
            None => Verdict::Unknown,
        }
    }

    /// Number of expanded (non-leaf, non-reused) state nodes.
    pub fn expanded_states(&self) -> impl Iterator<Item = &TableauNode> {
        self.nodes
            .iter()
            .filter(|n| n.role == Role::State && !matches!(n.kind, NodeKind::Leaf(_)))
    }
}

/// Weight of a formula for the covering heuristic: literals weigh 1,
/// `G` multiplies by its width, `F` divides by it.
pub fn weight(f: &Formula) -> f64 {
    match f {
        Formula::True => 0.0,
        Formula::False => f64::INFINITY,
        Formula::Lit(_) => 1.0,
        Formula::Next(_, g) | Formula::Not(g) => weight(g),
        Formula::Always(lo, hi, g) => f64::from(hi - lo + 1) * weight(g),
        Formula::Eventually(lo, hi, g) => weight(g) / f64::from(hi - lo + 1),
        Formula::And(cs) => cs.iter().map(weight).sum(),
        Formula::Or(cs) | Formula::DOr(cs) => cs.iter().map(weight).fold(f64::INFINITY, f64::min),
        Formula::Implies(a, b) | Formula::Iff(a, b) => weight(a) + weight(b),
    }
}

/// Formulas of the state reached after a move with strict future `fut`.
pub fn next_state_formulas(fut: &StrictFuture, vars: &VarTable) -> Vec<Formula> {
    let e = elementary(fut).without_inconsistent(vars);
    let sets = step_down_sets(&e);
    match sets.len() {
        0 => vec![Formula::False],
        1 => sets.into_iter().next().unwrap(),
        _ => vec![Formula::dor(sets.into_iter().map(Formula::and))],
    }
}

struct Engine<'a> {
    vars: &'a VarTable,
    psi: Formula,
    cfg: &'a EngineConfig,
    nodes: Vec<TableauNode>,
    /// State nodes on the current branch, root first.
    path: Vec<usize>,
    stats: Stats,
}

impl<'a> Engine<'a> {
    fn push(
        &mut self,
        label: NodeLabel,
        role: Role,
        rule: Rule,
        parent: Option<usize>,
    ) -> Result<usize, BudgetError> {
        if self.nodes.len() >= self.cfg.max_nodes {
            return Err(BudgetError::Nodes(self.cfg.max_nodes));
        }
        let id = self.nodes.len();
        self.nodes.push(TableauNode {
            id,
            label,
            kind: NodeKind::OrBranch,
            role,
            rule,
            parent,
            children: Vec::new(),
            loop_target: None,
            reuse_of: None,
            cube: None,
            future: None,
            verdict: Verdict::Unknown,
        });
        if let Some(p) = parent {
            self.nodes[p].children.push(id);
        }
        Ok(id)
    }

    fn finish(&mut self, id: usize, open: bool) -> bool {
        self.nodes[id].verdict = if open { Verdict::Open } else { Verdict::Closed };
        open
    }

    fn state(&mut self, formulas: Vec<Formula>, parent: Option<usize>, rule: Rule) -> Result<(usize, bool), BudgetError> {
        let label = NodeLabel::new(formulas, Chi::AlwaysPsi);
        let id = self.push(label, Role::State, rule, parent)?;
        self.stats.state_nodes += 1;
        self.stats.max_depth = self.stats.max_depth.max(self.path.len());

        if self.nodes[id].label.is_inconsistent(self.vars) {
            self.nodes[id].kind = NodeKind::Leaf(LeafStatus::Failure);
            return Ok((id, self.finish(id, false)));
        }
        let target = self
            .path
            .iter()
            .copied()
            .find(|&a| label_leq(&self.nodes[a].label, &self.nodes[id].label));
        if let Some(t) = target {
            self.nodes[id].kind = NodeKind::Leaf(LeafStatus::Success);
            self.nodes[id].loop_target = Some(t);
            return Ok((id, self.finish(id, true)));
        }

        let mut all = self.nodes[id].label.formulas.clone();
        all.push(self.psi.clone());
        let t = tnf(&Formula::and(all), self.vars, self.cfg.simplify);
        let live: Vec<SeparatedMove> = t
            .moves
            .into_iter()
            .filter_map(|m| {
                let future = m.future.without_inconsistent(self.vars);
                (!future.is_false()).then_some(SeparatedMove { cube: m.cube, future })
            })
            .collect();

        let cubes: Vec<&Cube> = live.iter().map(|m| &m.cube).collect();
        let cells = env_cells_of(&cubes, self.vars, self.cfg.max_env_space)?;
        let n_env = cells.env_size();
        let candidates = dominant_moves(&live, &cells.cells);
        let mut covs = minimal_coverings_of_cells(&cells.cells, n_env, &candidates, self.cfg.max_coverings)?;

        if covs.is_empty() {
            let dead = self.push(NodeLabel::new([Formula::False], Chi::AlwaysPsi), Role::Dead, Rule::BoxFalse, Some(id))?;
            self.nodes[dead].kind = NodeKind::Leaf(LeafStatus::Failure);
            self.finish(dead, false);
            return Ok((id, self.finish(id, false)));
        }

        if self.cfg.heuristic == Heuristic::Weakest {
            let weights: Vec<f64> = live.iter().map(|m| weight(&m.future.to_formula())).collect();
            let mut scored: Vec<(f64, usize, Vec<usize>)> = covs
                .into_iter()
                .enumerate()
                .map(|(i, c)| (c.iter().map(|&m| weights[m]).sum(), i, c))
                .collect();
            scored.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
            covs = scored.into_iter().map(|(_, _, c)| c).collect();
        }

        self.path.push(id);
        let result = self.expand_coverings(id, &live, covs);
        self.path.pop();
        let open = result?;
        Ok((id, self.finish(id, open)))
    }

    fn expand_coverings(&mut self, id: usize, live: &[SeparatedMove], covs: Vec<Vec<usize>>) -> Result<bool, BudgetError> {
        let mut memo: HashMap<usize, (usize, bool)> = HashMap::new();
        if covs.len() == 1 {
            self.nodes[id].kind = NodeKind::AndBranch;
            self.stats.coverings += 1;
            return self.expand_and(id, live, &covs[0], Rule::BoxCoverAnd, &mut memo);
        }
        self.nodes[id].kind = NodeKind::OrBranch;
        for cov in &covs {
            self.stats.coverings += 1;
            let label = self.nodes[id].label.clone();
            let c = self.push(label, Role::Covering, Rule::BoxCover, Some(id))?;
            self.nodes[c].kind = NodeKind::AndBranch;
            let open = self.expand_and(c, live, cov, Rule::BoxAnd, &mut memo)?;
            self.finish(c, open);
            if open {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn expand_and(
        &mut self,
        parent: usize,
        live: &[SeparatedMove],
        cov: &[usize],
        rule: Rule,
        memo: &mut HashMap<usize, (usize, bool)>,
    ) -> Result<bool, BudgetError> {
        // Open siblings of this AND with their next-state labels.
        let mut open_siblings: Vec<(usize, NodeLabel)> = Vec::new();
        for &m in cov {
            let mv = &live[m];
            let mut lits: Vec<Formula> = mv.cube.literals(self.vars).into_iter().map(Formula::lit).collect();
            lits.push(mv.future.to_formula());
            let label = NodeLabel::new(lits, Chi::NextAlwaysPsi);
            let next = next_state_formulas(&mv.future, self.vars);
            let next_label = NodeLabel::new(next.clone(), Chi::AlwaysPsi);

            let node = self.push(label, Role::Move, rule, Some(parent))?;
            self.nodes[node].cube = Some(mv.cube.clone());
            self.nodes[node].future = Some(mv.future.clone());

            let shared = memo.get(&m).copied().or_else(|| {
                if !self.cfg.prune_siblings {
                    return None;
                }
                open_siblings
                    .iter()
                    .find(|(_, l)| label_leq(l, &next_label))
                    .map(|(s, _)| (*s, true))
            });
            let open = if let Some((target, open)) = shared {
                self.nodes[node].reuse_of = Some(target);
                self.finish(node, open)
            } else {
                let (_, open) = self.state(next, Some(node), Rule::Next)?;
                memo.insert(m, (node, open));
                self.finish(node, open)
            };
            if !open {
                return Ok(false);
            }
            open_siblings.push((node, next_label));
        }
        Ok(true)
    }
}

/// Moves that are not dominated: `B` is dropped in favour of an earlier
/// surviving `A` when `B` answers no input that `A` does not and the
/// future of `B` entails the future of `A`.
fn dominant_moves(live: &[SeparatedMove], cells: &[fixedbitset::FixedBitSet]) -> Vec<usize> {
    let futures: Vec<Formula> = live.iter().map(|m| m.future.to_formula()).collect();
    let mut kept: Vec<usize> = Vec::new();
    let mut alive = vec![true; live.len()];
    for b in 0..live.len() {
        let dominated = (0..live.len()).any(|a| {
            a != b
                && alive[a]
                && cells[b].is_subset(&cells[a])
                && crate::formula::subsumes(&futures[b], &futures[a])
        });
        if dominated {
            alive[b] = false;
        } else {
            kept.push(b);
        }
    }
    kept
}

fn run(spec: &SpecFile, cfg: &EngineConfig) -> Tableau {
    let vars = &spec.vars;
    let psi = to_nnf(&spec.safety);
    let mut engine = Engine {
        vars,
        psi: psi.clone(),
        cfg,
        nodes: Vec::new(),
        path: Vec::new(),
        stats: Stats::default(),
    };
    let init = to_nnf(&spec.initial);
    let (verdict, budget) = match engine.state(vec![init], None, Rule::Root) {
        Ok((_, true)) => (Verdict::Open, None),
        Ok((_, false)) => (Verdict::Closed, None),
        Err(e) => (Verdict::Unknown, Some(e)),
    };
    let mut stats = engine.stats;
    stats.nodes = engine.nodes.len();
    Tableau {
        vars: vars.clone(),
        psi,
        nodes: engine.nodes,
        root: 0,
        verdict,
        stats,
        budget,
    }
}

/// Builds the tableau for `spec` and decides realizability. Budget
/// exhaustion yields [`Verdict::Unknown`] with the reason in `budget`.
pub fn decide(spec: &SpecFile, cfg: &EngineConfig) -> Tableau {
    // Depth of the recursion grows with the node count; give the worker
    // a stack large enough for the configured budget.
    let stack = (64usize << 20).saturating_add(cfg.max_nodes.saturating_mul(4096));
    std::thread::scope(|s| {
        std::thread::Builder::new()
            .stack_size(stack.min(4 << 30))
            .spawn_scoped(s, || run(spec, cfg))
            .expect("spawn tableau worker")
            .join()
            .expect("tableau worker panicked")
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse;

    fn verdict(text: &str) -> Verdict {
        decide(&parse(text).unwrap(), &EngineConfig::default()).verdict
    }

    #[test]
    fn copy_input_is_realizable() {
        assert_eq!(verdict("env e; sys s; safety: s <-> e;"), Verdict::Open);
    }

    #[test]
    fn predicting_input_is_not() {
        assert_eq!(verdict("env e; sys s; safety: s <-> X e;"), Verdict::Closed);
    }

    #[test]
    fn weight_examples() {
        let mut t = VarTable::new();
        let a = t.bool_var("a", crate::formula::Owner::Sys);
        assert_eq!(weight(&Formula::always(0, 3, Formula::pos(a))), 4.0);
        assert_eq!(weight(&Formula::eventually(0, 3, Formula::pos(a))), 0.25);
    }
}
