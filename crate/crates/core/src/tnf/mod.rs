//! Terse normal form: a disjunction of moves whose literal parts pairwise
//! clash, each carrying the strict-future obligation left after the move.

mod cube;

pub use cube::Cube;

use crate::config::Simplify;
use crate::formula::{inconsistent, subsumes, to_nnf, Formula, Literal, VarTable};

/// A disjunction (under `∨̈`) of conjunctions of from-next formulas.
/// No disjuncts means `false`; an empty conjunction means `true`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StrictFuture {
    pub disjuncts: Vec<Vec<Formula>>,
}

impl StrictFuture {
    pub fn top() -> StrictFuture {
        StrictFuture {
            disjuncts: vec![Vec::new()],
        }
    }

    pub fn is_true(&self) -> bool {
        self.disjuncts.iter().any(Vec::is_empty)
    }

    pub fn is_false(&self) -> bool {
        self.disjuncts.is_empty()
    }

    pub fn to_formula(&self) -> Formula {
        Formula::dor(self.disjuncts.iter().map(|d| Formula::and(d.iter().cloned())))
    }

    /// Canonical form: conjunct sets without weaker members, and no
    /// disjunct that entails another one.
    pub fn normalized(disjuncts: Vec<Vec<Formula>>) -> StrictFuture {
        let mut ds: Vec<Vec<Formula>> = disjuncts.into_iter().map(reduce_conjuncts).collect();
        ds.sort();
        ds.dedup();
        if ds.iter().any(Vec::is_empty) {
            return StrictFuture::top();
        }
        if ds.len() > 1 {
            let keep: Vec<bool> = ds.iter().map(|d| !only_at_last_state(d)).collect();
            if keep.iter().any(|k| *k) {
                ds = ds.into_iter().zip(keep).filter(|(_, k)| *k).map(|(d, _)| d).collect();
            }
        }
        let mut alive = vec![true; ds.len()];
        for i in 0..ds.len() {
            let dominated = (0..ds.len()).any(|j| j != i && alive[j] && conj_entails(&ds[i], &ds[j]));
            if dominated {
                alive[i] = false;
            }
        }
        StrictFuture {
            disjuncts: ds.into_iter().zip(alive).filter(|(_, a)| *a).map(|(d, _)| d).collect(),
        }
    }

    /// Drops every disjunct whose conjuncts are syntactically inconsistent.
    pub fn without_inconsistent(&self, vars: &VarTable) -> StrictFuture {
        StrictFuture {
            disjuncts: self
                .disjuncts
                .iter()
                .filter(|d| !inconsistent(d, vars))
                .cloned()
                .collect(),
        }
    }
}

/// Removes conjuncts implied by another conjunct of the same set.
pub fn reduce_conjuncts(mut conj: Vec<Formula>) -> Vec<Formula> {
    let mut flat = Vec::with_capacity(conj.len());
    for f in conj.drain(..) {
        match f {
            Formula::And(cs) => flat.extend(cs),
            Formula::True => {}
            other => flat.push(other),
        }
    }
    flat.sort();
    flat.dedup();
    let mut alive = vec![true; flat.len()];
    for i in 0..flat.len() {
        if (0..flat.len()).any(|j| j != i && alive[j] && subsumes(&flat[j], &flat[i])) {
            alive[i] = false;
        }
    }
    flat.into_iter().zip(alive).filter(|(_, a)| *a).map(|(f, _)| f).collect()
}

/// `∧a ⊑ ∧b`: every member of `b` is subsumed by some member of `a`.
pub fn conj_entails(a: &[Formula], b: &[Formula]) -> bool {
    b.iter().all(|g| a.iter().any(|f| subsumes(f, g)))
}

/// A from-next conjunction whose literals one step ahead contradict each
/// other holds exactly on one-state traces, where every other strict-future
/// disjunct holds as well.
fn only_at_last_state(conj: &[Formula]) -> bool {
    let mut lits: Vec<Literal> = Vec::new();
    for f in conj {
        let body = match f {
            Formula::Next(1, g) => g.as_ref(),
            Formula::Always(1, _, g) => g.as_ref(),
            _ => continue,
        };
        match body {
            Formula::Lit(l) => lits.push(*l),
            Formula::And(cs) => lits.extend(cs.iter().filter_map(|c| match c {
                Formula::Lit(l) => Some(*l),
                _ => None,
            })),
            _ => {}
        }
    }
    lits.iter().any(|l| lits.contains(&l.negate()))
        || lits.iter().any(|l| {
            lits.iter().any(|k| match (l, k) {
                (Literal::Eq(x, c), Literal::Eq(y, d)) => x == y && c != d,
                _ => false,
            })
        })
}

/// One move `π`: a literal part `L(π)` (as a cube) and a strict future `F(π)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SeparatedMove {
    pub cube: Cube,
    pub future: StrictFuture,
}

impl SeparatedMove {
    pub fn literals(&self, vars: &VarTable) -> Vec<Literal> {
        self.cube.literals(vars)
    }

    pub fn to_formula(&self, vars: &VarTable) -> Formula {
        Formula::and([self.cube.to_formula(vars), self.future.to_formula()])
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TnfFormula {
    pub moves: Vec<SeparatedMove>,
}

impl TnfFormula {
    pub fn to_formula(&self, vars: &VarTable) -> Formula {
        Formula::or(self.moves.iter().map(|m| m.to_formula(vars)))
    }

    /// Every two moves have clashing literal parts.
    pub fn has_clash_property(&self) -> bool {
        self.moves.iter().enumerate().all(|(i, a)| {
            self.moves[i + 1..].iter().all(|b| a.cube.clashes(&b.cube))
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct PreMove {
    cube: Cube,
    conj: Vec<Formula>,
}

fn expand(f: &Formula, vars: &VarTable) -> Vec<PreMove> {
    let full = || Cube::full(vars);
    match f {
        Formula::True => vec![PreMove {
            cube: full(),
            conj: Vec::new(),
        }],
        Formula::False => Vec::new(),
        Formula::Lit(l) => vec![PreMove {
            cube: Cube::from_literal(l, vars),
            conj: Vec::new(),
        }],
        Formula::And(cs) => {
            let mut acc = vec![PreMove {
                cube: full(),
                conj: Vec::new(),
            }];
            for c in cs {
                let part = expand(c, vars);
                let mut next = Vec::with_capacity(acc.len() * part.len());
                for a in &acc {
                    for b in &part {
                        if let Some(cube) = a.cube.intersect(&b.cube) {
                            let mut conj = a.conj.clone();
                            conj.extend(b.conj.iter().cloned());
                            conj.sort();
                            conj.dedup();
                            next.push(PreMove { cube, conj });
                        }
                    }
                }
                next.sort();
                next.dedup();
                acc = next;
                if acc.is_empty() {
                    break;
                }
            }
            acc
        }
        Formula::Or(cs) | Formula::DOr(cs) => cs.iter().flat_map(|c| expand(c, vars)).collect(),
        Formula::Always(0, hi, g) => {
            let unfolded = Formula::and([(**g).clone(), Formula::next(1, Formula::always(0, hi - 1, (**g).clone()))]);
            expand(&unfolded, vars)
        }
        Formula::Eventually(0, hi, g) => {
            let unfolded = Formula::or([(**g).clone(), Formula::next(1, Formula::eventually(0, hi - 1, (**g).clone()))]);
            expand(&unfolded, vars)
        }
        Formula::Next(..) | Formula::Always(..) | Formula::Eventually(..) => vec![PreMove {
            cube: full(),
            conj: vec![f.clone()],
        }],
        Formula::Not(_) | Formula::Implies(..) | Formula::Iff(..) => expand(&to_nnf(f), vars),
    }
}

/// Disjunctive expansion into pre-moves: from-now operators are unfolded
/// once, so each disjunct is a literal cube plus a conjunction of from-next
/// formulas. The moves need not clash.
pub fn dnf_expand(f: &Formula, vars: &VarTable) -> Vec<SeparatedMove> {
    let mut pre = expand(f, vars);
    pre.sort();
    pre.dedup();
    pre.into_iter()
        .map(|p| SeparatedMove {
            cube: p.cube,
            future: StrictFuture::normalized(vec![p.conj]),
        })
        .collect()
}

/// Drops pre-moves implied by another pre-move (smaller cube and stronger
/// future).
fn reduce_premoves(pre: Vec<PreMove>) -> Vec<PreMove> {
    let pre: Vec<PreMove> = pre
        .into_iter()
        .map(|p| PreMove {
            cube: p.cube,
            conj: reduce_conjuncts(p.conj),
        })
        .collect();
    let mut alive = vec![true; pre.len()];
    for i in 0..pre.len() {
        let dominated = (0..pre.len()).any(|j| {
            j != i && alive[j] && pre[i].cube.is_subset(&pre[j].cube) && conj_entails(&pre[i].conj, &pre[j].conj)
        });
        if dominated {
            alive[i] = false;
        }
    }
    pre.into_iter().zip(alive).filter(|(_, a)| *a).map(|(p, _)| p).collect()
}

/// Terse normal form of `f`; equivalent to `f` on every finite trace.
pub fn tnf(f: &Formula, vars: &VarTable, simplify: Simplify) -> TnfFormula {
    let mut pre = expand(f, vars);
    pre.sort();
    pre.dedup();
    if simplify == Simplify::Subsume {
        pre = reduce_premoves(pre);
    }
    pre.sort_by_cached_key(|p| (p.cube.literal_count(vars), p.clone()));

    // Refine a partition of the valuation space; every region collects the
    // futures of all pre-moves covering it.
    let mut parts: Vec<(Cube, Vec<Vec<Formula>>)> = Vec::new();
    for p in pre {
        let mut next = Vec::with_capacity(parts.len() + 2);
        let mut rest = vec![p.cube.clone()];
        for (c, fut) in parts {
            match c.intersect(&p.cube) {
                None => next.push((c, fut)),
                Some(inter) => {
                    for piece in c.difference(&p.cube) {
                        next.push((piece, fut.clone()));
                    }
                    rest = rest.iter().flat_map(|r| r.difference(&c)).collect();
                    let mut joined = fut;
                    joined.push(p.conj.clone());
                    next.push((inter, joined));
                }
            }
        }
        for r in rest {
            next.push((r, vec![p.conj.clone()]));
        }
        parts = next;
    }

    let mut moves: Vec<SeparatedMove> = parts
        .into_iter()
        .map(|(cube, fut)| SeparatedMove {
            cube,
            future: StrictFuture::normalized(fut),
        })
        .collect();

    if simplify == Simplify::Subsume {
        merge_adjacent(&mut moves);
    }
    moves.sort_by_cached_key(|m| (m.cube.literals(vars), m.future.clone()));
    TnfFormula { moves }
}

fn merge_adjacent(moves: &mut Vec<SeparatedMove>) {
    loop {
        let mut merged = None;
        'search: for i in 0..moves.len() {
            for j in i + 1..moves.len() {
                if moves[i].future == moves[j].future {
                    if let Some(c) = moves[i].cube.merge_adjacent(&moves[j].cube) {
                        merged = Some((i, j, c));
                        break 'search;
                    }
                }
            }
        }
        match merged {
            Some((i, j, c)) => {
                moves[i].cube = c;
                moves.remove(j);
            }
            None => return,
        }
    }
}

/// Elementary form `δ^E`: every conjunct starts with `X`.
/// `G[n,m]β` becomes `X^nβ ∧ X G[n,m-1]β` and `F[n,m]β` becomes
/// `X^nβ ∨̈ X F[n,m-1]β`.
pub fn elementary(delta: &StrictFuture) -> StrictFuture {
    let mut out: Vec<Vec<Formula>> = Vec::new();
    for d in &delta.disjuncts {
        let mut alts: Vec<Vec<Formula>> = vec![Vec::new()];
        for f in d {
            let options: Vec<Vec<Formula>> = match f {
                Formula::Always(lo, hi, g) if *lo >= 1 => vec![vec![
                    Formula::next(*lo, (**g).clone()),
                    Formula::next(1, Formula::always(*lo, hi - 1, (**g).clone())),
                ]],
                Formula::Eventually(lo, hi, g) if *lo >= 1 => vec![
                    vec![Formula::next(*lo, (**g).clone())],
                    vec![Formula::next(1, Formula::eventually(*lo, hi - 1, (**g).clone()))],
                ],
                other => vec![vec![other.clone()]],
            };
            let mut next = Vec::with_capacity(alts.len() * options.len());
            for a in &alts {
                for o in &options {
                    let mut x = a.clone();
                    x.extend(o.iter().cloned());
                    next.push(x);
                }
            }
            alts = next;
        }
        out.extend(alts);
    }
    StrictFuture::normalized(out)
}

fn strip(f: &Formula) -> Formula {
    match f {
        Formula::Next(k, g) => Formula::next(k - 1, (**g).clone()),
        other => panic!("step_down needs an elementary formula, found {other:?}"),
    }
}

/// `δ↓` as a list of conjunct sets: one `X` removed from every conjunct.
pub fn step_down_sets(delta: &StrictFuture) -> Vec<Vec<Formula>> {
    delta
        .disjuncts
        .iter()
        .map(|d| d.iter().map(strip).collect())
        .collect()
}

/// `δ↓` as a formula.
pub fn step_down(delta: &StrictFuture) -> Formula {
    Formula::dor(step_down_sets(delta).into_iter().map(Formula::and))
}
