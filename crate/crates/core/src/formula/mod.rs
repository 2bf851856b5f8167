//! Abstract syntax for the bounded safety fragment and the variable table.
//! Negation normal form and temporal depth live here too.

mod closure;
mod semantics;
mod subsume;

pub use closure::{closure, closure_covers, subformulas, variants};
pub use semantics::{
    holds_fin, holds_now, progress, FiniteTrace, SliceTrace, TraceView, ValSpace, Valuation,
    Value,
};
pub use subsume::{inconsistent, subsumes};

use std::collections::BTreeSet;

/// Index of a declared variable inside a [`VarTable`].
pub type VarId = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Owner {
    Env,
    Sys,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Domain {
    Bool,
    /// Named constants; at least two entries, all distinct.
    Enum(Vec<String>),
}

impl Domain {
    /// Number of values. Booleans encode `false` as 0 and `true` as 1.
    pub fn size(&self) -> u32 {
        match self {
            Domain::Bool => 2,
            Domain::Enum(cs) => cs.len() as u32,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarDecl {
    pub name: String,
    pub owner: Owner,
    pub domain: Domain,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct VarTable {
    decls: Vec<VarDecl>,
}

impl VarTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a declaration. Fails with the offending name if it is already
    /// declared or if an enumerated domain is malformed.
    pub fn declare(&mut self, decl: VarDecl) -> Result<VarId, String> {
        if self.lookup(&decl.name).is_some() {
            return Err(format!("variable `{}` declared twice", decl.name));
        }
        if let Domain::Enum(cs) = &decl.domain {
            if cs.len() < 2 {
                return Err(format!(
                    "enumerated variable `{}` needs at least two constants",
                    decl.name
                ));
            }
            if cs.len() > 64 {
                return Err(format!(
                    "enumerated variable `{}` has more than 64 constants",
                    decl.name
                ));
            }
            let distinct: BTreeSet<&String> = cs.iter().collect();
            if distinct.len() != cs.len() {
                return Err(format!(
                    "enumerated variable `{}` repeats a constant",
                    decl.name
                ));
            }
        }
        self.decls.push(decl);
        Ok((self.decls.len() - 1) as VarId)
    }

    pub fn bool_var(&mut self, name: &str, owner: Owner) -> VarId {
        self.declare(VarDecl {
            name: name.to_string(),
            owner,
            domain: Domain::Bool,
        })
        .expect("fresh variable name")
    }

    pub fn len(&self) -> usize {
        self.decls.len()
    }

    pub fn is_empty(&self) -> bool {
        self.decls.is_empty()
    }

    pub fn get(&self, v: VarId) -> &VarDecl {
        &self.decls[v as usize]
    }

    pub fn lookup(&self, name: &str) -> Option<VarId> {
        self.decls
            .iter()
            .position(|d| d.name == name)
            .map(|i| i as VarId)
    }

    pub fn iter(&self) -> impl Iterator<Item = (VarId, &VarDecl)> {
        self.decls.iter().enumerate().map(|(i, d)| (i as VarId, d))
    }

    pub fn owned_by(&self, owner: Owner) -> Vec<VarId> {
        self.iter()
            .filter(|(_, d)| d.owner == owner)
            .map(|(v, _)| v)
            .collect()
    }

    pub fn env_vars(&self) -> Vec<VarId> {
        self.owned_by(Owner::Env)
    }

    pub fn sys_vars(&self) -> Vec<VarId> {
        self.owned_by(Owner::Sys)
    }

    pub fn all_vars(&self) -> Vec<VarId> {
        (0..self.decls.len() as VarId).collect()
    }

    pub fn domain_size(&self, v: VarId) -> u32 {
        self.get(v).domain.size()
    }

    /// Position of `name` inside the domain of an enumerated variable.
    pub fn constant_index(&self, v: VarId, name: &str) -> Option<u32> {
        match &self.get(v).domain {
            Domain::Enum(cs) => cs.iter().position(|c| c == name).map(|i| i as u32),
            Domain::Bool => None,
        }
    }

    pub fn constant_name(&self, v: VarId, c: u32) -> &str {
        match &self.get(v).domain {
            Domain::Enum(cs) => &cs[c as usize],
            Domain::Bool => {
                if c == 0 {
                    "false"
                } else {
                    "true"
                }
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Literal {
    Pos(VarId),
    Neg(VarId),
    Eq(VarId, u32),
    NotEq(VarId, u32),
}

impl Literal {
    pub fn var(&self) -> VarId {
        match *self {
            Literal::Pos(v) | Literal::Neg(v) | Literal::Eq(v, _) | Literal::NotEq(v, _) => v,
        }
    }

    pub fn negate(&self) -> Literal {
        match *self {
            Literal::Pos(v) => Literal::Neg(v),
            Literal::Neg(v) => Literal::Pos(v),
            Literal::Eq(v, c) => Literal::NotEq(v, c),
            Literal::NotEq(v, c) => Literal::Eq(v, c),
        }
    }

    pub fn holds(&self, value: Value) -> bool {
        match *self {
            Literal::Pos(_) => value == 1,
            Literal::Neg(_) => value == 0,
            Literal::Eq(_, c) => value == c,
            Literal::NotEq(_, c) => value != c,
        }
    }
}

/// A formula of the safety fragment.
///
/// Values built through the associated constructors are canonical. Boolean
/// connectives are kept flat, sorted and free of duplicates. Constants are
/// absorbed. Nested `Next` nodes merge, and singleton intervals become `Next`. The derived `Ord` is the total structural order used for sorting.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    False,
    True,
    Lit(Literal),
    Next(u32, Box<Formula>),
    Always(u32, u32, Box<Formula>),
    Eventually(u32, u32, Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    /// Strict-future disjunction, semantically the same as `Or`.
    DOr(Vec<Formula>),
    Not(Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
}

fn flatten_into(out: &mut Vec<Formula>, f: Formula, same: fn(&Formula) -> Option<&Vec<Formula>>) {
    if let Some(children) = same(&f) {
        // Children of a canonical node are already flat.
        out.extend(children.iter().cloned());
    } else {
        out.push(f);
    }
}

impl Formula {
    pub fn lit(l: Literal) -> Formula {
        Formula::Lit(l)
    }

    pub fn pos(v: VarId) -> Formula {
        Formula::Lit(Literal::Pos(v))
    }

    pub fn neg(v: VarId) -> Formula {
        Formula::Lit(Literal::Neg(v))
    }

    pub fn constant(b: bool) -> Formula {
        if b {
            Formula::True
        } else {
            Formula::False
        }
    }

    pub fn and<I: IntoIterator<Item = Formula>>(items: I) -> Formula {
        let mut out = Vec::new();
        for f in items {
            match f {
                Formula::True => {}
                Formula::False => return Formula::False,
                other => flatten_into(&mut out, other, |g| match g {
                    Formula::And(cs) => Some(cs),
                    _ => None,
                }),
            }
        }
        out.sort();
        out.dedup();
        match out.len() {
            0 => Formula::True,
            1 => out.pop().unwrap(),
            _ => Formula::And(out),
        }
    }

    fn disjunction<I: IntoIterator<Item = Formula>>(items: I, dotted: bool) -> Formula {
        let mut out = Vec::new();
        for f in items {
            match f {
                Formula::False => {}
                Formula::True => return Formula::True,
                other => {
                    if dotted {
                        flatten_into(&mut out, other, |g| match g {
                            Formula::DOr(cs) => Some(cs),
                            _ => None,
                        })
                    } else {
                        flatten_into(&mut out, other, |g| match g {
                            Formula::Or(cs) => Some(cs),
                            _ => None,
                        })
                    }
                }
            }
        }
        out.sort();
        out.dedup();
        match out.len() {
            0 => Formula::False,
            1 => out.pop().unwrap(),
            _ if dotted => Formula::DOr(out),
            _ => Formula::Or(out),
        }
    }

    pub fn or<I: IntoIterator<Item = Formula>>(items: I) -> Formula {
        Formula::disjunction(items, false)
    }

    pub fn dor<I: IntoIterator<Item = Formula>>(items: I) -> Formula {
        Formula::disjunction(items, true)
    }

    pub fn next(k: u32, f: Formula) -> Formula {
        if k == 0 {
            return f;
        }
        match f {
            Formula::True => Formula::True,
            Formula::Next(j, g) => Formula::Next(k + j, g),
            other => Formula::Next(k, Box::new(other)),
        }
    }

    /// `G[lo,hi] f`. Panics if `lo > hi`; the parser reports that case.
    pub fn always(lo: u32, hi: u32, f: Formula) -> Formula {
        assert!(lo <= hi, "empty interval [{lo},{hi}]");
        if lo == hi {
            return Formula::next(lo, f);
        }
        match f {
            Formula::True => Formula::True,
            Formula::False if lo == 0 => Formula::False,
            other => Formula::Always(lo, hi, Box::new(other)),
        }
    }

    /// `F[lo,hi] f`. Panics if `lo > hi`.
    pub fn eventually(lo: u32, hi: u32, f: Formula) -> Formula {
        assert!(lo <= hi, "empty interval [{lo},{hi}]");
        if lo == hi {
            return Formula::next(lo, f);
        }
        match f {
            Formula::True => Formula::True,
            other => Formula::Eventually(lo, hi, Box::new(other)),
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        match f {
            Formula::True => Formula::False,
            Formula::False => Formula::True,
            Formula::Lit(l) => Formula::Lit(l.negate()),
            Formula::Not(g) => *g,
            other => Formula::Not(Box::new(other)),
        }
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    /// Top-level conjuncts (a non-conjunction is its own single conjunct).
    pub fn conjuncts(&self) -> Vec<Formula> {
        match self {
            Formula::And(cs) => cs.clone(),
            Formula::True => Vec::new(),
            other => vec![other.clone()],
        }
    }

    pub fn is_temporal(&self) -> bool {
        match self {
            Formula::True | Formula::False | Formula::Lit(_) => false,
            Formula::Next(..) | Formula::Always(..) | Formula::Eventually(..) => true,
            Formula::And(cs) | Formula::Or(cs) | Formula::DOr(cs) => {
                cs.iter().any(Formula::is_temporal)
            }
            Formula::Not(g) => g.is_temporal(),
            Formula::Implies(a, b) | Formula::Iff(a, b) => a.is_temporal() || b.is_temporal(),
        }
    }

    pub fn is_nnf(&self) -> bool {
        match self {
            Formula::True | Formula::False | Formula::Lit(_) => true,
            Formula::Next(_, g) | Formula::Always(_, _, g) | Formula::Eventually(_, _, g) => {
                g.is_nnf()
            }
            Formula::And(cs) | Formula::Or(cs) | Formula::DOr(cs) => cs.iter().all(Formula::is_nnf),
            Formula::Not(_) | Formula::Implies(..) | Formula::Iff(..) => false,
        }
    }

    /// From-next formulas are `X`-guarded or have an interval starting at 1 or later.
    pub fn is_from_next(&self) -> bool {
        match self {
            Formula::Next(..) => true,
            Formula::Always(lo, _, _) | Formula::Eventually(lo, _, _) => *lo >= 1,
            _ => false,
        }
    }

    /// Number of syntax nodes.
    pub fn size(&self) -> usize {
        match self {
            Formula::True | Formula::False | Formula::Lit(_) => 1,
            Formula::Next(_, g) | Formula::Always(_, _, g) | Formula::Eventually(_, _, g) => {
                1 + g.size()
            }
            Formula::Not(g) => 1 + g.size(),
            Formula::And(cs) | Formula::Or(cs) | Formula::DOr(cs) => {
                1 + cs.iter().map(Formula::size).sum::<usize>()
            }
            Formula::Implies(a, b) | Formula::Iff(a, b) => 1 + a.size() + b.size(),
        }
    }

    pub fn vars(&self) -> BTreeSet<VarId> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<VarId>) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Lit(l) => {
                out.insert(l.var());
            }
            Formula::Next(_, g)
            | Formula::Always(_, _, g)
            | Formula::Eventually(_, _, g)
            | Formula::Not(g) => g.collect_vars(out),
            Formula::And(cs) | Formula::Or(cs) | Formula::DOr(cs) => {
                cs.iter().for_each(|c| c.collect_vars(out))
            }
            Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }
}

/// Negation normal form; `Implies`, `Iff` and `Not` disappear and negations
/// are pushed onto literals.
pub fn to_nnf(f: &Formula) -> Formula {
    nnf(f, true)
}

/// NNF of the negation of `f`.
pub fn negate(f: &Formula) -> Formula {
    nnf(f, false)
}

fn nnf(f: &Formula, positive: bool) -> Formula {
    match f {
        Formula::True => Formula::constant(positive),
        Formula::False => Formula::constant(!positive),
        Formula::Lit(l) => Formula::Lit(if positive { *l } else { l.negate() }),
        Formula::And(cs) => {
            let kids = cs.iter().map(|c| nnf(c, positive));
            if positive {
                Formula::and(kids)
            } else {
                Formula::or(kids)
            }
        }
        Formula::Or(cs) => {
            let kids = cs.iter().map(|c| nnf(c, positive));
            if positive {
                Formula::or(kids)
            } else {
                Formula::and(kids)
            }
        }
        Formula::DOr(cs) => {
            let kids = cs.iter().map(|c| nnf(c, positive));
            if positive {
                Formula::dor(kids)
            } else {
                Formula::and(kids)
            }
        }
        Formula::Next(k, g) => Formula::next(*k, nnf(g, positive)),
        Formula::Always(lo, hi, g) => {
            if positive {
                Formula::always(*lo, *hi, nnf(g, true))
            } else {
                Formula::eventually(*lo, *hi, nnf(g, false))
            }
        }
        Formula::Eventually(lo, hi, g) => {
            if positive {
                Formula::eventually(*lo, *hi, nnf(g, true))
            } else {
                Formula::always(*lo, *hi, nnf(g, false))
            }
        }
        Formula::Not(g) => nnf(g, !positive),
        Formula::Implies(a, b) => {
            if positive {
                Formula::or([nnf(a, false), nnf(b, true)])
            } else {
                Formula::and([nnf(a, true), nnf(b, false)])
            }
        }
        Formula::Iff(a, b) => {
            if positive {
                Formula::and([
                    Formula::or([nnf(a, false), nnf(b, true)]),
                    Formula::or([nnf(a, true), nnf(b, false)]),
                ])
            } else {
                Formula::or([
                    Formula::and([nnf(a, true), nnf(b, false)]),
                    Formula::and([nnf(a, false), nnf(b, true)]),
                ])
            }
        }
    }
}

/// Temporal depth: `X^k` adds `k`, `G[n,m]` and `F[n,m]` add `m`.
pub fn depth(f: &Formula) -> u32 {
    match f {
        Formula::True | Formula::False | Formula::Lit(_) => 0,
        Formula::Next(k, g) => k + depth(g),
        Formula::Always(_, hi, g) | Formula::Eventually(_, hi, g) => hi + depth(g),
        Formula::Not(g) => depth(g),
        Formula::And(cs) | Formula::Or(cs) | Formula::DOr(cs) => {
            cs.iter().map(depth).max().unwrap_or(0)
        }
        Formula::Implies(a, b) | Formula::Iff(a, b) => depth(a).max(depth(b)),
    }
}
