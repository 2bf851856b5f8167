//! Valuations, finite traces and the finite-trace satisfaction relation.

use super::{Formula, Literal, VarId, VarTable};

pub type Value = u32;

/// Total assignment of values to every declared variable, indexed by `VarId`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Valuation(pub Vec<Value>);

impl Valuation {
    pub fn zeros(vars: &VarTable) -> Valuation {
        Valuation(vec![0; vars.len()])
    }

    pub fn get(&self, v: VarId) -> Value {
        self.0[v as usize]
    }

    pub fn set(&mut self, v: VarId, value: Value) {
        self.0[v as usize] = value;
    }

    /// Joins an environment part and a system part. Each side only
    /// contributes the variables of its own space.
    pub fn combine(env: &Valuation, env_space: &ValSpace, sys: &Valuation, sys_space: &ValSpace) -> Valuation {
        let mut out = Valuation(vec![0; env.0.len().max(sys.0.len())]);
        for &v in env_space.vars() {
            out.set(v, env.get(v));
        }
        for &v in sys_space.vars() {
            out.set(v, sys.get(v));
        }
        out
    }

    pub fn satisfies(&self, l: &Literal) -> bool {
        l.holds(self.get(l.var()))
    }
}

/// Mixed-radix enumeration of all valuations over a subset of variables.
/// The last variable varies fastest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValSpace {
    vars: Vec<VarId>,
    radix: Vec<u32>,
    total_vars: usize,
}

impl ValSpace {
    pub fn new(table: &VarTable, vars: &[VarId]) -> ValSpace {
        ValSpace {
            vars: vars.to_vec(),
            radix: vars.iter().map(|&v| table.domain_size(v)).collect(),
            total_vars: table.len(),
        }
    }

    pub fn env(table: &VarTable) -> ValSpace {
        ValSpace::new(table, &table.env_vars())
    }

    pub fn sys(table: &VarTable) -> ValSpace {
        ValSpace::new(table, &table.sys_vars())
    }

    pub fn full(table: &VarTable) -> ValSpace {
        ValSpace::new(table, &table.all_vars())
    }

    pub fn vars(&self) -> &[VarId] {
        &self.vars
    }

    /// Number of valuations, or `None` on overflow.
    pub fn size_checked(&self) -> Option<u64> {
        self.radix
            .iter()
            .try_fold(1u64, |acc, &r| acc.checked_mul(r as u64))
    }

    /// Number of valuations; panics on overflow (use `size_checked` first).
    pub fn size(&self) -> usize {
        self.size_checked().expect("valuation space overflow") as usize
    }

    /// Writes the `index`-th valuation into `out`, leaving other variables alone.
    pub fn write(&self, mut index: usize, out: &mut Valuation) {
        for (pos, &v) in self.vars.iter().enumerate().rev() {
            let r = self.radix[pos] as usize;
            out.set(v, (index % r) as Value);
            index /= r;
        }
    }

    /// The `index`-th valuation with all variables outside the space at 0.
    pub fn valuation(&self, index: usize) -> Valuation {
        let mut out = Valuation(vec![0; self.total_vars]);
        self.write(index, &mut out);
        out
    }

    /// Index of the restriction of `val` to this space.
    pub fn index_of(&self, val: &Valuation) -> usize {
        let mut idx = 0usize;
        for (pos, &v) in self.vars.iter().enumerate() {
            idx = idx * self.radix[pos] as usize + val.get(v) as usize;
        }
        idx
    }

    pub fn iter(&self) -> impl Iterator<Item = Valuation> + '_ {
        (0..self.size()).map(move |i| self.valuation(i))
    }
}

/// Read access to a finite sequence of valuations.
pub trait TraceView {
    fn len(&self) -> usize;
    fn value(&self, pos: usize, var: VarId) -> Value;
    fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteTrace(pub Vec<Valuation>);

impl FiniteTrace {
    pub fn new(states: Vec<Valuation>) -> FiniteTrace {
        FiniteTrace(states)
    }

    pub fn suffix(&self, j: usize) -> FiniteTrace {
        FiniteTrace(self.0[j..].to_vec())
    }

    pub fn prefix(&self, i: usize) -> FiniteTrace {
        FiniteTrace(self.0[..i].to_vec())
    }
}

impl TraceView for FiniteTrace {
    fn len(&self) -> usize {
        self.0.len()
    }
    fn value(&self, pos: usize, var: VarId) -> Value {
        self.0[pos].get(var)
    }
}

/// A trace given as indices into a table of valuations.
pub struct SliceTrace<'a> {
    pub table: &'a [Valuation],
    pub steps: &'a [usize],
}

impl TraceView for SliceTrace<'_> {
    fn len(&self) -> usize {
        self.steps.len()
    }
    fn value(&self, pos: usize, var: VarId) -> Value {
        self.table[self.steps[pos]].get(var)
    }
}

/// `λ ⊨fin f`. Accepts any formula; `Not`, `Implies` and `Iff` are handled
/// by evaluating under a polarity instead of rewriting.
pub fn holds_fin<T: TraceView + ?Sized>(trace: &T, f: &Formula) -> bool {
    assert!(!trace.is_empty(), "finite traces are non-empty");
    eval(trace, 0, f, true)
}

/// Satisfaction by the one-state trace consisting of `v`.
pub fn holds_now(v: &Valuation, f: &Formula) -> bool {
    holds_fin(&FiniteTrace(vec![v.clone()]), f)
}

fn eval<T: TraceView + ?Sized>(t: &T, pos: usize, f: &Formula, positive: bool) -> bool {
    let d = t.len() - pos;
    match f {
        Formula::True => positive,
        Formula::False => !positive,
        Formula::Lit(l) => l.holds(t.value(pos, l.var())) == positive,
        Formula::And(cs) => {
            if positive {
                cs.iter().all(|c| eval(t, pos, c, true))
            } else {
                cs.iter().any(|c| eval(t, pos, c, false))
            }
        }
        Formula::Or(cs) | Formula::DOr(cs) => {
            if positive {
                cs.iter().any(|c| eval(t, pos, c, true))
            } else {
                cs.iter().all(|c| eval(t, pos, c, false))
            }
        }
        Formula::Next(k, g) => (*k as usize) >= d || eval(t, pos + *k as usize, g, positive),
        Formula::Always(lo, hi, g) => {
            if positive {
                box_holds(t, pos, d, *lo, *hi, g, true)
            } else {
                diamond_holds(t, pos, d, *lo, *hi, g, false)
            }
        }
        Formula::Eventually(lo, hi, g) => {
            if positive {
                diamond_holds(t, pos, d, *lo, *hi, g, true)
            } else {
                box_holds(t, pos, d, *lo, *hi, g, false)
            }
        }
        Formula::Not(g) => eval(t, pos, g, !positive),
        Formula::Implies(a, b) => {
            if positive {
                eval(t, pos, a, false) || eval(t, pos, b, true)
            } else {
                eval(t, pos, a, true) && eval(t, pos, b, false)
            }
        }
        Formula::Iff(a, b) => {
            if positive {
                (eval(t, pos, a, false) || eval(t, pos, b, true))
                    && (eval(t, pos, a, true) || eval(t, pos, b, false))
            } else {
                (eval(t, pos, a, true) && eval(t, pos, b, false))
                    || (eval(t, pos, a, false) && eval(t, pos, b, true))
            }
        }
    }
}

fn box_holds<T: TraceView + ?Sized>(
    t: &T,
    pos: usize,
    d: usize,
    lo: u32,
    hi: u32,
    g: &Formula,
    positive: bool,
) -> bool {
    let last = (hi as usize).min(d - 1);
    (lo as usize..=last).all(|j| eval(t, pos + j, g, positive))
}

fn diamond_holds<T: TraceView + ?Sized>(
    t: &T,
    pos: usize,
    d: usize,
    lo: u32,
    hi: u32,
    g: &Formula,
    positive: bool,
) -> bool {
    if (hi as usize) < d {
        (lo as usize..=hi as usize).any(|j| eval(t, pos + j, g, positive))
    } else {
        true
    }
}

/// Formula progression: for every non-empty trace `λ'`,
/// `v·λ' ⊨fin f` iff `λ' ⊨fin progress(f, v)`. Expects NNF input.
pub fn progress(f: &Formula, v: &Valuation) -> Formula {
    match f {
        Formula::True | Formula::False => f.clone(),
        Formula::Lit(l) => Formula::constant(v.satisfies(l)),
        Formula::And(cs) => Formula::and(cs.iter().map(|c| progress(c, v))),
        Formula::Or(cs) => Formula::or(cs.iter().map(|c| progress(c, v))),
        Formula::DOr(cs) => Formula::dor(cs.iter().map(|c| progress(c, v))),
        Formula::Next(k, g) => Formula::next(k - 1, (**g).clone()),
        Formula::Always(lo, hi, g) => {
            if *lo == 0 {
                Formula::and([progress(g, v), Formula::always(0, hi - 1, (**g).clone())])
            } else {
                Formula::always(lo - 1, hi - 1, (**g).clone())
            }
        }
        Formula::Eventually(lo, hi, g) => {
            if *lo == 0 {
                Formula::or([progress(g, v), Formula::eventually(0, hi - 1, (**g).clone())])
            } else {
                Formula::eventually(lo - 1, hi - 1, (**g).clone())
            }
        }
        Formula::Not(_) | Formula::Implies(..) | Formula::Iff(..) => {
            progress(&super::to_nnf(f), v)
        }
    }
}
