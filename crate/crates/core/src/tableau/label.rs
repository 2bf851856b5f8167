use crate::formula::{inconsistent, subsumes, Formula, VarTable};
use crate::tnf::{elementary, reduce_conjuncts, StrictFuture};
use std::fmt;

/// Which of `□ψ` / `X□ψ` accompanies a label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Chi {
    AlwaysPsi,
    NextAlwaysPsi,
}

impl fmt::Display for Chi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Chi::AlwaysPsi => f.write_str("□ψ"),
            Chi::NextAlwaysPsi => f.write_str("X□ψ"),
        }
    }
}

/// A canonical, subsumption-free formula set plus its `χ` marker.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeLabel {
    pub formulas: Vec<Formula>,
    pub chi: Chi,
}

impl NodeLabel {
    /// Flattens conjunctions, drops `true` and every member implied by
    /// another member, then sorts.
    pub fn new<I: IntoIterator<Item = Formula>>(formulas: I, chi: Chi) -> NodeLabel {
        NodeLabel {
            formulas: reduce_conjuncts(formulas.into_iter().collect()),
            chi,
        }
    }

    pub fn is_inconsistent(&self, vars: &VarTable) -> bool {
        inconsistent(&self.formulas, vars)
    }

    /// Whether every member starts with `X` (literals aside).
    pub fn is_elementary(&self) -> bool {
        self.formulas.iter().all(|f| match f {
            Formula::Lit(_) | Formula::Next(..) => true,
            Formula::DOr(ds) => ds.iter().all(|d| d.conjuncts().iter().all(|c| matches!(c, Formula::Next(..)))),
            _ => false,
        })
    }
}

/// `Φ ⋖ Φ'`: the markers agree and every member of `Φ'` is subsumed by
/// some member of `Φ`, so any trace satisfying `Φ` satisfies `Φ'`.
pub fn label_leq(phi: &NodeLabel, phi2: &NodeLabel) -> bool {
    phi.chi == phi2.chi
        && phi2
            .formulas
            .iter()
            .all(|g| phi.formulas.iter().any(|b| subsumes(b, g)))
}

fn all_from_next(f: &Formula) -> bool {
    match f {
        Formula::And(cs) => cs.iter().all(Formula::is_from_next),
        other => other.is_from_next(),
    }
}

/// Rule priority; lower runs first, `None` means the formula is final.
fn priority(f: &Formula) -> Option<u8> {
    match f {
        Formula::And(_) => Some(0),
        Formula::Always(..) => Some(1),
        Formula::DOr(ds) if ds.iter().all(all_from_next) => Some(2),
        Formula::Eventually(..) => Some(3),
        Formula::Or(_) | Formula::DOr(_) => Some(4),
        _ => None,
    }
}

/// All saturated sets reachable from `label` with the decomposition rules:
/// conjunctions split, `G` intervals unfold one step, strict-future `∨̈`
/// formulas are replaced by their elementary form, while `F` intervals and
/// ordinary disjunctions branch. Alternatives come out in a fixed order.
pub fn saturate(label: &NodeLabel) -> Vec<NodeLabel> {
    let mut out: Vec<NodeLabel> = Vec::new();
    sat(label.formulas.clone(), Vec::new(), label.chi, &mut out);
    let mut seen = std::collections::HashSet::new();
    out.retain(|l| seen.insert(l.clone()));
    out
}

fn sat(mut pending: Vec<Formula>, mut done: Vec<Formula>, chi: Chi, out: &mut Vec<NodeLabel>) {
    let pick = pending
        .iter()
        .enumerate()
        .filter_map(|(i, f)| priority(f).map(|p| (p, i)))
        .min();
    let Some((_, idx)) = pick else {
        done.extend(pending);
        out.push(NodeLabel::new(done, chi));
        return;
    };
    let f = pending.remove(idx);
    match f {
        Formula::And(cs) => {
            pending.extend(cs);
            sat(pending, done, chi, out);
        }
        Formula::Always(lo, hi, g) => {
            pending.push(Formula::next(lo, (*g).clone()));
            pending.push(Formula::next(1, Formula::always(lo, hi - 1, *g)));
            sat(pending, done, chi, out);
        }
        Formula::DOr(ds) if ds.iter().all(all_from_next) => {
            let delta = StrictFuture::normalized(ds.iter().map(Formula::conjuncts).collect());
            let e = elementary(&delta);
            if e.disjuncts.len() == 1 {
                done.extend(e.disjuncts[0].iter().cloned());
            } else {
                done.push(e.to_formula());
            }
            sat(pending, done, chi, out);
        }
        Formula::Eventually(lo, hi, g) => {
            let mut first = pending.clone();
            first.push(Formula::next(lo, (*g).clone()));
            sat(first, done.clone(), chi, out);
            pending.push(Formula::next(1, Formula::eventually(lo, hi - 1, *g)));
            sat(pending, done, chi, out);
        }
        Formula::Or(cs) | Formula::DOr(cs) => {
            for c in cs {
                let mut alt = pending.clone();
                alt.push(c);
                sat(alt, done.clone(), chi, out);
            }
        }
        _ => unreachable!("formula without a rule was selected"),
    }
}
