//! Subformulas, interval variants and the closure of a specification.
//! The closure is a finiteness certificate for tableau labels; it is used by
//! tests and diagnostics, never by the engine itself.

use super::Formula;
use std::collections::BTreeSet;

pub fn subformulas(f: &Formula) -> BTreeSet<Formula> {
    let mut out = BTreeSet::new();
    collect_sub(f, &mut out);
    out
}

fn collect_sub(f: &Formula, out: &mut BTreeSet<Formula>) {
    if !out.insert(f.clone()) {
        return;
    }
    match f {
        Formula::True | Formula::False | Formula::Lit(_) => {}
        Formula::Next(_, g) | Formula::Always(_, _, g) | Formula::Eventually(_, _, g) | Formula::Not(g) => {
            collect_sub(g, out)
        }
        Formula::And(cs) | Formula::Or(cs) | Formula::DOr(cs) => cs.iter().for_each(|c| collect_sub(c, out)),
        Formula::Implies(a, b) | Formula::Iff(a, b) => {
            collect_sub(a, out);
            collect_sub(b, out);
        }
    }
}

/// Interval variants of every temporal subformula of `psi`: for `G[n,m]β`
/// and `F[n,m]β` this is `G[n,m']β`, `X G[n,m']β` (resp. `F`) for
/// `n ≤ m' ≤ m`, and `X^j β` for `j ≤ m`; for `X^k β` it is `X^j β`, `j ≤ k`.
pub fn variants(psi: &Formula) -> BTreeSet<Formula> {
    let mut out = BTreeSet::new();
    for f in subformulas(psi) {
        match &f {
            Formula::Next(k, g) => {
                for j in 0..=*k {
                    out.insert(Formula::next(j, (**g).clone()));
                }
            }
            Formula::Always(lo, hi, g) | Formula::Eventually(lo, hi, g) => {
                let is_box = matches!(f, Formula::Always(..));
                for m in *lo..=*hi {
                    let v = if is_box {
                        Formula::always(*lo, m, (**g).clone())
                    } else {
                        Formula::eventually(*lo, m, (**g).clone())
                    };
                    out.insert(Formula::next(1, v.clone()));
                    out.insert(v);
                }
                for j in 0..=*hi + 1 {
                    out.insert(Formula::next(j, (**g).clone()));
                }
            }
            _ => {}
        }
    }
    out
}

/// Closure of `α ∧ □ψ` as a set of non-connective formulas (literals and
/// temporal formulas). Boolean combinations of members are covered through
/// [`closure_covers`].
pub fn closure(alpha: &Formula, psi: &Formula) -> BTreeSet<Formula> {
    let mut out = BTreeSet::new();
    for f in subformulas(alpha)
        .into_iter()
        .chain(subformulas(psi))
        .chain(variants(psi))
    {
        if !matches!(f, Formula::And(_) | Formula::Or(_) | Formula::DOr(_)) {
            out.insert(f);
        }
    }
    out
}

/// Whether `f` is a boolean combination of closure members.
pub fn closure_covers(clo: &BTreeSet<Formula>, f: &Formula) -> bool {
    match f {
        Formula::True | Formula::False => true,
        Formula::And(cs) | Formula::Or(cs) | Formula::DOr(cs) => cs.iter().all(|c| closure_covers(clo, c)),
        other => clo.contains(other),
    }
}
