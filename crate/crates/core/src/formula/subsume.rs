//! Syntactic subsumption `β ⊑ γ` (a sound under-approximation of
//! finite-trace entailment) and the syntactic inconsistency test.

use super::{negate, Formula, Literal, VarTable};
use std::collections::BTreeMap;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Box,
    Diamond,
    /// `X^k`, which reads both as `G[k,k]` and as `F[k,k]`.
    Point,
}

struct View<'a> {
    kind: Kind,
    lo: u32,
    hi: u32,
    body: &'a Formula,
}

fn view(f: &Formula) -> Option<View<'_>> {
    match f {
        Formula::Next(k, g) => Some(View {
            kind: Kind::Point,
            lo: *k,
            hi: *k,
            body: g,
        }),
        Formula::Always(lo, hi, g) => Some(View {
            kind: Kind::Box,
            lo: *lo,
            hi: *hi,
            body: g,
        }),
        Formula::Eventually(lo, hi, g) => Some(View {
            kind: Kind::Diamond,
            lo: *lo,
            hi: *hi,
            body: g,
        }),
        _ => None,
    }
}

fn boxish(k: Kind) -> bool {
    matches!(k, Kind::Box | Kind::Point)
}

fn diamondish(k: Kind) -> bool {
    matches!(k, Kind::Diamond | Kind::Point)
}

fn temporal_leq(b: &View, g: &View) -> bool {
    // G[I] β ⊑ G[J] γ when J ⊆ I.
    if boxish(b.kind) && boxish(g.kind) && b.lo <= g.lo && g.hi <= b.hi && subsumes(b.body, g.body) {
        return true;
    }
    // F[I] β ⊑ F[J] γ when I ⊆ J.
    if diamondish(b.kind) && diamondish(g.kind) && g.lo <= b.lo && b.hi <= g.hi && subsumes(b.body, g.body) {
        return true;
    }
    // G[I] β ⊑ F[J] γ when the intervals meet.
    boxish(b.kind) && diamondish(g.kind) && b.lo.max(g.lo) <= b.hi.min(g.hi) && subsumes(b.body, g.body)
}

fn literal_leq(b: &Literal, g: &Literal) -> bool {
    match (b, g) {
        (Literal::Eq(x, c), Literal::NotEq(y, d)) => x == y && c != d,
        _ => b == g,
    }
}

/// `β ⊑ γ`: every finite trace satisfying `β` satisfies `γ`. Both arguments
/// are expected in NNF.
pub fn subsumes(b: &Formula, g: &Formula) -> bool {
    if b == g {
        return true;
    }
    match (b, g) {
        (Formula::False, _) | (_, Formula::True) => return true,
        (Formula::Or(bs), _) | (Formula::DOr(bs), _) => return bs.iter().all(|x| subsumes(x, g)),
        (_, Formula::And(gs)) => return gs.iter().all(|y| subsumes(b, y)),
        _ => {}
    }
    if let Formula::Or(gs) | Formula::DOr(gs) = g {
        if gs.iter().any(|y| subsumes(b, y)) {
            return true;
        }
    }
    if let Formula::And(bs) = b {
        if bs.iter().any(|x| subsumes(x, g)) {
            return true;
        }
    }
    if let (Formula::Lit(x), Formula::Lit(y)) = (b, g) {
        return literal_leq(x, y);
    }
    match (view(b), view(g)) {
        (Some(vb), Some(vg)) => temporal_leq(&vb, &vg),
        // G[0,m] β ⊑ γ when β ⊑ γ.
        (Some(vb), None) => vb.kind == Kind::Box && vb.lo == 0 && subsumes(vb.body, g),
        // β ⊑ F[0,m] γ when β ⊑ γ.
        (None, Some(vg)) => vg.kind == Kind::Diamond && vg.lo == 0 && subsumes(b, vg.body),
        (None, None) => false,
    }
}

/// Syntactic inconsistency of a set of NNF formulas: it contains `false`,
/// two members `β`, `γ` with `β ⊑ ~γ`, two different equations on one
/// variable, or every disequation of an enumerated variable.
pub fn inconsistent(phi: &[Formula], vars: &VarTable) -> bool {
    let mut flat: Vec<&Formula> = Vec::new();
    for f in phi {
        match f {
            Formula::And(cs) => flat.extend(cs.iter()),
            other => flat.push(other),
        }
    }
    if flat.iter().any(|f| **f == Formula::False) {
        return true;
    }
    let mut excluded: BTreeMap<u32, u64> = BTreeMap::new();
    for f in &flat {
        if let Formula::Lit(Literal::NotEq(v, c)) = f {
            *excluded.entry(*v).or_default() |= 1u64 << c;
        }
    }
    for (v, mask) in excluded {
        if mask.count_ones() >= vars.domain_size(v) {
            return true;
        }
    }
    let negs: Vec<Formula> = flat.iter().map(|g| negate(g)).collect();
    flat.iter()
        .any(|b| negs.iter().any(|ng| subsumes(b, ng)))
}
