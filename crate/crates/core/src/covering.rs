//! Environment coverings of a TNF: which moves, taken together, answer every
//! possible environment valuation.

use crate::error::BudgetError;
use crate::formula::{Literal, ValSpace, Valuation, VarId, VarTable};
use crate::tnf::{Cube, TnfFormula};
use fixedbitset::FixedBitSet;
use std::collections::HashSet;

/// All valuations over `vars` that agree with every literal of `lits`
/// mentioning a variable of `vars`. Other variables are 0 in the output.
pub fn val_of(lits: &[Literal], vars: &[VarId], table: &VarTable) -> Vec<Valuation> {
    let space = ValSpace::new(table, vars);
    space
        .iter()
        .filter(|v| lits.iter().filter(|l| vars.contains(&l.var())).all(|l| v.satisfies(l)))
        .collect()
}

/// The environment projection of each move, as a bit set over the indices
/// of the environment valuation space.
#[derive(Clone, Debug)]
pub struct EnvCells {
    pub space: ValSpace,
    pub cells: Vec<FixedBitSet>,
}

impl EnvCells {
    pub fn env_size(&self) -> usize {
        self.space.size()
    }
}

pub fn env_cells_of(cubes: &[&Cube], vars: &VarTable, max_env_space: u64) -> Result<EnvCells, BudgetError> {
    let space = ValSpace::env(vars);
    match space.size_checked() {
        Some(n) if n <= max_env_space => {}
        _ => return Err(BudgetError::EnvSpace(max_env_space)),
    }
    let n = space.size();
    let env_vars = space.vars().to_vec();
    let mut cells = vec![FixedBitSet::with_capacity(n); cubes.len()];
    for i in 0..n {
        let v = space.valuation(i);
        for (k, c) in cubes.iter().enumerate() {
            if env_vars.iter().all(|&x| c.mask(x) & (1u64 << v.get(x)) != 0) {
                cells[k].insert(i);
            }
        }
    }
    Ok(EnvCells { space, cells })
}

pub fn env_cells(t: &TnfFormula, vars: &VarTable, max_env_space: u64) -> Result<EnvCells, BudgetError> {
    let cubes: Vec<&Cube> = t.moves.iter().map(|m| &m.cube).collect();
    env_cells_of(&cubes, vars, max_env_space)
}

fn union_covers(cells: &[FixedBitSet], chosen: &[usize], n: usize) -> bool {
    let mut acc = FixedBitSet::with_capacity(n);
    for &i in chosen {
        acc.union_with(&cells[i]);
    }
    acc.count_ones(..) == n
}

/// Whether the moves together cover every environment valuation.
pub fn is_x_covering(t: &TnfFormula, vars: &VarTable) -> bool {
    let cells = env_cells(t, vars, u64::MAX).expect("unbounded env space");
    let all: Vec<usize> = (0..t.moves.len()).collect();
    union_covers(&cells.cells, &all, cells.env_size())
}

/// Every minimal covering (as a sorted index list) of the universe `0..n`
/// by the sets `cells[i]` for `i` in `candidates`. Fails when more than
/// `limit` coverings exist.
pub fn minimal_coverings_of_cells(
    cells: &[FixedBitSet],
    n: usize,
    candidates: &[usize],
    limit: usize,
) -> Result<Vec<Vec<usize>>, BudgetError> {
    let mut found: Vec<Vec<usize>> = Vec::new();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut chosen = Vec::new();
    let covered = FixedBitSet::with_capacity(n);
    search(cells, n, candidates, limit, &mut chosen, &covered, &mut found, &mut seen)?;
    Ok(found)
}

fn has_private_elements(cells: &[FixedBitSet], chosen: &[usize], n: usize) -> bool {
    chosen.iter().enumerate().all(|(k, &i)| {
        let mut others = FixedBitSet::with_capacity(n);
        for (j, &o) in chosen.iter().enumerate() {
            if j != k {
                others.union_with(&cells[o]);
            }
        }
        cells[i].difference(&others).next().is_some()
    })
}

#[allow(clippy::too_many_arguments)]
fn search(
    cells: &[FixedBitSet],
    n: usize,
    candidates: &[usize],
    limit: usize,
    chosen: &mut Vec<usize>,
    covered: &FixedBitSet,
    found: &mut Vec<Vec<usize>>,
    seen: &mut HashSet<Vec<usize>>,
) -> Result<(), BudgetError> {
    let Some(u) = (0..n).find(|i| !covered.contains(*i)) else {
        let mut set = chosen.clone();
        set.sort_unstable();
        if seen.insert(set.clone()) {
            if found.len() == limit {
                return Err(BudgetError::Coverings(limit));
            }
            found.push(set);
        }
        return Ok(());
    };
    for &m in candidates {
        if !cells[m].contains(u) {
            continue;
        }
        chosen.push(m);
        if has_private_elements(cells, chosen, n) {
            let mut next = covered.clone();
            next.union_with(&cells[m]);
            search(cells, n, candidates, limit, chosen, &next, found, seen)?;
        }
        chosen.pop();
    }
    Ok(())
}

/// All minimal environment coverings of `t`, in deterministic order.
pub fn minimal_x_coverings(t: &TnfFormula, vars: &VarTable, limit: usize) -> Result<Vec<Vec<usize>>, BudgetError> {
    let cells = env_cells(t, vars, u64::MAX)?;
    let all: Vec<usize> = (0..t.moves.len()).collect();
    minimal_coverings_of_cells(&cells.cells, cells.env_size(), &all, limit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{Domain, Owner, VarDecl};

    #[test]
    fn val_of_examples() {
        let mut t = VarTable::new();
        let p = t.bool_var("p_e", Owner::Env);
        let a = t.bool_var("a", Owner::Sys);
        let m = t
            .declare(VarDecl {
                name: "mode".into(),
                owner: Owner::Env,
                domain: Domain::Enum(vec!["A".into(), "B".into(), "C".into()]),
            })
            .unwrap();
        assert_eq!(val_of(&[Literal::Pos(p)], &[p], &t).len(), 1);
        assert_eq!(val_of(&[Literal::Neg(a)], &[p], &t).len(), 2);
        let vs = val_of(&[Literal::NotEq(m, 0)], &[m], &t);
        let values: Vec<u32> = vs.iter().map(|v| v.get(m)).collect();
        assert_eq!(values, vec![1, 2]);
    }

    #[test]
    fn single_unconstrained_move_covers() {
        let mut t = VarTable::new();
        t.bool_var("p_e", Owner::Env);
        let c = t.bool_var("c", Owner::Sys);
        let tnf = TnfFormula {
            moves: vec![crate::tnf::SeparatedMove {
                cube: Cube::from_literal(&Literal::Pos(c), &t),
                future: crate::tnf::StrictFuture::top(),
            }],
        };
        assert!(is_x_covering(&tnf, &t));
        assert_eq!(minimal_x_coverings(&tnf, &t, 64).unwrap(), vec![vec![0]]);
    }

    #[test]
    fn empty_tnf_is_not_covering() {
        let mut t = VarTable::new();
        t.bool_var("p_e", Owner::Env);
        let tnf = TnfFormula { moves: vec![] };
        assert!(!is_x_covering(&tnf, &t));
        assert!(minimal_x_coverings(&tnf, &t, 64).unwrap().is_empty());
    }
}
