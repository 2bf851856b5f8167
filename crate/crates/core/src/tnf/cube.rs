use crate::formula::{Domain, Formula, Literal, Valuation, VarTable};

/// A conjunction of literals stored as one bitmask of allowed values per
/// variable. An all-ones mask (over the variable's domain) means the
/// variable is unconstrained.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cube {
    masks: Vec<u64>,
}

fn full_mask(size: u32) -> u64 {
    if size >= 64 {
        u64::MAX
    } else {
        (1u64 << size) - 1
    }
}

impl Cube {
    pub fn full(vars: &VarTable) -> Cube {
        Cube {
            masks: vars.iter().map(|(_, d)| full_mask(d.domain.size())).collect(),
        }
    }

    pub fn from_literal(l: &Literal, vars: &VarTable) -> Cube {
        let mut c = Cube::full(vars);
        let v = l.var() as usize;
        c.masks[v] = match *l {
            Literal::Pos(_) => 0b10,
            Literal::Neg(_) => 0b01,
            Literal::Eq(_, k) => 1u64 << k,
            Literal::NotEq(_, k) => c.masks[v] & !(1u64 << k),
        };
        c
    }

    pub fn from_literals<'a, I: IntoIterator<Item = &'a Literal>>(lits: I, vars: &VarTable) -> Option<Cube> {
        let mut c = Cube::full(vars);
        for l in lits {
            c = c.intersect(&Cube::from_literal(l, vars))?;
        }
        Some(c)
    }

    pub fn mask(&self, v: u32) -> u64 {
        self.masks[v as usize]
    }

    /// Intersection, or `None` when some variable has no value left.
    pub fn intersect(&self, other: &Cube) -> Option<Cube> {
        let masks: Vec<u64> = self.masks.iter().zip(&other.masks).map(|(a, b)| a & b).collect();
        if masks.contains(&0) {
            None
        } else {
            Some(Cube { masks })
        }
    }

    /// Two cubes clash when no valuation satisfies both.
    pub fn clashes(&self, other: &Cube) -> bool {
        self.masks.iter().zip(&other.masks).any(|(a, b)| a & b == 0)
    }

    pub fn is_subset(&self, other: &Cube) -> bool {
        self.masks.iter().zip(&other.masks).all(|(a, b)| a & !b == 0)
    }

    /// `self \ other` as pairwise clashing cubes.
    pub fn difference(&self, other: &Cube) -> Vec<Cube> {
        if self.clashes(other) {
            return vec![self.clone()];
        }
        let mut out = Vec::new();
        let mut rest = self.clone();
        for i in 0..self.masks.len() {
            let outside = rest.masks[i] & !other.masks[i];
            if outside != 0 {
                let mut piece = rest.clone();
                piece.masks[i] = outside;
                out.push(piece);
                rest.masks[i] &= other.masks[i];
            }
        }
        out
    }

    /// If the cubes differ in exactly one variable, their union as a cube.
    pub fn merge_adjacent(&self, other: &Cube) -> Option<Cube> {
        let mut diff = None;
        for i in 0..self.masks.len() {
            if self.masks[i] != other.masks[i] {
                if diff.is_some() {
                    return None;
                }
                diff = Some(i);
            }
        }
        let i = diff?;
        let mut out = self.clone();
        out.masks[i] |= other.masks[i];
        Some(out)
    }

    pub fn allows(&self, val: &Valuation) -> bool {
        self.masks
            .iter()
            .enumerate()
            .all(|(v, m)| m & (1u64 << val.0[v]) != 0)
    }

    /// Literal set denoting this cube: `p`/`!p` for booleans, `x = c` for a
    /// single allowed constant, otherwise one `x != c` per excluded constant.
    pub fn literals(&self, vars: &VarTable) -> Vec<Literal> {
        let mut out = Vec::new();
        for (v, d) in vars.iter() {
            let m = self.masks[v as usize];
            let size = d.domain.size();
            if m == full_mask(size) {
                continue;
            }
            match d.domain {
                Domain::Bool => out.push(if m == 0b10 { Literal::Pos(v) } else { Literal::Neg(v) }),
                Domain::Enum(_) => {
                    if m.count_ones() == 1 {
                        out.push(Literal::Eq(v, m.trailing_zeros()));
                    } else {
                        for c in 0..size {
                            if m & (1u64 << c) == 0 {
                                out.push(Literal::NotEq(v, c));
                            }
                        }
                    }
                }
            }
        }
        out
    }

    pub fn literal_count(&self, vars: &VarTable) -> usize {
        self.literals(vars).len()
    }

    pub fn to_formula(&self, vars: &VarTable) -> Formula {
        Formula::and(self.literals(vars).into_iter().map(Formula::lit))
    }

    /// Smallest allowed value of `v`.
    pub fn first_value(&self, v: u32) -> u32 {
        self.masks[v as usize].trailing_zeros()
    }
}
