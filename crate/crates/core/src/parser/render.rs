use super::SpecFile;
use crate::formula::{Domain, Formula, Literal, Owner, VarTable};

// Binding strength of each syntactic level, weakest first.
const IFF: u8 = 1;
const IMPLIES: u8 = 2;
const OR: u8 = 3;
const AND: u8 = 4;
const PREFIX: u8 = 5;
const ATOM: u8 = 6;

fn level(f: &Formula) -> u8 {
    match f {
        Formula::Iff(..) => IFF,
        Formula::Implies(..) => IMPLIES,
        Formula::Or(_) | Formula::DOr(_) => OR,
        Formula::And(_) => AND,
        Formula::Not(_) | Formula::Next(..) | Formula::Always(..) | Formula::Eventually(..) => PREFIX,
        Formula::Lit(Literal::Neg(_)) => PREFIX,
        Formula::Lit(_) | Formula::True | Formula::False => ATOM,
    }
}

/// Surface syntax for `f`; `parse_formula(render(f))` gives back `f` for any
/// canonical formula.
pub fn render(f: &Formula, vars: &VarTable) -> String {
    let mut out = String::new();
    write(f, vars, &mut out);
    out
}

fn write_at(f: &Formula, vars: &VarTable, min: u8, out: &mut String) {
    if level(f) < min {
        out.push('(');
        write(f, vars, out);
        out.push(')');
    } else {
        write(f, vars, out);
    }
}

fn write(f: &Formula, vars: &VarTable, out: &mut String) {
    match f {
        Formula::True => out.push_str("true"),
        Formula::False => out.push_str("false"),
        Formula::Lit(l) => {
            let name = &vars.get(l.var()).name;
            match *l {
                Literal::Pos(_) => out.push_str(name),
                Literal::Neg(_) => {
                    out.push('!');
                    out.push_str(name);
                }
                Literal::Eq(v, c) => {
                    out.push_str(&format!("{name} = {}", vars.constant_name(v, c)));
                }
                Literal::NotEq(v, c) => {
                    out.push_str(&format!("{name} != {}", vars.constant_name(v, c)));
                }
            }
        }
        Formula::Not(g) => {
            out.push('!');
            write_at(g, vars, PREFIX, out);
        }
        Formula::Next(k, g) => {
            for _ in 0..*k {
                out.push_str("X ");
            }
            write_at(g, vars, PREFIX, out);
        }
        Formula::Always(lo, hi, g) => {
            out.push_str(&format!("G[{lo},{hi}] "));
            write_at(g, vars, PREFIX, out);
        }
        Formula::Eventually(lo, hi, g) => {
            out.push_str(&format!("F[{lo},{hi}] "));
            write_at(g, vars, PREFIX, out);
        }
        Formula::And(cs) => join(cs, " & ", PREFIX, vars, out),
        Formula::Or(cs) => join(cs, " | ", AND, vars, out),
        Formula::DOr(cs) => join(cs, " || ", AND, vars, out),
        Formula::Implies(a, b) => {
            write_at(a, vars, OR, out);
            out.push_str(" -> ");
            write_at(b, vars, IMPLIES, out);
        }
        Formula::Iff(a, b) => {
            write_at(a, vars, IMPLIES, out);
            out.push_str(" <-> ");
            write_at(b, vars, IFF, out);
        }
    }
}

fn join(cs: &[Formula], sep: &str, min: u8, vars: &VarTable, out: &mut String) {
    for (i, c) in cs.iter().enumerate() {
        if i > 0 {
            out.push_str(sep);
        }
        write_at(c, vars, min, out);
    }
}

/// Full specification text, declarations first.
pub fn render_spec(spec: &SpecFile) -> String {
    let mut out = String::new();
    for (_, d) in spec.vars.iter() {
        let owner = match d.owner {
            Owner::Env => "env",
            Owner::Sys => "sys",
        };
        match &d.domain {
            Domain::Bool => out.push_str(&format!("{owner} {};\n", d.name)),
            Domain::Enum(cs) => out.push_str(&format!("{owner} {} : {{{}}};\n", d.name, cs.join(", "))),
        }
    }
    out.push_str(&format!("init: {};\n", render(&spec.initial, &spec.vars)));
    out.push_str(&format!("safety: {};\n", render(&spec.safety, &spec.vars)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::{parse, parse_formula};

    #[test]
    fn constants() {
        let t = VarTable::new();
        assert_eq!(render(&Formula::True, &t), "true");
        assert_eq!(render(&Formula::False, &t), "false");
    }

    #[test]
    fn round_trip_spec_text() {
        let text = "env p_e; sys c, a;\ninit: a;\nsafety: (a -> c) & (X p_e -> F[1,2] a) & (X !p_e -> F[1,10] !c);";
        let spec = parse(text).unwrap();
        let again = parse(&render_spec(&spec)).unwrap();
        assert_eq!(spec, again);
    }

    #[test]
    fn nested_prefix_and_dor() {
        let spec = parse("env p; sys s; safety: true;").unwrap();
        let f = parse_formula("X (X p & X s || X !p & X !s)", &spec.vars).unwrap();
        let back = parse_formula(&render(&f, &spec.vars), &spec.vars).unwrap();
        assert_eq!(f, back);
    }
}
