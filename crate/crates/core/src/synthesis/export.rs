use super::{MealyMachine, Transition};
use crate::error::{Error, Result};
use crate::formula::{Domain, ValSpace, Valuation, VarId, VarTable};
use serde::{Deserialize, Serialize};
use serde_json::Value as Json;
use std::collections::{BTreeMap, HashMap};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransitionJson {
    pub from: String,
    pub env: BTreeMap<String, Json>,
    pub sys: BTreeMap<String, Json>,
    pub to: String,
}

/// On-disk strategy format shared by the tableau and the game oracle.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StrategyJson {
    pub states: Vec<String>,
    pub initial: String,
    pub transitions: Vec<TransitionJson>,
}

fn value_json(vars: &VarTable, v: VarId, value: u32) -> Json {
    match vars.get(v).domain {
        Domain::Bool => Json::Bool(value == 1),
        Domain::Enum(_) => Json::String(vars.constant_name(v, value).to_string()),
    }
}

fn assignment(vars: &VarTable, space: &ValSpace, val: &Valuation) -> BTreeMap<String, Json> {
    space
        .vars()
        .iter()
        .map(|&v| (vars.get(v).name.clone(), value_json(vars, v, val.get(v))))
        .collect()
}

pub fn machine_to_json(m: &MealyMachine) -> StrategyJson {
    let env = m.env_space();
    let sys = m.sys_space();
    let mut transitions = Vec::new();
    for s in 0..m.num_states() {
        for (x, t) in m.table[s].iter().enumerate() {
            if let Some(t) = t {
                transitions.push(TransitionJson {
                    from: m.names[s].clone(),
                    env: assignment(&m.vars, &env, &env.valuation(x)),
                    sys: assignment(&m.vars, &sys, &sys.valuation(t.sys)),
                    to: m.names[t.to].clone(),
                });
            }
        }
    }
    StrategyJson {
        states: m.names.clone(),
        initial: m.names[m.initial].clone(),
        transitions,
    }
}

fn parse_assignment(vars: &VarTable, space: &ValSpace, map: &BTreeMap<String, Json>, what: &str) -> Result<usize> {
    let mut val = Valuation::zeros(vars);
    for name in map.keys() {
        if !space.vars().iter().any(|&v| &vars.get(v).name == name) {
            return Err(Error::Strategy(format!("unknown {what} variable `{name}`")));
        }
    }
    for &v in space.vars() {
        let decl = vars.get(v);
        let raw = map
            .get(&decl.name)
            .ok_or_else(|| Error::Strategy(format!("missing {what} variable `{}`", decl.name)))?;
        let value = match (&decl.domain, raw) {
            (Domain::Bool, Json::Bool(b)) => u32::from(*b),
            (Domain::Enum(_), Json::String(s)) => vars
                .constant_index(v, s)
                .ok_or_else(|| Error::Strategy(format!("`{s}` is not a value of `{}`", decl.name)))?,
            _ => return Err(Error::Strategy(format!("ill-typed value for `{}`", decl.name))),
        };
        val.set(v, value);
    }
    Ok(space.index_of(&val))
}

/// Reads a strategy written by [`machine_to_json`] against the variables
/// of a specification.
pub fn machine_from_json(text: &str, vars: &VarTable) -> Result<MealyMachine> {
    let s: StrategyJson = serde_json::from_str(text)?;
    let mut index = HashMap::new();
    for (i, n) in s.states.iter().enumerate() {
        if index.insert(n.clone(), i).is_some() {
            return Err(Error::Strategy(format!("duplicate state `{n}`")));
        }
    }
    let lookup = |n: &str| {
        index
            .get(n)
            .copied()
            .ok_or_else(|| Error::Strategy(format!("unknown state `{n}`")))
    };
    let env = ValSpace::env(vars);
    let sys = ValSpace::sys(vars);
    let mut table = vec![vec![None; env.size()]; s.states.len()];
    for t in &s.transitions {
        let from = lookup(&t.from)?;
        let to = lookup(&t.to)?;
        let x = parse_assignment(vars, &env, &t.env, "environment")?;
        let y = parse_assignment(vars, &sys, &t.sys, "system")?;
        if table[from][x].is_some() {
            return Err(Error::Strategy(format!("state `{}` has two moves for one input", t.from)));
        }
        table[from][x] = Some(Transition { sys: y, to });
    }
    Ok(MealyMachine {
        vars: vars.clone(),
        names: s.states.clone(),
        initial: lookup(&s.initial)?,
        table,
    })
}

fn literal_text(vars: &VarTable, space: &ValSpace, val: &Valuation) -> String {
    let parts: Vec<String> = space
        .vars()
        .iter()
        .map(|&v| {
            let d = vars.get(v);
            match d.domain {
                Domain::Bool if val.get(v) == 1 => d.name.clone(),
                Domain::Bool => format!("!{}", d.name),
                Domain::Enum(_) => format!("{}={}", d.name, vars.constant_name(v, val.get(v))),
            }
        })
        .collect();
    if parts.is_empty() {
        "true".into()
    } else {
        parts.join(" ")
    }
}

/// Graphviz rendering with one `env/sys` labelled edge per input.
pub fn machine_to_dot(m: &MealyMachine) -> String {
    let env = m.env_space();
    let sys = m.sys_space();
    let mut out = String::from("digraph strategy {\n  rankdir=LR;\n  node [shape=circle];\n");
    out.push_str(&format!("  init [shape=point];\n  init -> \"{}\";\n", m.names[m.initial]));
    for name in &m.names {
        out.push_str(&format!("  \"{name}\";\n"));
    }
    for s in 0..m.num_states() {
        for (x, t) in m.table[s].iter().enumerate() {
            if let Some(t) = t {
                out.push_str(&format!(
                    "  \"{}\" -> \"{}\" [label=\"{}/{}\"];\n",
                    m.names[s],
                    m.names[t.to],
                    literal_text(&m.vars, &env, &env.valuation(x)),
                    literal_text(&m.vars, &sys, &sys.valuation(t.sys)),
                ));
            }
        }
    }
    out.push_str("}\n");
    out
}
