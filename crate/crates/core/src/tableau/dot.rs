use super::{LeafStatus, NodeKind, Role, Tableau, Verdict};
use crate::parser::render;

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Graphviz rendering. Children of AND nodes get an `∧` arc annotation.
/// Loop leaves point back to their target with a dashed edge; failure
/// leaves are marked `#`.
pub fn to_dot(t: &Tableau) -> String {
    let mut out = String::from("digraph tableau {\n  node [shape=box, fontname=\"monospace\"];\n");
    for n in &t.nodes {
        let mut text: Vec<String> = n.label.formulas.iter().map(|f| render(f, &t.vars)).collect();
        if n.role != super::Role::Dead {
            text.push(n.label.chi.to_string());
        }
        let mut label = format!("n{}: {{{}}}", n.id, text.join(", "));
        match n.kind {
            NodeKind::Leaf(LeafStatus::Failure) => label.push_str("  #"),
            NodeKind::Leaf(LeafStatus::Success) => label.push_str("  ✓"),
            _ => {}
        }
        if let Some(r) = n.reuse_of {
            label.push_str(&format!("  = n{r}"));
        }
        let style = match (n.role, n.verdict) {
            (Role::State, Verdict::Open) => ", style=bold",
            (_, Verdict::Closed) => ", color=gray",
            _ => "",
        };
        out.push_str(&format!("  n{} [label=\"{}\"{}];\n", n.id, escape(&label), style));
    }
    for n in &t.nodes {
        for &c in &n.children {
            let child = &t.nodes[c];
            let mut attrs = vec![format!("label=\"{}\"", escape(&child.rule.to_string()))];
            if n.kind == NodeKind::AndBranch {
                attrs.push("arrowtail=none, taillabel=\"∧\"".to_string());
            }
            out.push_str(&format!("  n{} -> n{} [{}];\n", n.id, c, attrs.join(", ")));
        }
        if let Some(target) = n.loop_target {
            out.push_str(&format!("  n{} -> n{} [style=dashed, constraint=false];\n", n.id, target));
        }
        if let Some(target) = n.reuse_of {
            out.push_str(&format!("  n{} -> n{} [style=dotted, constraint=false];\n", n.id, target));
        }
    }
    out.push_str("}\n");
    out
}
