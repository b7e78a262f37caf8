//! JSON export of parsed objects: every node is `{kind, children}` or `{kind, terms}`.

use serde_json::{json, Value};

use super::{Formula, RationalPath, RegularMap, SemialgebraicSet};
use crate::polyring::{rat_to_string, LaurentPoly, MPoly};

fn poly_node(p: &MPoly, role: &str) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .rev()
        .map(|(m, c)| json!({"coeff": rat_to_string(c), "exponents": m.0}))
        .collect();
    json!({"kind": "poly", "role": role, "terms": terms})
}

fn laurent_node(p: &LaurentPoly) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .rev()
        .map(|(k, c)| json!({"coeff": rat_to_string(c), "exponent": k}))
        .collect();
    json!({"kind": "laurent", "terms": terms})
}

pub fn map_ast(f: &RegularMap) -> Value {
    let mut children = vec![poly_node(f.f0(), "denominator")];
    children.extend(
        f.fs()
            .iter()
            .enumerate()
            .map(|(i, p)| poly_node(p, &format!("f{}", i + 1))),
    );
    json!({"kind": "map", "n": f.n(), "m": f.m(), "children": children})
}

pub fn path_ast(p: &RationalPath) -> Value {
    json!({
        "kind": "path",
        "i0": p.i0() + 1,
        "children": p.components().iter().map(laurent_node).collect::<Vec<_>>(),
    })
}

fn formula_node(f: &Formula) -> Value {
    match f {
        Formula::Atom(a) => {
            let mut node = poly_node(&a.poly, "lhs");
            node["kind"] = json!("atom");
            node["relation"] = json!(a.rel.symbol());
            node
        }
        Formula::And(cs) => json!({"kind": "and", "children": cs.iter().map(formula_node).collect::<Vec<_>>()}),
        Formula::Or(cs) => json!({"kind": "or", "children": cs.iter().map(formula_node).collect::<Vec<_>>()}),
    }
}

pub fn set_ast(s: &SemialgebraicSet) -> Value {
    json!({"kind": "set", "n": s.n, "children": [formula_node(&s.formula)]})
}
