//! JSON encodings used in certificates.

use serde_json::{json, Value};

use crate::dlat::{FinDistLattice, FinSemilattice, LatElem};
use crate::fgab::{FgAbGroup, Int, Subgroup};
use crate::lathom::SubgroupHom;
use crate::sogmon::{AxiomReport, SogElement, SogPresentation};

pub fn int(x: &Int) -> Value {
    match i64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

pub fn vector(v: &[Int]) -> Value {
    Value::Array(v.iter().map(int).collect())
}

pub fn group(g: &FgAbGroup) -> Value {
    json!({
        "rank": g.rank(),
        "relations": g.relations().columns().iter().map(|c| vector(c)).collect::<Vec<_>>(),
        "invariants": vector(&g.invariant_factors()),
    })
}

/// Canonical generators plus the isomorphism type.
pub fn subgroup(s: &Subgroup) -> Value {
    json!({
        "generators": s.canonical_generators().iter().map(|c| vector(c)).collect::<Vec<_>>(),
        "invariants": vector(&s.invariants()),
    })
}

pub fn elem(u: LatElem) -> Value {
    json!(u.key())
}

pub fn lattice(l: &FinDistLattice) -> Value {
    let n = l.num_join_irreducibles();
    let less: Vec<Value> = (0..n)
        .flat_map(|q| (0..n).filter(move |&p| p != q && l.poset().leq(q, p)).map(move |p| json!([q, p])))
        .collect();
    json!({"points": n, "less": less})
}

/// Values at every lattice element, keyed by element.
pub fn hom(phi: &SubgroupHom) -> Value {
    let els = phi.domain().elements().expect("materialized");
    let values: serde_json::Map<String, Value> =
        els.iter().zip(phi.table()).map(|(u, s)| (u.key(), subgroup(s))).collect();
    json!({"lattice": lattice(phi.domain()), "values": values})
}

pub fn semilattice(s: &FinSemilattice) -> Value {
    json!({"labels": s.labels(), "join": s.table(), "zero": s.zero()})
}

pub fn element(p: &SogPresentation, x: &SogElement) -> Value {
    json!({"idem": p.lam().label(x.idem), "grp": vector(&x.grp)})
}

pub fn presentation(p: &SogPresentation) -> Value {
    let assignment: serde_json::Map<String, Value> =
        (0..p.lam().size()).map(|e| (p.lam().label(e).to_string(), subgroup(p.component(e)))).collect();
    json!({
        "semilattice": semilattice(p.lam()),
        "group": group(p.group()),
        "assignment": assignment,
    })
}

pub fn axioms(r: &AxiomReport) -> Value {
    let m: serde_json::Map<String, Value> = r
        .entries()
        .iter()
        .map(|(name, c)| (name.to_string(), json!({"holds": c.holds, "witness": c.witness})))
        .collect();
    Value::Object(m)
}
