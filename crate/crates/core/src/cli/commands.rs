//! Verb dispatch and certificates.

use serde_json::{json, Value};

use super::input::{Object, Workspace, SCHEMA};
use super::output as out;
use crate::cuntz::{emit_blueprint, element_to_tuple, v_of_descriptor, LIFTING_NOTE};
use crate::error::Error;
use crate::fgab::{direct_complement, is_pure, purity_witness, Subgroup};
use crate::lathom::{
    distributive_envelope_with_stats, is_distributive_element, purity_violation, validate_hom, Law, SubgroupHom,
};
use crate::oracle::{brute_distributive, brute_purity, brute_refinement, OracleBudget};
use crate::pureapprox::{pure_approximation, pure_witness};
use crate::sogmon::{
    check_monoid_axioms, check_presentation_axioms, decompose_regular, fg_submonoid_cover, presentation_of,
    retract_witness, FinMonoid, SogPresentation,
};

pub const VERBS: [&str; 11] = [
    "check-hom",
    "check-purity",
    "distr-envelope",
    "pure-approx",
    "pure-witness",
    "monoid-check",
    "monoid-decompose",
    "cover",
    "retract",
    "blueprint",
    "oracle-check",
];

/// One verb applied to named objects of a workspace.
#[derive(Clone, Debug, Default)]
pub struct Invocation {
    pub verb: String,
    pub target: Option<String>,
    pub with: Vec<String>,
    pub oracle: bool,
    pub budget: Option<usize>,
}

/// Exit status and certificate of a run.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub certificate: Value,
}

impl Outcome {
    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.certificate).expect("plain json");
        s.push('\n');
        s
    }
}

enum Failure {
    /// exit 1: the checked property fails; the value is the evidence
    Property(Value),
    /// exit 2
    Input(String, String),
}

type Verdict = Result<(bool, Value), Failure>;

fn input(kind: &str, msg: impl Into<String>) -> Failure {
    Failure::Input(kind.to_string(), msg.into())
}

fn kind_name(e: &Error) -> String {
    let dbg = format!("{e:?}");
    dbg.split(|c: char| !c.is_alphanumeric()).next().unwrap_or("Error").to_string()
}

/// Library errors that report a failed property become exit 1; the rest
/// are problems with the input.
impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotPure
            | Error::NotASummand
            | Error::NotDistributive(_)
            | Error::FamilyInvalid { .. }
            | Error::NotRegular(_)
            | Error::NotALattice(_)
            | Error::PurityFailure(_)
            | Error::StageNotInBbar { .. }
            | Error::MapNotHomomorphism { .. }
            | Error::MapNotNormalized { .. }
            | Error::Internal(_) => Failure::Property(json!({"kind": kind_name(&e), "message": e.to_string()})),
            e => Failure::Input(kind_name(&e), e.to_string()),
        }
    }
}

pub fn run_command(ws: &Workspace, inv: &Invocation) -> Outcome {
    let mut cert = serde_json::Map::new();
    cert.insert("schema".into(), json!(SCHEMA));
    cert.insert("verb".into(), json!(inv.verb));
    let result = dispatch(ws, inv, &mut cert);
    let code = match result {
        Ok((pass, value)) => {
            cert.insert("status".into(), json!(if pass { "pass" } else { "fail" }));
            cert.insert("result".into(), value);
            if pass {
                0
            } else {
                1
            }
        }
        Err(Failure::Property(evidence)) => {
            cert.insert("status".into(), json!("fail"));
            cert.insert("error".into(), evidence);
            1
        }
        Err(Failure::Input(kind, message)) => {
            cert.insert("status".into(), json!("input-error"));
            cert.insert("error".into(), json!({"kind": kind, "message": message}));
            2
        }
    };
    Outcome { code, certificate: Value::Object(cert) }
}

fn accepted_kinds(verb: &str) -> &'static [&'static str] {
    match verb {
        "check-hom" | "pure-approx" => &["hom"],
        "check-purity" => &["hom", "subgroup"],
        "distr-envelope" | "pure-witness" => &["subgroup"],
        "monoid-check" => &["monoid", "presentation"],
        "monoid-decompose" => &["monoid"],
        "cover" => &["elements"],
        "retract" => &["presentation"],
        "blueprint" => &["blueprint"],
        "oracle-check" => &["monoid", "presentation", "subgroup", "hom"],
        _ => &[],
    }
}

fn dispatch(ws: &Workspace, inv: &Invocation, cert: &mut serde_json::Map<String, Value>) -> Verdict {
    if !VERBS.contains(&inv.verb.as_str()) {
        return Err(input("UnknownVerb", format!("unknown verb {:?}; expected one of {}", inv.verb, VERBS.join(", "))));
    }
    let kinds = accepted_kinds(&inv.verb);
    let target = match &inv.target {
        Some(t) => t.clone(),
        None => {
            let candidates: Vec<&str> = ws.of_kinds(kinds).collect();
            match candidates.as_slice() {
                [one] => one.to_string(),
                [] => return Err(input("ReferenceError", format!("no {} in the input", kinds.join(" or ")))),
                _ => return Err(input("ReferenceError", format!("several candidates ({}); pass --target", candidates.join(", ")))),
            }
        }
    };
    cert.insert("target".into(), json!(target));
    if !inv.with.is_empty() {
        cert.insert("with".into(), json!(inv.with));
    }
    let obj = lookup(ws, &target)?;
    if !kinds.contains(&obj.kind()) {
        return Err(input("ReferenceError", format!("{target:?} is a {}; {} takes a {}", obj.kind(), inv.verb, kinds.join(" or "))));
    }
    let with = inv.with.iter().map(|n| lookup(ws, n)).collect::<Result<Vec<_>, _>>()?;
    let budget = match inv.budget {
        Some(b) => OracleBudget::new(b, OracleBudget::default().multiple_bound)?,
        None => OracleBudget::default(),
    };
    match inv.verb.as_str() {
        "check-hom" => check_hom(hom_of(obj)),
        "check-purity" => check_purity(obj, &with, inv.oracle, &budget),
        "distr-envelope" => envelope(sub_of(obj), &with, inv.oracle, &budget),
        "pure-approx" => approx(hom_of(obj), &with),
        "pure-witness" => witness(sub_of(obj), &with),
        "monoid-check" => monoid_check(obj, inv.oracle, &budget),
        "monoid-decompose" => decompose(obj),
        "cover" => cover(ws, obj),
        "retract" => retract(obj),
        "blueprint" => blueprint(obj),
        "oracle-check" => oracle_check(obj, &with, &budget),
        _ => unreachable!("verb list checked above"),
    }
}

fn lookup<'a>(ws: &'a Workspace, name: &str) -> Result<&'a Object, Failure> {
    ws.get(name).ok_or_else(|| input("ReferenceError", format!("no object named {name:?}")))
}

fn hom_of(o: &Object) -> &SubgroupHom {
    match o {
        Object::Hom(h) => h,
        _ => unreachable!("kind checked"),
    }
}

fn sub_of(o: &Object) -> &Subgroup {
    match o {
        Object::Subgroup(s) => s,
        _ => unreachable!("kind checked"),
    }
}

fn with_sub<'a>(with: &[&'a Object], i: usize, role: &str) -> Result<&'a Subgroup, Failure> {
    match with.get(i) {
        Some(Object::Subgroup(s)) => Ok(s),
        Some(o) => Err(input("ReferenceError", format!("{role} must be a subgroup, got a {}", o.kind()))),
        None => Err(input("MissingArgument", format!("pass {role} with --with"))),
    }
}

fn with_hom<'a>(with: &[&'a Object], i: usize) -> Result<&'a SubgroupHom, Failure> {
    match with.get(i) {
        Some(Object::Hom(h)) => Ok(h),
        Some(o) => Err(input("ReferenceError", format!("expected a hom, got a {}", o.kind()))),
        None => Err(input("MissingArgument", "pass the hom with --with")),
    }
}

fn check_hom(phi: &SubgroupHom) -> Verdict {
    let report = validate_hom(phi)?;
    let violations: Vec<Value> = report
        .violations
        .iter()
        .map(|v| {
            let law = match v.law {
                Law::Join => "join",
                Law::Meet => "meet",
            };
            json!({"law": law, "u": out::elem(v.u), "v": out::elem(v.v)})
        })
        .collect();
    Ok((report.is_valid(), json!({"hom": out::hom(phi), "violations": violations})))
}

fn impurity(a: &Subgroup, b: &Subgroup) -> Result<Value, Failure> {
    Ok(match purity_witness(a, b)? {
        Some((n, x)) => json!({"n": out::int(&n), "x": out::vector(&x)}),
        None => Value::Null,
    })
}

fn check_purity(obj: &Object, with: &[&Object], oracle: bool, budget: &OracleBudget) -> Verdict {
    match obj {
        Object::Hom(phi) => {
            let dom = phi.domain();
            let mut result = json!({"hom": out::hom(phi)});
            let verdict = purity_violation(phi)?;
            let pass = verdict.is_none();
            result["purity_condition"] = json!(pass);
            if let Some((u, v)) = verdict {
                let (i, j) = (dom.index_of(u), dom.index_of(v));
                result["witness"] = json!({
                    "pair": [i, j],
                    "lower": out::elem(u),
                    "upper": out::elem(v),
                    "impurity": impurity(phi.value(u), phi.value(v))?,
                });
            }
            if oracle {
                let mut agree = true;
                for (u, v) in dom.covers()? {
                    let fast = is_pure(phi.value(u), phi.value(v))?;
                    agree &= fast == brute_purity(phi.value(u), phi.value(v), budget)?;
                }
                result["oracle"] = json!({"agree": agree});
                return Ok((pass && agree, result));
            }
            Ok((pass, result))
        }
        Object::Subgroup(a) => {
            let b = with_sub(with, 0, "the supergroup")?;
            let pure = is_pure(a, b)?;
            let mut result = json!({"sub": out::subgroup(a), "sup": out::subgroup(b), "pure": pure});
            if pure {
                result["complement"] = out::subgroup(&direct_complement(a, b)?);
            } else {
                result["witness"] = impurity(a, b)?;
            }
            if oracle {
                let o = brute_purity(a, b, budget)?;
                result["oracle"] = json!({"pure": o, "agree": o == pure});
                return Ok((pure && o == pure, result));
            }
            Ok((pure, result))
        }
        _ => unreachable!("kind checked"),
    }
}

fn envelope(a: &Subgroup, with: &[&Object], oracle: bool, budget: &OracleBudget) -> Verdict {
    let phi = with_hom(with, 0)?;
    let env = distributive_envelope_with_stats(a, phi)?;
    let mut result = json!({
        "input": out::subgroup(a),
        "input_distributive": is_distributive_element(a, phi)?,
        "envelope": out::subgroup(&env.subgroup),
        "iterations": env.iterations,
        "distributive": is_distributive_element(&env.subgroup, phi)?,
    });
    if let Some(f) = &env.family {
        result["family"] = json!({
            "base": out::subgroup(&f.base),
            "parts": f.parts.iter().map(out::subgroup).collect::<Vec<_>>(),
        });
    }
    if oracle {
        let o = brute_distributive(&env.subgroup, phi, budget)?;
        result["oracle"] = json!({"distributive": o});
        return Ok((o, result));
    }
    Ok((true, result))
}

fn approx(phi: &SubgroupHom, with: &[&Object]) -> Verdict {
    let h = with_sub(with, 0, "the subgroup H")?;
    let r = pure_approximation(phi, h)?;
    let entries: Vec<Value> = r
        .certificate
        .iter()
        .map(|c| {
            json!({
                "u": out::elem(c.u),
                "h_cap": out::subgroup(&c.h_cap),
                "psi": out::subgroup(&c.psi),
                "phi": out::subgroup(&c.phi),
                "lower_ok": c.lower_ok,
                "upper_ok": c.upper_ok,
            })
        })
        .collect();
    Ok((
        r.holds(),
        json!({"psi": out::hom(&r.psi), "entries": entries, "psi_is_hom": r.psi_is_hom, "psi_purity": r.psi_purity}),
    ))
}

fn witness(a: &Subgroup, with: &[&Object]) -> Verdict {
    let b = with_sub(with, 0, "the subgroup B")?;
    let h = with_sub(with, 1, "the subgroup H")?;
    match pure_witness(a, b, h) {
        Ok(w) => Ok((
            true,
            json!({
                "a_prime": out::subgroup(&w.a_prime),
                "b_prime": out::subgroup(&w.b_prime),
                "complement": out::subgroup(&w.complement),
            }),
        )),
        Err(Error::NotPure) => Err(Failure::Property(json!({
            "kind": "NotPure",
            "message": Error::NotPure.to_string(),
            "witness": impurity(a, b)?,
        }))),
        Err(e) => Err(e.into()),
    }
}

fn monoid_check(obj: &Object, oracle: bool, budget: &OracleBudget) -> Verdict {
    let (report, mut result, table) = match obj {
        Object::Monoid(m) => {
            let r = check_monoid_axioms(m);
            (r, json!({"size": m.size()}), Some(m.clone()))
        }
        Object::Presentation { presentation: p, .. } => {
            let r = check_presentation_axioms(p)?;
            let laws = p.validate()?;
            let table = if oracle { Some(p.to_fin_monoid(budget.element_bound)?.0) } else { None };
            (r, json!({"presentation": out::presentation(p), "law_violations": laws.violations}), table)
        }
        _ => unreachable!("kind checked"),
    };
    result["axioms"] = out::axioms(&report);
    let mut pass = report.all_hold();
    if oracle {
        let m: &FinMonoid = table.as_ref().expect("built above");
        let w = brute_refinement(m, budget)?;
        let agree = w.is_none() == report.refinement.holds;
        result["oracle"] = json!({"refinement": w.is_none(), "agree": agree});
        pass &= agree;
    }
    Ok((pass, result))
}

fn decompose(obj: &Object) -> Verdict {
    let Object::Monoid(m) = obj else { unreachable!("kind checked") };
    let d = decompose_regular(m)?;
    let lam = d.lam();
    let label = |x: usize| m.label(x).to_string();
    let components: serde_json::Map<String, Value> = (0..lam.size())
        .map(|e| (lam.label(e).to_string(), json!(d.members(e).iter().map(|&x| label(x)).collect::<Vec<_>>())))
        .collect();
    let mut maps = Vec::new();
    for a in 0..lam.size() {
        for b in 0..lam.size() {
            if a != b && lam.leq(a, b) {
                let pairs = d
                    .members(a)
                    .iter()
                    .map(|&x| Ok(json!([label(x), label(d.natural_map(m, a, b, x)?)])))
                    .collect::<Result<Vec<_>, Error>>()?;
                maps.push(json!({"from": lam.label(a), "to": lam.label(b), "pairs": pairs}));
            }
        }
    }
    let rebuilt = match presentation_of(m) {
        Ok(p) => json!({
            "presentation": out::presentation(&p.presentation),
            "image": p.image.iter().map(|x| out::element(&p.presentation, x)).collect::<Vec<_>>(),
        }),
        Err(e) => json!({"error": {"kind": kind_name(&e), "message": e.to_string()}}),
    };
    Ok((
        true,
        json!({
            "idempotents": d.idempotents().iter().map(|&x| label(x)).collect::<Vec<_>>(),
            "semilattice": out::semilattice(lam),
            "components": components,
            "natural_maps": maps,
            "rebuilt": rebuilt,
        }),
    ))
}

fn cover(ws: &Workspace, obj: &Object) -> Verdict {
    let Object::Elements { presentation, elements } = obj else { unreachable!("kind checked") };
    let Some(Object::Presentation { presentation: p, .. }) = ws.get(presentation) else {
        return Err(input("ReferenceError", format!("{presentation:?} is not a presentation")));
    };
    let c = fg_submonoid_cover(p, elements)?;
    let n = &c.presentation;
    Ok((
        true,
        json!({
            "cover": out::presentation(n),
            "complements": c.complements.iter().map(out::subgroup).collect::<Vec<_>>(),
            "generators": c.generators.iter().map(|x| out::element(n, x)).collect::<Vec<_>>(),
            "axioms": out::axioms(&check_presentation_axioms(n)?),
        }),
    ))
}

fn retract(obj: &Object) -> Verdict {
    let Object::Presentation { presentation: p, .. } = obj else { unreachable!("kind checked") };
    let r = retract_witness(p)?;
    let sample = match p.elements(crate::sogmon::EXHAUSTIVE_BOUND) {
        Ok(all) => all,
        Err(_) => (0..p.lam().size())
            .flat_map(|e| {
                std::iter::once(p.idempotent(e))
                    .chain(p.component(e).generators().iter().map(move |g| crate::sogmon::SogElement { idem: e, grp: g.clone() }))
            })
            .collect(),
    };
    let forward = sample
        .iter()
        .map(|x| Ok(json!([out::element(p, x), out::element(&r.target, &r.forward(x)?)])))
        .collect::<Result<Vec<_>, Error>>()?;
    Ok((
        true,
        json!({
            "retract_of": out::presentation(&r.target),
            "points": r.points.iter().map(|&q| p.lam().label(q)).collect::<Vec<_>>(),
            "complements": r.complements.iter().map(out::subgroup).collect::<Vec<_>>(),
            "forward": forward,
            "exhaustive": r.exhaustive,
            "pairs_checked": r.pairs_checked,
        }),
    ))
}

fn block_json(b: &crate::sogmon::BlockSpec) -> Value {
    let mut v = match b.kind {
        crate::sogmon::BlockKind::Cyclic(n) => json!({"cyclic": n}),
        crate::sogmon::BlockKind::Infinite => json!({"infinite": true}),
    };
    if let Some(u) = b.normalized_unit() {
        v["unit"] = out::int(&u);
    }
    v
}

fn tuple_json(t: &[Option<crate::fgab::Int>]) -> Value {
    Value::Array(t.iter().map(|x| x.as_ref().map_or(Value::Null, out::int)).collect())
}

fn blueprint(obj: &Object) -> Verdict {
    let Object::Blueprint { stages, maps, unital } = obj else { unreachable!("kind checked") };
    let b = emit_blueprint(stages, maps, *unital)?;
    let unit_free = b.forget_units()?;
    let stage_json: Vec<Value> = b
        .stages
        .iter()
        .map(|s| {
            let v = v_of_descriptor(&s.algebra)?;
            let unit = v.unit.as_ref().map(|u| tuple_json(&element_to_tuple(&v, u)));
            Ok(json!({
                "name": s.algebra.to_string(),
                "algebra": serde_json::to_value(&s.algebra).expect("plain enum"),
                "blocks": s.blocks.iter().map(block_json).collect::<Vec<_>>(),
                "unit_class": unit,
            }))
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let map_json: Vec<Value> = b
        .maps
        .iter()
        .zip(&b.certificates)
        .map(|(m, c)| {
            json!({
                "zero": tuple_json(&m.zero),
                "generators": m.generators.iter().map(|t| tuple_json(t)).collect::<Vec<_>>(),
                "pairs_checked": c.pairs_checked,
                "exhaustive": c.exhaustive,
                "normalized": c.normalized,
            })
        })
        .collect();
    // the realized stage carries the same V-data as its blocks
    for s in &b.stages {
        let v = v_of_descriptor(&s.algebra)?;
        let expected: Vec<_> = s.blocks.iter().map(|x| x.kind).collect();
        if v.blocks.iter().map(|x| x.kind).collect::<Vec<_>>() != expected {
            return Err(Error::Internal(format!("{} does not realize its blocks", s.algebra)).into());
        }
        if let (Some(u), true) = (&v.unit, *unital) {
            let original = crate::sogmon::block_monoid(&s.blocks)?.unit;
            if original.as_ref() != Some(u) {
                return Err(Error::Internal(format!("{} has the wrong unit class", s.algebra)).into());
            }
        }
    }
    Ok((
        true,
        json!({
            "stages": stage_json,
            "maps": map_json,
            "unital": b.unital,
            "stationary_tail": b.has_stationary_tail(),
            "unit_free_stages": unit_free.stage_names(),
            "lifting": LIFTING_NOTE,
        }),
    ))
}

fn oracle_check(obj: &Object, with: &[&Object], budget: &OracleBudget) -> Verdict {
    let mut checks = Vec::new();
    let mut push = |name: String, fast: bool, oracle: bool| checks.push(json!({"check": name, "fast": fast, "oracle": oracle}));
    match obj {
        Object::Monoid(m) => {
            let r = check_monoid_axioms(m);
            push("refinement".into(), r.refinement.holds, brute_refinement(m, budget)?.is_none());
        }
        Object::Presentation { presentation: p, .. } => presentation_oracle(p, budget, &mut push)?,
        Object::Subgroup(a) => match with.first() {
            Some(Object::Subgroup(b)) => push("purity".into(), is_pure(a, b)?, brute_purity(a, b, budget)?),
            Some(Object::Hom(phi)) => {
                push("distributive".into(), is_distributive_element(a, phi)?, brute_distributive(a, phi, budget)?)
            }
            _ => return Err(input("MissingArgument", "pass a subgroup or a hom with --with")),
        },
        Object::Hom(phi) => {
            let dom = phi.domain();
            let els = dom.elements()?;
            for &u in els {
                for &v in els {
                    if u != v && u.leq(v) {
                        let (a, b) = (phi.value(u), phi.value(v));
                        if a.is_subgroup_of(b)? {
                            push(format!("purity {} <= {}", u.key(), v.key()), is_pure(a, b)?, brute_purity(a, b, budget)?);
                        }
                    }
                }
            }
        }
        _ => unreachable!("kind checked"),
    }
    let agree = checks.iter().all(|c| c["fast"] == c["oracle"]);
    Ok((agree, json!({"checks": checks, "agree": agree})))
}

fn presentation_oracle(p: &SogPresentation, budget: &OracleBudget, push: &mut impl FnMut(String, bool, bool)) -> Result<(), Failure> {
    let (m, _) = p.to_fin_monoid(budget.element_bound)?;
    let fast = check_presentation_axioms(p)?;
    let table = check_monoid_axioms(&m);
    for ((name, a), (_, b)) in fast.entries().into_iter().zip(table.entries()) {
        push(name.to_string(), a.holds, b.holds);
    }
    push("refinement (brute force)".into(), fast.refinement.holds, brute_refinement(&m, budget)?.is_none());
    Ok(())
}
