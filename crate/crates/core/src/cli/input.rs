//! The `sogkit/1` input schema and the workspace built from it.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::Deserialize;
use serde_json::Value;

use crate::cuntz::{BlockTuple, StageMap};
use crate::dlat::{FinDistLattice, FinPoset, FinSemilattice, LatElem};
use crate::fgab::{FgAbGroup, Int, IntMatrix, Subgroup};
use crate::lathom::SubgroupHom;
use crate::sogmon::{block_monoid, BlockSpec, FinMonoid, SogElement, SogPresentation};

pub const SCHEMA: &str = "sogkit/1";

/// What went wrong while loading, with every message collected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputError {
    pub kind: InputErrorKind,
    pub messages: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InputErrorKind {
    ParseError,
    ValidationError,
    ReferenceError,
}

impl InputErrorKind {
    pub fn name(self) -> &'static str {
        match self {
            InputErrorKind::ParseError => "ParseError",
            InputErrorKind::ValidationError => "ValidationError",
            InputErrorKind::ReferenceError => "ReferenceError",
        }
    }
}

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.kind.name(), self.messages.join("; "))
    }
}

impl InputError {
    fn one(kind: InputErrorKind, msg: impl Into<String>) -> Self {
        InputError { kind, messages: vec![msg.into()] }
    }
}

/// Integers may be JSON numbers or decimal strings.
#[derive(Clone, Debug)]
struct IntLit(Int);

impl<'de> Deserialize<'de> for IntLit {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        match Value::deserialize(d)? {
            Value::Number(n) => match n.as_i64() {
                Some(v) => Ok(IntLit(Int::from(v))),
                None => n.to_string().parse().map(IntLit).map_err(|_| D::Error::custom(format!("{n} is not an integer"))),
            },
            Value::String(s) => s.trim().parse().map(IntLit).map_err(|_| D::Error::custom(format!("{s:?} is not an integer"))),
            v => Err(D::Error::custom(format!("expected an integer, got {v}"))),
        }
    }
}

fn ints(v: &[IntLit]) -> Vec<Int> {
    v.iter().map(|x| x.0.clone()).collect()
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    schema: String,
    #[serde(default)]
    objects: Vec<RawObject>,
}

#[derive(Deserialize)]
struct RawObject {
    name: String,
    #[serde(flatten)]
    body: RawBody,
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
enum RawBody {
    Group {
        rank: Option<usize>,
        relations: Option<Vec<Vec<IntLit>>>,
        cyclic: Option<Vec<IntLit>>,
    },
    Subgroup {
        group: String,
        generators: Vec<Vec<IntLit>>,
    },
    Lattice {
        poset: Option<RawPoset>,
        boolean: Option<usize>,
        chain: Option<usize>,
    },
    Hom {
        lattice: String,
        group: String,
        bottom: Option<RawSub>,
        points: Option<Vec<RawSub>>,
        values: Option<BTreeMap<String, RawSub>>,
    },
    Semilattice {
        labels: Option<Vec<String>>,
        join: Option<Vec<Vec<usize>>>,
        zero: Option<usize>,
        lattice: Option<String>,
    },
    Monoid {
        size: usize,
        add: Vec<Vec<usize>>,
        zero: usize,
        labels: Option<Vec<String>>,
    },
    Presentation {
        semilattice: String,
        group: String,
        assignment: BTreeMap<String, RawSub>,
    },
    BlockSum {
        blocks: Vec<RawBlock>,
    },
    Elements {
        presentation: String,
        elements: Vec<RawElement>,
    },
    Blueprint {
        stages: Vec<Vec<RawBlock>>,
        #[serde(default)]
        maps: Vec<RawMap>,
        #[serde(default)]
        unital: bool,
    },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPoset {
    size: usize,
    #[serde(default)]
    less: Vec<(usize, usize)>,
}

/// A subgroup: the name of a subgroup object, or inline generators.
#[derive(Deserialize)]
#[serde(untagged)]
enum RawSub {
    Ref(String),
    Inline {
        #[serde(default)]
        generators: Vec<Vec<IntLit>>,
        #[serde(default)]
        whole: bool,
    },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBlock {
    cyclic: Option<u64>,
    #[serde(default)]
    infinite: bool,
    unit: Option<IntLit>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawElement {
    idem: String,
    grp: Vec<IntLit>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMap {
    zero: Option<Vec<Option<IntLit>>>,
    generators: Vec<Vec<Option<IntLit>>>,
}

/// A loaded object.
#[derive(Clone, Debug)]
pub enum Object {
    Group(FgAbGroup),
    Subgroup(Subgroup),
    Lattice(FinDistLattice),
    Hom(SubgroupHom),
    Semilattice(FinSemilattice),
    Monoid(FinMonoid),
    Presentation { presentation: SogPresentation, unit: Option<SogElement> },
    Elements { presentation: String, elements: Vec<SogElement> },
    Blueprint { stages: Vec<Vec<BlockSpec>>, maps: Vec<StageMap>, unital: bool },
}

impl Object {
    pub fn kind(&self) -> &'static str {
        match self {
            Object::Group(_) => "group",
            Object::Subgroup(_) => "subgroup",
            Object::Lattice(_) => "lattice",
            Object::Hom(_) => "hom",
            Object::Semilattice(_) => "semilattice",
            Object::Monoid(_) => "monoid",
            Object::Presentation { .. } => "presentation",
            Object::Elements { .. } => "elements",
            Object::Blueprint { .. } => "blueprint",
        }
    }
}

/// Named objects, in name order.
#[derive(Clone, Debug, Default)]
pub struct Workspace {
    objects: BTreeMap<String, Object>,
}

impl Workspace {
    pub fn get(&self, name: &str) -> Option<&Object> {
        self.objects.get(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.objects.keys().map(|s| s.as_str())
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    /// Names of objects whose kind is one of `kinds`.
    pub fn of_kinds<'a>(&'a self, kinds: &'a [&str]) -> impl Iterator<Item = &'a str> + 'a {
        self.objects.iter().filter(move |(_, o)| kinds.contains(&o.kind())).map(|(n, _)| n.as_str())
    }
}

pub fn parse_files(paths: &[impl AsRef<Path>]) -> Result<Workspace, InputError> {
    let mut texts = Vec::with_capacity(paths.len());
    for p in paths {
        let p = p.as_ref();
        let text = std::fs::read_to_string(p)
            .map_err(|e| InputError::one(InputErrorKind::ParseError, format!("{}: {e}", p.display())))?;
        texts.push(text);
    }
    parse_texts(&texts.iter().map(|s| s.as_str()).collect::<Vec<_>>())
}

pub fn parse_str(text: &str) -> Result<Workspace, InputError> {
    parse_texts(&[text])
}

fn parse_texts(texts: &[&str]) -> Result<Workspace, InputError> {
    let mut raw = Vec::new();
    let mut parse_errors = Vec::new();
    for (i, text) in texts.iter().enumerate() {
        match serde_json::from_str::<RawFile>(text) {
            Ok(f) if f.schema == SCHEMA => raw.extend(f.objects),
            Ok(f) => parse_errors.push(format!("input {i}: unsupported schema {:?}", f.schema)),
            Err(e) => parse_errors.push(format!("input {i}: {e}")),
        }
    }
    if !parse_errors.is_empty() {
        return Err(InputError { kind: InputErrorKind::ParseError, messages: parse_errors });
    }
    build(raw)
}

fn references(body: &RawBody) -> Vec<&str> {
    fn sub(s: &RawSub) -> Option<&str> {
        match s {
            RawSub::Ref(n) => Some(n),
            RawSub::Inline { .. } => None,
        }
    }
    match body {
        RawBody::Group { .. } | RawBody::Lattice { .. } | RawBody::Monoid { .. } => vec![],
        RawBody::BlockSum { .. } | RawBody::Blueprint { .. } => vec![],
        RawBody::Subgroup { group, .. } => vec![group],
        RawBody::Hom { lattice, group, bottom, points, values } => {
            let mut out: Vec<&str> = vec![lattice, group];
            out.extend(bottom.iter().filter_map(sub));
            out.extend(points.iter().flatten().filter_map(sub));
            out.extend(values.iter().flat_map(|m| m.values()).filter_map(sub));
            out
        }
        RawBody::Semilattice { lattice, .. } => lattice.iter().map(|s| s.as_str()).collect(),
        RawBody::Presentation { semilattice, group, assignment } => {
            let mut out: Vec<&str> = vec![semilattice, group];
            out.extend(assignment.values().filter_map(sub));
            out
        }
        RawBody::Elements { presentation, .. } => vec![presentation],
    }
}

fn build(raw: Vec<RawObject>) -> Result<Workspace, InputError> {
    let mut seen = BTreeSet::new();
    let mut dupes = Vec::new();
    for o in &raw {
        if !seen.insert(o.name.as_str()) {
            dupes.push(format!("name {:?} is defined twice", o.name));
        }
    }
    if !dupes.is_empty() {
        return Err(InputError { kind: InputErrorKind::ValidationError, messages: dupes });
    }
    let mut dangling = Vec::new();
    for o in &raw {
        for r in references(&o.body) {
            if !seen.contains(r) {
                dangling.push(format!("{:?} refers to unknown object {r:?}", o.name));
            }
        }
    }
    if !dangling.is_empty() {
        return Err(InputError { kind: InputErrorKind::ReferenceError, messages: dangling });
    }

    // dependency order; leftovers form a cycle
    let mut ws = Workspace::default();
    let mut pending: Vec<&RawObject> = raw.iter().collect();
    let mut errors: Vec<(InputErrorKind, String)> = Vec::new();
    let mut failed: BTreeSet<&str> = BTreeSet::new();
    while !pending.is_empty() {
        let before = pending.len();
        let mut next = Vec::new();
        for o in pending {
            let refs = references(&o.body);
            if refs.iter().any(|r| failed.contains(r)) {
                failed.insert(&o.name);
                continue;
            }
            if refs.iter().all(|r| ws.objects.contains_key(*r)) {
                match build_one(&ws, o) {
                    Ok(obj) => {
                        ws.objects.insert(o.name.clone(), obj);
                    }
                    Err((kind, msg)) => {
                        errors.push((kind, format!("{}: {msg}", o.name)));
                        failed.insert(&o.name);
                    }
                }
            } else {
                next.push(o);
            }
        }
        if next.len() == before {
            for o in &next {
                errors.push((InputErrorKind::ReferenceError, format!("{}: circular reference", o.name)));
            }
            break;
        }
        pending = next;
    }
    if errors.is_empty() {
        return Ok(ws);
    }
    // the most basic failure class wins
    let kind = [InputErrorKind::ParseError, InputErrorKind::ReferenceError, InputErrorKind::ValidationError]
        .into_iter()
        .find(|k| errors.iter().any(|(e, _)| e == k))
        .expect("nonempty");
    Err(InputError { kind, messages: errors.into_iter().map(|(_, m)| m).collect() })
}

type BuildResult<T> = Result<T, (InputErrorKind, String)>;

fn parse_err(msg: impl Into<String>) -> (InputErrorKind, String) {
    (InputErrorKind::ParseError, msg.into())
}

fn invalid(e: impl std::fmt::Display) -> (InputErrorKind, String) {
    (InputErrorKind::ValidationError, e.to_string())
}

fn wrong_kind(name: &str, want: &str, got: &Object) -> (InputErrorKind, String) {
    (InputErrorKind::ReferenceError, format!("{name:?} is a {}, expected a {want}", got.kind()))
}

fn group_ref<'a>(ws: &'a Workspace, name: &str) -> BuildResult<&'a FgAbGroup> {
    match &ws.objects[name] {
        Object::Group(g) => Ok(g),
        o => Err(wrong_kind(name, "group", o)),
    }
}

fn rectangular(rows: &[Vec<IntLit>], width: usize, what: &str) -> BuildResult<()> {
    match rows.iter().position(|r| r.len() != width) {
        Some(i) => Err(parse_err(format!("{what} {i} has {} entries, expected {width}", rows[i].len()))),
        None => Ok(()),
    }
}

fn subgroup(ws: &Workspace, group: &FgAbGroup, s: &RawSub) -> BuildResult<Subgroup> {
    match s {
        RawSub::Ref(name) => match &ws.objects[name] {
            Object::Subgroup(h) if h.group().same_as(group) => Ok(h.clone()),
            Object::Subgroup(_) => Err(invalid(format!("subgroup {name:?} lives in another group"))),
            o => Err(wrong_kind(name, "subgroup", o)),
        },
        RawSub::Inline { whole: true, .. } => Ok(Subgroup::whole(group)),
        RawSub::Inline { generators, .. } => {
            rectangular(generators, group.rank(), "generator")?;
            Subgroup::new(group, generators.iter().map(|g| ints(g)).collect()).map_err(invalid)
        }
    }
}

fn block(b: &RawBlock) -> BuildResult<BlockSpec> {
    let spec = match (b.cyclic, b.infinite) {
        (Some(n), false) => BlockSpec::cyclic(n),
        (None, true) => BlockSpec::infinite(),
        _ => return Err(parse_err("a block is either {\"cyclic\": n} or {\"infinite\": true}")),
    };
    Ok(match &b.unit {
        Some(u) => spec.with_unit(u.0.clone()),
        None => spec,
    })
}

fn tuple(t: &[Option<IntLit>]) -> BlockTuple {
    t.iter().map(|x| x.as_ref().map(|v| v.0.clone())).collect()
}

fn build_one(ws: &Workspace, o: &RawObject) -> BuildResult<Object> {
    Ok(match &o.body {
        RawBody::Group { rank, relations, cyclic } => match (rank, relations, cyclic) {
            (_, None, Some(orders)) if rank.is_none() => Object::Group(FgAbGroup::from_cyclic_factors(&ints(orders))),
            (Some(r), rels, None) => {
                let rels = rels.as_deref().unwrap_or(&[]);
                rectangular(rels, *r, "relation")?;
                let cols: Vec<Vec<Int>> = rels.iter().map(|v| ints(v)).collect();
                Object::Group(FgAbGroup::from_relations(*r, IntMatrix::from_columns(*r, &cols)).map_err(invalid)?)
            }
            _ => return Err(parse_err("a group needs \"rank\" (with optional \"relations\") or \"cyclic\"")),
        },
        RawBody::Subgroup { group, generators } => {
            let g = group_ref(ws, group)?;
            rectangular(generators, g.rank(), "generator")?;
            Object::Subgroup(Subgroup::new(g, generators.iter().map(|v| ints(v)).collect()).map_err(invalid)?)
        }
        RawBody::Lattice { poset, boolean, chain } => {
            let lat = match (poset, boolean, chain) {
                (Some(p), None, None) => {
                    let poset = FinPoset::new(p.size, &p.less).map_err(invalid)?;
                    crate::dlat::lattice_from_poset(&poset)
                }
                (None, Some(k), None) => FinDistLattice::boolean(*k),
                (None, None, Some(n)) => FinDistLattice::chain(*n),
                _ => return Err(parse_err("a lattice needs exactly one of \"poset\", \"boolean\", \"chain\"")),
            };
            Object::Lattice(lat.map_err(invalid)?)
        }
        RawBody::Hom { lattice, group, bottom, points, values } => {
            let lat = match &ws.objects[lattice] {
                Object::Lattice(l) => l,
                o => return Err(wrong_kind(lattice, "lattice", o)),
            };
            let g = group_ref(ws, group)?;
            let hom = match (points, values) {
                (Some(points), None) => {
                    if points.len() != lat.num_join_irreducibles() {
                        return Err(invalid(format!(
                            "{} point values for {} join-irreducibles",
                            points.len(),
                            lat.num_join_irreducibles()
                        )));
                    }
                    let base = match bottom {
                        Some(b) => subgroup(ws, g, b)?,
                        None => Subgroup::zero(g),
                    };
                    let pts = points.iter().map(|s| subgroup(ws, g, s)).collect::<BuildResult<Vec<_>>>()?;
                    SubgroupHom::from_fn(lat.clone(), g.clone(), |u| {
                        u.points().iter().try_fold(base.clone(), |acc, &p| acc.sum(&pts[p]))
                    })
                    .map_err(invalid)?
                }
                (None, Some(values)) => {
                    if bottom.is_some() {
                        return Err(parse_err("\"bottom\" goes with \"points\", not \"values\""));
                    }
                    let mut table: BTreeMap<LatElem, Subgroup> = BTreeMap::new();
                    for (key, s) in values {
                        let u = LatElem::parse_key(key)
                            .filter(|&u| lat.is_element(u))
                            .ok_or_else(|| invalid(format!("{key:?} is not a lattice element")))?;
                        table.insert(u, subgroup(ws, g, s)?);
                    }
                    let els = lat.elements().map_err(invalid)?;
                    if let Some(u) = els.iter().find(|u| !table.contains_key(u)) {
                        return Err(invalid(format!("no value for element {:?}", u.key())));
                    }
                    SubgroupHom::new(lat.clone(), g.clone(), els.iter().map(|u| table[u].clone()).collect())
                        .map_err(invalid)?
                }
                _ => return Err(parse_err("a hom needs exactly one of \"points\" or \"values\"")),
            };
            Object::Hom(hom)
        }
        RawBody::Semilattice { labels, join, zero, lattice } => match (labels, join, zero, lattice) {
            (labels, Some(join), Some(zero), None) => {
                let labels = labels.clone().unwrap_or_else(|| (0..join.len()).map(|i| i.to_string()).collect());
                Object::Semilattice(FinSemilattice::new(labels, join.clone(), *zero).map_err(invalid)?)
            }
            (None, None, None, Some(l)) => match &ws.objects[l] {
                Object::Lattice(lat) => Object::Semilattice(FinSemilattice::from_lattice(lat).map_err(invalid)?),
                o => return Err(wrong_kind(l, "lattice", o)),
            },
            _ => return Err(parse_err("a semilattice needs \"join\" and \"zero\", or \"lattice\"")),
        },
        RawBody::Monoid { size, add, zero, labels } => {
            if add.len() != *size || add.iter().any(|r| r.len() != *size) {
                return Err(parse_err(format!("addition table is not {size}x{size}")));
            }
            let labels = labels.clone().unwrap_or_else(|| (0..*size).map(|i| i.to_string()).collect());
            Object::Monoid(FinMonoid::with_labels(add.clone(), *zero, labels).map_err(invalid)?)
        }
        RawBody::Presentation { semilattice, group, assignment } => {
            let lam = match &ws.objects[semilattice] {
                Object::Semilattice(s) => s.clone(),
                Object::Lattice(l) => FinSemilattice::from_lattice(l).map_err(invalid)?,
                o => return Err(wrong_kind(semilattice, "semilattice", o)),
            };
            let g = group_ref(ws, group)?;
            let mut groups = Vec::with_capacity(lam.size());
            for e in 0..lam.size() {
                let s = assignment
                    .get(lam.label(e))
                    .ok_or_else(|| invalid(format!("no subgroup assigned to {:?}", lam.label(e))))?;
                groups.push(subgroup(ws, g, s)?);
            }
            if let Some(extra) = assignment.keys().find(|k| lam.index_of_label(k).is_none()) {
                return Err(invalid(format!("{extra:?} is not an idempotent")));
            }
            Object::Presentation { presentation: SogPresentation::new(lam, g.clone(), groups).map_err(invalid)?, unit: None }
        }
        RawBody::BlockSum { blocks } => {
            let specs = blocks.iter().map(block).collect::<BuildResult<Vec<_>>>()?;
            let sum = block_monoid(&specs).map_err(invalid)?;
            Object::Presentation { presentation: sum.presentation, unit: sum.unit }
        }
        RawBody::Elements { presentation, elements } => {
            let p = match &ws.objects[presentation] {
                Object::Presentation { presentation, .. } => presentation,
                o => return Err(wrong_kind(presentation, "presentation", o)),
            };
            let mut out = Vec::with_capacity(elements.len());
            for x in elements {
                let idem = p.lam().index_of_label(&x.idem).ok_or_else(|| invalid(format!("{:?} is not an idempotent", x.idem)))?;
                if x.grp.len() != p.group().rank() {
                    return Err(parse_err(format!("element has {} entries, expected {}", x.grp.len(), p.group().rank())));
                }
                out.push(SogElement { idem, grp: ints(&x.grp) });
            }
            Object::Elements { presentation: presentation.clone(), elements: out }
        }
        RawBody::Blueprint { stages, maps, unital } => {
            let stages = stages
                .iter()
                .map(|s| s.iter().map(block).collect::<BuildResult<Vec<_>>>())
                .collect::<BuildResult<Vec<_>>>()?;
            let maps = maps
                .iter()
                .enumerate()
                .map(|(i, m)| {
                    let width = stages.get(i + 1).or(stages.last()).map_or(0, |s| s.len());
                    StageMap {
                        zero: m.zero.as_deref().map(tuple).unwrap_or_else(|| vec![None; width]),
                        generators: m.generators.iter().map(|t| tuple(t)).collect(),
                    }
                })
                .collect();
            Object::Blueprint { stages, maps, unital: *unital }
        }
    })
}
