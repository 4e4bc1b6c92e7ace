use std::fmt;

use super::decompose::{decompose_regular, regularity_witness};
use super::monoid::FinMonoid;
use super::presentation::SogPresentation;
use crate::error::Result;
use crate::fgab::is_pure;

/// One axiom's verdict; `witness` describes a counterexample when it fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub holds: bool,
    pub witness: Option<String>,
}

impl Check {
    fn pass() -> Self {
        Check { holds: true, witness: None }
    }

    fn fail(witness: impl Into<String>) -> Self {
        Check { holds: false, witness: Some(witness.into()) }
    }

    fn from_witness(w: Option<String>) -> Self {
        w.map_or_else(Check::pass, Check::fail)
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.witness {
            None => write!(f, "{}", self.holds),
            Some(w) => write!(f, "{} ({w})", self.holds),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub regular: Check,
    pub conical: Check,
    pub refinement: Check,
    pub emb: Check,
    pub pur: Check,
}

impl AxiomReport {
    pub fn all_hold(&self) -> bool {
        self.entries().iter().all(|(_, c)| c.holds)
    }

    pub fn entries(&self) -> [(&'static str, &Check); 5] {
        [
            ("regular", &self.regular),
            ("conical", &self.conical),
            ("refinement", &self.refinement),
            ("emb", &self.emb),
            ("pur", &self.pur),
        ]
    }
}

/// Exhaustive checks on a Cayley table. `emb` and `pur` are only defined for
/// regular monoids and fail with that reason otherwise.
pub fn check_monoid_axioms(m: &FinMonoid) -> AxiomReport {
    let regular = Check::from_witness(regularity_witness(m).map(|x| format!("2·{0} is not below {0}", m.label(x))));
    let conical = Check::from_witness(conical_witness(m));
    let refinement = Check::from_witness(refinement_witness(m).map(|(a0, a1, b0, b1)| {
        format!("{} + {} = {} + {} has no refinement", m.label(a0), m.label(a1), m.label(b0), m.label(b1))
    }));
    let (emb, pur) = match decompose_regular(m) {
        Ok(d) => {
            let lam = d.lam();
            let mut emb = None;
            let mut pur = None;
            for a in 0..lam.size() {
                for b in 0..lam.size() {
                    if a == b || !lam.leq(a, b) {
                        continue;
                    }
                    let eb = d.idempotents()[b];
                    let range: Vec<usize> = d.members(a).iter().map(|&x| m.add(x, eb)).collect();
                    if emb.is_none() {
                        let src = d.members(a);
                        'pairs: for (i, &x) in src.iter().enumerate() {
                            for (j, &y) in src.iter().enumerate().skip(i + 1) {
                                if range[i] == range[j] {
                                    emb = Some(format!(
                                        "{} and {} both map to {} under G[{}] -> G[{}]",
                                        m.label(x),
                                        m.label(y),
                                        m.label(range[i]),
                                        lam.label(a),
                                        lam.label(b)
                                    ));
                                    break 'pairs;
                                }
                            }
                        }
                    }
                    if pur.is_none() {
                        pur = impure_range_witness(m, d.members(b), &range).map(|(n, y)| {
                            format!(
                                "{n}·{} lies in the image of G[{}] in G[{}] but no image element has that multiple",
                                m.label(y),
                                lam.label(a),
                                lam.label(b)
                            )
                        });
                    }
                }
            }
            (Check::from_witness(emb), Check::from_witness(pur))
        }
        Err(_) => (Check::fail("undefined: monoid is not regular"), Check::fail("undefined: monoid is not regular")),
    };
    AxiomReport { regular, conical, refinement, emb, pur }
}

fn conical_witness(m: &FinMonoid) -> Option<String> {
    let z = m.zero();
    for x in 0..m.size() {
        for y in 0..m.size() {
            if x != z && m.add(x, y) == z {
                return Some(format!("{} + {} = 0", m.label(x), m.label(y)));
            }
        }
    }
    None
}

/// Searches for a refinement matrix by solving `c00 + c01 = a0`,
/// `c00 + c10 = b0`, then `c10 + c11 = a1`, `c01 + c11 = b1` in turn.
fn refinement_witness(m: &FinMonoid) -> Option<(usize, usize, usize, usize)> {
    let n = m.size();
    // solutions[c][a] = { d : c + d = a }
    let mut solutions = vec![vec![Vec::new(); n]; n];
    for c in 0..n {
        for d in 0..n {
            solutions[c][m.add(c, d)].push(d);
        }
    }
    let mut by_sum = vec![Vec::new(); n];
    for x in 0..n {
        for y in x..n {
            by_sum[m.add(x, y)].push((x, y));
        }
    }
    let refines = |a0: usize, a1: usize, b0: usize, b1: usize| {
        (0..n).any(|c00| {
            solutions[c00][a0].iter().any(|&c01| {
                solutions[c00][b0]
                    .iter()
                    .any(|&c10| solutions[c10][a1].iter().any(|&c11| m.add(c01, c11) == b1))
            })
        })
    };
    for pairs in &by_sum {
        for &(a0, a1) in pairs {
            for &(x, y) in pairs {
                for (b0, b1) in [(x, y), (y, x)] {
                    if !refines(a0, a1, b0, b1) {
                        return Some((a0, a1, b0, b1));
                    }
                }
            }
        }
    }
    None
}

/// `(n, y)` with `n·y` in `range` but `n·y != n·r` for every `r` in `range`.
fn impure_range_witness(m: &FinMonoid, component: &[usize], range: &[usize]) -> Option<(usize, usize)> {
    for n in 1..=component.len() {
        let range_multiples: Vec<usize> = range.iter().map(|&r| m.multiple(r, n)).collect();
        for &y in component {
            let ny = m.multiple(y, n);
            if range.contains(&ny) && !range_multiples.contains(&ny) {
                return Some((n, y));
            }
        }
    }
    None
}

/// Checks on a presentation by subgroup algebra. Regularity is structural;
/// conicality is `G_0 = 0`; refinement is the distributive index lattice
/// together with the sum and intersection laws; `emb` and `pur` ask, for
/// `a <= b`, that `G_a` sits inside `G_b` as a pure subgroup.
pub fn check_presentation_axioms(p: &SogPresentation) -> Result<AxiomReport> {
    let lam = p.lam();
    let g0 = p.component(lam.zero());
    let conical = if g0.is_trivial() {
        Check::pass()
    } else {
        let g = &g0.generators()[0];
        let s: Vec<String> = g.iter().map(|v| v.to_string()).collect();
        Check::fail(format!("(0, [{0}]) has an inverse in G_0", s.join(",")))
    };

    let mut refinement = lam.distributivity_witness()?.map(|w| format!("index semilattice is not distributive: {w}"));
    let mut emb = None;
    let mut pur = None;
    for e in 0..lam.size() {
        for f in 0..lam.size() {
            let (ge, gf) = (p.component(e), p.component(f));
            if refinement.is_none() && e < f {
                if ge.sum(gf)? != *p.component(lam.join(e, f)) {
                    refinement = Some(format!("G_{} + G_{} != G_({} + {})", lam.label(e), lam.label(f), lam.label(e), lam.label(f)));
                } else {
                    let below = (0..lam.size()).filter(|&g| lam.leq(g, e) && lam.leq(g, f)).map(|g| p.component(g));
                    if ge.intersection(gf)? != crate::fgab::sum_all(p.group(), below)? {
                        refinement = Some(format!(
                            "G_{} ∩ G_{} is not generated by the G_g below both",
                            lam.label(e),
                            lam.label(f)
                        ));
                    }
                }
            }
            if e != f && lam.leq(e, f) {
                if !ge.is_subgroup_of(gf)? {
                    emb.get_or_insert_with(|| format!("G_{} is not inside G_{}", lam.label(e), lam.label(f)));
                } else if pur.is_none() && !is_pure(ge, gf)? {
                    pur = Some(format!("G_{} is not pure in G_{}", lam.label(e), lam.label(f)));
                }
            }
        }
    }
    if emb.is_some() && pur.is_none() {
        pur = Some("undefined: some natural map is not an inclusion".into());
    }
    Ok(AxiomReport {
        regular: Check::pass(),
        conical,
        refinement: Check::from_witness(refinement),
        emb: Check::from_witness(emb),
        pur: Check::from_witness(pur),
    })
}
