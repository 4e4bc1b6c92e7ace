//! Seeded generators shared by the integration tests.
#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sogkit::dlat::{lattice_from_poset, FinDistLattice, FinPoset, FinSemilattice, LatElem};
use sogkit::fgab::{FgAbGroup, Int, IntMatrix, Subgroup};
use sogkit::lathom::SubgroupHom;
use sogkit::sogmon::{FinMonoid, SogPresentation};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random unimodular `n x n` matrix: identity scrambled by elementary column moves.
pub fn unimodular(rng: &mut ChaCha8Rng, n: usize) -> IntMatrix {
    let mut m = IntMatrix::identity(n);
    if n < 2 {
        if n == 1 && rng.gen_bool(0.5) {
            m.negate_col(0);
        }
        return m;
    }
    for _ in 0..2 * n {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        match rng.gen_range(0..4) {
            0 => m.swap_cols(i, j),
            1 => m.negate_col(i),
            _ => m.add_col_multiple(i, j, &Int::from(rng.gen_range(-2..=2))),
        }
    }
    m
}

/// Torsion orders with product at most `bound`.
pub fn torsion_factors(rng: &mut ChaCha8Rng, bound: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut prod = 1;
    for _ in 0..3 {
        if !rng.gen_bool(0.6) {
            continue;
        }
        let d = rng.gen_range(2..=8);
        if prod * d <= bound {
            prod *= d;
            out.push(d);
        }
    }
    out
}

/// `Z^n / U·diag(orders)` together with the images `U e_i` of the standard
/// cyclic summands. An order of `0` is a free summand.
#[derive(Clone, Debug)]
pub struct Scrambled {
    pub group: FgAbGroup,
    pub summands: Vec<Vec<Int>>,
    pub orders: Vec<u64>,
}

pub fn scrambled(rng: &mut ChaCha8Rng, orders: &[u64]) -> Scrambled {
    let n = orders.len();
    let u = unimodular(rng, n);
    let cols: Vec<Vec<Int>> = orders
        .iter()
        .enumerate()
        .filter(|(_, &d)| d != 0)
        .map(|(i, &d)| u.column(i).iter().map(|x| x * Int::from(d)).collect())
        .collect();
    let group = FgAbGroup::from_relations(n, IntMatrix::from_columns(n, &cols)).unwrap();
    let summands = (0..n).map(|i| group.reduce(&u.column(i)).unwrap()).collect();
    Scrambled { group, summands, orders: orders.to_vec() }
}

/// Random `Z^r ⊕ T` with `r <= max_rank` and `|T| <= torsion_bound`, scrambled.
pub fn mixed_group(rng: &mut ChaCha8Rng, max_rank: usize, torsion_bound: u64) -> Scrambled {
    let r = rng.gen_range(0..=max_rank);
    let mut orders = vec![0; r];
    orders.extend(torsion_factors(rng, torsion_bound));
    if orders.is_empty() {
        orders.push(if rng.gen_bool(0.5) { 0 } else { rng.gen_range(2..=6) });
    }
    orders.shuffle(rng);
    scrambled(rng, &orders)
}

/// Random poset on `1..=max_points` points and its lattice of down-sets.
pub fn random_lattice(rng: &mut ChaCha8Rng, max_points: usize) -> FinDistLattice {
    random_lattice_with(rng, max_points, 0.35)
}

/// As [`random_lattice`], with each pair `i < j` related with probability `edge`.
pub fn random_lattice_with(rng: &mut ChaCha8Rng, max_points: usize, edge: f64) -> FinDistLattice {
    let k = rng.gen_range(1..=max_points);
    let mut less = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            if rng.gen_bool(edge) {
                less.push((i, j));
            }
        }
    }
    lattice_from_poset(&FinPoset::new(k, &less).unwrap()).unwrap()
}

/// A lattice homomorphism `u -> base + sum of K_p over p in u`, where the
/// base and the `K_p` are spanned by disjoint sets of scrambled summands.
/// With `pure` unset, summands may be replaced by proper multiples, which
/// keeps the sum direct but breaks purity.
#[derive(Clone, Debug)]
pub struct BuiltHom {
    pub phi: SubgroupHom,
    pub base: Subgroup,
    pub parts: Vec<Subgroup>,
}

pub fn direct_sum_hom(
    rng: &mut ChaCha8Rng,
    lat: &FinDistLattice,
    g: &Scrambled,
    with_base: bool,
    pure: bool,
) -> BuiltHom {
    let k = lat.num_join_irreducibles();
    let group = &g.group;
    let mut base_gens = Vec::new();
    let mut part_gens = vec![Vec::new(); k];
    for s in &g.summands {
        let mult = if pure || rng.gen_bool(0.6) { 1 } else { rng.gen_range(2..=3) };
        let v = group.scale(&Int::from(mult), s);
        let slot = rng.gen_range(0..k + 2);
        if slot < k {
            part_gens[slot].push(v);
        } else if slot == k && with_base {
            base_gens.push(v);
        }
    }
    let base = Subgroup::new(group, base_gens).unwrap();
    let parts: Vec<Subgroup> = part_gens.into_iter().map(|gens| Subgroup::new(group, gens).unwrap()).collect();
    let phi = SubgroupHom::from_fn(lat.clone(), group.clone(), |u| value(group, &base, &parts, u)).unwrap();
    BuiltHom { phi, base, parts }
}

fn value(group: &FgAbGroup, base: &Subgroup, parts: &[Subgroup], u: LatElem) -> sogkit::Result<Subgroup> {
    sogkit::fgab::sum_all(group, std::iter::once(base).chain(u.points().into_iter().map(|p| &parts[p])))
}

pub fn random_vector(rng: &mut ChaCha8Rng, n: usize, range: i64) -> Vec<Int> {
    (0..n).map(|_| Int::from(rng.gen_range(-range..=range))).collect()
}

/// Subgroup spanned by up to `max_gens` random small vectors.
pub fn random_subgroup(rng: &mut ChaCha8Rng, group: &FgAbGroup, max_gens: usize) -> Subgroup {
    let k = rng.gen_range(0..=max_gens);
    let gens = (0..k).map(|_| group.reduce(&random_vector(rng, group.rank(), 3)).unwrap()).collect();
    Subgroup::new(group, gens).unwrap()
}

/// Subgroup spanned by random combinations of `s`'s generators.
pub fn random_subgroup_of(rng: &mut ChaCha8Rng, s: &Subgroup, max_gens: usize) -> Subgroup {
    let group = s.group();
    let k = rng.gen_range(0..=max_gens);
    let mut gens = Vec::new();
    for _ in 0..k {
        let mut x = group.zero_element();
        for g in s.generators() {
            let c = Int::from(rng.gen_range(-2..=2));
            x = group.add(&x, &group.scale(&c, g));
        }
        gens.push(x);
    }
    Subgroup::new(group, gens).unwrap()
}

/// Every list of invariant factors `d_1 | d_2 | ...` with product `n`.
pub fn invariant_factor_lists(n: u64) -> Vec<Vec<u64>> {
    fn go(rem: u64, min: u64, acc: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if rem == 1 {
            out.push(acc.clone());
            return;
        }
        for d in 2..=rem {
            if rem % d == 0 && d % min == 0 {
                // the remaining factors must be multiples of d
                let rest = rem / d;
                if rest == 1 || rest % d == 0 {
                    acc.push(d);
                    go(rest, d, acc, out);
                    acc.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    go(n, 1, &mut Vec::new(), &mut out);
    out
}

/// All abelian groups of order `n`, in invariant-factor form (`Z/1` for `n = 1`).
pub fn abelian_groups_of_order(n: u64) -> Vec<FgAbGroup> {
    invariant_factor_lists(n)
        .into_iter()
        .map(|f| {
            let f = if f.is_empty() { vec![1] } else { f };
            FgAbGroup::from_cyclic_factors(&f.into_iter().map(Int::from).collect::<Vec<_>>())
        })
        .collect()
}

/// Every subgroup of a finite group, found by closing `{0}` under adding
/// one cyclic subgroup at a time and deduplicating on element sets.
pub fn all_subgroups(group: &FgAbGroup) -> Vec<Subgroup> {
    let whole = Subgroup::whole(group);
    let elements = whole.elements(4096).unwrap();
    let mut seen = std::collections::BTreeSet::new();
    let zero = Subgroup::zero(group);
    seen.insert(zero.elements(4096).unwrap());
    let mut out = vec![zero];
    let mut i = 0;
    while i < out.len() {
        let s = out[i].clone();
        for x in &elements {
            let mut gens = s.generators().to_vec();
            gens.push(x.clone());
            let t = Subgroup::new(group, gens).unwrap();
            if seen.insert(t.elements(4096).unwrap()) {
                out.push(t);
            }
        }
        i += 1;
    }
    out
}

/// All posets on `k` points up to relabelling is not attempted; every
/// transitively closed strict order whose pairs respect `0..k` is listed.
pub fn posets(k: usize) -> Vec<FinPoset> {
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        let less: Vec<_> = pairs.iter().enumerate().filter(|(b, _)| mask & (1 << b) != 0).map(|(_, &p)| p).collect();
        let p = FinPoset::new(k, &less).unwrap();
        let key: Vec<u64> = (0..k).map(|i| p.principal(i)).collect();
        if seen.insert(key) {
            out.push(p);
        }
    }
    out
}

/// The presentation with `Λ` the lattice of `phi`'s domain and `G_u = phi(u)`.
pub fn presentation_of_hom(phi: &SubgroupHom) -> SogPresentation {
    let lam = FinSemilattice::from_lattice(phi.domain()).unwrap();
    SogPresentation::new(lam, phi.group().clone(), phi.table().to_vec()).unwrap()
}

/// Every commutative monoid on `0..n` with identity `0`, by backtracking
/// over the upper triangle of the table with associativity pruning.
pub fn commutative_monoids(n: usize) -> Vec<FinMonoid> {
    let cells: Vec<(usize, usize)> = (1..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let mut table = vec![vec![usize::MAX; n]; n];
    for i in 0..n {
        table[0][i] = i;
        table[i][0] = i;
    }
    let mut out = Vec::new();
    fill(&cells, 0, &mut table, &mut out);
    out
}

fn consistent(t: &[Vec<usize>]) -> bool {
    let n = t.len();
    for x in 1..n {
        for y in 1..n {
            let xy = t[x][y];
            if xy == usize::MAX {
                continue;
            }
            for z in 1..n {
                let yz = t[y][z];
                if yz == usize::MAX {
                    continue;
                }
                let (l, r) = (t[xy][z], t[x][yz]);
                if l != usize::MAX && r != usize::MAX && l != r {
                    return false;
                }
            }
        }
    }
    true
}

fn fill(cells: &[(usize, usize)], at: usize, t: &mut Vec<Vec<usize>>, out: &mut Vec<FinMonoid>) {
    if at == cells.len() {
        out.push(FinMonoid::new(t.clone(), 0).unwrap());
        return;
    }
    let (i, j) = cells[at];
    for v in 0..t.len() {
        t[i][j] = v;
        t[j][i] = v;
        if consistent(t) {
            fill(cells, at + 1, t, out);
        }
    }
    t[i][j] = usize::MAX;
    t[j][i] = usize::MAX;
}

/// Cartesian product of two monoid tables.
pub fn product_monoid(a: &FinMonoid, b: &FinMonoid) -> FinMonoid {
    let (na, nb) = (a.size(), b.size());
    let idx = |x: usize, y: usize| x * nb + y;
    let mut t = vec![vec![0; na * nb]; na * nb];
    for x1 in 0..na {
        for y1 in 0..nb {
            for x2 in 0..na {
                for y2 in 0..nb {
                    t[idx(x1, y1)][idx(x2, y2)] = idx(a.add(x1, x2), b.add(y1, y2));
                }
            }
        }
    }
    FinMonoid::new(t, idx(a.zero(), b.zero())).unwrap()
}

/// `m` with a new absorbing element `∞` (`x + ∞ = ∞`) appended.
pub fn with_absorbing(m: &FinMonoid) -> FinMonoid {
    let n = m.size();
    let mut t: Vec<Vec<usize>> = m.table().iter().map(|r| {
        let mut r = r.clone();
        r.push(n);
        r
    }).collect();
    t.push(vec![n; n + 1]);
    FinMonoid::new(t, m.zero()).unwrap()
}
