//! Finite ordered simplicial complexes of poset-nerve type.
//!
//! A complex is stored by its maximal simplices, each a chain of vertices in
//! the underlying partial order. Every complex used on the algebra side is
//! of this type (standard simplices, their boundaries and horns, cubes as
//! iterated products of the interval, and barycentric subdivisions of all
//! of these), and the class is closed under products, subcomplexes and
//! subdivision.
//!
//! Vertex labels are canonical nested tuples, so serialization and the
//! induced orderings are deterministic.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::limits::Limits;

/// Canonical vertex label: an atom or a tuple of labels.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Atom(u32),
    Tuple(Vec<Label>),
}

impl Label {
    pub fn pair(a: &Label, b: &Label) -> Label {
        Label::Tuple(vec![a.clone(), b.clone()])
    }

    pub fn bits(bits: &[u8]) -> Label {
        Label::Tuple(bits.iter().map(|&b| Label::Atom(b as u32)).collect())
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Atom(n) => write!(f, "{n}"),
            Label::Tuple(items) => {
                write!(f, "(")?;
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{item}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// A finite complex: vertices with canonical labels and the set of maximal
/// chains. The full simplex set (closure under faces) is precomputed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteComplex {
    labels: Vec<Label>,
    index: BTreeMap<Label, u32>,
    maximal: BTreeSet<Vec<u32>>,
    simplices: BTreeSet<Vec<u32>>,
}

impl FiniteComplex {
    /// Builds a complex from labeled maximal chains. Chains are given in
    /// poset order; shared vertices must carry consistent orders.
    pub fn from_chains(chains: Vec<Vec<Label>>) -> Result<FiniteComplex> {
        let mut labels: BTreeSet<Label> = BTreeSet::new();
        for c in &chains {
            labels.extend(c.iter().cloned());
        }
        let labels: Vec<Label> = labels.into_iter().collect();
        let index: BTreeMap<Label, u32> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i as u32))
            .collect();
        let mut maximal: BTreeSet<Vec<u32>> = BTreeSet::new();
        for c in &chains {
            let chain: Vec<u32> = c.iter().map(|l| index[l]).collect();
            let distinct: BTreeSet<u32> = chain.iter().copied().collect();
            if distinct.len() != chain.len() {
                return Err(Error::TypeMismatch(format!(
                    "chain with repeated vertex: {:?}",
                    c.iter().map(|l| l.to_string()).collect::<Vec<_>>()
                )));
            }
            maximal.insert(chain);
        }
        // Drop chains contained (as ordered subsequences) in others.
        let all: Vec<Vec<u32>> = maximal.iter().cloned().collect();
        maximal.retain(|c| {
            !all.iter()
                .any(|other| other.len() > c.len() && is_subchain(c, other))
        });
        let complex = FiniteComplex::assemble(labels, index, maximal)?;
        Ok(complex)
    }

    fn assemble(
        labels: Vec<Label>,
        index: BTreeMap<Label, u32>,
        maximal: BTreeSet<Vec<u32>>,
    ) -> Result<FiniteComplex> {
        // Order consistency: two simplices must not order a vertex pair both
        // ways.
        let mut before: BTreeSet<(u32, u32)> = BTreeSet::new();
        for c in &maximal {
            for i in 0..c.len() {
                for j in i + 1..c.len() {
                    before.insert((c[i], c[j]));
                }
            }
        }
        for &(u, v) in &before {
            if u != v && before.contains(&(v, u)) {
                return Err(Error::TypeMismatch(format!(
                    "inconsistent vertex order between {} and {}",
                    labels[u as usize], labels[v as usize]
                )));
            }
        }
        let mut simplices: BTreeSet<Vec<u32>> = BTreeSet::new();
        for c in &maximal {
            for sub in nonempty_subsequences(c) {
                simplices.insert(sub);
            }
        }
        Ok(FiniteComplex {
            labels,
            index,
            maximal,
            simplices,
        })
    }

    pub fn empty() -> FiniteComplex {
        FiniteComplex {
            labels: Vec::new(),
            index: BTreeMap::new(),
            maximal: BTreeSet::new(),
            simplices: BTreeSet::new(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, i: u32) -> &Label {
        &self.labels[i as usize]
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn vertex_index(&self, l: &Label) -> Option<u32> {
        self.index.get(l).copied()
    }

    pub fn maximal_chains(&self) -> impl Iterator<Item = &Vec<u32>> {
        self.maximal.iter()
    }

    pub fn simplices(&self) -> impl Iterator<Item = &Vec<u32>> {
        self.simplices.iter()
    }

    pub fn simplex_count(&self) -> usize {
        self.simplices.len()
    }

    pub fn has_simplex(&self, chain: &[u32]) -> bool {
        self.simplices.contains(chain)
    }

    pub fn dim(&self) -> i64 {
        self.maximal.iter().map(|c| c.len() as i64 - 1).max().unwrap_or(-1)
    }

    /// Number of maximal simplices of top dimension.
    pub fn top_count(&self) -> usize {
        let d = self.dim();
        self.maximal.iter().filter(|c| c.len() as i64 - 1 == d).count()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .map(|s| if s.len() % 2 == 1 { 1 } else { -1 })
            .sum()
    }

    /// The subcomplex of all simplices satisfying `keep`. The predicate must
    /// be closed under faces; maximal simplices are recomputed.
    pub fn subcomplex(&self, keep: impl Fn(&FiniteComplex, &[u32]) -> bool) -> FiniteComplex {
        let kept: Vec<Vec<u32>> = self
            .simplices
            .iter()
            .filter(|s| keep(self, s))
            .cloned()
            .collect();
        let maximal: Vec<Vec<Label>> = kept
            .iter()
            .filter(|s| {
                !kept
                    .iter()
                    .any(|other| other.len() > s.len() && is_subchain(s, other))
            })
            .map(|s| s.iter().map(|&v| self.labels[v as usize].clone()).collect())
            .collect();
        FiniteComplex::from_chains(maximal).expect("subcomplex of a valid complex")
    }

    /// Whether `other`'s simplices all appear in `self` (same labels).
    pub fn contains_subcomplex(&self, other: &FiniteComplex) -> bool {
        other.simplices.iter().all(|s| {
            let mapped: Option<Vec<u32>> = s
                .iter()
                .map(|&v| self.vertex_index(other.label(v)))
                .collect();
            mapped.map(|m| self.has_simplex(&m)).unwrap_or(false)
        })
    }
}

fn is_subchain(sub: &[u32], sup: &[u32]) -> bool {
    let mut it = sup.iter();
    sub.iter().all(|v| it.any(|w| w == v))
}

fn nonempty_subsequences(chain: &[u32]) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let n = chain.len();
    for mask in 1u32..(1 << n) {
        let sub: Vec<u32> = (0..n)
            .filter(|&i| mask & (1 << i) != 0)
            .map(|i| chain[i])
            .collect();
        out.push(sub);
    }
    out
}

/// The standard `n`-simplex: vertices `0..=n`, one maximal chain.
pub fn standard_simplex(n: u32) -> FiniteComplex {
    let chain: Vec<Label> = (0..=n).map(Label::Atom).collect();
    FiniteComplex::from_chains(vec![chain]).expect("simplex is valid")
}

/// Boundary by the free-face rule: codimension-one faces of top simplices
/// lying in exactly one top simplex, closed under faces. Requires a pure
/// complex (all maximal simplices of equal dimension).
pub fn boundary(k: &FiniteComplex) -> Result<FiniteComplex> {
    let d = k.dim();
    if d < 0 {
        return Ok(FiniteComplex::empty());
    }
    if k.maximal_chains().any(|c| (c.len() as i64 - 1) != d) {
        return Err(Error::TypeMismatch(
            "boundary requires a pure complex".into(),
        ));
    }
    if d == 0 {
        return Ok(FiniteComplex::empty());
    }
    let mut count: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
    for top in k.maximal_chains() {
        for i in 0..top.len() {
            let mut facet = top.clone();
            facet.remove(i);
            *count.entry(facet).or_insert(0) += 1;
        }
    }
    let free: Vec<Vec<Label>> = count
        .into_iter()
        .filter(|(_, c)| *c == 1)
        .map(|(facet, _)| facet.iter().map(|&v| k.label(v).clone()).collect())
        .collect();
    if free.is_empty() {
        return Ok(FiniteComplex::empty());
    }
    FiniteComplex::from_chains(free)
}

/// The horn: all facets of the `n`-simplex containing vertex `k`.
pub fn horn(n: u32, k: u32) -> Result<FiniteComplex> {
    if n == 0 || k > n {
        return Err(Error::IndexOutOfRange(format!("horn({n}, {k})")));
    }
    let mut chains = Vec::new();
    for omit in 0..=n {
        if omit == k {
            continue;
        }
        chains.push((0..=n).filter(|&v| v != omit).map(Label::Atom).collect());
    }
    FiniteComplex::from_chains(chains)
}

/// Nerve of the product order: maximal simplices are the monotone staircase
/// chains through pairs of maximal simplices.
pub fn product(k: &FiniteComplex, l: &FiniteComplex) -> FiniteComplex {
    let mut chains: Vec<Vec<Label>> = Vec::new();
    for ck in k.maximal_chains() {
        for cl in l.maximal_chains() {
            let p = ck.len() - 1;
            let q = cl.len() - 1;
            for path in staircases(p, q) {
                chains.push(
                    path.iter()
                        .map(|&(i, j)| Label::pair(k.label(ck[i]), l.label(cl[j])))
                        .collect(),
                );
            }
        }
    }
    if chains.is_empty() {
        return FiniteComplex::empty();
    }
    FiniteComplex::from_chains(chains).expect("product of valid complexes")
}

fn staircases(p: usize, q: usize) -> Vec<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    let mut path = vec![(0usize, 0usize)];
    fn rec(
        p: usize,
        q: usize,
        path: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        let &(i, j) = path.last().unwrap();
        if i == p && j == q {
            out.push(path.clone());
            return;
        }
        if i < p {
            path.push((i + 1, j));
            rec(p, q, path, out);
            path.pop();
        }
        if j < q {
            path.push((i, j + 1));
            rec(p, q, path, out);
            path.pop();
        }
    }
    rec(p, q, &mut path, &mut out);
    out
}

/// The `n`-cube as the nerve of `{0 < 1}^n`: vertices are bit tuples,
/// maximal chains are the monotone paths from all-zeros to all-ones.
pub fn cube(n: u32) -> FiniteComplex {
    if n == 0 {
        return FiniteComplex::from_chains(vec![vec![Label::Tuple(vec![])]])
            .expect("point is valid");
    }
    let mut chains = Vec::new();
    let mut perm: Vec<u32> = (0..n).collect();
    permutations(&mut perm, 0, &mut |order| {
        let mut bits = vec![0u8; n as usize];
        let mut chain = vec![Label::bits(&bits)];
        for &c in order {
            bits[c as usize] = 1;
            chain.push(Label::bits(&bits));
        }
        chains.push(chain);
    });
    FiniteComplex::from_chains(chains).expect("cube is valid")
}

fn permutations(items: &mut Vec<u32>, start: usize, f: &mut impl FnMut(&[u32])) {
    if start == items.len() {
        f(items);
        return;
    }
    for i in start..items.len() {
        items.swap(start, i);
        permutations(items, start + 1, f);
        items.swap(start, i);
    }
    // Restore order for determinism of the enumeration.
    items[start..].sort_unstable();
}

fn cube_bits(label: &Label) -> Option<Vec<u8>> {
    match label {
        Label::Tuple(items) => items
            .iter()
            .map(|l| match l {
                Label::Atom(b) if *b <= 1 => Some(*b as u8),
                _ => None,
            })
            .collect(),
        _ => None,
    }
}

/// `(coord, value)`-fixed facets of the cube: the union over all
/// coordinates gives the boundary.
pub fn cube_boundary(n: u32) -> FiniteComplex {
    if n == 0 {
        return FiniteComplex::empty();
    }
    cube(n).subcomplex(|k, s| {
        (0..n).any(|c| {
            let vals: BTreeSet<u8> = s
                .iter()
                .map(|&v| cube_bits(k.label(v)).expect("cube label")[c as usize])
                .collect();
            vals.len() == 1
        })
    })
}

/// Barycentric subdivision: nerve of the poset of simplices ordered by face
/// inclusion. A vertex of `sd K` is a simplex of `K`, labeled by the tuple
/// of its vertex labels in chain order.
pub fn subdivide(k: &FiniteComplex) -> FiniteComplex {
    let mut chains: Vec<Vec<Label>> = Vec::new();
    for top in k.maximal_chains() {
        // Complete flags: add the vertices of `top` one at a time; the flag
        // records the growing subchains.
        let n = top.len();
        let mut perm: Vec<u32> = (0..n as u32).collect();
        permutations(&mut perm, 0, &mut |order| {
            let mut present = vec![false; n];
            let mut flag = Vec::with_capacity(n);
            for &pos in order {
                present[pos as usize] = true;
                let simplex: Vec<u32> = (0..n).filter(|&i| present[i]).map(|i| top[i]).collect();
                flag.push(sd_label(k, &simplex));
            }
            chains.push(flag.clone());
        });
    }
    if chains.is_empty() {
        return FiniteComplex::empty();
    }
    FiniteComplex::from_chains(chains).expect("subdivision of a valid complex")
}

pub fn sd_label(k: &FiniteComplex, simplex: &[u32]) -> Label {
    Label::Tuple(simplex.iter().map(|&v| k.label(v).clone()).collect())
}

/// Iterated subdivision.
pub fn subdivide_n(k: &FiniteComplex, m: u32) -> FiniteComplex {
    let mut out = k.clone();
    for _ in 0..m {
        out = subdivide(&out);
    }
    out
}

/// A simplicial map given by a vertex assignment; chains must land on
/// chains (weakly monotone along each simplex, image a simplex of the
/// target).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexMap {
    pub source: FiniteComplex,
    pub target: FiniteComplex,
    vertex_map: Vec<u32>,
}

impl ComplexMap {
    pub fn new(
        source: FiniteComplex,
        target: FiniteComplex,
        vertex_map: Vec<u32>,
    ) -> Result<ComplexMap> {
        if vertex_map.len() != source.vertex_count() {
            return Err(Error::TypeMismatch(format!(
                "vertex map has {} entries for {} vertices",
                vertex_map.len(),
                source.vertex_count()
            )));
        }
        let map = ComplexMap {
            source,
            target,
            vertex_map,
        };
        for chain in map.source.maximal_chains() {
            let image = map.image_chain(chain);
            if !map.target.has_simplex(&image) {
                return Err(Error::TypeMismatch(format!(
                    "image of chain {:?} is not a simplex of the target",
                    chain
                        .iter()
                        .map(|&v| map.source.label(v).to_string())
                        .collect::<Vec<_>>()
                )));
            }
        }
        Ok(map)
    }

    /// Builds the vertex assignment from labels.
    pub fn on_labels(
        source: &FiniteComplex,
        target: &FiniteComplex,
        f: impl Fn(&Label) -> Label,
    ) -> Result<ComplexMap> {
        let mut vm = Vec::with_capacity(source.vertex_count());
        for l in source.labels() {
            let img = f(l);
            let idx = target.vertex_index(&img).ok_or_else(|| {
                Error::TypeMismatch(format!("image label {img} is not a target vertex"))
            })?;
            vm.push(idx);
        }
        ComplexMap::new(source.clone(), target.clone(), vm)
    }

    pub fn apply(&self, v: u32) -> u32 {
        self.vertex_map[v as usize]
    }

    /// Image of a chain with adjacent duplicates collapsed.
    pub fn image_chain(&self, chain: &[u32]) -> Vec<u32> {
        let mut out: Vec<u32> = Vec::with_capacity(chain.len());
        for &v in chain {
            let w = self.vertex_map[v as usize];
            if out.last() != Some(&w) {
                out.push(w);
            }
        }
        out
    }

    pub fn identity(k: &FiniteComplex) -> ComplexMap {
        ComplexMap {
            source: k.clone(),
            target: k.clone(),
            vertex_map: (0..k.vertex_count() as u32).collect(),
        }
    }

    pub fn compose(outer: &ComplexMap, inner: &ComplexMap) -> Result<ComplexMap> {
        if inner.target != outer.source {
            return Err(Error::TypeMismatch("complex map composition".into()));
        }
        let vm = inner
            .vertex_map
            .iter()
            .map(|&v| outer.vertex_map[v as usize])
            .collect();
        ComplexMap::new(inner.source.clone(), outer.target.clone(), vm)
    }

    /// Restriction to a subcomplex of the source, with target narrowed to a
    /// subcomplex of the target when requested.
    pub fn restrict(&self, sub: &FiniteComplex, new_target: Option<&FiniteComplex>) -> Result<ComplexMap> {
        if !self.source.contains_subcomplex(sub) {
            return Err(Error::TypeMismatch(
                "restriction domain is not a subcomplex of the source".into(),
            ));
        }
        let target = new_target.unwrap_or(&self.target);
        let mut vm = Vec::with_capacity(sub.vertex_count());
        for l in sub.labels() {
            let v = self.source.vertex_index(l).expect("subcomplex vertex");
            let img_label = self.target.label(self.vertex_map[v as usize]);
            let idx = target.vertex_index(img_label).ok_or_else(|| {
                Error::TypeMismatch(format!("image {img_label} misses the new target"))
            })?;
            vm.push(idx);
        }
        ComplexMap::new(sub.clone(), target.clone(), vm)
    }

    /// Functorial subdivision of a map.
    pub fn subdivide(&self) -> Result<ComplexMap> {
        let src = subdivide(&self.source);
        let tgt = subdivide(&self.target);
        ComplexMap::on_labels(&src, &tgt, |l| {
            let Label::Tuple(members) = l else {
                panic!("subdivision vertex is a tuple")
            };
            let chain: Vec<u32> = members
                .iter()
                .map(|m| self.source.vertex_index(m).expect("member vertex"))
                .collect();
            let image = self.image_chain(&chain);
            sd_label(&self.target, &image)
        })
    }
}

/// The last-vertex map `sd K -> K`: a simplex goes to its maximal vertex.
pub fn last_vertex(k: &FiniteComplex) -> ComplexMap {
    let sd = subdivide(k);
    ComplexMap::on_labels(&sd, k, |l| {
        let Label::Tuple(members) = l else {
            panic!("subdivision vertex is a tuple")
        };
        members.last().expect("nonempty simplex").clone()
    })
    .expect("last vertex map is simplicial")
}

/// All order-preserving vertex maps inducing simplicial maps `K -> L`.
pub fn enumerate_maps(
    k: &FiniteComplex,
    l: &FiniteComplex,
    limits: &Limits,
) -> Result<Vec<ComplexMap>> {
    let nk = k.vertex_count();
    let nl = l.vertex_count() as u32;
    if nk == 0 {
        return Ok(vec![ComplexMap::new(k.clone(), l.clone(), vec![])?]);
    }
    let mut out = Vec::new();
    let mut assignment = vec![0u32; nk];
    // Pairwise chain constraints: for every 2-subchain (u, v) of a simplex,
    // (g(u), g(v)) must be a (possibly degenerate) chain of the target.
    let mut pairs: BTreeSet<(u32, u32)> = BTreeSet::new();
    for c in k.maximal_chains() {
        for i in 0..c.len() {
            for j in i + 1..c.len() {
                pairs.insert((c[i], c[j]));
            }
        }
    }
    fn ok_pair(l: &FiniteComplex, a: u32, b: u32) -> bool {
        a == b || l.has_simplex(&[a, b])
    }
    fn rec(
        k: &FiniteComplex,
        l: &FiniteComplex,
        nl: u32,
        pairs: &BTreeSet<(u32, u32)>,
        assignment: &mut Vec<u32>,
        v: usize,
        out: &mut Vec<ComplexMap>,
        limit: usize,
    ) -> Result<()> {
        if v == assignment.len() {
            if let Ok(m) = ComplexMap::new(k.clone(), l.clone(), assignment.clone()) {
                if out.len() >= limit {
                    return Err(Error::SizeLimit(format!(
                        "more than {limit} simplicial maps"
                    )));
                }
                out.push(m);
            }
            return Ok(());
        }
        for img in 0..nl {
            assignment[v] = img;
            let consistent = pairs.iter().all(|&(a, b)| {
                let (a, b) = (a as usize, b as usize);
                if a.max(b) > v {
                    true
                } else {
                    ok_pair(l, assignment[a], assignment[b])
                }
            });
            if consistent {
                rec(k, l, nl, pairs, assignment, v + 1, out, limit)?;
            }
        }
        Ok(())
    }
    rec(k, l, nl, &pairs, &mut assignment, 0, &mut out, limits.max_maps)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_simplex_counts() {
        let d2 = standard_simplex(2);
        assert_eq!(d2.vertex_count(), 3);
        assert_eq!(d2.simplex_count(), 7); // 3 + 3 + 1
        assert_eq!(d2.dim(), 2);
        assert_eq!(d2.top_count(), 1);
    }

    #[test]
    fn boundary_of_interval_is_two_points() {
        let b = boundary(&standard_simplex(1)).unwrap();
        assert_eq!(b.vertex_count(), 2);
        assert_eq!(b.dim(), 0);
    }

    #[test]
    fn boundary_of_triangle() {
        let b = boundary(&standard_simplex(2)).unwrap();
        assert_eq!(b.vertex_count(), 3);
        assert_eq!(b.top_count(), 3);
        assert_eq!(b.euler_characteristic(), 0); // a circle
    }

    #[test]
    fn horn_has_n_facets() {
        let h = horn(2, 1).unwrap();
        assert_eq!(h.top_count(), 2);
        assert!(h.has_simplex(&[
            h.vertex_index(&Label::Atom(0)).unwrap(),
            h.vertex_index(&Label::Atom(1)).unwrap()
        ]));
    }

    #[test]
    fn product_top_counts_are_binomial() {
        let d1 = standard_simplex(1);
        let d2 = standard_simplex(2);
        assert_eq!(product(&d1, &d1).top_count(), 2);
        assert_eq!(product(&d2, &d1).top_count(), 3);
        assert_eq!(product(&d2, &d2).top_count(), 6);
        // product with a point is the identity up to labels
        let pt = standard_simplex(0);
        let p = product(&d2, &pt);
        assert_eq!(p.top_count(), 1);
        assert_eq!(p.simplex_count(), d2.simplex_count());
    }

    #[test]
    fn cube_agrees_with_iterated_product() {
        let c2 = cube(2);
        assert_eq!(c2.top_count(), 2);
        assert_eq!(c2.vertex_count(), 4);
        let d1 = standard_simplex(1);
        let p = product(&d1, &d1);
        assert_eq!(p.top_count(), c2.top_count());
        assert_eq!(p.simplex_count(), c2.simplex_count());
        // the two triangles share the diagonal edge
        let c3 = cube(3);
        assert_eq!(c3.top_count(), 6);
        assert_eq!(c3.vertex_count(), 8);
    }

    #[test]
    fn cube_boundary_counts() {
        assert_eq!(cube_boundary(1).vertex_count(), 2);
        assert_eq!(cube_boundary(1).dim(), 0);
        let b2 = cube_boundary(2);
        assert_eq!(b2.dim(), 1);
        assert_eq!(b2.top_count(), 4);
        assert_eq!(b2.euler_characteristic(), 0);
        // free-face boundary agrees with the coordinate description
        let via_free = boundary(&cube(2)).unwrap();
        assert_eq!(via_free, b2);
    }

    #[test]
    fn subdivision_counts() {
        let sd1 = subdivide(&standard_simplex(1));
        assert_eq!(sd1.vertex_count(), 3);
        assert_eq!(sd1.top_count(), 2);
        let sd2 = subdivide(&standard_simplex(2));
        assert_eq!(sd2.top_count(), 6);
        assert_eq!(subdivide(&sd2).top_count(), 36);
        for n in 0..=3u32 {
            let mut k = standard_simplex(n);
            let expect = (1..=(n as usize + 1)).product::<usize>();
            for m in 1..=2u32 {
                k = subdivide(&k);
                assert_eq!(k.top_count(), expect.pow(m), "sd^{m} of simplex {n}");
            }
        }
    }

    #[test]
    fn subdivision_preserves_euler_characteristic() {
        for k in [
            standard_simplex(2),
            standard_simplex(3),
            cube(2),
            boundary(&standard_simplex(3)).unwrap(),
        ] {
            let e = k.euler_characteristic();
            assert_eq!(subdivide(&k).euler_characteristic(), e);
        }
    }

    #[test]
    fn last_vertex_is_simplicial_and_functorial() {
        let d2 = standard_simplex(2);
        let lv = last_vertex(&d2);
        // {01} goes to 1
        let mid = lv
            .source
            .vertex_index(&Label::Tuple(vec![Label::Atom(0), Label::Atom(1)]))
            .unwrap();
        assert_eq!(lv.target.label(lv.apply(mid)), &Label::Atom(1));
        // restriction to the boundary lands in the boundary
        let bd = boundary(&d2).unwrap();
        let sd_bd = subdivide(&bd);
        let restricted = lv.restrict(&sd_bd, Some(&bd));
        assert!(restricted.is_ok());
    }

    #[test]
    fn subdivision_is_functorial_on_maps() {
        let d1 = standard_simplex(1);
        let d2 = standard_simplex(2);
        let limits = Limits::default();
        for f in enumerate_maps(&d1, &d2, &limits).unwrap() {
            for g in enumerate_maps(&d2, &d1, &limits).unwrap() {
                let gf = ComplexMap::compose(&g, &f).unwrap();
                let sd_gf = gf.subdivide().unwrap();
                let sd_g = g.subdivide().unwrap();
                let sd_f = f.subdivide().unwrap();
                assert_eq!(sd_gf, ComplexMap::compose(&sd_g, &sd_f).unwrap());
            }
        }
    }

    #[test]
    fn map_enumeration_counts() {
        let limits = Limits::default();
        let d0 = standard_simplex(0);
        let d1 = standard_simplex(1);
        assert_eq!(enumerate_maps(&d0, &d1, &limits).unwrap().len(), 2);
        assert_eq!(enumerate_maps(&d1, &d1, &limits).unwrap().len(), 3);
    }

    #[test]
    fn reversing_map_is_rejected() {
        let d1 = standard_simplex(1);
        // 0 -> 1, 1 -> 0 reverses the edge.
        assert!(ComplexMap::new(d1.clone(), d1.clone(), vec![1, 0]).is_err());
    }
}
