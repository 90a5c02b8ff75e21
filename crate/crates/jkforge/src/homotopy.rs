//! Elementary polynomial homotopies and machine-checkable certificates.
//!
//! An elementary homotopy is a homomorphism `A -> B[x]` whose evaluations at
//! `x = 0, 1` are the two compared maps; a certificate is a chain of such
//! links with matching consecutive endpoints. This module builds the
//! canonical links: the `phi` interpolations between neighbouring faces, the
//! barycenter-pulling schedules on subdivided simplices and cubes (assembled
//! from `phi` links through poset maps, one moved vertex at a time), path
//! corrections, and the standard contractions.

use std::collections::BTreeMap;

use crate::algebra::{Alg, Element};
use crate::complex::{product, standard_simplex, subdivide_n, ComplexMap, FiniteComplex, Label};
use crate::error::{Error, Result};
use crate::funalg::{cube_map, Power, PowerAlgebra, SimplexAlgebra};
use crate::funalg::simplex::{spoly_add, spoly_const, spoly_mul, spoly_pow, spoly_var, SPoly};
use crate::map::{AlgebraMap, Growth, LinearMap};
use crate::polyext::PolyExt;
use crate::subalg::ImageSpan;
use crate::tensorial::UniversalExtension;

/// A verified homomorphism into a polynomial carrier, together with the
/// carrier so the two endpoint evaluations can be formed.
#[derive(Debug, Clone)]
pub struct ElementaryHomotopy {
    pub carrier: PolyExt,
    pub map: AlgebraMap,
}

impl ElementaryHomotopy {
    pub fn new(carrier: PolyExt, map: AlgebraMap) -> Result<ElementaryHomotopy> {
        if !map.target().same_space(&carrier.alg) {
            return Err(Error::TypeMismatch(
                "homotopy map does not land in its carrier".into(),
            ));
        }
        Ok(ElementaryHomotopy { carrier, map })
    }

    /// The constant homotopy at `f`.
    pub fn constant(f: &AlgebraMap) -> Result<ElementaryHomotopy> {
        let carrier = PolyExt::carrier(f.target());
        let map = AlgebraMap::compose(&carrier.include(), f)?;
        Ok(ElementaryHomotopy { carrier, map })
    }

    pub fn source(&self) -> &Alg {
        self.map.source()
    }

    /// Evaluation endpoints `(at x = 0, at x = 1)`.
    pub fn endpoints(&self) -> Result<(AlgebraMap, AlgebraMap)> {
        let d0 = self.carrier.eval_map(0);
        let d1 = self.carrier.eval_map(1);
        Ok((
            AlgebraMap::compose(&d0, &self.map)?,
            AlgebraMap::compose(&d1, &self.map)?,
        ))
    }

    /// Substitutes `x -> 1 - x`.
    pub fn reverse(&self) -> Result<ElementaryHomotopy> {
        let rev = self.carrier.reverse_map();
        Ok(ElementaryHomotopy {
            carrier: self.carrier.clone(),
            map: AlgebraMap::compose(&rev, &self.map)?,
        })
    }

    pub fn precompose(&self, f: &AlgebraMap) -> Result<ElementaryHomotopy> {
        Ok(ElementaryHomotopy {
            carrier: self.carrier.clone(),
            map: AlgebraMap::compose(&self.map, f)?,
        })
    }

    /// Pushes the homotopy forward along `g` on values: `A -> C[x]` from
    /// `A -> B[x]` and `g: B -> C`.
    pub fn postcompose(&self, g: &AlgebraMap) -> Result<ElementaryHomotopy> {
        let target_carrier = PolyExt::carrier(g.target());
        let gx = self.carrier.extend_linear(&g.lin, &target_carrier)?;
        let map = AlgebraMap {
            lin: LinearMap::compose(&gx, &self.map.lin)?,
            verified: crate::map::VerifyStatus::Unchecked,
        };
        Ok(ElementaryHomotopy {
            carrier: target_carrier,
            map,
        })
    }
}

/// An ordered list of elementary homotopies with matching consecutive
/// endpoints: a certificate that the two outer endpoints are polynomially
/// homotopic.
#[derive(Debug, Clone, Default)]
pub struct HomotopyChain {
    pub links: Vec<ElementaryHomotopy>,
}

impl HomotopyChain {
    pub fn single(link: ElementaryHomotopy) -> HomotopyChain {
        HomotopyChain { links: vec![link] }
    }

    pub fn concat(mut self, other: HomotopyChain) -> HomotopyChain {
        self.links.extend(other.links);
        self
    }

    pub fn reverse(&self) -> Result<HomotopyChain> {
        let mut links = Vec::with_capacity(self.links.len());
        for l in self.links.iter().rev() {
            links.push(l.reverse()?);
        }
        Ok(HomotopyChain { links })
    }

    pub fn precompose(&self, f: &AlgebraMap) -> Result<HomotopyChain> {
        let links = self
            .links
            .iter()
            .map(|l| l.precompose(f))
            .collect::<Result<_>>()?;
        Ok(HomotopyChain { links })
    }

    pub fn postcompose(&self, g: &AlgebraMap) -> Result<HomotopyChain> {
        let links = self
            .links
            .iter()
            .map(|l| l.postcompose(g))
            .collect::<Result<_>>()?;
        Ok(HomotopyChain { links })
    }
}

/// Accepts the chain as a certificate that `f` is homotopic to `g`: the
/// left end must equal `f`, the right end `g`, every link must be a
/// verified homomorphism and consecutive endpoints must agree, all within
/// the guarantee windows.
pub fn check_homotopic(f: &AlgebraMap, g: &AlgebraMap, chain: &HomotopyChain) -> Result<()> {
    if chain.links.is_empty() {
        let w = f.comparison_window(g);
        return f
            .agrees_with(g, w)
            .map_err(|reason| Error::BrokenChain { index: 0, reason });
    }
    let mut prev = f.clone();
    for (i, link) in chain.links.iter().enumerate() {
        if let crate::map::VerifyStatus::Failed { witness } = link.map.verify() {
            return Err(Error::BrokenChain {
                index: i,
                reason: format!("link is not a homomorphism: {witness}"),
            });
        }
        let (left, right) = link.endpoints()?;
        let w = left.comparison_window(&prev);
        left.agrees_with(&prev, w)
            .map_err(|reason| Error::BrokenChain { index: i, reason })?;
        prev = right;
    }
    let w = prev.comparison_window(g);
    prev.agrees_with(g, w)
        .map_err(|reason| Error::BrokenChain {
            index: chain.links.len() - 1,
            reason,
        })
}

/// Images of the interpolation `phi_{i,j}` on one simplex algebra, split by
/// `x`-degree: `t_k` goes to `t_k` (k < i), `x t_i` (k = i),
/// `x t_k + (1-x) t_{k-1}` (i < k < j), `(1-x) t_{j-1}` (k = j) and
/// `t_{k-1}` (k > j), with `t_0` eliminated on both sides.
fn phi_images(
    src: &SimplexAlgebra,
    tgt: &SimplexAlgebra,
    i: u32,
    j: u32,
) -> Result<Vec<BTreeMap<u32, Element>>> {
    let n = tgt.n as usize; // src has dimension n + 1
    if src.n != tgt.n + 1 || i >= j || j > src.n {
        return Err(Error::IndexOutOfRange(format!(
            "phi({i},{j}) from dimension {}",
            src.n
        )));
    }
    let ring = src.base.ring;
    // Variables 0..n-1 are the target coordinates t_1..t_n; variable n is x.
    let vars = n + 1;
    let x = spoly_var(vars, n, ring);
    let one_minus_x = spoly_add(
        &spoly_const(vars, ring.one()),
        &x.iter().map(|(k, c)| (k.clone(), c.neg())).collect(),
    );
    // Target coordinate s_v for v = 0..n in normal form.
    let coord = |v: u32| -> SPoly {
        if v == 0 {
            let mut p = spoly_const(vars, ring.one());
            for w in 0..n {
                p = spoly_add(
                    &p,
                    &spoly_var(vars, w, ring)
                        .iter()
                        .map(|(k, c)| (k.clone(), c.neg()))
                        .collect(),
                );
            }
            p
        } else {
            spoly_var(vars, v as usize - 1, ring)
        }
    };
    let mut subst: Vec<SPoly> = Vec::with_capacity(src.n as usize);
    for k in 1..=src.n {
        let p = if k < i {
            coord(k)
        } else if k == i {
            spoly_mul(&x, &coord(i))
        } else if k < j {
            spoly_add(&spoly_mul(&x, &coord(k)), &spoly_mul(&one_minus_x, &coord(k - 1)))
        } else if k == j {
            spoly_mul(&one_minus_x, &coord(j - 1))
        } else {
            coord(k - 1)
        };
        subst.push(p);
    }
    let mut out = Vec::with_capacity(src.alg.dim());
    for idx in 0..src.alg.dim() as u32 {
        let (b, mu) = src.decompose(idx);
        let mut poly = spoly_const(vars, ring.one());
        for (k, &e) in mu.iter().enumerate() {
            if e > 0 {
                poly = spoly_mul(&poly, &spoly_pow(&subst[k], vars, e, ring));
            }
        }
        // split by the x-degree (last variable)
        let mut by_degree: BTreeMap<u32, SPoly> = BTreeMap::new();
        for (mono, c) in poly {
            let e = mono[n];
            let t_part = mono[..n].to_vec();
            by_degree
                .entry(e)
                .or_default()
                .insert(t_part, c);
        }
        let mut split = BTreeMap::new();
        for (e, p) in by_degree {
            split.insert(e, tgt.from_poly(&[(b, p)])?);
        }
        out.push(split);
    }
    Ok(out)
}

/// The elementary homotopy `phi_{i,j}` between `face(i)` and `face(j)` on
/// the simplex function algebra of dimension `n + 1`.
pub fn phi(b: &Alg, n: u32, i: u32, j: u32) -> Result<ElementaryHomotopy> {
    let src = SimplexAlgebra::new(b, n + 1);
    let tgt = SimplexAlgebra::new(b, n);
    let carrier = PolyExt::carrier(&tgt.alg);
    let images = phi_images(&src, &tgt, i, j)?;
    let lin = LinearMap::on_basis(
        src.alg.clone(),
        carrier.alg.clone(),
        Growth::new(2, -1),
        |idx| {
            let mut out = Element::zero();
            for (e, elem) in &images[idx as usize] {
                out = out.add(&carrier.times_x(elem, *e)?);
            }
            Ok(Some(out))
        },
    )?;
    let map = AlgebraMap::verified(lin)?;
    ElementaryHomotopy::new(carrier, map)
}

enum ComponentPlan {
    /// Both stages restrict identically: constant link on this component.
    Constant { restrict: AlgebraMap },
    /// The stages differ on this component: a `phi_{r,r+1}` link applied to
    /// the restriction to the union chain.
    Interpolate {
        restrict: AlgebraMap,
        images: Vec<BTreeMap<u32, Element>>,
    },
}

/// One elementary link between the pullbacks along two stage maps that
/// differ at a single vertex with comparable images.
pub fn stage_link(
    f: &AlgebraMap,
    power_l: &Power,
    power_k: &Power,
    g0: &ComplexMap,
    g1: &ComplexMap,
) -> Result<ElementaryHomotopy> {
    if g0.source != power_k.complex
        || g1.source != power_k.complex
        || g0.target != power_l.complex
        || g1.target != power_l.complex
    {
        return Err(Error::TypeMismatch("stage link complexes".into()));
    }
    let carrier = PolyExt::carrier(power_k.alg());
    let mut plans: Vec<(usize, ComponentPlan)> = Vec::new();
    let mut orientation_reversed: Option<bool> = None;
    for (pos, chain) in power_k.chains().iter().enumerate() {
        let w0: Vec<u32> = chain.iter().map(|&v| g0.apply(v)).collect();
        let w1: Vec<u32> = chain.iter().map(|&v| g1.apply(v)).collect();
        if w0 == w1 {
            let plan =
                component_restriction(power_l, &dedup(&w0), &w0, power_k.components[pos].n)?;
            plans.push((pos, ComponentPlan::Constant { restrict: plan.1 }));
            continue;
        }
        // Exactly one moved vertex; its two images are comparable and
        // adjacent in the union chain.
        let moved: Vec<usize> = (0..chain.len()).filter(|&p| w0[p] != w1[p]).collect();
        if moved.len() != 1 {
            return Err(Error::Unsupported(
                "stage maps differ at more than one vertex of a simplex".into(),
            ));
        }
        let p = moved[0];
        let (a, bv) = (w0[p], w1[p]);
        // union chain c: w0 with bv inserted next to a
        let base = dedup(&w0);
        let apos = base.iter().position(|&v| v == a).unwrap();
        let mut union = base.clone();
        let reversed = in_order(power_l, a, bv)?;
        let (r, insert_at) = if reversed {
            // a < bv: positions (a, bv)
            (apos as u32, apos + 1)
        } else {
            // bv < a
            (apos as u32, apos)
        };
        union.insert(insert_at, bv);
        if !power_l.complex.has_simplex(&union) {
            return Err(Error::Unsupported(format!(
                "union chain {union:?} is not a simplex of the stage target"
            )));
        }
        match orientation_reversed {
            None => orientation_reversed = Some(reversed),
            Some(o) if o == reversed => {}
            _ => {
                return Err(Error::Unsupported(
                    "mixed pull orientations within one stage".into(),
                ))
            }
        }
        let dim_union = union.len() as u32 - 1;
        let union_alpha: Vec<u32> = (0..union.len() as u32).collect();
        let _ = union_alpha;
        let (union_simplex, restrict) =
            component_restriction(power_l, &union, &union, dim_union)?;
        let tgt = &power_k.components[pos];
        let images = phi_images(&union_simplex, tgt, r, r + 1)?;
        plans.push((pos, ComponentPlan::Interpolate { restrict, images }));
    }
    let lin = LinearMap::on_basis(
        f.source().clone(),
        carrier.alg.clone(),
        Growth::new(2, 0).after(&f.growth()),
        |i| {
            let Some(val) = f.lin.image(i) else {
                return Ok(None);
            };
            // per-component, per-x-degree pieces
            let mut by_degree: BTreeMap<u32, Vec<Element>> = BTreeMap::new();
            let zero_parts: Vec<Element> = power_k
                .components
                .iter()
                .map(|_| Element::zero())
                .collect();
            for (pos, plan) in &plans {
                match plan {
                    ComponentPlan::Constant { restrict } => {
                        let comp = restrict.apply(val)?;
                        by_degree
                            .entry(0)
                            .or_insert_with(|| zero_parts.clone())[*pos] = comp;
                    }
                    ComponentPlan::Interpolate { restrict, images } => {
                        let comp = restrict.apply(val)?;
                        for (cidx, c) in comp.terms() {
                            for (e, elem) in &images[cidx as usize] {
                                let entry = by_degree
                                    .entry(*e)
                                    .or_insert_with(|| zero_parts.clone());
                                entry[*pos] = entry[*pos].add(&elem.scale(c));
                            }
                        }
                    }
                }
            }
            let mut out = Element::zero();
            for (e, parts) in by_degree {
                let assembled = power_k.from_components(&parts)?;
                out = out.add(&carrier.times_x(&assembled, e)?);
            }
            Ok(Some(out))
        },
    )?;
    let map = AlgebraMap::verified(lin)?;
    let link = ElementaryHomotopy::new(carrier, map)?;
    if orientation_reversed.unwrap_or(false) {
        link.reverse()
    } else {
        Ok(link)
    }
}

fn dedup(seq: &[u32]) -> Vec<u32> {
    let mut out: Vec<u32> = Vec::with_capacity(seq.len());
    for &v in seq {
        if out.last() != Some(&v) {
            out.push(v);
        }
    }
    out
}

/// Whether `a` strictly precedes `b` in some simplex of the complex.
fn in_order(power: &Power, a: u32, b: u32) -> Result<bool> {
    if power.complex.has_simplex(&[a, b]) {
        Ok(true)
    } else if power.complex.has_simplex(&[b, a]) {
        Ok(false)
    } else {
        Err(Error::Unsupported(format!(
            "moved vertex images {a}, {b} are not comparable"
        )))
    }
}

/// The restriction of a power algebra to the simplex spanned by a chain,
/// factored through a containing maximal simplex.
fn component_restriction(
    power: &Power,
    chain: &[u32],
    image_seq: &[u32],
    tgt_dim: u32,
) -> Result<(SimplexAlgebra, AlgebraMap)> {
    let (lpos, lchain) = power
        .chains()
        .iter()
        .enumerate()
        .find(|(_, lc)| is_subchain(chain, lc))
        .ok_or_else(|| Error::TypeMismatch("chain not contained in a maximal chain".into()))?;
    let tgt = SimplexAlgebra::new(&power.base, tgt_dim);
    let alpha: Vec<u32> = image_seq
        .iter()
        .map(|&v| lchain.iter().position(|&u| u == v).unwrap() as u32)
        .collect();
    let pb = power.components[lpos].pullback(&alpha, &tgt)?;
    // restrict a power element by extracting the component first
    let p = power.clone();
    let lin = LinearMap::on_basis(
        power.alg().clone(),
        tgt.alg.clone(),
        Growth::ONE,
        move |i| {
            let comp = p.component(&p.alg().basis_element(i), lpos);
            Ok(Some(pb.apply(&comp)?))
        },
    )?;
    Ok((tgt, AlgebraMap::verified(lin)?))
}

fn is_subchain(sub: &[u32], sup: &[u32]) -> bool {
    let mut it = sup.iter();
    sub.iter().all(|v| it.any(|w| w == v))
}

/// Builds the chain of links along a sequence of stage maps.
pub fn chain_from_stages(
    f: &AlgebraMap,
    power_l: &Power,
    power_k: &Power,
    stages: &[ComplexMap],
) -> Result<HomotopyChain> {
    let mut links = Vec::new();
    for w in stages.windows(2) {
        links.push(stage_link(f, power_l, power_k, &w[0], &w[1])?);
    }
    Ok(HomotopyChain { links })
}

/// Monotone end-flip stages `I^n -> I^(n+1)`: stage `r` sends a vertex to
/// last coordinate 0 when its binary index is below `r`. Stage 0 is the
/// inclusion at last coordinate 1, stage `2^n` the inclusion at 0; the
/// flips happen one vertex at a time in binary counter order.
fn cube_graph_stages(n: u32) -> Result<Vec<ComplexMap>> {
    let src = crate::complex::cube(n);
    let tgt = crate::complex::cube(n + 1);
    let steps = 1u32 << n;
    let mut out = Vec::with_capacity(steps as usize + 1);
    for r in 0..=steps {
        let map = ComplexMap::on_labels(&src, &tgt, |l| {
            let bits = label_bits(l);
            let idx: u32 = bits
                .iter()
                .enumerate()
                .map(|(i, &b)| (b as u32) << i)
                .sum();
            let mut nb = bits.clone();
            nb.push(if idx < r { 0 } else { 1 });
            Label::bits(&nb)
        })?;
        out.push(map);
    }
    Ok(out)
}

fn label_bits(l: &Label) -> Vec<u8> {
    match l {
        Label::Tuple(items) => items
            .iter()
            .map(|i| match i {
                Label::Atom(b) => *b as u8,
                _ => panic!("cube label"),
            })
            .collect(),
        _ => panic!("cube label"),
    }
}

/// Stage maps for one barycentric subdivision of the cube schedule:
/// every vertex flip is expanded into raise / move / lower phases over the
/// chains containing it, mirroring the subdivided-interval picture.
fn cube_sd_stages(n: u32) -> Result<Vec<ComplexMap>> {
    let src = subdivide_n(&crate::complex::cube(n), 1);
    let tgt = subdivide_n(&crate::complex::cube(n + 1), 1);
    // current image (as a label chain of the target cube) per source vertex
    let mut current: BTreeMap<Label, Vec<Vec<u8>>> = BTreeMap::new();
    for l in src.labels() {
        let members = tuple_members(l);
        current.insert(
            l.clone(),
            members
                .iter()
                .map(|m| {
                    let mut b = label_bits(m);
                    b.push(1);
                    b
                })
                .collect(),
        );
    }
    let mut stages = vec![stage_from_current(&src, &tgt, &current)?];
    let steps = 1u32 << n;
    for r in 0..steps {
        let vr: Vec<u8> = (0..n).map(|i| ((r >> i) & 1) as u8).collect();
        let contains_vr = |l: &Label| -> bool {
            tuple_members(l).iter().any(|m| label_bits(m) == vr)
        };
        let with_zero = {
            let mut v = vr.clone();
            v.push(0);
            v
        };
        let with_one = {
            let mut v = vr.clone();
            v.push(1);
            v
        };
        // phase A: insert (v_r, 0) below (v_r, 1), largest chains first
        let mut touched: Vec<Label> = src
            .labels()
            .iter()
            .filter(|l| contains_vr(l))
            .cloned()
            .collect();
        touched.sort_by_key(|l| std::cmp::Reverse(tuple_members(l).len()));
        for l in &touched {
            let img = current.get_mut(l).unwrap();
            let pos = img.iter().position(|b| *b == with_one).expect("image has (v,1)");
            img.insert(pos, with_zero.clone());
            stages.push(stage_from_current(&src, &tgt, &current)?);
        }
        // phase B: the singleton drops (v_r, 1)
        let singleton = Label::Tuple(vec![Label::bits(&vr)]);
        if let Some(img) = current.get_mut(&singleton) {
            img.retain(|b| *b != with_one);
            stages.push(stage_from_current(&src, &tgt, &current)?);
        }
        // phase C: the longer chains drop (v_r, 1), smallest first
        let mut touched_c: Vec<Label> = touched
            .iter()
            .filter(|l| tuple_members(l).len() >= 2)
            .cloned()
            .collect();
        touched_c.sort_by_key(|l| tuple_members(l).len());
        for l in &touched_c {
            let img = current.get_mut(l).unwrap();
            img.retain(|b| *b != with_one);
            stages.push(stage_from_current(&src, &tgt, &current)?);
        }
    }
    Ok(stages)
}

fn tuple_members(l: &Label) -> Vec<Label> {
    match l {
        Label::Tuple(items) => items.clone(),
        _ => panic!("subdivision label"),
    }
}

fn stage_from_current(
    src: &FiniteComplex,
    tgt: &FiniteComplex,
    current: &BTreeMap<Label, Vec<Vec<u8>>>,
) -> Result<ComplexMap> {
    ComplexMap::on_labels(src, tgt, |l| {
        let img = &current[l];
        Label::Tuple(img.iter().map(|b| Label::bits(b)).collect())
    })
}

/// The chain from `d_0 f` to `d_1 f` for `f: A -> B^{sd^m I^(n+1)}`:
/// the vertex-pulling schedule of `2^n` links at `m = 0`, its barycentric
/// expansion at `m = 1`.
pub fn cube_face_homotopy(
    f: &AlgebraMap,
    power_n1: &Power,
    power_n: &Power,
    n: u32,
    m: u32,
) -> Result<HomotopyChain> {
    if !f.target().same_space(power_n1.alg()) {
        return Err(Error::TypeMismatch("cube homotopy source map".into()));
    }
    let stages = match m {
        0 => cube_graph_stages(n)?,
        1 => cube_sd_stages(n)?,
        _ => {
            return Err(Error::Unsupported(
                "cube pulling schedules are implemented for subdivision stages 0 and 1".into(),
            ))
        }
    };
    chain_from_stages(f, power_n1, power_n, &stages)
}

/// Stage maps realizing `face(u) ~ face(u+1)` on the once-subdivided
/// simplex: raise the faces containing the moving vertex, move it, lower
/// them again.
fn simplex_sd_stages(n: u32, u: u32, v: u32) -> Result<Vec<ComplexMap>> {
    if u.abs_diff(v) != 1 {
        return Err(Error::Unsupported(
            "single-pull schedules need adjacent faces".into(),
        ));
    }
    let src = subdivide_n(&standard_simplex(n), 1);
    let tgt = subdivide_n(&standard_simplex(n + 1), 1);
    // delta^u: [n] -> [n+1]
    let delta_u = |w: u32| if w < u { w } else { w + 1 };
    let moving = (0..=n).find(|&w| delta_u(w) == v).expect("v in start face");
    let mut current: BTreeMap<Label, Vec<u32>> = BTreeMap::new();
    for l in src.labels() {
        let members: Vec<u32> = atoms(l);
        current.insert(l.clone(), members.iter().map(|&w| delta_u(w)).collect());
    }
    let mk = |cur: &BTreeMap<Label, Vec<u32>>| -> Result<ComplexMap> {
        ComplexMap::on_labels(&src, &tgt, |l| {
            Label::Tuple(cur[l].iter().map(|&w| Label::Atom(w)).collect())
        })
    };
    let mut stages = vec![mk(&current)?];
    let mut touched: Vec<Label> = src
        .labels()
        .iter()
        .filter(|l| atoms(l).contains(&moving))
        .cloned()
        .collect();
    // phase A: insert u, largest faces first
    touched.sort_by_key(|l| std::cmp::Reverse(atoms(l).len()));
    for l in &touched {
        let img = current.get_mut(l).unwrap();
        let pos = img.iter().position(|&w| w > u).unwrap_or(img.len());
        img.insert(pos, u);
        stages.push(mk(&current)?);
    }
    // phase B: the singleton drops v
    let singleton = Label::Tuple(vec![Label::Atom(moving)]);
    if let Some(img) = current.get_mut(&singleton) {
        img.retain(|&w| w != v);
        stages.push(mk(&current)?);
    }
    // phase C: the larger faces drop v, smallest first
    let mut touched_c: Vec<Label> = touched
        .iter()
        .filter(|l| atoms(l).len() >= 2)
        .cloned()
        .collect();
    touched_c.sort_by_key(|l| atoms(l).len());
    for l in &touched_c {
        let img = current.get_mut(l).unwrap();
        img.retain(|&w| w != v);
        stages.push(mk(&current)?);
    }
    Ok(stages)
}

fn atoms(l: &Label) -> Vec<u32> {
    match l {
        Label::Tuple(items) => items
            .iter()
            .map(|i| match i {
                Label::Atom(a) => *a,
                _ => panic!("simplex subdivision label"),
            })
            .collect(),
        _ => panic!("simplex subdivision label"),
    }
}

/// The chain from `face(i) . f` to `face(j) . f` for
/// `f: A -> B^{sd^m Delta^(n+1)}` and `i < j`. At `m = 0` this is the
/// single `phi_{i,j}` link; at `m = 1` it is a concatenation of
/// barycenter-pulling schedules between neighbouring faces.
pub fn simplex_face_homotopy(
    f: &AlgebraMap,
    b: &Alg,
    n: u32,
    m: u32,
    i: u32,
    j: u32,
) -> Result<HomotopyChain> {
    if i >= j || j > n + 1 {
        return Err(Error::IndexOutOfRange(format!("faces ({i}, {j})")));
    }
    match m {
        0 => {
            let link = phi(b, n, i, j)?.precompose(f)?;
            Ok(HomotopyChain::single(link))
        }
        1 => {
            let power_l = PowerAlgebra::new(b, &subdivide_n(&standard_simplex(n + 1), 1))?;
            if !f.target().same_space(power_l.alg()) {
                return Err(Error::TypeMismatch(
                    "simplex homotopy source map".into(),
                ));
            }
            let power_k = PowerAlgebra::new(b, &subdivide_n(&standard_simplex(n), 1))?;
            let mut chain = HomotopyChain::default();
            for u in i..j {
                let stages = simplex_sd_stages(n, u, u + 1)?;
                chain = chain.concat(chain_from_stages(f, &power_l, &power_k, &stages)?);
            }
            Ok(chain)
        }
        _ => Err(Error::Unsupported(
            "simplex pulling schedules are implemented for subdivision stages 0 and 1".into(),
        )),
    }
}

/// Contraction of a square-zero algebra: `a -> a x` connects 0 to the
/// identity.
pub fn contract_squarezero(a: &Alg) -> Result<ElementaryHomotopy> {
    let carrier = PolyExt::carrier(a);
    let lin = LinearMap::on_basis(a.clone(), carrier.alg.clone(), Growth::new(1, 1), |i| {
        Ok(Some(carrier.times_x(&a.basis_element(i), 1)?))
    })?;
    let map = AlgebraMap::verified(lin).map_err(|_| {
        Error::TypeMismatch(format!("{} is not square-zero", a.name))
    })?;
    ElementaryHomotopy::new(carrier, map)
}

/// Contraction of an algebra with a declared multiplicative grading:
/// a homogeneous element of grade `d` goes to `a x^d`.
pub fn contract_graded(a: &Alg, grading: &[u32]) -> Result<ElementaryHomotopy> {
    if grading.len() != a.dim() {
        return Err(Error::GradingMissing(a.name.clone()));
    }
    for (&(i, j), e) in a.mult_entries() {
        let expect = grading[i as usize] + grading[j as usize];
        for (k, _) in e.terms() {
            if grading[k as usize] != expect {
                return Err(Error::GradingMissing(format!(
                    "{}: grading is not multiplicative on {}*{}",
                    a.name,
                    a.symbol(i),
                    a.symbol(j)
                )));
            }
        }
    }
    let max_grade = grading.iter().copied().max().unwrap_or(0);
    let carrier = PolyExt::new(a, a.cap + max_grade);
    let lin = LinearMap::on_basis(
        a.clone(),
        carrier.alg.clone(),
        Growth::new(1, max_grade as i32),
        |i| Ok(Some(carrier.times_x(&a.basis_element(i), grading[i as usize])?)),
    )?;
    let map = AlgebraMap::verified(lin)?;
    ElementaryHomotopy::new(carrier, map)
}

/// Contraction of the simplex function algebra to its last vertex: the
/// prism schedule contracts `id` to `s . delta` through the interval.
pub fn contract_simplex(b: &Alg, n: u32) -> Result<HomotopyChain> {
    let simplex = standard_simplex(n);
    let interval = standard_simplex(1);
    let prism = product(&interval, &simplex);
    let power_n = PowerAlgebra::new(b, &simplex)?;
    let power_prism = PowerAlgebra::new(b, &prism)?;
    // w: prism -> simplex, (a, j) -> j if a = 0 else n.
    let w = ComplexMap::on_labels(&prism, &simplex, |l| {
        let Label::Tuple(items) = l else { panic!("prism label") };
        let (a, j) = match (&items[0], &items[1]) {
            (Label::Atom(a), Label::Atom(j)) => (*a, *j),
            _ => panic!("prism label"),
        };
        Label::Atom(if a == 0 { j } else { n })
    })?;
    let h_star = power_n.restriction(&w, &power_prism)?;
    // stages: (j) -> (eta(j), j), flipping from the 0-slice to the 1-slice
    // one vertex at a time, highest vertex first.
    let mut stages = Vec::new();
    for r in 0..=(n + 1) {
        stages.push(ComplexMap::on_labels(&simplex, &prism, |l| {
            let Label::Atom(j) = l else { panic!("simplex label") };
            let eta = u32::from(*j >= (n + 1).saturating_sub(r));
            Label::Tuple(vec![Label::Atom(eta), Label::Atom(*j)])
        })?);
    }
    chain_from_stages(&h_star, &power_prism, &power_n, &stages)
}

/// Transports an elementary homotopy through the kernel functor: from
/// `h: A -> B[x]` with endpoints `f, g` to `J(A) -> (J B)[x]` with
/// endpoints `J(f), J(g)`.
pub fn transport_j(
    h: &ElementaryHomotopy,
    univ_src: &UniversalExtension,
    univ_tgt: &UniversalExtension,
) -> Result<ElementaryHomotopy> {
    if !univ_src.ext.quotient.same_space(h.source())
        || !univ_tgt.ext.quotient.same_space(&h.carrier.base)
    {
        return Err(Error::TypeMismatch("transport endpoints".into()));
    }
    let tensor_x = PolyExt::carrier(&univ_tgt.tensor.alg);
    let kernel_x = PolyExt::carrier(&univ_tgt.j.alg);
    // Word-wise application of h with the polynomial parts flattened out:
    // a word of letters b_i x^{e_i} becomes the word of the b_i times
    // x^{sum e_i}.
    let ring = h.source().ring;
    let lin = LinearMap::on_basis(
        univ_src.tensor.alg.clone(),
        tensor_x.alg.clone(),
        Growth::new(2, 0),
        |idx| {
            let word = univ_src.tensor.word(idx);
            let mut acc: Vec<(Vec<u32>, u32, crate::ring::Scalar)> =
                vec![(Vec::new(), 0, ring.one())];
            for &letter in word {
                let Some(img) = h.map.lin.image(letter) else {
                    return Ok(None);
                };
                let mut next = Vec::new();
                for (w, e, c) in &acc {
                    for (bx, d) in img.terms() {
                        let (b, extra) = h.carrier.decompose(bx);
                        let mut nw = w.clone();
                        nw.push(b);
                        next.push((nw, e + extra, c.mul(d)));
                    }
                }
                acc = next;
            }
            let mut out = Element::zero();
            for (w, e, c) in acc {
                let Some(widx) = univ_tgt.tensor.word_index(&w) else {
                    return Ok(None);
                };
                match tensor_x.monomial(widx, e) {
                    Some(mi) => out.add_term(mi, &c),
                    None => return Ok(None),
                }
            }
            Ok(Some(out))
        },
    )?;
    let flat = AlgebraMap::unchecked(lin);
    let on_j = AlgebraMap::compose(&flat, &univ_src.j.inclusion)?;
    let incl_x = kernel_x.extend_linear(&univ_tgt.j.inclusion.lin, &tensor_x)?;
    let span = ImageSpan::new(&incl_x);
    let lin = LinearMap::on_basis(
        univ_src.j.alg.clone(),
        kernel_x.alg.clone(),
        on_j.growth(),
        |i| match on_j.lin.image(i) {
            Some(img) => match span.express(img) {
                Some(e) => Ok(Some(e)),
                None => Err(Error::DiagramNotCommuting {
                    witness: format!(
                        "transported image of {} misses the kernel",
                        univ_src.j.alg.symbol(i)
                    ),
                }),
            },
            None => Ok(None),
        },
    )?;
    let map = AlgebraMap::verified(lin)?;
    ElementaryHomotopy::new(kernel_x, map)
}

/// Result of straightening a polynomial homotopy into a cube path: a
/// correction `g` covering the source and a path `H` with the two ends
/// matching `f_0 g` and `f_1 g` exactly.
pub struct CorrectedHomotopy {
    pub corrected_source: Alg,
    pub g: AlgebraMap,
    pub path: AlgebraMap,
}

/// Given `f_0, f_1: A -> B^{sd^m I^n}` and an elementary homotopy between
/// them, produces `g: A' -> A` (a fiber product of a path fibration along
/// the homotopy) and `H: A' -> B^{sd^m I^(n+1)}` with `d_0 H = f_0 g` and
/// `d_1 H = f_1 g`.
pub fn correct_homotopy(
    f0: &AlgebraMap,
    f1: &AlgebraMap,
    h: &ElementaryHomotopy,
    power_n: &Power,
    power_n1: &Power,
    n: u32,
    m: u32,
) -> Result<CorrectedHomotopy> {
    let mlg = power_n.alg().clone();
    if !f0.target().same_space(&mlg) || !f1.target().same_space(&mlg) {
        return Err(Error::TypeMismatch("correction endpoints".into()));
    }
    let d0 = crate::funalg::end_evaluation(power_n1, power_n, n, m, 0)?;
    let d1 = crate::funalg::end_evaluation(power_n1, power_n, n, m, 1)?;
    // The fiber products live at the global cap, so the homotopy carrier is
    // renormalized from its extended cap down to the cap of the cube side.
    let bprime = PolyExt::new(&mlg, mlg.cap);
    let shrink = LinearMap::on_basis(
        h.carrier.alg.clone(),
        bprime.alg.clone(),
        Growth::ONE,
        |i| {
            let (b, e) = h.carrier.decompose(i);
            Ok(bprime.monomial(b, e).map(|idx| Element::single(idx, mlg.ring.one())))
        },
    )?;
    let h_map = AlgebraMap {
        lin: LinearMap::compose(&shrink, &h.map.lin)?,
        verified: crate::map::VerifyStatus::Unchecked,
    };
    let d0p = bprime.eval_map(0);
    let d1p = bprime.eval_map(1);
    // X = (cube path object) x_{M x M} (polynomial path object)
    let sum = crate::algebra::direct_sum(
        "X.amb",
        &[power_n1.alg().clone(), bprime.alg.clone()],
    )?;
    let mm = crate::algebra::direct_sum("MM", &[mlg.clone(), mlg.clone()])?;
    let sum_c = sum.clone();
    let cube_alg = power_n1.alg().clone();
    let constraint = LinearMap::on_basis(sum.clone(), mm.clone(), Growth::ONE, |i| {
        let sym = sum_c.symbol(i);
        let (pos, rest) = sym.split_once('#').expect("sum symbol");
        let mut out = Element::zero();
        if pos == "0" {
            let j = cube_alg.index_of(rest).expect("cube symbol");
            let e = cube_alg.basis_element(j);
            for (kk, c) in d0.apply(&e)?.terms() {
                out.add_term(crate::algebra::summand_index(&mm, 0, kk, &mlg), c);
            }
            for (kk, c) in d1.apply(&e)?.terms() {
                out.add_term(crate::algebra::summand_index(&mm, 1, kk, &mlg), c);
            }
        } else {
            let j = bprime.alg.index_of(rest).expect("path symbol");
            let e = bprime.alg.basis_element(j);
            for (kk, c) in d0p.apply(&e)?.terms() {
                out.add_term(crate::algebra::summand_index(&mm, 0, kk, &mlg), &c.neg());
            }
            for (kk, c) in d1p.apply(&e)?.terms() {
                out.add_term(crate::algebra::summand_index(&mm, 1, kk, &mlg), &c.neg());
            }
        }
        Ok(Some(out))
    })?;
    let x_sub = crate::subalg::kernel_subalgebra("X", &constraint)?;
    let pr_cube = project_through(&x_sub, &sum, 0, power_n1.alg())?;
    let pr_path = project_through(&x_sub, &sum, 1, &bprime.alg)?;

    // q = (s, s'): M -> X with s the degenerate cube path and s' the
    // constant polynomial path.
    let proj = cube_map(n + 1, n, m, |bits| bits[..n as usize].to_vec())?;
    let s = power_n.restriction(&proj, power_n1)?;
    let s_prime = bprime.include();
    let q = {
        let lin = LinearMap::on_basis(mlg.clone(), x_sub.alg.clone(), Growth::ONE, |i| {
            let e = mlg.basis_element(i);
            let mut amb = Element::zero();
            for (kk, c) in s.apply(&e)?.terms() {
                amb.add_term(
                    crate::algebra::summand_index(&sum, 0, kk, power_n1.alg()),
                    c,
                );
            }
            for (kk, c) in s_prime.apply(&e)?.terms() {
                amb.add_term(crate::algebra::summand_index(&sum, 1, kk, &bprime.alg), c);
            }
            Ok(x_sub.express(&amb))
        })?;
        AlgebraMap::verified(lin)?
    };

    // B'' = M x_X X[x] along (q, eval_0): the mapping path factorization,
    // with the path object of X truncated at the global cap.
    let xx = PolyExt::new(&x_sub.alg, x_sub.alg.cap);
    let x_eval0 = xx.eval_map(0);
    let x_eval1 = xx.eval_map(1);
    let fp1 = crate::subalg::fiber_product("B''", &q, &x_eval0)?;
    let p = AlgebraMap::compose(&x_eval1, &fp1.pr2)?;
    let u_map = AlgebraMap::compose(&pr_path, &p)?;
    let v_map = AlgebraMap::compose(&pr_cube, &p)?;

    // A' = A x_{B'} B'' along (h, u).
    let fp2 = crate::subalg::fiber_product("A'", &h_map, &u_map)?;
    let g = fp2.pr1.clone();
    let path = AlgebraMap::compose(&v_map, &fp2.pr2)?;
    Ok(CorrectedHomotopy {
        corrected_source: fp2.sub.alg.clone(),
        g,
        path,
    })
}

fn project_through(
    sub: &crate::subalg::Embedded,
    sum: &Alg,
    pos: usize,
    part: &Alg,
) -> Result<AlgebraMap> {
    let lin = LinearMap::on_basis(sub.alg.clone(), part.clone(), Growth::ONE, |i| {
        let vec = sub.basis_vector(i);
        let mut out = Element::zero();
        for (j, c) in vec.terms() {
            let sym = sum.symbol(j);
            let (p, rest) = sym.split_once('#').expect("sum symbol");
            if p == pos.to_string() {
                out.add_term(part.index_of(rest).expect("summand symbol"), c);
            }
        }
        Ok(Some(out))
    })?;
    AlgebraMap::verified(lin)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{ground, square_zero};
    use crate::funalg::omega_object;
    use crate::ring::Ring;

    #[test]
    fn phi_endpoints_are_the_two_faces() {
        let k = ground(Ring::Q, 4);
        for n in 0..=2u32 {
            let src = SimplexAlgebra::new(&k, n + 1);
            let tgt = SimplexAlgebra::new(&k, n);
            for j in 1..=(n + 1) {
                for i in 0..j {
                    let h = phi(&k, n, i, j).unwrap();
                    let (left, right) = h.endpoints().unwrap();
                    let fi = src.face(i, &tgt).unwrap();
                    let fj = src.face(j, &tgt).unwrap();
                    assert!(left.agrees_with(&fi, 4).is_ok(), "phi({i},{j}) left, n={n}");
                    assert!(right.agrees_with(&fj, 4).is_ok(), "phi({i},{j}) right, n={n}");
                }
            }
        }
    }

    #[test]
    fn phi_example_on_the_triangle() {
        // n=1, (i,j) = (0,1): t_1 -> (1-x) t_0 with target t_0 eliminated,
        // t_2 -> t_1.
        let k = ground(Ring::Q, 4);
        let h = phi(&k, 1, 0, 1).unwrap();
        let src = SimplexAlgebra::new(&k, 2);
        let t1 = src.alg.basis_element(src.monomial(0, &[1, 0]).unwrap());
        let img = h.map.apply(&t1).unwrap();
        // (1-x)(1 - s_1): constant 1 - s1 - x + x s1
        let tgt = SimplexAlgebra::new(&k, 1);
        let c = |mu: &[u32], e: u32| {
            h.carrier
                .monomial(tgt.monomial(0, mu).unwrap(), e)
                .unwrap()
        };
        let mut expected = Element::zero();
        expected.add_term(c(&[0], 0), &Ring::Q.one());
        expected.add_term(c(&[1], 0), &Ring::Q.from_i64(-1));
        expected.add_term(c(&[0], 1), &Ring::Q.from_i64(-1));
        expected.add_term(c(&[1], 1), &Ring::Q.one());
        assert_eq!(img, expected);
    }

    #[test]
    fn check_homotopic_accepts_constant_chain() {
        let a = square_zero(Ring::Q, 4, 2);
        let id = AlgebraMap::identity(&a);
        let chain = HomotopyChain::single(ElementaryHomotopy::constant(&id).unwrap());
        assert!(check_homotopic(&id, &id, &chain).is_ok());
    }

    #[test]
    fn square_zero_contraction_certifies_zero_vs_identity() {
        let a = square_zero(Ring::Q, 4, 1);
        let h = contract_squarezero(&a).unwrap();
        let (z, id) = h.endpoints().unwrap();
        assert!(z.is_zero_within(4));
        assert!(id.agrees_with(&AlgebraMap::identity(&a), 4).is_ok());
        let chain = HomotopyChain::single(h);
        let zero = AlgebraMap::zero(&a, &a).unwrap();
        assert!(check_homotopic(&zero, &AlgebraMap::identity(&a), &chain).is_ok());
    }

    #[test]
    fn broken_chain_reports_first_failure() {
        let a = square_zero(Ring::Q, 4, 1);
        let id = AlgebraMap::identity(&a);
        let zero = AlgebraMap::zero(&a, &a).unwrap();
        let chain = HomotopyChain::single(ElementaryHomotopy::constant(&id).unwrap());
        let err = check_homotopic(&zero, &id, &chain).unwrap_err();
        assert!(matches!(err, Error::BrokenChain { index: 0, .. }));
    }

    #[test]
    fn graded_contraction_of_the_free_algebra() {
        let f = crate::algebra::free_one_generator(Ring::Q, 3);
        let grading: Vec<u32> = (0..f.dim() as u32).map(|i| f.weight_of(i)).collect();
        let h = contract_graded(&f, &grading).unwrap();
        let (z, id) = h.endpoints().unwrap();
        assert!(z.is_zero_within(3));
        assert!(id.agrees_with(&AlgebraMap::identity(&f), 3).is_ok());
    }

    #[test]
    fn cube_homotopy_interval_case() {
        // n = 0, m = 0: f = identity on B^{I^1}; single link connecting the
        // two vertex evaluations.
        let k = ground(Ring::Q, 4);
        let p1 = PowerAlgebra::new(&k, &crate::complex::cube(1)).unwrap();
        let p0 = PowerAlgebra::new(&k, &crate::complex::cube(0)).unwrap();
        let f = AlgebraMap::identity(p1.alg());
        let chain = cube_face_homotopy(&f, &p1, &p0, 0, 0).unwrap();
        assert_eq!(chain.links.len(), 1);
        let d0 = crate::funalg::end_evaluation(&p1, &p0, 0, 0, 0).unwrap();
        let d1 = crate::funalg::end_evaluation(&p1, &p0, 0, 0, 1).unwrap();
        assert!(check_homotopic(&d0, &d1, &chain).is_ok());
    }

    #[test]
    fn cube_homotopy_square_case() {
        let k = ground(Ring::Q, 4);
        let p2 = PowerAlgebra::new(&k, &crate::complex::cube(2)).unwrap();
        let p1 = PowerAlgebra::new(&k, &crate::complex::cube(1)).unwrap();
        let f = AlgebraMap::identity(p2.alg());
        let chain = cube_face_homotopy(&f, &p2, &p1, 1, 0).unwrap();
        assert_eq!(chain.links.len(), 2);
        let d0 = crate::funalg::end_evaluation(&p2, &p1, 1, 0, 0).unwrap();
        let d1 = crate::funalg::end_evaluation(&p2, &p1, 1, 0, 1).unwrap();
        assert!(check_homotopic(&d0, &d1, &chain).is_ok());
    }

    #[test]
    fn cube_homotopy_subdivided_interval() {
        let k = ground(Ring::Q, 4);
        let sd1 = subdivide_n(&crate::complex::cube(1), 1);
        let sd0 = subdivide_n(&crate::complex::cube(0), 1);
        let p1 = PowerAlgebra::new(&k, &sd1).unwrap();
        let p0 = PowerAlgebra::new(&k, &sd0).unwrap();
        let f = AlgebraMap::identity(p1.alg());
        let chain = cube_face_homotopy(&f, &p1, &p0, 0, 1).unwrap();
        let d0 = crate::funalg::end_evaluation(&p1, &p0, 0, 1, 0).unwrap();
        let d1 = crate::funalg::end_evaluation(&p1, &p0, 0, 1, 1).unwrap();
        assert!(check_homotopic(&d0, &d1, &chain).is_ok());
    }

    #[test]
    fn simplex_homotopy_at_stage_zero() {
        let k = ground(Ring::Q, 4);
        let d2 = SimplexAlgebra::new(&k, 2);
        let d1 = SimplexAlgebra::new(&k, 1);
        let f = AlgebraMap::identity(&d2.alg);
        for (i, j) in [(0u32, 1u32), (0, 2), (1, 2)] {
            let chain = simplex_face_homotopy(&f, &k, 1, 0, i, j).unwrap();
            let fi = d2.face(i, &d1).unwrap();
            let fj = d2.face(j, &d1).unwrap();
            assert!(check_homotopic(&fi, &fj, &chain).is_ok(), "({i},{j})");
        }
    }

    #[test]
    fn simplex_homotopy_four_step_schedule() {
        // the subdivided triangle: each neighbouring-face chain has
        // 4 links (raise barycenter, raise edge, move vertex, lower).
        let k = ground(Ring::Q, 4);
        let sd_d2 = subdivide_n(&standard_simplex(2), 1);
        let sd_d1 = subdivide_n(&standard_simplex(1), 1);
        let pl = PowerAlgebra::new(&k, &sd_d2).unwrap();
        let pk = PowerAlgebra::new(&k, &sd_d1).unwrap();
        let f = AlgebraMap::identity(pl.alg());
        let chain = simplex_face_homotopy(&f, &k, 1, 1, 1, 2).unwrap();
        assert_eq!(chain.links.len(), 4);
        // endpoints are the subdivided face restrictions
        let faces: Vec<AlgebraMap> = (1..=2)
            .map(|i| {
                let alpha: Vec<u32> = (0..2).map(|w| if w < i { w } else { w + 1 }).collect();
                let delta = ComplexMap::on_labels(&sd_d1, &sd_d2, |l| {
                    Label::Tuple(
                        atoms(l)
                            .iter()
                            .map(|&w| Label::Atom(alpha[w as usize]))
                            .collect(),
                    )
                })
                .unwrap();
                pl.restriction(&delta, &pk).unwrap()
            })
            .collect();
        assert!(check_homotopic(&faces[0], &faces[1], &chain).is_ok());
    }

    #[test]
    fn contract_simplex_connects_identity_and_collapse() {
        let k = ground(Ring::Q, 4);
        let chain = contract_simplex(&k, 2).unwrap();
        let simplex = standard_simplex(2);
        let pn = PowerAlgebra::new(&k, &simplex).unwrap();
        // endpoints: identity and s.delta (collapse to the last vertex)
        let id = AlgebraMap::identity(pn.alg());
        let collapse = {
            let c = ComplexMap::on_labels(&simplex, &simplex, |_| Label::Atom(2)).unwrap();
            pn.restriction(&c, &pn).unwrap()
        };
        assert!(check_homotopic(&id, &collapse, &chain).is_ok());
    }

    #[test]
    fn transport_preserves_constant_homotopies() {
        let a = square_zero(Ring::Q, 4, 1);
        let univ = crate::tensorial::universal_extension(&a).unwrap();
        let id = AlgebraMap::identity(&a);
        let h = ElementaryHomotopy::constant(&id).unwrap();
        let t = transport_j(&h, &univ, &univ).unwrap();
        let (l, r) = t.endpoints().unwrap();
        let w = l.comparison_window(&r);
        assert!(l.agrees_with(&r, w).is_ok());
        for i in 0..univ.j.alg.dim() as u32 {
            if let Some(img) = t.map.lin.image(i) {
                assert_eq!(t.carrier.max_x_degree(img), 0);
            }
        }
    }

    #[test]
    fn boundary_zero_links_for_omega_maps() {
        // if f vanishes on the boundary strip, every link of the cube
        // homotopy vanishes on the boundary of the lower cube.
        let k = ground(Ring::Q, 4);
        let tilde = crate::funalg::tilde_object(&k, 1, 0).unwrap();
        let f = tilde.sub.inclusion.clone();
        let p1 = PowerAlgebra::new(&k, &crate::complex::cube(1)).unwrap();
        let chain = cube_face_homotopy(&f, &tilde.power, &p1, 1, 0).unwrap();
        let om = omega_object(&k, 1, 0).unwrap();
        // restriction of each link to the boundary of I^1 is zero
        let bd = crate::complex::cube_boundary(1);
        let pbd = PowerAlgebra::new(&k, &bd).unwrap();
        let inc = ComplexMap::on_labels(&bd, &p1.complex, |l| l.clone()).unwrap();
        let r = p1.restriction(&inc, &pbd).unwrap();
        let _ = om;
        for link in &chain.links {
            for i in 0..link.map.source().dim() as u32 {
                if let Some(img) = link.map.lin.image(i) {
                    for e in 0..=link.carrier.max_x_degree(img) {
                        let coeff = link.carrier.coefficient(img, e);
                        let restricted = r.apply(&coeff).unwrap();
                        assert!(restricted.is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn corrected_homotopy_has_exact_ends() {
        // A 2-dimensional square-zero source with the constant homotopy on
        // a nontrivial map into B^{I^0}.
        let k = ground(Ring::Q, 4);
        let a = square_zero(Ring::Q, 4, 2);
        let p0 = PowerAlgebra::new(&k, &crate::complex::cube(0)).unwrap();
        let p1 = PowerAlgebra::new(&k, &crate::complex::cube(1)).unwrap();
        let f = AlgebraMap::zero(&a, p0.alg()).unwrap();
        let h = ElementaryHomotopy::constant(&f).unwrap();
        let corr = match correct_homotopy(&f, &f, &h, &p0, &p1, 0, 0) {
            Ok(c) => c,
            Err(e) => panic!("correct_homotopy: {e}"),
        };
        let d0 = crate::funalg::end_evaluation(&p1, &p0, 0, 0, 0).unwrap();
        let d1 = crate::funalg::end_evaluation(&p1, &p0, 0, 0, 1).unwrap();
        let left = AlgebraMap::compose(&d0, &corr.path).unwrap();
        let right = AlgebraMap::compose(&d1, &corr.path).unwrap();
        let f0g = AlgebraMap::compose(&f, &corr.g).unwrap();
        let w = left.comparison_window(&f0g);
        assert!(left.agrees_with(&f0g, w).is_ok());
        let w = right.comparison_window(&f0g);
        assert!(right.agrees_with(&f0g, w).is_ok());
    }
}

#[cfg(test)]
mod composition_tests {
    use super::*;
    use crate::algebra::{ground, square_zero};
    use crate::map::AlgebraMap;
    use crate::ring::Ring;

    /// Homotopy is stable under composition on both sides, by explicit
    /// chain transport.
    #[test]
    fn chains_transport_through_composition() {
        let a = square_zero(Ring::Q, 4, 1);
        let k = ground(Ring::Q, 4);
        // 0 ~ id on the square-zero algebra
        let h = contract_squarezero(&a).unwrap();
        let chain = HomotopyChain::single(h);
        let zero = AlgebraMap::zero(&a, &a).unwrap();
        let id = AlgebraMap::identity(&a);
        // precompose with a map into a
        let f = AlgebraMap::verified(
            LinearMap::on_basis(a.clone(), a.clone(), Growth::ONE, |_| {
                Ok(Some(a.basis_element(0).scale(&Ring::Q.from_i64(3))))
            })
            .unwrap(),
        )
        .unwrap();
        let pre = chain.precompose(&f).unwrap();
        let zf = AlgebraMap::compose(&zero, &f).unwrap();
        let idf = AlgebraMap::compose(&id, &f).unwrap();
        check_homotopic(&zf, &idf, &pre).unwrap();
        // postcompose with a map out of a
        let g = AlgebraMap::zero(&a, &k).unwrap();
        let post = chain.postcompose(&g).unwrap();
        let gz = AlgebraMap::compose(&g, &zero).unwrap();
        let gid = AlgebraMap::compose(&g, &id).unwrap();
        check_homotopic(&gz, &gid, &post).unwrap();
    }

    #[test]
    fn transport_carries_contractions_to_kernels() {
        // transporting 0 ~ id through the kernel functor yields 0 ~ id on
        // the counit kernel
        let a = square_zero(Ring::Q, 4, 1);
        let univ = crate::tensorial::universal_extension(&a).unwrap();
        let h = contract_squarezero(&a).unwrap();
        let t = transport_j(&h, &univ, &univ).unwrap();
        let (l, r) = t.endpoints().unwrap();
        let zero = AlgebraMap::zero(&univ.j.alg, &univ.j.alg).unwrap();
        let id = AlgebraMap::identity(&univ.j.alg);
        let w = l.comparison_window(&zero);
        assert!(l.agrees_with(&zero, w).is_ok());
        let w = r.comparison_window(&id).min(3);
        assert!(r.agrees_with(&id, w).is_ok());
    }

    #[test]
    fn reversal_swaps_chain_endpoints() {
        let a = square_zero(Ring::Q, 4, 2);
        let h = contract_squarezero(&a).unwrap();
        let chain = HomotopyChain::single(h).reverse().unwrap();
        let zero = AlgebraMap::zero(&a, &a).unwrap();
        let id = AlgebraMap::identity(&a);
        check_homotopic(&id, &zero, &chain).unwrap();
    }
}
