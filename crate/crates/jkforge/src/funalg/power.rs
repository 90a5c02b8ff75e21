//! Function algebras `A^K` over finite complexes: families of simplex
//! polynomials indexed by the maximal simplices, agreeing on shared faces.
//!
//! The compatible families are computed by exact linear algebra as the
//! kernel of the pairwise face-difference map inside the direct sum of the
//! component simplex algebras. Restriction along any simplicial map is a
//! homomorphism, computed componentwise by order-map pullbacks.

use std::sync::Arc;

use crate::algebra::{direct_sum, square_zero, summand_index, Alg, Element};
use crate::complex::{ComplexMap, FiniteComplex};
use crate::error::{Error, Result};
use crate::map::{AlgebraMap, Growth, LinearMap};
use crate::subalg::{kernel_subalgebra, Embedded};

use super::simplex::{SimplexAlgebra, SPoly};

#[derive(Debug)]
pub struct PowerAlgebra {
    pub base: Alg,
    pub complex: FiniteComplex,
    /// Component simplex algebras, one per maximal chain in sorted order.
    pub components: Vec<SimplexAlgebra>,
    chains: Vec<Vec<u32>>,
    pub ambient: Alg,
    pub sub: Embedded,
    /// Local-to-ambient index tables per component.
    offsets: Vec<Vec<u32>>,
}

pub type Power = Arc<PowerAlgebra>;

impl PowerAlgebra {
    pub fn new(base: &Alg, complex: &FiniteComplex) -> Result<Power> {
        let chains: Vec<Vec<u32>> = complex.maximal_chains().cloned().collect();
        let components: Vec<SimplexAlgebra> = chains
            .iter()
            .map(|c| SimplexAlgebra::new(base, c.len() as u32 - 1))
            .collect();
        let parts: Vec<Alg> = components.iter().map(|s| s.alg.clone()).collect();
        let ambient = if parts.is_empty() {
            square_zero(base.ring, base.cap, 0)
        } else {
            direct_sum(format!("{}^K.amb", base.name), &parts)?
        };
        let offsets: Vec<Vec<u32>> = components
            .iter()
            .enumerate()
            .map(|(pos, s)| {
                (0..s.alg.dim() as u32)
                    .map(|i| summand_index(&ambient, pos, i, &s.alg))
                    .collect()
            })
            .collect();

        // Pairwise agreement on shared faces.
        let mut constraints: Vec<(usize, AlgebraMap, usize, AlgebraMap)> = Vec::new();
        let mut face_algs: Vec<Alg> = Vec::new();
        for i in 0..chains.len() {
            for j in i + 1..chains.len() {
                let shared: Vec<u32> = chains[i]
                    .iter()
                    .copied()
                    .filter(|v| chains[j].contains(v))
                    .collect();
                if shared.is_empty() {
                    continue;
                }
                let face = SimplexAlgebra::new(base, shared.len() as u32 - 1);
                let ri = restrict_to_subchain(&components[i], &chains[i], &shared, &face)?;
                let rj = restrict_to_subchain(&components[j], &chains[j], &shared, &face)?;
                face_algs.push(face.alg.clone());
                constraints.push((i, ri, j, rj));
            }
        }
        let constraint_target = if face_algs.is_empty() {
            square_zero(base.ring, base.cap, 0)
        } else {
            direct_sum("faces", &face_algs)?
        };
        let lin = LinearMap::on_basis(
            ambient.clone(),
            constraint_target.clone(),
            Growth::ONE,
            |amb_idx| {
                let mut out = Element::zero();
                // Which component and local index does this ambient symbol
                // correspond to?
                let (pos, local) = offsets
                    .iter()
                    .enumerate()
                    .find_map(|(p, tbl)| {
                        tbl.iter().position(|&x| x == amb_idx).map(|l| (p, l as u32))
                    })
                    .expect("ambient symbol belongs to a component");
                for (c, (i, ri, j, rj)) in constraints.iter().enumerate() {
                    let delta = if pos == *i {
                        ri.apply(&components[pos].alg.basis_element(local))?
                    } else if pos == *j {
                        rj.apply(&components[pos].alg.basis_element(local))?.neg()
                    } else {
                        continue;
                    };
                    for (f, s) in delta.terms() {
                        out.add_term(
                            summand_index(&constraint_target, c, f, &face_algs[c]),
                            s,
                        );
                    }
                }
                Ok(Some(out))
            },
        )?;
        let sub = kernel_subalgebra(format!("{}^K", base.name), &lin)?;
        Ok(Arc::new(PowerAlgebra {
            base: base.clone(),
            complex: complex.clone(),
            components,
            chains,
            ambient,
            sub,
            offsets,
        }))
    }

    pub fn alg(&self) -> &Alg {
        &self.sub.alg
    }

    /// Component of a power element over one maximal chain.
    pub fn component(&self, x: &Element, pos: usize) -> Element {
        let amb = self.sub.embed(x);
        let mut out = Element::zero();
        for (local, &amb_idx) in self.offsets[pos].iter().enumerate() {
            if let Some(c) = amb.coeff(amb_idx) {
                out.add_term(local as u32, c);
            }
        }
        out
    }

    /// Assembles a power element from per-component values; fails if the
    /// family is not compatible on shared faces.
    pub fn from_components(&self, parts: &[Element]) -> Result<Element> {
        if parts.len() != self.components.len() {
            return Err(Error::TypeMismatch(format!(
                "expected {} components",
                self.components.len()
            )));
        }
        let mut amb = Element::zero();
        for (pos, part) in parts.iter().enumerate() {
            for (local, c) in part.terms() {
                amb.add_term(self.offsets[pos][local as usize], c);
            }
        }
        self.sub.express(&amb).ok_or_else(|| Error::DiagramNotCommuting {
            witness: "family does not agree on shared faces".into(),
        })
    }

    /// The element determined by one scalar polynomial per maximal chain,
    /// all over a scalar base symbol `b` of the base algebra.
    pub fn from_polys(&self, b: u32, polys: &[SPoly]) -> Result<Element> {
        let parts: Vec<Element> = self
            .components
            .iter()
            .zip(polys)
            .map(|(s, p)| s.from_poly(&[(b, p.clone())]))
            .collect::<Result<_>>()?;
        self.from_components(&parts)
    }

    pub fn chain_position(&self, chain: &[u32]) -> Option<usize> {
        self.chains.iter().position(|c| c == chain)
    }

    pub fn chains(&self) -> &[Vec<u32>] {
        &self.chains
    }

    /// Restriction `A^L -> A^K` along a simplicial map `g: K -> L`.
    ///
    /// `self` is the power over `L`; `target_power` is the power over `K`.
    pub fn restriction(&self, g: &ComplexMap, target_power: &PowerAlgebra) -> Result<AlgebraMap> {
        if g.target != self.complex || g.source != target_power.complex {
            return Err(Error::TypeMismatch(
                "restriction along a map with mismatched complexes".into(),
            ));
        }
        // For each maximal chain of K, factor through a maximal chain of L.
        let mut plans: Vec<(usize, AlgebraMap)> = Vec::new();
        for (pos, chain) in target_power.chains.iter().enumerate() {
            let image: Vec<u32> = g.image_chain(chain);
            let (lpos, lchain) = self
                .chains
                .iter()
                .enumerate()
                .find(|(_, lc)| is_subchain(&image, lc))
                .ok_or_else(|| Error::TypeMismatch("image chain not in target".into()))?;
            // alpha: position p of K-chain -> position of g(chain[p]) in the
            // L-chain.
            let alpha: Vec<u32> = chain
                .iter()
                .map(|&v| {
                    let w = g.apply(v);
                    lchain.iter().position(|&u| u == w).unwrap() as u32
                })
                .collect();
            let pb = self.components[lpos].pullback(&alpha, &target_power.components[pos])?;
            plans.push((lpos, pb));
        }
        let lin = LinearMap::on_basis(
            self.sub.alg.clone(),
            target_power.sub.alg.clone(),
            Growth::ONE,
            |i| {
                let mut parts = Vec::with_capacity(plans.len());
                for (pos, (lpos, pb)) in plans.iter().enumerate() {
                    let _ = pos;
                    let comp = self.component(&self.sub.alg.basis_element(i), *lpos);
                    parts.push(pb.apply(&comp)?);
                }
                match target_power.from_components(&parts) {
                    Ok(e) => Ok(Some(e)),
                    Err(err) => Err(err),
                }
            },
        )?;
        AlgebraMap::verified(lin)
    }
}

fn is_subchain(sub: &[u32], sup: &[u32]) -> bool {
    let mut it = sup.iter();
    sub.iter().all(|v| it.any(|w| w == v))
}

/// The relative power: functions on `K` vanishing on a subcomplex `L`,
/// realized as the kernel of the restriction map.
pub fn relative_power(
    a: &Alg,
    k: &crate::complex::FiniteComplex,
    l: &crate::complex::FiniteComplex,
) -> Result<(Power, crate::subalg::Embedded)> {
    let pk = PowerAlgebra::new(a, k)?;
    let pl = PowerAlgebra::new(a, l)?;
    let inc = ComplexMap::on_labels(l, k, |lab| lab.clone())?;
    let restriction = pk.restriction(&inc, &pl)?;
    let sub = crate::subalg::kernel_subalgebra(
        format!("{}^rel", a.name),
        &restriction.lin,
    )?;
    Ok((pk, sub))
}

/// Coefficientwise extension of a linear map `A -> B` to powers over the
/// same complex: `(b (x) t^mu) -> (f(b) (x) t^mu)` on every component.
pub fn power_coeff_map(f: &LinearMap, pa: &PowerAlgebra, pb: &PowerAlgebra) -> Result<LinearMap> {
    if pa.complex != pb.complex {
        return Err(Error::TypeMismatch("power_coeff_map complexes".into()));
    }
    if !f.source.same_space(&pa.base) || !f.target.same_space(&pb.base) {
        return Err(Error::TypeMismatch("power_coeff_map bases".into()));
    }
    LinearMap::on_basis(
        pa.sub.alg.clone(),
        pb.sub.alg.clone(),
        f.growth,
        |i| {
            let mut parts = Vec::with_capacity(pa.components.len());
            for pos in 0..pa.components.len() {
                let comp = pa.component(&pa.sub.alg.basis_element(i), pos);
                let mut out = Element::zero();
                for (idx, c) in comp.terms() {
                    let (b, mu) = pa.components[pos].decompose(idx);
                    let Some(img) = f.image(b) else {
                        return Ok(None);
                    };
                    for (bb, d) in img.terms() {
                        match pb.components[pos].monomial(bb, mu) {
                            Some(target_idx) => out.add_term(target_idx, &c.mul(d)),
                            None => return Ok(None),
                        }
                    }
                }
                parts.push(out);
            }
            Ok(Some(pb.from_components(&parts)?))
        },
    )
}

/// Restriction of a component algebra to a subchain of its maximal chain.
fn restrict_to_subchain(
    simplex: &SimplexAlgebra,
    chain: &[u32],
    shared: &[u32],
    face: &SimplexAlgebra,
) -> Result<AlgebraMap> {
    let alpha: Vec<u32> = shared
        .iter()
        .map(|v| chain.iter().position(|w| w == v).unwrap() as u32)
        .collect();
    simplex.pullback(&alpha, face)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ground;
    use crate::complex::{boundary, cube, standard_simplex};
    use crate::ring::Ring;

    #[test]
    fn power_over_simplex_matches_simplex_algebra() {
        let k = ground(Ring::Q, 4);
        let p = PowerAlgebra::new(&k, &standard_simplex(2)).unwrap();
        let direct = SimplexAlgebra::new(&k, 2);
        for d in 1..=4 {
            assert_eq!(p.alg().level_rank(d), direct.alg.level_rank(d));
        }
    }

    #[test]
    fn power_over_two_points() {
        let k = ground(Ring::Q, 4);
        let b = boundary(&standard_simplex(1)).unwrap();
        let p = PowerAlgebra::new(&k, &b).unwrap();
        // k (+) k: two weight-1 generators and nothing else.
        assert_eq!(p.alg().dim(), 2);
        assert_eq!(p.alg().level_rank(1), 2);
    }

    #[test]
    fn square_functions_are_piecewise_polynomials() {
        // F_d of k^{I^2} has rank d^2: strictly more than the rank
        // d(d+1)/2 of k^{Delta^2} from weight 2 on.
        let k = ground(Ring::Q, 4);
        let sq = PowerAlgebra::new(&k, &cube(2)).unwrap();
        let tri = PowerAlgebra::new(&k, &standard_simplex(2)).unwrap();
        let sq_ranks: Vec<usize> = (1..=4).map(|d| sq.alg().level_rank(d)).collect();
        let tri_ranks: Vec<usize> = (1..=4).map(|d| tri.alg().level_rank(d)).collect();
        assert_eq!(sq_ranks, vec![1, 4, 9, 16]);
        assert_eq!(tri_ranks, vec![1, 3, 6, 10]);
    }

    #[test]
    fn restriction_to_boundary_is_surjective_on_vertices() {
        let k = ground(Ring::Q, 4);
        let d1 = standard_simplex(1);
        let bd = boundary(&d1).unwrap();
        let p1 = PowerAlgebra::new(&k, &d1).unwrap();
        let pb = PowerAlgebra::new(&k, &bd).unwrap();
        let inc = ComplexMap::on_labels(&bd, &d1, |l| l.clone()).unwrap();
        let r = p1.restriction(&inc, &pb).unwrap();
        // The constant function restricts to the constant pair.
        let const_fn = p1
            .from_polys(0, &[super::super::simplex::spoly_const(1, Ring::Q.one())])
            .unwrap();
        let img = r.apply(&const_fn).unwrap();
        assert_eq!(pb.alg().weight(&img), 1);
        assert!(!img.is_zero());
    }
}

#[cfg(test)]
mod relative_tests {
    use super::*;
    use crate::algebra::ground;
    use crate::complex::{boundary, standard_simplex};
    use crate::ring::Ring;

    #[test]
    fn relative_power_over_interval_ends() {
        // functions on the interval vanishing at both ends: same levelwise
        // ranks as the polynomial loop algebra
        let k = ground(Ring::Q, 4);
        let d1 = standard_simplex(1);
        let ends = boundary(&d1).unwrap();
        let (_, sub) = relative_power(&k, &d1, &ends).unwrap();
        let le = crate::funalg::loops::loop_extension(&k).unwrap();
        for d in 1..=4 {
            assert_eq!(sub.alg.level_rank(d), le.looped.alg.level_rank(d));
        }
        // relative to the whole complex: zero
        let (_, zero) = relative_power(&k, &d1, &d1).unwrap();
        assert_eq!(zero.alg.dim(), 0);
    }

    #[test]
    fn power_elements_render_per_simplex() {
        let k = ground(Ring::Q, 4);
        let p = PowerAlgebra::new(&k, &standard_simplex(1)).unwrap();
        let text = crate::serialize::render_power_element(&p, &p.alg().basis_element(0));
        assert!(text.contains("->"));
        assert!(text.lines().count() == 1);
    }
}
