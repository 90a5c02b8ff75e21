//! Subalgebras carved out of an ambient algebra by exact linear conditions:
//! kernels of maps, fiber products, and the split extensions built from them.
//!
//! The kernel basis is computed per filtration level (echelon adapted to the
//! weight order), so each new basis symbol has a well-defined weight and the
//! inclusion preserves weights. Products are computed in the ambient algebra
//! and re-expressed in the kernel basis; failure to re-express is reported
//! rather than patched over.

use std::collections::BTreeMap;

use crate::algebra::{Alg, Element, FilteredAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, Matrix, Solver};
use crate::map::{AlgebraMap, Growth, LinearMap};

/// A subalgebra together with its ambient embedding and a solver for
/// re-expressing ambient elements in the subalgebra basis.
#[derive(Debug)]
pub struct Embedded {
    pub alg: Alg,
    pub ambient: Alg,
    pub inclusion: AlgebraMap,
    solver: Solver,
    vectors: Vec<Element>,
}

impl Embedded {
    pub fn embed(&self, e: &Element) -> Element {
        self.inclusion
            .apply(e)
            .expect("inclusion is total on the subalgebra basis")
    }

    /// Expresses an ambient element in the subalgebra basis, if it lies in
    /// the span (over `Z`: the lattice) of the basis vectors.
    pub fn express(&self, ambient_elem: &Element) -> Option<Element> {
        let v = ambient_elem.to_vec(self.ambient.ring, self.ambient.dim());
        let coeffs = self.solver.solve(&v)?;
        Some(Element::from_vec(&coeffs))
    }

    /// Factors a map through the inclusion: given `f: X -> ambient` whose
    /// images lie in the subalgebra, returns `X -> sub`.
    pub fn corestrict(&self, f: &AlgebraMap) -> Result<AlgebraMap> {
        let lin = self.corestrict_linear(&f.lin)?;
        Ok(AlgebraMap {
            lin,
            verified: f.verified.clone(),
        })
    }

    pub fn corestrict_linear(&self, f: &LinearMap) -> Result<LinearMap> {
        if !f.target.same_space(&self.ambient) {
            return Err(Error::TypeMismatch(format!(
                "corestrict: map lands in {}, ambient is {}",
                f.target.name, self.ambient.name
            )));
        }
        LinearMap::on_basis(
            f.source.clone(),
            self.alg.clone(),
            f.growth,
            |i| match f.image(i) {
                Some(img) => match self.express(img) {
                    Some(e) => Ok(Some(e)),
                    None => Err(Error::DiagramNotCommuting {
                        witness: format!(
                            "image of {} does not lie in {}",
                            f.source.symbol(i),
                            self.alg.name
                        ),
                    }),
                },
                None => Ok(None),
            },
        )
    }

    pub fn basis_vector(&self, i: u32) -> &Element {
        &self.vectors[i as usize]
    }
}

/// Carves the subalgebra spanned by `vectors` out of `ambient`.
///
/// The vectors must be echelon-adapted to the weight order (distinct maximal
/// support indices); this is what [`kernel_basis`] produces when columns are
/// the canonical basis of the ambient algebra.
pub fn span_subalgebra(name: impl Into<String>, ambient: &Alg, vectors: Vec<Element>) -> Result<Embedded> {
    let name = name.into();
    let cap = ambient.cap;
    let bound = ambient.prod_exact_bound;
    let mut weighted: Vec<(u32, Element)> = vectors
        .into_iter()
        .map(|v| (ambient.weight(&v), v))
        .collect();
    weighted.sort_by_key(|(w, _)| *w);
    let digits = weighted.len().to_string().len().max(3);
    let symbols: Vec<String> = (0..weighted.len())
        .map(|i| format!("{}{:0digits$}", sub_sym_prefix(&name), i, digits = digits))
        .collect();
    let weights: Vec<u32> = weighted.iter().map(|(w, _)| *w).collect();
    let vectors: Vec<Element> = weighted.into_iter().map(|(_, v)| v).collect();
    let dense: Vec<Vec<crate::ring::Scalar>> = vectors
        .iter()
        .map(|v| v.to_vec(ambient.ring, ambient.dim()))
        .collect();
    let solver = Solver::new(ambient.ring, ambient.dim(), &dense);
    if solver.rank() != vectors.len() {
        return Err(Error::TypeMismatch(format!(
            "subalgebra {name}: spanning vectors are dependent"
        )));
    }

    // Structure constants: multiply in the ambient algebra, re-express.
    let mut mult: BTreeMap<(u32, u32), Element> = BTreeMap::new();
    let mut lossy = ambient.lossy;
    let n = vectors.len() as u32;
    for i in 0..n {
        for j in 0..n {
            if ambient.commutative && i > j {
                continue;
            }
            let ws = weights[i as usize] + weights[j as usize];
            if ws > cap.min(bound) {
                // Above the cap, or within it but past the ambient exactness
                // bound: either way the product is dropped.
                lossy = true;
                continue;
            }
            let (prod, exact) = ambient.mul(&vectors[i as usize], &vectors[j as usize]);
            if !exact {
                lossy = true;
                continue;
            }
            let expressed = match solver.solve(&prod.to_vec(ambient.ring, ambient.dim())) {
                Some(c) => Element::from_vec(&c),
                None => {
                    return Err(Error::NotAnIdealWarning(format!(
                        "product of basis {} and {} of {} leaves the span",
                        i, j, name
                    )))
                }
            };
            if !expressed.is_zero() {
                mult.insert((i, j), expressed);
            }
        }
    }
    let alg = FilteredAlgebra::from_parts(
        name,
        ambient.ring,
        cap,
        cap.min(bound),
        symbols,
        weights,
        mult,
        ambient.commutative,
        lossy,
        None,
    );
    alg.validate()?;
    let inclusion = {
        let vs = vectors.clone();
        let lin = LinearMap::on_basis(alg.clone(), ambient.clone(), Growth::ONE, |i| {
            Ok(Some(vs[i as usize].clone()))
        })?;
        AlgebraMap::verified(lin)?
    };
    Ok(Embedded {
        alg,
        ambient: ambient.clone(),
        inclusion,
        solver,
        vectors,
    })
}

fn sub_sym_prefix(name: &str) -> String {
    // Short deterministic prefix so symbols stay readable in witnesses.
    let clean: String = name.chars().filter(|c| c.is_ascii_alphanumeric()).collect();
    if clean.is_empty() {
        "s".into()
    } else {
        clean.chars().take(2).collect::<String>().to_lowercase()
    }
}

/// Kernel of a linear map as an embedded subalgebra, with its inclusion.
///
/// The kernel is computed levelwise up to the window on which the map is
/// defined; the returned algebra is closed under multiplication within the
/// cap or an [`Error::NotAnIdealWarning`] is raised.
pub fn kernel_subalgebra(name: impl Into<String>, f: &LinearMap) -> Result<Embedded> {
    let window = f.defined_window();
    let ambient = &f.source;
    let cols: Vec<u32> = (0..ambient.dim() as u32)
        .filter(|&i| ambient.weight_of(i) <= window)
        .collect();
    let mut m = Matrix::zero(ambient.ring, f.target.dim(), cols.len());
    for (c, &i) in cols.iter().enumerate() {
        if let Some(img) = f.image(i) {
            for (r, s) in img.terms() {
                m.set(r as usize, c, s.clone());
            }
        }
    }
    let ker = kernel_basis(&m);
    let vectors: Vec<Element> = ker
        .iter()
        .map(|v| {
            let mut e = Element::zero();
            for (c, s) in v.iter().enumerate() {
                e.add_term(cols[c], s);
            }
            e
        })
        .collect();
    span_subalgebra(name, ambient, vectors)
}

/// Fiber product of `f: A -> C` and `g: B -> C` with its two projections.
pub struct FiberProduct {
    pub sub: Embedded,
    pub pr1: AlgebraMap,
    pub pr2: AlgebraMap,
}

pub fn fiber_product(
    name: impl Into<String>,
    f: &AlgebraMap,
    g: &AlgebraMap,
) -> Result<FiberProduct> {
    if !f.target().same_space(g.target()) {
        return Err(Error::TypeMismatch(
            "fiber product needs a common target".into(),
        ));
    }
    let name = name.into();
    let a = f.source().clone();
    let b = g.source().clone();
    let sum = crate::algebra::direct_sum(format!("{name}.amb"), &[a.clone(), b.clone()])?;
    // h(a, b) = f(a) - g(b); the fiber product is its linear kernel.
    let h = LinearMap::on_basis(
        sum.clone(),
        f.target().clone(),
        Growth {
            mul: f.growth().mul.max(g.growth().mul),
            add: f.growth().add.max(g.growth().add),
        },
        |i| {
            let sym = sum.symbol(i);
            let (pos, rest) = sym.split_once('#').expect("direct sum symbol");
            if pos == "0" {
                let j = a.index_of(rest).expect("summand symbol");
                Ok(f.lin.image(j).cloned().map(Some).unwrap_or(None))
            } else {
                let j = b.index_of(rest).expect("summand symbol");
                Ok(g.lin.image(j).map(|e| e.neg()).map(Some).unwrap_or(None))
            }
        },
    )?;
    let sub = kernel_subalgebra(name, &h)?;
    let pr1 = project_summand(&sub, &sum, 0, &a)?;
    let pr2 = project_summand(&sub, &sum, 1, &b)?;
    Ok(FiberProduct { sub, pr1, pr2 })
}

fn project_summand(
    sub: &Embedded,
    sum: &Alg,
    pos: usize,
    part: &Alg,
) -> Result<AlgebraMap> {
    let lin = LinearMap::on_basis(sub.alg.clone(), part.clone(), Growth::ONE, |i| {
        let vec = sub.basis_vector(i);
        let mut out = Element::zero();
        for (j, c) in vec.terms() {
            let sym = sum.symbol(j);
            let (p, rest) = sym.split_once('#').expect("direct sum symbol");
            if p == pos.to_string() {
                out.add_term(part.index_of(rest).expect("summand symbol"), c);
            }
        }
        Ok(Some(out))
    })?;
    AlgebraMap::verified(lin)
}

/// The span of the defined images of a linear map, with an exact solver for
/// membership and coefficients. Used to transport elements backwards through
/// injective comparison maps.
#[derive(Debug)]
pub struct ImageSpan {
    pub source: Alg,
    pub target: Alg,
    indices: Vec<u32>,
    solver: Solver,
}

impl ImageSpan {
    pub fn new(lin: &LinearMap) -> ImageSpan {
        let indices: Vec<u32> = (0..lin.source.dim() as u32)
            .filter(|&i| lin.image(i).is_some())
            .collect();
        let vectors: Vec<Vec<crate::ring::Scalar>> = indices
            .iter()
            .map(|&i| {
                lin.image(i)
                    .unwrap()
                    .to_vec(lin.target.ring, lin.target.dim())
            })
            .collect();
        let solver = Solver::new(lin.target.ring, lin.target.dim(), &vectors);
        ImageSpan {
            source: lin.source.clone(),
            target: lin.target.clone(),
            indices,
            solver,
        }
    }

    /// Source coordinates mapping onto `e`, when `e` lies in the image span
    /// and the map is injective on its defined window.
    pub fn express(&self, e: &Element) -> Option<Element> {
        let coeffs = self
            .solver
            .solve(&e.to_vec(self.target.ring, self.target.dim()))?;
        let mut out = Element::zero();
        for (pos, c) in coeffs.iter().enumerate() {
            out.add_term(self.indices[pos], c);
        }
        Some(out)
    }
}

/// A `k`-split extension `kernel -> middle -> quotient` with explicit
/// linear splitting data, validated levelwise at truncation.
#[derive(Debug)]
pub struct Extension {
    pub kernel_alg: Alg,
    pub middle: Alg,
    pub quotient: Alg,
    pub inject: AlgebraMap,
    pub surject: AlgebraMap,
    pub splitting: LinearMap,
}

impl Extension {
    pub fn new(
        kernel_alg: Alg,
        middle: Alg,
        quotient: Alg,
        inject: AlgebraMap,
        surject: AlgebraMap,
        splitting: LinearMap,
    ) -> Result<Extension> {
        let ext = Extension {
            kernel_alg,
            middle,
            quotient,
            inject,
            surject,
            splitting,
        };
        ext.validate()?;
        Ok(ext)
    }

    /// Window on which the section law `surject . splitting = id` holds and
    /// is checked.
    pub fn splitting_window(&self) -> u32 {
        let after = self.surject.growth().after(&self.splitting.growth);
        after
            .window(self.quotient.cap, self.quotient.cap)
            .min(self.splitting.defined_window())
    }

    pub fn validate(&self) -> Result<()> {
        // Section law.
        let w = self.splitting_window();
        for i in 0..self.quotient.dim() as u32 {
            if self.quotient.weight_of(i) > w {
                continue;
            }
            let s = self.splitting.image(i).ok_or_else(|| Error::SplittingNotSection {
                witness: format!("splitting undefined on {}", self.quotient.symbol(i)),
            })?;
            let back = self.surject.apply(s)?;
            if back != self.quotient.basis_element(i) {
                return Err(Error::SplittingNotSection {
                    witness: self.quotient.symbol(i).to_string(),
                });
            }
        }
        // surject . inject = 0.
        let zero_window = self.inject.lin.defined_window();
        for i in 0..self.kernel_alg.dim() as u32 {
            if self.kernel_alg.weight_of(i) > zero_window {
                continue;
            }
            if let Some(img) = self.inject.lin.image(i) {
                let out = self.surject.apply(img)?;
                if !out.is_zero() {
                    return Err(Error::DiagramNotCommuting {
                        witness: format!(
                            "surject(inject({})) = {}",
                            self.kernel_alg.symbol(i),
                            self.quotient.render_element(&out)
                        ),
                    });
                }
            }
        }
        // inject is injective levelwise and hits the whole kernel levelwise.
        let inj = self.inject.lin.level_matrix(self.kernel_alg.cap)?;
        if crate::linalg::rank(&inj) != self.kernel_alg.dim() {
            return Err(Error::DiagramNotCommuting {
                witness: "inject is not injective".into(),
            });
        }
        for level in 1..=self.middle.cap {
            let sur = self.surject.lin.level_matrix(level)?;
            let ker_rank = kernel_basis(&sur).len();
            let expected = self.kernel_alg.level_rank(level);
            if ker_rank != expected {
                return Err(Error::DiagramNotCommuting {
                    witness: format!(
                        "kernel of surjection has rank {ker_rank} at level {level}, image of inject has rank {expected}"
                    ),
                });
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{ground, square_zero};
    use crate::polyext::PolyExt;
    use crate::ring::Ring;

    /// ker(eval at x=0 on k[x]) has the adapted basis {x, x^2, x^3}.
    #[test]
    fn kernel_of_constant_term_is_path_algebra() {
        let k = ground(Ring::Q, 4);
        let kx = PolyExt::new(&k, 4);
        let d0 = kx.eval_map(0);
        let e = kernel_subalgebra("E", &d0.lin).unwrap();
        assert_eq!(e.alg.dim(), 3);
        assert_eq!(
            (1..=4).map(|d| e.alg.level_rank(d)).collect::<Vec<_>>(),
            vec![0, 1, 2, 3]
        );
        // x * x = x^2 inside the subalgebra.
        let x = e.alg.basis_element(0);
        let (x2, _) = e.alg.mul(&x, &x);
        let emb = e.embed(&x2);
        assert_eq!(kx.max_x_degree(&emb), 2);
    }

    #[test]
    fn kernel_of_identity_is_zero() {
        let k = ground(Ring::Q, 4);
        let id = AlgebraMap::identity(&k);
        let z = kernel_subalgebra("Z", &id.lin).unwrap();
        assert_eq!(z.alg.dim(), 0);
    }

    #[test]
    fn integer_kernels_are_free_and_primitive() {
        let k = ground(Ring::Z, 4);
        let kx = PolyExt::new(&k, 4);
        let d1 = kx.eval_map(1);
        let om = kernel_subalgebra("O", &d1.lin).unwrap();
        // Basis x^{d} - x^{d-1} (d = 1..3): all primitive vectors.
        assert_eq!(om.alg.dim(), 3);
        for i in 0..3 {
            let v = om.basis_vector(i);
            let sum = v
                .terms()
                .fold(Ring::Z.zero(), |acc, (_, c)| acc.add(c));
            assert!(sum.is_zero());
        }
    }

    #[test]
    fn fiber_product_with_identity_recovers_source() {
        let a = square_zero(Ring::Q, 4, 2);
        let f = AlgebraMap::identity(&a);
        let g = AlgebraMap::identity(&a);
        let fp = fiber_product("D", &f, &g).unwrap();
        assert_eq!(fp.sub.alg.dim(), a.dim());
        for d in 1..=4 {
            assert_eq!(fp.sub.alg.level_rank(d), a.level_rank(d));
        }
        // The two projections agree (diagonal).
        assert!(fp.pr1.agrees_with(&fp.pr2, 4).is_ok());
    }

    #[test]
    fn fiber_product_over_zero_is_direct_sum() {
        let a = ground(Ring::Q, 4);
        let zero = square_zero(Ring::Q, 4, 0);
        let f = AlgebraMap::zero(&a, &zero).unwrap();
        let g = AlgebraMap::zero(&a, &zero).unwrap();
        let fp = fiber_product("S", &f, &g).unwrap();
        assert_eq!(fp.sub.alg.dim(), 2);
    }

    #[test]
    fn loop_extension_validates() {
        // Omega k -> E k -> k with splitting a -> a*x.
        let k = ground(Ring::Q, 4);
        let kx = PolyExt::new(&k, 4);
        let d0 = kx.eval_map(0);
        let e = kernel_subalgebra("E", &d0.lin).unwrap();
        let d1_on_e = {
            let d1 = kx.eval_map(1);
            AlgebraMap::compose(&d1, &e.inclusion).unwrap()
        };
        let om = kernel_subalgebra("Om", &d1_on_e.lin).unwrap();
        let splitting = LinearMap::on_basis(
            k.clone(),
            e.alg.clone(),
            Growth::new(1, 1),
            |i| {
                let xi = kx.times_x(&k.basis_element(i), 1).unwrap();
                Ok(e.express(&xi))
            },
        )
        .unwrap();
        let ext = Extension::new(
            om.alg.clone(),
            e.alg.clone(),
            k.clone(),
            om.inclusion.clone(),
            d1_on_e,
            splitting,
        );
        assert!(ext.is_ok());
    }
}
