//! Linear maps and algebra homomorphisms between filtered algebras.
//!
//! A map is given by images of basis symbols together with a declared affine
//! growth bound: the image of a weight-`w` element has weight at most
//! `mul*w + add`. Images are stored only where they are representable below
//! the target cap; everything outside that window is undefined and using it
//! raises `CapOverflow`. All equality and multiplicativity statements are
//! scoped to guarantee windows derived from growth bounds and caps.

use crate::algebra::{Alg, Element};
use crate::error::{Error, Result};
use crate::ring::Scalar;

/// Affine weight-growth bound `w -> mul*w + add`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Growth {
    pub mul: u32,
    pub add: i32,
}

impl Growth {
    pub const ONE: Growth = Growth { mul: 1, add: 0 };

    pub fn new(mul: u32, add: i32) -> Growth {
        Growth { mul, add }
    }

    pub fn bound(&self, w: u32) -> i64 {
        self.mul as i64 * w as i64 + self.add as i64
    }

    /// Growth of `outer . inner`.
    pub fn after(&self, inner: &Growth) -> Growth {
        Growth {
            mul: self.mul * inner.mul,
            add: self.mul as i32 * inner.add + self.add,
        }
    }

    /// Largest `w <= cap_src` with `bound(w) <= cap_tgt`; 0 if none.
    pub fn window(&self, cap_src: u32, cap_tgt: u32) -> u32 {
        (0..=cap_src)
            .rev()
            .find(|&w| self.bound(w) <= cap_tgt as i64)
            .unwrap_or(0)
    }
}

/// A levelwise `k`-linear map given on basis symbols. Carries no
/// multiplicativity claim; see [`AlgebraMap`] for homomorphisms.
#[derive(Debug, Clone)]
pub struct LinearMap {
    pub source: Alg,
    pub target: Alg,
    images: Vec<Option<Element>>,
    pub growth: Growth,
}

impl LinearMap {
    pub fn new(
        source: Alg,
        target: Alg,
        images: Vec<Option<Element>>,
        growth: Growth,
    ) -> Result<LinearMap> {
        if source.ring != target.ring {
            return Err(Error::RingMismatch(format!(
                "{} -> {}",
                source.name, target.name
            )));
        }
        if images.len() != source.dim() {
            return Err(Error::TypeMismatch(format!(
                "map on {} needs {} images, got {}",
                source.name,
                source.dim(),
                images.len()
            )));
        }
        for (i, img) in images.iter().enumerate() {
            if let Some(e) = img {
                let w = target.weight(e);
                if (w as i64) > growth.bound(source.weight_of(i as u32)) {
                    return Err(Error::TypeMismatch(format!(
                        "image of {} has weight {w}, above declared growth",
                        source.symbol(i as u32)
                    )));
                }
            }
        }
        Ok(LinearMap {
            source,
            target,
            images,
            growth,
        })
    }

    /// Builds images from a callback; the callback may return `None` for
    /// basis symbols outside the representable window.
    pub fn on_basis(
        source: Alg,
        target: Alg,
        growth: Growth,
        mut f: impl FnMut(u32) -> Result<Option<Element>>,
    ) -> Result<LinearMap> {
        let mut images = Vec::with_capacity(source.dim());
        for i in 0..source.dim() as u32 {
            images.push(f(i)?);
        }
        LinearMap::new(source, target, images, growth)
    }

    pub fn image(&self, i: u32) -> Option<&Element> {
        self.images[i as usize].as_ref()
    }

    /// Largest `d` such that every basis symbol of weight `<= d` has an
    /// image; this is the window on which the map may be applied.
    pub fn defined_window(&self) -> u32 {
        let mut d = self.source.cap;
        for (i, img) in self.images.iter().enumerate() {
            if img.is_none() {
                d = d.min(self.source.weight_of(i as u32).saturating_sub(1));
            }
        }
        d
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        let mut out = Element::zero();
        for (i, c) in x.terms() {
            match &self.images[i as usize] {
                Some(e) => {
                    for (j, d) in e.terms() {
                        out.add_term(j, &d.mul(c));
                    }
                }
                None => {
                    return Err(Error::CapOverflow(format!(
                        "image of {} in {} not representable below cap {}",
                        self.source.symbol(i),
                        self.target.name,
                        self.target.cap
                    )))
                }
            }
        }
        Ok(out)
    }

    pub fn compose(outer: &LinearMap, inner: &LinearMap) -> Result<LinearMap> {
        if !outer.source.same_space(&inner.target) {
            return Err(Error::TypeMismatch(format!(
                "cannot compose: {} -> {} after {} -> {}",
                outer.source.name, outer.target.name, inner.source.name, inner.target.name
            )));
        }
        let images = inner
            .images
            .iter()
            .map(|img| match img {
                Some(e) => outer.apply(e).ok(),
                None => None,
            })
            .collect();
        LinearMap::new(
            inner.source.clone(),
            outer.target.clone(),
            images,
            outer.growth.after(&inner.growth),
        )
    }

    /// Matrix of the map restricted to source weight `<= level`, in the
    /// canonical bases. Rows index target symbols, columns source symbols of
    /// weight within the level.
    pub fn level_matrix(&self, level: u32) -> Result<crate::linalg::Matrix> {
        let cols: Vec<u32> = (0..self.source.dim() as u32)
            .filter(|&i| self.source.weight_of(i) <= level)
            .collect();
        let mut m = crate::linalg::Matrix::zero(self.source.ring, self.target.dim(), cols.len());
        for (c, &i) in cols.iter().enumerate() {
            let img = self.images[i as usize].as_ref().ok_or_else(|| {
                Error::CapOverflow(format!("no image for {}", self.source.symbol(i)))
            })?;
            for (r, s) in img.terms() {
                m.set(r as usize, c, s.clone());
            }
        }
        Ok(m)
    }

    pub fn scale(&self, s: &Scalar) -> LinearMap {
        LinearMap {
            source: self.source.clone(),
            target: self.target.clone(),
            images: self
                .images
                .iter()
                .map(|img| img.as_ref().map(|e| e.scale(s)))
                .collect(),
            growth: self.growth,
        }
    }

    pub fn add(a: &LinearMap, b: &LinearMap) -> Result<LinearMap> {
        if !a.source.same_space(&b.source) || !a.target.same_space(&b.target) {
            return Err(Error::TypeMismatch("sum of maps with different ends".into()));
        }
        let images = a
            .images
            .iter()
            .zip(&b.images)
            .map(|(x, y)| match (x, y) {
                (Some(x), Some(y)) => Some(x.add(y)),
                _ => None,
            })
            .collect();
        let growth = Growth {
            mul: a.growth.mul.max(b.growth.mul),
            add: a.growth.add.max(b.growth.add),
        };
        LinearMap::new(a.source.clone(), a.target.clone(), images, growth)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerifyStatus {
    Unchecked,
    /// Multiplicativity holds on all basis pairs with weight sum within the
    /// window.
    Verified { window: u32 },
    Failed { witness: String },
}

/// A homomorphism of filtered algebras, given on a basis.
#[derive(Debug, Clone)]
pub struct AlgebraMap {
    pub lin: LinearMap,
    pub verified: VerifyStatus,
}

impl AlgebraMap {
    /// Wraps a linear map and checks multiplicativity exhaustively on its
    /// guarantee window. Fails eagerly if a pair disagrees.
    pub fn verified(lin: LinearMap) -> Result<AlgebraMap> {
        let mut m = AlgebraMap {
            lin,
            verified: VerifyStatus::Unchecked,
        };
        match m.verify() {
            VerifyStatus::Failed { witness } => Err(Error::DiagramNotCommuting {
                witness: format!("not multiplicative: {witness}"),
            }),
            status => {
                m.verified = status;
                Ok(m)
            }
        }
    }

    pub fn unchecked(lin: LinearMap) -> AlgebraMap {
        AlgebraMap {
            lin,
            verified: VerifyStatus::Unchecked,
        }
    }

    pub fn source(&self) -> &Alg {
        &self.lin.source
    }

    pub fn target(&self) -> &Alg {
        &self.lin.target
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        self.lin.apply(x)
    }

    pub fn growth(&self) -> Growth {
        self.lin.growth
    }

    pub fn identity(a: &Alg) -> AlgebraMap {
        let images = (0..a.dim() as u32).map(|i| Some(a.basis_element(i))).collect();
        let lin = LinearMap::new(a.clone(), a.clone(), images, Growth::ONE)
            .expect("identity is well formed");
        AlgebraMap {
            lin,
            verified: VerifyStatus::Verified { window: a.cap.min(a.prod_exact_bound) },
        }
    }

    pub fn zero(source: &Alg, target: &Alg) -> Result<AlgebraMap> {
        let images = vec![Some(Element::zero()); source.dim()];
        let lin = LinearMap::new(source.clone(), target.clone(), images, Growth::ONE)?;
        Ok(AlgebraMap {
            lin,
            verified: VerifyStatus::Verified {
                window: source.cap,
            },
        })
    }

    /// The window on which multiplicativity is decidable: both the source
    /// product and the target-side product must be exact and representable.
    pub fn multiplicativity_window(&self) -> u32 {
        let src = &self.lin.source;
        let tgt = &self.lin.target;
        let g = self.lin.growth;
        let tgt_bound = tgt.cap.min(tgt.prod_exact_bound) as i64;
        let mut s = src
            .cap
            .min(src.prod_exact_bound)
            .min(self.lin.defined_window());
        while s > 0 {
            let pair_ok = g.mul as i64 * s as i64 + 2 * g.add as i64 <= tgt_bound
                && g.bound(s) <= tgt.cap as i64;
            if pair_ok {
                break;
            }
            s -= 1;
        }
        s
    }

    /// Exhaustive multiplicativity check on the guarantee window.
    pub fn verify(&self) -> VerifyStatus {
        let window = self.multiplicativity_window();
        let src = &self.lin.source;
        let tgt = &self.lin.target;
        let n = src.dim() as u32;
        for i in 0..n {
            for j in 0..n {
                let ws = src.weight_of(i) + src.weight_of(j);
                if ws > window {
                    continue;
                }
                let (prod, exact_src) = src.mul(&src.basis_element(i), &src.basis_element(j));
                let Ok(lhs) = self.lin.apply(&prod) else {
                    continue;
                };
                let (fa, fb) = match (self.lin.image(i), self.lin.image(j)) {
                    (Some(a), Some(b)) => (a, b),
                    _ => continue,
                };
                let (rhs, exact_tgt) = tgt.mul(fa, fb);
                if !exact_src || !exact_tgt {
                    continue;
                }
                if lhs != rhs {
                    return VerifyStatus::Failed {
                        witness: format!(
                            "f({a}*{b}) = {l} but f({a})*f({b}) = {r}",
                            a = src.symbol(i),
                            b = src.symbol(j),
                            l = tgt.render_element(&lhs),
                            r = tgt.render_element(&rhs),
                        ),
                    };
                }
            }
        }
        VerifyStatus::Verified { window }
    }

    pub fn compose(outer: &AlgebraMap, inner: &AlgebraMap) -> Result<AlgebraMap> {
        let lin = LinearMap::compose(&outer.lin, &inner.lin)?;
        let verified = match (&outer.verified, &inner.verified) {
            (VerifyStatus::Verified { window: wo }, VerifyStatus::Verified { window: wi }) => {
                // g(f(a)f(b)) = g(f(a))g(f(b)) needs the f-images inside the
                // outer verified window.
                let gi = inner.lin.growth;
                let mut w = *wi;
                while w > 0 && gi.mul as i64 * w as i64 + 2 * gi.add as i64 > *wo as i64 {
                    w -= 1;
                }
                VerifyStatus::Verified { window: w }
            }
            _ => VerifyStatus::Unchecked,
        };
        Ok(AlgebraMap { lin, verified })
    }

    /// Equality of homomorphisms at truncation: images agree on every basis
    /// symbol of weight within the window. Returns a witness on failure.
    pub fn agrees_with(&self, other: &AlgebraMap, window: u32) -> std::result::Result<(), String> {
        if !self.lin.source.same_space(&other.lin.source)
            || !self.lin.target.same_space(&other.lin.target)
        {
            return Err("maps have different source or target".into());
        }
        for i in 0..self.lin.source.dim() as u32 {
            if self.lin.source.weight_of(i) > window {
                continue;
            }
            match (self.lin.image(i), other.lin.image(i)) {
                (Some(a), Some(b)) => {
                    if a != b {
                        return Err(format!(
                            "on {}: {} vs {}",
                            self.lin.source.symbol(i),
                            self.lin.target.render_element(a),
                            self.lin.target.render_element(b)
                        ));
                    }
                }
                _ => {
                    return Err(format!(
                        "image of {} undefined inside window {window}",
                        self.lin.source.symbol(i)
                    ))
                }
            }
        }
        Ok(())
    }

    /// Common window on which two parallel maps can be compared.
    pub fn comparison_window(&self, other: &AlgebraMap) -> u32 {
        self.lin
            .defined_window()
            .min(other.lin.defined_window())
    }

    pub fn is_zero_within(&self, window: u32) -> bool {
        (0..self.lin.source.dim() as u32)
            .filter(|&i| self.lin.source.weight_of(i) <= window)
            .all(|i| matches!(self.lin.image(i), Some(e) if e.is_zero()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{ground, square_zero};
    use crate::polyext::PolyExt;
    use crate::ring::Ring;

    #[test]
    fn identity_applies_and_verifies() {
        let a = square_zero(Ring::Q, 4, 2);
        let id = AlgebraMap::identity(&a);
        let x = a.element(&[("m0", Ring::Q.one())]).unwrap();
        assert_eq!(id.apply(&x).unwrap(), x);
        assert!(matches!(id.verify(), VerifyStatus::Verified { .. }));
    }

    #[test]
    fn growth_window_arithmetic() {
        let g = Growth::new(2, -1);
        assert_eq!(g.bound(3), 5);
        assert_eq!(g.window(4, 4), 2);
        let composed = Growth::new(1, 1).after(&Growth::new(2, 0));
        assert_eq!(composed, Growth::new(2, 1));
    }

    #[test]
    fn square_zero_contraction_is_a_homomorphism() {
        // a -> a*x on a square-zero algebra.
        let a = square_zero(Ring::Q, 4, 1);
        let ax = PolyExt::carrier(&a);
        let lin = LinearMap::on_basis(a.clone(), ax.alg.clone(), Growth::new(1, 1), |i| {
            Ok(Some(ax.alg.basis_element(ax.monomial(i, 1).unwrap())))
        })
        .unwrap();
        let h = AlgebraMap::verified(lin).unwrap();
        assert!(matches!(h.verified, VerifyStatus::Verified { window } if window >= 2));
    }

    #[test]
    fn non_homomorphism_rejected() {
        // e -> e on the ground algebra is a hom; e -> 2e is not (e*e = e).
        let k = ground(Ring::Q, 4);
        let lin = LinearMap::on_basis(k.clone(), k.clone(), Growth::ONE, |_| {
            Ok(Some(k.basis_element(0).scale(&Ring::Q.from_i64(2))))
        })
        .unwrap();
        assert!(AlgebraMap::verified(lin).is_err());
    }

    #[test]
    fn compose_propagates_verified_window() {
        let k = ground(Ring::Q, 4);
        let id = AlgebraMap::identity(&k);
        let c = AlgebraMap::compose(&id, &id).unwrap();
        assert!(matches!(c.verified, VerifyStatus::Verified { .. }));
        assert!(c.agrees_with(&id, 4).is_ok());
    }

    #[test]
    fn apply_respects_cap_window() {
        let k = ground(Ring::Q, 4);
        let kx = PolyExt::new(&k, 4);
        let lin = LinearMap::on_basis(k.clone(), kx.alg.clone(), Growth::new(3, 0), |_| {
            Ok(Some(kx.alg.basis_element(kx.monomial(0, 2).unwrap())))
        })
        .unwrap();
        assert_eq!(lin.defined_window(), 4);
        let out = lin.apply(&k.basis_element(0)).unwrap();
        assert_eq!(kx.alg.weight(&out), 3);
    }
}
