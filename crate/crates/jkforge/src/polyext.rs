//! Polynomial extension `C[x]` of a filtered algebra, the carrier of
//! elementary homotopies.
//!
//! `weight(c * x^e) = weight(c) + e`. Homotopy carriers are built with a cap
//! larger than the base cap (by default twice it) so that the evaluation of
//! every canonical homotopy formula at `x = 0, 1` is exact on the whole base
//! window; the two evaluations land back inside the base cap.

use std::collections::BTreeMap;

use crate::algebra::{Alg, Element, FilteredAlgebra, PairStatus};
use crate::error::{Error, Result};
use crate::map::{AlgebraMap, Growth, LinearMap};
use crate::ring::Scalar;

#[derive(Debug, Clone)]
pub struct PolyExt {
    pub alg: Alg,
    pub base: Alg,
    /// `(base index, exponent)` for each extension symbol.
    decomp: Vec<(u32, u32)>,
    index: BTreeMap<(u32, u32), u32>,
}

impl PolyExt {
    pub fn new(base: &Alg, ext_cap: u32) -> PolyExt {
        let mut symbols: Vec<(String, u32, u32, u32)> = Vec::new();
        for i in 0..base.dim() as u32 {
            let w = base.weight_of(i);
            for e in 0..=(ext_cap.saturating_sub(w)) {
                symbols.push((poly_symbol(base.symbol(i), e), w + e, i, e));
            }
        }
        symbols.sort_by(|a, b| (a.1, &a.0).cmp(&(b.1, &b.0)));
        let names: Vec<String> = symbols.iter().map(|s| s.0.clone()).collect();
        let weights: Vec<u32> = symbols.iter().map(|s| s.1).collect();
        let lookup: BTreeMap<(u32, u32), u32> = symbols
            .iter()
            .enumerate()
            .map(|(new, &(_, _, i, e))| ((i, e), new as u32))
            .collect();
        let mut mult = BTreeMap::new();
        for (a_new, &(_, _, i, e)) in symbols.iter().enumerate() {
            for (b_new, &(_, _, j, f)) in symbols.iter().enumerate() {
                if base.commutative && a_new > b_new {
                    continue;
                }
                let (prod, status) = base.basis_product(i, j);
                if status == PairStatus::Dropped {
                    continue; // stays dropped in C[x]
                }
                let mut elem = Element::zero();
                let mut fits = true;
                for (k, coeff) in prod.terms() {
                    match lookup.get(&(k, e + f)) {
                        Some(&idx) => elem.add_term(idx, coeff),
                        None => fits = false,
                    }
                }
                if fits {
                    mult.insert((a_new as u32, b_new as u32), elem);
                }
            }
        }
        // A nonzero product can outgrow ext_cap even when C itself was exact.
        let mut lossy = base.lossy;
        for (i, &wa) in weights.iter().enumerate() {
            for (j, &wb) in weights.iter().enumerate() {
                if base.commutative && i > j {
                    continue;
                }
                if wa + wb > ext_cap && !mult.contains_key(&(i as u32, j as u32)) {
                    lossy = true;
                }
            }
        }
        let alg = FilteredAlgebra::from_parts(
            format!("{}[x]", base.name),
            base.ring,
            ext_cap,
            base.prod_exact_bound.min(ext_cap),
            names,
            weights,
            mult,
            base.commutative,
            lossy,
            None,
        );
        // from_parts preserves the sorted order, so lookup indices stay valid.
        let mut decomp = vec![(0u32, 0u32); alg.dim()];
        for (&(i, e), &idx) in &lookup {
            decomp[idx as usize] = (i, e);
        }
        PolyExt {
            alg,
            base: base.clone(),
            decomp,
            index: lookup,
        }
    }

    /// Default homotopy carrier over `base`.
    pub fn carrier(base: &Alg) -> PolyExt {
        PolyExt::new(base, base.cap * 2)
    }

    /// The symbol `b * x^e`, if representable.
    pub fn monomial(&self, base_idx: u32, e: u32) -> Option<u32> {
        self.index.get(&(base_idx, e)).copied()
    }

    pub fn decompose(&self, idx: u32) -> (u32, u32) {
        self.decomp[idx as usize]
    }

    /// Lifts a base element into the extension with an `x^e` factor.
    pub fn times_x(&self, e: &Element, exp: u32) -> Result<Element> {
        let mut out = Element::zero();
        for (i, c) in e.terms() {
            match self.monomial(i, exp) {
                Some(idx) => out.add_term(idx, c),
                None => {
                    return Err(Error::CapOverflow(format!(
                        "{} * x^{exp} exceeds cap {}",
                        self.base.symbol(i),
                        self.alg.cap
                    )))
                }
            }
        }
        Ok(out)
    }

    /// Coefficient of `x^e` as a base element.
    pub fn coefficient(&self, elem: &Element, e: u32) -> Element {
        let mut out = Element::zero();
        for (idx, c) in elem.terms() {
            let (b, exp) = self.decompose(idx);
            if exp == e {
                out.add_term(b, c);
            }
        }
        out
    }

    pub fn max_x_degree(&self, elem: &Element) -> u32 {
        elem.terms()
            .map(|(idx, _)| self.decompose(idx).1)
            .max()
            .unwrap_or(0)
    }

    /// Evaluation at a scalar point, landing in the base algebra.
    pub fn eval(&self, elem: &Element, at: &Scalar) -> Element {
        let mut out = Element::zero();
        for (idx, c) in elem.terms() {
            let (b, exp) = self.decompose(idx);
            let mut factor = c.clone();
            for _ in 0..exp {
                factor = factor.mul(at);
            }
            out.add_term(b, &factor);
        }
        out
    }

    /// The evaluation homomorphism at `x = i` for `i = 0, 1`.
    pub fn eval_map(&self, i: u8) -> AlgebraMap {
        let at = self.base.ring.from_i64(i as i64);
        let lin = LinearMap::on_basis(
            self.alg.clone(),
            self.base.clone(),
            Growth::ONE,
            |idx| {
                let (b, exp) = self.decompose(idx);
                let mut c = self.base.ring.one();
                for _ in 0..exp {
                    c = c.mul(&at);
                }
                Ok(Some(Element::single(b, c)))
            },
        )
        .expect("evaluation is well formed");
        AlgebraMap::verified(lin).expect("evaluation is a homomorphism")
    }

    /// The constant inclusion `C -> C[x]`.
    pub fn include(&self) -> AlgebraMap {
        let lin = LinearMap::on_basis(
            self.base.clone(),
            self.alg.clone(),
            Growth::ONE,
            |i| Ok(self.monomial(i, 0).map(|idx| Element::single(idx, self.base.ring.one()))),
        )
        .expect("inclusion is well formed");
        AlgebraMap::verified(lin).expect("inclusion is a homomorphism")
    }

    /// Substitutes `x -> 1 - x`, reversing a homotopy carrier.
    pub fn reverse_map(&self) -> AlgebraMap {
        let ring = self.base.ring;
        let lin = LinearMap::on_basis(self.alg.clone(), self.alg.clone(), Growth::ONE, |idx| {
            let (b, exp) = self.decompose(idx);
            // (1 - x)^exp = sum_j C(exp, j) (-1)^j x^j
            let mut row: Vec<i64> = vec![1];
            for _ in 0..exp {
                let mut next = vec![1i64];
                for w in row.windows(2) {
                    next.push(w[0] + w[1]);
                }
                next.push(1);
                row = next;
            }
            let mut out = Element::zero();
            for (j, &c) in row.iter().enumerate() {
                let signed = if j % 2 == 0 { c } else { -c };
                let Some(idx2) = self.monomial(b, j as u32) else {
                    return Err(Error::CapOverflow("reversal exceeds cap".into()));
                };
                out.add_term(idx2, &ring.from_i64(signed));
            }
            Ok(Some(out))
        })
        .expect("reversal is well formed");
        AlgebraMap::verified(lin).expect("reversal is a homomorphism")
    }

    /// Extends a linear map `C -> D` to `C[x] -> D[x]`, `c x^e -> f(c) x^e`.
    pub fn extend_linear(&self, f: &LinearMap, target: &PolyExt) -> Result<LinearMap> {
        if !f.source.same_space(&self.base) || !f.target.same_space(&target.base) {
            return Err(Error::TypeMismatch("extend_linear endpoint mismatch".into()));
        }
        LinearMap::on_basis(
            self.alg.clone(),
            target.alg.clone(),
            f.growth,
            |idx| {
                let (b, exp) = self.decompose(idx);
                match f.image(b) {
                    Some(img) => match target.times_x(img, exp) {
                        Ok(e) => Ok(Some(e)),
                        Err(_) => Ok(None),
                    },
                    None => Ok(None),
                }
            },
        )
    }
}

pub fn poly_symbol(base: &str, e: u32) -> String {
    if e == 0 {
        base.to_string()
    } else {
        format!("{base}*x^{e}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{ground, square_zero};
    use crate::ring::Ring;

    #[test]
    fn monomials_and_weights() {
        let k = ground(Ring::Q, 4);
        let kx = PolyExt::new(&k, 4);
        assert_eq!(kx.alg.dim(), 4);
        let x = kx.alg.basis_element(kx.monomial(0, 1).unwrap());
        let (x2, exact) = kx.alg.mul(&x, &x);
        assert!(exact);
        assert_eq!(kx.max_x_degree(&x2), 2);
        assert_eq!(kx.alg.weight(&x2), 3);
        assert!(kx.alg.lossy);
    }

    #[test]
    fn evaluations_are_sections_of_inclusion() {
        let a = square_zero(Ring::Q, 4, 2);
        let ax = PolyExt::carrier(&a);
        let inc = ax.include();
        let d0 = ax.eval_map(0);
        let d1 = ax.eval_map(1);
        let c0 = AlgebraMap::compose(&d0, &inc).unwrap();
        let c1 = AlgebraMap::compose(&d1, &inc).unwrap();
        let id = AlgebraMap::identity(&a);
        assert!(c0.agrees_with(&id, 4).is_ok());
        assert!(c1.agrees_with(&id, 4).is_ok());
    }

    #[test]
    fn eval_collapses_polynomials() {
        // a*x + a*x^2 at x=1 gives 2a, at x=0 gives 0.
        let a = square_zero(Ring::Q, 4, 1);
        let ax = PolyExt::carrier(&a);
        let m = a.basis_element(0);
        let e = ax.times_x(&m, 1).unwrap().add(&ax.times_x(&m, 2).unwrap());
        assert_eq!(ax.eval(&e, &Ring::Q.from_i64(1)), m.scale(&Ring::Q.from_i64(2)));
        assert!(ax.eval(&e, &Ring::Q.from_i64(0)).is_zero());
    }

    #[test]
    fn reversal_swaps_evaluations() {
        let a = square_zero(Ring::Q, 4, 1);
        let ax = PolyExt::carrier(&a);
        let rev = ax.reverse_map();
        let m = a.basis_element(0);
        let e = ax.times_x(&m, 1).unwrap();
        let r = rev.apply(&e).unwrap();
        assert_eq!(ax.eval(&r, &Ring::Q.from_i64(0)), m);
        assert!(ax.eval(&r, &Ring::Q.from_i64(1)).is_zero());
        // involution
        assert_eq!(rev.apply(&r).unwrap(), e);
    }
}
