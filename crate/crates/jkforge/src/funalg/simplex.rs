//! Simplex function algebras `A^{Delta^n}`.
//!
//! Barycentric coordinates are put in normal form by eliminating `t_0 = 1 -
//! sum t_i`; monomials in `t_1..t_n` with coefficients in the basis of `A`
//! form the canonical basis, with `weight(b * t^mu) = weight(b) + |mu|`.
//! Face, degeneracy and general order-map pullbacks act on this basis.

use std::collections::BTreeMap;

use crate::algebra::{Alg, Element, FilteredAlgebra, PairStatus};
use crate::error::{Error, Result};
use crate::map::{AlgebraMap, Growth, LinearMap};
use crate::ring::{Ring, Scalar};

/// A scalar-coefficient polynomial in the eliminated coordinates
/// `t_1..t_n`, used when expanding pullback substitutions.
pub type SPoly = BTreeMap<Vec<u32>, Scalar>;

pub fn spoly_zero() -> SPoly {
    BTreeMap::new()
}

pub fn spoly_const(n: usize, c: Scalar) -> SPoly {
    let mut p = SPoly::new();
    if !c.is_zero() {
        p.insert(vec![0; n], c);
    }
    p
}

pub fn spoly_var(n: usize, i: usize, ring: Ring) -> SPoly {
    let mut exp = vec![0; n];
    exp[i] = 1;
    let mut p = SPoly::new();
    p.insert(exp, ring.one());
    p
}

pub fn spoly_add(a: &SPoly, b: &SPoly) -> SPoly {
    let mut out = a.clone();
    for (m, c) in b {
        match out.get_mut(m) {
            Some(x) => {
                let s = x.add(c);
                if s.is_zero() {
                    out.remove(m);
                } else {
                    *x = s;
                }
            }
            None => {
                out.insert(m.clone(), c.clone());
            }
        }
    }
    out
}

pub fn spoly_mul(a: &SPoly, b: &SPoly) -> SPoly {
    let mut out = SPoly::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let m: Vec<u32> = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
            let c = ca.mul(cb);
            match out.get_mut(&m) {
                Some(x) => {
                    let s = x.add(&c);
                    if s.is_zero() {
                        out.remove(&m);
                    } else {
                        *x = s;
                    }
                }
                None => {
                    if !c.is_zero() {
                        out.insert(m, c);
                    }
                }
            }
        }
    }
    out
}

pub fn spoly_pow(a: &SPoly, n: usize, e: u32, ring: Ring) -> SPoly {
    if e == 0 {
        return spoly_const(n, ring.one());
    }
    let mut out = a.clone();
    for _ in 1..e {
        out = spoly_mul(&out, a);
    }
    out
}

/// The function algebra of the standard `n`-simplex over `A`.
#[derive(Debug, Clone)]
pub struct SimplexAlgebra {
    pub alg: Alg,
    pub base: Alg,
    pub n: u32,
    decomp: Vec<(u32, Vec<u32>)>,
    index: BTreeMap<(u32, Vec<u32>), u32>,
}

impl SimplexAlgebra {
    pub fn new(base: &Alg, n: u32) -> SimplexAlgebra {
        let cap = base.cap;
        let mut symbols: Vec<(String, u32, u32, Vec<u32>)> = Vec::new();
        for b in 0..base.dim() as u32 {
            let w = base.weight_of(b);
            for mu in monomials_up_to(n as usize, cap.saturating_sub(w)) {
                let total: u32 = mu.iter().sum();
                symbols.push((
                    monomial_symbol(base.symbol(b), &mu),
                    w + total,
                    b,
                    mu,
                ));
            }
        }
        symbols.sort_by(|a, b| (a.1, &a.0).cmp(&(b.1, &b.0)));
        let names: Vec<String> = symbols.iter().map(|s| s.0.clone()).collect();
        let weights: Vec<u32> = symbols.iter().map(|s| s.1).collect();
        let index: BTreeMap<(u32, Vec<u32>), u32> = symbols
            .iter()
            .enumerate()
            .map(|(new, (_, _, b, mu))| ((*b, mu.clone()), new as u32))
            .collect();
        let mut mult = BTreeMap::new();
        for (x, (_, _, bi, mi)) in symbols.iter().enumerate() {
            for (y, (_, _, bj, mj)) in symbols.iter().enumerate() {
                if base.commutative && x > y {
                    continue;
                }
                let (prod, status) = base.basis_product(*bi, *bj);
                if status == PairStatus::Dropped {
                    continue;
                }
                let sum: Vec<u32> = mi.iter().zip(mj).map(|(a, b)| a + b).collect();
                let mut elem = Element::zero();
                let mut fits = true;
                for (k, c) in prod.terms() {
                    match index.get(&(k, sum.clone())) {
                        Some(&idx) => elem.add_term(idx, c),
                        None => fits = false,
                    }
                }
                if fits {
                    mult.insert((x as u32, y as u32), elem);
                }
            }
        }
        let mut lossy = base.lossy;
        for (i, &wa) in weights.iter().enumerate() {
            for (j, &wb) in weights.iter().enumerate() {
                if base.commutative && i > j {
                    continue;
                }
                if wa + wb > cap && !mult.contains_key(&(i as u32, j as u32)) {
                    lossy = true;
                }
            }
        }
        let alg = FilteredAlgebra::from_parts(
            format!("{}^D{}", base.name, n),
            base.ring,
            cap,
            cap.min(base.prod_exact_bound),
            names,
            weights,
            mult,
            base.commutative,
            lossy,
            None,
        );
        let mut decomp = vec![(0u32, Vec::new()); alg.dim()];
        for ((b, mu), &idx) in &index {
            decomp[idx as usize] = (*b, mu.clone());
        }
        SimplexAlgebra {
            alg,
            base: base.clone(),
            n,
            decomp,
            index,
        }
    }

    pub fn monomial(&self, b: u32, mu: &[u32]) -> Option<u32> {
        self.index.get(&(b, mu.to_vec())).copied()
    }

    pub fn decompose(&self, idx: u32) -> (u32, &[u32]) {
        let (b, mu) = &self.decomp[idx as usize];
        (*b, mu)
    }

    /// Assembles `sum_b b (x) P_b` from scalar polynomials attached to base
    /// symbols; fails when a term exceeds the cap.
    pub fn from_poly(&self, parts: &[(u32, SPoly)]) -> Result<Element> {
        let mut out = Element::zero();
        for (b, poly) in parts {
            for (mu, c) in poly {
                match self.index.get(&(*b, mu.clone())) {
                    Some(&idx) => out.add_term(idx, c),
                    None => {
                        return Err(Error::CapOverflow(format!(
                            "{} * t^{:?} exceeds cap {}",
                            self.base.symbol(*b),
                            mu,
                            self.alg.cap
                        )))
                    }
                }
            }
        }
        Ok(out)
    }

    /// Module multiplication by a scalar polynomial in the coordinates.
    pub fn scalar_poly_mul(&self, poly: &SPoly, x: &Element) -> Result<Element> {
        let mut out = Element::zero();
        for (idx, c) in x.terms() {
            let (b, mu) = self.decompose(idx);
            for (nu, d) in poly {
                let sum: Vec<u32> = mu.iter().zip(nu).map(|(a, b)| a + b).collect();
                match self.index.get(&(b, sum)) {
                    Some(&j) => out.add_term(j, &c.mul(d)),
                    None => {
                        return Err(Error::CapOverflow(
                            "module product exceeds cap".into(),
                        ))
                    }
                }
            }
        }
        Ok(out)
    }

    /// The pullback along an order map `alpha: [m] -> [n]` (this algebra is
    /// over `Delta^n`, the target over `Delta^m`): `t_j` goes to the sum of
    /// the `t_i` with `alpha(i) = j`, in normal form on both sides.
    pub fn pullback(&self, alpha: &[u32], target: &SimplexAlgebra) -> Result<AlgebraMap> {
        let n = self.n as usize;
        let m = target.n as usize;
        if alpha.len() != m + 1 || alpha.iter().any(|&v| v > self.n) {
            return Err(Error::IndexOutOfRange(format!(
                "order map {:?} does not map [{}] to [{}]",
                alpha, m, n
            )));
        }
        if alpha.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::TypeMismatch(format!(
                "order map {alpha:?} is not monotone"
            )));
        }
        let ring = self.base.ring;
        // Substitution images L_j of each source coordinate t_j, j = 1..n,
        // expressed in the target normal form (s_0 eliminated).
        let mut subst: Vec<SPoly> = Vec::with_capacity(n);
        for j in 1..=n {
            let mut l = spoly_zero();
            for (i, &aj) in alpha.iter().enumerate() {
                if aj as usize != j {
                    continue;
                }
                if i == 0 {
                    // s_0 = 1 - sum s_i
                    let mut s0 = spoly_const(m, ring.one());
                    for v in 0..m {
                        s0 = spoly_add(
                            &s0,
                            &spoly_var(m, v, ring)
                                .into_iter()
                                .map(|(k, c)| (k, c.neg()))
                                .collect(),
                        );
                    }
                    l = spoly_add(&l, &s0);
                } else {
                    l = spoly_add(&l, &spoly_var(m, i - 1, ring));
                }
            }
            subst.push(l);
        }
        let lin = LinearMap::on_basis(
            self.alg.clone(),
            target.alg.clone(),
            Growth::ONE,
            |idx| {
                let (b, mu) = self.decompose(idx);
                let mut poly = spoly_const(m, ring.one());
                for (j, &e) in mu.iter().enumerate() {
                    if e > 0 {
                        poly = spoly_mul(&poly, &spoly_pow(&subst[j], m, e, ring));
                    }
                }
                Ok(Some(target.from_poly(&[(b, poly)])?))
            },
        )?;
        AlgebraMap::verified(lin)
    }

    /// Face operator `A^{Delta^n} -> A^{Delta^(n-1)}`.
    pub fn face(&self, i: u32, target: &SimplexAlgebra) -> Result<AlgebraMap> {
        if i > self.n || self.n == 0 || target.n + 1 != self.n {
            return Err(Error::IndexOutOfRange(format!("face({i}) on dim {}", self.n)));
        }
        let alpha: Vec<u32> = (0..self.n).map(|j| if j < i { j } else { j + 1 }).collect();
        self.pullback(&alpha, target)
    }

    /// Degeneracy operator `A^{Delta^n} -> A^{Delta^(n+1)}`.
    pub fn degeneracy(&self, i: u32, target: &SimplexAlgebra) -> Result<AlgebraMap> {
        if i > self.n || target.n != self.n + 1 {
            return Err(Error::IndexOutOfRange(format!(
                "degeneracy({i}) on dim {}",
                self.n
            )));
        }
        let alpha: Vec<u32> = (0..=self.n + 1)
            .map(|j| if j <= i { j } else { j - 1 })
            .collect();
        self.pullback(&alpha, target)
    }
}

pub fn monomials_up_to(n: usize, total: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fn rec(n: usize, pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if pos == n {
            out.push(cur.clone());
            return;
        }
        for v in 0..=left {
            cur[pos] = v;
            rec(n, pos + 1, left - v, cur, out);
        }
        cur[pos] = 0;
    }
    rec(n, 0, total, &mut cur, &mut out);
    out
}

fn monomial_symbol(base: &str, mu: &[u32]) -> String {
    if mu.iter().all(|&e| e == 0) {
        return base.to_string();
    }
    let exps: Vec<String> = mu.iter().map(|e| e.to_string()).collect();
    format!("{base}*t^({})", exps.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ground;
    use crate::map::AlgebraMap;

    #[test]
    fn dimension_counts() {
        let k = ground(Ring::Q, 4);
        let d2 = SimplexAlgebra::new(&k, 2);
        // monomials of degree <= 3 in two variables: 1+2+3+4 = 10
        assert_eq!(d2.alg.dim(), 10);
        assert_eq!(d2.alg.level_rank(4), 10);
        assert_eq!(d2.alg.level_rank(1), 1);
    }

    #[test]
    fn faces_on_dimension_one() {
        // On A^{Delta^1} = A[t], face(0) kills t and face(1) collapses a*t
        // to a (vertex evaluations).
        let k = ground(Ring::Q, 4);
        let d1 = SimplexAlgebra::new(&k, 1);
        let d0 = SimplexAlgebra::new(&k, 0);
        let f0 = d1.face(0, &d0).unwrap();
        let f1 = d1.face(1, &d0).unwrap();
        let t = d1.alg.basis_element(d1.monomial(0, &[1]).unwrap());
        // face(0): t_1 -> t_0 = 1 in the point; face(1): t_1 -> 0.
        assert_eq!(f0.apply(&t).unwrap(), d0.alg.basis_element(0));
        assert!(f1.apply(&t).unwrap().is_zero());
    }

    #[test]
    fn simplicial_identity_face_face() {
        let k = ground(Ring::Q, 4);
        let d2 = SimplexAlgebra::new(&k, 2);
        let d1 = SimplexAlgebra::new(&k, 1);
        let d0 = SimplexAlgebra::new(&k, 0);
        // d_i d_j = d_{j-1} d_i for i < j, as maps A^{D2} -> A^{D0}.
        for j in 0..=2u32 {
            for i in 0..j {
                let left = AlgebraMap::compose(
                    &d1.face(i, &d0).unwrap(),
                    &d2.face(j, &d1).unwrap(),
                )
                .unwrap();
                let right = AlgebraMap::compose(
                    &d1.face(j - 1, &d0).unwrap(),
                    &d2.face(i, &d1).unwrap(),
                )
                .unwrap();
                assert!(left.agrees_with(&right, 4).is_ok(), "i={i} j={j}");
            }
        }
    }

    #[test]
    fn pullback_of_collapse_adds_coordinates() {
        // alpha: [1] -> [0]: t_0 -> t_0 + t_1, i.e. the image of the
        // generator of A^{Delta^0} is the constant function.
        let k = ground(Ring::Q, 4);
        let d0 = SimplexAlgebra::new(&k, 0);
        let d1 = SimplexAlgebra::new(&k, 1);
        let p = d0.pullback(&[0, 0], &d1).unwrap();
        let e = d0.alg.basis_element(0);
        assert_eq!(p.apply(&e).unwrap(), d1.alg.basis_element(d1.monomial(0, &[0]).unwrap()));
    }

    #[test]
    fn module_multiplication() {
        let k = ground(Ring::Q, 4);
        let d1 = SimplexAlgebra::new(&k, 1);
        let t = spoly_var(1, 0, Ring::Q);
        let e = d1.alg.basis_element(d1.monomial(0, &[0]).unwrap());
        let te = d1.scalar_poly_mul(&t, &e).unwrap();
        assert_eq!(te, d1.alg.basis_element(d1.monomial(0, &[1]).unwrap()));
    }
}
