//! Matrix algebras, corner embeddings and the finite stages of the Morita
//! and matrix-stable constructions.
//!
//! Only finite stages are computed: `M_n(A)` with its corner inclusions, and
//! iterated `M(k) (x) ... (x) M(k) (x) A` for the stable tower. The cone and
//! suspension algebras of row/column-bounded matrices appear only through a
//! validator for their defining membership conditions on finitely described
//! candidates; no arithmetic is done in them.

use std::collections::BTreeMap;

use crate::algebra::{Alg, Element, FilteredAlgebra, PairStatus};
use crate::error::{Error, Result};
use crate::map::{AlgebraMap, Growth, LinearMap};
use crate::ring::Scalar;
use crate::subalg::Extension;

/// `M_n(A)` with basis `e_pq (x) a`, `weight(e_pq (x) a) = weight(a)`.
#[derive(Debug)]
pub struct MatrixAlgebra {
    pub alg: Alg,
    pub base: Alg,
    pub size: u32,
    index: BTreeMap<(u32, u32, u32), u32>,
    decomp: Vec<(u32, u32, u32)>,
}

impl MatrixAlgebra {
    pub fn new(base: &Alg, size: u32) -> Result<MatrixAlgebra> {
        if size == 0 {
            return Err(Error::IndexOutOfRange("matrix size 0".into()));
        }
        let mut symbols: Vec<(String, u32, (u32, u32, u32))> = Vec::new();
        for p in 0..size {
            for q in 0..size {
                for b in 0..base.dim() as u32 {
                    symbols.push((
                        format!("e{}{}*{}", p + 1, q + 1, base.symbol(b)),
                        base.weight_of(b),
                        (p, q, b),
                    ));
                }
            }
        }
        symbols.sort_by(|a, b| (a.1, &a.0).cmp(&(b.1, &b.0)));
        let names: Vec<String> = symbols.iter().map(|s| s.0.clone()).collect();
        let weights: Vec<u32> = symbols.iter().map(|s| s.1).collect();
        let index: BTreeMap<(u32, u32, u32), u32> = symbols
            .iter()
            .enumerate()
            .map(|(i, s)| (s.2, i as u32))
            .collect();
        let decomp: Vec<(u32, u32, u32)> = symbols.iter().map(|s| s.2).collect();
        let mut mult = BTreeMap::new();
        for (x, &(_, _, (p, q, bi))) in symbols.iter().enumerate() {
            for (y, &(_, _, (r, s, bj))) in symbols.iter().enumerate() {
                if q != r {
                    // e_pq e_rs = 0 exactly, at every weight
                    mult.insert((x as u32, y as u32), Element::zero());
                    continue;
                }
                let (prod, status) = base.basis_product(bi, bj);
                if status == PairStatus::Dropped {
                    continue;
                }
                let mut elem = Element::zero();
                for (b, c) in prod.terms() {
                    elem.add_term(index[&(p, s, b)], c);
                }
                mult.insert((x as u32, y as u32), elem);
            }
        }
        let mut lossy = base.lossy;
        for (i, &wa) in weights.iter().enumerate() {
            for (j, &wb) in weights.iter().enumerate() {
                if wa + wb > base.cap && !mult.contains_key(&(i as u32, j as u32)) {
                    lossy = true;
                }
            }
        }
        let alg = FilteredAlgebra::from_parts(
            format!("M{}({})", size, base.name),
            base.ring,
            base.cap,
            base.cap.min(base.prod_exact_bound),
            names,
            weights,
            mult,
            false,
            lossy,
            None,
        );
        alg.validate()?;
        Ok(MatrixAlgebra {
            alg,
            base: base.clone(),
            size,
            index,
            decomp,
        })
    }

    pub fn unit(&self, p: u32, q: u32, b: u32) -> Option<u32> {
        self.index.get(&(p, q, b)).copied()
    }

    pub fn decompose(&self, i: u32) -> (u32, u32, u32) {
        self.decomp[i as usize]
    }
}

/// The corner inclusion `M_n(A) -> M_m(A)` for `n <= m`.
pub fn corner(small: &MatrixAlgebra, large: &MatrixAlgebra) -> Result<AlgebraMap> {
    if small.size > large.size || !small.base.same_space(&large.base) {
        return Err(Error::TypeMismatch(format!(
            "corner {} -> {}",
            small.alg.name, large.alg.name
        )));
    }
    let lin = LinearMap::on_basis(
        small.alg.clone(),
        large.alg.clone(),
        Growth::ONE,
        |i| {
            let (p, q, b) = small.decompose(i);
            Ok(Some(Element::single(
                large.unit(p, q, b).expect("corner unit"),
                small.base.ring.one(),
            )))
        },
    )?;
    AlgebraMap::verified(lin)
}

/// The upper-left corner embedding `A -> M_n(A)`.
pub fn stabilize(base: &Alg, target: &MatrixAlgebra) -> Result<AlgebraMap> {
    if !target.base.same_space(base) {
        return Err(Error::TypeMismatch("stabilize base".into()));
    }
    let lin = LinearMap::on_basis(base.clone(), target.alg.clone(), Growth::ONE, |b| {
        Ok(Some(Element::single(
            target.unit(0, 0, b).expect("corner unit"),
            base.ring.one(),
        )))
    })?;
    AlgebraMap::verified(lin)
}

/// `M(k)^{(x) r} (x) A` realized as an iterated matrix algebra at a fixed
/// finite support bound per tensor factor.
pub fn tensor_power_stage(base: &Alg, r: u32, bound: u32) -> Result<Vec<MatrixAlgebra>> {
    let mut stages = Vec::new();
    let mut current = base.clone();
    for _ in 0..r {
        let mat = MatrixAlgebra::new(&current, bound)?;
        current = mat.alg.clone();
        stages.push(mat);
    }
    Ok(stages)
}

/// Morita tower `M_1(B) -> M_2(B) -> ... -> M_n(B)` with its corner bonding
/// maps.
pub struct MoritaTower {
    pub stages: Vec<MatrixAlgebra>,
    pub bondings: Vec<AlgebraMap>,
}

pub fn morita_tower(b: &Alg, n: u32) -> Result<MoritaTower> {
    let stages: Vec<MatrixAlgebra> = (1..=n.max(1))
        .map(|s| MatrixAlgebra::new(b, s))
        .collect::<Result<_>>()?;
    let mut bondings = Vec::new();
    for w in stages.windows(2) {
        bondings.push(corner(&w[0], &w[1])?);
    }
    Ok(MoritaTower { stages, bondings })
}

/// Stable tower `B -> M(k) (x) B -> M(k) (x) M(k) (x) B -> ...` with the
/// upper-left-corner bonding maps.
pub struct StableTower {
    pub stages: Vec<MatrixAlgebra>,
    pub bondings: Vec<AlgebraMap>,
}

pub fn stable_tower(b: &Alg, r: u32, bound: u32) -> Result<StableTower> {
    let stages = tensor_power_stage(b, r, bound)?;
    let mut bondings = Vec::new();
    let mut prev = b.clone();
    for s in &stages {
        bondings.push(stabilize(&prev, s)?);
        prev = s.alg.clone();
    }
    Ok(StableTower { stages, bondings })
}

/// Applies `M_n(-)` to a split extension, lifting the splitting entrywise.
pub fn matrix_extension(e: &Extension, size: u32) -> Result<Extension> {
    let mf = MatrixAlgebra::new(&e.kernel_alg, size)?;
    let mb = MatrixAlgebra::new(&e.middle, size)?;
    let mc = MatrixAlgebra::new(&e.quotient, size)?;
    let entrywise_alg = |f: &AlgebraMap, src: &MatrixAlgebra, tgt: &MatrixAlgebra| -> Result<AlgebraMap> {
        let lin = entrywise_lin(&f.lin, src, tgt)?;
        AlgebraMap::verified(lin)
    };
    let inject = entrywise_alg(&e.inject, &mf, &mb)?;
    let surject = entrywise_alg(&e.surject, &mb, &mc)?;
    let splitting = entrywise_lin(&e.splitting, &mc, &mb)?;
    Extension::new(
        mf.alg.clone(),
        mb.alg.clone(),
        mc.alg.clone(),
        inject,
        surject,
        splitting,
    )
}

fn entrywise_lin(
    f: &LinearMap,
    src: &MatrixAlgebra,
    tgt: &MatrixAlgebra,
) -> Result<LinearMap> {
    LinearMap::on_basis(src.alg.clone(), tgt.alg.clone(), f.growth, |i| {
        let (p, q, b) = src.decompose(i);
        match f.image(b) {
            Some(img) => {
                let mut out = Element::zero();
                for (bb, c) in img.terms() {
                    out.add_term(tgt.unit(p, q, bb).expect("matrix unit"), c);
                }
                Ok(Some(out))
            }
            None => Ok(None),
        }
    })
}

/// A finitely described candidate for the cone algebra: a finite set of
/// constant diagonals plus finitely many corrections.
#[derive(Debug, Clone)]
pub struct BandedMatrix {
    /// `(offset, value)`: value at all entries `(i, i + offset)`.
    pub bands: Vec<(i64, Scalar)>,
    /// Explicit extra entries `(row, col, value)`, added to the bands.
    pub corrections: Vec<(u64, u64, Scalar)>,
}

/// Outcome of the cone membership check: the entry-value set of a banded
/// matrix is always finite (condition one); condition two asks for a
/// uniform bound on the nonzero entries in every row and column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConeMembership {
    /// No nonzero bands: finitely supported, in the matrix ideal.
    FiniteSupport,
    /// Bounded rows and columns with the stated bound.
    Cone { row_col_bound: usize },
}

pub fn classify_cone_candidate(c: &BandedMatrix) -> ConeMembership {
    let live_bands = c.bands.iter().filter(|(_, v)| !v.is_zero()).count();
    let live_corrections: Vec<&(u64, u64, Scalar)> =
        c.corrections.iter().filter(|(_, _, v)| !v.is_zero()).collect();
    if live_bands == 0 {
        return ConeMembership::FiniteSupport;
    }
    let mut per_row: BTreeMap<u64, usize> = BTreeMap::new();
    let mut per_col: BTreeMap<u64, usize> = BTreeMap::new();
    for (r, c, _) in &live_corrections {
        *per_row.entry(*r).or_insert(0) += 1;
        *per_col.entry(*c).or_insert(0) += 1;
    }
    let extra = per_row
        .values()
        .chain(per_col.values())
        .copied()
        .max()
        .unwrap_or(0);
    ConeMembership::Cone {
        row_col_bound: live_bands + extra,
    }
}

/// Whether the suspension class (cone modulo finite matrices) vanishes.
pub fn suspension_class_is_zero(c: &BandedMatrix) -> bool {
    matches!(classify_cone_candidate(c), ConeMembership::FiniteSupport)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{ground, square_zero};
    use crate::funalg::loop_extension;
    use crate::ring::Ring;

    #[test]
    fn matrix_unit_relations() {
        let k = ground(Ring::Q, 4);
        let m2 = MatrixAlgebra::new(&k, 2).unwrap();
        for p in 0..2 {
            for q in 0..2 {
                for r in 0..2 {
                    for s in 0..2 {
                        let a = m2.alg.basis_element(m2.unit(p, q, 0).unwrap());
                        let b = m2.alg.basis_element(m2.unit(r, s, 0).unwrap());
                        let (prod, exact) = m2.alg.mul(&a, &b);
                        assert!(exact);
                        if q == r {
                            assert_eq!(prod, m2.alg.basis_element(m2.unit(p, s, 0).unwrap()));
                        } else {
                            assert!(prod.is_zero());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn matrix_ranks_factor() {
        for a in [ground(Ring::Q, 4), square_zero(Ring::Q, 4, 2)] {
            let m3 = MatrixAlgebra::new(&a, 3).unwrap();
            for d in 1..=4 {
                assert_eq!(m3.alg.level_rank(d), 9 * a.level_rank(d));
            }
        }
    }

    #[test]
    fn corner_transitivity() {
        let k = ground(Ring::Q, 4);
        let m1 = MatrixAlgebra::new(&k, 1).unwrap();
        let m2 = MatrixAlgebra::new(&k, 2).unwrap();
        let m3 = MatrixAlgebra::new(&k, 3).unwrap();
        let c12 = corner(&m1, &m2).unwrap();
        let c23 = corner(&m2, &m3).unwrap();
        let c13 = corner(&m1, &m3).unwrap();
        let composed = AlgebraMap::compose(&c23, &c12).unwrap();
        assert!(composed.agrees_with(&c13, 4).is_ok());
    }

    #[test]
    fn stabilize_is_a_verified_corner() {
        let a = square_zero(Ring::Q, 4, 2);
        let m2 = MatrixAlgebra::new(&a, 2).unwrap();
        let s = stabilize(&a, &m2).unwrap();
        assert!(matches!(s.verified, crate::map::VerifyStatus::Verified { .. }));
        // image is the (1,1) corner
        let img = s.apply(&a.basis_element(0)).unwrap();
        assert_eq!(img, m2.alg.basis_element(m2.unit(0, 0, 0).unwrap()));
    }

    #[test]
    fn stable_tower_stage_zero_is_the_algebra() {
        let b = ground(Ring::Q, 4);
        let t = stable_tower(&b, 0, 2).unwrap();
        assert!(t.stages.is_empty());
        let t1 = stable_tower(&b, 1, 2).unwrap();
        assert_eq!(t1.stages.len(), 1);
        assert_eq!(t1.bondings.len(), 1);
    }

    #[test]
    fn matrices_preserve_split_extensions() {
        let k = ground(Ring::Q, 4);
        let le = loop_extension(&k).unwrap();
        let m2 = matrix_extension(&le.ext, 2).unwrap();
        assert_eq!(m2.kernel_alg.dim(), 4 * le.looped.alg.dim());
    }

    #[test]
    fn cone_classification() {
        let one = Ring::Q.one();
        let shift = BandedMatrix {
            bands: vec![(1, one.clone())],
            corrections: vec![],
        };
        assert_eq!(
            classify_cone_candidate(&shift),
            ConeMembership::Cone { row_col_bound: 1 }
        );
        assert!(!suspension_class_is_zero(&shift));
        let finite = BandedMatrix {
            bands: vec![],
            corrections: vec![(0, 0, one.clone()), (5, 7, one)],
        };
        assert_eq!(classify_cone_candidate(&finite), ConeMembership::FiniteSupport);
        assert!(suspension_class_is_zero(&finite));
    }
}
