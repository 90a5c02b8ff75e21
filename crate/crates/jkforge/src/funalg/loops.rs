//! Path and loop algebras via the polynomial interval.
//!
//! `EA` is the kernel of evaluation at `x = 0` on `A[x]`, `Omega A` the
//! kernel of evaluation at `x = 1` restricted to `EA`; the loop extension
//! `Omega A -> EA -> A` is split by `a -> a*x`.

use crate::algebra::Alg;
use crate::error::Result;
use crate::map::{AlgebraMap, Growth, LinearMap};
use crate::polyext::PolyExt;
use crate::subalg::{kernel_subalgebra, Embedded, Extension};

#[derive(Debug)]
pub struct LoopExtension {
    pub poly: PolyExt,
    pub path: Embedded,
    pub looped: Embedded,
    pub ext: Extension,
}

pub fn path_algebra(a: &Alg) -> Result<(PolyExt, Embedded)> {
    let poly = PolyExt::new(a, a.cap);
    let d0 = poly.eval_map(0);
    let path = kernel_subalgebra(format!("E({})", a.name), &d0.lin)?;
    Ok((poly, path))
}

pub fn loop_extension(a: &Alg) -> Result<LoopExtension> {
    let (poly, path) = path_algebra(a)?;
    let d1_on_path = AlgebraMap::compose(&poly.eval_map(1), &path.inclusion)?;
    let looped = kernel_subalgebra(format!("Omega({})", a.name), &d1_on_path.lin)?;
    let splitting = LinearMap::on_basis(a.clone(), path.alg.clone(), Growth::new(1, 1), |i| {
        match poly.times_x(&a.basis_element(i), 1) {
            Ok(ax) => Ok(path.express(&ax)),
            Err(_) => Ok(None),
        }
    })?;
    let ext = Extension::new(
        looped.alg.clone(),
        path.alg.clone(),
        a.clone(),
        looped.inclusion.clone(),
        d1_on_path,
        splitting,
    )?;
    Ok(LoopExtension {
        poly,
        path,
        looped,
        ext,
    })
}

/// Iterated loop algebra by way of repeated loop extensions.
pub fn loop_algebra(a: &Alg) -> Result<Alg> {
    Ok(loop_extension(a)?.looped.alg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{ground, square_zero};
    use crate::ring::Ring;

    #[test]
    fn path_and_loop_ranks_over_ground() {
        let k = ground(Ring::Q, 4);
        let le = loop_extension(&k).unwrap();
        // E k: x, x^2, x^3 at weights 2, 3, 4.
        assert_eq!(
            (1..=4).map(|d| le.path.alg.level_rank(d)).collect::<Vec<_>>(),
            vec![0, 1, 2, 3]
        );
        // Omega k: x^2 - x, x^3 - x^2 at weights 3, 4.
        assert_eq!(
            (1..=4).map(|d| le.looped.alg.level_rank(d)).collect::<Vec<_>>(),
            vec![0, 0, 1, 2]
        );
    }

    #[test]
    fn exactness_rank_identity_per_level() {
        // rank kernel + rank image = rank middle under the level matrix of
        // the surjection.
        for a in [ground(Ring::Q, 4), square_zero(Ring::Q, 4, 2)] {
            let le = loop_extension(&a).unwrap();
            for d in 1..=4u32 {
                let m = le.ext.surject.lin.level_matrix(d).unwrap();
                let img = crate::linalg::rank(&m);
                let ker = crate::linalg::kernel_basis(&m).len();
                assert_eq!(ker, le.looped.alg.level_rank(d));
                assert_eq!(ker + img, le.path.alg.level_rank(d));
            }
        }
    }

    #[test]
    fn path_algebra_of_square_zero_is_square_zero() {
        let a = square_zero(Ring::Q, 4, 1);
        let (_, path) = path_algebra(&a).unwrap();
        for i in 0..path.alg.dim() as u32 {
            for j in 0..path.alg.dim() as u32 {
                let (p, _) = path
                    .alg
                    .mul(&path.alg.basis_element(i), &path.alg.basis_element(j));
                assert!(p.is_zero());
            }
        }
    }

    #[test]
    fn splitting_section_law() {
        let k = ground(Ring::Q, 4);
        let le = loop_extension(&k).unwrap();
        assert!(le.ext.splitting_window() >= 1);
        // validated in Extension::new; spot-check d1(a*x) = a.
        let s = le.ext.splitting.image(0).unwrap();
        let back = le.ext.surject.apply(s).unwrap();
        assert_eq!(back, k.basis_element(0));
    }

    #[test]
    fn loops_over_z_are_free() {
        let k = ground(Ring::Z, 4);
        let le = loop_extension(&k).unwrap();
        assert_eq!(le.looped.alg.dim(), 2);
    }
}
