//! The constructive excision kit: mapping-path algebras over a split
//! extension, the linear sections built from the canonical 1-simplex, the
//! interval-multiplication comparison map and the classifying-map
//! identities that tie them together.
//!
//! Everything here is computed at one fixed cube dimension `n` and
//! subdivision stage `m`; the colimit bonding maps exist elsewhere, the
//! colimits themselves are out of reach of a finite computation.

use std::sync::Arc;

use crate::algebra::{summand_index, Element};
use crate::error::{Error, Result};
use crate::funalg::{
    based_path_object, cube_map, custom_object, end_evaluation, loop_like_extension, omega_object,
    power_coeff_map, upsilon_at, CubeObject, LoopLikeExtension, Power, PowerAlgebra,
};
use crate::homotopy::{ElementaryHomotopy, HomotopyChain};
use crate::map::{AlgebraMap, Growth, LinearMap};
use crate::subalg::{kernel_subalgebra, Embedded, Extension};
use crate::tensorial::{
    classifying_map, homotopy_g, universal_extension, ExtensionMorphism, UniversalExtension,
};

/// Linear splitting data for an extension `F -> B -> C` in the fibration
/// class: a section `g` of the surjection and a retraction `j` of the
/// inclusion with `i j + g f = 1`.
pub struct SplitExtension {
    pub ext: Extension,
    pub g: LinearMap,
    pub j: LinearMap,
}

impl SplitExtension {
    pub fn new(ext: Extension, g: LinearMap, j: LinearMap) -> Result<SplitExtension> {
        let se = SplitExtension { ext, g, j };
        se.validate()?;
        Ok(se)
    }

    fn validate(&self) -> Result<()> {
        let b = &self.ext.middle;
        let f = &self.ext.surject;
        let i = &self.ext.inject;
        // f g = 1
        for c in 0..self.ext.quotient.dim() as u32 {
            if let Some(img) = self.g.image(c) {
                if f.apply(img)? != self.ext.quotient.basis_element(c) {
                    return Err(Error::SectionFailure {
                        level: self.ext.quotient.weight_of(c),
                        witness: format!("f(g({})) is off", self.ext.quotient.symbol(c)),
                    });
                }
            }
        }
        // j i = 1
        for x in 0..self.ext.kernel_alg.dim() as u32 {
            if let Some(img) = i.lin.image(x) {
                let back = self.j.apply(img)?;
                if back != self.ext.kernel_alg.basis_element(x) {
                    return Err(Error::SectionFailure {
                        level: self.ext.kernel_alg.weight_of(x),
                        witness: format!("j(i({})) is off", self.ext.kernel_alg.symbol(x)),
                    });
                }
            }
        }
        // i j + g f = 1
        for x in 0..b.dim() as u32 {
            let e = b.basis_element(x);
            let ij = i.apply(&self.j.apply(&e)?)?;
            let gf = self.g.apply(&f.apply(&e)?)?;
            if ij.add(&gf) != e {
                return Err(Error::SectionFailure {
                    level: b.weight_of(x),
                    witness: format!("ij + gf is not the identity on {}", b.symbol(x)),
                });
            }
        }
        Ok(())
    }
}

/// The mapping-path algebra `P_f` at stage `(n, m)` with its projections
/// and the inclusion of the kernel loop object.
pub struct MappingPath {
    pub n: u32,
    pub m: u32,
    pub f_omega: Arc<CubeObject>,
    pub b_omega: Arc<CubeObject>,
    pub c_omega: Arc<CubeObject>,
    pub c_based: Arc<CubeObject>,
    /// `P_f` inside `B`-loops (+) based `C`-paths.
    pub carrier: Embedded,
    pub pr_b: AlgebraMap,
    pub pr_pc: AlgebraMap,
    pub iota: AlgebraMap,
    /// `f` on loop objects and the end evaluation on based paths: the two
    /// legs of the cartesian square defining the carrier.
    pub f_power_map: AlgebraMap,
    pub d1_on_based: AlgebraMap,
}

impl MappingPath {
    /// Pairs an element of the `B`-loop object with a based `C`-path.
    fn pair(&self, b: &Element, w: &Element) -> Result<Element> {
        let amb_b = self.carrier.ambient.clone();
        let mut amb = Element::zero();
        for (k, c) in b.terms() {
            amb.add_term(
                summand_index(&amb_b, 0, k, &self.b_omega.sub.alg),
                c,
            );
        }
        for (k, c) in w.terms() {
            amb.add_term(
                summand_index(&amb_b, 1, k, &self.c_based.sub.alg),
                c,
            );
        }
        self.carrier.express(&amb).ok_or_else(|| Error::DiagramNotCommuting {
            witness: "pair does not satisfy the cartesian condition".into(),
        })
    }
}

pub fn mapping_path(se: &SplitExtension, n: u32, m: u32) -> Result<MappingPath> {
    let fb = se.ext.kernel_alg.clone();
    let bb = se.ext.middle.clone();
    let cb = se.ext.quotient.clone();
    let f_omega = Arc::new(omega_object(&fb, n, m)?);
    let b_omega = Arc::new(omega_object(&bb, n, m)?);
    let c_omega = Arc::new(omega_object(&cb, n, m)?);
    let c_based = Arc::new(based_path_object(&cb, n, m)?);
    // f on loop objects
    let f_power = power_coeff_map(&se.ext.surject.lin, &b_omega.power, &c_omega.power)?;
    let f_on_omega = c_omega.sub.corestrict(&AlgebraMap {
        lin: LinearMap::compose(&f_power, &b_omega.sub.inclusion.lin)?,
        verified: crate::map::VerifyStatus::Unchecked,
    })?;
    // d_1 on based paths
    let d1 = end_evaluation(&c_based.power, &c_omega.power, n, m, 1)?;
    let d1_on_based = c_omega
        .sub
        .corestrict(&AlgebraMap::compose(&d1, &c_based.sub.inclusion)?)?;
    // carrier = fiber product over the C loop object
    let fp = crate::subalg::fiber_product(
        format!("P_f^{n}_{m}"),
        &f_on_omega,
        &d1_on_based,
    )?;
    // iota: F loops -> P_f, x -> (i(x), 0)
    let i_power = power_coeff_map(&se.ext.inject.lin, &f_omega.power, &b_omega.power)?;
    let i_on_omega = b_omega.sub.corestrict(&AlgebraMap {
        lin: LinearMap::compose(&i_power, &f_omega.sub.inclusion.lin)?,
        verified: crate::map::VerifyStatus::Unchecked,
    })?;
    let mp = MappingPath {
        n,
        m,
        f_omega,
        b_omega,
        c_omega,
        c_based,
        carrier: fp.sub,
        pr_b: fp.pr1,
        pr_pc: fp.pr2,
        iota: AlgebraMap::identity(&bb), // placeholder, replaced below
        f_power_map: f_on_omega,
        d1_on_based,
    };
    let iota = {
        let lin = LinearMap::on_basis(
            mp.f_omega.sub.alg.clone(),
            mp.carrier.alg.clone(),
            Growth::ONE,
            |x| {
                let img = i_on_omega.apply(&mp.f_omega.sub.alg.basis_element(x))?;
                Ok(Some(mp.pair(&img, &Element::zero())?))
            },
        )?;
        AlgebraMap::verified(lin)?
    };
    Ok(MappingPath { iota, ..mp })
}

/// The full excision kit at one stage: the diagram of path objects, its
/// linear sections and the classifying maps.
pub struct ExcisionKit {
    pub mp: MappingPath,
    pub b_based: Arc<CubeObject>,
    pub cc_based: Arc<CubeObject>,
    /// `pi = (d_1, P(f)): P(B loops) -> P_f`.
    pub pi: AlgebraMap,
    /// Linear section of `pi`.
    pub nu: LinearMap,
    /// The double path object `Ptilde(P_f)` inside `P(B) (+) P(P C)`.
    pub ptilde: Embedded,
    /// `partial = (d_1, P d_1): Ptilde(P_f) -> P_f`.
    pub partial: AlgebraMap,
    /// Linear section `tau = (upsilon, P upsilon)` of `partial`.
    pub tau: LinearMap,
    /// `theta = (1, f lambda*): P(B loops) -> Ptilde(P_f)`.
    pub theta: AlgebraMap,
    /// Kernel of `partial` (the next mapping-path algebra) with the
    /// inclusion of the `F` loop object into it.
    pub bottom_kernel: Embedded,
    pub iota_next: AlgebraMap,
    /// The middle-row inclusion `F^{Omega^(n+1)} -> P(B loops)`.
    pub mid_inject: AlgebraMap,
    /// The universal extension over `P_f`.
    pub univ_pf: UniversalExtension,
    /// Classifying maps of the middle and bottom rows.
    pub alpha: AlgebraMap,
    pub xi_tau: AlgebraMap,
    /// The loop-like extension of the kernel base and its classifying map.
    pub f_loop: LoopLikeExtension,
    pub univ_f_omega: UniversalExtension,
    pub xi_upsilon: AlgebraMap,
}

pub fn excision_kit(se: &SplitExtension, n: u32, m: u32) -> Result<ExcisionKit> {
    let mp = mapping_path(se, n, m)?;
    let fb = se.ext.kernel_alg.clone();
    let bb = se.ext.middle.clone();
    let cb = se.ext.quotient.clone();
    let b_based = Arc::new(based_path_object(&bb, n, m)?);
    let scalar_b_based = scalar_power_for(&b_based.power)?;

    // pi: P(B loops) -> P_f, omega -> (d_1 omega, f omega)
    let d1_b = end_evaluation(&b_based.power, &mp.b_omega.power, n, m, 1)?;
    let d1_b_based = mp
        .b_omega
        .sub
        .corestrict(&AlgebraMap::compose(&d1_b, &b_based.sub.inclusion)?)?;
    let f_based = power_coeff_map(&se.ext.surject.lin, &b_based.power, &mp.c_based.power)?;
    let f_on_based = mp.c_based.sub.corestrict(&AlgebraMap {
        lin: LinearMap::compose(&f_based, &b_based.sub.inclusion.lin)?,
        verified: crate::map::VerifyStatus::Unchecked,
    })?;
    let pi = {
        let lin = LinearMap::on_basis(
            b_based.sub.alg.clone(),
            mp.carrier.alg.clone(),
            Growth::ONE,
            |x| {
                let e = b_based.sub.alg.basis_element(x);
                let left = d1_b_based.apply(&e)?;
                let right = f_on_based.apply(&e)?;
                Ok(Some(mp.pair(&left, &right)?))
            },
        )?;
        AlgebraMap::verified(lin)?
    };

    // nu: P_f -> P(B loops), (b, w) -> upsilon(i j b) + g(w)
    let ups_b = upsilon_at(
        &mp.b_omega.power,
        &b_based.power,
        &scalar_b_based,
        n,
        m,
        n,
    )?;
    let ij_omega = {
        let ij = LinearMap::compose(&se.ext.inject.lin, &se.j)?;
        power_coeff_map(&ij, &mp.b_omega.power, &mp.b_omega.power)?
    };
    let g_based = power_coeff_map(&se.g, &mp.c_based.power, &b_based.power)?;
    let nu = {
        let mp_ref = &mp;
        LinearMap::on_basis(
            mp.carrier.alg.clone(),
            b_based.sub.alg.clone(),
            Growth::new(1, 1),
            |x| {
                let e = mp_ref.carrier.alg.basis_element(x);
                let b_part = mp_ref
                    .b_omega
                    .sub
                    .inclusion
                    .apply(&mp_ref.pr_b.apply(&e)?)?;
                let w_part = mp_ref
                    .c_based
                    .sub
                    .inclusion
                    .apply(&mp_ref.pr_pc.apply(&e)?)?;
                let lifted = match ij_omega
                    .apply(&b_part)
                    .and_then(|v| ups_b.apply(&v))
                {
                    Ok(v) => v,
                    Err(Error::CapOverflow(_)) => return Ok(None),
                    Err(e) => return Err(e),
                };
                let gw = match g_based.apply(&w_part) {
                    Ok(v) => v,
                    Err(Error::CapOverflow(_)) => return Ok(None),
                    Err(e) => return Err(e),
                };
                Ok(b_based.sub.express(&lifted.add(&gw)))
            },
        )?
    };

    // middle row: F^{Omega^(n+1)} -> P(B loops) -> P_f, split by nu.
    let f_omega_n1 = omega_object(&fb, n + 1, m)?;
    let i_power_n1 = power_coeff_map(&se.ext.inject.lin, &f_omega_n1.power, &b_based.power)?;
    let mid_inject = b_based.sub.corestrict(&AlgebraMap {
        lin: LinearMap::compose(&i_power_n1, &f_omega_n1.sub.inclusion.lin)?,
        verified: crate::map::VerifyStatus::Unchecked,
    })?;
    let middle_row = Extension::new(
        f_omega_n1.sub.alg.clone(),
        b_based.sub.alg.clone(),
        mp.carrier.alg.clone(),
        mid_inject.clone(),
        pi.clone(),
        nu.clone(),
    )?;
    let univ_pf = universal_extension(&mp.carrier.alg)?;
    let alpha = classifying_map(&univ_pf, &middle_row)?;

    // double path object of C and the bottom row.
    let mut based_conditions: Vec<(Option<u32>, Option<u8>)> =
        (0..n).map(|c| (Some(c), None)).collect();
    based_conditions.push((Some(n), Some(1)));
    based_conditions.push((Some(n + 1), Some(1)));
    let cc_based = Arc::new(custom_object(
        &cb,
        n + 2,
        m,
        &based_conditions,
        format!("PP{}^S{n}_{m}", cb.name),
    )?);
    // Ptilde(P_f) = P(B loops) x_{P(C)} P(P C) along (P(f), inner end).
    let pf_based = {
        let lin = LinearMap::compose(&f_based, &b_based.sub.inclusion.lin)?;
        mp.c_based.sub.corestrict(&AlgebraMap {
            lin,
            verified: crate::map::VerifyStatus::Unchecked,
        })?
    };
    let inner_end = {
        // restrict coordinate n to 0 (the inner path evaluation target).
        let incl = cube_map(n + 1, n + 2, m, |bits| {
            let mut out = bits.to_vec();
            out.insert(n as usize, 0);
            out
        })?;
        let r = cc_based
            .power
            .restriction(&incl, &mp.c_based.power)?;
        mp.c_based
            .sub
            .corestrict(&AlgebraMap::compose(&r, &cc_based.sub.inclusion)?)?
    };
    let ptilde_fp = crate::subalg::fiber_product("Pt", &pf_based, &inner_end)?;
    let ptilde = ptilde_fp.sub;
    let pr_pb = ptilde_fp.pr1;
    let pr_ppc = ptilde_fp.pr2;

    // partial = (d_1 on the B path, inner end-0 evaluation of the double
    // C path): Ptilde(P_f) -> P_f.
    let outer_end_pc = {
        // restrict the LAST coordinate (n+1) to 0: P d_1.
        let incl = cube_map(n + 1, n + 2, m, |bits| {
            let mut out = bits.to_vec();
            out.push(0);
            out
        })?;
        let r = cc_based.power.restriction(&incl, &mp.c_based.power)?;
        mp.c_based
            .sub
            .corestrict(&AlgebraMap::compose(&r, &cc_based.sub.inclusion)?)?
    };
    let partial = {
        let mp_ref = &mp;
        let lin = LinearMap::on_basis(
            ptilde.alg.clone(),
            mp.carrier.alg.clone(),
            Growth::ONE,
            |x| {
                let e = ptilde.alg.basis_element(x);
                let beta = pr_pb.apply(&e)?;
                let gamma = pr_ppc.apply(&e)?;
                let left = d1_b_based.apply(&beta)?;
                let right = outer_end_pc.apply(&gamma)?;
                Ok(Some(mp_ref.pair(&left, &right)?))
            },
        )?;
        AlgebraMap::verified(lin)?
    };

    // tau = (upsilon, P upsilon): P_f -> Ptilde(P_f).
    let scalar_cc = scalar_power_for(&cc_based.power)?;
    let p_ups_c = upsilon_at(
        &mp.c_based.power,
        &cc_based.power,
        &scalar_cc,
        n + 1,
        m,
        n,
    )?;
    let tau = {
        let mp_ref = &mp;
        let pt = &ptilde;
        LinearMap::on_basis(
            mp.carrier.alg.clone(),
            ptilde.alg.clone(),
            Growth::new(1, 1),
            |x| {
                let e = mp_ref.carrier.alg.basis_element(x);
                let b_part = mp_ref
                    .b_omega
                    .sub
                    .inclusion
                    .apply(&mp_ref.pr_b.apply(&e)?)?;
                let w_part = mp_ref
                    .c_based
                    .sub
                    .inclusion
                    .apply(&mp_ref.pr_pc.apply(&e)?)?;
                let up_b = match ups_b.apply(&b_part) {
                    Ok(v) => v,
                    Err(Error::CapOverflow(_)) => return Ok(None),
                    Err(e) => return Err(e),
                };
                let up_w = match p_ups_c.apply(&w_part) {
                    Ok(v) => v,
                    Err(Error::CapOverflow(_)) => return Ok(None),
                    Err(e) => return Err(e),
                };
                let Some(bb) = b_based.sub.express(&up_b) else {
                    return Ok(None);
                };
                let Some(ww) = cc_based.sub.express(&up_w) else {
                    return Ok(None);
                };
                let mut amb = Element::zero();
                let sum_alg = pt.ambient.clone();
                for (k, c) in bb.terms() {
                    amb.add_term(summand_index(&sum_alg, 0, k, &b_based.sub.alg), c);
                }
                for (k, c) in ww.terms() {
                    amb.add_term(summand_index(&sum_alg, 1, k, &cc_based.sub.alg), c);
                }
                Ok(pt.express(&amb))
            },
        )?
    };

    // theta = (1, f lambda*): P(B loops) -> Ptilde(P_f).
    let lam = cube_map(n + 2, n + 1, m, |bits| {
        let mut out = bits[..n as usize].to_vec();
        out.push(bits[n as usize].max(bits[n as usize + 1]));
        out
    })?;
    // f applied after lambda*, coefficientwise on the double-path power.
    let bb_cc_power = PowerAlgebra::new(&bb, &cc_based.power.complex)?;
    let lam_star_b = {
        let r = b_based.power.restriction(&lam, &bb_cc_power)?;
        AlgebraMap::compose(&r, &b_based.sub.inclusion)?
    };
    let f_cc = power_coeff_map(&se.ext.surject.lin, &bb_cc_power, &cc_based.power)?;
    let theta = {
        let pt = &ptilde;
        let lin = LinearMap::on_basis(
            b_based.sub.alg.clone(),
            ptilde.alg.clone(),
            Growth::ONE,
            |x| {
                let e = b_based.sub.alg.basis_element(x);
                let second = f_cc.apply(&lam_star_b.apply(&e)?)?;
                let Some(ww) = cc_based.sub.express(&second) else {
                    return Err(Error::DiagramNotCommuting {
                        witness: "f lambda* leaves the double path object".into(),
                    });
                };
                let mut amb = Element::zero();
                for (k, c) in Element::single(x, cb.ring.one()).terms() {
                    amb.add_term(summand_index(&pt.ambient, 0, k, &b_based.sub.alg), c);
                }
                for (k, c) in ww.terms() {
                    amb.add_term(summand_index(&pt.ambient, 1, k, &cc_based.sub.alg), c);
                }
                Ok(pt.express(&amb))
            },
        )?;
        AlgebraMap::verified(lin)?
    };

    // bottom row: ker(partial) -> Ptilde(P_f) -> P_f, split by tau.
    let bottom_kernel = kernel_subalgebra(format!("Pf^{}_{m}", n + 1), &partial.lin)?;
    let bottom_row = Extension::new(
        bottom_kernel.alg.clone(),
        ptilde.alg.clone(),
        mp.carrier.alg.clone(),
        bottom_kernel.inclusion.clone(),
        partial.clone(),
        tau.clone(),
    )?;
    let xi_tau = classifying_map(&univ_pf, &bottom_row)?;

    // iota at the next stage: F^{Omega^(n+1)} -> ker(partial), through theta.
    let iota_next = bottom_kernel.corestrict(&AlgebraMap::compose(&theta, &mid_inject)?)?;

    // the F-side loop extension and its classifying map.
    let f_loop = loop_like_extension(&fb, n, m)?;
    let univ_f_omega = universal_extension(&mp.f_omega.sub.alg.clone())?;
    let xi_upsilon = classifying_map(&univ_f_omega, &f_loop.ext)?;

    Ok(ExcisionKit {
        mp,
        b_based,
        cc_based,
        pi,
        nu,
        ptilde,
        partial,
        tau,
        theta,
        bottom_kernel,
        iota_next,
        mid_inject,
        univ_pf,
        alpha,
        xi_tau,
        f_loop,
        univ_f_omega,
        xi_upsilon,
    })
}

/// The loop extension of the ground algebra as a split extension with its
/// canonical retraction; one of the two standard excision test inputs.
pub fn loop_demo_extension(ring: crate::ring::Ring, cap: u32) -> Result<SplitExtension> {
    let k = crate::algebra::ground(ring, cap);
    let le = crate::funalg::loop_extension(&k)?;
    let g = le.ext.splitting.clone();
    let j = LinearMap::on_basis(
        le.path.alg.clone(),
        le.looped.alg.clone(),
        Growth::ONE,
        |i| {
            // j = 1 - g f, landing in the loop subalgebra
            let e = le.path.alg.basis_element(i);
            let gf = le.ext.splitting.apply(&le.ext.surject.apply(&e)?)?;
            Ok(le.looped.express(&e.sub(&gf)))
        },
    )?;
    SplitExtension::new(
        Extension::new(
            le.looped.alg.clone(),
            le.path.alg.clone(),
            k,
            le.looped.inclusion.clone(),
            le.ext.surject.clone(),
            le.ext.splitting.clone(),
        )?,
        g,
        j,
    )
}

/// A two-dimensional square-zero algebra split along its generators; the
/// second standard excision test input.
pub fn square_zero_demo_extension(ring: crate::ring::Ring, cap: u32) -> Result<SplitExtension> {
    let b = crate::algebra::square_zero(ring, cap, 2);
    let f_alg = crate::algebra::square_zero(ring, cap, 1);
    let c_alg = crate::algebra::square_zero(ring, cap, 1);
    let inject = AlgebraMap::verified(LinearMap::on_basis(
        f_alg.clone(),
        b.clone(),
        Growth::ONE,
        |_| Ok(Some(b.basis_element(0))),
    )?)?;
    let surject = AlgebraMap::verified(LinearMap::on_basis(
        b.clone(),
        c_alg.clone(),
        Growth::ONE,
        |i| {
            Ok(Some(if i == 1 {
                c_alg.basis_element(0)
            } else {
                Element::zero()
            }))
        },
    )?)?;
    let splitting = LinearMap::on_basis(c_alg.clone(), b.clone(), Growth::ONE, |_| {
        Ok(Some(b.basis_element(1)))
    })?;
    let j = LinearMap::on_basis(b.clone(), f_alg.clone(), Growth::ONE, |i| {
        Ok(Some(if i == 0 {
            f_alg.basis_element(0)
        } else {
            Element::zero()
        }))
    })?;
    let g = splitting.clone();
    SplitExtension::new(
        Extension::new(f_alg, b, c_alg, inject, surject, splitting)?,
        g,
        j,
    )
}

fn scalar_power_for(power: &Power) -> Result<Power> {
    let ground = crate::algebra::ground(power.base.ring, power.base.cap);
    if power.base.same_space(&ground) {
        Ok(power.clone())
    } else {
        PowerAlgebra::new(&ground, &power.complex)
    }
}

impl ExcisionKit {
    /// `pi . nu = id` on the mapping-path basis, within the window.
    pub fn check_pi_nu(&self) -> Result<()> {
        let w = self.nu.defined_window();
        for x in 0..self.mp.carrier.alg.dim() as u32 {
            if self.mp.carrier.alg.weight_of(x) > w {
                continue;
            }
            let img = self.nu.image(x).ok_or_else(|| Error::SectionFailure {
                level: self.mp.carrier.alg.weight_of(x),
                witness: "nu undefined inside its window".into(),
            })?;
            let back = self.pi.apply(img)?;
            if back != self.mp.carrier.alg.basis_element(x) {
                return Err(Error::SectionFailure {
                    level: self.mp.carrier.alg.weight_of(x),
                    witness: format!("pi(nu({})) is off", self.mp.carrier.alg.symbol(x)),
                });
            }
        }
        Ok(())
    }

    /// `partial . tau = id` within the window.
    pub fn check_partial_tau(&self) -> Result<()> {
        let w = self.tau.defined_window();
        for x in 0..self.mp.carrier.alg.dim() as u32 {
            if self.mp.carrier.alg.weight_of(x) > w {
                continue;
            }
            let img = self.tau.image(x).ok_or_else(|| Error::SectionFailure {
                level: self.mp.carrier.alg.weight_of(x),
                witness: "tau undefined inside its window".into(),
            })?;
            let back = self.partial.apply(img)?;
            if back != self.mp.carrier.alg.basis_element(x) {
                return Err(Error::SectionFailure {
                    level: self.mp.carrier.alg.weight_of(x),
                    witness: format!("partial(tau({})) is off", self.mp.carrier.alg.symbol(x)),
                });
            }
        }
        Ok(())
    }

    /// `alpha . J(iota) = xi_upsilon` exactly, within the window.
    pub fn check_alpha_iota(&self) -> Result<()> {
        let j_iota = crate::tensorial::j_on_map(&self.mp.iota, &self.univ_f_omega, &self.univ_pf)?;
        let left = AlgebraMap::compose(&self.alpha, &j_iota)?;
        let w = left.comparison_window(&self.xi_upsilon);
        left.agrees_with(&self.xi_upsilon, w)
            .map_err(|witness| Error::DiagramNotCommuting { witness })
    }

    /// `xi_tau . J(iota) = iota' . xi_upsilon` exactly, within the window.
    pub fn check_xi_tau_iota(&self) -> Result<()> {
        let j_iota = crate::tensorial::j_on_map(&self.mp.iota, &self.univ_f_omega, &self.univ_pf)?;
        let left = AlgebraMap::compose(&self.xi_tau, &j_iota)?;
        let right = AlgebraMap::compose(&self.iota_next, &self.xi_upsilon)?;
        let w = left.comparison_window(&right);
        left.agrees_with(&right, w)
            .map_err(|witness| Error::DiagramNotCommuting { witness })
    }

    /// The explicit chain certifying `iota' . alpha ~ xi_tau`, built from
    /// the comparison homotopy of the two rows.
    pub fn iota_alpha_chain(&self) -> Result<(HomotopyChain, AlgebraMap, AlgebraMap)> {
        // middle and bottom rows as a morphism of extensions
        let middle_row = Extension::new(
            self.alpha.target().clone(),
            self.b_based.sub.alg.clone(),
            self.mp.carrier.alg.clone(),
            self.mid_inject.clone(),
            self.pi.clone(),
            self.nu.clone(),
        )?;
        let bottom_row = Extension::new(
            self.bottom_kernel.alg.clone(),
            self.ptilde.alg.clone(),
            self.mp.carrier.alg.clone(),
            self.bottom_kernel.inclusion.clone(),
            self.partial.clone(),
            self.tau.clone(),
        )?;
        let morphism = ExtensionMorphism {
            src: &middle_row,
            dst: &bottom_row,
            on_kernel: self.iota_next.clone(),
            on_middle: self.theta.clone(),
            on_quotient: AlgebraMap::identity(&self.mp.carrier.alg),
        };
        let (kx, g) = homotopy_g(&self.univ_pf, &morphism, &self.nu, &self.tau)?;
        let left = AlgebraMap::compose(&self.iota_next, &self.alpha)?;
        let chain = HomotopyChain::single(ElementaryHomotopy::new(kx, g)?);
        Ok((chain, left, self.xi_tau.clone()))
    }

}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{ground, square_zero};
    use crate::funalg::loop_extension;
    use crate::ring::Ring;

    fn loop_split_extension() -> SplitExtension {
        loop_demo_extension(Ring::Q, 4).unwrap()
    }

    fn square_zero_split_extension() -> SplitExtension {
        square_zero_demo_extension(Ring::Q, 4).unwrap()
    }

    #[test]
    fn mapping_path_cartesian_projections() {
        let se = loop_split_extension();
        let mp = mapping_path(&se, 0, 0).unwrap();
        // f . pr_b = d_1 . pr_pc on every basis element by construction.
        let left = AlgebraMap::compose(&mp.f_power_map, &mp.pr_b).unwrap();
        let right = AlgebraMap::compose(&mp.d1_on_based, &mp.pr_pc).unwrap();
        let w = left.comparison_window(&right);
        assert!(left.agrees_with(&right, w).is_ok());
    }

    #[test]
    fn mapping_path_with_identity_base() {
        // f = id: the kernel is zero and iota is the zero inclusion.
        let k = ground(Ring::Q, 4);
        let zero = square_zero(Ring::Q, 4, 0);
        let inject = AlgebraMap::zero(&zero, &k).unwrap();
        let surject = AlgebraMap::identity(&k);
        let splitting = AlgebraMap::identity(&k).lin;
        let j = LinearMap::on_basis(k.clone(), zero.clone(), Growth::ONE, |_| {
            Ok(Some(Element::zero()))
        })
        .unwrap();
        let se = SplitExtension::new(
            Extension::new(zero, k.clone(), k.clone(), inject, surject, splitting.clone())
                .unwrap(),
            splitting,
            j,
        )
        .unwrap();
        let mp = mapping_path(&se, 0, 0).unwrap();
        assert_eq!(mp.f_omega.sub.alg.dim(), 0);
        assert_eq!(mp.iota.source().dim(), 0);
    }

    #[test]
    fn excision_kit_sections_for_the_loop_extension() {
        let se = loop_split_extension();
        let kit = excision_kit(&se, 0, 0).unwrap();
        kit.check_pi_nu().unwrap();
        kit.check_partial_tau().unwrap();
    }

    #[test]
    fn excision_kit_classifying_identities_for_square_zero() {
        let se = square_zero_split_extension();
        let kit = excision_kit(&se, 0, 0).unwrap();
        kit.check_pi_nu().unwrap();
        kit.check_partial_tau().unwrap();
        kit.check_alpha_iota().unwrap();
        kit.check_xi_tau_iota().unwrap();
        let (chain, left, right) = kit.iota_alpha_chain().unwrap();
        crate::homotopy::check_homotopic(&left, &right, &chain).unwrap();
    }

    #[test]
    fn swap_identity_on_the_double_path() {
        // P d_1 = d_1 . sw on the doubly based path object of C.
        let se = square_zero_split_extension();
        let kit = excision_kit(&se, 0, 0).unwrap();
        let cb = se.ext.quotient.clone();
        let n = 0u32;
        let m = 0u32;
        // sw swaps the two path coordinates of I^{n+2}
        let sw_map = cube_map(n + 2, n + 2, m, |bits| {
            let mut out = bits.to_vec();
            out.swap(n as usize, n as usize + 1);
            out
        })
        .unwrap();
        let ppc = kit.cc_based.power.clone();
        let sw = ppc.restriction(&sw_map, &ppc).unwrap();
        // inner end after swap = outer end
        let inner = cube_map(n + 1, n + 2, m, |bits| {
            let mut out = bits.to_vec();
            out.insert(n as usize, 0);
            out
        })
        .unwrap();
        let outer = cube_map(n + 1, n + 2, m, |bits| {
            let mut out = bits.to_vec();
            out.push(0);
            out
        })
        .unwrap();
        let c_based_power = kit.mp.c_based.power.clone();
        let r_inner = ppc.restriction(&inner, &c_based_power).unwrap();
        let r_outer = ppc.restriction(&outer, &c_based_power).unwrap();
        let lhs = AlgebraMap::compose(&r_outer, &sw).unwrap();
        let w = lhs.comparison_window(&r_inner);
        assert!(lhs.agrees_with(&r_inner, w).is_ok());
        let _ = cb;
    }
}
