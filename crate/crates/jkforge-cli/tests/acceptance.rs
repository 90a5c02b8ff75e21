//! Acceptance suite: one test per criterion, each printing a verdict line.
//! All equalities are exact; the default setting is the rationals at cap 4.

use std::process::Command;

use jkforge::algebra::{ground, square_zero, Alg};
use jkforge::complex::{
    boundary, cube, product, standard_simplex, subdivide_n, ComplexMap, Label,
};
use jkforge::excision::{excision_kit, loop_demo_extension, square_zero_demo_extension};
use jkforge::funalg::{
    end_evaluation, loop_extension, omega_object, tilde_object, PowerAlgebra, SimplexAlgebra,
};
use jkforge::homotopy::{
    check_homotopic, correct_homotopy, cube_face_homotopy, phi, simplex_face_homotopy,
    ElementaryHomotopy,
};
use jkforge::map::{AlgebraMap, Growth, LinearMap};
use jkforge::matrices::{corner, stabilize, MatrixAlgebra};
use jkforge::ring::Ring;
use jkforge::tensorial::{
    classifying_map_for, homotopy_g, homotopy_h, sigma_iterate, universal_extension,
    ExtensionMorphism,
};

const CAP: u32 = 4;

fn verdict(criterion: u32, what: &str) {
    println!("[criterion {criterion}] PASS  {what}");
}

fn matrix_ground() -> Alg {
    MatrixAlgebra::new(&ground(Ring::Q, CAP), 2).unwrap().alg
}

/// Criterion 1: all simplicial identities for faces, degeneracies and
/// order-map pullbacks on `A^{Delta^n}`, `n <= 3`, over the ground algebra,
/// a square-zero algebra and a matrix algebra; exhaustive on the basis.
#[test]
fn criterion_1_simplicial_identities() {
    for a in [ground(Ring::Q, CAP), square_zero(Ring::Q, CAP, 2), matrix_ground()] {
        let simplex: Vec<SimplexAlgebra> =
            (0..=4).map(|n| SimplexAlgebra::new(&a, n)).collect();
        // d_i d_j = d_{j-1} d_i for i < j
        for n in 2..=3u32 {
            for j in 0..=n {
                for i in 0..j {
                    let left = AlgebraMap::compose(
                        &simplex[n as usize - 1].face(i, &simplex[n as usize - 2]).unwrap(),
                        &simplex[n as usize].face(j, &simplex[n as usize - 1]).unwrap(),
                    )
                    .unwrap();
                    let right = AlgebraMap::compose(
                        &simplex[n as usize - 1]
                            .face(j - 1, &simplex[n as usize - 2])
                            .unwrap(),
                        &simplex[n as usize].face(i, &simplex[n as usize - 1]).unwrap(),
                    )
                    .unwrap();
                    left.agrees_with(&right, CAP).unwrap();
                }
            }
        }
        // s_i s_j = s_{j+1} s_i for i <= j
        for n in 0..=2u32 {
            for j in 0..=n {
                for i in 0..=j {
                    let left = AlgebraMap::compose(
                        &simplex[n as usize + 1]
                            .degeneracy(i, &simplex[n as usize + 2])
                            .unwrap(),
                        &simplex[n as usize].degeneracy(j, &simplex[n as usize + 1]).unwrap(),
                    )
                    .unwrap();
                    let right = AlgebraMap::compose(
                        &simplex[n as usize + 1]
                            .degeneracy(j + 1, &simplex[n as usize + 2])
                            .unwrap(),
                        &simplex[n as usize].degeneracy(i, &simplex[n as usize + 1]).unwrap(),
                    )
                    .unwrap();
                    left.agrees_with(&right, CAP).unwrap();
                }
            }
        }
        // d_i s_j: below, at, and above the diagonal
        for n in 1..=2u32 {
            for j in 0..=n {
                for i in 0..=(n + 1) {
                    let left = AlgebraMap::compose(
                        &simplex[n as usize + 1].face(i, &simplex[n as usize]).unwrap(),
                        &simplex[n as usize].degeneracy(j, &simplex[n as usize + 1]).unwrap(),
                    )
                    .unwrap();
                    let right = if i < j {
                        AlgebraMap::compose(
                            &simplex[n as usize - 1]
                                .degeneracy(j - 1, &simplex[n as usize])
                                .unwrap(),
                            &simplex[n as usize].face(i, &simplex[n as usize - 1]).unwrap(),
                        )
                        .unwrap()
                    } else if i == j || i == j + 1 {
                        AlgebraMap::identity(&simplex[n as usize].alg)
                    } else {
                        AlgebraMap::compose(
                            &simplex[n as usize - 1].degeneracy(j, &simplex[n as usize]).unwrap(),
                            &simplex[n as usize]
                                .face(i - 1, &simplex[n as usize - 1])
                                .unwrap(),
                        )
                        .unwrap()
                    };
                    left.agrees_with(&right, CAP).unwrap();
                }
            }
        }
        // pullback functoriality on all composable order maps [p]->[q]->[r],
        // p, q, r <= 2
        let order_maps = |m: u32, n: u32| -> Vec<Vec<u32>> {
            let mut out: Vec<Vec<u32>> = vec![vec![]];
            for _ in 0..=m {
                let mut next = Vec::new();
                for prefix in &out {
                    let lo = prefix.last().copied().unwrap_or(0);
                    for v in lo..=n {
                        let mut p = prefix.clone();
                        p.push(v);
                        next.push(p);
                    }
                }
                out = next;
            }
            out
        };
        for p in 0..=2u32 {
            for q in 0..=2u32 {
                for r in 0..=2u32 {
                    for alpha in order_maps(p, q) {
                        for beta in order_maps(q, r) {
                            let composite: Vec<u32> =
                                alpha.iter().map(|&i| beta[i as usize]).collect();
                            let left = simplex[r as usize]
                                .pullback(&composite, &simplex[p as usize])
                                .unwrap();
                            let right = AlgebraMap::compose(
                                &simplex[q as usize]
                                    .pullback(&alpha, &simplex[p as usize])
                                    .unwrap(),
                                &simplex[r as usize]
                                    .pullback(&beta, &simplex[q as usize])
                                    .unwrap(),
                            )
                            .unwrap();
                            left.agrees_with(&right, CAP).unwrap();
                        }
                    }
                }
            }
        }
    }
    verdict(1, "simplicial identities, n <= 3, three coefficient algebras");
}

/// Criterion 2: evaluation section laws and the endpoint identities of the
/// two canonical homotopies, on the loop extension of the ground algebra
/// and on a square-zero extension.
#[test]
fn criterion_2_endpoints() {
    let k = ground(Ring::Q, CAP);
    let le = loop_extension(&k).unwrap();
    // section laws for the two evaluations
    let inc = le.poly.include();
    for which in [0u8, 1u8] {
        let ev = le.poly.eval_map(which);
        let composed = AlgebraMap::compose(&ev, &inc).unwrap();
        composed.agrees_with(&AlgebraMap::identity(&k), CAP).unwrap();
    }
    // the loop splitting is a section of the end evaluation
    le.ext.validate().unwrap();

    let univ = universal_extension(&k).unwrap();
    let beta = le.ext.splitting.clone();
    let gamma = LinearMap::on_basis(k.clone(), le.path.alg.clone(), Growth::new(1, 2), |i| {
        let x2 = le.poly.times_x(&k.basis_element(i), 2).unwrap();
        Ok(le.path.express(&x2))
    })
    .unwrap();
    let xi_beta = classifying_map_for(&univ, &le.ext, &beta).unwrap();
    let xi_gamma = classifying_map_for(&univ, &le.ext, &gamma).unwrap();
    let (kx, h) = homotopy_h(&univ, &le.ext, &beta, &gamma).unwrap();
    let left = AlgebraMap::compose(&kx.eval_map(0), &h).unwrap();
    let right = AlgebraMap::compose(&kx.eval_map(1), &h).unwrap();
    left.agrees_with(&xi_beta, left.comparison_window(&xi_beta))
        .unwrap();
    right
        .agrees_with(&xi_gamma, right.comparison_window(&xi_gamma))
        .unwrap();

    // the comparison homotopy between two sections through a morphism of
    // extensions, with the identity morphism: endpoints are the two
    // classifying maps
    let morphism = ExtensionMorphism {
        src: &le.ext,
        dst: &le.ext,
        on_kernel: AlgebraMap::identity(&le.looped.alg),
        on_middle: AlgebraMap::identity(&le.path.alg),
        on_quotient: AlgebraMap::identity(&k),
    };
    let (gx, g) = homotopy_g(&univ, &morphism, &beta, &gamma).unwrap();
    let gl = AlgebraMap::compose(&gx.eval_map(0), &g).unwrap();
    let gr = AlgebraMap::compose(&gx.eval_map(1), &g).unwrap();
    gl.agrees_with(&xi_beta, gl.comparison_window(&xi_beta))
        .unwrap();
    gr.agrees_with(&xi_gamma, gr.comparison_window(&xi_gamma))
        .unwrap();

    // square-zero extension: constant-in-x when the section pair commutes
    // with the morphism
    let se = square_zero_demo_extension(Ring::Q, CAP).unwrap();
    let univ_c = universal_extension(&se.ext.quotient).unwrap();
    let sz_morphism = ExtensionMorphism {
        src: &se.ext,
        dst: &se.ext,
        on_kernel: AlgebraMap::identity(&se.ext.kernel_alg),
        on_middle: AlgebraMap::identity(&se.ext.middle),
        on_quotient: AlgebraMap::identity(&se.ext.quotient),
    };
    let (cx, cg) = homotopy_g(
        &univ_c,
        &sz_morphism,
        &se.ext.splitting,
        &se.ext.splitting,
    )
    .unwrap();
    for i in 0..univ_c.j.alg.dim() as u32 {
        if let Some(img) = cg.lin.image(i) {
            assert_eq!(cx.max_x_degree(img), 0, "constant in x");
        }
    }
    let (hx, hh) = homotopy_h(&univ_c, &se.ext, &se.ext.splitting, &se.ext.splitting).unwrap();
    for i in 0..univ_c.j.alg.dim() as u32 {
        if let Some(img) = hh.lin.image(i) {
            assert_eq!(hx.max_x_degree(img), 0, "constant in x");
        }
    }
    verdict(2, "evaluation sections; H and G endpoint identities; constancy");
}

/// Independent dense row reduction over the rationals, used only as the
/// oracle for criterion 3 (fraction-free Bareiss elimination on integers).
fn dense_rank(mut m: Vec<Vec<i64>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    let mut prev = 1i64;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, p);
        for r in 0..rows {
            if r != rank {
                for cc in 0..cols {
                    if cc != c {
                        m[r][cc] = (m[r][cc] * m[rank][c] - m[r][c] * m[rank][cc]) / prev;
                    }
                }
                m[r][c] = 0;
            }
        }
        prev = m[rank][c];
        rank += 1;
    }
    rank
}

/// Criterion 3: levelwise rank identities for the loop extension and the
/// universal extension, and the kernel rank of the counit against an
/// independent dense oracle.
#[test]
fn criterion_3_exactness_ranks() {
    // Oracle first: words of the ground generator of length 1..=3 all
    // multiply out to the generator, so the counit matrix at weight <= 3 is
    // the 1 x 3 all-ones matrix; its kernel has rank 3 - rank([1 1 1]) = 2.
    let eta_matrix = vec![vec![1i64, 1, 1]];
    let oracle_rank = 3 - dense_rank(eta_matrix);
    assert_eq!(oracle_rank, 2);

    let k = ground(Ring::Q, CAP);
    let univ = universal_extension(&k).unwrap();
    assert_eq!(univ.j.alg.level_rank(3), oracle_rank);

    for a in [ground(Ring::Q, CAP), square_zero(Ring::Q, CAP, 2)] {
        let le = loop_extension(&a).unwrap();
        for d in 1..=CAP {
            let m = le.ext.surject.lin.level_matrix(d).unwrap();
            let image = jkforge::linalg::rank(&m);
            let kernel = jkforge::linalg::kernel_basis(&m).len();
            assert_eq!(kernel, le.looped.alg.level_rank(d));
            assert_eq!(kernel + image, le.path.alg.level_rank(d), "loop level {d}");
        }
        let u = universal_extension(&a).unwrap();
        for d in 1..=CAP {
            let m = u.ext.surject.lin.level_matrix(d).unwrap();
            let image = jkforge::linalg::rank(&m);
            let kernel = jkforge::linalg::kernel_basis(&m).len();
            assert_eq!(kernel, u.j.alg.level_rank(d));
            assert_eq!(kernel + image, u.tensor.alg.level_rank(d), "tensor level {d}");
        }
    }
    verdict(3, "rank kernel + rank image = rank middle, levelwise; J-rank oracle");
}

/// Criterion 4: the power over a finite complex has the levelwise ranks of
/// the tensor with the scalar power, and the square/triangle rank mismatch
/// witnesses the failure of the exponential law.
#[test]
fn criterion_4_power_tensor() {
    let complexes = vec![
        standard_simplex(2),
        boundary(&standard_simplex(2)).unwrap(),
        cube(2),
        subdivide_n(&standard_simplex(1), 1),
    ];
    let scalar = ground(Ring::Q, CAP);
    for complex in &complexes {
        let kp = PowerAlgebra::new(&scalar, complex).unwrap();
        for a in [ground(Ring::Q, CAP), square_zero(Ring::Q, CAP, 2), matrix_ground()] {
            let p = PowerAlgebra::new(&a, complex).unwrap();
            for d in 1..=CAP {
                let mut tensor_rank = 0usize;
                for i in 1..=d {
                    for j in 1..=(d + 1 - i) {
                        tensor_rank +=
                            a.level_indices(i).len() * kp.alg().level_indices(j).len();
                    }
                }
                assert_eq!(p.alg().level_rank(d), tensor_rank, "level {d}");
            }
        }
    }
    // exponential-law failure: piecewise functions on the square exceed the
    // polynomial functions on the triangle (oracle: d^2 vs d(d+1)/2)
    let sq = PowerAlgebra::new(&scalar, &cube(2)).unwrap();
    let tri = PowerAlgebra::new(&scalar, &standard_simplex(2)).unwrap();
    let sq_ranks: Vec<usize> = (1..=CAP).map(|d| sq.alg().level_rank(d)).collect();
    let tri_ranks: Vec<usize> = (1..=CAP).map(|d| tri.alg().level_rank(d)).collect();
    assert_eq!(sq_ranks, vec![1, 4, 9, 16]);
    assert_eq!(tri_ranks, vec![1, 3, 6, 10]);
    assert!((1..=CAP).any(|d| sq.alg().level_rank(d) != tri.alg().level_rank(d)));
    verdict(4, "power = tensor levelwise; exponential-law failure witnessed");
}

/// Criterion 5: subdivision top counts, product top counts and last-vertex
/// functoriality.
#[test]
fn criterion_5_subdivision() {
    for n in 0..=3u32 {
        let factorial: usize = (1..=(n as usize + 1)).product();
        let mut complex = standard_simplex(n);
        for m in 1..=2u32 {
            complex = subdivide_n(&complex, 1);
            assert_eq!(complex.top_count(), factorial.pow(m), "sd^{m} Delta^{n}");
        }
    }
    let binom = |n: usize, k: usize| -> usize {
        (1..=k).fold(1, |acc, i| acc * (n + 1 - i) / i)
    };
    for p in 1..=3u32 {
        for q in 1..=3u32 {
            if p + q > 4 {
                continue;
            }
            let prod = product(&standard_simplex(p), &standard_simplex(q));
            assert_eq!(
                prod.top_count(),
                binom((p + q) as usize, q as usize),
                "Delta^{p} x Delta^{q}"
            );
        }
    }
    // Euler characteristic is preserved, n <= 3
    for k in [
        standard_simplex(1),
        standard_simplex(2),
        standard_simplex(3),
        boundary(&standard_simplex(3)).unwrap(),
        cube(2),
    ] {
        assert_eq!(subdivide_n(&k, 1).euler_characteristic(), k.euler_characteristic());
    }
    // last vertex is natural on every simplicial map between simplices of
    // dimension <= 2
    let limits = jkforge::limits::Limits::default();
    let complexes: Vec<_> = (0..=2).map(standard_simplex).collect();
    for src in &complexes {
        for tgt in &complexes {
            for f in jkforge::complex::enumerate_maps(src, tgt, &limits).unwrap() {
                let lv_src = jkforge::complex::last_vertex(src);
                let lv_tgt = jkforge::complex::last_vertex(tgt);
                let left = ComplexMap::compose(&f, &lv_src).unwrap();
                let right = ComplexMap::compose(&lv_tgt, &f.subdivide().unwrap()).unwrap();
                assert_eq!(left, right);
            }
        }
    }
    verdict(5, "top counts ((n+1)!)^m and binomials; last-vertex naturality");
}

/// Criterion 6: the interpolation endpoint law, the pulling schedules on
/// subdivided simplices and cubes (with boundary-zero preservation), and
/// the straightened homotopy with exact ends.
#[test]
fn criterion_6_hauptlemma() {
    let k = ground(Ring::Q, CAP);
    // phi endpoint law, n <= 2, all i < j
    for n in 0..=2u32 {
        let src = SimplexAlgebra::new(&k, n + 1);
        let tgt = SimplexAlgebra::new(&k, n);
        for j in 1..=(n + 1) {
            for i in 0..j {
                let h = phi(&k, n, i, j).unwrap();
                let (l, r) = h.endpoints().unwrap();
                l.agrees_with(&src.face(i, &tgt).unwrap(), CAP).unwrap();
                r.agrees_with(&src.face(j, &tgt).unwrap(), CAP).unwrap();
            }
        }
    }
    // simplex schedules at m <= 1, n <= 1, including the subdivided
    // triangle with its 4-link chain
    for (i, j) in [(0u32, 1u32), (0, 2), (1, 2)] {
        let d2 = SimplexAlgebra::new(&k, 2);
        let d1 = SimplexAlgebra::new(&k, 1);
        let f = AlgebraMap::identity(&d2.alg);
        let chain = simplex_face_homotopy(&f, &k, 1, 0, i, j).unwrap();
        check_homotopic(&d2.face(i, &d1).unwrap(), &d2.face(j, &d1).unwrap(), &chain).unwrap();
    }
    {
        let sd2 = subdivide_n(&standard_simplex(2), 1);
        let sd1 = subdivide_n(&standard_simplex(1), 1);
        let pl = PowerAlgebra::new(&k, &sd2).unwrap();
        let pk = PowerAlgebra::new(&k, &sd1).unwrap();
        let f = AlgebraMap::identity(pl.alg());
        let chain = simplex_face_homotopy(&f, &k, 1, 1, 1, 2).unwrap();
        assert_eq!(chain.links.len(), 4, "the subdivided triangle takes 4 links");
        let face = |i: u32| {
            let alpha: Vec<u32> = (0..2).map(|w| if w < i { w } else { w + 1 }).collect();
            let delta = ComplexMap::on_labels(&sd1, &sd2, |l| {
                let Label::Tuple(members) = l else { panic!() };
                Label::Tuple(
                    members
                        .iter()
                        .map(|m| {
                            let Label::Atom(w) = m else { panic!() };
                            Label::Atom(alpha[*w as usize])
                        })
                        .collect(),
                )
            })
            .unwrap();
            pl.restriction(&delta, &pk).unwrap()
        };
        check_homotopic(&face(1), &face(2), &chain).unwrap();
    }
    // cube schedules at (m, n) in {(0,0), (0,1), (0,2), (1,0)}
    for (m, n) in [(0u32, 0u32), (0, 1), (0, 2), (1, 0)] {
        let pn1 = PowerAlgebra::new(&k, &subdivide_n(&cube(n + 1), m)).unwrap();
        let pn = PowerAlgebra::new(&k, &subdivide_n(&cube(n), m)).unwrap();
        let f = AlgebraMap::identity(pn1.alg());
        let chain = cube_face_homotopy(&f, &pn1, &pn, n, m).unwrap();
        if m == 0 {
            assert_eq!(chain.links.len(), 1 << n);
        }
        let d0 = end_evaluation(&pn1, &pn, n, m, 0).unwrap();
        let d1 = end_evaluation(&pn1, &pn, n, m, 1).unwrap();
        check_homotopic(&d0, &d1, &chain).unwrap();
    }
    // boundary-zero preservation: a map vanishing on the boundary strip
    // gives links vanishing on the lower boundary
    {
        let tilde = tilde_object(&k, 1, 0).unwrap();
        let f = tilde.sub.inclusion.clone();
        let p1 = PowerAlgebra::new(&k, &cube(1)).unwrap();
        let chain = cube_face_homotopy(&f, &tilde.power, &p1, 1, 0).unwrap();
        let bd = jkforge::complex::cube_boundary(1);
        let pbd = PowerAlgebra::new(&k, &bd).unwrap();
        let inc = ComplexMap::on_labels(&bd, &p1.complex, |l| l.clone()).unwrap();
        let r = p1.restriction(&inc, &pbd).unwrap();
        for link in &chain.links {
            for i in 0..link.map.source().dim() as u32 {
                if let Some(img) = link.map.lin.image(i) {
                    for e in 0..=link.carrier.max_x_degree(img) {
                        let coeff = link.carrier.coefficient(img, e);
                        assert!(r.apply(&coeff).unwrap().is_zero());
                    }
                }
            }
        }
    }
    // the straightened homotopy has exact endpoint equations on a
    // nontrivial input: a square-zero source mapping isomorphically onto
    // the point power, against the zero map
    {
        let a = square_zero(Ring::Q, CAP, 2);
        let p0 = PowerAlgebra::new(&a, &cube(0)).unwrap();
        let p1 = PowerAlgebra::new(&a, &cube(1)).unwrap();
        let iso = {
            let lin = LinearMap::on_basis(a.clone(), p0.alg().clone(), Growth::ONE, |i| {
                let parts = vec![a.basis_element(i)];
                Ok(Some(p0.from_components(&parts).unwrap()))
            })
            .unwrap();
            AlgebraMap::verified(lin).unwrap()
        };
        let zero = AlgebraMap::zero(&a, p0.alg()).unwrap();
        // h: a -> iso(a) x connects 0 to iso (a homomorphism: square-zero)
        let carrier = jkforge::polyext::PolyExt::carrier(p0.alg());
        let h = {
            let lin = LinearMap::on_basis(
                a.clone(),
                carrier.alg.clone(),
                Growth::new(1, 1),
                |i| {
                    let img = iso.apply(&a.basis_element(i)).unwrap();
                    Ok(Some(carrier.times_x(&img, 1).unwrap()))
                },
            )
            .unwrap();
            ElementaryHomotopy::new(carrier.clone(), AlgebraMap::verified(lin).unwrap()).unwrap()
        };
        let corr = correct_homotopy(&zero, &iso, &h, &p0, &p1, 0, 0).unwrap();
        assert!(corr.corrected_source.dim() > 0, "correction covers something");
        let d0 = end_evaluation(&p1, &p0, 0, 0, 0).unwrap();
        let d1 = end_evaluation(&p1, &p0, 0, 0, 1).unwrap();
        let left = AlgebraMap::compose(&d0, &corr.path).unwrap();
        let right = AlgebraMap::compose(&d1, &corr.path).unwrap();
        let f0g = AlgebraMap::compose(&zero, &corr.g).unwrap();
        let f1g = AlgebraMap::compose(&iso, &corr.g).unwrap();
        left.agrees_with(&f0g, left.comparison_window(&f0g)).unwrap();
        right.agrees_with(&f1g, right.comparison_window(&f1g)).unwrap();
    }
    verdict(6, "phi endpoints; pulling schedules; boundary-zero; correction");
}

/// Criterion 7: the excision-kit identities at stage (0, 0) on two
/// extensions: both section laws, both exact classifying identities and
/// the certified comparison chain.
#[test]
fn criterion_7_excision_kit() {
    for (name, se) in [
        ("loop", loop_demo_extension(Ring::Q, CAP).unwrap()),
        ("square-zero", square_zero_demo_extension(Ring::Q, CAP).unwrap()),
    ] {
        let kit = excision_kit(&se, 0, 0).unwrap();
        kit.check_pi_nu().unwrap_or_else(|e| panic!("{name}: {e}"));
        kit.check_partial_tau().unwrap_or_else(|e| panic!("{name}: {e}"));
        kit.check_alpha_iota().unwrap_or_else(|e| panic!("{name}: {e}"));
        kit.check_xi_tau_iota().unwrap_or_else(|e| panic!("{name}: {e}"));
        let (chain, left, right) = kit.iota_alpha_chain().unwrap();
        check_homotopic(&left, &right, &chain).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
    verdict(7, "pi nu = 1, partial tau = 1, two classifying identities, chain");
}

/// Criterion 8: matrix-unit relations, corner transitivity, bonding maps of
/// the Morita and stable towers, and the classifying iteration with
/// certified vanishing.
#[test]
fn criterion_8_stabilization() {
    let k = ground(Ring::Q, CAP);
    let sz = square_zero(Ring::Q, CAP, 2);
    // matrix units, exhaustive
    for base in [&k, &sz] {
        let m2 = MatrixAlgebra::new(base, 2).unwrap();
        for p in 0..2 {
            for q in 0..2 {
                for r in 0..2 {
                    for s in 0..2 {
                        for b1 in 0..base.dim() as u32 {
                            for b2 in 0..base.dim() as u32 {
                                let x = m2.alg.basis_element(m2.unit(p, q, b1).unwrap());
                                let y = m2.alg.basis_element(m2.unit(r, s, b2).unwrap());
                                let (prod, exact) = m2.alg.mul(&x, &y);
                                assert!(exact);
                                let (base_prod, _) =
                                    base.mul(&base.basis_element(b1), &base.basis_element(b2));
                                if q != r || base_prod.is_zero() {
                                    assert!(prod.is_zero());
                                } else {
                                    assert!(!prod.is_zero());
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    // corner transitivity up to 3 and Morita bonding homomorphy
    let towers = jkforge::matrices::morita_tower(&sz, 3).unwrap();
    for bond in &towers.bondings {
        assert!(matches!(
            bond.verified,
            jkforge::map::VerifyStatus::Verified { .. }
        ));
    }
    let m1 = MatrixAlgebra::new(&sz, 1).unwrap();
    let m2 = MatrixAlgebra::new(&sz, 2).unwrap();
    let m3 = MatrixAlgebra::new(&sz, 3).unwrap();
    let via = AlgebraMap::compose(&corner(&m2, &m3).unwrap(), &corner(&m1, &m2).unwrap()).unwrap();
    via.agrees_with(&corner(&m1, &m3).unwrap(), CAP).unwrap();
    // stable stage r <= 1
    let stable = jkforge::matrices::stable_tower(&sz, 1, 2).unwrap();
    for bond in &stable.bondings {
        assert!(matches!(
            bond.verified,
            jkforge::map::VerifyStatus::Verified { .. }
        ));
    }
    let st = stabilize(&sz, &m2).unwrap();
    assert!(matches!(st.verified, jkforge::map::VerifyStatus::Verified { .. }));
    // the classifying iteration for n <= 2 with certified vanishing
    for n in 1..=2u32 {
        let it = sigma_iterate(&k, n, 0).unwrap();
        let map = it.maps.last().unwrap();
        let obj = omega_object(&k, n, 0).unwrap();
        assert!(map.target().same_space(&obj.sub.alg));
        let pl = PowerAlgebra::new(&k, &obj.vanish).unwrap();
        let inc = ComplexMap::on_labels(&obj.vanish, &obj.power.complex, |l| l.clone()).unwrap();
        let restrict = obj.power.restriction(&inc, &pl).unwrap();
        for i in 0..map.source().dim() as u32 {
            if let Some(img) = map.lin.image(i) {
                let amb = obj.sub.inclusion.apply(img).unwrap();
                assert!(restrict.apply(&amb).unwrap().is_zero());
            }
        }
    }
    // the first iterate hits the loop class nontrivially
    let it = sigma_iterate(&k, 1, 0).unwrap();
    let one1 = &it.maps[1];
    assert!(!one1
        .apply(&one1.source().basis_element(0))
        .unwrap()
        .is_zero());
    verdict(8, "matrix units; corners; bonding maps; classifying iteration");
}

/// Criterion 9: every demo run twice produces byte-identical reports.
#[test]
fn criterion_9_determinism() {
    let demos = [
        "simplicial-identities",
        "classifying-maps",
        "exactness",
        "power-tensor",
        "subdivision",
        "hauptlemma",
        "excision-kit",
        "stabilization",
    ];
    for demo in demos {
        let run = || {
            Command::new(env!("CARGO_BIN_EXE_jkforge"))
                .arg("demo")
                .arg(demo)
                .output()
                .unwrap()
        };
        let first = run();
        let second = run();
        assert!(
            first.status.success(),
            "{demo}: {}",
            String::from_utf8_lossy(&first.stdout)
        );
        assert_eq!(first.stdout, second.stdout, "{demo} reports differ");
    }
    verdict(9, "all demos byte-identical across runs");
}
