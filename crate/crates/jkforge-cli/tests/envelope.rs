//! Pulling schedules at the far end of their guaranteed parameter
//! range, beyond what the acceptance suite exercises.

/// The large end of the guaranteed range; several seconds even in
/// release, so opt-in: `cargo test -p jkforge-cli --test envelope -- --ignored`.
#[test]
#[ignore]
fn simplex_schedule_once_subdivided_tetrahedron() {
    use jkforge::algebra::ground;
    use jkforge::complex::{standard_simplex, subdivide_n, ComplexMap, Label};
    use jkforge::funalg::PowerAlgebra;
    use jkforge::homotopy::{check_homotopic, simplex_face_homotopy};
    use jkforge::map::AlgebraMap;
    use jkforge::ring::Ring;
    let t0 = std::time::Instant::now();
    let k = ground(Ring::Q, 4);
    let sd3 = subdivide_n(&standard_simplex(3), 1);
    let sd2 = subdivide_n(&standard_simplex(2), 1);
    let pl = PowerAlgebra::new(&k, &sd3).unwrap();
    eprintln!("power sd D3 built: dim {} in {:?}", pl.alg().dim(), t0.elapsed());
    let pk = PowerAlgebra::new(&k, &sd2).unwrap();
    let f = AlgebraMap::identity(pl.alg());
    let chain = simplex_face_homotopy(&f, &k, 2, 1, 2, 3).unwrap();
    eprintln!("chain of {} links in {:?}", chain.links.len(), t0.elapsed());
    let face = |i: u32| {
        let alpha: Vec<u32> = (0..3).map(|w| if w < i { w } else { w + 1 }).collect();
        let delta = ComplexMap::on_labels(&sd2, &sd3, |l| {
            let Label::Tuple(members) = l else { panic!() };
            Label::Tuple(members.iter().map(|m| {
                let Label::Atom(w) = m else { panic!() };
                Label::Atom(alpha[*w as usize])
            }).collect())
        }).unwrap();
        pl.restriction(&delta, &pk).unwrap()
    };
    check_homotopic(&face(2), &face(3), &chain).unwrap();
    eprintln!("verified in {:?}", t0.elapsed());
}

#[test]
fn cube_schedule_once_subdivided_square() {
    use jkforge::algebra::ground;
    use jkforge::complex::{cube, subdivide_n};
    use jkforge::funalg::{end_evaluation, PowerAlgebra};
    use jkforge::homotopy::{check_homotopic, cube_face_homotopy};
    use jkforge::map::AlgebraMap;
    use jkforge::ring::Ring;
    let t0 = std::time::Instant::now();
    let k = ground(Ring::Q, 4);
    let p2 = PowerAlgebra::new(&k, &subdivide_n(&cube(2), 1)).unwrap();
    let p1 = PowerAlgebra::new(&k, &subdivide_n(&cube(1), 1)).unwrap();
    let f = AlgebraMap::identity(p2.alg());
    let chain = cube_face_homotopy(&f, &p2, &p1, 1, 1).unwrap();
    eprintln!("cube chain of {} links in {:?}", chain.links.len(), t0.elapsed());
    let d0 = end_evaluation(&p2, &p1, 1, 1, 0).unwrap();
    let d1 = end_evaluation(&p2, &p1, 1, 1, 1).unwrap();
    check_homotopic(&d0, &d1, &chain).unwrap();
    eprintln!("verified in {:?}", t0.elapsed());
}
