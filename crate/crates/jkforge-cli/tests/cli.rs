//! End-to-end checks of the command-line driver: exit codes, report
//! formats, certificate verification and the determinism contract.

use std::io::Write;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_jkforge"))
}

fn temp_file(name: &str, content: &str) -> std::path::PathBuf {
    let path = std::env::temp_dir().join(format!(
        "jkforge-test-{name}-{}",
        std::process::id()
    ));
    let mut f = std::fs::File::create(&path).unwrap();
    f.write_all(content.as_bytes()).unwrap();
    path
}

#[test]
fn list_demos_names_all_suites() {
    let out = bin().arg("list-demos").output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for name in [
        "simplicial-identities",
        "classifying-maps",
        "exactness",
        "power-tensor",
        "subdivision",
        "hauptlemma",
        "excision-kit",
        "stabilization",
    ] {
        assert!(text.contains(name), "missing demo {name}");
    }
}

#[test]
fn passing_scenario_exits_zero() {
    let file = temp_file(
        "pass",
        "ring Q\ncap 4\nlet k = ground\nlet id = identity k\nassert hom id\n",
    );
    let out = bin().arg("run").arg(&file).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("PASS"));
}

#[test]
fn failing_assertion_exits_one_with_witness() {
    // the two vertex evaluations of k^{Delta^1} differ at t
    let file = temp_file(
        "fail",
        "ring Q\ncap 4\nlet k = ground\nlet d0 = face k 1 0\nlet d1 = face k 1 1\nassert equal d0 d1\n",
    );
    let out = bin().arg("run").arg(&file).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("FAIL"));
    assert!(text.contains("witness"));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("first failing assertion"));
}

#[test]
fn malformed_input_exits_two() {
    let file = temp_file("bad", "this is not a scenario\n");
    let out = bin().arg("run").arg(&file).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn byte_limit_exits_three() {
    let file = temp_file(
        "big",
        "ring Q\ncap 4\nlet k = ground\nlet m = matrix k 3\nassert rank m 1 9\n",
    );
    let out = bin()
        .arg("--limit-bytes")
        .arg("1")
        .arg("run")
        .arg(&file)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn ring_and_cap_overrides_apply() {
    let file = temp_file(
        "override",
        "ring Q\ncap 4\nlet k = ground\nlet e = loop_extension k\nlet o = kernel_of e\nassert rank o 5 3\n",
    );
    // at cap 5 the loop algebra gains one more basis vector
    let out = bin()
        .arg("--cap")
        .arg("5")
        .arg("--ring")
        .arg("Fp:5")
        .arg("run")
        .arg(&file)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn machine_report_is_tab_separated() {
    let out = bin()
        .arg("--report")
        .arg("machine")
        .arg("demo")
        .arg("exactness")
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("scenario\texactness"));
    assert!(text.lines().any(|l| l.starts_with("pass\t")));
    assert!(text.trim_end().ends_with("result\tpass"));
}

#[test]
fn verify_accepts_a_valid_certificate() {
    // A square-zero contraction certificate, produced by the library and
    // serialized through the document format.
    use jkforge::algebra::square_zero;
    use jkforge::homotopy::contract_squarezero;
    use jkforge::map::AlgebraMap;
    use jkforge::ring::Ring;
    use jkforge::serialize::{ChainRef, Document};

    let a = square_zero(Ring::Q, 4, 1);
    let h = contract_squarezero(&a).unwrap();
    let mut doc = Document::default();
    doc.algebras.push(a.clone());
    doc.algebras.push(h.carrier.alg.clone());
    doc.maps.push(("z".into(), AlgebraMap::zero(&a, &a).unwrap()));
    doc.maps.push(("id".into(), AlgebraMap::identity(&a)));
    doc.maps.push(("h0".into(), h.map.clone()));
    doc.chains.push((
        "c".into(),
        ChainRef {
            links: vec![("h0".into(), a.name.clone(), h.carrier.alg.cap)],
        },
    ));
    doc.checks
        .push(vec!["homotopic".into(), "z".into(), "id".into(), "c".into()]);
    let file = temp_file("cert", &doc.render());
    let out = bin().arg("verify").arg(&file).output().unwrap();
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );

    // tampering with the endpoints must fail the check
    let mut bad = Document::parse(&doc.render()).unwrap();
    bad.checks[0] = vec!["homotopic".into(), "id".into(), "id".into(), "c".into()];
    let file = temp_file("badcert", &bad.render());
    let out = bin().arg("verify").arg(&file).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn demos_pass_over_all_coefficient_rings() {
    // torsion-free and torsion coefficients, including characteristic 2
    for ring in ["Z", "Fp:5", "Fp:2"] {
        for demo in ["exactness", "classifying-maps", "excision-kit"] {
            let out = bin().arg("--ring").arg(ring).arg("demo").arg(demo).output().unwrap();
            assert_eq!(
                out.status.code(),
                Some(0),
                "{ring} {demo}: {}",
                String::from_utf8_lossy(&out.stdout)
            );
        }
    }
}
