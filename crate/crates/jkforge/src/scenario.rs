//! Declarative scenario files and their deterministic runner.
//!
//! A scenario is a short textual program: a coefficient ring and cap, a list
//! of named construction steps (each one operation applied to named
//! arguments), and a list of assertions. There is no general-purpose
//! scripting; every run of the same file produces the same report bytes.
//!
//! Reports carry one verdict per assertion plus the lossy-flag provenance of
//! every constructed algebra. Timing is deliberately not part of the
//! report (it goes to stderr in the command-line driver) so that reports
//! stay byte-identical across runs.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;
use std::time::{Duration, Instant};

use crate::algebra::{ground, square_zero, unitize, Alg, FilteredAlgebra};
use crate::complex::{
    boundary, cube, cube_boundary, enumerate_maps, horn, product, standard_simplex, subdivide_n,
    FiniteComplex,
};
use crate::error::{Error, Result};
use crate::funalg::{
    based_path_object, end_evaluation, loop_extension, loop_like_extension, omega_object,
    path_algebra, permute_cube, tilde_object, CubeObject, Power, PowerAlgebra,
};
use crate::homotopy::{
    check_homotopic, contract_graded, contract_simplex, contract_squarezero, cube_face_homotopy,
    phi, simplex_face_homotopy, ElementaryHomotopy, HomotopyChain,
};
use crate::limits::Limits;
use crate::map::{AlgebraMap, LinearMap, VerifyStatus};
use crate::matrices::{corner, matrix_extension, stabilize, MatrixAlgebra};
use crate::ring::Ring;
use crate::scenario::parse_util::split_ws;
use crate::subalg::Extension;
use crate::tensorial::{classifying_map, sigma_iterate, universal_extension};

#[derive(Clone)]
pub enum Value {
    Algebra(Alg),
    Map(AlgebraMap),
    Linear(Arc<LinearMap>),
    Ext(Arc<Extension>),
    Complex(FiniteComplex),
    Power(Power),
    Cube(Arc<CubeObject>),
    Homotopy(Arc<ElementaryHomotopy>),
    Chain(Arc<HomotopyChain>),
}

impl Value {
    fn kind(&self) -> &'static str {
        match self {
            Value::Algebra(_) => "algebra",
            Value::Map(_) => "map",
            Value::Linear(_) => "linear",
            Value::Ext(_) => "extension",
            Value::Complex(_) => "complex",
            Value::Power(_) => "power",
            Value::Cube(_) => "cube-object",
            Value::Homotopy(_) => "homotopy",
            Value::Chain(_) => "chain",
        }
    }

    /// The underlying algebra carrying filtration ranks, when there is one.
    fn as_ranked(&self) -> Option<&Alg> {
        match self {
            Value::Algebra(a) => Some(a),
            Value::Power(p) => Some(p.alg()),
            Value::Cube(c) => Some(&c.sub.alg),
            _ => None,
        }
    }
}

/// One parsed scenario.
pub struct Scenario {
    pub name: String,
    pub ring: Ring,
    pub cap: u32,
    pub commutative: bool,
    pub steps: Vec<(String, String)>,
    pub inline_algebras: Vec<(String, Vec<(String, u32)>, Vec<(String, String, String)>, bool)>,
    pub asserts: Vec<String>,
}

mod parse_util {
    pub fn split_ws(s: &str) -> Vec<&str> {
        s.split_whitespace().collect()
    }
}

impl Scenario {
    pub fn parse(name: &str, text: &str) -> Result<Scenario> {
        let mut ring = Ring::Q;
        let mut cap = 4u32;
        let mut commutative = false;
        let mut steps = Vec::new();
        let mut asserts = Vec::new();
        let mut inline_algebras = Vec::new();
        let mut lines = text.lines().enumerate().peekable();
        let perr = |line: usize, msg: String| Error::ParseError {
            line: line + 1,
            col: 0,
            msg,
        };
        while let Some((ln, raw)) = lines.next() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("ring ") {
                ring = crate::serialize::parse_ring(rest.trim())?;
            } else if let Some(rest) = line.strip_prefix("cap ") {
                cap = rest
                    .trim()
                    .parse()
                    .map_err(|_| perr(ln, "bad cap".into()))?;
            } else if line == "commutative" {
                commutative = true;
            } else if let Some(rest) = line.strip_prefix("algebra ") {
                let name = rest
                    .strip_suffix('{')
                    .map(|s| s.trim().to_string())
                    .ok_or_else(|| perr(ln, "expected `algebra <name> {`".into()))?;
                let mut basis = Vec::new();
                let mut mult = Vec::new();
                let mut alg_commutative = false;
                let mut section = String::new();
                for (ln2, raw2) in lines.by_ref() {
                    let l = raw2.split('#').next().unwrap_or("").trim();
                    if l.is_empty() {
                        continue;
                    }
                    match l {
                        "}" if section.is_empty() => break,
                        "}" => {
                            section.clear();
                            continue;
                        }
                        "basis {" => {
                            section = "basis".into();
                            continue;
                        }
                        "mult {" => {
                            section = "mult".into();
                            continue;
                        }
                        "commutative" => {
                            alg_commutative = true;
                            continue;
                        }
                        _ => {}
                    }
                    match section.as_str() {
                        "basis" => {
                            let (sym, w) = l
                                .rsplit_once(' ')
                                .ok_or_else(|| perr(ln2, "bad basis line".into()))?;
                            basis.push((
                                sym.to_string(),
                                w.parse().map_err(|_| perr(ln2, "bad weight".into()))?,
                            ));
                        }
                        "mult" => {
                            let (lhs, rhs) = l
                                .split_once(" = ")
                                .ok_or_else(|| perr(ln2, "bad mult line".into()))?;
                            let (a, b) = lhs
                                .split_once(' ')
                                .ok_or_else(|| perr(ln2, "bad mult pair".into()))?;
                            mult.push((a.to_string(), b.to_string(), rhs.to_string()));
                        }
                        _ => return Err(perr(ln2, format!("unexpected line {l:?}"))),
                    }
                }
                inline_algebras.push((name, basis, mult, alg_commutative));
                steps.push(("".into(), "".into())); // placeholder keeps order
                steps.pop();
            } else if let Some(rest) = line.strip_prefix("let ") {
                let (name, op) = rest
                    .split_once('=')
                    .ok_or_else(|| perr(ln, "expected `let <name> = <op> ...`".into()))?;
                steps.push((name.trim().to_string(), op.trim().to_string()));
            } else if let Some(rest) = line.strip_prefix("assert ") {
                asserts.push(rest.trim().to_string());
            } else {
                return Err(perr(ln, format!("unexpected line {line:?}")));
            }
        }
        Ok(Scenario {
            name: name.to_string(),
            ring,
            cap,
            commutative,
            steps,
            inline_algebras,
            asserts,
        })
    }
}

/// Per-assertion verdicts with failure witnesses, plus the lossy-flag
/// provenance of all algebras the scenario constructed.
pub struct Report {
    pub scenario: String,
    pub verdicts: Vec<(String, std::result::Result<(), String>)>,
    pub lossy: Vec<(String, bool)>,
    pub error: Option<String>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.verdicts.iter().all(|(_, v)| v.is_ok())
    }

    pub fn first_failure(&self) -> Option<&str> {
        self.verdicts
            .iter()
            .find(|(_, v)| v.is_err())
            .map(|(a, _)| a.as_str())
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "scenario: {}", self.scenario);
        for (i, (what, verdict)) in self.verdicts.iter().enumerate() {
            match verdict {
                Ok(()) => {
                    let _ = writeln!(out, "{:>3} PASS  {what}", i + 1);
                }
                Err(w) => {
                    let _ = writeln!(out, "{:>3} FAIL  {what}", i + 1);
                    let _ = writeln!(out, "          witness: {w}");
                }
            }
        }
        for (name, lossy) in &self.lossy {
            if *lossy {
                let _ = writeln!(out, "lossy: {name}");
            }
        }
        if let Some(e) = &self.error {
            let _ = writeln!(out, "error: {e}");
        }
        let pass = self.verdicts.iter().filter(|(_, v)| v.is_ok()).count();
        let _ = writeln!(
            out,
            "result: {} ({pass}/{})",
            if self.passed() { "PASS" } else { "FAIL" },
            self.verdicts.len()
        );
        out
    }

    pub fn render_machine(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "scenario\t{}", self.scenario);
        for (i, (what, verdict)) in self.verdicts.iter().enumerate() {
            match verdict {
                Ok(()) => {
                    let _ = writeln!(out, "pass\t{}\t{what}", i + 1);
                }
                Err(w) => {
                    let _ = writeln!(out, "fail\t{}\t{what}\t{w}", i + 1);
                }
            }
        }
        for (name, lossy) in &self.lossy {
            let _ = writeln!(out, "lossy\t{name}\t{lossy}");
        }
        if let Some(e) = &self.error {
            let _ = writeln!(out, "error\t{e}");
        }
        let _ = writeln!(out, "result\t{}", if self.passed() { "pass" } else { "fail" });
        out
    }
}

/// Execution environment with resource guards.
pub struct Runner {
    pub limits: Limits,
    pub step_timeout: Option<Duration>,
    pub byte_limit: Option<usize>,
}

impl Default for Runner {
    fn default() -> Self {
        let step_timeout = std::env::var("JKFORGE_LIMIT_SECONDS")
            .ok()
            .and_then(|s| s.parse::<u64>().ok())
            .map(Duration::from_secs);
        Runner {
            limits: Limits::default(),
            step_timeout,
            byte_limit: None,
        }
    }
}

struct Env {
    ring: Ring,
    cap: u32,
    values: BTreeMap<String, Value>,
    constructed: Vec<Alg>,
}

impl Env {
    fn get(&self, name: &str) -> Result<&Value> {
        self.values
            .get(name)
            .ok_or_else(|| Error::TypeMismatch(format!("unknown name {name}")))
    }

    fn algebra(&self, name: &str) -> Result<Alg> {
        match self.get(name)? {
            Value::Algebra(a) => Ok(a.clone()),
            Value::Power(p) => Ok(p.alg().clone()),
            Value::Cube(c) => Ok(c.sub.alg.clone()),
            v => Err(Error::TypeMismatch(format!(
                "{name} is a {}, expected an algebra",
                v.kind()
            ))),
        }
    }

    fn map(&self, name: &str) -> Result<AlgebraMap> {
        match self.get(name)? {
            Value::Map(m) => Ok(m.clone()),
            v => Err(Error::TypeMismatch(format!(
                "{name} is a {}, expected a map",
                v.kind()
            ))),
        }
    }

    fn complex(&self, name: &str) -> Result<FiniteComplex> {
        match self.get(name)? {
            Value::Complex(k) => Ok(k.clone()),
            v => Err(Error::TypeMismatch(format!(
                "{name} is a {}, expected a complex",
                v.kind()
            ))),
        }
    }

    fn ext(&self, name: &str) -> Result<Arc<Extension>> {
        match self.get(name)? {
            Value::Ext(e) => Ok(e.clone()),
            v => Err(Error::TypeMismatch(format!(
                "{name} is a {}, expected an extension",
                v.kind()
            ))),
        }
    }

    fn chain(&self, name: &str) -> Result<Arc<HomotopyChain>> {
        match self.get(name)? {
            Value::Chain(c) => Ok(c.clone()),
            Value::Homotopy(h) => Ok(Arc::new(HomotopyChain::single((**h).clone()))),
            v => Err(Error::TypeMismatch(format!(
                "{name} is a {}, expected a chain",
                v.kind()
            ))),
        }
    }

    fn record(&mut self, v: &Value) {
        if let Some(a) = v.as_ranked() {
            if !self.constructed.iter().any(|x| Arc::ptr_eq(x, a)) {
                self.constructed.push(a.clone());
            }
        }
    }
}

fn int(tok: &str) -> Result<u32> {
    tok.parse()
        .map_err(|_| Error::TypeMismatch(format!("expected an integer, got {tok:?}")))
}

impl Runner {
    pub fn run(&self, scenario: &Scenario) -> Report {
        let start = Instant::now();
        let mut env = Env {
            ring: scenario.ring,
            cap: scenario.cap,
            values: BTreeMap::new(),
            constructed: Vec::new(),
        };
        let mut verdicts = Vec::new();
        let mut error = None;
        'run: {
            for (name, basis, mult, alg_commutative) in &scenario.inline_algebras {
                let commutative = *alg_commutative || scenario.commutative;
                match build_inline(env.ring, env.cap, name, basis, mult, commutative) {
                    Ok(a) => {
                        let v = Value::Algebra(a);
                        env.record(&v);
                        env.values.insert(name.clone(), v);
                    }
                    Err(e) => {
                        error = Some(format!("algebra {name}: {e}"));
                        break 'run;
                    }
                }
            }
            for (name, op) in &scenario.steps {
                if let Some(t) = self.step_timeout {
                    if start.elapsed() > t {
                        error = Some(format!("step {name}: time limit exceeded"));
                        break 'run;
                    }
                }
                match self.eval(&mut env, op) {
                    Ok(v) => {
                        env.record(&v);
                        env.values.insert(name.clone(), v);
                    }
                    Err(Error::SizeLimit(s)) => {
                        error = Some(format!("step {name}: size limit: {s}"));
                        break 'run;
                    }
                    Err(e) => {
                        error = Some(format!("step {name}: {e}"));
                        break 'run;
                    }
                }
                if let Some(limit) = self.byte_limit {
                    let approx: usize = env
                        .constructed
                        .iter()
                        .map(|a| a.dim() * 128)
                        .sum();
                    if approx > limit {
                        error = Some(format!("step {name}: byte limit exceeded"));
                        break 'run;
                    }
                }
            }
            for a in &scenario.asserts {
                if let Some(t) = self.step_timeout {
                    if start.elapsed() > t {
                        error = Some(format!("assert {a}: time limit exceeded"));
                        break 'run;
                    }
                }
                let verdict = self.check(&env, a);
                verdicts.push((a.clone(), verdict));
            }
        }
        let lossy = env
            .constructed
            .iter()
            .map(|a| (a.name.clone(), a.lossy))
            .collect();
        Report {
            scenario: scenario.name.clone(),
            verdicts,
            lossy,
            error,
        }
    }

    fn eval(&self, env: &mut Env, op: &str) -> Result<Value> {
        let toks = split_ws(op);
        let (head, args) = toks
            .split_first()
            .ok_or_else(|| Error::TypeMismatch("empty operation".into()))?;
        let arity = |n: usize| -> Result<()> {
            if args.len() == n {
                Ok(())
            } else {
                Err(Error::TypeMismatch(format!(
                    "{head} expects {n} arguments, got {}",
                    args.len()
                )))
            }
        };
        Ok(match *head {
            "ground" => {
                arity(0)?;
                Value::Algebra(ground(env.ring, env.cap))
            }
            "square_zero" => {
                arity(1)?;
                Value::Algebra(square_zero(env.ring, env.cap, int(args[0])? as usize))
            }
            "free1" => {
                arity(0)?;
                Value::Algebra(crate::algebra::free_one_generator(env.ring, env.cap))
            }
            "unitize" => {
                arity(1)?;
                Value::Algebra(unitize(&env.algebra(args[0])?)?)
            }
            "matrix" => {
                arity(2)?;
                Value::Algebra(MatrixAlgebra::new(&env.algebra(args[0])?, int(args[1])?)?.alg)
            }
            "path_algebra" => {
                arity(1)?;
                Value::Algebra(path_algebra(&env.algebra(args[0])?)?.1.alg)
            }
            "loop_algebra" => {
                arity(1)?;
                Value::Algebra(crate::funalg::loop_algebra(&env.algebra(args[0])?)?)
            }
            "j_algebra" => {
                arity(1)?;
                Value::Algebra(universal_extension(&env.algebra(args[0])?)?.j.alg)
            }
            "tensor_algebra" => {
                arity(1)?;
                Value::Algebra(universal_extension(&env.algebra(args[0])?)?.tensor.alg)
            }
            "identity" => {
                arity(1)?;
                Value::Map(AlgebraMap::identity(&env.algebra(args[0])?))
            }
            "zero_map" => {
                arity(2)?;
                Value::Map(AlgebraMap::zero(
                    &env.algebra(args[0])?,
                    &env.algebra(args[1])?,
                )?)
            }
            "compose" => {
                arity(2)?;
                Value::Map(AlgebraMap::compose(&env.map(args[0])?, &env.map(args[1])?)?)
            }
            "face" | "degeneracy" => {
                arity(3)?;
                let a = env.algebra(args[0])?;
                let n = int(args[1])?;
                let i = int(args[2])?;
                let src = crate::funalg::SimplexAlgebra::new(&a, n);
                if *head == "face" {
                    if n == 0 {
                        return Err(Error::IndexOutOfRange("face on dimension 0".into()));
                    }
                    let tgt = crate::funalg::SimplexAlgebra::new(&a, n - 1);
                    Value::Map(src.face(i, &tgt)?)
                } else {
                    let tgt = crate::funalg::SimplexAlgebra::new(&a, n + 1);
                    Value::Map(src.degeneracy(i, &tgt)?)
                }
            }
            "pullback" => {
                arity(3)?;
                let a = env.algebra(args[0])?;
                let n = int(args[1])?;
                let alpha: Vec<u32> = args[2]
                    .split(',')
                    .map(int)
                    .collect::<Result<_>>()?;
                let m = alpha.len() as u32 - 1;
                let src = crate::funalg::SimplexAlgebra::new(&a, n);
                let tgt = crate::funalg::SimplexAlgebra::new(&a, m);
                Value::Map(src.pullback(&alpha, &tgt)?)
            }
            "simplex_algebra" => {
                arity(2)?;
                let a = env.algebra(args[0])?;
                Value::Algebra(crate::funalg::SimplexAlgebra::new(&a, int(args[1])?).alg)
            }
            "counit" => {
                arity(1)?;
                let u = universal_extension(&env.algebra(args[0])?)?;
                Value::Map(u.ext.surject.clone())
            }
            "universal_extension" => {
                arity(1)?;
                let u = universal_extension(&env.algebra(args[0])?)?;
                Value::Ext(Arc::new(u.ext))
            }
            "loop_extension" => {
                arity(1)?;
                let le = loop_extension(&env.algebra(args[0])?)?;
                Value::Ext(Arc::new(le.ext))
            }
            "loop_like" => {
                arity(3)?;
                let ll = loop_like_extension(&env.algebra(args[0])?, int(args[1])?, int(args[2])?)?;
                Value::Ext(Arc::new(ll.ext))
            }
            "matrix_extension" => {
                arity(2)?;
                Value::Ext(Arc::new(matrix_extension(
                    env.ext(args[0])?.as_ref(),
                    int(args[1])?,
                )?))
            }
            "classifying" => {
                arity(1)?;
                let e = env.ext(args[0])?;
                let u = universal_extension(&e.quotient)?;
                Value::Map(classifying_map(&u, &e)?)
            }
            "kernel_of" => {
                arity(1)?;
                Value::Algebra(env.ext(args[0])?.kernel_alg.clone())
            }
            "middle_of" => {
                arity(1)?;
                Value::Algebra(env.ext(args[0])?.middle.clone())
            }
            "quotient_of" => {
                arity(1)?;
                Value::Algebra(env.ext(args[0])?.quotient.clone())
            }
            "inject_of" => {
                arity(1)?;
                Value::Map(env.ext(args[0])?.inject.clone())
            }
            "surject_of" => {
                arity(1)?;
                Value::Map(env.ext(args[0])?.surject.clone())
            }
            "splitting_of" => {
                arity(1)?;
                Value::Linear(Arc::new(env.ext(args[0])?.splitting.clone()))
            }
            "corner" => {
                arity(3)?;
                let a = env.algebra(args[0])?;
                let small = MatrixAlgebra::new(&a, int(args[1])?)?;
                let large = MatrixAlgebra::new(&a, int(args[2])?)?;
                Value::Map(corner(&small, &large)?)
            }
            "stabilize" => {
                arity(2)?;
                let a = env.algebra(args[0])?;
                let m = MatrixAlgebra::new(&a, int(args[1])?)?;
                Value::Map(stabilize(&a, &m)?)
            }
            "simplex" => {
                arity(1)?;
                Value::Complex(standard_simplex(int(args[0])?))
            }
            "boundary" => {
                arity(1)?;
                Value::Complex(boundary(&env.complex(args[0])?)?)
            }
            "horn" => {
                arity(2)?;
                Value::Complex(horn(int(args[0])?, int(args[1])?)?)
            }
            "cube" => {
                arity(1)?;
                Value::Complex(cube(int(args[0])?))
            }
            "cube_boundary" => {
                arity(1)?;
                Value::Complex(cube_boundary(int(args[0])?))
            }
            "product" => {
                arity(2)?;
                Value::Complex(product(&env.complex(args[0])?, &env.complex(args[1])?))
            }
            "subdivide" => {
                arity(1)?;
                let k = env.complex(args[0])?;
                if k.simplex_count() > self.limits.max_simplices {
                    return Err(Error::SizeLimit("complex too large to subdivide".into()));
                }
                Value::Complex(subdivide_n(&k, 1))
            }
            "power" => {
                arity(2)?;
                Value::Power(PowerAlgebra::new(
                    &env.algebra(args[0])?,
                    &env.complex(args[1])?,
                )?)
            }
            "omega" => {
                arity(3)?;
                Value::Cube(Arc::new(omega_object(
                    &env.algebra(args[0])?,
                    int(args[1])?,
                    int(args[2])?,
                )?))
            }
            "omega_tilde" => {
                arity(3)?;
                Value::Cube(Arc::new(tilde_object(
                    &env.algebra(args[0])?,
                    int(args[1])?,
                    int(args[2])?,
                )?))
            }
            "based_paths" => {
                arity(3)?;
                Value::Cube(Arc::new(based_path_object(
                    &env.algebra(args[0])?,
                    int(args[1])?,
                    int(args[2])?,
                )?))
            }
            "d_end" => {
                arity(4)?;
                let b = env.algebra(args[0])?;
                let n = int(args[1])?;
                let m = int(args[2])?;
                let which = int(args[3])? as u8;
                let pn1 = PowerAlgebra::new(&b, &subdivide_n(&cube(n + 1), m))?;
                let pn = PowerAlgebra::new(&b, &subdivide_n(&cube(n), m))?;
                Value::Map(end_evaluation(&pn1, &pn, n, m, which)?)
            }
            "permute" => {
                arity(4)?;
                let b = env.algebra(args[0])?;
                let n = int(args[1])?;
                let m = int(args[2])?;
                let perm: Vec<u32> = args[3].split(',').map(int).collect::<Result<_>>()?;
                let p = PowerAlgebra::new(&b, &subdivide_n(&cube(n), m))?;
                Value::Map(permute_cube(&p, n, m, &perm)?)
            }
            "one_nk" => {
                arity(3)?;
                let it = sigma_iterate(&env.algebra(args[0])?, int(args[1])?, int(args[2])?)?;
                Value::Map(it.maps.last().expect("tower is nonempty").clone())
            }
            "phi" => {
                arity(4)?;
                Value::Homotopy(Arc::new(phi(
                    &env.algebra(args[0])?,
                    int(args[1])?,
                    int(args[2])?,
                    int(args[3])?,
                )?))
            }
            "constant_homotopy" => {
                arity(1)?;
                Value::Homotopy(Arc::new(ElementaryHomotopy::constant(&env.map(args[0])?)?))
            }
            "contract_squarezero" => {
                arity(1)?;
                Value::Homotopy(Arc::new(contract_squarezero(&env.algebra(args[0])?)?))
            }
            "contract_graded" => {
                arity(1)?;
                let a = env.algebra(args[0])?;
                let grading: Vec<u32> = (0..a.dim() as u32).map(|i| a.weight_of(i)).collect();
                Value::Homotopy(Arc::new(contract_graded(&a, &grading)?))
            }
            "contract_tensor" => {
                arity(1)?;
                let u = universal_extension(&env.algebra(args[0])?)?;
                let carrier = crate::polyext::PolyExt::carrier(&u.tensor.alg);
                let map = u.tensor.contraction(&carrier)?;
                Value::Homotopy(Arc::new(ElementaryHomotopy::new(carrier, map)?))
            }
            "contract_simplex" => {
                arity(2)?;
                Value::Chain(Arc::new(contract_simplex(
                    &env.algebra(args[0])?,
                    int(args[1])?,
                )?))
            }
            "simplex_homotopy" => {
                arity(6)?;
                let f = env.map(args[0])?;
                let b = env.algebra(args[1])?;
                Value::Chain(Arc::new(simplex_face_homotopy(
                    &f,
                    &b,
                    int(args[2])?,
                    int(args[3])?,
                    int(args[4])?,
                    int(args[5])?,
                )?))
            }
            "cube_homotopy" => {
                arity(4)?;
                let f = env.map(args[0])?;
                let b = env.algebra(args[1])?;
                let n = int(args[2])?;
                let m = int(args[3])?;
                let pn1 = PowerAlgebra::new(&b, &subdivide_n(&cube(n + 1), m))?;
                let pn = PowerAlgebra::new(&b, &subdivide_n(&cube(n), m))?;
                Value::Chain(Arc::new(cube_face_homotopy(&f, &pn1, &pn, n, m)?))
            }
            "reverse" => {
                arity(1)?;
                Value::Chain(Arc::new(env.chain(args[0])?.reverse()?))
            }
            "concat" => {
                arity(2)?;
                let a = (*env.chain(args[0])?).clone();
                let b = (*env.chain(args[1])?).clone();
                Value::Chain(Arc::new(a.concat(b)))
            }
            "power_identity" => {
                arity(1)?;
                match env.get(args[0])? {
                    Value::Power(p) => Value::Map(AlgebraMap::identity(p.alg())),
                    Value::Cube(c) => Value::Map(AlgebraMap::identity(c.power.alg())),
                    v => {
                        return Err(Error::TypeMismatch(format!(
                            "{} is a {}, expected a power",
                            args[0],
                            v.kind()
                        )))
                    }
                }
            }
            other => {
                return Err(Error::TypeMismatch(format!("unknown operation {other}")))
            }
        })
    }

    fn check(&self, env: &Env, assertion: &str) -> std::result::Result<(), String> {
        let toks = split_ws(assertion);
        let (head, args) = toks.split_first().ok_or("empty assertion")?;
        let fail = |m: String| -> std::result::Result<(), String> { Err(m) };
        let ok = Ok(());
        match *head {
            "hom" => {
                let f = env.map(args[0]).map_err(|e| e.to_string())?;
                match f.verify() {
                    VerifyStatus::Failed { witness } => fail(witness),
                    _ => ok,
                }
            }
            "equal" => {
                let f = env.map(args[0]).map_err(|e| e.to_string())?;
                let g = env.map(args[1]).map_err(|e| e.to_string())?;
                let w = match args.get(2) {
                    Some(t) => int(t).map_err(|e| e.to_string())?,
                    None => f.comparison_window(&g),
                };
                f.agrees_with(&g, w)
            }
            "zero" => {
                let f = env.map(args[0]).map_err(|e| e.to_string())?;
                let w = f.lin.defined_window();
                if f.is_zero_within(w) {
                    ok
                } else {
                    fail("map is not zero inside its window".into())
                }
            }
            "section" => {
                let f = env.map(args[0]).map_err(|e| e.to_string())?;
                let s = match env.get(args[1]).map_err(|e| e.to_string())? {
                    Value::Linear(l) => (**l).clone(),
                    Value::Map(m) => m.lin.clone(),
                    v => return fail(format!("{} is a {}", args[1], v.kind())),
                };
                let composed = LinearMap::compose(&f.lin, &s).map_err(|e| e.to_string())?;
                for i in 0..composed.source.dim() as u32 {
                    if let Some(img) = composed.image(i) {
                        if img != &composed.source.basis_element(i) {
                            return fail(format!(
                                "section law fails on {}",
                                composed.source.symbol(i)
                            ));
                        }
                    }
                }
                ok
            }
            "chain" => {
                let f = env.map(args[0]).map_err(|e| e.to_string())?;
                let g = env.map(args[1]).map_err(|e| e.to_string())?;
                let c = env.chain(args[2]).map_err(|e| e.to_string())?;
                check_homotopic(&f, &g, &c).map_err(|e| e.to_string())
            }
            "endpoints" => {
                let h = match env.get(args[0]).map_err(|e| e.to_string())? {
                    Value::Homotopy(h) => h.clone(),
                    v => return fail(format!("{} is a {}", args[0], v.kind())),
                };
                let f = env.map(args[1]).map_err(|e| e.to_string())?;
                let g = env.map(args[2]).map_err(|e| e.to_string())?;
                let (l, r) = h.endpoints().map_err(|e| e.to_string())?;
                l.agrees_with(&f, l.comparison_window(&f))?;
                r.agrees_with(&g, r.comparison_window(&g))
            }
            "rank" => {
                let v = env.get(args[0]).map_err(|e| e.to_string())?;
                let a = v
                    .as_ranked()
                    .ok_or_else(|| format!("{} carries no ranks", args[0]))?;
                let d = int(args[1]).map_err(|e| e.to_string())?;
                let expected = int(args[2]).map_err(|e| e.to_string())? as usize;
                let got = a.level_rank(d);
                if got == expected {
                    ok
                } else {
                    fail(format!("rank at level {d} is {got}, expected {expected}"))
                }
            }
            "ranks_match" => {
                let a = env.algebra(args[0]).map_err(|e| e.to_string())?;
                let b = env.algebra(args[1]).map_err(|e| e.to_string())?;
                for d in 1..=env.cap {
                    if a.level_rank(d) != b.level_rank(d) {
                        return fail(format!(
                            "ranks differ at level {d}: {} vs {}",
                            a.level_rank(d),
                            b.level_rank(d)
                        ));
                    }
                }
                ok
            }
            "ranks_differ" => {
                let a = env.algebra(args[0]).map_err(|e| e.to_string())?;
                let b = env.algebra(args[1]).map_err(|e| e.to_string())?;
                if (1..=env.cap).any(|d| a.level_rank(d) != b.level_rank(d)) {
                    ok
                } else {
                    fail("ranks agree on every level".into())
                }
            }
            "power_is_tensor" => {
                // levelwise rank of A^K equals the rank of A (x) k^K: the
                // convolution of the exact level dimensions, accumulated
                let p = match env.get(args[0]).map_err(|e| e.to_string())? {
                    Value::Power(p) => p.clone(),
                    v => return fail(format!("{} is a {}", args[0], v.kind())),
                };
                let scalar = PowerAlgebra::new(&ground(env.ring, env.cap), &p.complex)
                    .map_err(|e| e.to_string())?;
                let a = &p.base;
                for d in 1..=env.cap {
                    let mut tensor_rank = 0usize;
                    for i in 1..=d {
                        for j in 1..=(d + 1 - i) {
                            tensor_rank +=
                                a.level_indices(i).len() * scalar.alg().level_indices(j).len();
                        }
                    }
                    let got = p.alg().level_rank(d);
                    if got != tensor_rank {
                        return fail(format!(
                            "level {d}: power rank {got}, tensor rank {tensor_rank}"
                        ));
                    }
                }
                ok
            }
            "tops" => {
                let k = env.complex(args[0]).map_err(|e| e.to_string())?;
                let expected = int(args[1]).map_err(|e| e.to_string())? as usize;
                if k.top_count() == expected {
                    ok
                } else {
                    fail(format!("{} top simplices, expected {expected}", k.top_count()))
                }
            }
            "euler" => {
                let k = env.complex(args[0]).map_err(|e| e.to_string())?;
                let expected: i64 = args[1].parse().map_err(|_| "bad integer".to_string())?;
                if k.euler_characteristic() == expected {
                    ok
                } else {
                    fail(format!(
                        "Euler characteristic {}, expected {expected}",
                        k.euler_characteristic()
                    ))
                }
            }
            "vertices" => {
                let k = env.complex(args[0]).map_err(|e| e.to_string())?;
                let expected = int(args[1]).map_err(|e| e.to_string())? as usize;
                if k.vertex_count() == expected {
                    ok
                } else {
                    fail(format!("{} vertices, expected {expected}", k.vertex_count()))
                }
            }
            "map_count" => {
                let k = env.complex(args[0]).map_err(|e| e.to_string())?;
                let l = env.complex(args[1]).map_err(|e| e.to_string())?;
                let expected = int(args[2]).map_err(|e| e.to_string())? as usize;
                let got = enumerate_maps(&k, &l, &self.limits)
                    .map_err(|e| e.to_string())?
                    .len();
                if got == expected {
                    ok
                } else {
                    fail(format!("{got} simplicial maps, expected {expected}"))
                }
            }
            "lossy" => {
                let a = env.algebra(args[0]).map_err(|e| e.to_string())?;
                let expected: bool = args[1].parse().map_err(|_| "bad flag".to_string())?;
                if a.lossy == expected {
                    ok
                } else {
                    fail(format!("lossy flag is {}", a.lossy))
                }
            }
            "extension" => {
                let e = env.ext(args[0]).map_err(|e| e.to_string())?;
                e.validate().map_err(|e| e.to_string())
            }
            "image_vanishes" => {
                // the images of a map into a cube object vanish on the
                // object's boundary subcomplex (certified containment)
                let f = env.map(args[0]).map_err(|e| e.to_string())?;
                let c = match env.get(args[1]).map_err(|e| e.to_string())? {
                    Value::Cube(c) => c.clone(),
                    v => return fail(format!("{} is a {}", args[1], v.kind())),
                };
                if !f.target().same_space(&c.sub.alg) {
                    return fail("map does not land in the cube object".into());
                }
                let pl = PowerAlgebra::new(&c.power.base, &c.vanish)
                    .map_err(|e| e.to_string())?;
                let inc = crate::complex::ComplexMap::on_labels(&c.vanish, &c.power.complex, |l| {
                    l.clone()
                })
                .map_err(|e| e.to_string())?;
                let r = c
                    .power
                    .restriction(&inc, &pl)
                    .map_err(|e| e.to_string())?;
                for i in 0..f.source().dim() as u32 {
                    if let Some(img) = f.lin.image(i) {
                        let amb = c.sub.inclusion.apply(img).map_err(|e| e.to_string())?;
                        let restricted = r.apply(&amb).map_err(|e| e.to_string())?;
                        if !restricted.is_zero() {
                            return fail(format!(
                                "image of {} does not vanish on the boundary",
                                f.source().symbol(i)
                            ));
                        }
                    }
                }
                ok
            }
            "excision" => {
                // all three conclusions of the mapping-path comparison at
                // one stage: two exact identities and one certified chain
                let which = args[0];
                let n = int(args[1]).map_err(|e| e.to_string())?;
                let m = int(args[2]).map_err(|e| e.to_string())?;
                let se = match which {
                    "loop" => crate::excision::loop_demo_extension(env.ring, env.cap),
                    "squarezero" => crate::excision::square_zero_demo_extension(env.ring, env.cap),
                    _ => return fail(format!("unknown excision input {which}")),
                }
                .map_err(|e| e.to_string())?;
                let kit = crate::excision::excision_kit(&se, n, m).map_err(|e| e.to_string())?;
                kit.check_pi_nu().map_err(|e| e.to_string())?;
                kit.check_partial_tau().map_err(|e| e.to_string())?;
                kit.check_alpha_iota().map_err(|e| e.to_string())?;
                kit.check_xi_tau_iota().map_err(|e| e.to_string())?;
                let (chain, left, right) = kit.iota_alpha_chain().map_err(|e| e.to_string())?;
                check_homotopic(&left, &right, &chain).map_err(|e| e.to_string())
            }
            "correction" => {
                // endpoint equations of the straightened homotopy on a
                // square-zero source mapped into the point power
                let b = env.algebra(args[0]).map_err(|e| e.to_string())?;
                let a = env.algebra(args[1]).map_err(|e| e.to_string())?;
                let p0 = PowerAlgebra::new(&b, &cube(0)).map_err(|e| e.to_string())?;
                let p1 = PowerAlgebra::new(&b, &cube(1)).map_err(|e| e.to_string())?;
                let f = AlgebraMap::zero(&a, p0.alg()).map_err(|e| e.to_string())?;
                let h = ElementaryHomotopy::constant(&f).map_err(|e| e.to_string())?;
                let corr = crate::homotopy::correct_homotopy(&f, &f, &h, &p0, &p1, 0, 0)
                    .map_err(|e| e.to_string())?;
                let d0 = end_evaluation(&p1, &p0, 0, 0, 0).map_err(|e| e.to_string())?;
                let d1 = end_evaluation(&p1, &p0, 0, 0, 1).map_err(|e| e.to_string())?;
                let f0g = AlgebraMap::compose(&f, &corr.g).map_err(|e| e.to_string())?;
                for d in [d0, d1] {
                    let end = AlgebraMap::compose(&d, &corr.path).map_err(|e| e.to_string())?;
                    let w = end.comparison_window(&f0g);
                    end.agrees_with(&f0g, w)?;
                }
                ok
            }
            other => fail(format!("unknown assertion {other}")),
        }
    }
}

fn build_inline(
    ring: Ring,
    cap: u32,
    name: &str,
    basis: &[(String, u32)],
    mult: &[(String, String, String)],
    commutative: bool,
) -> Result<Alg> {
    let probe = FilteredAlgebra::new(name, ring, cap, basis.to_vec(), vec![], commutative)?;
    let mut table = Vec::new();
    for (a, b, rhs) in mult {
        let elem = crate::serialize::parse_scenario_element(&probe, rhs)?;
        let combo = elem
            .terms()
            .map(|(i, c)| (probe.symbol(i).to_string(), c.clone()))
            .collect();
        table.push(((a.clone(), b.clone()), combo));
    }
    FilteredAlgebra::new(name, ring, cap, basis.to_vec(), table, commutative)
}

#[cfg(test)]
mod tests {
    use super::*;

    const DEMO: &str = "\
ring Q
cap 4

algebra SZ {
  basis {
    m 1
  }
  mult {
  }
  commutative
}
let id = identity SZ
let h = contract_squarezero SZ
let z = zero_map SZ SZ
assert chain z id h
assert hom id
assert rank SZ 1 1
";

    #[test]
    fn scenario_runs_and_reports() {
        let sc = Scenario::parse("demo", DEMO).unwrap();
        let report = Runner::default().run(&sc);
        assert!(report.passed(), "{}", report.render_text());
        assert_eq!(report.verdicts.len(), 3);
    }

    #[test]
    fn reports_are_deterministic() {
        let sc = Scenario::parse("demo", DEMO).unwrap();
        let r1 = Runner::default().run(&sc).render_text();
        let r2 = Runner::default().run(&sc).render_text();
        assert_eq!(r1, r2);
    }

    #[test]
    fn failing_assertion_names_a_witness() {
        let text = "\
ring Q
cap 4
let k = ground
let d0 = face k 1 0
let d1 = face k 1 1
assert equal d0 d1
";
        let sc = Scenario::parse("faces", text).unwrap();
        let report = Runner::default().run(&sc);
        assert!(!report.passed());
        assert!(report.render_text().contains("witness"));
    }

    #[test]
    fn parse_error_is_reported() {
        assert!(Scenario::parse("bad", "frobnicate the ring\n").is_err());
    }
}
