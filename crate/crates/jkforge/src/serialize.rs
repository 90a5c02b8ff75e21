//! Canonical textual serialization with deterministic key order.
//!
//! Documents hold named algebras, maps, extensions and homotopy chains.
//! Rendering is stable: basis symbols appear in their canonical order,
//! table entries sorted, no timestamps or machine-dependent content, so a
//! document round-trips byte-for-byte through parse-then-render.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::algebra::{Alg, Element, FilteredAlgebra};
use crate::complex::{FiniteComplex, Label};
use crate::error::{Error, Result};
use crate::homotopy::{ElementaryHomotopy, HomotopyChain};
use crate::map::{AlgebraMap, Growth, LinearMap, VerifyStatus};
use crate::polyext::PolyExt;
use crate::ring::{Ring, Scalar};
use crate::subalg::Extension;

pub fn render_ring(r: Ring) -> String {
    r.to_string()
}

pub fn parse_ring(s: &str) -> Result<Ring> {
    match s {
        "Z" => Ok(Ring::Z),
        "Q" => Ok(Ring::Q),
        _ => {
            if let Some(p) = s.strip_prefix("Fp:") {
                let p: u64 = p.parse().map_err(|_| parse_err(0, "bad prime"))?;
                let ring = Ring::Fp(p);
                ring.validate()?;
                Ok(ring)
            } else {
                Err(parse_err(0, &format!("unknown ring {s}")))
            }
        }
    }
}

fn parse_err(line: usize, msg: &str) -> Error {
    Error::ParseError {
        line,
        col: 0,
        msg: msg.to_string(),
    }
}

fn render_element(a: &FilteredAlgebra, e: &Element) -> String {
    if e.is_zero() {
        return "0".into();
    }
    let mut parts = Vec::new();
    for (i, c) in e.terms() {
        parts.push(format!("{}*{}", c.render(), a.symbol(i)));
    }
    parts.join(" + ")
}

fn parse_element(a: &FilteredAlgebra, s: &str, line: usize) -> Result<Element> {
    let s = s.trim();
    if s == "0" {
        return Ok(Element::zero());
    }
    let mut e = Element::zero();
    for term in s.split(" + ") {
        let (c, sym) = term
            .split_once('*')
            .ok_or_else(|| parse_err(line, &format!("bad term {term:?}")))?;
        let coeff = Scalar::parse(a.ring, c)?;
        let idx = a
            .index_of(sym)
            .ok_or_else(|| parse_err(line, &format!("unknown symbol {sym:?}")))?;
        e.add_term(idx, &coeff);
    }
    Ok(e)
}

/// Parses an element in the canonical `coeff*symbol + ...` form.
pub fn parse_scenario_element(a: &FilteredAlgebra, s: &str) -> Result<Element> {
    parse_element(a, s, 0)
}

/// Renders one algebra block.
pub fn render_algebra(a: &FilteredAlgebra) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "algebra {} {{", a.name);
    let _ = writeln!(out, "  ring {}", a.ring);
    let _ = writeln!(out, "  cap {}", a.cap);
    let _ = writeln!(out, "  bound {}", a.prod_exact_bound);
    let _ = writeln!(out, "  commutative {}", a.commutative);
    let _ = writeln!(out, "  lossy {}", a.lossy);
    let _ = writeln!(out, "  basis {{");
    for i in 0..a.dim() as u32 {
        let _ = writeln!(out, "    {} {}", a.symbol(i), a.weight_of(i));
    }
    let _ = writeln!(out, "  }}");
    let _ = writeln!(out, "  mult {{");
    for (&(i, j), e) in a.mult_entries() {
        let _ = writeln!(
            out,
            "    {} {} = {}",
            a.symbol(i),
            a.symbol(j),
            render_element(a, e)
        );
    }
    let _ = writeln!(out, "  }}");
    let _ = writeln!(out, "}}");
    out
}

/// Line cursor over a document.
struct Cursor<'a> {
    lines: Vec<&'a str>,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Cursor<'a> {
        Cursor {
            lines: text.lines().collect(),
            pos: 0,
        }
    }

    fn peek(&self) -> Option<&'a str> {
        self.lines.get(self.pos).map(|l| l.trim()).and_then(|l| {
            if l.is_empty() || l.starts_with('#') {
                None
            } else {
                Some(l)
            }
        })
    }

    fn skip_blank(&mut self) {
        while self.pos < self.lines.len() {
            let l = self.lines[self.pos].trim();
            if l.is_empty() || l.starts_with('#') {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn next(&mut self) -> Result<&'a str> {
        self.skip_blank();
        let l = self
            .lines
            .get(self.pos)
            .ok_or_else(|| parse_err(self.pos, "unexpected end of input"))?;
        self.pos += 1;
        Ok(l.trim())
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        let l = self.next()?;
        if l == token {
            Ok(())
        } else {
            Err(parse_err(self.pos, &format!("expected {token:?}, got {l:?}")))
        }
    }

    fn line(&self) -> usize {
        self.pos
    }
}

fn parse_algebra_block(cur: &mut Cursor<'_>) -> Result<Alg> {
    let header = cur.next()?;
    let name = header
        .strip_prefix("algebra ")
        .and_then(|r| r.strip_suffix(" {"))
        .ok_or_else(|| parse_err(cur.line(), "expected `algebra <name> {`"))?
        .to_string();
    let ring = parse_ring(field(cur, "ring")?)?;
    let cap: u32 = field(cur, "cap")?
        .parse()
        .map_err(|_| parse_err(cur.line(), "bad cap"))?;
    let bound: u32 = field(cur, "bound")?
        .parse()
        .map_err(|_| parse_err(cur.line(), "bad bound"))?;
    let commutative: bool = field(cur, "commutative")?
        .parse()
        .map_err(|_| parse_err(cur.line(), "bad flag"))?;
    let lossy: bool = field(cur, "lossy")?
        .parse()
        .map_err(|_| parse_err(cur.line(), "bad flag"))?;
    cur.expect("basis {")?;
    let mut symbols = Vec::new();
    loop {
        let l = cur.next()?;
        if l == "}" {
            break;
        }
        let (sym, w) = l
            .rsplit_once(' ')
            .ok_or_else(|| parse_err(cur.line(), "bad basis line"))?;
        let w: u32 = w.parse().map_err(|_| parse_err(cur.line(), "bad weight"))?;
        symbols.push((sym.to_string(), w));
    }
    cur.expect("mult {")?;
    let mut mult = Vec::new();
    loop {
        let l = cur.next()?;
        if l == "}" {
            break;
        }
        let (lhs, rhs) = l
            .split_once(" = ")
            .ok_or_else(|| parse_err(cur.line(), "bad mult line"))?;
        let (a, b) = lhs
            .split_once(' ')
            .ok_or_else(|| parse_err(cur.line(), "bad mult pair"))?;
        mult.push((a.to_string(), b.to_string(), rhs.to_string()));
    }
    cur.expect("}")?;
    // assemble through the validating constructor
    let mut table = Vec::new();
    {
        // a temporary index to parse the right-hand sides
        let probe = FilteredAlgebra::new(name.clone(), ring, cap, symbols.clone(), vec![], commutative)?;
        for (a, b, rhs) in mult {
            let elem = parse_element(&probe, &rhs, 0)?;
            let combo: Vec<(String, Scalar)> = elem
                .terms()
                .map(|(i, c)| (probe.symbol(i).to_string(), c.clone()))
                .collect();
            table.push(((a, b), combo));
        }
    }
    let built = FilteredAlgebra::new(name, ring, cap, symbols, table, commutative)?;
    // Respect the declared exactness bound and lossy flag: derived
    // constructions can be weaker than the table alone suggests.
    if built.prod_exact_bound != bound || built.lossy != lossy {
        let names: Vec<String> = built.symbols().to_vec();
        let weights: Vec<u32> = (0..built.dim() as u32).map(|i| built.weight_of(i)).collect();
        let mult: std::collections::BTreeMap<(u32, u32), Element> = built
            .mult_entries()
            .map(|(k, v)| (*k, v.clone()))
            .collect();
        return Ok(FilteredAlgebra::from_parts(
            built.name.clone(),
            ring,
            cap,
            bound,
            names,
            weights,
            mult,
            commutative,
            lossy,
            None,
        ));
    }
    Ok(built)
}

fn field<'a>(cur: &mut Cursor<'a>, key: &str) -> Result<&'a str> {
    let l = cur.next()?;
    l.strip_prefix(key)
        .map(|r| r.trim())
        .ok_or_else(|| parse_err(cur.line(), &format!("expected field {key}")))
}

fn render_growth(g: Growth) -> String {
    format!("{} {}", g.mul, g.add)
}

fn parse_growth(s: &str, line: usize) -> Result<Growth> {
    let (m, a) = s
        .split_once(' ')
        .ok_or_else(|| parse_err(line, "bad growth"))?;
    Ok(Growth {
        mul: m.parse().map_err(|_| parse_err(line, "bad growth"))?,
        add: a.parse().map_err(|_| parse_err(line, "bad growth"))?,
    })
}

fn render_images(lin: &LinearMap, out: &mut String) {
    let _ = writeln!(out, "  images {{");
    for i in 0..lin.source.dim() as u32 {
        match lin.image(i) {
            Some(e) => {
                let _ = writeln!(
                    out,
                    "    {} = {}",
                    lin.source.symbol(i),
                    render_element(&lin.target, e)
                );
            }
            None => {
                let _ = writeln!(out, "    {} = ?", lin.source.symbol(i));
            }
        }
    }
    let _ = writeln!(out, "  }}");
}

/// Renders a homomorphism block referring to algebras by name.
pub fn render_map(name: &str, m: &AlgebraMap) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "map {name} {{");
    let _ = writeln!(out, "  source {}", m.source().name);
    let _ = writeln!(out, "  target {}", m.target().name);
    let _ = writeln!(out, "  growth {}", render_growth(m.growth()));
    let verified = match &m.verified {
        VerifyStatus::Unchecked => "unchecked".to_string(),
        VerifyStatus::Verified { window } => format!("verified {window}"),
        VerifyStatus::Failed { .. } => "failed".to_string(),
    };
    let _ = writeln!(out, "  status {verified}");
    render_images(&m.lin, &mut out);
    let _ = writeln!(out, "}}");
    out
}

fn parse_images(
    cur: &mut Cursor<'_>,
    source: &Alg,
    target: &Alg,
) -> Result<Vec<Option<Element>>> {
    cur.expect("images {")?;
    let mut images: BTreeMap<u32, Option<Element>> = BTreeMap::new();
    loop {
        let l = cur.next()?;
        if l == "}" {
            break;
        }
        let (sym, rhs) = l
            .split_once(" = ")
            .ok_or_else(|| parse_err(cur.line(), "bad image line"))?;
        let idx = source
            .index_of(sym)
            .ok_or_else(|| parse_err(cur.line(), &format!("unknown source symbol {sym}")))?;
        let value = if rhs == "?" {
            None
        } else {
            Some(parse_element(target, rhs, cur.line())?)
        };
        images.insert(idx, value);
    }
    let mut out = Vec::with_capacity(source.dim());
    for i in 0..source.dim() as u32 {
        out.push(
            images
                .remove(&i)
                .ok_or_else(|| parse_err(cur.line(), "missing image"))?
                .clone(),
        );
    }
    Ok(out)
}

/// A self-contained document of named objects.
#[derive(Default)]
pub struct Document {
    pub algebras: Vec<Alg>,
    pub maps: Vec<(String, AlgebraMap)>,
    pub linear_maps: Vec<(String, LinearMap)>,
    pub extensions: Vec<(String, ExtensionRef)>,
    pub chains: Vec<(String, ChainRef)>,
    pub checks: Vec<Vec<String>>,
}

/// Extension block by name references.
pub struct ExtensionRef {
    pub kernel: String,
    pub middle: String,
    pub quotient: String,
    pub inject: String,
    pub surject: String,
    pub splitting: String,
}

/// Chain block: the link maps by name, with the carrier described by its
/// base algebra and cap so it can be rebuilt deterministically.
pub struct ChainRef {
    pub links: Vec<(String, String, u32)>,
}

impl Document {
    pub fn algebra(&self, name: &str) -> Result<&Alg> {
        self.algebras
            .iter()
            .find(|a| a.name == name)
            .ok_or_else(|| parse_err(0, &format!("unknown algebra {name}")))
    }

    pub fn map(&self, name: &str) -> Result<&AlgebraMap> {
        self.maps
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, m)| m)
            .ok_or_else(|| parse_err(0, &format!("unknown map {name}")))
    }

    pub fn linear(&self, name: &str) -> Result<&LinearMap> {
        self.linear_maps
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, m)| m)
            .ok_or_else(|| parse_err(0, &format!("unknown linear map {name}")))
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for a in &self.algebras {
            out.push_str(&render_algebra(a));
        }
        for (name, m) in &self.linear_maps {
            let _ = writeln!(out, "linear {name} {{");
            let _ = writeln!(out, "  source {}", m.source.name);
            let _ = writeln!(out, "  target {}", m.target.name);
            let _ = writeln!(out, "  growth {}", render_growth(m.growth));
            render_images(m, &mut out);
            let _ = writeln!(out, "}}");
        }
        for (name, m) in &self.maps {
            out.push_str(&render_map(name, m));
        }
        for (name, e) in &self.extensions {
            let _ = writeln!(out, "extension {name} {{");
            let _ = writeln!(out, "  kernel {}", e.kernel);
            let _ = writeln!(out, "  middle {}", e.middle);
            let _ = writeln!(out, "  quotient {}", e.quotient);
            let _ = writeln!(out, "  inject {}", e.inject);
            let _ = writeln!(out, "  surject {}", e.surject);
            let _ = writeln!(out, "  splitting {}", e.splitting);
            let _ = writeln!(out, "}}");
        }
        for (name, c) in &self.chains {
            let _ = writeln!(out, "chain {name} {{");
            for (map, base, cap) in &c.links {
                let _ = writeln!(out, "  link {map} {base} {cap}");
            }
            let _ = writeln!(out, "}}");
        }
        for check in &self.checks {
            let _ = writeln!(out, "check {}", check.join(" "));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Document> {
        let mut doc = Document::default();
        let mut cur = Cursor::new(text);
        loop {
            cur.skip_blank();
            let Some(l) = cur.peek() else { break };
            if l.starts_with("algebra ") {
                doc.algebras.push(parse_algebra_block(&mut cur)?);
            } else if l.starts_with("map ") || l.starts_with("linear ") {
                let is_hom = l.starts_with("map ");
                let header = cur.next()?;
                let name = header
                    .split_whitespace()
                    .nth(1)
                    .ok_or_else(|| parse_err(cur.line(), "bad map header"))?
                    .to_string();
                let source = doc.algebra(field(&mut cur, "source")?)?.clone();
                let target = doc.algebra(field(&mut cur, "target")?)?.clone();
                let growth = parse_growth(field(&mut cur, "growth")?, cur.line())?;
                let status = if is_hom {
                    let s = field(&mut cur, "status")?.to_string();
                    Some(s)
                } else {
                    None
                };
                let images = parse_images(&mut cur, &source, &target)?;
                cur.expect("}")?;
                let lin = LinearMap::new(source, target, images, growth)?;
                if let Some(status) = status {
                    let verified = if status == "unchecked" || status == "failed" {
                        VerifyStatus::Unchecked
                    } else {
                        let w: u32 = status
                            .strip_prefix("verified ")
                            .and_then(|w| w.parse().ok())
                            .ok_or_else(|| parse_err(cur.line(), "bad status"))?;
                        VerifyStatus::Verified { window: w }
                    };
                    doc.maps.push((
                        name,
                        AlgebraMap {
                            lin,
                            verified,
                        },
                    ));
                } else {
                    doc.linear_maps.push((name, lin));
                }
            } else if l.starts_with("extension ") {
                let header = cur.next()?;
                let name = header
                    .split_whitespace()
                    .nth(1)
                    .ok_or_else(|| parse_err(cur.line(), "bad extension header"))?
                    .to_string();
                let e = ExtensionRef {
                    kernel: field(&mut cur, "kernel")?.to_string(),
                    middle: field(&mut cur, "middle")?.to_string(),
                    quotient: field(&mut cur, "quotient")?.to_string(),
                    inject: field(&mut cur, "inject")?.to_string(),
                    surject: field(&mut cur, "surject")?.to_string(),
                    splitting: field(&mut cur, "splitting")?.to_string(),
                };
                cur.expect("}")?;
                doc.extensions.push((name, e));
            } else if l.starts_with("chain ") {
                let header = cur.next()?;
                let name = header
                    .split_whitespace()
                    .nth(1)
                    .ok_or_else(|| parse_err(cur.line(), "bad chain header"))?
                    .to_string();
                let mut links = Vec::new();
                loop {
                    let l = cur.next()?;
                    if l == "}" {
                        break;
                    }
                    let parts: Vec<&str> = l.split_whitespace().collect();
                    if parts.len() != 4 || parts[0] != "link" {
                        return Err(parse_err(cur.line(), "bad link line"));
                    }
                    links.push((
                        parts[1].to_string(),
                        parts[2].to_string(),
                        parts[3]
                            .parse()
                            .map_err(|_| parse_err(cur.line(), "bad carrier cap"))?,
                    ));
                }
                doc.chains.push((name, ChainRef { links }));
            } else if l.starts_with("check ") {
                let line = cur.next()?;
                let parts: Vec<String> = line
                    .split_whitespace()
                    .skip(1)
                    .map(String::from)
                    .collect();
                if parts.is_empty() {
                    return Err(parse_err(cur.line(), "bad check line"));
                }
                doc.checks.push(parts);
            } else {
                return Err(parse_err(cur.line(), &format!("unexpected line {l:?}")));
            }
        }
        Ok(doc)
    }

    /// Materializes an extension block.
    pub fn build_extension(&self, name: &str) -> Result<Extension> {
        let (_, e) = self
            .extensions
            .iter()
            .find(|(n, _)| n == name)
            .ok_or_else(|| parse_err(0, &format!("unknown extension {name}")))?;
        Extension::new(
            self.algebra(&e.kernel)?.clone(),
            self.algebra(&e.middle)?.clone(),
            self.algebra(&e.quotient)?.clone(),
            self.map(&e.inject)?.clone(),
            self.map(&e.surject)?.clone(),
            self.linear(&e.splitting)?.clone(),
        )
    }

    /// Materializes a chain block: carriers are rebuilt from their base
    /// algebras at the recorded cap.
    pub fn build_chain(&self, name: &str) -> Result<HomotopyChain> {
        let (_, c) = self
            .chains
            .iter()
            .find(|(n, _)| n == name)
            .ok_or_else(|| parse_err(0, &format!("unknown chain {name}")))?;
        let mut links = Vec::new();
        for (map, base, cap) in &c.links {
            let m = self.map(map)?.clone();
            let carrier = PolyExt::new(self.algebra(base)?, *cap);
            if !carrier.alg.same_space(m.target()) {
                return Err(Error::TypeMismatch(format!(
                    "link {map}: carrier mismatch"
                )));
            }
            links.push(ElementaryHomotopy::new(carrier, m)?);
        }
        Ok(HomotopyChain { links })
    }
}

/// Serializes a complex: sorted vertex list, then sorted maximal chains.
pub fn render_complex(k: &FiniteComplex) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "complex {{");
    let _ = writeln!(out, "  vertices {{");
    for l in k.labels() {
        let _ = writeln!(out, "    {l}");
    }
    let _ = writeln!(out, "  }}");
    let _ = writeln!(out, "  chains {{");
    for c in k.maximal_chains() {
        let rendered: Vec<String> = c.iter().map(|&v| k.label(v).to_string()).collect();
        let _ = writeln!(out, "    {}", rendered.join(" ; "));
    }
    let _ = writeln!(out, "  }}");
    let _ = writeln!(out, "}}");
    out
}

pub fn parse_complex(text: &str) -> Result<FiniteComplex> {
    let mut cur = Cursor::new(text);
    cur.expect("complex {")?;
    cur.expect("vertices {")?;
    loop {
        let l = cur.next()?;
        if l == "}" {
            break;
        }
        parse_label(l, cur.line())?; // vertices are implied by the chains
    }
    cur.expect("chains {")?;
    let mut chains = Vec::new();
    loop {
        let l = cur.next()?;
        if l == "}" {
            break;
        }
        let chain: Vec<Label> = l
            .split(" ; ")
            .map(|tok| parse_label(tok.trim(), cur.line()))
            .collect::<Result<_>>()?;
        chains.push(chain);
    }
    cur.expect("}")?;
    FiniteComplex::from_chains(chains)
}

fn parse_label(s: &str, line: usize) -> Result<Label> {
    let (label, rest) = parse_label_inner(s, line)?;
    if !rest.trim().is_empty() {
        return Err(parse_err(line, &format!("trailing input after label: {rest:?}")));
    }
    Ok(label)
}

fn parse_label_inner(s: &str, line: usize) -> Result<(Label, &str)> {
    let s = s.trim_start();
    if let Some(rest) = s.strip_prefix('(') {
        let mut items = Vec::new();
        let mut rest = rest;
        loop {
            let t = rest.trim_start();
            if let Some(after) = t.strip_prefix(')') {
                return Ok((Label::Tuple(items), after));
            }
            if t.is_empty() {
                return Err(parse_err(line, "unbalanced parenthesis in label"));
            }
            let (item, after) = parse_label_inner(t, line)?;
            items.push(item);
            rest = after;
        }
    }
    let end = s
        .find(|c: char| c == ' ' || c == ')' || c == ';')
        .unwrap_or(s.len());
    let (tok, rest) = s.split_at(end);
    let n: u32 = tok
        .parse()
        .map_err(|_| parse_err(line, &format!("bad atom {tok:?}")))?;
    Ok((Label::Atom(n), rest))
}

/// Renders a power element as an association from maximal simplices to
/// component polynomials in normal form.
pub fn render_power_element(p: &crate::funalg::PowerAlgebra, x: &Element) -> String {
    let mut out = String::new();
    for (pos, chain) in p.chains().iter().enumerate() {
        let comp = p.component(x, pos);
        let chain_s: Vec<String> = chain
            .iter()
            .map(|&v| p.complex.label(v).to_string())
            .collect();
        let _ = writeln!(
            out,
            "{} -> {}",
            chain_s.join(" ; "),
            render_element(&p.components[pos].alg, &comp)
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{ground, square_zero, unitize};
    use crate::complex::{cube, standard_simplex, subdivide};
    use crate::funalg::loop_extension;
    use proptest::prelude::*;

    #[test]
    fn algebra_round_trip_is_stable() {
        for a in [
            ground(Ring::Q, 4),
            square_zero(Ring::Z, 3, 2),
            unitize(&square_zero(Ring::Fp(5), 4, 1)).unwrap(),
        ] {
            let text = render_algebra(&a);
            let parsed = Document::parse(&text).unwrap();
            assert!(parsed.algebras[0].same_space(&a));
            assert_eq!(render_algebra(&parsed.algebras[0]), text);
        }
    }

    #[test]
    fn map_round_trip() {
        let k = ground(Ring::Q, 4);
        let id = AlgebraMap::identity(&k);
        let mut doc = Document::default();
        doc.algebras.push(k.clone());
        doc.maps.push(("id".into(), id));
        let text = doc.render();
        let parsed = Document::parse(&text).unwrap();
        assert_eq!(parsed.render(), text);
        let back = parsed.map("id").unwrap();
        assert!(back.agrees_with(&AlgebraMap::identity(&k), 4).is_ok());
    }

    #[test]
    fn extension_round_trip() {
        let k = ground(Ring::Q, 4);
        let le = loop_extension(&k).unwrap();
        let mut doc = Document::default();
        doc.algebras.push(le.looped.alg.clone());
        doc.algebras.push(le.path.alg.clone());
        doc.algebras.push(k.clone());
        doc.maps.push(("i".into(), le.ext.inject.clone()));
        doc.maps.push(("p".into(), le.ext.surject.clone()));
        doc.linear_maps.push(("s".into(), le.ext.splitting.clone()));
        doc.extensions.push((
            "loop".into(),
            ExtensionRef {
                kernel: le.looped.alg.name.clone(),
                middle: le.path.alg.name.clone(),
                quotient: k.name.clone(),
                inject: "i".into(),
                surject: "p".into(),
                splitting: "s".into(),
            },
        ));
        let text = doc.render();
        let parsed = Document::parse(&text).unwrap();
        assert_eq!(parsed.render(), text);
        assert!(parsed.build_extension("loop").is_ok());
    }

    #[test]
    fn complex_round_trip() {
        for k in [standard_simplex(2), cube(2), subdivide(&standard_simplex(1))] {
            let text = render_complex(&k);
            let parsed = parse_complex(&text).unwrap();
            assert_eq!(parsed, k);
            assert_eq!(render_complex(&parsed), text);
        }
    }

    #[test]
    fn chain_certificate_round_trip() {
        let a = square_zero(Ring::Q, 4, 1);
        let h = crate::homotopy::contract_squarezero(&a).unwrap();
        let mut doc = Document::default();
        doc.algebras.push(a.clone());
        doc.algebras.push(h.carrier.alg.clone());
        doc.maps.push(("h0".into(), h.map.clone()));
        doc.chains.push((
            "c".into(),
            ChainRef {
                links: vec![("h0".into(), a.name.clone(), h.carrier.alg.cap)],
            },
        ));
        let text = doc.render();
        let parsed = Document::parse(&text).unwrap();
        let chain = parsed.build_chain("c").unwrap();
        let zero = AlgebraMap::zero(&a, &a).unwrap();
        let id = AlgebraMap::identity(&a);
        assert!(crate::homotopy::check_homotopic(&zero, &id, &chain).is_ok());
    }

    proptest! {
        #[test]
        fn random_square_zero_presentations_round_trip(
            n in 1usize..4,
            cap in 1u32..5,
            ring in prop_oneof![Just(Ring::Q), Just(Ring::Z), Just(Ring::Fp(7))],
        ) {
            let a = square_zero(ring, cap, n);
            let text = render_algebra(&a);
            let parsed = Document::parse(&text).unwrap();
            prop_assert!(parsed.algebras[0].same_space(&a));
            prop_assert_eq!(render_algebra(&parsed.algebras[0]), text);
        }
    }
}
