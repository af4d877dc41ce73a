//! Line-oriented input files.
//!
//! ```text
//! FIELD 3
//! TRUNCATE 12
//! COMMUTATIVE yes
//! GENERATOR x 2
//! GENERATOR y 5
//! DIFF y = x.x.x
//! ```
//!
//! In characteristic 2 odd generators of commutative inputs do not square to
//! zero unless `ODD_SQUARES zero` is given (the default is `ODD_SQUARES free`);
//! in odd characteristic they always do.
//!
//! Finite algebras use `BASIS degree label...`, `PRODUCT a b = poly` and
//! `DIFF a = poly` in basis labels. Free models use `MODEL MINIMAL` (or
//! `COMMUTATIVE no`) with `GENERATOR` and `DIFF` in noncommutative words, and
//! may give the linear part of `μ` by `MU0 v w = poly` or by
//! `HSTAR_BA_PRODUCT v w = poly`, the product `sv ⋆ sw` in `H⁺BA` written in
//! the generators it desuspends to. `#` starts a comment.

use std::collections::HashMap;

use crate::barcobar::FreeDgaModel;
use crate::dga::{CPoly, CommutativePresentation, Dga, Generators, NcPoly};
use crate::error::{Error, Result};
use crate::ffla::{Fp, SparseVec};
use crate::shcmodel::Mu0;

/// A parsed term: integer coefficient and a `.`-separated word of names.
pub type RawTerm = (i64, Vec<String>);

#[derive(Clone, Debug)]
pub struct InputFile {
    pub field: Fp,
    /// Degree through which the data is complete, if limited.
    pub truncate: Option<usize>,
    pub kind: InputKind,
}

#[derive(Clone, Debug)]
pub enum InputKind {
    Commutative(CommutativePresentation),
    Finite(FiniteAlgebra),
    Free(FreeInput),
}

/// A finite algebra given by its basis, products and differential.
#[derive(Clone, Debug)]
pub struct FiniteAlgebra {
    pub basis: Vec<(String, usize)>,
    pub products: HashMap<(usize, usize), Vec<(usize, i64)>>,
    pub differential: Vec<Vec<(usize, i64)>>,
}

/// A free model `(TV, d)` with optional linear part of `μ`.
#[derive(Clone, Debug)]
pub struct FreeInput {
    pub generators: Generators,
    pub differential: Vec<NcPoly>,
    pub minimal: bool,
    pub mu0: Vec<(u32, u32, NcPoly)>,
    pub hstar: Vec<(u32, u32, NcPoly)>,
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn is_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || matches!(c, '_' | '\'' | '^'))
}

/// Parses `c1*w1 + c2*w2 - w3` where each `w` is `.`-separated names. A bare
/// integer is a multiple of the unit, with the empty word.
pub fn parse_poly(text: &str, line: usize) -> Result<Vec<RawTerm>> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(parse_err(line, "empty polynomial"));
    }
    let mut terms = Vec::new();
    let mut rest = compact.as_str();
    let mut first = true;
    while !rest.is_empty() {
        let mut sign = 1i64;
        if let Some(r) = rest.strip_prefix('+') {
            rest = r;
        } else if let Some(r) = rest.strip_prefix('-') {
            rest = r;
            sign = -1;
        } else if !first {
            return Err(parse_err(line, format!("expected + or - before {rest:?}")));
        }
        first = false;
        let end = rest.find(['+', '-']).unwrap_or(rest.len());
        let (term, tail) = rest.split_at(end);
        rest = tail;
        if term.is_empty() {
            return Err(parse_err(line, "missing term"));
        }
        let (coeff, word) = match term.split_once('*') {
            Some((c, w)) => {
                let c: i64 = c.parse().map_err(|_| parse_err(line, format!("bad coefficient {c:?}")))?;
                (c, w)
            }
            None if term.chars().all(|c| c.is_ascii_digit()) => {
                let c: i64 = term.parse().map_err(|_| parse_err(line, format!("bad coefficient {term:?}")))?;
                (c, "")
            }
            None => (1, term),
        };
        let names: Vec<String> = if word.is_empty() || word == "1" {
            Vec::new()
        } else {
            word.split('.').map(str::to_string).collect()
        };
        if let Some(bad) = names.iter().find(|n| !is_name(n)) {
            return Err(parse_err(line, format!("bad name {bad:?}")));
        }
        terms.push((sign * coeff, names));
    }
    Ok(terms)
}

fn parse_usize(s: &str, line: usize, what: &str) -> Result<usize> {
    s.parse().map_err(|_| parse_err(line, format!("bad {what} {s:?}")))
}

struct Lines<'a> {
    entries: Vec<(usize, &'a str, &'a str)>,
}

pub fn parse_input(text: &str) -> Result<InputFile> {
    let mut lines = Lines { entries: Vec::new() };
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap().trim();
        if content.is_empty() {
            continue;
        }
        let (kw, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
        lines.entries.push((i + 1, kw, rest.trim()));
    }
    let mut field = None;
    let mut truncate = None;
    let mut commutative = None;
    let mut model = false;
    for &(line, kw, rest) in &lines.entries {
        match kw {
            "FIELD" => {
                let p = parse_usize(rest, line, "prime")?;
                field = Some(Fp::new(p as u32).map_err(|e| parse_err(line, e.to_string()))?);
            }
            "TRUNCATE" => truncate = Some(parse_usize(rest, line, "degree")?),
            "COMMUTATIVE" => {
                commutative = Some(match rest {
                    "yes" => true,
                    "no" => false,
                    _ => return Err(parse_err(line, "COMMUTATIVE takes yes or no")),
                })
            }
            "MODEL" => {
                if rest != "MINIMAL" {
                    return Err(parse_err(line, "only MODEL MINIMAL is supported"));
                }
                model = true;
            }
            "ODD_SQUARES" => {
                if !matches!(rest, "zero" | "free") {
                    return Err(parse_err(line, "ODD_SQUARES takes zero or free"));
                }
            }
            "GENERATOR" | "RELATION" | "DIFF" | "BASIS" | "PRODUCT" | "MU0" | "HSTAR_BA_PRODUCT" => {}
            _ => return Err(parse_err(line, format!("unknown section {kw}"))),
        }
    }
    let field = field.ok_or_else(|| parse_err(0, "missing FIELD"))?;
    let has = |k: &str| lines.entries.iter().any(|e| e.1 == k);
    let kind = if has("BASIS") {
        if has("GENERATOR") || model {
            return Err(parse_err(0, "BASIS cannot be combined with GENERATOR or MODEL"));
        }
        InputKind::Finite(parse_finite(&lines, field)?)
    } else if model || commutative == Some(false) {
        InputKind::Free(parse_free(&lines, field, model)?)
    } else {
        InputKind::Commutative(parse_commutative(&lines, field)?)
    };
    if !matches!(kind, InputKind::Commutative(_)) {
        if let Some(e) = lines.entries.iter().find(|e| e.1 == "ODD_SQUARES") {
            return Err(parse_err(e.0, "ODD_SQUARES needs a commutative presentation"));
        }
    }
    let only_free = ["MU0", "HSTAR_BA_PRODUCT"];
    if !matches!(kind, InputKind::Free(_)) {
        if let Some(e) = lines.entries.iter().find(|e| only_free.contains(&e.1)) {
            return Err(parse_err(e.0, format!("{} needs a free model", e.1)));
        }
    }
    Ok(InputFile { field, truncate, kind })
}

fn generators<'a>(lines: &Lines<'a>) -> Result<Vec<(usize, &'a str, usize)>> {
    let mut out: Vec<(usize, &str, usize)> = Vec::new();
    for &(line, kw, rest) in &lines.entries {
        if kw != "GENERATOR" {
            continue;
        }
        let parts: Vec<&str> = rest.split_whitespace().collect();
        let [name, deg] = parts.as_slice() else {
            return Err(parse_err(line, "expected GENERATOR name degree"));
        };
        if !is_name(name) {
            return Err(parse_err(line, format!("bad generator name {name:?}")));
        }
        if out.iter().any(|g| g.1 == *name) {
            return Err(parse_err(line, format!("duplicate generator {name}")));
        }
        let deg = parse_usize(deg, line, "degree")?;
        if deg == 0 {
            return Err(parse_err(line, "generators need positive degree"));
        }
        out.push((line, name, deg));
    }
    Ok(out)
}

/// Splits `lhs = rhs`.
fn equation(rest: &str, line: usize) -> Result<(&str, &str)> {
    rest.split_once('=')
        .map(|(a, b)| (a.trim(), b.trim()))
        .ok_or_else(|| parse_err(line, "expected '='"))
}

fn parse_commutative(lines: &Lines, field: Fp) -> Result<CommutativePresentation> {
    let mut c = CommutativePresentation::new();
    let mut index = HashMap::new();
    for (_, name, deg) in generators(lines)? {
        index.insert(name.to_string(), c.generator(name, deg));
    }
    let to_cpoly = |c: &CommutativePresentation, terms: Vec<RawTerm>, line: usize| -> Result<CPoly> {
        let mut out = CPoly::new();
        for (coeff, word) in terms {
            let mut p = CPoly::from([(c.monomial(&[]), field.from_i64(coeff))]);
            for name in &word {
                let &g = index.get(name).ok_or_else(|| parse_err(line, format!("unknown generator {name}")))?;
                p = c.poly_mul(field, &p, &CPoly::from([(c.monomial(&[(g, 1)]), 1)]));
            }
            for (m, v) in p {
                let e = out.entry(m).or_insert(0);
                *e = field.add(*e, v);
            }
        }
        out.retain(|_, v| *v != 0);
        Ok(out)
    };
    for &(line, kw, rest) in &lines.entries {
        match kw {
            "DIFF" => {
                let (lhs, rhs) = equation(rest, line)?;
                let &g = index.get(lhs).ok_or_else(|| parse_err(line, format!("unknown generator {lhs}")))?;
                let p = to_cpoly(&c, parse_poly(rhs, line)?, line)?;
                c.set_diff(g, p);
            }
            "RELATION" => {
                let p = to_cpoly(&c, parse_poly(rest, line)?, line)?;
                c.add_relation(p);
            }
            "ODD_SQUARES" => c.odd_squares_vanish = rest == "zero",
            "PRODUCT" => return Err(parse_err(line, "PRODUCT needs a BASIS algebra")),
            _ => {}
        }
    }
    Ok(c)
}

fn parse_finite(lines: &Lines, field: Fp) -> Result<FiniteAlgebra> {
    let mut basis = vec![("1".to_string(), 0)];
    let mut index: HashMap<String, usize> = HashMap::from([("1".to_string(), 0)]);
    for &(line, kw, rest) in &lines.entries {
        if kw != "BASIS" {
            continue;
        }
        let mut parts = rest.split_whitespace();
        let deg = parse_usize(parts.next().unwrap_or(""), line, "degree")?;
        for label in parts {
            if !is_name(label) {
                return Err(parse_err(line, format!("bad label {label:?}")));
            }
            if index.insert(label.to_string(), basis.len()).is_some() {
                return Err(parse_err(line, format!("duplicate label {label}")));
            }
            basis.push((label.to_string(), deg));
        }
    }
    let linear = |terms: Vec<RawTerm>, line: usize| -> Result<Vec<(usize, i64)>> {
        terms
            .into_iter()
            .map(|(c, w)| match w.as_slice() {
                [] => Ok((0, c)),
                [l] => index
                    .get(l)
                    .map(|&i| (i, c))
                    .ok_or_else(|| parse_err(line, format!("unknown label {l}"))),
                _ => Err(parse_err(line, "products of labels are not allowed here; use single labels")),
            })
            .collect()
    };
    let mut products = HashMap::new();
    let mut differential = vec![Vec::new(); basis.len()];
    for &(line, kw, rest) in &lines.entries {
        match kw {
            "PRODUCT" => {
                let (lhs, rhs) = equation(rest, line)?;
                let parts: Vec<&str> = lhs.split_whitespace().collect();
                let [a, b] = parts.as_slice() else {
                    return Err(parse_err(line, "expected PRODUCT a b = poly"));
                };
                let get = |l: &str| index.get(l).copied().ok_or_else(|| parse_err(line, format!("unknown label {l}")));
                let (a, b) = (get(a)?, get(b)?);
                if a == 0 || b == 0 {
                    return Err(parse_err(line, "products with the unit are fixed"));
                }
                if products.insert((a, b), linear(parse_poly(rhs, line)?, line)?).is_some() {
                    return Err(parse_err(line, "product given twice"));
                }
            }
            "DIFF" => {
                let (lhs, rhs) = equation(rest, line)?;
                let &a = index.get(lhs).ok_or_else(|| parse_err(line, format!("unknown label {lhs}")))?;
                differential[a] = linear(parse_poly(rhs, line)?, line)?;
            }
            "RELATION" => return Err(parse_err(line, "RELATION needs GENERATOR data")),
            _ => {}
        }
    }
    let _ = field;
    Ok(FiniteAlgebra {
        basis,
        products,
        differential,
    })
}

fn parse_free(lines: &Lines, field: Fp, minimal: bool) -> Result<FreeInput> {
    let mut gens = Generators::new();
    for (_, name, deg) in generators(lines)? {
        gens.push(name, deg);
    }
    let to_nc = |terms: Vec<RawTerm>, line: usize| -> Result<NcPoly> {
        let mut p = NcPoly::zero();
        for (c, word) in terms {
            let ids = word
                .iter()
                .map(|n| gens.find(n).ok_or_else(|| parse_err(line, format!("unknown generator {n}"))))
                .collect::<Result<Vec<u32>>>()?;
            p.add_term(field, ids, field.from_i64(c));
        }
        Ok(p)
    };
    let pair = |lhs: &str, line: usize| -> Result<(u32, u32)> {
        let parts: Vec<&str> = lhs.split_whitespace().collect();
        let [v, w] = parts.as_slice() else {
            return Err(parse_err(line, "expected two generator names"));
        };
        let get = |n: &str| gens.find(n).ok_or_else(|| parse_err(line, format!("unknown generator {n}")));
        Ok((get(v)?, get(w)?))
    };
    let mut diff = vec![NcPoly::zero(); gens.len()];
    let mut mu0 = Vec::new();
    let mut hstar = Vec::new();
    for &(line, kw, rest) in &lines.entries {
        match kw {
            "DIFF" => {
                let (lhs, rhs) = equation(rest, line)?;
                let g = gens.find(lhs).ok_or_else(|| parse_err(line, format!("unknown generator {lhs}")))?;
                diff[g as usize] = to_nc(parse_poly(rhs, line)?, line)?;
            }
            "MU0" | "HSTAR_BA_PRODUCT" => {
                let (lhs, rhs) = equation(rest, line)?;
                let (v, w) = pair(lhs, line)?;
                let p = to_nc(parse_poly(rhs, line)?, line)?;
                if kw == "MU0" { &mut mu0 } else { &mut hstar }.push((v, w, p));
            }
            "RELATION" => return Err(parse_err(line, "free models take no relations")),
            "PRODUCT" => return Err(parse_err(line, "PRODUCT needs a BASIS algebra")),
            _ => {}
        }
    }
    if !mu0.is_empty() && !hstar.is_empty() {
        return Err(parse_err(0, "give either MU0 or HSTAR_BA_PRODUCT, not both"));
    }
    Ok(FreeInput {
        generators: gens,
        differential: diff,
        minimal,
        mu0,
        hstar,
    })
}

impl InputFile {
    fn check_top(&self, top: usize) -> Result<()> {
        match self.truncate {
            Some(t) if top > t => Err(Error::Truncation(format!(
                "input is complete through degree {t}, degree {top} needed"
            ))),
            _ => Ok(()),
        }
    }

    pub fn is_free(&self) -> bool {
        matches!(self.kind, InputKind::Free(_))
    }

    /// The algebra as a finite presentation through degree `top`.
    pub fn algebra(&self, top: usize) -> Result<Dga> {
        self.check_top(top)?;
        let f = self.field;
        match &self.kind {
            InputKind::Commutative(c) => c.expand(f, top),
            InputKind::Finite(fa) => {
                let keep: Vec<usize> = (0..fa.basis.len()).filter(|&i| fa.basis[i].1 <= top).collect();
                let local: HashMap<usize, usize> = keep.iter().enumerate().map(|(k, &i)| (i, k)).collect();
                let vec_of = |terms: &[(usize, i64)]| {
                    SparseVec::from_entries(f, terms.iter().filter_map(|&(i, c)| local.get(&i).map(|&k| (k, f.from_i64(c)))))
                };
                let mut products = HashMap::new();
                for (&(a, b), terms) in &fa.products {
                    if let (Some(&la), Some(&lb)) = (local.get(&a), local.get(&b)) {
                        products.insert((la, lb), vec_of(terms));
                    }
                }
                let basis = keep.iter().map(|&i| fa.basis[i].clone()).collect();
                let diff = keep.iter().map(|&i| vec_of(&fa.differential[i])).collect();
                Dga::new(f, top, basis, products, diff)
            }
            InputKind::Free(_) => Ok(self.free_model(top)?.algebra(top)?.dga().clone()),
        }
    }

    /// The free model through degree `top`.
    pub fn free_model(&self, top: usize) -> Result<FreeDgaModel> {
        self.check_top(top)?;
        let InputKind::Free(fr) = &self.kind else {
            return Err(Error::Invalid("input is not a free model".into()));
        };
        let mut gens = Generators::new();
        let mut ids = vec![u32::MAX; fr.generators.len()];
        for g in 0..fr.generators.len() as u32 {
            if fr.generators.degree(g) <= top {
                ids[g as usize] = gens.push(fr.generators.name(g), fr.generators.degree(g));
            }
        }
        let rename = |p: &NcPoly| -> Result<NcPoly> {
            let mut q = NcPoly::zero();
            for (w, c) in p.terms() {
                if w.iter().any(|&g| ids[g as usize] == u32::MAX) {
                    continue;
                }
                q.add_term(self.field, w.iter().map(|&g| ids[g as usize]).collect(), c);
            }
            Ok(q)
        };
        let diff = (0..fr.generators.len())
            .filter(|&g| ids[g] != u32::MAX)
            .map(|g| rename(&fr.differential[g]))
            .collect::<Result<Vec<_>>>()?;
        let model = FreeDgaModel::new(self.field, gens, diff, top)?;
        if fr.minimal && !model.is_minimal() {
            return Err(Error::Invalid("MODEL MINIMAL given but the differential has linear terms".into()));
        }
        Ok(model)
    }

    /// The linear part of `μ` on generators of `model` (as returned by
    /// [`free_model`](Self::free_model)), matched by name.
    pub fn mu0(&self, model: &FreeDgaModel) -> Result<Option<Mu0>> {
        let InputKind::Free(fr) = &self.kind else {
            return Ok(None);
        };
        let (entries, from_hstar) = if !fr.mu0.is_empty() {
            (&fr.mu0, false)
        } else if !fr.hstar.is_empty() {
            (&fr.hstar, true)
        } else {
            return Ok(None);
        };
        let f = self.field;
        let gens = model.generators();
        let map = |g: u32| gens.find(fr.generators.name(g));
        let mut mu0 = Mu0::new();
        for (v, w, p) in entries {
            let (Some(mv), Some(mw)) = (map(*v), map(*w)) else { continue };
            let mut q = NcPoly::zero();
            for (word, c) in p.terms() {
                let ids: Option<Vec<u32>> = word.iter().map(|&g| map(g)).collect();
                if let Some(ids) = ids {
                    q.add_term(f, ids, c);
                }
            }
            if from_hstar {
                // μ0(v#w) = (-1)^{|v|+1} s^{-1}(sv ⋆ sw)
                q = q.scale(f, f.sign(gens.degree(mv) % 2 == 0));
            }
            if !q.is_zero() {
                mu0.insert((mv, mw), q);
            }
        }
        Ok(Some(mu0))
    }
}
