use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};

use super::Dga;
use crate::error::{Error, Result};
use crate::ffla::{Fp, SparseVec};

/// A word in the generators of a tensor algebra; the empty word is the unit.
pub type Word = Vec<u32>;

/// Noncommutative polynomial: word -> nonzero coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NcPoly {
    terms: BTreeMap<Word, u32>,
}

impl NcPoly {
    pub fn zero() -> Self {
        NcPoly::default()
    }

    pub fn word(w: Word) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(w, 1);
        NcPoly { terms }
    }

    pub fn generator(g: u32) -> Self {
        NcPoly::word(vec![g])
    }

    pub fn one() -> Self {
        NcPoly::word(Vec::new())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, u32)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &[u32]) -> u32 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, field: Fp, w: Word, c: u32) {
        if c == 0 {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let v = field.add(*e.get(), c);
                if v == 0 {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, field: Fp, other: &NcPoly, c: u32) {
        for (w, a) in other.terms() {
            self.add_term(field, w.clone(), field.mul(a, c));
        }
    }

    pub fn scale(&self, field: Fp, c: u32) -> NcPoly {
        let mut out = NcPoly::zero();
        out.add_scaled(field, self, c);
        out
    }

    pub fn mul(&self, field: Fp, other: &NcPoly) -> NcPoly {
        let mut out = NcPoly::zero();
        for (u, a) in self.terms() {
            for (v, b) in other.terms() {
                let mut w = u.clone();
                w.extend_from_slice(v);
                out.add_term(field, w, field.mul(a, b));
            }
        }
        out
    }

    /// Drops words whose degree exceeds `max_degree`.
    pub fn truncated(&self, degrees: &[usize], max_degree: usize) -> NcPoly {
        NcPoly {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| word_degree(degrees, w) <= max_degree)
                .map(|(w, &c)| (w.clone(), c))
                .collect(),
        }
    }

    /// Part made of words of exactly `len` letters.
    pub fn length_part(&self, len: usize) -> NcPoly {
        NcPoly {
            terms: self.terms.iter().filter(|(w, _)| w.len() == len).map(|(w, &c)| (w.clone(), c)).collect(),
        }
    }

    pub fn min_length(&self) -> Option<usize> {
        self.terms.keys().map(|w| w.len()).min()
    }

    pub fn format(&self, field: Fp, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (w, c)) in self.terms().enumerate() {
            let s = field.signed(c);
            let (neg, mag) = (s < 0, s.unsigned_abs());
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if mag != 1 {
                out.push_str(&format!("{mag}*"));
            }
            out.push_str(&word_label(names, w));
        }
        out
    }
}

pub fn word_degree(degrees: &[usize], w: &[u32]) -> usize {
    w.iter().map(|&g| degrees[g as usize]).sum()
}

pub fn word_label(names: &[String], w: &[u32]) -> String {
    if w.is_empty() {
        "1".to_string()
    } else {
        w.iter().map(|&g| names[g as usize].as_str()).collect::<Vec<_>>().join(".")
    }
}

/// Named, graded generators of a tensor algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generators {
    names: Vec<String>,
    degrees: Vec<usize>,
}

impl Generators {
    pub fn new() -> Self {
        Generators {
            names: Vec::new(),
            degrees: Vec::new(),
        }
    }

    pub fn push(&mut self, name: impl Into<String>, degree: usize) -> u32 {
        self.names.push(name.into());
        self.degrees.push(degree);
        (self.names.len() - 1) as u32
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn name(&self, g: u32) -> &str {
        &self.names[g as usize]
    }

    pub fn degree(&self, g: u32) -> usize {
        self.degrees[g as usize]
    }

    pub fn find(&self, name: &str) -> Option<u32> {
        self.names.iter().position(|n| n == name).map(|i| i as u32)
    }

    pub fn word_degree(&self, w: &[u32]) -> usize {
        word_degree(&self.degrees, w)
    }
}

impl Default for Generators {
    fn default() -> Self {
        Generators::new()
    }
}

/// Extends generator values to words as a derivation of degree +1:
/// `d(g_1...g_k) = sum_i (-1)^{|g_1...g_{i-1}|} g_1..d(g_i)..g_k`.
pub fn derivation_on_word(field: Fp, gens: &Generators, on_gen: &[NcPoly], w: &[u32]) -> NcPoly {
    let mut out = NcPoly::zero();
    let mut prefix_deg = 0;
    for i in 0..w.len() {
        let g = w[i] as usize;
        let sign = field.sign(prefix_deg % 2 == 1);
        for (dw, c) in on_gen[g].terms() {
            let mut word = w[..i].to_vec();
            word.extend_from_slice(dw);
            word.extend_from_slice(&w[i + 1..]);
            out.add_term(field, word, field.mul(c, sign));
        }
        prefix_deg += gens.degrees[g];
    }
    out
}

pub fn derivation_on_poly(field: Fp, gens: &Generators, on_gen: &[NcPoly], p: &NcPoly) -> NcPoly {
    let mut out = NcPoly::zero();
    for (w, c) in p.terms() {
        out.add_scaled(field, &derivation_on_word(field, gens, on_gen, w), c);
    }
    out
}

/// Extends generator values to an algebra map on a polynomial.
pub fn substitute(field: Fp, on_gen: &[NcPoly], p: &NcPoly, keep: impl Fn(&Word) -> bool) -> NcPoly {
    let mut out = NcPoly::zero();
    for (w, c) in p.terms() {
        let mut acc = NcPoly::word(Vec::new()).scale(field, c);
        for &g in w {
            let mut next = NcPoly::zero();
            for (u, a) in acc.terms() {
                for (v, b) in on_gen[g as usize].terms() {
                    let mut word = u.clone();
                    word.extend_from_slice(v);
                    if keep(&word) {
                        next.add_term(field, word, field.mul(a, b));
                    }
                }
            }
            acc = next;
            if acc.is_zero() {
                break;
            }
        }
        out.add_scaled(field, &acc, 1);
    }
    out
}

/// The tensor algebra `T(gens)` with a derivation given on generators,
/// expanded into a finite presentation up to `max_degree`.
#[derive(Clone, Debug)]
pub struct FreeAlgebra {
    gens: Generators,
    diff: Vec<NcPoly>,
    dga: Dga,
    words: Vec<Word>,
    word_index: HashMap<Word, usize>,
}

/// All words of each degree `0..=max_degree`, in generator order.
pub fn enumerate_words(gens: &Generators, max_degree: usize) -> Vec<Vec<Word>> {
    let mut by_deg: Vec<Vec<Word>> = vec![Vec::new(); max_degree + 1];
    by_deg[0].push(Vec::new());
    for d in 1..=max_degree {
        let mut level = Vec::new();
        for g in 0..gens.len() {
            let gd = gens.degrees[g];
            if gd == 0 || gd > d {
                continue;
            }
            for w in &by_deg[d - gd] {
                let mut word = vec![g as u32];
                word.extend_from_slice(w);
                level.push(word);
            }
        }
        by_deg[d] = level;
    }
    by_deg
}

impl FreeAlgebra {
    pub fn new(field: Fp, gens: Generators, diff: Vec<NcPoly>, max_degree: usize) -> Result<Self> {
        if diff.len() != gens.len() {
            return Err(Error::Invalid("differential must be given on every generator".into()));
        }
        if let Some(g) = (0..gens.len()).find(|&g| gens.degrees[g] == 0) {
            return Err(Error::Invalid(format!("generator {} has degree 0", gens.names[g])));
        }
        for (g, p) in diff.iter().enumerate() {
            for (w, _) in p.terms() {
                if gens.word_degree(w) != gens.degrees[g] + 1 {
                    return Err(Error::Invalid(format!(
                        "differential of {} is not homogeneous of degree {}",
                        gens.names[g],
                        gens.degrees[g] + 1
                    )));
                }
            }
        }
        let by_deg = enumerate_words(&gens, max_degree);
        let mut words = Vec::new();
        let mut word_index = HashMap::new();
        let mut basis = Vec::new();
        for (d, level) in by_deg.iter().enumerate() {
            for w in level {
                word_index.insert(w.clone(), words.len());
                basis.push((word_label(&gens.names, w), d));
                words.push(w.clone());
            }
        }
        let mut products = HashMap::new();
        for (i, w) in words.iter().enumerate() {
            for k in 1..w.len() {
                let a = word_index[&w[..k]];
                let b = word_index[&w[k..]];
                products.insert((a, b), SparseVec::unit(i));
            }
        }
        let differential = words
            .iter()
            .map(|w| {
                let dp = derivation_on_word(field, &gens, &diff, w);
                SparseVec::from_entries(
                    field,
                    dp.terms().filter_map(|(u, c)| word_index.get(u).map(|&j| (j, c))),
                )
            })
            .collect();
        let dga = Dga::new(field, max_degree, basis, products, differential)?;
        Ok(FreeAlgebra {
            gens,
            diff,
            dga,
            words,
            word_index,
        })
    }

    pub fn dga(&self) -> &Dga {
        &self.dga
    }

    pub fn generators(&self) -> &Generators {
        &self.gens
    }

    pub fn generator_differential(&self) -> &[NcPoly] {
        &self.diff
    }

    pub fn word(&self, i: usize) -> &Word {
        &self.words[i]
    }

    pub fn index_of(&self, w: &[u32]) -> Option<usize> {
        self.word_index.get(w).copied()
    }

    /// Polynomial to basis coordinates, dropping words above the truncation.
    pub fn to_vec(&self, p: &NcPoly) -> SparseVec {
        SparseVec::from_entries(
            self.dga.field(),
            p.terms().filter_map(|(w, c)| self.word_index.get(w).map(|&j| (j, c))),
        )
    }

    pub fn to_poly(&self, v: &SparseVec) -> NcPoly {
        let mut p = NcPoly::zero();
        for (i, c) in v.iter() {
            p.add_term(self.dga.field(), self.words[i].clone(), c);
        }
        p
    }
}
