use std::collections::HashMap;

use super::bar::{bar_basis, bar_degree, bar_differential_terms, BarWord};
use super::model::FreeDgaModel;
use crate::dga::{Dga, DgaMap, FreeAlgebra, Generators, NcPoly};
use crate::error::{Error, Result};
use crate::ffla::SparseVec;

/// The cobar construction on the bar construction, `ΩBA`, truncated at
/// generator degree `top`, with its evaluation map to `A`.
#[derive(Clone, Debug)]
pub struct CobarBar {
    model: FreeDgaModel,
    words: Vec<BarWord>,
    alpha: Vec<SparseVec>,
}

/// Generators `<w> = s^{-1} w` of degree `|w| + 1` for nonempty bar words,
/// with `D<w> = -<d_BA w> + sum (-1)^{|w'|} <w'><w''>` over splittings
/// `w = w'w''` into nonempty words.
pub fn cobar_of_bar(alg: &Dga, top: usize) -> Result<CobarBar> {
    if top > alg.max_degree() {
        return Err(Error::Truncation(format!(
            "algebra known up to degree {}, cobar requested up to {top}",
            alg.max_degree()
        )));
    }
    let f = alg.field();
    let mut gens = Generators::new();
    let mut words = Vec::new();
    let mut index: HashMap<BarWord, u32> = HashMap::new();
    for n in 1..top {
        for w in bar_basis(alg, n)? {
            let name = format!("<{}>", w.iter().map(|&l| alg.label(l as usize)).collect::<Vec<_>>().join("|"));
            index.insert(w.clone(), gens.push(name, n + 1));
            words.push(w);
        }
    }
    let mut diff = Vec::with_capacity(words.len());
    for w in &words {
        let mut p = NcPoly::zero();
        bar_differential_terms(alg, w, |t, c| {
            if let Some(&g) = index.get(t) {
                p.add_term(f, vec![g], f.neg(c));
            }
        });
        for i in 1..w.len() {
            let (a, b) = (&w[..i], &w[i..]);
            if let (Some(&ga), Some(&gb)) = (index.get(a), index.get(b)) {
                p.add_term(f, vec![ga, gb], f.sign(bar_degree(alg, a) % 2 == 1));
            }
        }
        diff.push(p);
    }
    let alpha = words
        .iter()
        .map(|w| if w.len() == 1 { SparseVec::unit(w[0] as usize) } else { SparseVec::new() })
        .collect();
    Ok(CobarBar {
        model: FreeDgaModel::new(f, gens, diff, top)?,
        words,
        alpha,
    })
}

impl CobarBar {
    pub fn model(&self) -> &FreeDgaModel {
        &self.model
    }

    pub fn into_model(self) -> FreeDgaModel {
        self.model
    }

    /// The bar word behind generator `g`.
    pub fn word(&self, g: u32) -> &[u32] {
        &self.words[g as usize]
    }

    /// `α(<[a]>) = a`, zero on longer words.
    pub fn alpha_on_generator(&self, g: u32) -> &SparseVec {
        &self.alpha[g as usize]
    }

    /// `α` on the finite presentation `free` of the model.
    pub fn alpha(&self, free: &FreeAlgebra, alg: &Dga) -> Result<DgaMap> {
        let gens = free.generators();
        let by_name: HashMap<&str, u32> = (0..self.model.len() as u32)
            .map(|g| (self.model.generators().name(g), g))
            .collect();
        let images = (0..free.dga().len())
            .map(|i| {
                let mut acc = SparseVec::unit(0);
                for &g in free.word(i) {
                    let own = by_name[gens.name(g)];
                    acc = alg.mul_vec(&acc, &self.alpha[own as usize]);
                    if acc.is_zero() {
                        break;
                    }
                }
                acc
            })
            .collect();
        DgaMap::new(free.dga(), alg, images)
    }
}
