use std::collections::HashMap;

use super::hat::{HatGen, HatModel, PolySolver};
use crate::barcobar::{shuffle_words, CobarBar, FreeDgaModel, Minimalization};
use crate::dga::{enumerate_words, substitute, Dga, DgaMap, FreeAlgebra, NcPoly};
use crate::error::{Error, Result};

/// The hat model together with `μ: T V̂ -> TV`, a DGA map with `μ(v') = v`,
/// `μ(w'') = w` and `μ(v#w) = μ0(v, w) + y`, `y` of word length at least two.
#[derive(Clone, Debug)]
pub struct ShcStructure {
    hat: HatModel,
    mu: Vec<NcPoly>,
}

/// Linear part `μ0: V ⊗ V -> V` of `μ`, keyed by pairs of generators of `V`.
/// Missing pairs are zero.
pub type Mu0 = HashMap<(u32, u32), NcPoly>;

/// Extends `μ0` to a DGA map on `T V̂` by solving `d_V y = μ(d̂(v#w)) - d_V μ0`
/// in increasing degree. Fails with [`Error::InconsistentMu`] when `μ0` admits
/// no such extension.
pub fn lift_mu(hat: HatModel, mu0: &Mu0) -> Result<ShcStructure> {
    let base = hat.base();
    let f = hat.field();
    let bg = base.generators();
    let top = hat.max_degree();
    for (&(v, w), p) in mu0 {
        let n = bg.degree(v) + bg.degree(w) - 1;
        if p.terms().any(|(x, _)| x.len() != 1 || bg.degree(x[0]) != n) {
            return Err(Error::Invalid(format!(
                "mu0({}, {}) must be a combination of generators of degree {n}",
                bg.name(v),
                bg.name(w)
            )));
        }
    }
    let words = enumerate_words(bg, top);
    let degs = bg.degrees().to_vec();
    let keep = |w: &Vec<u32>| crate::dga::word_degree(&degs, w) <= top;
    let hg = hat.generators();
    let mut mu: Vec<NcPoly> = Vec::with_capacity(hg.len());
    let mut solvers: HashMap<usize, PolySolver> = HashMap::new();
    for g in 0..hg.len() as u32 {
        let value = match hat.kind(g) {
            HatGen::Left(v) | HatGen::Right(v) => NcPoly::generator(v),
            HatGen::Pair(v, w) => {
                let n = hg.degree(g);
                let mut value = mu0.get(&(v, w)).cloned().unwrap_or_else(NcPoly::zero);
                if n + 1 <= top {
                    let mut rhs = substitute(f, &mu, hat.diff(g), keep);
                    rhs.add_scaled(f, &base.apply(&value), f.neg(1));
                    if !rhs.is_zero() {
                        let solver = solvers.entry(n).or_insert_with(|| {
                            let basis = words[n].iter().filter(|w| w.len() >= 2).map(|w| NcPoly::word(w.clone())).collect();
                            PolySolver::new(f, basis, |p| base.apply(p))
                        });
                        let y = solver.solve(&rhs).ok_or_else(|| {
                            Error::InconsistentMu(format!(
                                "mu({}) has no extension: mu(d({})) - d(mu0) = {} is not a boundary",
                                hg.name(g),
                                hg.name(g),
                                base.format_poly(&rhs)
                            ))
                        })?;
                        value.add_scaled(f, &y, 1);
                    }
                }
                value
            }
        };
        mu.push(value);
    }
    Ok(ShcStructure { hat, mu })
}

impl ShcStructure {
    pub fn hat(&self) -> &HatModel {
        &self.hat
    }

    /// `μ` on generator `g` of `T V̂`.
    pub fn mu(&self, g: u32) -> &NcPoly {
        &self.mu[g as usize]
    }

    /// First generator `g` with `μ(d̂g) != d_V μ(g)`, among generators with
    /// `|g| < max_degree`.
    pub fn chain_map_witness(&self) -> Option<u32> {
        let f = self.hat.field();
        let base = self.hat.base();
        let top = self.hat.max_degree();
        let degs = base.generators().degrees().to_vec();
        (0..self.mu.len() as u32).find(|&g| {
            if self.hat.generators().degree(g) + 1 > top {
                return false;
            }
            let lhs = substitute(f, &self.mu, self.hat.diff(g), |w| crate::dga::word_degree(&degs, w) <= top);
            lhs != base.apply(&self.mu[g as usize])
        })
    }

    /// `μ` between presentations of `T V̂` and `TV`.
    pub fn mu_map(&self, hat: &FreeAlgebra, tv: &FreeAlgebra) -> Result<DgaMap> {
        let f = self.hat.field();
        let top = tv.dga().max_degree();
        let degs = tv.generators().degrees().to_vec();
        let images = (0..hat.dga().len())
            .map(|i| {
                let img = substitute(f, &self.mu, &NcPoly::word(hat.word(i).clone()), |w| {
                    crate::dga::word_degree(&degs, w) <= top
                });
                tv.to_vec(&img)
            })
            .collect();
        DgaMap::new(hat.dga(), tv.dga(), images)
    }
}

/// `μ0(v#w) = (-1)^{|v|+1} s^{-1}(sv * sw)` for a minimal cobar model of a
/// commutative algebra, where `*` is the shuffle product of bar words and
/// generators stand for bar cycles.
pub fn mu0_from_shuffles(alg: &Dga, cobar: &CobarBar) -> Result<Mu0> {
    let model = cobar.model();
    if !model.is_minimal() {
        return Err(Error::Invalid(
            "the cobar model is not minimal; minimalize it and use mu0_through_minimalization".into(),
        ));
    }
    let n = model.len() as u32;
    let identity: Vec<NcPoly> = (0..n).map(NcPoly::generator).collect();
    shuffle_mu0(alg, cobar, model, &identity, &identity)
}

/// The same linear part on the minimal model `min.minimal` of
/// `cobar.model()`: `sv` is the bar cycle `min.cycles[v]`, and the shuffle is
/// carried back by the linear part of `p_V`, which kills bar boundaries.
pub fn mu0_through_minimalization(alg: &Dga, cobar: &CobarBar, min: &Minimalization) -> Result<Mu0> {
    shuffle_mu0(alg, cobar, &min.minimal, &min.cycles, &min.p)
}

fn shuffle_mu0(alg: &Dga, cobar: &CobarBar, model: &FreeDgaModel, cycles: &[NcPoly], p: &[NcPoly]) -> Result<Mu0> {
    if let Some((a, b)) = alg.commutativity_witness() {
        return Err(Error::NotCommutative(format!("{} and {}", alg.label(a), alg.label(b))));
    }
    let f = alg.field();
    let ugens = cobar.model().generators();
    let by_word: HashMap<&[u32], u32> = (0..ugens.len() as u32).map(|g| (cobar.word(g), g)).collect();
    let gens = model.generators();
    let mut mu0 = Mu0::new();
    for v in 0..gens.len() as u32 {
        for w in 0..gens.len() as u32 {
            if gens.degree(v) + gens.degree(w) - 1 > model.max_degree() {
                continue;
            }
            let sign = f.sign(gens.degree(v) % 2 == 0);
            let mut product = NcPoly::zero();
            for (x, cx) in cycles[v as usize].terms() {
                for (y, cy) in cycles[w as usize].terms() {
                    let c = f.mul(sign, f.mul(cx, cy));
                    shuffle_words(alg, cobar.word(x[0]), cobar.word(y[0]), |word, odd| {
                        if let Some(&g) = by_word.get(word) {
                            product.add_term(f, vec![g], f.mul(c, f.sign(odd)));
                        }
                    });
                }
            }
            let mut value = NcPoly::zero();
            for (u, c) in product.terms() {
                value.add_scaled(f, &p[u[0] as usize].length_part(1), c);
            }
            if !value.is_zero() {
                mu0.insert((v, w), value);
            }
        }
    }
    Ok(mu0)
}
