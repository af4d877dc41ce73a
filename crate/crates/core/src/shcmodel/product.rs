use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use super::hat::HatModel;
use super::mu::ShcStructure;
use crate::barcobar::FreeDgaModel;
use crate::dga::{tensor, DgaMap, FreeAlgebra, TensorDga};
use crate::error::{Error, Result};
use crate::ffla::{Accumulator, Eliminator, SparseVec};
use crate::hochschild::{
    map_chain, shuffle_terms, ChainProduct, HhClass, HochschildComplex, HomologyPresentation, Weight,
};

/// How a cycle of `C(TV ⊗ TV)` is first lifted to `C(T V̂)`, before the
/// correction by an element of `ker C(Ψ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SectionStrategy {
    /// `u ⊗ w -> u'w''`.
    CycleLift,
    /// `u ⊗ w -> (-1)^{|u||w|} w''u'` on the coefficient slot.
    Reversed,
}

/// Finite presentations of `TV`, `T V̂` and `TV ⊗ TV` with `μ` and `Ψ`.
pub struct ShcContext {
    structure: ShcStructure,
    tv: FreeAlgebra,
    hat: FreeAlgebra,
    tensor: TensorDga,
    mu: DgaMap,
    psi: DgaMap,
    hat_weights: Vec<Weight>,
}

impl ShcContext {
    /// Presentations up to degree `top`, which must not exceed the model's
    /// truncation.
    pub fn new(structure: ShcStructure, top: usize) -> Result<Self> {
        let hm = structure.hat();
        let tv = hm.base().algebra(top)?;
        let hat = hm.model()?.algebra(top)?;
        let tensor = tensor(tv.dga(), tv.dga())?;
        let mu = structure.mu_map(&hat, &tv)?;
        let psi = hm.psi_map(&hat, &tv, &tensor)?;
        let hat_weights = FreeDgaModel::word_weights(&hat, hm.weights());
        Ok(ShcContext {
            structure,
            tv,
            hat,
            tensor,
            mu,
            psi,
            hat_weights,
        })
    }

    pub fn structure(&self) -> &ShcStructure {
        &self.structure
    }

    pub fn hat_model(&self) -> &HatModel {
        self.structure.hat()
    }

    /// The presentation of `TV` on which Hochschild complexes for the shc
    /// product must be built.
    pub fn tv(&self) -> &FreeAlgebra {
        &self.tv
    }

    pub fn hat(&self) -> &FreeAlgebra {
        &self.hat
    }

    pub fn tensor(&self) -> &TensorDga {
        &self.tensor
    }

    pub fn mu(&self) -> &DgaMap {
        &self.mu
    }

    pub fn psi(&self) -> &DgaMap {
        &self.psi
    }

    pub fn hat_weights(&self) -> &[Weight] {
        &self.hat_weights
    }
}

/// Solves `D c = r` for `c` in the kernel of `C(Ψ)` within one piece.
struct CorrectionSolver {
    kernel: Vec<SparseVec>,
    eliminator: Eliminator,
}

/// `Φ_V = C(μ) ∘ s ∘ sh`, with `s` a section of `C(Ψ)` on cycles.
pub struct ShcProduct<'c, 'h> {
    ctx: &'c ShcContext,
    tv_hc: &'h HochschildComplex<'c>,
    hat_hc: HochschildComplex<'c>,
    strategy: SectionStrategy,
    // per hat element: the canonical element with the same Ψ-image and the
    // sign relating them, None when Ψ vanishes
    canonical: Vec<Option<(usize, bool)>>,
    solvers: Mutex<HashMap<(usize, Weight), Arc<CorrectionSolver>>>,
}

impl<'c, 'h> ShcProduct<'c, 'h> {
    /// `tv_hc` must be the unweighted complex of `ctx.tv()`.
    pub fn new(ctx: &'c ShcContext, tv_hc: &'h HochschildComplex<'c>, strategy: SectionStrategy) -> Result<Self> {
        if !std::ptr::eq(tv_hc.algebra(), ctx.tv.dga()) {
            return Err(Error::Invalid("Hochschild complex is not built on the context's TV".into()));
        }
        if (0..ctx.tv.dga().len()).any(|i| tv_hc.weight_of(i) != [0, 0]) {
            return Err(Error::Invalid("the shc product needs the unweighted complex of TV".into()));
        }
        let hat_hc = HochschildComplex::with_weights(ctx.hat.dga(), ctx.hat_weights.clone())?;
        let hm = ctx.hat_model();
        let canonical = (0..ctx.hat.dga().len())
            .map(|i| {
                hm.psi_word(ctx.hat.word(i)).map(|(odd, u, w)| {
                    let c = ctx.hat.index_of(&hm.lift_pair(&u, &w)).expect("same degree as the word");
                    (c, odd)
                })
            })
            .collect();
        Ok(ShcProduct {
            ctx,
            tv_hc,
            hat_hc,
            strategy,
            canonical,
            solvers: Mutex::new(HashMap::new()),
        })
    }

    pub fn hat_complex(&self) -> &HochschildComplex<'c> {
        &self.hat_hc
    }

    /// Index in `T V̂` of the lift of `u ⊗ w`, with its sign.
    fn lift_element(&self, u: usize, w: usize, reversed: bool) -> (usize, bool) {
        let hm = self.ctx.hat_model();
        let (uw, ww) = (self.ctx.tv.word(u), self.ctx.tv.word(w));
        if reversed && !uw.is_empty() && !ww.is_empty() {
            let word: Vec<u32> = ww.iter().map(|&x| hm.right(x)).chain(uw.iter().map(|&x| hm.left(x))).collect();
            let a = self.ctx.tv.dga();
            let odd = (a.degree(u) * a.degree(w)) % 2 == 1;
            (self.ctx.hat.index_of(&word).expect("within the truncation"), odd)
        } else {
            (self.ctx.hat.index_of(&hm.lift_pair(uw, ww)).expect("within the truncation"), false)
        }
    }

    /// `s(sh(x ⊗ y))` before correction, split by weight of `T V̂`.
    fn lifted_shuffle(&self, x: &HhClass, y: &HhClass) -> HashMap<Weight, Accumulator> {
        let a = self.ctx.tv.dga();
        let f = a.field();
        let n = x.degree + y.degree;
        let px = self.tv_hc.piece(x.degree, x.weight);
        let py = self.tv_hc.piece(y.degree, y.weight);
        let reversed = self.strategy == SectionStrategy::Reversed;
        let mut parts: HashMap<Weight, Accumulator> = HashMap::new();
        let mut key = Vec::new();
        for (i, ci) in x.rep.iter() {
            for (j, cj) in y.rep.iter() {
                let c = f.mul(ci, cj);
                shuffle_terms(a, px.elem(i), a, py.elem(j), |s, (a0, b0), letters| {
                    key.clear();
                    let (h, odd) = self.lift_element(a0 as usize, b0 as usize, reversed);
                    key.push(h as u32);
                    for &(p, q) in letters {
                        key.push(self.lift_element(p as usize, q as usize, false).0 as u32);
                    }
                    let w = self.hat_hc.key_weight(&key);
                    let piece = self.hat_hc.piece(n, w);
                    let k = piece.index_of(&key).expect("enumerated");
                    parts
                        .entry(w)
                        .or_insert_with(|| Accumulator::new(f))
                        .add(k, f.mul(f.mul(s, c), f.sign(odd)));
                });
            }
        }
        parts
    }

    fn solver(&self, n: usize, w: Weight) -> Result<Arc<CorrectionSolver>> {
        if let Some(s) = self.solvers.lock().unwrap().get(&(n, w)) {
            return Ok(s.clone());
        }
        let f = self.ctx.tv.dga().field();
        let piece = self.hat_hc.piece(n, w);
        let mut kernel = Vec::new();
        let mut canon_key = Vec::new();
        for (i, key) in piece.elems().iter().enumerate() {
            canon_key.clear();
            let mut odd = false;
            let mut vanishes = false;
            for &e in key {
                match self.canonical[e as usize] {
                    None => {
                        vanishes = true;
                        break;
                    }
                    Some((c, s)) => {
                        canon_key.push(c as u32);
                        odd ^= s;
                    }
                }
            }
            if vanishes {
                kernel.push(SparseVec::unit(i));
            } else if canon_key != *key {
                let j = piece.index_of(&canon_key).expect("same weight and degree");
                kernel.push(SparseVec::from_entries(f, [(i, 1), (j, f.neg(f.sign(odd)))]));
            }
        }
        // sparsest images first keeps the fill-in down
        let mut images = kernel
            .iter()
            .enumerate()
            .map(|(j, k)| Ok((j, self.hat_hc.differential_vec(n, w, k)?)))
            .collect::<Result<Vec<_>>>()?;
        images.sort_by_key(|(_, d)| d.len());
        let mut eliminator = Eliminator::new();
        for (j, dk) in &images {
            eliminator.insert(f, *j, dk);
        }
        let s = Arc::new(CorrectionSolver { kernel, eliminator });
        self.solvers.lock().unwrap().insert((n, w), s.clone());
        Ok(s)
    }

    /// A cycle of `C(T V̂)` in the piece `(n, w)` over the cycle `z0` modulo
    /// `ker C(Ψ)`.
    pub fn correct(&self, n: usize, w: Weight, z0: &SparseVec) -> Result<SparseVec> {
        let f = self.ctx.tv.dga().field();
        let r = self.hat_hc.differential_vec(n, w, z0)?;
        if r.is_zero() {
            return Ok(z0.clone());
        }
        let solver = self.solver(n, w)?;
        let coeffs = solver.eliminator.solve(f, &r).ok_or_else(|| {
            Error::Truncation(format!("no cycle lift through Ψ in degree {n}; the kernel is not acyclic here"))
        })?;
        let mut z = Accumulator::new(f);
        z.add_vec(z0, 1);
        for (j, c) in coeffs.iter() {
            z.add_vec(&solver.kernel[j], f.neg(c));
        }
        Ok(z.finish())
    }

    /// The corrected lift `s(sh(x ⊗ y))`, by weight.
    pub fn section_of_shuffle(&self, x: &HhClass, y: &HhClass) -> Result<Vec<(Weight, SparseVec)>> {
        let n = x.degree + y.degree;
        let mut parts: Vec<(Weight, SparseVec)> = self
            .lifted_shuffle(x, y)
            .into_iter()
            .map(|(w, acc)| (w, acc.finish()))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        parts.sort_by_key(|p| p.0);
        parts
            .into_iter()
            .map(|(w, z0)| Ok((w, self.correct(n, w, &z0)?)))
            .collect()
    }
}

impl ChainProduct for ShcProduct<'_, '_> {
    fn product(&self, x: &HhClass, y: &HhClass) -> Result<SparseVec> {
        let f = self.ctx.tv.dga().field();
        let n = x.degree + y.degree;
        let mut acc = Accumulator::new(f);
        for (w, z) in self.section_of_shuffle(x, y)? {
            let piece = self.hat_hc.piece(n, w);
            acc.add_vec(&map_chain(&self.ctx.mu, &piece, self.tv_hc, [0, 0], &z)?, 1);
        }
        Ok(acc.finish())
    }
}

/// `HH(TV)` with the product `Φ_V`, all products up to `top` filled.
pub fn hh_product_shc<'c>(
    ctx: &'c ShcContext,
    tv_hc: &HochschildComplex<'c>,
    top: usize,
    strategy: SectionStrategy,
) -> Result<HomologyPresentation> {
    let pres = HomologyPresentation::new(tv_hc, top)?;
    let engine = ShcProduct::new(ctx, tv_hc, strategy)?;
    pres.fill_products(tv_hc, &engine)?;
    Ok(pres)
}
