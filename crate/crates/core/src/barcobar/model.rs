use crate::dga::{derivation_on_poly, FreeAlgebra, Generators, NcPoly};
use crate::error::{Error, Result};
use crate::ffla::Fp;
use crate::hochschild::Weight;

/// A free DG-algebra `(TU, D)` given by generators and `D` on generators,
/// valid up to `max_degree`. `D = D1 + D2` splits into the linear part and
/// the part of word length at least two.
#[derive(Clone, Debug)]
pub struct FreeDgaModel {
    field: Fp,
    gens: Generators,
    diff: Vec<NcPoly>,
    max_degree: usize,
}

impl FreeDgaModel {
    pub fn new(field: Fp, gens: Generators, diff: Vec<NcPoly>, max_degree: usize) -> Result<Self> {
        if diff.len() != gens.len() {
            return Err(Error::Invalid("differential must be given on every generator".into()));
        }
        for g in 0..gens.len() as u32 {
            let d = gens.degree(g);
            if d < 2 {
                return Err(Error::NotConnected(format!(
                    "generator {} has degree {d}; free models need degrees >= 2",
                    gens.name(g)
                )));
            }
            if let Some((w, _)) = diff[g as usize].terms().find(|(w, _)| w.is_empty() || gens.word_degree(w) != d + 1) {
                return Err(Error::Invalid(format!(
                    "differential of {} has a term {} of the wrong degree",
                    gens.name(g),
                    crate::dga::word_label(gens.names(), w)
                )));
            }
        }
        Ok(FreeDgaModel {
            field,
            gens,
            diff,
            max_degree,
        })
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn generators(&self) -> &Generators {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn diff(&self, g: u32) -> &NcPoly {
        &self.diff[g as usize]
    }

    pub fn differential(&self) -> &[NcPoly] {
        &self.diff
    }

    pub fn linear_part(&self, g: u32) -> NcPoly {
        self.diff[g as usize].length_part(1)
    }

    pub fn higher_part(&self, g: u32) -> NcPoly {
        let mut p = self.diff[g as usize].clone();
        p.add_scaled(self.field, &self.linear_part(g), self.field.neg(1));
        p
    }

    /// Zero linear part.
    pub fn is_minimal(&self) -> bool {
        (0..self.len() as u32).all(|g| self.linear_part(g).is_zero())
    }

    /// `D` extended as a derivation.
    pub fn apply(&self, p: &NcPoly) -> NcPoly {
        derivation_on_poly(self.field, &self.gens, &self.diff, p)
    }

    /// First generator with `D²g != 0`, among generators of degree at most
    /// `max_degree - 2`. Above that, `D²g` involves generators beyond the
    /// truncation.
    pub fn square_zero_witness(&self) -> Option<u32> {
        (0..self.len() as u32).find(|&g| {
            self.gens.degree(g) + 2 <= self.max_degree && !self.apply(&self.apply(&NcPoly::generator(g))).is_zero()
        })
    }

    /// Finite presentation of `TU` truncated at `top <= max_degree`.
    pub fn algebra(&self, top: usize) -> Result<FreeAlgebra> {
        if top > self.max_degree {
            return Err(Error::Truncation(format!(
                "model holds generators up to degree {}, {top} requested",
                self.max_degree
            )));
        }
        let mut gens = Generators::new();
        let mut keep = Vec::new();
        let mut new_id = vec![u32::MAX; self.len()];
        for g in 0..self.len() as u32 {
            if self.gens.degree(g) <= top {
                new_id[g as usize] = gens.push(self.gens.name(g), self.gens.degree(g));
                keep.push(g);
            }
        }
        let rename = |p: &NcPoly| {
            let mut q = NcPoly::zero();
            for (w, c) in p.terms() {
                q.add_term(self.field, w.iter().map(|&g| new_id[g as usize]).collect(), c);
            }
            q
        };
        let diff = keep.iter().map(|&g| rename(&self.diff[g as usize])).collect();
        FreeAlgebra::new(self.field, gens, diff, top)
    }

    /// Weights `(|g| - 1, 0)` per generator when every `Dg` is quadratic; these
    /// are preserved by `D` and split Hochschild complexes into small pieces.
    pub fn quadratic_weights(&self) -> Option<Vec<Weight>> {
        let quadratic = self.diff.iter().all(|p| p.terms().all(|(w, _)| w.len() == 2));
        quadratic.then(|| (0..self.len() as u32).map(|g| [self.gens.degree(g) as u32 - 1, 0]).collect())
    }

    /// Weights on the basis of `self.algebra(top)`, summing over letters.
    pub fn word_weights(alg: &FreeAlgebra, gen_weights: &[Weight]) -> Vec<Weight> {
        (0..alg.dga().len())
            .map(|i| {
                alg.word(i).iter().fold([0, 0], |acc, &g| {
                    let w = gen_weights[g as usize];
                    [acc[0] + w[0], acc[1] + w[1]]
                })
            })
            .collect()
    }

    pub fn format_poly(&self, p: &NcPoly) -> String {
        p.format(self.field, self.gens.names())
    }
}
