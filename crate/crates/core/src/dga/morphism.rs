use super::Dga;
use crate::error::{Error, Result};
use crate::ffla::{Accumulator, SparseVec};

/// A linear map between presentations given on basis elements, meant to be a
/// morphism of augmented DG-algebras.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgaMap {
    images: Vec<SparseVec>,
}

impl DgaMap {
    pub fn new(source: &Dga, target: &Dga, images: Vec<SparseVec>) -> Result<Self> {
        if source.field() != target.field() {
            return Err(Error::Field("map between algebras over different fields".into()));
        }
        if images.len() != source.len() {
            return Err(Error::Invalid(format!(
                "map gives {} images for {} basis elements",
                images.len(),
                source.len()
            )));
        }
        for (i, v) in images.iter().enumerate() {
            if v.iter().any(|(j, _)| j >= target.len() || target.degree(j) != source.degree(i)) {
                return Err(Error::Invalid(format!(
                    "image of {} is not homogeneous of degree {}",
                    source.label(i),
                    source.degree(i)
                )));
            }
        }
        if images[0] != SparseVec::unit(0) {
            return Err(Error::Invalid("map does not preserve the unit".into()));
        }
        Ok(DgaMap { images })
    }

    pub fn image(&self, i: usize) -> &SparseVec {
        &self.images[i]
    }

    pub fn apply(&self, target: &Dga, v: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new(target.field());
        for (i, c) in v.iter() {
            acc.add_vec(&self.images[i], c);
        }
        acc.finish()
    }

    pub fn compose(&self, after: &DgaMap, target: &Dga) -> DgaMap {
        DgaMap {
            images: self.images.iter().map(|v| after.apply(target, v)).collect(),
        }
    }

    /// First basis element on which `f d != d f`, within the truncation of both.
    pub fn chain_map_witness(&self, source: &Dga, target: &Dga) -> Option<usize> {
        let top = source.max_degree().min(target.max_degree());
        (0..source.len()).find(|&i| {
            source.degree(i) < top
                && self.apply(target, source.diff(i)) != target.diff_vec(&self.images[i])
        })
    }

    /// First basis pair on which `f(ab) != f(a) f(b)`.
    pub fn multiplicativity_witness(&self, source: &Dga, target: &Dga) -> Option<(usize, usize)> {
        let top = source.max_degree().min(target.max_degree());
        for a in 1..source.len() {
            for b in 1..source.len() {
                if source.degree(a) + source.degree(b) > top {
                    continue;
                }
                let lhs = self.apply(target, &source.mul(a, b));
                let rhs = target.mul_vec(&self.images[a], &self.images[b]);
                if lhs != rhs {
                    return Some((a, b));
                }
            }
        }
        None
    }
}
