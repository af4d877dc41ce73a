use super::{Dga, DgaMap};
use crate::error::Result;
use crate::ffla::{homology_from_maps, rank_kernel_image, HomologySlice, SparseMatrix, SparseVec};

impl Dga {
    /// Position of basis element `i` within its degree.
    pub fn local_index(&self, i: usize) -> usize {
        self.basis(self.degree(i)).binary_search(&i).expect("basis element of its own degree")
    }

    /// Basis coordinates in degree `n` to a global vector.
    pub fn globalize(&self, n: usize, v: &SparseVec) -> SparseVec {
        let b = self.basis(n);
        SparseVec::from_entries(self.field(), v.iter().map(|(i, c)| (b[i], c)))
    }

    /// A homogeneous global vector of degree `n` to basis coordinates.
    pub fn localize(&self, v: &SparseVec) -> SparseVec {
        SparseVec::from_entries(self.field(), v.iter().map(|(i, c)| (self.local_index(i), c)))
    }

    /// `d` from degree `n` to `n + 1` in basis coordinates; `None` at the top.
    pub fn degree_differential(&self, n: usize) -> Option<SparseMatrix> {
        if n >= self.max_degree() {
            return None;
        }
        let cols = self.basis(n).iter().map(|&i| self.localize(self.diff(i))).collect();
        Some(SparseMatrix::from_columns(self.field(), self.dim(n + 1), cols).expect("homogeneous differential"))
    }

    /// Cohomology in degree `n`. At the truncation degree every element is a
    /// cocycle, so only degrees below it are meaningful.
    pub fn cohomology(&self, n: usize) -> Result<HomologySlice> {
        let incoming = if n > 0 { self.degree_differential(n - 1) } else { None };
        let outgoing = self.degree_differential(n);
        homology_from_maps(self.field(), self.dim(n), incoming.as_ref(), outgoing.as_ref(), n)
    }

    pub fn cohomology_dims(&self, top: usize) -> Result<Vec<usize>> {
        (0..=top).map(|n| Ok(self.cohomology(n)?.dim())).collect()
    }
}

impl DgaMap {
    /// First degree `n <= top` where the induced map on cohomology is not an
    /// isomorphism.
    pub fn cohomology_iso_witness(&self, source: &Dga, target: &Dga, top: usize) -> Result<Option<usize>> {
        for n in 0..=top {
            let hs = source.cohomology(n)?;
            let ht = target.cohomology(n)?;
            if hs.dim() != ht.dim() {
                return Ok(Some(n));
            }
            let cols = hs
                .representatives()
                .iter()
                .map(|r| {
                    let img = self.apply(target, &source.globalize(n, r));
                    ht.reduce(&target.localize(&img))
                })
                .collect::<Result<Vec<_>>>()?;
            let m = SparseMatrix::from_columns(source.field(), ht.dim(), cols)?;
            if rank_kernel_image(&m).rank != hs.dim() {
                return Ok(Some(n));
            }
        }
        Ok(None)
    }
}
