use super::echelon::{rank_kernel_image, Echelon};
use super::field::Fp;
use super::sparse::{SparseMatrix, SparseVec};
use crate::error::{Error, Result};

/// A finite slice `C^0 -> C^1 -> ... -> C^top` of a cochain complex.
///
/// `differentials[n]` maps degree `n` to degree `n + 1`; it is present for
/// every `n < top`.
#[derive(Clone, Debug)]
pub struct ComplexSlice {
    field: Fp,
    dims: Vec<usize>,
    differentials: Vec<SparseMatrix>,
}

impl ComplexSlice {
    pub fn new(field: Fp, dims: Vec<usize>, differentials: Vec<SparseMatrix>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::Invalid("complex slice without degrees".into()));
        }
        if differentials.len() + 1 != dims.len() {
            return Err(Error::Invalid(format!(
                "{} degrees need {} differentials, got {}",
                dims.len(),
                dims.len() - 1,
                differentials.len()
            )));
        }
        for (n, d) in differentials.iter().enumerate() {
            if d.field() != field {
                return Err(Error::Field("mixed characteristics in complex".into()));
            }
            if d.cols() != dims[n] || d.rows() != dims[n + 1] {
                return Err(Error::Integrity(format!(
                    "differential in degree {n} has shape {}x{}, expected {}x{}",
                    d.rows(),
                    d.cols(),
                    dims[n + 1],
                    dims[n]
                )));
            }
        }
        Ok(ComplexSlice {
            field,
            dims,
            differentials,
        })
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dim(&self, n: usize) -> usize {
        self.dims.get(n).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn differential(&self, n: usize) -> Option<&SparseMatrix> {
        self.differentials.get(n)
    }

    /// Checks `d^{n} d^{n-1} = 0`, naming the first offending basis element of degree `n - 1`.
    pub fn check_square_zero(&self, n: usize) -> Result<()> {
        if n == 0 || n >= self.dims.len() - 1 {
            return Ok(());
        }
        let (lo, hi) = (&self.differentials[n - 1], &self.differentials[n]);
        for j in 0..lo.cols() {
            if !hi.apply(lo.column(j)).is_zero() {
                return Err(Error::Integrity(format!(
                    "d o d is nonzero on basis element {j} of degree {}",
                    n - 1
                )));
            }
        }
        Ok(())
    }
}

/// Cohomology of a complex slice in one degree.
#[derive(Clone, Debug)]
pub struct HomologySlice {
    degree: usize,
    representatives: Vec<SparseVec>,
    echelon: Echelon,
    cocycle_test: Option<SparseMatrix>,
}

impl HomologySlice {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    pub fn representatives(&self) -> &[SparseVec] {
        &self.representatives
    }

    /// Coordinates of the class of the cocycle `z` in the representative basis.
    pub fn reduce(&self, z: &SparseVec) -> Result<SparseVec> {
        if let Some(d) = &self.cocycle_test {
            if !d.apply(z).is_zero() {
                return Err(Error::Integrity(format!(
                    "element of degree {} is not a cocycle",
                    self.degree
                )));
            }
        }
        let red = self.echelon.reduce(z);
        if !red.residual.is_zero() {
            return Err(Error::Integrity(format!(
                "cocycle of degree {} is outside the span of cycles",
                self.degree
            )));
        }
        Ok(red.payload)
    }

    /// Whether the cocycle `z` is a coboundary.
    pub fn is_boundary(&self, z: &SparseVec) -> Result<bool> {
        Ok(self.reduce(z)?.is_zero())
    }
}

/// Cohomology in degree `n`. Needs `d^{n-1}` (zero when `n = 0`) and, if `n`
/// is not the top of the slice, `d^n`.
pub fn homology(slice: &ComplexSlice, n: usize) -> Result<HomologySlice> {
    if n > slice.top() {
        return Err(Error::Truncation(format!(
            "degree {n} is beyond the slice top {}",
            slice.top()
        )));
    }
    slice.check_square_zero(n)?;
    homology_from_maps(
        slice.field(),
        slice.dim(n),
        if n > 0 { slice.differential(n - 1) } else { None },
        slice.differential(n),
        n,
    )
}

/// Same as [`homology`] but taking the two maps directly.
pub fn homology_from_maps(
    field: Fp,
    dim: usize,
    incoming: Option<&SparseMatrix>,
    outgoing: Option<&SparseMatrix>,
    degree: usize,
) -> Result<HomologySlice> {
    let mut echelon = Echelon::new(field);
    if let Some(d) = incoming {
        if let Some(out) = outgoing {
            for j in 0..d.cols() {
                if !out.apply(d.column(j)).is_zero() {
                    return Err(Error::Integrity(format!(
                        "d o d is nonzero on basis element {j} of degree {}",
                        degree.saturating_sub(1)
                    )));
                }
            }
        }
        for col in d.columns() {
            let _ = echelon.insert(col, SparseVec::new());
        }
    }
    let image_rank = echelon.rank();
    let kernel: Vec<SparseVec> = match outgoing {
        Some(d) => rank_kernel_image(d).kernel_basis,
        None => (0..dim).map(SparseVec::unit).collect(),
    };
    let mut representatives = Vec::new();
    for k in &kernel {
        let r = echelon.residual(k);
        if let Some((_, c)) = r.leading() {
            let rep = r.scale(field, field.inv(c));
            echelon
                .insert(&rep, SparseVec::unit(representatives.len()))
                .expect("residual is independent");
            // the stored vector equals rep, so its payload is exactly the unit vector
            representatives.push(rep);
        }
    }
    debug_assert_eq!(representatives.len(), kernel.len() - image_rank);
    Ok(HomologySlice {
        degree,
        representatives,
        echelon,
        cocycle_test: outgoing.cloned(),
    })
}

/// Builds a chain section `s` of a degree-wise surjective chain map `f`.
///
/// `maps[n]` is `f` in degree `n`, from `source` to `target`, for `n = 0..=top`.
/// The result satisfies `f s = id` in every degree and `d s = s d` from degree
/// `n` to `n + 1` whenever the source differential in degree `n` is stored.
pub fn chain_section(
    source: &ComplexSlice,
    target: &ComplexSlice,
    maps: &[SparseMatrix],
) -> Result<Vec<SparseMatrix>> {
    let field = source.field();
    let top = maps.len().checked_sub(1).ok_or_else(|| Error::Invalid("no maps".into()))?;
    if top > source.top() || top > target.top() {
        return Err(Error::Invalid("maps extend beyond the complexes".into()));
    }
    for (n, f) in maps.iter().enumerate() {
        if f.cols() != source.dim(n) || f.rows() != target.dim(n) {
            return Err(Error::Integrity(format!("map in degree {n} has wrong shape")));
        }
        if n < top {
            let lhs = target.differential(n).unwrap().compose(f)?;
            let rhs = maps[n + 1].compose(source.differential(n).unwrap())?;
            if lhs != rhs {
                return Err(Error::Integrity(format!(
                    "map does not commute with differentials in degree {n}"
                )));
            }
        }
    }
    let mut sections: Vec<SparseMatrix> = Vec::with_capacity(top + 1);
    for n in 0..=top {
        let f = &maps[n];
        let f_data = rank_kernel_image(f);
        if f_data.rank != target.dim(n) {
            return Err(Error::Invalid(format!("map is not surjective in degree {n}")));
        }
        // payloads live in the source
        let mut ech = Echelon::new(field);
        if n > 0 {
            let d_t = target.differential(n - 1).unwrap();
            let d_s = source.differential(n - 1).unwrap();
            let prev = &sections[n - 1];
            for y in 0..target.dim(n - 1) {
                let img = d_s.apply(prev.column(y));
                if let Err(rest) = ech.insert(d_t.column(y), img) {
                    if !rest.is_zero() {
                        return Err(Error::Integrity(format!(
                            "section in degree {} does not send cycles to cycles",
                            n - 1
                        )));
                    }
                }
            }
        }
        let d_src = if n < source.top() { source.differential(n) } else { None };
        let lift_cycles = n < top && d_src.is_some();
        if lift_cycles {
            let d_src = d_src.unwrap();
            let d_tgt = target.differential(n).unwrap();
            // columns d(k) for k in ker f, payload k
            let mut kernel_ech = Echelon::new(field);
            for k in &f_data.kernel_basis {
                let _ = kernel_ech.insert(&d_src.apply(k), k.clone());
            }
            for z in rank_kernel_image(d_tgt).kernel_basis {
                if ech.residual(&z).is_zero() {
                    continue;
                }
                let x0 = f_data.solve(&z).expect("f is surjective");
                let obstruction = d_src.apply(&x0);
                let c = kernel_ech.solve(&obstruction).ok_or_else(|| {
                    Error::Truncation(format!(
                        "no cycle lift in degree {n}; the kernel of the map is not acyclic here"
                    ))
                })?;
                let _ = ech.insert(&z, x0.sub(field, &c));
            }
        }
        for i in 0..target.dim(n) {
            let e = SparseVec::unit(i);
            if ech.residual(&e).is_zero() {
                continue;
            }
            let x = f_data.solve(&e).expect("f is surjective");
            let _ = ech.insert(&e, x);
        }
        let columns = (0..target.dim(n))
            .map(|i| ech.solve(&SparseVec::unit(i)).expect("spanning"))
            .collect();
        sections.push(SparseMatrix::from_columns(field, source.dim(n), columns)?);
    }
    Ok(sections)
}
