use std::collections::HashMap;

use super::field::Fp;
use crate::error::{Error, Result};

/// Sparse vector over `F_p`: sorted `(index, coefficient)` pairs with no zero entries.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    entries: Vec<(usize, u32)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    pub fn unit(index: usize) -> Self {
        SparseVec {
            entries: vec![(index, 1)],
        }
    }

    pub fn single(index: usize, coeff: u32) -> Self {
        if coeff == 0 {
            SparseVec::new()
        } else {
            SparseVec {
                entries: vec![(index, coeff)],
            }
        }
    }

    /// Builds a vector from unsorted, possibly repeated entries.
    pub fn from_entries(field: Fp, entries: impl IntoIterator<Item = (usize, u32)>) -> Self {
        let mut acc = Accumulator::new(field);
        for (i, c) in entries {
            acc.add(i, c);
        }
        acc.finish()
    }

    /// Takes sorted, deduplicated, nonzero entries as is.
    pub fn from_sorted(entries: Vec<(usize, u32)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|e| e.1 != 0));
        SparseVec { entries }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.entries.iter().copied()
    }

    pub fn entries(&self) -> &[(usize, u32)] {
        &self.entries
    }

    pub fn get(&self, index: usize) -> u32 {
        match self.entries.binary_search_by_key(&index, |e| e.0) {
            Ok(k) => self.entries[k].1,
            Err(_) => 0,
        }
    }

    pub fn leading(&self) -> Option<(usize, u32)> {
        self.entries.first().copied()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|e| e.0)
    }

    pub fn scale(&self, field: Fp, c: u32) -> SparseVec {
        if c == 0 {
            return SparseVec::new();
        }
        SparseVec {
            entries: self.entries.iter().map(|&(i, a)| (i, field.mul(a, c))).collect(),
        }
    }

    /// `self + c * other`
    pub fn add_scaled(&self, field: Fp, other: &SparseVec, c: u32) -> SparseVec {
        if c == 0 || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (a, b) = (&self.entries, &other.entries);
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i]);
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push((b[j].0, field.mul(b[j].1, c)));
                j += 1;
            } else {
                let v = field.add(a[i].1, field.mul(b[j].1, c));
                if v != 0 {
                    out.push((a[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
        SparseVec { entries: out }
    }

    pub fn add(&self, field: Fp, other: &SparseVec) -> SparseVec {
        self.add_scaled(field, other, 1)
    }

    pub fn sub(&self, field: Fp, other: &SparseVec) -> SparseVec {
        self.add_scaled(field, other, field.neg(1 % field.p()))
    }

    pub fn dot(&self, field: Fp, other: &SparseVec) -> u32 {
        let mut s = 0;
        let (a, b) = (&self.entries, &other.entries);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    s = field.add(s, field.mul(a[i].1, b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        s
    }

    pub fn to_dense(&self, len: usize) -> Vec<u32> {
        let mut v = vec![0; len];
        for &(i, c) in &self.entries {
            v[i] = c;
        }
        v
    }

    pub fn from_dense(v: &[u32]) -> SparseVec {
        SparseVec {
            entries: v
                .iter()
                .enumerate()
                .filter(|e| *e.1 != 0)
                .map(|(i, &c)| (i, c))
                .collect(),
        }
    }
}

/// Hash-map accumulator for building sparse vectors term by term.
#[derive(Clone, Debug)]
pub struct Accumulator {
    field: Fp,
    map: HashMap<usize, u32>,
}

impl Accumulator {
    pub fn new(field: Fp) -> Self {
        Accumulator {
            field,
            map: HashMap::new(),
        }
    }

    #[inline]
    pub fn add(&mut self, index: usize, c: u32) {
        if c == 0 {
            return;
        }
        let e = self.map.entry(index).or_insert(0);
        *e = self.field.add(*e, c);
    }

    pub fn add_vec(&mut self, v: &SparseVec, c: u32) {
        for (i, a) in v.iter() {
            self.add(i, self.field.mul(a, c));
        }
    }

    pub fn finish(self) -> SparseVec {
        let mut entries: Vec<(usize, u32)> = self.map.into_iter().filter(|e| e.1 != 0).collect();
        entries.sort_unstable_by_key(|e| e.0);
        SparseVec { entries }
    }
}

/// Column-major sparse matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    field: Fp,
    rows: usize,
    columns: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zero(field: Fp, rows: usize, cols: usize) -> Self {
        SparseMatrix {
            field,
            rows,
            columns: vec![SparseVec::new(); cols],
        }
    }

    pub fn identity(field: Fp, n: usize) -> Self {
        SparseMatrix {
            field,
            rows: n,
            columns: (0..n).map(SparseVec::unit).collect(),
        }
    }

    pub fn from_columns(field: Fp, rows: usize, columns: Vec<SparseVec>) -> Result<Self> {
        for (j, c) in columns.iter().enumerate() {
            if let Some(m) = c.max_index() {
                if m >= rows {
                    return Err(Error::Integrity(format!(
                        "column {j} has entry in row {m} but the matrix has {rows} rows"
                    )));
                }
            }
            if c.iter().any(|(_, v)| v >= field.p()) {
                return Err(Error::Field(format!("column {j} has an unreduced entry")));
            }
        }
        Ok(SparseMatrix {
            field,
            rows,
            columns,
        })
    }

    /// Dense row-major input, mostly for tests and tiny examples.
    pub fn from_dense_rows(field: Fp, rows: &[Vec<i64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let columns = (0..ncols)
            .map(|j| {
                SparseVec::from_entries(field, (0..nrows).map(|i| (i, field.from_i64(rows[i][j]))))
            })
            .collect();
        SparseMatrix {
            field,
            rows: nrows,
            columns,
        }
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.columns
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.columns[j].get(i)
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(|c| c.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_zero())
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new(self.field);
        for (j, c) in v.iter() {
            acc.add_vec(&self.columns[j], c);
        }
        acc.finish()
    }

    /// `self * other`
    pub fn compose(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.field != other.field {
            return Err(Error::Field("mixed characteristics in product".into()));
        }
        if self.cols() != other.rows {
            return Err(Error::Integrity(format!(
                "shape mismatch {}x{} * {}x{}",
                self.rows,
                self.cols(),
                other.rows,
                other.cols()
            )));
        }
        Ok(SparseMatrix {
            field: self.field,
            rows: self.rows,
            columns: other.columns.iter().map(|c| self.apply(c)).collect(),
        })
    }

    pub fn sub(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.rows, other.rows);
        assert_eq!(self.cols(), other.cols());
        SparseMatrix {
            field: self.field,
            rows: self.rows,
            columns: self
                .columns
                .iter()
                .zip(&other.columns)
                .map(|(a, b)| a.sub(self.field, b))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn add_scaled_drops_zeros() {
        let f = Fp::new(3).unwrap();
        let a = SparseVec::from_entries(f, [(0, 1), (2, 2)]);
        let b = SparseVec::from_entries(f, [(0, 2), (1, 1)]);
        let s = a.add(f, &b);
        assert_eq!(s.entries(), &[(1, 1), (2, 2)]);
        assert!(a.sub(f, &a).is_zero());
    }

    #[test]
    fn compose_checks_shapes() {
        let f = Fp::new(5).unwrap();
        let m = SparseMatrix::from_dense_rows(f, &[vec![1, 2], vec![2, 4]]);
        let id = SparseMatrix::identity(f, 2);
        assert_eq!(m.compose(&id).unwrap(), m);
        assert!(m.compose(&SparseMatrix::identity(f, 3)).is_err());
        let g = SparseMatrix::identity(Fp::new(3).unwrap(), 2);
        assert!(matches!(m.compose(&g), Err(Error::Field(_))));
    }
}
