use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::ffla::{Accumulator, Fp, SparseVec};

/// An augmented cochain algebra of finite type, truncated above `max_degree`.
///
/// Basis element 0 is the unit. Products of non-unit basis elements are kept
/// in a sparse table; missing pairs multiply to zero, as does anything whose
/// degree exceeds the truncation. The augmentation is the coefficient of the
/// unit.
#[derive(Clone, Debug)]
pub struct Dga {
    field: Fp,
    max_degree: usize,
    labels: Vec<String>,
    degrees: Vec<usize>,
    by_degree: Vec<Vec<usize>>,
    label_index: HashMap<String, usize>,
    products: HashMap<(usize, usize), SparseVec>,
    differential: Vec<SparseVec>,
}

impl Dga {
    /// Assembles a presentation. Only structural checks happen here (indices,
    /// residues, unit placement); the algebra axioms are checked by
    /// [`validate`](super::validate).
    pub fn new(
        field: Fp,
        max_degree: usize,
        basis: Vec<(String, usize)>,
        products: HashMap<(usize, usize), SparseVec>,
        differential: Vec<SparseVec>,
    ) -> Result<Self> {
        if basis.is_empty() || basis[0].1 != 0 {
            return Err(Error::Invalid("basis must start with the unit in degree 0".into()));
        }
        if differential.len() != basis.len() {
            return Err(Error::Invalid("differential must be given on every basis element".into()));
        }
        let n = basis.len();
        let mut by_degree = vec![Vec::new(); max_degree + 1];
        let mut label_index = HashMap::new();
        let mut labels = Vec::with_capacity(n);
        let mut degrees = Vec::with_capacity(n);
        for (i, (label, deg)) in basis.into_iter().enumerate() {
            if deg > max_degree {
                return Err(Error::Invalid(format!(
                    "basis element {label} of degree {deg} exceeds truncation {max_degree}"
                )));
            }
            if label_index.insert(label.clone(), i).is_some() {
                return Err(Error::Invalid(format!("duplicate basis label {label}")));
            }
            by_degree[deg].push(i);
            labels.push(label);
            degrees.push(deg);
        }
        let in_range = |v: &SparseVec| v.max_index().is_none_or(|m| m < n) && v.iter().all(|e| e.1 < field.p());
        for (&(a, b), v) in &products {
            if a == 0 || b == 0 || a >= n || b >= n {
                return Err(Error::Invalid(format!("product table entry ({a}, {b}) is not a pair of non-unit basis elements")));
            }
            if !in_range(v) {
                return Err(Error::Invalid(format!("product {a}*{b} refers to unknown basis elements")));
            }
        }
        if !differential.iter().all(in_range) {
            return Err(Error::Invalid("differential refers to unknown basis elements".into()));
        }
        let products = products.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        Ok(Dga {
            field,
            max_degree,
            labels,
            degrees,
            by_degree,
            label_index,
            products,
            differential,
        })
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn unit(&self) -> usize {
        0
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.label_index.get(label).copied()
    }

    pub fn degree(&self, i: usize) -> usize {
        self.degrees[i]
    }

    pub fn basis(&self, degree: usize) -> &[usize] {
        self.by_degree.get(degree).map_or(&[], |v| v.as_slice())
    }

    pub fn dim(&self, degree: usize) -> usize {
        self.basis(degree).len()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.by_degree.iter().map(|v| v.len()).collect()
    }

    /// Degree 0 is spanned by the unit.
    pub fn is_connected(&self) -> bool {
        self.basis(0) == [0]
    }

    /// Connected with nothing in degree 1.
    pub fn is_simply_connected(&self) -> bool {
        self.is_connected() && self.dim(1) == 0
    }

    pub fn product_table(&self) -> &HashMap<(usize, usize), SparseVec> {
        &self.products
    }

    /// Product of two basis elements.
    pub fn mul(&self, a: usize, b: usize) -> SparseVec {
        if a == 0 {
            return SparseVec::unit(b);
        }
        if b == 0 {
            return SparseVec::unit(a);
        }
        if self.degrees[a] + self.degrees[b] > self.max_degree {
            return SparseVec::new();
        }
        self.products.get(&(a, b)).cloned().unwrap_or_default()
    }

    pub fn mul_vec(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new(self.field);
        for (a, ca) in x.iter() {
            for (b, cb) in y.iter() {
                acc.add_vec(&self.mul(a, b), self.field.mul(ca, cb));
            }
        }
        acc.finish()
    }

    pub fn diff(&self, a: usize) -> &SparseVec {
        &self.differential[a]
    }

    pub fn diff_vec(&self, x: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new(self.field);
        for (a, c) in x.iter() {
            acc.add_vec(&self.differential[a], c);
        }
        acc.finish()
    }

    pub fn augmentation(&self, x: &SparseVec) -> u32 {
        x.get(0)
    }

    /// `ab = (-1)^{|a||b|} ba` on all basis pairs within the truncation.
    pub fn is_graded_commutative(&self) -> bool {
        self.commutativity_witness().is_none()
    }

    pub fn commutativity_witness(&self) -> Option<(usize, usize)> {
        let f = self.field;
        let n = self.len();
        for a in 1..n {
            for b in (a + 1)..n {
                if self.degrees[a] + self.degrees[b] > self.max_degree {
                    continue;
                }
                let ab = self.mul(a, b);
                let ba = self.mul(b, a);
                let s = f.sign(self.degrees[a] * self.degrees[b] % 2 == 1);
                if ab != ba.scale(f, s) {
                    return Some((a, b));
                }
            }
            if 2 * self.degrees[a] <= self.max_degree && self.degrees[a] % 2 == 1 && f.p() != 2 {
                if !self.mul(a, a).is_zero() {
                    return Some((a, a));
                }
            }
        }
        None
    }

    /// Renders a vector as `c*label + ...`.
    pub fn format_vec(&self, v: &SparseVec) -> String {
        format_combination(self.field, v, |i| self.labels[i].clone())
    }

    /// Same algebra with a smaller truncation.
    pub fn truncate(&self, max_degree: usize) -> Dga {
        if max_degree >= self.max_degree {
            return self.clone();
        }
        let keep: Vec<usize> = (0..self.len()).filter(|&i| self.degrees[i] <= max_degree).collect();
        let mut new_index = vec![usize::MAX; self.len()];
        for (k, &i) in keep.iter().enumerate() {
            new_index[i] = k;
        }
        let remap = |v: &SparseVec| {
            SparseVec::from_entries(
                self.field,
                v.iter().filter(|e| new_index[e.0] != usize::MAX).map(|(i, c)| (new_index[i], c)),
            )
        };
        let basis = keep.iter().map(|&i| (self.labels[i].clone(), self.degrees[i])).collect();
        let products = self
            .products
            .iter()
            .filter(|((a, b), _)| self.degrees[*a] + self.degrees[*b] <= max_degree)
            .map(|(&(a, b), v)| ((new_index[a], new_index[b]), remap(v)))
            .collect();
        let differential = keep.iter().map(|&i| remap(&self.differential[i])).collect();
        Dga::new(self.field, max_degree, basis, products, differential).expect("truncation of a valid presentation")
    }
}

pub fn format_combination(field: Fp, v: &SparseVec, name: impl Fn(usize) -> String) -> String {
    if v.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (i, c)) in v.iter().enumerate() {
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
        out.push_str(&name(i));
    }
    out
}

impl fmt::Display for Dga {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FIELD {}", self.field.p())?;
        writeln!(f, "TRUNCATE {}", self.max_degree)?;
        for (d, idx) in self.by_degree.iter().enumerate() {
            if !idx.is_empty() {
                let names: Vec<&str> = idx.iter().map(|&i| self.labels[i].as_str()).collect();
                writeln!(f, "BASIS {d} {}", names.join(" "))?;
            }
        }
        let mut pairs: Vec<_> = self.products.iter().collect();
        pairs.sort_by_key(|e| *e.0);
        for ((a, b), v) in pairs {
            writeln!(f, "PRODUCT {} {} = {}", self.labels[*a], self.labels[*b], self.format_vec(v))?;
        }
        for (i, v) in self.differential.iter().enumerate() {
            if !v.is_zero() {
                writeln!(f, "DIFF {} = {}", self.labels[i], self.format_vec(v))?;
            }
        }
        Ok(())
    }
}
