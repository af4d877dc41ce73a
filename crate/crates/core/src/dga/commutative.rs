use std::collections::{BTreeMap, HashMap};

use super::Dga;
use crate::error::{Error, Result};
use crate::ffla::{Echelon, Fp, SparseVec};

/// Exponent vector over the generators, in declaration order.
pub type Monomial = Vec<u32>;

/// Graded-commutative polynomial.
pub type CPoly = BTreeMap<Monomial, u32>;

/// Free graded-commutative algebra on generators, modulo relations, with a
/// differential given on generators.
#[derive(Clone, Debug, Default)]
pub struct CommutativePresentation {
    pub names: Vec<String>,
    pub degrees: Vec<usize>,
    pub relations: Vec<CPoly>,
    pub differential: Vec<CPoly>,
    /// Impose `y² = 0` on odd generators in characteristic 2, where graded
    /// commutativity alone does not force it. Odd characteristic always has it.
    pub odd_squares_vanish: bool,
}

impl CommutativePresentation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn generator(&mut self, name: &str, degree: usize) -> usize {
        self.names.push(name.to_string());
        self.degrees.push(degree);
        self.differential.push(CPoly::new());
        let n = self.names.len();
        for p in self.relations.iter_mut().chain(self.differential.iter_mut()) {
            *p = pad(std::mem::take(p), n);
        }
        n - 1
    }

    /// Monomial with the given `(generator, exponent)` factors.
    pub fn monomial(&self, factors: &[(usize, u32)]) -> Monomial {
        let mut m = vec![0; self.names.len()];
        for &(g, e) in factors {
            m[g] += e;
        }
        m
    }

    pub fn set_diff(&mut self, g: usize, p: CPoly) {
        self.differential[g] = pad(p, self.names.len());
    }

    pub fn add_relation(&mut self, p: CPoly) {
        self.relations.push(pad(p, self.names.len()));
    }

    fn mono_degree(&self, m: &Monomial) -> usize {
        m.iter().zip(&self.degrees).map(|(&e, &d)| e as usize * d).sum()
    }

    /// Product of monomials with the Koszul sign of sorting factors into
    /// generator order. Returns `None` when the product vanishes because an
    /// odd generator squares to zero.
    fn mono_mul(&self, field: Fp, a: &Monomial, b: &Monomial) -> Option<(Monomial, u32)> {
        let n = a.len();
        let mut odd = false;
        // moving b's factors of generator j past a's factors of generators i > j
        for j in 0..n {
            if b[j] == 0 || self.degrees[j] % 2 == 0 {
                continue;
            }
            let passed: u32 = (j + 1..n).filter(|&i| self.degrees[i] % 2 == 1).map(|i| a[i]).sum();
            if (b[j] * passed) % 2 == 1 {
                odd = !odd;
            }
        }
        let m: Monomial = a.iter().zip(b).map(|(x, y)| x + y).collect();
        if self.exterior(field) && (0..n).any(|i| self.degrees[i] % 2 == 1 && m[i] > 1) {
            return None;
        }
        Some((m, field.sign(odd)))
    }

    fn exterior(&self, field: Fp) -> bool {
        field.p() != 2 || self.odd_squares_vanish
    }

    /// Product of two polynomials in the free graded-commutative algebra.
    pub fn poly_mul(&self, field: Fp, x: &CPoly, y: &CPoly) -> CPoly {
        let mut out = CPoly::new();
        for (a, ca) in x {
            for (b, cb) in y {
                if let Some((m, s)) = self.mono_mul(field, a, b) {
                    add_term(field, &mut out, m, field.mul(field.mul(*ca, *cb), s));
                }
            }
        }
        out
    }

    /// `d` of a monomial, by the Leibniz rule on the first nonzero factor.
    fn mono_diff(&self, field: Fp, m: &Monomial) -> CPoly {
        let Some(g) = m.iter().position(|&e| e > 0) else {
            return CPoly::new();
        };
        let mut first = vec![0; m.len()];
        first[g] = 1;
        let mut rest = m.clone();
        rest[g] -= 1;
        let sign = field.sign(self.degrees[g] % 2 == 1);
        let mut out = self.poly_mul(field, &self.differential[g], &CPoly::from([(rest.clone(), 1)]));
        let tail = self.poly_mul(field, &CPoly::from([(first, 1)]), &self.mono_diff(field, &rest));
        for (k, c) in tail {
            add_term(field, &mut out, k, field.mul(c, sign));
        }
        out
    }

    /// Expands to a finite presentation up to `max_degree` with the monomial
    /// basis of the quotient by the relations.
    pub fn expand(&self, field: Fp, max_degree: usize) -> Result<Dga> {
        let n = self.names.len();
        if let Some(g) = (0..n).find(|&g| self.degrees[g] == 0) {
            return Err(Error::Invalid(format!("generator {} has degree 0", self.names[g])));
        }
        for rel in &self.relations {
            let degs: Vec<usize> = rel.keys().map(|m| self.mono_degree(m)).collect();
            if degs.windows(2).any(|w| w[0] != w[1]) {
                return Err(Error::Invalid("relation of inhomogeneous degree".into()));
            }
        }
        for g in 0..n {
            if self.differential[g].keys().any(|m| self.mono_degree(m) != self.degrees[g] + 1) {
                return Err(Error::Invalid(format!(
                    "differential of {} does not have degree {}",
                    self.names[g],
                    self.degrees[g] + 1
                )));
            }
        }
        // admissible monomials per degree
        let mut monos: Vec<Vec<Monomial>> = vec![Vec::new(); max_degree + 1];
        let mut stack = vec![(0usize, vec![0u32; n])];
        while let Some((g, m)) = stack.pop() {
            if g == n {
                monos[self.mono_degree(&m)].push(m);
                continue;
            }
            let base = self.mono_degree(&m);
            let cap = if self.degrees[g] % 2 == 1 && self.exterior(field) { 1 } else { u32::MAX };
            let mut e = 0u32;
            while e <= cap && base + e as usize * self.degrees[g] <= max_degree {
                let mut next = m.clone();
                next[g] = e;
                stack.push((g + 1, next));
                e += 1;
            }
        }
        for level in &mut monos {
            level.sort_by(|a, b| b.cmp(a));
        }
        // ideal generated by the relations, degree by degree
        let mut position: Vec<HashMap<Monomial, usize>> = Vec::new();
        for level in &monos {
            position.push(level.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect());
        }
        let to_vec = |p: &CPoly, d: usize| {
            SparseVec::from_entries(field, p.iter().map(|(m, &c)| (position[d][m], c)))
        };
        let mut ideal: Vec<Echelon> = (0..=max_degree).map(|_| Echelon::new(field)).collect();
        for rel in &self.relations {
            let Some(rd) = rel.keys().next().map(|m| self.mono_degree(m)) else { continue };
            for d in rd..=max_degree {
                for m in &monos[d - rd] {
                    let prod = self.poly_mul(field, &CPoly::from([(m.clone(), 1)]), rel);
                    let _ = ideal[d].insert(&to_vec(&prod, d), SparseVec::new());
                }
            }
        }
        // normal forms: monomials that are not pivots form the basis
        let mut basis = Vec::new();
        let mut basis_index: Vec<HashMap<usize, usize>> = vec![HashMap::new(); max_degree + 1];
        let mut sorted_by_degree: Vec<(usize, usize)> = Vec::new();
        for d in 0..=max_degree {
            let pivots: std::collections::HashSet<usize> = ideal[d].pivot_rows().collect();
            let mut ordered: Vec<usize> = (0..monos[d].len()).filter(|i| !pivots.contains(i)).collect();
            // unit first, then ascending generator order
            ordered.reverse();
            for i in ordered {
                basis_index[d].insert(i, basis.len());
                sorted_by_degree.push((d, i));
                basis.push((self.mono_label(&monos[d][i]), d));
            }
        }
        let normal = |p: &CPoly, d: usize| -> SparseVec {
            if d > max_degree {
                return SparseVec::new();
            }
            let r = ideal[d].residual(&to_vec(p, d));
            SparseVec::from_entries(field, r.iter().map(|(i, c)| (basis_index[d][&i], c)))
        };
        let mut products = HashMap::new();
        for (a, &(da, ia)) in sorted_by_degree.iter().enumerate().skip(1) {
            for (b, &(db, ib)) in sorted_by_degree.iter().enumerate().skip(1) {
                if da + db > max_degree {
                    continue;
                }
                let p = self.poly_mul(
                    field,
                    &CPoly::from([(monos[da][ia].clone(), 1)]),
                    &CPoly::from([(monos[db][ib].clone(), 1)]),
                );
                let v = normal(&p, da + db);
                if !v.is_zero() {
                    products.insert((a, b), v);
                }
            }
        }
        let differential = sorted_by_degree
            .iter()
            .map(|&(d, i)| normal(&self.mono_diff(field, &monos[d][i]), d + 1))
            .collect();
        // d must preserve the ideal
        for d in 0..max_degree {
            for k in 0..ideal[d].rank() {
                let v = ideal[d].vector(k);
                let mut p = CPoly::new();
                for (i, c) in v.iter() {
                    for (mm, cc) in self.mono_diff(field, &monos[d][i]) {
                        add_term(field, &mut p, mm, field.mul(c, cc));
                    }
                }
                if !normal(&p, d + 1).is_zero() {
                    return Err(Error::Invalid("relations are not closed under the differential".into()));
                }
            }
        }
        Dga::new(field, max_degree, basis, products, differential)
    }

    fn mono_label(&self, m: &Monomial) -> String {
        let parts: Vec<String> = m
            .iter()
            .enumerate()
            .filter(|e| *e.1 > 0)
            .map(|(g, &e)| if e == 1 { self.names[g].clone() } else { format!("{}^{e}", self.names[g]) })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(".")
        }
    }
}

/// Extends monomials written before later generators were added.
fn pad(p: CPoly, n: usize) -> CPoly {
    p.into_iter()
        .map(|(mut m, c)| {
            m.resize(n, 0);
            (m, c)
        })
        .collect()
}

pub(crate) fn add_term(field: Fp, p: &mut CPoly, m: Monomial, c: u32) {
    if c == 0 {
        return;
    }
    let e = p.entry(m.clone()).or_insert(0);
    *e = field.add(*e, c);
    if *e == 0 {
        p.remove(&m);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relations_survive_later_generators() {
        let mut c = CommutativePresentation::new();
        let x = c.generator("x", 2);
        let x3 = c.monomial(&[(x, 3)]);
        c.add_relation(CPoly::from([(x3.clone(), 1)]));
        c.generator("y", 3);
        let a = c.expand(Fp::new(3).unwrap(), 8).unwrap();
        // 1, x, x², y, xy, x²y
        assert_eq!(a.len(), 6);
        c.odd_squares_vanish = true;
        assert_eq!(c.expand(Fp::new(2).unwrap(), 8).unwrap().len(), 6);
        c.odd_squares_vanish = false;
        // y² and xy² survive
        assert_eq!(c.expand(Fp::new(2).unwrap(), 8).unwrap().len(), 8);
        let late = c.generator("z", 5);
        c.set_diff(late, CPoly::from([(x3, 1)]));
        assert!(c.expand(Fp::new(3).unwrap(), 8).is_ok());
    }
}
