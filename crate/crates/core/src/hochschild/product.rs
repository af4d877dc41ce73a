use std::collections::HashMap;
use std::sync::Mutex;

use crate::barcobar::{BarComplex, BarHomologyRing};
use crate::error::{Error, Result};
use crate::ffla::{Accumulator, Fp, SparseVec};

use super::complex::{add_weight, HochschildComplex, Piece, Weight};
use super::shuffle::shuffle_product;

/// A basis class of `HH`: a cycle of the piece `(degree, weight)`.
#[derive(Clone, Debug)]
pub struct HhClass {
    pub degree: usize,
    pub weight: Weight,
    pub rep: SparseVec,
    pub label: String,
}

/// Chain-level product of two class representatives, returning a cycle of
/// the piece `(|x| + |y|, wx + wy)`.
pub trait ChainProduct {
    fn product(&self, x: &HhClass, y: &HhClass) -> Result<SparseVec>;
}

/// `HH` up to a degree, with a basis of classes and structure constants
/// computed on demand.
pub struct HomologyPresentation {
    field: Fp,
    top: usize,
    classes: Vec<HhClass>,
    // (degree, weight) -> first class index
    slots: HashMap<(usize, Weight), usize>,
    products: Mutex<HashMap<(usize, usize), SparseVec>>,
}

impl HomologyPresentation {
    /// Classes of `HH` in degrees `0..=top`, ordered by degree, weight and
    /// homology basis.
    pub fn new(hc: &HochschildComplex, top: usize) -> Result<Self> {
        if top > hc.reliable_degree() {
            return Err(Error::Truncation(format!(
                "HH up to degree {top} needs the algebra up to degree {}",
                top + 2
            )));
        }
        let mut classes = Vec::new();
        let mut slots = HashMap::new();
        for n in 0..=top {
            for &w in hc.weights_in_degree(n).iter() {
                let h = hc.homology(n, w)?;
                if h.dim() == 0 {
                    continue;
                }
                slots.insert((n, w), classes.len());
                let piece = hc.piece(n, w);
                for rep in h.representatives() {
                    classes.push(HhClass {
                        degree: n,
                        weight: w,
                        rep: rep.clone(),
                        label: hc.format_vec(&piece, rep),
                    });
                }
            }
        }
        Ok(HomologyPresentation {
            field: hc.algebra().field(),
            top,
            classes,
            slots,
            products: Mutex::new(HashMap::new()),
        })
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class(&self, i: usize) -> &HhClass {
        &self.classes[i]
    }

    pub fn classes(&self) -> &[HhClass] {
        &self.classes
    }

    pub fn dims(&self) -> Vec<usize> {
        let mut d = vec![0; self.top + 1];
        for c in &self.classes {
            d[c.degree] += 1;
        }
        d
    }

    pub fn classes_in_degree(&self, n: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.classes.len()).filter(move |&i| self.classes[i].degree == n)
    }

    /// Index of the class of `1[]`.
    pub fn unit(&self) -> usize {
        self.slots[&(0, [0, 0])]
    }

    /// Coordinates of a cycle of the piece `(n, weight)` in the class basis.
    pub fn reduce(&self, hc: &HochschildComplex, n: usize, weight: Weight, z: &SparseVec) -> Result<SparseVec> {
        let coords = hc.homology(n, weight)?.reduce(z)?;
        if coords.is_zero() {
            return Ok(coords);
        }
        let base = self.slots[&(n, weight)];
        Ok(SparseVec::from_entries(self.field, coords.iter().map(|(i, c)| (base + i, c))))
    }

    /// Class coordinates of the cycle given by a combination of basis
    /// elements of the complex, e.g. `1[x3]`.
    pub fn class_of_key(&self, hc: &HochschildComplex, key: &[u32]) -> Result<SparseVec> {
        let n = super::complex::element_degree(hc.algebra(), key);
        if n > self.top {
            return Err(Error::Truncation(format!("{} has degree {n}", hc.format_key(key))));
        }
        let w = hc.key_weight(key);
        let piece = hc.piece(n, w);
        let v = SparseVec::unit(piece.index_of(key).expect("enumerated"));
        if !hc.differential_vec(n, w, &v)?.is_zero() {
            return Err(Error::Invalid(format!("{} is not a cycle", hc.format_key(key))));
        }
        self.reduce(hc, n, w, &v)
    }

    /// Structure constants of `class(i) · class(j)`, or `None` beyond `top`.
    pub fn product(
        &self,
        hc: &HochschildComplex,
        engine: &dyn ChainProduct,
        i: usize,
        j: usize,
    ) -> Result<Option<SparseVec>> {
        let (x, y) = (&self.classes[i], &self.classes[j]);
        let n = x.degree + y.degree;
        if n > self.top {
            return Ok(None);
        }
        if let Some(v) = self.products.lock().unwrap().get(&(i, j)) {
            return Ok(Some(v.clone()));
        }
        let w = add_weight(x.weight, y.weight);
        let z = engine.product(x, y)?;
        let coords = if self.slots.contains_key(&(n, w)) {
            self.reduce(hc, n, w, &z)?
        } else {
            // no homology in this piece; still insist on a cycle
            let dz = hc.differential_vec(n, w, &z)?;
            if !dz.is_zero() {
                return Err(Error::Integrity(format!("product of {} and {} is not a cycle", x.label, y.label)));
            }
            SparseVec::new()
        };
        self.products.lock().unwrap().insert((i, j), coords.clone());
        Ok(Some(coords))
    }

    /// Product of two classes given in coordinates, homogeneous or not.
    pub fn mul(
        &self,
        hc: &HochschildComplex,
        engine: &dyn ChainProduct,
        x: &SparseVec,
        y: &SparseVec,
    ) -> Result<SparseVec> {
        let f = self.field;
        let mut acc = Accumulator::new(f);
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                let n = self.classes[i].degree + self.classes[j].degree;
                match self.product(hc, engine, i, j)? {
                    Some(v) => acc.add_vec(&v, f.mul(a, b)),
                    None => return Err(Error::Truncation(format!("product lands in degree {n}"))),
                }
            }
        }
        Ok(acc.finish())
    }

    /// `x^k` for `k >= 1`.
    pub fn power(
        &self,
        hc: &HochschildComplex,
        engine: &dyn ChainProduct,
        x: &SparseVec,
        k: usize,
    ) -> Result<SparseVec> {
        if k == 0 {
            return Ok(SparseVec::unit(self.unit()));
        }
        let mut acc = x.clone();
        for _ in 1..k {
            acc = self.mul(hc, engine, &acc, x)?;
        }
        Ok(acc)
    }

    /// Computes every product with total degree at most `top`.
    pub fn fill_products(&self, hc: &HochschildComplex, engine: &dyn ChainProduct) -> Result<()> {
        for i in 0..self.len() {
            for j in 0..self.len() {
                self.product(hc, engine, i, j)?;
            }
        }
        Ok(())
    }

    /// Structure constants computed so far, sorted by `(i, j)`.
    pub fn structure_constants(&self) -> Vec<(usize, usize, SparseVec)> {
        let mut out: Vec<_> = self
            .products
            .lock()
            .unwrap()
            .iter()
            .map(|(&(i, j), v)| (i, j, v.clone()))
            .collect();
        out.sort_by_key(|e| (e.0, e.1));
        out
    }

    fn known(&self, i: usize, j: usize) -> Option<SparseVec> {
        self.products.lock().unwrap().get(&(i, j)).cloned()
    }

    /// First pair with `ij != (-1)^{|i||j|} ji`.
    pub fn commutativity_witness(&self) -> Option<(usize, usize)> {
        let f = self.field;
        for i in 0..self.len() {
            for j in i..self.len() {
                let (Some(a), Some(b)) = (self.known(i, j), self.known(j, i)) else { continue };
                let s = f.sign(self.classes[i].degree * self.classes[j].degree % 2 == 1);
                if a != b.scale(f, s) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// First triple with `(ij)k != i(jk)` among computed products.
    pub fn associativity_witness(&self) -> Option<(usize, usize, usize)> {
        let f = self.field;
        let expand = |x: &SparseVec, k: usize, left: bool| -> Option<SparseVec> {
            let mut acc = Accumulator::new(f);
            for (m, c) in x.iter() {
                let p = if left { self.known(m, k)? } else { self.known(k, m)? };
                acc.add_vec(&p, c);
            }
            Some(acc.finish())
        };
        for i in 0..self.len() {
            for j in 0..self.len() {
                let Some(ij) = self.known(i, j) else { continue };
                for k in 0..self.len() {
                    let Some(jk) = self.known(j, k) else { continue };
                    let (Some(l), Some(r)) = (expand(&ij, k, true), expand(&jk, i, false)) else { continue };
                    if l != r {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// First class on which the unit does not act as the identity.
    pub fn unit_witness(&self) -> Option<usize> {
        let u = self.unit();
        (0..self.len()).find(|&i| {
            let id = SparseVec::unit(i);
            self.known(u, i).is_some_and(|v| v != id) || self.known(i, u).is_some_and(|v| v != id)
        })
    }
}

/// The product `C(m) ∘ sh` on a graded-commutative algebra.
pub struct ShuffleProduct<'a, 'b> {
    hc: &'b HochschildComplex<'a>,
}

impl<'a, 'b> ShuffleProduct<'a, 'b> {
    pub fn new(hc: &'b HochschildComplex<'a>) -> Result<Self> {
        let alg = hc.algebra();
        if let Some((a, b)) = alg.commutativity_witness() {
            return Err(Error::NotCommutative(format!(
                "{} and {} do not commute; use the shc pipeline with a minimal model",
                alg.label(a),
                alg.label(b)
            )));
        }
        Ok(ShuffleProduct { hc })
    }
}

impl ChainProduct for ShuffleProduct<'_, '_> {
    fn product(&self, x: &HhClass, y: &HhClass) -> Result<SparseVec> {
        let px = self.hc.piece(x.degree, x.weight);
        let py = self.hc.piece(y.degree, y.weight);
        shuffle_product(self.hc, &px, &x.rep, &py, &y.rep, add_weight(x.weight, y.weight))
    }
}

/// `HH` with the commutative ring structure, all products up to `top` filled.
pub fn hh_product_commutative(hc: &HochschildComplex, top: usize) -> Result<HomologyPresentation> {
    let engine = ShuffleProduct::new(hc)?;
    let pres = HomologyPresentation::new(hc, top)?;
    pres.fill_products(hc, &engine)?;
    Ok(pres)
}

/// `ρ(a0[w]) = ε(a0) [w]`, into degree `piece.degree()` of the bar complex.
pub fn rho_chain(hc: &HochschildComplex, piece: &Piece, bar: &BarComplex, v: &SparseVec) -> Result<SparseVec> {
    let n = piece.degree();
    if n > bar.top() + 1 {
        return Err(Error::Truncation(format!("bar complex stored up to degree {}", bar.top())));
    }
    let f = hc.algebra().field();
    Ok(SparseVec::from_entries(
        f,
        v.iter()
            .filter(|&(i, _)| piece.elem(i)[0] == 0)
            .map(|(i, c)| (bar.index_of(n, &piece.elem(i)[1..]).expect("bar word enumerated"), c)),
    ))
}

/// `ρ_*` on a class, as coordinates in the class numbering of `ring`.
pub fn rho_star(
    hc: &HochschildComplex,
    bar: &BarComplex,
    ring: &BarHomologyRing,
    class: &HhClass,
) -> Result<SparseVec> {
    let piece = hc.piece(class.degree, class.weight);
    let z = rho_chain(hc, &piece, bar, &class.rep)?;
    let n = class.degree;
    let coords = ring.slices[n].reduce(&z)?;
    Ok(SparseVec::from_entries(
        hc.algebra().field(),
        coords.iter().map(|(i, c)| (ring.offsets[n] + i, c)),
    ))
}
