use std::collections::HashMap;

use super::Dga;
use crate::error::{Error, Result};
use crate::ffla::{Accumulator, SparseVec};

/// `A ⊗ B` with the Koszul product `(a⊗b)(a'⊗b') = (-1)^{|b||a'|} aa'⊗bb'`.
#[derive(Clone, Debug)]
pub struct TensorDga {
    dga: Dga,
    pairs: Vec<(usize, usize)>,
    index: HashMap<(usize, usize), usize>,
}

impl TensorDga {
    pub fn dga(&self) -> &Dga {
        &self.dga
    }

    pub fn pair(&self, i: usize) -> (usize, usize) {
        self.pairs[i]
    }

    pub fn index_of(&self, a: usize, b: usize) -> Option<usize> {
        self.index.get(&(a, b)).copied()
    }
}

pub fn tensor(a: &Dga, b: &Dga) -> Result<TensorDga> {
    let f = a.field();
    if f != b.field() {
        return Err(Error::Field(format!(
            "tensor product of algebras over F_{} and F_{}",
            f.p(),
            b.field().p()
        )));
    }
    let top = a.max_degree().min(b.max_degree());
    let mut pairs = Vec::new();
    let mut basis = Vec::new();
    for d in 0..=top {
        for i in 0..=d {
            for &x in a.basis(i) {
                for &y in b.basis(d - i) {
                    pairs.push((x, y));
                    let label = match (x, y) {
                        (0, 0) => "1".to_string(),
                        _ => format!("{}|{}", a.label(x), b.label(y)),
                    };
                    basis.push((label, d));
                }
            }
        }
    }
    let index: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    let embed = |va: &SparseVec, vb: &SparseVec, c: u32, acc: &mut Accumulator| {
        for (x, cx) in va.iter() {
            for (y, cy) in vb.iter() {
                if let Some(&k) = index.get(&(x, y)) {
                    acc.add(k, f.mul(c, f.mul(cx, cy)));
                }
            }
        }
    };
    let mut products = HashMap::new();
    for (i, &(x, y)) in pairs.iter().enumerate().skip(1) {
        for (j, &(x2, y2)) in pairs.iter().enumerate().skip(1) {
            if a.degree(x) + b.degree(y) + a.degree(x2) + b.degree(y2) > top {
                continue;
            }
            let sign = f.sign(b.degree(y) * a.degree(x2) % 2 == 1);
            let mut acc = Accumulator::new(f);
            embed(&a.mul(x, x2), &b.mul(y, y2), sign, &mut acc);
            let v = acc.finish();
            if !v.is_zero() {
                products.insert((i, j), v);
            }
        }
    }
    let differential = pairs
        .iter()
        .map(|&(x, y)| {
            let mut acc = Accumulator::new(f);
            embed(a.diff(x), &SparseVec::unit(y), 1, &mut acc);
            embed(&SparseVec::unit(x), b.diff(y), f.sign(a.degree(x) % 2 == 1), &mut acc);
            acc.finish()
        })
        .collect();
    let dga = Dga::new(f, top, basis, products, differential)?;
    Ok(TensorDga { dga, pairs, index })
}
