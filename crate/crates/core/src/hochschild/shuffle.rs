use crate::barcobar::shuffle_graded;
use crate::dga::{Dga, TensorDga};
use crate::error::{Error, Result};
use crate::ffla::{Accumulator, SparseVec};

use super::complex::{HochschildComplex, Piece, Weight};

/// Letter of a shuffle in `A ⊗ B`: `(a, 0)` is `a⊗1` and `(0, b)` is `1⊗b`.
pub type PairLetter = (u32, u32);

/// Terms of `sh(a0[a1|...|an] ⊗ b0[b1|...|bm])`.
///
/// Each term is reported as `(coeff, (a0, b0), letters)`. The global sign is
/// `(-1)^t` with `t = |b0| sum_{i>=1} (|ai| - 1)`, the Koszul sign of moving
/// `b0` past the letters of the first word.
pub fn shuffle_terms(
    a: &Dga,
    u: &[u32],
    b: &Dga,
    v: &[u32],
    mut emit: impl FnMut(u32, (u32, u32), &[PairLetter]),
) {
    let f = a.field();
    let shifted: usize = u[1..].iter().map(|&l| a.degree(l as usize) - 1).sum();
    let t = b.degree(v[0] as usize) * shifted;
    shuffle_tagged(a, &u[1..], b, &v[1..], |w, odd| {
        emit(f.sign((t % 2 == 1) ^ odd), (u[0], v[0]), w);
    });
}

fn shuffle_tagged(a: &Dga, u: &[u32], b: &Dga, v: &[u32], emit: impl FnMut(&[PairLetter], bool)) {
    let su: Vec<usize> = u.iter().map(|&l| a.degree(l as usize) - 1).collect();
    let sv: Vec<usize> = v.iter().map(|&l| b.degree(l as usize) - 1).collect();
    let tu: Vec<PairLetter> = u.iter().map(|&l| (l, 0)).collect();
    let tv: Vec<PairLetter> = v.iter().map(|&l| (0, l)).collect();
    shuffle_graded(&tu, &su, &tv, &sv, emit);
}

/// `sh(x ⊗ y)` as a chain of `C(A ⊗ B)` in the piece `(n, weight)`, for
/// chains `x`, `y` given on pieces of `C(A)` and `C(B)`.
#[allow(clippy::too_many_arguments)]
pub fn shuffle_into(
    a: &Dga,
    pa: &Piece,
    x: &SparseVec,
    b: &Dga,
    pb: &Piece,
    y: &SparseVec,
    tensor: &TensorDga,
    target: &HochschildComplex,
    weight: Weight,
) -> Result<SparseVec> {
    let f = a.field();
    let n = pa.degree() + pb.degree();
    let tgt = target.piece(n, weight);
    let mut acc = Accumulator::new(f);
    let mut key: Vec<u32> = Vec::new();
    let mut missing = false;
    for (i, ci) in x.iter() {
        for (j, cj) in y.iter() {
            let c = f.mul(ci, cj);
            shuffle_terms(a, pa.elem(i), b, pb.elem(j), |s, (a0, b0), letters| {
                key.clear();
                let Some(h) = tensor.index_of(a0 as usize, b0 as usize) else { return };
                key.push(h as u32);
                for &(p, q) in letters {
                    match tensor.index_of(p as usize, q as usize) {
                        Some(l) => key.push(l as u32),
                        None => return,
                    }
                }
                match tgt.index_of(&key) {
                    Some(k) => acc.add(k, f.mul(s, c)),
                    None => missing = true,
                }
            });
        }
    }
    if missing {
        return Err(Error::Integrity(format!("shuffle leaves the weight piece in degree {n}")));
    }
    Ok(acc.finish())
}

/// `C(m) ∘ sh` for a graded-commutative algebra: the shuffle product of two
/// chains of `C(A)`, landing in `(n, weight)`.
pub fn shuffle_product(
    hc: &HochschildComplex,
    pa: &Piece,
    x: &SparseVec,
    pb: &Piece,
    y: &SparseVec,
    weight: Weight,
) -> Result<SparseVec> {
    let alg = hc.algebra();
    let f = alg.field();
    let n = pa.degree() + pb.degree();
    let tgt = hc.piece(n, weight);
    let mut acc = Accumulator::new(f);
    let mut key: Vec<u32> = Vec::new();
    let mut missing = false;
    for (i, ci) in x.iter() {
        for (j, cj) in y.iter() {
            let c = f.mul(ci, cj);
            shuffle_terms(alg, pa.elem(i), alg, pb.elem(j), |s, (a0, b0), letters| {
                for (h, ch) in alg.mul(a0 as usize, b0 as usize).iter() {
                    key.clear();
                    key.push(h as u32);
                    key.extend(letters.iter().map(|&(p, q)| p.max(q)));
                    match tgt.index_of(&key) {
                        Some(k) => acc.add(k, f.mul(f.mul(s, c), ch)),
                        None => missing = true,
                    }
                }
            });
        }
    }
    if missing {
        return Err(Error::Integrity(format!("shuffle product leaves the weight piece in degree {n}")));
    }
    Ok(acc.finish())
}
