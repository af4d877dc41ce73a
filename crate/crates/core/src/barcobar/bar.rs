use std::collections::HashMap;

use crate::dga::Dga;
use crate::error::{Error, Result};
use crate::ffla::{homology_from_maps, Accumulator, ComplexSlice, HomologySlice, SparseMatrix, SparseVec};

/// A bar word `[a1|...|ak]` as basis indices of the augmentation ideal.
pub type BarWord = Vec<u32>;

fn check_connected(alg: &Dga) -> Result<()> {
    if !alg.is_connected() {
        return Err(Error::NotConnected("degree 0 must be spanned by the unit".into()));
    }
    if alg.dim(1) != 0 {
        return Err(Error::NotConnected(
            "classes in degree 1 make the bar construction infinite in each degree".into(),
        ));
    }
    Ok(())
}

/// `sum (|ai| - 1)`.
pub fn bar_degree(alg: &Dga, w: &[u32]) -> usize {
    w.iter().map(|&l| alg.degree(l as usize) - 1).sum()
}

/// All bar words of degree `n`, letters ordered by degree and then index.
pub fn bar_basis(alg: &Dga, n: usize) -> Result<Vec<BarWord>> {
    check_connected(alg)?;
    let mut letters: Vec<u32> = (1..alg.len() as u32).collect();
    letters.sort_by_key(|&l| (alg.degree(l as usize), l));
    let mut out = Vec::new();
    let mut word = Vec::new();
    fn rec(alg: &Dga, letters: &[u32], rem: usize, word: &mut Vec<u32>, out: &mut Vec<BarWord>) {
        if rem == 0 {
            out.push(word.clone());
            return;
        }
        for &l in letters {
            let s = alg.degree(l as usize) - 1;
            if s > rem {
                break;
            }
            word.push(l);
            rec(alg, letters, rem - s, word, out);
            word.pop();
        }
    }
    rec(alg, &letters, n, &mut word, &mut out);
    Ok(out)
}

/// Terms of `d_BA [a1|...|ak]`:
/// `-sum (-1)^{e_i} [..|d a_i|..] + sum_{i>=2} (-1)^{e_i} [..|a_{i-1} a_i|..]`
/// with `e_i = sum_{j<i} (|a_j| - 1)`.
pub fn bar_differential_terms(alg: &Dga, w: &[u32], mut emit: impl FnMut(&[u32], u32)) {
    let f = alg.field();
    let k = w.len();
    let mut eps = vec![0usize; k + 1];
    for i in 0..k {
        eps[i + 1] = eps[i] + alg.degree(w[i] as usize) - 1;
    }
    let mut buf = w.to_vec();
    for i in 0..k {
        let s = f.sign(eps[i] % 2 == 0);
        for (b, c) in alg.diff(w[i] as usize).iter() {
            buf[i] = b as u32;
            emit(&buf, f.mul(s, c));
        }
        buf[i] = w[i];
    }
    let mut merged = Vec::with_capacity(k);
    for i in 1..k {
        // merging positions i-1 and i; the prefix includes a_{i-1}
        let s = f.sign(eps[i] % 2 == 1);
        for (b, c) in alg.mul(w[i - 1] as usize, w[i] as usize).iter() {
            merged.clear();
            merged.extend_from_slice(&w[..i - 1]);
            merged.push(b as u32);
            merged.extend_from_slice(&w[i + 1..]);
            emit(&merged, f.mul(s, c));
        }
    }
}

/// Deconcatenation `[a1|...|ak] -> sum_i [a1|...|ai] ⊗ [a(i+1)|...|ak]`,
/// including the two terms with an empty side.
pub fn bar_coproduct(w: &[u32]) -> Vec<(BarWord, BarWord)> {
    (0..=w.len()).map(|i| (w[..i].to_vec(), w[i..].to_vec())).collect()
}

/// Signed shuffles of two bar words. The sign of a shuffle is the Koszul
/// sign of moving each letter of `v` past the letters of `u` it jumps over,
/// with letters in degree `|a| - 1`.
pub fn shuffle_words(alg: &Dga, u: &[u32], v: &[u32], emit: impl FnMut(&[u32], bool)) {
    let su: Vec<usize> = u.iter().map(|&l| alg.degree(l as usize) - 1).collect();
    let sv: Vec<usize> = v.iter().map(|&l| alg.degree(l as usize) - 1).collect();
    shuffle_graded(u, &su, v, &sv, emit);
}

/// Signed shuffles of two sequences of letters with the given degrees.
pub fn shuffle_graded<T: Copy>(u: &[T], su: &[usize], v: &[T], sv: &[usize], mut emit: impl FnMut(&[T], bool)) {
    let mut suffix = vec![0usize; u.len() + 1];
    for i in (0..u.len()).rev() {
        suffix[i] = suffix[i + 1] + su[i];
    }
    struct Ctx<'a, T> {
        u: &'a [T],
        v: &'a [T],
        sv: &'a [usize],
        suffix: Vec<usize>,
        buf: Vec<T>,
    }
    fn rec<T: Copy>(cx: &mut Ctx<T>, i: usize, j: usize, odd: bool, emit: &mut dyn FnMut(&[T], bool)) {
        if i == cx.u.len() && j == cx.v.len() {
            emit(&cx.buf, odd);
            return;
        }
        if i < cx.u.len() {
            cx.buf.push(cx.u[i]);
            rec(cx, i + 1, j, odd, emit);
            cx.buf.pop();
        }
        if j < cx.v.len() {
            cx.buf.push(cx.v[j]);
            let flip = (cx.sv[j] * cx.suffix[i]) % 2 == 1;
            rec(cx, i, j + 1, odd ^ flip, emit);
            cx.buf.pop();
        }
    }
    let mut cx = Ctx {
        u,
        v,
        sv,
        suffix,
        buf: Vec::with_capacity(u.len() + v.len()),
    };
    rec(&mut cx, 0, 0, false, &mut emit);
}

/// The bar construction as a complex, degrees `0..=top`.
#[derive(Clone, Debug)]
pub struct BarComplex {
    bases: Vec<Vec<BarWord>>,
    index: Vec<HashMap<BarWord, usize>>,
    slice: ComplexSlice,
}

impl BarComplex {
    pub fn new(alg: &Dga, top: usize) -> Result<Self> {
        let bases: Vec<Vec<BarWord>> = (0..=top + 1).map(|n| bar_basis(alg, n)).collect::<Result<_>>()?;
        let index: Vec<HashMap<BarWord, usize>> = bases
            .iter()
            .map(|b| b.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect())
            .collect();
        let f = alg.field();
        let mut diffs = Vec::new();
        for n in 0..=top {
            let cols = bases[n]
                .iter()
                .map(|w| {
                    let mut acc = Accumulator::new(f);
                    bar_differential_terms(alg, w, |t, c| acc.add(index[n + 1][t], c));
                    acc.finish()
                })
                .collect();
            diffs.push(SparseMatrix::from_columns(f, bases[n + 1].len(), cols)?);
        }
        let dims = bases.iter().map(|b| b.len()).collect();
        let slice = ComplexSlice::new(f, dims, diffs)?;
        for n in 1..=top {
            slice.check_square_zero(n)?;
        }
        Ok(BarComplex { bases, index, slice })
    }

    pub fn top(&self) -> usize {
        self.bases.len() - 2
    }

    pub fn basis(&self, n: usize) -> &[BarWord] {
        &self.bases[n]
    }

    pub fn index_of(&self, n: usize, w: &[u32]) -> Option<usize> {
        self.index.get(n)?.get(w).copied()
    }

    pub fn slice(&self) -> &ComplexSlice {
        &self.slice
    }

    pub fn differential(&self, n: usize) -> &SparseMatrix {
        self.slice.differential(n).expect("stored up to top")
    }

    pub fn homology(&self, n: usize) -> Result<HomologySlice> {
        if n > self.top() {
            return Err(Error::Truncation(format!("bar complex stored up to degree {}", self.top())));
        }
        let incoming = if n > 0 { self.slice.differential(n - 1) } else { None };
        homology_from_maps(self.slice.field(), self.slice.dim(n), incoming, self.slice.differential(n), n)
    }

    pub fn format_word(alg: &Dga, w: &[u32]) -> String {
        let parts: Vec<&str> = w.iter().map(|&l| alg.label(l as usize)).collect();
        format!("[{}]", parts.join("|"))
    }
}

/// Shuffle product on `BA` followed by `B(m)`, for graded-commutative `A`.
/// The result lies in degree `|u| + |v|` of `bar`.
pub fn bar_product_commutative(alg: &Dga, bar: &BarComplex, u: &[u32], v: &[u32]) -> Result<SparseVec> {
    if let Some((a, b)) = alg.commutativity_witness() {
        return Err(Error::NotCommutative(format!(
            "{} and {} do not commute",
            alg.label(a),
            alg.label(b)
        )));
    }
    let f = alg.field();
    let n = bar_degree(alg, u) + bar_degree(alg, v);
    if n > bar.top() + 1 {
        return Err(Error::Truncation(format!("product lands in degree {n}")));
    }
    let mut acc = Accumulator::new(f);
    shuffle_words(alg, u, v, |w, odd| acc.add(bar.index_of(n, w).expect("enumerated"), f.sign(odd)));
    Ok(acc.finish())
}

/// Ring structure of `H*BA` on homology representatives up to degree `top`:
/// returns, per degree, the homology slices and the structure constants
/// `(i, j) -> coordinates` with classes numbered consecutively by degree.
pub struct BarHomologyRing {
    pub slices: Vec<HomologySlice>,
    pub offsets: Vec<usize>,
    pub products: HashMap<(usize, usize), SparseVec>,
}

impl BarHomologyRing {
    pub fn new(alg: &Dga, bar: &BarComplex, top: usize) -> Result<Self> {
        let slices: Vec<HomologySlice> = (0..=top).map(|n| bar.homology(n)).collect::<Result<_>>()?;
        let mut offsets = vec![0];
        for s in &slices {
            offsets.push(offsets.last().unwrap() + s.dim());
        }
        let f = alg.field();
        let mut products = HashMap::new();
        for n1 in 0..=top {
            for n2 in 0..=top - n1 {
                for (i, r1) in slices[n1].representatives().iter().enumerate() {
                    for (j, r2) in slices[n2].representatives().iter().enumerate() {
                        let mut acc = Accumulator::new(f);
                        for (x, cx) in r1.iter() {
                            for (y, cy) in r2.iter() {
                                let p = bar_product_commutative(alg, bar, &bar.basis(n1)[x], &bar.basis(n2)[y])?;
                                acc.add_vec(&p, f.mul(cx, cy));
                            }
                        }
                        let coords = slices[n1 + n2].reduce(&acc.finish())?;
                        let global = SparseVec::from_entries(
                            f,
                            coords.iter().map(|(k, c)| (offsets[n1 + n2] + k, c)),
                        );
                        products.insert((offsets[n1] + i, offsets[n2] + j), global);
                    }
                }
            }
        }
        Ok(BarHomologyRing {
            slices,
            offsets,
            products,
        })
    }

    pub fn len(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn degree_of(&self, class: usize) -> usize {
        self.offsets.iter().rposition(|&o| o <= class).unwrap()
    }

    pub fn representative(&self, class: usize) -> &SparseVec {
        let n = self.degree_of(class);
        &self.slices[n].representatives()[class - self.offsets[n]]
    }
}
