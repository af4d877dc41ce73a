use std::collections::HashMap;

use crate::barcobar::FreeDgaModel;
use crate::dga::{derivation_on_poly, DgaMap, FreeAlgebra, Generators, NcPoly, TensorDga, Word};
use crate::error::{Error, Result};
use crate::ffla::{Echelon, Fp, SparseVec};
use crate::hochschild::Weight;

/// Generators of `T(V ⊕ W ⊕ V#W)`: a copy `v'` of `V`, a copy `w''` of `V`,
/// and `v#w` of degree `|v| + |w| - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HatGen {
    Left(u32),
    Right(u32),
    Pair(u32, u32),
}

/// The model `(T V̂, d̂)` of `TV ⊗ TV`, with `Ψ(v') = v⊗1`, `Ψ(w'') = 1⊗w`
/// and `Ψ(v#w) = 0`.
#[derive(Clone, Debug)]
pub struct HatModel {
    base: FreeDgaModel,
    gens: Generators,
    kinds: Vec<HatGen>,
    left: Vec<u32>,
    right: Vec<u32>,
    pairs: HashMap<(u32, u32), u32>,
    d0: Vec<NcPoly>,
    diff: Vec<NcPoly>,
    weights: Vec<Weight>,
    unsolved: Vec<u32>,
}

impl HatModel {
    /// Generators up to the truncation of `base`, with `d̂ = D0` (no
    /// corrections yet). `base` must be minimal.
    pub fn new(base: &FreeDgaModel) -> Result<Self> {
        if !base.is_minimal() {
            return Err(Error::Invalid("the hat model needs a minimal base model".into()));
        }
        let top = base.max_degree();
        let bg = base.generators();
        let n = bg.len() as u32;
        let base_weights = base.quadratic_weights();
        let bw = |g: u32| base_weights.as_ref().map_or(0, |w| w[g as usize][0]);
        let mut gens = Generators::new();
        let mut kinds = Vec::new();
        let mut weights = Vec::new();
        let mut left = Vec::new();
        let mut right = Vec::new();
        for v in 0..n {
            left.push(gens.push(format!("{}'", bg.name(v)), bg.degree(v)));
            kinds.push(HatGen::Left(v));
            weights.push([bw(v), 0]);
        }
        for w in 0..n {
            right.push(gens.push(format!("{}''", bg.name(w)), bg.degree(w)));
            kinds.push(HatGen::Right(w));
            weights.push([0, bw(w)]);
        }
        // pairs in increasing degree, then by (v, w)
        let mut pair_list: Vec<(usize, u32, u32)> = Vec::new();
        for v in 0..n {
            for w in 0..n {
                let d = bg.degree(v) + bg.degree(w) - 1;
                if d <= top {
                    pair_list.push((d, v, w));
                }
            }
        }
        pair_list.sort();
        let mut pairs = HashMap::new();
        for &(d, v, w) in &pair_list {
            let g = gens.push(format!("{}'#{}''", bg.name(v), bg.name(w)), d);
            pairs.insert((v, w), g);
            kinds.push(HatGen::Pair(v, w));
            weights.push([bw(v), bw(w)]);
        }
        let mut hat = HatModel {
            base: base.clone(),
            gens,
            kinds,
            left,
            right,
            pairs,
            d0: Vec::new(),
            diff: Vec::new(),
            weights,
            unsolved: Vec::new(),
        };
        hat.d0 = (0..hat.gens.len() as u32).map(|g| hat.d0_generator(g)).collect();
        hat.diff = hat.d0.clone();
        Ok(hat)
    }

    pub fn base(&self) -> &FreeDgaModel {
        &self.base
    }

    pub fn field(&self) -> Fp {
        self.base.field()
    }

    pub fn generators(&self) -> &Generators {
        &self.gens
    }

    pub fn kind(&self, g: u32) -> HatGen {
        self.kinds[g as usize]
    }

    pub fn left(&self, v: u32) -> u32 {
        self.left[v as usize]
    }

    pub fn right(&self, w: u32) -> u32 {
        self.right[w as usize]
    }

    pub fn pair(&self, v: u32, w: u32) -> Option<u32> {
        self.pairs.get(&(v, w)).copied()
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn max_degree(&self) -> usize {
        self.base.max_degree()
    }

    /// `d̂` on generator `g`.
    pub fn diff(&self, g: u32) -> &NcPoly {
        &self.diff[g as usize]
    }

    /// `D0` on generator `g`.
    pub fn d0(&self, g: u32) -> &NcPoly {
        &self.d0[g as usize]
    }

    /// Pair generators whose obstruction could not be solved within the
    /// truncation; their `d̂` lands beyond the reliable range.
    pub fn unsolved(&self) -> &[u32] {
        &self.unsolved
    }

    /// `(T V̂, d̂)` as a free model.
    pub fn model(&self) -> Result<FreeDgaModel> {
        FreeDgaModel::new(self.field(), self.gens.clone(), self.diff.clone(), self.max_degree())
    }

    fn bdeg(&self, w: &[u32]) -> usize {
        self.base.generators().word_degree(w)
    }

    /// `a'` for a polynomial `a` in `TV`.
    pub fn prime(&self, p: &NcPoly) -> NcPoly {
        self.rename(p, &self.left)
    }

    /// `b''` for a polynomial `b` in `TV`.
    pub fn double_prime(&self, p: &NcPoly) -> NcPoly {
        self.rename(p, &self.right)
    }

    fn rename(&self, p: &NcPoly, ids: &[u32]) -> NcPoly {
        let f = self.field();
        let mut q = NcPoly::zero();
        for (w, c) in p.terms() {
            q.add_term(f, w.iter().map(|&g| ids[g as usize]).collect(), c);
        }
        q
    }

    /// `a # w` for a word `a` in `V` and a generator `w` (rule a):
    /// `sum_i (-1)^{|v1..v(i-1)| + |w| |v(i+1)..vk|} v1..v(i-1) (vi#w) v(i+1)..vk`.
    fn sharp_single(&self, a: &[u32], w: u32, out: &mut NcPoly, coeff: u32) {
        let f = self.field();
        let bg = self.base.generators();
        let total = self.bdeg(a);
        let mut before = 0;
        for (i, &v) in a.iter().enumerate() {
            let after = total - before - bg.degree(v);
            let sign = (before + bg.degree(w) * after) % 2 == 1;
            if let Some(p) = self.pair(v, w) {
                let mut word: Word = a[..i].iter().map(|&x| self.left(x)).collect();
                word.push(p);
                word.extend(a[i + 1..].iter().map(|&x| self.left(x)));
                out.add_term(f, word, f.mul(coeff, f.sign(sign)));
            }
            before += bg.degree(v);
        }
    }

    /// `a # b` for words `a`, `b` in `V` (rule c): expand in the second
    /// argument with signs `(|a| + 1) |w1..w(j-1)|`, then by rule a.
    pub fn sharp(&self, a: &[u32], b: &[u32]) -> NcPoly {
        let f = self.field();
        let bg = self.base.generators();
        let da = self.bdeg(a);
        let mut out = NcPoly::zero();
        let mut before = 0;
        for (j, &w) in b.iter().enumerate() {
            let sign = f.sign(((da + 1) * before) % 2 == 1);
            let mut inner = NcPoly::zero();
            self.sharp_single(a, w, &mut inner, sign);
            let prefix: Word = b[..j].iter().map(|&x| self.right(x)).collect();
            let suffix: Word = b[j + 1..].iter().map(|&x| self.right(x)).collect();
            for (m, c) in inner.terms() {
                let mut word = prefix.clone();
                word.extend_from_slice(m);
                word.extend_from_slice(&suffix);
                out.add_term(f, word, c);
            }
            before += bg.degree(w);
        }
        out
    }

    /// `v # b` for a generator `v` and a word `b` (rule b).
    fn sharp_left(&self, v: u32, b: &[u32]) -> NcPoly {
        self.sharp(&[v], b)
    }

    /// `a #' b` (rule d): expand in the first argument with signs
    /// `|v1..v(i-1)| + |v(i+1)..vk| |b|`, then by rule b.
    pub fn sharp_prime(&self, a: &[u32], b: &[u32]) -> NcPoly {
        let f = self.field();
        let bg = self.base.generators();
        let total = self.bdeg(a);
        let db = self.bdeg(b);
        let mut out = NcPoly::zero();
        let mut before = 0;
        for (i, &v) in a.iter().enumerate() {
            let after = total - before - bg.degree(v);
            let sign = f.sign((before + after * db) % 2 == 1);
            let inner = self.sharp_left(v, b);
            let prefix: Word = a[..i].iter().map(|&x| self.left(x)).collect();
            let suffix: Word = a[i + 1..].iter().map(|&x| self.left(x)).collect();
            for (m, c) in inner.terms() {
                let mut word = prefix.clone();
                word.extend_from_slice(m);
                word.extend_from_slice(&suffix);
                out.add_term(f, word, f.mul(c, sign));
            }
            before += bg.degree(v);
        }
        out
    }

    /// Bilinear extension of `#` to polynomials in `TV`.
    pub fn sharp_poly(&self, a: &NcPoly, b: &NcPoly) -> NcPoly {
        self.bilinear(a, b, |x, y| self.sharp(x, y))
    }

    /// Bilinear extension of `#'` to polynomials in `TV`.
    pub fn sharp_prime_poly(&self, a: &NcPoly, b: &NcPoly) -> NcPoly {
        self.bilinear(a, b, |x, y| self.sharp_prime(x, y))
    }

    fn bilinear(&self, a: &NcPoly, b: &NcPoly, op: impl Fn(&[u32], &[u32]) -> NcPoly) -> NcPoly {
        let f = self.field();
        let mut out = NcPoly::zero();
        for (x, cx) in a.terms() {
            for (y, cy) in b.terms() {
                if x.is_empty() || y.is_empty() {
                    continue;
                }
                out.add_scaled(f, &op(x, y), f.mul(cx, cy));
            }
        }
        out
    }

    fn d0_generator(&self, g: u32) -> NcPoly {
        let f = self.field();
        let bg = self.base.generators();
        match self.kinds[g as usize] {
            HatGen::Left(v) => self.prime(self.base.diff(v)),
            HatGen::Right(w) => self.double_prime(self.base.diff(w)),
            HatGen::Pair(v, w) => {
                // vw - (-1)^{|v||w|} wv - D0v#w - (-1)^{|v|} v#D0w
                let (dv, dw) = (bg.degree(v), bg.degree(w));
                let mut out = NcPoly::word(vec![self.left(v), self.right(w)]);
                out.add_term(f, vec![self.right(w), self.left(v)], f.neg(f.sign(dv * dw % 2 == 1)));
                let first = self.sharp_poly(self.base.diff(v), &NcPoly::generator(w));
                out.add_scaled(f, &first, f.neg(1));
                let second = self.sharp_poly(&NcPoly::generator(v), self.base.diff(w));
                out.add_scaled(f, &second, f.neg(f.sign(dv % 2 == 1)));
                out.truncated(self.gens.degrees(), self.max_degree() + 1)
            }
        }
    }

    /// `D0` extended as a derivation of `T V̂`.
    pub fn apply_d0(&self, p: &NcPoly) -> NcPoly {
        derivation_on_poly(self.field(), &self.gens, &self.d0, p)
    }

    /// `d̂` extended as a derivation of `T V̂`.
    pub fn apply(&self, p: &NcPoly) -> NcPoly {
        derivation_on_poly(self.field(), &self.gens, &self.diff, p)
    }

    /// `Ψ` on a word of `T V̂`: `None` when the word contains a pair
    /// generator, otherwise the sign and the two halves.
    pub fn psi_word(&self, word: &[u32]) -> Option<(bool, Word, Word)> {
        let bg = self.base.generators();
        let mut left = Vec::new();
        let mut right = Vec::new();
        let mut odd = false;
        let mut right_deg = 0;
        for &g in word {
            match self.kinds[g as usize] {
                HatGen::Left(v) => {
                    // v passes the right letters collected so far
                    odd ^= (bg.degree(v) * right_deg) % 2 == 1;
                    left.push(v);
                }
                HatGen::Right(w) => {
                    right_deg += bg.degree(w);
                    right.push(w);
                }
                HatGen::Pair(..) => return None,
            }
        }
        Some((odd, left, right))
    }

    /// The canonical preimage `u'w''` of `u ⊗ w` under `Ψ`.
    pub fn lift_pair(&self, u: &[u32], w: &[u32]) -> Word {
        u.iter().map(|&x| self.left(x)).chain(w.iter().map(|&x| self.right(x))).collect()
    }

    /// `Ψ` from a presentation of `T V̂` to `TV ⊗ TV`, where `tv` presents
    /// `TV` and `tensor` is its square.
    pub fn psi_map(&self, hat: &FreeAlgebra, tv: &FreeAlgebra, tensor: &TensorDga) -> Result<DgaMap> {
        let f = self.field();
        let images = (0..hat.dga().len())
            .map(|i| match self.psi_word(hat.word(i)) {
                None => SparseVec::new(),
                Some((odd, u, w)) => match (tv.index_of(&u), tv.index_of(&w)) {
                    (Some(a), Some(b)) => tensor
                        .index_of(a, b)
                        .map_or_else(SparseVec::new, |t| SparseVec::single(t, f.sign(odd))),
                    _ => SparseVec::new(),
                },
            })
            .collect();
        DgaMap::new(hat.dga(), tensor.dga(), images)
    }

    pub fn word_weight(&self, word: &[u32]) -> Weight {
        word.iter().fold([0, 0], |acc, &g| {
            let w = self.weights[g as usize];
            [acc[0] + w[0], acc[1] + w[1]]
        })
    }

    /// Words of `T V̂` of length at least two in the kernel of `Ψ`, with the
    /// given degree and weight: words containing a pair generator, followed
    /// by `x - (-1)^σ u'w''` for reordered words `x` of left and right letters.
    fn kernel_basis(&self, n: usize, weight: Weight) -> Vec<NcPoly> {
        let f = self.field();
        let mut with_pair = Vec::new();
        let mut pure = Vec::new();
        for word in self.words(n, weight, 2) {
            match self.psi_word(&word) {
                None => with_pair.push(NcPoly::word(word)),
                Some((odd, u, w)) => {
                    let canonical = self.lift_pair(&u, &w);
                    if canonical != word {
                        let mut p = NcPoly::word(word);
                        p.add_term(f, canonical, f.neg(f.sign(odd)));
                        pure.push(p);
                    }
                }
            }
        }
        with_pair.extend(pure);
        with_pair
    }

    /// Words of degree `n`, weight `weight` and length at least `min_len`.
    pub fn words(&self, n: usize, weight: Weight, min_len: usize) -> Vec<Word> {
        let mut out = Vec::new();
        let mut word = Vec::new();
        let mut memo = HashMap::new();
        let mut order: Vec<u32> = (0..self.gens.len() as u32).filter(|&g| self.gens.degree(g) <= n).collect();
        order.sort_by_key(|&g| self.gens.degree(g));
        let walk = Walk { order: &order, memo: &mut memo };
        self.words_rec(n, weight, min_len, &mut word, walk, &mut out);
        out
    }

    fn words_rec(
        &self,
        rem: usize,
        wrem: Weight,
        min_len: usize,
        word: &mut Word,
        mut walk: Walk,
        out: &mut Vec<Word>,
    ) {
        if rem == 0 {
            if wrem == [0, 0] && word.len() >= min_len {
                out.push(word.clone());
            }
            return;
        }
        for &g in walk.order {
            if self.gens.degree(g) > rem {
                break;
            }
            if let Some((r, w)) = self.step(g, rem, wrem) {
                if self.completable(r, w, walk.order, walk.memo) {
                    word.push(g);
                    self.words_rec(r, w, min_len, word, walk.reborrow(), out);
                    word.pop();
                }
            }
        }
    }

    /// Degree and weight left after appending `g`, if they stay nonnegative.
    fn step(&self, g: u32, rem: usize, wrem: Weight) -> Option<(usize, Weight)> {
        let d = self.gens.degree(g);
        let w = self.weights[g as usize];
        (d <= rem && w[0] <= wrem[0] && w[1] <= wrem[1]).then(|| (rem - d, [wrem[0] - w[0], wrem[1] - w[1]]))
    }

    /// Whether some word has exactly this degree and weight.
    fn completable(&self, rem: usize, wrem: Weight, order: &[u32], memo: &mut HashMap<(usize, Weight), bool>) -> bool {
        if rem == 0 {
            return wrem == [0, 0];
        }
        if let Some(&b) = memo.get(&(rem, wrem)) {
            return b;
        }
        let b = order
            .iter()
            .take_while(|&&g| self.gens.degree(g) <= rem)
            .any(|&g| self.step(g, rem, wrem).is_some_and(|(r, w)| self.completable(r, w, order, memo)));
        memo.insert((rem, wrem), b);
        b
    }
}

/// Generators sorted by degree, with the memo of completable (degree, weight)
/// pairs.
struct Walk<'a> {
    order: &'a [u32],
    memo: &'a mut HashMap<(usize, Weight), bool>,
}

impl Walk<'_> {
    fn reborrow(&mut self) -> Walk<'_> {
        Walk { order: self.order, memo: self.memo }
    }
}

/// Solves `D c = r` for `c` in the span of fixed polynomials.
pub(crate) struct PolySolver {
    field: Fp,
    basis: Vec<NcPoly>,
    index: HashMap<Word, usize>,
    echelon: Echelon,
}

impl PolySolver {
    pub(crate) fn new(field: Fp, basis: Vec<NcPoly>, apply: impl Fn(&NcPoly) -> NcPoly) -> Self {
        let mut s = PolySolver {
            field,
            basis: Vec::new(),
            index: HashMap::new(),
            echelon: Echelon::new(field),
        };
        for (j, b) in basis.iter().enumerate() {
            let v = s.vectorize(&apply(b), true).expect("growing index");
            let _ = s.echelon.insert(&v, SparseVec::unit(j));
        }
        s.basis = basis;
        s
    }

    fn vectorize(&mut self, p: &NcPoly, grow: bool) -> Option<SparseVec> {
        let mut entries = Vec::with_capacity(p.len());
        for (w, c) in p.terms() {
            let i = match self.index.get(w) {
                Some(&i) => i,
                None if grow => {
                    let i = self.index.len();
                    self.index.insert(w.clone(), i);
                    i
                }
                None => return None,
            };
            entries.push((i, c));
        }
        Some(SparseVec::from_entries(self.field, entries))
    }

    /// Some `c` with `D c = r`, the echelon-reduced choice.
    pub(crate) fn solve(&mut self, r: &NcPoly) -> Option<NcPoly> {
        let v = self.vectorize(r, false)?;
        let x = self.echelon.solve(&v)?;
        let mut c = NcPoly::zero();
        for (j, a) in x.iter() {
            c.add_scaled(self.field, &self.basis[j], a);
        }
        Some(c)
    }
}

/// Builds `d̂ = D0 + c` on pair generators in increasing degree, with `c` a
/// decomposable element of `ker Ψ` of the same weight solving
/// `d̂ c = -d̂ D0(v#w)`.
pub fn lift_hat_differential(base: &FreeDgaModel) -> Result<HatModel> {
    let mut hat = HatModel::new(base)?;
    let f = hat.field();
    let top = hat.max_degree();
    let mut solvers: HashMap<(usize, Weight), PolySolver> = HashMap::new();
    let order: Vec<u32> = (0..hat.gens.len() as u32).filter(|&g| matches!(hat.kinds[g as usize], HatGen::Pair(..))).collect();
    for g in order {
        let n = hat.gens.degree(g);
        if n + 1 > top {
            // d̂g lies beyond the truncation
            continue;
        }
        let r = hat.apply(&hat.d0[g as usize]);
        if r.is_zero() {
            continue;
        }
        let weight = hat.weights[g as usize];
        let key = (n + 1, weight);
        if !solvers.contains_key(&key) {
            let basis = hat.kernel_basis(n + 1, weight);
            let solver = PolySolver::new(f, basis, |p| hat.apply(p));
            solvers.insert(key, solver);
        }
        match solvers.get_mut(&key).unwrap().solve(&r.scale(f, f.neg(1))) {
            Some(c) => hat.diff[g as usize].add_scaled(f, &c, 1),
            None if n + 2 > top => hat.unsolved.push(g),
            None => {
                return Err(Error::Unsolvable(format!(
                    "obstruction for {} in degree {} has no solution; increase the maximal degree",
                    hat.gens.name(g),
                    n + 2
                )))
            }
        }
    }
    Ok(hat)
}
