use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

use crate::barcobar::bar_differential_terms;
use crate::dga::{Dga, DgaMap};
use crate::error::{Error, Result};
use crate::ffla::{homology_from_maps, Accumulator, HomologySlice, SparseMatrix, SparseVec};

/// Extra grading on basis elements, additive under products, preserved by the
/// differential. Complexes split into pieces by total weight.
pub type Weight = [u32; 2];

pub fn add_weight(a: Weight, b: Weight) -> Weight {
    [a[0] + b[0], a[1] + b[1]]
}

fn fits(a: Weight, bound: Weight) -> bool {
    a[0] <= bound[0] && a[1] <= bound[1]
}

/// Basis of `A ⊗ BA` in one degree and weight. An element `a0[a1|...|ak]`
/// is stored as the key `[a0, a1, ..., ak]`.
#[derive(Debug)]
pub struct Piece {
    degree: usize,
    weight: Weight,
    elems: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
}

impl Piece {
    fn new(degree: usize, weight: Weight, elems: Vec<Vec<u32>>) -> Self {
        let index = elems.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        Piece {
            degree,
            weight,
            elems,
            index,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn weight(&self) -> Weight {
        self.weight
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elem(&self, i: usize) -> &[u32] {
        &self.elems[i]
    }

    pub fn elems(&self) -> &[Vec<u32>] {
        &self.elems
    }

    pub fn index_of(&self, key: &[u32]) -> Option<usize> {
        self.index.get(key).copied()
    }
}

/// Degree of `a0[a1|...|ak]`: `|a0| + sum (|ai| - 1)`.
pub fn element_degree(alg: &Dga, key: &[u32]) -> usize {
    alg.degree(key[0] as usize) + key[1..].iter().map(|&l| alg.degree(l as usize) - 1).sum::<usize>()
}

/// The normalized Hochschild complex of a connected algebra with `A^1 = 0`.
///
/// Pieces, differentials and homology are computed on demand and cached.
pub struct HochschildComplex<'a> {
    alg: &'a Dga,
    weights: Vec<Weight>,
    letters: Vec<u32>,
    pieces: Mutex<HashMap<(usize, Weight), Arc<Piece>>>,
    weight_lists: Mutex<HashMap<usize, Arc<Vec<Weight>>>>,
    homology: Mutex<HashMap<(usize, Weight), Arc<HomologySlice>>>,
}

impl<'a> HochschildComplex<'a> {
    pub fn new(alg: &'a Dga) -> Result<Self> {
        Self::with_weights(alg, vec![[0, 0]; alg.len()])
    }

    /// `weights[i]` is the weight of basis element `i`; the unit must have
    /// weight zero, and the differential and products must preserve weight.
    pub fn with_weights(alg: &'a Dga, weights: Vec<Weight>) -> Result<Self> {
        if !alg.is_connected() {
            return Err(Error::NotConnected("degree 0 must be spanned by the unit".into()));
        }
        if alg.dim(1) != 0 {
            return Err(Error::NotConnected(
                "classes in degree 1 make the bar construction infinite in each degree".into(),
            ));
        }
        if weights.len() != alg.len() || weights[0] != [0, 0] {
            return Err(Error::Invalid("weights must cover the basis and vanish on the unit".into()));
        }
        let mut letters: Vec<u32> = (1..alg.len() as u32).collect();
        letters.sort_by_key(|&l| (alg.degree(l as usize), l));
        Ok(HochschildComplex {
            alg,
            weights,
            letters,
            pieces: Mutex::new(HashMap::new()),
            weight_lists: Mutex::new(HashMap::new()),
            homology: Mutex::new(HashMap::new()),
        })
    }

    pub fn algebra(&self) -> &'a Dga {
        self.alg
    }

    pub fn weight_of(&self, i: usize) -> Weight {
        self.weights[i]
    }

    pub fn key_weight(&self, key: &[u32]) -> Weight {
        key.iter().fold([0, 0], |w, &i| add_weight(w, self.weights[i as usize]))
    }

    /// Hochschild degrees in which the truncated algebra agrees with the
    /// untruncated one.
    pub fn reliable_degree(&self) -> usize {
        self.alg.max_degree().saturating_sub(2)
    }

    fn enumerate(&self, n: usize, weight: Option<Weight>) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let bound = weight.unwrap_or([u32::MAX, u32::MAX]);
        for a0 in 0..self.alg.len() {
            let d0 = self.alg.degree(a0);
            let w0 = self.weights[a0];
            if d0 > n || !fits(w0, bound) {
                continue;
            }
            let mut key = vec![a0 as u32];
            self.extend_words(&mut key, n - d0, w0, bound, weight.is_some(), &mut out);
        }
        out
    }

    fn extend_words(
        &self,
        key: &mut Vec<u32>,
        remaining: usize,
        w: Weight,
        bound: Weight,
        exact: bool,
        out: &mut Vec<Vec<u32>>,
    ) {
        if remaining == 0 {
            if !exact || w == bound {
                out.push(key.clone());
            }
            return;
        }
        for &l in &self.letters {
            let shifted = self.alg.degree(l as usize) - 1;
            if shifted > remaining {
                break;
            }
            let wl = add_weight(w, self.weights[l as usize]);
            if !fits(wl, bound) {
                continue;
            }
            key.push(l);
            self.extend_words(key, remaining - shifted, wl, bound, exact, out);
            key.pop();
        }
    }

    /// Weights occurring in degree `n`, sorted.
    pub fn weights_in_degree(&self, n: usize) -> Arc<Vec<Weight>> {
        if let Some(w) = self.weight_lists.lock().unwrap().get(&n) {
            return w.clone();
        }
        let set: BTreeSet<Weight> = self.enumerate(n, None).iter().map(|k| self.key_weight(k)).collect();
        let list = Arc::new(set.into_iter().collect::<Vec<_>>());
        self.weight_lists.lock().unwrap().insert(n, list.clone());
        list
    }

    pub fn piece(&self, n: usize, weight: Weight) -> Arc<Piece> {
        if let Some(p) = self.pieces.lock().unwrap().get(&(n, weight)) {
            return p.clone();
        }
        let piece = Arc::new(Piece::new(n, weight, self.enumerate(n, Some(weight))));
        self.pieces.lock().unwrap().insert((n, weight), piece.clone());
        piece
    }

    pub fn dim(&self, n: usize) -> usize {
        self.weights_in_degree(n).iter().map(|&w| self.piece(n, w).len()).sum()
    }

    /// Calls `emit(key, coeff)` for every term of `D(a0[a1|...|ak])`:
    /// the internal differential, `d0` joining `a0 a1` and `-dn` wrapping
    /// `ak a0` around.
    pub fn differential_terms(&self, key: &[u32], mut emit: impl FnMut(&[u32], u32)) {
        let alg = self.alg;
        let f = alg.field();
        let deg = |i: u32| alg.degree(i as usize);
        let k = key.len() - 1;
        let d0 = deg(key[0]);
        // eps[i] = sum_{0 < j < i} (|a_j| - 1)
        let mut eps = vec![0usize; k + 2];
        for i in 1..=k {
            eps[i + 1] = eps[i] + deg(key[i]) - 1;
        }
        let mut buf: Vec<u32> = key.to_vec();
        for (b, c) in alg.diff(key[0] as usize).iter() {
            buf[0] = b as u32;
            emit(&buf, c);
        }
        buf[0] = key[0];
        // a0 ⊗ d_BA(w), with the Koszul sign of passing a0
        let s0 = f.sign(d0 % 2 == 1);
        bar_differential_terms(alg, &key[1..], |w, c| {
            buf.truncate(1);
            buf.extend_from_slice(w);
            emit(&buf, f.mul(s0, c));
        });
        if k >= 1 {
            let mut short: Vec<u32> = Vec::with_capacity(k);
            let s = f.sign(d0 % 2 == 1);
            for (b, c) in alg.mul(key[0] as usize, key[1] as usize).iter() {
                short.clear();
                short.push(b as u32);
                short.extend_from_slice(&key[2..]);
                emit(&short, f.mul(s, c));
            }
            let s = f.sign(((deg(key[k]) - 1) * (d0 + eps[k])) % 2 == 0);
            for (b, c) in alg.mul(key[k] as usize, key[0] as usize).iter() {
                short.clear();
                short.push(b as u32);
                short.extend_from_slice(&key[1..k]);
                emit(&short, f.mul(s, c));
            }
        }
    }

    /// `D` applied to a vector of the piece `(n, weight)`.
    pub fn differential_vec(&self, n: usize, weight: Weight, v: &SparseVec) -> Result<SparseVec> {
        let src = self.piece(n, weight);
        let tgt = self.piece(n + 1, weight);
        let mut acc = Accumulator::new(self.alg.field());
        let mut missing = None;
        for (i, c) in v.iter() {
            self.differential_terms(src.elem(i), |key, a| match tgt.index_of(key) {
                Some(j) => acc.add(j, self.alg.field().mul(a, c)),
                None => missing = Some(key.to_vec()),
            });
        }
        if let Some(key) = missing {
            return Err(Error::Integrity(format!(
                "differential of a degree {n} element leaves its weight piece at {}",
                self.format_key(&key)
            )));
        }
        Ok(acc.finish())
    }

    /// Matrix of `D` from `(n, weight)` to `(n + 1, weight)`.
    pub fn differential(&self, n: usize, weight: Weight) -> Result<SparseMatrix> {
        let src = self.piece(n, weight);
        let tgt = self.piece(n + 1, weight);
        let columns = (0..src.len())
            .map(|i| self.differential_vec(n, weight, &SparseVec::unit(i)))
            .collect::<Result<Vec<_>>>()?;
        SparseMatrix::from_columns(self.alg.field(), tgt.len(), columns)
    }

    pub fn homology(&self, n: usize, weight: Weight) -> Result<Arc<HomologySlice>> {
        if let Some(h) = self.homology.lock().unwrap().get(&(n, weight)) {
            return Ok(h.clone());
        }
        let incoming = if n > 0 { Some(self.differential(n - 1, weight)?) } else { None };
        let outgoing = self.differential(n, weight)?;
        let dim = self.piece(n, weight).len();
        let h = Arc::new(homology_from_maps(self.alg.field(), dim, incoming.as_ref(), Some(&outgoing), n)?);
        self.homology.lock().unwrap().insert((n, weight), h.clone());
        Ok(h)
    }

    /// Dimension of `HH` in degree `n`.
    pub fn hh_dim(&self, n: usize) -> Result<usize> {
        let mut total = 0;
        for &w in self.weights_in_degree(n).iter() {
            total += self.homology(n, w)?.dim();
        }
        Ok(total)
    }

    pub fn format_key(&self, key: &[u32]) -> String {
        let letters: Vec<&str> = key[1..].iter().map(|&l| self.alg.label(l as usize)).collect();
        format!("{}[{}]", self.alg.label(key[0] as usize), letters.join("|"))
    }

    pub fn format_vec(&self, piece: &Piece, v: &SparseVec) -> String {
        crate::dga::format_combination(self.alg.field(), v, |i| self.format_key(piece.elem(i)))
    }

    /// Parses `a0[a1|...|ak]` with basis labels of the algebra.
    pub fn parse_key(&self, s: &str) -> Result<Vec<u32>> {
        let s = s.trim();
        let (head, rest) = match s.find('[') {
            Some(i) if s.ends_with(']') => (&s[..i], &s[i + 1..s.len() - 1]),
            _ => return Err(Error::Invalid(format!("expected a0[a1|...|ak], got {s}"))),
        };
        let lookup = |l: &str| {
            self.alg
                .index_of(l.trim())
                .map(|i| i as u32)
                .ok_or_else(|| Error::Invalid(format!("unknown basis label {}", l.trim())))
        };
        let mut key = vec![lookup(if head.trim().is_empty() { "1" } else { head })?];
        if !rest.trim().is_empty() {
            for l in rest.split('|') {
                let i = lookup(l)?;
                if i == 0 {
                    return Err(Error::Invalid("letters must lie in the augmentation ideal".into()));
                }
                key.push(i);
            }
        }
        Ok(key)
    }
}

/// Image of a chain under `C(f)`: `a0[a1|...] -> f(a0)[f(a1)|...]`, expanded
/// multilinearly into the piece `(n, target_weight)` of `target`.
pub fn map_chain(
    f: &DgaMap,
    piece: &Piece,
    target: &HochschildComplex,
    target_weight: Weight,
    v: &SparseVec,
) -> Result<SparseVec> {
    let field = target.algebra().field();
    let tgt = target.piece(piece.degree(), target_weight);
    let mut acc = Accumulator::new(field);
    let mut missing = false;
    for (i, c) in v.iter() {
        let key = piece.elem(i);
        let mut partial: Vec<(Vec<u32>, u32)> = vec![(Vec::with_capacity(key.len()), c)];
        for &x in key {
            let img = f.image(x as usize);
            let mut next = Vec::with_capacity(partial.len() * img.len());
            for (k, a) in &partial {
                for (j, b) in img.iter() {
                    let mut k2 = k.clone();
                    k2.push(j as u32);
                    next.push((k2, field.mul(*a, b)));
                }
            }
            partial = next;
            if partial.is_empty() {
                break;
            }
        }
        for (k, a) in partial {
            if k[1..].contains(&0) {
                continue;
            }
            match tgt.index_of(&k) {
                Some(j) => acc.add(j, a),
                None => missing = true,
            }
        }
    }
    if missing {
        return Err(Error::Integrity(format!(
            "image of a degree {} chain lies outside the target weight piece",
            piece.degree()
        )));
    }
    Ok(acc.finish())
}
