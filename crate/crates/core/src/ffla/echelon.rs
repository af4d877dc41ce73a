use std::collections::{BTreeMap, HashMap};

use super::field::Fp;
use super::sparse::{Accumulator, SparseMatrix, SparseVec};

/// Incremental column echelon form.
///
/// Every stored vector carries a payload, a vector in some other space, and
/// reduction is linear in both: if `v` reduces to `residual` through stored
/// vectors with coefficients `c_k`, the returned payload is `sum c_k payload_k`.
/// Pivots are the smallest nonzero row of each stored vector, which makes the
/// elimination deterministic in the insertion order.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Fp,
    pivot_slot: HashMap<usize, usize>,
    vectors: Vec<SparseVec>,
    payloads: Vec<SparseVec>,
}

/// Outcome of reducing a vector against an [`Echelon`].
#[derive(Clone, Debug)]
pub struct Reduction {
    pub residual: SparseVec,
    pub payload: SparseVec,
}

impl Echelon {
    pub fn new(field: Fp) -> Self {
        Echelon {
            field,
            pivot_slot: HashMap::new(),
            vectors: Vec::new(),
            payloads: Vec::new(),
        }
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    pub fn pivot_rows(&self) -> impl Iterator<Item = usize> + '_ {
        self.vectors.iter().map(|v| v.leading().unwrap().0)
    }

    pub fn vector(&self, slot: usize) -> &SparseVec {
        &self.vectors[slot]
    }

    pub fn payload(&self, slot: usize) -> &SparseVec {
        &self.payloads[slot]
    }

    pub fn has_pivot(&self, row: usize) -> bool {
        self.pivot_slot.contains_key(&row)
    }

    /// Reduces `v` as far as the stored pivots allow.
    pub fn reduce(&self, v: &SparseVec) -> Reduction {
        self.reduce_with(v, true)
    }

    /// Reduces without tracking payloads.
    pub fn residual(&self, v: &SparseVec) -> SparseVec {
        self.reduce_with(v, false).residual
    }

    fn reduce_with(&self, v: &SparseVec, track: bool) -> Reduction {
        let f = self.field;
        let mut work: BTreeMap<usize, u32> = v.iter().collect();
        let mut residual = Vec::new();
        let mut payload = Accumulator::new(f);
        while let Some((&row, &c)) = work.iter().next() {
            match self.pivot_slot.get(&row) {
                None => {
                    residual.push((row, c));
                    work.remove(&row);
                }
                Some(&slot) => {
                    // stored vectors have leading coefficient 1
                    let neg = f.neg(c);
                    for (i, a) in self.vectors[slot].iter() {
                        let e = work.entry(i).or_insert(0);
                        *e = f.add(*e, f.mul(a, neg));
                        if *e == 0 {
                            work.remove(&i);
                        }
                    }
                    if track {
                        payload.add_vec(&self.payloads[slot], c);
                    }
                }
            }
        }
        Reduction {
            residual: SparseVec::from_sorted(residual),
            payload: payload.finish(),
        }
    }

    /// Inserts `v` with `payload`. Returns `Ok(slot)` if it added a pivot, or
    /// `Err(payload - reduction payload)` when `v` was already in the span.
    pub fn insert(&mut self, v: &SparseVec, payload: SparseVec) -> Result<usize, SparseVec> {
        let f = self.field;
        let red = self.reduce(v);
        let pay = payload.sub(f, &red.payload);
        match red.residual.leading() {
            None => Err(pay),
            Some((row, c)) => {
                let inv = f.inv(c);
                let slot = self.vectors.len();
                self.vectors.push(red.residual.scale(f, inv));
                self.payloads.push(pay.scale(f, inv));
                self.pivot_slot.insert(row, slot);
                Ok(slot)
            }
        }
    }

    /// Solves `x` with `sum x_k vector_k = b`, expressed through payloads.
    pub fn solve(&self, b: &SparseVec) -> Option<SparseVec> {
        let red = self.reduce(b);
        red.residual.is_zero().then_some(red.payload)
    }
}

/// Echelon form for solving `sum x_j v_j = b` over many right-hand sides.
///
/// Unlike [`Echelon`] it keeps no expanded payloads: each stored vector
/// remembers the reduction steps that produced it, and a solution is expanded
/// only when asked for. Pivots are the largest nonzero row, which keeps fill-in
/// low on Hochschild differentials whose terms have larger indices than their
/// source.
#[derive(Clone, Debug, Default)]
pub struct Eliminator {
    pivot_slot: HashMap<usize, usize>,
    vectors: Vec<SparseVec>,
    // column index and the inverse of the pivot coefficient it was scaled by
    sources: Vec<(usize, u32)>,
    // (earlier slot, coefficient) subtracted while reducing
    history: Vec<Vec<(usize, u32)>>,
}

impl Eliminator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    fn reduce(&self, f: Fp, v: &SparseVec) -> (SparseVec, Vec<(usize, u32)>) {
        let mut work: BTreeMap<usize, u32> = v.iter().collect();
        let mut residual = Vec::new();
        let mut steps = Vec::new();
        while let Some((&row, &c)) = work.iter().next_back() {
            match self.pivot_slot.get(&row) {
                None => {
                    residual.push((row, c));
                    work.remove(&row);
                }
                Some(&slot) => {
                    let neg = f.neg(c);
                    for (i, a) in self.vectors[slot].iter() {
                        let e = work.entry(i).or_insert(0);
                        *e = f.add(*e, f.mul(a, neg));
                        if *e == 0 {
                            work.remove(&i);
                        }
                    }
                    steps.push((slot, c));
                }
            }
        }
        residual.reverse();
        (SparseVec::from_sorted(residual), steps)
    }

    /// Adds column `j` with value `v`; returns whether the rank grew.
    pub fn insert(&mut self, f: Fp, j: usize, v: &SparseVec) -> bool {
        let (residual, steps) = self.reduce(f, v);
        let Some(&(row, c)) = residual.entries().last() else {
            return false;
        };
        let inv = f.inv(c);
        self.pivot_slot.insert(row, self.vectors.len());
        self.vectors.push(residual.scale(f, inv));
        self.sources.push((j, inv));
        self.history.push(steps);
        true
    }

    /// Some `x` with `sum x_j v_j = b`, or `None` outside the span.
    pub fn solve(&self, f: Fp, b: &SparseVec) -> Option<SparseVec> {
        let (residual, steps) = self.reduce(f, b);
        if !residual.is_zero() {
            return None;
        }
        // stored vector s is inv_s (v_{j_s} - sum_k c_k stored_k)
        let mut coef: BTreeMap<usize, u32> = BTreeMap::new();
        for (slot, c) in steps {
            let e = coef.entry(slot).or_insert(0);
            *e = f.add(*e, c);
        }
        let mut x = Accumulator::new(f);
        while let Some((slot, a)) = coef.pop_last() {
            if a == 0 {
                continue;
            }
            let (j, inv) = self.sources[slot];
            let scaled = f.mul(a, inv);
            x.add(j, scaled);
            for &(k, c) in &self.history[slot] {
                let e = coef.entry(k).or_insert(0);
                *e = f.sub(*e, f.mul(scaled, c));
            }
        }
        Some(x.finish())
    }
}

/// Rank, kernel and solving data for a matrix.
#[derive(Clone, Debug)]
pub struct RankKernel {
    pub rank: usize,
    pub kernel_basis: Vec<SparseVec>,
    /// Echelon of the columns; payloads are the column combinations.
    pub pivots: Echelon,
}

impl RankKernel {
    /// Solves `M x = b`; `None` when `b` is outside the column space.
    pub fn solve(&self, b: &SparseVec) -> Option<SparseVec> {
        self.pivots.solve(b)
    }
}

pub fn rank_kernel_image(m: &SparseMatrix) -> RankKernel {
    let mut ech = Echelon::new(m.field());
    let mut kernel_basis = Vec::new();
    for (j, col) in m.columns().iter().enumerate() {
        if let Err(k) = ech.insert(col, SparseVec::unit(j)) {
            kernel_basis.push(k);
        }
    }
    RankKernel {
        rank: ech.rank(),
        kernel_basis,
        pivots: ech,
    }
}

/// Plain dense Gaussian elimination rank; kept independent of [`Echelon`]
/// so it can serve as a cross-check.
pub fn dense_rank(field: Fp, rows: &mut [Vec<u32>]) -> usize {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pr) = (rank..nrows).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pr);
        let inv = field.inv(rows[rank][col]);
        for c in 0..ncols {
            rows[rank][c] = field.mul(rows[rank][c], inv);
        }
        for r in 0..nrows {
            if r != rank && rows[r][col] != 0 {
                let k = rows[r][col];
                for c in 0..ncols {
                    let sub = field.mul(k, rows[rank][c]);
                    rows[r][c] = field.sub(rows[r][c], sub);
                }
            }
        }
        rank += 1;
    }
    rank
}
