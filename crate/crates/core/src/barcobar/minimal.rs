use super::model::FreeDgaModel;
use crate::dga::{substitute, word_degree, DgaMap, FreeAlgebra, Generators, NcPoly};
use crate::error::{Error, Result};
use crate::ffla::{rank_kernel_image, Echelon, SparseMatrix, SparseVec};

/// A minimal model `(TV, d_V)` extracted from a free model `(TU, D)`,
/// with the projection `p_V: TU -> TV`. The section `φ_V: TV -> TU` is
/// computed on demand by [`Minimalization::section`].
#[derive(Clone, Debug)]
pub struct Minimalization {
    pub minimal: FreeDgaModel,
    /// `p_V` on each generator of `U`.
    pub p: Vec<NcPoly>,
    /// For each generator `v` of `V`, a cycle of the linear part of `D` in
    /// `U` with `p_V` equal to `v`.
    pub cycles: Vec<NcPoly>,
    source: FreeDgaModel,
}

fn poly_from_local(field: crate::ffla::Fp, gens: &[u32], v: &SparseVec) -> NcPoly {
    let mut p = NcPoly::zero();
    for (i, c) in v.iter() {
        p.add_term(field, vec![gens[i]], c);
    }
    p
}

fn local_from_linear(field: crate::ffla::Fp, p: &NcPoly, local: &[usize]) -> SparseVec {
    SparseVec::from_entries(field, p.terms().map(|(w, c)| (local[w[0] as usize], c)))
}

/// Splits `U = V ⊕ S ⊕ D1 S` degree by degree, where `D1` is the linear part
/// of `D`, and projects onto `TV` along the acyclic ideal generated by `S`
/// and `DS`. Complements are chosen by elimination in generator order.
pub fn minimalize(model: &FreeDgaModel) -> Result<Minimalization> {
    let f = model.field();
    let gens = model.generators();
    let top = model.max_degree();
    let mut local = vec![usize::MAX; gens.len()];
    let mut by_degree: Vec<Vec<u32>> = vec![Vec::new(); top + 2];
    for g in 0..gens.len() as u32 {
        let d = gens.degree(g);
        local[g as usize] = by_degree[d].len();
        by_degree[d].push(g);
    }
    let keep = |w: &Vec<u32>, degs: &[usize]| word_degree(degs, w) <= top;

    let mut vgens = Generators::new();
    let mut vdiff: Vec<NcPoly> = Vec::new();
    let mut vvec: Vec<NcPoly> = Vec::new();
    let mut p: Vec<NcPoly> = vec![NcPoly::zero(); gens.len()];
    // (s, D1 s) pairs from the previous degree
    let mut from_below: Vec<(u32, SparseVec)> = Vec::new();
    for n in 2..=top {
        let un = &by_degree[n];
        let next = &by_degree[n + 1];
        let d1 = |g: u32| -> SparseVec {
            if next.is_empty() {
                SparseVec::new()
            } else {
                local_from_linear(f, &model.linear_part(g), &local)
            }
        };
        let columns: Vec<SparseVec> = un.iter().map(|&g| d1(g)).collect();
        let d1m = SparseMatrix::from_columns(f, next.len(), columns)?;
        let kernel = rank_kernel_image(&d1m).kernel_basis;

        // basis of U^n: D1 S first, then V, then S
        let mut ech = Echelon::new(f);
        let mut roles: Vec<Role> = Vec::new();
        for (s, b) in &from_below {
            ech.insert(b, SparseVec::unit(roles.len()))
                .map_err(|_| Error::Integrity("D1 is not injective on S".into()))?;
            roles.push(Role::Boundary(*s));
        }
        let mut new_v = Vec::new();
        for z in &kernel {
            if ech.insert(z, SparseVec::unit(roles.len())).is_ok() {
                roles.push(Role::Cycle(new_v.len()));
                new_v.push(z.clone());
            }
        }
        let mut new_s = Vec::new();
        for (i, &g) in un.iter().enumerate() {
            if ech.insert(&SparseVec::unit(i), SparseVec::unit(roles.len())).is_ok() {
                roles.push(Role::Free);
                new_s.push(g);
            }
        }
        // new generators of V
        let first_v = vgens.len() as u32;
        for (k, z) in new_v.iter().enumerate() {
            let name = match z.iter().collect::<Vec<_>>().as_slice() {
                [(i, 1)] => gens.name(un[*i]).to_string(),
                _ => format!("v{n}_{k}"),
            };
            vgens.push(name, n);
            vvec.push(poly_from_local(f, un, z));
        }
        // p on U^n
        let vdegs = vgens.degrees().to_vec();
        for (i, &g) in un.iter().enumerate() {
            let coords = ech.solve(&SparseVec::unit(i)).expect("basis of U^n");
            let mut img = NcPoly::zero();
            for (r, c) in coords.iter() {
                match roles[r] {
                    Role::Cycle(k) => img.add_term(f, vec![first_v + k as u32], c),
                    Role::Boundary(s) => {
                        // p(D1 s) = -p(D2 s)
                        let t = substitute(f, &p, &model.higher_part(s), |w| keep(w, &vdegs));
                        img.add_scaled(f, &t, f.neg(c));
                    }
                    Role::Free => {}
                }
            }
            p[g as usize] = img;
        }
        // d_V = p D on the new generators
        for k in 0..new_v.len() {
            let dv = model.apply(&vvec[first_v as usize + k]);
            let higher = {
                let mut h = NcPoly::zero();
                for (w, c) in dv.terms() {
                    if w.len() >= 2 {
                        h.add_term(f, w.clone(), c);
                    }
                }
                h
            };
            vdiff.push(substitute(f, &p, &higher, |w| keep(w, &vdegs)));
        }
        from_below = new_s.iter().map(|&s| (s, d1(s))).collect();
    }
    let minimal = FreeDgaModel::new(f, vgens, vdiff, top)?;
    Ok(Minimalization {
        minimal,
        p,
        cycles: vvec,
        source: model.clone(),
    })
}

#[derive(Clone, Copy, Debug)]
enum Role {
    Boundary(u32),
    Cycle(usize),
    Free,
}

/// `φ(v) = v + y` with `y` in the kernel of `p` and `D φ(v) = φ(d_V v)`.
fn section(model: &FreeDgaModel, minimal: &FreeDgaModel, p: &[NcPoly], vvec: &[NcPoly]) -> Result<Vec<NcPoly>> {
    let f = model.field();
    let top = model.max_degree();
    let tu = model.algebra(top)?;
    let tv = minimal.algebra(top)?;
    let udegs = model.generators().degrees().to_vec();
    let vgens = minimal.generators();
    let mut phi: Vec<NcPoly> = Vec::with_capacity(vgens.len());
    let mut cache: Vec<Option<KernelSolver>> = (0..=top).map(|_| None).collect();
    for v in 0..vgens.len() as u32 {
        let n = vgens.degree(v);
        let base = vvec[v as usize].clone();
        if n + 1 > top {
            phi.push(base);
            continue;
        }
        let target = substitute(f, &phi, minimal.diff(v), |w| word_degree(&udegs, w) <= top);
        let mut rhs = target;
        rhs.add_scaled(f, &model.apply(&base), f.neg(1));
        if rhs.is_zero() {
            phi.push(base);
            continue;
        }
        if cache[n].is_none() {
            cache[n] = Some(KernelSolver::new(&tu, &tv, p, n)?);
        }
        let solver = cache[n].as_ref().unwrap();
        let y = solver.solve(&tu, &rhs).ok_or_else(|| {
            Error::Unsolvable(format!(
                "no section value for {} in degree {n}; increase the maximal degree",
                vgens.name(v)
            ))
        })?;
        let mut img = base;
        img.add_scaled(f, &y, 1);
        phi.push(img);
    }
    Ok(phi)
}

/// Solves `D y = b` for `y` in `ker p` in one degree of `TU`.
struct KernelSolver {
    degree: usize,
    kernel: Vec<SparseVec>,
    images: crate::ffla::RankKernel,
}

impl KernelSolver {
    fn new(tu: &FreeAlgebra, tv: &FreeAlgebra, p: &[NcPoly], n: usize) -> Result<Self> {
        let f = tu.dga().field();
        let a = tu.dga();
        let vdegs = tv.generators().degrees().to_vec();
        let top = a.max_degree();
        let pcols = a
            .basis(n)
            .iter()
            .map(|&i| {
                let img = substitute(f, p, &NcPoly::word(tu.word(i).clone()), |w| word_degree(&vdegs, w) <= top);
                tv.dga().localize(&tv.to_vec(&img))
            })
            .collect();
        let pm = SparseMatrix::from_columns(f, tv.dga().dim(n), pcols)?;
        let kernel = rank_kernel_image(&pm).kernel_basis;
        let dm = a.degree_differential(n).expect("below the truncation");
        let cols = kernel.iter().map(|k| dm.apply(k)).collect();
        let images = rank_kernel_image(&SparseMatrix::from_columns(f, a.dim(n + 1), cols)?);
        Ok(KernelSolver {
            degree: n,
            kernel,
            images,
        })
    }

    fn solve(&self, tu: &FreeAlgebra, b: &NcPoly) -> Option<NcPoly> {
        let f = tu.dga().field();
        let a = tu.dga();
        let rhs = a.localize(&tu.to_vec(b));
        let x = self.images.solve(&rhs)?;
        let mut y = SparseVec::new();
        for (j, c) in x.iter() {
            y = y.add(f, &self.kernel[j].scale(f, c));
        }
        Some(tu.to_poly(&a.globalize(self.degree, &y)))
    }
}

impl Minimalization {
    /// `φ_V` on each generator of `V`: `φ_V(v)` is the cycle of `v` plus a
    /// correction in `ker p_V`. Enumerates `TU` up to the truncation.
    pub fn section(&self) -> Result<Vec<NcPoly>> {
        section(&self.source, &self.minimal, &self.p, &self.cycles)
    }

    /// `p_V` between finite presentations of `TU` and `TV`.
    pub fn p_map(&self, tu: &FreeAlgebra, tv: &FreeAlgebra) -> Result<DgaMap> {
        let f = tu.dga().field();
        let top = tv.dga().max_degree();
        let vdegs = tv.generators().degrees().to_vec();
        let images = (0..tu.dga().len())
            .map(|i| {
                let img = substitute(f, &self.p, &NcPoly::word(tu.word(i).clone()), |w| word_degree(&vdegs, w) <= top);
                tv.to_vec(&img)
            })
            .collect();
        DgaMap::new(tu.dga(), tv.dga(), images)
    }

    /// `φ_V` between finite presentations of `TV` and `TU`.
    pub fn phi_map(&self, tv: &FreeAlgebra, tu: &FreeAlgebra) -> Result<DgaMap> {
        let phi = self.section()?;
        let f = tv.dga().field();
        let top = tu.dga().max_degree();
        let udegs = tu.generators().degrees().to_vec();
        let images = (0..tv.dga().len())
            .map(|i| {
                let img = substitute(f, &phi, &NcPoly::word(tv.word(i).clone()), |w| word_degree(&udegs, w) <= top);
                tu.to_vec(&img)
            })
            .collect();
        DgaMap::new(tv.dga(), tu.dga(), images)
    }

    /// First generator `v` of `V` with `p_V φ_V (v) != v`.
    pub fn retraction_witness(&self) -> Result<Option<u32>> {
        let f = self.minimal.field();
        let phi = self.section()?;
        Ok((0..self.minimal.len() as u32).find(|&v| {
            let back = substitute(f, &self.p, &phi[v as usize], |_| true);
            back != NcPoly::generator(v)
        }))
    }
}
