//! Independent checks shared by the acceptance suite and the property tests.
//! Each returns `Err` with a description of the first failure.

#![allow(dead_code)]

use hhloop::barcobar::{cobar_of_bar, minimalize, BarComplex, BarHomologyRing};
use hhloop::dga::Dga;
use hhloop::ffla::{Echelon, Fp, SparseVec};
use hhloop::hochschild::{
    hh_product_commutative, map_chain, rho_star, HochschildComplex, HomologyPresentation, ShuffleProduct,
};
use hhloop::shcmodel::{
    hh_product_shc, lift_hat_differential, lift_mu, mu0_through_minimalization, SectionStrategy, ShcContext,
};

pub type Check = std::result::Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($arg:tt)*) => {
        if !$cond {
            return Err(format!($($arg)*));
        }
    };
}

pub fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Binomial coefficient mod `p` by Pascal's rule.
pub fn binom_mod(n: usize, k: usize, p: u32) -> u32 {
    if k > n {
        return 0;
    }
    let mut row = vec![1u32];
    for _ in 0..n {
        let mut next = vec![1u32; row.len() + 1];
        for i in 1..row.len() {
            next[i] = (row[i - 1] + row[i]) % p;
        }
        row = next;
    }
    row[k]
}

/// `D² = 0` on the Hochschild complex up to degree `top`, weight by weight.
pub fn hochschild_square_zero(alg: &Dga, top: usize) -> Check {
    let hc = HochschildComplex::new(alg).map_err(err)?;
    for n in 0..top {
        for &w in hc.weights_in_degree(n).iter() {
            let d0 = hc.differential(n, w).map_err(err)?;
            let d1 = hc.differential(n + 1, w).map_err(err)?;
            let dd = d1.compose(&d0).map_err(err)?;
            if let Some(j) = (0..dd.cols()).find(|&j| !dd.column(j).is_zero()) {
                return Err(format!("Hochschild D² != 0 on {}", hc.format_key(hc.piece(n, w).elem(j))));
            }
        }
    }
    Ok(())
}

/// Poincaré series of a product of graded pieces, truncated at `top`. Each
/// factor lists its dimensions by degree; a factor given by `periodic(d)` is
/// the series of `1/(1 - t^d)`.
pub fn series(factors: &[Vec<usize>], top: usize) -> Vec<usize> {
    let mut acc = vec![0; top + 1];
    acc[0] = 1;
    for f in factors {
        let mut next = vec![0; top + 1];
        for (i, a) in acc.iter().enumerate() {
            for (j, b) in f.iter().enumerate() {
                if i + j <= top {
                    next[i + j] += a * b;
                }
            }
        }
        acc = next;
    }
    acc
}

/// `1/(1 - t^d)` up to degree `top`.
pub fn periodic(d: usize, top: usize) -> Vec<usize> {
    (0..=top).map(|i| usize::from(i % d == 0)).collect()
}

/// Dimension vector with ones at the given degrees.
pub fn monomials(degrees: &[usize]) -> Vec<usize> {
    let mut v = vec![0; degrees.iter().max().map_or(1, |m| m + 1)];
    for &d in degrees {
        v[d] += 1;
    }
    v
}

/// The commutative product checked for graded commutativity, associativity
/// and the unit.
pub fn ring_axioms(pres: &HomologyPresentation) -> Check {
    if let Some((i, j)) = pres.commutativity_witness() {
        return Err(format!("not graded commutative on {} and {}", pres.class(i).label, pres.class(j).label));
    }
    if let Some((i, j, k)) = pres.associativity_witness() {
        return Err(format!(
            "not associative on {}, {}, {}",
            pres.class(i).label,
            pres.class(j).label,
            pres.class(k).label
        ));
    }
    if let Some(i) = pres.unit_witness() {
        return Err(format!("1[] is not a unit on {}", pres.class(i).label));
    }
    Ok(())
}

/// `ρ_*(xy) = ρ_*(x) ρ_*(y)` for all classes with `|x| + |y| <= top`.
pub fn rho_is_multiplicative(alg: &Dga, top: usize) -> Check {
    let hc = HochschildComplex::new(alg).map_err(err)?;
    let pres = hh_product_commutative(&hc, top).map_err(err)?;
    let bar = BarComplex::new(alg, top).map_err(err)?;
    let ring = BarHomologyRing::new(alg, &bar, top).map_err(err)?;
    let f = alg.field();
    let images: Vec<SparseVec> = pres
        .classes()
        .iter()
        .map(|c| rho_star(&hc, &bar, &ring, c))
        .collect::<hhloop::Result<_>>()
        .map_err(err)?;
    let bar_mul = |x: &SparseVec, y: &SparseVec| {
        let mut acc = SparseVec::new();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                if let Some(v) = ring.products.get(&(i, j)) {
                    acc = acc.add_scaled(f, v, f.mul(a, b));
                }
            }
        }
        acc
    };
    for (i, j, v) in pres.structure_constants() {
        let mut lhs = SparseVec::new();
        for (k, c) in v.iter() {
            lhs = lhs.add_scaled(f, &images[k], c);
        }
        let rhs = bar_mul(&images[i], &images[j]);
        ensure!(lhs == rhs, "rho_* not multiplicative on {} * {}", pres.class(i).label, pres.class(j).label);
    }
    Ok(())
}

/// Everything the shc pipeline produced for one algebra.
pub struct ShcRun {
    pub dims: Vec<usize>,
    pub constants: Vec<(usize, usize, SparseVec)>,
}

/// Runs the shc pipeline through `minimalize(cobar_of_bar(alg))` and
/// compares its ring with the commutative one on `alg` through
/// `α ∘ φ_V`. Also checks that `α`, `p_V` and `Ψ` are quasi-isomorphisms.
pub fn cross_pipeline(alg: &Dga, n: usize, strategy: SectionStrategy) -> std::result::Result<ShcRun, String> {
    let m = n + 2;
    let f = alg.field();
    let cobar = cobar_of_bar(alg, m).map_err(err)?;
    let tu = cobar.model().algebra(m).map_err(err)?;
    let alpha_u = cobar.alpha(&tu, alg).map_err(err)?;
    ensure!(alpha_u.cohomology_iso_witness(tu.dga(), alg, n + 1).map_err(err)?.is_none(), "H(alpha) is not an isomorphism");

    let min = minimalize(cobar.model()).map_err(err)?;
    let mu0 = mu0_through_minimalization(alg, &cobar, &min).map_err(err)?;
    let hat = lift_hat_differential(&min.minimal).map_err(err)?;
    let st = lift_mu(hat, &mu0).map_err(err)?;
    ensure!(st.chain_map_witness().is_none(), "mu is not a chain map");
    let ctx = ShcContext::new(st, m).map_err(err)?;
    let tv = ctx.tv();
    let p_map = min.p_map(&tu, tv).map_err(err)?;
    ensure!(p_map.cohomology_iso_witness(tu.dga(), tv.dga(), n + 1).map_err(err)?.is_none(), "H(p_V) is not an isomorphism");
    ensure!(
        ctx.psi().cohomology_iso_witness(ctx.hat().dga(), ctx.tensor().dga(), n).map_err(err)?.is_none(),
        "H(Psi) is not an isomorphism"
    );

    let tv_hc = HochschildComplex::new(tv.dga()).map_err(err)?;
    let shc = hh_product_shc(&ctx, &tv_hc, n, strategy).map_err(err)?;
    let a_hc = HochschildComplex::new(alg).map_err(err)?;
    let comm = hh_product_commutative(&a_hc, n).map_err(err)?;
    ensure!(shc.dims() == comm.dims(), "dims differ: shc {:?}, commutative {:?}", shc.dims(), comm.dims());

    let phi = min.phi_map(tv, &tu).map_err(err)?;
    let to_a = phi.compose(&alpha_u, alg);
    let mut images = Vec::new();
    let mut ech = Echelon::new(f);
    for c in shc.classes() {
        let piece = tv_hc.piece(c.degree, c.weight);
        let z = map_chain(&to_a, &piece, &a_hc, [0, 0], &c.rep).map_err(err)?;
        let v = comm.reduce(&a_hc, c.degree, [0, 0], &z).map_err(err)?;
        ensure!(ech.insert(&v, SparseVec::new()).is_ok(), "HH(alpha phi) is not injective at {}", c.label);
        images.push(v);
    }
    let engine = ShuffleProduct::new(&a_hc).map_err(err)?;
    for (i, j, v) in shc.structure_constants() {
        let mut lhs = SparseVec::new();
        for (k, c) in v.iter() {
            lhs = lhs.add_scaled(f, &images[k], c);
        }
        let rhs = comm.mul(&a_hc, &engine, &images[i], &images[j]).map_err(err)?;
        ensure!(lhs == rhs, "products differ on {} * {}", shc.class(i).label, shc.class(j).label);
    }
    ring_axioms(&shc)?;
    Ok(ShcRun {
        dims: shc.dims(),
        constants: shc.structure_constants(),
    })
}

/// The product of the listed classes, in class coordinates.
pub fn product_of(
    hc: &HochschildComplex,
    pres: &HomologyPresentation,
    keys: &[&str],
) -> std::result::Result<SparseVec, String> {
    let engine = ShuffleProduct::new(hc).map_err(err)?;
    let mut acc = SparseVec::unit(pres.unit());
    for k in keys {
        let key = hc.parse_key(k).map_err(err)?;
        let x = pres.class_of_key(hc, &key).map_err(err)?;
        acc = pres.mul(hc, &engine, &acc, &x).map_err(err)?;
    }
    Ok(acc)
}

pub fn field(p: u32) -> Fp {
    Fp::new(p).unwrap()
}
