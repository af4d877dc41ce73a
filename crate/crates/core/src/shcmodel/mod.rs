//! The model `T V̂` of `TV ⊗ TV` and the induced products on Hochschild
//! homology of a minimal model.

mod hat;
mod mu;
mod product;

pub use hat::*;
pub use mu::*;
pub use product::*;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::barcobar::{cobar_of_bar, FreeDgaModel};
    use crate::builtins::{exterior, sphere};
    use crate::dga::NcPoly;

    fn fixtures(top: usize) -> Vec<FreeDgaModel> {
        vec![
            cobar_of_bar(&sphere(2, 1, top).unwrap(), top).unwrap().into_model(),
            cobar_of_bar(&sphere(3, 1, top).unwrap(), top).unwrap().into_model(),
            cobar_of_bar(&exterior(5, 3, top).unwrap(), top).unwrap().into_model(),
            cobar_of_bar(&sphere(5, 2, top).unwrap(), top).unwrap().into_model(),
        ]
    }

    fn words_upto(hat: &HatModel, max_len: usize, max_deg: usize) -> Vec<Vec<u32>> {
        let bg = hat.base().generators();
        let mut out: Vec<Vec<u32>> = vec![vec![]];
        let mut frontier: Vec<Vec<u32>> = vec![vec![]];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &frontier {
                for g in 0..bg.len() as u32 {
                    let mut x = w.clone();
                    x.push(g);
                    if bg.word_degree(&x) <= max_deg {
                        next.push(x);
                    }
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out.retain(|w| !w.is_empty());
        out
    }

    #[test]
    fn sharp_agrees_with_sharp_prime_on_generators() {
        for base in fixtures(9) {
            let hat = HatModel::new(&base).unwrap();
            for a in words_upto(&hat, 4, 8) {
                for w in 0..base.len() as u32 {
                    assert_eq!(hat.sharp(&a, &[w]), hat.sharp_prime(&a, &[w]));
                }
            }
        }
    }

    #[test]
    fn d0_on_sharp_products() {
        for base in fixtures(9) {
            let hat = HatModel::new(&base).unwrap();
            let f = hat.field();
            let bg = base.generators();
            let top = hat.max_degree();
            let words = words_upto(&hat, 4, top);
            for a in &words {
                let da = bg.word_degree(a);
                let a_poly = NcPoly::word(a.clone());
                for w in 0..base.len() as u32 {
                    let dw = bg.degree(w);
                    if da + dw > top {
                        continue;
                    }
                    let w_poly = NcPoly::generator(w);
                    // D0(a #' w)
                    let lhs = hat.apply_d0(&hat.sharp_prime(a, &[w]));
                    let mut rhs = hat.prime(&a_poly).mul(f, &hat.double_prime(&w_poly));
                    rhs.add_scaled(f, &hat.double_prime(&w_poly).mul(f, &hat.prime(&a_poly)), f.neg(f.sign(da * dw % 2 == 1)));
                    rhs.add_scaled(f, &hat.sharp_prime_poly(&base.apply(&a_poly), &w_poly), f.neg(1));
                    rhs.add_scaled(f, &hat.sharp_prime_poly(&a_poly, base.diff(w)), f.neg(f.sign(da % 2 == 1)));
                    assert_eq!(lhs, rhs, "a = {a:?}, w = {w}");

                    // D0(w # a) with w in the first slot and a word in the second
                    let lhs = hat.apply_d0(&hat.sharp(&[w], a));
                    let mut rhs = hat.prime(&w_poly).mul(f, &hat.double_prime(&a_poly));
                    rhs.add_scaled(f, &hat.double_prime(&a_poly).mul(f, &hat.prime(&w_poly)), f.neg(f.sign(da * dw % 2 == 1)));
                    rhs.add_scaled(f, &hat.sharp_poly(base.diff(w), &a_poly), f.neg(1));
                    rhs.add_scaled(f, &hat.sharp_poly(&w_poly, &base.apply(&a_poly)), f.neg(f.sign(dw % 2 == 1)));
                    assert_eq!(lhs, rhs, "v = {w}, b = {a:?}");
                }
            }
        }
    }

    #[test]
    fn d0_squared_on_pairs() {
        for base in fixtures(10) {
            let hat = HatModel::new(&base).unwrap();
            let f = hat.field();
            for g in 0..hat.generators().len() as u32 {
                let HatGen::Pair(v, w) = hat.kind(g) else { continue };
                if hat.generators().degree(g) + 2 > hat.max_degree() {
                    continue;
                }
                // D0²(v#w) = (-1)^{|v|+1} (D0v #' D0w - D0v # D0w)
                let lhs = hat.apply_d0(hat.d0(g));
                let sign = f.sign(base.generators().degree(v) % 2 == 0);
                let mut rhs = hat.sharp_prime_poly(base.diff(v), base.diff(w));
                rhs.add_scaled(f, &hat.sharp_poly(base.diff(v), base.diff(w)), f.neg(1));
                assert_eq!(lhs, rhs.scale(f, sign), "{} p={}", hat.generators().name(g), f.p());
            }
        }
    }

    #[test]
    fn lifted_differential_squares_to_zero() {
        for base in fixtures(10) {
            let hat = lift_hat_differential(&base).unwrap();
            assert!(hat.unsolved().is_empty());
            let model = hat.model().unwrap();
            assert_eq!(model.square_zero_witness(), None);
            for g in 0..hat.generators().len() as u32 {
                let d = hat.diff(g);
                let psi_zero = d.terms().all(|(w, _)| match hat.psi_word(w) {
                    None => true,
                    Some(_) => false,
                });
                if let HatGen::Pair(..) = hat.kind(g) {
                    // Ψ(d̂(v#w)) = 0 up to cancelling reorderings
                    let mut image = std::collections::HashMap::new();
                    for (w, c) in d.terms() {
                        if let Some((odd, u, x)) = hat.psi_word(w) {
                            let e = image.entry((u, x)).or_insert(0);
                            *e = hat.field().add(*e, hat.field().mul(c, hat.field().sign(odd)));
                        }
                    }
                    assert!(psi_zero || image.values().all(|&c| c == 0));
                }
            }
        }
    }

    use crate::dga::Dga;
    use crate::ffla::SparseVec;
    use crate::hochschild::{hh_product_commutative, map_chain, HochschildComplex, ShuffleProduct};

    /// Compares the shc ring of `HH(TV)` with the shuffle ring of `HH(A)`
    /// through `C(α)`, for a commutative `A` whose cobar model is minimal.
    fn cross_check(a: &Dga, n: usize, strategy: SectionStrategy) {
        let m = n + 2;
        let cobar = cobar_of_bar(a, m).unwrap();
        let mu0 = mu0_from_shuffles(a, &cobar).unwrap();
        let hat = lift_hat_differential(cobar.model()).unwrap();
        let st = lift_mu(hat, &mu0).unwrap();
        assert_eq!(st.chain_map_witness(), None);
        let ctx = ShcContext::new(st, m).unwrap();
        let tv_hc = HochschildComplex::new(ctx.tv().dga()).unwrap();
        let shc = hh_product_shc(&ctx, &tv_hc, n, strategy).unwrap();
        let a_hc = HochschildComplex::new(a).unwrap();
        let comm = hh_product_commutative(&a_hc, n).unwrap();
        assert_eq!(shc.dims(), comm.dims());
        let alpha = cobar.alpha(ctx.tv(), a).unwrap();
        let image = |i: usize| -> SparseVec {
            let c = shc.class(i);
            let piece = tv_hc.piece(c.degree, c.weight);
            let z = map_chain(&alpha, &piece, &a_hc, [0, 0], &c.rep).unwrap();
            comm.reduce(&a_hc, c.degree, [0, 0], &z).unwrap()
        };
        let images: Vec<SparseVec> = (0..shc.len()).map(image).collect();
        let mut ech = crate::ffla::Echelon::new(a.field());
        for v in &images {
            assert!(ech.insert(v, SparseVec::new()).is_ok(), "C(α) is not injective on HH");
        }
        let engine = ShuffleProduct::new(&a_hc).unwrap();
        for (i, j, v) in shc.structure_constants() {
            let mut lhs = SparseVec::new();
            for (k, c) in v.iter() {
                lhs = lhs.add_scaled(a.field(), &images[k], c);
            }
            let rhs = comm.mul(&a_hc, &engine, &images[i], &images[j]).unwrap();
            assert_eq!(lhs, rhs, "{} * {}", shc.class(i).label, shc.class(j).label);
        }
    }

    #[test]
    fn shc_ring_of_the_sphere_mod_two() {
        cross_check(&sphere(2, 1, 8).unwrap(), 6, SectionStrategy::CycleLift);
        cross_check(&sphere(2, 1, 8).unwrap(), 6, SectionStrategy::Reversed);
    }

    #[test]
    fn shc_ring_at_odd_primes() {
        for strategy in [SectionStrategy::CycleLift, SectionStrategy::Reversed] {
            cross_check(&sphere(3, 1, 8).unwrap(), 6, strategy);
            cross_check(&sphere(5, 2, 10).unwrap(), 8, strategy);
            cross_check(&exterior(5, 3, 10).unwrap(), 8, strategy);
        }
    }

    fn binomial_mu0(f: crate::ffla::Fp, gens: usize) -> Mu0 {
        // v_k is generator k - 1; μ0(v_k # v_l) = C(k + l, l) v_(k+l)
        let mut mu0 = Mu0::new();
        let mut pascal = vec![vec![1u32]];
        for n in 1..=gens + 1 {
            let prev = &pascal[n - 1];
            let row = (0..=n)
                .map(|i| {
                    let a = if i > 0 { prev[i - 1] } else { 0 };
                    let b = if i < n { prev[i] } else { 0 };
                    f.add(a, b)
                })
                .collect();
            pascal.push(row);
        }
        for k in 1..=gens {
            for l in 1..=gens - k {
                let mut p = NcPoly::zero();
                p.add_term(f, vec![(k + l - 1) as u32], pascal[k + l][l]);
                if !p.is_zero() {
                    mu0.insert(((k - 1) as u32, (l - 1) as u32), p);
                }
            }
        }
        mu0
    }

    #[test]
    fn binomial_linear_part_on_the_sphere() {
        let top = 8;
        for p in [2, 3, 5] {
            let a = sphere(p, 1, top).unwrap();
            let cobar = cobar_of_bar(&a, top).unwrap();
            let mu0 = binomial_mu0(a.field(), cobar.model().len());
            let lifted = lift_mu(lift_hat_differential(cobar.model()).unwrap(), &mu0);
            if p == 2 {
                // agrees with the shuffle-derived μ0 mod 2
                assert_eq!(mu0, mu0_from_shuffles(&a, &cobar).unwrap());
                assert!(lifted.is_ok());
            } else {
                assert!(matches!(lifted, Err(crate::error::Error::InconsistentMu(_))));
            }
        }
    }
}
