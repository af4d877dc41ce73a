//! Hochschild complexes, the shuffle map and ring structures on `HH`.

mod complex;
mod product;
mod shuffle;

pub use complex::*;
pub use product::*;
pub use shuffle::*;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::{cpn, sphere};
    use crate::dga::Dga;
    use crate::ffla::SparseVec;

    fn assert_square_zero(alg: &Dga, top: usize) {
        let hc = HochschildComplex::new(alg).unwrap();
        for n in 0..top {
            for &w in hc.weights_in_degree(n).iter() {
                let piece = hc.piece(n, w);
                for i in 0..piece.len() {
                    let d = hc.differential_vec(n, w, &SparseVec::unit(i)).unwrap();
                    let dd = hc.differential_vec(n + 1, w, &d).unwrap();
                    assert!(dd.is_zero(), "D² ≠ 0 on {}", hc.format_key(piece.elem(i)));
                }
            }
        }
    }

    #[test]
    fn square_zero_on_spheres_and_projective_spaces() {
        for p in [2, 3, 5] {
            assert_square_zero(&sphere(p, 1, 10).unwrap(), 8);
            assert_square_zero(&sphere(p, 2, 10).unwrap(), 8);
            assert_square_zero(&cpn(p, 2, 10).unwrap(), 8);
        }
    }

    #[test]
    fn two_sphere_mod_two_dims() {
        let a = sphere(2, 1, 10).unwrap();
        let hc = HochschildComplex::new(&a).unwrap();
        let dims: Vec<usize> = (0..=hc.reliable_degree()).map(|n| hc.hh_dim(n).unwrap()).collect();
        assert_eq!(dims, vec![1, 1, 2, 2, 2, 2, 2, 2, 2]);
    }

    #[test]
    fn two_sphere_odd_prime_dims() {
        let a = sphere(3, 1, 10).unwrap();
        let hc = HochschildComplex::new(&a).unwrap();
        for n in 0..=8 {
            assert_eq!(hc.hh_dim(n).unwrap(), 1, "degree {n}");
        }
    }

    #[test]
    fn even_words_hit_twice_the_shorter_x_word() {
        let a = sphere(3, 1, 8).unwrap();
        let hc = HochschildComplex::new(&a).unwrap();
        for k in [2usize, 4] {
            let mut ak = vec![0u32];
            ak.extend(std::iter::repeat(1).take(k));
            let mut b = vec![1u32];
            b.extend(std::iter::repeat(1).take(k - 1));
            let src = hc.piece(k, [0, 0]);
            let tgt = hc.piece(k + 1, [0, 0]);
            let v = SparseVec::unit(src.index_of(&ak).unwrap());
            let d = hc.differential_vec(k, [0, 0], &v).unwrap();
            assert_eq!(d, SparseVec::single(tgt.index_of(&b).unwrap(), 2));
        }
    }

    #[test]
    fn odd_words_are_cycles() {
        let a = sphere(5, 1, 8).unwrap();
        let hc = HochschildComplex::new(&a).unwrap();
        let key = vec![0u32, 1, 1, 1];
        let piece = hc.piece(3, [0, 0]);
        let v = SparseVec::unit(piece.index_of(&key).unwrap());
        assert!(hc.differential_vec(3, [0, 0], &v).unwrap().is_zero());
    }

    #[test]
    fn parse_and_format_round_trip() {
        let a = sphere(2, 1, 6).unwrap();
        let hc = HochschildComplex::new(&a).unwrap();
        let key = hc.parse_key("x[x|x]").unwrap();
        assert_eq!(key, vec![1, 1, 1]);
        assert_eq!(hc.format_key(&key), "x[x|x]");
        assert_eq!(hc.parse_key("[x]").unwrap(), vec![0, 1]);
        assert!(hc.parse_key("x[1]").is_err());
    }

    #[test]
    fn degree_one_classes_are_rejected() {
        let a = crate::builtins::exterior(3, 3, 6).unwrap();
        assert!(HochschildComplex::new(&a).is_ok());
        let mut c = crate::dga::CommutativePresentation::new();
        c.generator("e", 1);
        let b = c.expand(crate::ffla::Fp::new(3).unwrap(), 4).unwrap();
        assert!(matches!(HochschildComplex::new(&b), Err(crate::Error::NotConnected(_))));
    }

    fn check_shuffle_chain_map(a: &Dga, b: &Dga, top: usize) {
        let f = a.field();
        let t = crate::dga::tensor(a, b).unwrap();
        let ca = HochschildComplex::new(a).unwrap();
        let cb = HochschildComplex::new(b).unwrap();
        let ct = HochschildComplex::new(t.dga()).unwrap();
        let z = [0, 0];
        for n in 0..top {
            for m in 0..top - n {
                let (pa, pb) = (ca.piece(n, z), cb.piece(m, z));
                for i in 0..pa.len() {
                    for j in 0..pb.len() {
                        let (x, y) = (SparseVec::unit(i), SparseVec::unit(j));
                        let s = shuffle_into(a, &pa, &x, b, &pb, &y, &t, &ct, z).unwrap();
                        let lhs = ct.differential_vec(n + m, z, &s).unwrap();
                        let dx = ca.differential_vec(n, z, &x).unwrap();
                        let dy = cb.differential_vec(m, z, &y).unwrap();
                        let r1 = shuffle_into(a, &ca.piece(n + 1, z), &dx, b, &pb, &y, &t, &ct, z).unwrap();
                        let r2 = shuffle_into(a, &pa, &x, b, &cb.piece(m + 1, z), &dy, &t, &ct, z).unwrap();
                        let rhs = r1.add(f, &r2.scale(f, f.sign(n % 2 == 1)));
                        assert_eq!(lhs, rhs, "{} ⊗ {}", ca.format_key(pa.elem(i)), cb.format_key(pb.elem(j)));
                    }
                }
            }
        }
    }

    #[test]
    fn shuffle_is_a_chain_map() {
        for p in [2, 3] {
            check_shuffle_chain_map(&sphere(p, 1, 8).unwrap(), &sphere(p, 1, 8).unwrap(), 6);
            check_shuffle_chain_map(&cpn(p, 1, 8).unwrap(), &sphere(p, 2, 8).unwrap(), 6);
            check_shuffle_chain_map(&crate::builtins::exterior(p, 3, 9).unwrap(), &cpn(p, 1, 9).unwrap(), 7);
            check_shuffle_chain_map(&cpn(p, 1, 9).unwrap(), &crate::builtins::exterior(p, 3, 9).unwrap(), 7);
        }
    }

    #[test]
    fn shuffle_of_two_letters_has_both_orders() {
        let a = crate::builtins::exterior(2, 3, 8).unwrap();
        let mut terms = Vec::new();
        shuffle_terms(&a, &[0, 1], &a, &[0, 1], |c, h, w| terms.push((c, h, w.to_vec())));
        assert_eq!(terms, vec![(1, (0, 0), vec![(1, 0), (0, 1)]), (1, (0, 0), vec![(0, 1), (1, 0)])]);
        let b = sphere(3, 1, 8).unwrap();
        let mut count = 0;
        shuffle_terms(&b, &[0, 1], &b, &[0, 1, 1], |_, _, _| count += 1);
        assert_eq!(count, 3);
    }

    fn word(head: u32, k: usize) -> Vec<u32> {
        let mut w = vec![head];
        w.extend(std::iter::repeat(1).take(k));
        w
    }

    fn binom_mod(n: usize, k: usize, p: u32) -> u32 {
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

    #[test]
    fn two_sphere_ring_mod_two() {
        let a = sphere(2, 1, 12).unwrap();
        let hc = HochschildComplex::new(&a).unwrap();
        let pres = hh_product_commutative(&hc, 10).unwrap();
        assert_eq!(pres.commutativity_witness(), None);
        assert_eq!(pres.associativity_witness(), None);
        assert_eq!(pres.unit_witness(), None);
        let engine = ShuffleProduct::new(&hc).unwrap();
        let class = |k: &[u32]| pres.class_of_key(&hc, k).unwrap();
        for k in 1..=5 {
            for l in 1..=10 - k {
                let prod = pres.mul(&hc, &engine, &class(&word(0, k)), &class(&word(0, l))).unwrap();
                let expect = class(&word(0, k + l)).scale(a.field(), binom_mod(k + l, l, 2));
                assert_eq!(prod, expect, "a{k} a{l}");
            }
            for l in 0..=8 - k {
                let prod = pres.mul(&hc, &engine, &class(&word(0, k)), &class(&word(1, l))).unwrap();
                let c = if k % 2 == 0 || l % 2 == 0 { binom_mod(k + l, l, 2) } else { 0 };
                assert_eq!(prod, class(&word(1, k + l)).scale(a.field(), c), "a{k} b{l}");
            }
        }
        let b0 = class(&word(1, 0));
        assert!(pres.mul(&hc, &engine, &b0, &b0).unwrap().is_zero());
    }

    #[test]
    fn two_sphere_ring_odd_prime_is_trivial() {
        let a = sphere(3, 1, 10).unwrap();
        let hc = HochschildComplex::new(&a).unwrap();
        let pres = hh_product_commutative(&hc, 8).unwrap();
        for (i, j, v) in pres.structure_constants() {
            if pres.class(i).degree > 0 && pres.class(j).degree > 0 {
                assert!(v.is_zero(), "{} · {}", pres.class(i).label, pres.class(j).label);
            }
        }
        assert_eq!(pres.dims(), vec![1; 9]);
    }

    #[test]
    fn rho_sends_words_to_bar_classes() {
        let a = sphere(2, 1, 10).unwrap();
        let hc = HochschildComplex::new(&a).unwrap();
        let bar = crate::barcobar::BarComplex::new(&a, 8).unwrap();
        let ring = crate::barcobar::BarHomologyRing::new(&a, &bar, 8).unwrap();
        let pres = hh_product_commutative(&hc, 8).unwrap();
        let engine = ShuffleProduct::new(&hc).unwrap();
        for i in 0..pres.len() {
            let img = rho_star(&hc, &bar, &ring, pres.class(i)).unwrap();
            let key = hc.parse_key(&pres.class(i).label).ok();
            if let Some(key) = key {
                assert_eq!(img.is_zero(), key[0] != 0, "{}", pres.class(i).label);
            }
        }
        // ρ_* is multiplicative on representatives
        for i in 0..pres.len() {
            for j in 0..pres.len() {
                let Some(ij) = pres.product(&hc, &engine, i, j).unwrap() else { continue };
                let f = a.field();
                let mut lhs = SparseVec::new();
                for (k, c) in ij.iter() {
                    lhs = lhs.add(f, &rho_star(&hc, &bar, &ring, pres.class(k)).unwrap().scale(f, c));
                }
                let ri = rho_star(&hc, &bar, &ring, pres.class(i)).unwrap();
                let rj = rho_star(&hc, &bar, &ring, pres.class(j)).unwrap();
                let mut rhs = SparseVec::new();
                for (x, cx) in ri.iter() {
                    for (y, cy) in rj.iter() {
                        let p = ring.products[&(x, y)].scale(f, f.mul(cx, cy));
                        rhs = rhs.add(f, &p);
                    }
                }
                assert_eq!(lhs, rhs);
            }
        }
    }
}
