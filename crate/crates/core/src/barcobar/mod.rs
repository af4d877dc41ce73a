//! Bar and cobar constructions, free models and minimal models.

mod bar;
mod cobar;
mod minimal;
mod model;

pub use bar::*;
pub use cobar::*;
pub use minimal::*;
pub use model::*;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::{cpn, exterior, sphere};
    use crate::dga::{CPoly, CommutativePresentation, Dga, NcPoly};
    use crate::ffla::Fp;

    fn truncated_poly(p: u32, height: u32, top: usize) -> Dga {
        let mut c = CommutativePresentation::new();
        let x = c.generator("x", 2);
        c.add_relation(CPoly::from([(c.monomial(&[(x, height)]), 1)]));
        c.expand(Fp::new(p).unwrap(), top).unwrap()
    }

    fn two_generators(p: u32, top: usize) -> Dga {
        let mut c = CommutativePresentation::new();
        c.generator("v3", 3);
        c.generator("v11", 11);
        c.expand(Fp::new(p).unwrap(), top).unwrap()
    }

    #[test]
    fn bar_words_by_degree() {
        let a = sphere(2, 1, 8).unwrap();
        assert_eq!(bar_basis(&a, 0).unwrap(), vec![Vec::<u32>::new()]);
        assert_eq!(bar_basis(&a, 3).unwrap(), vec![vec![1, 1, 1]]);
        let b = two_generators(5, 14);
        assert_eq!(bar_basis(&b, 4).unwrap(), vec![vec![1, 1]]);
        let bar = BarComplex::new(&a, 8).unwrap();
        for n in 0..=8 {
            assert_eq!(bar.homology(n).unwrap().dim(), 1);
            assert_eq!(bar.differential(n).columns().iter().filter(|c| !c.is_zero()).count(), 0);
        }
    }

    #[test]
    fn bar_squares_to_zero_on_fixtures() {
        for p in [2, 3, 5] {
            BarComplex::new(&cpn(p, 2, 12).unwrap(), 10).unwrap();
            BarComplex::new(&truncated_poly(p, 3, 12), 10).unwrap();
            BarComplex::new(&two_generators(p, 14), 12).unwrap();
        }
    }

    #[test]
    fn coproduct_is_coassociative() {
        let w = vec![1u32, 2, 1];
        let left: Vec<(Vec<u32>, Vec<u32>, Vec<u32>)> = bar_coproduct(&w)
            .into_iter()
            .flat_map(|(a, b)| bar_coproduct(&a).into_iter().map(move |(x, y)| (x, y, b.clone())))
            .collect();
        let mut right: Vec<(Vec<u32>, Vec<u32>, Vec<u32>)> = bar_coproduct(&w)
            .into_iter()
            .flat_map(|(a, b)| bar_coproduct(&b).into_iter().map(move |(x, y)| (a.clone(), x, y)))
            .collect();
        let mut left = left;
        left.sort();
        right.sort();
        assert_eq!(left, right);
        assert_eq!(bar_coproduct(&[1, 1]).len(), 3);
    }

    #[test]
    fn bar_product_on_the_sphere() {
        let a = sphere(2, 1, 8).unwrap();
        let bar = BarComplex::new(&a, 6).unwrap();
        // [x]·[x] = 2[x|x] = 0 over F_2
        assert!(bar_product_commutative(&a, &bar, &[1], &[1]).unwrap().is_zero());
        let b = sphere(5, 1, 8).unwrap();
        let bar5 = BarComplex::new(&b, 6).unwrap();
        let xxx = bar5.index_of(3, &[1, 1, 1]).unwrap();
        // three shuffles of [x] into [x|x], all letters of odd bar degree
        let p = bar_product_commutative(&b, &bar5, &[1], &[1, 1]).unwrap();
        assert_eq!(p, crate::ffla::SparseVec::single(xxx, 1));
        let ring = BarHomologyRing::new(&b, &bar5, 6).unwrap();
        assert_eq!(ring.len(), 7);
    }

    #[test]
    fn cobar_of_the_sphere_is_the_known_model() {
        let a = sphere(2, 1, 8).unwrap();
        let c = cobar_of_bar(&a, 8).unwrap();
        let m = c.model();
        assert!(m.is_minimal());
        assert_eq!(m.len(), 7);
        for k in 1..=7u32 {
            let g = k - 1;
            assert_eq!(m.generators().degree(g), k as usize + 1);
            let mut expect = NcPoly::zero();
            for i in 1..k {
                expect.add_term(a.field(), vec![i - 1, k - i - 1], 1);
            }
            assert_eq!(m.diff(g), &expect, "v{k}");
        }
    }

    #[test]
    fn cobar_evaluation_is_a_quasi_isomorphism() {
        let fixtures = [
            sphere(3, 1, 10).unwrap(),
            cpn(2, 2, 10).unwrap(),
            cpn(3, 1, 10).unwrap(),
            truncated_poly(3, 3, 10),
            exterior(5, 3, 10).unwrap(),
        ];
        for a in &fixtures {
            let c = cobar_of_bar(a, 10).unwrap();
            assert_eq!(c.model().square_zero_witness(), None);
            let free = c.model().algebra(10).unwrap();
            let alpha = c.alpha(&free, a).unwrap();
            assert_eq!(alpha.chain_map_witness(free.dga(), a), None);
            assert_eq!(alpha.multiplicativity_witness(free.dga(), a), None);
            assert_eq!(alpha.cohomology_iso_witness(free.dga(), a, 9).unwrap(), None);
        }
    }

    fn check_minimalization(model: &FreeDgaModel, top: usize) -> Minimalization {
        let m = minimalize(model).unwrap();
        assert!(m.minimal.is_minimal());
        assert_eq!(m.minimal.square_zero_witness(), None);
        assert_eq!(m.retraction_witness().unwrap(), None);
        let tu = model.algebra(top).unwrap();
        let tv = m.minimal.algebra(top).unwrap();
        let p = m.p_map(&tu, &tv).unwrap();
        let phi = m.phi_map(&tv, &tu).unwrap();
        assert_eq!(p.chain_map_witness(tu.dga(), tv.dga()), None);
        assert_eq!(phi.chain_map_witness(tv.dga(), tu.dga()), None);
        assert_eq!(p.multiplicativity_witness(tu.dga(), tv.dga()), None);
        assert_eq!(p.cohomology_iso_witness(tu.dga(), tv.dga(), top - 1).unwrap(), None);
        m
    }

    #[test]
    fn minimal_input_is_left_alone() {
        let a = sphere(2, 1, 9).unwrap();
        let c = cobar_of_bar(&a, 9).unwrap();
        let m = check_minimalization(c.model(), 9);
        assert_eq!(m.minimal.generators(), c.model().generators());
        for g in 0..m.minimal.len() as u32 {
            assert_eq!(m.section().unwrap()[g as usize], NcPoly::generator(g));
        }
    }

    #[test]
    fn minimal_models_of_nonminimal_cobar_constructions() {
        let top = 9;
        let fixtures = [cpn(3, 1, top).unwrap(), cpn(2, 2, top).unwrap(), truncated_poly(3, 3, top), truncated_poly(2, 3, top)];
        for a in &fixtures {
            let c = cobar_of_bar(a, top).unwrap();
            assert!(!c.model().is_minimal());
            let m = check_minimalization(c.model(), top);
            // V is dual to the reduced cohomology of the bar construction
            let bar = BarComplex::new(a, top).unwrap();
            for n in 1..top - 1 {
                let count = (0..m.minimal.len() as u32).filter(|&g| m.minimal.generators().degree(g) == n + 1).count();
                assert_eq!(count, bar.homology(n).unwrap().dim(), "degree {}", n + 1);
            }
        }
    }

    #[test]
    fn suspension_of_cp2_has_words_in_two_letters() {
        // H*(ΣCP²; F_2): classes in degrees 3 and 5, trivial products
        let f = Fp::new(2).unwrap();
        let basis = vec![("1".to_string(), 0), ("a3".to_string(), 3), ("b5".to_string(), 5)];
        let a = Dga::new(f, 12, basis, Default::default(), vec![Default::default(); 3]).unwrap();
        let c = cobar_of_bar(&a, 12).unwrap();
        assert!(c.model().is_minimal());
        let degs = c.model().generators().degrees();
        let count = |d: usize| degs.iter().filter(|&&x| x == d).count();
        // words in letters of degrees 2 and 4, shifted up by one
        assert_eq!((3..=11).step_by(2).map(count).collect::<Vec<_>>(), vec![1, 2, 3, 5, 8]);
    }
}
