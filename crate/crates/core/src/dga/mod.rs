//! Finite presentations of augmented cochain algebras, their validation, and
//! the constructions that produce them (free, commutative, tensor).

mod cohomology;
mod commutative;
mod free;
mod morphism;
mod presentation;
mod tensor;
mod validate;

pub use commutative::{CPoly, CommutativePresentation, Monomial};
pub use free::{
    derivation_on_poly, derivation_on_word, enumerate_words, substitute, word_degree, word_label, FreeAlgebra,
    Generators, NcPoly, Word,
};
pub use morphism::DgaMap;
pub use presentation::{format_combination, Dga};
pub use tensor::{tensor, TensorDga};
pub use validate::{validate, validate_connected, Axiom, ValidationReport, Violation};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffla::{Fp, SparseVec};

    fn truncated_poly(p: u32, deg: usize, height: u32, top: usize) -> Dga {
        let mut c = CommutativePresentation::new();
        let x = c.generator("x", deg);
        c.add_relation(CPoly::from([(c.monomial(&[(x, height)]), 1)]));
        c.expand(Fp::new(p).unwrap(), top).unwrap()
    }

    #[test]
    fn truncated_polynomial_with_exterior_class() {
        // F_2[x]/x^3 ⊗ Λ(sx) with |x| = 2, |sx| = 1
        let mut c = CommutativePresentation::new();
        let x = c.generator("x", 2);
        c.generator("sx", 1);
        c.add_relation(CPoly::from([(c.monomial(&[(x, 3)]), 1)]));
        let a = c.expand(Fp::new(2).unwrap(), 8).unwrap();
        assert!(validate(&a).is_pass());
        // in characteristic 2 the odd class is polynomial; impose sx^2 = 0 as well
        let mut c2 = c.clone();
        c2.add_relation(CPoly::from([(c.monomial(&[(1, 2)]), 1)]));
        let b = c2.expand(Fp::new(2).unwrap(), 8).unwrap();
        assert_eq!(b.dims(), vec![1, 1, 1, 1, 1, 1, 0, 0, 0]);
    }

    #[test]
    fn exterior_algebra_on_two_odd_classes() {
        let mut c = CommutativePresentation::new();
        c.generator("v3", 3);
        c.generator("v11", 11);
        let a = c.expand(Fp::new(5).unwrap(), 14).unwrap();
        let mut dims = vec![0; 15];
        dims[0] = 1;
        dims[3] = 1;
        dims[11] = 1;
        dims[14] = 1;
        assert_eq!(a.dims(), dims);
        assert!(validate_connected(&a).is_pass());
        let v3 = a.index_of("v3").unwrap();
        let v11 = a.index_of("v11").unwrap();
        let top = a.index_of("v3.v11").unwrap();
        assert_eq!(a.mul(v3, v11), SparseVec::unit(top));
        assert_eq!(a.mul(v11, v3), SparseVec::single(top, 4));
        assert!(a.is_graded_commutative());
    }

    #[test]
    fn tensor_square_dimensions_and_signs() {
        let a = truncated_poly(2, 2, 2, 4);
        let t = tensor(&a, &a).unwrap();
        assert_eq!(t.dga().dims(), vec![1, 0, 2, 0, 1]);
        assert!(validate(t.dga()).is_pass());

        let e = truncated_poly(3, 1, 2, 2);
        let t = tensor(&e, &e).unwrap();
        let d = t.dga();
        let x1 = t.index_of(1, 0).unwrap();
        let x2 = t.index_of(0, 1).unwrap();
        let both = t.index_of(1, 1).unwrap();
        assert_eq!(d.mul(x1, x2), SparseVec::unit(both));
        assert_eq!(d.mul(x2, x1), SparseVec::single(both, 2));
        assert!(validate(d).is_pass());
    }

    #[test]
    fn validation_reports_the_failing_axiom() {
        let f = Fp::new(3).unwrap();
        // d(x) = y, d(y) = z, so d o d is nonzero on x
        let basis = vec![("1".into(), 0), ("x".into(), 1), ("y".into(), 2), ("z".into(), 3)];
        let diff = vec![SparseVec::new(), SparseVec::unit(2), SparseVec::unit(3), SparseVec::new()];
        let a = Dga::new(f, 3, basis, Default::default(), diff).unwrap();
        match validate(&a) {
            ValidationReport::Violation(v) => {
                assert_eq!(v.axiom, Axiom::SquareZero);
                assert_eq!(v.witnesses, vec!["x".to_string()]);
            }
            ValidationReport::Pass => panic!("expected a violation"),
        }
    }

    #[test]
    fn free_algebra_words_and_derivation() {
        let f = Fp::new(5).unwrap();
        let mut g = Generators::new();
        let a = g.push("a", 2);
        let b = g.push("b", 3);
        let diff = vec![NcPoly::zero(), NcPoly::word(vec![a, a])];
        let t = FreeAlgebra::new(f, g, diff, 7).unwrap();
        assert_eq!(t.dga().dims(), vec![1, 0, 1, 1, 1, 2, 2, 3]);
        assert!(validate(t.dga()).is_pass());
        let ab = t.index_of(&[a, b]).unwrap();
        // d(ab) = (-1)^2 a.aa
        assert_eq!(t.to_poly(t.dga().diff(ab)), NcPoly::word(vec![a, a, a]));
    }

    #[test]
    fn relations_must_be_closed_under_d() {
        let mut c = CommutativePresentation::new();
        let x = c.generator("x", 2);
        let y = c.generator("y", 3);
        c.set_diff(x, CPoly::from([(c.monomial(&[(y, 1)]), 1)]));
        c.add_relation(CPoly::from([(c.monomial(&[(x, 2)]), 1)]));
        assert!(c.expand(Fp::new(3).unwrap(), 6).is_err());
    }
}
