use std::fmt;

use super::Dga;
use crate::ffla::SparseVec;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axiom {
    ProductDegree,
    DifferentialDegree,
    Associativity,
    SquareZero,
    Leibniz,
    Augmentation,
    Connected,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::ProductDegree => "product degree",
            Axiom::DifferentialDegree => "differential degree",
            Axiom::Associativity => "associativity",
            Axiom::SquareZero => "d o d = 0",
            Axiom::Leibniz => "Leibniz rule",
            Axiom::Augmentation => "augmentation",
            Axiom::Connected => "connectivity",
        };
        f.write_str(s)
    }
}

/// First violated axiom with the witnessing basis elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    pub witnesses: Vec<String>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} violated at {}", self.axiom, self.witnesses.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ValidationReport {
    Pass,
    Violation(Violation),
}

impl ValidationReport {
    pub fn is_pass(&self) -> bool {
        matches!(self, ValidationReport::Pass)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationReport::Pass => f.write_str("pass"),
            ValidationReport::Violation(v) => write!(f, "FAIL: {v}"),
        }
    }
}

fn violation(axiom: Axiom, a: &Dga, idx: &[usize]) -> ValidationReport {
    ValidationReport::Violation(Violation {
        axiom,
        witnesses: idx.iter().map(|&i| a.label(i).to_string()).collect(),
    })
}

fn homogeneous(a: &Dga, v: &SparseVec, degree: usize) -> bool {
    v.iter().all(|(i, _)| a.degree(i) == degree)
}

/// Checks the augmented DG-algebra axioms within the truncation.
pub fn validate(a: &Dga) -> ValidationReport {
    let f = a.field();
    let n = a.len();
    let top = a.max_degree();

    let mut pairs: Vec<_> = a.product_table().iter().collect();
    pairs.sort_by_key(|e| *e.0);
    for (&(x, y), v) in &pairs {
        if !homogeneous(a, v, a.degree(x) + a.degree(y)) {
            return violation(Axiom::ProductDegree, a, &[x, y]);
        }
    }
    for i in 0..n {
        if !homogeneous(a, a.diff(i), a.degree(i) + 1) {
            return violation(Axiom::DifferentialDegree, a, &[i]);
        }
    }
    for x in 1..n {
        for y in 1..n {
            let dxy = a.degree(x) + a.degree(y);
            if dxy > top {
                continue;
            }
            let xy = a.mul(x, y);
            for z in 1..n {
                if dxy + a.degree(z) > top {
                    continue;
                }
                let left = a.mul_vec(&xy, &SparseVec::unit(z));
                let right = a.mul_vec(&SparseVec::unit(x), &a.mul(y, z));
                if left != right {
                    return violation(Axiom::Associativity, a, &[x, y, z]);
                }
            }
        }
    }
    for i in 0..n {
        if a.degree(i) + 2 <= top && !a.diff_vec(a.diff(i)).is_zero() {
            return violation(Axiom::SquareZero, a, &[i]);
        }
    }
    for x in 0..n {
        for y in 0..n {
            if a.degree(x) + a.degree(y) + 1 > top {
                continue;
            }
            let lhs = a.diff_vec(&a.mul(x, y));
            let t1 = a.mul_vec(a.diff(x), &SparseVec::unit(y));
            let t2 = a.mul_vec(&SparseVec::unit(x), a.diff(y));
            let rhs = t1.add_scaled(f, &t2, f.sign(a.degree(x) % 2 == 1));
            if lhs != rhs {
                return violation(Axiom::Leibniz, a, &[x, y]);
            }
        }
    }
    for &x in a.basis(0) {
        if x == 0 {
            continue;
        }
        if a.augmentation(a.diff(x)) != 0 {
            return violation(Axiom::Augmentation, a, &[x]);
        }
        for &y in a.basis(0) {
            if y != 0 && a.augmentation(&a.mul(x, y)) != 0 {
                return violation(Axiom::Augmentation, a, &[x, y]);
            }
        }
    }
    if !a.diff(0).is_zero() {
        return violation(Axiom::Augmentation, a, &[0]);
    }
    ValidationReport::Pass
}

/// Like [`validate`] but also requires degree 0 to be spanned by the unit.
pub fn validate_connected(a: &Dga) -> ValidationReport {
    match validate(a) {
        ValidationReport::Pass if !a.is_connected() => {
            let extra: Vec<usize> = a.basis(0).iter().copied().filter(|&i| i != 0).collect();
            violation(Axiom::Connected, a, &extra)
        }
        r => r,
    }
}
