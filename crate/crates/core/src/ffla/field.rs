use std::fmt;

use crate::error::{Error, Result};

/// A prime field `F_p`. Elements are stored as plain residues `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    p: u32,
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Fp {
    pub fn new(p: u32) -> Result<Self> {
        if p == 0 {
            return Err(Error::Field("characteristic 0 is not supported".into()));
        }
        if !is_prime(p) || p > 46_337 {
            return Err(Error::Field(format!("{p} is not a supported prime")));
        }
        Ok(Fp { p })
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    /// Inverse of a nonzero residue.
    pub fn inv(self, a: u32) -> u32 {
        assert!(a % self.p != 0, "inverse of zero in F_{}", self.p);
        let (mut r0, mut r1) = (self.p as i64, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        t0.rem_euclid(self.p as i64) as u32
    }

    /// Reduces an arbitrary integer into `0..p`.
    pub fn from_i64(self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    /// `(-1)^e` as a residue.
    #[inline]
    pub fn sign(self, odd: bool) -> u32 {
        if odd {
            self.p - 1
        } else {
            1 % self.p
        }
    }

    /// Residue printed in the symmetric range, e.g. `p-1` as `-1` for odd p.
    pub fn signed(self, a: u32) -> i64 {
        if self.p > 2 && a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

/// A single field element bundled with its characteristic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldScalar {
    value: u32,
    field: Fp,
}

impl FieldScalar {
    pub fn new(field: Fp, value: i64) -> Self {
        FieldScalar {
            value: field.from_i64(value),
            field,
        }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn field(self) -> Fp {
        self.field
    }

    fn check(self, other: Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::Field(format!(
                "mixed characteristics {} and {}",
                self.field.p, other.field.p
            )));
        }
        Ok(())
    }

    pub fn try_add(self, other: Self) -> Result<Self> {
        self.check(other)?;
        Ok(FieldScalar {
            value: self.field.add(self.value, other.value),
            field: self.field,
        })
    }

    pub fn try_mul(self, other: Self) -> Result<Self> {
        self.check(other)?;
        Ok(FieldScalar {
            value: self.field.mul(self.value, other.value),
            field: self.field,
        })
    }

    pub fn neg(self) -> Self {
        FieldScalar {
            value: self.field.neg(self.value),
            field: self.field,
        }
    }

    pub fn inverse(self) -> Option<Self> {
        (self.value != 0).then(|| FieldScalar {
            value: self.field.inv(self.value),
            field: self.field,
        })
    }
}

impl fmt::Display for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_primes_and_zero() {
        assert!(Fp::new(0).is_err());
        assert!(Fp::new(1).is_err());
        assert!(Fp::new(9).is_err());
        assert!(Fp::new(7).is_ok());
    }

    #[test]
    fn field_axioms_small_primes() {
        for p in [2u32, 3, 5, 7] {
            let f = Fp::new(p).unwrap();
            for a in 0..p {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
                for b in 0..p {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.add(f.sub(a, b), b), a);
                    for c in 0..p {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn mixed_characteristic_is_an_error() {
        let a = FieldScalar::new(Fp::new(3).unwrap(), 1);
        let b = FieldScalar::new(Fp::new(5).unwrap(), 1);
        assert!(a.try_add(b).is_err());
        assert_eq!(a.try_mul(a).unwrap().value(), 1);
        assert_eq!(FieldScalar::new(Fp::new(5).unwrap(), -1).value(), 4);
    }
}
