//! Prime fields `GF(q)` with residues stored fully reduced in a `u8`.

use std::fmt;

use crate::error::{Error, Result};

/// The prime modulus of a field `GF(q)`, `2 <= q <= 251`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldSpec {
    q: u8,
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

impl FieldSpec {
    pub fn new(q: u32) -> Result<Self> {
        if !(2..=251).contains(&q) || !is_prime(q) {
            return Err(Error::usage(format!(
                "field modulus must be a prime in [2, 251], got {q}"
            )));
        }
        Ok(FieldSpec { q: q as u8 })
    }

    /// Shorthand for tests and model tables; panics on a non-prime.
    pub fn gf(q: u32) -> Self {
        Self::new(q).expect("prime modulus")
    }

    #[inline]
    pub fn q(self) -> u8 {
        self.q
    }

    #[inline]
    pub fn order(self) -> u64 {
        self.q as u64
    }

    #[inline]
    pub fn is_char2(self) -> bool {
        self.q == 2
    }

    /// Reduces an arbitrary integer into `[0, q)`.
    #[inline]
    pub fn reduce(self, x: i64) -> u8 {
        x.rem_euclid(self.q as i64) as u8
    }

    #[inline]
    pub fn add(self, a: u8, b: u8) -> u8 {
        let s = a as u16 + b as u16;
        let q = self.q as u16;
        (if s >= q { s - q } else { s }) as u8
    }

    #[inline]
    pub fn sub(self, a: u8, b: u8) -> u8 {
        if a >= b {
            a - b
        } else {
            (a as u16 + self.q as u16 - b as u16) as u8
        }
    }

    #[inline]
    pub fn neg(self, a: u8) -> u8 {
        if a == 0 {
            0
        } else {
            self.q - a
        }
    }

    #[inline]
    pub fn mul(self, a: u8, b: u8) -> u8 {
        ((a as u16 * b as u16) % self.q as u16) as u8
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(self, a: u8) -> Option<u8> {
        if a == 0 {
            return None;
        }
        // extended Euclid on small integers
        let (mut r0, mut r1) = (self.q as i32, a as i32);
        let (mut t0, mut t1) = (0i32, 1i32);
        while r1 != 0 {
            let k = r0 / r1;
            (r0, r1) = (r1, r0 - k * r1);
            (t0, t1) = (t1, t0 - k * t1);
        }
        Some(self.reduce(t0 as i64))
    }

    pub fn div(self, a: u8, b: u8) -> Option<u8> {
        self.inv(b).map(|ib| self.mul(a, ib))
    }

    pub fn pow(self, a: u8, mut e: u64) -> u8 {
        let mut base = a;
        let mut acc = 1u8 % self.q;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn zero(self) -> Scalar {
        Scalar { value: 0, field: self }
    }

    pub fn one(self) -> Scalar {
        Scalar { value: 1, field: self }
    }

    pub fn scalar(self, value: i64) -> Scalar {
        Scalar {
            value: self.reduce(value),
            field: self,
        }
    }

    /// All elements `0, 1, ..., q-1` in ascending residue order.
    pub fn elements(self) -> impl Iterator<Item = Scalar> {
        (0..self.q).map(move |value| Scalar { value, field: self })
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.q)
    }
}

/// Convenience wrapper around [`FieldSpec::elements`].
pub fn enumerate_field(spec: FieldSpec) -> Vec<Scalar> {
    spec.elements().collect()
}

/// An element of `GF(q)` tagged with its field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Scalar {
    value: u8,
    field: FieldSpec,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl Scalar {
    pub fn new(value: i64, field: FieldSpec) -> Self {
        field.scalar(value)
    }

    #[inline]
    pub fn value(self) -> u8 {
        self.value
    }

    #[inline]
    pub fn field(self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inv(self) -> Result<Scalar> {
        self.field
            .inv(self.value)
            .map(|value| Scalar { value, field: self.field })
            .ok_or_else(|| Error::Arithmetic("inverse of zero".into()))
    }

    pub fn apply(self, other: Scalar, op: ArithOp) -> Result<Scalar> {
        field_arith(self, other, op)
    }
}

/// Exact field operation on two scalars of the same field.
pub fn field_arith(a: Scalar, b: Scalar, op: ArithOp) -> Result<Scalar> {
    if a.field != b.field {
        return Err(Error::usage(format!(
            "operands live in different fields ({} and {})",
            a.field, b.field
        )));
    }
    let f = a.field;
    let value = match op {
        ArithOp::Add => f.add(a.value, b.value),
        ArithOp::Sub => f.sub(a.value, b.value),
        ArithOp::Mul => f.mul(a.value, b.value),
        ArithOp::Div => f
            .div(a.value, b.value)
            .ok_or_else(|| Error::Arithmetic("division by zero".into()))?,
    };
    Ok(Scalar { value, field: f })
}

macro_rules! scalar_op {
    ($tr:ident, $method:ident, $op:expr) => {
        /// Panics when the operands live in different fields; use
        /// [`field_arith`] for a checked variant.
        impl std::ops::$tr for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                field_arith(self, rhs, $op).expect("scalar operation")
            }
        }
    };
}

scalar_op!(Add, add, ArithOp::Add);
scalar_op!(Sub, sub, ArithOp::Sub);
scalar_op!(Mul, mul, ArithOp::Mul);

impl std::ops::Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            value: self.field.neg(self.value),
            field: self.field,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_primes() {
        for q in [0, 1, 4, 6, 9, 15, 253, 256] {
            assert!(FieldSpec::new(q).is_err(), "q = {q}");
        }
        for q in [2, 3, 5, 7, 11, 251] {
            assert!(FieldSpec::new(q).is_ok(), "q = {q}");
        }
    }

    #[test]
    fn arithmetic_examples() {
        let f2 = FieldSpec::gf(2);
        let f3 = FieldSpec::gf(3);
        let f5 = FieldSpec::gf(5);
        assert_eq!(field_arith(f2.one(), f2.one(), ArithOp::Add).unwrap().value(), 0);
        assert_eq!(field_arith(f3.scalar(2), f3.scalar(2), ArithOp::Mul).unwrap().value(), 1);
        assert_eq!(field_arith(f5.scalar(1), f5.scalar(3), ArithOp::Div).unwrap().value(), 2);
    }

    #[test]
    fn division_by_zero_and_mixed_fields() {
        let f5 = FieldSpec::gf(5);
        let err = field_arith(f5.one(), f5.zero(), ArithOp::Div).unwrap_err();
        assert!(matches!(err, Error::Arithmetic(_)));
        let err = field_arith(f5.one(), FieldSpec::gf(3).one(), ArithOp::Add).unwrap_err();
        assert!(matches!(err, Error::Usage(_)));
    }

    #[test]
    fn enumeration_order() {
        let v: Vec<u8> = enumerate_field(FieldSpec::gf(3)).iter().map(|s| s.value()).collect();
        assert_eq!(v, vec![0, 1, 2]);
        assert_eq!(enumerate_field(FieldSpec::gf(2)).len(), 2);
        assert_eq!(enumerate_field(FieldSpec::gf(7)).len(), 7);
    }

    #[test]
    fn inverse_table_matches_brute_force() {
        for q in [2u32, 3, 5, 7, 11, 13, 251] {
            let f = FieldSpec::gf(q);
            for a in 1..f.q() {
                let brute = (1..f.q()).find(|&b| (a as u32 * b as u32) % q == 1).unwrap();
                assert_eq!(f.inv(a), Some(brute));
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
        }
    }

    #[test]
    fn characteristic_and_frobenius() {
        for q in [2u32, 3, 5, 7] {
            let f = FieldSpec::gf(q);
            for a in f.elements() {
                let mut acc = f.zero();
                for _ in 0..q {
                    acc = acc + a;
                }
                assert!(acc.is_zero());
                assert_eq!(f.pow(a.value(), q as u64), a.value());
            }
        }
        let f2 = FieldSpec::gf(2);
        for a in f2.elements() {
            assert_eq!(a * a, a);
        }
    }
}
