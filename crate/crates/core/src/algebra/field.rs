//! Prime-field arithmetic.
//!
//! Symbols are stored as plain `u32` residues in `[0, q)`; [`PrimeField`]
//! carries the modulus and performs the arithmetic. [`FieldElement`] pairs a
//! residue with its field for call sites that want typed, checked values.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::algebra::number::is_prime;
use crate::algebra::AlgebraError;

/// Residue in `[0, q)`.
pub type Symbol = u32;

/// The field `F_q` for a prime `q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    q: u32,
}

impl PrimeField {
    /// Largest supported modulus; products of two residues must fit in `u64`
    /// and symbol counts are kept small enough for exhaustive scans.
    pub const MAX_Q: u32 = 1 << 16;

    pub fn new(q: u32) -> Result<Self, AlgebraError> {
        if q > Self::MAX_Q || !is_prime(u64::from(q)) {
            return Err(AlgebraError::NotPrime(u64::from(q)));
        }
        Ok(Self { q })
    }

    /// The binary field, used by every Reed-Muller construction.
    pub const fn binary() -> Self {
        Self { q: 2 }
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn element(&self, value: u32) -> Result<FieldElement, AlgebraError> {
        if value >= self.q {
            return Err(AlgebraError::SymbolOutOfRange { value, q: self.q });
        }
        Ok(FieldElement {
            value,
            field: *self,
        })
    }

    #[inline]
    pub fn contains(&self, a: Symbol) -> bool {
        a < self.q
    }

    #[inline]
    pub fn add(&self, a: Symbol, b: Symbol) -> Symbol {
        let s = a + b;
        if s >= self.q {
            s - self.q
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: Symbol, b: Symbol) -> Symbol {
        if a >= b {
            a - b
        } else {
            a + self.q - b
        }
    }

    #[inline]
    pub fn neg(&self, a: Symbol) -> Symbol {
        if a == 0 {
            0
        } else {
            self.q - a
        }
    }

    #[inline]
    pub fn mul(&self, a: Symbol, b: Symbol) -> Symbol {
        ((u64::from(a) * u64::from(b)) % u64::from(self.q)) as Symbol
    }

    pub fn pow(&self, a: Symbol, mut e: u64) -> Symbol {
        let mut base = a;
        let mut acc = 1 % self.q;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via Fermat's little theorem.
    pub fn inv(&self, a: Symbol) -> Result<Symbol, AlgebraError> {
        if a.is_multiple_of(self.q) {
            return Err(AlgebraError::ZeroInverse);
        }
        Ok(self.pow(a, u64::from(self.q) - 2))
    }

    /// All field elements in increasing order.
    pub fn elements(&self) -> impl Iterator<Item = Symbol> {
        0..self.q
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.q)
    }
}

/// Binary operation selector for [`FieldElement::apply`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
}

/// A residue tagged with its field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    value: Symbol,
    field: PrimeField,
}

impl FieldElement {
    #[inline]
    pub fn value(&self) -> Symbol {
        self.value
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    /// Checked binary operation; fails on operands from different fields.
    pub fn apply(self, op: FieldOp, rhs: FieldElement) -> Result<FieldElement, AlgebraError> {
        if self.field != rhs.field {
            return Err(AlgebraError::FieldMismatch {
                left: self.field.q,
                right: rhs.field.q,
            });
        }
        let f = self.field;
        let value = match op {
            FieldOp::Add => f.add(self.value, rhs.value),
            FieldOp::Sub => f.sub(self.value, rhs.value),
            FieldOp::Mul => f.mul(self.value, rhs.value),
        };
        Ok(FieldElement { value, field: f })
    }

    pub fn inv(self) -> Result<FieldElement, AlgebraError> {
        Ok(FieldElement {
            value: self.field.inv(self.value)?,
            field: self.field,
        })
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

macro_rules! impl_field_op {
    ($tr:ident, $method:ident, $op:expr) => {
        impl $tr for FieldElement {
            type Output = FieldElement;

            /// Panics on mixed fields; use [`FieldElement::apply`] for a checked variant.
            fn $method(self, rhs: FieldElement) -> FieldElement {
                self.apply($op, rhs)
                    .expect("operands from different fields")
            }
        }
    };
}

impl_field_op!(Add, add, FieldOp::Add);
impl_field_op!(Sub, sub, FieldOp::Sub);
impl_field_op!(Mul, mul, FieldOp::Mul);

impl Neg for FieldElement {
    type Output = FieldElement;

    fn neg(self) -> FieldElement {
        FieldElement {
            value: self.field.neg(self.value),
            field: self.field,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(q: u32, v: u32) -> FieldElement {
        PrimeField::new(q).unwrap().element(v).unwrap()
    }

    #[test]
    fn small_examples() {
        assert_eq!((el(5, 3) * el(5, 4)).value(), 2);
        assert_eq!(el(5, 2).inv().unwrap().value(), 3);
        assert_eq!((el(2, 1) + el(2, 1)).value(), 0);
        assert_eq!((-el(7, 3)).value(), 4);
        assert_eq!((el(7, 3) - el(7, 5)).value(), 5);
    }

    #[test]
    fn errors() {
        assert!(matches!(PrimeField::new(4), Err(AlgebraError::NotPrime(4))));
        assert!(PrimeField::new(1).is_err());
        assert!(matches!(el(5, 0).inv(), Err(AlgebraError::ZeroInverse)));
        assert!(matches!(
            el(5, 1).apply(FieldOp::Add, el(3, 1)),
            Err(AlgebraError::FieldMismatch { left: 5, right: 3 })
        ));
        assert!(PrimeField::new(5).unwrap().element(5).is_err());
    }

    #[test]
    fn field_axioms_exhaustive() {
        for q in [2u32, 3, 5, 7, 11] {
            let f = PrimeField::new(q).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                for b in f.elements() {
                    assert_eq!(f.add(a, b), (a + b) % q);
                    assert_eq!(f.sub(f.add(a, b), b), a);
                    assert_eq!(f.mul(a, b), (a * b) % q);
                }
            }
        }
    }
}
