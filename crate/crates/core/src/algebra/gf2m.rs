//! Binary extension fields `F_{2^m}` with elements packed into `u32` bit
//! masks (bit `j` is the coefficient of `x^j` in the polynomial basis).

use crate::algebra::field::PrimeField;
use crate::algebra::number::prime_factors;
use crate::algebra::poly::Poly;
use crate::algebra::AlgebraError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryExtensionField {
    m: u32,
    /// Modulus including the `x^m` bit.
    modulus: u32,
    generator: u32,
}

impl BinaryExtensionField {
    pub const MAX_DEGREE: u32 = 20;

    /// Builds `F_{2^m}` from the least irreducible modulus (ordered as the
    /// integer whose bit `j` is the coefficient of `x^j`) with nonzero constant
    /// term, and the least element of full multiplicative order.
    pub fn new(m: u32) -> Result<Self, AlgebraError> {
        if !(1..=Self::MAX_DEGREE).contains(&m) {
            return Err(AlgebraError::ExtensionDegreeOutOfRange(m));
        }
        let modulus = ((1u32 << m) | 1..1u32 << (m + 1))
            .step_by(2)
            .find(|&cand| mask_to_poly(cand).is_irreducible().unwrap_or(false))
            .expect("an irreducible polynomial of every degree exists");
        let mut field = Self {
            m,
            modulus,
            generator: 0,
        };
        let order = field.group_order();
        let factors = prime_factors(u64::from(order));
        field.generator = (1..=order)
            .find(|&a| factors.iter().all(|&p| field.pow(a, order / p as u32) != 1))
            .expect("the multiplicative group of a finite field is cyclic");
        Ok(field)
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn modulus(&self) -> Poly {
        mask_to_poly(self.modulus)
    }

    pub fn modulus_mask(&self) -> u32 {
        self.modulus
    }

    pub fn generator(&self) -> u32 {
        self.generator
    }

    /// `2^m - 1`.
    pub fn group_order(&self) -> u32 {
        (1u32 << self.m) - 1
    }

    pub fn mul(&self, mut a: u32, mut b: u32) -> u32 {
        let top = 1u32 << self.m;
        let mut acc = 0u32;
        while b != 0 {
            if b & 1 == 1 {
                acc ^= a;
            }
            b >>= 1;
            a <<= 1;
            if a & top != 0 {
                a ^= self.modulus;
            }
        }
        acc
    }

    pub fn pow(&self, a: u32, mut e: u32) -> u32 {
        let mut base = a;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order of a nonzero element, by stepping through powers.
    pub fn order_of(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let mut x = a;
        let mut ord = 1;
        while x != 1 {
            x = self.mul(x, a);
            ord += 1;
        }
        Some(ord)
    }

    /// Polynomial-basis coordinates of `a`, low bit first.
    pub fn coordinates(&self, a: u32) -> Vec<u32> {
        (0..self.m).map(|j| (a >> j) & 1).collect()
    }
}

pub(crate) fn mask_to_poly(mask: u32) -> Poly {
    let bits = 32 - mask.leading_zeros();
    Poly::from_reduced(
        PrimeField::binary(),
        (0..bits).map(|j| (mask >> j) & 1).collect(),
    )
}
