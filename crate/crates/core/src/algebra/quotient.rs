//! The field `H = F_q[x]/p_k(x)` for prime `k` with `q` primitive mod `k`.
//!
//! Elements are coefficient vectors of length `k - 1`. Because `p_k` divides
//! `x^k - 1`, products are formed in the cyclic ring first and then folded:
//! a length-`k` representative `c` reduces to `(c_0 - c_{k-1}, ...,
//! c_{k-2} - c_{k-1})`, using `x^(k-1) = -(1 + ... + x^(k-2))`.

use crate::algebra::field::{PrimeField, Symbol};
use crate::algebra::number::{is_prime, is_primitive_root};
use crate::algebra::poly::Poly;
use crate::algebra::ring::{cyclic_mul_slices, reduce_mod_xk_minus_one};
use crate::algebra::AlgebraError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuotientField {
    field: PrimeField,
    k: usize,
}

impl QuotientField {
    /// Validates that `k` is prime and `q` is a primitive root mod `k`, and
    /// then confirms directly that `p_k` is irreducible.
    pub fn new(field: PrimeField, k: usize) -> Result<Self, AlgebraError> {
        let q = u64::from(field.order());
        if !is_prime(k as u64) {
            return Err(AlgebraError::NotPrime(k as u64));
        }
        if !is_primitive_root(q, k as u64)? {
            return Err(AlgebraError::NotPrimitiveRoot { q, k: k as u64 });
        }
        if k > 2 && !Poly::all_ones(field, k).is_irreducible()? {
            return Err(AlgebraError::ReducibleModulus { q, k: k as u64 });
        }
        Ok(Self { field, k })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// The prime `k`; elements have `k - 1` coordinates.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn dimension(&self) -> usize {
        self.k - 1
    }

    pub fn modulus(&self) -> Poly {
        Poly::all_ones(self.field, self.k)
    }

    pub fn zero(&self) -> Vec<Symbol> {
        vec![0; self.k - 1]
    }

    pub fn one(&self) -> Vec<Symbol> {
        let mut e = self.zero();
        if let Some(first) = e.first_mut() {
            *first = 1;
        }
        e
    }

    /// Folds a representative of degree `< k` to its residue mod `p_k`.
    pub fn reduce(&self, f: &[Symbol]) -> Result<Vec<Symbol>, AlgebraError> {
        if f.len() > self.k {
            return Err(AlgebraError::LengthMismatch {
                expected: self.k,
                found: f.len(),
            });
        }
        let beta = if f.len() == self.k { f[self.k - 1] } else { 0 };
        let fld = self.field;
        Ok((0..self.k - 1)
            .map(|i| fld.sub(f.get(i).copied().unwrap_or(0), beta))
            .collect())
    }

    /// Reduces any polynomial, going through `x^k - 1` first.
    pub fn reduce_poly(&self, f: &Poly) -> Vec<Symbol> {
        self.reduce(&reduce_mod_xk_minus_one(f, self.k))
            .expect("length k representative")
    }

    pub fn mul(&self, u: &[Symbol], v: &[Symbol]) -> Result<Vec<Symbol>, AlgebraError> {
        self.check(u)?;
        self.check(v)?;
        self.reduce(&cyclic_mul_slices(self.field, u, v, self.k))
    }

    pub fn add(&self, u: &[Symbol], v: &[Symbol]) -> Result<Vec<Symbol>, AlgebraError> {
        self.check(u)?;
        self.check(v)?;
        Ok(u.iter()
            .zip(v)
            .map(|(&a, &b)| self.field.add(a, b))
            .collect())
    }

    fn check(&self, u: &[Symbol]) -> Result<(), AlgebraError> {
        if u.len() != self.k - 1 {
            return Err(AlgebraError::LengthMismatch {
                expected: self.k - 1,
                found: u.len(),
            });
        }
        if let Some(&bad) = u.iter().find(|&&c| !self.field.contains(c)) {
            return Err(AlgebraError::SymbolOutOfRange {
                value: bad,
                q: self.field.order(),
            });
        }
        Ok(())
    }

    /// Number of elements, `q^(k-1)`, if it fits in `u64`.
    pub fn size(&self) -> Option<u64> {
        u64::from(self.field.order()).checked_pow((self.k - 1) as u32)
    }
}
