//! The cyclic ring `F_q[x]/(x^k - 1)`.
//!
//! Multiplication by a fixed `a(x)` in this ring is exactly the action of
//! the circulant matrix whose first column is `a`.

use crate::algebra::field::{PrimeField, Symbol};
use crate::algebra::poly::Poly;
use crate::algebra::AlgebraError;

/// Coefficients of `a(x) * m(x) mod x^k - 1`, as a length-`k` vector.
pub fn cyclic_mul(a: &Poly, m: &Poly, k: usize) -> Result<Vec<Symbol>, AlgebraError> {
    for p in [a, m] {
        if let Some(d) = p.degree() {
            if d >= k {
                return Err(AlgebraError::DegreeTooLarge {
                    degree: d,
                    bound: k.saturating_sub(1),
                });
            }
        }
    }
    if a.field() != m.field() {
        return Err(AlgebraError::FieldMismatch {
            left: a.field().order(),
            right: m.field().order(),
        });
    }
    Ok(cyclic_mul_slices(a.field(), a.coeffs(), m.coeffs(), k))
}

/// Slice form of [`cyclic_mul`]; inputs shorter than `k` are zero-extended.
pub fn cyclic_mul_slices(field: PrimeField, a: &[Symbol], m: &[Symbol], k: usize) -> Vec<Symbol> {
    debug_assert!(a.len() <= k && m.len() <= k);
    let mut out = vec![0; k];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &mj) in m.iter().enumerate() {
            if mj == 0 {
                continue;
            }
            let t = (i + j) % k;
            out[t] = field.add(out[t], field.mul(ai, mj));
        }
    }
    out
}

/// Reduces an arbitrary polynomial modulo `x^k - 1` by folding exponents.
pub fn reduce_mod_xk_minus_one(f: &Poly, k: usize) -> Vec<Symbol> {
    let field = f.field();
    let mut out = vec![0; k];
    for (i, &c) in f.coeffs().iter().enumerate() {
        out[i % k] = field.add(out[i % k], c);
    }
    out
}

/// Cyclic right shift by one: `(c_{n-1}, c_0, ..., c_{n-2})`, i.e. `x * c(x)`.
pub fn cyclic_shift(word: &[Symbol]) -> Vec<Symbol> {
    let mut out = Vec::with_capacity(word.len());
    if let Some(&last) = word.last() {
        out.push(last);
        out.extend_from_slice(&word[..word.len() - 1]);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(q: u32, c: &[u32]) -> Poly {
        Poly::new(PrimeField::new(q).unwrap(), c.to_vec()).unwrap()
    }

    /// Explicit circulant matrix: entry (i, j) = a_{(i - j) mod k}.
    fn circulant_product(field: PrimeField, a: &[u32], m: &[u32]) -> Vec<u32> {
        let k = a.len();
        (0..k)
            .map(|i| {
                (0..k).fold(0, |acc, j| {
                    field.add(acc, field.mul(a[(i + k - j) % k], m[j]))
                })
            })
            .collect()
    }

    #[test]
    fn examples() {
        assert_eq!(
            cyclic_mul(&p(2, &[1, 1]), &p(2, &[0, 1]), 3).unwrap(),
            [0, 1, 1]
        );
        assert_eq!(
            cyclic_mul(&p(2, &[1, 1]), &p(2, &[0, 0, 1]), 3).unwrap(),
            [1, 0, 1]
        );
        assert_eq!(
            cyclic_mul(&p(3, &[2, 0, 1]), &p(3, &[1]), 4).unwrap(),
            [2, 0, 1, 0]
        );
        assert!(cyclic_mul(&p(2, &[1, 1, 1, 1]), &p(2, &[1]), 3).is_err());
    }

    fn all_vectors(q: u32, k: usize) -> impl Iterator<Item = Vec<u32>> {
        let total = (q as usize).pow(k as u32);
        (0..total).map(move |mut idx| {
            (0..k)
                .map(|_| {
                    let d = (idx % q as usize) as u32;
                    idx /= q as usize;
                    d
                })
                .collect()
        })
    }

    #[test]
    fn matches_explicit_circulant() {
        for (q, max_k) in [(2u32, 8usize), (3, 5)] {
            let field = PrimeField::new(q).unwrap();
            for k in 1..=max_k {
                for a in all_vectors(q, k) {
                    for m in all_vectors(q, k) {
                        assert_eq!(
                            cyclic_mul_slices(field, &a, &m, k),
                            circulant_product(field, &a, &m)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn shift_matches_multiplication_by_x() {
        let field = PrimeField::new(3).unwrap();
        let w = [1, 2, 0, 2, 1];
        assert_eq!(cyclic_shift(&w), cyclic_mul_slices(field, &[0, 1], &w, 5));
    }
}
