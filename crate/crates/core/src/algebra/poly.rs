//! Dense univariate polynomials over a prime field.
//!
//! Coefficients are stored low-degree first with no trailing zeros, so the
//! zero polynomial is the empty vector and its degree is `None` (which orders
//! below every `Some(d)`).

use std::fmt;

use crate::algebra::field::{PrimeField, Symbol};
use crate::algebra::AlgebraError;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: PrimeField,
    coeffs: Vec<Symbol>,
}

impl Poly {
    /// Builds a polynomial from low-first coefficients, rejecting symbols
    /// outside `[0, q)`.
    pub fn new(field: PrimeField, coeffs: Vec<Symbol>) -> Result<Self, AlgebraError> {
        if let Some(&bad) = coeffs.iter().find(|&&c| !field.contains(c)) {
            return Err(AlgebraError::SymbolOutOfRange {
                value: bad,
                q: field.order(),
            });
        }
        Ok(Self::from_reduced(field, coeffs))
    }

    /// Caller guarantees every coefficient is already reduced.
    pub(crate) fn from_reduced(field: PrimeField, mut coeffs: Vec<Symbol>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { field, coeffs }
    }

    pub fn zero(field: PrimeField) -> Self {
        Self {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: PrimeField) -> Self {
        Self::monomial(field, 0, 1)
    }

    pub fn monomial(field: PrimeField, degree: usize, coeff: Symbol) -> Self {
        let mut coeffs = vec![0; degree + 1];
        coeffs[degree] = coeff % field.order();
        Self::from_reduced(field, coeffs)
    }

    /// `x^n - 1`.
    pub fn x_n_minus_one(field: PrimeField, n: usize) -> Self {
        let mut coeffs = vec![0; n + 1];
        coeffs[0] = field.neg(1);
        coeffs[n] = field.add(coeffs[n], 1);
        Self::from_reduced(field, coeffs)
    }

    /// `p_k(x) = 1 + x + ... + x^(k-1)`.
    pub fn all_ones(field: PrimeField, k: usize) -> Self {
        Self::from_reduced(field, vec![1; k])
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn coeffs(&self) -> &[Symbol] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Symbol {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    pub fn leading_coeff(&self) -> Symbol {
        self.coeffs.last().copied().unwrap_or(0)
    }

    /// Coefficient vector padded with zeros to `len` entries.
    ///
    /// Panics if the polynomial has degree `>= len`.
    pub fn to_padded(&self, len: usize) -> Vec<Symbol> {
        assert!(self.coeffs.len() <= len, "degree exceeds requested length");
        let mut out = self.coeffs.clone();
        out.resize(len, 0);
        out
    }

    fn check_field(&self, other: &Poly) -> Result<(), AlgebraError> {
        if self.field != other.field {
            return Err(AlgebraError::FieldMismatch {
                left: self.field.order(),
                right: other.field.order(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.check_field(other)
            .expect("polynomials over different fields");
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| f.add(self.coeff(i), other.coeff(i)))
            .collect();
        Self::from_reduced(f, coeffs)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.check_field(other)
            .expect("polynomials over different fields");
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| f.sub(self.coeff(i), other.coeff(i)))
            .collect();
        Self::from_reduced(f, coeffs)
    }

    pub fn scale(&self, c: Symbol) -> Poly {
        let f = self.field;
        Self::from_reduced(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Schoolbook product. Panics on mixed fields; see [`Poly::try_mul`].
    pub fn mul(&self, other: &Poly) -> Poly {
        self.try_mul(other)
            .expect("polynomials over different fields")
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly, AlgebraError> {
        self.check_field(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.field));
        }
        let f = self.field;
        let mut out = vec![0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Ok(Self::from_reduced(f, out))
    }

    /// Euclidean division: returns `(quotient, remainder)` with
    /// `deg(remainder) < deg(divisor)`.
    pub fn divmod(&self, divisor: &Poly) -> Result<(Poly, Poly), AlgebraError> {
        self.check_field(divisor)?;
        let Some(dd) = divisor.degree() else {
            return Err(AlgebraError::DivisionByZero);
        };
        let f = self.field;
        let lead_inv = f.inv(divisor.leading_coeff())?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(f), self.clone()));
        }
        let mut quot = vec![0; rem.len() - dd];
        for shift in (0..quot.len()).rev() {
            let c = f.mul(rem[shift + dd], lead_inv);
            quot[shift] = c;
            if c == 0 {
                continue;
            }
            for (j, &b) in divisor.coeffs.iter().enumerate() {
                rem[shift + j] = f.sub(rem[shift + j], f.mul(c, b));
            }
        }
        rem.truncate(dd);
        Ok((Self::from_reduced(f, quot), Self::from_reduced(f, rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly, AlgebraError> {
        Ok(self.divmod(divisor)?.1)
    }

    /// Exact quotient, or `None` when `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &Poly) -> Result<Option<Poly>, AlgebraError> {
        let (q, r) = self.divmod(divisor)?;
        Ok(r.is_zero().then_some(q))
    }

    /// Scales to leading coefficient 1; the zero polynomial is returned as is.
    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self
            .field
            .inv(self.leading_coeff())
            .expect("nonzero leading coefficient");
        self.scale(inv)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        self.check_field(other)
            .expect("polynomials over different fields");
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `x^bound * h(1/x)`: pad to `bound + 1` coefficients and reverse.
    pub fn reverse(&self, bound: usize) -> Result<Poly, AlgebraError> {
        if let Some(d) = self.degree() {
            if d > bound {
                return Err(AlgebraError::DegreeTooLarge { degree: d, bound });
            }
        }
        let mut c = self.to_padded(bound + 1);
        c.reverse();
        Ok(Self::from_reduced(self.field, c))
    }

    pub fn eval(&self, x: Symbol) -> Symbol {
        let f = self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// `self^e mod modulus` by square-and-multiply.
    pub fn pow_mod(&self, mut e: u128, modulus: &Poly) -> Result<Poly, AlgebraError> {
        let mut base = self.rem(modulus)?;
        let mut acc = Poly::one(self.field).rem(modulus)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(modulus)?;
            }
            base = base.mul(&base).rem(modulus)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Exact irreducibility test over `F_q`.
    ///
    /// Ben-Or's criterion: `f` of degree `n` is irreducible iff
    /// `gcd(f, x^(q^i) - x) = 1` for every `1 <= i <= n/2`, since any factor of
    /// degree `i` divides `x^(q^i) - x`.
    pub fn is_irreducible(&self) -> Result<bool, AlgebraError> {
        let n = match self.degree() {
            None | Some(0) => return Err(AlgebraError::ConstantPolynomial),
            Some(n) => n,
        };
        if n == 1 {
            return Ok(true);
        }
        let f = self.field;
        let x = Poly::monomial(f, 1, 1);
        let q = u128::from(f.order());
        let mut frob = x.rem(self)?;
        for _ in 1..=n / 2 {
            frob = frob.pow_mod(q, self)?;
            if self.gcd(&frob.sub(&x)).degree() != Some(0) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.field, self)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, _) => write!(f, "{c}x")?,
                (_, 1) => write!(f, "x^{i}")?,
                _ => write!(f, "{c}x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(q: u32, c: &[u32]) -> Poly {
        Poly::new(PrimeField::new(q).unwrap(), c.to_vec()).unwrap()
    }

    #[test]
    fn canonical_form() {
        assert_eq!(p(2, &[1, 0, 0]).coeffs(), &[1]);
        assert!(p(3, &[0, 0]).is_zero());
        assert_eq!(p(3, &[]).degree(), None);
        assert!(p(3, &[]).degree() < p(3, &[1]).degree());
        assert!(Poly::new(PrimeField::new(3).unwrap(), vec![3]).is_err());
    }

    #[test]
    fn mul_examples() {
        assert_eq!(p(2, &[1, 1]).mul(&p(2, &[1, 1])), p(2, &[1, 0, 1]));
        assert_eq!(p(3, &[1, 1]).mul(&p(3, &[2])), p(3, &[2, 2]));
        assert_eq!(p(2, &[1, 1]).mul(&p(2, &[1, 1, 1])), p(2, &[1, 0, 0, 1]));
        assert!(p(2, &[1]).try_mul(&p(3, &[1])).is_err());
    }

    #[test]
    fn divmod_examples() {
        let (q, r) = p(2, &[1, 0, 0, 1]).divmod(&p(2, &[1, 1])).unwrap();
        assert_eq!((q, r), (p(2, &[1, 1, 1]), p(2, &[])));
        let (q, r) = p(2, &[0, 0, 1]).divmod(&p(2, &[1, 1, 1])).unwrap();
        assert_eq!((q, r), (p(2, &[1]), p(2, &[1, 1])));
        let f = p(5, &[3, 0, 4, 1]);
        assert_eq!(f.divmod(&p(5, &[1])).unwrap(), (f.clone(), p(5, &[])));
        assert!(matches!(
            f.divmod(&p(5, &[])),
            Err(AlgebraError::DivisionByZero)
        ));
    }

    #[test]
    fn reverse_examples() {
        assert_eq!(p(2, &[1, 0, 1]).reverse(2).unwrap(), p(2, &[1, 0, 1]));
        assert_eq!(p(3, &[1, 2]).reverse(1).unwrap(), p(3, &[2, 1]));
        assert_eq!(p(2, &[1, 1]).reverse(2).unwrap(), p(2, &[0, 1, 1]));
        assert!(matches!(
            p(2, &[1, 1, 1]).reverse(1),
            Err(AlgebraError::DegreeTooLarge {
                degree: 2,
                bound: 1
            })
        ));
    }

    #[test]
    fn irreducibility_examples() {
        assert!(p(2, &[1, 1, 1]).is_irreducible().unwrap());
        assert!(!p(2, &[1, 0, 1]).is_irreducible().unwrap());
        assert!(p(2, &[1, 1, 1, 1, 1]).is_irreducible().unwrap());
        assert!(matches!(
            p(2, &[1]).is_irreducible(),
            Err(AlgebraError::ConstantPolynomial)
        ));
    }

    /// Trial division by every monic polynomial of degree `1..=deg/2`.
    fn irreducible_by_trial_division(f: &Poly) -> bool {
        let n = f.degree().unwrap();
        let q = f.field().order();
        for d in 1..=n / 2 {
            let count = (q as usize).pow(d as u32);
            for idx in 0..count {
                let mut coeffs = Vec::with_capacity(d + 1);
                let mut t = idx;
                for _ in 0..d {
                    coeffs.push((t % q as usize) as u32);
                    t /= q as usize;
                }
                coeffs.push(1);
                let g = Poly::new(f.field(), coeffs).unwrap();
                if f.rem(&g).unwrap().is_zero() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn ben_or_matches_trial_division() {
        for (q, max_deg) in [(2u32, 9usize), (3, 6), (5, 4)] {
            let field = PrimeField::new(q).unwrap();
            for deg in 1..=max_deg {
                let count = (q as usize).pow(deg as u32);
                for idx in 0..count {
                    let mut coeffs = Vec::new();
                    let mut t = idx;
                    for _ in 0..deg {
                        coeffs.push((t % q as usize) as u32);
                        t /= q as usize;
                    }
                    coeffs.push(1);
                    let f = Poly::new(field, coeffs).unwrap();
                    assert_eq!(
                        f.is_irreducible().unwrap(),
                        irreducible_by_trial_division(&f),
                        "{f:?}"
                    );
                }
            }
        }
    }

    fn arb_poly(q: u32, max_len: usize) -> impl Strategy<Value = Poly> {
        prop::collection::vec(0..q, 0..max_len)
            .prop_map(move |c| Poly::new(PrimeField::new(q).unwrap(), c).unwrap())
    }

    fn arb_triple() -> impl Strategy<Value = (Poly, Poly, Poly)> {
        prop_oneof![Just(2u32), Just(3u32), Just(5u32)]
            .prop_flat_map(|q| (arb_poly(q, 12), arb_poly(q, 9), arb_poly(q, 9)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn divmod_round_trip((f, g, r) in arb_triple()) {
            prop_assume!(!g.is_zero() && !f.is_zero());
            let r = r.rem(&g).unwrap();
            let (q2, r2) = f.mul(&g).add(&r).divmod(&g).unwrap();
            prop_assert_eq!(q2, f);
            prop_assert_eq!(r2, r);
        }

        #[test]
        fn mul_degree_adds((f, g, _r) in arb_triple()) {
            prop_assume!(!f.is_zero() && !g.is_zero());
            prop_assert_eq!(
                f.mul(&g).degree(),
                Some(f.degree().unwrap() + g.degree().unwrap())
            );
        }

        #[test]
        fn reverse_is_involution((h, _g, _r) in arb_triple(), extra in 0usize..4) {
            let bound = h.degree().map_or(0, |d| d) + extra;
            let back = h.reverse(bound).unwrap().reverse(bound).unwrap();
            prop_assert_eq!(back, h);
        }
    }
}
