//! Cyclic codes given by a monic generator `g | x^n - 1`: check polynomial,
//! dual and reversed codes, and factorisation of `x^n - 1`.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{cyclic_shift, AlgebraError, Poly, PrimeField, Symbol};
use crate::code::{
    check_symbols, Bound, CodeError, DecodeOutcome, GeneratorMatrixCode, WordDecoder,
};

/// Largest `n` accepted by the factorisation routines.
pub const MAX_FACTOR_LENGTH: usize = 24;

const FACTOR_CANDIDATE_BUDGET: u64 = 1 << 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CyclicError {
    #[error("generator polynomial is not monic")]
    NotMonic,
    #[error("generator does not divide x^{n} - 1")]
    NotDivisor { n: usize },
    #[error("span is not closed under cyclic shifts")]
    NotShiftClosed,
    #[error("length {n} exceeds the factorisation limit {MAX_FACTOR_LENGTH}")]
    TooLong { n: usize },
    #[error("trial division over F_{q} for n = {n} needs too many candidates")]
    TooManyCandidates { q: u32, n: usize },
    #[error("length must be positive")]
    ZeroLength,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Code(#[from] CodeError),
}

/// A cyclic code of length `n` with an optional bounded-distance decoder.
#[derive(Clone)]
pub struct CyclicCode {
    n: usize,
    g: Poly,
    h: Poly,
    decoder: Option<Arc<dyn WordDecoder>>,
}

impl fmt::Debug for CyclicCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CyclicCode")
            .field("q", &self.g.field().order())
            .field("n", &self.n)
            .field("g", &self.g)
            .field("h", &self.h)
            .field("decoder", &self.decoder.is_some())
            .finish()
    }
}

impl PartialEq for CyclicCode {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.g == other.g
    }
}

impl Eq for CyclicCode {}

pub fn cyclic_from_generator(n: usize, g: Poly) -> Result<CyclicCode, CyclicError> {
    if n == 0 {
        return Err(CyclicError::ZeroLength);
    }
    if !g.is_monic() {
        return Err(CyclicError::NotMonic);
    }
    let h = Poly::x_n_minus_one(g.field(), n)
        .exact_div(&g)?
        .ok_or(CyclicError::NotDivisor { n })?;
    Ok(CyclicCode {
        n,
        g,
        h,
        decoder: None,
    })
}

impl CyclicCode {
    pub fn field(&self) -> PrimeField {
        self.g.field()
    }

    pub fn length(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> usize {
        self.h
            .degree()
            .expect("h divides x^n - 1, so it is nonzero")
    }

    pub fn generator(&self) -> &Poly {
        &self.g
    }

    /// `h = (x^n - 1) / g`.
    pub fn check_polynomial(&self) -> &Poly {
        &self.h
    }

    pub fn with_decoder(mut self, decoder: Arc<dyn WordDecoder>) -> Self {
        self.decoder = Some(decoder);
        self
    }

    pub fn decoder(&self) -> Option<&Arc<dyn WordDecoder>> {
        self.decoder.as_ref()
    }

    /// Runs the attached decoder; `None` when there is none.
    pub fn decode(&self, w: &[Symbol], radius: Bound) -> Option<DecodeOutcome> {
        self.decoder.as_ref().map(|d| d.decode(w, radius))
    }

    /// Columns `g(x) x^i`, `i < k`.
    pub fn generator_code(&self) -> GeneratorMatrixCode {
        let n = self.n;
        let cols = (0..self.dimension())
            .map(|i| {
                let mut c = vec![0; n];
                c[i..i + self.g.coeffs().len()].copy_from_slice(self.g.coeffs());
                c
            })
            .collect();
        GeneratorMatrixCode::new(self.field(), n, cols).expect("shifts of g are independent")
    }

    /// `m(x) g(x)` for a message of `k` coefficients.
    pub fn encode(&self, m: &[Symbol]) -> Result<Vec<Symbol>, CyclicError> {
        if m.len() != self.dimension() {
            return Err(CodeError::LengthMismatch {
                expected: self.dimension(),
                found: m.len(),
            }
            .into());
        }
        let mp = Poly::new(self.field(), m.to_vec())?;
        Ok(mp.mul(&self.g).to_padded(self.n))
    }

    /// `g | w(x)`.
    pub fn is_codeword(&self, w: &[Symbol]) -> Result<bool, CyclicError> {
        if w.len() != self.n {
            return Err(CodeError::LengthMismatch {
                expected: self.n,
                found: w.len(),
            }
            .into());
        }
        Ok(Poly::new(self.field(), w.to_vec())?.rem(&self.g)?.is_zero())
    }

    /// Quotient `c(x) / g(x)`, or `None` if `c` is not a codeword.
    pub fn message_of(&self, c: &[Symbol]) -> Result<Option<Vec<Symbol>>, CyclicError> {
        let cp = Poly::new(self.field(), c.to_vec())?;
        Ok(cp
            .exact_div(&self.g)?
            .map(|m| m.to_padded(self.dimension())))
    }
}

/// Cyclic code generated by the monic reversal of `h`.
pub fn dual_code(c: &CyclicCode) -> CyclicCode {
    let k = c.dimension();
    let g = c.h.reverse(k).expect("deg h = k").monic();
    cyclic_from_generator(c.n, g).expect("reversed check polynomial divides x^n - 1")
}

/// Cyclic code whose codewords are the reversals of those of `c`.
pub fn reverse_code(c: &CyclicCode) -> CyclicCode {
    let deg = c.g.degree().expect("generator is nonzero");
    let g = c.g.reverse(deg).expect("deg g bound").monic();
    cyclic_from_generator(c.n, g).expect("reversed generator divides x^n - 1")
}

/// Generator polynomial of the span of `words`, after checking that the
/// span is closed under cyclic shifts.
pub fn generator_from_spanning_set(
    field: PrimeField,
    n: usize,
    words: &[Vec<Symbol>],
) -> Result<Poly, CyclicError> {
    if n == 0 {
        return Err(CyclicError::ZeroLength);
    }
    let span = GeneratorMatrixCode::from_spanning_set(field, n, words)?;
    for w in span.columns() {
        if !span.is_codeword(&cyclic_shift(w))? {
            return Err(CyclicError::NotShiftClosed);
        }
    }
    let mut g = Poly::x_n_minus_one(field, n);
    for w in words {
        check_symbols(field, w)?;
        g = g.gcd(&Poly::new(field, w.clone())?);
    }
    Ok(g)
}

/// Irreducible monic factors of `x^n - 1` with multiplicities, ordered by
/// degree and then coefficients.
pub fn factor_x_n_minus_1(field: PrimeField, n: usize) -> Result<Vec<(Poly, usize)>, CyclicError> {
    if n == 0 {
        return Err(CyclicError::ZeroLength);
    }
    if n > MAX_FACTOR_LENGTH {
        return Err(CyclicError::TooLong { n });
    }
    let q = u64::from(field.order());
    let mut rest = Poly::x_n_minus_one(field, n);
    let mut factors: Vec<(Poly, usize)> = Vec::new();
    let mut tried = 0u64;
    let mut d = 1;
    while let Some(deg) = rest.degree() {
        if deg == 0 {
            break;
        }
        if 2 * d > deg || rest.is_irreducible()? {
            push_factor(&mut factors, rest.clone());
            break;
        }
        // Candidates of degree d in increasing lexicographic order; smaller
        // factors are already divided out, so only irreducibles can divide.
        let count = q.pow(d as u32);
        tried = tried.saturating_add(count);
        if tried > FACTOR_CANDIDATE_BUDGET {
            return Err(CyclicError::TooManyCandidates {
                q: field.order(),
                n,
            });
        }
        for idx in 0..count {
            let mut coeffs = vec![0; d + 1];
            let mut t = idx;
            for c in coeffs.iter_mut().take(d) {
                *c = (t % q) as Symbol;
                t /= q;
            }
            coeffs[d] = 1;
            let cand = Poly::new(field, coeffs)?;
            while let Some(quot) = rest.exact_div(&cand)? {
                push_factor(&mut factors, cand.clone());
                rest = quot;
            }
        }
        d += 1;
    }
    factors.sort_by(|a, b| {
        a.0.degree()
            .cmp(&b.0.degree())
            .then_with(|| a.0.coeffs().iter().rev().cmp(b.0.coeffs().iter().rev()))
    });
    Ok(factors)
}

fn push_factor(factors: &mut Vec<(Poly, usize)>, p: Poly) {
    match factors.iter_mut().find(|(f, _)| *f == p) {
        Some((_, mult)) => *mult += 1,
        None => factors.push((p, 1)),
    }
}

/// One code per monic divisor of `x^n - 1`, ordered by generator degree.
pub fn enumerate_cyclic_codes(field: PrimeField, n: usize) -> Result<Vec<CyclicCode>, CyclicError> {
    let factors = factor_x_n_minus_1(field, n)?;
    let mut gens = vec![Poly::one(field)];
    for (p, mult) in &factors {
        let mut next = Vec::with_capacity(gens.len() * (mult + 1));
        for g in &gens {
            let mut acc = g.clone();
            next.push(acc.clone());
            for _ in 0..*mult {
                acc = acc.mul(p);
                next.push(acc.clone());
            }
        }
        gens = next;
    }
    gens.sort_by(|a, b| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.coeffs().iter().rev().cmp(b.coeffs().iter().rev()))
    });
    gens.into_iter()
        .map(|g| cyclic_from_generator(n, g))
        .collect()
}
