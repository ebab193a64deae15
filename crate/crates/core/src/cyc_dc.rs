//! Double-circulant codes built from a cyclic code `C` whose generator is
//! the first column of the circulant, decoded with decoders for `C` and its
//! dual.

use num_rational::Ratio;
use thiserror::Error;

use crate::algebra::{Poly, Symbol};
use crate::code::{
    brute_force_min_balanced_weight, check_symbols, distance, Bound, CodeError, DecodeOutcome,
    GeneratorMatrixCode, OracleBudget, WordDecoder,
};
use crate::cyclic::{dual_code, CyclicCode};
use crate::design_dc::{CirculantMatrix, DesignError};
use crate::reed_muller::{build_punctured_rm, RMError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycDCError {
    #[error("the base cyclic code has no decoder attached")]
    MissingDecoder,
    #[error("the dual cyclic code has no decoder attached")]
    MissingDualDecoder,
    #[error("the supplied dual is not the dual of the base code")]
    DualMismatch,
    #[error("the base code is the zero code")]
    ZeroCode,
    #[error("rm-dc needs 3 <= m; got m = {0}")]
    BadRMParameter(u32),
    #[error(transparent)]
    RM(#[from] RMError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Design(#[from] DesignError),
}

/// Generator `(I_k ; A)` with `A` the circulant of the base generator `g`.
#[derive(Clone, Debug)]
pub struct CyclicDCCode {
    base: CyclicCode,
    dual: CyclicCode,
    circulant: CirculantMatrix,
    d: usize,
    d_perp: usize,
}

pub fn build_cyclic_dc(
    base: CyclicCode,
    dual: CyclicCode,
    d: usize,
    d_perp: usize,
) -> Result<CyclicDCCode, CycDCError> {
    if base.decoder().is_none() {
        return Err(CycDCError::MissingDecoder);
    }
    if dual.decoder().is_none() {
        return Err(CycDCError::MissingDualDecoder);
    }
    if dual != dual_code(&base) {
        return Err(CycDCError::DualMismatch);
    }
    if base.dimension() == 0 {
        return Err(CycDCError::ZeroCode);
    }
    let k = base.length();
    let circulant = CirculantMatrix::new(base.field(), base.generator().to_padded(k))?;
    Ok(CyclicDCCode {
        base,
        dual,
        circulant,
        d,
        d_perp,
    })
}

/// The punctured Reed-Muller instance: `C` is the dual of `RM*(r, m)` with
/// `r = floor(m/2)`, `d = 2^(r+1) - 1` and `d_perp = 2^(m-r) - 1`.
pub fn build_rm_dc(m: u32) -> Result<CyclicDCCode, CycDCError> {
    if m < 3 {
        return Err(CycDCError::BadRMParameter(m));
    }
    let r = m / 2;
    let prm = build_punctured_rm(r, m)?;
    let base = prm.dual_cyclic();
    let dual = prm.cyclic().clone();
    build_cyclic_dc(base, dual, (1 << (r + 1)) - 1, (1 << (m - r)) - 1)
}

impl CyclicDCCode {
    pub fn base(&self) -> &CyclicCode {
        &self.base
    }

    pub fn dual(&self) -> &CyclicCode {
        &self.dual
    }

    pub fn circulant(&self) -> &CirculantMatrix {
        &self.circulant
    }

    pub fn k(&self) -> usize {
        self.base.length()
    }

    pub fn length(&self) -> usize {
        2 * self.k()
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn d_perp(&self) -> usize {
        self.d_perp
    }

    /// `d' = min{d, d_perp}`.
    pub fn d_prime(&self) -> usize {
        self.d.min(self.d_perp)
    }

    /// `d' / 2`.
    pub fn radius(&self) -> Bound {
        Ratio::new(self.d_prime() as u64, 2)
    }

    pub fn encode(&self, m: &[Symbol]) -> Result<Vec<Symbol>, CycDCError> {
        if m.len() != self.k() {
            return Err(CodeError::LengthMismatch {
                expected: self.k(),
                found: m.len(),
            }
            .into());
        }
        check_symbols(self.base.field(), m)?;
        let mut w = m.to_vec();
        w.extend(self.circulant.apply(m));
        Ok(w)
    }

    pub fn generator_code(&self) -> GeneratorMatrixCode {
        let k = self.k();
        let cols = (0..k)
            .map(|i| {
                let mut c = vec![0; k];
                c[i] = 1;
                c.extend(self.circulant.column(i));
                c
            })
            .collect();
        GeneratorMatrixCode::new(self.base.field(), 2 * k, cols).expect("systematic generator")
    }

    pub fn is_codeword(&self, w: &[Symbol]) -> bool {
        w.len() == self.length() && self.circulant.apply(&w[..self.k()]) == w[self.k()..]
    }

    /// Decodes `w_1` in `C`, divides by `g`, decodes the reversed remainder
    /// of `w_0` in the dual, and accepts when `dist(c, w) < d'/2`.
    pub fn decode(&self, w: &[Symbol]) -> DecodeOutcome {
        let k = self.k();
        let f = self.base.field();
        if w.len() != 2 * k || check_symbols(f, w).is_err() {
            return DecodeOutcome::Fail;
        }
        let (w0, w1) = w.split_at(k);

        let Some(DecodeOutcome::Decoded { codeword: c1, .. }) =
            self.base.decode(w1, Ratio::new(self.d as u64, 2))
        else {
            return DecodeOutcome::Fail;
        };
        let c1 = Poly::new(f, c1).expect("decoder symbols are in range");
        let Ok(Some(r)) = c1.exact_div(self.base.generator()) else {
            return DecodeOutcome::Fail;
        };
        let r = r.to_padded(k);

        let mut shifted: Vec<Symbol> = w0.iter().zip(&r).map(|(&a, &b)| f.sub(a, b)).collect();
        shifted.reverse();
        let Some(DecodeOutcome::Decoded {
            codeword: mut c0, ..
        }) = self
            .dual
            .decode(&shifted, Ratio::new(self.d_perp as u64, 2))
        else {
            return DecodeOutcome::Fail;
        };
        if c0.len() != k {
            return DecodeOutcome::Fail;
        }
        c0.reverse();

        let message: Vec<Symbol> = c0.iter().zip(&r).map(|(&a, &b)| f.add(a, b)).collect();
        let mut c = message.clone();
        c.extend(self.circulant.apply(&message));
        if 2 * distance(&c, w) < self.d_prime() {
            DecodeOutcome::Decoded {
                codeword: c,
                message,
            }
        } else {
            DecodeOutcome::Fail
        }
    }
}

impl WordDecoder for CyclicDCCode {
    fn decode(&self, word: &[Symbol], radius: Bound) -> DecodeOutcome {
        match CyclicDCCode::decode(self, word) {
            DecodeOutcome::Decoded { codeword, message }
                if crate::code::within_radius(distance(&codeword, word), radius) =>
            {
                DecodeOutcome::Decoded { codeword, message }
            }
            _ => DecodeOutcome::Fail,
        }
    }
}

/// Whether every nonzero codeword of `c` has balanced weight at least `d`;
/// vacuously true for the zero code.
pub fn d_balanced_check(c: &CyclicCode, d: usize, budget: OracleBudget) -> Result<bool, CodeError> {
    Ok(brute_force_min_balanced_weight(&c.generator_code(), budget)?.is_none_or(|w| w >= d))
}
