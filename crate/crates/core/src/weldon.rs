//! Transform from `t`-circulant codes of prime length `k` to `t`-Weldon codes
//! over `H = F_q[x]/p_k(x)`, and the decoder that lifts Weldon words back
//! to the circulant code by guessing the wrapped coefficients `beta_i`.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{AlgebraError, PrimeField, QuotientField, Symbol};
use crate::code::{
    brute_force_balanced_profile, check_symbols, distance, within_radius, Bound, CodeError,
    DecodeOutcome, GeneratorMatrixCode, OracleBudget, WordDecoder,
};
use crate::design_dc::{CirculantMatrix, DesignError, SidonDCCode};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeldonError {
    #[error("t must be at least 2, got {0}")]
    TooFewBlocks(usize),
    #[error("first columns have different lengths")]
    RaggedColumns,
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("the Weldon code was not produced from this circulant code")]
    ParameterMismatch,
    #[error("bounded search needs {patterns} error patterns, budget is {budget}")]
    SearchTooLarge { patterns: String, budget: u64 },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Design(#[from] DesignError),
    #[error(transparent)]
    Code(#[from] CodeError),
}

/// `H = F_q[x]/p_k(x)`, valid when `k` is prime and `q` is primitive mod `k`.
pub fn validate_parameters(field: PrimeField, k: usize) -> Result<QuotientField, WeldonError> {
    Ok(QuotientField::new(field, k)?)
}

/// Linear code with generator `I_k` stacked over `t - 1` circulants.
#[derive(Clone)]
pub struct TCirculantCode {
    field: PrimeField,
    k: usize,
    circulants: Arc<[CirculantMatrix]>,
    balanced: Bound,
    decoder: Arc<dyn WordDecoder>,
}

impl fmt::Debug for TCirculantCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TCirculantCode")
            .field("q", &self.field.order())
            .field("k", &self.k)
            .field("t", &self.t())
            .field("balanced", &self.balanced)
            .finish()
    }
}

impl TCirculantCode {
    /// `balanced` is the certified `(t, d)`-balanced parameter; `decoder`
    /// must decode the stacked code up to `balanced / 2`.
    pub fn new(
        field: PrimeField,
        first_columns: Vec<Vec<Symbol>>,
        balanced: Bound,
        decoder: Arc<dyn WordDecoder>,
    ) -> Result<Self, WeldonError> {
        let circulants = build_circulants(field, first_columns)?;
        Ok(Self {
            field,
            k: circulants[0].size(),
            circulants: circulants.into(),
            balanced,
            decoder,
        })
    }

    /// Same code, decoded by exhaustive search over error patterns of weight
    /// below `balanced / 2`.
    pub fn with_bounded_search(
        field: PrimeField,
        first_columns: Vec<Vec<Symbol>>,
        balanced: Bound,
        budget: OracleBudget,
    ) -> Result<Self, WeldonError> {
        let circulants: Arc<[CirculantMatrix]> = build_circulants(field, first_columns)?.into();
        let search = BoundedSearchDecoder::new(field, circulants.clone(), balanced / 2, budget)?;
        Ok(Self {
            field,
            k: circulants[0].size(),
            circulants,
            balanced,
            decoder: Arc::new(search),
        })
    }

    /// Wraps a Sidon double-circulant code with its certified balanced
    /// bound `min{d/2 + 1, k/d}`. The majority decoder is used when its
    /// radius `d/(2b)` reaches half that bound; otherwise bounded search.
    pub fn from_sidon_dc(code: &SidonDCCode, budget: OracleBudget) -> Result<Self, WeldonError> {
        let balanced = code.balanced_bound();
        let first = vec![code.circulant().first_column().to_vec()];
        let covers = code.radius().is_none_or(|r| r >= balanced / 2);
        if covers {
            Self::new(
                code.field(),
                first,
                balanced,
                Arc::new(code.design().clone()),
            )
        } else {
            Self::with_bounded_search(code.field(), first, balanced, budget)
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn t(&self) -> usize {
        self.circulants.len() + 1
    }

    pub fn length(&self) -> usize {
        self.t() * self.k
    }

    pub fn circulants(&self) -> &[CirculantMatrix] {
        &self.circulants
    }

    pub fn balanced(&self) -> Bound {
        self.balanced
    }

    /// Replaces the balanced parameter with the oracle's exact value.
    pub fn certify_balanced(mut self, budget: OracleBudget) -> Result<Self, WeldonError> {
        let exact = brute_force_balanced_profile(&self.generator_code(), self.t(), budget)?;
        if let Some(d) = exact {
            self.balanced = Bound::from_integer(d as u64);
        }
        Ok(self)
    }

    pub fn encode(&self, m: &[Symbol]) -> Result<Vec<Symbol>, WeldonError> {
        if m.len() != self.k {
            return Err(WeldonError::LengthMismatch {
                expected: self.k,
                found: m.len(),
            });
        }
        check_symbols(self.field, m)?;
        Ok(stack(&self.circulants, m))
    }

    pub fn is_codeword(&self, w: &[Symbol]) -> bool {
        w.len() == self.length() && is_stacked_codeword(&self.circulants, w)
    }

    pub fn generator_code(&self) -> GeneratorMatrixCode {
        let k = self.k;
        let cols = (0..k)
            .map(|i| {
                let mut e = vec![0; k];
                e[i] = 1;
                stack(&self.circulants, &e)
            })
            .collect();
        GeneratorMatrixCode::new(self.field, self.length(), cols).expect("systematic generator")
    }

    /// Runs the attached decoder at radius `balanced / 2`.
    pub fn decode(&self, w: &[Symbol]) -> DecodeOutcome {
        self.decoder.decode(w, self.balanced / 2)
    }
}

fn build_circulants(
    field: PrimeField,
    first_columns: Vec<Vec<Symbol>>,
) -> Result<Vec<CirculantMatrix>, WeldonError> {
    if first_columns.is_empty() {
        return Err(WeldonError::TooFewBlocks(first_columns.len() + 1));
    }
    let k = first_columns[0].len();
    if first_columns.iter().any(|c| c.len() != k) || k == 0 {
        return Err(WeldonError::RaggedColumns);
    }
    first_columns
        .into_iter()
        .map(|c| Ok(CirculantMatrix::new(field, c)?))
        .collect()
}

fn stack(circulants: &[CirculantMatrix], m: &[Symbol]) -> Vec<Symbol> {
    let mut w = m.to_vec();
    for a in circulants {
        w.extend(a.apply(m));
    }
    w
}

fn is_stacked_codeword(circulants: &[CirculantMatrix], w: &[Symbol]) -> bool {
    let k = w.len() / (circulants.len() + 1);
    let (m, rest) = w.split_at(k);
    circulants
        .iter()
        .zip(rest.chunks(k))
        .all(|(a, block)| a.apply(m) == block)
}

/// Tries every error pattern of weight below the radius, lightest first and
/// then lexicographically by position, and returns the first that lands on
/// a codeword.
#[derive(Clone, Debug)]
pub struct BoundedSearchDecoder {
    field: PrimeField,
    circulants: Arc<[CirculantMatrix]>,
    max_weight: usize,
}

impl BoundedSearchDecoder {
    pub fn new(
        field: PrimeField,
        circulants: Arc<[CirculantMatrix]>,
        radius: Bound,
        budget: OracleBudget,
    ) -> Result<Self, WeldonError> {
        let n = (circulants.len() + 1) * circulants[0].size();
        let mut max_weight = 0;
        while within_radius(max_weight + 1, radius) && max_weight < n {
            max_weight += 1;
        }
        let q1 = u128::from(field.order() - 1);
        let mut total: u128 = 1;
        let mut binom: u128 = 1;
        for w in 1..=max_weight as u128 {
            binom = binom.saturating_mul(n as u128 - w + 1) / w;
            total = total.saturating_add(binom.saturating_mul(q1.saturating_pow(w as u32)));
        }
        if total > u128::from(budget.0) {
            return Err(WeldonError::SearchTooLarge {
                patterns: total.to_string(),
                budget: budget.0,
            });
        }
        Ok(Self {
            field,
            circulants,
            max_weight,
        })
    }

    fn search(&self, w: &mut Vec<Symbol>, start: usize, left: usize) -> bool {
        if left == 0 {
            return is_stacked_codeword(&self.circulants, w);
        }
        let f = self.field;
        for pos in start..w.len() {
            let orig = w[pos];
            for delta in 1..f.order() {
                w[pos] = f.sub(orig, delta);
                if self.search(w, pos + 1, left - 1) {
                    return true;
                }
            }
            w[pos] = orig;
        }
        false
    }
}

impl WordDecoder for BoundedSearchDecoder {
    fn decode(&self, word: &[Symbol], radius: Bound) -> DecodeOutcome {
        let k = self.circulants[0].size();
        if word.len() != (self.circulants.len() + 1) * k || check_symbols(self.field, word).is_err()
        {
            return DecodeOutcome::Fail;
        }
        let mut w = word.to_vec();
        for weight in (0..=self.max_weight).take_while(|&e| within_radius(e, radius)) {
            if self.search(&mut w, 0, weight) {
                let message = w[..k].to_vec();
                return DecodeOutcome::Decoded {
                    codeword: w,
                    message,
                };
            }
        }
        DecodeOutcome::Fail
    }
}

/// `t`-Weldon code `{(m, alpha_1 m, ..., alpha_{t-1} m) : m in H}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeldonCode {
    ctx: QuotientField,
    alphas: Vec<Vec<Symbol>>,
    distance_bound: Bound,
}

/// `alpha_i = a^(i)(x) mod p_k(x)`; the distance bound is inherited from
/// the balanced parameter of `d`.
pub fn transform_circulant_to_weldon(d: &TCirculantCode) -> Result<WeldonCode, WeldonError> {
    let ctx = validate_parameters(d.field(), d.k())?;
    let alphas = d
        .circulants()
        .iter()
        .map(|a| ctx.reduce(a.first_column()))
        .collect::<Result<_, _>>()?;
    Ok(WeldonCode {
        ctx,
        alphas,
        distance_bound: d.balanced(),
    })
}

impl WeldonCode {
    pub fn context(&self) -> &QuotientField {
        &self.ctx
    }

    pub fn field(&self) -> PrimeField {
        self.ctx.field()
    }

    pub fn t(&self) -> usize {
        self.alphas.len() + 1
    }

    /// `k - 1`.
    pub fn block(&self) -> usize {
        self.ctx.dimension()
    }

    pub fn length(&self) -> usize {
        self.t() * self.block()
    }

    pub fn dimension(&self) -> usize {
        self.block()
    }

    pub fn alphas(&self) -> &[Vec<Symbol>] {
        &self.alphas
    }

    pub fn distance_bound(&self) -> Bound {
        self.distance_bound
    }

    /// `d / 2`.
    pub fn radius(&self) -> Bound {
        self.distance_bound / 2
    }

    pub fn generator_code(&self) -> GeneratorMatrixCode {
        let b = self.block();
        let cols = (0..b)
            .map(|i| {
                let mut e = vec![0; b];
                e[i] = 1;
                weldon_encode(self, &e).expect("unit message")
            })
            .collect();
        GeneratorMatrixCode::new(self.field(), self.length(), cols).expect("systematic generator")
    }
}

pub fn weldon_encode(w: &WeldonCode, m: &[Symbol]) -> Result<Vec<Symbol>, WeldonError> {
    let mut out = m.to_vec();
    for a in &w.alphas {
        out.extend(w.ctx.mul(a, m)?);
    }
    Ok(out)
}

/// `c o 0 + beta 1_k`.
pub fn lift_word(field: PrimeField, c: &[Symbol], beta: Symbol) -> Vec<Symbol> {
    c.iter()
        .chain(std::iter::once(&0))
        .map(|&x| field.add(x, beta))
        .collect()
}

/// Drops the last entry and subtracts it from the others.
pub fn fold_word(field: PrimeField, c: &[Symbol]) -> Vec<Symbol> {
    let Some((&beta, rest)) = c.split_last() else {
        return Vec::new();
    };
    rest.iter().map(|&x| field.sub(x, beta)).collect()
}

pub fn weldon_membership(w: &WeldonCode, c: &[Symbol]) -> Result<bool, WeldonError> {
    if c.len() != w.length() {
        return Err(WeldonError::LengthMismatch {
            expected: w.length(),
            found: c.len(),
        });
    }
    check_symbols(w.field(), c)?;
    let b = w.block();
    let m = &c[..b];
    for (a, block) in w.alphas.iter().zip(c[b..].chunks(b)) {
        if w.ctx.mul(a, m)? != block {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Outcome of a Weldon decode together with the `beta` that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeldonTrace {
    pub outcome: DecodeOutcome,
    pub beta: Option<Vec<Symbol>>,
    pub attempts: usize,
}

pub fn weldon_decode(
    w: &WeldonCode,
    d: &TCirculantCode,
    word: &[Symbol],
) -> Result<DecodeOutcome, WeldonError> {
    Ok(weldon_decode_traced(w, d, word)?.outcome)
}

/// Loops over `beta in F_q^(t-1)` in lexicographic order and stops at the
/// first candidate that is a Weldon codeword within `d/2` of `word`.
pub fn weldon_decode_traced(
    w: &WeldonCode,
    d: &TCirculantCode,
    word: &[Symbol],
) -> Result<WeldonTrace, WeldonError> {
    if d.k() != w.ctx.k()
        || d.t() != w.t()
        || d.field() != w.field()
        || d.circulants()
            .iter()
            .zip(&w.alphas)
            .any(|(a, alpha)| w.ctx.reduce(a.first_column()).ok().as_ref() != Some(alpha))
    {
        return Err(WeldonError::ParameterMismatch);
    }
    if word.len() != w.length() {
        return Err(WeldonError::LengthMismatch {
            expected: w.length(),
            found: word.len(),
        });
    }
    check_symbols(w.field(), word)?;
    let f = w.field();
    let (b, t, q) = (w.block(), w.t(), f.order());
    let radius = w.radius();
    let mut beta = vec![0 as Symbol; t - 1];
    let mut attempts = 0;
    loop {
        attempts += 1;
        let mut lifted = lift_word(f, &word[..b], 0);
        for (i, &bi) in beta.iter().enumerate() {
            lifted.extend(lift_word(f, &word[(i + 1) * b..(i + 2) * b], bi));
        }
        if let DecodeOutcome::Decoded { codeword, .. } = d.decoder.decode(&lifted, radius) {
            let k = b + 1;
            let mut c = codeword[..b].to_vec();
            for block in codeword[k..].chunks(k) {
                c.extend(fold_word(f, block));
            }
            if weldon_membership(w, &c)? && within_radius(distance(&c, word), radius) {
                let message = c[..b].to_vec();
                return Ok(WeldonTrace {
                    outcome: DecodeOutcome::Decoded {
                        codeword: c,
                        message,
                    },
                    beta: Some(beta),
                    attempts,
                });
            }
        }
        // Next beta, last coordinate least significant.
        let mut i = t - 1;
        loop {
            if i == 0 {
                return Ok(WeldonTrace {
                    outcome: DecodeOutcome::Fail,
                    beta: None,
                    attempts,
                });
            }
            i -= 1;
            beta[i] += 1;
            if beta[i] < q {
                break;
            }
            beta[i] = 0;
        }
    }
}

/// A Weldon code paired with the circulant code it was derived from.
#[derive(Clone, Debug)]
pub struct WeldonPair {
    pub weldon: WeldonCode,
    pub source: TCirculantCode,
}

impl WeldonPair {
    pub fn new(source: TCirculantCode) -> Result<Self, WeldonError> {
        Ok(Self {
            weldon: transform_circulant_to_weldon(&source)?,
            source,
        })
    }

    pub fn decode(&self, word: &[Symbol]) -> Result<DecodeOutcome, WeldonError> {
        weldon_decode(&self.weldon, &self.source, word)
    }
}

impl WordDecoder for WeldonPair {
    fn decode(&self, word: &[Symbol], radius: Bound) -> DecodeOutcome {
        match weldon_decode(&self.weldon, &self.source, word) {
            Ok(DecodeOutcome::Decoded { codeword, message })
                if within_radius(distance(&codeword, word), radius) =>
            {
                DecodeOutcome::Decoded { codeword, message }
            }
            _ => DecodeOutcome::Fail,
        }
    }
}
