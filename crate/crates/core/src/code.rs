//! Generic linear codes given by generator columns, Hamming and balanced
//! weights, and exhaustive oracles for distances and nearest codewords.

use std::cmp::Ordering;
use std::sync::OnceLock;

use num_rational::Ratio;
use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::{PrimeField, Symbol};

/// Exact rational bound used for distances and decoding radii.
pub type Bound = Ratio<u64>;

/// `dist < radius`, evaluated exactly.
pub fn within_radius(dist: usize, radius: Bound) -> bool {
    Bound::from_integer(dist as u64) < radius
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeError {
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("symbol {value} is outside [0, {q})")]
    SymbolOutOfRange { value: u32, q: u32 },
    #[error("generator columns have rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },
    #[error("oracle needs {needed} message enumerations, budget is {budget}")]
    BudgetExceeded { needed: String, budget: u64 },
    #[error("length {len} is not a multiple of {t}")]
    NotDivisible { len: usize, t: usize },
}

/// Result of a bounded-distance decoder.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecodeOutcome {
    Decoded {
        codeword: Vec<Symbol>,
        message: Vec<Symbol>,
    },
    Fail,
}

impl DecodeOutcome {
    pub fn codeword(&self) -> Option<&[Symbol]> {
        match self {
            DecodeOutcome::Decoded { codeword, .. } => Some(codeword),
            DecodeOutcome::Fail => None,
        }
    }

    pub fn message(&self) -> Option<&[Symbol]> {
        match self {
            DecodeOutcome::Decoded { message, .. } => Some(message),
            DecodeOutcome::Fail => None,
        }
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, DecodeOutcome::Fail)
    }
}

/// A decoder that returns a codeword strictly within `radius` of the input
/// or [`DecodeOutcome::Fail`].
pub trait WordDecoder: Send + Sync {
    fn decode(&self, word: &[Symbol], radius: Bound) -> DecodeOutcome;
}

/// Cap on message enumerations performed by an exhaustive oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget(pub u64);

impl OracleBudget {
    pub const DEFAULT: OracleBudget = OracleBudget(1 << 24);
    pub const ENV_VAR: &'static str = "ORACLE_BUDGET";

    /// Reads `ORACLE_BUDGET`, falling back to `2^24`.
    pub fn from_env() -> Self {
        std::env::var(Self::ENV_VAR)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .map(OracleBudget)
            .unwrap_or(Self::DEFAULT)
    }
}

impl Default for OracleBudget {
    fn default() -> Self {
        Self::DEFAULT
    }
}

pub fn hamming_weight(w: &[Symbol]) -> usize {
    w.iter().filter(|&&s| s != 0).count()
}

pub fn hamming_distance(u: &[Symbol], v: &[Symbol]) -> Result<usize, CodeError> {
    if u.len() != v.len() {
        return Err(CodeError::LengthMismatch {
            expected: u.len(),
            found: v.len(),
        });
    }
    Ok(distance(u, v))
}

#[inline]
pub(crate) fn distance(u: &[Symbol], v: &[Symbol]) -> usize {
    u.iter().zip(v).filter(|(a, b)| a != b).count()
}

/// `min over a in F_q of |{i : w_i != a}|`.
pub fn balanced_weight(field: PrimeField, w: &[Symbol]) -> usize {
    if field.order() == 2 {
        let ones = hamming_weight(w);
        return ones.min(w.len() - ones);
    }
    let mut counts = vec![0usize; field.order() as usize];
    for &s in w {
        counts[s as usize] += 1;
    }
    w.len() - counts.into_iter().max().unwrap_or(0)
}

/// Hamming weight of block 0 plus the balanced weights of blocks `1..t`,
/// for a word split into `t` blocks of length `k`.
pub fn split_balanced_weight(
    field: PrimeField,
    c: &[Symbol],
    t: usize,
    k: usize,
) -> Result<usize, CodeError> {
    if t == 0 || c.len() != t * k {
        return Err(CodeError::NotDivisible { len: c.len(), t });
    }
    Ok(split_balanced_unchecked(field, c, k))
}

fn split_balanced_unchecked(field: PrimeField, c: &[Symbol], k: usize) -> usize {
    let mut blocks = c.chunks(k.max(1));
    let head = blocks.next().map_or(0, hamming_weight);
    head + blocks.map(|b| balanced_weight(field, b)).sum::<usize>()
}

/// Rank over `F_q` of a list of equal-length vectors.
pub fn rank(field: PrimeField, rows: &[Vec<Symbol>]) -> usize {
    row_reduce(field, rows.to_vec()).1.len()
}

/// Reduced row echelon form; returns the nonzero rows and their pivot columns.
fn row_reduce(field: PrimeField, mut rows: Vec<Vec<Symbol>>) -> (Vec<Vec<Symbol>>, Vec<usize>) {
    let width = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..width {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let inv = field.inv(rows[r][col]).expect("nonzero pivot");
        for x in rows[r].iter_mut() {
            *x = field.mul(*x, inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col] == 0 {
                continue;
            }
            let c = row[col];
            for (x, &p) in row.iter_mut().zip(&pivot_row) {
                *x = field.sub(*x, field.mul(c, p));
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

/// A linear code spanned by `k` linearly independent generator columns.
#[derive(Debug)]
pub struct GeneratorMatrixCode {
    field: PrimeField,
    n: usize,
    columns: Vec<Vec<Symbol>>,
    dual: OnceLock<Vec<Vec<Symbol>>>,
}

impl Clone for GeneratorMatrixCode {
    fn clone(&self) -> Self {
        Self {
            field: self.field,
            n: self.n,
            columns: self.columns.clone(),
            dual: self.dual.clone(),
        }
    }
}

impl PartialEq for GeneratorMatrixCode {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.n == other.n && self.columns == other.columns
    }
}

impl GeneratorMatrixCode {
    pub fn new(field: PrimeField, n: usize, columns: Vec<Vec<Symbol>>) -> Result<Self, CodeError> {
        for col in &columns {
            if col.len() != n {
                return Err(CodeError::LengthMismatch {
                    expected: n,
                    found: col.len(),
                });
            }
            check_symbols(field, col)?;
        }
        let r = rank(field, &columns);
        if r != columns.len() {
            return Err(CodeError::RankDeficient {
                rank: r,
                expected: columns.len(),
            });
        }
        Ok(Self {
            field,
            n,
            columns,
            dual: OnceLock::new(),
        })
    }

    /// A basis for the span of arbitrary (possibly dependent) vectors.
    pub fn from_spanning_set(
        field: PrimeField,
        n: usize,
        words: &[Vec<Symbol>],
    ) -> Result<Self, CodeError> {
        for w in words {
            if w.len() != n {
                return Err(CodeError::LengthMismatch {
                    expected: n,
                    found: w.len(),
                });
            }
            check_symbols(field, w)?;
        }
        let (basis, _) = row_reduce(field, words.to_vec());
        Self::new(field, n, basis)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn length(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[Vec<Symbol>] {
        &self.columns
    }

    /// `q^k`, or `None` on overflow.
    pub fn message_count(&self) -> Option<u64> {
        u64::from(self.field.order()).checked_pow(self.dimension() as u32)
    }

    pub fn encode(&self, message: &[Symbol]) -> Result<Vec<Symbol>, CodeError> {
        if message.len() != self.dimension() {
            return Err(CodeError::LengthMismatch {
                expected: self.dimension(),
                found: message.len(),
            });
        }
        check_symbols(self.field, message)?;
        let f = self.field;
        let mut out = vec![0; self.n];
        for (&m, col) in message.iter().zip(&self.columns) {
            if m == 0 {
                continue;
            }
            for (o, &c) in out.iter_mut().zip(col) {
                *o = f.add(*o, f.mul(m, c));
            }
        }
        Ok(out)
    }

    fn dual_vectors(&self) -> &[Vec<Symbol>] {
        self.dual.get_or_init(|| {
            let f = self.field;
            let (rref, pivots) = row_reduce(f, self.columns.clone());
            let free = (0..self.n).filter(|c| !pivots.contains(c));
            free.map(|fc| {
                let mut v = vec![0; self.n];
                v[fc] = 1;
                for (row, &pc) in rref.iter().zip(&pivots) {
                    v[pc] = f.neg(row[fc]);
                }
                v
            })
            .collect()
        })
    }

    /// Basis of the dual code: the kernel of the map `x -> (<g_j, x>)_j`.
    pub fn dual_basis(&self) -> GeneratorMatrixCode {
        GeneratorMatrixCode::new(self.field, self.n, self.dual_vectors().to_vec())
            .expect("kernel basis is independent")
    }

    /// Membership via inner products with the dual basis.
    pub fn is_codeword(&self, w: &[Symbol]) -> Result<bool, CodeError> {
        if w.len() != self.n {
            return Err(CodeError::LengthMismatch {
                expected: self.n,
                found: w.len(),
            });
        }
        check_symbols(self.field, w)?;
        let f = self.field;
        Ok(self.dual_vectors().iter().all(|h| {
            h.iter()
                .zip(w)
                .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
                == 0
        }))
    }

    fn check_budget(&self, budget: OracleBudget) -> Result<u64, CodeError> {
        match self.message_count() {
            Some(count) if count <= budget.0 => Ok(count),
            count => Err(CodeError::BudgetExceeded {
                needed: count.map_or_else(
                    || format!("{}^{}", self.field.order(), self.dimension()),
                    |c| c.to_string(),
                ),
                budget: budget.0,
            }),
        }
    }

    /// Minimises `key(codeword, message)` over all messages (optionally
    /// excluding zero). Ties go to the lexicographically smallest message,
    /// independent of how the scan is partitioned across threads.
    pub fn scan_min<K, F>(
        &self,
        budget: OracleBudget,
        include_zero: bool,
        key: F,
    ) -> Result<Option<(K, Vec<Symbol>)>, CodeError>
    where
        K: Ord + Send,
        F: Fn(&[Symbol], &[Symbol]) -> K + Sync,
    {
        self.check_budget(budget)?;
        let q = self.field.order() as usize;
        let k = self.dimension();
        // Split on the leading digits so each task has a contiguous,
        // lexicographically ordered slice of the message space.
        let mut prefix_len = 0;
        let mut chunks = 1usize;
        while prefix_len < k && chunks < 256 {
            prefix_len += 1;
            chunks *= q;
        }
        let best = (0..chunks)
            .into_par_iter()
            .filter_map(|chunk| {
                self.scan_chunk(chunk, prefix_len, include_zero, &key)
                    .map(|(kv, msg)| (kv, chunk, msg))
            })
            .min_by(|a, b| match a.0.cmp(&b.0) {
                Ordering::Equal => a.1.cmp(&b.1),
                o => o,
            });
        Ok(best.map(|(kv, _, msg)| (kv, msg)))
    }

    fn scan_chunk<K, F>(
        &self,
        chunk: usize,
        prefix_len: usize,
        include_zero: bool,
        key: &F,
    ) -> Option<(K, Vec<Symbol>)>
    where
        K: Ord,
        F: Fn(&[Symbol], &[Symbol]) -> K,
    {
        let f = self.field;
        let q = f.order();
        let k = self.dimension();
        let mut msg = vec![0 as Symbol; k];
        let mut t = chunk;
        for i in (0..prefix_len).rev() {
            msg[i] = (t % q as usize) as Symbol;
            t /= q as usize;
        }
        let mut word = self.encode(&msg).expect("valid message");
        let mut best: Option<(K, Vec<Symbol>)> = None;
        loop {
            if include_zero || msg.iter().any(|&m| m != 0) {
                let kv = key(&word, &msg);
                if best.as_ref().is_none_or(|(b, _)| kv < *b) {
                    best = Some((kv, msg.clone()));
                }
            }
            // Increment the suffix counter (last index least significant);
            // every digit step adds its column once, including the wrap q-1 -> 0.
            let mut j = k;
            loop {
                if j == prefix_len {
                    return best;
                }
                j -= 1;
                msg[j] += 1;
                for (w, &c) in word.iter_mut().zip(&self.columns[j]) {
                    *w = f.add(*w, c);
                }
                if msg[j] < q {
                    break;
                }
                msg[j] = 0;
            }
        }
    }

    /// Applies a coordinate permutation: position `i` of the image holds
    /// position `perm[i]` of the original.
    pub fn permuted(&self, perm: &[usize]) -> Result<GeneratorMatrixCode, CodeError> {
        if perm.len() != self.n {
            return Err(CodeError::LengthMismatch {
                expected: self.n,
                found: perm.len(),
            });
        }
        let cols = self
            .columns
            .iter()
            .map(|c| perm.iter().map(|&p| c[p]).collect())
            .collect();
        GeneratorMatrixCode::new(self.field, self.n, cols)
    }
}

pub(crate) fn check_symbols(field: PrimeField, w: &[Symbol]) -> Result<(), CodeError> {
    match w.iter().find(|&&s| !field.contains(s)) {
        Some(&value) => Err(CodeError::SymbolOutOfRange {
            value,
            q: field.order(),
        }),
        None => Ok(()),
    }
}

/// Minimum Hamming weight over nonzero codewords; `None` for the zero code.
pub fn brute_force_distance(
    code: &GeneratorMatrixCode,
    budget: OracleBudget,
) -> Result<Option<usize>, CodeError> {
    Ok(code
        .scan_min(budget, false, |c, _| hamming_weight(c))?
        .map(|(w, _)| w))
}

/// Largest `d` for which the code is `(t, d)`-balanced; `None` for the zero
/// code.
pub fn brute_force_balanced_profile(
    code: &GeneratorMatrixCode,
    t: usize,
    budget: OracleBudget,
) -> Result<Option<usize>, CodeError> {
    if t == 0 || !code.length().is_multiple_of(t) {
        return Err(CodeError::NotDivisible {
            len: code.length(),
            t,
        });
    }
    let block = code.length() / t;
    let field = code.field();
    Ok(code
        .scan_min(budget, false, |c, _| {
            split_balanced_unchecked(field, c, block)
        })?
        .map(|(w, _)| w))
}

/// Minimum balanced weight over nonzero codewords; `None` for the zero code.
pub fn brute_force_min_balanced_weight(
    code: &GeneratorMatrixCode,
    budget: OracleBudget,
) -> Result<Option<usize>, CodeError> {
    let field = code.field();
    Ok(code
        .scan_min(budget, false, |c, _| balanced_weight(field, c))?
        .map(|(w, _)| w))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nearest {
    pub codeword: Vec<Symbol>,
    pub message: Vec<Symbol>,
    pub distance: usize,
}

/// Exhaustive nearest codeword; ties go to the lexicographically smallest
/// message.
pub fn nearest_codeword(
    code: &GeneratorMatrixCode,
    w: &[Symbol],
    budget: OracleBudget,
) -> Result<Nearest, CodeError> {
    if w.len() != code.length() {
        return Err(CodeError::LengthMismatch {
            expected: code.length(),
            found: w.len(),
        });
    }
    let (d, message) = code
        .scan_min(budget, true, |c, _| distance(c, w))?
        .expect("the zero message is always scanned");
    Ok(Nearest {
        codeword: code.encode(&message)?,
        message,
        distance: d,
    })
}
