//! Sidon-based double-circulant codes, the `(d, b)`-design profile of a
//! circulant, and the majority-vote decoder for design matrices.

use num_rational::Ratio;
use thiserror::Error;

use crate::algebra::{PrimeField, Symbol};
use crate::code::{
    check_symbols, distance, Bound, CodeError, DecodeOutcome, GeneratorMatrixCode, WordDecoder,
};
use crate::sidon::{verify_sidon, SidonSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DesignError {
    #[error("Sidon element {element} is not below k = {k}")]
    OutOfRange { element: usize, k: usize },
    #[error("the set is not a Sidon set")]
    NotSidon,
    #[error("a Sidon set of size {0} is too small; need at least 2 elements")]
    TooSmall(usize),
    #[error("first column has length {found}, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Code(#[from] CodeError),
}

/// A `k x k` circulant whose column `j` is column 0 shifted down by `j`.
/// Only the support of the first column is kept; the matrix is never formed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CirculantMatrix {
    field: PrimeField,
    first_column: Vec<Symbol>,
    support: Vec<usize>,
}

impl CirculantMatrix {
    pub fn new(field: PrimeField, first_column: Vec<Symbol>) -> Result<Self, DesignError> {
        check_symbols(field, &first_column)?;
        let support = (0..first_column.len())
            .filter(|&i| first_column[i] != 0)
            .collect();
        Ok(Self {
            field,
            first_column,
            support,
        })
    }

    /// Indicator vector of `set` inside `[0, k)`.
    pub fn indicator(field: PrimeField, k: usize, set: &[usize]) -> Result<Self, DesignError> {
        let mut a = vec![0; k];
        for &s in set {
            if s >= k {
                return Err(DesignError::OutOfRange { element: s, k });
            }
            a[s] = 1;
        }
        Self::new(field, a)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn size(&self) -> usize {
        self.first_column.len()
    }

    pub fn first_column(&self) -> &[Symbol] {
        &self.first_column
    }

    /// Support of the first column, increasing.
    pub fn support(&self) -> &[usize] {
        &self.support
    }

    /// Rows where column `i` is nonzero.
    pub fn column_support(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        let k = self.size();
        self.support.iter().map(move |&s| (s + i) % k)
    }

    /// Column `i` in full.
    pub fn column(&self, i: usize) -> Vec<Symbol> {
        let k = self.size();
        (0..k)
            .map(|j| self.first_column[(j + k - i % k) % k])
            .collect()
    }

    /// `A . m`, in `O(k * |supp(a)|)`.
    pub fn apply(&self, m: &[Symbol]) -> Vec<Symbol> {
        let k = self.size();
        let f = self.field;
        let mut out = vec![0; k];
        for &s in &self.support {
            let a = self.first_column[s];
            for (i, &mi) in m.iter().enumerate() {
                if mi != 0 {
                    let j = (i + s) % k;
                    out[j] = f.add(out[j], f.mul(a, mi));
                }
            }
        }
        out
    }
}

/// Column weight `d` and largest pairwise support intersection `b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DesignProfile {
    pub d: usize,
    pub b: usize,
}

/// By circulant symmetry only the overlaps of column 0 with its shifts
/// `j = 1..k-1` need to be counted.
pub fn design_profile(a: &CirculantMatrix) -> DesignProfile {
    let k = a.size();
    let mut member = vec![false; k];
    for &s in a.support() {
        member[s] = true;
    }
    let b = (1..k)
        .map(|j| a.support().iter().filter(|&&s| member[(s + j) % k]).count())
        .max()
        .unwrap_or(0);
    DesignProfile {
        d: a.support().len(),
        b,
    }
}

/// How the per-coordinate votes are combined.
#[doc(hidden)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum VoteRule {
    /// Most frequent value, ties to the smallest field element.
    #[default]
    Majority,
    /// Deliberately broken rule used to check that the test suite notices.
    FirstVote,
}

/// Double-circulant code with generator `(I_k ; A)`, `A` a circulant.
#[derive(Clone, Debug, PartialEq)]
pub struct DesignDCCode {
    circulant: CirculantMatrix,
    profile: DesignProfile,
    vote_rule: VoteRule,
}

impl DesignDCCode {
    pub fn new(circulant: CirculantMatrix) -> Self {
        let profile = design_profile(&circulant);
        Self {
            circulant,
            profile,
            vote_rule: VoteRule::Majority,
        }
    }

    #[doc(hidden)]
    pub fn with_vote_rule(mut self, rule: VoteRule) -> Self {
        self.vote_rule = rule;
        self
    }

    pub fn field(&self) -> PrimeField {
        self.circulant.field()
    }

    pub fn k(&self) -> usize {
        self.circulant.size()
    }

    pub fn length(&self) -> usize {
        2 * self.k()
    }

    pub fn circulant(&self) -> &CirculantMatrix {
        &self.circulant
    }

    pub fn profile(&self) -> DesignProfile {
        self.profile
    }

    /// `d / (2b)`, or `None` when `b = 0` and every error weight is covered.
    pub fn radius(&self) -> Option<Bound> {
        let DesignProfile { d, b } = self.profile;
        (b > 0).then(|| Ratio::new(d as u64, 2 * b as u64))
    }

    /// `(m, A m)`.
    pub fn encode(&self, m: &[Symbol]) -> Result<Vec<Symbol>, DesignError> {
        if m.len() != self.k() {
            return Err(CodeError::LengthMismatch {
                expected: self.k(),
                found: m.len(),
            }
            .into());
        }
        check_symbols(self.field(), m)?;
        Ok(self.encode_unchecked(m))
    }

    fn encode_unchecked(&self, m: &[Symbol]) -> Vec<Symbol> {
        let mut w = m.to_vec();
        w.extend(self.circulant.apply(m));
        w
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
        GeneratorMatrixCode::new(self.field(), 2 * k, cols).expect("systematic generator")
    }

    /// `w_1 = A w_0`.
    pub fn is_codeword(&self, w: &[Symbol]) -> bool {
        w.len() == self.length() && self.circulant.apply(&w[..self.k()]) == w[self.k()..]
    }

    /// Majority-vote decoding up to `d / (2b)`, accepting only when
    /// `2 b dist(w, c) < d`.
    pub fn decode(&self, w: &[Symbol]) -> DecodeOutcome {
        let DesignProfile { d, b } = self.profile;
        self.decode_with(w, |dist| 2 * b * dist < d)
    }

    fn decode_with(&self, w: &[Symbol], accept: impl Fn(usize) -> bool) -> DecodeOutcome {
        let k = self.k();
        if w.len() != 2 * k || check_symbols(self.field(), w).is_err() {
            return DecodeOutcome::Fail;
        }
        let f = self.field();
        let (w0, w1) = w.split_at(k);
        let y: Vec<Symbol> = self
            .circulant
            .apply(w0)
            .into_iter()
            .zip(w1)
            .map(|(a, &b)| f.sub(a, b))
            .collect();
        // Vote j for coordinate i reads y_j / a_s with j = i + s; for an
        // indicator first column this is y_j itself.
        let a = self.circulant.first_column();
        let inverses: Vec<(usize, Symbol)> = self
            .circulant
            .support()
            .iter()
            .map(|&s| (s, f.inv(a[s]).expect("support entries are nonzero")))
            .collect();
        let mut votes = Vec::with_capacity(inverses.len());
        let c0: Vec<Symbol> = (0..k)
            .map(|i| {
                votes.clear();
                votes.extend(inverses.iter().map(|&(s, inv)| f.mul(y[(i + s) % k], inv)));
                f.sub(w0[i], self.combine(&mut votes))
            })
            .collect();
        let c = self.encode_unchecked(&c0);
        if accept(distance(&c, w)) {
            DecodeOutcome::Decoded {
                codeword: c,
                message: c0,
            }
        } else {
            DecodeOutcome::Fail
        }
    }

    fn combine(&self, votes: &mut [Symbol]) -> Symbol {
        match self.vote_rule {
            VoteRule::FirstVote => votes.first().copied().unwrap_or(0),
            VoteRule::Majority => majority(votes),
        }
    }
}

/// Most frequent value; ties resolve to the smallest. Sorts in place.
pub(crate) fn majority(votes: &mut [Symbol]) -> Symbol {
    votes.sort_unstable();
    let mut best = (0usize, 0 as Symbol);
    let mut i = 0;
    while i < votes.len() {
        let v = votes[i];
        let run = votes[i..].iter().take_while(|&&x| x == v).count();
        if run > best.0 {
            best = (run, v);
        }
        i += run;
    }
    best.1
}

impl WordDecoder for DesignDCCode {
    /// Runs the majority step and accepts only within the smaller of
    /// `radius` and the design radius.
    fn decode(&self, word: &[Symbol], radius: Bound) -> DecodeOutcome {
        let DesignProfile { d, b } = self.profile;
        self.decode_with(word, |dist| {
            2 * b * dist < d && crate::code::within_radius(dist, radius)
        })
    }
}

/// Sidon-based double-circulant code: `A` is the circulant of the indicator
/// of a Sidon set `S` inside `[0, k)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SidonDCCode {
    sidon: SidonSet,
    code: DesignDCCode,
}

impl SidonDCCode {
    pub fn sidon(&self) -> &SidonSet {
        &self.sidon
    }

    pub fn design(&self) -> &DesignDCCode {
        &self.code
    }

    pub fn into_design(self) -> DesignDCCode {
        self.code
    }

    /// Distance bound `d/2 + 1` for a Sidon source.
    pub fn distance_bound(&self) -> Bound {
        Ratio::new(self.code.profile.d as u64, 2) + 1
    }

    /// Balanced bound `min{d/2 + 1, k/d}`.
    pub fn balanced_bound(&self) -> Bound {
        let d = self.code.profile.d as u64;
        self.distance_bound()
            .min(Ratio::new(self.code.k() as u64, d))
    }
}

impl std::ops::Deref for SidonDCCode {
    type Target = DesignDCCode;

    fn deref(&self) -> &DesignDCCode {
        &self.code
    }
}

pub fn build_sidon_dc(
    field: PrimeField,
    k: usize,
    s: &SidonSet,
) -> Result<SidonDCCode, DesignError> {
    if s.len() < 2 {
        return Err(DesignError::TooSmall(s.len()));
    }
    if !verify_sidon(s.elements()) {
        return Err(DesignError::NotSidon);
    }
    let circulant = CirculantMatrix::indicator(field, k, s.elements())?;
    let sidon = s.with_bound(k).map_err(|_| DesignError::NotSidon)?;
    Ok(SidonDCCode {
        sidon,
        code: DesignDCCode::new(circulant),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{brute_force_balanced_profile, brute_force_distance, OracleBudget};
    use crate::sidon::{sidon_erdos_turan, sidon_for_length};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f(q: u32) -> PrimeField {
        PrimeField::new(q).unwrap()
    }

    fn sidon(elements: &[usize], k: usize) -> SidonSet {
        SidonSet::new(elements.to_vec(), k).unwrap()
    }

    #[test]
    fn build_examples() {
        let c = build_sidon_dc(f(2), 3, &sidon(&[0, 1], 3)).unwrap();
        assert_eq!(c.circulant().first_column(), &[1, 1, 0]);
        let c18 = build_sidon_dc(f(2), 18, &sidon(&[0, 7, 13], 18)).unwrap();
        assert_eq!(c18.profile().d, 3);
        assert!(c18.profile().b <= 2);
        assert_eq!((c18.length(), c18.k()), (36, 18));
        let c3 = build_sidon_dc(f(3), 18, &sidon(&[0, 7, 13], 18)).unwrap();
        assert_eq!(c3.circulant().support(), c18.circulant().support());
        assert!(matches!(
            build_sidon_dc(f(2), 10, &sidon(&[0, 7, 13], 18)),
            Err(DesignError::OutOfRange { element: 13, k: 10 })
        ));
        assert_eq!(
            build_sidon_dc(f(2), 10, &sidon(&[4], 10)),
            Err(DesignError::TooSmall(1))
        );
    }

    #[test]
    fn profile_examples() {
        let p = |a: Vec<u32>| design_profile(&CirculantMatrix::new(f(2), a).unwrap());
        assert_eq!(p(vec![1, 1, 0]), DesignProfile { d: 2, b: 1 });
        assert_eq!(p(vec![1, 1, 1, 1]), DesignProfile { d: 4, b: 4 });
    }

    #[test]
    fn encode_examples() {
        let c = build_sidon_dc(f(2), 3, &sidon(&[0, 1], 3)).unwrap();
        assert_eq!(c.encode(&[0, 0, 0]).unwrap(), [0; 6]);
        assert_eq!(c.encode(&[0, 1, 0]).unwrap(), [0, 1, 0, 0, 1, 1]);
        assert_eq!(c.encode(&[1, 0, 0]).unwrap(), [1, 0, 0, 1, 1, 0]);
        assert!(c.encode(&[1, 0]).is_err());
    }

    #[test]
    fn generator_matches_encoding() {
        let c = build_sidon_dc(f(3), 8, &sidon(&[0, 5], 8)).unwrap();
        let g = c.generator_code();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let m: Vec<u32> = (0..8).map(|_| rng.gen_range(0..3)).collect();
            assert_eq!(g.encode(&m).unwrap(), c.encode(&m).unwrap());
        }
    }

    #[test]
    fn majority_ties_go_to_smallest() {
        assert_eq!(majority(&mut [2, 1, 2, 1]), 1);
        assert_eq!(majority(&mut [0, 1]), 0);
        assert_eq!(majority(&mut [1, 1, 0]), 1);
        assert_eq!(majority(&mut []), 0);
    }

    #[test]
    fn sidon_circulants_are_2_designs_up_to_500() {
        for p in [2usize, 3, 5, 7, 11, 13] {
            let s = sidon_erdos_turan(p).unwrap();
            for k in 2 * p * p..=500 {
                let a = CirculantMatrix::indicator(f(2), k, s.elements()).unwrap();
                let prof = design_profile(&a);
                assert_eq!(prof.d, p);
                assert!(prof.b <= 2, "p={p} k={k} b={}", prof.b);
            }
        }
    }

    #[test]
    fn small_fixture_bounds_hold() {
        for (q, k, s) in [
            (2u32, 8usize, vec![0usize, 5]),
            (3, 8, vec![0, 5]),
            (2, 12, vec![0, 1, 3]),
        ] {
            let c = build_sidon_dc(f(q), k, &sidon(&s, k)).unwrap();
            let g = c.generator_code();
            let DesignProfile { d, b } = c.profile();
            let dist = brute_force_distance(&g, OracleBudget::DEFAULT)
                .unwrap()
                .unwrap();
            assert!(
                dist * b >= d + b,
                "distance {dist} vs d/b + 1 with d={d} b={b}"
            );
            let bal = brute_force_balanced_profile(&g, 2, OracleBudget::DEFAULT)
                .unwrap()
                .unwrap();
            assert!(Bound::from_integer(bal as u64) >= c.balanced_bound());
        }
    }

    #[test]
    fn decodes_two_errors_at_k_242() {
        let s = sidon_for_length(242).unwrap();
        let c = build_sidon_dc(f(2), 242, &s).unwrap();
        assert_eq!(c.profile().d, 11);
        let mut rng = ChaCha8Rng::seed_from_u64(242);
        let m: Vec<u32> = (0..242).map(|_| rng.gen_range(0..2)).collect();
        let cw = c.encode(&m).unwrap();
        for _ in 0..2000 {
            let mut w = cw.clone();
            let i = rng.gen_range(0..484);
            let j = rng.gen_range(0..484);
            w[i] ^= 1;
            w[j] ^= u32::from(i != j);
            assert_eq!(c.decode(&w).codeword(), Some(&cw[..]));
        }
    }

    #[test]
    fn first_vote_mutant_is_caught() {
        let s = sidon_for_length(242).unwrap();
        let c = build_sidon_dc(f(2), 242, &s)
            .unwrap()
            .into_design()
            .with_vote_rule(VoteRule::FirstVote);
        let cw = c.encode(&[0; 242]).unwrap();
        let caught = (0..484).any(|i| {
            let mut w = cw.clone();
            w[i] = 1;
            w[(i + 1) % 484] = 1;
            c.decode(&w).codeword() != Some(&cw[..])
        });
        assert!(caught);
    }

    #[test]
    fn zero_error_decoding_exhaustive_k8() {
        let c = build_sidon_dc(f(2), 8, &sidon(&[0, 5], 8)).unwrap();
        for idx in 0..256u32 {
            let m: Vec<u32> = (0..8).map(|j| (idx >> j) & 1).collect();
            let cw = c.encode(&m).unwrap();
            assert_eq!(c.decode(&cw).message(), Some(&m[..]));
        }
    }

    proptest! {
        #[test]
        fn decoded_words_are_codewords_within_radius(
            w in prop::collection::vec(0u32..3, 36),
        ) {
            let c = build_sidon_dc(f(3), 18, &sidon(&[0, 7, 13], 18)).unwrap();
            let DesignProfile { d, b } = c.profile();
            if let DecodeOutcome::Decoded { codeword, message } = c.decode(&w) {
                prop_assert!(c.is_codeword(&codeword));
                prop_assert_eq!(&codeword[..18], &message[..]);
                prop_assert!(2 * b * distance(&codeword, &w) < d);
            }
        }

        #[test]
        fn apply_matches_explicit_columns(a in prop::collection::vec(0u32..5, 1..12), seed in any::<u64>()) {
            let k = a.len();
            let circ = CirculantMatrix::new(f(5), a).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let m: Vec<u32> = (0..k).map(|_| rng.gen_range(0..5)).collect();
            let fld = f(5);
            let mut expect = vec![0; k];
            for (i, &mi) in m.iter().enumerate() {
                for (o, c) in expect.iter_mut().zip(circ.column(i)) {
                    *o = fld.add(*o, fld.mul(mi, c));
                }
            }
            prop_assert_eq!(circ.apply(&m), expect);
        }
    }
}
