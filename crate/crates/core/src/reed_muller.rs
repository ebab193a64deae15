//! Binary Reed-Muller codes with Reed's majority-logic decoder, and the
//! punctured codes `RM*(r, m)` in the cyclic `alpha`-power point order.
//!
//! Points of `F_2^m` are bit masks: bit `j - 1` holds `x_j`. Monomials are
//! masks too, listed by degree and then lexicographically by variable list.

use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{BinaryExtensionField, PrimeField, Symbol};
use crate::code::{
    distance, within_radius, Bound, DecodeOutcome, GeneratorMatrixCode, WordDecoder,
};
use crate::cyclic::{
    cyclic_from_generator, dual_code, generator_from_spanning_set, CyclicCode, CyclicError,
};

pub const MAX_VARIABLES: u32 = 16;
pub const MAX_PUNCTURED_VARIABLES: u32 = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RMError {
    #[error("RM({r}, {m}) needs r <= m <= {MAX_VARIABLES}")]
    BadParameters { r: u32, m: u32 },
    #[error("RM*({r}, {m}) needs 1 <= r < m <= {MAX_PUNCTURED_VARIABLES}")]
    BadPuncturedParameters { r: u32, m: u32 },
    #[error("expected {expected} symbols, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("symbol {0} is not binary")]
    NotBinary(Symbol),
    #[error("punctured code is not cyclic in alpha-power order: {0}")]
    NotCyclic(CyclicError),
}

/// `RM(r, m)`: evaluations of multilinear polynomials of degree `<= r` over
/// all `2^m` points, in binary-counter order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RMCode {
    r: u32,
    m: u32,
    monomials: Vec<u32>,
}

impl RMCode {
    pub fn new(r: u32, m: u32) -> Result<Self, RMError> {
        if r > m || m > MAX_VARIABLES {
            return Err(RMError::BadParameters { r, m });
        }
        let mut monomials: Vec<u32> = (0..1u32 << m).filter(|t| t.count_ones() <= r).collect();
        monomials.sort_by_key(|&t| (t.count_ones(), variables(t)));
        Ok(Self { r, m, monomials })
    }

    pub fn order(&self) -> u32 {
        self.r
    }

    pub fn variables(&self) -> u32 {
        self.m
    }

    pub fn length(&self) -> usize {
        1 << self.m
    }

    pub fn dimension(&self) -> usize {
        self.monomials.len()
    }

    /// Message coordinates as variable masks.
    pub fn monomials(&self) -> &[u32] {
        &self.monomials
    }

    /// `2^(m - r)`.
    pub fn distance(&self) -> usize {
        1 << (self.m - self.r)
    }

    pub fn encode(&self, coeffs: &[Symbol]) -> Result<Vec<Symbol>, RMError> {
        if coeffs.len() != self.dimension() {
            return Err(RMError::LengthMismatch {
                expected: self.dimension(),
                found: coeffs.len(),
            });
        }
        if let Some(&bad) = coeffs.iter().find(|&&c| c > 1) {
            return Err(RMError::NotBinary(bad));
        }
        let mut anf = vec![0u8; self.length()];
        for (&t, &c) in self.monomials.iter().zip(coeffs) {
            anf[t as usize] = c as u8;
        }
        Ok(evaluate_anf(anf, self.m)
            .into_iter()
            .map(Symbol::from)
            .collect())
    }

    pub fn generator_code(&self) -> GeneratorMatrixCode {
        let cols = self
            .monomials
            .iter()
            .map(|&t| (0..1u32 << self.m).map(|p| u32::from(p & t == t)).collect())
            .collect();
        GeneratorMatrixCode::new(PrimeField::binary(), self.length(), cols)
            .expect("monomial evaluations are independent")
    }

    /// Reed decoding; accepts when `2 wt(w - c) < 2^(m - r)`.
    pub fn decode(&self, w: &[Symbol]) -> DecodeOutcome {
        let half = self.distance();
        self.decode_with(w, |wt| 2 * wt < half)
    }

    fn decode_with(&self, w: &[Symbol], accept: impl Fn(usize) -> bool) -> DecodeOutcome {
        if w.len() != self.length() || w.iter().any(|&s| s > 1) {
            return DecodeOutcome::Fail;
        }
        let n = self.length();
        let mut work: Vec<u8> = w.iter().map(|&s| s as u8).collect();
        let mut coeffs = vec![0 as Symbol; self.dimension()];
        let mut votes = vec![0u32; n];
        for deg in (0..=self.r).rev() {
            let mut layer = vec![0u8; n];
            for (idx, &t) in self.monomials.iter().enumerate() {
                if t.count_ones() != deg {
                    continue;
                }
                // One vote per coset of the subcube on T's variables: the
                // sum of the working word over that coset.
                let cosets = 1usize << (self.m - deg);
                votes[..n].iter_mut().for_each(|v| *v = 0);
                for p in 0..n as u32 {
                    votes[(p & !t) as usize] ^= u32::from(work[p as usize]);
                }
                let ones: usize = (0..n as u32)
                    .filter(|p| p & t == 0)
                    .map(|p| votes[p as usize] as usize)
                    .sum();
                if 2 * ones > cosets {
                    coeffs[idx] = 1;
                    layer[t as usize] = 1;
                }
            }
            for (x, e) in work.iter_mut().zip(evaluate_anf(layer, self.m)) {
                *x ^= e;
            }
        }
        if !accept(work.iter().filter(|&&x| x != 0).count()) {
            return DecodeOutcome::Fail;
        }
        let codeword = self.encode(&coeffs).expect("decoded coefficients");
        DecodeOutcome::Decoded {
            codeword,
            message: coeffs,
        }
    }
}

fn variables(t: u32) -> Vec<u32> {
    (0..32).filter(|j| t >> j & 1 == 1).collect()
}

/// Evaluates an algebraic normal form (coefficient per monomial mask) at
/// every point via the subset-sum transform.
fn evaluate_anf(mut v: Vec<u8>, m: u32) -> Vec<u8> {
    for j in 0..m {
        let bit = 1usize << j;
        for p in 0..v.len() {
            if p & bit != 0 {
                v[p] ^= v[p ^ bit];
            }
        }
    }
    v
}

/// Points `phi(alpha^i)`, `i = 0..2^m - 2`, with `phi` the polynomial-basis
/// coordinate map of the default `F_{2^m}`.
pub fn punctured_ordering(m: u32) -> Result<Vec<u32>, RMError> {
    let gf = BinaryExtensionField::new(m).map_err(|_| RMError::BadParameters { r: 0, m })?;
    let alpha = gf.generator();
    let mut points = Vec::with_capacity(gf.group_order() as usize);
    let mut x = 1u32;
    for _ in 0..gf.group_order() {
        points.push(x);
        x = gf.mul(x, alpha);
    }
    Ok(points)
}

/// Restriction of full-length words to the punctured point order and back.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Puncturing {
    points: Arc<[u32]>,
}

impl Puncturing {
    fn puncture(&self, full: &[Symbol]) -> Vec<Symbol> {
        self.points.iter().map(|&p| full[p as usize]).collect()
    }

    fn lift(&self, w: &[Symbol], at_zero: Symbol) -> Vec<Symbol> {
        let mut full = vec![0; self.points.len() + 1];
        full[0] = at_zero;
        for (&p, &s) in self.points.iter().zip(w) {
            full[p as usize] = s;
        }
        full
    }
}

/// Decoder for `RM*(r, m)`: tries both values at the punctured point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PuncturedRMDecoder {
    rm: RMCode,
    punct: Puncturing,
}

impl WordDecoder for PuncturedRMDecoder {
    fn decode(&self, w: &[Symbol], radius: Bound) -> DecodeOutcome {
        if w.len() != self.punct.points.len() {
            return DecodeOutcome::Fail;
        }
        let mut found: Option<DecodeOutcome> = None;
        for v in 0..2 {
            let DecodeOutcome::Decoded { codeword, message } =
                self.rm.decode(&self.punct.lift(w, v))
            else {
                continue;
            };
            let c = self.punct.puncture(&codeword);
            if !within_radius(distance(&c, w), radius) {
                continue;
            }
            match &found {
                Some(prev) if prev.codeword() == Some(&c[..]) => {}
                Some(_) => return DecodeOutcome::Fail,
                None => {
                    found = Some(DecodeOutcome::Decoded {
                        codeword: c,
                        message,
                    })
                }
            }
        }
        found.unwrap_or(DecodeOutcome::Fail)
    }
}

/// Decoder for the shortened code of `RM(r', m)` (polynomials with
/// `f(0) = 0`, punctured at 0), which is the dual of `RM*(m - r' - 1, m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortenedRMDecoder {
    rm: RMCode,
    punct: Puncturing,
}

impl ShortenedRMDecoder {
    pub fn new(r_prime: u32, m: u32) -> Result<Self, RMError> {
        Ok(Self {
            rm: RMCode::new(r_prime, m)?,
            punct: Puncturing {
                points: punctured_ordering(m)?.into(),
            },
        })
    }
}

impl WordDecoder for ShortenedRMDecoder {
    fn decode(&self, w: &[Symbol], radius: Bound) -> DecodeOutcome {
        if w.len() != self.punct.points.len() {
            return DecodeOutcome::Fail;
        }
        match self.rm.decode(&self.punct.lift(w, 0)) {
            DecodeOutcome::Decoded { codeword, message } if message[0] == 0 => {
                let c = self.punct.puncture(&codeword);
                if within_radius(distance(&c, w), radius) {
                    DecodeOutcome::Decoded {
                        codeword: c,
                        message,
                    }
                } else {
                    DecodeOutcome::Fail
                }
            }
            _ => DecodeOutcome::Fail,
        }
    }
}

pub fn shortened_dual_rm_decode(
    r_prime: u32,
    m: u32,
    w: &[Symbol],
    radius: Bound,
) -> Result<DecodeOutcome, RMError> {
    Ok(ShortenedRMDecoder::new(r_prime, m)?.decode(w, radius))
}

/// `RM*(r, m)` in `alpha`-power order together with its cyclic form.
#[derive(Clone, Debug)]
pub struct PuncturedRMCode {
    decoder: PuncturedRMDecoder,
    cyclic: CyclicCode,
}

pub fn build_punctured_rm(r: u32, m: u32) -> Result<PuncturedRMCode, RMError> {
    if r < 1 || r >= m || m > MAX_PUNCTURED_VARIABLES {
        return Err(RMError::BadPuncturedParameters { r, m });
    }
    let rm = RMCode::new(r, m)?;
    let punct = Puncturing {
        points: punctured_ordering(m)?.into(),
    };
    let n = punct.points.len();
    let cols: Vec<Vec<Symbol>> = rm
        .monomials
        .iter()
        .map(|&t| {
            punct
                .points
                .iter()
                .map(|&p| u32::from(p & t == t))
                .collect()
        })
        .collect();
    let g =
        generator_from_spanning_set(PrimeField::binary(), n, &cols).map_err(RMError::NotCyclic)?;
    let decoder = PuncturedRMDecoder { rm, punct };
    let cyclic = cyclic_from_generator(n, g)
        .map_err(RMError::NotCyclic)?
        .with_decoder(Arc::new(decoder.clone()));
    Ok(PuncturedRMCode { decoder, cyclic })
}

impl PuncturedRMCode {
    pub fn order(&self) -> u32 {
        self.decoder.rm.r
    }

    pub fn variables(&self) -> u32 {
        self.decoder.rm.m
    }

    pub fn length(&self) -> usize {
        self.decoder.punct.points.len()
    }

    pub fn dimension(&self) -> usize {
        self.decoder.rm.dimension()
    }

    /// `2^(m - r) - 1`.
    pub fn distance(&self) -> usize {
        self.decoder.rm.distance() - 1
    }

    pub fn points(&self) -> &[u32] {
        &self.decoder.punct.points
    }

    pub fn rm(&self) -> &RMCode {
        &self.decoder.rm
    }

    /// Cyclic form with the punctured decoder attached.
    pub fn cyclic(&self) -> &CyclicCode {
        &self.cyclic
    }

    /// Dual cyclic code with the shortened `RM(m - r - 1, m)` decoder attached.
    pub fn dual_cyclic(&self) -> CyclicCode {
        let (r, m) = (self.order(), self.variables());
        let dec = ShortenedRMDecoder::new(m - r - 1, m).expect("valid dual parameters");
        dual_code(&self.cyclic).with_decoder(Arc::new(dec))
    }

    pub fn encode(&self, coeffs: &[Symbol]) -> Result<Vec<Symbol>, RMError> {
        Ok(self
            .decoder
            .punct
            .puncture(&self.decoder.rm.encode(coeffs)?))
    }

    pub fn generator_code(&self) -> GeneratorMatrixCode {
        let cols = self
            .decoder
            .rm
            .generator_code()
            .columns()
            .iter()
            .map(|c| self.decoder.punct.puncture(c))
            .collect();
        GeneratorMatrixCode::new(PrimeField::binary(), self.length(), cols)
            .expect("puncturing keeps dimension for r < m")
    }

    pub fn decode(&self, w: &[Symbol], radius: Bound) -> DecodeOutcome {
        self.decoder.decode(w, radius)
    }
}

pub fn punctured_rm_decode(code: &PuncturedRMCode, w: &[Symbol], radius: Bound) -> DecodeOutcome {
    code.decode(w, radius)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::cyclic_shift;
    use crate::code::{brute_force_distance, nearest_codeword, OracleBudget};
    use num_rational::Ratio;
    use rand::{seq::index::sample, Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const B: OracleBudget = OracleBudget::DEFAULT;

    fn all_messages(k: usize) -> impl Iterator<Item = Vec<u32>> {
        (0..1u32 << k).map(move |idx| (0..k).map(|j| (idx >> j) & 1).collect())
    }

    #[test]
    fn monomial_order() {
        let rm = RMCode::new(2, 3).unwrap();
        assert_eq!(
            rm.monomials(),
            &[0, 0b001, 0b010, 0b100, 0b011, 0b101, 0b110]
        );
        assert_eq!(RMCode::new(1, 4).unwrap().dimension(), 5);
        assert_eq!(RMCode::new(2, 5).unwrap().dimension(), 16);
        assert!(RMCode::new(3, 2).is_err());
    }

    #[test]
    fn encode_examples() {
        assert_eq!(
            RMCode::new(0, 2).unwrap().encode(&[1]).unwrap(),
            [1, 1, 1, 1]
        );
        let x1 = RMCode::new(1, 2).unwrap().encode(&[0, 1, 0]).unwrap();
        assert_eq!(x1, [0, 1, 0, 1]);
        let x1x2 = RMCode::new(2, 2).unwrap().encode(&[0, 0, 0, 1]).unwrap();
        assert_eq!(x1x2, [0, 0, 0, 1]);
        assert!(RMCode::new(1, 2).unwrap().encode(&[1, 1]).is_err());
    }

    #[test]
    fn generator_matches_encode() {
        let rm = RMCode::new(2, 4).unwrap();
        let g = rm.generator_code();
        for m in all_messages(rm.dimension()).step_by(37) {
            assert_eq!(g.encode(&m).unwrap(), rm.encode(&m).unwrap());
        }
    }

    #[test]
    fn distances_are_exact() {
        for (r, m) in [(1, 3), (1, 4), (2, 4), (1, 5), (0, 3), (3, 3)] {
            let rm = RMCode::new(r, m).unwrap();
            let d = brute_force_distance(&rm.generator_code(), B).unwrap();
            assert_eq!(d, Some(rm.distance()), "RM({r},{m})");
        }
    }

    #[test]
    fn duals_are_orthogonal() {
        for (r, m) in [(1, 3), (1, 4), (2, 4)] {
            let a = RMCode::new(r, m).unwrap().generator_code();
            let b = RMCode::new(m - r - 1, m).unwrap().generator_code();
            for x in a.columns() {
                for y in b.columns() {
                    let ip = x.iter().zip(y).map(|(p, q)| p & q).sum::<u32>() % 2;
                    assert_eq!(ip, 0);
                }
            }
            assert_eq!(a.dimension() + b.dimension(), 1 << m);
        }
    }

    #[test]
    fn reed_decodes_zero_error_exhaustive() {
        for m in 1..=4 {
            for r in 0..=m {
                let rm = RMCode::new(r, m).unwrap();
                for msg in all_messages(rm.dimension()) {
                    let cw = rm.encode(&msg).unwrap();
                    assert_eq!(rm.decode(&cw).message(), Some(&msg[..]), "RM({r},{m})");
                }
            }
        }
    }

    #[test]
    fn reed_matches_nearest_codeword_rm13() {
        let rm = RMCode::new(1, 3).unwrap();
        let g = rm.generator_code();
        for word in 0..256u32 {
            let w: Vec<u32> = (0..8).map(|j| (word >> j) & 1).collect();
            let near = nearest_codeword(&g, &w, B).unwrap();
            let out = rm.decode(&w);
            if near.distance <= 1 {
                assert_eq!(out.codeword(), Some(&near.codeword[..]));
            } else {
                assert!(out.is_fail());
            }
        }
    }

    #[test]
    fn reed_corrects_three_errors_rm25() {
        let rm = RMCode::new(2, 5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(25);
        for _ in 0..100 {
            let msg: Vec<u32> = (0..16).map(|_| rng.gen_range(0..2)).collect();
            let cw = rm.encode(&msg).unwrap();
            let mut w = cw.clone();
            for i in sample(&mut rng, 32, 3) {
                w[i] ^= 1;
            }
            assert_eq!(rm.decode(&w).message(), Some(&msg[..]));
        }
    }

    #[test]
    fn ordering_examples() {
        let p2 = punctured_ordering(2).unwrap();
        assert_eq!(p2.len(), 3);
        for m in 2..=10 {
            let mut p = punctured_ordering(m).unwrap();
            assert_eq!(p.len(), (1 << m) - 1);
            assert!(!p.contains(&0));
            p.sort_unstable();
            p.dedup();
            assert_eq!(p.len(), (1 << m) - 1);
        }
        let gf = BinaryExtensionField::new(3).unwrap();
        let p3 = punctured_ordering(3).unwrap();
        assert_eq!(gf.mul(p3[6], gf.generator()), p3[0]);
    }

    #[test]
    fn punctured_dimensions() {
        let c = build_punctured_rm(1, 3).unwrap();
        assert_eq!((c.length(), c.dimension()), (7, 4));
        let c = build_punctured_rm(2, 4).unwrap();
        assert_eq!((c.length(), c.dimension()), (15, 11));
        assert_eq!(c.cyclic().dimension(), 11);
        assert_eq!(c.cyclic().generator().degree(), Some(4));
        assert!(build_punctured_rm(0, 3).is_err());
        assert!(build_punctured_rm(3, 3).is_err());
    }

    #[test]
    fn punctured_codes_are_cyclic() {
        for (r, m) in [(1, 3), (2, 4), (1, 4), (2, 5), (3, 6)] {
            let c = build_punctured_rm(r, m).unwrap();
            let g = c.generator_code();
            for col in g.columns() {
                assert!(g.is_codeword(&cyclic_shift(col)).unwrap());
                assert!(c.cyclic().is_codeword(col).unwrap());
            }
        }
    }

    #[test]
    fn dual_is_shortened_rm() {
        for (r, m) in [(1, 3), (2, 4), (1, 4), (2, 5)] {
            let c = build_punctured_rm(r, m).unwrap();
            let dual = c.dual_cyclic();
            let small = RMCode::new(m - r - 1, m).unwrap();
            let punct = Puncturing {
                points: c.points().into(),
            };
            let words: Vec<Vec<u32>> = small
                .generator_code()
                .columns()
                .iter()
                .skip(1)
                .map(|col| punct.puncture(col))
                .collect();
            let span =
                GeneratorMatrixCode::from_spanning_set(PrimeField::binary(), c.length(), &words)
                    .unwrap();
            assert_eq!(span.dimension(), dual.dimension());
            for w in span.columns() {
                assert!(dual.is_codeword(w).unwrap());
            }
        }
    }

    #[test]
    fn punctured_decoder_examples() {
        let c = build_punctured_rm(2, 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let msg: Vec<u32> = (0..11).map(|_| rng.gen_range(0..2)).collect();
            let cw = c.encode(&msg).unwrap();
            assert_eq!(c.decode(&cw, Ratio::new(3, 2)).codeword(), Some(&cw[..]));
            for i in 0..15 {
                let mut w = cw.clone();
                w[i] ^= 1;
                assert_eq!(c.decode(&w, Ratio::new(3, 2)).codeword(), Some(&cw[..]));
            }
        }
        let zero = vec![0; 15];
        assert_eq!(
            punctured_rm_decode(&c, &zero, Ratio::new(1, 2)).codeword(),
            Some(&zero[..])
        );
    }

    #[test]
    fn shortened_decoder_examples() {
        let rm = RMCode::new(1, 4).unwrap();
        let punct = Puncturing {
            points: punctured_ordering(4).unwrap().into(),
        };
        let x1 = punct.puncture(&rm.encode(&[0, 1, 0, 0, 0]).unwrap());
        let out = shortened_dual_rm_decode(1, 4, &x1, Ratio::new(7, 2)).unwrap();
        assert_eq!(out.message(), Some(&[0, 1, 0, 0, 0][..]));
        let one_plus_x1 = punct.puncture(&rm.encode(&[1, 1, 0, 0, 0]).unwrap());
        assert!(
            shortened_dual_rm_decode(1, 4, &one_plus_x1, Ratio::new(7, 2))
                .unwrap()
                .is_fail()
        );
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let mut msg: Vec<u32> = (0..5).map(|_| rng.gen_range(0..2)).collect();
            msg[0] = 0;
            let cw = punct.puncture(&rm.encode(&msg).unwrap());
            let mut w = cw.clone();
            for i in sample(&mut rng, 15, 2) {
                w[i] ^= 1;
            }
            let out = shortened_dual_rm_decode(1, 4, &w, Ratio::new(7, 2)).unwrap();
            assert_eq!(out.codeword(), Some(&cw[..]));
        }
    }
}
