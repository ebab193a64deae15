//! The acceptance criteria, shared by `dccodes selftest` and the
//! `acceptance` test target.

use std::collections::BTreeSet;
use std::fmt;
use std::time::{Duration, Instant};

use dccodes::algebra::{cyclic_shift, is_prime, is_primitive_root, Poly, PrimeField, Symbol};
use dccodes::code::{
    balanced_weight, brute_force_balanced_profile, brute_force_distance, hamming_weight, Bound,
    CodeError, DecodeOutcome, OracleBudget,
};
use dccodes::cyc_dc::{build_rm_dc, d_balanced_check, CycDCError};
use dccodes::cyclic::{dual_code, enumerate_cyclic_codes, factor_x_n_minus_1, CyclicError};
use dccodes::design_dc::{build_sidon_dc, design_profile, CirculantMatrix, DesignError, VoteRule};
use dccodes::reed_muller::{build_punctured_rm, RMCode, RMError};
use dccodes::sidon::{sidon_erdos_turan, sidon_for_length, SidonError, SidonSet};
use dccodes::weldon::{fold_word, weldon_decode_traced, TCirculantCode, WeldonError, WeldonPair};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Environment variable that plants a known defect for mutation testing.
pub const MUTATION_VAR: &str = "DCC_SELFTEST_MUTATION";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutation {
    /// Replace the majority vote of the design decoder by the first vote.
    Majority,
}

impl Mutation {
    pub fn parse(s: &str) -> Option<Self> {
        match s.trim() {
            "majority" => Some(Mutation::Majority),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Config {
    pub budget: OracleBudget,
    pub mutation: Option<Mutation>,
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            budget: OracleBudget::DEFAULT,
            mutation: None,
            seed: 0x5eed_dcc0,
        }
    }
}

impl Config {
    /// Reads `ORACLE_BUDGET` and `DCC_SELFTEST_MUTATION`.
    pub fn from_env() -> Result<Self, String> {
        let mutation = match std::env::var(MUTATION_VAR) {
            Ok(v) if !v.trim().is_empty() => Some(
                Mutation::parse(&v).ok_or_else(|| format!("unknown {MUTATION_VAR} value {v:?}"))?,
            ),
            _ => None,
        };
        Ok(Self {
            budget: OracleBudget::from_env(),
            mutation,
            ..Self::default()
        })
    }

    fn vote_rule(&self) -> VoteRule {
        match self.mutation {
            Some(Mutation::Majority) => VoteRule::FirstVote,
            None => VoteRule::Majority,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        })
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub id: u32,
    pub name: &'static str,
    pub status: Status,
    pub elapsed: Duration,
    pub limit: Duration,
    pub detail: String,
}

impl fmt::Display for Report {
    /// `STATUS id name elapsed limit detail`, tab separated.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}\t{:02}\t{}\t{:.3}s\t<{}s\t{}",
            self.status,
            self.id,
            self.name,
            self.elapsed.as_secs_f64(),
            self.limit.as_secs(),
            self.detail
        )
    }
}

/// Why a criterion did not pass.
#[derive(Debug)]
enum Stop {
    Fail(String),
    Skip(String),
}

type Outcome = Result<String, Stop>;

fn fail(msg: impl Into<String>) -> Stop {
    Stop::Fail(msg.into())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), Stop> {
    if cond {
        Ok(())
    } else {
        Err(Stop::Fail(msg()))
    }
}

impl From<CodeError> for Stop {
    fn from(e: CodeError) -> Self {
        match e {
            CodeError::BudgetExceeded { .. } => Stop::Skip(e.to_string()),
            e => Stop::Fail(e.to_string()),
        }
    }
}

impl From<CyclicError> for Stop {
    fn from(e: CyclicError) -> Self {
        match e {
            CyclicError::Code(c) => c.into(),
            e => Stop::Fail(e.to_string()),
        }
    }
}

impl From<DesignError> for Stop {
    fn from(e: DesignError) -> Self {
        match e {
            DesignError::Code(c) => c.into(),
            e => Stop::Fail(e.to_string()),
        }
    }
}

impl From<CycDCError> for Stop {
    fn from(e: CycDCError) -> Self {
        match e {
            CycDCError::Code(c) => c.into(),
            e => Stop::Fail(e.to_string()),
        }
    }
}

impl From<WeldonError> for Stop {
    fn from(e: WeldonError) -> Self {
        match e {
            WeldonError::Code(c) => c.into(),
            WeldonError::Design(d) => d.into(),
            WeldonError::SearchTooLarge { .. } => Stop::Skip(e.to_string()),
            e => Stop::Fail(e.to_string()),
        }
    }
}

macro_rules! plain_failure {
    ($($t:ty),*) => {$(
        impl From<$t> for Stop {
            fn from(e: $t) -> Self {
                Stop::Fail(e.to_string())
            }
        }
    )*};
}

plain_failure!(dccodes::algebra::AlgebraError, SidonError, RMError);

pub struct Criterion {
    pub id: u32,
    pub name: &'static str,
    pub limit: Duration,
    run: fn(&Config) -> Outcome,
}

impl Criterion {
    /// Runs the check; exceeding the time limit is a failure.
    pub fn run(&self, config: &Config) -> Report {
        let start = Instant::now();
        let outcome = (self.run)(config);
        let elapsed = start.elapsed();
        let (status, detail) = match outcome {
            Ok(d) if elapsed > self.limit => (
                Status::Fail,
                format!("{d}; exceeded the {}s limit", self.limit.as_secs()),
            ),
            Ok(d) => (Status::Pass, d),
            Err(Stop::Fail(d)) => (Status::Fail, d),
            Err(Stop::Skip(d)) => (Status::Skip, d),
        };
        Report {
            id: self.id,
            name: self.name,
            status,
            elapsed,
            limit: self.limit,
            detail,
        }
    }
}

const fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

pub fn all() -> Vec<Criterion> {
    vec![
        Criterion {
            id: 1,
            name: "sidon_design_profile",
            limit: secs(10),
            run: sidon_design_profile,
        },
        Criterion {
            id: 2,
            name: "sidon_dc_distance",
            limit: secs(30),
            run: sidon_dc_distance,
        },
        Criterion {
            id: 3,
            name: "design_decoder",
            limit: secs(300),
            run: design_decoder,
        },
        Criterion {
            id: 4,
            name: "rm_facts",
            limit: secs(60),
            run: rm_facts,
        },
        Criterion {
            id: 5,
            name: "reed_decoder",
            limit: secs(60),
            run: reed_decoder,
        },
        Criterion {
            id: 6,
            name: "punctured_rm_cyclicity",
            limit: secs(10),
            run: punctured_rm_cyclicity,
        },
        Criterion {
            id: 7,
            name: "cyclic_dc",
            limit: secs(120),
            run: cyclic_dc,
        },
        Criterion {
            id: 8,
            name: "fold_inequality",
            limit: secs(30),
            run: fold_inequality,
        },
        Criterion {
            id: 9,
            name: "wozencraft_end_to_end",
            limit: secs(180),
            run: wozencraft_end_to_end,
        },
        Criterion {
            id: 10,
            name: "cyclic_limitations",
            limit: secs(60),
            run: cyclic_limitations,
        },
        Criterion {
            id: 11,
            name: "pk_certificate",
            limit: secs(30),
            run: pk_certificate,
        },
    ]
}

pub fn run_all(config: &Config) -> Vec<Report> {
    all().iter().map(|c| c.run(config)).collect()
}

fn rng(config: &Config, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(config.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

fn random_word(rng: &mut ChaCha8Rng, q: u32, len: usize) -> Vec<Symbol> {
    (0..len).map(|_| rng.gen_range(0..q)).collect()
}

fn flip(w: &[Symbol], positions: &[usize]) -> Vec<Symbol> {
    let mut out = w.to_vec();
    for &p in positions {
        out[p] ^= 1;
    }
    out
}

fn sidon_design_profile(_: &Config) -> Outcome {
    let f = PrimeField::binary();
    let primes: Vec<usize> = (2..=101).filter(|&p| is_prime(p as u64)).collect();
    let mut worst = 0;
    for &p in &primes {
        let s = sidon_erdos_turan(p)?;
        for k in [2 * p * p, 2 * p * p + 1] {
            let a = CirculantMatrix::indicator(f, k, s.elements())?;
            let prof = design_profile(&a);
            ensure(prof.d == p && prof.b <= 2, || {
                format!("p={p}, k={k}: profile (d={}, b={})", prof.d, prof.b)
            })?;
            worst = worst.max(prof.b);
        }
    }
    Ok(format!(
        "{} primes, k in {{2p^2, 2p^2+1}}, max b = {worst}",
        primes.len()
    ))
}

fn sidon_dc_distance(config: &Config) -> Outcome {
    let f = PrimeField::binary();
    let s = SidonSet::new(vec![0, 7, 13], 18)?;
    let code = build_sidon_dc(f, 18, &s)?;
    let g = code.generator_code();
    let dist = brute_force_distance(&g, config.budget)?.ok_or_else(|| fail("zero code"))?;
    let bound = code.distance_bound();
    ensure(
        Bound::from_integer(dist as u64) >= bound && dist >= 3,
        || format!("distance {dist} below {bound}"),
    )?;
    let bal =
        brute_force_balanced_profile(&g, 2, config.budget)?.ok_or_else(|| fail("zero code"))?;
    let target = code.balanced_bound();
    ensure(target == Bound::new(5, 2), || {
        format!("balanced bound {target} != 5/2")
    })?;
    ensure(Bound::from_integer(bal as u64) >= target, || {
        format!("balanced profile {bal} below {target}")
    })?;
    Ok(format!(
        "distance {dist} >= {bound}; balanced profile {bal} >= {target}"
    ))
}

fn design_decoder(config: &Config) -> Outcome {
    let f = PrimeField::binary();
    let s = sidon_for_length(242)?;
    let code = build_sidon_dc(f, 242, &s)?
        .into_design()
        .with_vote_rule(config.vote_rule());
    let prof = code.profile();
    ensure(prof.d == 11 && prof.b <= 2, || format!("profile {prof:?}"))?;
    let n = code.length();
    let mut rng = rng(config, 3);
    let mut patterns = 0u64;
    for trial in 0..3 {
        let m = random_word(&mut rng, 2, code.k());
        let c = code.encode(&m)?;
        // Weight 0 and 1 are the `j == i` diagonal; weight 2 is `j > i`.
        let bad = (0..n).into_par_iter().find_map_any(|i| {
            (i..n).find_map(|j| {
                let w = if i == j {
                    flip(&c, &[i])
                } else {
                    flip(&c, &[i, j])
                };
                match code.decode(&w) {
                    DecodeOutcome::Decoded { codeword, .. } if codeword == c => None,
                    _ => Some((i, j)),
                }
            })
        });
        if let Some((i, j)) = bad {
            let at = if i == j {
                format!("{{{i}}}")
            } else {
                format!("{{{i}, {j}}}")
            };
            return Err(fail(format!("trial {trial}: errors at {at} not corrected")));
        }
        ensure(code.decode(&c).codeword() == Some(&c[..]), || {
            format!("trial {trial}: clean codeword not returned")
        })?;
        patterns += (n * (n + 1) / 2 + 1) as u64;
    }
    Ok(format!(
        "d=11, b={}; {patterns} patterns of weight <= 2 corrected",
        prof.b
    ))
}

fn rm_facts(config: &Config) -> Outcome {
    let mut seen = Vec::new();
    for (r, m) in [(1, 3), (1, 4), (2, 4), (2, 5), (1, 5)] {
        let rm = RMCode::new(r, m)?;
        let dist = brute_force_distance(&rm.generator_code(), config.budget)?;
        let expect = 1usize << (m - r);
        ensure(dist == Some(expect), || {
            format!("RM({r},{m}) distance {dist:?} != {expect}")
        })?;
        seen.push(format!("RM({r},{m})={expect}"));
    }
    for (r, m) in [(1, 3), (1, 4), (2, 4)] {
        let a = RMCode::new(r, m)?.generator_code();
        let b = RMCode::new(m - r - 1, m)?.generator_code();
        for u in a.columns() {
            for v in b.columns() {
                let dot = u.iter().zip(v).filter(|(x, y)| **x & **y == 1).count();
                ensure(dot % 2 == 0, || {
                    format!("RM({r},{m}) not orthogonal to RM({},{m})", m - r - 1)
                })?;
            }
        }
    }
    Ok(format!(
        "distances {}; three dual pairs orthogonal",
        seen.join(", ")
    ))
}

fn reed_decoder(config: &Config) -> Outcome {
    let rm13 = RMCode::new(1, 3)?;
    let mut decoded = 0;
    for bits in 0u32..16 {
        let msg: Vec<Symbol> = (0..4).map(|i| (bits >> (3 - i)) & 1).collect();
        let c = rm13.encode(&msg)?;
        for e in std::iter::once(None).chain((0..8).map(Some)) {
            let w = match e {
                Some(p) => flip(&c, &[p]),
                None => c.clone(),
            };
            ensure(rm13.decode(&w).message() == Some(&msg[..]), || {
                format!("RM(1,3) message {msg:?} with error {e:?} not decoded")
            })?;
            decoded += 1;
        }
    }
    let rm25 = RMCode::new(2, 5)?;
    let mut rng = rng(config, 5);
    let positions: Vec<usize> = (0..rm25.length()).collect();
    for trial in 0..100 {
        let msg = random_word(&mut rng, 2, rm25.dimension());
        let c = rm25.encode(&msg)?;
        let e: Vec<usize> = positions.choose_multiple(&mut rng, 3).copied().collect();
        ensure(
            rm25.decode(&flip(&c, &e)).message() == Some(&msg[..]),
            || format!("RM(2,5) trial {trial}: errors {e:?} not corrected"),
        )?;
    }
    Ok(format!(
        "RM(1,3): {decoded} words; RM(2,5): 100 weight-3 errors"
    ))
}

fn punctured_rm_cyclicity(_: &Config) -> Outcome {
    let mut checked = 0;
    for (r, m) in [(1, 3), (2, 4), (1, 4)] {
        let g = build_punctured_rm(r, m)?.generator_code();
        for c in g.columns() {
            ensure(g.is_codeword(&cyclic_shift(c))?, || {
                format!("RM*({r},{m}): shift of a basis word leaves the code")
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} basis codewords shift-closed"))
}

fn cyclic_dc(config: &Config) -> Outcome {
    let dc = build_rm_dc(4)?;
    ensure(dc.k() == 15 && dc.d() == 7 && dc.d_perp() == 3, || {
        format!("fixture k={} d={} d_perp={}", dc.k(), dc.d(), dc.d_perp())
    })?;
    let budget = config.budget;
    let d = brute_force_distance(&dc.base().generator_code(), budget)?
        .ok_or_else(|| fail("zero base"))?;
    ensure(d >= 7, || format!("base distance {d} < 7"))?;
    let d_perp = brute_force_distance(&dc.dual().generator_code(), budget)?
        .ok_or_else(|| fail("zero dual"))?;
    ensure(d_perp == 3, || format!("dual distance {d_perp} != 3"))?;
    let g = dc.generator_code();
    let dist = brute_force_distance(&g, budget)?.ok_or_else(|| fail("zero code"))?;
    ensure(dist >= dc.d_prime(), || {
        format!("DC distance {dist} < {}", dc.d_prime())
    })?;
    let mut rng = rng(config, 7);
    for trial in 0..50 {
        let m = random_word(&mut rng, 2, dc.k());
        let c = dc.encode(&m)?;
        for p in 0..dc.length() {
            ensure(dc.decode(&flip(&c, &[p])).message() == Some(&m[..]), || {
                format!("trial {trial}: error at {p} not corrected")
            })?;
        }
    }
    ensure(d_balanced_check(dc.base(), 7, budget)?, || {
        "base is not 7-balanced".into()
    })?;
    let bal = brute_force_balanced_profile(&g, 2, budget)?.ok_or_else(|| fail("zero code"))?;
    ensure(bal >= 3, || format!("balanced profile {bal} < 3"))?;
    Ok(format!(
        "oracle d={d}, d_perp={d_perp}; DC distance {dist} >= 3; 1500 single errors; balanced profile {bal}"
    ))
}

fn fold_inequality(config: &Config) -> Outcome {
    let mut exhaustive = 0u64;
    for q in [2u32, 3] {
        let f = PrimeField::new(q)?;
        for len in 1..=8usize {
            let total = (q as u64).pow(len as u32);
            for idx in 0..total {
                let mut t = idx;
                let c: Vec<Symbol> = (0..len)
                    .map(|_| {
                        let s = (t % q as u64) as Symbol;
                        t /= q as u64;
                        s
                    })
                    .collect();
                check_fold(f, &c)?;
                exhaustive += 1;
            }
        }
    }
    let mut rng = rng(config, 8);
    for _ in 0..10_000 {
        let q = *[2u32, 3, 5].choose(&mut rng).expect("nonempty");
        let len = rng.gen_range(9..=64);
        let c = random_word(&mut rng, q, len);
        check_fold(PrimeField::new(q)?, &c)?;
    }
    Ok(format!("{exhaustive} exhaustive sequences, 10000 random"))
}

fn check_fold(f: PrimeField, c: &[Symbol]) -> Result<(), Stop> {
    let folded = hamming_weight(&fold_word(f, c));
    let bal = balanced_weight(f, c);
    ensure(folded >= bal, || {
        format!("fold weight {folded} < balanced weight {bal} for {c:?}")
    })
}

fn wozencraft_end_to_end(config: &Config) -> Outcome {
    let f = PrimeField::binary();
    let budget = config.budget;

    let w1_source = build_sidon_dc(f, 3, &SidonSet::new(vec![0, 1], 3)?)?;
    let w1 = WeldonPair::new(TCirculantCode::from_sidon_dc(&w1_source, budget)?)?;
    let g1 = w1.weldon.generator_code();
    let mut words = BTreeSet::new();
    for bits in 0u32..4 {
        let m = [bits >> 1, bits & 1];
        words.insert(g1.encode(&m)?);
    }
    let mut folded = BTreeSet::new();
    for bits in 0u32..4 {
        let lifted = [bits >> 1, bits & 1, 0];
        let c = w1_source.encode(&lifted)?;
        let mut w = lifted[..2].to_vec();
        w.extend(fold_word(f, &c[3..]));
        folded.insert(w);
    }
    let explicit: BTreeSet<Vec<Symbol>> = [[0, 0, 0, 0], [1, 0, 1, 1], [0, 1, 1, 0], [1, 1, 0, 1]]
        .into_iter()
        .map(|w| w.to_vec())
        .collect();
    ensure(words == folded && words == explicit, || {
        format!("W1 codewords {words:?}")
    })?;
    let d1 = brute_force_distance(&g1, budget)?;
    ensure(d1 == Some(2), || format!("W1 distance {d1:?} != 2"))?;

    let s19 = SidonSet::new(vec![1, 8, 14], 19)?;
    let source = TCirculantCode::from_sidon_dc(&build_sidon_dc(f, 19, &s19)?, budget)?;
    let w19 = WeldonPair::new(source)?;
    let bound = w19.weldon.distance_bound();
    ensure(bound == Bound::new(5, 2), || {
        format!("W19 bound {bound} != 5/2")
    })?;
    let dist = brute_force_distance(&w19.weldon.generator_code(), budget)?
        .ok_or_else(|| fail("zero code"))?;
    ensure(
        Bound::from_integer(dist as u64) >= bound && dist >= 3,
        || format!("W19 distance {dist} below {bound}"),
    )?;
    let mut rng = rng(config, 9);
    let mut betas = BTreeSet::new();
    for trial in 0..100 {
        let m = random_word(&mut rng, 2, w19.weldon.dimension());
        let c = dccodes::weldon::weldon_encode(&w19.weldon, &m)?;
        for p in 0..c.len() {
            let trace = weldon_decode_traced(&w19.weldon, &w19.source, &flip(&c, &[p]))?;
            ensure(trace.outcome.message() == Some(&m[..]), || {
                format!("W19 trial {trial}: error at {p} not corrected")
            })?;
            betas.extend(trace.beta);
        }
    }
    ensure(betas.len() == 2, || {
        format!("beta loop only reached {betas:?}")
    })?;
    Ok(format!(
        "W1 = 4 folded words, distance 2; W19 distance {dist} >= {bound}; 3600 single errors; betas {betas:?}"
    ))
}

fn cyclic_limitations(config: &Config) -> Outcome {
    let f = PrimeField::binary();
    let mut codes = 0;
    for n in [3usize, 5, 11, 13] {
        ensure(is_primitive_root(2, n as u64)?, || {
            format!("2 is not primitive mod {n}")
        })?;
        for c in enumerate_cyclic_codes(f, n)? {
            let d = brute_force_distance(&c.generator_code(), config.budget)?;
            let d_dual = brute_force_distance(&dual_code(&c).generator_code(), config.budget)?;
            let least = d.into_iter().chain(d_dual).min();
            ensure(least.is_some_and(|x| x <= 2), || {
                format!(
                    "n={n}, g={:?}: min distance {least:?}",
                    c.generator().coeffs()
                )
            })?;
            codes += 1;
        }
    }
    let mut degrees = Vec::new();
    for (n, cap) in [(15usize, 4usize), (7, 3)] {
        let top = factor_x_n_minus_1(f, n)?
            .iter()
            .filter_map(|(p, _)| p.degree())
            .max()
            .unwrap_or(0);
        ensure(top <= cap, || {
            format!("x^{n}-1 has an irreducible factor of degree {top}")
        })?;
        degrees.push(format!("x^{n}-1: {top}"));
    }
    Ok(format!(
        "{codes} cyclic codes with min distance <= 2; max factor degree {}",
        degrees.join(", ")
    ))
}

fn pk_certificate(_: &Config) -> Outcome {
    let mut certified = 0;
    for q in [2u32, 3, 5] {
        let f = PrimeField::new(q)?;
        for k in (2..=40u64).filter(|&k| is_prime(k)) {
            if is_primitive_root(q as u64, k)? {
                let pk = Poly::all_ones(f, k as usize);
                ensure(pk.is_irreducible()?, || {
                    format!("p_{k} reducible over F_{q}")
                })?;
                certified += 1;
            }
        }
    }
    Ok(format!(
        "{certified} primitive pairs (q, k), p_k irreducible in each"
    ))
}
