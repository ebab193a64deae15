//! Decoder contracts checked against exhaustive nearest-codeword search.

use dccodes::algebra::{PrimeField, Symbol};
use dccodes::code::{
    balanced_weight, brute_force_distance, hamming_distance, hamming_weight, nearest_codeword,
    DecodeOutcome, GeneratorMatrixCode, OracleBudget,
};
use dccodes::cyc_dc::build_rm_dc;
use dccodes::design_dc::{build_sidon_dc, DesignDCCode};
use dccodes::reed_muller::RMCode;
use dccodes::sidon::{sidon_for_length, SidonSet};
use dccodes::weldon::{fold_word, weldon_decode, weldon_encode, TCirculantCode, WeldonPair};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const B: OracleBudget = OracleBudget::DEFAULT;

fn random_word(rng: &mut ChaCha8Rng, q: u32, len: usize) -> Vec<Symbol> {
    (0..len).map(|_| rng.gen_range(0..q)).collect()
}

fn add_errors(rng: &mut ChaCha8Rng, q: u32, w: &mut [Symbol], weight: usize) {
    for p in sample(rng, w.len(), weight) {
        w[p] = (w[p] + rng.gen_range(1..q)) % q;
    }
}

fn nearest_recovers(g: &GeneratorMatrixCode, trials: usize, seed: u64) {
    let d = brute_force_distance(g, B).unwrap().unwrap();
    let q = g.field().order();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let c = g.encode(&random_word(&mut rng, q, g.dimension())).unwrap();
        let mut w = c.clone();
        let wt = rng.gen_range(0..=(d - 1) / 2);
        add_errors(&mut rng, q, &mut w, wt);
        assert_eq!(nearest_codeword(g, &w, B).unwrap().codeword, c);
    }
}

#[test]
fn nearest_codeword_recovers_below_half_distance() {
    let s12 = SidonSet::new(vec![0, 1, 4], 12).unwrap();
    let fixtures = [
        build_rm_dc(4).unwrap().generator_code(),
        build_sidon_dc(PrimeField::binary(), 12, &s12)
            .unwrap()
            .generator_code(),
        build_sidon_dc(
            PrimeField::new(3).unwrap(),
            8,
            &SidonSet::new(vec![0, 1, 3], 8).unwrap(),
        )
        .unwrap()
        .generator_code(),
        RMCode::new(1, 4).unwrap().generator_code(),
    ];
    for (i, g) in fixtures.iter().enumerate() {
        nearest_recovers(g, 500, i as u64);
    }
}

/// Every `Decoded(c)` is a codeword with `2 b dist(w, c) < d`.
fn design_postcondition(code: &DesignDCCode, seed: u64) -> usize {
    let q = code.field().order();
    let prof = code.profile();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut decoded = 0;
    for i in 0..10_000 {
        let w = if i % 2 == 0 {
            random_word(&mut rng, q, code.length())
        } else {
            let mut w = code.encode(&random_word(&mut rng, q, code.k())).unwrap();
            let wt = rng.gen_range(0..=prof.d);
            add_errors(&mut rng, q, &mut w, wt);
            w
        };
        if let DecodeOutcome::Decoded { codeword, message } = code.decode(&w) {
            assert_eq!(code.encode(&message).unwrap(), codeword);
            let dist = hamming_distance(&w, &codeword).unwrap();
            assert!(2 * prof.b * dist < prof.d, "accepted at distance {dist}");
            decoded += 1;
        }
    }
    decoded
}

#[test]
fn design_decoder_postcondition_on_random_inputs() {
    let f2 = PrimeField::binary();
    let k18 = build_sidon_dc(f2, 18, &SidonSet::new(vec![0, 7, 13], 18).unwrap()).unwrap();
    let k242 = build_sidon_dc(f2, 242, &sidon_for_length(242).unwrap()).unwrap();
    let k50 = build_sidon_dc(
        PrimeField::new(5).unwrap(),
        50,
        &sidon_for_length(50).unwrap(),
    )
    .unwrap();
    for (i, code) in [k18, k242, k50].iter().enumerate() {
        let decoded = design_postcondition(code, 100 + i as u64);
        assert!(decoded > 1000, "only {decoded} inputs decoded");
    }
}

#[test]
fn design_decoder_matches_nearest_codeword_k18() {
    let code = build_sidon_dc(
        PrimeField::binary(),
        18,
        &SidonSet::new(vec![0, 7, 13], 18).unwrap(),
    )
    .unwrap();
    let g = code.generator_code();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..40 {
        let c = code.encode(&random_word(&mut rng, 2, 18)).unwrap();
        for p in [rng.gen_range(0..36), rng.gen_range(0..36)] {
            let mut w = c.clone();
            w[p] ^= 1;
            let near = nearest_codeword(&g, &w, B).unwrap();
            assert_eq!(near.codeword, c);
            assert_eq!(code.decode(&w).codeword(), Some(&near.codeword[..]));
        }
    }
}

#[test]
fn w19_decoder_matches_nearest_codeword() {
    let s = SidonSet::new(vec![1, 8, 14], 19).unwrap();
    let source = build_sidon_dc(PrimeField::binary(), 19, &s).unwrap();
    let pair = WeldonPair::new(TCirculantCode::from_sidon_dc(&source, B).unwrap()).unwrap();
    let g = pair.weldon.generator_code();
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    for _ in 0..25 {
        let m = random_word(&mut rng, 2, 18);
        let c = weldon_encode(&pair.weldon, &m).unwrap();
        let mut w = c.clone();
        w[rng.gen_range(0..36)] ^= 1;
        let near = nearest_codeword(&g, &w, B).unwrap();
        assert_eq!(near.codeword, c);
        let out = weldon_decode(&pair.weldon, &pair.source, &w).unwrap();
        assert_eq!(out.codeword(), Some(&c[..]));
        assert_eq!(out.message(), Some(&m[..]));
    }
}

#[test]
fn folding_lifted_codewords_reproduces_weldon_encoding() {
    let f = PrimeField::binary();
    for (k, set) in [(3usize, vec![0, 1]), (19, vec![1, 8, 14])] {
        let source = build_sidon_dc(f, k, &SidonSet::new(set, k).unwrap()).unwrap();
        let pair = WeldonPair::new(TCirculantCode::from_sidon_dc(&source, B).unwrap()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(k as u64);
        let samples: Vec<Vec<Symbol>> = if k == 3 {
            (0..4u32).map(|b| vec![b >> 1, b & 1]).collect()
        } else {
            (0..1000).map(|_| random_word(&mut rng, 2, k - 1)).collect()
        };
        for m in samples {
            let mut lifted = m.clone();
            lifted.push(0);
            let c = source.encode(&lifted).unwrap();
            let mut folded = m.clone();
            folded.extend(fold_word(f, &c[k..]));
            assert_eq!(folded, weldon_encode(&pair.weldon, &m).unwrap());
        }
    }
}

#[test]
fn fold_weight_bounds_balanced_weight_sampled() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..10_000 {
        let q = [2u32, 3, 5][rng.gen_range(0..3)];
        let k = [11usize, 19][rng.gen_range(0..2)];
        let f = PrimeField::new(q).unwrap();
        let c = random_word(&mut rng, q, k);
        let naive = (0..q)
            .map(|a| c.iter().filter(|&&x| x != a).count())
            .min()
            .unwrap();
        assert_eq!(balanced_weight(f, &c), naive);
        assert!(hamming_weight(&fold_word(f, &c)) >= naive);
    }
}
