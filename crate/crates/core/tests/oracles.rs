//! Exhaustive distances and balanced profiles recomputed by a bitmask
//! enumeration that shares no code with the library scanner.

use dccodes::algebra::PrimeField;
use dccodes::code::{
    brute_force_balanced_profile, brute_force_distance, GeneratorMatrixCode, OracleBudget,
};
use dccodes::cyc_dc::build_rm_dc;
use dccodes::design_dc::build_sidon_dc;
use dccodes::sidon::SidonSet;
use dccodes::weldon::{TCirculantCode, WeldonPair};

const B: OracleBudget = OracleBudget::DEFAULT;

/// Basis rows as bitmasks; only binary codes of length <= 64.
fn masks(g: &GeneratorMatrixCode) -> Vec<u64> {
    assert_eq!(g.field().order(), 2);
    g.columns()
        .iter()
        .map(|c| {
            c.iter()
                .enumerate()
                .fold(0u64, |m, (i, &b)| m | (u64::from(b) << i))
        })
        .collect()
}

/// Minimum of `key` over all nonzero codewords, walking messages in Gray
/// code order so each step is one XOR.
fn gray_min(g: &GeneratorMatrixCode, key: impl Fn(u64) -> u32) -> u32 {
    let rows = masks(g);
    let mut word = 0u64;
    let mut best = u32::MAX;
    for i in 1u64..(1 << rows.len()) {
        word ^= rows[i.trailing_zeros() as usize];
        best = best.min(key(word));
    }
    best
}

fn weight(w: u64) -> u32 {
    w.count_ones()
}

/// `wt(c_0) + min(wt(c_1), block - wt(c_1))` for `t = 2` over `F_2`.
fn balanced2(block: usize) -> impl Fn(u64) -> u32 {
    let low = (1u64 << block) - 1;
    move |w| {
        let c1 = (w >> block).count_ones();
        (w & low).count_ones() + c1.min(block as u32 - c1)
    }
}

#[test]
fn sidon_dc_k18_distance_and_balanced_profile() {
    let s = SidonSet::new(vec![0, 7, 13], 18).unwrap();
    let code = build_sidon_dc(PrimeField::binary(), 18, &s).unwrap();
    let g = code.generator_code();
    let d = gray_min(&g, weight);
    assert_eq!(brute_force_distance(&g, B).unwrap(), Some(d as usize));
    assert!(2 * d >= 5, "distance {d} below 5/2");
    let bal = gray_min(&g, balanced2(18));
    assert_eq!(
        brute_force_balanced_profile(&g, 2, B).unwrap(),
        Some(bal as usize)
    );
    assert!(2 * bal >= 5, "balanced profile {bal} below min(5/2, 6)");
}

#[test]
fn w19_distance_over_all_messages() {
    let s = SidonSet::new(vec![1, 8, 14], 19).unwrap();
    let source = build_sidon_dc(PrimeField::binary(), 19, &s).unwrap();
    let pair = WeldonPair::new(TCirculantCode::from_sidon_dc(&source, B).unwrap()).unwrap();
    let g = pair.weldon.generator_code();
    assert_eq!(g.dimension(), 18);
    let d = gray_min(&g, weight);
    assert_eq!(brute_force_distance(&g, B).unwrap(), Some(d as usize));
    assert!(d >= 3);
}

#[test]
fn rm_dc_m4_distances_and_balanced_profile() {
    let dc = build_rm_dc(4).unwrap();
    let d = gray_min(&dc.base().generator_code(), weight);
    let d_perp = gray_min(&dc.dual().generator_code(), weight);
    assert!(d >= 7, "base distance {d}");
    assert_eq!(d_perp, 3);

    let g = dc.generator_code();
    let dist = gray_min(&g, weight);
    assert_eq!(brute_force_distance(&g, B).unwrap(), Some(dist as usize));
    assert!(dist as usize >= dc.d_prime());
    let bal = gray_min(&g, balanced2(15));
    assert_eq!(
        brute_force_balanced_profile(&g, 2, B).unwrap(),
        Some(bal as usize)
    );
    assert!(bal >= 3);
}
