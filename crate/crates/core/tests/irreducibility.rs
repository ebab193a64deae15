//! `p_k` irreducibility against a Berlekamp-matrix oracle: a squarefree `f`
//! of degree `n` over `F_q` is irreducible iff `Q - I` has nullity 1, where
//! row `i` of `Q` is `x^(q i) mod f`.

use dccodes::algebra::{is_prime, is_primitive_root, Poly, PrimeField};

/// `x^e mod f` by repeated multiplication by `x`; `f` monic, low-first.
fn x_pow_mod(e: usize, f: &[u32], q: u32) -> Vec<u32> {
    let n = f.len() - 1;
    let mut r = vec![0u32; n];
    r[0] = 1;
    for _ in 0..e {
        let top = r[n - 1];
        for i in (1..n).rev() {
            r[i] = r[i - 1];
        }
        r[0] = 0;
        for (ri, &fi) in r.iter_mut().zip(f) {
            *ri = (*ri + q - top * fi % q) % q;
        }
    }
    r
}

fn rank_mod(mut rows: Vec<Vec<u32>>, q: u32) -> usize {
    let inv = |a: u32| (1..q).find(|&b| a * b % q == 1).unwrap();
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let s = inv(rows[rank][c]);
        for v in rows[rank].iter_mut() {
            *v = *v * s % q;
        }
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[c] != 0 {
                let m = row[c];
                for (x, &p) in row.iter_mut().zip(&pivot) {
                    *x = (*x + q * q - m * p % q) % q;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn berlekamp_irreducible(f: &[u32], q: u32) -> bool {
    let n = f.len() - 1;
    // p_k' = sum i x^(i-1); gcd(p_k, p_k') = 1 exactly when k is not 0 mod q.
    let rows: Vec<Vec<u32>> = (0..n)
        .map(|i| {
            let mut row = x_pow_mod(q as usize * i, f, q);
            row[i] = (row[i] + q - 1) % q;
            row
        })
        .collect();
    n - rank_mod(rows, q) == 1
}

#[test]
fn primitive_root_implies_irreducible_pk() {
    for q in [2u32, 3, 5] {
        let field = PrimeField::new(q).unwrap();
        for k in (3..=40u64).filter(|&k| is_prime(k) && k != u64::from(q)) {
            let f = vec![1u32; k as usize];
            let oracle = berlekamp_irreducible(&f, q);
            let lib = Poly::all_ones(field, k as usize).is_irreducible().unwrap();
            assert_eq!(lib, oracle, "q={q}, k={k}");
            if is_primitive_root(u64::from(q), k).unwrap() {
                assert!(oracle, "p_{k} reducible over F_{q}");
            }
        }
    }
}

#[test]
fn oracle_sanity() {
    assert!(berlekamp_irreducible(&[1, 1, 1], 2));
    assert!(!berlekamp_irreducible(&[1, 1, 1, 1, 1, 1, 1], 2));
    assert!(berlekamp_irreducible(&[1, 1, 0, 1], 2));
    assert!(!berlekamp_irreducible(&[2, 0, 1], 3));
}
