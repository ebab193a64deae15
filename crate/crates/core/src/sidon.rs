//! Sidon sets: integer sets whose pairwise differences are all distinct.

use std::collections::HashSet;

use thiserror::Error;

use crate::algebra::is_prime;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SidonError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("elements must be strictly increasing")]
    NotIncreasing,
    #[error("element {element} is not below the bound {bound}")]
    OutOfRange { element: usize, bound: usize },
    #[error("pairwise differences are not distinct")]
    NotSidon,
    #[error("length {0} is too small to hold a Sidon set of size 2 (need k >= 8)")]
    LengthTooSmall(usize),
}

/// Strictly increasing non-negative integers below `bound` with distinct
/// pairwise differences.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SidonSet {
    elements: Vec<usize>,
    bound: usize,
}

impl SidonSet {
    pub fn new(elements: Vec<usize>, bound: usize) -> Result<Self, SidonError> {
        if elements.windows(2).any(|w| w[0] >= w[1]) {
            return Err(SidonError::NotIncreasing);
        }
        if let Some(&element) = elements.iter().find(|&&e| e >= bound) {
            return Err(SidonError::OutOfRange { element, bound });
        }
        if !verify_sidon(&elements) {
            return Err(SidonError::NotSidon);
        }
        Ok(Self { elements, bound })
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Same elements, reinterpreted inside a larger interval `[0, bound)`.
    pub fn with_bound(&self, bound: usize) -> Result<Self, SidonError> {
        Self::new(self.elements.clone(), bound)
    }
}

/// Brute force over ordered pairs.
pub fn verify_sidon(set: &[usize]) -> bool {
    let mut seen = HashSet::new();
    for (i, &a) in set.iter().enumerate() {
        for (j, &b) in set.iter().enumerate() {
            if i != j && !seen.insert(a as i64 - b as i64) {
                return false;
            }
        }
    }
    true
}

/// The Erdos-Turan set `{2 p i + (i^2 mod p) : 0 <= i < p}` inside `[0, 2p^2)`.
pub fn sidon_erdos_turan(p: usize) -> Result<SidonSet, SidonError> {
    if !is_prime(p as u64) {
        return Err(SidonError::NotPrime(p as u64));
    }
    let elements = (0..p).map(|i| 2 * p * i + (i * i) % p).collect();
    SidonSet::new(elements, 2 * p * p)
}

/// Erdos-Turan set for the largest prime `p` with `2p^2 <= k`, re-bounded to
/// `[0, k)`.
pub fn sidon_for_length(k: usize) -> Result<SidonSet, SidonError> {
    if k < 8 {
        return Err(SidonError::LengthTooSmall(k));
    }
    let p = (2..)
        .take_while(|&p| 2 * p * p <= k)
        .filter(|&p| is_prime(p as u64))
        .last()
        .expect("k >= 8 admits p = 2");
    sidon_erdos_turan(p)?.with_bound(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn erdos_turan_examples() {
        assert_eq!(sidon_erdos_turan(2).unwrap().elements(), &[0, 5]);
        assert_eq!(sidon_erdos_turan(3).unwrap().elements(), &[0, 7, 13]);
        let s5 = sidon_erdos_turan(5).unwrap();
        assert_eq!(s5.len(), 5);
        assert!(s5.elements().iter().all(|&e| e < 50));
        assert!(matches!(sidon_erdos_turan(4), Err(SidonError::NotPrime(4))));
    }

    #[test]
    fn verify_examples() {
        assert!(verify_sidon(&[0, 7, 13]));
        assert!(!verify_sidon(&[0, 1, 2]));
        assert!(verify_sidon(&[]));
        assert!(verify_sidon(&[4]));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(SidonSet::new(vec![0, 1, 2], 5), Err(SidonError::NotSidon));
        assert_eq!(SidonSet::new(vec![3, 1], 5), Err(SidonError::NotIncreasing));
        assert_eq!(
            SidonSet::new(vec![0, 7, 13], 13),
            Err(SidonError::OutOfRange {
                element: 13,
                bound: 13
            })
        );
    }

    #[test]
    fn for_length_examples() {
        assert_eq!(sidon_for_length(18).unwrap().elements(), &[0, 7, 13]);
        assert_eq!(sidon_for_length(50).unwrap().len(), 5);
        assert_eq!(sidon_for_length(242).unwrap().len(), 11);
        assert_eq!(sidon_for_length(7), Err(SidonError::LengthTooSmall(7)));
    }

    #[test]
    fn erdos_turan_is_sidon_up_to_101() {
        for p in (2..=101).filter(|&p| is_prime(p as u64)) {
            let s = sidon_erdos_turan(p).unwrap();
            assert_eq!(s.len(), p);
            assert!(verify_sidon(s.elements()));
        }
    }

    #[test]
    fn for_length_size_bound() {
        for k in (8..=10_000).step_by(7).chain([8, 9, 10_000]) {
            let s = sidon_for_length(k).unwrap();
            assert!(s.elements().iter().all(|&e| e < k));
            let floor_root = ((k / 2) as f64).sqrt().floor() as usize;
            assert!(2 * s.len() >= floor_root, "k={k} size={}", s.len());
        }
    }
}
