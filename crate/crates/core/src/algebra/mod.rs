//! Field and polynomial machinery shared by every code family.

pub mod field;
pub mod gf2m;
pub mod number;
pub mod poly;
pub mod quotient;
pub mod ring;

use thiserror::Error;

pub use field::{FieldElement, FieldOp, PrimeField, Symbol};
pub use gf2m::BinaryExtensionField;
pub use number::{find_wozencraft_k, is_prime, is_primitive_root};
pub use poly::Poly;
pub use quotient::QuotientField;
pub use ring::{cyclic_mul, cyclic_mul_slices, cyclic_shift};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("operands from different fields F_{left} and F_{right}")]
    FieldMismatch { left: u32, right: u32 },
    #[error("symbol {value} is outside [0, {q})")]
    SymbolOutOfRange { value: u32, q: u32 },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("degree {degree} exceeds bound {bound}")]
    DegreeTooLarge { degree: usize, bound: usize },
    #[error("irreducibility is undefined for constant polynomials")]
    ConstantPolynomial,
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("{q} is not a primitive root modulo {k}")]
    NotPrimitiveRoot { q: u64, k: u64 },
    #[error("no prime k in [{from}, {limit}] has {q} as a primitive root")]
    SearchExhausted { q: u64, from: u64, limit: u64 },
    #[error("extension degree {0} outside 1..=20")]
    ExtensionDegreeOutOfRange(u32),
    #[error("p_{k}(x) is reducible over F_{q} although {q} is primitive mod {k}")]
    ReducibleModulus { q: u64, k: u64 },
}
