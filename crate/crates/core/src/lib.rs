//! Generalized cyclotomic polynomials over regular systems of divisors.
//!
//! A regular system `A` assigns to each `n` a set `A(n)` of divisors. A
//! divisor set `S` selects which `A`-gcds are admitted. From the pair one
//! builds `Phi_(A,S,n)`, the polynomial whose roots are the `zeta_n^j` with
//! `(j, n)_A in S`, together with its Möbius function, Ramanujan sums,
//! coefficient formulas and the Menon-type identities tying them together.

pub mod arith;
pub mod characters;
pub mod coefficients;
pub mod cyclo_int;
pub mod cyclotomic;
pub mod divisor_set;
pub mod error;
pub mod identities;
pub mod numeric;
pub mod poly;
pub mod scalar;
pub mod system;

pub use characters::{enumerate_characters, DirichletCharacter, DirichletGroup};
pub use cyclo_int::CycloInt;
pub use cyclotomic::{cyclotomic, inverse_cyclotomic, phi_a, phi_as, q_star};
pub use divisor_set::DivisorSet;
pub use error::{Error, Result, Violation};
pub use identities::{Identity, VerificationReport};
pub use poly::{Poly, RationalFunctionProduct};
pub use scalar::{Coefficient, MpFloat, Real};
pub use system::RegularSystem;

/// Integer polynomial with arbitrary-precision coefficients.
pub type IntPolynomial = Poly<num_bigint::BigInt>;
/// Exact element of a cyclotomic ring with arbitrary-precision coefficients.
pub type CyclotomicInteger = CycloInt<num_bigint::BigInt>;
