//! Exact verification of the exceptional-collection / vanishing-cycle
//! correspondence for the minimal Fano threefolds P3, Q, V5 and V22.
//!
//! The crate is `no_std` (it needs `alloc`). All arithmetic is over
//! arbitrary-precision rationals; nothing is ever rounded.
//!
//! - [`matrix`]: dense exact matrices over ℚ
//! - [`lattice`]: bilinear forms, semiorthonormal Gram matrices, radicals
//! - [`reflection`]: reflections, transvections, Coxeter products, local systems
//! - [`modular`]: Γ₀(N), the symmetric-square lift, Fricke involution
//! - [`cases`]: the four built-in datasets and their schema
//! - [`verifier`]: the end-to-end certificate, vector search, fuzzers

#![no_std]

extern crate alloc;

pub mod cases;
pub mod error;
pub mod lattice;
pub mod matrix;
pub mod modular;
pub mod reflection;
pub mod report;
pub mod verifier;

pub use cases::{builtin_case, builtin_cases, validate_case, FanoCase, BUILTIN_NAMES};
pub use error::{Error, Result};
pub use lattice::{BilinearSpace, FormKind, SeminormalGram};
pub use matrix::{ExactMatrix, Rational};
pub use modular::{Gamma0Element, QuadraticSurd, PAIR_LABELS};
pub use report::{CheckOutcome, VerificationReport};
pub use verifier::{fuzz_coxeter, fuzz_psi, search_vectors, verify_case, VectorTuple, CHECK_GROUPS};
