//! Arithmetic for small finite fields `GF(p^k)` (orders up to `2^24`) and a
//! verification toolkit for three families of permutation trinomials over
//! cubic extensions `F_{q^3}/F_q`, together with their closed-form
//! compositional inverses.
//!
//! The crate is organised bottom-up:
//!
//! * [`gf`] — prime-power fields as `GF(p)[t]` modulo a deterministically
//!   chosen irreducible, with element enumeration, generators, subfield
//!   membership, and an on-disk modulus cache.
//! * [`tower`] — the cubic-extension view: Frobenius `x ↦ x^q`, linearized
//!   maps `c0·x + c1·x^q + c2·x^{q²}`, cube roots of unity, subfield units.
//! * [`poly`] — sparse/dense polynomials, full-domain evaluation tables,
//!   permutation checking, brute-force inversion, Lagrange interpolation,
//!   Sylvester resultants with a product-formula cross-check.
//! * [`families`] — the three trinomial families, their permutation
//!   criteria, piecewise and single-formula inverses, and the quartic
//!   resultant factorizations behind them.
//! * [`localmethod`] — recovering an inverse from coordinate projections:
//!   certify that a combiner `F` satisfies `F(ψ₁(f(x)),…,ψ_t(f(x))) = x`
//!   and extract the induced inverse table.
//! * [`cli`] — the report types and subcommand entry points used by the
//!   `permpoly` binary.
//!
//! # Examples
//!
//! Each major capability has a runnable example
//! (`cargo run -p permpoly --example <name>`):
//!
//! | name | demonstrates |
//! |------|--------------|
//! | `build_field` | constructing fields, enumeration order, generators |
//! | `verify_family` | exhaustive permutation checks for one family |
//! | `closed_form_inverse` | piecewise and rational inverse formulas |
//! | `local_method` | combiner certification and induced inverse tables |
//! | `resultant_oracle` | Sylvester resultants vs. the product formula |
//! | `factored_resultant` | the quartic resultant factorizations |
//! | `interpolated_inverse` | Lagrange interpolation of an inverse map |
//! | `enumerate_families` | parameter sweeps with predicted outcomes |

pub mod cli;
pub mod families;
pub mod gf;
pub mod localmethod;
pub mod poly;
pub mod tower;

/// Crate-wide error type.
///
/// Arithmetic on mismatched operands (different fields) is a programming
/// error and panics instead; `Error` covers conditions a caller can
/// legitimately hit with well-typed inputs.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// The characteristic given is not a prime number.
    #[error("{0} is not prime")]
    NotPrime(u64),

    /// `p^k` exceeds the supported maximum order (`2^24`).
    #[error("field order {p}^{k} exceeds 2^24")]
    OrderTooLarge { p: u64, k: u32 },

    /// A polynomial expected to be irreducible over `GF(p)` is not.
    #[error("polynomial is not irreducible over GF({p}): {coeffs:?}")]
    NotIrreducible { p: u64, coeffs: Vec<u32> },

    /// Multiplicative inverse of the zero element was requested.
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,

    /// An operation required a nonzero polynomial.
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,

    /// Resultants require both inputs to have degree at least one.
    #[error("resultant requires degree >= 1, got degrees {0} and {1}")]
    ResultantDegree(isize, isize),

    /// Interpolation or scan size exceeded the configured guard.
    #[error("domain size {size} exceeds guard {guard}")]
    GuardExceeded { size: u64, guard: u64 },

    /// A formula's side condition failed where theory says it cannot.
    #[error("internal contract violated: {0}")]
    Contract(String),

    /// Invalid or out-of-range construction parameters.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// A textual polynomial, element, or selector failed to parse.
    #[error("parse error: {0}")]
    Parse(String),

    /// The modulus cache file is malformed or holds a non-irreducible entry.
    #[error("modulus cache: {0}")]
    Cache(String),

    /// Underlying I/O failure (cache file access).
    #[error(transparent)]
    Io(#[from] std::io::Error),

    /// An inverse was requested for a map that is not a bijection.
    #[error("map is not a permutation of the field")]
    NotAPermutation,
}

/// Convenient alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
