//! Exact L²-invariants of tree lattices and Chevalley groups over local
//! function fields, together with a spectral approximation harness that
//! compares Hecke-algebra spectral measures against their finite-quotient
//! analogues.
//!
//! The crate is organised around the pipeline
//!
//! ```text
//! exactmath  --  arbitrary-precision rationals, integer polynomials,
//!                rational functions, exact nullspace dimensions
//! coxeter    --  exponents, Poincaré series, Euler characteristics,
//!                L²-Betti numbers and covolumes per Chevalley type
//! hecke      --  the integral Hecke algebra of the (q+1)-regular tree:
//!                double cosets indexed by radius, convolution, trace
//! quotient   --  finite weighted models of K\G/Γ: operator assembly,
//!                the functionals φ and φᵉ, spectral measures, nullities
//! farber     --  generators of Farber-like sequences of tree lattices,
//!                girth and injectivity statistics, residual-chain mode
//! approx     --  convergence reports, the log-determinant counting
//!                bound, Betti-ratio and joint-moment experiments
//! ```
//!
//! All structural quantities (traces, functionals, kernel dimensions,
//! Euler characteristics) are computed over the rationals with no
//! rounding; floating point enters only when individual eigenvalues of a
//! finite operator are displayed, and every float spectrum is
//! cross-checked against exact moment data.

pub mod approx;
pub mod coxeter;
pub mod exactmath;
pub mod farber;
pub mod hecke;
pub mod quotient;

pub use num_bigint::BigInt;

/// Exact rational scalar used for every structural quantity.
pub type Rat = num_rational::BigRational;

/// Integer polynomials in one variable (the `t` of Poincaré series).
pub type IntPolynomial = exactmath::Polynomial<BigInt>;

/// Polynomials over the rationals, used internally for gcd computations.
pub type RatPolynomial = exactmath::Polynomial<Rat>;

/// Dense matrix of exact rationals.
pub type RatMatrix = exactmath::Matrix<Rat>;

/// Shorthand for an exact rational from an integer pair.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Shorthand for an exact rational integer.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}
