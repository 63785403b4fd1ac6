//! Exact arithmetic substrate: arbitrary-precision rationals, integer
//! polynomials, rational functions, and exact rational linear algebra.
//!
//! Everything here is immutable after construction and all operations
//! are pure; values can be shared freely between threads.

mod matrix;
mod poly;
mod ratfun;

pub use matrix::{
    exact_nullity, exact_rank, fraction_free_nullity, integer_nullity, integer_nullity_dense,
    Matrix, SparseIntRows,
};
pub use poly::{geometric_sum_poly, Polynomial};
pub use ratfun::{
    rat_from_string, rat_to_decimal12, rat_to_string, ratfun_eval, EvalError, RationalFunction,
};
