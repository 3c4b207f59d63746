//! Exact polynomial arithmetic over Q in the simple-root variables.

mod gcd;
mod linear;
mod matrix;
mod poly;
mod ratfn;

pub use gcd::{poly_gcd, poly_lcm};
pub use linear::{divide_by_linear, reduce_mod_linear, LinearForm};
pub use matrix::{from_poly_matrix, identity, is_identity, mat_mul, ratfn_matrix_inverse, transpose, RatMatrix};
pub use poly::{graded_monomials, q, q_frac, Monomial, Polynomial, Q};
pub use ratfn::RationalFunction;
