//! Sparse multivariate polynomials over a [`Field`](crate::field::Field).

mod monomial;
mod order;
mod parse;
mod polynomial;
mod ring;

pub use monomial::{Exponents, Monomial};
pub use order::{compare, MonomialOrder};
pub use parse::{parse_polynomial, parse_polynomial_at};
pub use polynomial::{poly_arith, ArithOp, Polynomial, Term};
pub use ring::PolynomialRing;

