//! Exact multivariate polynomials with optional symbolic parameters.

mod monomial;
mod parse;
mod polynomial;
mod ring;

pub use monomial::Monomial;
pub use parse::{parse_ideal, parse_polynomial};
pub use polynomial::Polynomial;
pub use ring::{MonomialOrder, Ring};
