//! Exact computations with finite local algebras and the projective
//! hypersurfaces of their induced additive actions.

pub mod error;
pub mod catalog;
pub mod groebner;
pub mod hassett;
pub mod invariants;
pub mod linalg;
pub mod localalgebra;
pub mod poly;
pub mod rational;
pub mod transitivity;

pub use error::{Error, Result};
pub use poly::{parse_ideal, parse_polynomial, Monomial, MonomialOrder, Polynomial, Ring};
pub use rational::Rational;
pub use groebner::{buchberger, ideal_equal, GroebnerBasis, Ideal};
pub use localalgebra::{build_algebra, FiniteAlgebra, Subspace};
pub use hassett::{default_hpair, essential_variable_count, hypersurface_equation, HPair, HomogeneousForm};
