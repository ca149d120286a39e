//! Exact sparse polynomials over grid variables `x[i,j]`.

pub mod field;
pub mod groebner;
pub mod monomial;
pub mod polynomial;
pub mod text;

pub use field::{Field, Fp, PrimeModulus, Rational, DEFAULT_PRIME};
pub use groebner::{buchberger, is_groebner_basis, is_reduced, normal_form, saturate, GroebnerBasis, IdealPresentation};
pub use monomial::{Grid, Monomial, TermOrder, VariableId};
pub use polynomial::{antidiagonal, minor, Polynomial};
pub use text::parse_polynomial;
