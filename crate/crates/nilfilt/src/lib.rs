//! Exact computer algebra for nilpotent point structures: a Groebner kernel,
//! the full ideal calculus, the three canonical colon-ideal filtrations of a
//! pair (I, J), verification of the cuspidal families, and the step-by-step
//! construction engine that synthesizes cuspidal ideals from functional
//! choices.

pub mod construct;
pub mod error;
pub mod filtration;
pub mod groebner;
pub mod ideal;
pub mod linalg;
pub mod oracle;
pub mod poly;
pub mod ring;
pub mod scalar;

pub use error::{Error, Result};
pub use groebner::{buchberger, normal_form, GroebnerBasis};
pub use ideal::{subquotient_dim, Ideal, Limits, QuotientBasis, SubquotientBasis};
pub use poly::Polynomial;
pub use ring::{cmp_monomials, Monomial, MonomialOrder, Ring};
pub use scalar::{Field, Scalar};
