//! Frobenius closures, Frobenius test exponents, limit closures and
//! local-cohomology invariants for quotients of polynomial rings over F_p.

pub mod duality;
pub mod error;
pub mod field;
pub mod frobenius;
pub mod groebner;
pub mod harness;
pub mod ideal;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod sequences;

pub use error::{AlgebraError, Result};
pub use field::PrimeField;
pub use groebner::{buchberger, normal_form, syzygies, FreeVector, GroebnerBasis, ModuleOrder};
pub use ideal::{preimage, Dimension, Ideal, QuotientRing};
pub use monomial::{Monomial, MonomialOrder};
pub use parse::parse_polynomial;
pub use poly::{Degree, PolyRing, Polynomial};
