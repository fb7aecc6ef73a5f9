//! Essentially isolated determinantal singularities: Groebner-basis tools,
//! determinantal varieties, polar multiplicities and hyperplane sections.

pub mod detvar;
pub mod error;
pub mod field;
pub mod groebner;
pub mod ideal;
pub mod invariants;
pub mod linear;
pub mod matrix;
mod modular;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod random;
pub mod sections;
pub mod ring;
pub mod subst;

pub use detvar::{DetVariety, SmoothabilityClass, SmoothingFamily};
pub use error::{AlgebraError, Error, ParseError};
pub use field::{Field, Fp, Q};
pub use invariants::{InvariantReport, Settings};
pub use ideal::Ideal;
pub use linear::LinearForm;
pub use matrix::PolyMatrix;
pub use monomial::{Monomial, MonomialOrder};
pub use poly::Poly;
pub use sections::{GeneralityReport, Verdict};
pub use ring::{Limits, Ring};
pub use subst::{Substitute, Substitution};
