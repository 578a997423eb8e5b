//! Exact linear algebra over functor categories `Fct(Λ, Vect)` and their
//! filtered subcategories.

pub mod complex;
pub mod error;
pub mod filtered;
pub mod functor;
pub mod generate;
pub mod harness;
pub mod io;
pub mod linalg;
pub mod poset;
pub mod rees;
pub mod scalar;
pub mod verify;
pub mod tensor;

pub use error::{Error, Result};
pub use poset::{IndexMonoid, IndexPoset};
pub use scalar::{Field, Rat};

pub type RatMatrix = linalg::Matrix<Rat>;
pub type RatFct = functor::FctObj<Rat>;
pub type RatFctMor = functor::FctMor<Rat>;
