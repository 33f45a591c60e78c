pub mod error;
pub mod field;
pub mod groebner;
pub mod interp;
pub mod circuit;
pub mod elusive;
pub mod poly;
pub mod resultant;

pub use error::{Error, Result};
pub use field::{CycloElem, FieldElem, Rational};
pub use poly::{Monomial, MonomialOrder, Poly, PolyMap};
