//! Exact computer algebra for fields with operators given by a finite
//! commutative algebra `B`: arithmetic over `F_q`, `k(y1..ym)` and p-th-root
//! towers, structure-constant algebras, operators, prolongations and
//! Gröbner-basis elimination.

pub mod algebra;
pub mod basefield;
pub mod error;
pub mod groebner;
pub mod io;
pub mod linalg;
pub mod linear;
pub mod operator;
pub mod scheme;

pub use error::{Error, Result};
