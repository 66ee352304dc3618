//! Exact zeta polynomials of Lie rings over prime fields.
//!
//! For a Lie ring `L` with integer structure constants and a prime `p`, the
//! coefficient of `t^k` counts the subalgebras, ideals, or graded ideals of
//! `L ⊗ F_p` of index `p^k`. Subspaces are enumerated as canonical echelon
//! matrices ([`enumerate`]); class-2 ideal counts have a much faster route
//! through the derived subalgebra ([`class2`]). [`zeta`] holds the
//! closed-form oracles and the uniformity fits.

pub mod class2;
pub mod enumerate;
pub mod error;
pub mod ffield;
pub mod liealg;
pub mod zeta;

pub use enumerate::{count_zeta, CountOptions, CountResult, Flavor, Method};
pub use error::{Error, Result};
pub use ffield::{FieldElem, Prime, Rational};
pub use liealg::{catalog, parse_presentation, LieRing, Params};
pub use zeta::ZetaPoly;
