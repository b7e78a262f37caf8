//! Exact polynomial arithmetic over the rationals.

pub mod gcd;
pub mod laurent;
pub mod mpoly;
pub mod print;
pub mod rational;
pub mod shear;
pub mod univariate;

pub use gcd::{gcd, gcd_reduce, squarefree};
pub use laurent::{compose_path, LaurentPoly};
pub use mpoly::{Degree, MPoly, Monomial};
pub use rational::{parse_rat, rat, rat_to_string, ratio, Rat};
pub use univariate::UPoly;
