//! Points at infinity of polynomial and regular images: exact projective limits,
//! quasi-polynomial classification, bridging-map constructions and a sampler for the
//! set at infinity.

pub mod bridge;
pub mod classifier;
pub mod cli;
pub mod error;
pub mod parser;
pub mod polyring;
pub mod projective;
pub mod sampler;

pub use error::{Error, ParseError, Pos, Result};
