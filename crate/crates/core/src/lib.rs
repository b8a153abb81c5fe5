//! Cyclic cubic fields over Q, Eisenstein-integer cubic symbols, and the
//! one-level density of low-lying zeros of their L-functions.

pub mod arith;
pub mod classify;
pub mod density;
pub mod eisenstein;
pub mod error;
pub mod lfunc;
pub mod sum;
pub mod verify;

pub use error::{Error, Result};
