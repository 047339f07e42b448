//! Brauer–Manin computations for diagonal cubic surfaces over Q.

pub mod arith;
pub mod eisenstein;
pub mod padic;
pub mod localsolve;
pub mod symbols;
pub mod surfaces;
pub mod invariants;
pub mod census;
pub mod verify;
