//! Exact resultant calculus on partially symmetrized polynomial rings,
//! with certified Bezout/projector machinery, dual-number Hensel lifting,
//! coset-module trace identities at q = 1, and weak-adequacy analysis of
//! finite matrix groups.
//!
//! All arithmetic is exact (big rationals, cyclotomic fields, residue
//! rings); nothing here floats.

pub mod error;
pub mod ring;

pub mod adequacy;
pub mod cyclo;
pub mod hecke;
pub mod hensel;
pub mod jsonio;
pub mod local;
pub mod matrix;
pub mod poly;
pub mod resultant;
pub mod sylvester;
pub mod symring;
pub mod unipoly;

pub use error::{Error, Result};
