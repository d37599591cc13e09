//! Exact degrees and Galois group structures of the cyclotomic-Kummer
//! extensions K(ζ_M, ᴺ√G)/K(ζ_M) of a rational function field K = k(t),
//! for k = ℚ or k = 𝔽_p, together with an independent brute-force oracle.

pub mod algebra;
pub mod constfield;
pub mod error;
pub mod factor;
pub mod funcfield;
pub mod kummer;
pub mod lattice;
pub mod verify;

pub use error::{Error, Result};
