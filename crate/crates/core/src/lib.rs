//! Certified re-derivation of the explicit constants behind zero-gap and
//! S(t)-moment bounds for the Riemann zeta function, plus a desk-scale
//! numerical companion: zero isolation, S(t) and its integral, moment
//! integrals of S-differences, and the weighted prime sums the bounds rest
//! on.

pub mod cli;
pub mod config;
pub mod constants;
pub mod error;
pub mod num;
pub mod primes;
pub mod moments;
pub mod report;
pub mod zeros;
pub mod zeta;

pub use error::{ConstError, MomentError, NumError, PrimeError, ZetaError, ZerosError};
