//! Extended-precision plumbing: log-domain signed reals, outward-rounded
//! enclosures, Cin / log-factorial, and a bisection root finder.

pub mod big;
pub mod bound;
pub mod kahan;
pub mod logreal;
pub mod quad;
pub mod roots;
pub mod special;

pub use big::Ctx;
pub use kahan::Kahan;
pub use bound::RigorousBound;
pub use logreal::{LogReal, Round};
pub use quad::{kronrod15, kronrod15_panels};
pub use roots::find_root;
pub use special::{cin, factorial_bound, ln_factorial, ln_factorial_bf};
