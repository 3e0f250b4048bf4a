//! Exact computer algebra for linear differential operators over Q(x) and
//! F_p(x): Ore arithmetic, p-curvatures with Cartier-lemma witnesses,
//! algebraicity criteria, prime scans and D-finite power series tools.

pub mod arith;
pub mod criteria;
pub mod error;
pub mod matrix;
pub mod ore;
pub mod pcurvature;
pub mod primes;
pub mod series;

pub use error::{Error, Result};
