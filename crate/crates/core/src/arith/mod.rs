//! Exact arithmetic foundation: coefficient fields, dense polynomials and
//! rational functions over Q and F_p.

pub mod field;
pub mod poly;
pub mod ratfun;

pub use field::{factorial_valuation, int_valuation, rat_valuation, Field, Fp, Rationals};
pub use poly::{poly_gcd, poly_lcm, squarefree_decomposition, Poly};
pub use ratfun::{reduce_poly_mod_p, reduce_ratfun_mod_p, RatFun};
