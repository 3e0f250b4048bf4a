//! Conversion between differential operators and P-recurrences on series
//! coefficients, and exact unrolling.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::field::{Field, Rationals};
use crate::arith::poly::{poly_gcd, Poly};
use crate::error::{Error, Result};
use crate::ore::DiffOp;
use crate::series::TruncatedSeries;

/// A linear recurrence with polynomial coefficients:
/// sum_{t=0..s} p_t(k) u_{k+t} = 0 for every k >= k_start, where terms with a
/// negative sequence index are zero. `initial` supplies u_0, u_1, ...;
/// unrolling solves for the top index at each step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PRecurrence {
    coeffs: Vec<Poly<Rationals>>,
    k_start: i64,
    initial: Vec<BigRational>,
}

impl PRecurrence {
    pub fn new(coeffs: Vec<Poly<Rationals>>, k_start: i64, initial: Vec<BigRational>) -> Self {
        assert!(
            coeffs.last().map_or(false, |p| !p.is_zero()),
            "leading recurrence coefficient must be nonzero"
        );
        PRecurrence { coeffs, k_start, initial }
    }

    /// Order s: the relation couples u_k .. u_{k+s}.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Poly<Rationals>] {
        &self.coeffs
    }

    pub fn k_start(&self) -> i64 {
        self.k_start
    }

    pub fn initial(&self) -> &[BigRational] {
        &self.initial
    }

    pub fn with_initial(mut self, initial: Vec<BigRational>) -> Self {
        self.initial = initial;
        self
    }

    /// Indices k in [k_start, bound) where the leading coefficient vanishes;
    /// unrolling cannot pass these without explicit initial values.
    pub fn singular_indices(&self, bound: i64) -> Vec<i64> {
        let q = Rationals;
        let lead = self.coeffs.last().unwrap();
        (self.k_start..bound)
            .filter(|&k| q.is_zero(&lead.eval(&q.from_i64(k))))
            .collect()
    }
}

fn falling_factorial_poly(offset: i64, len: usize) -> Poly<Rationals> {
    // (k + offset)(k + offset - 1) ... , `len` factors, as a polynomial in k
    let q = Rationals;
    let mut acc = Poly::one(q);
    for r in 0..len as i64 {
        acc = acc.mul(&Poly::new(q, vec![q.from_i64(offset - r), q.one()]));
    }
    acc
}

/// Removes the common polynomial factor and integer content, and fixes the
/// sign so the leading polynomial has a positive leading coefficient.
fn normalize_coeffs(coeffs: &mut [Poly<Rationals>]) {
    let q = Rationals;
    let mut g = Poly::zero(q);
    for c in coeffs.iter() {
        g = poly_gcd(&g, c);
    }
    if !g.is_zero() && !g.is_one() {
        for c in coeffs.iter_mut() {
            *c = c.div_exact(&g);
        }
    }
    // clear denominators, divide by numerator gcd
    let mut den_lcm = BigInt::one();
    for c in coeffs.iter() {
        for a in c.coeffs() {
            den_lcm = den_lcm.lcm(a.denom());
        }
    }
    let mut num_gcd = BigInt::zero();
    for c in coeffs.iter() {
        for a in c.coeffs() {
            num_gcd = num_gcd.gcd(&(a * BigRational::from_integer(den_lcm.clone())).numer().clone());
        }
    }
    if num_gcd.is_zero() {
        num_gcd = BigInt::one();
    }
    let scale = BigRational::new(den_lcm, num_gcd);
    for c in coeffs.iter_mut() {
        *c = c.scale(&scale);
    }
    if coeffs.last().unwrap().leading_coeff().is_negative() {
        for c in coeffs.iter_mut() {
            *c = c.neg();
        }
    }
}

/// Recurrence satisfied by the coefficient sequence of every series solution
/// of `l`. Denominators are cleared internally.
pub fn operator_to_recurrence(l: &DiffOp<Rationals>) -> PRecurrence {
    assert!(!l.is_zero(), "recurrence of the zero operator");
    let q = Rationals;
    let l = l.clear_denominators();
    let polys = l.poly_coeffs().expect("denominators cleared");

    // term p_i(x) Dx^i applied to sum u_k x^k contributes
    // c_{i,j} (m + i - j)...(m + j - ... ) u_{m+i-j} to the x^m coefficient
    let mut s_min = i64::MAX;
    let mut s_max = i64::MIN;
    for (i, p) in polys.iter().enumerate() {
        for (j, c) in p.coeffs().iter().enumerate() {
            if !q.is_zero(c) {
                let s = i as i64 - j as i64;
                s_min = s_min.min(s);
                s_max = s_max.max(s);
            }
        }
    }
    let width = (s_max - s_min) as usize + 1;
    let mut coeffs = vec![Poly::zero(q); width];
    for (i, p) in polys.iter().enumerate() {
        for (j, c) in p.coeffs().iter().enumerate() {
            if q.is_zero(c) {
                continue;
            }
            let t = (i as i64 - j as i64 - s_min) as usize;
            // with k the lowest index in the relation, this term multiplies
            // u_{k+t} by c * (k + t)(k + t - 1)...(k + t - i + 1)
            let f = falling_factorial_poly(t as i64, i).scale(c);
            coeffs[t] = coeffs[t].add(&f);
        }
    }
    // drop identically-zero top rows (cannot happen for the true leading term,
    // but keep the invariant tight)
    while coeffs.last().map_or(false, |p| p.is_zero()) {
        coeffs.pop();
    }
    normalize_coeffs(&mut coeffs);
    PRecurrence { coeffs, k_start: s_min, initial: Vec::new() }
}

/// Unrolls the recurrence to `t` exact values. Requires initial values for at
/// least the indices not reachable by the relation; errors with the failing
/// index when the leading coefficient vanishes at a needed step.
pub fn recurrence_unroll(rec: &PRecurrence, t: usize) -> Result<TruncatedSeries<Rationals>> {
    let q = Rationals;
    let s = rec.order();
    let mut u: Vec<BigRational> = rec.initial.to_vec();
    u.truncate(t);
    let m0 = u.len();
    let first_reachable = rec.k_start + s as i64;
    assert!(
        m0 as i64 >= first_reachable,
        "need initial values up to index {first_reachable}"
    );
    for m in m0..t {
        let k = m as i64 - s as i64;
        let lead = rec.coeffs[s].eval(&q.from_i64(k));
        if q.is_zero(&lead) {
            return Err(Error::SingularIndex(m));
        }
        let mut acc = BigRational::zero();
        for (tt, p) in rec.coeffs.iter().enumerate().take(s) {
            let idx = k + tt as i64;
            if idx < 0 {
                continue;
            }
            let v = &u[idx as usize];
            if v.is_zero() {
                continue;
            }
            acc += p.eval(&q.from_i64(k)) * v;
        }
        u.push(-acc / lead);
    }
    Ok(TruncatedSeries::new(q, u, t))
}
