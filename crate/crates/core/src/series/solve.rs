//! Power series solving at an ordinary point and hypergeometric series.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::arith::field::{Field, Rationals};
use crate::error::{Error, Result};
use crate::ore::DiffOp;
use crate::series::TruncatedSeries;

/// Unique series solution mod x^t of `l` at the ordinary point 0, given the
/// first deg(l) coefficients. Over F_p the unrolling can hit a vanishing
/// factorial factor, reported as a singular index.
pub fn series_solve<F: Field>(
    l: &DiffOp<F>,
    initial: &[F::Elem],
    t: usize,
) -> Result<TruncatedSeries<F>> {
    assert!(!l.is_zero(), "solving the zero operator");
    let field = initial.first().map(|_| ()).map_or_else(
        || l.coeffs().first().unwrap().field(),
        |_| l.coeffs().first().unwrap().field(),
    );
    let n = l.degree().unwrap();
    assert!(n >= 1, "operator must have positive order");
    assert_eq!(initial.len(), n, "need exactly deg L initial values");
    let monic = l.monicize();
    for c in monic.coeffs() {
        if c.has_pole_at(&field.zero()) {
            return Err(Error::NotOrdinaryPoint);
        }
    }
    // clear denominators of the monic operator; the x^0 coefficient of the
    // cleared leading polynomial is then nonzero
    let cleared = monic.clear_denominators();
    let polys = cleared.poly_coeffs().expect("denominators cleared");
    let f0 = polys[n].coeff(0);
    debug_assert!(!field.is_zero(&f0));

    let mut u: Vec<F::Elem> = initial.to_vec();
    u.truncate(t);
    for target in n..t {
        let m = (target - n) as i64;
        // coefficient of u_target: f0 * (m+n)(m+n-1)...(m+1)
        let mut lead = f0.clone();
        for r in 0..n as i64 {
            lead = field.mul(&lead, &field.from_i64(m + n as i64 - r));
        }
        if field.is_zero(&lead) {
            return Err(Error::SingularIndex(target));
        }
        let mut acc = field.zero();
        for (i, p) in polys.iter().enumerate() {
            for (j, c) in p.coeffs().iter().enumerate() {
                if field.is_zero(c) {
                    continue;
                }
                let idx = m + i as i64 - j as i64;
                if idx < 0 || idx as usize >= target {
                    continue;
                }
                // falling factorial (idx)(idx-1)...(idx-i+1)
                let mut fall = field.one();
                for r in 0..i as i64 {
                    fall = field.mul(&fall, &field.from_i64(idx - r));
                }
                if field.is_zero(&fall) {
                    continue;
                }
                let term = field.mul(&field.mul(c, &fall), &u[idx as usize]);
                acc = field.add(&acc, &term);
            }
        }
        u.push(field.neg(&field.div(&acc, &lead)));
    }
    Ok(TruncatedSeries::new(field, u, t))
}

/// Generalized hypergeometric series: coefficients by the order-1 ratio
/// (a_1+k)...(a_{s+1}+k) / ((b_1+k)...(b_s+k)(k+1)).
pub fn hypergeom_series(
    upper: &[BigRational],
    lower: &[BigRational],
    t: usize,
) -> Result<TruncatedSeries<Rationals>> {
    if upper.is_empty() {
        return Err(Error::EmptyParams);
    }
    for b in lower {
        if b.is_integer() && !b.is_positive() {
            return Err(Error::LowerParameterNonpositiveInteger);
        }
    }
    let mut coeffs = Vec::with_capacity(t);
    let mut u = BigRational::one();
    for k in 0..t {
        coeffs.push(u.clone());
        if k + 1 == t {
            break;
        }
        let kq = BigRational::from_integer(BigInt::from(k as u64));
        let mut num = BigRational::one();
        for a in upper {
            num *= a + &kq;
        }
        let mut den = &kq + BigRational::one();
        for b in lower {
            den *= b + &kq;
        }
        u = u * num / den;
    }
    Ok(TruncatedSeries::new(Rationals, coeffs, t))
}
