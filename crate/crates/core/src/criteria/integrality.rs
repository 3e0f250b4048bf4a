//! Integrality checkers: the Eisenstein rescaling criterion on a coefficient
//! prefix, and p-integrality of series solutions at an ordinary point.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::field::{rat_valuation, Rationals};
use crate::error::{Error, Result};
use crate::ore::DiffOp;
use crate::series::{series_solve, TruncatedSeries};

/// Outcome of the Eisenstein check on the examined prefix. A `Pass` is
/// heuristic (later terms may still misbehave); a `Fail` is definitive for
/// the prefix and the bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EisensteinOutcome {
    /// The smallest N <= bound with N^k a_k integral for all examined k >= 1.
    Pass { n: BigInt },
    /// No admissible N <= bound; witnesses are primes whose required power
    /// exceeds the bound.
    Fail { witness_primes: Vec<u64> },
}

/// Searches for N such that y(Nx) - y(0) has integer coefficients, over the
/// first `coeffs.len()` terms, among N <= n_bound. The minimal candidate is
/// the product over primes q of q^max(ceil(-v_q(a_k)/k)).
pub fn eisenstein_check(coeffs: &[BigRational], n_bound: &BigInt) -> Result<EisensteinOutcome> {
    if coeffs.len() < 2 {
        return Err(Error::TruncationTooSmall);
    }
    // primes dividing some denominator, with the exponent N must carry
    let mut required: Vec<(u64, u64)> = Vec::new();
    for (k, a) in coeffs.iter().enumerate().skip(1) {
        if a.is_zero() {
            continue;
        }
        let mut den = a.denom().clone();
        let mut q = 2u64;
        while den > BigInt::one() {
            if den.is_multiple_of(&BigInt::from(q)) {
                let mut v = 0u64;
                while den.is_multiple_of(&BigInt::from(q)) {
                    den /= BigInt::from(q);
                    v += 1;
                }
                // need v_q(N) >= ceil(v / k)
                let need = v.div_ceil(k as u64);
                match required.iter_mut().find(|(p, _)| *p == q) {
                    Some((_, e)) => *e = (*e).max(need),
                    None => required.push((q, need)),
                }
            }
            q += 1;
            if BigInt::from(q) * BigInt::from(q) > den && den > BigInt::one() {
                // leftover prime factor
                let p = den.to_string().parse::<u64>().unwrap_or(u64::MAX);
                match required.iter_mut().find(|(pp, _)| *pp == p) {
                    Some((_, e)) => *e = (*e).max(1),
                    None => required.push((p, 1)),
                }
                break;
            }
        }
    }
    required.sort();
    let mut n = BigInt::one();
    for &(q, e) in &required {
        n *= BigInt::from(q).pow(e as u32);
    }
    if &n <= n_bound {
        Ok(EisensteinOutcome::Pass { n })
    } else {
        // report primes whose required power alone exceeds the bound; when
        // the failure comes from the product, report every required prime
        let mut witness_primes: Vec<u64> = required
            .iter()
            .filter(|&&(q, e)| BigInt::from(q).pow(e as u32) > *n_bound)
            .map(|&(q, _)| q)
            .collect();
        if witness_primes.is_empty() {
            witness_primes = required.iter().map(|&(q, _)| q).collect();
        }
        Ok(EisensteinOutcome::Fail { witness_primes })
    }
}

/// Outcome of the p-integrality check of a series solution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IntegralityOutcome {
    Pass,
    FirstFailure { index: usize, valuation: i64 },
}

/// Solves the operator at the ordinary point 0 with the given initial
/// coefficients and reports the first coefficient with negative p-adic
/// valuation, if any. Also returns the computed series for further checks.
pub fn p_integrality_check(
    l: &DiffOp<Rationals>,
    initial: &[BigRational],
    p: u64,
    t: usize,
) -> Result<(IntegralityOutcome, TruncatedSeries<Rationals>)> {
    for c in initial {
        if let Some(v) = rat_valuation(c, p) {
            if v < 0 {
                return Err(Error::BadReduction {
                    p,
                    detail: "initial conditions are not p-integral".into(),
                });
            }
        }
    }
    let series = series_solve(l, initial, t)?;
    for (i, c) in series.coeffs().iter().enumerate() {
        if let Some(v) = rat_valuation(c, p) {
            if v < 0 {
                return Ok((IntegralityOutcome::FirstFailure { index: i, valuation: v }, series));
            }
        }
    }
    Ok((IntegralityOutcome::Pass, series))
}

/// Exact rising factorial (a)_n over Q.
pub fn pochhammer(a: &BigRational, n: u64) -> BigRational {
    let mut acc = BigRational::one();
    let mut term = a.clone();
    for _ in 0..n {
        acc *= &term;
        term += BigRational::one();
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::poly::Poly;

    fn q() -> Rationals {
        Rationals
    }

    fn rq(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn catalan_passes_with_n_one() {
        let coeffs: Vec<BigRational> =
            [1i64, 1, 2, 5, 14, 42].iter().map(|&c| rq(c, 1)).collect();
        let out = eisenstein_check(&coeffs, &BigInt::from(1_000_000)).unwrap();
        assert_eq!(out, EisensteinOutcome::Pass { n: BigInt::one() });
    }

    #[test]
    fn exp_fails_with_growing_primes() {
        // sum x^k / k!: every prime below the truncation shows up
        let mut coeffs = vec![BigRational::one()];
        let mut fact = BigInt::one();
        for k in 1..25u64 {
            fact *= BigInt::from(k);
            coeffs.push(BigRational::new(BigInt::one(), fact.clone()));
        }
        let out = eisenstein_check(&coeffs, &BigInt::from(1000)).unwrap();
        let EisensteinOutcome::Fail { witness_primes } = out else {
            panic!("expected failure")
        };
        assert!(witness_primes.contains(&13) || witness_primes.contains(&17));
    }

    #[test]
    fn log_fails() {
        // -sum x^k / k
        let mut coeffs = vec![BigRational::zero()];
        for k in 1..30i64 {
            coeffs.push(rq(-1, k));
        }
        let out = eisenstein_check(&coeffs, &BigInt::from(1000)).unwrap();
        assert!(matches!(out, EisensteinOutcome::Fail { .. }));
    }

    #[test]
    fn rescaled_binomial_passes() {
        // (1-x)^{1/2}: N = 4 works ( central binomials / 4^k )
        let mut coeffs = vec![BigRational::one()];
        let mut c = rq(-1, 2);
        for k in 1..20i64 {
            coeffs.push(c.clone());
            let kq = rq(k, 1);
            c = c * (rq(1, 2) - &kq) / (kq + BigRational::one());
        }
        let out = eisenstein_check(&coeffs, &BigInt::from(1000)).unwrap();
        let EisensteinOutcome::Pass { n } = out else { panic!("expected pass") };
        assert!(n == BigInt::from(4) || n == BigInt::from(2));
    }

    #[test]
    fn truncation_guard() {
        assert_eq!(
            eisenstein_check(&[BigRational::one()], &BigInt::from(10)),
            Err(Error::TruncationTooSmall)
        );
    }

    #[test]
    fn exp_arctan_integrality() {
        // y' = y/(1+x^2), y(0) = 1
        let l = DiffOp::from_poly_coeffs(vec![
            Poly::from_i64(q(), &[-1]),
            Poly::from_i64(q(), &[1, 0, 1]),
        ]);
        let (out5, _) = p_integrality_check(&l, &[BigRational::one()], 5, 60).unwrap();
        assert_eq!(out5, IntegralityOutcome::Pass);
        let (out3, _) = p_integrality_check(&l, &[BigRational::one()], 3, 60).unwrap();
        assert!(matches!(out3, IntegralityOutcome::FirstFailure { .. }));
    }

    #[test]
    fn pochhammer_values() {
        assert_eq!(pochhammer(&rq(1, 2), 3), rq(15, 8)); // 1/2 * 3/2 * 5/2
        assert_eq!(pochhammer(&rq(3, 1), 0), rq(1, 1));
    }
}
