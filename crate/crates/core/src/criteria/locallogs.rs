//! Logarithm detection in local solutions at 0 by the Frobenius method:
//! indicial polynomial, integer-spaced exponent classes, and exact
//! obstruction analysis for the log-free ansatz.
//!
//! Exponent classes are handled uniformly over Q[t]/(h) for a factor h of
//! the indicial polynomial; a class forces a logarithm exactly when the
//! space of log-free series prefixes is smaller than the class size.
//! Zero-divisor pivots split h and the analysis recurses on the factors, so
//! no factorization into irreducibles is ever needed.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::field::{Field, Rationals};
use crate::arith::poly::{poly_gcd, poly_lcm, rational_roots, Poly};
use crate::arith::ratfun::RatFun;
use crate::error::{Error, Result};
use crate::ore::DiffOp;

/// Fixed engineering margin past the largest integer exponent gap.
const SLACK: usize = 10;

#[derive(Clone, Debug)]
pub struct LocalSolutionsReport {
    pub logs_present: bool,
    /// The indicial polynomial at 0 (in the exponent variable).
    pub indicial_polynomial: Poly<Rationals>,
    /// Rational indicial exponents with multiplicities.
    pub rational_exponents: Vec<(BigRational, usize)>,
    /// For rational exponents admitting a log-free solution starting there,
    /// the first few series coefficients (normalized to lead with 1).
    pub logfree_prefixes: Vec<(BigRational, Vec<BigRational>)>,
}

type QPoly = Poly<Rationals>;

fn q() -> Rationals {
    Rationals
}

fn qi(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Laurent coefficients of b from x^(-shift): returns beta with
/// beta[j] = coefficient of x^(j - shift), for j < len.
fn laurent_coeffs(b: &RatFun<Rationals>, shift: i64, len: usize) -> Vec<BigRational> {
    if b.is_zero() {
        return vec![BigRational::zero(); len];
    }
    let ordn = b.num().coeffs().iter().take_while(|c| c.is_zero()).count() as i64;
    let ordd = b.den().coeffs().iter().take_while(|c| c.is_zero()).count() as i64;
    let ord = ordn - ordd;
    let unit_num = Poly::new(q(), b.num().coeffs()[ordn as usize..].to_vec());
    let unit_den = Poly::new(q(), b.den().coeffs()[ordd as usize..].to_vec());
    let unit = RatFun::new(unit_num, unit_den);
    let series = unit.series_at_zero(len).expect("unit part regular at 0");
    let mut out = vec![BigRational::zero(); len];
    for (s, c) in series.into_iter().enumerate() {
        let j = ord + shift + s as i64;
        if j >= 0 && (j as usize) < len {
            out[j as usize] = c;
        }
    }
    out
}

/// Falling factorial (lambda)(lambda-1)...(lambda-i+1) as a polynomial.
fn falling(i: usize) -> QPoly {
    let mut acc = Poly::one(q());
    for r in 0..i as i64 {
        acc = acc.mul(&Poly::new(q(), vec![qi(-r), BigRational::one()]));
    }
    acc
}

/// Extended Euclid modulo h: Ok(inverse) or Err(nontrivial gcd) when the
/// element is a zero divisor.
fn try_inv_mod(e: &QPoly, h: &QPoly) -> std::result::Result<QPoly, QPoly> {
    let (mut r0, mut r1) = (h.clone(), e.rem(h));
    let (mut t0, mut t1) = (Poly::zero(q()), Poly::one(q()));
    while !r1.is_zero() {
        let (quo, r) = r0.divmod(&r1);
        let t = t0.sub(&quo.mul(&t1));
        r0 = r1;
        r1 = r;
        t0 = t1;
        t1 = t;
    }
    if r0.is_constant() {
        let inv = Rationals.inv(&r0.coeff(0));
        Ok(t0.scale(&inv).rem(h))
    } else {
        Err(r0.monic())
    }
}

/// Nullity of the lower-triangular Frobenius system over Q[t]/(h):
/// rows s, columns k <= s, entry phi_{s-k}(t + k). Err carries a splitting
/// factor of h when a zero-divisor pivot shows up.
fn quotient_nullity(
    h: &QPoly,
    phis: &[QPoly],
    s_max: usize,
) -> std::result::Result<usize, QPoly> {
    let dim = s_max + 1;
    let mut m: Vec<Vec<QPoly>> = (0..dim)
        .map(|s| {
            (0..dim)
                .map(|k| {
                    if k > s || s - k >= phis.len() {
                        Poly::zero(q())
                    } else {
                        phis[s - k].compose_shift(&qi(k as i64)).rem(h)
                    }
                })
                .collect()
        })
        .collect();
    let mut rank = 0usize;
    for col in 0..dim {
        // find an invertible pivot; a nonzero zero divisor splits h
        let mut pivot_row = None;
        for r in rank..dim {
            if m[r][col].is_zero() {
                continue;
            }
            match try_inv_mod(&m[r][col], h) {
                Ok(inv) => {
                    pivot_row = Some((r, inv));
                    break;
                }
                Err(g) => return Err(g),
            }
        }
        let Some((pr, inv)) = pivot_row else { continue };
        m.swap(rank, pr);
        for j in col..dim {
            m[rank][j] = m[rank][j].mul(&inv).rem(h);
        }
        for r in 0..dim {
            if r != rank && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for j in col..dim {
                    let t = m[r][j].sub(&m[rank][j].mul(&factor).rem(h));
                    m[r][j] = t.rem(h);
                }
            }
        }
        rank += 1;
    }
    Ok(dim - rank)
}

/// Does the exponent class of the roots of h force a logarithm?
fn class_forces_logs(h: &QPoly, chi_sq: &QPoly, phis: &[QPoly], maxgap: usize) -> bool {
    // gather the integer gaps shared by all roots of h; a partial gap splits
    // the class
    let mut gaps: Vec<usize> = Vec::new();
    for m in 1..=maxgap {
        let shifted = chi_sq.compose_shift(&qi(m as i64));
        let g = poly_gcd(h, &shifted);
        if g.is_constant() {
            continue;
        }
        if g.degree() == h.degree() {
            gaps.push(m);
        } else {
            let h2 = h.div_exact(&g).monic();
            return class_forces_logs(&g, chi_sq, phis, maxgap)
                || class_forces_logs(&h2, chi_sq, phis, maxgap);
        }
    }
    let class_size = gaps.len() + 1;
    if class_size == 1 {
        // a lone exponent never obstructs
        return false;
    }
    let s_max = gaps.last().copied().unwrap_or(0) + SLACK;
    match quotient_nullity(h, phis, s_max) {
        Ok(nullity) => nullity < class_size,
        Err(g) => {
            let h2 = h.div_exact(&g).monic();
            class_forces_logs(&g, chi_sq, phis, maxgap)
                || class_forces_logs(&h2, chi_sq, phis, maxgap)
        }
    }
}

/// Frobenius analysis at 0 of an operator of order <= 4 with a regular
/// singular (or ordinary) point there: indicial roots, and whether the local
/// solution basis is forced to contain a logarithm.
pub fn local_logs_at_zero(l: &DiffOp<Rationals>) -> Result<LocalSolutionsReport> {
    assert!(!l.is_zero(), "local analysis of the zero operator");
    let monic = l.monicize();
    let n = monic.degree().unwrap();
    if n == 0 || n > 4 {
        return Err(Error::UnsupportedOrder(n));
    }
    // Fuchs criterion: pole order of b_i at 0 at most n - i
    for i in 0..n {
        let b = monic.coeff(i);
        if b.is_zero() {
            continue;
        }
        let ordn = b.num().coeffs().iter().take_while(|c| c.is_zero()).count() as i64;
        let ordd = b.den().coeffs().iter().take_while(|c| c.is_zero()).count() as i64;
        if ordd - ordn > (n - i) as i64 {
            return Err(Error::IrregularSingularPoint);
        }
    }

    // phi_j(lambda) = sum_i beta_{i, j - n + i} (lambda)_i, phi_0 = indicial
    let mut beta: Vec<Vec<BigRational>> = Vec::with_capacity(n + 1);
    let prelim_len = 1;
    for i in 0..=n {
        beta.push(laurent_coeffs(&monic.coeff(i), (n - i) as i64, prelim_len));
    }
    let build_phis = |beta: &[Vec<BigRational>], count: usize| -> Vec<QPoly> {
        (0..count)
            .map(|j| {
                let mut acc = Poly::zero(q());
                for (i, bi) in beta.iter().enumerate() {
                    if j < bi.len() && !bi[j].is_zero() {
                        acc = acc.add(&falling(i).scale(&bi[j]));
                    }
                }
                acc
            })
            .collect()
    };
    let chi = build_phis(&beta, 1).pop().unwrap();
    debug_assert_eq!(chi.degree(), Some(n));

    let rational_exponents = rational_roots(&chi);
    let chi_monic = chi.monic();
    let chi_sq_part = chi_monic.div_exact(&poly_gcd(&chi_monic, &chi_monic.derivative())).monic();
    let repeated_root = chi_sq_part.degree() != chi_monic.degree();

    // integer gap bound from the Cauchy root bound of the squarefree part
    let mut cauchy = BigRational::one();
    for c in chi_sq_part.coeffs().iter().take(chi_sq_part.degree_or_zero()) {
        let a = c.abs();
        if a > cauchy {
            cauchy = a;
        }
    }
    let maxgap = (2u64 + 2 * (cauchy.to_integer().to_u64().unwrap_or(2000) + 1)).min(2000) as usize;
    let s_bound = maxgap + SLACK + 1;
    let mut beta = Vec::with_capacity(n + 1);
    for i in 0..=n {
        beta.push(laurent_coeffs(&monic.coeff(i), (n - i) as i64, s_bound));
    }
    let phis = build_phis(&beta, s_bound);

    let mut logs_present = repeated_root;
    if !logs_present {
        // split off classes from the minimal exponents: roots r of chi_sq
        // with no root at r - m
        let mut nonmin = Poly::one(q());
        for m in 1..=maxgap {
            let shifted = chi_sq_part.compose_shift(&qi(-(m as i64)));
            let g = poly_gcd(&chi_sq_part, &shifted);
            if !g.is_constant() {
                nonmin = poly_lcm(&nonmin, &g);
            }
        }
        let h_min = chi_sq_part.div_exact(&nonmin).monic();
        logs_present = class_forces_logs(&h_min, &chi_sq_part, &phis, maxgap);
    }

    // log-free prefix sketches for rational exponents (informational)
    let mut logfree_prefixes = Vec::new();
    if !logs_present {
        for (r, _) in &rational_exponents {
            if let Some(prefix) = logfree_prefix(r, &chi, &phis, SLACK + 4) {
                logfree_prefixes.push((r.clone(), prefix));
            }
        }
    }

    Ok(LocalSolutionsReport {
        logs_present,
        indicial_polynomial: chi,
        rational_exponents,
        logfree_prefixes,
    })
}

/// Attempts the log-free series with c_0 = 1 at exponent r and free
/// parameters set to zero; `None` on an obstruction.
fn logfree_prefix(
    r: &BigRational,
    chi: &QPoly,
    phis: &[QPoly],
    len: usize,
) -> Option<Vec<BigRational>> {
    let mut c = vec![BigRational::one()];
    for s in 1..len {
        let mut acc = BigRational::zero();
        for (k, ck) in c.iter().enumerate() {
            if s - k < phis.len() && !ck.is_zero() {
                acc += phis[s - k].eval(&(r + qi(k as i64))) * ck;
            }
        }
        let lead = chi.eval(&(r + qi(s as i64)));
        if lead.is_zero() {
            if acc.is_zero() {
                c.push(BigRational::zero());
                continue;
            }
            return None;
        }
        c.push(-acc / lead);
    }
    Some(c)
}
