//! Rational functions in lowest terms with a monic denominator, so equality
//! is structural equality.

use std::fmt;

use crate::arith::field::{Field, Fp, Rationals};
use crate::arith::poly::{poly_gcd, Poly};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct RatFun<F: Field> {
    num: Poly<F>,
    den: Poly<F>,
}

impl<F: Field> RatFun<F> {
    /// Builds num/den and normalizes; panics if den is zero.
    pub fn new(num: Poly<F>, den: Poly<F>) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        let field = num.field();
        if num.is_zero() {
            return RatFun { num, den: Poly::one(field) };
        }
        let g = poly_gcd(&num, &den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g), den.div_exact(&g))
        };
        if !den.is_monic() {
            let lc_inv = field.inv(&den.leading_coeff());
            num = num.scale(&lc_inv);
            den = den.scale(&lc_inv);
        }
        RatFun { num, den }
    }

    pub fn from_poly(num: Poly<F>) -> Self {
        let field = num.field();
        RatFun { num, den: Poly::one(field) }
    }

    pub fn zero(field: F) -> Self {
        RatFun::from_poly(Poly::zero(field))
    }

    pub fn one(field: F) -> Self {
        RatFun::from_poly(Poly::one(field))
    }

    pub fn constant(field: F, c: F::Elem) -> Self {
        RatFun::from_poly(Poly::constant(field, c))
    }

    pub fn from_i64(field: F, n: i64) -> Self {
        RatFun::constant(field, field.from_i64(n))
    }

    pub fn field(&self) -> F {
        self.num.field()
    }

    pub fn num(&self) -> &Poly<F> {
        &self.num
    }

    pub fn den(&self) -> &Poly<F> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Constant value if this is a constant, else `None`.
    pub fn as_constant(&self) -> Option<F::Elem> {
        if self.den.is_one() && self.num.is_constant() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        RatFun::new(num, self.den.mul(&other.den))
    }

    pub fn sub(&self, other: &Self) -> Self {
        let num = self.num.mul(&other.den).sub(&other.num.mul(&self.den));
        RatFun::new(num, self.den.mul(&other.den))
    }

    pub fn neg(&self) -> Self {
        RatFun { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        RatFun::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn div(&self, other: &Self) -> Self {
        assert!(!other.is_zero(), "division by the zero rational function");
        RatFun::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of the zero rational function");
        RatFun::new(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        RatFun::new(self.num.scale(c), self.den.clone())
    }

    pub fn pow(&self, e: u64) -> Self {
        RatFun::new(self.num.pow(e), self.den.pow(e))
    }

    /// Derivative by the quotient rule.
    pub fn derivative(&self) -> Self {
        let n = self.num.derivative().mul(&self.den).sub(&self.num.mul(&self.den.derivative()));
        RatFun::new(n, self.den.mul(&self.den))
    }

    /// Exact evaluation; errors at a pole.
    pub fn eval(&self, x: &F::Elem) -> Result<F::Elem> {
        let f = self.field();
        let d = self.den.eval(x);
        if f.is_zero(&d) {
            return Err(Error::PoleEvaluation);
        }
        Ok(f.div(&self.num.eval(x), &d))
    }

    pub fn has_pole_at(&self, x: &F::Elem) -> bool {
        self.field().is_zero(&self.den.eval(x))
    }

    /// Order of vanishing at 0: val(num) - val(den); `None` for zero.
    pub fn valuation_at_zero(&self) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        let f = self.field();
        let v = |p: &Poly<F>| p.coeffs().iter().take_while(|c| f.is_zero(c)).count() as i64;
        Some(v(&self.num) - v(&self.den))
    }

    /// First `n` coefficients of the series expansion at 0; requires no pole at 0.
    pub fn series_at_zero(&self, n: usize) -> Result<Vec<F::Elem>> {
        let f = self.field();
        if f.is_zero(&self.den.eval(&f.zero())) {
            return Err(Error::PoleAtOrigin);
        }
        let inv = self.den.series_inverse(n)?;
        let mut out = vec![f.zero(); n];
        for (k, slot) in out.iter_mut().enumerate() {
            let mut acc = f.zero();
            for j in 0..=k.min(self.num.degree_or_zero()) {
                acc = f.add(&acc, &f.mul(&self.num.coeff(j), &inv[k - j]));
            }
            *slot = acc;
        }
        Ok(out)
    }

    /// Substitutes x -> x + a.
    pub fn compose_shift(&self, a: &F::Elem) -> Self {
        RatFun::new(self.num.compose_shift(a), self.den.compose_shift(a))
    }
}

/// Coefficientwise reduction modulo p, renormalized to lowest terms.
pub fn reduce_poly_mod_p(f: &Poly<Rationals>, fp: Fp) -> Result<Poly<Fp>> {
    let coeffs = f
        .coeffs()
        .iter()
        .map(|c| fp.reduce_rational(c))
        .collect::<Result<Vec<u64>>>()?;
    Ok(Poly::new(fp, coeffs))
}

/// Reduction of a rational function modulo p, renormalized to lowest terms.
/// The fraction is first cleared to integer polynomials and the common
/// p-power content removed, so e.g. 2/(4x^2 - x) reduces to 0 mod 2 even
/// though the monic normal form carries 1/4 in its coefficients. Errors when
/// p genuinely divides the denominator of the function.
pub fn reduce_ratfun_mod_p(f: &RatFun<Rationals>, fp: Fp) -> Result<RatFun<Fp>> {
    use crate::arith::field::int_valuation;
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_rational::BigRational;
    use num_traits::{One, Zero};

    if f.is_zero() {
        return Ok(RatFun::zero(fp));
    }
    let p = fp.modulus();
    // clear to integer polynomials
    let mut lcm = BigInt::one();
    for c in f.num().coeffs().iter().chain(f.den().coeffs()) {
        lcm = lcm.lcm(c.denom());
    }
    let scale = BigRational::from_integer(lcm);
    let to_int = |h: &Poly<Rationals>| -> Vec<BigInt> {
        h.coeffs().iter().map(|c| (c * &scale).to_integer()).collect()
    };
    let mut num_int = to_int(f.num());
    let mut den_int = to_int(f.den());
    // remove the common p-power content
    let v = num_int
        .iter()
        .chain(den_int.iter())
        .filter(|c| !c.is_zero())
        .map(|c| int_valuation(c, p))
        .min()
        .unwrap_or(0);
    if v > 0 {
        let pv = BigInt::from(p).pow(v as u32);
        for c in num_int.iter_mut().chain(den_int.iter_mut()) {
            *c /= &pv;
        }
    }
    let den = Poly::new(fp, den_int.iter().map(|c| fp.reduce_bigint(c)).collect());
    if den.is_zero() {
        return Err(Error::BadReduction {
            p,
            detail: format!("denominator of ({f}) vanishes modulo {p}"),
        });
    }
    let num = Poly::new(fp, num_int.iter().map(|c| fp.reduce_bigint(c)).collect());
    Ok(RatFun::new(num, den))
}

impl<F: Field> fmt::Debug for RatFun<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFun({})", self)
    }
}

impl<F: Field> fmt::Display for RatFun<F> {
    /// Grammar-compatible form: `(num)/(den)` or just the numerator when the
    /// denominator is 1.
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(out, "{}", self.num)
        } else {
            write!(out, "({})/({})", self.num, self.den)
        }
    }
}
