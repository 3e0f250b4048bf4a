//! The noncommutative ring K(x)<Dx> of linear differential operators, with
//! the twist Dx*r(x) = r(x)*Dx + r'(x): twisted multiplication, degree,
//! Euclidean division and application to functions and series.

use std::fmt;

use crate::arith::field::{Field, Fp, Rationals};
use crate::arith::poly::{poly_lcm, Poly};
use crate::arith::ratfun::{reduce_ratfun_mod_p, RatFun};
use crate::error::{Error, Result};
use crate::series::TruncatedSeries;

/// A linear differential operator sum a_i(x) Dx^i; index i of the coefficient
/// list holds a_i. The leading coefficient is nonzero unless the operator is
/// zero, and the degree is the order of the underlying differential equation.
#[derive(Clone, PartialEq, Eq)]
pub struct DiffOp<F: Field> {
    coeffs: Vec<RatFun<F>>,
}

impl<F: Field> DiffOp<F> {
    pub fn new(mut coeffs: Vec<RatFun<F>>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        DiffOp { coeffs }
    }

    pub fn zero() -> Self {
        DiffOp { coeffs: Vec::new() }
    }

    pub fn one(field: F) -> Self {
        DiffOp::from_ratfun(RatFun::one(field))
    }

    /// The operator Dx.
    pub fn partial(field: F) -> Self {
        DiffOp::monomial(RatFun::one(field), 1)
    }

    /// Dx^k.
    pub fn partial_pow(field: F, k: usize) -> Self {
        DiffOp::monomial(RatFun::one(field), k)
    }

    /// c(x) * Dx^k.
    pub fn monomial(c: RatFun<F>, k: usize) -> Self {
        if c.is_zero() {
            return DiffOp::zero();
        }
        let field = c.field();
        let mut coeffs = vec![RatFun::zero(field); k + 1];
        coeffs[k] = c;
        DiffOp { coeffs }
    }

    pub fn from_ratfun(c: RatFun<F>) -> Self {
        DiffOp::monomial(c, 0)
    }

    /// Builds sum coeffs[i] * Dx^i from polynomial coefficients.
    pub fn from_poly_coeffs(coeffs: Vec<Poly<F>>) -> Self {
        DiffOp::new(coeffs.into_iter().map(RatFun::from_poly).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in Dx (the order of the differential equation); `None` when zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn degree_or_zero(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[RatFun<F>] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> RatFun<F> {
        self.coeffs.get(i).cloned().unwrap_or_else(|| {
            RatFun::zero(self.field().expect("coefficient of the zero operator"))
        })
    }

    pub fn leading_coeff(&self) -> &RatFun<F> {
        self.coeffs.last().expect("leading coefficient of the zero operator")
    }

    fn field(&self) -> Option<F> {
        self.coeffs.first().map(|c| c.field())
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let n = self.coeffs.len().max(other.coeffs.len());
        let field = self.field().unwrap();
        let coeffs = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).cloned().unwrap_or_else(|| RatFun::zero(field));
                let b = other.coeffs.get(i).cloned().unwrap_or_else(|| RatFun::zero(field));
                a.add(&b)
            })
            .collect();
        DiffOp::new(coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        DiffOp { coeffs: self.coeffs.iter().map(|c| c.neg()).collect() }
    }

    /// Left multiplication by a rational function (no twisting involved).
    pub fn scale(&self, c: &RatFun<F>) -> Self {
        DiffOp::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    /// Dx * self, one application of the commutation rule.
    fn left_mul_partial(&self) -> Self {
        if self.is_zero() {
            return DiffOp::zero();
        }
        let field = self.field().unwrap();
        let mut coeffs = vec![RatFun::zero(field); self.coeffs.len() + 1];
        for (j, c) in self.coeffs.iter().enumerate() {
            // Dx * c Dx^j = c Dx^{j+1} + c' Dx^j
            coeffs[j + 1] = coeffs[j + 1].add(c);
            coeffs[j] = coeffs[j].add(&c.derivative());
        }
        DiffOp::new(coeffs)
    }

    /// Product in K(x)<Dx>; deg(A*B) = deg A + deg B for nonzero operands.
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return DiffOp::zero();
        }
        let mut acc = DiffOp::zero();
        let mut cur = other.clone(); // Dx^i * other, incrementally
        for a in self.coeffs.iter() {
            if !a.is_zero() {
                acc = acc.add(&cur.scale(a));
            }
            cur = cur.left_mul_partial();
        }
        acc
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut acc = match self.field() {
            Some(f) => DiffOp::one(f),
            None => return if e == 0 { DiffOp::zero() } else { DiffOp::zero() },
        };
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Euclidean division on the right by `b`: returns (Q, R) with
    /// self = Q*b + R and deg R < deg b; the pair is unique.
    pub fn right_divmod(&self, b: &Self) -> Result<(Self, Self)> {
        if b.is_zero() {
            return Err(Error::DivisionByZeroOperator);
        }
        let mut r = self.clone();
        let mut q = DiffOp::zero();
        let db = b.degree().unwrap();
        while !r.is_zero() && r.degree().unwrap() >= db {
            let k = r.degree().unwrap() - db;
            let c = r.leading_coeff().div(b.leading_coeff());
            let term = DiffOp::monomial(c, k);
            q = q.add(&term);
            r = r.sub(&term.mul(b));
        }
        Ok((q, r))
    }

    /// Remainder of the division of Dx^k by self, computed incrementally.
    /// Cheaper than building Dx^k and calling `right_divmod`.
    pub fn rem_partial_pow(&self, k: usize) -> Result<DiffOp<F>> {
        if self.is_zero() {
            return Err(Error::DivisionByZeroOperator);
        }
        let field = self.field().unwrap();
        let n = self.degree().unwrap();
        if n == 0 {
            return Ok(DiffOp::zero());
        }
        let monic = self.monicize();
        let mut r = DiffOp::one(field);
        for _ in 0..k {
            let mut s = r.left_mul_partial();
            if s.degree() == Some(n) {
                let c = s.coeff(n);
                s = s.sub(&monic.scale(&c));
            }
            r = s;
        }
        Ok(r)
    }

    /// Scales by the inverse of the leading coefficient; same solution space.
    pub fn monicize(&self) -> Self {
        assert!(!self.is_zero(), "monicize of the zero operator");
        let lc = self.leading_coeff();
        if lc.is_one() {
            return self.clone();
        }
        self.scale(&lc.inv())
    }

    /// Left multiplication by the least common denominator: an operator with
    /// polynomial coefficients and the same solution space.
    pub fn clear_denominators(&self) -> Self {
        if self.is_zero() {
            return DiffOp::zero();
        }
        let field = self.field().unwrap();
        let mut l = Poly::one(field);
        for c in &self.coeffs {
            l = poly_lcm(&l, c.den());
        }
        let l = RatFun::from_poly(l);
        self.scale(&l)
    }

    /// Polynomial coefficients, if every denominator is 1.
    pub fn poly_coeffs(&self) -> Option<Vec<Poly<F>>> {
        self.coeffs.iter().map(|c| c.is_polynomial().then(|| c.num().clone())).collect()
    }

    /// Applies the operator to a rational function: sum a_i f^(i).
    pub fn apply_ratfun(&self, f: &RatFun<F>) -> RatFun<F> {
        let mut acc = RatFun::zero(f.field());
        let mut der = f.clone();
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                der = der.derivative();
            }
            if !a.is_zero() {
                acc = acc.add(&a.mul(&der));
            }
        }
        acc
    }

    /// Applies the operator to a truncated series. The result is truncated to
    /// (input order - deg L). Panics if a coefficient has a pole at 0 or the
    /// input order is smaller than the operator degree.
    pub fn apply_series(&self, f: &TruncatedSeries<F>) -> TruncatedSeries<F> {
        let field = f.field();
        let n = self.degree_or_zero();
        assert!(f.order() >= n, "series order below operator degree");
        let out = f.order() - n;
        let mut acc = TruncatedSeries::zero(field, out);
        let mut der = f.clone();
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                der = der.derivative();
            }
            if a.is_zero() {
                continue;
            }
            let a_series = TruncatedSeries::from_ratfun(a, out)
                .expect("operator coefficient with a pole at 0 applied to a series");
            acc = acc.add(&a_series.mul(&der.truncate(out)));
        }
        acc
    }
}

/// Coefficientwise reduction modulo p; the degree must not drop.
pub fn reduce_op_mod_p(l: &DiffOp<Rationals>, fp: Fp) -> Result<DiffOp<Fp>> {
    let mut coeffs = Vec::with_capacity(l.coeffs().len());
    for (i, c) in l.coeffs().iter().enumerate() {
        let r = reduce_ratfun_mod_p(c, fp).map_err(|e| match e {
            Error::BadReduction { p, detail } => Error::BadReduction {
                p,
                detail: format!("coefficient of Dx^{i}: {detail}"),
            },
            other => other,
        })?;
        coeffs.push(r);
    }
    if let Some(d) = l.degree() {
        if coeffs[d].is_zero() {
            return Err(Error::BadReduction {
                p: fp.modulus(),
                detail: format!("leading coefficient of Dx^{d} reduces to zero"),
            });
        }
    }
    Ok(DiffOp::new(coeffs))
}

impl<F: Field> fmt::Debug for DiffOp<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiffOp({})", self)
    }
}

impl<F: Field> fmt::Display for DiffOp<F> {
    /// Grammar-compatible canonical form, e.g.
    /// `(4*x^2 - x)*Dx^2 + (10*x - 2)*Dx + 2`.
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(out, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if first {
                first = false;
            } else {
                write!(out, " + ")?;
            }
            let cs = c.to_string();
            let needs_parens = cs.contains(' ') && !cs.starts_with('(');
            match i {
                0 => write!(out, "{cs}")?,
                _ => {
                    if c.is_one() {
                        write!(out, "Dx")?;
                    } else if needs_parens {
                        write!(out, "({cs})*Dx")?;
                    } else {
                        write!(out, "{cs}*Dx")?;
                    }
                    if i > 1 {
                        write!(out, "^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::Rationals;

    fn q() -> Rationals {
        Rationals
    }

    fn qpoly(c: &[i64]) -> Poly<Rationals> {
        Poly::from_i64(q(), c)
    }

    fn qrf(num: &[i64], den: &[i64]) -> RatFun<Rationals> {
        RatFun::new(qpoly(num), qpoly(den))
    }

    /// The Catalan operator (4x^2 - x) Dx^2 + (10x - 2) Dx + 2.
    fn catalan() -> DiffOp<Rationals> {
        DiffOp::from_poly_coeffs(vec![qpoly(&[2]), qpoly(&[-2, 10]), qpoly(&[0, -1, 4])])
    }

    #[test]
    fn commutation_rule() {
        // Dx * x = x Dx + 1
        let dx = DiffOp::partial(q());
        let x = DiffOp::from_ratfun(qrf(&[0, 1], &[1]));
        let prod = dx.mul(&x);
        let expect = DiffOp::new(vec![qrf(&[1], &[1]), qrf(&[0, 1], &[1])]);
        assert_eq!(prod, expect);
    }

    #[test]
    fn constant_coefficient_product() {
        // (Dx - 1)(Dx + 1) = Dx^2 - 1
        let a = DiffOp::new(vec![qrf(&[-1], &[1]), qrf(&[1], &[1])]);
        let b = DiffOp::new(vec![qrf(&[1], &[1]), qrf(&[1], &[1])]);
        let expect = DiffOp::new(vec![qrf(&[-1], &[1]), qrf(&[0], &[1]), qrf(&[1], &[1])]);
        assert_eq!(a.mul(&b), expect);
    }

    #[test]
    fn twisted_product_with_pole() {
        // Dx^2 * (1/(1-x)) = (1/(1-x)) Dx^2 + (2/(1-x)^2) Dx + 2/(1-x)^3
        let d2 = DiffOp::partial_pow(q(), 2);
        let g = DiffOp::from_ratfun(qrf(&[1], &[1, -1]));
        let prod = d2.mul(&g);
        let expect = DiffOp::new(vec![
            qrf(&[2], &[1, -3, 3, -1]),
            qrf(&[2], &[1, -2, 1]),
            qrf(&[1], &[1, -1]),
        ]);
        assert_eq!(prod, expect);
        // verify by applying both sides to x and x^2
        for test in [qrf(&[0, 1], &[1]), qrf(&[0, 0, 1], &[1])] {
            let lhs = prod.apply_ratfun(&test);
            let rhs = d2.apply_ratfun(&g.apply_ratfun(&test));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn catalan_remainder_dx2() {
        // Dx^2 mod Catalan = -(2(5x-1)/(x(4x-1))) Dx - 2/(x(4x-1))
        let l = catalan();
        let (quo, rem) = DiffOp::partial_pow(q(), 2).right_divmod(&l).unwrap();
        let expect = DiffOp::new(vec![qrf(&[-2], &[0, -1, 4]), qrf(&[2, -10], &[0, -1, 4])]);
        assert_eq!(rem, expect);
        assert_eq!(quo.mul(&l).add(&rem), DiffOp::partial_pow(q(), 2));
        // fast path agrees
        assert_eq!(l.rem_partial_pow(2).unwrap(), expect);
    }

    #[test]
    fn exp_remainder_is_one() {
        // Dx mod (Dx - 1): Q = 1, R = 1
        let l = DiffOp::new(vec![qrf(&[-1], &[1]), qrf(&[1], &[1])]);
        let (quo, rem) = DiffOp::partial(q()).right_divmod(&l).unwrap();
        assert_eq!(quo, DiffOp::one(q()));
        assert_eq!(rem, DiffOp::one(q()));
    }

    #[test]
    fn log_remainder() {
        // Dx^2 mod ((1-x) Dx^2 - Dx) = (1/(1-x)) Dx
        let l = DiffOp::from_poly_coeffs(vec![qpoly(&[]), qpoly(&[-1]), qpoly(&[1, -1])]);
        let (_, rem) = DiffOp::partial_pow(q(), 2).right_divmod(&l).unwrap();
        let expect = DiffOp::new(vec![qrf(&[0], &[1]), qrf(&[-1], &[-1, 1])]);
        assert_eq!(rem, expect);
    }

    #[test]
    fn apply_to_series() {
        // (Dx - 1) exp = 0, exp mod x^5
        let l = DiffOp::new(vec![qrf(&[-1], &[1]), qrf(&[1], &[1])]);
        let fact = [1i64, 1, 2, 6, 24];
        let coeffs: Vec<_> = fact
            .iter()
            .map(|&f| {
                num_rational::BigRational::new(num_bigint::BigInt::from(1), num_bigint::BigInt::from(f))
            })
            .collect();
        let exp = TruncatedSeries::new(q(), coeffs, 5);
        let r = l.apply_series(&exp);
        assert_eq!(r.order(), 4);
        assert!(r.is_zero());
        // Dx^2 x^3 = 6x
        let d2 = DiffOp::partial_pow(q(), 2);
        let x3 = TruncatedSeries::from_i64(q(), &[0, 0, 0, 1], 6);
        assert_eq!(d2.apply_series(&x3), TruncatedSeries::from_i64(q(), &[0, 6], 4));
        assert_eq!(d2.apply_ratfun(&qrf(&[0, 0, 0, 1], &[1])), qrf(&[0, 6], &[1]));
    }

    #[test]
    fn catalan_series_annihilated() {
        let l = catalan();
        let cat = TruncatedSeries::from_i64(q(), &[1, 1, 2, 5, 14, 42, 132, 429], 8);
        assert!(l.apply_series(&cat).is_zero());
    }

    #[test]
    fn reduce_catalan_mod_3() {
        let f3 = Fp::new(3);
        let l = reduce_op_mod_p(&catalan(), f3).unwrap();
        let expect = DiffOp::from_poly_coeffs(vec![
            Poly::from_i64(f3, &[2]),
            Poly::from_i64(f3, &[1, 1]),
            Poly::from_i64(f3, &[0, 2, 1]),
        ]);
        assert_eq!(l, expect);
    }

    #[test]
    fn reduce_bad_leading() {
        // (1/5) Dx + 1 at p = 5
        let f5 = Fp::new(5);
        let l = DiffOp::new(vec![qrf(&[1], &[1]), qrf(&[1], &[5])]);
        assert!(matches!(reduce_op_mod_p(&l, f5), Err(Error::BadReduction { .. })));
        // 2x Dx at p=2: leading drops
        let f2 = Fp::new(2);
        let l = DiffOp::new(vec![qrf(&[0], &[1]), qrf(&[0, 2], &[1])]);
        assert!(matches!(reduce_op_mod_p(&l, f2), Err(Error::BadReduction { .. })));
    }

    #[test]
    fn monicize_examples() {
        let l = catalan().monicize();
        assert!(l.leading_coeff().is_one());
        assert_eq!(l.coeff(1), qrf(&[-2, 10], &[0, -1, 4]));
        assert_eq!(l.coeff(0), qrf(&[2], &[0, -1, 4]));
        // 2x Dx -> Dx
        let l = DiffOp::new(vec![qrf(&[0], &[1]), qrf(&[0, 2], &[1])]);
        assert_eq!(l.monicize(), DiffOp::partial(q()));
    }

    #[test]
    fn divmod_uniqueness_roundtrip() {
        let a = catalan().mul(&catalan()).add(&DiffOp::partial(q()));
        let b = catalan();
        let (q1, r1) = a.right_divmod(&b).unwrap();
        assert_eq!(q1.mul(&b).add(&r1), a);
        assert!(r1.degree_or_zero() < b.degree().unwrap());
        let (q2, r2) = a.right_divmod(&b).unwrap();
        assert_eq!((q1, r1), (q2, r2));
    }
}
