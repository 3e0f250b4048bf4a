//! Dense univariate polynomials over a coefficient field.

use std::fmt;

use crate::arith::field::Field;
use crate::error::{Error, Result};

/// Dense polynomial, coefficients stored lowest degree first. The leading
/// coefficient is nonzero unless the polynomial is zero (empty coefficient
/// list).
#[derive(Clone, PartialEq, Eq)]
pub struct Poly<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> Poly<F> {
    pub fn new(field: F, mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().map_or(false, |c| field.is_zero(c)) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn zero(field: F) -> Self {
        Poly { field, coeffs: Vec::new() }
    }

    pub fn one(field: F) -> Self {
        Poly::constant(field, field.one())
    }

    pub fn constant(field: F, c: F::Elem) -> Self {
        Poly::new(field, vec![c])
    }

    /// The monomial c * x^k.
    pub fn monomial(field: F, c: F::Elem, k: usize) -> Self {
        if field.is_zero(&c) {
            return Poly::zero(field);
        }
        let mut coeffs = vec![field.zero(); k + 1];
        coeffs[k] = c;
        Poly { field, coeffs }
    }

    /// x itself.
    pub fn x(field: F) -> Self {
        Poly::monomial(field, field.one(), 1)
    }

    /// Builds a polynomial from signed integer coefficients, lowest first.
    pub fn from_i64(field: F, coeffs: &[i64]) -> Self {
        Poly::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn field(&self) -> F {
        self.field
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.field.is_one(&self.coeffs[0])
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with deg 0 = 0 convention for the zero polynomial.
    pub fn degree_or_zero(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    /// Coefficient of x^k (zero beyond the stored length).
    pub fn coeff(&self, k: usize) -> F::Elem {
        self.coeffs.get(k).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Leading coefficient; panics on the zero polynomial.
    pub fn leading_coeff(&self) -> F::Elem {
        self.coeffs.last().cloned().expect("leading coefficient of zero")
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().map_or(false, |c| self.field.is_one(c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| f.add(&self.coeff(i), &other.coeff(i))).collect();
        Poly::new(f, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| f.sub(&self.coeff(i), &other.coeff(i))).collect();
        Poly::new(f, coeffs)
    }

    pub fn neg(&self) -> Self {
        let f = self.field;
        Poly::new(f, self.coeffs.iter().map(|c| f.neg(c)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let f = self.field;
        if self.is_zero() || other.is_zero() {
            return Poly::zero(f);
        }
        let mut coeffs = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = f.add(&coeffs[i + j], &f.mul(a, b));
            }
        }
        Poly::new(f, coeffs)
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = self.field;
        Poly::new(f, self.coeffs.iter().map(|a| f.mul(a, c)).collect())
    }

    /// Multiplies by x^k.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.field.zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { field: self.field, coeffs }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Poly::one(self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let f = self.field;
        if self.coeffs.len() <= 1 {
            return Poly::zero(f);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.mul_i64(c, i as i64))
            .collect();
        Poly::new(f, coeffs)
    }

    pub fn eval(&self, x: &F::Elem) -> F::Elem {
        let f = self.field;
        let mut acc = f.zero();
        for c in self.coeffs.iter().rev() {
            acc = f.add(&f.mul(&acc, x), c);
        }
        acc
    }

    /// Taylor shift: returns p(x + a).
    pub fn compose_shift(&self, a: &F::Elem) -> Self {
        let f = self.field;
        // synthetic division by (x - (-a)) repeatedly
        let mut work = self.coeffs.clone();
        let n = work.len();
        let mut out = Vec::with_capacity(n);
        for _ in 0..n {
            // divide work by (x - (-a)) i.e. evaluate remainder at -(-a)=... we
            // want p(x+a) = sum r_k x^k where r_k come from repeated division
            // of p by (x + a) ... standard Horner with node -a reversed:
            let mut carry = f.zero();
            for c in work.iter_mut().rev() {
                let t = f.add(c, &f.mul(&carry, a));
                carry = t.clone();
                *c = t;
            }
            out.push(work.remove(0));
        }
        Poly::new(f, out)
    }

    /// Euclidean division; panics if `d` is zero.
    pub fn divmod(&self, d: &Self) -> (Self, Self) {
        let f = self.field;
        assert!(!d.is_zero(), "polynomial division by zero");
        if self.is_zero() || self.coeffs.len() < d.coeffs.len() {
            return (Poly::zero(f), self.clone());
        }
        let dlc_inv = f.inv(&d.leading_coeff());
        let mut rem = self.coeffs.clone();
        let dd = d.coeffs.len() - 1;
        let qlen = rem.len() - dd;
        let mut q = vec![f.zero(); qlen];
        for k in (0..qlen).rev() {
            let c = f.mul(&rem[k + dd], &dlc_inv);
            if f.is_zero(&c) {
                continue;
            }
            q[k] = c.clone();
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] = f.sub(&rem[k + j], &f.mul(&c, dc));
            }
        }
        (Poly::new(f, q), Poly::new(f, rem))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divmod(d).1
    }

    /// Exact division; panics if the remainder is nonzero.
    pub fn div_exact(&self, d: &Self) -> Self {
        let (q, r) = self.divmod(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Scales so the leading coefficient is one; zero stays zero.
    pub fn monic(&self) -> Self {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        self.scale(&self.field.inv(&self.leading_coeff()))
    }

    /// Modular exponentiation: self^e mod m.
    pub fn pow_mod(&self, mut e: u64, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut acc = Poly::one(self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).rem(m);
            }
        }
        acc
    }

    /// Inverse of self modulo m (gcd must be 1); panics otherwise.
    pub fn inv_mod(&self, m: &Self) -> Self {
        let f = self.field;
        let (mut r0, mut r1) = (m.clone(), self.rem(m));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1);
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            t0 = t1;
            t1 = t;
        }
        assert!(r0.is_constant() && !r0.is_zero(), "inv_mod of non-unit");
        t0.scale(&f.inv(&r0.coeff(0))).rem(m)
    }

    /// First `n` coefficients of the power series 1/self; requires a nonzero
    /// constant term.
    pub fn series_inverse(&self, n: usize) -> Result<Vec<F::Elem>> {
        let f = self.field;
        let c0 = self.coeff(0);
        if f.is_zero(&c0) {
            return Err(Error::NoExpansionAtOrigin);
        }
        let c0_inv = f.inv(&c0);
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            if k == 0 {
                out.push(c0_inv.clone());
                continue;
            }
            let mut acc = f.zero();
            for j in 1..=k.min(self.coeffs.len().saturating_sub(1)) {
                acc = f.add(&acc, &f.mul(&self.coeff(j), &out[k - j]));
            }
            out.push(f.neg(&f.mul(&acc, &c0_inv)));
        }
        Ok(out)
    }
}


/// Rational roots with multiplicities of a nonzero polynomial over Q, by
/// divisor search on the primitive integer form (divisor search capped, so
/// roots with huge numerators or denominators may be missed).
pub fn rational_roots(p: &Poly<crate::arith::field::Rationals>) -> Vec<(num_rational::BigRational, usize)> {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_rational::BigRational;
    use num_traits::{One, Signed, Zero};
    let q = crate::arith::field::Rationals;
    assert!(!p.is_zero(), "rational roots of the zero polynomial");
    let mut den_lcm = BigInt::one();
    for c in p.coeffs() {
        den_lcm = den_lcm.lcm(c.denom());
    }
    let int_poly: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| (c * BigRational::from_integer(den_lcm.clone())).to_integer())
        .collect();
    let a0 = int_poly.iter().find(|c| !c.is_zero()).cloned().unwrap_or_else(BigInt::one);
    let an = int_poly.last().cloned().unwrap_or_else(BigInt::one);
    let divisors = |n: &BigInt| -> Vec<BigInt> {
        let n = n.abs();
        let cap = BigInt::from(100_000u64);
        let mut out = Vec::new();
        let mut d = BigInt::one();
        while &d * &d <= n && d <= cap {
            if (&n % &d).is_zero() {
                out.push(d.clone());
                out.push(&n / &d);
            }
            d += 1;
        }
        out
    };
    let mut candidates: Vec<BigRational> = vec![BigRational::zero()];
    for a in divisors(&a0) {
        for b in divisors(&an) {
            let r = BigRational::new(a.clone(), b.clone());
            candidates.push(r.clone());
            candidates.push(-r);
        }
    }
    candidates.sort();
    candidates.dedup();
    let mut roots = Vec::new();
    for r in candidates {
        let mut mult = 0usize;
        let mut work = p.clone();
        let lin = Poly::new(q, vec![-r.clone(), BigRational::one()]);
        while work.degree().map_or(false, |d| d >= 1) {
            let (quo, rem) = work.divmod(&lin);
            if !rem.is_zero() {
                break;
            }
            mult += 1;
            work = quo;
        }
        if mult > 0 {
            roots.push((r, mult));
        }
    }
    roots
}

/// Monic greatest common divisor; gcd(a, 0) = monic(a).
pub fn poly_gcd<F: Field>(a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
    let mut a = a.clone();
    let mut b = b.clone();
    while !b.is_zero() {
        let r = a.rem(&b);
        a = b;
        b = r;
    }
    a.monic()
}

/// Monic least common multiple.
pub fn poly_lcm<F: Field>(a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
    if a.is_zero() || b.is_zero() {
        return Poly::zero(a.field());
    }
    let g = poly_gcd(a, b);
    a.mul(b).div_exact(&g).monic()
}

/// Squarefree decomposition f = lc * prod factor_i^mult_i with monic, pairwise
/// coprime, squarefree factors. In characteristic p an error is raised when a
/// multiplicity is divisible by p.
pub fn squarefree_decomposition<F: Field>(f: &Poly<F>) -> Result<Vec<(Poly<F>, usize)>> {
    assert!(!f.is_zero(), "squarefree decomposition of zero");
    if f.is_constant() {
        return Ok(Vec::new());
    }
    let fp = f.derivative();
    if fp.is_zero() {
        // f in K[x^p]
        return Err(Error::InseparableInput);
    }
    let mut out = Vec::new();
    let mut g = poly_gcd(f, &fp);
    let mut w = f.div_exact(&g).monic();
    let mut i = 1usize;
    while !w.is_constant() {
        let y = poly_gcd(&w, &g);
        let fac = w.div_exact(&y);
        if !fac.is_constant() {
            out.push((fac, i));
        }
        g = g.div_exact(&y).monic();
        w = y;
        i += 1;
    }
    // leftover in g means a multiplicity divisible by the characteristic
    if !g.is_constant() {
        return Err(Error::InseparableInput);
    }
    Ok(out)
}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self)
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    /// Canonical textual form compatible with the CLI grammar, e.g.
    /// `4*x^2 - 1/2*x + 3`.
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(out, "0");
        }
        let f = self.field;
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if f.is_zero(c) {
                continue;
            }
            let s = f.elem_to_string(c);
            let (sign, mag) = match s.strip_prefix('-') {
                Some(rest) => ("-", rest.to_string()),
                None => ("+", s),
            };
            if first {
                if sign == "-" {
                    write!(out, "-")?;
                }
                first = false;
            } else if sign == "-" {
                write!(out, " - ")?;
            } else {
                write!(out, " + ")?;
            }
            let unit = mag == "1";
            match (k, unit) {
                (0, _) => write!(out, "{mag}")?,
                (1, true) => write!(out, "x")?,
                (1, false) => write!(out, "{mag}*x")?,
                (_, true) => write!(out, "x^{k}")?,
                (_, false) => write!(out, "{mag}*x^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::{Fp, Rationals};

    fn q() -> Rationals {
        Rationals
    }

    #[test]
    fn gcd_examples() {
        // (x^2 - 1, x - 1) -> x - 1
        let a = Poly::from_i64(q(), &[-1, 0, 1]);
        let b = Poly::from_i64(q(), &[-1, 1]);
        assert_eq!(poly_gcd(&a, &b), b);
        // (x, 0) -> x
        let x = Poly::x(q());
        assert_eq!(poly_gcd(&x, &Poly::zero(q())), x);
        // over F_2: (x^2+1, x^2+x) -> x+1
        let f2 = Fp::new(2);
        let a = Poly::from_i64(f2, &[1, 0, 1]);
        let b = Poly::from_i64(f2, &[0, 1, 1]);
        assert_eq!(poly_gcd(&a, &b), Poly::from_i64(f2, &[1, 1]));
    }

    #[test]
    fn gcd_exhaustive_over_f2() {
        // cross-check the F_2 example by exhaustive factor search: the gcd
        // divides both inputs and any common divisor divides it
        let f2 = Fp::new(2);
        let a = Poly::from_i64(f2, &[1, 0, 1]);
        let b = Poly::from_i64(f2, &[0, 1, 1]);
        let g = poly_gcd(&a, &b);
        assert!(a.rem(&g).is_zero() && b.rem(&g).is_zero());
        // enumerate all monic polynomials of degree <= 2 over F_2
        for c0 in 0..2i64 {
            for c1 in 0..2i64 {
                for lead_deg in 1..=2usize {
                    let mut v = vec![c0, c1, 0];
                    v[lead_deg] = 1;
                    v.truncate(lead_deg + 1);
                    let d = Poly::from_i64(f2, &v);
                    if a.rem(&d).is_zero() && b.rem(&d).is_zero() {
                        assert!(g.rem(&d).is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn squarefree_examples() {
        // x^2 (x-1) -> [(x,2),(x-1,1)]
        let f = Poly::from_i64(q(), &[0, 0, -1, 1]); // x^3 - x^2 = x^2(x-1)
        let d = squarefree_decomposition(&f).unwrap();
        let x = Poly::x(q());
        let xm1 = Poly::from_i64(q(), &[-1, 1]);
        assert!(d.contains(&(x, 2)) && d.contains(&(xm1, 1)));
        // x - 5 -> [(x-5, 1)]
        let f = Poly::from_i64(q(), &[-5, 1]);
        assert_eq!(squarefree_decomposition(&f).unwrap(), vec![(f.clone(), 1)]);
    }

    #[test]
    fn squarefree_reconstructs_input() {
        // (x^2+1)^3 (x-2)
        let a = Poly::from_i64(q(), &[1, 0, 1]);
        let b = Poly::from_i64(q(), &[-2, 1]);
        let f = a.pow(3).mul(&b);
        let d = squarefree_decomposition(&f).unwrap();
        assert_eq!(d, vec![(b.clone(), 1), (a.clone(), 3)]);
        let mut rebuilt = Poly::constant(q(), f.leading_coeff());
        for (fac, m) in &d {
            rebuilt = rebuilt.mul(&fac.pow(*m as u64));
        }
        assert_eq!(rebuilt, f);
        // cross-check multiplicities by gcd with the derivative
        let g = poly_gcd(&f, &f.derivative());
        assert_eq!(g, a.pow(2));
    }

    #[test]
    fn squarefree_inseparable() {
        let f2 = Fp::new(2);
        let f = Poly::from_i64(f2, &[0, 0, 1]); // x^2 over F_2
        assert_eq!(squarefree_decomposition(&f), Err(Error::InseparableInput));
        let f3 = Fp::new(3);
        // x^3 (x-1) over F_3: multiplicity 3 divisible by 3
        let f = Poly::from_i64(f3, &[0, 0, 0, -1, 1]);
        assert_eq!(squarefree_decomposition(&f), Err(Error::InseparableInput));
        // but x^2 (x-1) over F_3 is fine
        let f = Poly::from_i64(f3, &[0, 0, -1, 1]);
        assert!(squarefree_decomposition(&f).is_ok());
    }

    #[test]
    fn divmod_roundtrip() {
        let a = Poly::from_i64(q(), &[3, -2, 0, 7, 1]);
        let b = Poly::from_i64(q(), &[1, 2, 1]);
        let (quo, rem) = a.divmod(&b);
        assert_eq!(quo.mul(&b).add(&rem), a);
        assert!(rem.degree_or_zero() < b.degree().unwrap());
    }

    #[test]
    fn taylor_shift() {
        // p(x) = x^2, p(x+1) = x^2 + 2x + 1
        let p = Poly::from_i64(q(), &[0, 0, 1]);
        let one = q().one();
        assert_eq!(p.compose_shift(&one), Poly::from_i64(q(), &[1, 2, 1]));
    }

    #[test]
    fn series_inverse_works() {
        let f5 = Fp::new(5);
        // 1/(1-x) = 1 + x + x^2 + ...
        let p = Poly::from_i64(f5, &[1, -1]);
        assert_eq!(p.series_inverse(4).unwrap(), vec![1, 1, 1, 1]);
    }
}
