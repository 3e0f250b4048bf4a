//! Diagonals of rational functions in two or three variables by truncated
//! multivariate expansion.

use num_rational::BigRational;
use num_traits::Zero;

use crate::arith::field::Rationals;
use crate::error::{Error, Result};
use crate::series::TruncatedSeries;

/// Sparse multivariate polynomial in up to three variables over Q.
#[derive(Clone, Debug, PartialEq)]
pub struct MPoly {
    arity: usize,
    terms: Vec<([usize; 3], BigRational)>,
}

impl MPoly {
    pub fn new(arity: usize, terms: Vec<([usize; 3], BigRational)>) -> Self {
        assert!((1..=3).contains(&arity), "arity must be 1..=3");
        let mut out: Vec<([usize; 3], BigRational)> = Vec::new();
        for (e, c) in terms {
            assert!(e[arity..].iter().all(|&x| x == 0), "exponent beyond arity");
            if c.is_zero() {
                continue;
            }
            match out.iter_mut().find(|(f, _)| *f == e) {
                Some((_, acc)) => *acc += c,
                None => out.push((e, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        out.sort_by_key(|(e, _)| *e);
        MPoly { arity, terms: out }
    }

    pub fn constant(arity: usize, c: BigRational) -> Self {
        MPoly::new(arity, vec![([0, 0, 0], c)])
    }

    /// The variable with index `v`.
    pub fn var(arity: usize, v: usize) -> Self {
        assert!(v < arity);
        let mut e = [0, 0, 0];
        e[v] = 1;
        MPoly::new(arity, vec![(e, BigRational::from_integer(1.into()))])
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> &[([usize; 3], BigRational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_term(&self) -> BigRational {
        self.terms
            .iter()
            .find(|(e, _)| *e == [0, 0, 0])
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        MPoly::new(self.arity.max(other.arity), terms)
    }

    pub fn neg(&self) -> Self {
        MPoly {
            arity: self.arity,
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms = Vec::new();
        for (e, c) in &self.terms {
            for (f, d) in &other.terms {
                terms.push(([e[0] + f[0], e[1] + f[1], e[2] + f[2]], c * d));
            }
        }
        MPoly::new(self.arity.max(other.arity), terms)
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut acc = MPoly::constant(self.arity, BigRational::from_integer(1.into()));
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

/// A multivariate rational function kept as an unnormalized numerator /
/// denominator pair; only expansion at the origin is needed.
#[derive(Clone, Debug)]
pub struct MultiRatFun {
    pub num: MPoly,
    pub den: MPoly,
}

impl MultiRatFun {
    pub fn from_poly(num: MPoly) -> Self {
        let arity = num.arity();
        MultiRatFun { num, den: MPoly::constant(arity, BigRational::from_integer(1.into())) }
    }

    pub fn arity(&self) -> usize {
        self.num.arity().max(self.den.arity())
    }
}

/// Coefficients a_{i,..,i} for i < t of the Taylor expansion of F at the
/// origin, by dense box expansion with per-variable cutoff t.
pub fn diagonal_small(f: &MultiRatFun, t: usize) -> Result<TruncatedSeries<Rationals>> {
    let arity = f.arity();
    if !(2..=3).contains(&arity) {
        return Err(Error::NoExpansionAtOrigin);
    }
    if f.den.constant_term().is_zero() {
        return Err(Error::NoExpansionAtOrigin);
    }
    let dims = if arity == 2 { [t, t, 1] } else { [t, t, t] };
    let size = dims[0] * dims[1] * dims[2];
    let idx = |e: [usize; 3]| (e[0] * dims[1] + e[1]) * dims[2] + e[2];
    let q0_inv = BigRational::from_integer(1.into()) / f.den.constant_term();

    let mut h: Vec<BigRational> = vec![BigRational::zero(); size];
    let num_at = |e: [usize; 3]| {
        f.num
            .terms()
            .iter()
            .find(|(g, _)| *g == e)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigRational::zero)
    };
    for i in 0..dims[0] {
        for j in 0..dims[1] {
            for k in 0..dims[2] {
                let e = [i, j, k];
                let mut acc = num_at(e);
                for (g, c) in f.den.terms() {
                    if *g == [0, 0, 0] {
                        continue;
                    }
                    if g[0] <= i && g[1] <= j && g[2] <= k {
                        let prev = [i - g[0], j - g[1], k - g[2]];
                        let v = &h[idx(prev)];
                        if !v.is_zero() {
                            acc -= c * v;
                        }
                    }
                }
                h[idx(e)] = acc * &q0_inv;
            }
        }
    }
    let diag = (0..t)
        .map(|i| h[idx(if arity == 2 { [i, i, 0] } else { [i, i, i] })].clone())
        .collect();
    Ok(TruncatedSeries::new(Rationals, diag, t))
}
