//! Truncated power series engine: series arithmetic, operator-to-recurrence
//! conversion, P-recursive unrolling, series solving, algebraic series mod p
//! by Hensel lifting, small-arity diagonals and algebraic-relation checks.

pub mod algebraic;
pub mod diagonal;
pub mod recurrence;
pub mod solve;

pub use algebraic::{algebraic_series_mod_p, check_algebraic_relation, BivarPoly};
pub use diagonal::{diagonal_small, MultiRatFun};
pub use recurrence::{operator_to_recurrence, recurrence_unroll, PRecurrence};
pub use solve::{hypergeom_series, series_solve};

use std::fmt;

use crate::arith::field::Field;
use crate::arith::poly::Poly;
use crate::arith::ratfun::RatFun;
use crate::error::Result;

/// Power series mod x^T. Arithmetic never reads beyond the truncation order;
/// products truncate to the smaller of the operand orders.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> TruncatedSeries<F> {
    pub fn new(field: F, mut coeffs: Vec<F::Elem>, order: usize) -> Self {
        coeffs.truncate(order);
        while coeffs.len() < order {
            coeffs.push(field.zero());
        }
        TruncatedSeries { field, coeffs }
    }

    pub fn zero(field: F, order: usize) -> Self {
        TruncatedSeries::new(field, Vec::new(), order)
    }

    pub fn one(field: F, order: usize) -> Self {
        TruncatedSeries::new(field, vec![field.one()], order)
    }

    pub fn from_i64(field: F, coeffs: &[i64], order: usize) -> Self {
        TruncatedSeries::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect(), order)
    }

    pub fn from_poly(p: &Poly<F>, order: usize) -> Self {
        TruncatedSeries::new(p.field(), p.coeffs().to_vec(), order)
    }

    /// Expansion of a rational function regular at the origin.
    pub fn from_ratfun(f: &RatFun<F>, order: usize) -> Result<Self> {
        Ok(TruncatedSeries { field: f.field(), coeffs: f.series_at_zero(order)? })
    }

    pub fn field(&self) -> F {
        self.field
    }

    /// Truncation order T: coefficients c_0 .. c_{T-1} are known.
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> F::Elem {
        debug_assert!(k < self.order(), "coefficient beyond truncation");
        self.coeffs.get(k).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| self.field.is_zero(c))
    }

    /// Index of the first nonzero coefficient, if any.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !self.field.is_zero(c))
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order());
        TruncatedSeries { field: self.field, coeffs: self.coeffs[..order].to_vec() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = self.field;
        let n = self.order().min(other.order());
        TruncatedSeries {
            field: f,
            coeffs: (0..n).map(|i| f.add(&self.coeffs[i], &other.coeffs[i])).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let f = self.field;
        let n = self.order().min(other.order());
        TruncatedSeries {
            field: f,
            coeffs: (0..n).map(|i| f.sub(&self.coeffs[i], &other.coeffs[i])).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        let f = self.field;
        TruncatedSeries { field: f, coeffs: self.coeffs.iter().map(|c| f.neg(c)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let f = self.field;
        let n = self.order().min(other.order());
        let mut coeffs = vec![f.zero(); n];
        for i in 0..n {
            if f.is_zero(&self.coeffs[i]) {
                continue;
            }
            for j in 0..n - i {
                let t = f.mul(&self.coeffs[i], &other.coeffs[j]);
                coeffs[i + j] = f.add(&coeffs[i + j], &t);
            }
        }
        TruncatedSeries { field: f, coeffs }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = self.field;
        TruncatedSeries { field: f, coeffs: self.coeffs.iter().map(|a| f.mul(a, c)).collect() }
    }

    /// Termwise derivative; the order drops by one.
    pub fn derivative(&self) -> Self {
        let f = self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.mul_i64(c, i as i64))
            .collect();
        TruncatedSeries { field: f, coeffs }
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn inverse(&self) -> Result<Self> {
        let p = Poly::new(self.field, self.coeffs.clone());
        let coeffs = p.series_inverse(self.order())?;
        Ok(TruncatedSeries { field: self.field, coeffs })
    }

    /// Composition self(inner); the inner series must have zero constant term.
    pub fn compose(&self, inner: &Self) -> Self {
        let f = self.field;
        let n = self.order().min(inner.order());
        assert!(n == 0 || f.is_zero(&inner.coeffs[0]), "composition needs valuation >= 1");
        let inner = inner.truncate(n);
        let mut acc = TruncatedSeries::zero(f, n);
        let mut pw = TruncatedSeries::one(f, n);
        for k in 0..n {
            acc = acc.add(&pw.scale(&self.coeffs[k]));
            if k + 1 < n {
                pw = pw.mul(&inner);
            }
        }
        acc
    }

    /// Raises to an integer power, staying at this truncation order.
    pub fn pow(&self, e: u64) -> Self {
        let mut acc = TruncatedSeries::one(self.field, self.order());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

impl<F: Field> fmt::Debug for TruncatedSeries<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series[{}](", self.order())?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", self.field.elem_to_string(c))?;
        }
        write!(f, ")")
    }
}
