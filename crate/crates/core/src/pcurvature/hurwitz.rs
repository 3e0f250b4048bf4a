//! Divided-power (Hurwitz) series over F_p: formal sums a_k gamma_k(x) with
//! gamma_m gamma_n = binom(m+n, m) gamma_{m+n}, standing for x^k/k! without
//! the division.

use crate::arith::field::{Field, Fp};
use crate::arith::ratfun::RatFun;
use crate::error::{Error, Result};
use crate::ore::DiffOp;
use crate::pcurvature::{companion_cleared, curvature_poly_sequence};

/// Context for divided-power arithmetic mod p: factorial tables for Lucas
/// binomials.
#[derive(Clone, Debug)]
pub struct DividedPowers {
    field: Fp,
    fact: Vec<u64>,
    inv_fact: Vec<u64>,
}

impl DividedPowers {
    pub fn new(field: Fp) -> Self {
        let p = field.characteristic();
        let mut fact = Vec::with_capacity(p as usize);
        fact.push(1);
        for k in 1..p {
            let prev = fact[(k - 1) as usize];
            fact.push(field.mul(&prev, &k));
        }
        let inv_fact = fact.iter().map(|f| field.inv(f)).collect();
        DividedPowers { field, fact, inv_fact }
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    /// k! mod p for k < p.
    pub fn factorial(&self, k: u64) -> u64 {
        self.fact[k as usize]
    }

    pub fn inv_factorial(&self, k: u64) -> u64 {
        self.inv_fact[k as usize]
    }

    /// binom(m, j) mod p by Lucas' theorem.
    pub fn binom(&self, mut m: u64, mut j: u64) -> u64 {
        let p = self.field.characteristic();
        let mut acc = 1u64;
        while j > 0 || m > 0 {
            let (md, jd) = (m % p, j % p);
            if jd > md {
                return 0;
            }
            let b = self.field.mul(
                &self.fact[md as usize],
                &self.field.mul(&self.inv_fact[jd as usize], &self.inv_fact[(md - jd) as usize]),
            );
            acc = self.field.mul(&acc, &b);
            m /= p;
            j /= p;
        }
        acc
    }

    pub fn zero(&self, order: usize) -> HurwitzSeries {
        HurwitzSeries { coeffs: vec![0; order] }
    }

    pub fn one(&self, order: usize) -> HurwitzSeries {
        let mut s = self.zero(order);
        if order > 0 {
            s.coeffs[0] = 1;
        }
        s
    }

    /// gamma_k as a series.
    pub fn gamma(&self, k: usize, order: usize) -> HurwitzSeries {
        let mut s = self.zero(order);
        if k < order {
            s.coeffs[k] = 1;
        }
        s
    }

    pub fn add(&self, a: &HurwitzSeries, b: &HurwitzSeries) -> HurwitzSeries {
        let n = a.order().min(b.order());
        HurwitzSeries {
            coeffs: (0..n).map(|k| self.field.add(&a.coeffs[k], &b.coeffs[k])).collect(),
        }
    }

    pub fn neg(&self, a: &HurwitzSeries) -> HurwitzSeries {
        HurwitzSeries { coeffs: a.coeffs.iter().map(|c| self.field.neg(c)).collect() }
    }

    pub fn scale(&self, a: &HurwitzSeries, c: u64) -> HurwitzSeries {
        HurwitzSeries { coeffs: a.coeffs.iter().map(|x| self.field.mul(x, &c)).collect() }
    }

    /// Product with gamma_m gamma_n = binom(m+n, m) gamma_{m+n}.
    pub fn mul(&self, a: &HurwitzSeries, b: &HurwitzSeries) -> HurwitzSeries {
        let n = a.order().min(b.order());
        let mut coeffs = vec![0u64; n];
        for i in 0..n {
            if a.coeffs[i] == 0 {
                continue;
            }
            for j in 0..n - i {
                if b.coeffs[j] == 0 {
                    continue;
                }
                let t = self.field.mul(
                    &self.field.mul(&a.coeffs[i], &b.coeffs[j]),
                    &self.binom((i + j) as u64, i as u64),
                );
                coeffs[i + j] = self.field.add(&coeffs[i + j], &t);
            }
        }
        HurwitzSeries { coeffs }
    }

    /// The derivation shifting indices down: d(sum a_k gamma_k) = sum a_{k+1} gamma_k.
    pub fn derive(&self, a: &HurwitzSeries) -> HurwitzSeries {
        HurwitzSeries { coeffs: a.coeffs.iter().skip(1).cloned().collect() }
    }

    /// Image of a polynomial: x^j maps to j! gamma_j, zero for j >= p.
    pub fn from_poly(&self, h: &crate::arith::poly::Poly<Fp>, order: usize) -> HurwitzSeries {
        let p = self.field.characteristic() as usize;
        let mut s = self.zero(order);
        for (j, c) in h.coeffs().iter().enumerate() {
            if j >= p || j >= order || *c == 0 {
                continue;
            }
            s.coeffs[j] = self.field.mul(c, &self.fact[j]);
        }
        s
    }

    /// Image of a rational function regular at 0, through its series expansion.
    pub fn from_ratfun(&self, f: &RatFun<Fp>, order: usize) -> Result<HurwitzSeries> {
        let p = self.field.characteristic() as usize;
        let series = f.series_at_zero(order)?;
        let mut s = self.zero(order);
        for (j, c) in series.iter().enumerate() {
            if j >= p || *c == 0 {
                continue;
            }
            s.coeffs[j] = self.field.mul(c, &self.fact[j]);
        }
        Ok(s)
    }
}

/// Coefficients a_0, a_1, ... of the formal symbols gamma_k(x), truncated.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HurwitzSeries {
    coeffs: Vec<u64>,
}

impl HurwitzSeries {
    pub fn from_coeffs(coeffs: Vec<u64>) -> Self {
        HurwitzSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> u64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == 0)
    }
}

/// Matrix of divided-power series: per-gamma-index constant matrices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HurwitzMatrix {
    n: usize,
    /// mats[k][i][j]: gamma_k coefficient of entry (i, j)
    mats: Vec<Vec<Vec<u64>>>,
}

impl HurwitzMatrix {
    pub fn size(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.mats.len()
    }

    pub fn coeff_matrix(&self, k: usize) -> &Vec<Vec<u64>> {
        &self.mats[k]
    }

    pub fn entry(&self, i: usize, j: usize) -> HurwitzSeries {
        HurwitzSeries { coeffs: self.mats.iter().map(|m| m[i][j]).collect() }
    }

    /// d^p/dx^p shifts gamma indices down by p.
    pub fn derive_p(&self, p: usize) -> HurwitzMatrix {
        HurwitzMatrix { n: self.n, mats: self.mats.iter().skip(p).cloned().collect() }
    }

    /// Hurwitz-ring matrix product, truncated to the smaller order.
    pub fn mul(&self, other: &HurwitzMatrix, dp: &DividedPowers) -> HurwitzMatrix {
        let field = dp.field();
        let order = self.order().min(other.order());
        let n = self.n;
        let mut mats = vec![vec![vec![0u64; n]; n]; order];
        for ka in 0..order {
            for kb in 0..order - ka {
                let b = dp.binom((ka + kb) as u64, ka as u64);
                if b == 0 {
                    continue;
                }
                for i in 0..n {
                    for m in 0..n {
                        let x = self.mats[ka][i][m];
                        if x == 0 {
                            continue;
                        }
                        for j in 0..n {
                            let y = other.mats[kb][m][j];
                            if y == 0 {
                                continue;
                            }
                            let t = field.mul(&field.mul(&x, &y), &b);
                            mats[ka + kb][i][j] = field.add(&mats[ka + kb][i][j], &t);
                        }
                    }
                }
            }
        }
        HurwitzMatrix { n, mats }
    }

    pub fn is_zero(&self) -> bool {
        self.mats.iter().all(|m| m.iter().all(|r| r.iter().all(|c| *c == 0)))
    }
}

/// Truncated fundamental solution over the divided-power ring:
/// S = sum_k (-1)^k B_k gamma_k, satisfying the companion system of `l`.
/// Requires the companion entries regular at 0 and order >= p.
pub fn hurwitz_fundamental_solution(l: &DiffOp<Fp>, order: usize) -> Result<HurwitzMatrix> {
    let field = l.coeffs().first().expect("zero operator").field();
    let p = field.characteristic();
    assert!(order >= p as usize, "truncation must be at least p");
    let dp = DividedPowers::new(field);
    let (num, f, _) = companion_cleared(l);
    if field.is_zero(&f.eval(&0)) {
        return Err(Error::PoleAtOrigin);
    }
    let n = num.size();
    let seq = curvature_poly_sequence(&num, &f, order - 1);
    // B_k = N_k / f^k as divided-power images: expand N_k * (1/f^k) at 0
    let mut mats = vec![vec![vec![0u64; n]; n]; order];
    for (k, nk) in seq.iter().enumerate() {
        let sign = if k % 2 == 0 { 1 } else { field.neg(&1) };
        let fpow = f.pow(k as u64);
        for i in 0..n {
            for j in 0..n {
                if nk.get(i, j).is_zero() {
                    continue;
                }
                let entry = RatFun::new(nk.get(i, j).clone(), fpow.clone());
                // gamma_k * image(entry), scaled by (-1)^k
                let img = dp.from_ratfun(&entry, order)?;
                for (m, c) in img.coeffs().iter().enumerate() {
                    if *c == 0 || k + m >= order {
                        continue;
                    }
                    let b = dp.binom((k + m) as u64, k as u64);
                    if b == 0 {
                        continue;
                    }
                    let t = field.mul(&field.mul(c, &b), &sign);
                    mats[k + m][i][j] = field.add(&mats[k + m][i][j], &t);
                }
            }
        }
    }
    Ok(HurwitzMatrix { n, mats })
}
