//! p-curvature by local divided-power series at several base points and
//! Chinese remaindering against the known denominator f(x)^p.

use crate::arith::field::{Field, Fp};
use crate::arith::poly::Poly;
use crate::arith::ratfun::RatFun;
use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::ore::DiffOp;
use crate::pcurvature::{companion_cleared, DividedPowers, PCurvatureMatrix, PcurvMethod};

type ConstMat = Vec<Vec<u64>>;

fn cmat_zero(n: usize) -> ConstMat {
    vec![vec![0; n]; n]
}

fn cmat_identity(n: usize) -> ConstMat {
    let mut m = cmat_zero(n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    m
}

fn cmat_mul(field: Fp, a: &ConstMat, b: &ConstMat) -> ConstMat {
    let n = a.len();
    let mut out = cmat_zero(n);
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == 0 {
                continue;
            }
            for j in 0..n {
                if b[k][j] == 0 {
                    continue;
                }
                let t = field.mul(&a[i][k], &b[k][j]);
                out[i][j] = field.add(&out[i][j], &t);
            }
        }
    }
    out
}

fn cmat_add_scaled(field: Fp, acc: &mut ConstMat, m: &ConstMat, c: u64) {
    for (ar, mr) in acc.iter_mut().zip(m) {
        for (a, x) in ar.iter_mut().zip(mr) {
            if *x != 0 {
                *a = field.add(a, &field.mul(x, &c));
            }
        }
    }
}

/// B_p(x) mod (x-a)^p for one base point: solve Y' = -BY in divided powers
/// to order 2p, then read off -d^pS/dx^p * S^{-1}. Returns the Taylor
/// coefficients (in x-a) of each matrix entry.
fn local_curvature_at(
    field: Fp,
    dp: &DividedPowers,
    num: &Mat<Poly<Fp>>,
    f: &Poly<Fp>,
    a: u64,
) -> Result<Vec<ConstMat>> {
    let p = field.characteristic() as usize;
    let n = num.size();
    let order = 2 * p;
    // Taylor expansion of B = num/f at a
    let f_shift = f.compose_shift(&a);
    let f_inv = f_shift.series_inverse(order)?;
    let mut b_taylor: Vec<ConstMat> = vec![cmat_zero(n); order];
    for i in 0..n {
        for j in 0..n {
            if num.get(i, j).is_zero() {
                continue;
            }
            let num_shift = num.get(i, j).compose_shift(&a);
            for (k, slot) in b_taylor.iter_mut().enumerate() {
                let mut acc = 0u64;
                for m in 0..=k.min(num_shift.degree_or_zero()) {
                    let c = num_shift.coeff(m);
                    if c != 0 && f_inv[k - m] != 0 {
                        acc = field.add(&acc, &field.mul(&c, &f_inv[k - m]));
                    }
                }
                slot[i][j] = acc;
            }
        }
    }
    // divided-power solve: S_{k+1} = -sum_{j<=min(k,p-1)} C(k,j) j! M_j S_{k-j}
    let mut s: Vec<ConstMat> = Vec::with_capacity(order);
    s.push(cmat_identity(n));
    for k in 0..order - 1 {
        let mut acc = cmat_zero(n);
        for j in 0..=k.min(p - 1) {
            let c = field.mul(&dp.binom(k as u64, j as u64), &dp.factorial(j as u64));
            if c == 0 {
                continue;
            }
            let prod = cmat_mul(field, &b_taylor[j], &s[k - j]);
            cmat_add_scaled(field, &mut acc, &prod, c);
        }
        // negate
        for row in acc.iter_mut() {
            for x in row.iter_mut() {
                *x = field.neg(x);
            }
        }
        s.push(acc);
    }
    // T = S^{-1} mod gamma_p
    let mut t: Vec<ConstMat> = Vec::with_capacity(p);
    t.push(cmat_identity(n));
    for m in 1..p {
        let mut acc = cmat_zero(n);
        for j in 1..=m {
            let c = dp.binom(m as u64, j as u64);
            if c == 0 {
                continue;
            }
            let prod = cmat_mul(field, &s[j], &t[m - j]);
            cmat_add_scaled(field, &mut acc, &prod, c);
        }
        for row in acc.iter_mut() {
            for x in row.iter_mut() {
                *x = field.neg(x);
            }
        }
        t.push(acc);
    }
    // U_k = sum_{j+m=k} C(k,j) S_{j+p} T_m; B_p gamma-coeff = -U_k, Taylor
    // coefficient = -U_k / k!
    let mut out = Vec::with_capacity(p);
    for k in 0..p {
        let mut u = cmat_zero(n);
        for j in 0..=k {
            let c = dp.binom(k as u64, j as u64);
            if c == 0 {
                continue;
            }
            let prod = cmat_mul(field, &s[j + p], &t[k - j]);
            cmat_add_scaled(field, &mut u, &prod, c);
        }
        let scale = field.neg(&dp.inv_factorial(k as u64));
        for row in u.iter_mut() {
            for x in row.iter_mut() {
                *x = field.mul(x, &scale);
            }
        }
        out.push(u);
    }
    Ok(out)
}

/// p-curvature by local series at the given sample points, reconstructed
/// globally by CRT against the denominator f(x)^p.
pub fn pcurvature_local_series_crt_at(l: &DiffOp<Fp>, points: &[u64]) -> Result<PCurvatureMatrix> {
    let field = l.coeffs().first().expect("zero operator").field();
    let p = field.characteristic();
    let (num, f, d) = companion_cleared(l);
    let n = num.size();
    let needed = d + 1; // (d+1) * p > d * p
    if points.len() < needed {
        return Err(Error::NotEnoughSamplePoints { needed, found: points.len() });
    }
    for &a in points {
        if field.is_zero(&f.eval(&a)) {
            return Err(Error::PoleAtSamplePoint);
        }
    }
    let dp = DividedPowers::new(field);

    // incremental CRT per entry: C == f(a) * B_p local, modulo (x-a)^p
    let mut c_mat: Mat<Poly<Fp>> = Mat::build(n, |_, _| Poly::zero(field));
    let mut modulus = Poly::one(field);
    for &a in points.iter().take(needed) {
        let local = local_curvature_at(field, &dp, &num, &f, a)?;
        let fa = f.eval(&a);
        // local polynomial in y = x-a for each entry, times f(a)
        // (f(x)^p == f(a) mod (x-a)^p by Frobenius)
        let mod_shift = modulus.compose_shift(&a);
        let mod_inv = if modulus.is_one() {
            Vec::new()
        } else {
            mod_shift.series_inverse(p as usize)?
        };
        let mut next = Mat::build(n, |_, _| Poly::zero(field));
        for i in 0..n {
            for j in 0..n {
                let target: Vec<u64> =
                    (0..p as usize).map(|k| field.mul(&local[k][i][j], &fa)).collect();
                let target = Poly::new(field, target); // in the variable x - a
                if modulus.is_one() {
                    *next.get_mut(i, j) = target.compose_shift(&field.neg(&a));
                    continue;
                }
                // delta = (target - C(y+a)) * modulus^{-1} mod y^p
                let c_shift = c_mat.get(i, j).compose_shift(&a);
                let c_trunc = Poly::new(
                    field,
                    (0..p as usize).map(|k| c_shift.coeff(k)).collect::<Vec<_>>(),
                );
                let delta = target.sub(&c_trunc);
                if delta.is_zero() {
                    *next.get_mut(i, j) = c_mat.get(i, j).clone();
                    continue;
                }
                let mut corr = vec![0u64; p as usize];
                for (k, slot) in corr.iter_mut().enumerate() {
                    let mut acc = 0u64;
                    for m in 0..=k.min(delta.degree_or_zero()) {
                        let dm = delta.coeff(m);
                        if dm != 0 && mod_inv[k - m] != 0 {
                            acc = field.add(&acc, &field.mul(&dm, &mod_inv[k - m]));
                        }
                    }
                    *slot = acc;
                }
                let corr = Poly::new(field, corr).compose_shift(&field.neg(&a));
                *next.get_mut(i, j) = c_mat.get(i, j).add(&corr.mul(&modulus));
            }
        }
        c_mat = next;
        let lin = Poly::new(field, vec![field.neg(&a), field.one()]);
        modulus = modulus.mul(&lin.pow(p));
    }
    let fpow = RatFun::from_poly(f.pow(p));
    let entries = c_mat.map(|c| RatFun::from_poly(c.clone()).div(&fpow));
    Ok(PCurvatureMatrix::new(p, PcurvMethod::LocalSeriesCrt, entries, f, d))
}

/// Default sample points 0, 1, 2, ... in F_p, skipping poles of the system;
/// fails when the field is exhausted before reaching the degree bound.
pub fn pcurvature_local_series_crt(l: &DiffOp<Fp>) -> Result<PCurvatureMatrix> {
    let field = l.coeffs().first().expect("zero operator").field();
    let p = field.characteristic();
    let (_, f, d) = companion_cleared(l);
    let needed = d + 1;
    let mut points = Vec::with_capacity(needed);
    for a in 0..p {
        if !field.is_zero(&f.eval(&a)) {
            points.push(a);
            if points.len() == needed {
                break;
            }
        }
    }
    if points.len() < needed {
        return Err(Error::NotEnoughSamplePoints { needed, found: points.len() });
    }
    pcurvature_local_series_crt_at(l, &points)
}


#[cfg(test)]
mod dbg_tests {
    use super::*;
    use crate::pcurvature::{companion_cleared, pcurvature_recurrence};

    #[test]
    fn local_values_match_truth_pointwise() {
        let fp = Fp::new(3);
        let l = DiffOp::from_poly_coeffs(vec![
            Poly::from_i64(fp, &[1]),
            Poly::from_i64(fp, &[2]),
            Poly::from_i64(fp, &[2]),
            Poly::from_i64(fp, &[0, 2]),
        ]);
        let truth = pcurvature_recurrence(&l);
        let (num, f, _) = companion_cleared(&l);
        let dp = DividedPowers::new(fp);
        for a in [1u64, 2] {
            let local = local_curvature_at(fp, &dp, &num, &f, a).unwrap();
            for i in 0..3 {
                for j in 0..3 {
                    let want = truth
                        .entries()
                        .get(i, j)
                        .compose_shift(&a)
                        .series_at_zero(3)
                        .unwrap();
                    let got: Vec<u64> = (0..3).map(|k| local[k][i][j]).collect();
                    assert_eq!(got, want, "a={a} entry ({i},{j})");
                }
            }
        }
    }
}
