//! p-curvature of operators over F_p(x) by three independent algorithms,
//! Cartier-lemma testing with witnesses, fundamental solution matrices and
//! the characteristic-zero valuation relations they control.

pub mod charzero;
pub mod hurwitz;
pub mod local;

pub use charzero::{char0_series_relations, CharZeroReport};
pub use hurwitz::{hurwitz_fundamental_solution, DividedPowers, HurwitzMatrix, HurwitzSeries};
pub use local::{pcurvature_local_series_crt, pcurvature_local_series_crt_at};

use crate::arith::field::{Field, Fp};
use crate::arith::poly::{poly_lcm, Poly};
use crate::arith::ratfun::RatFun;
use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::ore::DiffOp;

/// The companion matrix of a monic operator of degree n >= 1: superdiagonal
/// entries -1, last row (b_0, ..., b_{n-1}), zeros elsewhere. The operator
/// equation L(y) = 0 is equivalent to Y' + B Y = 0 for Y = (y, y', ...).
pub fn companion_matrix<F: Field>(l: &DiffOp<F>) -> Mat<RatFun<F>> {
    let monic = l.monicize();
    let n = monic.degree().expect("companion of the zero operator");
    assert!(n >= 1, "companion matrix needs degree >= 1");
    let field = monic.coeffs()[0].field();
    Mat::build(n, |i, j| {
        if i + 1 == n {
            monic.coeff(j)
        } else if j == i + 1 {
            RatFun::from_i64(field, -1)
        } else {
            RatFun::zero(field)
        }
    })
}

/// Cleared companion data of the monicized operator: the polynomial matrix
/// N = f*B, the monic common denominator f of the b_i, and the degree bound
/// d = max(deg f, deg(f*b_i)).
pub(crate) fn companion_cleared<F: Field>(l: &DiffOp<F>) -> (Mat<Poly<F>>, Poly<F>, usize) {
    let monic = l.monicize();
    let n = monic.degree().expect("companion of the zero operator");
    assert!(n >= 1);
    let field = monic.coeffs()[0].field();
    let mut f = Poly::one(field);
    for j in 0..n {
        f = poly_lcm(&f, monic.coeff(j).den());
    }
    let numerators: Vec<Poly<F>> = (0..n)
        .map(|j| {
            let b = monic.coeff(j);
            b.num().mul(&f.div_exact(b.den()))
        })
        .collect();
    let d = numerators
        .iter()
        .map(|p| p.degree_or_zero())
        .chain([f.degree_or_zero()])
        .max()
        .unwrap();
    let mat = Mat::build(n, |i, j| {
        if i + 1 == n {
            numerators[j].clone()
        } else if j == i + 1 {
            f.neg()
        } else {
            Poly::zero(field)
        }
    });
    (mat, f, d)
}

// --- polynomial-matrix helpers -------------------------------------------

pub(crate) fn poly_mat_identity<F: Field>(field: F, n: usize) -> Mat<Poly<F>> {
    Mat::build(n, |i, j| if i == j { Poly::one(field) } else { Poly::zero(field) })
}

/// The sequence N_0 = I, N_{k+1} = N_k' f - k N_k f' + N N_k for k < count,
/// so that B_k = N_k / f^k are the iterated matrices of Delta: F -> F' + BF.
pub(crate) fn curvature_poly_sequence<F: Field>(
    companion_num: &Mat<Poly<F>>,
    f: &Poly<F>,
    count: usize,
) -> Vec<Mat<Poly<F>>> {
    let field = f.field();
    let n = companion_num.size();
    let fder = f.derivative();
    let mut seq = Vec::with_capacity(count + 1);
    seq.push(poly_mat_identity(field, n));
    for k in 0..count {
        let cur = &seq[k];
        let next = Mat::build(n, |i, j| {
            let mut t = cur.get(i, j).derivative().mul(f);
            if k > 0 && !cur.get(i, j).is_zero() {
                t = t.sub(&cur.get(i, j).mul(&fder).scale(&field.from_i64(k as i64)));
            }
            let mut prod = Poly::zero(field);
            for m in 0..n {
                if companion_num.get(i, m).is_zero() || cur.get(m, j).is_zero() {
                    continue;
                }
                prod = prod.add(&companion_num.get(i, m).mul(cur.get(m, j)));
            }
            t.add(&prod)
        });
        seq.push(next);
    }
    seq
}

// --- p-curvature matrices --------------------------------------------------

/// Which algorithm produced a p-curvature matrix.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PcurvMethod {
    Recurrence,
    Remainders,
    LocalSeriesCrt,
}

/// The matrix of Delta^p in the canonical basis, over F_p(x). Entries are in
/// lowest terms; `denom_base` f and `degree_bound` d record the shape bound
/// (entries equal C(x)/f(x)^p with deg C <= dp).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PCurvatureMatrix {
    prime: u64,
    method: PcurvMethod,
    entries: Mat<RatFun<Fp>>,
    denom_base: Poly<Fp>,
    degree_bound: usize,
}

impl PCurvatureMatrix {
    pub(crate) fn new(
        prime: u64,
        method: PcurvMethod,
        entries: Mat<RatFun<Fp>>,
        denom_base: Poly<Fp>,
        degree_bound: usize,
    ) -> Self {
        PCurvatureMatrix { prime, method, entries, denom_base, degree_bound }
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn method(&self) -> PcurvMethod {
        self.method
    }

    pub fn size(&self) -> usize {
        self.entries.size()
    }

    pub fn entries(&self) -> &Mat<RatFun<Fp>> {
        &self.entries
    }

    pub fn denom_base(&self) -> &Poly<Fp> {
        &self.denom_base
    }

    pub fn degree_bound(&self) -> usize {
        self.degree_bound
    }

    pub fn is_zero(&self) -> bool {
        self.entries.rows().iter().all(|r| r.iter().all(|e| e.is_zero()))
    }

    /// Checks the entry shape: each entry times f^p is a polynomial of degree
    /// at most dp.
    pub fn shape_ok(&self) -> bool {
        let p = self.prime;
        let fpow = self.denom_base.pow(p);
        self.entries.rows().iter().all(|row| {
            row.iter().all(|e| {
                if e.is_zero() {
                    return true;
                }
                let scaled = e.mul(&RatFun::from_poly(fpow.clone()));
                scaled.is_polynomial()
                    && scaled.num().degree_or_zero() as u64 <= self.degree_bound as u64 * p
            })
        })
    }

    /// Same matrix content regardless of producing method.
    pub fn same_matrix(&self, other: &PCurvatureMatrix) -> bool {
        self.prime == other.prime && self.entries == other.entries
    }

    /// Characteristic polynomial det(lambda I - M), coefficients low-first
    /// over F_p(x); length n+1 with leading coefficient 1.
    pub fn charpoly(&self) -> Vec<RatFun<Fp>> {
        charpoly_of(&self.entries)
    }
}

/// Matrix of Delta^p by the inductive recurrence B_{k+1} = B_k' + B B_k from
/// B_0 = I (the operator is monicized internally).
pub fn pcurvature_recurrence(l: &DiffOp<Fp>) -> PCurvatureMatrix {
    let p = char_of(l);
    let (num, f, d) = companion_cleared(l);
    let seq = curvature_poly_sequence(&num, &f, p as usize);
    let fpow = RatFun::from_poly(f.pow(p));
    let entries = seq[p as usize].map(|c| RatFun::from_poly(c.clone()).div(&fpow));
    PCurvatureMatrix::new(p, PcurvMethod::Recurrence, entries, f, d)
}

/// Closed form for order 1: b_p = b^(p-1) + b^p, for y' + b y = 0 over F_p.
pub fn pcurvature_order1_closed_form(b: &RatFun<Fp>) -> RatFun<Fp> {
    let field = b.field();
    let p = field.characteristic();
    if b.is_zero() {
        return RatFun::zero(field);
    }
    // (p-1)-st derivative in cleared form: b^(k) = A_k / D^{k+1}
    let den = b.den();
    let dder = den.derivative();
    let mut a = b.num().clone();
    for k in 1..p {
        a = a.derivative().mul(den).sub(&a.mul(&dder).scale(&field.from_i64(k as i64)));
    }
    // b^p = frob(num)/frob(den) and frob(den) = den^p
    let num_p = frobenius_spread(b.num());
    RatFun::new(a.add(&num_p), den.pow(p))
}

/// h(x)^p = h(x^p) over F_p: spreads exponents by p.
pub fn frobenius_spread(h: &Poly<Fp>) -> Poly<Fp> {
    let field = h.field();
    let p = field.characteristic() as usize;
    if h.is_zero() {
        return h.clone();
    }
    let mut coeffs = vec![0u64; h.degree_or_zero() * p + 1];
    for (i, c) in h.coeffs().iter().enumerate() {
        coeffs[i * p] = *c;
    }
    Poly::new(field, coeffs)
}

/// Remainders of Dx^k by the monicized operator in cleared form:
/// rem(Dx^k) = sum_j R[k][j]/f^k Dx^j. Returns R_{p}, ..., R_{p+n-1} rows.
fn cleared_remainders(l: &DiffOp<Fp>) -> (Vec<Vec<Poly<Fp>>>, Poly<Fp>, usize) {
    let monic = l.monicize();
    let n = monic.degree().unwrap();
    let field = monic.coeffs()[0].field();
    let p = field.characteristic() as usize;
    let mut f = Poly::one(field);
    for j in 0..n {
        f = poly_lcm(&f, monic.coeff(j).den());
    }
    let numerators: Vec<Poly<Fp>> = (0..n)
        .map(|j| {
            let b = monic.coeff(j);
            b.num().mul(&f.div_exact(b.den()))
        })
        .collect();
    let d = numerators
        .iter()
        .map(|q| q.degree_or_zero())
        .chain([f.degree_or_zero()])
        .max()
        .unwrap();
    let fder = f.derivative();
    // R_0 = (1, 0, .., 0) at denominator power 0
    let mut r: Vec<Poly<Fp>> = (0..n)
        .map(|j| if j == 0 { Poly::one(field) } else { Poly::zero(field) })
        .collect();
    let mut out = Vec::with_capacity(n);
    for k in 0..p + n - 1 {
        if k >= p {
            out.push(r.clone());
        }
        let top = r[n - 1].clone();
        let kk = field.from_i64(k as i64);
        let mut next = Vec::with_capacity(n);
        for j in 0..n {
            // f * R[j-1]  +  R[j]' f - k R[j] f'  -  R[n-1] * numerators[j]
            let mut t = r[j].derivative().mul(&f);
            if k > 0 && !r[j].is_zero() {
                t = t.sub(&r[j].mul(&fder).scale(&kk));
            }
            if j >= 1 && !r[j - 1].is_zero() {
                t = t.add(&r[j - 1].mul(&f));
            }
            if !top.is_zero() && !numerators[j].is_zero() {
                t = t.sub(&top.mul(&numerators[j]));
            }
            next.push(t);
        }
        r = next;
    }
    out.push(r);
    (out, f, d)
}

/// Matrix of Delta^p read off the remainders of Dx^{p+i} by L: the remainder
/// coefficient array, transposed and negated to match the recurrence method.
pub fn pcurvature_via_remainders(l: &DiffOp<Fp>) -> PCurvatureMatrix {
    let p = char_of(l);
    let n = l.degree().expect("p-curvature of the zero operator");
    assert!(n >= 1);
    let (rem_rows, f, d) = cleared_remainders(l);
    // rem_rows[i][j] / f^{p+i} is the Dx^j coefficient of rem(Dx^{p+i});
    // orientation (transpose and sign) fixed against the recurrence method
    let entries = Mat::build(n, |i, j| {
        let denom = RatFun::from_poly(f.pow(p + i as u64));
        RatFun::from_poly(rem_rows[i][j].clone()).div(&denom).neg()
    });
    PCurvatureMatrix::new(p, PcurvMethod::Remainders, entries, f, d)
}

fn char_of(l: &DiffOp<Fp>) -> u64 {
    l.coeffs()
        .first()
        .expect("p-curvature of the zero operator")
        .field()
        .characteristic()
}

// --- characteristic polynomial ----------------------------------------------

/// Polynomials in an indeterminate lambda with rational-function coefficients,
/// low-first.
fn lpoly_mul(a: &[RatFun<Fp>], b: &[RatFun<Fp>], field: Fp) -> Vec<RatFun<Fp>> {
    let mut out = vec![RatFun::zero(field); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    out
}

fn lpoly_add(a: &[RatFun<Fp>], b: &[RatFun<Fp>], field: Fp) -> Vec<RatFun<Fp>> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(|| RatFun::zero(field));
            let y = b.get(i).cloned().unwrap_or_else(|| RatFun::zero(field));
            x.add(&y)
        })
        .collect()
}

/// det(lambda I - M) by minor expansion over column subsets (n <= 5 in
/// practice).
pub fn charpoly_of(m: &Mat<RatFun<Fp>>) -> Vec<RatFun<Fp>> {
    let n = m.size();
    let field = m.get(0, 0).field();
    // lambda I - M as lambda-polynomial entries
    let entry = |i: usize, j: usize| -> Vec<RatFun<Fp>> {
        if i == j {
            vec![m.get(i, j).neg(), RatFun::one(field)]
        } else {
            vec![m.get(i, j).neg()]
        }
    };
    // recursive expansion on the first remaining row, memoized by column mask
    fn det(
        row: usize,
        mask: u32,
        n: usize,
        entry: &dyn Fn(usize, usize) -> Vec<RatFun<Fp>>,
        memo: &mut std::collections::HashMap<u32, Vec<RatFun<Fp>>>,
        field: Fp,
    ) -> Vec<RatFun<Fp>> {
        if row == n {
            return vec![RatFun::one(field)];
        }
        if let Some(v) = memo.get(&mask) {
            return v.clone();
        }
        let mut acc = vec![RatFun::zero(field)];
        let mut sign_neg = false;
        for j in 0..n {
            if mask & (1 << j) != 0 {
                continue;
            }
            let e = entry(row, j);
            let sub = det(row + 1, mask | (1 << j), n, entry, memo, field);
            let mut term = lpoly_mul(&e, &sub, field);
            if sign_neg {
                term = term.iter().map(|c| c.neg()).collect();
            }
            acc = lpoly_add(&acc, &term, field);
            sign_neg = !sign_neg;
        }
        memo.insert(mask, acc.clone());
        acc
    }
    let mut memo = std::collections::HashMap::new();
    let mut out = det(0, 0, n, &entry, &mut memo, field);
    while out.len() < n + 1 {
        out.push(RatFun::zero(field));
    }
    out
}

/// True iff the reduced fraction has numerator and denominator supported on
/// exponents divisible by p, i.e. lies in F_p(x^p).
pub fn in_frobenius_subfield(r: &RatFun<Fp>) -> bool {
    let p = r.field().characteristic() as usize;
    let ok = |h: &Poly<Fp>| h.coeffs().iter().enumerate().all(|(i, c)| *c == 0 || i % p == 0);
    ok(r.num()) && ok(r.den())
}

// --- Cartier test and witnesses ---------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PcurvStatus {
    Zero,
    NilpotentNonzero,
    Nonzero,
    BadReduction,
}

impl PcurvStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            PcurvStatus::Zero => "zero",
            PcurvStatus::NilpotentNonzero => "nilpotent-nonzero",
            PcurvStatus::Nonzero => "nonzero",
            PcurvStatus::BadReduction => "bad-reduction",
        }
    }
}

#[derive(Clone, Debug)]
pub enum Witness {
    /// Full basis of polynomial solutions of degree < pd, independent over
    /// F_p(x^p).
    PolynomialBasis(Vec<Poly<Fp>>),
    /// The nonzero remainder of Dx^p by L.
    NonzeroRemainder(DiffOp<Fp>),
}

/// Per-prime verdict with characteristic polynomial and a witness.
#[derive(Clone, Debug)]
pub struct PCurvatureReport {
    pub prime: u64,
    pub status: PcurvStatus,
    pub charpoly: Option<Vec<RatFun<Fp>>>,
    pub witness: Option<Witness>,
}

/// Zero p-curvature iff the remainder of Dx^p by L vanishes iff a full basis
/// of polynomial solutions of degree < pd exists; produces the corresponding
/// witness.
pub fn cartier_test(l: &DiffOp<Fp>) -> PCurvatureReport {
    let p = char_of(l);
    let n = l.degree().expect("Cartier test of the zero operator");
    assert!(n >= 1, "Cartier test needs degree >= 1");
    let curb = pcurvature_recurrence(l);
    let rem = l.rem_partial_pow(p as usize).expect("nonzero operator");
    debug_assert_eq!(curb.is_zero(), rem.is_zero());
    let charpoly = curb.charpoly();
    if curb.is_zero() {
        let basis = polynomial_solution_basis(l, curb.degree_bound());
        PCurvatureReport {
            prime: p,
            status: PcurvStatus::Zero,
            charpoly: Some(charpoly),
            witness: Some(Witness::PolynomialBasis(basis)),
        }
    } else {
        let nilpotent = charpoly[..n].iter().all(|c| c.is_zero());
        PCurvatureReport {
            prime: p,
            status: if nilpotent { PcurvStatus::NilpotentNonzero } else { PcurvStatus::Nonzero },
            charpoly: Some(charpoly),
            witness: Some(Witness::NonzeroRemainder(rem)),
        }
    }
}

/// All polynomial solutions of degree < bound, as a nullspace basis over F_p.
fn polynomial_nullspace(l: &DiffOp<Fp>, bound: usize) -> Vec<Poly<Fp>> {
    let cleared = l.clear_denominators();
    let polys = cleared.poly_coeffs().expect("denominators cleared");
    let field = cleared.coeffs()[0].field();
    let maxdeg: usize = polys.iter().map(|q| q.degree_or_zero()).max().unwrap();
    let rows = bound + maxdeg + 1;
    // column k: coefficients of L(x^k)
    let mut m = vec![vec![0u64; bound]; rows];
    for k in 0..bound {
        for (i, q) in polys.iter().enumerate() {
            if k < i {
                continue;
            }
            // falling factorial k(k-1)...(k-i+1)
            let mut fall = field.one();
            for r in 0..i as i64 {
                fall = field.mul(&fall, &field.from_i64(k as i64 - r));
            }
            if fall == 0 {
                continue;
            }
            for (j, c) in q.coeffs().iter().enumerate() {
                if *c == 0 {
                    continue;
                }
                let row = k - i + j;
                m[row][k] = field.add(&m[row][k], &field.mul(c, &fall));
            }
        }
    }
    // Gaussian elimination, recording pivot columns
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; bound];
    let mut rank = 0usize;
    for col in 0..bound {
        let Some(pr) = (rank..rows).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, pr);
        let inv = field.inv(&m[rank][col]);
        for j in col..bound {
            m[rank][j] = field.mul(&m[rank][j], &inv);
        }
        for r in 0..rows {
            if r != rank && m[r][col] != 0 {
                let factor = m[r][col];
                for j in col..bound {
                    let t = field.mul(&factor, &m[rank][j]);
                    m[r][j] = field.sub(&m[r][j], &t);
                }
            }
        }
        pivot_of_col[col] = Some(rank);
        rank += 1;
    }
    // free columns generate the nullspace
    let mut basis = Vec::new();
    for free in 0..bound {
        if pivot_of_col[free].is_some() {
            continue;
        }
        let mut v = vec![0u64; bound];
        v[free] = 1;
        for col in 0..bound {
            if let Some(pr) = pivot_of_col[col] {
                let c = m[pr][free];
                if c != 0 {
                    v[col] = field.neg(&c);
                }
            }
        }
        basis.push(Poly::new(field, v));
    }
    basis
}

/// Rank over F_p(x) of a rectangular polynomial matrix, by fraction-free
/// elimination.
fn poly_matrix_rank(rows: &mut Vec<Vec<Poly<Fp>>>) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let ncols = rows[0].len();
    let mut rank = 0usize;
    let mut col = 0usize;
    while rank < rows.len() && col < ncols {
        let Some(pr) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            col += 1;
            continue;
        };
        rows.swap(rank, pr);
        let pivot = rows[rank][col].clone();
        for r in rank + 1..rows.len() {
            if rows[r][col].is_zero() {
                continue;
            }
            let factor = rows[r][col].clone();
            for j in col..ncols {
                let t = rows[r][j].mul(&pivot).sub(&rows[rank][j].mul(&factor));
                rows[r][j] = t;
            }
        }
        rank += 1;
        col += 1;
    }
    rank
}

/// Writes h = sum_r x^r g_r(x^p) and returns the row (g_0, ..., g_{p-1}).
fn frobenius_split(h: &Poly<Fp>) -> Vec<Poly<Fp>> {
    let field = h.field();
    let p = field.characteristic() as usize;
    let mut parts: Vec<Vec<u64>> = vec![Vec::new(); p];
    for (i, c) in h.coeffs().iter().enumerate() {
        let r = i % p;
        let q = i / p;
        let part = &mut parts[r];
        while part.len() <= q {
            part.push(0);
        }
        part[q] = *c;
    }
    parts.into_iter().map(|v| Poly::new(field, v)).collect()
}

/// A full basis of n polynomial solutions of degree < p*d, linearly
/// independent over F_p(x^p). Panics if the basis does not exist (i.e. the
/// p-curvature does not vanish).
pub fn polynomial_solution_basis(l: &DiffOp<Fp>, degree_bound_d: usize) -> Vec<Poly<Fp>> {
    let n = l.degree().expect("zero operator");
    let p = char_of(l) as usize;
    let bound = p * degree_bound_d.max(1);
    let nullspace = polynomial_nullspace(l, bound);
    let mut selected: Vec<Poly<Fp>> = Vec::new();
    let mut g_rows: Vec<Vec<Poly<Fp>>> = Vec::new();
    for v in nullspace {
        if selected.len() == n {
            break;
        }
        let mut candidate_rows = g_rows.clone();
        candidate_rows.push(frobenius_split(&v));
        let mut work = candidate_rows.clone();
        if poly_matrix_rank(&mut work) == selected.len() + 1 {
            g_rows = candidate_rows;
            selected.push(v);
        }
    }
    assert_eq!(
        selected.len(),
        n,
        "zero p-curvature guarantees a full polynomial solution basis"
    );
    selected
}

/// Fundamental matrix of rational solutions at a base point `a`:
/// U_a = sum_{k<p} (-1)^k (x-a)^k / k! * B_k(x), with U_a(a) = I and every
/// column solving Y' + BY = 0. Requires zero p-curvature and f(a) != 0.
pub fn fundamental_matrix_at(l: &DiffOp<Fp>, a: u64) -> Result<Mat<RatFun<Fp>>> {
    let p = char_of(l);
    let field = l.coeffs()[0].field();
    let (num, f, _d) = companion_cleared(l);
    if field.is_zero(&f.eval(&a)) {
        return Err(Error::PoleAtBasePoint);
    }
    let seq = curvature_poly_sequence(&num, &f, p as usize);
    let bp_zero = seq[p as usize].rows().iter().all(|r| r.iter().all(|e| e.is_zero()));
    if !bp_zero {
        return Err(Error::NonzeroPCurvature);
    }
    let n = num.size();
    let x_minus_a = Poly::new(field, vec![field.neg(&a), field.one()]);
    // accumulate numerators over the common denominator f^{p-1}
    let mut acc = Mat::build(n, |_, _| Poly::zero(field));
    let mut coef = field.one(); // (-1)^k / k!
    let mut shift_pow = Poly::one(field); // (x-a)^k
    for k in 0..p as usize {
        if k > 0 {
            coef = field.neg(&field.div(&coef, &field.from_i64(k as i64)));
            shift_pow = shift_pow.mul(&x_minus_a);
        }
        let fpow = f.pow(p - 1 - k as u64);
        let scale = shift_pow.scale(&coef).mul(&fpow);
        for i in 0..n {
            for j in 0..n {
                if seq[k].get(i, j).is_zero() {
                    continue;
                }
                let t = seq[k].get(i, j).mul(&scale);
                *acc.get_mut(i, j) = acc.get(i, j).add(&t);
            }
        }
    }
    let denom = RatFun::from_poly(f.pow(p - 1));
    Ok(acc.map(|c| RatFun::from_poly(c.clone()).div(&denom)))
}

/// Outcome of the order-1 series congruence test.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CongruenceOutcome {
    Holds,
    FailsAt(usize),
}

impl CongruenceOutcome {
    pub fn holds(&self) -> bool {
        matches!(self, CongruenceOutcome::Holds)
    }
}

/// For b regular at 0 with expansion sum u_n x^n, checks u_n = u_{(n+1)p-1}
/// for all n < count; equivalent to zero p-curvature of Dx - b... with the
/// sign convention of y' + b y = 0 absorbed into b.
pub fn order1_series_congruence(b: &RatFun<Fp>, count: usize) -> Result<CongruenceOutcome> {
    let field = b.field();
    let p = field.characteristic() as usize;
    if b.has_pole_at(&field.zero()) {
        return Err(Error::PoleAtOrigin);
    }
    if b.is_zero() {
        return Ok(CongruenceOutcome::Holds);
    }
    let u = b.series_at_zero((count + 1) * p)?;
    for n in 0..count {
        if u[n] != u[(n + 1) * p - 1] {
            return Ok(CongruenceOutcome::FailsAt(n));
        }
    }
    Ok(CongruenceOutcome::Holds)
}
