//! Order-1 classification: rational/algebraic solutions of y' = a(x) y in
//! characteristic 0, and rational solutions of y' + b(x) y = 0 in
//! characteristic p.

use num_rational::BigRational;

use crate::arith::field::{Fp, Rationals};
use crate::arith::poly::{squarefree_decomposition, Poly};
use crate::arith::ratfun::RatFun;
use crate::pcurvature::pcurvature_order1_closed_form;

/// Per-squarefree-factor record of the pole analysis of a(x).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorDiagnostic {
    /// The monic squarefree factor of the denominator.
    pub factor: Poly<Rationals>,
    pub multiplicity: usize,
    /// Whether the residue function is the same rational constant at every
    /// conjugate root of the factor (only computed for simple factors).
    pub residue_constant: bool,
    /// The common residue when `residue_constant`.
    pub residue: Option<BigRational>,
    /// Whether that residue is an integer.
    pub residue_integral: bool,
}

/// Verdict for y' = a(x) y over Q(x).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Order1Verdict {
    pub has_rational_solution: bool,
    pub has_algebraic_solution: bool,
    pub vanishes_at_infinity: bool,
    pub diagnostics: Vec<FactorDiagnostic>,
}

/// Characteristic polynomial of a small matrix over Q by Faddeev-LeVerrier;
/// coefficients low-first, monic.
fn charpoly_rational(m: &[Vec<BigRational>]) -> Poly<Rationals> {
    use num_traits::{One, Zero};
    let n = m.len();
    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[n] = BigRational::one();
    let mut work: Vec<Vec<BigRational>> = m.to_vec();
    for k in 1..=n {
        if k > 1 {
            // work = m * (work + c_{n-k+1} I)
            let c = coeffs[n - k + 1].clone();
            let mut shifted = work.clone();
            for (i, row) in shifted.iter_mut().enumerate() {
                row[i] += &c;
            }
            let mut next = vec![vec![BigRational::zero(); n]; n];
            for i in 0..n {
                for j in 0..n {
                    let mut acc = BigRational::zero();
                    for (t, srow) in shifted.iter().enumerate() {
                        acc += &m[i][t] * &srow[j];
                    }
                    next[i][j] = acc;
                }
            }
            work = next;
        }
        let trace: BigRational = (0..n).map(|i| work[i][i].clone()).sum();
        coeffs[n - k] = -trace / BigRational::from_integer(num_bigint::BigInt::from(k as u64));
    }
    Poly::new(Rationals, coeffs)
}

/// Classifies y' = a(x) y: a nonzero algebraic solution exists iff a has only
/// simple poles with rational residues and vanishes at infinity; rational
/// solutions additionally need integer residues. Each squarefree denominator
/// factor is split by rational-root extraction; for the non-linear residual
/// the residue function rho = N (D')^{-1} mod q is analyzed without number
/// field arithmetic: all residues lie in Q exactly when the characteristic
/// polynomial of multiplication by rho on Q[x]/(q) splits into rational
/// linear factors.
pub fn order1_char0_classify(a: &RatFun<Rationals>) -> Order1Verdict {
    use crate::arith::poly::rational_roots;
    use num_traits::{One, Zero};
    let q_field = Rationals;
    if a.is_zero() {
        // y' = 0: constants are rational solutions
        return Order1Verdict {
            has_rational_solution: true,
            has_algebraic_solution: true,
            vanishes_at_infinity: true,
            diagnostics: Vec::new(),
        };
    }
    let num = a.num();
    let den = a.den();
    let vanishes_at_infinity = num.degree_or_zero() < den.degree_or_zero();
    let dden = den.derivative();
    let mut diagnostics = Vec::new();
    let mut all_simple = true;
    let mut all_residues_rational = true;
    let mut all_residues_integral = true;
    for (factor, multiplicity) in squarefree_decomposition(den).expect("char 0") {
        if multiplicity > 1 {
            all_simple = false;
            diagnostics.push(FactorDiagnostic {
                factor,
                multiplicity,
                residue_constant: false,
                residue: None,
                residue_integral: false,
            });
            continue;
        }
        // split off the rational roots of the factor
        let mut residual = factor.clone();
        for (root, _) in rational_roots(&factor) {
            let lin = Poly::new(q_field, vec![-root.clone(), BigRational::one()]);
            residual = residual.div_exact(&lin);
            let value = num.eval(&root) / dden.eval(&root);
            let integral = value.is_integer();
            if !integral {
                all_residues_integral = false;
            }
            diagnostics.push(FactorDiagnostic {
                factor: lin,
                multiplicity: 1,
                residue_constant: true,
                residue: Some(value),
                residue_integral: integral,
            });
        }
        if residual.is_constant() {
            continue;
        }
        let residual = residual.monic();
        let rho = num.mul(&dden.inv_mod(&residual)).rem(&residual);
        let mut rec = FactorDiagnostic {
            factor: residual.clone(),
            multiplicity: 1,
            residue_constant: false,
            residue: None,
            residue_integral: false,
        };
        if rho.is_constant() {
            let value = rho.coeff(0);
            rec.residue_constant = true;
            rec.residue_integral = value.is_integer();
            if !rec.residue_integral {
                all_residues_integral = false;
            }
            rec.residue = Some(value);
        } else {
            // residues = eigenvalues of multiplication by rho on Q[x]/(q)
            let d = residual.degree().unwrap();
            let mut mat = vec![vec![BigRational::zero(); d]; d];
            for (j, col) in mat.iter_mut().enumerate().take(d) {
                let img = rho.mul(&Poly::monomial(q_field, BigRational::one(), j)).rem(&residual);
                for (i, slot) in col.iter_mut().enumerate() {
                    *slot = img.coeff(i);
                }
            }
            let cp = charpoly_rational(&mat);
            let roots = rational_roots(&cp);
            let found: usize = roots.iter().map(|(_, mult)| mult).sum();
            if found == d {
                rec.residue_integral = roots.iter().all(|(r, _)| r.is_integer());
                if !rec.residue_integral {
                    all_residues_integral = false;
                }
            } else {
                all_residues_rational = false;
                all_residues_integral = false;
            }
        }
        diagnostics.push(rec);
    }
    let has_algebraic = vanishes_at_infinity && all_simple && all_residues_rational;
    let has_rational = has_algebraic && all_residues_integral;
    Order1Verdict {
        has_rational_solution: has_rational,
        has_algebraic_solution: has_algebraic,
        vanishes_at_infinity,
        diagnostics,
    }
}

/// True iff y' + b(x) y = 0 has a nonzero rational solution over F_p(x),
/// i.e. the p-curvature b^(p-1) + b^p vanishes.
pub fn order1_charp_has_rational(b: &RatFun<Fp>) -> bool {
    pcurvature_order1_closed_form(b).is_zero()
}

/// Kronecker-style scan: is X^p = X mod (P, p)? Per-prime verdict plus a
/// squarefree-mod-p guard (ramified primes are reported, not silently
/// skipped).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KroneckerVerdict {
    /// P mod p splits into distinct linear factors.
    SplitsCompletely,
    /// X^p != X mod (P, p).
    DoesNotSplit,
    /// P mod p is not squarefree (or the reduction degenerates).
    Excluded,
}

/// For squarefree P over Q, tests X^p = X mod (P, p) for each prime.
pub fn kronecker_scan(p_poly: &Poly<Rationals>, primes: &[u64]) -> Vec<(u64, KroneckerVerdict)> {
    assert!(p_poly.degree_or_zero() >= 1, "kronecker scan needs degree >= 1");
    primes
        .iter()
        .map(|&pr| {
            let fp = Fp::new(pr);
            let reduced = match crate::arith::ratfun::reduce_poly_mod_p(p_poly, fp) {
                Ok(h) => h,
                Err(_) => return (pr, KroneckerVerdict::Excluded),
            };
            if reduced.degree() != p_poly.degree() {
                return (pr, KroneckerVerdict::Excluded);
            }
            let g = crate::arith::poly::poly_gcd(&reduced, &reduced.derivative());
            if !g.is_constant() {
                return (pr, KroneckerVerdict::Excluded);
            }
            let x = Poly::x(fp);
            let xp = x.pow_mod(pr, &reduced);
            if xp == x.rem(&reduced) {
                (pr, KroneckerVerdict::SplitsCompletely)
            } else {
                (pr, KroneckerVerdict::DoesNotSplit)
            }
        })
        .collect()
}
