//! Algebraicity of generalized hypergeometric functions by the interlacing
//! criterion: for every l in [1, D) coprime to D, the fractional parts of
//! l*a_j and l*b_j must alternate strictly around the circle [0, 1).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};

/// Hypergeometric parameters: upper a_1..a_{s+1} and lower b_1..b_s with the
/// implicit extra lower parameter b_{s+1} = 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypergeomParams {
    upper: Vec<BigRational>,
    lower: Vec<BigRational>,
    denominator: u64,
}

impl HypergeomParams {
    /// Validates nonempty upper parameters and computes the common
    /// denominator D (the implicit lower 1 included).
    pub fn new(upper: Vec<BigRational>, lower: Vec<BigRational>) -> Result<Self> {
        if upper.is_empty() {
            return Err(Error::EmptyParams);
        }
        let mut d = BigInt::from(1);
        for v in upper.iter().chain(lower.iter()) {
            d = d.lcm(v.denom());
        }
        let denominator = d.to_u64().expect("parameter denominator fits u64");
        Ok(HypergeomParams { upper, lower, denominator })
    }

    pub fn upper(&self) -> &[BigRational] {
        &self.upper
    }

    pub fn lower(&self) -> &[BigRational] {
        &self.lower
    }

    /// Lower parameters including the implicit 1.
    pub fn lower_full(&self) -> Vec<BigRational> {
        let mut v = self.lower.clone();
        v.push(BigRational::from_integer(BigInt::from(1)));
        v
    }

    pub fn common_denominator(&self) -> u64 {
        self.denominator
    }

    /// Errors when some upper and lower parameter (the implicit 1 included)
    /// differ by an integer.
    pub fn check_disjoint(&self) -> Result<()> {
        let lower = self.lower_full();
        for (i, a) in self.upper.iter().enumerate() {
            for (j, b) in lower.iter().enumerate() {
                if (a - b).is_integer() {
                    return Err(Error::Reducible { upper: i, lower: j });
                }
            }
        }
        Ok(())
    }
}

/// The interleaving pattern for one multiplier l, as a sorted list of
/// (fractional part as a multiple of 1/D, true for upper).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InterlacingCertificate {
    pub multiplier: u64,
    pub pattern: Vec<(u64, bool)>,
    pub interlaced: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HypergeomClass {
    Algebraic,
    Transcendental,
}

#[derive(Clone, Debug)]
pub struct HypergeomVerdict {
    pub class: HypergeomClass,
    pub certificates: Vec<InterlacingCertificate>,
}

fn frac_times_d(v: &BigRational, l: u64, d: u64) -> u64 {
    // fractional part of l*v, scaled by d: (l * num * (d/den)) mod d
    let scaled = v * BigRational::from_integer(BigInt::from(l)) * BigInt::from(d);
    debug_assert!(scaled.is_integer());
    let m = scaled.numer().mod_floor(&BigInt::from(d));
    m.to_u64().unwrap()
}

/// Classifies by checking strict alternation of the two families of
/// fractional parts on the circle for every l in [1, D) coprime to D.
/// Requires the parameter lists disjoint modulo the integers.
pub fn hypergeom_classify(params: &HypergeomParams) -> Result<HypergeomVerdict> {
    params.check_disjoint()?;
    let d = params.common_denominator();
    let lower = params.lower_full();
    let mut certificates = Vec::new();
    let mut algebraic = true;
    let mut l = 1u64;
    while l < d.max(2) {
        if d.gcd(&l) != 1 {
            l += 1;
            continue;
        }
        let mut pattern: Vec<(u64, bool)> = params
            .upper
            .iter()
            .map(|a| (frac_times_d(a, l, d), true))
            .chain(lower.iter().map(|b| (frac_times_d(b, l, d), false)))
            .collect();
        pattern.sort();
        // strict alternation; any tie (necessarily within one family, by
        // disjointness) breaks interlacing
        let mut interlaced = params.upper.len() == lower.len();
        for w in pattern.windows(2) {
            if w[0].0 == w[1].0 || w[0].1 == w[1].1 {
                interlaced = false;
            }
        }
        if interlaced && pattern.first().unwrap().1 == pattern.last().unwrap().1 {
            interlaced = false; // wrap-around collision on the circle
        }
        if !interlaced {
            algebraic = false;
        }
        certificates.push(InterlacingCertificate { multiplier: l, pattern, interlaced });
        l += 1;
    }
    Ok(HypergeomVerdict {
        class: if algebraic { HypergeomClass::Algebraic } else { HypergeomClass::Transcendental },
        certificates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rq(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn params(upper: &[(i64, i64)], lower: &[(i64, i64)]) -> HypergeomParams {
        HypergeomParams::new(
            upper.iter().map(|&(n, d)| rq(n, d)).collect(),
            lower.iter().map(|&(n, d)| rq(n, d)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn legendre_like_transcendental() {
        // 2F1([1/2, 1/2], [1]): repeated upper parameter forces a tie
        let p = params(&[(1, 2), (1, 2)], &[(1, 1)]);
        let v = hypergeom_classify(&p).unwrap();
        assert_eq!(v.class, HypergeomClass::Transcendental);
    }

    #[test]
    fn diagonal_2f1_transcendental() {
        // 2F1([1/3, 2/3], [1]): lower family has a tie at 0
        let p = params(&[(1, 3), (2, 3)], &[(1, 1)]);
        let v = hypergeom_classify(&p).unwrap();
        assert_eq!(v.class, HypergeomClass::Transcendental);
    }

    #[test]
    fn chebyshev_30_family_algebraic() {
        let p = params(
            &[(1, 30), (7, 30), (11, 30), (13, 30), (17, 30), (19, 30), (23, 30), (29, 30)],
            &[(1, 5), (1, 3), (2, 5), (1, 2), (3, 5), (2, 3), (4, 5)],
        );
        let v = hypergeom_classify(&p).unwrap();
        assert_eq!(v.class, HypergeomClass::Algebraic);
        // phi(30) = 8 multipliers examined
        assert_eq!(v.certificates.len(), 8);
        assert!(v.certificates.iter().all(|c| c.interlaced));
    }

    #[test]
    fn gessel_2f1_algebraic() {
        let p = params(&[(-1, 12), (1, 4)], &[(2, 3)]);
        let v = hypergeom_classify(&p).unwrap();
        assert_eq!(v.class, HypergeomClass::Algebraic);
    }

    #[test]
    fn reducible_rejected() {
        // c - a = 1: reducible
        let p = params(&[(1, 2), (1, 3)], &[(3, 2)]);
        assert_eq!(
            hypergeom_classify(&p).unwrap_err(),
            Error::Reducible { upper: 0, lower: 0 }
        );
    }

    #[test]
    fn permutation_invariance() {
        let a = params(&[(1, 30), (7, 30)], &[(1, 5)]);
        let b = params(&[(7, 30), (1, 30)], &[(1, 5)]);
        let va = hypergeom_classify(&a).unwrap();
        let vb = hypergeom_classify(&b).unwrap();
        assert_eq!(va.class, vb.class);
    }

    #[test]
    fn empty_upper_rejected() {
        assert_eq!(
            HypergeomParams::new(vec![], vec![rq(1, 2)]).unwrap_err(),
            Error::EmptyParams
        );
    }
}
