//! Prime scanning of an operator over Q(x): per-prime p-curvature statuses
//! as a Grothendieck-conjecture heuristic.

use rayon::prelude::*;

use crate::arith::field::Fp;
use crate::ore::{reduce_op_mod_p, DiffOp};
use crate::arith::field::Rationals;
use crate::pcurvature::{cartier_test, PcurvStatus};
use crate::primes::primes_in;

/// Scan outcome: per-prime statuses in ascending order, counts, and the
/// primes deviating from zero p-curvature. The summary is a heuristic; the
/// per-prime statuses are facts.
#[derive(Clone, Debug)]
pub struct ScanReport {
    pub operator: String,
    pub statuses: Vec<(u64, PcurvStatus)>,
    pub zero_count: usize,
    pub nilpotent_count: usize,
    pub nonzero_count: usize,
    pub bad_reduction_count: usize,
    /// Primes with any status other than zero (bad reduction included).
    pub exceptions: Vec<u64>,
}

impl ScanReport {
    pub fn all_zero(&self) -> bool {
        self.exceptions.is_empty()
    }
}

/// Reduces the operator at each prime in [pmin, pmax] and runs the Cartier
/// test; work is distributed across a worker pool and merged in ascending
/// prime order. Bad-reduction primes are reported, never skipped.
pub fn grothendieck_scan(l: &DiffOp<Rationals>, pmin: u64, pmax: u64) -> ScanReport {
    let primes = primes_in(pmin.max(2), pmax);
    let mut statuses: Vec<(u64, PcurvStatus)> = primes
        .par_iter()
        .map(|&p| {
            let status = match reduce_op_mod_p(l, Fp::new(p)) {
                Ok(lp) => cartier_test(&lp).status,
                Err(_) => PcurvStatus::BadReduction,
            };
            (p, status)
        })
        .collect();
    statuses.sort_by_key(|(p, _)| *p);
    let count = |s: PcurvStatus| statuses.iter().filter(|(_, t)| *t == s).count();
    let exceptions: Vec<u64> = statuses
        .iter()
        .filter(|(_, s)| *s != PcurvStatus::Zero)
        .map(|(p, _)| *p)
        .collect();
    let (zero_count, nilpotent_count, nonzero_count, bad_reduction_count) = (
        count(PcurvStatus::Zero),
        count(PcurvStatus::NilpotentNonzero),
        count(PcurvStatus::Nonzero),
        count(PcurvStatus::BadReduction),
    );
    ScanReport {
        operator: l.to_string(),
        statuses,
        zero_count,
        nilpotent_count,
        nonzero_count,
        bad_reduction_count,
        exceptions,
    }
}
