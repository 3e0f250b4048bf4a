//! Algebraicity and rationality criteria: order-1 classification in both
//! characteristics, hypergeometric interlacing, Grothendieck-heuristic prime
//! scanning, integrality checkers, local-logarithm detection and the
//! Kronecker analogue.

pub mod hypergeom;
pub mod integrality;
pub mod locallogs;
pub mod order1;
pub mod scan;

pub use hypergeom::{
    hypergeom_classify, HypergeomClass, HypergeomParams, HypergeomVerdict, InterlacingCertificate,
};
pub use integrality::{
    eisenstein_check, p_integrality_check, pochhammer, EisensteinOutcome, IntegralityOutcome,
};
pub use locallogs::{local_logs_at_zero, LocalSolutionsReport};
pub use order1::{
    kronecker_scan, order1_char0_classify, order1_charp_has_rational, FactorDiagnostic,
    KroneckerVerdict, Order1Verdict,
};
pub use scan::{grothendieck_scan, ScanReport};
