use pcurv_core::arith::{Field, Fp, Poly, RatFun};
use pcurv_core::ore::DiffOp;
use pcurv_core::pcurvature::*;

fn main() {
    let fp = Fp::new(3);
    let l = DiffOp::from_poly_coeffs(vec![
        Poly::from_i64(fp, &[1]),
        Poly::from_i64(fp, &[2]),
        Poly::from_i64(fp, &[2]),
        Poly::from_i64(fp, &[0, 2]),
    ]);
    let truth = pcurvature_recurrence(&l);
    // Taylor coefficients of the true entry (0,0) = 2/x at a = 1 and a = 2
    for a in [1u64, 2] {
        let e = truth.entries().get(0, 0).compose_shift(&a);
        let ser = e.series_at_zero(3).unwrap();
        println!("true entry(0,0) at a={a}: {ser:?}");
    }
    // single-point local computations
    for a in [1u64, 2] {
        let m = pcurvature_local_series_crt_at(&l, &[a, if a == 1 { 2 } else { 1 }]);
        println!("crt from [{a}, other]: entry(0,0) = {}", m.unwrap().entries().get(0, 0));
    }
}
