use std::sync::Arc;

use milnor_alg::groebner::saturate_irrelevant;
use milnor_alg::milnor::*;
use milnor_alg::polyring::*;
use milnor_alg::Error;

type R = Arc<Ring<PrimeField>>;

fn ring() -> R {
    Ring::new(PrimeField::default(), 4)
}

fn p(r: &R, s: &str) -> Polynomial<PrimeField> {
    parse_polynomial(r, s).unwrap()
}

fn report(r: &R, s: &str) -> MilnorReport {
    let rep = milnor_report(&p(r, s), &ReportOptions::default()).unwrap();
    for (name, ok) in rep.invariants() {
        assert_eq!(ok, Some(true), "{name} fails for {s}");
    }
    rep
}

#[test]
fn jacobian_ideals() {
    let r = ring();
    let j = jacobian_ideal(&p(&r, "x0^3+x1^3+x2^3+x3^3")).unwrap();
    assert!(j.same_ideal(&milnor_alg::groebner::Ideal::new(&r, (0..4).map(|i| r.var(i).pow(2)).collect())));
    let j = jacobian_ideal(&p(&r, "x0*x1")).unwrap();
    assert!(j.same_ideal(&milnor_alg::groebner::Ideal::new(&r, vec![r.var(0), r.var(1)])));
    assert!(matches!(jacobian_ideal(&p(&r, "x0^2+x1")), Err(Error::NotHomogeneous(_))));
}

#[test]
fn hessians() {
    let r = ring();
    let q = hessian(&p(&r, "x0^2+x1^2+x2^2+x3^2")).unwrap();
    assert_eq!(q, p(&r, "16"));
    // expansion of the 4x4 matrix of x0 x1 x2 x3 by hand: -3 x0^2 x1^2 x2^2 x3^2
    let h = hessian(&p(&r, "x0*x1*x2*x3")).unwrap();
    assert_eq!(h, p(&r, "-3*x0^2*x1^2*x2^2*x3^2"));
    assert_eq!(h.homogeneous_degree(), Some(8));
    assert!(hessian(&p(&r, "x1^3+x2^3+x3^3")).unwrap().is_zero());
}

#[test]
fn spodzieja_battery() {
    let r = ring();
    let cases = [
        ("x0^2+x1^2+x2^2+x3^2", false),
        ("x0*x1*x2*x3", true),
        ("x0^4+x1^4+x2^4+x3^4", false),
        ("x0^3+x1^3+x2^3+x3^3", false),
        ("x1^3+x2^3+x3^3", true),
        ("x3*(x0^2+x1^2+x2^2)", true),
    ];
    for (s, singular) in cases {
        let v = spodzieja_test(&p(&r, s)).unwrap();
        assert_eq!(v, SpodziejaVerdict { hess_in_j: singular, hess_in_colon: true, singular }, "{s}");
    }
}

#[test]
fn fermat_cubic_report() {
    let r = ring();
    let rep = report(&r, "x0^3+x1^3+x2^3+x3^3");
    assert_eq!((rep.t, rep.reg, rep.st, rep.pd, rep.depth), (4, Some(4), Some(5), Some(4), Some(0)));
    assert_eq!(&rep.hf_samples[..6], &[1, 4, 6, 4, 1, 0]);
    assert_eq!(rep.comparisons.reg_vs_t, Some(Comparison::Equal));
    // smooth: N(f) = M(f)
    assert_eq!(rep.n_data.indeg, Some(0));
    assert_eq!(rep.n_data.top, Some(4));
    let json = rep.to_json();
    assert_eq!(json["T"], 4);
    assert_eq!(json["reg"], 4);
    assert_eq!(json["betti"]["entries"][0]["rank"], 1);
    let text = rep.to_text();
    assert!(text.contains("reg: 4\n") && text.contains("st: 5\n") && text.contains("reg = T\n"));
}

#[test]
fn small_singular_surfaces() {
    let r = ring();
    assert_eq!(report(&r, "x0*x1").st, Some(-1));
    assert_eq!(report(&r, "x3*(x0^2+x1^2+x2^2)").st, Some(1));
    let rep = report(&r, "x0*x1*x2*x3");
    assert_eq!((rep.reg, rep.pd, rep.depth), (Some(2), Some(2), Some(2)));
    assert!(rep.n_data.is_zero());
}

#[test]
fn euler_relations() {
    let r = ring();
    for s in ["x0^3+x1^3+x2^3+x3^3", "x0*x1*x2*x3", "x3*(x0^3+x1^3+x2^3)"] {
        assert!(euler_syzygy_present(&p(&r, s)).unwrap(), "{s}");
    }
    let b = Ring::with_grading(PrimeField::default(), 4, Grading::Bigraded { split: 2 });
    for (k, m) in [(1, 3), (2, 3), (1, 5)] {
        let f = random_bihomogeneous(&b, k, m, 7).unwrap();
        assert!(bi_euler_syzygy_present(&f).unwrap());
    }
    assert!(matches!(bi_euler_syzygy_present(&p(&r, "x0^2")), Err(Error::NotApplicable(_))));
}

#[test]
fn n_module_windows() {
    let r = ring();
    let n = n_module(&p(&r, "x0^3+x1^3+x2^3+x3^3"), None).unwrap();
    assert_eq!(n.window, (0, 6));
    assert_eq!(n.dims, vec![1, 4, 6, 4, 1, 0, 0]);
    let n = n_module(&p(&r, "x0*x1*x2*x3"), Some((0, 3))).unwrap();
    assert!(n.is_zero());
}

#[test]
fn isolated_bounds() {
    let r = ring();
    // cone over a smooth cubic: one singular point with HP = (d-1)^3
    let rep = report(&r, "x0^3+x1^3+x2^3");
    assert_eq!(rep.hp.integer_coefficients(), Some(vec![8]));
    let v = isolated_bounds_check(&rep).unwrap();
    assert_eq!(v.branch, IsolatedBranch::CompleteIntersection);
    assert!(v.st_ok && v.reg_ok);
    let smooth = report(&r, "x0^4+x1^4+x2^4+x3^4");
    assert_eq!(isolated_bounds_check(&smooth).unwrap().branch, IsolatedBranch::Smooth);
    // quadric cone: d = 2 complete intersection, reg = T
    let quad = report(&r, "x0^2+x1^2+x2^2");
    assert_eq!(quad.reg, Some(quad.t));
    let v = isolated_bounds_check(&quad).unwrap();
    assert_eq!(v.branch, IsolatedBranch::CompleteIntersection);
    assert!(v.reg_ok);
    // a curve of singular points
    assert!(matches!(isolated_bounds_check(&report(&r, "x0*x1")), Err(Error::NotApplicable(_))));
}

#[test]
fn saturation_verdict_for_a_nodal_cubic() {
    // x0 x1 x2 + x3^3 has three A2 points
    let r = ring();
    let f = p(&r, "x0*x1*x2+x3^3");
    let j = jacobian_ideal(&f).unwrap();
    assert!(!saturate_irrelevant(&j).is_unit());
    let rep = report(&r, "x0*x1*x2+x3^3");
    assert!(rep.singular && rep.hess_in_j);
    let v = isolated_bounds_check(&rep).unwrap();
    assert!(v.st_ok && v.reg_ok);
    assert!(rep.reg.unwrap() < rep.t);
}
