use milnor_alg::families::*;
use milnor_alg::milnor::*;
use milnor_alg::polyring::*;
use milnor_alg::resolution::{betti_table, free_resolution, minimalize};

fn gf() -> PrimeField {
    PrimeField::default()
}

fn report<F: Field>(f: &Polynomial<F>) -> MilnorReport {
    let rep = milnor_report(f, &ReportOptions::default()).unwrap();
    for (name, ok) in rep.invariants() {
        assert_eq!(ok, Some(true), "{name}");
    }
    rep
}

#[test]
fn cones_share_regularity_with_their_curve() {
    let r3 = Ring::new(gf(), 3);
    for (g, reg) in [("x0^3+x1^3+x2^3", 3), ("x0*x1*x2", 1), ("x0^2+x1^2+x2^2", 0), ("x0^4+x1^3*x2+x2^4", 6)] {
        let g = parse_polynomial(&r3, g).unwrap();
        let f = cone_over_plane_curve(&g).unwrap();
        assert_eq!(f.ring().nvars(), 4);
        let (rf, rg) = (report(&f), report(&g));
        assert_eq!(rf.reg, Some(reg));
        assert_eq!(rf.reg, rg.reg);
        if rf.d >= 3 {
            assert!(rf.reg.unwrap() < rf.t);
        }
    }
    let r4 = Ring::new(gf(), 4);
    assert!(cone_over_plane_curve(&r4.var(0)).is_err());
}

#[test]
fn free_and_nearly_free_shapes() {
    let r = Ring::new(gf(), 4);
    let f = parse_polynomial(&r, "x0*x1*x2*x3").unwrap();
    let rep = report(&f);
    assert_eq!(classify_free_nearly_free(&rep.betti, 4), Freeness::Free { exponents: vec![1, 1, 1] });
    let fermat = report(&parse_polynomial(&r, "x0^3+x1^3+x2^3+x3^3").unwrap());
    assert!(matches!(classify_free_nearly_free(&fermat.betti, 3), Freeness::Neither { .. }));
    // cone over the free curve x1 x2 x3: the vanishing partial contributes exponent 0
    let cone = report(&parse_polynomial(&r, "x1*x2*x3").unwrap());
    assert_eq!(classify_free_nearly_free(&cone.betti, 3), Freeness::Free { exponents: vec![0, 1, 1] });
    // four general lines in the plane are nearly free
    let a = generic_hyperplane_arrangement(gf(), 2, 4, 0).unwrap();
    let rep = report(&a.f);
    assert_eq!(classify_free_nearly_free(&rep.betti, 4), Freeness::NearlyFree { exponents: vec![2, 2] });
    assert!(rep.reg.unwrap() <= 2 * 4 - 3);
}

#[test]
fn generic_arrangements() {
    for (n, d) in [(2usize, 4usize), (3, 5), (3, 6)] {
        let a = generic_hyperplane_arrangement(gf(), n, d, 3).unwrap();
        assert_eq!(a.forms.len(), d);
        assert_eq!(a.f.homogeneous_degree(), Some(d as u32));
        let rep = report(&a.f);
        assert_eq!(rep.reg, Some(2 * d as i64 - n as i64 - 3));
        assert_eq!(rep.depth, Some(0));
        // a_{i,j} - i is 0, d-2, then 2d-n-3
        let t = &rep.betti;
        for &(i, j) in t.entries.keys() {
            let expected = match i {
                0 => 0,
                1 => d as i64 - 2,
                _ => 2 * d as i64 - n as i64 - 3,
            };
            assert_eq!(j - i as i64, expected, "n={n} d={d} i={i}");
        }
    }
    assert!(generic_hyperplane_arrangement(gf(), 3, 3, 0).is_err());
    let a = generic_hyperplane_arrangement(gf(), 3, 5, 11).unwrap();
    let b = generic_hyperplane_arrangement(gf(), 3, 5, 11).unwrap();
    assert_eq!(a.f, b.f);
}

#[test]
fn determinantal_hypersurfaces() {
    let g = generic_determinantal(gf(), 3, false, false).unwrap();
    assert_eq!(g.ring.nvars(), 9);
    let j = jacobian_ideal(&g.f).unwrap();
    assert!(j.same_ideal(&g.minors));
    assert_eq!(milnor_alg::hilbert::hilbert_series_of_quotient(&j).dimension(), 5);
    let s = generic_determinantal(gf(), 3, true, false).unwrap();
    assert_eq!(s.ring.nvars(), 6);
    let j = jacobian_ideal(&s.f).unwrap();
    assert!(j.same_ideal(&s.minors));
    assert_eq!(milnor_alg::hilbert::hilbert_series_of_quotient(&j).dimension(), 3);
    let q = generic_determinantal(gf(), 2, false, false).unwrap();
    let rep = report(&q.f);
    assert_eq!((rep.t, rep.reg), (0, Some(0)));
    assert!(rep.hp.is_zero());
    assert!(generic_determinantal(gf(), 4, false, false).is_err());
    assert!(generic_determinantal(PrimeField::new(2), 3, true, false).is_err());
}

#[test]
fn surface_arrangement_data() {
    let r = Ring::new(gf(), 4);
    for d in 2..=4 {
        let v = plane_and_cone(&r, d).unwrap();
        assert!(v.jacobian_factors());
        assert!(v.psi_minors_match());
        assert!(v.colon_dimension().unwrap() <= 1);
        assert_eq!(v.psi.len(), 2);
        let b = Codim2Bounds::for_arrangement(&v.degrees()).unwrap();
        assert_eq!(b.st_bound, 4 * d as i64 - 5);
        let rep = report(&v.f);
        assert!(rep.st.unwrap() <= b.st_bound && rep.reg.unwrap() <= b.reg_bound);
        // Hilbert-Burch: 0 -> S(-D) -> S(-D+1) ⊕ S(-D+d) -> I
        let t = betti_table(&minimalize(&free_resolution(&v.ideal, None, None).unwrap())).unwrap();
        let big = d as i64 + 1;
        assert_eq!(t.total(1), 2);
        assert_eq!(t.get(2, big), 1);
        assert_eq!(t.projective_dimension(), Some(2));
    }
    let w = two_cones(&r, 2).unwrap();
    assert!(w.jacobian_factors() && w.psi_minors_match());
    // generic transverse smooth components: J_f saturates to I
    let comps = random_smooth_surfaces(&r, &[1, 2, 2], 5).unwrap();
    let s = surface_arrangement(comps).unwrap();
    assert!(s.jacobian_factors() && s.psi_minors_match());
    assert!(s.saturation_is_ideal().unwrap());
    assert_eq!(s.colon_dimension().unwrap(), 0);
    let rep = report(&s.f);
    let b = Codim2Bounds::for_arrangement(&s.degrees()).unwrap();
    assert_eq!(rep.st, Some(2 * 5 + 2 * 2 - 7));
    assert!(rep.st.unwrap() <= b.st_bound && rep.reg.unwrap() <= b.reg_bound);
    // a repeated factor is rejected
    let x = r.var(0);
    assert!(surface_arrangement(vec![x.clone(), &x * &r.var(1)]).is_err());
}
