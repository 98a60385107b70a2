use std::collections::BTreeMap;

use milnor_alg::bigraded::*;
use milnor_alg::milnor::jacobian_ideal;
use milnor_alg::polyring::*;
use milnor_alg::resolution::{betti_table, free_resolution, minimalize};
use milnor_alg::Error;
use proptest::prelude::*;

fn random(k: u32, d: u32, seed: u64) -> Polynomial<PrimeField> {
    random_bihomogeneous(&bigraded_ring(PrimeField::default()), k, d - k, seed).unwrap()
}

#[test]
fn slice_shapes() {
    let f = random(1, 4, 1);
    let s = slice_matrix(&f, 3).unwrap();
    assert_eq!((s.nrows(), s.ncols()), (4, 6));
    let st = strip_bieuler(&s).unwrap();
    assert_eq!((st.nrows(), st.ncols()), (4, 5));
    let s = slice_matrix(&f, 2).unwrap();
    assert_eq!(s.ncols(), 2);
    assert!(slice_kernel(&s).unwrap().is_zero());
    assert!(strip_bieuler(&s).is_err());
    let g = random(2, 5, 1);
    let st = strip_bieuler(&slice_matrix(&g, 3).unwrap()).unwrap();
    assert_eq!((st.nrows(), st.ncols()), (4, 5));
    let h = random(6, 19, 1);
    let s = slice_matrix(&h, 18).unwrap();
    assert_eq!(s.nrows(), 19);
    assert_eq!(strip_bieuler(&s).unwrap().ncols(), 20);
    assert_eq!(s.row_labels[0], (18, 0));
    // entries sit in A-degree k-1 (f0, f1 blocks) or k (f2, f3 blocks)
    for (c, (i, _)) in s.col_labels.iter().enumerate() {
        for row in &s.entries {
            if let Some(deg) = row[c].homogeneous_degree() {
                assert_eq!(deg, if *i < 2 { 5 } else { 6 });
            }
        }
    }
}

#[test]
fn even_codegree_is_rejected() {
    let f = random(2, 6, 1);
    assert!(matches!(slice_matrix(&f, 4), Err(Error::NotApplicable(_))));
    assert!(matches!(minimal_syzygy_search(&f), Err(Error::NotApplicable(_))));
}

#[test]
fn certificate_witnesses() {
    let r = bigraded_ring(PrimeField::default());
    assert!(genericity_certificate(&random(1, 4, 3), 3).unwrap().passed);
    // h_3 = 0: no x3^3 terms
    let f = parse_polynomial(&r, "x0*x2^3 + x1*x2^2*x3 + x0*x2*x3^2").unwrap();
    assert_eq!(genericity_certificate(&f, 3).unwrap().witness.as_deref(), Some("h_{2μ+1}"));
    // ∂x0 h_0 = 0: h_0 = x1
    let f = parse_polynomial(&r, "x1*x2^3 + x0*x2^2*x3 + x1*x2*x3^2 + x1*x3^3").unwrap();
    assert_eq!(genericity_certificate(&f, 3).unwrap().witness.as_deref(), Some("∂x0 h_0"));
    assert!(matches!(minimal_syzygy_search(&f), Err(Error::Genericity(_))));
}

#[test]
fn closed_form_bidegrees() {
    for (k, d, expected) in [(1, 4, (3, 3)), (1, 6, (4, 6)), (2, 5, (8, 3)), (2, 7, (12, 6)), (3, 6, (13, 3))] {
        let s = minimal_syzygy_search(&random(k, d, 1)).unwrap();
        assert_eq!(s.bidegree, expected, "k={k} d={d}");
        assert_eq!(s.bidegree, s.predicted);
        assert_eq!(s.kernels.iter().filter(|m| !m.is_zero()).count(), 1);
        // expected-rank bookkeeping: 2(η-d+k+1) + 2(η-d+k+2) - (η-d+k+1) = η+2 at η = 3μ
        let eta = s.bidegree.1;
        let (d, k) = (d as i64, k as i64);
        assert_eq!(2 * (eta - d + k + 1) + 2 * (eta - d + k + 2) - (eta - d + k + 1), eta + 2);
    }
}

#[test]
fn example_at_degree_nineteen() {
    let s = minimal_syzygy_search(&random(6, 19, 1)).unwrap();
    assert_eq!(s.bidegree, (108, 18));
    assert_eq!(s.total_degree, 126);
    assert_eq!(s.regularity_lower_bound, 124);
}

/// Minimal first syzygy bidegrees of `J_f` from a full resolution.
fn first_syzygy_bidegrees(f: &Polynomial<PrimeField>) -> BTreeMap<(i64, i64), usize> {
    let res = free_resolution(&jacobian_ideal(f).unwrap(), Some(3), None).unwrap();
    let t = betti_table(&minimalize(&res)).unwrap();
    let mut out = BTreeMap::new();
    for b in t.bidegrees(2).unwrap() {
        *out.entry(b).or_insert(0) += 1;
    }
    out
}

#[test]
fn slices_agree_with_full_resolutions() {
    for (k, d) in [(1u32, 4u32), (1, 6), (2, 5), (2, 7)] {
        let f = random(k, d, 2);
        let s = minimal_syzygy_search(&f).unwrap();
        let all = first_syzygy_bidegrees(&f);
        let low: Vec<(i64, i64)> = all.iter().filter(|(b, _)| b.1 <= s.bidegree.1).flat_map(|(b, n)| std::iter::repeat_n(*b, *n)).collect();
        let mut expected = vec![(k as i64, (d - k) as i64), s.bidegree];
        expected.sort();
        assert_eq!(low, expected, "k={k} d={d}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn kernel_vanishes_below_the_critical_slice(seed in 0u64..1000, (k, d) in prop_oneof![Just((1u32, 4u32)), Just((2, 5)), Just((1, 6))]) {
        let f = random(k, d, seed);
        let mu = (d - k - 1) / 2;
        prop_assume!(genericity_certificate(&f, 3 * mu).unwrap().passed);
        for eta in 0..3 * mu {
            prop_assert!(slice_kernel(&reduced_slice(&f, eta).unwrap()).unwrap().is_zero());
        }
        let m = slice_kernel(&reduced_slice(&f, 3 * mu).unwrap()).unwrap();
        prop_assert_eq!(m.degrees, vec![((3 * mu + 2) * k - 2 * mu) as i64]);
    }
}
