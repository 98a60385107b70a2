use std::sync::Arc;

use milnor_alg::hilbert::hilbert_series_of_quotient;
use milnor_alg::polyring::*;
use milnor_alg::resolution::*;
use milnor_alg::groebner::Ideal;
use proptest::prelude::*;

type R = Arc<Ring<PrimeField>>;

fn ring() -> R {
    Ring::new(PrimeField::default(), 4)
}

fn ideal(r: &R, gens: &[&str]) -> Ideal<PrimeField> {
    Ideal::new(r, gens.iter().map(|s| parse_polynomial(r, s).unwrap()).collect())
}

fn minimal_table(i: &Ideal<PrimeField>) -> (Resolution<PrimeField>, BettiTable) {
    let res = free_resolution(i, None, None).unwrap();
    assert!(res.is_complete());
    assert!(res.is_complex());
    let min = minimalize(&res);
    assert!(min.is_complex());
    let t = betti_table(&min).unwrap();
    (min, t)
}

#[test]
fn koszul_complex_of_the_variables() {
    let r = ring();
    let (_, t) = minimal_table(&Ideal::irrelevant(&r));
    for (i, b) in [1, 4, 6, 4, 1].into_iter().enumerate() {
        assert_eq!(t.get(i, i as i64), b);
        assert_eq!(t.total(i), b);
    }
    assert_eq!(regularity_of(&t).unwrap(), 0);
    assert_eq!(depth_and_pd(&t).unwrap(), (0, 4));
}

#[test]
fn fermat_cubic_jacobian() {
    let r = ring();
    let (_, t) = minimal_table(&ideal(&r, &["3*x0^2", "3*x1^2", "3*x2^2", "3*x3^2"]));
    for (i, b) in [1, 4, 6, 4, 1].into_iter().enumerate() {
        assert_eq!(t.get(i, 2 * i as i64), b);
    }
    assert_eq!(regularity_of(&t).unwrap(), 4);
    assert_eq!(t.projective_dimension(), Some(4));
}

#[test]
fn four_coordinate_planes() {
    // Jacobian ideal of x0 x1 x2 x3: 0 -> S(-4)^3 -> S(-3)^4 -> S
    let r = ring();
    let (_, t) = minimal_table(&ideal(&r, &["x1*x2*x3", "x0*x2*x3", "x0*x1*x3", "x0*x1*x2"]));
    assert_eq!(t.entries.len(), 3);
    assert_eq!(t.get(0, 0), 1);
    assert_eq!(t.get(1, 3), 4);
    assert_eq!(t.get(2, 4), 3);
    assert_eq!(depth_and_pd(&t).unwrap(), (2, 2));
}

#[test]
fn pruning_a_hand_built_complex() {
    // S <- S(-1)^3 <- S(-2) ⊕ S(-1) for (x0, x1, x0): the second column is
    // the trivial relation e1 - e3
    let r = ring();
    let p = |s: &str| parse_polynomial(&r, s).unwrap();
    let phi1 = ModuleMap::from_columns(&r, vec![0], vec![1, 1, 1], vec![vec![(0, p("x0"))], vec![(0, p("x1"))], vec![(0, p("x0"))]]);
    let phi2 = ModuleMap::from_columns(
        &r,
        vec![1, 1, 1],
        vec![2, 1],
        vec![vec![(0, p("x1")), (1, p("-x0"))], vec![(0, p("1")), (2, p("-1"))]],
    );
    let res = Resolution::new(r.clone(), vec![phi1, phi2], false, ResolutionStatus::Complete, None);
    assert!(res.is_complex());
    assert_eq!(betti_table(&res).unwrap_err(), milnor_alg::Error::NotMinimal);
    let min = minimalize(&res);
    assert!(min.is_complex());
    assert_eq!(min.degrees(1), vec![1, 1]);
    assert_eq!(min.degrees(2), vec![2]);
    assert_eq!(min.hilbert_series(), res.hilbert_series());
    // the broken pivot rule cancels across degrees and changes the series
    let bad = minimalize_with(&res, PivotRule::AnyMonomialUnchecked);
    assert_ne!(bad.hilbert_series(), res.hilbert_series());
}

#[test]
fn length_and_degree_caps() {
    let r = ring();
    let i = Ideal::irrelevant(&r);
    let res = free_resolution(&i, Some(2), None).unwrap();
    assert_eq!(res.status(), ResolutionStatus::Truncated { length: true, degree: false });
    assert_eq!(res.maps().len(), 2);
    let t = betti_table(&minimalize(&res)).unwrap();
    assert_eq!(t.certified_index, Some(1));
    let res = free_resolution(&i, None, Some(2)).unwrap();
    assert_eq!(res.status(), ResolutionStatus::Truncated { length: false, degree: true });
    assert_eq!(res.rank(2), 6);
    assert_eq!(res.rank(3), 0);
    let full = free_resolution(&i, Some(4), None).unwrap();
    assert!(full.is_complete());
}

#[test]
fn bigraded_shifts_are_tracked() {
    let r = Ring::with_grading(PrimeField::default(), 4, Grading::Bigraded { split: 2 });
    let i = ideal(&r, &["x0*x2^2", "x1^2*x3"]);
    let (min, t) = minimal_table(&i);
    assert_eq!(min.bidegrees(1).unwrap(), vec![(1, 2), (2, 1)]);
    assert_eq!(t.bidegrees(2).unwrap(), vec![(3, 3)]);
}

#[test]
fn text_rendering_matches_reference_layout() {
    let rows: &[(i64, &[usize])] = &[
        (0, &[1, 0, 0, 0, 0]),
        (17, &[0, 4, 1, 0, 0]),
        (34, &[0, 0, 6, 4, 1]),
        (38, &[0, 0, 22, 33, 10]),
        (39, &[0, 0, 9, 18, 9]),
        (40, &[0, 0, 1, 2, 1]),
        (41, &[0, 0, 5, 10, 5]),
        (42, &[0, 0, 2, 4, 2]),
        (45, &[0, 0, 5, 6, 0]),
        (46, &[0, 0, 5, 10, 5]),
        (49, &[0, 0, 0, 0, 1]),
        (50, &[0, 0, 2, 4, 2]),
        (51, &[0, 0, 2, 4, 2]),
        (58, &[0, 0, 2, 4, 2]),
        (59, &[0, 0, 1, 2, 1]),
        (74, &[0, 0, 1, 2, 1]),
        (75, &[0, 0, 1, 2, 1]),
        (124, &[0, 0, 1, 2, 1]),
    ];
    let t = BettiTable::from_entries(
        4,
        rows.iter().flat_map(|(r, vals)| vals.iter().enumerate().map(move |(i, v)| ((i, r + i as i64), *v))),
    );
    let expected = "       0 1  2   3  4
total: 1 4 66 107 44
    0: 1 .  .   .  .
     : . .  .   .  .
   17: . 4  1   .  .
     : . .  .   .  .
   34: . .  6   4  1
     : . .  .   .  .
   38: . . 22  33 10
   39: . .  9  18  9
   40: . .  1   2  1
   41: . .  5  10  5
   42: . .  2   4  2
   43: . .  .   .  .
   44: . .  .   .  .
   45: . .  5   6  .
   46: . .  5  10  5
   47: . .  .   .  .
   48: . .  .   .  .
   49: . .  .   .  1
   50: . .  2   4  2
   51: . .  2   4  2
     : . .  .   .  .
   58: . .  2   4  2
   59: . .  1   2  1
     : . .  .   .  .
   74: . .  1   2  1
   75: . .  1   2  1
     : . .  .   .  .
  124: . .  1   2  1
";
    assert_eq!(t.to_text(), expected);
    assert_eq!(regularity_of(&t).unwrap(), 124);
    let json = t.to_json();
    assert_eq!(json["entries"][0], serde_json::json!({"i": 0, "deg": 0, "rank": 1}));
    // the alternating sum of a resolution of a cyclic module vanishes at t = 1
    assert_eq!(t.total(0) + t.total(2) + t.total(4), t.total(1) + t.total(3));
}

#[test]
fn empty_table_errors() {
    let t = BettiTable::from_entries(4, []);
    assert_eq!(regularity_of(&t).unwrap_err(), milnor_alg::Error::EmptyTable);
    assert_eq!(t.to_text(), "");
}

fn quadrics() -> impl Strategy<Value = Vec<Vec<(i64, usize)>>> {
    proptest::collection::vec(proptest::collection::vec((-3i64..4, 0usize..10), 1..4), 1..5)
}

fn build(r: &R, gens: &[Vec<(i64, usize)>]) -> Ideal<PrimeField> {
    let mut mons = Vec::new();
    for a in 0..4 {
        for b in a..4 {
            mons.push(Monomial::var(a).mul(&Monomial::var(b)));
        }
    }
    let f = r.field();
    Ideal::new(r, gens.iter().map(|g| r.from_terms(g.iter().map(|(c, k)| (mons[*k], f.from_i64(*c))).collect())).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn resolutions_are_exact_in_the_hilbert_sense(gens in quadrics()) {
        let r = ring();
        let i = build(&r, &gens);
        prop_assume!(!i.is_zero());
        let res = free_resolution(&i, None, None).unwrap();
        prop_assert!(res.is_complete());
        prop_assert!(res.is_complex());
        prop_assert!(res.length() <= 4);
        let h = hilbert_series_of_quotient(&i);
        prop_assert_eq!(&res.hilbert_series().numerator, &h.numerator);
        let min = minimalize(&res);
        prop_assert!(min.is_complex());
        let t = betti_table(&min).unwrap();
        prop_assert_eq!(&t.hilbert_series().numerator, &h.numerator);
        // F_1 of a minimal resolution is minimally generated I
        prop_assert_eq!(t.total(1), milnor_alg::groebner::minimal_generators(&i).len());
    }
}
