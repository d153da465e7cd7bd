use super::*;
use crate::exact::rat;
use crate::polytope::{cube, diamond, hexagon, standard_simplex, crosspolytope_stretched};

#[test]
fn laguerre_values() {
    // direct summation: 1, 3, 7, 43/3, 27, 719/15
    assert_eq!(laguerre_at_2(0), rat_int(1));
    assert_eq!(laguerre_at_2(1), rat_int(3));
    assert_eq!(laguerre_at_2(2), rat_int(7));
    assert_eq!(laguerre_at_2(3), rat(43, 3));
    assert_eq!(laguerre_at_2(4), rat_int(27));
    assert_eq!(laguerre_at_2(5), rat(719, 15));
}

#[test]
fn laguerre_recurrence_agreement() {
    let by_recurrence = laguerre_at_2_by_recurrence(200);
    for (k, v) in by_recurrence.iter().enumerate() {
        assert_eq!(v, &laguerre_at_2(k as u32), "mismatch at k = {k}");
    }
}

#[test]
fn blichfeldt_examples() {
    // the simplex is tight: (3-2)/2! = 1/2 = vol
    let r = blichfeldt_lower_check(&standard_simplex(2)).unwrap();
    assert!(r.holds && r.equality());
    assert_eq!(r.lhs, Scalar::Rational(rat(1, 2)));

    let r = blichfeldt_lower_check(&hexagon()).unwrap();
    assert!(r.holds && !r.equality());
    assert_eq!(r.lhs, Scalar::Rational(rat(5, 2)));
    assert_eq!(r.rhs, Scalar::Rational(rat_int(3)));

    let r = blichfeldt_lower_check(&cube(2)).unwrap();
    assert_eq!(r.lhs, Scalar::Rational(rat(7, 2)));
    assert_eq!(r.rhs, Scalar::Rational(rat_int(4)));
    assert!(r.holds);
}

#[test]
fn blichfeldt_hypothesis_flagged() {
    // no full lattice span: shrunken square has a single lattice point
    let tiny = VPolytope::hull(
        2,
        vec![
            vec![rat(-1, 3), rat(-1, 3)],
            vec![rat(1, 3), rat(-1, 3)],
            vec![rat(-1, 3), rat(1, 3)],
            vec![rat(1, 3), rat(1, 3)],
        ],
    )
    .unwrap();
    assert!(matches!(
        blichfeldt_lower_check(&tiny),
        Err(Error::HypothesisViolated(_))
    ));
}

#[test]
fn vdcorput_examples() {
    let r = vdcorput_upper_check(&cube(2)).unwrap();
    assert!(r.holds && r.equality());
    assert_eq!(r.rhs, Scalar::Rational(rat_int(4)));

    let r = vdcorput_upper_check(&hexagon()).unwrap();
    assert!(r.holds && !r.equality());
    assert_eq!(r.rhs, Scalar::Rational(rat_int(4)));

    let r = vdcorput_upper_check(&diamond(3)).unwrap();
    assert_eq!(r.lhs, Scalar::Rational(rat(4, 3)));
    assert_eq!(r.rhs, Scalar::Rational(rat_int(8)));
    assert!(r.holds);

    assert!(matches!(
        vdcorput_upper_check(&standard_simplex(2)),
        Err(Error::NotCentrallySymmetric)
    ));
}

#[test]
fn sym_blichfeldt_examples() {
    // hexagon: 7 <= 3 * (2!/2^2) * L_2(2) = 21/2
    let r = sym_blichfeldt_exact_check(&hexagon(), ZChoice::LexLeast).unwrap();
    assert!(r.report.holds);
    assert_eq!(r.report.lhs, Scalar::Rational(rat_int(7)));
    assert_eq!(r.report.rhs, Scalar::Rational(rat(21, 2)));
    assert!(r.davenport_check.holds);
    // the chain passes through the Davenport bound
    assert!(
        Scalar::Rational(r.davenport_check.rhs.clone()).certified_cmp(&r.report.rhs)
            != std::cmp::Ordering::Greater
    );
    // certified enclosure of (2! * 3 / 7)^(1/2)
    let (lo, hi) = &r.ratio_enclosure;
    assert!(lo * lo <= rat(6, 7) && rat(6, 7) <= hi * hi);

    let r = sym_blichfeldt_exact_check(&cube(2), ZChoice::LexLeast).unwrap();
    assert_eq!(r.report.lhs, Scalar::Rational(rat_int(9)));
    assert_eq!(r.report.rhs, Scalar::Rational(rat_int(14)));
    assert!(r.report.holds);

    let r = sym_blichfeldt_exact_check(&crosspolytope_stretched(3, 2), ZChoice::LexLeast).unwrap();
    assert_eq!(r.report.lhs, Scalar::Rational(rat_int(9)));
    assert_eq!(r.report.rhs, Scalar::Rational(rat(86, 3)));
    assert!(r.report.holds && r.davenport_check.holds);
}

#[test]
fn sym_blichfeldt_try_all() {
    let base = sym_blichfeldt_exact_check(&hexagon(), ZChoice::LexLeast).unwrap();
    let all = sym_blichfeldt_exact_check(&hexagon(), ZChoice::TryAll { cap: 50 }).unwrap();
    assert!(all.tried > 1);
    assert!(all.davenport_check.rhs <= base.davenport_check.rhs);
    assert!(all.davenport_check.holds);
}

#[test]
fn crosspolytope_closed_forms() {
    let s = crosspolytope_stats(3, 2).unwrap();
    assert_eq!(s.count, 9);
    assert_eq!(s.volume, rat(8, 3));
    assert!(s.oracle_agrees);

    let s = crosspolytope_stats(2, 1).unwrap();
    assert_eq!(s.count, 5);
    assert_eq!(s.volume, rat_int(2));
    assert!(s.oracle_agrees);

    let s = crosspolytope_stats(4, 10).unwrap();
    assert_eq!(s.count, 27);
    assert_eq!(s.volume, rat(20, 3));
    assert!(s.oracle_agrees);

    assert!(crosspolytope_stats(0, 1).is_err());
}

#[test]
fn gs_product_upper_examples() {
    // hexagon: 21 <= (7/2) pi^2
    let r = gs_product_exact_check(&hexagon()).unwrap();
    assert!(r.holds);
    assert_eq!(r.lhs, Scalar::Rational(rat_int(21)));
    assert_eq!(r.rhs, Scalar::Pi(PiScaled::new(rat(7, 2), 2)));

    let r = gs_product_exact_check(&cube(2)).unwrap();
    assert_eq!(r.lhs, Scalar::Rational(rat_int(18)));
    assert!(r.holds);

    let r = gs_product_exact_check(&diamond(2)).unwrap();
    assert_eq!(r.lhs, Scalar::Rational(rat_int(20)));
    assert!(r.holds);
}

#[test]
fn gs_product_lower_examples() {
    let r = gs_product_lower_check(&cube(2)).unwrap();
    assert_eq!(r.lhs, Scalar::Rational(rat_int(2)));
    assert_eq!(r.rhs, Scalar::Rational(rat_int(18)));
    assert!(r.holds);

    let r = gs_product_lower_check(&hexagon()).unwrap();
    assert_eq!(r.lhs, Scalar::Rational(rat(9, 4)));
    assert_eq!(r.rhs, Scalar::Rational(rat_int(21)));
    assert!(r.holds);

    let r = gs_product_lower_check(&diamond(2)).unwrap();
    assert_eq!(r.lhs, Scalar::Rational(rat_int(2)));
    assert_eq!(r.rhs, Scalar::Rational(rat_int(20)));
    assert!(r.holds);
}

#[test]
fn gs_ratio_examples() {
    assert_eq!(gs_ratio(&hexagon()).unwrap(), rat(1, 3));
    assert_eq!(gs_ratio(&cube(2)).unwrap(), rat(9, 20));
    assert_eq!(gs_ratio(&diamond(2)).unwrap(), rat(5, 18));
}

#[test]
fn gs_ratio_chain_examples() {
    for k in [hexagon(), cube(2), diamond(2), cube(3), diamond(3)] {
        let r = gs_ratio_chain_check(&k).unwrap();
        assert!(r.holds, "chain fails on {:?}", k.vertices().len());
    }
}

#[test]
fn g_monotonicity_small() {
    // g(0) = 1, g(1) = 1/3, g(2) = 8/(7 pi^2) < 1/3: every step certified
    for step in g_monotonicity_check(12) {
        assert!(step.nonincreasing, "g increases at k = {}", step.k);
        assert!(step.sufficient_condition, "sufficient condition fails at k = {}", step.k);
        assert!(step.kappa_ratio_estimate, "kappa estimate fails at k = {}", step.k);
    }
}

#[test]
fn recurrence_audit_pattern() {
    // direct-summation ground truth: agreement at k = 0 only
    let audit = laguerre_recurrence_audit(6);
    let discrepancies: Vec<Rational> = audit.iter().map(|r| r.discrepancy.clone()).collect();
    assert_eq!(
        discrepancies,
        vec![
            rat_int(0),
            rat_int(1),
            rat_int(1),
            rat_int(-1),
            rat(-17, 3),
            rat(-43, 3),
            rat(-147, 5),
        ]
    );
    assert_eq!(audit[0].claimed, rat_int(3));
    assert_eq!(audit[1].claimed, rat_int(6));
    assert_eq!(audit[1].direct, rat_int(7));
    assert_eq!(audit[2].claimed, rat(40, 3));
    assert_eq!(audit[2].direct, rat(43, 3));
}

#[test]
fn asymptotic_table() {
    let report = asymptotic_report(60, &rat_int(1)).unwrap();
    assert_eq!(report.rows.len(), 60);
    // L_2(2)/4 = 7/4, above the threshold 1
    let row2 = &report.rows[1];
    assert_eq!(row2.laguerre_over_2n, rat(7, 4));
    assert_eq!(row2.threshold, rat_int(1));
    assert!(!row2.crossed);
    // (2 pi^2 7/4)^(1/2) ~ 5.877 is certified above pi + 1
    assert_eq!(row2.gs_below_pi_plus_eps, Some(false));
    assert!(row2.szego_approx > 1.0 && row2.szego_approx < 2.5);

    assert_eq!(report.first_crossing, Some(8));
    // once crossed, the exact comparison stays crossed up to 60
    assert!(report.rows.iter().filter(|r| r.n >= 8).all(|r| r.crossed));
    assert_eq!(report.first_gs_crossing, Some(58));

    assert!(asymptotic_report(10, &rat_int(0)).is_err());
    assert!(asymptotic_report(10, &rat_int(2)).is_err());
}

#[test]
fn asymptotic_fractional_epsilon() {
    let report = asymptotic_report(40, &rat(1, 2)).unwrap();
    // threshold (3/2)^{-n}
    assert_eq!(report.rows[0].threshold, rat(2, 3));
    assert_eq!(report.rows[3].threshold, rat(16, 81));
    // L_n(2)/2^n > (2/3)^n in this whole range (crossing needs larger n)
    assert_eq!(report.first_crossing, None);
}

#[test]
fn mahler_examples() {
    let r = mahler_planar_check(&cube(2)).unwrap();
    assert!(r.holds && r.equality());

    let r = mahler_planar_check(&hexagon()).unwrap();
    assert!(r.holds && !r.equality());
    assert_eq!(r.rhs, Scalar::Rational(rat_int(9)));
    assert_eq!(r.slack, Some(Scalar::Rational(rat_int(1))));

    let r = mahler_planar_check(&diamond(2)).unwrap();
    assert!(r.holds && r.equality());

    assert!(mahler_planar_check(&cube(3)).is_err());
    assert!(mahler_planar_check(&standard_simplex(2)).is_err());
}

#[test]
fn scalar_comparisons_and_slack() {
    let report = BoundReport::new(
        "test",
        Scalar::Rational(rat_int(21)),
        Scalar::Pi(PiScaled::new(rat(7, 2), 2)),
    );
    assert!(report.holds);
    assert!(report.slack.is_none()); // 7/2 pi^2 - 21 is not a pi-monomial
    let report = BoundReport::new(
        "test",
        Scalar::Pi(PiScaled::new(rat_int(2), 2)),
        Scalar::Pi(PiScaled::new(rat_int(3), 2)),
    );
    assert_eq!(report.slack, Some(Scalar::Pi(PiScaled::new(rat_int(1), 2))));
}
