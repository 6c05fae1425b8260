use num_traits::One;
use proptest::prelude::*;

use super::*;
use crate::linalg::QPoly;
use crate::novikov::{q, q_frac, Exponent, NovikovScalar};

fn proj(m: usize) -> Superpotential {
    superpotential(&family_polytope(Family::Projective { m }).unwrap())
}

fn bundle(m: usize, k: usize) -> Superpotential {
    superpotential(&family_polytope(Family::NegativeLineBundle { m, k }).unwrap())
}

fn poly(c: &[i64]) -> QPoly {
    QPoly::new(c.iter().map(|&x| q(x)).collect())
}

/// `x^d − a`.
fn binomial(d: usize, a: i64) -> QPoly {
    let mut c = vec![0; d + 1];
    c[0] = -a;
    c[d] = 1;
    poly(&c)
}

fn ts() -> Vec<crate::novikov::Q> {
    vec![q(1), q_frac(3, 7)]
}

#[test]
fn projective_plane_facets() {
    let p = family_polytope(Family::Projective { m: 2 }).unwrap();
    let normals: Vec<Vec<i64>> = p.facets().iter().map(|f| f.normal.clone()).collect();
    assert_eq!(normals, vec![vec![1, 0], vec![0, 1], vec![-1, -1]]);
    let lambdas: Vec<_> = p.facets().iter().map(|f| f.constant.clone()).collect();
    assert_eq!(lambdas, vec![q(0), q(0), q(-1)]);
    assert!(p.delzant().passed);
    assert_eq!(p.delzant().vertices, 3);
}

#[test]
fn bundle_facets_and_window() {
    let p = family_polytope(Family::NegativeLineBundle { m: 2, k: 1 }).unwrap();
    assert_eq!(p.dim(), 3);
    assert_eq!(p.facets().len(), 4);
    assert!(p.facets().contains(&Facet { normal: vec![-1, -1, 1], constant: q(-1) }));
    assert!(p.delzant().passed);
    assert!(matches!(family_polytope(Family::NegativeLineBundle { m: 1, k: 2 }), Err(ToricError::ParameterOutOfRange(_))));
    assert!(matches!(family_polytope(Family::Projective { m: 0 }), Err(ToricError::ParameterOutOfRange(_))));
}

#[test]
fn polytope_validation() {
    let bad = MomentPolytope::new(1, vec![Facet { normal: vec![2], constant: q(0) }]);
    assert!(matches!(bad, Err(ToricError::InvalidPolytope(_))));
    let empty = MomentPolytope::new(1, vec![Facet { normal: vec![1], constant: q(1) }, Facet { normal: vec![-1], constant: q(0) }]);
    assert!(matches!(empty, Err(ToricError::InvalidPolytope(_))));
    // a point: nonempty but no interior
    let point = MomentPolytope::new(1, vec![Facet { normal: vec![1], constant: q(0) }, Facet { normal: vec![-1], constant: q(0) }]).unwrap();
    assert!(!point.has_interior());
    // weighted triangle with a singular vertex at (0, 1)
    let weighted = MomentPolytope::new(
        2,
        vec![
            Facet { normal: vec![1, 0], constant: q(0) },
            Facet { normal: vec![0, 1], constant: q(0) },
            Facet { normal: vec![-1, -2], constant: q(-2) },
        ],
    )
    .unwrap();
    assert!(!weighted.delzant().passed);
    assert_eq!(weighted.delzant().failing_vertices, 1);
}

#[test]
fn polytope_json_round_trip() {
    let p = family_polytope(Family::NegativeLineBundle { m: 3, k: 2 }).unwrap();
    let text = p.to_json().to_string();
    assert!(text.contains("\"constant\":\"-2\""));
    assert_eq!(MomentPolytope::from_json_str(&text).unwrap(), p);
    assert!(MomentPolytope::from_json_str("{\"dim\": 1, \"facets\": [], \"extra\": 1}").is_err());
}

#[test]
fn superpotential_terms() {
    let w = proj(1);
    assert_eq!(w.terms().len(), 2);
    assert_eq!(w.terms()[1].exponent, vec![-1]);
    assert_eq!(w.terms()[1].coeff, NovikovScalar::t_pow(Exponent::from_integer(1)));
    let w = bundle(3, 2);
    let last = &w.terms()[4];
    assert_eq!(last.exponent, vec![-1, -1, -1, 2]);
    assert_eq!(last.coeff, NovikovScalar::t_pow(Exponent::from_integer(2)));
    assert_eq!(w.family(), Some(Family::NegativeLineBundle { m: 3, k: 2 }));
    assert!(w.to_string().contains("z4^2"));
}

#[test]
fn p1_critical_points_and_values() {
    let w = proj(1);
    let set = critical_points(&w, None).unwrap();
    assert_eq!(set.points.len(), 2);
    for p in &set.points {
        let c = &p.coordinates[0];
        assert_eq!(c.coefficient.min_poly, binomial(2, 1));
        assert_eq!(c.exponent, Exponent::new(1, 2));
        assert!((c.coefficient.value().norm() - 1.0).abs() < 1e-12);
        assert!(exact_residual_vanishes(&w, p.exact.as_ref().unwrap()));
    }
    let values = critical_values(&w, &set.points);
    let approx: Vec<f64> = values.iter().map(|v| v.approx[0]).collect();
    assert!(approx.iter().any(|v| (v - 2.0).abs() < 1e-12) && approx.iter().any(|v| (v + 2.0).abs() < 1e-12));
    for v in &values {
        assert_eq!(v.terms.len(), 1);
        assert_eq!(v.terms[0].coefficient.min_poly, binomial(2, 4));
        assert_eq!(v.terms[0].exponent, Exponent::new(1, 2));
        assert!(!v.is_zero);
    }
}

#[test]
fn bundle_closed_forms() {
    for m in 1..=6usize {
        for k in 1..=m {
            let w = bundle(m, k);
            let d = 1 + m - k;
            let a = (-(k as i64)).pow(k as u32);
            let set = critical_points(&w, None).unwrap();
            assert_eq!(set.points.len(), d, "(m, k) = ({m}, {k})");
            for p in &set.points {
                let e = p.exact.as_ref().unwrap();
                assert!(exact_residual_vanishes(&w, e));
                assert_eq!(p.coordinates[0].coefficient.min_poly, binomial(d, a));
                assert_eq!(p.coordinates[0].exponent, Exponent::new(k as i64, d as i64));
                // last coordinate is −k·w
                let ratio = p.coordinates[m].coefficient.value() / p.coordinates[0].coefficient.value();
                assert!((ratio.re + k as f64).abs() < 1e-9 && ratio.im.abs() < 1e-9);
                let val: Vec<_> = p.coordinates.iter().map(|c| crate::novikov::Q::new((*c.exponent.numer()).into(), (*c.exponent.denom()).into())).collect();
                assert!(w.polytope().contains_strictly(&val));
            }
            for v in critical_values(&w, &set.points) {
                // (1+m−k)·w
                assert_eq!(v.terms[0].coefficient.min_poly, binomial(d, (d as i64).pow(d as u32) * a));
            }
        }
    }
}

#[test]
fn projective_closed_forms() {
    for m in 1..=6 {
        let w = proj(m);
        let set = critical_points(&w, None).unwrap();
        assert_eq!(set.points.len(), m + 1);
        let values = critical_values(&w, &set.points);
        for (p, v) in set.points.iter().zip(&values) {
            assert!(exact_residual_vanishes(&w, p.exact.as_ref().unwrap()));
            assert_eq!(v.terms[0].coefficient.min_poly, binomial(m + 1, ((m + 1) as i64).pow(m as u32 + 1)));
        }
    }
}

#[test]
fn coordinate_permutation_fixes_values() {
    let p = family_polytope(Family::Projective { m: 3 }).unwrap();
    let mut facets = p.facets().to_vec();
    for f in facets.iter_mut() {
        f.normal.swap(0, 2);
    }
    facets.reverse();
    let permuted = superpotential(&MomentPolytope::new(3, facets).unwrap());
    let w = superpotential(&p);
    let (a, b) = (critical_points(&w, None).unwrap(), critical_points(&permuted, None).unwrap());
    let va: Vec<String> = critical_values(&w, &a.points).iter().map(|v| v.text.clone()).collect();
    let vb: Vec<String> = critical_values(&permuted, &b.points).iter().map(|v| v.text.clone()).collect();
    assert_eq!(va, vb);
}

#[test]
fn nondisplaceability_flags() {
    let w = proj(1);
    let set = critical_points(&w, None).unwrap();
    assert!(nondisplaceability_report(&w, &set.points).iter().all(|f| f.nondisplaceable && f.hf_nonvanishing));
    let off = CriticalPoint::exact(binomial(2, 1), 0, vec![poly(&[0, 2])], vec![Exponent::new(1, 2)]).unwrap();
    assert!(!nondisplaceability_report(&w, &[off])[0].hf_nonvanishing);
    let sample = CriticalPoint::numeric(&w, &q(1), vec![num_complex::Complex64::new(0.5, 0.0)]);
    assert!(!nondisplaceability_report(&w, &[sample])[0].critical);
    assert!(nondisplaceability_report(&w, &[]).is_empty());
}

#[test]
fn jacobian_ranks_of_families() {
    for m in 1..=4 {
        let j = jacobian_rank(&proj(m), &ts()).unwrap();
        assert_eq!(j.rank, m + 1);
        assert!(j.consistent);
    }
    assert_eq!(jacobian_rank(&bundle(3, 1), &ts()).unwrap().rank, 3);
    assert_eq!(jacobian_rank(&bundle(2, 2), &ts()).unwrap().rank, 1);
}

#[test]
fn jacobian_of_linear_potential_is_zero() {
    let p = MomentPolytope::new(1, vec![Facet { normal: vec![1], constant: q(0) }]).unwrap();
    let w = superpotential(&p);
    let j = jacobian_rank(&w, &ts()).unwrap();
    assert_eq!(j.rank, 0);
    assert!(j.basis().is_empty());
    let set = critical_points(&w, Some(&NumericOptions::new(q_frac(1, 1000), 7))).unwrap();
    assert!(set.points.is_empty());
}

#[test]
fn jacobian_needs_two_specializations() {
    assert!(matches!(jacobian_rank(&proj(1), &[q(1)]), Err(ToricError::BadSpecialization(_))));
    assert!(matches!(jacobian_rank(&proj(1), &[q(1), q(1)]), Err(ToricError::BadSpecialization(_))));
    assert!(matches!(jacobian_rank(&proj(1), &[q(0), q(1)]), Err(ToricError::BadSpecialization(_))));
}

#[test]
fn positive_dimensional_jacobian_is_reported() {
    // W = z1 z2^{-1} + z2 z1^{-1}: critical locus z1^2 = z2^2 is a curve
    let p = MomentPolytope::new(
        2,
        vec![Facet { normal: vec![1, -1], constant: q(-1) }, Facet { normal: vec![-1, 1], constant: q(-1) }],
    )
    .unwrap();
    let w = superpotential(&p);
    assert!(matches!(jacobian_rank(&w, &ts()), Err(ToricError::NonZeroDimensionalIdeal { .. })));
}

fn hexagon() -> Superpotential {
    // the blow-up of ℙ² at three points; not a shipped family
    let normals = [[1, 0], [0, 1], [-1, 0], [0, -1], [1, 1], [-1, -1]];
    let lambdas = [q(0), q(0), q(-2), q(-2), q(1), q(-3)];
    let facets = normals.iter().zip(lambdas).map(|(n, l)| Facet { normal: n.to_vec(), constant: l }).collect();
    superpotential(&MomentPolytope::new(2, facets).unwrap())
}

#[test]
fn numerical_branch_matches_jacobian_rank() {
    let w = hexagon();
    assert_eq!(w.family(), None);
    assert!(matches!(critical_points(&w, None), Err(ToricError::NeedsSpecialization)));
    let opts = NumericOptions::new(q(1), 11);
    let set = critical_points(&w, Some(&opts)).unwrap();
    assert!(!set.valuation_filter_applied);
    let j = jacobian_rank(&w, &[q(1), q(2)]).unwrap();
    assert_eq!(set.points.len(), j.rank);
    for p in &set.points {
        assert!(p.numeric.as_ref().unwrap().residual <= RESIDUAL_TOLERANCE);
    }
    let again = critical_points(&w, Some(&opts)).unwrap();
    assert_eq!(serde_json::to_string(&set).unwrap(), serde_json::to_string(&again).unwrap());
}

#[test]
fn numerical_branch_on_shipped_families() {
    // Bezout consistency: certified roots at a generic t equal the Jacobian rank
    for w in [proj(2), proj(3), bundle(2, 1), bundle(3, 1), bundle(4, 2)] {
        let set = numerical_critical_points(&w, &NumericOptions::new(q_frac(2, 3), 5)).unwrap();
        let j = jacobian_rank(&w, &ts()).unwrap();
        assert_eq!(set.points.len(), j.rank, "{w}");
    }
}

#[test]
fn numerical_valuation_filter() {
    let w = proj(2);
    let set = numerical_critical_points(&w, &NumericOptions::new(q_frac(1, 100_000_000), 3)).unwrap();
    assert!(set.valuation_filter_applied);
    assert_eq!(set.points.len(), 3);
    for p in &set.points {
        let est = p.numeric.as_ref().unwrap().valuation_estimate.clone().unwrap();
        assert!(est.iter().all(|v| (v - 1.0 / 3.0).abs() < 1e-9));
    }
}

#[test]
fn critical_report_round_trip() {
    let w = bundle(4, 2);
    let report = CriticalReport::build(&w, critical_points(&w, None).unwrap());
    assert!(report.exact);
    assert_eq!(report.points.len(), 3);
    let text = report.to_json_string();
    assert_eq!(CriticalReport::from_json_str(&text).unwrap(), report);
    assert!(text.contains("\"min_poly\": \"1*x^3 + -4\""));
}

#[test]
fn empty_critical_set_is_valid() {
    let w = bundle(2, 1);
    let none = CriticalSet {
        points: Vec::new(),
        branch: "closed-form".into(),
        filtered_out: 0,
        unconverged_starts: 0,
        starts: 0,
        valuation_filter_applied: true,
    };
    let r = CriticalReport::build(&w, none);
    assert!(r.values.is_empty() && r.flags.is_empty());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn jacobian_rank_stable_under_specialization(m in 1usize..4, kk in 0usize..3, a in 1i64..50, b in 1i64..50) {
        let k = 1 + kk % m;
        let s1 = q_frac(a, 7);
        let s2 = q_frac(b, 11) + crate::novikov::Q::one();
        prop_assume!(s1 != s2);
        let j = jacobian_rank(&bundle(m, k), &[s1, s2]).unwrap();
        prop_assert!(j.consistent);
        prop_assert_eq!(j.rank, 1 + m - k);
    }
}

