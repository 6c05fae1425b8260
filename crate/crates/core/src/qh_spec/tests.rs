use proptest::prelude::*;

use super::*;
use crate::linalg::{Matrix, RatFunc};
use crate::novikov::{q, q_frac, Exponent, NovikovScalar};
use crate::toric_lg::{critical_points, critical_values, family_polytope, jacobian_rank, superpotential, Family};

fn bundle(m: usize, k: usize) -> Family {
    Family::NegativeLineBundle { m, k }
}

fn t_mono(c: i64, e: i64) -> NovikovScalar {
    NovikovScalar::monomial(q(c), Exponent::from_integer(e))
}

fn admissible(max_m: usize) -> Vec<(usize, usize)> {
    (2..=max_m).flat_map(|m| (1..=m / 2).map(move |k| (m, k))).collect()
}

fn expected_sh_relation(m: usize, k: usize) -> LambdaPoly {
    LambdaPoly::binomial(1 + m - k, t_mono(num_traits::pow(-(k as i64), k), k as i64))
}

#[test]
fn projective_presentation() {
    let p = presentation(Family::Projective { m: 2 }).unwrap();
    assert_eq!(p.rank(), 3);
    assert_eq!(p.basis, vec!["1", "w", "w^2"]);
    assert_eq!(*p.relation(), LambdaPoly::binomial(3, t_mono(1, 1)));
    assert_eq!(p.relation_text(), "w^3 + (-1*T^(1))");
}

#[test]
fn bundle_presentation_and_window() {
    let p = presentation(bundle(3, 1)).unwrap();
    // w·(w^3 + t) = w^4 + t·w
    let mut c = vec![NovikovScalar::zero(); 5];
    c[1] = t_mono(1, 1);
    c[4] = NovikovScalar::one();
    assert_eq!(*p.relation(), LambdaPoly::new(c));
    assert_eq!(p.rank(), 4);
    for (m, k) in [(2, 2), (3, 2), (1, 1), (4, 3)] {
        assert!(matches!(presentation(bundle(m, k)), Err(QhError::ParameterOutOfRange(_))), "{m} {k}");
    }
    assert!(presentation(Family::Projective { m: 0 }).is_err());
    assert!(!QuantumPresentation::bundle_relation(1, 1).unwrap().in_stated_window);
}

#[test]
fn c1_on_projective_line() {
    let p = presentation(Family::Projective { m: 1 }).unwrap();
    let op = c1_operator(&p);
    let e = op.entries().unwrap();
    assert_eq!(e, vec![vec![NovikovScalar::zero(), t_mono(2, 1)], vec![NovikovScalar::from_int(2), NovikovScalar::zero()]]);
    let s = spectrum(&op);
    assert_eq!(s.factors.len(), 1);
    assert_eq!(s.factors[0].factor, LambdaPoly::binomial(2, t_mono(4, 1)));
    assert!(s.factors[0].irreducible);
    assert_eq!(s.zero_block_dim, 0);
}

#[test]
fn c1_commutes_with_w() {
    for m in 1..=6 {
        assert!(c1_operator(&presentation(Family::Projective { m }).unwrap()).commutes_with_w());
    }
    for (m, k) in admissible(6) {
        let op = c1_operator(&presentation(bundle(m, k)).unwrap());
        assert!(op.commutes_with_w());
        assert_eq!(op.multiplicity, (1 + m - k) as i64);
    }
}

#[test]
fn spectrum_of_bundle_two_one() {
    let s = spectrum(&c1_operator(&presentation(bundle(2, 1)).unwrap()));
    assert_eq!(s.zero_block_dim, 1);
    let nonzero: Vec<_> = s.factors.iter().filter(|f| !f.zero).collect();
    assert_eq!(nonzero.len(), 1);
    // c1 = 2w, w^2 = -t, so λ^2 = -4t
    assert_eq!(nonzero[0].factor, LambdaPoly::binomial(2, t_mono(-4, 1)));
    assert_eq!(nonzero[0].per_root_dim(), 1);
    assert_eq!(s.factors.iter().map(|f| f.summand_dim).sum::<usize>(), 3);
}

#[test]
fn scalar_operator_has_one_factor() {
    let m = Matrix::<RatFunc>::identity(4).scale(&RatFunc::constant(q(3)));
    let s = spectrum(&C1Operator::from_matrix(m, 1, "t"));
    assert_eq!(s.factors.len(), 1);
    assert_eq!(s.factors[0].multiplicity, 4);
    assert_eq!(s.factors[0].summand_dim, 4);
    assert_eq!(s.factors[0].factor, LambdaPoly::new(vec![NovikovScalar::from_int(-3), NovikovScalar::one()]));
}

#[test]
fn reducible_binomial_is_split() {
    // (5,2): λ^4 = 4^4·4·t^2 = (32t)^2
    let s = spectrum(&c1_operator(&presentation(bundle(5, 2)).unwrap()));
    let nonzero: Vec<_> = s.factors.iter().filter(|f| !f.zero).map(|f| f.factor.clone()).collect();
    assert_eq!(nonzero.len(), 2);
    assert!(nonzero.contains(&LambdaPoly::binomial(2, t_mono(32, 1))));
    assert!(nonzero.contains(&LambdaPoly::binomial(2, t_mono(-32, 1))));
    assert!(s.factors.iter().all(|f| f.irreducible));
}

#[test]
fn projective_spectra() {
    for m in 1..=6usize {
        let s = spectrum(&c1_operator(&presentation(Family::Projective { m }).unwrap()));
        let c = num_traits::pow(1 + m as i64, 1 + m);
        assert_eq!(s.factors.len(), 1, "m = {m}");
        assert_eq!(s.factors[0].factor, LambdaPoly::binomial(1 + m, t_mono(c, 1)));
        assert!(s.factors[0].irreducible);
        assert_eq!(s.factors[0].summand_dim, 1 + m);
    }
}

#[test]
fn sh_quotient_examples() {
    let p = QuantumPresentation::bundle_relation(1, 1).unwrap();
    let sh = sh_quotient(&p, &c1_operator(&p)).unwrap();
    assert_eq!(sh.presentation.rank(), 1);
    assert_eq!(*sh.presentation.relation(), LambdaPoly::new(vec![t_mono(1, 1), NovikovScalar::one()]));
    assert_eq!(sh.presentation.relation_text(), "w + (1*t^(1))");

    let p = presentation(bundle(3, 1)).unwrap();
    let sh = sh_quotient(&p, &c1_operator(&p)).unwrap();
    assert_eq!(sh.presentation.rank(), 3);
    assert_eq!(*sh.presentation.relation(), LambdaPoly::binomial(3, t_mono(-1, 1)));
    assert!(sh.automorphism);
    assert_eq!(sh.presentation.ring, Ring::SymplecticCohomology);

    let p = presentation(Family::Projective { m: 2 }).unwrap();
    assert_eq!(sh_quotient(&p, &c1_operator(&p)).unwrap_err(), QhError::NotABundleFamily);
}

#[test]
fn bundle_invariants_up_to_six() {
    for (m, k) in admissible(6) {
        let p = presentation(bundle(m, k)).unwrap();
        let op = c1_operator(&p);
        let s = spectrum(&op);
        let sh = sh_quotient(&p, &op).unwrap();
        assert_eq!(p.rank(), 1 + m);
        assert_eq!(s.zero_block_dim, k, "({m},{k})");
        assert_eq!(sh.presentation.rank(), 1 + m - k);
        assert_eq!(sh.kernel_dim, k);
        assert_eq!(sh.stabilization_exponent, k);
        assert!(sh.automorphism);
        assert_eq!(*sh.presentation.relation(), expected_sh_relation(m, k), "({m},{k})");
        assert_eq!(s.factors.iter().map(|f| f.summand_dim).sum::<usize>(), 1 + m);
    }
}

fn comparison_inputs(m: usize, k: usize) -> (crate::toric_lg::JacobianData, Vec<crate::toric_lg::CriticalPoint>, Vec<crate::toric_lg::CriticalValue>) {
    let w = superpotential(&family_polytope(bundle(m, k)).unwrap());
    let jac = jacobian_rank(&w, &[q(2), q(3)]).unwrap();
    let pts = critical_points(&w, None).unwrap().points;
    let vals = critical_values(&w, &pts);
    (jac, pts, vals)
}

#[test]
fn jacobian_comparison_holds() {
    for (m, k) in [(2, 1), (4, 2)] {
        let p = presentation(bundle(m, k)).unwrap();
        let sh = sh_quotient(&p, &c1_operator(&p)).unwrap();
        let (jac, pts, vals) = comparison_inputs(m, k);
        let r = jacobian_comparison(&sh.presentation, &jac, &pts, &vals).unwrap();
        assert_eq!(r.sh_rank, 1 + m - k);
        assert_eq!(r.jacobian_rank, 1 + m - k);
        assert!(r.min_poly_match && r.spectrum_match);
    }
}

#[test]
fn perturbed_relation_is_reported() {
    let (jac, pts, vals) = comparison_inputs(2, 1);
    let wrong = LambdaPoly::binomial(2, t_mono(-2, 1));
    let p = QuantumPresentation::from_relation(bundle(2, 1), Ring::SymplecticCohomology, wrong, "t").unwrap();
    match jacobian_comparison(&p, &jac, &pts, &vals) {
        Err(QhError::Mismatch(r)) => {
            assert!(r.report.rank_match);
            assert!(!r.report.min_poly_match);
            assert!(!r.report.spectrum_match);
            assert_eq!(r.failures.len(), 2);
        }
        other => panic!("expected a mismatch, got {other:?}"),
    }
}

#[test]
fn generation_for_k_equal_one() {
    for m in 2..=6 {
        let pipe = run_pipeline(bundle(m, 1), &default_specializations()).unwrap();
        let entries = &pipe.generation.entries;
        let nonzero: Vec<_> = entries.iter().filter(|e| e.eigenvalue_factor != "λ").collect();
        assert_eq!(nonzero.len(), m);
        assert!(nonzero.iter().all(|e| e.verdict == SPLIT_GENERATED && e.summand_dim == 1));
        let mut matched: Vec<usize> = nonzero.iter().map(|e| e.matched_crit_point.unwrap()).collect();
        matched.sort();
        assert_eq!(matched, (0..m).collect::<Vec<_>>());
        let zero: Vec<_> = entries.iter().filter(|e| e.eigenvalue_factor == "λ").collect();
        assert_eq!(zero.len(), 1);
        assert_eq!(zero[0].verdict, INCONCLUSIVE);
        assert_eq!(zero[0].summand_dim, 1);
    }
}

#[test]
fn unmatched_eigenvalue_is_inconclusive() {
    let p = presentation(bundle(3, 1)).unwrap();
    let s = spectrum(&c1_operator(&p));
    let (_, _, vals) = comparison_inputs(3, 1);
    // values of a different family
    let w = superpotential(&family_polytope(Family::Projective { m: 2 }).unwrap());
    let other = critical_values(&w, &critical_points(&w, None).unwrap().points);
    let g = generation_report(&s, &other);
    assert!(g.entries.iter().filter(|e| e.eigenvalue_factor != "λ").all(|e| e.verdict == INCONCLUSIVE && e.note.contains("no critical point")));
    let g = generation_report(&s, &vals[..1]);
    assert!(g.entries.iter().all(|e| e.verdict == INCONCLUSIVE));
}

#[test]
fn report_round_trip() {
    let pipe = run_pipeline(bundle(3, 1), &default_specializations()).unwrap();
    let r = pipe.report();
    assert_eq!(r.sh_rank, Some(3));
    assert!(r.spectrum_match);
    assert_eq!(r.sh_relation.as_deref(), Some("w^3 + (1*t^(1))"));
    let back = QhReport::from_json_str(&r.to_json_string()).unwrap();
    assert_eq!(back, r);
    let pp = run_pipeline(Family::Projective { m: 2 }, &default_specializations()).unwrap();
    assert!(pp.spectrum_match());
    assert_eq!(pp.report().sh_rank, None);
}

fn verdict_keys(g: &GenerationReport) -> Vec<(usize, Option<usize>, String)> {
    let mut v: Vec<_> = g.entries.iter().map(|e| (e.summand_dim, e.matched_crit_point, e.verdict.clone())).collect();
    v.sort();
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn generation_is_invariant_under_rescaling(idx in 0usize..6, num in -7i64..8, den in 1i64..6) {
        prop_assume!(num != 0);
        let (m, k) = admissible(5)[idx % admissible(5).len()];
        let p = presentation(bundle(m, k)).unwrap();
        let s = spectrum(&c1_operator(&p));
        let (_, _, vals) = comparison_inputs(m, k);
        let u = q_frac(num, den);
        let before = generation_report(&s, &vals);
        let after = generation_report(&s.rescaled(&u), &rescale_critical_values(&vals, &u));
        prop_assert_eq!(verdict_keys(&before), verdict_keys(&after));
    }
}
