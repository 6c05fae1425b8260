use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::fixtures::*;
use super::*;
use crate::novikov::{q, NovikovScalar};

fn arc(t: &AssociativeTable) -> Arc<AInfStructure> {
    Arc::new(from_associative(t).unwrap())
}

/// `e` in degree 0, `x` in degree 1, unital with `x·x = 0`.
fn dual_odd() -> AssociativeTable {
    exterior(1, 1)
}

/// Literal evaluation of `Σ_{1≤S≤R≤n} (-1)^{σ_1^{S-1}} μ(x_n..x_{R+1}, μ(x_R..x_S), x_{S-1}..x_1)`
/// with `applied[i-1] = x_i`.
fn oracle_ainf(a: &AInfStructure, applied: &[BasisId]) -> LinComb<BasisId> {
    let n = applied.len();
    let degs: Vec<i64> = applied.iter().map(|&x| a.degree(x)).collect();
    let x = |i: usize| applied[i - 1];
    let mut out = LinComb::new();
    for big_s in 1..=n {
        for big_r in big_s..=n {
            let inner: Vec<BasisId> = (big_s..=big_r).rev().map(x).collect();
            let Some(v) = a.mu(&inner) else { continue };
            let sign = sigma(&degs, 1, big_s - 1).unwrap();
            for (y, c) in v.iter() {
                let mut outer: Vec<BasisId> = (big_r + 1..=n).rev().map(x).collect();
                outer.push(*y);
                outer.extend((1..big_s).rev().map(x));
                if let Some(w) = a.mu(&outer) {
                    for (z, d) in w.iter() {
                        out.add_signed(*z, &c.mul_ref(d), sign.rem_euclid(2) == 1);
                    }
                }
            }
        }
    }
    out
}

/// Literal three-sum bimodule relation with the `★` sign optionally dropped.
fn oracle_bimodule(m: &BimoduleData, xs_applied: &[BasisId], el: usize, ys: &[BasisId], with_star: bool) -> LinComb<usize> {
    let b = m.base();
    let (r, s) = (xs_applied.len(), ys.len());
    let xdeg: Vec<i64> = xs_applied.iter().map(|&x| b.degree(x)).collect();
    let ydeg: Vec<i64> = ys.iter().map(|&y| b.degree(y)).collect();
    let xw = |lo: usize, hi: usize| -> Vec<BasisId> { (lo..=hi).rev().map(|i| xs_applied[i - 1]).collect() };
    let yw = |lo: usize, hi: usize| -> Vec<BasisId> { (lo..=hi).map(|i| ys[i - 1]).collect() };
    let odd = |e: i64| e.rem_euclid(2) == 1;
    let mut out = LinComb::new();
    for big_s in 1..=r {
        for big_r in big_s..=r {
            let Some(v) = b.mu(&xw(big_s, big_r)) else { continue };
            let star = if with_star { SignLedger::star(&ydeg, m.degree(el), &xdeg, big_s) } else { 0 };
            for (y, c) in v.iter() {
                let mut outer = xw(big_r + 1, r);
                outer.push(*y);
                outer.extend(xw(1, big_s - 1));
                if let Some(w) = m.mu(&outer, el, ys) {
                    for (z, d) in w.iter() {
                        out.add_signed(*z, &c.mul_ref(d), odd(star));
                    }
                }
            }
        }
    }
    for big_r in 0..=r {
        for big_s in 0..=s {
            let Some(v) = m.mu(&xw(1, big_r), el, &yw(1, big_s)) else { continue };
            let diamond = SignLedger::diamond(&ydeg, big_s);
            for (y, c) in v.iter() {
                if let Some(w) = m.mu(&xw(big_r + 1, r), *y, &yw(big_s + 1, s)) {
                    for (z, d) in w.iter() {
                        out.add_signed(*z, &c.mul_ref(d), odd(diamond));
                    }
                }
            }
        }
    }
    for big_r in 1..=s {
        for big_s in big_r..=s {
            let Some(v) = b.mu(&yw(big_r, big_s)) else { continue };
            let diamond = SignLedger::diamond(&ydeg, big_s);
            for (y, c) in v.iter() {
                let mut ys2 = yw(1, big_r - 1);
                ys2.push(*y);
                ys2.extend(yw(big_s + 1, s));
                if let Some(w) = m.mu(&xw(1, r), el, &ys2) {
                    for (z, d) in w.iter() {
                        out.add_signed(*z, &c.mul_ref(d), odd(diamond));
                    }
                }
            }
        }
    }
    out
}

#[test]
fn associative_examples_pass() {
    for t in [truncated_polynomial(2, 0), cyclic_group_algebra(2), dual_odd(), exterior(2, 1)] {
        let a = from_associative(&t).unwrap();
        let rep = verify_ainf(&a, 4).unwrap();
        assert!(rep.ok, "{:?}", rep.violations.first());
        assert!(rep.tuples_checked > 0);
    }
}

#[test]
fn verifier_matches_literal_oracle() {
    let a = from_associative(&exterior(2, 1)).unwrap();
    for n in 1..=4 {
        for w in a.composable_words(n) {
            let applied: Vec<BasisId> = w.iter().rev().copied().collect();
            assert_eq!(ainf_residual(&a, &w), oracle_ainf(&a, &applied));
        }
    }
}

#[test]
fn sign_flip_detected_at_three_letters() {
    let a = from_associative(&dual_odd()).unwrap();
    let (e, x) = (a.id_of("1").unwrap(), a.id_of("a").unwrap());
    let mut b = a.to_builder();
    b.set_mu(&[e, x], x, NovikovScalar::from_int(1));
    let mutated = b.build().unwrap();
    let rep = verify_ainf(&mutated, 4).unwrap();
    assert!(!rep.ok);
    assert!(rep.violations.iter().any(|v| v.inputs.len() == 3));
    let first3 = rep.violations.iter().find(|v| v.inputs.len() == 3).unwrap();
    let w: Vec<BasisId> = first3.inputs.iter().map(|l| mutated.id_of(l).unwrap()).collect();
    let applied: Vec<BasisId> = w.iter().rev().copied().collect();
    let brute = oracle_ainf(&mutated, &applied);
    let reported: LinComb<BasisId> = first3.residual.iter().map(|(k, v)| (mutated.id_of(k).unwrap(), v.clone())).collect();
    assert_eq!(brute, reported);
}

#[test]
fn diagonal_bimodules_pass() {
    for t in [ground_field(), truncated_polynomial(3, 0), dual_odd(), exterior(2, 1), upper_triangular()] {
        let m = BimoduleData::diagonal(arc(&t));
        let rep = verify_bimodule(&m, 5).unwrap();
        assert!(rep.ok, "{:?}", rep.violations.first());
    }
}

#[test]
fn bimodule_verifier_matches_oracle_and_star_matters() {
    let m = BimoduleData::diagonal(arc(&exterior(2, 1)));
    let mut star_detected = false;
    for (xs, el, ys) in module_words(&m, 4) {
        let applied: Vec<BasisId> = xs.iter().rev().copied().collect();
        assert_eq!(bimodule_residual(&m, &xs, el, &ys), oracle_bimodule(&m, &applied, el, &ys, true));
        if !oracle_bimodule(&m, &applied, el, &ys, false).is_zero() {
            star_detected = true;
        }
    }
    assert!(star_detected, "dropping ★ should break the diagonal bimodule");
}

#[test]
fn outer_tensor_bimodule_passes() {
    for t in [truncated_polynomial(2, 0), dual_odd(), upper_triangular()] {
        let a = arc(&t);
        let l = BimoduleData::yoneda_left(a.clone(), 0);
        let r = BimoduleData::yoneda_right(a.clone(), 0);
        assert!(verify_bimodule(&l, 4).unwrap().ok);
        assert!(verify_bimodule(&r, 4).unwrap().ok);
        let lr = BimoduleData::tensor(&l, &r).unwrap();
        let rep = verify_bimodule(&lr, 4).unwrap();
        assert!(rep.ok, "{:?}", rep.violations.first());
    }
}

#[test]
fn identity_morphism_passes() {
    let m = Arc::new(BimoduleData::diagonal(arc(&exterior(2, 1))));
    let f = BimoduleMorphism::identity(m);
    assert!(verify_bimodule_morphism(&f, 4).unwrap().ok);
}

#[test]
fn central_multiplication_is_a_morphism() {
    let t = truncated_polynomial(3, 0);
    let a = arc(&t);
    let m = Arc::new(BimoduleData::diagonal(a.clone()));
    let mut f = BimoduleMorphism::new(m.clone(), m.clone(), 0).unwrap();
    let x = a.id_of("x1").unwrap();
    for el in 0..m.dim() {
        if let Some(prod) = t.products.get(&(x, el)) {
            for (o, c) in prod {
                f.add(&[], el, &[], *o, NovikovScalar::constant(c.clone())).unwrap();
            }
        }
    }
    let rep = verify_bimodule_morphism(&f, 4).unwrap();
    assert!(rep.ok, "{:?}", rep.violations.first());
}

#[test]
fn misdeclared_degree_reported() {
    let m = Arc::new(BimoduleData::diagonal(arc(&dual_odd())));
    let f = BimoduleMorphism::identity(m).with_degree(1);
    let rep = verify_bimodule_morphism(&f, 3).unwrap();
    assert!(!rep.ok);
    assert!(rep.violations.iter().any(|v| v.note.is_some()));
}

#[test]
fn identity_functor_passes() {
    let a = arc(&exterior(2, 1));
    assert!(verify_functor(&FunctorData::identity(a), 4).unwrap().ok);
}

fn linear_map_functor(s: &AssociativeTable, t: &AssociativeTable, images: &[Vec<(BasisId, i64)>]) -> FunctorData {
    let mut f = FunctorData::new(arc(s), arc(t), vec![0]).unwrap();
    for (i, img) in images.iter().enumerate() {
        for (o, c) in img {
            f.add(&[i], *o, NovikovScalar::from_int(*c)).unwrap();
        }
    }
    f
}

fn multiplicative(s: &AssociativeTable, t: &AssociativeTable, images: &[Vec<(BasisId, i64)>]) -> bool {
    use crate::novikov::Q;
    use std::collections::BTreeMap;
    let apply = |v: &BTreeMap<BasisId, Q>| {
        let mut out: BTreeMap<BasisId, Q> = BTreeMap::new();
        for (k, c) in v {
            for (o, d) in &images[*k] {
                *out.entry(*o).or_insert_with(|| q(0)) += c * q(*d);
            }
        }
        out.retain(|_, c| *c != q(0));
        out
    };
    let mul = |tab: &AssociativeTable, u: &BTreeMap<BasisId, Q>, v: &BTreeMap<BasisId, Q>| {
        let mut out: BTreeMap<BasisId, Q> = BTreeMap::new();
        for (a, ca) in u {
            for (b, cb) in v {
                if let Some(p) = tab.products.get(&(*a, *b)) {
                    for (o, c) in p {
                        *out.entry(*o).or_insert_with(|| q(0)) += ca * cb * c;
                    }
                }
            }
        }
        out.retain(|_, c| *c != q(0));
        out
    };
    let n = s.generators.len();
    for a in 0..n {
        for b in 0..n {
            let ea = BTreeMap::from([(a, q(1))]);
            let eb = BTreeMap::from([(b, q(1))]);
            if apply(&mul(s, &ea, &eb)) != mul(t, &apply(&ea), &apply(&eb)) {
                return false;
            }
        }
    }
    true
}

#[test]
fn algebra_maps_pass_iff_multiplicative() {
    let dual = truncated_polynomial(2, 0);
    let pair = product(&ground_field(), &ground_field());
    let field = ground_field();
    let cases: Vec<(AssociativeTable, AssociativeTable, Vec<Vec<(BasisId, i64)>>)> = vec![
        (dual.clone(), dual.clone(), vec![vec![(0, 1)], vec![(1, 2)]]),
        (dual.clone(), dual.clone(), vec![vec![(0, 1)], vec![(0, 1), (1, 1)]]),
        (pair.clone(), field.clone(), vec![vec![(0, 1)], vec![]]),
        (pair.clone(), field.clone(), vec![vec![(0, 1)], vec![(0, 1)]]),
        (field.clone(), dual.clone(), vec![vec![(0, 1)]]),
    ];
    for (s, t, images) in cases {
        let f = linear_map_functor(&s, &t, &images);
        let rep = verify_functor(&f, 3).unwrap();
        assert_eq!(rep.ok, multiplicative(&s, &t, &images), "images {images:?}");
    }
}

#[test]
fn garbage_higher_component_detected() {
    let mut f = FunctorData::identity(arc(&dual_odd()));
    f.add(&[1, 0], 0, NovikovScalar::from_int(3)).unwrap();
    assert!(!verify_functor(&f, 3).unwrap().ok);
}

#[test]
fn json_round_trips() {
    let a = arc(&upper_triangular());
    let s = a.to_json_string();
    assert_eq!(AInfStructure::from_json_str(&s).unwrap(), *a);

    let m = BimoduleData::diagonal(a.clone());
    assert_eq!(BimoduleData::from_json_str(&m.to_json_string()).unwrap(), m);

    let l = BimoduleData::yoneda_left(a.clone(), 0);
    assert_eq!(BimoduleData::from_json(&l.to_json()).unwrap(), l);

    let f = BimoduleMorphism::identity(Arc::new(m));
    let j = serde_json::to_string(&f.to_json()).unwrap();
    assert_eq!(BimoduleMorphism::from_json_str(&j).unwrap(), f);

    let phi = FunctorData::identity(a);
    let j = serde_json::to_string(&phi.to_json()).unwrap();
    assert_eq!(FunctorData::from_json_str(&j).unwrap(), phi);
}

#[test]
fn json_rejects_unknown_fields_and_versions() {
    let a = from_associative(&ground_field()).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&a.to_json_string()).unwrap();
    v["extra"] = serde_json::json!(1);
    assert!(matches!(AInfStructure::from_json_str(&v.to_string()), Err(AInfError::Json(_))));
    let mut v: serde_json::Value = serde_json::from_str(&a.to_json_string()).unwrap();
    v["version"] = serde_json::json!(7);
    assert!(matches!(AInfStructure::from_json_str(&v.to_string()), Err(AInfError::MalformedStructure(_))));
}

#[test]
fn json_inputs_are_in_application_order() {
    let a = from_associative(&upper_triangular()).unwrap();
    let j = a.to_json();
    // e12·e22 = e12: x_1 = e22 is applied first.
    let entry = j.mu.iter().find(|m| m.inputs == ["e22", "e12"]).unwrap();
    assert_eq!(entry.output, "e12");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_associative_tables_verify(seed in any::<u64>()) {
        let t = random_small_algebra(&mut ChaCha8Rng::seed_from_u64(seed));
        let a = Arc::new(from_associative(&t).unwrap());
        prop_assert!(verify_ainf(&a, 4).unwrap().ok);
        prop_assert!(verify_bimodule(&BimoduleData::diagonal(a), 4).unwrap().ok);
    }

    #[test]
    fn single_sign_flips_match_associativity_oracle(seed in any::<u64>()) {
        let t = random_small_algebra(&mut ChaCha8Rng::seed_from_u64(seed));
        let a = from_associative(&t).unwrap();
        for (inputs, out, c) in a.entries() {
            let mut b = a.to_builder();
            b.set_mu(&inputs, out, c.neg_ref());
            let mutated = b.build().unwrap();
            let mut tm = t.clone();
            let (x, y) = (inputs[0], inputs[1]);
            let flipped: Vec<_> = tm.products[&(x, y)].iter().map(|(o, v)| (*o, if *o == out { -v.clone() } else { v.clone() })).collect();
            tm.set(x, y, flipped);
            let oracle_ok = tm.check_associative().is_ok();
            let ok = verify_ainf(&mutated, 3).unwrap().ok;
            prop_assert_eq!(ok, oracle_ok);
        }
    }
}
