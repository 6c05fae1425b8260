use std::collections::BTreeMap;

use num_complex::Complex64;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::{c1_operator, LambdaPoly, QhError, QuantumPresentation, SpectrumDescriptor, SpectrumFactor};
use crate::linalg::{complex_roots, Matrix, QPoly, RatFunc, UPoly};
use crate::novikov::{q, q_frac, Exponent, NovikovScalar, Q};
use crate::toric_lg::{CriticalPoint, CriticalValue, Family, JacobianData};

/// Outcome of comparing `SH*` with the Jacobian ring and the critical values of `W`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub sh_rank: usize,
    pub jacobian_rank: usize,
    pub rank_match: bool,
    /// Minimal polynomial of `c1` on `SH*`, in `λ`.
    pub c1_min_poly: String,
    /// The same after `λ = (1+m−k)w`, made monic.
    pub min_poly_in_w: String,
    /// `w^{1+m−k} − (−k)^k t^k`.
    pub expected_relation: String,
    /// `Π (w − z_1)` over the critical points, when all of them are exact.
    pub critical_coordinate_poly: Option<String>,
    pub min_poly_match: bool,
    /// Characteristic polynomial of `c1` on `SH*`.
    pub sh_char_poly: String,
    /// `Π (λ − W(z))` over the critical points, when all values are exact.
    pub critical_value_poly: Option<String>,
    pub spectrum_match: bool,
}

/// A failed comparison: the full report and the checks that failed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MismatchReport {
    pub report: ComparisonReport,
    pub failures: Vec<String>,
}

/// Groups `(defining polynomial, exponent)` pairs into full Galois orbits and returns
/// `Π (x − c·t^r)` over all of them; `None` if some orbit is incomplete.
fn orbit_polynomial<'a>(items: impl IntoIterator<Item = (&'a QPoly, Exponent)>) -> Option<LambdaPoly> {
    let mut groups: BTreeMap<(String, Exponent), (QPoly, usize)> = BTreeMap::new();
    for (f, r) in items {
        groups.entry((f.display_in("x"), r)).or_insert_with(|| (f.clone(), 0)).1 += 1;
    }
    let mut acc = LambdaPoly::new(vec![NovikovScalar::one()]);
    for ((_, r), (f, count)) in groups {
        let d = f.degree().unwrap_or(0);
        if d == 0 || count % d != 0 {
            return None;
        }
        let piece = LambdaPoly::from_scaled_roots(&f, r);
        for _ in 0..count / d {
            acc = acc.mul(&piece);
        }
    }
    Some(acc)
}

/// `Π (λ − W(z))` over the given values; `None` unless every value is exact, a single
/// monomial (or zero), and the values form full orbits.
pub fn critical_value_polynomial(values: &[CriticalValue]) -> Option<LambdaPoly> {
    let mut zeros = 0;
    let mut items = Vec::new();
    for v in values {
        if !v.exact {
            return None;
        }
        match v.terms.as_slice() {
            [] => zeros += 1,
            [c] => items.push((&c.coefficient.min_poly, c.exponent)),
            _ => return None,
        }
    }
    let mut p = orbit_polynomial(items)?;
    for _ in 0..zeros {
        p = p.mul(&LambdaPoly::new(vec![NovikovScalar::zero(), NovikovScalar::one()]));
    }
    Some(p)
}

/// `Π (w − z_1)` over exact critical points.
fn coordinate_polynomial(points: &[CriticalPoint]) -> Option<LambdaPoly> {
    let items: Option<Vec<_>> = points.iter().map(|p| p.coordinates.first().filter(|_| p.is_exact()).map(|c| (&c.coefficient.min_poly, c.exponent))).collect();
    orbit_polynomial(items?)
}

/// Minimal polynomial of `a` acting on a cyclic module generated by `e_0`.
fn cyclic_min_poly(a: &Matrix<RatFunc>) -> UPoly<RatFunc> {
    let n = a.rows();
    let mut vs: Vec<Vec<RatFunc>> = vec![(0..n).map(|i| if i == 0 { RatFunc::one() } else { RatFunc::zero() }).collect()];
    loop {
        let next = a.apply(vs.last().expect("nonempty"));
        let m = Matrix::from_rows((0..n).map(|i| vs.iter().map(|v| v[i].clone()).collect()).collect());
        if let Some(x) = m.solve(&next) {
            let mut c: Vec<RatFunc> = x.iter().map(|v| v.neg()).collect();
            c.push(RatFunc::one());
            return UPoly::new(c);
        }
        vs.push(next);
    }
}

/// Checks `SH*(E) ≅ Jac(W_E)` through ranks, the minimal polynomial of `c1`, and the
/// critical values as a polynomial identity.
pub fn jacobian_comparison(
    sh: &QuantumPresentation,
    jac: &JacobianData,
    points: &[CriticalPoint],
    values: &[CriticalValue],
) -> Result<ComparisonReport, QhError> {
    let Family::NegativeLineBundle { m, k } = sh.family else { return Err(QhError::NotABundleFamily) };
    let d = 1 + m - k;
    let op = c1_operator(sh);
    let lat = op.lattice.max(1);
    let var = sh.novikov_variable.as_str();
    let mu = LambdaPoly::from_upoly(&cyclic_min_poly(op.matrix()), lat).ok_or_else(|| QhError::InvalidPresentation("minimal polynomial is not Laurent".into()))?;
    let in_w = mu.substitute_scaled(&q(d as i64)).monic().ok_or_else(|| QhError::InvalidPresentation("minimal polynomial is not monic".into()))?;
    let expected = LambdaPoly::binomial(d, NovikovScalar::monomial(num_traits::pow(q(-(k as i64)), k), Exponent::from_integer(k as i64)));
    let coord = coordinate_polynomial(points);
    let chi = LambdaPoly::from_upoly(&crate::linalg::char_poly(op.matrix()), lat).expect("Laurent characteristic polynomial");
    let vpoly = critical_value_polynomial(values);
    let report = ComparisonReport {
        sh_rank: sh.rank(),
        jacobian_rank: jac.rank,
        rank_match: sh.rank() == jac.rank && jac.consistent,
        c1_min_poly: mu.display_in("λ", var),
        min_poly_in_w: in_w.display_in("w", var),
        expected_relation: expected.display_in("w", var),
        critical_coordinate_poly: coord.as_ref().map(|p| p.display_in("w", var)),
        min_poly_match: in_w == expected && coord.as_ref().is_none_or(|c| *c == expected),
        sh_char_poly: chi.display_in("λ", var),
        critical_value_poly: vpoly.as_ref().map(|p| p.display_in("λ", var)),
        spectrum_match: vpoly.as_ref() == Some(&chi),
    };
    let mut failures = Vec::new();
    if !report.rank_match {
        failures.push(format!("rank: SH {} vs Jacobian {}", report.sh_rank, report.jacobian_rank));
    }
    if !report.min_poly_match {
        failures.push(format!("minimal polynomial: {} vs {}", report.min_poly_in_w, report.expected_relation));
    }
    if !report.spectrum_match {
        failures.push(format!("spectrum: {} vs {}", report.sh_char_poly, report.critical_value_poly.as_deref().unwrap_or("unavailable")));
    }
    if failures.is_empty() {
        Ok(report)
    } else {
        Err(QhError::Mismatch(Box::new(MismatchReport { report, failures })))
    }
}

pub const SPLIT_GENERATED: &str = "split-generated";
pub const INCONCLUSIVE: &str = "inconclusive";

/// Verdict for one eigenvalue.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenerationEntry {
    pub eigenvalue_factor: String,
    /// The root of the factor this entry describes, numerically at `t = t_eval`.
    pub eigenvalue_approx: [f64; 2],
    pub summand_dim: usize,
    pub matched_crit_point: Option<usize>,
    pub verdict: String,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenerationReport {
    pub t_eval: f64,
    pub entries: Vec<GenerationEntry>,
}

fn value_at(v: &CriticalValue, t: f64) -> Option<Complex64> {
    v.exact.then(|| v.terms.iter().map(|c| c.coefficient.value() * t.powf(c.exponent.to_f64().unwrap_or(f64::NAN))).sum())
}

/// The factor at `s = s0`, if it stays square-free of the same degree.
fn specialize(f: &SpectrumFactor, lattice: u32, s0: &Q) -> Option<QPoly> {
    let u = f.factor.to_upoly(lattice);
    let coeffs: Option<Vec<Q>> = u.coeffs().iter().map(|c| c.eval(s0)).collect();
    let p = QPoly::new(coeffs?);
    (p.degree() == f.factor.degree() && p.gcd(&p.derivative()).degree() == Some(0)).then_some(p)
}

/// Applies the eigensummand criterion to every eigenvalue.
///
/// A nonzero root `λ` of a factor `p` is split-generated when its generalized eigensummand is
/// one-dimensional and `p` divides `Π (λ − W(z))`, so that every root of `p` is a critical
/// value. Roots are paired with critical points numerically only to label the match.
pub fn generation_report(spectrum: &SpectrumDescriptor, values: &[CriticalValue]) -> GenerationReport {
    let lat = spectrum.lattice.max(1);
    let exact_poly = {
        let exact: Vec<CriticalValue> = values.iter().filter(|v| v.exact).cloned().collect();
        critical_value_polynomial(&exact)
    };
    let candidates: Vec<Q> = [(1, 1), (2, 1), (3, 1), (1, 2), (5, 1), (7, 3)].iter().map(|&(a, b)| q_frac(a, b)).collect();
    let s0 = candidates.iter().find(|s| spectrum.factors.iter().filter(|f| !f.zero).all(|f| specialize(f, lat, s).is_some())).cloned().unwrap_or_else(Q::one);
    let t_eval = s0.to_f64().unwrap_or(1.0).powi(lat as i32);
    let approx: Vec<Option<Complex64>> = values.iter().map(|v| value_at(v, t_eval)).collect();
    let mut taken = vec![false; values.len()];
    let mut entries = Vec::new();
    for f in &spectrum.factors {
        let dim = f.per_root_dim();
        if f.zero {
            let zero_point = values.iter().position(|v| v.is_zero);
            entries.push(GenerationEntry {
                eigenvalue_factor: f.text.clone(),
                eigenvalue_approx: [0.0, 0.0],
                summand_dim: f.summand_dim,
                matched_crit_point: zero_point.map(|i| values[i].point),
                verdict: INCONCLUSIVE.into(),
                note: "zero eigenvalue: the criterion needs a nonzero critical value".into(),
            });
            continue;
        }
        let roots = specialize(f, lat, &s0).map(|p| complex_roots(&p)).unwrap_or_default();
        let divides = exact_poly.as_ref().is_some_and(|v| {
            let n = lat * v.lattice().max(1);
            f.factor.to_upoly(n).divides(&v.to_upoly(n))
        });
        let mut block = Vec::new();
        for (idx, root) in roots.iter().enumerate() {
            let (matched, verdict, note) = if dim != 1 {
                (None, INCONCLUSIVE, format!("generalized eigensummand of dimension {dim}"))
            } else if !divides {
                (None, INCONCLUSIVE, "no critical point at λ".to_string())
            } else {
                let tol = 1e-6 * root.norm().max(1.0);
                let best = approx
                    .iter()
                    .enumerate()
                    .filter(|(i, a)| !taken[*i] && !values[*i].is_zero && a.is_some())
                    .map(|(i, a)| (i, (a.expect("filtered") - root).norm()))
                    .filter(|(_, dist)| *dist < tol)
                    .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(std::cmp::Ordering::Equal));
                match best {
                    Some((i, _)) => {
                        taken[i] = true;
                        (Some(values[i].point), SPLIT_GENERATED, format!("split-generated by L_z for critical point {}", values[i].point))
                    }
                    None => (None, SPLIT_GENERATED, "matched exactly; numerical label unavailable".to_string()),
                }
            };
            block.push((
                idx,
                GenerationEntry {
                    eigenvalue_factor: f.text.clone(),
                    eigenvalue_approx: [root.re, root.im],
                    summand_dim: dim,
                    matched_crit_point: matched,
                    verdict: verdict.into(),
                    note,
                },
            ));
        }
        block.sort_by_key(|(idx, e)| (e.matched_crit_point.is_none(), e.matched_crit_point, *idx));
        entries.extend(block.into_iter().map(|(_, e)| e));
    }
    GenerationReport { t_eval, entries }
}

/// Multiplies every critical value by the rational unit `u`.
pub fn rescale_critical_values(values: &[CriticalValue], u: &Q) -> Vec<CriticalValue> {
    let uf = u.to_f64().unwrap_or(f64::NAN);
    values
        .iter()
        .map(|v| {
            let mut v = v.clone();
            for c in v.terms.iter_mut() {
                let p = UPoly::new(c.coefficient.min_poly.coeffs().to_vec()).scale_roots(u);
                c.coefficient.min_poly = QPoly::new(p.coeffs().to_vec());
                c.coefficient.approx = [c.coefficient.approx[0] * uf, c.coefficient.approx[1] * uf];
            }
            v.approx = [v.approx[0] * uf, v.approx[1] * uf];
            v.text = if v.terms.is_empty() {
                v.text
            } else {
                v.terms.iter().map(|c| format!("[{}]*t^({})", c.coefficient.min_poly.display_in("x"), c.exponent)).collect::<Vec<_>>().join(" + ")
            };
            v
        })
        .collect()
}
