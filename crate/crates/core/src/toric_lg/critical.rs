use std::collections::BTreeMap;

use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::polytope::Family;
use super::potential::{monomial_value, Superpotential};
use super::ToricError;
use crate::linalg::{complex_roots, mul_mod, mult_char_poly, pow_mod, qpoly_text, AlgebraicNumber, QPoly};
use crate::novikov::{q, qserde, Exponent, Q};

/// Residual certification threshold of the numerical branch.
pub const RESIDUAL_TOLERANCE: f64 = 1e-12;
/// Two numerical roots closer than this (relative sup-norm) are the same root.
pub const DEDUP_RADIUS: f64 = 1e-6;

/// `c·t^r` with `c` algebraic.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Coordinate {
    #[serde(flatten)]
    pub coefficient: AlgebraicNumber,
    #[serde(with = "qserde::exponent")]
    pub exponent: Exponent,
}

/// A closed-form point `z_j = p_j(θ)·t^{r_j}` where `θ` is a root of `generator`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExactPoint {
    #[serde(with = "qpoly_text")]
    pub generator: QPoly,
    /// Index of `θ` among the roots of `generator` in canonical order.
    pub root: usize,
    #[serde(with = "qpoly_text::vec")]
    pub coords: Vec<QPoly>,
    #[serde(with = "qserde::exponent::vec")]
    pub exponents: Vec<Exponent>,
}

/// A numerical root of the system specialized at `t`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NumericPoint {
    #[serde(with = "qserde")]
    pub t: Q,
    pub z: Vec<[f64; 2]>,
    pub residual: f64,
    /// `log|z_j| / log t`, when `t` is small enough for this to estimate `val_t`.
    pub valuation_estimate: Option<Vec<f64>>,
}

/// A point of `(Λ^*)^n`, exact or numerical.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriticalPoint {
    pub coordinates: Vec<Coordinate>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub exact: Option<ExactPoint>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub numeric: Option<NumericPoint>,
}

impl CriticalPoint {
    /// Builds a closed-form point; `coordinates` are derived from the data.
    pub fn exact(generator: QPoly, root: usize, coords: Vec<QPoly>, exponents: Vec<Exponent>) -> Result<Self, ToricError> {
        let roots = complex_roots(&generator);
        let theta = *roots.get(root).ok_or_else(|| ToricError::BadPoint(format!("root index {root} out of range")))?;
        if coords.len() != exponents.len() {
            return Err(ToricError::BadPoint("coordinate and exponent counts differ".into()));
        }
        let coordinates = coords
            .iter()
            .zip(&exponents)
            .map(|(p, r)| {
                Coordinate { coefficient: AlgebraicNumber { min_poly: mult_char_poly(p, &generator), approx: clean(p.eval_complex(theta)) }, exponent: *r }
            })
            .collect();
        Ok(CriticalPoint { coordinates, exact: Some(ExactPoint { generator, root, coords, exponents }), numeric: None })
    }

    /// A numerical sample point at `t`; the residual is filled in against `w`.
    pub fn numeric(w: &Superpotential, t: &Q, z: Vec<Complex64>) -> Self {
        let tf = t.to_f64().unwrap_or(f64::NAN);
        let residual = relative_residual(w, &z, tf);
        let valuation_estimate = valuation_estimate(&z, tf);
        let coordinates = z
            .iter()
            .map(|v| Coordinate { coefficient: AlgebraicNumber { min_poly: QPoly::zero(), approx: clean(*v) }, exponent: Exponent::zero() })
            .collect();
        let numeric = NumericPoint { t: t.clone(), z: z.iter().map(|v| clean(*v)).collect(), residual, valuation_estimate };
        CriticalPoint { coordinates, exact: None, numeric: Some(numeric) }
    }

    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }
}

/// Result of [`critical_points`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriticalSet {
    pub points: Vec<CriticalPoint>,
    /// `"closed-form"` or `"numerical"`.
    pub branch: String,
    /// Critical points discarded by the interior-of-Δ valuation condition.
    pub filtered_out: usize,
    /// Numerical branch: starts that neither converged nor left the torus; the branch fails
    /// only when every start ends this way.
    pub unconverged_starts: usize,
    pub starts: usize,
    /// Numerical branch: whether valuations could be estimated and filtered.
    pub valuation_filter_applied: bool,
}

/// Options of the numerical branch.
#[derive(Clone, Debug)]
pub struct NumericOptions {
    /// Value of `t`; must be positive.
    pub t: Q,
    pub seed: u64,
    pub starts: usize,
    pub max_iterations: usize,
}

impl NumericOptions {
    pub fn new(t: Q, seed: u64) -> Self {
        NumericOptions { t, seed, starts: 0, max_iterations: 100 }
    }
}

/// Critical points inside the positivity region.
///
/// Potentials of a shipped family use the exact closed form; anything else needs
/// `numeric` and goes through seeded multistart Newton iteration.
pub fn critical_points(w: &Superpotential, numeric: Option<&NumericOptions>) -> Result<CriticalSet, ToricError> {
    match (w.family(), numeric) {
        (Some(f), _) => Ok(closed_form(w, f)),
        (None, Some(opts)) => numerical_critical_points(w, opts),
        (None, None) => Err(ToricError::NeedsSpecialization),
    }
}

/// The closed-form critical points of a shipped family.
fn closed_form(w: &Superpotential, family: Family) -> CriticalSet {
    let (generator, coords, r) = match family {
        Family::Projective { m } => {
            // z_j = θ t^{1/(1+m)}, θ^{1+m} = 1
            let mut g = vec![Q::zero(); m + 2];
            g[0] = q(-1);
            g[m + 1] = Q::one();
            (QPoly::new(g), vec![QPoly::x(); m], Exponent::new(1, 1 + m as i64))
        }
        Family::NegativeLineBundle { m, k } => {
            // z = (w, …, w, −k w), w = θ t^{k/d}, θ^d = (−k)^k, d = 1 + m − k
            let d = 1 + m - k;
            let mut g = vec![Q::zero(); d + 1];
            g[0] = -num_traits::pow(q(-(k as i64)), k);
            g[d] = Q::one();
            let mut coords = vec![QPoly::x(); m];
            coords.push(QPoly::monomial(q(-(k as i64)), 1));
            (QPoly::new(g), coords, Exponent::new(k as i64, d as i64))
        }
    };
    let n = coords.len();
    let inside = w.polytope().contains_strictly(&vec![Q::new((*r.numer()).into(), (*r.denom()).into()); n]);
    let count = generator.degree().unwrap_or(0);
    let points = if inside {
        (0..count).map(|i| CriticalPoint::exact(generator.clone(), i, coords.clone(), vec![r; n]).expect("valid closed form")).collect()
    } else {
        Vec::new()
    };
    CriticalSet {
        filtered_out: if inside { 0 } else { count },
        points,
        branch: "closed-form".into(),
        unconverged_starts: 0,
        starts: 0,
        valuation_filter_applied: true,
    }
}

/// `Σ_e c_e(θ)·t^e`, each `c_e` reduced modulo the generator.
fn substitute(terms: &[super::potential::Term], p: &ExactPoint) -> Option<BTreeMap<Exponent, QPoly>> {
    let mut out: BTreeMap<Exponent, QPoly> = BTreeMap::new();
    for term in terms {
        let mut c = QPoly::one();
        let mut shift = Exponent::zero();
        for ((&e, pj), rj) in term.exponent.iter().zip(&p.coords).zip(&p.exponents) {
            c = mul_mod(&c, &pow_mod(pj, e, &p.generator)?, &p.generator);
            shift += rj * Exponent::from_integer(e);
        }
        for (a, coeff) in term.coeff.terms() {
            let entry = out.entry(*a + shift).or_insert_with(QPoly::zero);
            *entry = entry.add(&c.scale(coeff));
        }
    }
    out.retain(|_, v| !v.is_zero());
    Some(out)
}

/// Whether every `z_i ∂W/∂z_i` vanishes identically at the closed-form point.
pub fn exact_residual_vanishes(w: &Superpotential, p: &ExactPoint) -> bool {
    (0..w.nvars()).all(|i| substitute(&w.log_derivative(i), p).is_some_and(|m| m.is_empty()))
}

fn relative_residual(w: &Superpotential, z: &[Complex64], t: f64) -> f64 {
    let g = w.log_gradient_complex(z, t);
    // relative to the largest term, so that the test is invariant under rescaling
    let scale = w.terms().iter().map(|term| (monomial_value(&term.exponent, z) * term.coeff.eval_f64(t)).norm()).fold(0.0, f64::max);
    let top = g.iter().map(|v| v.norm()).fold(0.0, f64::max);
    if scale > 0.0 {
        top / scale
    } else {
        f64::INFINITY
    }
}

fn valuation_estimate(z: &[Complex64], t: f64) -> Option<Vec<f64>> {
    (t.ln() <= -2.0).then(|| z.iter().map(|v| v.norm().ln() / t.ln()).collect())
}

fn solve_complex(mut a: Vec<Vec<Complex64>>, mut b: Vec<Complex64>) -> Option<Vec<Complex64>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].norm().total_cmp(&a[j][col].norm()))?;
        if a[piv][col].norm() < 1e-300 {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            for k in col..n {
                let v = a[col][k];
                a[row][k] -= f * v;
            }
            let v = b[col];
            b[row] -= f * v;
        }
    }
    let mut x = vec![Complex64::zero(); n];
    for row in (0..n).rev() {
        let s: Complex64 = (row + 1..n).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    x.iter().all(|v| v.is_finite()).then_some(x)
}

enum Outcome {
    Converged(Vec<Complex64>),
    LeftTorus,
    Stalled,
}

fn abs_residual(w: &Superpotential, z: &[Complex64], t: f64) -> f64 {
    w.log_gradient_complex(z, t).iter().map(|v| v.norm()).fold(0.0, f64::max)
}

/// Damped Newton on the absolute residual; certification uses the relative one.
fn newton(w: &Superpotential, mut z: Vec<Complex64>, t: f64, max_iter: usize) -> Outcome {
    let out_of_torus = |z: &[Complex64]| z.iter().any(|v| !v.is_finite() || v.norm() < 1e-150 || v.norm() > 1e150);
    let mut res = abs_residual(w, &z, t);
    for _ in 0..max_iter {
        if relative_residual(w, &z, t) <= RESIDUAL_TOLERANCE {
            return Outcome::Converged(z);
        }
        let g = w.log_gradient_complex(&z, t);
        let h = w.log_hessian_complex(&z, t);
        let Some(step) = solve_complex(h, g.iter().map(|v| -v).collect()) else { return Outcome::Stalled };
        let mut lambda = 1.0;
        loop {
            let trial: Vec<Complex64> = z.iter().zip(&step).map(|(a, d)| a + d * lambda).collect();
            if out_of_torus(&trial) {
                return Outcome::LeftTorus;
            }
            let r = abs_residual(w, &trial, t);
            if r < res || lambda < 1e-3 {
                z = trial;
                res = r;
                break;
            }
            lambda *= 0.5;
        }
    }
    if relative_residual(w, &z, t) <= RESIDUAL_TOLERANCE {
        Outcome::Converged(z)
    } else {
        Outcome::Stalled
    }
}

/// Seeded multistart Newton iteration on `z_i ∂W/∂z_i = 0` at a positive rational `t`.
pub fn numerical_critical_points(w: &Superpotential, opts: &NumericOptions) -> Result<CriticalSet, ToricError> {
    let tf = opts.t.to_f64().filter(|v| *v > 0.0 && v.is_finite()).ok_or_else(|| ToricError::BadSpecialization("t must be a positive rational".into()))?;
    let n = w.nvars();
    let starts = if opts.starts == 0 { 60 * n.max(1) } else { opts.starts };
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let log_t = tf.ln();
    let mut roots: Vec<Vec<Complex64>> = Vec::new();
    let mut unconverged = 0;
    for _ in 0..starts {
        let z0: Vec<Complex64> = (0..n)
            .map(|_| {
                let y: f64 = rng.gen_range(-1.0..2.0);
                let jitter: f64 = rng.gen_range(-1.5..1.5);
                let phase: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
                Complex64::from_polar((log_t * y + jitter).exp(), phase)
            })
            .collect();
        match newton(w, z0, tf, opts.max_iterations) {
            Outcome::Converged(z) => {
                let scale = z.iter().map(|v| v.norm()).fold(1.0, f64::max);
                if !roots.iter().any(|r| r.iter().zip(&z).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max) / scale < DEDUP_RADIUS) {
                    roots.push(z);
                }
            }
            Outcome::LeftTorus => {}
            Outcome::Stalled => unconverged += 1,
        }
    }
    if unconverged == starts {
        return Err(ToricError::NumericalNonconvergence { unconverged, starts });
    }
    let filter = valuation_estimate(&[Complex64::one()], tf).is_some();
    let mut points: Vec<CriticalPoint> = roots.into_iter().map(|z| CriticalPoint::numeric(w, &opts.t, z)).collect();
    let before = points.len();
    if filter {
        points.retain(|p| {
            let est = p.numeric.as_ref().and_then(|x| x.valuation_estimate.clone()).expect("estimated");
            w.polytope().contains_strictly_f64(&est, 0.0)
        });
    }
    points.sort_by(|a, b| {
        let key = |p: &CriticalPoint| p.numeric.as_ref().map(|x| x.z.iter().flat_map(|c| [c[0], c[1]]).collect::<Vec<f64>>()).unwrap_or_default();
        let (ka, kb) = (key(a), key(b));
        ka.iter().zip(&kb).map(|(x, y)| round9(*x).total_cmp(&round9(*y))).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(CriticalSet {
        filtered_out: before - points.len(),
        points,
        branch: "numerical".into(),
        unconverged_starts: unconverged,
        starts,
        valuation_filter_applied: filter,
    })
}

/// `[re, im]` with components below `1e-14·|v|` set to zero.
fn clean(v: Complex64) -> [f64; 2] {
    let tiny = 1e-14 * v.norm();
    let f = |x: f64| if x.abs() <= tiny { 0.0 } else { x };
    [f(v.re), f(v.im)]
}

fn round9(x: f64) -> f64 {
    (x * 1e9).round() / 1e9
}

/// `W` at a critical point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriticalValue {
    pub point: usize,
    /// Exact value `Σ c_i t^{r_i}`; empty for zero or for numerical points.
    pub terms: Vec<Coordinate>,
    /// Numerical value (at the point's `t` for numerical points, at `t = 1` otherwise).
    pub approx: [f64; 2],
    pub text: String,
    pub exact: bool,
    pub is_zero: bool,
    /// The value is `m0(L_z)` of the torus with valuation `val_t(z)` and holonomy `t^{-val} z`.
    pub m0_interpretation: String,
}

/// Values of `W` at the given points, exact on closed-form points.
pub fn critical_values(w: &Superpotential, points: &[CriticalPoint]) -> Vec<CriticalValue> {
    points
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let m0_interpretation = format!("m0(L_z) for point {i}");
            if let Some(e) = &p.exact {
                let theta = complex_roots(&e.generator)[e.root];
                let value = substitute(w.terms(), e).unwrap_or_default();
                let terms: Vec<Coordinate> = value
                    .iter()
                    .map(|(r, c)| {
                        Coordinate { coefficient: AlgebraicNumber { min_poly: mult_char_poly(c, &e.generator), approx: clean(c.eval_complex(theta)) }, exponent: *r }
                    })
                    .collect();
                let approx = terms.iter().fold(Complex64::zero(), |acc, c| acc + c.coefficient.value());
                let text = if terms.is_empty() {
                    "0".to_string()
                } else {
                    terms.iter().map(|c| format!("[{}]*t^({})", c.coefficient.min_poly.display_in("x"), c.exponent)).collect::<Vec<_>>().join(" + ")
                };
                CriticalValue { point: i, is_zero: terms.is_empty(), terms, approx: clean(approx), text, exact: true, m0_interpretation }
            } else {
                let num = p.numeric.as_ref().expect("point is exact or numeric");
                let z: Vec<Complex64> = num.z.iter().map(|c| Complex64::new(c[0], c[1])).collect();
                let v = w.eval_complex(&z, num.t.to_f64().unwrap_or(f64::NAN));
                CriticalValue {
                    point: i,
                    terms: Vec::new(),
                    approx: clean(v),
                    text: format!("{:.12e}{:+.12e}i", v.re, v.im),
                    exact: false,
                    is_zero: v.norm() < RESIDUAL_TOLERANCE,
                    m0_interpretation,
                }
            }
        })
        .collect()
}

/// Floer-theoretic flags of one torus `L_z`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NondisplaceabilityFlag {
    pub point: usize,
    pub critical: bool,
    /// `HF(L_z, L_z) ≠ 0`.
    pub hf_nonvanishing: bool,
    /// Not displaceable by a Hamiltonian isotopy.
    pub nondisplaceable: bool,
}

/// `HF(L_z, L_z) ≠ 0` exactly when `z` is critical; such tori are nondisplaceable.
pub fn nondisplaceability_report(w: &Superpotential, points: &[CriticalPoint]) -> Vec<NondisplaceabilityFlag> {
    points
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let critical = match (&p.exact, &p.numeric) {
                (Some(e), _) => exact_residual_vanishes(w, e),
                (None, Some(n)) => {
                    let z: Vec<Complex64> = n.z.iter().map(|c| Complex64::new(c[0], c[1])).collect();
                    relative_residual(w, &z, n.t.to_f64().unwrap_or(f64::NAN)) <= RESIDUAL_TOLERANCE
                }
                (None, None) => false,
            };
            NondisplaceabilityFlag { point: i, critical, hf_nonvanishing: critical, nondisplaceable: critical }
        })
        .collect()
}
