use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{char_poly, Matrix, QPoly};
use crate::novikov::Q;

/// A complex algebraic number: a defining polynomial over `ℚ` and a numerical value
/// selecting one of its roots.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgebraicNumber {
    /// Monic defining polynomial, printed in `x`.
    #[serde(with = "qpoly_text")]
    pub min_poly: QPoly,
    /// `[re, im]`.
    pub approx: [f64; 2],
}

impl AlgebraicNumber {
    pub fn rational(c: &Q) -> Self {
        AlgebraicNumber { min_poly: QPoly::new(vec![-c.clone(), Q::one()]), approx: [c.to_f64().unwrap_or(f64::NAN), 0.0] }
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.approx[0], self.approx[1])
    }
}

/// `a·b mod f`.
pub fn mul_mod(a: &QPoly, b: &QPoly, f: &QPoly) -> QPoly {
    a.mul(b).div_rem(f).1
}

/// Inverse of `a` modulo `f`, if `gcd(a, f) = 1`.
pub fn inv_mod(a: &QPoly, f: &QPoly) -> Option<QPoly> {
    // extended Euclid tracking the cofactor of `a`
    let (mut r0, mut r1) = (f.clone(), a.div_rem(f).1);
    let (mut s0, mut s1) = (QPoly::zero(), QPoly::one());
    while !r1.is_zero() {
        let (quot, rem) = r0.div_rem(&r1);
        let s2 = s0.sub(&quot.mul(&s1));
        r0 = std::mem::replace(&mut r1, rem);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if r0.degree() != Some(0) {
        return None;
    }
    let c = Q::one() / r0.leading();
    Some(s0.scale(&c).div_rem(f).1)
}

/// `a^n mod f` for any integer `n`; negative powers need `a` invertible.
pub fn pow_mod(a: &QPoly, n: i64, f: &QPoly) -> Option<QPoly> {
    let base = if n < 0 { inv_mod(a, f)? } else { a.div_rem(f).1 };
    let mut acc = QPoly::one().div_rem(f).1;
    for _ in 0..n.unsigned_abs() {
        acc = mul_mod(&acc, &base, f);
    }
    Some(acc)
}

/// Characteristic polynomial of multiplication by `a` on `ℚ[θ]/(f)`.
///
/// Its roots are the values `a(θ_i)` over the roots `θ_i` of `f`, with multiplicity.
pub fn mult_char_poly(a: &QPoly, f: &QPoly) -> QPoly {
    let d = f.degree().unwrap_or(0);
    let mut m = Matrix::<Q>::zeros(d, d);
    for j in 0..d {
        let col = mul_mod(a, &QPoly::monomial(Q::one(), j), f);
        for i in 0..d {
            m.set(i, j, col.coeff(i));
        }
    }
    QPoly::new(char_poly(&m).coeffs().to_vec())
}

/// All complex roots of `p` with multiplicity, in a canonical order (by argument in
/// `(-π, π]`, then modulus). Exact zero roots are split off first.
pub fn complex_roots(p: &QPoly) -> Vec<Complex64> {
    let Some(deg) = p.degree() else { return Vec::new() };
    let low = p.low_degree().unwrap_or(0);
    let mut roots = vec![Complex64::zero(); low];
    let reduced = p.unshift(low);
    let coeffs: Vec<Complex64> = reduced.coeffs().iter().map(|c| Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0)).collect();
    if deg > low {
        roots.extend(aberth(&coeffs));
    }
    sort_canonical(&mut roots);
    roots
}

pub(crate) fn sort_canonical(roots: &mut [Complex64]) {
    let key = |z: &Complex64| {
        let arg = if z.norm() < 1e-300 { 0.0 } else { z.arg() };
        // arguments within 1e-9 of each other (and of ±π) are treated as equal
        let arg = if arg <= -std::f64::consts::PI + 1e-9 { std::f64::consts::PI } else { arg };
        ((arg * 1e9).round(), z.norm())
    };
    roots.sort_by(|a, b| key(a).partial_cmp(&key(b)).unwrap_or(std::cmp::Ordering::Equal));
}

fn eval_with_derivative(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    for a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// Aberth–Ehrlich simultaneous iteration followed by Newton polishing.
fn aberth(coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let lead = coeffs[n];
    let c: Vec<Complex64> = coeffs.iter().map(|a| a / lead).collect();
    let radius = 1.0 + c[..n].iter().map(|a| a.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius * 0.5, 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4))
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (p, dp) = eval_with_derivative(&c, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let sum: Complex64 = (0..n).filter(|&j| j != i).map(|j| Complex64::one() / (z[i] - z[j])).sum();
            let step = ratio / (Complex64::one() - ratio * sum);
            if step.is_finite() {
                z[i] -= step;
                moved = moved.max(step.norm() / z[i].norm().max(1.0));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = eval_with_derivative(&c, *zi);
            if dp.norm() == 0.0 {
                break;
            }
            let next = *zi - p / dp;
            if next.is_finite() {
                *zi = next;
            }
        }
    }
    z
}

/// Serde adapter storing a [`QPoly`] as its text in `x`.
pub mod qpoly_text {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::linalg::QPoly;

    pub fn serialize<S: Serializer>(p: &QPoly, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&p.display_in("x"))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<QPoly, D::Error> {
        super::parse_qpoly(&String::deserialize(d)?, "x").map_err(serde::de::Error::custom)
    }

    pub mod vec {
        use super::*;

        pub fn serialize<S: Serializer>(ps: &[QPoly], s: S) -> Result<S::Ok, S::Error> {
            s.collect_seq(ps.iter().map(|p| p.display_in("x")))
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<QPoly>, D::Error> {
            Vec::<String>::deserialize(d)?.iter().map(|s| super::super::parse_qpoly(s, "x").map_err(serde::de::Error::custom)).collect()
        }
    }
}

/// Parses the output of [`QPoly::display_in`].
pub fn parse_qpoly(s: &str, var: &str) -> Result<QPoly, String> {
    use std::str::FromStr;
    let s = s.trim();
    if s == "0" {
        return Ok(QPoly::zero());
    }
    let mut coeffs: Vec<Q> = Vec::new();
    for part in s.split(" + ") {
        let (c, k) = if let Some((c, rest)) = part.split_once('*') {
            let k = if rest == var {
                1
            } else {
                rest.strip_prefix(var)
                    .and_then(|r| r.strip_prefix('^'))
                    .and_then(|r| r.parse::<usize>().ok())
                    .ok_or_else(|| format!("bad monomial `{part}`"))?
            };
            (c, k)
        } else {
            (part, 0)
        };
        let c = Q::from_str(c.trim()).map_err(|_| format!("bad coefficient `{c}`"))?;
        if coeffs.len() <= k {
            coeffs.resize(k + 1, Q::zero());
        }
        coeffs[k] += c;
    }
    Ok(QPoly::new(coeffs))
}
