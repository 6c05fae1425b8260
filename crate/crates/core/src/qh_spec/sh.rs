use serde::{Deserialize, Serialize};

use super::{C1Operator, LambdaPoly, QhError, QuantumPresentation, Ring};
use crate::linalg::{Matrix, RatFunc, UPoly};
use crate::novikov::NovikovScalar;
use crate::toric_lg::Family;

/// `QH*/ker r^n` together with the data of the computation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShQuotient {
    pub presentation: QuantumPresentation,
    /// The exponent used, equal to the QH rank.
    pub exponent: usize,
    pub kernel_dim: usize,
    /// Smallest `e ≥ 1` with `ker r^e = ker r^{e+1}`.
    pub stabilization_exponent: usize,
    /// Determinant of the induced `c1` on the quotient.
    pub induced_determinant: NovikovScalar,
    pub automorphism: bool,
}

/// `SH* = QH*/ker r^n` with `r` the `c1` operator and `n` the QH rank.
///
/// The quotient is cyclic on the image of `w`; its relation is the first linear dependency
/// among `1, w, w², …` modulo the kernel.
pub fn sh_quotient(p: &QuantumPresentation, op: &C1Operator) -> Result<ShQuotient, QhError> {
    let (m, k) = match p.family {
        Family::NegativeLineBundle { m, k } => (m, k),
        Family::Projective { .. } => return Err(QhError::NotABundleFamily),
    };
    let n = p.rank();
    let r = op.matrix();
    let kernel = r.pow(n).kernel();
    let stabilization_exponent = (1..=n).find(|&e| r.pow(e).rank() == r.pow(e + 1).rank()).unwrap_or(n);
    let w = p.w_matrix();
    let mut powers: Vec<Vec<RatFunc>> = vec![(0..n).map(|i| if i == 0 { RatFunc::one() } else { RatFunc::zero() }).collect()];
    let relation = loop {
        let j = powers.len();
        let next = w.apply(&powers[j - 1]);
        let cols: Vec<&Vec<RatFunc>> = kernel.iter().chain(powers.iter()).collect();
        let a = Matrix::from_rows((0..n).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect());
        if let Some(x) = a.solve(&next) {
            // w^j = Σ_i x_{kernel+i} w^i modulo the kernel
            let mut coeffs: Vec<RatFunc> = x[kernel.len()..].iter().map(|c| c.neg()).collect();
            coeffs.push(RatFunc::one());
            break UPoly::new(coeffs);
        }
        powers.push(next);
    };
    let lat = p.lattice().max(op.lattice);
    let relation = LambdaPoly::from_upoly(&relation, lat).ok_or_else(|| QhError::InvalidPresentation("SH relation is not Laurent in t".into()))?;
    let presentation = QuantumPresentation {
        ring: Ring::SymplecticCohomology,
        in_stated_window: p.in_stated_window,
        ..QuantumPresentation::from_relation(Family::NegativeLineBundle { m, k }, Ring::SymplecticCohomology, relation, &p.novikov_variable)?
    };
    let induced = super::c1_operator(&presentation);
    let det = induced.matrix().determinant();
    let induced_determinant = det.to_novikov(lat).ok_or_else(|| QhError::InvalidPresentation("determinant is not Laurent in t".into()))?;
    Ok(ShQuotient {
        exponent: n,
        kernel_dim: kernel.len(),
        stabilization_exponent,
        automorphism: !det.is_zero(),
        induced_determinant,
        presentation,
    })
}
