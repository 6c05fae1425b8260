//! Sign bookkeeping in the reduced grading.
//!
//! Every structure map acts from the right: an operation of degree `d`
//! applied to a block of a word picks up `(-1)^{d·w}`, where `w` is the total
//! weight of the letters to the right of the block. Hom letters weigh their
//! reduced degree `‖x‖ = |x| - 1`; a module letter weighs its module degree.

use super::AInfError;

/// Reduced degree `‖x‖ = |x| - 1`.
pub fn reduced(degree: i64) -> i64 {
    degree - 1
}

/// `σ_i^j = Σ_{ℓ=i}^{j} ‖x_ℓ‖` over 1-based positions of `degrees`.
///
/// `degrees[0]` is the degree of `x_1`. An empty range (`i = j + 1`) gives 0.
pub fn sigma(degrees: &[i64], i: usize, j: usize) -> Result<i64, AInfError> {
    if i == j + 1 {
        return Ok(0);
    }
    if i == 0 || i > j + 1 || j > degrees.len() {
        return Err(AInfError::IndexOutOfRange { i, j, len: degrees.len() });
    }
    Ok(degrees[i - 1..j].iter().map(|&d| reduced(d)).sum())
}

/// `σ` for a 0-based family `x_0, …, x_{n-1}` as used by the bar complex.
pub fn sigma0(degrees: &[i64], i: usize, j: usize) -> i64 {
    if i > j {
        return 0;
    }
    degrees[i..=j].iter().map(|&d| reduced(d)).sum()
}

/// `true` when `(-1)^e = -1`.
pub fn is_odd(e: i64) -> bool {
    e.rem_euclid(2) == 1
}

/// Stateless sign rules of the bimodule, bar and morphism formulas.
pub struct SignLedger;

impl SignLedger {
    /// `⋄ = σ(y)_{S+1}^s` for `ys = [y_1, …, y_s]` given as degrees.
    pub fn diamond(y_degrees: &[i64], big_s: usize) -> i64 {
        y_degrees[big_s..].iter().map(|&d| reduced(d)).sum()
    }

    /// `★ = σ(y)_1^s + deg(m) + σ(x)_1^{S-1}`; `x_degrees[0]` is `x_1`.
    pub fn star(y_degrees: &[i64], module_degree: i64, x_degrees: &[i64], big_s: usize) -> i64 {
        let sy: i64 = y_degrees.iter().map(|&d| reduced(d)).sum();
        let sx: i64 = x_degrees[..big_s - 1].iter().map(|&d| reduced(d)).sum();
        sy + module_degree + sx
    }

    /// `† = σ_0^{s-1}(deg(m) + σ_s^{n-1}) + σ_s^{r-1}` for a bar word.
    pub fn dagger(x_degrees: &[i64], module_degree: i64, s: usize, r: usize) -> i64 {
        let n = x_degrees.len();
        let head = if s == 0 { 0 } else { sigma0(x_degrees, 0, s - 1) };
        let tail = if s + 1 > n { 0 } else { sigma0(x_degrees, s, n - 1) };
        let mid = if r == 0 || s > r - 1 { 0 } else { sigma0(x_degrees, s, r - 1) };
        head * (module_degree + tail) + mid
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma(&[2, 3, 1], 1, 3).unwrap(), 3);
        assert_eq!(sigma(&[2, 3, 1], 2, 1).unwrap(), 0);
        assert_eq!(sigma(&[0], 1, 1).unwrap(), -1);
        assert_eq!(sigma(&[], 1, 0).unwrap(), 0);
    }

    #[test]
    fn sigma_out_of_range() {
        assert!(matches!(sigma(&[1, 2], 1, 3), Err(AInfError::IndexOutOfRange { .. })));
        assert!(matches!(sigma(&[1, 2], 0, 1), Err(AInfError::IndexOutOfRange { .. })));
        assert!(matches!(sigma(&[1, 2], 3, 1), Err(AInfError::IndexOutOfRange { .. })));
    }

    #[test]
    fn star_and_diamond() {
        // y = [1, 2], m of degree 3, x = [2, 0] with S = 2.
        assert_eq!(SignLedger::diamond(&[1, 2], 1), 1);
        assert_eq!(SignLedger::star(&[1, 2], 3, &[2, 0], 2), 1 + 3 + 1);
    }
}
