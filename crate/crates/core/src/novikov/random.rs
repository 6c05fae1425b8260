use rand::Rng;

use super::{q_frac, Exponent, NovikovScalar, Truncation};

/// A random exact scalar on the lattice `(1/N)ℤ`, `N ∈ {1, 2, 3, 4, 6}`, with at most
/// `max_terms` terms, exponents in `[-3, 3]` and small rational coefficients.
pub fn random_scalar<R: Rng>(rng: &mut R, max_terms: usize) -> NovikovScalar {
    let n = [1i64, 2, 3, 4, 6][rng.gen_range(0..5)];
    let terms: Vec<_> = (0..rng.gen_range(0..=max_terms))
        .map(|_| {
            let e = Exponent::new(rng.gen_range(-3 * n..=3 * n), n);
            let mut c = 0;
            while c == 0 {
                c = rng.gen_range(-9..=9);
            }
            (e, q_frac(c, rng.gen_range(1..=4)))
        })
        .collect();
    NovikovScalar::from_terms(terms, Truncation::Exact).with_lattice(n as u32).expect("exponents lie on the lattice")
}
