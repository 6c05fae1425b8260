//! Small associative algebras used as test data and in the examples.

use rand::Rng;

use super::{AssociativeTable, BasisId, HomElement};
use crate::linalg::Matrix;
use crate::novikov::{q, Q};

use num_traits::{One, Zero};

fn single(labels: &[(&str, i64)]) -> AssociativeTable {
    AssociativeTable::single(labels)
}

/// The ground field `ℚ`, spanned by its unit `e`.
pub fn ground_field() -> AssociativeTable {
    let mut t = single(&[("e", 0)]);
    t.set(0, 0, vec![(0, q(1))]);
    t
}

/// `ℚ[x]/x^n` with `|x| = deg_x`; basis `1, x, …, x^{n-1}`.
pub fn truncated_polynomial(n: usize, deg_x: i64) -> AssociativeTable {
    assert!(n >= 1);
    let labels: Vec<(String, i64)> =
        (0..n).map(|i| (if i == 0 { "1".to_string() } else { format!("x{i}") }, deg_x * i as i64)).collect();
    let refs: Vec<(&str, i64)> = labels.iter().map(|(l, d)| (l.as_str(), *d)).collect();
    let mut t = single(&refs);
    for i in 0..n {
        for j in 0..n {
            if i + j < n {
                t.set(i, j, vec![(i + j, q(1))]);
            }
        }
    }
    t
}

/// Exterior algebra on `k ≤ 2` generators of degree `deg`.
pub fn exterior(k: usize, deg: i64) -> AssociativeTable {
    match k {
        1 => {
            let mut t = single(&[("1", 0), ("a", deg)]);
            t.set(0, 0, vec![(0, q(1))]).set(0, 1, vec![(1, q(1))]).set(1, 0, vec![(1, q(1))]);
            t
        }
        2 => {
            let mut t = single(&[("1", 0), ("a", deg), ("b", deg), ("ab", 2 * deg)]);
            for i in 0..4 {
                t.set(0, i, vec![(i, q(1))]).set(i, 0, vec![(i, q(1))]);
            }
            t.set(1, 2, vec![(3, q(1))]).set(2, 1, vec![(3, q(-1))]);
            t
        }
        _ => panic!("exterior algebras on more than two generators exceed dimension 4"),
    }
}

/// Group algebra `ℚ[ℤ/n]`, concentrated in degree 0.
pub fn cyclic_group_algebra(n: usize) -> AssociativeTable {
    let labels: Vec<String> = (0..n).map(|i| format!("g{i}")).collect();
    let refs: Vec<(&str, i64)> = labels.iter().map(|l| (l.as_str(), 0)).collect();
    let mut t = single(&refs);
    for i in 0..n {
        for j in 0..n {
            t.set(i, j, vec![((i + j) % n, q(1))]);
        }
    }
    t
}

/// Matrix units `e_ij` with `e_ij·e_jk = e_ik`, restricted to the listed pairs.
fn matrix_units(pairs: &[(usize, usize)]) -> AssociativeTable {
    let labels: Vec<String> = pairs.iter().map(|(i, j)| format!("e{}{}", i + 1, j + 1)).collect();
    let refs: Vec<(&str, i64)> = labels.iter().map(|l| (l.as_str(), 0)).collect();
    let mut t = single(&refs);
    for (a, &(i, j)) in pairs.iter().enumerate() {
        for (b, &(k, l)) in pairs.iter().enumerate() {
            if j == k {
                if let Some(c) = pairs.iter().position(|&p| p == (i, l)) {
                    t.set(a, b, vec![(c, q(1))]);
                }
            }
        }
    }
    t
}

/// `M_2(ℚ)` with basis `e11, e12, e21, e22`.
pub fn matrix_algebra() -> AssociativeTable {
    matrix_units(&[(0, 0), (0, 1), (1, 0), (1, 1)])
}

/// Diagonal matrices `e11, e22 ⊂ M_2(ℚ)`.
pub fn diagonal_matrices() -> AssociativeTable {
    matrix_units(&[(0, 0), (1, 1)])
}

/// Upper-triangular `2×2` matrices `e11, e12, e22`.
pub fn upper_triangular() -> AssociativeTable {
    matrix_units(&[(0, 0), (0, 1), (1, 1)])
}

/// Direct product `A × B` with basis the disjoint union.
pub fn product(a: &AssociativeTable, b: &AssociativeTable) -> AssociativeTable {
    let na = a.generators.len();
    let mut gens: Vec<HomElement> = a.generators.iter().map(|g| HomElement { label: format!("{}'", g.label), ..g.clone() }).collect();
    gens.extend(b.generators.iter().map(|g| HomElement { label: format!("{}\"", g.label), ..g.clone() }));
    let mut t = AssociativeTable { objects: vec!["X".into()], generators: gens, products: Default::default() };
    for (&(x, y), v) in &a.products {
        t.set(x, y, v.clone());
    }
    for (&(x, y), v) in &b.products {
        t.set(x + na, y + na, v.iter().map(|(o, c)| (o + na, c.clone())).collect());
    }
    t
}

/// Rewrites the table in a new basis `f_i = Σ_j p_ij e_j`; `p` must preserve degrees.
pub fn change_basis(t: &AssociativeTable, p: &Matrix<Q>) -> Option<AssociativeTable> {
    let n = t.generators.len();
    for i in 0..n {
        for j in 0..n {
            if !p.get(i, j).is_zero() && t.generators[i].degree != t.generators[j].degree {
                return None;
            }
        }
    }
    if p.determinant().is_zero() {
        return None;
    }
    // e_j = Σ_i pinv_{ji} f_i, so coordinates of a vector v (in e) are v·pinv.
    let pinv = invert(p)?;
    let mut out = AssociativeTable { objects: t.objects.clone(), generators: t.generators.clone(), products: Default::default() };
    for a in 0..n {
        for b in 0..n {
            let mut v = vec![Q::zero(); n];
            for j in 0..n {
                for k in 0..n {
                    let c = p.get(a, j) * p.get(b, k);
                    if c.is_zero() {
                        continue;
                    }
                    if let Some(prod) = t.products.get(&(j, k)) {
                        for (o, w) in prod {
                            v[*o] += &c * w;
                        }
                    }
                }
            }
            let coords: Vec<(BasisId, Q)> = (0..n)
                .map(|i| (i, (0..n).fold(Q::zero(), |acc, j| acc + &v[j] * pinv.get(j, i))))
                .filter(|(_, c)| !c.is_zero())
                .collect();
            out.set(a, b, coords);
        }
    }
    Some(out)
}

fn invert(p: &Matrix<Q>) -> Option<Matrix<Q>> {
    let n = p.rows();
    let mut cols = Vec::with_capacity(n);
    for i in 0..n {
        let mut e = vec![Q::zero(); n];
        e[i] = Q::one();
        cols.push(p.solve(&e)?);
    }
    Some(Matrix::from_rows((0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect()))
}

/// Random invertible matrix preserving the degree blocks of `t`, with small integer entries.
pub fn random_graded_basis_change<R: Rng>(t: &AssociativeTable, rng: &mut R) -> Matrix<Q> {
    let n = t.generators.len();
    loop {
        let mut p = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                if t.generators[i].degree == t.generators[j].degree {
                    p.set(i, j, q(rng.gen_range(-2..=2)));
                }
            }
        }
        if !p.determinant().is_zero() {
            return p;
        }
    }
}

/// A random graded associative algebra of dimension at most 4.
pub fn random_small_algebra<R: Rng>(rng: &mut R) -> AssociativeTable {
    let base = match rng.gen_range(0..9) {
        0 => truncated_polynomial(rng.gen_range(2..=4), rng.gen_range(-2..=2)),
        1 => exterior(1, rng.gen_range(-2..=3)),
        2 => exterior(2, rng.gen_range(-2..=3)),
        3 => cyclic_group_algebra(rng.gen_range(2..=4)),
        4 => upper_triangular(),
        5 => matrix_algebra(),
        6 => product(&truncated_polynomial(2, rng.gen_range(-1..=2)), &ground_field()),
        7 => product(&exterior(1, rng.gen_range(-1..=2)), &truncated_polynomial(2, rng.gen_range(-1..=2))),
        _ => product(&ground_field(), &ground_field()),
    };
    let p = random_graded_basis_change(&base, rng);
    change_basis(&base, &p).expect("degree-preserving invertible change")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_fixtures_associative() {
        for t in [
            ground_field(),
            truncated_polynomial(3, 2),
            exterior(2, 1),
            cyclic_group_algebra(3),
            matrix_algebra(),
            upper_triangular(),
            diagonal_matrices(),
            product(&exterior(1, 1), &ground_field()),
        ] {
            t.check_associative().unwrap();
        }
    }

    #[test]
    fn basis_change_keeps_associativity() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let t = random_small_algebra(&mut rng);
            assert!(t.generators.len() <= 4);
            t.check_associative().unwrap();
        }
    }
}
