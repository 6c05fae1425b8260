//! Ranks of Jacobian rings of the shipped families via Gröbner bases at rational
//! specializations.

use ainfkit::novikov::Q;
use ainfkit::toric_lg::{family_polytope, jacobian_rank, superpotential, Family};

fn main() {
    let specs: Vec<Q> = ["2", "3"].iter().map(|s| s.parse().unwrap()).collect();
    for f in [Family::Projective { m: 2 }, Family::Projective { m: 4 }, Family::NegativeLineBundle { m: 4, k: 2 }, Family::NegativeLineBundle { m: 6, k: 3 }] {
        let w = superpotential(&family_polytope(f).unwrap());
        let j = jacobian_rank(&w, &specs).unwrap();
        println!("{f:?}: rank {} (consistent across specializations: {})", j.rank, j.consistent);
    }
}
