//! The tautological chain map along the inclusion of diagonal matrices into 2×2 matrices.

use std::sync::Arc;

use ainfkit::graded_ainf::fixtures::{diagonal_matrices, matrix_algebra};
use ainfkit::graded_ainf::{from_associative, verify_functor, BimoduleData, FunctorData};
use ainfkit::hochschild::change_of_rings;
use ainfkit::novikov::NovikovScalar;

fn main() {
    let d = Arc::new(from_associative(&diagonal_matrices()).unwrap());
    let m2 = Arc::new(from_associative(&matrix_algebra()).unwrap());
    let mut phi = FunctorData::new(d.clone(), m2.clone(), vec![0]).unwrap();
    for l in ["e11", "e22"] {
        phi.add(&[d.id_of(l).unwrap()], m2.id_of(l).unwrap(), NovikovScalar::one()).unwrap();
    }
    println!("functor equations: ok = {}", verify_functor(&phi, 5).unwrap().ok);

    let n = Arc::new(BimoduleData::diagonal(m2));
    let ch = change_of_rings(&phi, n, 3).unwrap();
    println!("pulled-back bimodule has dimension {}", ch.pulled_back.dim());
    println!("residual of τ∘b − b∘τ: {} entries", ch.residual_entries());
    println!("source ranks {:?}", ch.source.report().unwrap().ranks);
    println!("target ranks {:?}", ch.target.report().unwrap().ranks);
}
