//! Compares the bar complex of a tensor bimodule L ⊗ R with the two-sided tensor complex
//! R ⊗_A L through the reordering map.

use std::sync::Arc;

use ainfkit::graded_ainf::fixtures::upper_triangular;
use ainfkit::graded_ainf::{from_associative, BimoduleData};
use ainfkit::hochschild::reorder_iso;

fn main() {
    let a = Arc::new(from_associative(&upper_triangular()).unwrap());
    let l = Arc::new(BimoduleData::yoneda_left(a.clone(), 0));
    let r = Arc::new(BimoduleData::yoneda_right(a, 0));
    let iso = reorder_iso(l, r, 4).unwrap();
    println!("reordering intertwines the differentials: {}", iso.intertwines());
    println!("bar complex ranks:    {:?}", iso.bar.complex().homology_ranks().unwrap());
    println!("tensor complex ranks: {:?}", iso.tensor.complex().homology_ranks().unwrap());
    println!("truncation-affected degrees: {:?}", iso.bar.slack_degrees());
}
