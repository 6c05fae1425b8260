//! Hochschild homology of the dual numbers with diagonal coefficients, from the cyclic bar
//! complex.

use std::sync::Arc;

use ainfkit::graded_ainf::fixtures::truncated_polynomial;
use ainfkit::graded_ainf::{from_associative, BimoduleData};
use ainfkit::hochschild::BarComplex;

fn main() {
    let a = Arc::new(from_associative(&truncated_polynomial(2, 0)).unwrap());
    let m = Arc::new(BimoduleData::diagonal(a));
    let bar = BarComplex::new(m, 5).unwrap();
    let report = bar.report().unwrap();
    println!("dimensions by degree: {:?}", report.dims);
    println!("homology ranks:       {:?}", report.ranks);
    println!("truncation-affected degrees: {:?}", report.slack_degrees);
    for w in bar.words(-2).iter().take(4) {
        println!("  generator {}", w.label(bar.module()));
    }
}
