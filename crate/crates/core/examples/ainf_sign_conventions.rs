//! Verifies the A-infinity relations of an associative algebra and shows that a single
//! flipped structure constant is caught.

use std::sync::Arc;

use ainfkit::graded_ainf::fixtures::exterior;
use ainfkit::graded_ainf::{from_associative, verify_ainf, verify_bimodule, BimoduleData};

fn main() {
    // ℚ[a]/a² with |a| = 1.
    let a = Arc::new(from_associative(&exterior(1, 1)).unwrap());
    let rep = verify_ainf(&a, 5).unwrap();
    println!("A-infinity relations up to length 5: ok = {} ({} tuples)", rep.ok, rep.tuples_checked);
    let diag = BimoduleData::diagonal(a.clone());
    println!("diagonal bimodule: ok = {}", verify_bimodule(&diag, 5).unwrap().ok);

    let (one, x) = (a.id_of("1").unwrap(), a.id_of("a").unwrap());
    // with |a| odd the stored coefficient already carries a Koszul sign
    let c = a.mu(&[one, x]).and_then(|r| r.get(&x)).unwrap().clone();
    println!("stored μ2 coefficient for (1, a): {c}");
    let mut b = a.to_builder();
    b.set_mu(&[one, x], x, c.neg_ref());
    let mutated = b.build().unwrap();
    let rep = verify_ainf(&mutated, 4).unwrap();
    println!("after flipping that sign: ok = {}, {} violations", rep.ok, rep.violations.len());
    if let Some(v) = rep.violations.first() {
        println!("first violation: inputs {:?}, residual {:?}", v.inputs, v.residual);
    }
}
