//! Superpotential, critical points and critical values of O(-1) → P^3.

use ainfkit::toric_lg::{critical_points, critical_values, family_polytope, nondisplaceability_report, superpotential, Family};

fn main() {
    let p = family_polytope(Family::NegativeLineBundle { m: 3, k: 1 }).unwrap();
    let w = superpotential(&p);
    println!("W = {w}");

    let set = critical_points(&w, None).unwrap();
    for (i, pt) in set.points.iter().enumerate() {
        let coords: Vec<String> = pt.coordinates.iter().map(|c| format!("({:.4}{:+.4}i)·t^({})", c.coefficient.approx[0], c.coefficient.approx[1], c.exponent)).collect();
        println!("point {i}: {}", coords.join(", "));
    }
    for v in critical_values(&w, &set.points) {
        println!("W(point {}) = {}", v.point, v.text);
    }
    for f in nondisplaceability_report(&w, &set.points) {
        println!("point {}: nondisplaceable = {}", f.point, f.nondisplaceable);
    }
}
