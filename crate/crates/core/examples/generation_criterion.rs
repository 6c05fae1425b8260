//! Matches eigensummands of c1 with critical points of the superpotential and reports which
//! summands are split-generated by a torus.

use ainfkit::qh_spec::{default_specializations, run_pipeline};
use ainfkit::toric_lg::Family;

fn main() {
    let pipe = run_pipeline(Family::NegativeLineBundle { m: 5, k: 2 }, &default_specializations()).unwrap();
    let report = pipe.report();
    println!("QH rank {}, SH rank {:?}, Jacobian rank {}", report.qh_rank, report.sh_rank, report.jacobian_rank);
    println!("spectrum matches critical values: {}", report.spectrum_match);
    for e in &pipe.generation.entries {
        let point = e.matched_crit_point.map_or("-".to_string(), |i| i.to_string());
        println!("{:<22} dim {}  point {:>2}  {}  {}", e.eigenvalue_factor, e.summand_dim, point, e.verdict, e.note);
    }
}
