//! Quantum cohomology presentation, spectrum of c1 and the symplectic cohomology quotient.

use ainfkit::qh_spec::{c1_operator, presentation, sh_quotient, spectrum};
use ainfkit::toric_lg::Family;

fn main() {
    let p = presentation(Family::Projective { m: 3 }).unwrap();
    let s = spectrum(&c1_operator(&p));
    println!("QH(P^3) = Λ[w]/({}), c1 spectrum {}", p.relation_text(), s.char_poly_text);

    for (m, k) in [(3, 1), (4, 2), (6, 3)] {
        let p = presentation(Family::NegativeLineBundle { m, k }).unwrap();
        let op = c1_operator(&p);
        let s = spectrum(&op);
        let sh = sh_quotient(&p, &op).unwrap();
        println!("O(-{k}) → P^{m}: QH rank {}, char poly {}", p.rank(), s.char_poly_text);
        for f in &s.factors {
            println!("    factor {} with generalized eigenspace of dimension {}", f.text, f.summand_dim);
        }
        println!("    SH rank {}, relation {}, stabilizes at r^{}", sh.presentation.rank(), sh.presentation.relation_text(), sh.stabilization_exponent);
    }
}
