//! Exact arithmetic, inversion, valuation and grading in the Novikov field.

use ainfkit::novikov::{CohomologicalDegree, Exponent, GradingContext, NovikovScalar, Valuation};
use num_rational::BigRational;

fn main() {
    let a: NovikovScalar = "1 + -1*t^(1)".parse().unwrap();
    let b: NovikovScalar = "1 + 1*t^(1)".parse().unwrap();
    println!("({a}) * ({b}) = {}", a.mul_ref(&b));

    let inv = a.invert(Exponent::from_integer(4)).unwrap();
    println!("1 / ({a}) = {inv}");
    println!("check: {}", a.mul_ref(&inv));

    let half = NovikovScalar::t_pow(Exponent::new(1, 2));
    println!("t^(1/2) * t^(1/2) = {}", half.mul_ref(&half));

    for s in ["2 + 1*t^(1)", "1*t^(3)", "1*t^(-1)", "0", "5*t^(-1/2) + 1*t^(1)"] {
        let x: NovikovScalar = s.parse().unwrap();
        let val = match x.valuation() {
            Valuation::Finite(v) => v.to_string(),
            Valuation::Infinite => "+inf".into(),
        };
        println!("{s:>22}: valuation {val}, subring {:?}", x.classify());
    }

    let ctx = GradingContext::new(BigRational::from_integer(1.into())).unwrap();
    for s in ["1*t^(1)", "7", "1 + 1*t^(1)"] {
        match ctx.degree(&s.parse().unwrap()) {
            CohomologicalDegree::Homogeneous(d) => println!("|{s}| = {d}"),
            CohomologicalDegree::Mixed => println!("|{s}| is mixed"),
        }
    }
}
