//! Factor a polynomial over the rationals and build a compositum.
use arithdisc::factor::factor_over_rationals;
use arithdisc::{compositum, IntPoly};

pub fn main() {
    // x^6 - 1
    let f = IntPoly::from_i64(&[-1, 0, 0, 0, 0, 0, 1]);
    let fac = factor_over_rationals(&f);
    println!("{f} = {}", fac.unit);
    for (g, m) in &fac.factors {
        println!("  * ({g})^{m}");
    }

    let c = compositum(
        &IntPoly::from_i64(&[1, 0, 1]),
        &IntPoly::from_i64(&[-2, 0, 1]),
    )
    .unwrap();
    println!(
        "Q(i, sqrt 2) = Q[t]/({}), gamma = alpha + {} beta",
        c.field.poly(),
        c.shift
    );
    println!("alpha = {:?}", c.alpha);
    println!("beta  = {:?}", c.beta);
}
