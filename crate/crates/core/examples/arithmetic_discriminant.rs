//! Arithmetic discriminants and heights of algebraic integers.
use arithdisc::archimedean::{
    arithmetic_discriminant_of_poly, height_bound_slack, translation_shift,
};
use arithdisc::height::height_of_poly;
use arithdisc::IntPoly;

pub fn main() {
    let prec = 128;
    for c in [
        vec![1, 0, 1],
        vec![-2, 0, 1],
        vec![-1, -1, 1],
        vec![-2, 0, 0, 1],
    ] {
        let f = IntPoly::from_i64(&c);
        let d = arithmetic_discriminant_of_poly(&f, prec).unwrap();
        let h = height_of_poly(&f, prec).unwrap();
        println!(
            "{f}: finite {:.6}, archimedean {:.6}, d_a {:.6}, h {:.6}, slack {:.6}",
            d.finite_part.to_f64(),
            d.archimedean_part.to_f64(),
            d.total.to_f64(),
            h.to_f64(),
            height_bound_slack(&f, 0.5, 0.0, prec).unwrap().to_f64()
        );
    }
    let f = IntPoly::from_i64(&[-2, 0, 1]);
    println!(
        "d_a(sqrt2 + 3) - d_a(sqrt2) = {:.6}",
        translation_shift(&f, 3, prec).unwrap().to_f64()
    );
}
