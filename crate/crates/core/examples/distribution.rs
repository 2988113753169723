//! Distribution relation residuals for x -> x^d and a non-monomial map.
use arithdisc::archimedean::{distribution_check, distribution_suite, ProjPoint, RationalMap};
use arithdisc::IntPoly;

pub fn main() {
    let prec = 128;
    let sq = RationalMap::power(2);
    let r = distribution_check(
        &sq,
        &ProjPoint::from_f64(prec, 2.0, 0.0),
        &ProjPoint::from_f64(prec, 9.0, 0.0),
        prec,
    )
    .unwrap();
    println!("x^2 at P = 2, q = 9: residual {}", r.to_f64());
    for d in 2..=4 {
        let s = distribution_suite(&RationalMap::power(d), 100, 1000, 7, prec);
        println!(
            "x^{d}: grid sup {:.3e}, fresh sup {:.3e}",
            s.grid_sup, s.fresh_sup
        );
    }
    // (x^2 + 1) / x
    let phi = RationalMap::new(IntPoly::from_i64(&[1, 0, 1]), IntPoly::from_i64(&[0, 1])).unwrap();
    let s = distribution_suite(&phi, 100, 1000, 7, prec);
    println!(
        "(x^2+1)/x: grid sup {:.4}, fresh sup {:.4}, excess {:.4}",
        s.grid_sup,
        s.fresh_sup,
        s.excess()
    );
}
