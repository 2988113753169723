//! Census of quadratic points on a genus one curve in P1 x P1, and of
//! integral points pulled back from the S-units of the first factor.
use arithdisc::point_search::{census, BiCurve, CensusConfig, DivisorSpec};

pub fn main() {
    let c = BiCurve::from_i64(&[&[1, 0, 1], &[0, 1], &[1, 0, -1]]).unwrap();
    let cfg = CensusConfig {
        divisor: DivisorSpec::default(),
        primes: vec![],
        nu: 2,
        ladder: vec![4, 8, 16],
        precision: 64,
    };
    for s in census(&c, &cfg).unwrap().steps {
        println!(
            "B = {:>2}: {} fibers, {} points, classes {:?}",
            s.bound, s.fibers, s.total, s.classes
        );
    }

    // y^2 = x + 1 type (1, 2); D = {x = 0, x = infinity}, S = {2, 3}
    let c = BiCurve::from_i64(&[&[1, 0, -1], &[1]]).unwrap();
    let d = DivisorSpec {
        x_zero: true,
        x_infinity: true,
        ..Default::default()
    };
    let cfg = CensusConfig {
        divisor: d,
        primes: vec![2, 3],
        nu: 2,
        ladder: vec![4, 16, 64],
        precision: 64,
    };
    for s in census(&c, &cfg).unwrap().steps {
        println!(
            "B = {:>2}: {} integral of {} points",
            s.bound, s.integral, s.total
        );
    }
}
