//! Finiteness criteria and the sharp families.
use arithdisc::criteria::{rule_table, sharpness_sweep, CurveSpec, SharpFamily};

pub fn main() {
    let mut spec = CurveSpec::product(0, 1, 5, 2, 2, 1);
    spec.bielliptic = Some(true);
    spec.nonsingular = Some(true);
    for v in rule_table(&spec).unwrap() {
        println!(
            "{:<28} {} {:?} {} -> {:?}",
            v.criterion, v.lhs, v.relation, v.rhs, v.conclusion
        );
    }
    for fam in [SharpFamily::LinesPullback, SharpFamily::EllipticCover] {
        let rep = sharpness_sweep(fam, 20, 10).unwrap();
        println!(
            "{fam:?}: {} cases, equality everywhere: {}",
            rep.rows.len(),
            rep.all_equal
        );
    }
}
