//! Different index bound for the product of two monogenic orders.
use arithdisc::orders::compositum_index_check;
use arithdisc::IntPoly;

pub fn main() {
    for (f, g) in [
        ([1, 0, 1], [-2, 0, 1]),
        ([-5, 0, 1], [-3, 0, 1]),
        ([1, 1, 1], [-2, 0, 1]),
    ] {
        let rep = compositum_index_check(&IntPoly::from_i64(&f), &IntPoly::from_i64(&g)).unwrap();
        println!(
            "{} / {}: [A3:D3] = {} <= {} ({:?}), Gorenstein {:?}",
            rep.f, rep.g, rep.indices[2], rep.bound, rep.verdict, rep.gorenstein
        );
    }
}
