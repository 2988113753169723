//! Compare the lattice algorithms with brute-force search.
use arithdisc::cli::{build_order, summarize_order, OrderInput};
use arithdisc::IntPoly;

pub fn main() {
    for (poly, sub) in [
        (vec![-5, 0, 1], None),
        (vec![-2, 0, 0, 1], Some(2)),
        (vec![3, 0, 1], Some(3)),
    ] {
        let input = OrderInput {
            poly: IntPoly::from_i64(&poly),
            element: None,
            suborder_index: sub,
        };
        let order = build_order(&input).unwrap();
        let fast = summarize_order(&order, false).unwrap();
        let slow = summarize_order(&order, true).unwrap();
        println!(
            "{} (suborder {:?}): agree = {}, [A:D] = {}",
            input.poly,
            sub,
            fast == slow,
            fast.different_index
        );
    }
}
