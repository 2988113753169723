//! Trace dual, different, conductor and maximal order of a non-maximal order.
use arithdisc::lattice::Lattice;
use arithdisc::orders::{self, Order};
use arithdisc::{IntPoly, NumberField};

fn show(l: &Lattice) -> String {
    let rows: Vec<String> = l
        .basis()
        .iter()
        .map(|r| {
            format!(
                "({})",
                r.iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            )
        })
        .collect();
    rows.join(" ")
}

pub fn main() {
    let k = NumberField::new(IntPoly::from_i64(&[-5, 0, 1])).unwrap();
    let a = Order::equation_order(&k);
    let max = orders::maximal_order(&a).unwrap();
    let d = orders::different(&a);
    println!("A = Z[sqrt 5], disc {}", a.discriminant());
    println!(
        "A' has disc {} and [A':A] = {}",
        max.discriminant(),
        max.lattice().index_of(a.lattice()).unwrap()
    );
    println!(
        "trace dual W = {}",
        show(orders::trace_dual(&a.as_ideal()).lattice())
    );
    println!("[A : D] = {}", orders::index(&a, &d).unwrap());
    println!("d_A = {}", orders::d_ar(&a, 64));
    println!("Gorenstein: {}", orders::is_gorenstein(&a));
    println!(
        "conductor = {}",
        show(orders::conductor(&a).unwrap().lattice())
    );
    println!("D A' = C D': {}", orders::check_cond_identity(&a).unwrap());
}
