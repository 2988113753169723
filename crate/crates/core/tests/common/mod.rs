#![allow(dead_code)]

use std::sync::Arc;

use arithdisc::field::{AlgebraicNumber, NumberField};
use arithdisc::lattice::Lattice;
use arithdisc::orders::{self, FractionalIdeal, Order};
use arithdisc::sample::random_monic_irreducible;
use arithdisc::IntPoly;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

pub fn field<R: Rng>(
    rng: &mut R,
    degrees: std::ops::RangeInclusive<usize>,
    bound: i64,
) -> Arc<NumberField> {
    let n = rng.gen_range(degrees);
    NumberField::new(random_monic_irreducible(rng, n, bound)).unwrap()
}

pub fn q(x: i64) -> BigRational {
    BigRational::from_integer(x.into())
}

/// `ℤ + m·O_K`.
pub fn suborder(max: &Order, m: i64) -> Order {
    let k = max.field();
    let mut gens = max.lattice().scale(&q(m)).basis();
    let mut one = vec![BigRational::zero(); k.degree()];
    one[0] = BigRational::one();
    gens.push(one);
    Order::new(
        k,
        Lattice::from_rational_generators(&gens, k.degree()).unwrap(),
    )
    .unwrap()
}

/// An equation order, a monogenic order `ℤ[2θ + 1]`, or `ℤ + m·O_K`.
pub fn random_order<R: Rng>(rng: &mut R, k: &Arc<NumberField>) -> Order {
    match rng.gen_range(0..3) {
        0 => Order::equation_order(k),
        1 => {
            let t = AlgebraicNumber::generator(k);
            let a = t.scale(&q(2)).add(&AlgebraicNumber::one(k));
            orders::order_from_element(&a).unwrap()
        }
        _ => {
            let max = orders::maximal_order(&Order::equation_order(k)).unwrap();
            suborder(&max, rng.gen_range(2..=3))
        }
    }
}

/// A nonzero element of `A` with small coordinates in its basis.
pub fn random_element<R: Rng>(rng: &mut R, a: &Order, bound: i64) -> AlgebraicNumber {
    let k = a.field();
    loop {
        let mut v = vec![BigRational::zero(); k.degree()];
        for b in a.basis() {
            let c = q(rng.gen_range(-bound..=bound));
            for (vi, bi) in v.iter_mut().zip(&b) {
                *vi += &c * bi;
            }
        }
        let x = AlgebraicNumber::new(k, v);
        if !x.is_zero() {
            return x;
        }
    }
}

/// Largest `p^n` over the primes `p` of `disc`, or `None` if `disc` is large.
pub fn oracle_cost(order: &Order) -> Option<u64> {
    let d = order.discriminant().abs().to_u64()?;
    let n = order.degree() as u32;
    let mut m = d;
    let mut worst = 1u64;
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            worst = worst.max(p.checked_pow(n)?);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        worst = worst.max(m.checked_pow(n)?);
    }
    Some(worst)
}

/// `(p, θ − r)` in `ℤ[θ]` for a root `r` of `f` modulo `p`.
pub fn prime_ideal(a: &Order, p: i64, r: i64) -> FractionalIdeal {
    let k = a.field();
    let t = AlgebraicNumber::generator(k);
    let gens = [
        AlgebraicNumber::rational(k, q(p)),
        t.sub(&AlgebraicNumber::rational(k, q(r))),
    ];
    FractionalIdeal::from_generators(a, &gens).unwrap()
}

/// Whether an integral ideal of an imaginary quadratic order has a generator,
/// by enumerating its positive definite norm form.
pub fn is_principal_imag_quadratic(a: &FractionalIdeal) -> bool {
    let order = a.order();
    let k = order.field();
    let norm_a = order.lattice().index_of(a.lattice()).unwrap();
    let basis = a.lattice().basis();
    let e1 = AlgebraicNumber::new(k, basis[0].clone());
    let e2 = AlgebraicNumber::new(k, basis[1].clone());
    let int = |x: BigRational| -> BigInt {
        assert!(x.is_integer());
        x.to_integer()
    };
    let qa = int(e1.norm());
    let qc = int(e2.norm());
    let qb = int(e1.add(&e2).norm()) - &qa - &qc;
    let disc = &qb * &qb - BigInt::from(4) * &qa * &qc;
    assert!(disc.is_negative(), "norm form must be definite");
    let nd = -disc;
    let bound = |coef: &BigInt| -> i64 {
        let num = BigInt::from(4) * coef * &norm_a;
        let mut s = 0i64;
        while BigInt::from(s * s) * &nd <= num {
            s += 1;
        }
        s
    };
    let (bu, bv) = (bound(&qc), bound(&qa));
    for u in -bu..=bu {
        for v in -bv..=bv {
            let val = &qa * u * u + &qb * u * v + &qc * v * v;
            if val == norm_a {
                return true;
            }
        }
    }
    false
}

pub fn poly(c: &[i64]) -> IntPoly {
    IntPoly::from_i64(c)
}
