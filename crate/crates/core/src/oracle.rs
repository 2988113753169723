//! Slow reference implementations of the order operations, by exhaustive
//! search over small quotient groups. Used to validate the lattice algebra in
//! `orders`; every routine refuses work beyond `ORACLE_CAP` candidates.

use std::collections::{HashSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::{AlgebraicNumber, Compositum, NumberField};
use crate::lattice::Lattice;
use crate::orders::{lattice_mul, FractionalIdeal, Order};

pub const ORACLE_CAP: u64 = 1 << 20;

/// Prime divisors of `|n|` by plain trial division.
fn small_primes(n: &BigInt) -> Result<Vec<u64>> {
    let mut m = n
        .abs()
        .to_u64()
        .ok_or_else(|| Error::OracleLimit(format!("{n} is too large")))?;
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            out.push(p);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        out.push(m);
    }
    Ok(out)
}

fn with_vector(lat: &Lattice, v: Vec<BigRational>) -> Lattice {
    let mut gens = lat.basis();
    gens.push(v);
    Lattice::from_rational_generators(&gens, lat.dim()).expect("rank cannot drop")
}

/// Largest lattice `T` with `start ⊆ T`, `T/start` supported at `primes`, and
/// every element satisfying `pred`. `pred` must describe a group.
fn saturate(
    start: Lattice,
    primes: &[u64],
    pred: impl Fn(&[BigRational]) -> bool,
) -> Result<Lattice> {
    let n = start.dim();
    let mut lat = start;
    'restart: loop {
        for &p in primes {
            let count = (p as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
            if count > ORACLE_CAP as u128 {
                return Err(Error::OracleLimit(format!("{p}^{n} candidates")));
            }
            let basis = lat.basis();
            let pq = BigRational::from_integer(p.into());
            let mut digits = vec![0u64; n];
            // odometer over F_p^n with leading nonzero digit equal to 1
            loop {
                let mut i = 0;
                while i < n {
                    digits[i] += 1;
                    if digits[i] < p {
                        break;
                    }
                    digits[i] = 0;
                    i += 1;
                }
                if i == n {
                    break;
                }
                if digits.iter().rev().find(|&&d| d != 0) != Some(&1) {
                    continue;
                }
                let mut v = vec![BigRational::zero(); n];
                for (d, b) in digits.iter().zip(&basis) {
                    if *d != 0 {
                        let c = BigRational::from_integer((*d).into()) / &pq;
                        for (vi, bi) in v.iter_mut().zip(b) {
                            *vi += &c * bi;
                        }
                    }
                }
                if pred(&v) && !lat.contains_vector(&v) {
                    lat = with_vector(&lat, v);
                    continue 'restart;
                }
            }
        }
        return Ok(lat);
    }
}

fn elements_in(
    field: &NumberField,
    v: &[BigRational],
    basis: &[Vec<BigRational>],
    target: &Lattice,
) -> bool {
    basis
        .iter()
        .all(|b| target.contains_vector(&field.mul_coords(v, b)))
}

/// Trace dual of an order by saturating upward from the order.
pub fn trace_dual(order: &Order) -> Result<Lattice> {
    let field = order.field().clone();
    let basis = order.basis();
    let primes = small_primes(&order.discriminant())?;
    saturate(order.lattice().clone(), &primes, |v| {
        basis
            .iter()
            .all(|b| field.trace_coords(&field.mul_coords(v, b)).is_integer())
    })
}

/// Least positive integer lying in an integral ideal.
fn least_integer(a: &FractionalIdeal) -> Result<BigInt> {
    let n = a.order().degree();
    let mut m = 1u64;
    loop {
        let mut v = vec![BigRational::zero(); n];
        v[0] = BigRational::from_integer(m.into());
        if a.lattice().contains_vector(&v) {
            return Ok(m.into());
        }
        m += 1;
        if m > ORACLE_CAP {
            return Err(Error::OracleLimit("no small integer in the ideal".into()));
        }
    }
}

/// `(A : a)` for an integral ideal `a`.
pub fn ideal_inverse(a: &FractionalIdeal) -> Result<Lattice> {
    if !a.is_integral() {
        return Err(Error::OracleLimit(
            "inverse oracle needs an integral ideal".into(),
        ));
    }
    let order = a.order();
    let field = order.field().clone();
    let m = least_integer(a)?;
    let gens = a.lattice().basis();
    saturate(order.lattice().clone(), &small_primes(&m)?, |v| {
        elements_in(&field, v, &gens, order.lattice())
    })
}

pub fn different(order: &Order) -> Result<Lattice> {
    let field = order.field().clone();
    let w = trace_dual(order)?;
    let d = order.discriminant().abs();
    let start = order.lattice().scale(&BigRational::from_integer(d.clone()));
    let wb = w.basis();
    saturate(start, &small_primes(&d)?, |v| {
        order.lattice().contains_vector(v) && elements_in(&field, v, &wb, order.lattice())
    })
}

/// Integral closure by saturating with the integrality predicate.
pub fn maximal_order(order: &Order) -> Result<Order> {
    let field = order.field().clone();
    let disc = order.discriminant();
    let primes: Vec<u64> = small_primes(&disc)?
        .into_iter()
        .filter(|&p| (&disc % BigInt::from(p * p)).is_zero())
        .collect();
    let lat = saturate(order.lattice().clone(), &primes, |v| {
        AlgebraicNumber::new(&field, v.to_vec()).is_integral()
    })?;
    Order::new(&field, lat)
}

pub fn conductor(order: &Order) -> Result<Lattice> {
    let max = maximal_order(order)?;
    let field = order.field().clone();
    let d = max.lattice().index_of(order.lattice())?;
    let start = max.lattice().scale(&BigRational::from_integer(d.clone()));
    let mb = max.basis();
    saturate(start, &small_primes(&d)?, |v| {
        elements_in(&field, v, &mb, order.lattice())
    })
}

/// `[A : b]` by breadth-first enumeration of `A/b`.
pub fn index(order: &Order, b: &Lattice) -> Result<BigInt> {
    if !order.lattice().contains(b) {
        return Err(Error::NotContained(
            "sublattice is not contained in the order".into(),
        ));
    }
    let frac = |v: Vec<BigRational>| -> Vec<BigRational> {
        v.into_iter().map(|c| &c - c.floor()).collect()
    };
    let steps: Vec<Vec<BigRational>> = order
        .basis()
        .iter()
        .map(|a| frac(b.rational_coords(a)))
        .collect();
    let zero = vec![BigRational::zero(); order.degree()];
    let mut seen: HashSet<Vec<BigRational>> = HashSet::from([zero.clone()]);
    let mut queue = VecDeque::from([zero]);
    while let Some(x) = queue.pop_front() {
        for s in &steps {
            let y = frac(x.iter().zip(s).map(|(a, b)| a + b).collect());
            if seen.insert(y.clone()) {
                if seen.len() as u64 > ORACLE_CAP {
                    return Err(Error::OracleLimit("quotient too large".into()));
                }
                queue.push_back(y);
            }
        }
    }
    Ok(BigInt::from(seen.len()))
}

pub fn is_gorenstein(order: &Order) -> Result<bool> {
    let d = FractionalIdeal::new(order, different(order)?)?;
    let inv = ideal_inverse(&d)?;
    Ok(lattice_mul(order.field(), d.lattice(), &inv) == *order.lattice())
}

fn close_under_multiplication(field: &NumberField, mut lat: Lattice) -> Lattice {
    loop {
        let next = lattice_mul(field, &lat, &lat).sum(&lat);
        if next == lat {
            return lat;
        }
        lat = next;
    }
}

/// `ℤ[α]` as the multiplicative closure of `ℤ + ℤα` (full rank required).
pub fn order_from_element(alpha: &AlgebraicNumber) -> Result<Order> {
    let field = alpha.field();
    let n = field.degree();
    let mut gens = vec![
        AlgebraicNumber::one(field).coords().to_vec(),
        alpha.coords().to_vec(),
    ];
    let mut p = alpha.clone();
    // ℤ[α] needs every power; stop once the rank is full and a further power adds nothing
    loop {
        p = p.mul(alpha);
        gens.push(p.coords().to_vec());
        if gens.len() > n + 1 {
            break;
        }
    }
    let lat = Lattice::from_rational_generators(&gens, n)?;
    let lat = close_under_multiplication(field, lat);
    Order::new(field, lat)
}

pub fn product_order(a1: &Order, a2: &Order, comp: &Compositum) -> Result<Order> {
    let field = &comp.field;
    let mut gens: Vec<Vec<BigRational>> = Vec::new();
    for b in a1.basis() {
        gens.push(comp.alpha.eval_coords(&b).coords().to_vec());
    }
    for b in a2.basis() {
        gens.push(comp.beta.eval_coords(&b).coords().to_vec());
    }
    let mut c = vec![BigRational::zero(); field.degree()];
    c[0] = BigRational::one();
    gens.push(c);
    // rank may be deficient before closing, so close in stages
    let mut elems = gens.clone();
    for x in &gens {
        for y in &gens {
            elems.push(field.mul_coords(x, y));
        }
    }
    let lat = Lattice::from_rational_generators(&elems, field.degree())?;
    Order::new(field, close_under_multiplication(field, lat))
}

/// Exponent of `A′/A`, the least `m` with `m·A′ ⊆ A`.
pub fn conductor_exponent(order: &Order) -> Result<BigInt> {
    let max = maximal_order(order)?;
    let d = max.lattice().index_of(order.lattice())?;
    let mut m = BigInt::one();
    while m <= d {
        if d.is_multiple_of(&m)
            && order
                .lattice()
                .contains(&max.lattice().scale(&BigRational::from_integer(m.clone())))
        {
            return Ok(m);
        }
        m += 1;
    }
    unreachable!("[A′:A] kills A′/A")
}
