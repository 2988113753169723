//! Orders and fractional ideals as lattices in the power basis of a number
//! field: trace duals, differents, conductors, maximal orders, and the exact
//! different inequality for compositum orders.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{compositum, AlgebraicNumber, Compositum, NumberField};
use crate::intfactor::factor_integer;
use crate::lattice::Lattice;
use crate::linalg::{left_kernel_mod_p, rat_inverse, rat_mat_mul, reduce_mod, RatMatrix};
use crate::poly::IntPoly;
use crate::roots::{real_from_bigint, Real};

fn unit_vector(n: usize, i: usize) -> Vec<BigRational> {
    let mut e = vec![BigRational::zero(); n];
    e[i] = BigRational::one();
    e
}

/// Row `i` is the coordinate vector of `c·θⁱ`.
fn mult_matrix(field: &NumberField, c: &[BigRational]) -> RatMatrix {
    let n = field.degree();
    (0..n)
        .map(|i| field.mul_coords(c, &unit_vector(n, i)))
        .collect()
}

/// `a·b` as a lattice.
pub fn lattice_mul(field: &NumberField, a: &Lattice, b: &Lattice) -> Lattice {
    let (ba, bb) = (a.basis(), b.basis());
    let gens: Vec<Vec<BigRational>> = ba
        .iter()
        .flat_map(|x| bb.iter().map(move |y| field.mul_coords(x, y)))
        .collect();
    Lattice::from_rational_generators(&gens, field.degree()).expect("product of full-rank lattices")
}

/// `(a : b) = {x : x·b ⊆ a}`.
pub fn lattice_colon(field: &NumberField, a: &Lattice, b: &Lattice) -> Lattice {
    let n = field.degree();
    let a_inv = rat_inverse(&a.basis()).expect("full-rank lattice");
    let mut gens = Vec::with_capacity(n * n);
    for bj in b.basis() {
        let nj = rat_mat_mul(&mult_matrix(field, &bj), &a_inv);
        for k in 0..n {
            gens.push(nj.iter().map(|row| row[k].clone()).collect::<Vec<_>>());
        }
    }
    Lattice::from_rational_generators(&gens, n)
        .expect("colon generators span")
        .dual()
}

/// `{x : Tr(x·l) ∈ ℤ for all l ∈ lat}`.
pub fn lattice_trace_dual(field: &NumberField, lat: &Lattice) -> Lattice {
    let g: RatMatrix = crate::linalg::int_to_rat(field.trace_form());
    let bg = rat_mat_mul(&lat.basis(), &g);
    Lattice::from_rational_generators(&bg, field.degree())
        .expect("trace form is nondegenerate")
        .dual()
}

struct OrderData {
    field: Arc<NumberField>,
    lattice: Lattice,
    /// `bᵢ·bⱼ = Σₖ table[i][j][k]·bₖ`.
    table: Vec<Vec<Vec<BigInt>>>,
}

/// A full-rank subring of a number field.
#[derive(Clone)]
pub struct Order(Arc<OrderData>);

impl PartialEq for Order {
    fn eq(&self, other: &Self) -> bool {
        self.0.field == other.0.field && self.0.lattice == other.0.lattice
    }
}

impl Eq for Order {}

impl fmt::Debug for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Order({:?}, {:?})", self.0.field, self.0.lattice)
    }
}

impl Order {
    /// Validates that the lattice contains 1 and is closed under
    /// multiplication.
    pub fn new(field: &Arc<NumberField>, lattice: Lattice) -> Result<Order> {
        let n = field.degree();
        if lattice.dim() != n {
            return Err(Error::InvalidOrder(format!(
                "lattice of rank {} in a degree {n} field",
                lattice.dim()
            )));
        }
        if !lattice.contains_vector(&unit_vector(n, 0)) {
            return Err(Error::InvalidOrder("lattice does not contain 1".into()));
        }
        let basis = lattice.basis();
        let mut table = vec![vec![Vec::new(); n]; n];
        for i in 0..n {
            for j in i..n {
                let prod = field.mul_coords(&basis[i], &basis[j]);
                let c = lattice.coords(&prod).ok_or_else(|| {
                    Error::InvalidOrder(format!("basis product b{i}·b{j} leaves the lattice"))
                })?;
                table[i][j] = c.clone();
                table[j][i] = c;
            }
        }
        Ok(Order(Arc::new(OrderData {
            field: field.clone(),
            lattice,
            table,
        })))
    }

    /// `ℤ[θ]` for the field generator θ.
    pub fn equation_order(field: &Arc<NumberField>) -> Order {
        Order::new(field, Lattice::standard(field.degree())).expect("equation order")
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.0.field
    }

    pub fn lattice(&self) -> &Lattice {
        &self.0.lattice
    }

    pub fn degree(&self) -> usize {
        self.0.field.degree()
    }

    pub fn basis(&self) -> RatMatrix {
        self.0.lattice.basis()
    }

    pub fn basis_elements(&self) -> Vec<AlgebraicNumber> {
        self.basis()
            .into_iter()
            .map(|c| AlgebraicNumber::new(self.field(), c))
            .collect()
    }

    pub fn contains(&self, x: &AlgebraicNumber) -> bool {
        self.0.lattice.contains_vector(x.coords())
    }

    /// `disc(A) = det Tr(bᵢbⱼ) = disc(f)·covol(A)²`.
    pub fn discriminant(&self) -> BigInt {
        let c = self.0.lattice.det();
        let d = BigRational::from_integer(self.field().discriminant()) * &c * &c;
        debug_assert!(d.is_integer());
        d.to_integer()
    }

    pub fn as_ideal(&self) -> FractionalIdeal {
        FractionalIdeal {
            order: self.clone(),
            lattice: self.0.lattice.clone(),
        }
    }

    /// Integer coordinates of `x` in the order basis.
    pub fn coords(&self, x: &[BigRational]) -> Option<Vec<BigInt>> {
        self.0.lattice.coords(x)
    }

    /// Product in basis coordinates, reduced mod `p`.
    fn mul_mod_p(&self, a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = self.degree();
        let mut out = vec![0u128; n];
        let p128 = p as u128;
        for i in 0..n {
            if a[i] == 0 {
                continue;
            }
            for j in 0..n {
                if b[j] == 0 {
                    continue;
                }
                let ab = (a[i] as u128 * b[j] as u128) % p128;
                for (k, o) in out.iter_mut().enumerate() {
                    let c = reduce_mod(&self.0.table[i][j][k], p) as u128;
                    *o = (*o + ab * c) % p128;
                }
            }
        }
        out.into_iter().map(|x| x as u64).collect()
    }

    fn pow_mod_p(&self, a: &[u64], mut e: u64, p: u64) -> Vec<u64> {
        let n = self.degree();
        let mut r = self
            .coords(&unit_vector(n, 0))
            .expect("1 lies in the order")
            .iter()
            .map(|c| reduce_mod(c, p))
            .collect::<Vec<_>>();
        let mut b = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul_mod_p(&r, &b, p);
            }
            b = self.mul_mod_p(&b, &b, p);
            e >>= 1;
        }
        r
    }

    /// The `p`-radical `{x ∈ A : x^(p^j) ∈ pA}` with `p^j ≥ n`.
    pub fn p_radical(&self, p: u64) -> Lattice {
        let n = self.degree();
        let mut j = 1u32;
        while (p as u128).pow(j) < n as u128 {
            j += 1;
        }
        let frob: Vec<Vec<u64>> = (0..n)
            .map(|i| {
                let mut v = vec![0u64; n];
                v[i] = 1;
                for _ in 0..j {
                    v = self.pow_mod_p(&v, p, p);
                }
                v
            })
            .collect();
        let kernel = left_kernel_mod_p(&frob, p);
        let basis = self.basis();
        let pq = BigRational::from_integer(p.into());
        let mut gens: Vec<Vec<BigRational>> = basis
            .iter()
            .map(|b| b.iter().map(|x| x * &pq).collect())
            .collect();
        for v in kernel {
            let mut x = vec![BigRational::zero(); n];
            for (c, b) in v.iter().zip(&basis) {
                if *c != 0 {
                    let c = BigRational::from_integer((*c).into());
                    for (xi, bi) in x.iter_mut().zip(b) {
                        *xi += &c * bi;
                    }
                }
            }
            gens.push(x);
        }
        Lattice::from_rational_generators(&gens, n).expect("radical contains pA")
    }
}

/// A nonzero fractional ideal of an order.
#[derive(Clone, PartialEq, Eq)]
pub struct FractionalIdeal {
    order: Order,
    lattice: Lattice,
}

impl fmt::Debug for FractionalIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FractionalIdeal({:?})", self.lattice)
    }
}

impl FractionalIdeal {
    /// Validates closure under multiplication by the order.
    pub fn new(order: &Order, lattice: Lattice) -> Result<FractionalIdeal> {
        if lattice.dim() != order.degree() {
            return Err(Error::InvalidIdeal("rank mismatch".into()));
        }
        let field = order.field();
        for a in order.basis() {
            for b in lattice.basis() {
                if !lattice.contains_vector(&field.mul_coords(&a, &b)) {
                    return Err(Error::InvalidIdeal(
                        "lattice is not a module over the order".into(),
                    ));
                }
            }
        }
        Ok(FractionalIdeal {
            order: order.clone(),
            lattice,
        })
    }

    fn trusted(order: &Order, lattice: Lattice) -> FractionalIdeal {
        debug_assert!(FractionalIdeal::new(order, lattice.clone()).is_ok());
        FractionalIdeal {
            order: order.clone(),
            lattice,
        }
    }

    /// The `A`-module generated by `gens`.
    pub fn from_generators(order: &Order, gens: &[AlgebraicNumber]) -> Result<FractionalIdeal> {
        let field = order.field();
        let basis = order.basis();
        let all: Vec<Vec<BigRational>> = gens
            .iter()
            .flat_map(|g| basis.iter().map(move |b| field.mul_coords(g.coords(), b)))
            .collect();
        if all.is_empty() {
            return Err(Error::InvalidIdeal("no generators".into()));
        }
        let lattice = Lattice::from_rational_generators(&all, order.degree())
            .map_err(|_| Error::InvalidIdeal("the zero ideal is not a fractional ideal".into()))?;
        Ok(FractionalIdeal::trusted(order, lattice))
    }

    pub fn principal(order: &Order, x: &AlgebraicNumber) -> Result<FractionalIdeal> {
        FractionalIdeal::from_generators(order, std::slice::from_ref(x))
    }

    pub fn order(&self) -> &Order {
        &self.order
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn mul(&self, other: &FractionalIdeal) -> FractionalIdeal {
        FractionalIdeal::trusted(
            &self.order,
            lattice_mul(self.order.field(), &self.lattice, &other.lattice),
        )
    }

    pub fn is_integral(&self) -> bool {
        self.order.lattice().contains(&self.lattice)
    }

    /// `a·B` as an ideal of an overorder `B`.
    pub fn extend(&self, to: &Order) -> FractionalIdeal {
        FractionalIdeal::trusted(to, lattice_mul(to.field(), &self.lattice, to.lattice()))
    }

    /// The same lattice viewed as an ideal of `to` (which must preserve it).
    pub fn reinterpret(&self, to: &Order) -> Result<FractionalIdeal> {
        FractionalIdeal::new(to, self.lattice.clone())
    }

    pub fn is_invertible(&self) -> bool {
        self.mul(&ideal_inverse(self)) == self.order.as_ideal()
    }
}

/// `ℤ[α]` for an integral primitive element α.
pub fn order_from_element(alpha: &AlgebraicNumber) -> Result<Order> {
    let field = alpha.field();
    let n = field.degree();
    let minpoly = alpha.minimal_polynomial();
    if minpoly.degree() != n {
        return Err(Error::NotPrimitive(format!(
            "{alpha:?} has degree {} in a degree {n} field",
            minpoly.degree()
        )));
    }
    if !minpoly.is_monic() {
        return Err(Error::NotIntegral(format!(
            "{alpha:?} has minimal polynomial {minpoly}"
        )));
    }
    let mut powers = Vec::with_capacity(n);
    let mut p = AlgebraicNumber::one(field);
    for _ in 0..n {
        powers.push(p.coords().to_vec());
        p = p.mul(alpha);
    }
    Order::new(field, Lattice::from_rational_generators(&powers, n)?)
}

pub fn trace_dual(a: &FractionalIdeal) -> FractionalIdeal {
    FractionalIdeal::trusted(&a.order, lattice_trace_dual(a.order.field(), &a.lattice))
}

/// `(A : a)`.
pub fn ideal_inverse(a: &FractionalIdeal) -> FractionalIdeal {
    FractionalIdeal::trusted(
        &a.order,
        lattice_colon(a.order.field(), a.order.lattice(), &a.lattice),
    )
}

pub fn different(order: &Order) -> FractionalIdeal {
    let d = ideal_inverse(&trace_dual(&order.as_ideal()));
    debug_assert!(d.is_integral());
    d
}

/// `[A : b]` for `b ⊆ A`.
pub fn index(order: &Order, b: &FractionalIdeal) -> Result<BigInt> {
    order.lattice().index_of(&b.lattice)
}

/// `log[A : 𝒟] / n`.
pub fn d_ar(order: &Order, precision: u32) -> Real {
    let idx = index(order, &different(order)).expect("the different is integral");
    real_from_bigint(precision, &idx).ln() / order.degree() as u32
}

/// Gorenstein iff the different is invertible.
pub fn is_gorenstein(order: &Order) -> bool {
    different(order).is_invertible()
}

/// The integral closure, by round-2 saturation at every `p` with `p² | disc`.
pub fn maximal_order(order: &Order) -> Result<Order> {
    let disc = order.discriminant();
    let mut current = order.clone();
    for (p, e) in factor_integer(&disc)? {
        if e < 2 {
            continue;
        }
        let p = p
            .to_u64()
            .ok_or_else(|| Error::FactorizationLimit(format!("prime {p} exceeds 64 bits")))?;
        loop {
            let rad = current.p_radical(p);
            let ring = lattice_colon(current.field(), &rad, &rad);
            if ring == *current.lattice() {
                break;
            }
            current = Order::new(current.field(), ring)?;
        }
    }
    debug_assert!({
        let idx = current.lattice().index_of(order.lattice()).unwrap();
        disc == &idx * &idx * current.discriminant()
    });
    Ok(current)
}

/// `{x ∈ A′ : x·A′ ⊆ A}`, as an ideal of `A`.
pub fn conductor(order: &Order) -> Result<FractionalIdeal> {
    let max = maximal_order(order)?;
    Ok(conductor_in(order, &max))
}

pub(crate) fn conductor_in(order: &Order, max: &Order) -> FractionalIdeal {
    FractionalIdeal::trusted(
        order,
        lattice_colon(order.field(), order.lattice(), max.lattice()),
    )
}

/// Image in `L₃` of an element of `L₁` under `θ₁ ↦ image`.
fn push_coords(c: &[BigRational], image: &AlgebraicNumber) -> Vec<BigRational> {
    image.eval_coords(c).coords().to_vec()
}

fn push_lattice_gens(lat: &Lattice, image: &AlgebraicNumber) -> Vec<Vec<BigRational>> {
    lat.basis().iter().map(|b| push_coords(b, image)).collect()
}

fn span_products(
    field: &NumberField,
    xs: &[Vec<BigRational>],
    ys: &[Vec<BigRational>],
) -> Vec<Vec<BigRational>> {
    xs.iter()
        .flat_map(|x| ys.iter().map(move |y| field.mul_coords(x, y)))
        .collect()
}

/// `A₁A₂` inside the compositum.
pub fn product_order(a1: &Order, a2: &Order, comp: &Compositum) -> Result<Order> {
    let field = &comp.field;
    let n = field.degree();
    let g1 = push_lattice_gens(a1.lattice(), &comp.alpha);
    let g2 = push_lattice_gens(a2.lattice(), &comp.beta);
    let mut lat = Lattice::from_rational_generators(&span_products(field, &g1, &g2), n)?;
    loop {
        let next = lattice_mul(field, &lat, &lat).sum(&lat);
        if next == lat {
            break;
        }
        lat = next;
    }
    Order::new(field, lat)
}

/// `𝒟_A·A′ = 𝒞_A·𝒟_{A′}`.
pub fn check_cond_identity(order: &Order) -> Result<bool> {
    if !is_gorenstein(order) {
        return Err(Error::InvalidOrder("order is not Gorenstein".into()));
    }
    let max = maximal_order(order)?;
    let field = order.field();
    let lhs = lattice_mul(field, different(order).lattice(), max.lattice());
    let rhs = lattice_mul(
        field,
        conductor_in(order, &max).lattice(),
        different(&max).lattice(),
    );
    Ok(lhs == rhs)
}

/// `[A : a] = [A′ : a·A′]` for an invertible integral ideal.
pub fn check_invertible_index(order: &Order, a: &FractionalIdeal) -> Result<bool> {
    if !a.is_integral() {
        return Err(Error::NotContained("ideal is not integral".into()));
    }
    if !a.is_invertible() {
        return Err(Error::InvalidIdeal("ideal is not invertible".into()));
    }
    let max = maximal_order(order)?;
    let lhs = index(order, a)?;
    let rhs = index(&max, &a.extend(&max))?;
    Ok(lhs == rhs)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundVerdict {
    Holds,
    HypothesesUnmet,
    Violated,
}

#[derive(Clone, Debug)]
pub struct CompositumIndexReport {
    pub f: IntPoly,
    pub g: IntPoly,
    pub compositum_poly: IntPoly,
    pub shift: u32,
    pub degrees: [usize; 3],
    pub gorenstein: [bool; 3],
    pub indices: [BigInt; 3],
    /// `[L₃:L₁]`, `[L₃:L₂]`.
    pub relative_degrees: [usize; 2],
    /// `[A₁:𝒟₁]^[L₃:L₁] · [A₂:𝒟₂]^[L₃:L₂]`.
    pub bound: BigInt,
    pub inequality: bool,
    pub containment: bool,
    pub verdict: BoundVerdict,
}

/// Exact different inequality for `A₃ = ℤ[α]ℤ[β]` in `ℚ(α, β)`.
pub fn compositum_index_check(f: &IntPoly, g: &IntPoly) -> Result<CompositumIndexReport> {
    let comp = compositum(f, g)?;
    let l1 = NumberField::new(f.clone())?;
    let l2 = NumberField::new(g.clone())?;
    let a1 = Order::equation_order(&l1);
    let a2 = Order::equation_order(&l2);
    let a3 = product_order(&a1, &a2, &comp)?;
    let (d1, d2, d3) = (different(&a1), different(&a2), different(&a3));
    let gorenstein = [d1.is_invertible(), d2.is_invertible(), d3.is_invertible()];
    let indices = [index(&a1, &d1)?, index(&a2, &d2)?, index(&a3, &d3)?];
    let (n1, n2, n3) = (l1.degree(), l2.degree(), comp.degree());
    let relative_degrees = [n3 / n1, n3 / n2];
    let bound = num_traits::pow(indices[0].clone(), relative_degrees[0])
        * num_traits::pow(indices[1].clone(), relative_degrees[1]);
    let inequality = indices[2] <= bound;

    let field = &comp.field;
    let max3 = maximal_order(&a3)?;
    let img1 = push_lattice_gens(d1.lattice(), &comp.alpha);
    let img2 = push_lattice_gens(d2.lattice(), &comp.beta);
    let prod12 = span_products(field, &img1, &img2);
    let lhs = Lattice::from_rational_generators(&span_products(field, &prod12, &max3.basis()), n3)?;
    let rhs = lattice_mul(field, d3.lattice(), max3.lattice());
    let containment = rhs.contains(&lhs);

    let verdict = if !gorenstein.iter().all(|&b| b) {
        BoundVerdict::HypothesesUnmet
    } else if inequality && containment {
        BoundVerdict::Holds
    } else {
        BoundVerdict::Violated
    };
    Ok(CompositumIndexReport {
        f: f.clone(),
        g: g.clone(),
        compositum_poly: field.poly().clone(),
        shift: comp.shift,
        degrees: [n1, n2, n3],
        gorenstein,
        indices,
        relative_degrees,
        bound,
        inequality,
        containment,
        verdict,
    })
}

/// Trace dual element test used by callers that want an explicit witness.
pub fn trace_pairing_integral(field: &NumberField, w: &Lattice, a: &Lattice) -> bool {
    w.basis().iter().all(|x| {
        a.basis()
            .iter()
            .all(|y| field.trace_coords(&field.mul_coords(x, y)).is_integer())
    })
}

/// `|disc|` as a positive integer, for reporting.
pub fn abs_discriminant(order: &Order) -> BigInt {
    order.discriminant().abs()
}
