//! Algebraic points of bounded degree and height on curves in P¹ × P¹,
//! found fiber by fiber over rational points of the first factor.
//!
//! A curve is given by an affine equation `F(x, y) = Σ c_ij xⁱ yʲ` of
//! bidegree `(a, b)`: `a` is the degree in `x`, `b` the degree in `y`. The
//! first projection has fibers of size `d₁ = b`, the second of size `d₂ = a`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::criteria::{rule_table, CurveSpec, Verdict};
use crate::error::{Error, Result};
use crate::factor::{factor_over_rationals, is_irreducible};
use crate::field::AlgebraicNumber;
use crate::height::height_of_poly;
use crate::poly::IntPoly;
use crate::roots::Real;

/// Whole search cone: only orbits whose first coordinate is rational.
pub const SEARCH_CONE: &str = "rational first coordinate, height(x) <= B";

/// A point `(x₀ : x₁)` of P¹(ℚ) in lowest terms with `x₀ ≥ 0`; `x = x₁/x₀`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalPoint {
    pub x0: BigInt,
    pub x1: BigInt,
}

impl RationalPoint {
    pub fn new(x0: BigInt, x1: BigInt) -> Result<RationalPoint> {
        if x0.is_zero() && x1.is_zero() {
            return Err(Error::Degenerate("(0 : 0) is not a point".into()));
        }
        let g = x0.gcd(&x1);
        let (mut a, mut b) = (x0 / &g, x1 / &g);
        if a.is_negative() || (a.is_zero() && b.is_negative()) {
            a = -a;
            b = -b;
        }
        Ok(RationalPoint { x0: a, x1: b })
    }

    pub fn infinity() -> RationalPoint {
        RationalPoint {
            x0: BigInt::zero(),
            x1: BigInt::one(),
        }
    }

    pub fn from_rational(q: &BigRational) -> RationalPoint {
        RationalPoint {
            x0: q.denom().clone(),
            x1: q.numer().clone(),
        }
    }

    pub fn is_infinity(&self) -> bool {
        self.x0.is_zero()
    }

    pub fn value(&self) -> Option<BigRational> {
        (!self.is_infinity()).then(|| BigRational::new(self.x1.clone(), self.x0.clone()))
    }

    /// `max(|x₀|, |x₁|)`.
    pub fn height(&self) -> BigInt {
        self.x0.abs().max(self.x1.abs())
    }

    /// Primitive minimal polynomial `x₀t − x₁`, or `None` at infinity.
    pub fn minimal_polynomial(&self) -> Option<IntPoly> {
        (!self.is_infinity()).then(|| IntPoly::new(vec![-self.x1.clone(), self.x0.clone()]))
    }
}

impl std::fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.value() {
            None => write!(f, "infinity"),
            Some(v) => write!(f, "{v}"),
        }
    }
}

/// Every point of P¹(ℚ) of height at most `bound`, ordered by
/// `(height, x₀, x₁)`.
pub fn enumerate_rationals(bound: u64) -> Vec<RationalPoint> {
    let b = bound as i64;
    let mut out = Vec::new();
    if bound == 0 {
        return out;
    }
    out.push(RationalPoint::infinity());
    for q in 1..=b {
        for p in -b..=b {
            if p.gcd(&q) == 1 {
                out.push(RationalPoint {
                    x0: q.into(),
                    x1: p.into(),
                });
            }
        }
    }
    out.sort_by(|u, v| (u.height(), &u.x0, &u.x1).cmp(&(v.height(), &v.x0, &v.x1)));
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiCurve {
    /// `coeffs[i][j]` is the coefficient of `xⁱ yʲ`.
    coeffs: Vec<Vec<BigInt>>,
    a: usize,
    b: usize,
    /// A base point whose fiber is irreducible of full degree.
    certificate: RationalPoint,
}

impl BiCurve {
    /// Validates bidegree `≥ (1, 1)` and irreducibility over ℚ. The
    /// certificate is a fiber irreducible of degree `b` together with trivial
    /// content as a polynomial in `y` over ℚ[x].
    pub fn new(coeffs: Vec<Vec<BigInt>>) -> Result<BiCurve> {
        let a = coeffs
            .iter()
            .rposition(|row| row.iter().any(|c| !c.is_zero()))
            .ok_or_else(|| Error::InvalidCurve("F is zero".into()))?;
        let b = coeffs
            .iter()
            .filter_map(|row| row.iter().rposition(|c| !c.is_zero()))
            .max()
            .unwrap_or(0);
        if a == 0 || b == 0 {
            return Err(Error::InvalidCurve(format!(
                "bidegree ({a}, {b}) must be at least (1, 1)"
            )));
        }
        let mut table = vec![vec![BigInt::zero(); b + 1]; a + 1];
        for (i, row) in coeffs.iter().enumerate().take(a + 1) {
            for (j, c) in row.iter().enumerate().take(b + 1) {
                table[i][j] = c.clone();
            }
        }
        let mut curve = BiCurve {
            coeffs: table,
            a,
            b,
            certificate: RationalPoint::infinity(),
        };
        let content = (0..=b)
            .map(|j| IntPoly::new((0..=a).map(|i| curve.coeffs[i][j].clone()).collect()))
            .filter(|p| !p.is_zero())
            .fold(
                IntPoly::zero(),
                |g, p| if g.is_zero() { p } else { g.gcd(&p) },
            );
        if content.degree() > 0 {
            return Err(Error::InvalidCurve(format!(
                "F has the factor {content} in x alone"
            )));
        }
        for base in enumerate_rationals(64) {
            let g = curve.specialize(&base);
            if g.degree() == b && is_irreducible(&g) {
                curve.certificate = base;
                return Ok(curve);
            }
        }
        Err(Error::InvalidCurve(
            "no irreducible fiber of height ≤ 64; F is likely reducible".into(),
        ))
    }

    pub fn from_i64(coeffs: &[&[i64]]) -> Result<BiCurve> {
        BiCurve::new(
            coeffs
                .iter()
                .map(|r| r.iter().map(|&c| BigInt::from(c)).collect())
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[Vec<BigInt>] {
        &self.coeffs
    }

    /// `(a, b)`: degrees in `x` and `y`.
    pub fn bidegree(&self) -> (usize, usize) {
        (self.a, self.b)
    }

    /// Fiber size of the first projection.
    pub fn d1(&self) -> usize {
        self.b
    }

    pub fn d2(&self) -> usize {
        self.a
    }

    pub fn certificate(&self) -> &RationalPoint {
        &self.certificate
    }

    /// Arithmetic genus `(a − 1)(b − 1)`.
    pub fn arithmetic_genus(&self) -> usize {
        (self.a - 1) * (self.b - 1)
    }

    /// The same curve with the factors swapped.
    pub fn transpose(&self) -> BiCurve {
        let coeffs = (0..=self.b)
            .map(|j| (0..=self.a).map(|i| self.coeffs[i][j].clone()).collect())
            .collect();
        BiCurve {
            coeffs,
            a: self.b,
            b: self.a,
            certificate: RationalPoint::infinity(),
        }
    }

    /// `Σ_j (Σ_i c_ij x₁ⁱ x₀^{a−i}) yʲ`, the affine fiber polynomial.
    pub fn specialize(&self, x: &RationalPoint) -> IntPoly {
        let p_pows = powers(&x.x1, self.a);
        let q_pows = powers(&x.x0, self.a);
        let ys = (0..=self.b)
            .map(|j| {
                (0..=self.a)
                    .map(|i| &self.coeffs[i][j] * &p_pows[i] * &q_pows[self.a - i])
                    .sum()
            })
            .collect();
        IntPoly::new(ys)
    }
}

fn powers(x: &BigInt, n: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::one()];
    for k in 0..n {
        let next = &v[k] * x;
        v.push(next);
    }
    v
}

/// Second coordinate of an orbit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FiberPoint {
    /// Roots of a primitive irreducible polynomial.
    Finite(IntPoly),
    Infinity,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointOrbit {
    pub base: RationalPoint,
    pub y: FiberPoint,
    pub degree: usize,
    pub multiplicity: usize,
    /// `([ℚ(x):ℚ], [ℚ(y):ℚ])`.
    pub subfield_degrees: (usize, usize),
}

impl PointOrbit {
    pub fn x_minimal_polynomial(&self) -> Option<IntPoly> {
        self.base.minimal_polynomial()
    }

    pub fn y_minimal_polynomial(&self) -> Option<&IntPoly> {
        match &self.y {
            FiberPoint::Finite(h) => Some(h),
            FiberPoint::Infinity => None,
        }
    }

    /// `h(x) + h(y)`.
    pub fn height(&self, precision: u32) -> Result<Real> {
        let hx = match self.base.minimal_polynomial() {
            Some(m) => height_of_poly(&m, precision)?,
            None => Real::with_val(precision, 0),
        };
        let hy = match &self.y {
            FiberPoint::Finite(h) => height_of_poly(h, precision)?,
            FiberPoint::Infinity => Real::with_val(precision, 0),
        };
        Ok(hx + hy)
    }
}

/// Whole fiber over `x`, with each orbit's multiplicity. Degrees times
/// multiplicities always sum to `d₁`.
pub fn full_fiber(curve: &BiCurve, x: &RationalPoint) -> Result<Vec<PointOrbit>> {
    let g = curve.specialize(x);
    if g.is_zero() {
        return Err(Error::ZeroFiber(x.to_string()));
    }
    let mut out = Vec::new();
    for (h, m) in factor_over_rationals(&g).factors {
        let d = h.degree();
        out.push(PointOrbit {
            base: x.clone(),
            y: FiberPoint::Finite(h),
            degree: d,
            multiplicity: m,
            subfield_degrees: (1, d),
        });
    }
    let drop = curve.b - g.degree();
    if drop > 0 {
        out.push(PointOrbit {
            base: x.clone(),
            y: FiberPoint::Infinity,
            degree: 1,
            multiplicity: drop,
            subfield_degrees: (1, 1),
        });
    }
    let total: usize = out.iter().map(|o| o.degree * o.multiplicity).sum();
    if total != curve.b {
        return Err(Error::Degenerate(format!(
            "fiber over {x} accounts for {total} of {} points",
            curve.b
        )));
    }
    Ok(out)
}

/// Orbits of degree at most `ν` in the fiber over `x`.
pub fn fiber_points(curve: &BiCurve, x: &RationalPoint, nu: usize) -> Result<Vec<PointOrbit>> {
    Ok(full_fiber(curve, x)?
        .into_iter()
        .filter(|o| o.degree <= nu)
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TClass {
    T1,
    T2,
    T3,
}

/// `T1` if the first coordinate generates the point's field, else `T2` if
/// the second does, else `T3`.
pub fn classify_degrees(degree: usize, first: usize, second: usize) -> TClass {
    if first == degree {
        TClass::T1
    } else if second == degree {
        TClass::T2
    } else {
        TClass::T3
    }
}

pub fn classify_t(orbit: &PointOrbit) -> TClass {
    classify_degrees(
        orbit.degree,
        orbit.subfield_degrees.0,
        orbit.subfield_degrees.1,
    )
}

/// Whether every prime of `n` lies in `s`. Zero is never an S-unit.
fn is_s_unit(n: &BigInt, s: &[u64]) -> bool {
    if n.is_zero() {
        return false;
    }
    let mut m = n.abs();
    for &p in s {
        let p = BigInt::from(p);
        if p <= BigInt::one() {
            continue;
        }
        while (&m % &p).is_zero() {
            m /= &p;
        }
    }
    m.is_one()
}

/// S-integrality from a primitive integer minimal polynomial.
pub fn is_s_integral_poly(minpoly: &IntPoly, s: &[u64]) -> bool {
    is_s_unit(&minpoly.primitive_part().leading(), s)
}

pub fn is_s_integral(alpha: &AlgebraicNumber, s: &[u64]) -> bool {
    is_s_integral_poly(&alpha.minimal_polynomial(), s)
}

/// Support of `D` among the four coordinate lines.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DivisorSpec {
    #[serde(default)]
    pub x_infinity: bool,
    #[serde(default)]
    pub x_zero: bool,
    #[serde(default)]
    pub y_infinity: bool,
    #[serde(default)]
    pub y_zero: bool,
}

impl DivisorSpec {
    pub fn is_empty(&self) -> bool {
        !(self.x_infinity || self.x_zero || self.y_infinity || self.y_zero)
    }
}

fn is_t(h: &IntPoly) -> bool {
    h.degree() == 1 && h.coeff(0).is_zero()
}

/// Off `D`, with `x` (resp. `1/x`) S-integral when `x = ∞` (resp. `x = 0`)
/// is in `D`, and the same for `y`.
pub fn is_ds_integral(orbit: &PointOrbit, d: &DivisorSpec, s: &[u64]) -> bool {
    let x = &orbit.base;
    if (d.x_infinity && x.is_infinity()) || (d.x_zero && x.x1.is_zero()) {
        return false;
    }
    if d.x_infinity && !is_s_unit(&x.x0, s) {
        return false;
    }
    if d.x_zero && !is_s_unit(&x.x1, s) {
        return false;
    }
    match &orbit.y {
        FiberPoint::Infinity => !d.y_infinity,
        FiberPoint::Finite(h) => {
            if d.y_zero && is_t(h) {
                return false;
            }
            (!d.y_infinity || is_s_integral_poly(h, s))
                && (!d.y_zero || is_s_integral_poly(&h.reversed(), s))
        }
    }
}

/// Number of geometric points of `C` on `D`.
pub fn divisor_degree(curve: &BiCurve, d: &DivisorSpec) -> Result<usize> {
    let distinct = |orbits: &[PointOrbit], skip: &dyn Fn(&PointOrbit) -> bool| -> usize {
        orbits.iter().filter(|o| !skip(o)).map(|o| o.degree).sum()
    };
    let inf = RationalPoint::infinity();
    let zero = RationalPoint {
        x0: BigInt::one(),
        x1: BigInt::zero(),
    };
    let mut r = 0;
    if d.x_infinity {
        r += distinct(&full_fiber(curve, &inf)?, &|_| false);
    }
    if d.x_zero {
        r += distinct(&full_fiber(curve, &zero)?, &|_| false);
    }
    let t = curve.transpose();
    // on the transposed curve the "y" of an orbit is the original x
    let on_x_part = |o: &PointOrbit| match &o.y {
        FiberPoint::Infinity => d.x_infinity,
        FiberPoint::Finite(h) => d.x_zero && is_t(h),
    };
    if d.y_infinity {
        r += distinct(&full_fiber(&t, &inf)?, &on_x_part);
    }
    if d.y_zero {
        r += distinct(&full_fiber(&t, &zero)?, &on_x_part);
    }
    Ok(r)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CensusConfig {
    #[serde(default)]
    pub divisor: DivisorSpec,
    #[serde(default)]
    pub primes: Vec<u64>,
    pub nu: usize,
    pub ladder: Vec<u64>,
    #[serde(default = "default_precision")]
    pub precision: u32,
}

fn default_precision() -> u32 {
    64
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct BucketKey {
    pub degree: usize,
    /// `⌊h(P)⌋`.
    pub band: i64,
    pub integral: bool,
    pub class: TClass,
}

#[derive(Clone, Debug)]
pub struct FoundPoint {
    pub orbit: PointOrbit,
    pub class: TClass,
    pub integral: bool,
    pub height: Real,
}

impl FoundPoint {
    pub fn key(&self) -> BucketKey {
        let band = self.height.to_f64().floor() as i64;
        BucketKey {
            degree: self.orbit.degree,
            band,
            integral: self.integral,
            class: self.class,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusStep {
    pub bound: u64,
    pub fibers: usize,
    pub total: usize,
    pub integral: usize,
    /// `[|T1|, |T2|, |T3|]`.
    pub classes: [usize; 3],
    pub buckets: BTreeMap<BucketKey, usize>,
}

#[derive(Clone, Debug)]
pub struct Census {
    pub config: CensusConfig,
    pub search_cone: &'static str,
    pub r: usize,
    pub points: Vec<FoundPoint>,
    pub steps: Vec<CensusStep>,
    pub verdicts: Vec<Verdict>,
}

impl CensusStep {
    fn empty(bound: u64) -> Self {
        CensusStep {
            bound,
            fibers: 0,
            total: 0,
            integral: 0,
            classes: [0; 3],
            buckets: BTreeMap::new(),
        }
    }

    fn add(&mut self, p: &FoundPoint) {
        self.total += 1;
        self.integral += p.integral as usize;
        self.classes[p.class as usize] += 1;
        *self.buckets.entry(p.key()).or_insert(0) += 1;
    }
}

/// Searches every fiber over a base of height at most the top of the ladder
/// and counts cumulatively per rung.
pub fn census(curve: &BiCurve, config: &CensusConfig) -> Result<Census> {
    if config.nu == 0 {
        return Err(Error::InvalidSpec("ν must be at least 1".into()));
    }
    let mut ladder = config.ladder.clone();
    ladder.sort_unstable();
    ladder.dedup();
    let top = ladder.last().copied().unwrap_or(0);
    let bases = enumerate_rationals(top);
    let per_base: Vec<Result<Vec<FoundPoint>>> = bases
        .par_iter()
        .map(|x| {
            fiber_points(curve, x, config.nu)?
                .into_iter()
                .map(|o| {
                    Ok(FoundPoint {
                        class: classify_t(&o),
                        integral: is_ds_integral(&o, &config.divisor, &config.primes),
                        height: o.height(config.precision)?,
                        orbit: o,
                    })
                })
                .collect()
        })
        .collect();
    let mut points = Vec::new();
    let mut steps: Vec<CensusStep> = ladder.iter().map(|&b| CensusStep::empty(b)).collect();
    for (x, found) in bases.iter().zip(per_base) {
        let found = found?;
        let hx = x.height();
        for step in steps.iter_mut().filter(|s| hx <= BigInt::from(s.bound)) {
            step.fibers += 1;
            found.iter().for_each(|p| step.add(p));
        }
        points.extend(found);
    }
    let r = divisor_degree(curve, &config.divisor)?;
    let spec = CurveSpec::product(
        0,
        0,
        curve.d1() as u32,
        curve.d2() as u32,
        config.nu as u32,
        r as u32,
    );
    let mut verdicts = rule_table(&spec)?;
    for v in &mut verdicts {
        v.notes
            .push("genus and r taken from the embedded model".into());
    }
    Ok(Census {
        config: config.clone(),
        search_cone: SEARCH_CONE,
        r,
        points,
        steps,
        verdicts,
    })
}
