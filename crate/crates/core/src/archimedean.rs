//! Weil functions for the diagonal of the projective line, pairwise Green
//! sums over conjugates, arithmetic discriminants of algebraic integers and
//! numerical residual checks for the distribution relation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{compositum, AlgebraicNumber, NumberField};
use crate::height::height_of_poly;
use crate::orders::{d_ar, Order};
use crate::poly::IntPoly;
use crate::roots::{
    complex_roots, complex_roots_with_multiplicity, log_plus, real_from_bigint, Complex, Real,
};

/// A point of the complex projective line.
#[derive(Clone, Debug, PartialEq)]
pub enum ProjPoint {
    Finite(Complex),
    Infinity,
}

impl ProjPoint {
    pub fn from_f64(prec: u32, re: f64, im: f64) -> ProjPoint {
        ProjPoint::Finite(Complex::from_f64(prec, re, im))
    }

    /// The other affine chart, `z ↦ 1/z`.
    pub fn swap_chart(&self, prec: u32) -> ProjPoint {
        match self {
            ProjPoint::Infinity => ProjPoint::Finite(Complex::zero(prec)),
            ProjPoint::Finite(z) if z.is_zero() => ProjPoint::Infinity,
            ProjPoint::Finite(z) => ProjPoint::Finite(z.recip()),
        }
    }
}

/// `λ(p, q) = −log|p − q| + log⁺|p| + log⁺|q|`, with `λ(p, ∞) = log⁺|p|`.
pub fn lambda_p1(p: &ProjPoint, q: &ProjPoint) -> Result<Real> {
    match (p, q) {
        (ProjPoint::Infinity, ProjPoint::Infinity) => Err(Error::Pole("λ(∞, ∞)".into())),
        (ProjPoint::Finite(z), ProjPoint::Infinity)
        | (ProjPoint::Infinity, ProjPoint::Finite(z)) => Ok(log_plus(&z.abs())),
        (ProjPoint::Finite(a), ProjPoint::Finite(b)) => {
            let d = a.sub(b);
            if d.is_zero() {
                return Err(Error::Pole(format!("λ(p, p) at {:?}", a.to_f64())));
            }
            Ok(-d.ln_abs() + log_plus(&a.abs()) + log_plus(&b.abs()))
        }
    }
}

fn lambda_c(a: &Complex, b: &Complex) -> Result<Real> {
    lambda_p1(&ProjPoint::Finite(a.clone()), &ProjPoint::Finite(b.clone()))
}

/// The complex conjugates of an algebraic point at the single archimedean
/// place of ℚ.
#[derive(Clone, Debug)]
pub struct ConjugateSet {
    pub points: Vec<Complex>,
    pub source_poly: IntPoly,
}

impl ConjugateSet {
    pub fn new(f: &IntPoly, precision: u32) -> Result<ConjugateSet> {
        Ok(ConjugateSet {
            points: complex_roots(f, precision)?,
            source_poly: f.clone(),
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn precision(&self) -> u32 {
        self.points.first().map_or(53, Complex::prec)
    }
}

/// Sum in a canonical order so the result does not depend on the order in
/// which the terms were produced.
fn canonical_sum(mut terms: Vec<Real>, prec: u32) -> Real {
    terms.sort_by(|a, b| a.partial_cmp(b).expect("finite terms"));
    terms
        .into_iter()
        .fold(Real::with_val(prec, 0), |acc, t| acc + t)
}

/// `Σ_{i≠j} λ(zᵢ, zⱼ)` over ordered pairs.
pub fn pairwise_green_sum(points: &[Complex]) -> Result<Real> {
    let prec = points.first().map_or(53, Complex::prec);
    let mut terms = Vec::with_capacity(points.len() * points.len());
    for (i, a) in points.iter().enumerate() {
        for (j, b) in points.iter().enumerate() {
            if i != j {
                terms.push(
                    lambda_c(a, b)
                        .map_err(|_| Error::NotSquarefree("repeated conjugate".into()))?,
                );
            }
        }
    }
    Ok(canonical_sum(terms, prec))
}

#[derive(Clone, Debug)]
pub struct ArithmeticDiscriminant {
    pub degree: usize,
    pub minimal_polynomial: IntPoly,
    /// `log[ℤ[α] : 𝒟] / n`.
    pub finite_part: Real,
    /// `(1/n) Σ_{i≠j} λ(αᵢ, αⱼ)`.
    pub archimedean_part: Real,
    pub total: Real,
}

/// `d_a` of the closure of an algebraic integer in the arithmetic projective
/// line, split as finite plus archimedean part.
pub fn arithmetic_discriminant_p1(
    alpha: &AlgebraicNumber,
    precision: u32,
) -> Result<ArithmeticDiscriminant> {
    arithmetic_discriminant_of_poly(&alpha.minimal_polynomial(), precision)
}

/// Same, from the minimal polynomial.
pub fn arithmetic_discriminant_of_poly(
    f: &IntPoly,
    precision: u32,
) -> Result<ArithmeticDiscriminant> {
    if !f.is_monic() {
        return Err(Error::NotIntegral(format!(
            "minimal polynomial {f} is not monic"
        )));
    }
    let n = f.degree();
    let zero = Real::with_val(precision, 0);
    if n == 1 {
        return Ok(ArithmeticDiscriminant {
            degree: 1,
            minimal_polynomial: f.clone(),
            finite_part: zero.clone(),
            archimedean_part: zero.clone(),
            total: zero,
        });
    }
    let field = NumberField::new(f.clone())?;
    let finite_part = d_ar(&Order::equation_order(&field), precision);
    let conj = ConjugateSet::new(f, precision)?;
    let archimedean_part = pairwise_green_sum(&conj.points)? / n as u32;
    let total = Real::with_val(precision, &finite_part + &archimedean_part);
    Ok(ArithmeticDiscriminant {
        degree: n,
        minimal_polynomial: f.clone(),
        finite_part,
        archimedean_part,
        total,
    })
}

/// A self-map of the projective line `num/den`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMap {
    pub numerator: IntPoly,
    pub denominator: IntPoly,
}

impl RationalMap {
    pub fn new(numerator: IntPoly, denominator: IntPoly) -> Result<RationalMap> {
        if numerator.is_zero() || denominator.is_zero() {
            return Err(Error::Degenerate("rational map with a zero part".into()));
        }
        if numerator.gcd(&denominator).degree() > 0 {
            return Err(Error::Degenerate(format!(
                "({numerator})/({denominator}) is not in lowest terms"
            )));
        }
        let m = RationalMap {
            numerator,
            denominator,
        };
        if m.degree() == 0 {
            return Err(Error::Degenerate("constant map".into()));
        }
        Ok(m)
    }

    /// `x ↦ xᵈ`.
    pub fn power(d: usize) -> RationalMap {
        RationalMap::new(IntPoly::monomial(1.into(), d), IntPoly::one()).expect("d ≥ 1")
    }

    pub fn degree(&self) -> usize {
        self.numerator.degree().max(self.denominator.degree())
    }

    fn eval_poly(p: &IntPoly, z: &Complex) -> Complex {
        let prec = z.prec();
        p.coeffs().iter().rev().fold(Complex::zero(prec), |acc, c| {
            acc.mul(z)
                .add(&Complex::from_real(real_from_bigint(prec, c)))
        })
    }

    pub fn eval(&self, p: &ProjPoint, prec: u32) -> ProjPoint {
        match p {
            ProjPoint::Infinity => {
                let (dn, dd) = (self.numerator.degree(), self.denominator.degree());
                if dn > dd {
                    ProjPoint::Infinity
                } else if dn < dd {
                    ProjPoint::Finite(Complex::zero(prec))
                } else {
                    let q = real_from_bigint(prec, &self.numerator.leading())
                        / real_from_bigint(prec, &self.denominator.leading());
                    ProjPoint::Finite(Complex::from_real(q))
                }
            }
            ProjPoint::Finite(z) => {
                let den = Self::eval_poly(&self.denominator, z);
                if den.is_zero() {
                    ProjPoint::Infinity
                } else {
                    ProjPoint::Finite(Self::eval_poly(&self.numerator, z).div(&den))
                }
            }
        }
    }

    /// `φ⁻¹(q)` with ramification indices; the indices sum to `deg φ`.
    pub fn fiber(&self, q: &ProjPoint, prec: u32) -> Result<Vec<(ProjPoint, usize)>> {
        let d = self.degree();
        let to_c = |p: &IntPoly| -> Vec<Complex> {
            p.coeffs()
                .iter()
                .map(|c| Complex::from_real(real_from_bigint(prec, c)))
                .collect()
        };
        let coeffs: Vec<Complex> = match q {
            ProjPoint::Infinity => to_c(&self.denominator),
            ProjPoint::Finite(w) => {
                let (n, m) = (to_c(&self.numerator), to_c(&self.denominator));
                (0..=d)
                    .map(|i| {
                        let a = n.get(i).cloned().unwrap_or_else(|| Complex::zero(prec));
                        let b = m.get(i).cloned().unwrap_or_else(|| Complex::zero(prec));
                        a.sub(&b.mul(w))
                    })
                    .collect()
            }
        };
        let mut out: Vec<(ProjPoint, usize)> = complex_roots_with_multiplicity(&coeffs, prec)?
            .into_iter()
            .map(|(z, m)| (ProjPoint::Finite(z), m))
            .collect();
        let finite: usize = out.iter().map(|(_, m)| m).sum();
        if finite < d {
            out.push((ProjPoint::Infinity, d - finite));
        }
        Ok(out)
    }
}

/// `λ(φ(P), q) − Σ_{Q ∈ φ⁻¹(q)} e(Q/q)·λ(P, Q)`.
pub fn distribution_check(
    phi: &RationalMap,
    p: &ProjPoint,
    q: &ProjPoint,
    prec: u32,
) -> Result<Real> {
    let lhs = lambda_p1(&phi.eval(p, prec), q)?;
    let mut terms = Vec::new();
    for (pt, e) in phi.fiber(q, prec)? {
        terms.push(lambda_p1(p, &pt)? * e as u32);
    }
    Ok(lhs - canonical_sum(terms, prec))
}

#[derive(Clone, Debug)]
pub struct DistributionSuite {
    pub degree: usize,
    pub grid_sup: f64,
    pub fresh_sup: f64,
    pub samples: usize,
    pub skipped: usize,
}

impl DistributionSuite {
    pub fn excess(&self) -> f64 {
        self.fresh_sup - self.grid_sup
    }
}

fn sample_point(rng: &mut ChaCha8Rng, prec: u32) -> ProjPoint {
    let r = (rng.gen_range(-3.0f64..3.0)).exp();
    let t = rng.gen_range(0.0..std::f64::consts::TAU);
    ProjPoint::from_f64(prec, r * t.cos(), r * t.sin())
}

fn grid_points(k: usize, prec: u32) -> Vec<ProjPoint> {
    // log-polar grid, k points
    let side = (k as f64).sqrt().round() as usize;
    let mut out = Vec::with_capacity(side * side);
    for i in 0..side {
        let r = (-3.0 + 6.0 * (i as f64 + 0.5) / side as f64).exp();
        for j in 0..side {
            let t = std::f64::consts::TAU * (j as f64 + 0.37) / side as f64;
            out.push(ProjPoint::from_f64(prec, r * t.cos(), r * t.sin()));
        }
    }
    out
}

/// Sup of `|residual|` on a `grid × grid` calibration set of `(P, q)` pairs
/// and on `fresh` seeded random pairs.
pub fn distribution_suite(
    phi: &RationalMap,
    grid: usize,
    fresh: usize,
    seed: u64,
    prec: u32,
) -> DistributionSuite {
    let pts = grid_points(grid, prec);
    let pairs: Vec<(ProjPoint, ProjPoint)> = pts
        .iter()
        .flat_map(|p| pts.iter().map(move |q| (p.clone(), q.clone())))
        .collect();
    let eval = |(p, q): &(ProjPoint, ProjPoint)| -> Option<f64> {
        distribution_check(phi, p, q, prec)
            .ok()
            .map(|r| r.to_f64().abs())
    };
    let grid_vals: Vec<Option<f64>> = pairs.par_iter().map(eval).collect();
    let fresh_pairs: Vec<(ProjPoint, ProjPoint)> = (0..fresh)
        .map(|i| {
            let mut rng =
                ChaCha8Rng::seed_from_u64(seed ^ (i as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
            (sample_point(&mut rng, prec), sample_point(&mut rng, prec))
        })
        .collect();
    let fresh_vals: Vec<Option<f64>> = fresh_pairs.par_iter().map(eval).collect();
    let skipped = grid_vals
        .iter()
        .chain(&fresh_vals)
        .filter(|v| v.is_none())
        .count();
    let sup = |v: &[Option<f64>]| v.iter().flatten().fold(0.0f64, |a, &b| a.max(b));
    DistributionSuite {
        degree: phi.degree(),
        grid_sup: sup(&grid_vals),
        fresh_sup: sup(&fresh_vals),
        samples: grid_vals.len() + fresh_vals.len(),
        skipped,
    }
}

#[derive(Clone, Debug)]
pub struct CompositumGreenReport {
    pub lhs: Real,
    pub rhs: Real,
    pub residual: Real,
    /// Sizes of the fibers of `E₃ → E₁` and `E₃ → E₂` (constant).
    pub fiber_sizes: (usize, usize),
}

fn min_opt(a: Option<Real>, b: Option<Real>) -> Real {
    match (a, b) {
        (Some(x), Some(y)) => x.min(&y),
        (Some(x), None) | (None, Some(x)) => x,
        (None, None) => unreachable!("distinct points differ in some coordinate"),
    }
}

/// Normalized pairwise sums on `E₃ ⊂ E₁ × E₂` (given as index pairs into the
/// two conjugate sets) against those on `E₁` and `E₂`, with the product Weil
/// function `min(λ(a, c), λ(b, d))`.
pub fn compositum_green_check(
    e1: &ConjugateSet,
    e2: &ConjugateSet,
    e3: &[(usize, usize)],
) -> Result<CompositumGreenReport> {
    let prec = e1.precision();
    let n3 = e3.len();
    for (i, p) in e3.iter().enumerate() {
        if p.0 >= e1.len() || p.1 >= e2.len() {
            return Err(Error::Degenerate("index outside the conjugate sets".into()));
        }
        if e3[..i].contains(p) {
            return Err(Error::Degenerate(
                "two points of E₃ share both coordinates".into(),
            ));
        }
    }
    let mut c1 = vec![0usize; e1.len()];
    let mut c2 = vec![0usize; e2.len()];
    for &(a, b) in e3 {
        c1[a] += 1;
        c2[b] += 1;
    }
    if c1.iter().any(|&c| c != c1[0]) || c2.iter().any(|&c| c != c2[0]) || c1[0] == 0 || c2[0] == 0
    {
        return Err(Error::Degenerate(
            "projections are not surjective with constant fibers".into(),
        ));
    }
    let mut terms = Vec::new();
    for &(a, b) in e3 {
        for &(c, d) in e3 {
            if (a, b) == (c, d) {
                continue;
            }
            let l1 = (a != c)
                .then(|| lambda_c(&e1.points[a], &e1.points[c]))
                .transpose()?;
            let l2 = (b != d)
                .then(|| lambda_c(&e2.points[b], &e2.points[d]))
                .transpose()?;
            terms.push(min_opt(l1, l2));
        }
    }
    let lhs = canonical_sum(terms, prec) / n3 as u32;
    let s1 = pairwise_green_sum(&e1.points)? / e1.len() as u32;
    let s2 = pairwise_green_sum(&e2.points)? / e2.len() as u32;
    let rhs = s1 + s2;
    let residual = Real::with_val(prec, &lhs - &rhs);
    Ok(CompositumGreenReport {
        lhs,
        rhs,
        residual,
        fiber_sizes: (c1[0], c2[0]),
    })
}

/// Conjugates of `(α, β)` in `ℚ(α, β)` matched against the roots of `f` and
/// `g`, then [`compositum_green_check`].
pub fn compositum_green_from_polys(
    f: &IntPoly,
    g: &IntPoly,
    precision: u32,
) -> Result<CompositumGreenReport> {
    let comp = compositum(f, g)?;
    let e1 = ConjugateSet::new(f, precision)?;
    let e2 = ConjugateSet::new(g, precision)?;
    let nearest = |set: &ConjugateSet, z: &Complex| -> usize {
        (0..set.len())
            .min_by(|&i, &j| {
                let di = set.points[i].sub(z).abs();
                let dj = set.points[j].sub(z).abs();
                di.partial_cmp(&dj).expect("finite distances")
            })
            .expect("nonempty conjugate set")
    };
    let e3: Vec<(usize, usize)> = comp
        .field
        .embeddings(precision)?
        .iter()
        .map(|z| {
            (
                nearest(&e1, &comp.alpha.embed(z)),
                nearest(&e2, &comp.beta.embed(z)),
            )
        })
        .collect();
    compositum_green_check(&e1, &e2, &e3)
}

/// `(2n + ε − 2)·h(α) − d_a(α) + C·n`, the slack in the curve estimate for
/// the projective line (`h_K = −2h`).
pub fn height_bound_slack(alpha_poly: &IntPoly, eps: f64, c: f64, precision: u32) -> Result<Real> {
    let n = alpha_poly.degree();
    let h = height_of_poly(alpha_poly, precision)?;
    let da = arithmetic_discriminant_of_poly(alpha_poly, precision)?.total;
    let coef = Real::with_val(precision, 2 * n as i64 - 2) + eps;
    Ok(coef * h - da + Real::with_val(precision, c * n as f64))
}

/// Least `C ≥ 0` making the slack nonnegative on every sample.
pub fn fit_height_bound_constant(samples: &[IntPoly], eps: f64, precision: u32) -> Result<f64> {
    let mut c = 0.0f64;
    for f in samples {
        let s = height_bound_slack(f, eps, 0.0, precision)?;
        if s < 0 {
            c = c.max((-s / f.degree() as u32).to_f64());
        }
    }
    Ok(c)
}

/// `d_a(α + m) − d_a(α)` as predicted from the log⁺ terms alone:
/// `(2(n−1)/n)·Σ (log⁺|αᵢ + m| − log⁺|αᵢ|)`.
pub fn translation_shift(f: &IntPoly, m: i64, precision: u32) -> Result<Real> {
    let n = f.degree();
    let roots = complex_roots(f, precision)?;
    let shift = Complex::from_f64(precision, m as f64, 0.0);
    let mut acc = Real::with_val(precision, 0);
    for z in &roots {
        acc += log_plus(&z.add(&shift).abs()) - log_plus(&z.abs());
    }
    if acc.is_zero() {
        return Ok(acc);
    }
    Ok(acc * (2 * (n as u32 - 1)) / n as u32)
}

#[cfg(test)]
mod tests {
    use super::*;

    const PREC: u32 = 128;

    fn fp(re: f64, im: f64) -> ProjPoint {
        ProjPoint::from_f64(PREC, re, im)
    }

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn lambda_spot_values() {
        assert!(lambda_p1(&fp(0.0, 0.0), &fp(1.0, 0.0)).unwrap().is_zero());
        let l = lambda_p1(&fp(2.0, 0.0), &fp(3.0, 0.0)).unwrap().to_f64();
        assert!((l - 6f64.ln()).abs() < 1e-15);
        let l = lambda_p1(&fp(0.0, 1.0), &fp(0.0, -1.0)).unwrap().to_f64();
        assert!((l + 2f64.ln()).abs() < 1e-15);
        assert!(lambda_p1(&fp(1.0, 0.0), &fp(1.0, 0.0)).is_err());
        assert!(lambda_p1(&ProjPoint::Infinity, &ProjPoint::Infinity).is_err());
    }

    #[test]
    fn chart_swap_invariance() {
        let (a, b) = (fp(0.3, -2.0), fp(1.5, 0.25));
        let l = lambda_p1(&a, &b).unwrap();
        let s = lambda_p1(&a.swap_chart(PREC), &b.swap_chart(PREC)).unwrap();
        assert!((l - s).abs().to_f64() < 1e-30);
        let l = lambda_p1(&fp(0.0, 0.0), &fp(3.0, 0.0)).unwrap();
        let s = lambda_p1(&ProjPoint::Infinity, &fp(3.0, 0.0).swap_chart(PREC)).unwrap();
        assert!((l - s).abs().to_f64() < 1e-30);
    }

    #[test]
    fn discriminant_spot_values() {
        let da = arithmetic_discriminant_of_poly(&p(&[1, 0, 1]), PREC).unwrap();
        assert!(da.total.to_f64().abs() < 1e-30);
        let da = arithmetic_discriminant_of_poly(&p(&[-2, 0, 1]), PREC).unwrap();
        assert!((da.total.to_f64() - 2f64.ln()).abs() < 1e-15);
        let da = arithmetic_discriminant_of_poly(&p(&[-7, 1]), PREC).unwrap();
        assert!(da.total.is_zero());
        assert!(arithmetic_discriminant_of_poly(&p(&[1, 0, 2]), PREC).is_err());
    }

    #[test]
    fn green_sums() {
        let s =
            pairwise_green_sum(&ConjugateSet::new(&p(&[1, 0, 1]), PREC).unwrap().points).unwrap();
        assert!((s.to_f64() + 2.0 * 2f64.ln()).abs() < 1e-15);
        let s =
            pairwise_green_sum(&ConjugateSet::new(&p(&[-2, 0, 1]), PREC).unwrap().points).unwrap();
        assert!((s.to_f64() + 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn distribution_worked_case() {
        let phi = RationalMap::power(2);
        let r = distribution_check(&phi, &fp(2.0, 0.0), &fp(9.0, 0.0), PREC).unwrap();
        assert!(r.to_f64().abs() < 1e-30);
        let id = RationalMap::power(1);
        let r = distribution_check(&id, &fp(0.5, 0.7), &fp(-3.0, 0.0), PREC).unwrap();
        assert!(r.to_f64().abs() < 1e-30);
        let q = RationalMap::power(2);
        let r = distribution_check(&q, &fp(1.0 / 3.0, 0.0), &fp(0.25, 0.0), PREC).unwrap();
        assert!(r.to_f64().abs() < 1e-20);
    }

    #[test]
    fn fiber_at_critical_values() {
        let phi = RationalMap::power(3);
        let f = phi.fiber(&fp(0.0, 0.0), PREC).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].1, 3);
        let f = phi.fiber(&ProjPoint::Infinity, PREC).unwrap();
        assert_eq!(f, vec![(ProjPoint::Infinity, 3)]);
    }

    #[test]
    fn compositum_green_i_sqrt2() {
        let rep = compositum_green_from_polys(&p(&[1, 0, 1]), &p(&[-2, 0, 1]), PREC).unwrap();
        let l2 = 2f64.ln();
        assert!((rep.lhs.to_f64() + 2.5 * l2).abs() < 1e-15);
        assert!((rep.rhs.to_f64() + 1.5 * l2).abs() < 1e-15);
        assert!((rep.residual.to_f64() + l2).abs() < 1e-15);
        assert_eq!(rep.fiber_sizes, (2, 2));
    }

    #[test]
    fn slack_values() {
        let s = height_bound_slack(&p(&[1, 0, 1]), 0.5, 0.25, PREC).unwrap();
        assert!((s.to_f64() - 0.5).abs() < 1e-15);
        // (2n + ε − 2)·h(√2) − log 2 + 2C with h(√2) = log(2)/2
        let s = height_bound_slack(&p(&[-2, 0, 1]), 0.5, 0.25, PREC)
            .unwrap()
            .to_f64();
        let l2 = 2f64.ln();
        assert!((s - (2.5 * l2 / 2.0 - l2 + 0.5)).abs() < 1e-15);
    }

    #[test]
    fn translation_moves_da_by_log_plus_terms() {
        let f = p(&[1, 0, 1]);
        let g = f.compose(&p(&[-1, 1])); // roots 1 ± i
        let a = arithmetic_discriminant_of_poly(&f, PREC).unwrap().total;
        let b = arithmetic_discriminant_of_poly(&g, PREC).unwrap().total;
        let shift = translation_shift(&f, 1, PREC).unwrap();
        assert!((b - a - shift).abs().to_f64() < 1e-30);
    }
}
