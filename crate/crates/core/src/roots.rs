//! Multiprecision complex numbers and simultaneous root finding.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use rug::float::Round;
use rug::ops::Pow;
use rug::{Float, Integer};

use crate::error::{Error, Result};
use crate::poly::IntPoly;

/// Multiprecision real; all archimedean quantities are carried in this type.
pub type Real = Float;

pub fn real(prec: u32, x: f64) -> Real {
    Float::with_val(prec, x)
}

pub fn real_from_bigint(prec: u32, x: &BigInt) -> Real {
    let i: Integer = x.to_string().parse().expect("decimal integer");
    Float::with_val(prec, i)
}

/// `log⁺|x| = max(0, log|x|)` helper for reals.
pub fn log_plus(x: &Real) -> Real {
    let a = x.clone().abs();
    if a <= 1 {
        Float::with_val(x.prec(), 0)
    } else {
        a.ln()
    }
}

#[derive(Clone, PartialEq)]
pub struct Complex {
    pub re: Real,
    pub im: Real,
}

impl Complex {
    pub fn new(re: Real, im: Real) -> Self {
        Complex { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        Complex {
            re: real(prec, 0.0),
            im: real(prec, 0.0),
        }
    }

    pub fn from_f64(prec: u32, re: f64, im: f64) -> Self {
        Complex {
            re: real(prec, re),
            im: real(prec, im),
        }
    }

    pub fn from_real(x: Real) -> Self {
        let p = x.prec();
        Complex {
            re: x,
            im: Float::with_val(p, 0),
        }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        Complex {
            re: Float::with_val(prec, &self.re),
            im: Float::with_val(prec, &self.im),
        }
    }

    pub fn add(&self, o: &Complex) -> Complex {
        let p = self.prec();
        Complex {
            re: Float::with_val(p, &self.re + &o.re),
            im: Float::with_val(p, &self.im + &o.im),
        }
    }

    pub fn sub(&self, o: &Complex) -> Complex {
        let p = self.prec();
        Complex {
            re: Float::with_val(p, &self.re - &o.re),
            im: Float::with_val(p, &self.im - &o.im),
        }
    }

    pub fn mul(&self, o: &Complex) -> Complex {
        let p = self.prec();
        let re = Float::with_val(p, &self.re * &o.re) - Float::with_val(p, &self.im * &o.im);
        let im = Float::with_val(p, &self.re * &o.im) + Float::with_val(p, &self.im * &o.re);
        Complex { re, im }
    }

    pub fn scale(&self, k: &Real) -> Complex {
        let p = self.prec();
        Complex {
            re: Float::with_val(p, &self.re * k),
            im: Float::with_val(p, &self.im * k),
        }
    }

    pub fn norm_sqr(&self) -> Real {
        let p = self.prec();
        Float::with_val(p, self.re.square_ref()) + Float::with_val(p, self.im.square_ref())
    }

    pub fn abs(&self) -> Real {
        let p = self.prec();
        Float::with_val(p, self.re.hypot_ref(&self.im))
    }

    pub fn ln_abs(&self) -> Real {
        self.abs().ln()
    }

    pub fn conj(&self) -> Complex {
        Complex {
            re: self.re.clone(),
            im: Float::with_val(self.prec(), -&self.im),
        }
    }

    pub fn neg(&self) -> Complex {
        let p = self.prec();
        Complex {
            re: Float::with_val(p, -&self.re),
            im: Float::with_val(p, -&self.im),
        }
    }

    pub fn recip(&self) -> Complex {
        let n = self.norm_sqr();
        let p = self.prec();
        Complex {
            re: Float::with_val(p, &self.re / &n),
            im: -Float::with_val(p, &self.im / &n),
        }
    }

    pub fn div(&self, o: &Complex) -> Complex {
        self.mul(&o.recip())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    /// Lattice key used for the deterministic root order: real and imaginary
    /// parts rounded to `bits` fractional bits.
    fn order_key(&self, bits: u32) -> (Integer, Integer) {
        let k = |x: &Real| {
            let scaled = Float::with_val(x.prec() + bits, x << bits);
            scaled
                .to_integer_round(Round::Nearest)
                .map(|(i, _)| i)
                .unwrap_or_default()
        };
        (k(&self.re), k(&self.im))
    }
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.to_f64();
        write!(f, "({re:e} {im:+e}i)")
    }
}

/// Horner evaluation of `f` and `f'` at `z`.
fn eval_with_derivative(coeffs: &[Complex], z: &Complex) -> (Complex, Complex) {
    let p = z.prec();
    let mut f = Complex::zero(p);
    let mut df = Complex::zero(p);
    for c in coeffs.iter().rev() {
        df = df.mul(z).add(&f);
        f = f.mul(z).add(c);
    }
    (f, df)
}

fn eval(coeffs: &[Complex], z: &Complex) -> Complex {
    let mut f = Complex::zero(z.prec());
    for c in coeffs.iter().rev() {
        f = f.mul(z).add(c);
    }
    f
}

/// `Σ |cᵢ|·max(1,|z|)ⁱ`, the scale against which residuals are judged.
fn residual_scale(coeffs: &[Complex], z: &Complex) -> Real {
    let p = z.prec();
    let r = z.abs().max(&Float::with_val(p, 1));
    let mut acc = Float::with_val(p, 0);
    for c in coeffs.iter().rev() {
        acc = acc * &r + c.abs();
    }
    acc
}

/// Aberth–Ehrlich iteration on complex coefficients (ascending order, nonzero
/// leading coefficient). Returns approximations at precision `work_prec`.
fn aberth(coeffs: &[Complex], work_prec: u32, target_bits: u32) -> Option<Vec<Complex>> {
    let n = coeffs.len() - 1;
    let lead = coeffs[n].abs();
    // Cauchy radius bound
    let mut radius = Float::with_val(work_prec, 0);
    for c in &coeffs[..n] {
        let q = Float::with_val(work_prec, c.abs() / &lead);
        if q > radius {
            radius = q;
        }
    }
    radius += 1;
    let start_r = Float::with_val(work_prec, &radius / 2) + 0.1f64;
    let pi = Float::with_val(work_prec, rug::float::Constant::Pi);
    let mut z: Vec<Complex> = (0..n)
        .map(|k| {
            let angle = Float::with_val(work_prec, &pi * 2u32) * (k as f64) / (n as f64) + 0.4f64;
            let (s, c) = angle.sin_cos(Float::new(work_prec));
            Complex::new(
                Float::with_val(work_prec, &start_r * &c),
                Float::with_val(work_prec, &start_r * &s),
            )
        })
        .collect();
    let tol_exp = -(target_bits as i32);
    for _ in 0..2000 {
        let mut max_rel = Float::with_val(work_prec, 0);
        for k in 0..n {
            let (f, df) = eval_with_derivative(coeffs, &z[k]);
            if f.is_zero() {
                continue;
            }
            let ratio = f.div(&df);
            let mut sum = Complex::zero(work_prec);
            for j in 0..n {
                if j != k {
                    let d = z[k].sub(&z[j]);
                    if d.is_zero() {
                        continue;
                    }
                    sum = sum.add(&d.recip());
                }
            }
            let one = Complex::from_f64(work_prec, 1.0, 0.0);
            let denom = one.sub(&ratio.mul(&sum));
            let w = if denom.is_zero() {
                ratio
            } else {
                ratio.div(&denom)
            };
            let scale = z[k].abs().max(&Float::with_val(work_prec, 1));
            let rel = Float::with_val(work_prec, w.abs() / &scale);
            if rel > max_rel {
                max_rel = rel;
            }
            z[k] = z[k].sub(&w);
        }
        if max_rel.is_zero() || max_rel.get_exp().is_some_and(|e| e < tol_exp) {
            return Some(z);
        }
    }
    None
}

fn describe(coeffs: &[Complex]) -> String {
    format!(
        "{:?}",
        coeffs.iter().map(Complex::to_f64).collect::<Vec<_>>()
    )
}

fn int_coeffs(f: &IntPoly, prec: u32) -> Vec<Complex> {
    f.coeffs()
        .iter()
        .map(|c| Complex::from_real(real_from_bigint(prec, c)))
        .collect()
}

fn sort_roots(roots: &mut [Complex], prec: u32) {
    let bits = (prec / 2).max(16);
    roots.sort_by(|a, b| {
        let (ka, kb) = (a.order_key(bits), b.order_key(bits));
        ka.cmp(&kb)
            .then_with(|| a.re.partial_cmp(&b.re).unwrap_or(Ordering::Equal))
    });
}

/// All complex roots of a squarefree integer polynomial, refined until
/// `|f(z)| ≤ 2^(-precision) · Σ|cᵢ||z|ⁱ`, conjugate-symmetric and sorted
/// lexicographically by (real, imaginary) part.
pub fn complex_roots(f: &IntPoly, precision: u32) -> Result<Vec<Complex>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.is_squarefree() {
        return Err(Error::NotSquarefree(f.to_string()));
    }
    if f.degree() == 0 {
        return Ok(Vec::new());
    }
    let work = precision + 64;
    let coeffs = int_coeffs(f, work);
    let not_converged = || Error::RootsDidNotConverge {
        poly: f.to_string(),
        precision,
    };
    let mut roots = aberth(&coeffs, work, precision + 32).ok_or_else(not_converged)?;
    symmetrize_conjugates(&mut roots, precision);
    for z in &roots {
        let res = eval(&coeffs, z).abs();
        let bound = residual_scale(&coeffs, z) >> precision;
        if res > bound {
            return Err(not_converged());
        }
    }
    let mut out: Vec<Complex> = roots.iter().map(|z| z.with_prec(precision)).collect();
    sort_roots(&mut out, precision);
    Ok(out)
}

/// Makes roots of a real polynomial exactly closed under conjugation: roots
/// with negligible imaginary part become real, the rest are paired.
fn symmetrize_conjugates(roots: &mut [Complex], precision: u32) {
    let half = (precision / 2) as i32;
    let n = roots.len();
    for z in roots.iter_mut() {
        let scale = z.abs().max(&Float::with_val(z.prec(), 1));
        let tiny = Float::with_val(z.prec(), z.im.clone().abs() / scale);
        if tiny.is_zero() || tiny.get_exp().is_some_and(|e| e < -half) {
            z.im = Float::with_val(z.prec(), 0);
        }
    }
    let mut used = vec![false; n];
    for i in 0..n {
        if used[i] || roots[i].im <= 0 {
            continue;
        }
        let target = roots[i].conj();
        let best = (0..n)
            .filter(|&j| !used[j] && j != i && roots[j].im < 0)
            .min_by(|&a, &b| {
                let da = roots[a].sub(&target).abs();
                let db = roots[b].sub(&target).abs();
                da.partial_cmp(&db).unwrap_or(Ordering::Equal)
            });
        if let Some(j) = best {
            used[i] = true;
            used[j] = true;
            roots[j] = target;
        }
    }
}

/// Roots with multiplicities of a polynomial with complex coefficients
/// (ascending, leading coefficient nonzero). Clusters of approximations within
/// `2^(-precision / (2·deg))` relative distance are merged; the cluster mean is
/// returned with the cluster size as multiplicity.
pub fn complex_roots_with_multiplicity(
    coeffs: &[Complex],
    precision: u32,
) -> Result<Vec<(Complex, usize)>> {
    let mut c = coeffs.to_vec();
    while c.last().is_some_and(Complex::is_zero) {
        c.pop();
    }
    if c.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    let n = c.len() - 1;
    if n == 0 {
        return Ok(Vec::new());
    }
    let work = precision + 64;
    let c: Vec<Complex> = c.iter().map(|x| x.with_prec(work)).collect();
    let err = || Error::RootsDidNotConverge {
        poly: describe(&c),
        precision,
    };
    let roots = aberth(&c, work, precision + 32)
        .or_else(|| aberth(&c, work, precision / 2))
        .ok_or_else(err)?;
    let cluster_bits = (precision / (2 * n as u32)).max(8) as i32;
    let mut groups: Vec<(Complex, usize)> = Vec::new();
    'outer: for z in roots {
        for (rep, count) in groups.iter_mut() {
            let scale = rep.abs().max(&Float::with_val(work, 1));
            let d = Float::with_val(work, rep.sub(&z).abs() / scale);
            if d.is_zero() || d.get_exp().is_some_and(|e| e < -cluster_bits) {
                let k = Float::with_val(work, *count as u32);
                let inv = Float::with_val(work, 1) / (k.clone() + 1u32);
                *rep = rep.scale(&k).add(&z).scale(&inv);
                *count += 1;
                continue 'outer;
            }
        }
        groups.push((z, 1));
    }
    let mut out: Vec<(Complex, usize)> = groups
        .into_iter()
        .map(|(z, m)| (z.with_prec(precision), m))
        .collect();
    out.sort_by(|a, b| {
        let bits = (precision / 2).max(16);
        a.0.order_key(bits).cmp(&b.0.order_key(bits))
    });
    Ok(out)
}

/// Exact `2^k` as a real at the given precision.
pub fn pow2(prec: u32, k: i32) -> Real {
    Float::with_val(prec, Float::with_val(prec, 2).pow(k))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn gaussian_roots() {
        let r = complex_roots(&p(&[1, 0, 1]), 128).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r[0].re.is_zero() && r[0].im == -1);
        assert!(r[1].re.is_zero() && r[1].im == 1);
    }

    #[test]
    fn sqrt2_roots() {
        let r = complex_roots(&p(&[-2, 0, 1]), 128).unwrap();
        let s = Float::with_val(128, 2).sqrt();
        assert!(Float::with_val(128, &r[1].re - &s).abs() < 1e-35);
        assert!(Float::with_val(128, &r[0].re + &s).abs() < 1e-35);
        assert!(r[0].im.is_zero() && r[1].im.is_zero());
    }

    #[test]
    fn cube_root_of_two_moduli() {
        let r = complex_roots(&p(&[-2, 0, 0, 1]), 128).unwrap();
        assert_eq!(r.len(), 3);
        for z in &r {
            let cube = Float::with_val(128, z.abs().pow(3u32));
            assert!(Float::with_val(128, cube - 2u32).abs() < 1e-30);
        }
        assert_eq!(r.iter().filter(|z| z.im.is_zero()).count(), 1);
        // conjugate pair is exact
        let c: Vec<_> = r.iter().filter(|z| !z.im.is_zero()).collect();
        assert_eq!(c[0].conj(), *c[1]);
    }

    #[test]
    fn rejects_repeated_roots() {
        assert!(matches!(
            complex_roots(&p(&[1, 2, 1]), 64),
            Err(Error::NotSquarefree(_))
        ));
    }

    #[test]
    fn multiplicities_of_complex_polynomial() {
        // z^2 (z - 1)
        let c: Vec<Complex> = [0.0, 0.0, -1.0, 1.0]
            .iter()
            .map(|&x| Complex::from_f64(128, x, 0.0))
            .collect();
        let r = complex_roots_with_multiplicity(&c, 128).unwrap();
        assert_eq!(r.len(), 2);
        assert_eq!(r.iter().map(|x| x.1).sum::<usize>(), 3);
        assert!(r.iter().any(|(z, m)| *m == 2 && z.abs() < 1e-15));
    }
}
