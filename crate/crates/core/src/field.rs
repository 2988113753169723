//! Number fields ℚ[x]/(f) and exact arithmetic on their elements.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::factor::{irreducible_factors, is_irreducible};
use crate::linalg::{charpoly_int, rat_inverse, rat_vec_mat, IntMatrix, RatMatrix};
use crate::poly::{IntPoly, RatPoly};
use crate::roots::{complex_roots, Complex};

/// A number field presented by a monic irreducible integer polynomial.
/// Elements are rational coordinate vectors in the power basis `1, θ, …, θⁿ⁻¹`.
#[derive(PartialEq, Eq)]
pub struct NumberField {
    poly: IntPoly,
    degree: usize,
    /// Power-basis coordinates of `θᵏ` for `k < 3n`.
    powers: Vec<Vec<BigInt>>,
    /// Gram matrix `Tr(θ^(i+j))` of the power basis.
    trace_form: IntMatrix,
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NumberField({})", self.poly)
    }
}

impl NumberField {
    pub fn new(poly: IntPoly) -> Result<Arc<NumberField>> {
        if poly.degree() == 0 {
            return Err(Error::Degenerate(
                "field polynomial must have positive degree".into(),
            ));
        }
        if !poly.is_monic() {
            return Err(Error::NotMonic(poly.to_string()));
        }
        if !is_irreducible(&poly) {
            return Err(Error::Reducible(poly.to_string()));
        }
        Ok(Self::new_unchecked(poly))
    }

    /// Skips the irreducibility test; the caller guarantees it.
    pub(crate) fn new_unchecked(poly: IntPoly) -> Arc<NumberField> {
        let n = poly.degree();
        let mut powers: Vec<Vec<BigInt>> = Vec::with_capacity(3 * n);
        let mut cur = vec![BigInt::zero(); n];
        cur[0] = BigInt::one();
        for _ in 0..3 * n {
            powers.push(cur.clone());
            // multiply by θ: shift up and reduce θⁿ = -Σ fₖ θᵏ
            let top = cur[n - 1].clone();
            let mut next = vec![BigInt::zero(); n];
            for k in (1..n).rev() {
                next[k] = cur[k - 1].clone();
            }
            for (k, nk) in next.iter_mut().enumerate() {
                *nk -= &top * poly.coeff(k);
            }
            cur = next;
        }
        let traces: Vec<BigInt> = (0..2 * n)
            .map(|k| (0..n).map(|i| powers[k + i][i].clone()).sum())
            .collect();
        let trace_form = (0..n)
            .map(|i| (0..n).map(|j| traces[i + j].clone()).collect())
            .collect();
        Arc::new(NumberField {
            poly,
            degree: n,
            powers,
            trace_form,
        })
    }

    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn trace_form(&self) -> &IntMatrix {
        &self.trace_form
    }

    pub fn discriminant(&self) -> BigInt {
        self.poly.discriminant()
    }

    /// Complex embeddings `θ ↦ zᵢ`, in the canonical root order.
    pub fn embeddings(&self, precision: u32) -> Result<Vec<Complex>> {
        complex_roots(&self.poly, precision)
    }

    /// Product of two coordinate vectors.
    pub fn mul_coords(&self, a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let n = self.degree;
        let mut prod = vec![BigRational::zero(); 2 * n - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        let mut out = vec![BigRational::zero(); n];
        for (k, c) in prod.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k < n {
                out[k] += c;
            } else {
                for (i, p) in self.powers[k].iter().enumerate() {
                    if !p.is_zero() {
                        out[i] += &c * BigRational::from_integer(p.clone());
                    }
                }
            }
        }
        out
    }

    /// `Tr(a)` for a coordinate vector.
    pub fn trace_coords(&self, a: &[BigRational]) -> BigRational {
        a.iter()
            .enumerate()
            .fold(BigRational::zero(), |acc, (i, x)| {
                acc + x * BigRational::from_integer(self.trace_form[0][i].clone())
            })
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraicNumber {
    field: Arc<NumberField>,
    coords: Vec<BigRational>,
}

impl fmt::Debug for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coords.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}] in {:?}", c.join(", "), self.field)
    }
}

impl AlgebraicNumber {
    pub fn new(field: &Arc<NumberField>, coords: Vec<BigRational>) -> Self {
        assert_eq!(
            coords.len(),
            field.degree(),
            "coordinate vector has the wrong length"
        );
        AlgebraicNumber {
            field: field.clone(),
            coords,
        }
    }

    pub fn from_ints(field: &Arc<NumberField>, coords: &[i64]) -> Self {
        let mut c: Vec<BigRational> = coords
            .iter()
            .map(|&x| BigRational::from_integer(x.into()))
            .collect();
        c.resize(field.degree(), BigRational::zero());
        Self::new(field, c)
    }

    pub fn rational(field: &Arc<NumberField>, q: BigRational) -> Self {
        let mut c = vec![BigRational::zero(); field.degree()];
        c[0] = q;
        Self::new(field, c)
    }

    pub fn zero(field: &Arc<NumberField>) -> Self {
        Self::rational(field, BigRational::zero())
    }

    pub fn one(field: &Arc<NumberField>) -> Self {
        Self::rational(field, BigRational::one())
    }

    /// The generator θ.
    pub fn generator(field: &Arc<NumberField>) -> Self {
        if field.degree() == 1 {
            // θ is the rational root of x - a
            return Self::rational(field, BigRational::from_integer(-field.poly().coeff(0)));
        }
        let mut c = vec![BigRational::zero(); field.degree()];
        c[1] = BigRational::one();
        Self::new(field, c)
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(
            &self.field,
            self.coords
                .iter()
                .zip(&o.coords)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(
            &self.field,
            self.coords
                .iter()
                .zip(&o.coords)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        Self::new(&self.field, self.coords.iter().map(|a| -a).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(&self.field, self.field.mul_coords(&self.coords, &o.coords))
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Self::new(&self.field, self.coords.iter().map(|a| a * q).collect())
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut r = Self::one(&self.field);
        let mut b = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        r
    }

    /// Matrix of multiplication by `self`: row `i` holds the coordinates of
    /// `self·θⁱ`.
    pub fn mult_matrix(&self) -> RatMatrix {
        let n = self.field.degree();
        (0..n)
            .map(|i| {
                let mut e = vec![BigRational::zero(); n];
                e[i] = BigRational::one();
                self.field.mul_coords(&self.coords, &e)
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let inv = rat_inverse(&self.mult_matrix())?;
        let mut e0 = vec![BigRational::zero(); self.field.degree()];
        e0[0] = BigRational::one();
        Some(Self::new(&self.field, rat_vec_mat(&e0, &inv)))
    }

    pub fn trace(&self) -> BigRational {
        self.field.trace_coords(&self.coords)
    }

    pub fn norm(&self) -> BigRational {
        crate::linalg::rat_det(&self.mult_matrix())
    }

    pub fn charpoly(&self) -> RatPoly {
        crate::linalg::charpoly_rat(&self.mult_matrix())
    }

    /// Primitive integer minimal polynomial with positive leading coefficient.
    pub fn minimal_polynomial(&self) -> IntPoly {
        let cp = self.charpoly();
        let g = cp.gcd(&cp.derivative());
        let (sqfree, _) = cp.div_rem(&g);
        sqfree.to_primitive_int()
    }

    pub fn degree(&self) -> usize {
        self.minimal_polynomial().degree()
    }

    pub fn is_integral(&self) -> bool {
        self.charpoly().coeffs().iter().all(|c| c.is_integer())
    }

    pub fn is_rational(&self) -> bool {
        self.coords[1..].iter().all(Zero::is_zero)
    }

    /// `p(self)` for an integer polynomial `p`.
    pub fn eval_poly(&self, p: &IntPoly) -> Self {
        p.coeffs()
            .iter()
            .rev()
            .fold(Self::zero(&self.field), |acc, c| {
                acc.mul(self).add(&Self::rational(
                    &self.field,
                    BigRational::from_integer(c.clone()),
                ))
            })
    }

    /// `p(self)` for a rational coordinate vector interpreted in another
    /// field's power basis (`Σ cᵢ selfⁱ`).
    pub fn eval_coords(&self, c: &[BigRational]) -> Self {
        c.iter().rev().fold(Self::zero(&self.field), |acc, q| {
            acc.mul(self).add(&Self::rational(&self.field, q.clone()))
        })
    }

    /// Value under the embedding `θ ↦ z`.
    pub fn embed(&self, z: &Complex) -> Complex {
        let prec = z.prec();
        let mut acc = Complex::zero(prec);
        for c in self.coords.iter().rev() {
            let q = crate::roots::real_from_bigint(prec, c.numer())
                / crate::roots::real_from_bigint(prec, c.denom());
            acc = acc.mul(z).add(&Complex::from_real(q));
        }
        acc
    }
}

/// A compositum `L₃ = L₁L₂` with exact images of both generators.
#[derive(Clone, Debug)]
pub struct Compositum {
    pub field: Arc<NumberField>,
    /// `L₃` is generated by `α + shift·β`.
    pub shift: u32,
    pub alpha: AlgebraicNumber,
    pub beta: AlgebraicNumber,
}

impl Compositum {
    pub fn degree(&self) -> usize {
        self.field.degree()
    }
}

fn companion(f: &IntPoly) -> IntMatrix {
    let n = f.degree();
    (0..n)
        .map(|i| {
            let mut row = vec![BigInt::zero(); n];
            if i + 1 < n {
                row[i + 1] = BigInt::one();
            } else {
                for (k, r) in row.iter_mut().enumerate() {
                    *r = -f.coeff(k);
                }
            }
            row
        })
        .collect()
}

/// Multiplication matrix of `α + c·β` on `ℚ[x,y]/(f(x), g(y))` with basis
/// `αⁱβʲ` (index `i·m + j`).
fn tensor_matrix(f: &IntPoly, g: &IntPoly, c: u32) -> IntMatrix {
    let (n, m) = (f.degree(), g.degree());
    let (cf, cg) = (companion(f), companion(g));
    let c = BigInt::from(c);
    let mut out = vec![vec![BigInt::zero(); n * m]; n * m];
    for i in 0..n {
        for j in 0..m {
            let row = i * m + j;
            for k in 0..n {
                if !cf[i][k].is_zero() {
                    out[row][k * m + j] += &cf[i][k];
                }
            }
            for l in 0..m {
                if !cg[j][l].is_zero() {
                    out[row][i * m + l] += &c * &cg[j][l];
                }
            }
        }
    }
    out
}

type FieldPoly = Vec<AlgebraicNumber>;

fn fp_trim(mut p: FieldPoly) -> FieldPoly {
    while p.last().is_some_and(AlgebraicNumber::is_zero) {
        p.pop();
    }
    p
}

fn fp_mul(a: &FieldPoly, b: &FieldPoly, field: &Arc<NumberField>) -> FieldPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![AlgebraicNumber::zero(field); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    fp_trim(out)
}

fn fp_rem(a: &FieldPoly, b: &FieldPoly) -> FieldPoly {
    let mut r = a.clone();
    let db = b.len() - 1;
    let inv = b[db].inverse().expect("nonzero leading coefficient");
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let q = r.last().unwrap().mul(&inv);
        for (j, y) in b.iter().enumerate() {
            r[shift + j] = r[shift + j].sub(&q.mul(y));
        }
        r.pop();
        r = fp_trim(r);
    }
    r
}

fn fp_gcd(a: &FieldPoly, b: &FieldPoly) -> FieldPoly {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = fp_rem(&a, &b);
        a = b;
        b = r;
    }
    let inv = a.last().expect("nonzero gcd").inverse().expect("unit");
    a.iter().map(|x| x.mul(&inv)).collect()
}

fn check_generator_poly(f: &IntPoly) -> Result<()> {
    if !f.is_monic() {
        return Err(Error::NotMonic(f.to_string()));
    }
    if !is_irreducible(f) {
        return Err(Error::Reducible(f.to_string()));
    }
    Ok(())
}

/// Builds `L₃ = ℚ(α, β)` for roots `α` of `f` and `β` of `g`, embedded in ℂ
/// through the first root (in canonical order) of each polynomial.
pub fn compositum(f: &IntPoly, g: &IntPoly) -> Result<Compositum> {
    check_generator_poly(f)?;
    check_generator_poly(g)?;
    const PREC: u32 = 128;
    let a0 = complex_roots(f, PREC)?.swap_remove(0);
    let b0 = complex_roots(g, PREC)?.swap_remove(0);
    let mut shift = 0u32;
    let (h, c) = loop {
        let cp = charpoly_int(&tensor_matrix(f, g, shift));
        if cp.is_squarefree() {
            let gamma0 = a0.add(&b0.scale(&crate::roots::real(PREC, shift as f64)));
            let h = irreducible_factors(&cp)
                .into_iter()
                .map(|h| {
                    let coeffs: Vec<Complex> = h
                        .coeffs()
                        .iter()
                        .map(|c| Complex::from_real(crate::roots::real_from_bigint(PREC, c)))
                        .collect();
                    let mut v = Complex::zero(PREC);
                    for c in coeffs.iter().rev() {
                        v = v.mul(&gamma0).add(c);
                    }
                    (v.abs(), h)
                })
                .min_by(|a, b| a.0.partial_cmp(&b.0).expect("finite values"))
                .map(|(_, h)| h)
                .expect("at least one factor");
            break (h, shift);
        }
        shift += 1;
    };
    let field = NumberField::new_unchecked(h);
    let t = AlgebraicNumber::generator(&field);
    let cq = BigRational::from_integer(BigInt::from(c));
    // g(y) and f(t - c·y) as polynomials in y over L₃
    let gy: FieldPoly = g
        .coeffs()
        .iter()
        .map(|k| AlgebraicNumber::rational(&field, BigRational::from_integer(k.clone())))
        .collect();
    let u: FieldPoly = fp_trim(vec![
        t.clone(),
        AlgebraicNumber::rational(&field, -cq.clone()),
    ]);
    let mut fy: FieldPoly = Vec::new();
    for k in f.coeffs().iter().rev() {
        fy = fp_mul(&fy, &u, &field);
        let kk = AlgebraicNumber::rational(&field, BigRational::from_integer(k.clone()));
        if fy.is_empty() {
            fy.push(kk);
        } else {
            fy[0] = fy[0].add(&kk);
        }
        fy = fp_trim(fy);
    }
    let beta = if c == 0 {
        recover_beta_shift_zero(g, &field)?
    } else {
        let lin = fp_gcd(&gy, &fy);
        if lin.len() != 2 {
            return Err(Error::Degenerate(format!(
                "compositum gcd has degree {}",
                lin.len().saturating_sub(1)
            )));
        }
        lin[0].neg()
    };
    let alpha = t.sub(&beta.scale(&cq));
    debug_assert!(alpha.eval_poly(f).is_zero());
    debug_assert!(beta.eval_poly(g).is_zero());
    Ok(Compositum {
        field,
        shift: c,
        alpha,
        beta,
    })
}

/// With shift 0 the generator is α itself; β is a root of `g` in `L₃ = L₁`,
/// which must then exist (the characteristic polynomial of α on the tensor
/// algebra is `f^m`, squarefree only when `m = 1`).
fn recover_beta_shift_zero(g: &IntPoly, field: &Arc<NumberField>) -> Result<AlgebraicNumber> {
    if g.degree() != 1 {
        return Err(Error::Degenerate(
            "shift 0 compositum with non-linear second polynomial".into(),
        ));
    }
    Ok(AlgebraicNumber::rational(
        field,
        BigRational::new(-g.coeff(0), g.coeff(1)),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn field_arithmetic() {
        let k = NumberField::new(p(&[1, 0, 1])).unwrap();
        let i = AlgebraicNumber::generator(&k);
        assert_eq!(i.mul(&i), AlgebraicNumber::from_ints(&k, &[-1]));
        let z = AlgebraicNumber::from_ints(&k, &[1, 1]);
        assert_eq!(z.mul(&z.inverse().unwrap()), AlgebraicNumber::one(&k));
        assert_eq!(z.norm(), BigRational::from_integer(2.into()));
        assert_eq!(z.trace(), BigRational::from_integer(2.into()));
        assert_eq!(z.minimal_polynomial(), p(&[2, -2, 1]));
        assert!(NumberField::new(p(&[-1, 0, 1])).is_err());
        assert!(NumberField::new(p(&[1, 0, 2])).is_err());
    }

    #[test]
    fn trace_form_of_gaussians() {
        let k = NumberField::new(p(&[1, 0, 1])).unwrap();
        let t: Vec<Vec<i64>> = k
            .trace_form()
            .iter()
            .map(|r| r.iter().map(|x| i64::try_from(x).unwrap()).collect())
            .collect();
        assert_eq!(t, vec![vec![2, 0], vec![0, -2]]);
    }

    #[test]
    fn compositum_i_sqrt2() {
        let c = compositum(&p(&[1, 0, 1]), &p(&[-2, 0, 1])).unwrap();
        assert_eq!(c.degree(), 4);
        assert_eq!(c.shift, 1);
        assert_eq!(c.field.poly(), &p(&[9, 0, -2, 0, 1]));
        assert!(c.alpha.eval_poly(&p(&[1, 0, 1])).is_zero());
        assert!(c.beta.eval_poly(&p(&[-2, 0, 1])).is_zero());
    }

    #[test]
    fn compositum_sqrt2_sqrt3() {
        let c = compositum(&p(&[-2, 0, 1]), &p(&[-3, 0, 1])).unwrap();
        assert_eq!(c.field.poly(), &p(&[1, 0, -10, 0, 1]));
    }

    #[test]
    fn compositum_of_equal_fields() {
        let c = compositum(&p(&[1, 0, 1]), &p(&[1, 0, 1])).unwrap();
        assert_eq!(c.degree(), 2);
        // same embedding: α and β coincide
        assert_eq!(c.alpha, c.beta);
    }
}
