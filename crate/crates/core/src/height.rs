//! Absolute logarithmic Weil heights.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::field::AlgebraicNumber;
use crate::poly::IntPoly;
use crate::roots::{complex_roots, log_plus, real_from_bigint, Real};

/// `(1/n)(log|a₀| + Σ log⁺|αᵢ|)` for the primitive integer polynomial
/// `a₀ Π (t − αᵢ)`; `f` must be irreducible (or at least squarefree).
pub fn height_of_poly(f: &IntPoly, precision: u32) -> crate::Result<Real> {
    let f = f.primitive_part();
    let n = f.degree();
    if n == 0 {
        return Ok(Real::with_val(precision, 0));
    }
    let mut acc = real_from_bigint(precision, &f.leading().abs()).ln();
    for z in complex_roots(&f, precision)? {
        acc += log_plus(&z.abs());
    }
    Ok(acc / n as u32)
}

pub fn weil_height(alpha: &AlgebraicNumber, precision: u32) -> crate::Result<Real> {
    height_of_poly(&alpha.minimal_polynomial(), precision)
}

/// `log max(|p|, |q|)` for `p/q` in lowest terms.
pub fn rational_height(x: &BigRational, precision: u32) -> Real {
    if x.is_zero() {
        return Real::with_val(precision, 0);
    }
    let m: BigInt = x.numer().abs().max(x.denom().abs());
    real_from_bigint(precision, &m).ln()
}
