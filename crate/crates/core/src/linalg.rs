//! Exact dense linear algebra over ℤ, ℚ and 𝔽_p.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::poly::{IntPoly, RatPoly};

pub type RatMatrix = Vec<Vec<BigRational>>;
pub type IntMatrix = Vec<Vec<BigInt>>;

/// Fraction-free Gaussian elimination (Bareiss).
pub fn det_bareiss(mut m: IntMatrix) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

pub fn rat_det(m: &RatMatrix) -> BigRational {
    let n = m.len();
    let mut a = m.clone();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        let pivot = a[c][c].clone();
        det *= &pivot;
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] / &pivot;
            for k in c..n {
                let t = &f * &a[c][k];
                a[r][k] -= t;
            }
        }
    }
    det
}

/// Gauss–Jordan inverse; `None` for singular input.
pub fn rat_inverse(m: &RatMatrix) -> Option<RatMatrix> {
    let n = m.len();
    let mut a: RatMatrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(p, c);
        let inv = a[c][c].recip();
        for k in 0..2 * n {
            a[c][k] *= &inv;
        }
        for r in 0..n {
            if r == c || a[r][c].is_zero() {
                continue;
            }
            let f = a[r][c].clone();
            for k in 0..2 * n {
                let t = &f * &a[c][k];
                a[r][k] -= t;
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

pub fn transpose<T: Clone>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len())
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect()
}

pub fn rat_mat_mul(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(BigRational::zero(), |acc, k| {
                        if row[k].is_zero() {
                            acc
                        } else {
                            acc + &row[k] * &b[k][j]
                        }
                    })
                })
                .collect()
        })
        .collect()
}

/// Row vector times matrix.
pub fn rat_vec_mat(v: &[BigRational], m: &RatMatrix) -> Vec<BigRational> {
    let cols = if m.is_empty() { 0 } else { m[0].len() };
    (0..cols)
        .map(|j| {
            v.iter().zip(m).fold(BigRational::zero(), |acc, (x, row)| {
                if x.is_zero() {
                    acc
                } else {
                    acc + x * &row[j]
                }
            })
        })
        .collect()
}

pub fn int_to_rat(m: &IntMatrix) -> RatMatrix {
    m.iter()
        .map(|row| {
            row.iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect()
        })
        .collect()
}

/// Characteristic polynomial `det(xI - M)` of an integer matrix by Berkowitz's
/// division-free algorithm.
pub fn charpoly_int(m: &IntMatrix) -> IntPoly {
    let n = m.len();
    // Coefficients in descending degree.
    let mut vect: Vec<BigInt> = vec![BigInt::one()];
    for r in 0..n {
        let a = &m[r][r];
        let row: Vec<BigInt> = m[r][..r].to_vec();
        let mut col: Vec<BigInt> = (0..r).map(|i| m[i][r].clone()).collect();
        let mut t = Vec::with_capacity(r + 2);
        t.push(BigInt::one());
        t.push(-a);
        for _ in 0..r {
            let dot: BigInt = row.iter().zip(&col).map(|(x, y)| x * y).sum();
            t.push(-dot);
            col = (0..r)
                .map(|i| (0..r).map(|k| &m[i][k] * &col[k]).sum())
                .collect();
        }
        let mut next = vec![BigInt::zero(); r + 2];
        for (i, out) in next.iter_mut().enumerate() {
            for (j, v) in vect.iter().enumerate() {
                if i >= j && i - j < t.len() {
                    *out += &t[i - j] * v;
                }
            }
        }
        vect = next;
    }
    vect.reverse();
    IntPoly::new(vect)
}

/// Characteristic polynomial of a rational matrix, via the integer routine on
/// `D·M` and rescaling.
pub fn charpoly_rat(m: &RatMatrix) -> RatPoly {
    let n = m.len();
    let d = m.iter().flatten().fold(BigInt::one(), |acc, x| {
        num_integer::Integer::lcm(&acc, x.denom())
    });
    let scaled: IntMatrix = m
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| (x * BigRational::from_integer(d.clone())).to_integer())
                .collect()
        })
        .collect();
    let cp = charpoly_int(&scaled);
    // χ_M(x) = d^{-n} χ_{dM}(d x)
    let coeffs = (0..=n)
        .map(|k| {
            let c = BigRational::from_integer(cp.coeff(k));
            let exp = n - k;
            c / BigRational::from_integer(num_traits::pow(d.clone(), exp))
        })
        .collect();
    RatPoly::new(coeffs)
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    r
}

pub fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

pub fn reduce_mod(x: &BigInt, p: u64) -> u64 {
    let r = x % BigInt::from(p);
    let r = if r.is_negative() {
        r + BigInt::from(p)
    } else {
        r
    };
    r.try_into().expect("residue fits in u64")
}

/// Left kernel `{v : v·M ≡ 0 (mod p)}` of an `rows × cols` matrix over 𝔽_p,
/// returned as a basis of row vectors.
pub fn left_kernel_mod_p(m: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    // Left kernel of M = right kernel of Mᵀ.
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut a: Vec<Vec<u64>> = (0..cols)
        .map(|j| (0..rows).map(|i| m[i][j] % p).collect())
        .collect();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..rows {
        let Some(pr) = (r..cols).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, pr);
        let inv = invmod(a[r][c], p);
        for x in a[r].iter_mut() {
            *x = mulmod(*x, inv, p);
        }
        for i in 0..cols {
            if i != r && a[i][c] != 0 {
                let f = a[i][c];
                for k in 0..rows {
                    let t = mulmod(f, a[r][k], p);
                    a[i][k] = (a[i][k] + p - t) % p;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == cols {
            break;
        }
    }
    let free: Vec<usize> = (0..rows).filter(|c| !pivot_cols.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; rows];
            v[f] = 1;
            for (ri, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = (p - a[ri][f]) % p;
            }
            v
        })
        .collect()
}
