//! Full-rank lattices in ℚⁿ in Hermite normal form.
//!
//! A lattice is stored as `rows / denom` where `rows` is the row-style upper
//! triangular HNF of the integer lattice `denom·L` (positive pivots, entries
//! above each pivot reduced into `[0, pivot)`) and `denom` is the least
//! positive integer making `denom·L` integral. The representation is unique,
//! so structural equality is lattice equality.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{rat_inverse, transpose, RatMatrix};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Lattice {
    rows: Vec<Vec<BigInt>>,
    denom: BigInt,
}

fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

fn reduce_rows(piv: &mut [Option<Vec<BigInt>>]) {
    let n = piv.len();
    for i in 0..n {
        let Some(hi) = piv[i].clone() else { continue };
        let p = &hi[i];
        for row in piv[..i].iter_mut().flatten() {
            if row[i].is_zero() {
                continue;
            }
            let q = row[i].div_floor(p);
            if q.is_zero() {
                continue;
            }
            for (k, x) in row.iter_mut().enumerate().skip(i) {
                *x -= &q * &hi[k];
            }
        }
    }
}

fn insert(piv: &mut [Option<Vec<BigInt>>], mut v: Vec<BigInt>) {
    let n = piv.len();
    for i in 0..n {
        if v[i].is_zero() {
            continue;
        }
        match piv[i].take() {
            None => {
                if v[i].is_negative() {
                    v.iter_mut().for_each(|x| *x = -&*x);
                }
                piv[i] = Some(v);
                return;
            }
            Some(h) => {
                let (q, r) = v[i].div_rem(&h[i]);
                if r.is_zero() {
                    for k in i..n {
                        v[k] -= &q * &h[k];
                    }
                    piv[i] = Some(h);
                    continue;
                }
                let (g, s, t) = ext_gcd(&h[i], &v[i]);
                let hg = &h[i] / &g;
                let vg = &v[i] / &g;
                let new_h: Vec<BigInt> = (0..n).map(|k| &s * &h[k] + &t * &v[k]).collect();
                let new_v: Vec<BigInt> = (0..n).map(|k| &hg * &v[k] - &vg * &h[k]).collect();
                piv[i] = Some(new_h);
                v = new_v;
            }
        }
    }
}

/// Row HNF of the integer lattice spanned by `gens`; `None` unless the
/// generators span a lattice of full rank `n`.
pub fn hnf(gens: impl IntoIterator<Item = Vec<BigInt>>, n: usize) -> Option<Vec<Vec<BigInt>>> {
    let mut piv: Vec<Option<Vec<BigInt>>> = vec![None; n];
    for v in gens {
        debug_assert_eq!(v.len(), n);
        insert(&mut piv, v);
        reduce_rows(&mut piv);
    }
    reduce_rows(&mut piv);
    piv.into_iter().collect()
}

fn common_denominator<'a>(vals: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    vals.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

impl Lattice {
    pub fn from_int_generators(
        gens: impl IntoIterator<Item = Vec<BigInt>>,
        n: usize,
    ) -> Result<Lattice> {
        let rows = hnf(gens, n).ok_or(Error::RankDeficient(n))?;
        Ok(Lattice::normalize(rows, BigInt::one()))
    }

    pub fn from_rational_generators(gens: &[Vec<BigRational>], n: usize) -> Result<Lattice> {
        let d = common_denominator(gens.iter().flatten());
        let dr = BigRational::from_integer(d.clone());
        let ints = gens
            .iter()
            .map(|v| v.iter().map(|x| (x * &dr).to_integer()).collect::<Vec<_>>());
        let rows = hnf(ints, n).ok_or(Error::RankDeficient(n))?;
        Ok(Lattice::normalize(rows, d))
    }

    /// ℤⁿ.
    pub fn standard(n: usize) -> Lattice {
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            BigInt::one()
                        } else {
                            BigInt::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        Lattice {
            rows,
            denom: BigInt::one(),
        }
    }

    fn normalize(rows: Vec<Vec<BigInt>>, denom: BigInt) -> Lattice {
        let g = rows
            .iter()
            .flatten()
            .fold(denom.clone(), |acc, x| acc.gcd(x));
        if g.is_one() {
            return Lattice { rows, denom };
        }
        Lattice {
            rows: rows
                .into_iter()
                .map(|r| r.into_iter().map(|x| x / &g).collect())
                .collect(),
            denom: denom / g,
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn hnf_rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn denom(&self) -> &BigInt {
        &self.denom
    }

    pub fn basis(&self) -> RatMatrix {
        self.rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| BigRational::new(x.clone(), self.denom.clone()))
                    .collect()
            })
            .collect()
    }

    pub fn scale(&self, k: &BigRational) -> Lattice {
        assert!(!k.is_zero(), "scaling a lattice by zero");
        let d = &self.denom * k.denom();
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|x| x * k.numer()).collect::<Vec<_>>());
        let rows = hnf(rows, self.dim()).expect("scaling preserves rank");
        Lattice::normalize(rows, d)
    }

    pub fn sum(&self, other: &Lattice) -> Lattice {
        let mut gens = self.basis();
        gens.extend(other.basis());
        Lattice::from_rational_generators(&gens, self.dim()).expect("sum of full-rank lattices")
    }

    /// Coordinates of `v` with respect to the HNF basis (rational).
    pub fn rational_coords(&self, v: &[BigRational]) -> Vec<BigRational> {
        let n = self.dim();
        let d = BigRational::from_integer(self.denom.clone());
        let mut rem: Vec<BigRational> = v.iter().map(|x| x * &d).collect();
        let mut out = vec![BigRational::zero(); n];
        for i in 0..n {
            if rem[i].is_zero() {
                continue;
            }
            let c = &rem[i] / BigRational::from_integer(self.rows[i][i].clone());
            for k in i..n {
                let t = &c * BigRational::from_integer(self.rows[i][k].clone());
                rem[k] -= t;
            }
            out[i] = c;
        }
        out
    }

    /// Integer coordinates of `v`, or `None` when `v` is not in the lattice.
    pub fn coords(&self, v: &[BigRational]) -> Option<Vec<BigInt>> {
        self.rational_coords(v)
            .into_iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    pub fn contains_vector(&self, v: &[BigRational]) -> bool {
        self.coords(v).is_some()
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Lattice) -> bool {
        other.basis().iter().all(|v| self.contains_vector(v))
    }

    /// Covolume (absolute determinant of a basis).
    pub fn det(&self) -> BigRational {
        let prod = self
            .rows
            .iter()
            .enumerate()
            .fold(BigInt::one(), |acc, (i, r)| acc * &r[i]);
        BigRational::new(prod, num_traits::pow(self.denom.clone(), self.dim()))
    }

    /// `[self : sub]` for `sub ⊆ self`.
    pub fn index_of(&self, sub: &Lattice) -> Result<BigInt> {
        if !self.contains(sub) {
            return Err(Error::NotContained(
                "sublattice is not contained in the lattice".into(),
            ));
        }
        let q = sub.det() / self.det();
        debug_assert!(q.is_integer());
        Ok(q.to_integer())
    }

    /// `{x : x·v ∈ ℤ for all v ∈ self}` for the standard dot product.
    pub fn dual(&self) -> Lattice {
        let inv = rat_inverse(&self.basis()).expect("full-rank lattice basis is invertible");
        Lattice::from_rational_generators(&transpose(&inv), self.dim()).expect("dual is full rank")
    }

    /// Exponent of the finite group `self / sub` for `sub ⊆ self`: the least
    /// positive `m` with `m·self ⊆ sub`.
    pub fn exponent_over(&self, sub: &Lattice) -> BigInt {
        self.basis()
            .iter()
            .flat_map(|v| sub.rational_coords(v))
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }
}
