//! Factorization of integer polynomials over ℚ.
//!
//! Squarefree decomposition (Yun), then for each squarefree part a
//! Berlekamp–Zassenhaus pipeline: factor modulo a good prime with
//! Cantor–Zassenhaus, Hensel-lift the modular factorization with a balanced
//! factor tree, and recombine lifted factors by subset search. Every factor
//! returned is confirmed by exact division in ℤ[x].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::{invmod, reduce_mod};
use crate::poly::IntPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    /// Signed content: `f = unit · ∏ factorᵐ`.
    pub unit: BigInt,
    pub factors: Vec<(IntPoly, usize)>,
}

impl Factorization {
    pub fn expand(&self) -> IntPoly {
        self.factors
            .iter()
            .fold(IntPoly::constant(self.unit.clone()), |acc, (p, m)| {
                (0..*m).fold(acc, |a, _| &a * p)
            })
    }
}

/// Factors `f` into primitive irreducible polynomials with positive leading
/// coefficients. Constants (including zero) produce an empty factor list.
pub fn factor_over_rationals(f: &IntPoly) -> Factorization {
    if f.degree() == 0 {
        return Factorization {
            unit: f.coeff(0),
            factors: Vec::new(),
        };
    }
    let mut unit = f.content();
    if f.leading().is_negative() {
        unit = -unit;
    }
    let prim = f.primitive_part();
    let mut factors = Vec::new();
    for (part, mult) in squarefree_decomposition(&prim) {
        for g in factor_squarefree(&part) {
            factors.push((g, mult));
        }
    }
    factors.sort_by(|(a, ma), (b, mb)| factor_order(a, b).then(ma.cmp(mb)));
    Factorization { unit, factors }
}

/// Irreducible factors of a squarefree primitive polynomial, in canonical order.
pub fn irreducible_factors(f: &IntPoly) -> Vec<IntPoly> {
    let mut v = factor_squarefree(&f.primitive_part());
    v.sort_by(factor_order);
    v
}

pub fn is_irreducible(f: &IntPoly) -> bool {
    if f.degree() == 0 {
        return false;
    }
    let fac = factor_over_rationals(f);
    fac.factors.len() == 1 && fac.factors[0].1 == 1
}

/// Degree first, then coefficients from the constant term upward.
pub fn factor_order(a: &IntPoly, b: &IntPoly) -> std::cmp::Ordering {
    a.degree()
        .cmp(&b.degree())
        .then_with(|| a.coeffs().cmp(b.coeffs()))
}

/// Yun's algorithm over ℤ for a primitive polynomial with positive leading
/// coefficient: returns `(aᵢ, i)` with `f = ∏ aᵢⁱ`.
pub fn squarefree_decomposition(f: &IntPoly) -> Vec<(IntPoly, usize)> {
    let df = f.derivative();
    let a0 = f.gcd(&df).primitive_part();
    let mut b = f.div_exact(&a0).expect("gcd divides f");
    let c = df.div_exact(&a0).expect("gcd divides f'");
    let mut d = &c - &b.derivative();
    let mut out = Vec::new();
    let mut i = 1;
    while b.degree() > 0 {
        let a = b.gcd(&d).primitive_part();
        b = b.div_exact(&a).expect("gcd divides b");
        let c = d.div_exact(&a).expect("gcd divides d");
        d = &c - &b.derivative();
        if a.degree() > 0 {
            out.push((a, i));
        }
        i += 1;
    }
    out
}

fn factor_squarefree(f: &IntPoly) -> Vec<IntPoly> {
    let f = f.primitive_part();
    if f.degree() <= 1 {
        return vec![f];
    }
    // Pull out the factor x directly.
    if f.coeff(0).is_zero() {
        let rest = IntPoly::new(f.coeffs()[1..].to_vec());
        let mut v = factor_squarefree(&rest);
        v.push(IntPoly::from_i64(&[0, 1]));
        return v;
    }
    let Some((p, modular)) = choose_prime(&f) else {
        unreachable!("a squarefree polynomial has good primes");
    };
    if modular.len() == 1 {
        return vec![f];
    }
    let bound = coefficient_bound(&f);
    let mut modulus = BigInt::from(p);
    let mut steps = 0;
    while modulus <= &bound * 2 {
        modulus = &modulus * &modulus;
        steps += 1;
    }
    let lifted = hensel_tree(&reduce_poly(&f, &modulus), &modular, p, steps);
    recombine(&f, lifted, &modulus)
}

/// `|lc| · 2^n · (‖f‖₂ + 1)`, an upper bound for coefficients of
/// `lc(f)/lc(h) · h` over factors `h` of `f`.
fn coefficient_bound(f: &IntPoly) -> BigInt {
    let norm2: BigInt = f.coeffs().iter().map(|c| c * c).sum();
    let n = f.degree();
    f.leading().abs() * (BigInt::one() << n) * (norm2.sqrt() + 1)
}

fn small_primes() -> impl Iterator<Item = u64> {
    (3u64..).step_by(2).filter(|&n| {
        (3..)
            .step_by(2)
            .take_while(|d| d * d <= n)
            .all(|d| n % d != 0)
    })
}

fn choose_prime(f: &IntPoly) -> Option<(u64, Vec<Vec<u64>>)> {
    let lc = f.leading();
    let df = f.derivative();
    let mut best: Option<(u64, Vec<Vec<u64>>)> = None;
    let mut tried = 0;
    for p in small_primes().take(2000) {
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = to_modp(f, p);
        let dfp = to_modp(&df, p);
        if mp_gcd(&fp, &dfp, p).len() != 1 {
            continue;
        }
        let factors = factor_modp(&mp_monic(&fp, p), p);
        let better = best.as_ref().is_none_or(|(_, b)| factors.len() < b.len());
        if better {
            best = Some((p, factors));
        }
        tried += 1;
        if tried >= 5 || best.as_ref().is_some_and(|(_, b)| b.len() == 1) {
            break;
        }
    }
    best
}

// ---------- polynomials over 𝔽_p (ascending u64 coefficients, trimmed) ----------

type ModPoly = Vec<u64>;

fn trim(mut v: ModPoly) -> ModPoly {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn to_modp(f: &IntPoly, p: u64) -> ModPoly {
    trim(f.coeffs().iter().map(|c| reduce_mod(c, p)).collect())
}

fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn mp_sub(a: &[u64], b: &[u64], p: u64) -> ModPoly {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| (a.get(i).unwrap_or(&0) + p - b.get(i).unwrap_or(&0)) % p)
            .collect(),
    )
}

fn mp_mul(a: &[u64], b: &[u64], p: u64) -> ModPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulm(x, y, p)) % p;
        }
    }
    trim(out)
}

fn mp_divrem(a: &[u64], b: &[u64], p: u64) -> (ModPoly, ModPoly) {
    assert!(!b.is_empty(), "division by zero polynomial mod p");
    if a.len() < b.len() {
        return (Vec::new(), a.to_vec());
    }
    let inv = invmod(*b.last().unwrap(), p);
    let db = b.len() - 1;
    let mut r = a.to_vec();
    let mut q = vec![0u64; a.len() - db];
    for k in (0..q.len()).rev() {
        let c = mulm(r[k + db], inv, p);
        if c == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            r[k + j] = (r[k + j] + p - mulm(c, y, p)) % p;
        }
        q[k] = c;
    }
    (trim(q), trim(r))
}

fn mp_monic(a: &[u64], p: u64) -> ModPoly {
    match a.last() {
        None => Vec::new(),
        Some(&l) => {
            let inv = invmod(l, p);
            a.iter().map(|&x| mulm(x, inv, p)).collect()
        }
    }
}

fn mp_gcd(a: &[u64], b: &[u64], p: u64) -> ModPoly {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    while !b.is_empty() {
        let (_, r) = mp_divrem(&a, &b, p);
        a = b;
        b = r;
    }
    mp_monic(&a, p)
}

/// `(g, s, t)` with `s·a + t·b = g` monic.
fn mp_ext_gcd(a: &[u64], b: &[u64], p: u64) -> (ModPoly, ModPoly, ModPoly) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = mp_divrem(&r0, &r1, p);
        let s2 = mp_sub(&s0, &mp_mul(&q, &s1, p), p);
        let t2 = mp_sub(&t0, &mp_mul(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let inv = invmod(*r0.last().expect("nonzero gcd"), p);
    let sc = |v: &[u64]| trim(v.iter().map(|&x| mulm(x, inv, p)).collect());
    (sc(&r0), sc(&s0), sc(&t0))
}

fn mp_powmod(base: &[u64], e: &BigInt, m: &[u64], p: u64) -> ModPoly {
    let mut result = vec![1u64];
    let mut b = mp_divrem(base, m, p).1;
    let bits = e.bits();
    for i in 0..bits {
        if e.bit(i) {
            result = mp_divrem(&mp_mul(&result, &b, p), m, p).1;
        }
        if i + 1 < bits {
            b = mp_divrem(&mp_mul(&b, &b, p), m, p).1;
        }
    }
    result
}

/// Complete factorization of a monic squarefree polynomial over 𝔽_p (p odd).
fn factor_modp(f: &[u64], p: u64) -> Vec<ModPoly> {
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(p ^ ((f.len() as u64) << 32));
    for (g, d) in distinct_degree(f, p) {
        equal_degree(&g, d, p, &mut rng, &mut out);
    }
    out.sort();
    out
}

fn distinct_degree(f: &[u64], p: u64) -> Vec<(ModPoly, usize)> {
    let mut res = Vec::new();
    let mut f = f.to_vec();
    let x = vec![0u64, 1];
    let mut h = x.clone();
    let pe = BigInt::from(p);
    let mut d = 1;
    while f.len() > 2 * d {
        h = mp_powmod(&h, &pe, &f, p);
        let g = mp_gcd(&mp_sub(&h, &x, p), &f, p);
        if g.len() > 1 {
            f = mp_divrem(&f, &g, p).0;
            h = mp_divrem(&h, &f, p).1;
            res.push((g, d));
        }
        d += 1;
    }
    if f.len() > 1 {
        let deg = f.len() - 1;
        res.push((f, deg));
    }
    res
}

fn equal_degree(g: &[u64], d: usize, p: u64, rng: &mut ChaCha8Rng, out: &mut Vec<ModPoly>) {
    let n = g.len() - 1;
    if n == d {
        out.push(g.to_vec());
        return;
    }
    let e = (num_traits::pow(BigInt::from(p), d) - 1) / 2;
    loop {
        let a: ModPoly = trim((0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.len() < 2 {
            continue;
        }
        let b = mp_sub(&mp_powmod(&a, &e, g, p), &[1], p);
        let u = mp_gcd(&b, g, p);
        if u.len() > 1 && u.len() < g.len() {
            let v = mp_monic(&mp_divrem(g, &u, p).0, p);
            equal_degree(&u, d, p, rng, out);
            equal_degree(&v, d, p, rng, out);
            return;
        }
    }
}

// ---------- polynomials over ℤ/mℤ (BigInt coefficients in [0, m)) ----------

type ZmPoly = Vec<BigInt>;

fn zm_trim(mut v: ZmPoly) -> ZmPoly {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn zm_reduce(v: impl IntoIterator<Item = BigInt>, m: &BigInt) -> ZmPoly {
    zm_trim(v.into_iter().map(|c| c.mod_floor(m)).collect())
}

fn reduce_poly(f: &IntPoly, m: &BigInt) -> ZmPoly {
    zm_reduce(f.coeffs().iter().cloned(), m)
}

fn zm_from_modp(f: &[u64]) -> ZmPoly {
    f.iter().map(|&c| BigInt::from(c)).collect()
}

fn zm_add(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZmPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    zm_reduce(
        (0..n).map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)),
        m,
    )
}

fn zm_sub(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZmPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    zm_reduce(
        (0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)),
        m,
    )
}

fn zm_mul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZmPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    zm_reduce(out, m)
}

/// Division by a polynomial whose leading coefficient is a unit mod `m`.
fn zm_divrem(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (ZmPoly, ZmPoly) {
    if a.len() < b.len() {
        return (Vec::new(), a.to_vec());
    }
    let lead = b.last().expect("nonzero divisor");
    let inv = lead.modinv(m).expect("leading coefficient is a unit");
    let db = b.len() - 1;
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let c = (&r[k + db] * &inv).mod_floor(m);
        if c.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            r[k + j] = (&r[k + j] - &c * y).mod_floor(m);
        }
        q[k] = c;
    }
    (zm_trim(q), zm_trim(r))
}

fn zm_monic(f: &[BigInt], m: &BigInt) -> ZmPoly {
    let inv = f
        .last()
        .expect("nonzero")
        .modinv(m)
        .expect("unit leading coefficient");
    zm_reduce(f.iter().map(|c| c * &inv), m)
}

/// One quadratic Hensel step: from `f ≡ g·h`, `s·g + t·h ≡ 1 (mod m)` to the
/// same relations modulo `m²`, with `h` monic.
#[allow(clippy::too_many_arguments)]
fn hensel_step(
    f: &[BigInt],
    g: &[BigInt],
    h: &[BigInt],
    s: &[BigInt],
    t: &[BigInt],
    m: &BigInt,
) -> (ZmPoly, ZmPoly, ZmPoly, ZmPoly, BigInt) {
    let m2 = m * m;
    let e = zm_sub(f, &zm_mul(g, h, &m2), &m2);
    let (q, r) = zm_divrem(&zm_mul(s, &e, &m2), h, &m2);
    let g2 = zm_add(
        &zm_add(g, &zm_mul(t, &e, &m2), &m2),
        &zm_mul(&q, g, &m2),
        &m2,
    );
    let h2 = zm_add(h, &r, &m2);
    let b = zm_sub(
        &zm_add(&zm_mul(s, &g2, &m2), &zm_mul(t, &h2, &m2), &m2),
        &[BigInt::one()],
        &m2,
    );
    let (c, d) = zm_divrem(&zm_mul(s, &b, &m2), &h2, &m2);
    let s2 = zm_sub(s, &d, &m2);
    let t2 = zm_sub(
        &zm_sub(t, &zm_mul(t, &b, &m2), &m2),
        &zm_mul(&c, &g2, &m2),
        &m2,
    );
    (g2, h2, s2, t2, m2)
}

/// Lifts the factorization `target ≡ lc·∏ factors (mod p)` to modulus
/// `p^(2^steps)`; returns monic lifted factors.
fn hensel_tree(target: &[BigInt], factors: &[ModPoly], p: u64, steps: u32) -> Vec<ZmPoly> {
    let pb = BigInt::from(p);
    let full = num_traits::pow(pb.clone(), 1usize << steps);
    if factors.len() == 1 {
        return vec![zm_monic(target, &full)];
    }
    let k = factors.len() / 2;
    let prod = |fs: &[ModPoly]| fs.iter().fold(vec![1u64], |acc, f| mp_mul(&acc, f, p));
    let a = prod(&factors[..k]);
    let b = prod(&factors[k..]);
    let lc = reduce_mod(target.last().expect("nonzero target"), p);
    let g0: ModPoly = b.iter().map(|&c| mulm(c, lc, p)).collect();
    let h0 = a;
    let (_, s0, t0) = mp_ext_gcd(&g0, &h0, p);
    let (mut g, mut h) = (zm_from_modp(&g0), zm_from_modp(&h0));
    let (mut s, mut t) = (zm_from_modp(&s0), zm_from_modp(&t0));
    let mut m = pb;
    for _ in 0..steps {
        let next = hensel_step(
            &zm_reduce(target.iter().cloned(), &(&m * &m)),
            &g,
            &h,
            &s,
            &t,
            &m,
        );
        (g, h, s, t, m) = next;
    }
    let mut out = hensel_tree(&h, &factors[..k], p, steps);
    out.extend(hensel_tree(&g, &factors[k..], p, steps));
    out
}

fn symmetric(v: &[BigInt], m: &BigInt) -> IntPoly {
    let half = m / 2;
    IntPoly::new(
        v.iter()
            .map(|c| if c > &half { c - m } else { c.clone() })
            .collect(),
    )
}

fn recombine(f: &IntPoly, mut lifted: Vec<ZmPoly>, m: &BigInt) -> Vec<IntPoly> {
    let mut cur = f.clone();
    let mut out = Vec::new();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut found = None;
        for subset in combinations(lifted.len(), size) {
            let lc = cur.leading();
            let prod = subset
                .iter()
                .fold(vec![lc.mod_floor(m)], |acc, &i| zm_mul(&acc, &lifted[i], m));
            let cand = symmetric(&prod, m).primitive_part();
            if cand.degree() == 0 {
                continue;
            }
            if let Some(q) = cur.div_exact(&cand) {
                found = Some((subset, cand, q));
                break;
            }
        }
        match found {
            Some((subset, cand, q)) => {
                out.push(cand);
                cur = q;
                for &i in subset.iter().rev() {
                    lifted.remove(i);
                }
            }
            None => size += 1,
        }
    }
    if cur.degree() > 0 {
        out.push(cur.primitive_part());
    }
    out
}

fn combinations(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut idx: Vec<usize> = (0..k).collect();
    let mut done = k > n;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let cur = idx.clone();
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                done = true;
                break;
            }
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(cur)
    })
}

/// Degrees of the factors of `f` modulo `p` (for squarefree `f mod p`).
pub fn modular_factor_degrees(f: &IntPoly, p: u64) -> Option<Vec<usize>> {
    let fp = to_modp(f, p);
    if fp.len() != f.coeffs().len() || mp_gcd(&fp, &to_modp(&f.derivative(), p), p).len() != 1 {
        return None;
    }
    Some(
        factor_modp(&mp_monic(&fp, p), p)
            .iter()
            .map(|g| g.len() - 1)
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn difference_of_squares() {
        let f = factor_over_rationals(&p(&[-1, 0, 1]));
        assert_eq!(f.unit, BigInt::one());
        assert_eq!(f.factors, vec![(p(&[-1, 1]), 1), (p(&[1, 1]), 1)]);
    }

    #[test]
    fn content_is_the_unit() {
        let f = factor_over_rationals(&p(&[-2, 0, 2]));
        assert_eq!(f.unit, BigInt::from(2));
        assert_eq!(f.factors, vec![(p(&[-1, 1]), 1), (p(&[1, 1]), 1)]);
        let g = factor_over_rationals(&p(&[2, 0, -2]));
        assert_eq!(g.unit, BigInt::from(-2));
        assert_eq!(g.expand(), p(&[2, 0, -2]));
    }

    #[test]
    fn x4_plus_1_is_irreducible() {
        // reducible modulo every prime, so recombination must reject all pairs
        let f = factor_over_rationals(&p(&[1, 0, 0, 0, 1]));
        assert_eq!(f.factors, vec![(p(&[1, 0, 0, 0, 1]), 1)]);
    }

    #[test]
    fn swinnerton_dyer_like() {
        // minimal polynomial of √2+√3, splits into quadratics mod every prime
        assert!(is_irreducible(&p(&[1, 0, -10, 0, 1])));
        // (x^4 - 10x^2 + 1)(x^2 - 2)
        let g = &p(&[1, 0, -10, 0, 1]) * &p(&[-2, 0, 1]);
        let fac = factor_over_rationals(&g);
        assert_eq!(
            fac.factors,
            vec![(p(&[-2, 0, 1]), 1), (p(&[1, 0, -10, 0, 1]), 1)]
        );
    }

    #[test]
    fn multiplicities_and_x_factor() {
        let g = &(&p(&[0, 1]) * &p(&[0, 1]))
            * &(&p(&[1, 1]) * &(&p(&[1, 1]) * &(&p(&[1, 1]) * &p(&[3, 0, 1]))));
        let fac = factor_over_rationals(&g);
        assert_eq!(
            fac.factors,
            vec![(p(&[0, 1]), 2), (p(&[1, 1]), 3), (p(&[3, 0, 1]), 1)]
        );
        assert_eq!(fac.expand(), g);
    }

    #[test]
    fn nonmonic_factors() {
        let g = &p(&[1, 2]) * &(&p(&[-3, 5]) * &p(&[7, 1, 4]));
        let fac = factor_over_rationals(&g);
        assert_eq!(fac.factors.len(), 3);
        assert_eq!(fac.expand(), g);
    }

    #[test]
    fn constants() {
        assert!(factor_over_rationals(&p(&[5])).factors.is_empty());
        assert!(factor_over_rationals(&IntPoly::zero()).factors.is_empty());
    }

    #[test]
    fn cyclotomic_product() {
        // x^12 - 1 has 6 cyclotomic factors
        let mut c = vec![0i64; 13];
        c[0] = -1;
        c[12] = 1;
        let fac = factor_over_rationals(&p(&c));
        assert_eq!(fac.factors.len(), 6);
        assert_eq!(fac.expand(), p(&c));
    }
}
