//! Seeded random inputs for batch suites.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::factor::is_irreducible;
use crate::poly::IntPoly;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Monic irreducible polynomial of degree `n` with lower coefficients in
/// `[−bound, bound]`, by rejection.
pub fn random_monic_irreducible<R: Rng>(rng: &mut R, n: usize, bound: i64) -> IntPoly {
    loop {
        let mut c: Vec<BigInt> = (0..n)
            .map(|_| BigInt::from(rng.gen_range(-bound..=bound)))
            .collect();
        c.push(BigInt::from(1));
        let f = IntPoly::new(c);
        if is_irreducible(&f) {
            return f;
        }
    }
}

/// Parameters of a random pair suite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairSuite {
    pub count: usize,
    pub seed: u64,
    #[serde(default = "two")]
    pub min_degree: usize,
    #[serde(default = "four")]
    pub max_degree: usize,
    #[serde(default = "ten")]
    pub bound: i64,
    /// Pairs with `deg f · deg g` above this are redrawn.
    #[serde(default = "eight")]
    pub max_product_degree: usize,
}

fn two() -> usize {
    2
}
fn four() -> usize {
    4
}
fn ten() -> i64 {
    10
}
fn eight() -> usize {
    8
}

impl PairSuite {
    pub fn new(count: usize, seed: u64) -> PairSuite {
        PairSuite {
            count,
            seed,
            min_degree: 2,
            max_degree: 4,
            bound: 10,
            max_product_degree: 8,
        }
    }

    pub fn is_valid(&self) -> bool {
        self.min_degree >= 1
            && self.min_degree <= self.max_degree
            && self.bound >= 1
            && self.min_degree * self.min_degree <= self.max_product_degree
    }

    pub fn generate(&self) -> Vec<(IntPoly, IntPoly)> {
        let mut r = rng(self.seed);
        let mut out = Vec::with_capacity(self.count);
        while out.len() < self.count {
            let n1 = r.gen_range(self.min_degree..=self.max_degree);
            let n2 = r.gen_range(self.min_degree..=self.max_degree);
            if n1 * n2 > self.max_product_degree {
                continue;
            }
            let f = random_monic_irreducible(&mut r, n1, self.bound);
            let g = random_monic_irreducible(&mut r, n2, self.bound);
            out.push((f, g));
        }
        out
    }
}

/// Monic irreducible polynomials of degrees in `degrees`, one per draw.
pub fn random_fields(
    seed: u64,
    count: usize,
    degrees: std::ops::RangeInclusive<usize>,
    bound: i64,
) -> Vec<IntPoly> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let n = r.gen_range(degrees.clone());
            random_monic_irreducible(&mut r, n, bound)
        })
        .collect()
}
