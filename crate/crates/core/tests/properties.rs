//! Property tests for the invariants of each module.

mod common;

use arithdisc::archimedean::{
    arithmetic_discriminant_of_poly, lambda_p1, pairwise_green_sum, translation_shift, ProjPoint,
};
use arithdisc::cli::{run_criteria, run_search};
use arithdisc::criteria::{
    eval_product_bound, genus_product, p1p1_reduction_holds, rule_table, CurveSpec,
};
use arithdisc::factor::factor_over_rationals;
use arithdisc::field::AlgebraicNumber;
use arithdisc::height::height_of_poly;
use arithdisc::intfactor::factor_integer;
use arithdisc::lattice::Lattice;
use arithdisc::orders::{self, FractionalIdeal, Order};
use arithdisc::point_search::{
    census, classify_t, enumerate_rationals, full_fiber, is_s_integral_poly, BiCurve, CensusConfig,
    DivisorSpec, TClass,
};
use arithdisc::roots::Complex;
use arithdisc::sample::rng;
use arithdisc::IntPoly;
use common::*;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn small_poly(max_deg: usize, bound: i64) -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-bound..=bound, 1..=max_deg + 1).prop_map(|c| IntPoly::from_i64(&c))
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn factorization_expands_back(f in small_poly(6, 12)) {
        prop_assume!(!f.is_zero());
        let fac = factor_over_rationals(&f);
        prop_assert_eq!(fac.expand(), f);
        for (g, _) in &fac.factors {
            prop_assert!(g.leading().is_positive());
            prop_assert!(g.content().is_one());
        }
    }

    #[test]
    fn integer_factorization_multiplies_back(n in 1i64..10_000_000) {
        let fs = factor_integer(&BigInt::from(n)).unwrap();
        let prod = fs.iter().fold(BigInt::one(), |acc, (p, e)| acc * num_traits::pow(p.clone(), *e as usize));
        prop_assert_eq!(prod, BigInt::from(n));
    }

    #[test]
    fn hnf_is_canonical(rows in prop::collection::vec(prop::collection::vec(-9i64..=9, 3), 3..6), seed in 0u64..1000) {
        let gens: Vec<Vec<BigRational>> = rows.iter().map(|r| r.iter().map(|&c| q(c)).collect()).collect();
        let Ok(l) = Lattice::from_rational_generators(&gens, 3) else { return Ok(()); };
        let mut shuffled = gens.clone();
        let k = (seed as usize) % shuffled.len();
        shuffled.rotate_left(k);
        let extra: Vec<BigRational> = shuffled[0].iter().zip(&shuffled[1]).map(|(a, b)| a + b).collect();
        shuffled.push(extra);
        prop_assert_eq!(Lattice::from_rational_generators(&shuffled, 3).unwrap(), l.clone());
        prop_assert_eq!(l.dual().dual(), l.clone());
        let half = l.scale(&BigRational::new(1.into(), 2.into()));
        prop_assert!(half.contains(&l));
        prop_assert_eq!(half.index_of(&l).unwrap(), BigInt::from(8));
    }

    #[test]
    fn lambda_symmetric_and_chart_invariant(a in -50.0f64..50.0, b in -50.0f64..50.0, c in -50.0f64..50.0, d in -50.0f64..50.0) {
        let prec = 128;
        let p = ProjPoint::from_f64(prec, a, b);
        let q = ProjPoint::from_f64(prec, c, d);
        prop_assume!((a - c).abs() + (b - d).abs() > 1e-6 && a.abs() + b.abs() > 1e-6 && c.abs() + d.abs() > 1e-6);
        let l1 = lambda_p1(&p, &q).unwrap().to_f64();
        let l2 = lambda_p1(&q, &p).unwrap().to_f64();
        let l3 = lambda_p1(&p.swap_chart(prec), &q.swap_chart(prec)).unwrap().to_f64();
        prop_assert!((l1 - l2).abs() < 1e-20);
        prop_assert!((l1 - l3).abs() < 1e-12 * (1.0 + l1.abs()));
        prop_assert!(l1 >= -std::f64::consts::LN_2 - 1e-12);
    }

    #[test]
    fn green_sum_permutation_invariant(pts in prop::collection::vec((-5.0f64..5.0, -5.0f64..5.0), 2..7), k in 0usize..7) {
        let prec = 96;
        let zs: Vec<Complex> = pts.iter().map(|&(a, b)| Complex::from_f64(prec, a, b)).collect();
        let Ok(s1) = pairwise_green_sum(&zs) else { return Ok(()); };
        let mut rev = zs.clone();
        rev.reverse();
        rev.rotate_left(k % zs.len());
        let s2 = pairwise_green_sum(&rev).unwrap();
        prop_assert_eq!(s1, s2);
    }

    #[test]
    fn genus_formula_symmetric(d1 in 1i64..30, d2 in 1i64..30, g1 in 0i64..4, g2 in 0i64..4) {
        prop_assert_eq!(genus_product(d1, d2, g1, g2), genus_product(d2, d1, g2, g1));
        prop_assert_eq!(genus_product(1, d2, g1, 0), g1);
    }

    #[test]
    fn criteria_monotone_in_r(d1 in 1u32..15, d2 in 1u32..15, g1 in 0u32..3, g2 in 0u32..3, nu in 1u32..6, r in 0u32..20) {
        let s = CurveSpec::product(g1, g2, d1, d2, nu, r);
        let t = CurveSpec::product(g1, g2, d1, d2, nu, r + 1);
        let (a, b) = (eval_product_bound(&s).unwrap(), eval_product_bound(&t).unwrap());
        prop_assert!(!a.is_finite() || b.is_finite());
        prop_assert_eq!(&b.lhs - &a.lhs, BigInt::one());
        prop_assert!(p1p1_reduction_holds(d1, d2, nu));
        for v in rule_table(&s).unwrap() {
            prop_assert_eq!(v.equality, v.lhs == v.rhs);
        }
    }

    #[test]
    fn s_integrality_monotone(c in prop::collection::vec(-40i64..=40, 2..5), extra in prop::sample::select(vec![2u64, 3, 5, 7])) {
        let f = IntPoly::from_i64(&c);
        prop_assume!(f.degree() >= 1);
        let s1 = vec![2u64];
        let mut s2 = s1.clone();
        s2.push(extra);
        if is_s_integral_poly(&f, &s1) {
            prop_assert!(is_s_integral_poly(&f, &s2));
        }
    }

    #[test]
    fn fiber_accounting(rows in prop::collection::vec(prop::collection::vec(-4i64..=4, 1..4), 2..4), b in 1u64..6) {
        let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
        let Ok(c) = BiCurve::from_i64(&refs) else { return Ok(()); };
        for x in enumerate_rationals(b) {
            let f = full_fiber(&c, &x).unwrap();
            prop_assert_eq!(f.iter().map(|o| o.degree * o.multiplicity).sum::<usize>(), c.d1());
            for o in &f {
                let t = classify_t(o);
                prop_assert_eq!(t, if o.degree == 1 { TClass::T1 } else { TClass::T2 });
            }
        }
    }
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn monogenic_orders(seed in 0u64..10_000) {
        let mut r = rng(seed);
        let k = field(&mut r, 2..=3, 8);
        let a = Order::equation_order(&k);
        let d = orders::different(&a);
        prop_assert_eq!(orders::index(&a, &d).unwrap(), k.poly().discriminant().abs());
        let w = orders::trace_dual(&a.as_ideal());
        prop_assert!(w.lattice().contains(a.lattice()));
        prop_assert!(a.lattice().contains(d.lattice()));
        prop_assert!(orders::is_gorenstein(&a));
        let max = orders::maximal_order(&a).unwrap();
        let idx = max.lattice().index_of(a.lattice()).unwrap();
        prop_assert_eq!(a.discriminant(), max.discriminant() * &idx * &idx);
        let c = orders::conductor(&a).unwrap();
        prop_assert!(a.lattice().contains(c.lattice()));
        prop_assert!(orders::check_cond_identity(&a).unwrap());
    }

    #[test]
    fn random_orders(seed in 0u64..10_000) {
        let mut r = rng(seed);
        let k = field(&mut r, 2..=3, 8);
        let a = random_order(&mut r, &k);
        let d = orders::different(&a);
        prop_assert_eq!(orders::index(&a, &d).unwrap(), a.discriminant().abs());
        // W·D = A exactly when A is Gorenstein
        let w = orders::trace_dual(&a.as_ideal());
        let wd = w.mul(&d);
        prop_assert_eq!(wd.lattice() == a.lattice(), orders::is_gorenstein(&a));
        let x = random_element(&mut r, &a, 3);
        let id = FractionalIdeal::principal(&a, &x).unwrap();
        prop_assert!(id.is_invertible());
        let n = x.norm().abs();
        prop_assert_eq!(BigRational::from_integer(a.lattice().index_of(id.lattice()).unwrap()), n);
    }

    #[test]
    fn arithmetic_discriminant_closed_form(seed in 0u64..10_000) {
        let mut r = rng(seed);
        let k = field(&mut r, 2..=4, 6);
        let f = k.poly();
        let prec = 128;
        let da = arithmetic_discriminant_of_poly(f, prec).unwrap().total.to_f64();
        let h = height_of_poly(f, prec).unwrap().to_f64();
        let n = f.degree() as f64;
        prop_assert!((da - 2.0 * (n - 1.0) * h).abs() < 1e-9 * (1.0 + da.abs()));
        prop_assert!(da >= -1e-12);
        let shift = translation_shift(f, 1, prec).unwrap().to_f64();
        let g = f.compose(&IntPoly::from_i64(&[-1, 1]));
        let da1 = arithmetic_discriminant_of_poly(&g, prec).unwrap().total.to_f64();
        prop_assert!((da1 - da - shift).abs() < 1e-9 * (1.0 + da1.abs()));
    }
}

#[test]
fn rationals_match_brute_force() {
    for b in 1..=12u64 {
        let mut brute = 1;
        for q in 1..=b as i64 {
            for p in -(b as i64)..=b as i64 {
                brute += (p.gcd(&q) == 1) as usize;
            }
        }
        let list = enumerate_rationals(b);
        assert_eq!(list.len(), brute);
        let mut dedup = list.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), list.len());
    }
}

#[test]
fn element_norm_of_generator() {
    let k = arithdisc::NumberField::new(poly(&[-2, 0, 0, 1])).unwrap();
    let t = AlgebraicNumber::generator(&k);
    assert_eq!(t.norm(), q(2));
    assert!(BigInt::zero() < BigInt::one());
}

fn genus_one_curve() -> BiCurve {
    BiCurve::from_i64(&[&[1, 0, 1], &[0, 1], &[1, 0, -1]]).unwrap()
}

fn census_config(nu: usize, ladder: Vec<u64>, primes: Vec<u64>) -> CensusConfig {
    CensusConfig {
        divisor: DivisorSpec {
            x_infinity: true,
            y_infinity: true,
            ..DivisorSpec::default()
        },
        primes,
        nu,
        ladder,
        precision: 64,
    }
}

#[test]
fn census_monotone_in_bound_nu_and_primes() {
    let c = genus_one_curve();
    let base = census(&c, &census_config(1, vec![2, 4, 8], vec![2])).unwrap();
    for w in base.steps.windows(2) {
        assert!(w[0].total <= w[1].total);
        assert!(w[0].integral <= w[1].integral);
    }
    let wider = census(&c, &census_config(2, vec![2, 4, 8], vec![2])).unwrap();
    let more_primes = census(&c, &census_config(1, vec![2, 4, 8], vec![2, 3])).unwrap();
    for ((a, b), p) in base.steps.iter().zip(&wider.steps).zip(&more_primes.steps) {
        assert!(a.total <= b.total);
        assert!(a.integral <= b.integral);
        assert_eq!(a.total, p.total);
        assert!(a.integral <= p.integral);
    }
}

#[test]
fn records_are_deterministic() {
    let crit = "[[curve]]\nambient = \"product\"\nd1 = 3\nd2 = 2\nnu = 1\nr = 4\n";
    let a = run_criteria(crit).unwrap();
    let b = run_criteria(crit).unwrap();
    let lines =
        |o: &arithdisc::cli::Output| o.records.iter().map(|r| r.to_line()).collect::<Vec<_>>();
    assert_eq!(lines(&a), lines(&b));
    let search = "coefficients = [[1, 0, 1], [0, 1], [1, 0, -1]]\nnu = 2\nladder = [2, 4]\nprimes = [2]\n[divisor]\nx_infinity = true\n";
    let a = run_search(search).unwrap();
    let b = run_search(search).unwrap();
    assert!(!a.records.is_empty());
    assert_eq!(lines(&a), lines(&b));
}
