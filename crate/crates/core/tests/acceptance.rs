//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

mod common;

use std::time::Instant;

use arithdisc::archimedean::{
    arithmetic_discriminant_of_poly, distribution_check, distribution_suite, ProjPoint, RationalMap,
};
use arithdisc::cli::{run_search, summarize_order};
use arithdisc::criteria::{
    p1p1_reduction_holds, rule_table, sharpness_sweep, Conclusion, CurveSpec, SharpFamily,
};
use arithdisc::field::AlgebraicNumber;
use arithdisc::oracle;
use arithdisc::orders::{self, compositum_index_check, BoundVerdict, FractionalIdeal, Order};
use arithdisc::point_search::{
    census, enumerate_rationals, full_fiber, BiCurve, CensusConfig, DivisorSpec,
};
use arithdisc::sample::{rng, PairSuite};
use arithdisc::{Error, NumberField};
use common::*;
use num_bigint::BigInt;
use num_traits::Signed;
use rand::Rng;

type Outcome = Result<String, String>;

fn ac1() -> Outcome {
    let pairs = PairSuite::new(200, 20_261_016).generate();
    let (mut holds, mut unmet) = (0, 0);
    for (f, g) in &pairs {
        let rep = compositum_index_check(f, g).map_err(|e| format!("{f}, {g}: {e}"))?;
        if rep.degrees[2] > 8 {
            return Err(format!("compositum degree {} for {f}, {g}", rep.degrees[2]));
        }
        match rep.verdict {
            BoundVerdict::Holds => holds += 1,
            BoundVerdict::HypothesesUnmet => unmet += 1,
            BoundVerdict::Violated => return Err(format!("violated for {f}, {g}: {rep:?}")),
        }
    }
    Ok(format!(
        "{} pairs, {holds} hold, {unmet} with a non-Gorenstein order",
        pairs.len()
    ))
}

fn ac2() -> Outcome {
    let mut r = rng(2);
    let (mut tested, mut skipped) = (0, 0);
    while tested < 100 {
        let k = field(&mut r, 2..=4, 10);
        let a = random_order(&mut r, &k);
        if !orders::is_gorenstein(&a) {
            skipped += 1;
            continue;
        }
        if !orders::check_cond_identity(&a).map_err(|e| e.to_string())? {
            return Err(format!(
                "identity fails for {:?} in {}",
                a.lattice().basis(),
                k.poly()
            ));
        }
        tested += 1;
    }
    Ok(format!(
        "{tested} Gorenstein orders, {skipped} non-Gorenstein skipped"
    ))
}

fn ac3() -> Outcome {
    let mut r = rng(3);
    for _ in 0..200 {
        let k = field(&mut r, 2..=4, 10);
        let a = Order::equation_order(&k);
        let d = orders::different(&a);
        let fp = AlgebraicNumber::generator(&k).eval_poly(&k.poly().derivative());
        let principal = FractionalIdeal::principal(&a, &fp).map_err(|e| e.to_string())?;
        if d.lattice() != principal.lattice() {
            return Err(format!("D != (f'(theta)) for {}", k.poly()));
        }
        let idx = orders::index(&a, &d).map_err(|e| e.to_string())?;
        if idx != k.poly().discriminant().abs() {
            return Err(format!("[A:D] = {idx} for {}", k.poly()));
        }
    }
    Ok("200 monogenic orders".into())
}

fn ac4() -> Outcome {
    let mut r = rng(4);
    for _ in 0..100 {
        let k = field(&mut r, 2..=3, 10);
        let a = random_order(&mut r, &k);
        let x = random_element(&mut r, &a, 4);
        let id = FractionalIdeal::principal(&a, &x).map_err(|e| e.to_string())?;
        if !orders::check_invertible_index(&a, &id).map_err(|e| e.to_string())? {
            return Err(format!("principal ideal of {x:?}"));
        }
    }
    let mut found = 0;
    'outer: for d in [5i64, 6, 10, 13, 14, 15, 17, 21, 22, 23, 26, 29, 30] {
        let k = NumberField::new(poly(&[d, 0, 1])).unwrap();
        let a = Order::equation_order(&k);
        for p in [2i64, 3, 5, 7, 11, 13, 17, 19, 23] {
            for root in 0..p {
                if (root * root + d) % p != 0 {
                    continue;
                }
                let id = prime_ideal(&a, p, root);
                if !id.is_invertible() || is_principal_imag_quadratic(&id) {
                    continue;
                }
                if !orders::check_invertible_index(&a, &id).map_err(|e| e.to_string())? {
                    return Err(format!("(p, t - {root}) in Z[sqrt -{d}]"));
                }
                found += 1;
                if found == 20 {
                    break 'outer;
                }
                break;
            }
        }
    }
    if found < 20 {
        return Err(format!("only {found} non-principal ideals found"));
    }
    Ok("100 principal and 20 non-principal invertible ideals".into())
}

fn ac5() -> Outcome {
    let di = arithmetic_discriminant_of_poly(&poly(&[1, 0, 1]), 128)
        .map_err(|e| e.to_string())?
        .total
        .to_f64();
    let ds = arithmetic_discriminant_of_poly(&poly(&[-2, 0, 1]), 128)
        .map_err(|e| e.to_string())?
        .total
        .to_f64();
    let err = di.abs().max((ds - std::f64::consts::LN_2).abs());
    if err < 1e-9 {
        Ok(format!(
            "d_a(i) = {di:.3e}, d_a(sqrt 2) - log 2 = {:.3e}",
            ds - std::f64::consts::LN_2
        ))
    } else {
        Err(format!("d_a(i) = {di}, d_a(sqrt 2) = {ds}"))
    }
}

fn ac6() -> Outcome {
    let prec = 128;
    let worked = distribution_check(
        &RationalMap::power(2),
        &ProjPoint::from_f64(prec, 2.0, 0.0),
        &ProjPoint::from_f64(prec, 9.0, 0.0),
        prec,
    )
    .map_err(|e| e.to_string())?
    .to_f64()
    .abs();
    if worked >= 1e-10 {
        return Err(format!("worked residual {worked}"));
    }
    let mut worst = f64::NEG_INFINITY;
    for d in 1..=4 {
        let s = distribution_suite(&RationalMap::power(d), 100, 1000, 600 + d as u64, prec);
        worst = worst.max(s.excess());
        if s.excess() > 1.0 {
            return Err(format!("x^{d}: excess {}", s.excess()));
        }
    }
    Ok(format!(
        "worked residual {worked:.1e}, worst excess {worst:.1e}"
    ))
}

fn ac7() -> Outcome {
    let a = sharpness_sweep(SharpFamily::LinesPullback, 20, 20).map_err(|e| e.to_string())?;
    let b = sharpness_sweep(SharpFamily::EllipticCover, 20, 10).map_err(|e| e.to_string())?;
    if !a.all_equal || !b.all_equal {
        return Err("sharp family without equality".into());
    }
    let mut cases = 0;
    for d1 in 1..=20 {
        for d2 in 1..=20 {
            for nu in 1..=20 {
                cases += 1;
                if !p1p1_reduction_holds(d1, d2, nu) {
                    return Err(format!("reduction fails at ({d1}, {d2}, {nu})"));
                }
            }
        }
    }
    Ok(format!(
        "{} + {} sharp cases, {cases} reduction cases",
        a.rows.len(),
        b.rows.len()
    ))
}

fn ac8() -> Outcome {
    use Conclusion::*;
    let plane = |d: u32, g: u32, r: u32, nu: u32, hyp: Option<bool>, biell: Option<bool>| {
        let mut s = CurveSpec::plane(d, nu, r).with_genus(g);
        s.hyperelliptic = hyp;
        s.bielliptic = biell;
        s
    };
    let fixtures: Vec<(CurveSpec, &str, Conclusion)> = vec![
        (
            plane(4, 3, 5, 2, None, None),
            "quadratic_integral_plane_a",
            Finite,
        ),
        (
            plane(4, 3, 4, 2, Some(true), None),
            "quadratic_integral_plane_a",
            Inconclusive,
        ),
        (
            plane(4, 3, 3, 2, Some(false), None),
            "quadratic_integral_plane_b",
            Finite,
        ),
        (
            plane(4, 3, 2, 2, Some(false), None),
            "quadratic_integral_plane_b",
            Inconclusive,
        ),
        (
            plane(4, 3, 3, 2, Some(true), None),
            "quadratic_integral_plane_b",
            HypothesesUnmet,
        ),
        (
            plane(4, 3, 3, 2, None, None),
            "quadratic_integral_plane_b",
            HypothesesUnmet,
        ),
        (
            plane(5, 6, 0, 2, Some(false), Some(false)),
            "quadratic_points",
            Finite,
        ),
        (
            plane(5, 6, 0, 2, Some(false), Some(true)),
            "quadratic_points",
            HypothesesUnmet,
        ),
        (
            plane(5, 6, 0, 2, None, Some(false)),
            "quadratic_points",
            HypothesesUnmet,
        ),
        (
            plane(5, 6, 0, 3, Some(false), Some(false)),
            "quadratic_points",
            Inconclusive,
        ),
    ];
    for (i, (spec, id, want)) in fixtures.iter().enumerate() {
        let vs = rule_table(spec).map_err(|e| e.to_string())?;
        let v = vs
            .iter()
            .find(|v| v.criterion == *id)
            .ok_or(format!("fixture {i}: no {id}"))?;
        if v.conclusion != *want {
            return Err(format!(
                "fixture {i}: {id} gave {:?}, expected {want:?}",
                v.conclusion
            ));
        }
    }
    Ok(format!("{} fixtures", fixtures.len()))
}

fn ac9() -> Outcome {
    let c = BiCurve::from_i64(&[&[1, 0, 1], &[0, 1], &[1, 0, -1]]).map_err(|e| e.to_string())?;
    let mut fibers = 0;
    for x in enumerate_rationals(16) {
        let f = full_fiber(&c, &x).map_err(|e| e.to_string())?;
        let total: usize = f.iter().map(|o| o.degree * o.multiplicity).sum();
        if total != c.d1() {
            return Err(format!("fiber over {x}: {total}"));
        }
        fibers += 1;
    }
    let cfg = CensusConfig {
        divisor: DivisorSpec::default(),
        primes: vec![],
        nu: 2,
        ladder: vec![4, 8, 16],
        precision: 64,
    };
    let cen = census(&c, &cfg).map_err(|e| e.to_string())?;
    let totals: Vec<usize> = cen.steps.iter().map(|s| s.total).collect();
    if !totals.windows(2).all(|w| w[0] < w[1]) {
        return Err(format!("totals not strictly increasing: {totals:?}"));
    }
    let nu1 = census(
        &c,
        &CensusConfig {
            nu: 1,
            ..cfg.clone()
        },
    )
    .map_err(|e| e.to_string())?;
    if nu1
        .steps
        .iter()
        .zip(&cen.steps)
        .any(|(a, b)| a.total > b.total)
    {
        return Err("census not monotone in nu".into());
    }
    let config = "coefficients = [[1, 0, 1], [0, 1], [1, 0, -1]]\nnu = 2\nladder = [4, 8, 16]\nprimes = [2]\n[divisor]\nx_infinity = true\n";
    let lines = |o: arithdisc::cli::Output| {
        o.records
            .iter()
            .map(|r| r.to_line())
            .collect::<Vec<_>>()
            .join("\n")
    };
    let first = lines(run_search(config).map_err(|e| e.to_string())?);
    let second = lines(run_search(config).map_err(|e| e.to_string())?);
    if first != second {
        return Err("reruns differ".into());
    }
    Ok(format!(
        "{fibers} fibers accounted, totals {totals:?}, reruns identical"
    ))
}

fn ac10() -> Outcome {
    let mut r = rng(10);
    let mut done = 0;
    let mut draws = 0;
    let mut ideals = 0;
    while done < 50 {
        draws += 1;
        if draws > 2000 {
            return Err(format!("only {done} instances within oracle range"));
        }
        let k = field(&mut r, 2..=3, 3);
        let a = random_order(&mut r, &k);
        if oracle_cost(&a).is_none_or(|c| c > 20_000) {
            continue;
        }
        let fast = summarize_order(&a, false).map_err(|e| e.to_string())?;
        let slow = summarize_order(&a, true).map_err(|e| e.to_string())?;
        if fast != slow {
            return Err(format!(
                "summary mismatch for {:?} in {}",
                a.lattice().basis(),
                k.poly()
            ));
        }
        // ideal inverse on a random principal ideal
        let x = random_element(&mut r, &a, 2);
        let id = FractionalIdeal::principal(&a, &x).map_err(|e| e.to_string())?;
        let m = a
            .lattice()
            .index_of(id.lattice())
            .map_err(|e| e.to_string())?;
        if m <= BigInt::from(2000) {
            match oracle::ideal_inverse(&id) {
                Ok(inv) if &inv != orders::ideal_inverse(&id).lattice() => {
                    return Err(format!("inverse mismatch for {x:?}"));
                }
                Ok(_) => ideals += 1,
                Err(Error::OracleLimit(_)) => {}
                Err(e) => return Err(e.to_string()),
            }
            if oracle::index(&a, id.lattice()).map_err(|e| e.to_string())? != m {
                return Err(format!("index mismatch for {x:?}"));
            }
        }
        // Z[theta + c]
        let t = AlgebraicNumber::generator(&k);
        let alpha = t.add(&AlgebraicNumber::rational(&k, q(r.gen_range(-3..=3))));
        if orders::order_from_element(&alpha).map_err(|e| e.to_string())?
            != oracle::order_from_element(&alpha).map_err(|e| e.to_string())?
        {
            return Err("order_from_element mismatch".into());
        }
        done += 1;
    }
    // product orders
    for (f, g) in [
        (poly(&[1, 0, 1]), poly(&[-2, 0, 1])),
        (poly(&[-5, 0, 1]), poly(&[-3, 0, 1])),
    ] {
        let comp = arithdisc::compositum(&f, &g).map_err(|e| e.to_string())?;
        let a1 = Order::equation_order(&NumberField::new(f).unwrap());
        let a2 = Order::equation_order(&NumberField::new(g).unwrap());
        if orders::product_order(&a1, &a2, &comp).map_err(|e| e.to_string())?
            != oracle::product_order(&a1, &a2, &comp).map_err(|e| e.to_string())?
        {
            return Err("product order mismatch".into());
        }
    }
    Ok(format!(
        "{done} instances ({draws} draws), {ideals} ideal inverses, 2 product orders"
    ))
}

fn main() {
    let suite: [(&str, fn() -> Outcome); 10] = [
        ("AC1 different index bound", ac1),
        ("AC2 conductor-different identity", ac2),
        ("AC3 monogenic ground truth", ac3),
        ("AC4 invertible index identity", ac4),
        ("AC5 arithmetic discriminant spot values", ac5),
        ("AC6 distribution relation", ac6),
        ("AC7 criteria reproduction", ac7),
        ("AC8 rule table", ac8),
        ("AC9 census properties", ac9),
        ("AC10 oracle equivalence", ac10),
    ];
    let mut failed = 0;
    for (name, f) in suite {
        let t = Instant::now();
        let res = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match res {
            Ok(m) => println!("PASS {name}: {m} [{secs:.1}s]"),
            Err(m) => {
                failed += 1;
                println!("FAIL {name}: {m} [{secs:.1}s]");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
