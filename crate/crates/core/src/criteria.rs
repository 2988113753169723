//! Finiteness criteria for points of bounded degree on curves, in exact
//! integer arithmetic.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Ambient {
    /// `C ⊂ C₁ × C₂` of type `(d₁, d₂)`.
    Product,
    /// `C ⊂ P²` of degree `d`.
    Plane,
}

/// Combinatorial data of a curve, a divisor `D` of `r` distinct points and a
/// degree bound `ν`. Flags left out are unknown.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveSpec {
    pub ambient: Ambient,
    #[serde(default)]
    pub g1: u32,
    #[serde(default)]
    pub g2: u32,
    pub d1: Option<u32>,
    pub d2: Option<u32>,
    pub d: Option<u32>,
    /// Geometric genus; when absent the adjunction genus is used.
    pub genus: Option<u32>,
    #[serde(default)]
    pub r: u32,
    pub nu: u32,
    pub hyperelliptic: Option<bool>,
    pub bielliptic: Option<bool>,
    pub nonsingular: Option<bool>,
    /// Whether `C` has a map of degree `≤ d − 2` onto a genus one curve.
    pub low_degree_elliptic_map: Option<bool>,
}

impl CurveSpec {
    pub fn product(g1: u32, g2: u32, d1: u32, d2: u32, nu: u32, r: u32) -> CurveSpec {
        CurveSpec {
            ambient: Ambient::Product,
            g1,
            g2,
            d1: Some(d1),
            d2: Some(d2),
            d: None,
            genus: None,
            r,
            nu,
            hyperelliptic: None,
            bielliptic: None,
            nonsingular: None,
            low_degree_elliptic_map: None,
        }
    }

    pub fn plane(d: u32, nu: u32, r: u32) -> CurveSpec {
        CurveSpec {
            ambient: Ambient::Plane,
            d1: None,
            d2: None,
            d: Some(d),
            ..CurveSpec::product(0, 0, 1, 1, nu, r)
        }
    }

    pub fn with_genus(mut self, g: u32) -> Self {
        self.genus = Some(g);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.nu < 1 {
            return Err(Error::InvalidSpec("ν must be at least 1".into()));
        }
        match self.ambient {
            Ambient::Product => match (self.d1, self.d2, self.d) {
                (Some(a), Some(b), None) if a >= 1 && b >= 1 => Ok(()),
                (_, _, Some(_)) => Err(Error::InvalidSpec(
                    "a product curve takes d1, d2, not d".into(),
                )),
                _ => Err(Error::InvalidSpec("product curve needs d1, d2 ≥ 1".into())),
            },
            Ambient::Plane => match (self.d, self.d1, self.d2) {
                (Some(d), None, None) if d >= 1 => Ok(()),
                _ => Err(Error::InvalidSpec(
                    "plane curve needs d ≥ 1 and no d1, d2".into(),
                )),
            },
        }
    }

    /// Geometric genus if supplied, otherwise the adjunction genus.
    pub fn effective_genus(&self) -> i64 {
        if let Some(g) = self.genus {
            return g as i64;
        }
        match self.ambient {
            Ambient::Product => genus_product(
                self.d1.unwrap_or(1) as i64,
                self.d2.unwrap_or(1) as i64,
                self.g1 as i64,
                self.g2 as i64,
            ),
            Ambient::Plane => genus_plane(self.d.unwrap_or(1) as i64),
        }
    }

    fn genus_note(&self) -> Option<String> {
        self.genus
            .is_none()
            .then(|| "genus from adjunction, assuming C nonsingular".to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = ">")]
    Greater,
    #[serde(rename = "=")]
    Equal,
    #[serde(rename = "<")]
    Less,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Conclusion {
    Finite,
    Inconclusive,
    HypothesesUnmet,
}

/// One criterion evaluated as `lhs > rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub criterion: &'static str,
    #[serde(serialize_with = "ser_big")]
    pub lhs: BigInt,
    #[serde(serialize_with = "ser_big")]
    pub rhs: BigInt,
    /// Individual terms when `rhs` is a maximum.
    #[serde(serialize_with = "ser_big_vec")]
    pub rhs_terms: Vec<BigInt>,
    pub relation: Relation,
    pub equality: bool,
    pub conclusion: Conclusion,
    pub notes: Vec<String>,
}

fn ser_big<S: serde::Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

fn ser_big_vec<S: serde::Serializer>(x: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(x.iter().map(|v| v.to_string()))
}

impl Verdict {
    fn compare(criterion: &'static str, lhs: i64, rhs_terms: Vec<i64>) -> Verdict {
        let rhs = *rhs_terms.iter().max().expect("at least one term");
        let relation = match lhs.cmp(&rhs) {
            std::cmp::Ordering::Greater => Relation::Greater,
            std::cmp::Ordering::Equal => Relation::Equal,
            std::cmp::Ordering::Less => Relation::Less,
        };
        Verdict {
            criterion,
            lhs: lhs.into(),
            rhs: rhs.into(),
            rhs_terms: rhs_terms.into_iter().map(BigInt::from).collect(),
            relation,
            equality: relation == Relation::Equal,
            conclusion: if relation == Relation::Greater {
                Conclusion::Finite
            } else {
                Conclusion::Inconclusive
            },
            notes: Vec::new(),
        }
    }

    fn unmet(mut self, why: impl Into<String>) -> Verdict {
        self.conclusion = Conclusion::HypothesesUnmet;
        self.notes.push(why.into());
        self
    }

    fn note(mut self, n: Option<String>) -> Verdict {
        self.notes.extend(n);
        self
    }

    pub fn is_finite(&self) -> bool {
        self.conclusion == Conclusion::Finite
    }
}

/// Arithmetic genus of a curve of type `(d₁, d₂)` on `C₁ × C₂`:
/// `2g − 2 = 2d₁d₂ + (2g₁ − 2)d₁ + (2g₂ − 2)d₂`.
pub fn genus_product(d1: i64, d2: i64, g1: i64, g2: i64) -> i64 {
    d1 * d2 + (g1 - 1) * d1 + (g2 - 1) * d2 + 1
}

/// `(d − 1)(d − 2)/2`.
pub fn genus_plane(d: i64) -> i64 {
    (d - 1) * (d - 2) / 2
}

/// `2g − 2 + r > max{(ν+g₁−1)2d₁, (ν+g₂−1)2d₂, (ν+2g₁−2)d₁ + (ν+2g₂−2)d₂}`.
pub fn eval_product_bound(spec: &CurveSpec) -> Result<Verdict> {
    spec.validate()?;
    let g = spec.effective_genus();
    let nu = spec.nu as i64;
    let r = spec.r as i64;
    let (g1, g2) = (spec.g1 as i64, spec.g2 as i64);
    let lhs = 2 * g - 2 + r;
    if spec.ambient != Ambient::Product {
        return Ok(Verdict::compare("product_bound", lhs, vec![0])
            .unmet("curve is not in a product of two curves"));
    }
    let (d1, d2) = (spec.d1.unwrap() as i64, spec.d2.unwrap() as i64);
    let terms = vec![
        (nu + g1 - 1) * 2 * d1,
        (nu + g2 - 1) * 2 * d2,
        (nu + 2 * g1 - 2) * d1 + (nu + 2 * g2 - 2) * d2,
    ];
    Ok(Verdict::compare("product_bound", lhs, terms).note(spec.genus_note()))
}

/// `g − 1 > (ν + g′ − 1)·deg φ`, for points with `k(φ(P)) = k(P)`.
pub fn eval_projection_bound(g: i64, g_prime: i64, deg: i64, nu: i64) -> Verdict {
    let mut v = Verdict::compare("projection", g - 1, vec![(nu + g_prime - 1) * deg]);
    v.notes.push("only points P with k(φ(P)) = k(P)".into());
    v
}

/// `2g − 2 + r > 2(ν − 1)(d − 1)` for a plane curve of degree `d`.
pub fn eval_plane_bound(g: i64, d: i64, r: i64, nu: i64) -> Verdict {
    Verdict::compare("plane_bound", 2 * g - 2 + r, vec![2 * (nu - 1) * (d - 1)])
}

fn flag_unmet(v: Verdict, name: &str, flag: Option<bool>, needed: bool) -> Verdict {
    match flag {
        Some(f) if f == needed => v,
        Some(_) => v.unmet(format!("{name} is {}", !needed)),
        None => v.unmet(format!("{name} unknown")),
    }
}

/// Every applicable criterion for `spec`.
pub fn rule_table(spec: &CurveSpec) -> Result<Vec<Verdict>> {
    spec.validate()?;
    let g = spec.effective_genus();
    let nu = spec.nu as i64;
    let r = spec.r as i64;
    let mut out = Vec::new();

    match spec.ambient {
        Ambient::Product => {
            out.push(eval_product_bound(spec)?);
            let (d1, d2) = (spec.d1.unwrap() as i64, spec.d2.unwrap() as i64);
            let mut v = eval_projection_bound(g, spec.g1 as i64, d1, nu);
            v.criterion = "projection_pi1";
            out.push(v);
            let mut v = eval_projection_bound(g, spec.g2 as i64, d2, nu);
            v.criterion = "projection_pi2";
            out.push(v);
        }
        Ambient::Plane => {
            let d = spec.d.unwrap() as i64;
            out.push(eval_plane_bound(g, d, r, nu).note(spec.genus_note()));
            let mut v = Verdict::compare("plane_rational", g - 1, vec![(nu - 1) * (d - 1)]);
            v.notes.push("all points of degree ≤ ν, D ignored".into());
            out.push(v);
            // ν ≤ d − 2, nonsingular, no low-degree map to genus one
            let mut dk = Verdict::compare("plane_low_degree", d - 1, vec![nu]);
            dk = flag_unmet(dk, "nonsingular", spec.nonsingular, true);
            if d < 7 {
                dk = flag_unmet(
                    dk,
                    "low-degree map onto a genus one curve",
                    spec.low_degree_elliptic_map,
                    false,
                );
            } else {
                dk.notes.push("d ≥ 7: no low-degree elliptic map".into());
            }
            out.push(dk);
        }
    }

    // ν ≤ 2 unless hyperelliptic or bielliptic
    let hs = Verdict::compare("quadratic_points", 3, vec![nu]);
    let hs = flag_unmet(hs, "hyperelliptic", spec.hyperelliptic, false);
    let hs = if hs.conclusion == Conclusion::HypothesesUnmet {
        hs
    } else {
        flag_unmet(hs, "bielliptic", spec.bielliptic, false)
    };
    out.push(hs);

    // quadratic integral points
    let quad = |v: Verdict| {
        if nu > 2 {
            v.unmet("ν > 2: statement is for points of degree ≤ 2")
        } else {
            v
        }
    };
    let mut cz_a = quad(Verdict::compare("quadratic_integral_a", r, vec![4]));
    if r == 4 && spec.hyperelliptic == Some(true) {
        cz_a.notes.push("hyperelliptic with r = 4: all but finitely many quadratic integral points are parametrized".into());
    }
    out.push(cz_a);
    let cz_b = quad(Verdict::compare("quadratic_integral_b", r, vec![3]));
    out.push(flag_unmet(cz_b, "hyperelliptic", spec.hyperelliptic, false));

    // through the plane bound with birational models of degree g + 2 and g + 1
    let mut qip_a = quad(Verdict::compare(
        "quadratic_integral_plane_a",
        2 * g - 2 + r,
        vec![2 * (g + 1)],
    ));
    qip_a.notes.push(format!("plane model of degree {}", g + 2));
    out.push(qip_a);
    let mut qip_b = quad(Verdict::compare(
        "quadratic_integral_plane_b",
        2 * g - 2 + r,
        vec![2 * g],
    ));
    qip_b.notes.push(format!("plane model of degree {}", g + 1));
    out.push(flag_unmet(
        qip_b,
        "hyperelliptic",
        spec.hyperelliptic,
        false,
    ));

    // bielliptic curves of type (a, 2), a > 3, on P¹ × E
    let bi = Verdict::compare("bielliptic_type_a2", r, vec![0]);
    let shape_ok = spec.ambient == Ambient::Product
        && spec.g1 == 0
        && spec.g2 == 1
        && spec.d2 == Some(2)
        && spec.d1.is_some_and(|a| a > 3)
        && nu <= 2;
    let bi = if !shape_ok {
        bi.unmet("not a type (a, 2), a > 3 curve on P¹ × E with ν ≤ 2")
    } else {
        let bi = flag_unmet(bi, "bielliptic", spec.bielliptic, true);
        if bi.conclusion == Conclusion::HypothesesUnmet {
            bi
        } else {
            flag_unmet(bi, "nonsingular", spec.nonsingular, true)
        }
    };
    out.push(bi);
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SharpFamily {
    /// P¹ × P¹, `d₁ ≥ d₂ ≥ 1`, `ν = d₂`, `r = 2d₂`.
    LinesPullback,
    /// P¹ × E, `d₁ > d₂ + 1 > 2`, `ν = d₂`, `r = 0`.
    EllipticCover,
}

#[derive(Clone, Debug, Serialize)]
pub struct SharpnessRow {
    pub d1: u32,
    pub d2: u32,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct SharpnessReport {
    pub family: SharpFamily,
    pub witness: &'static str,
    pub rows: Vec<SharpnessRow>,
    pub all_equal: bool,
}

pub fn family_spec(family: SharpFamily, d1: u32, d2: u32) -> Option<CurveSpec> {
    match family {
        SharpFamily::LinesPullback if d1 >= d2 && d2 >= 1 => {
            Some(CurveSpec::product(0, 0, d1, d2, d2, 2 * d2))
        }
        SharpFamily::EllipticCover if d1 > d2 + 1 && d2 + 1 > 2 => {
            Some(CurveSpec::product(0, 1, d1, d2, d2, 0))
        }
        _ => None,
    }
}

/// Evaluates the sharp families on every admissible `d₁ ≤ d1_max`,
/// `d₂ ≤ d2_max`.
pub fn sharpness_sweep(family: SharpFamily, d1_max: u32, d2_max: u32) -> Result<SharpnessReport> {
    let witness = match family {
        SharpFamily::LinesPullback => {
            "pullback by the second projection of the infinitely many (P+Q, S)-integral points of P¹"
        }
        SharpFamily::EllipticCover => "pullback of the rational points of E under the degree d₂ map C → E",
    };
    let mut rows = Vec::new();
    for d1 in 1..=d1_max {
        for d2 in 1..=d2_max {
            if let Some(spec) = family_spec(family, d1, d2) {
                rows.push(SharpnessRow {
                    d1,
                    d2,
                    verdict: eval_product_bound(&spec)?,
                });
            }
        }
    }
    let all_equal = rows.iter().all(|r| r.verdict.equality);
    Ok(SharpnessReport {
        family,
        witness,
        rows,
        all_equal,
    })
}

/// On P¹ × P¹ the three-term maximum equals `max{2(ν−1)d₁, 2(ν−1)d₂}`.
pub fn p1p1_reduction_holds(d1: u32, d2: u32, nu: u32) -> bool {
    let spec = CurveSpec::product(0, 0, d1, d2, nu, 0);
    let v = eval_product_bound(&spec).expect("valid spec");
    let (d1, d2, nu) = (d1 as i64, d2 as i64, nu as i64);
    v.rhs == BigInt::from((2 * (nu - 1) * d1).max(2 * (nu - 1) * d2))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genera() {
        assert_eq!(genus_product(3, 2, 0, 0), 2);
        assert_eq!(genus_product(4, 2, 0, 1), 5);
        assert_eq!(genus_product(1, 1, 0, 0), 0);
        assert_eq!(genus_plane(3), 1);
        assert_eq!(genus_plane(5), 6);
        assert_eq!(genus_plane(1), 0);
    }

    #[test]
    fn product_examples() {
        let v =
            eval_product_bound(&family_spec(SharpFamily::LinesPullback, 3, 2).unwrap()).unwrap();
        assert_eq!((v.lhs.clone(), v.rhs.clone()), (6.into(), 6.into()));
        assert!(v.equality && v.conclusion == Conclusion::Inconclusive);
        let v = eval_product_bound(&CurveSpec::product(0, 1, 4, 2, 2, 0).with_genus(5)).unwrap();
        assert_eq!((v.lhs.clone(), v.rhs.clone()), (8.into(), 8.into()));
        let v = eval_product_bound(&CurveSpec::product(0, 0, 3, 3, 1, 0).with_genus(4)).unwrap();
        assert_eq!(v.relation, Relation::Greater);
        assert!(v.is_finite());
    }

    #[test]
    fn corollaries() {
        assert!(eval_projection_bound(4, 0, 2, 1).is_finite());
        assert_eq!(eval_projection_bound(2, 0, 2, 2).relation, Relation::Less);
        assert!(!eval_projection_bound(5, 5, 1, 1).is_finite());
        let v = eval_plane_bound(6, 5, 0, 2);
        assert_eq!((v.lhs, v.rhs), (10.into(), 8.into()));
        assert_eq!(eval_plane_bound(3, 4, 0, 2).relation, Relation::Less);
        assert!(eval_plane_bound(2, 9, 0, 1).is_finite());
    }

    fn find<'a>(vs: &'a [Verdict], id: &str) -> &'a Verdict {
        vs.iter().find(|v| v.criterion == id).unwrap()
    }

    #[test]
    fn rules() {
        let mut s = CurveSpec::plane(4, 2, 5).with_genus(3);
        let vs = rule_table(&s).unwrap();
        assert!(find(&vs, "quadratic_integral_plane_a").is_finite());
        s.r = 3;
        s.hyperelliptic = Some(false);
        assert!(find(&rule_table(&s).unwrap(), "quadratic_integral_plane_b").is_finite());
        s.r = 4;
        s.hyperelliptic = Some(true);
        let vs = rule_table(&s).unwrap();
        let a = find(&vs, "quadratic_integral_plane_a");
        assert_eq!(a.conclusion, Conclusion::Inconclusive);
        assert_eq!(
            find(&vs, "quadratic_integral_plane_b").conclusion,
            Conclusion::HypothesesUnmet
        );
        assert!(!find(&vs, "quadratic_integral_a").notes.is_empty());
        assert_eq!(
            find(&vs, "quadratic_points").conclusion,
            Conclusion::HypothesesUnmet
        );
    }

    #[test]
    fn bielliptic_case() {
        let mut s = CurveSpec::product(0, 1, 5, 2, 2, 1);
        s.bielliptic = Some(true);
        s.nonsingular = Some(true);
        let vs = rule_table(&s).unwrap();
        assert!(find(&vs, "bielliptic_type_a2").is_finite());
        assert!(find(&vs, "product_bound").is_finite());
        s.r = 0;
        assert!(!find(&rule_table(&s).unwrap(), "bielliptic_type_a2").is_finite());
    }
}
