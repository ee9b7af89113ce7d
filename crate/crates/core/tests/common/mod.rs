//! Fixtures and independent oracles shared by the integration tests.
//!
//! The oracles work in f64 or plain big-integer arithmetic so that they do
//! not lean on the exact geometry they are checking.
#![allow(dead_code)]

use dustboard::catalog;
use dustboard::dissection::DissectionPlan;
use dustboard::exactnum::{rat, QSqrt2, Rational};
use dustboard::geom::{ConvexPolygon, Point, Triangle};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::Rng;

pub const TRICKY_BASES: [[(i64, i64); 3]; 3] = [
    [(0, 0), (1, 0), (0, 1)],
    [(0, 0), (4, 0), (0, 3)],
    [(0, 0), (3, 0), (1, 2)],
];
pub const TRICKY_S: [(i64, i64); 4] = [(1, 4), (1, 3), (1, 2), (2, 3)];
pub const PYTHAGORAS: [(i64, i64); 4] = [(1, 1), (2, 1), (4, 3), (12, 5)];
pub const CASE1_M: [u32; 3] = [1, 2, 3];
pub const CASE2: [(u32, u32); 4] = [(2, 1), (3, 1), (3, 2), (4, 1)];

pub fn triangle(pts: [(i64, i64); 3]) -> Triangle {
    Triangle::new(
        Point::int(pts[0].0, pts[0].1),
        Point::int(pts[1].0, pts[1].1),
        Point::int(pts[2].0, pts[2].1),
    )
    .expect("counterclockwise fixture")
}

pub struct Fixture {
    pub name: String,
    pub plan: DissectionPlan,
    /// Closed-form target area.
    pub expected_area: QSqrt2,
}

pub fn tricky_fixtures() -> Vec<Fixture> {
    let mut out = Vec::new();
    for base in TRICKY_BASES {
        for (n, d) in TRICKY_S {
            let t = triangle(base);
            let s = rat(n, d);
            let plan = catalog::tricky_triangle(&t, &s).expect("in range");
            let expected = (QSqrt2::from_int(3) + QSqrt2::from_rational(&s * &s)) * t.area();
            out.push(Fixture {
                name: format!("tricky-triangle {base:?} s={n}/{d}"),
                plan,
                expected_area: expected,
            });
        }
    }
    out
}

/// Every passing catalog plan in the acceptance sweep.
pub fn passing_fixtures() -> Vec<Fixture> {
    let mut out = vec![Fixture {
        name: "three-squares".into(),
        plan: catalog::three_squares_correct(),
        expected_area: QSqrt2::from_int(3),
    }];
    for (a, b) in PYTHAGORAS {
        out.push(Fixture {
            name: format!("pythagoras {a},{b}"),
            plan: catalog::pythagoras_two_squares(&rat(a, 1), &rat(b, 1)).expect("in range"),
            expected_area: QSqrt2::from_int(a * a + b * b),
        });
    }
    for m in CASE1_M {
        let mi = i64::from(m);
        out.push(Fixture {
            name: format!("case1 m={m}"),
            plan: catalog::squares_sum_equal(m).expect("in range"),
            expected_area: QSqrt2::from_int(2 * mi * mi),
        });
    }
    for (a, b) in CASE2 {
        let (ai, bi) = (i64::from(a), i64::from(b));
        out.push(Fixture {
            name: format!("case2 {a},{b}"),
            plan: catalog::squares_sum_unequal(a, b).expect("in range"),
            expected_area: QSqrt2::from_int((ai - bi) * (ai - bi) + 2 * ai * bi),
        });
    }
    out.extend(tricky_fixtures());
    out
}

pub fn f64_poly(p: &ConvexPolygon) -> Vec<(f64, f64)> {
    p.vertices()
        .iter()
        .map(|v| (v.x.to_f64(), v.y.to_f64()))
        .collect()
}

/// Smallest signed distance-like margin of `pt` from the edges of a
/// counterclockwise polygon; positive inside.
fn margin(poly: &[(f64, f64)], pt: (f64, f64)) -> f64 {
    let n = poly.len();
    (0..n)
        .map(|i| {
            let (ax, ay) = poly[i];
            let (bx, by) = poly[(i + 1) % n];
            let (ex, ey) = (bx - ax, by - ay);
            (ex * (pt.1 - ay) - ey * (pt.0 - ax)) / (ex * ex + ey * ey).sqrt()
        })
        .fold(f64::INFINITY, f64::min)
}

pub const EPS: f64 = 1e-9;

#[derive(Debug, Default, Clone, Copy)]
pub struct Coverage {
    pub samples: usize,
    /// Samples not within `EPS` of any piece in the closed sense.
    pub uncovered: usize,
    /// Samples away from every piece boundary that are strictly inside
    /// some number of pieces other than one.
    pub strict_not_one: usize,
    /// Samples strictly inside two or more pieces.
    pub multiply_covered: usize,
}

/// Uniform samples of the target interior, classified against the placed
/// pieces with f64 geometry.
pub fn monte_carlo(plan: &DissectionPlan, samples: usize, rng: &mut impl Rng) -> Coverage {
    let target = f64_poly(&plan.target.shape);
    let pieces: Vec<Vec<(f64, f64)>> = plan
        .pieces
        .iter()
        .map(|p| f64_poly(&p.placed().expect("invertible motion")))
        .collect();
    let (mut x0, mut y0, mut x1, mut y1) = (
        f64::INFINITY,
        f64::INFINITY,
        f64::NEG_INFINITY,
        f64::NEG_INFINITY,
    );
    for &(x, y) in &target {
        x0 = x0.min(x);
        y0 = y0.min(y);
        x1 = x1.max(x);
        y1 = y1.max(y);
    }
    let mut c = Coverage::default();
    while c.samples < samples {
        let pt = (rng.gen_range(x0..x1), rng.gen_range(y0..y1));
        if margin(&target, pt) <= EPS {
            continue;
        }
        c.samples += 1;
        let margins: Vec<f64> = pieces.iter().map(|p| margin(p, pt)).collect();
        if margins.iter().all(|&m| m < -EPS) {
            c.uncovered += 1;
        }
        let strict = margins.iter().filter(|&&m| m > EPS).count();
        let near_edge = margins.iter().any(|&m| m.abs() <= EPS);
        if !near_edge && strict != 1 {
            c.strict_not_one += 1;
        }
        if strict >= 2 {
            c.multiply_covered += 1;
        }
    }
    c
}

/// Sign of `a + b√2` from a 64-digit fixed-point evaluation in plain
/// integers. `None` when the evaluation cannot separate the value from 0.
pub fn sign_oracle(a: &Rational, b: &Rational) -> Option<i32> {
    let scale = BigInt::from(10).pow(64);
    let sqrt2 = (BigInt::from(2) * &scale * &scale).sqrt();
    // value · qa · qb · 10^64 with √2 truncated; the truncation error is
    // below |pb · qa|.
    let (pa, qa) = (a.numer(), a.denom());
    let (pb, qb) = (b.numer(), b.denom());
    let est = pa * qb * &scale + pb * qa * &sqrt2;
    let err = (pb * qa).abs();
    if pb.is_zero() {
        return Some(sign(&est));
    }
    if est.abs() > err {
        Some(sign(&est))
    } else {
        None
    }
}

fn sign(x: &BigInt) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

pub fn random_rational(rng: &mut impl Rng, max: i64) -> Rational {
    let n = rng.gen_range(-max..=max);
    let d = rng.gen_range(1..=max);
    rat(n, d)
}

pub fn random_q2(rng: &mut impl Rng, max: i64) -> QSqrt2 {
    QSqrt2::new(random_rational(rng, max), random_rational(rng, max))
}

pub fn nudge(p: &Point, dir: usize) -> Point {
    let d = QSqrt2::ratio(1, 1000);
    match dir {
        0 => Point::new(&p.x + &d, p.y.clone()),
        1 => Point::new(&p.x - &d, p.y.clone()),
        2 => Point::new(p.x.clone(), &p.y + &d),
        _ => Point::new(p.x.clone(), &p.y - &d),
    }
}

/// Moves one vertex of one polygon in the plan by 1/1000 along an axis.
/// `None` if the moved polygon is no longer strictly convex.
pub fn mutate(plan: &DissectionPlan, rng: &mut impl Rng) -> Option<(DissectionPlan, String)> {
    let mut plan = plan.clone();
    let polys = plan.sources.len() + plan.pieces.len() + 1;
    let k = rng.gen_range(0..polys);
    let dir = rng.gen_range(0..4);
    let (shape, what) = if k < plan.sources.len() {
        let s = &mut plan.sources[k];
        (&mut s.shape, format!("source {}", s.label))
    } else if k < plan.sources.len() + plan.pieces.len() {
        let p = &mut plan.pieces[k - plan.sources.len()];
        (&mut p.shape, format!("piece {}", p.id))
    } else {
        (&mut plan.target.shape, "target".to_string())
    };
    let i = rng.gen_range(0..shape.len());
    let mut pts = shape.vertices().to_vec();
    pts[i] = nudge(&pts[i], dir);
    *shape = ConvexPolygon::new(pts).ok()?;
    Some((plan, format!("{what} vertex {i} dir {dir}")))
}

pub const GOLDEN_DIR: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden");

/// CLI argument lists for each committed golden plan, keyed by file stem.
pub const GOLDEN_CASES: [(&str, &[&str]); 6] = [
    (
        "tricky-triangle",
        &["tricky-triangle", "--base", "0,0,3,0,1,2", "--s", "1/3"],
    ),
    ("three-squares", &["three-squares"]),
    ("three-squares-flawed", &["three-squares-flawed"]),
    ("pythagoras", &["pythagoras", "--a", "4", "--b", "3"]),
    ("case1", &["case1", "--m", "2"]),
    ("case2", &["case2", "--a", "3", "--b", "2"]),
];

/// Library-side rendition of every golden file: plan JSON and figure SVG
/// per case, plus one panel.
pub fn golden_outputs() -> Vec<(String, String)> {
    use dustboard::catalog::{construct, parse_base, ConstructionParams, Variant};
    use dustboard::dissection::write_plan;
    use dustboard::exactnum::parse_rational;
    use dustboard::render::{render_panel, render_plan, RenderStyle};

    let style = RenderStyle::default();
    let mut out = Vec::new();
    for (stem, args) in GOLDEN_CASES {
        let mut p = ConstructionParams::new(Variant::parse(args[0]).expect("variant"));
        let mut it = args[1..].chunks(2);
        while let Some([flag, value]) = it.next() {
            match *flag {
                "--base" => p.base_triangle = Some(parse_base(value).expect("base")),
                "--s" => p.ratio_s = Some(parse_rational(value).expect("s")),
                "--a" => p.a = Some(parse_rational(value).expect("a")),
                "--b" => p.b = Some(parse_rational(value).expect("b")),
                "--m" => p.m = Some(value.parse().expect("m")),
                other => panic!("unexpected flag {other}"),
            }
        }
        let plan = construct(&p).expect("golden params are valid");
        out.push((format!("{stem}.json"), write_plan(&plan)));
        out.push((
            format!("{stem}.svg"),
            render_plan(&plan, &style).expect("renders").text,
        ));
        if stem == "three-squares" {
            let panel = render_panel(&plan, 3, 3, &style, true).expect("square target");
            out.push(("three-squares-panel.svg".to_string(), panel.text));
        }
    }
    out
}
