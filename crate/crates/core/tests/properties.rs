mod common;

use dustboard::exactnum::{rat, QSqrt2};
use dustboard::geom::{
    apply_motion, contains_convex, convex_clip, solve_rigid_motion, triangle_congruence_asa,
    ConvexPolygon, Point, RigidMotion, Triangle,
};
use proptest::prelude::*;

fn q2() -> impl Strategy<Value = QSqrt2> {
    (-60i64..=60, 1i64..=30, -60i64..=60, 1i64..=30)
        .prop_map(|(a, b, c, d)| QSqrt2::new(rat(a, b), rat(c, d)))
}

/// Rotations by multiples of 45° and by two Pythagorean angles, optionally
/// followed by a mirror, then a translation.
fn motion() -> impl Strategy<Value = RigidMotion> {
    let h = QSqrt2::half_sqrt2();
    let rotations = vec![
        (QSqrt2::one(), QSqrt2::zero()),
        (h.clone(), h.clone()),
        (QSqrt2::zero(), QSqrt2::one()),
        (-&h, h.clone()),
        (-QSqrt2::one(), QSqrt2::zero()),
        (-&h, -&h),
        (QSqrt2::zero(), -QSqrt2::one()),
        (h.clone(), -&h),
        (QSqrt2::ratio(3, 5), QSqrt2::ratio(4, 5)),
        (QSqrt2::ratio(12, 13), QSqrt2::ratio(-5, 13)),
    ];
    (prop::sample::select(rotations), any::<bool>(), q2(), q2()).prop_map(
        |((c, s), mirror, tx, ty)| {
            let rot = RigidMotion::rotation(c, s).unwrap();
            let lin = if mirror {
                rot.compose(&RigidMotion::reflection(&Point::default(), &Point::int(1, 0)).unwrap())
            } else {
                rot
            };
            RigidMotion::translation(&Point::new(tx, ty)).compose(&lin)
        },
    )
}

fn cross(o: (i64, i64), a: (i64, i64), b: (i64, i64)) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Strict convex hull of integer points (Andrew's monotone chain).
fn hull(mut pts: Vec<(i64, i64)>) -> Vec<(i64, i64)> {
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<(i64, i64)> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(i64, i64)> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn convex() -> impl Strategy<Value = ConvexPolygon> {
    prop::collection::vec((-8i64..=8, -8i64..=8), 3..9)
        .prop_map(hull)
        .prop_filter("needs area", |h| h.len() >= 3)
        .prop_map(|h| {
            ConvexPolygon::new(h.into_iter().map(|(x, y)| Point::int(x, y)).collect()).unwrap()
        })
}

fn triangle() -> impl Strategy<Value = Triangle> {
    (
        (-6i64..=6, -6i64..=6),
        (-6i64..=6, -6i64..=6),
        (-6i64..=6, -6i64..=6),
    )
        .prop_filter("non-degenerate", |(a, b, c)| cross(*a, *b, *c) != 0)
        .prop_map(|(a, b, c)| {
            let (b, c) = if cross(a, b, c) > 0 { (b, c) } else { (c, b) };
            Triangle::new(
                Point::int(a.0, a.1),
                Point::int(b.0, b.1),
                Point::int(c.0, c.1),
            )
            .unwrap()
        })
}

fn pairing() -> impl Strategy<Value = [usize; 3]> {
    prop::sample::select(vec![
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn field_axioms(x in q2(), y in q2(), z in q2()) {
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        if !x.is_zero() {
            prop_assert_eq!(&x * &x.inv().unwrap(), QSqrt2::one());
        }
    }

    #[test]
    fn sign_matches_oracle(x in q2()) {
        let oracle = common::sign_oracle(x.a(), x.b()).expect("separable");
        prop_assert_eq!(i32::from(x.signum()), oracle);
    }

    #[test]
    fn canonical_strings_round_trip(x in q2()) {
        let s = x.to_string();
        prop_assert!(!s.contains("+-"));
        prop_assert_eq!(s.parse::<QSqrt2>().unwrap(), x);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1_000))]

    #[test]
    fn motions_preserve_area(m in motion(), p in convex()) {
        let img = apply_motion(&m, &p).unwrap();
        prop_assert_eq!(img.area(), p.area());
        let back = apply_motion(&m.inverse().unwrap(), &img).unwrap();
        prop_assert!(back.same_as(&p));
    }

    #[test]
    fn clip_properties(a in convex(), b in convex()) {
        let ab = convex_clip(&a, &b).map(|c| c.area()).unwrap_or_default();
        let ba = convex_clip(&b, &a).map(|c| c.area()).unwrap_or_default();
        prop_assert_eq!(&ab, &ba);
        prop_assert!(ab <= a.area().min(b.area()));
        if contains_convex(&a, &b) {
            prop_assert_eq!(ab, b.area());
        }
    }

    #[test]
    fn asa_agrees_with_solver(t1 in triangle(), m in motion(), sigma in pairing(), other in triangle(), kind in 0u8..3) {
        let img: Vec<Point> = [&t1.p, &t1.q, &t1.r].iter().map(|p| m.apply_point(p)).collect();
        // Image vertex i sits at slot sigma[i]; reorder to counterclockwise if mirrored.
        let mut slots = vec![Point::default(); 3];
        for i in 0..3 {
            slots[sigma[i]] = img[i].clone();
        }
        let t2 = match kind {
            0 => Triangle::new(slots[0].clone(), slots[1].clone(), slots[2].clone())
                .or_else(|_| Triangle::new(slots[0].clone(), slots[2].clone(), slots[1].clone())),
            1 => Ok(other),
            _ => Triangle::new(slots[0].add(&Point::int(0, 1)), slots[1].clone(), slots[2].clone())
                .or_else(|_| Triangle::new(slots[0].add(&Point::int(0, 1)), slots[2].clone(), slots[1].clone())),
        };
        let Ok(t2) = t2 else { return Ok(()) };
        prop_assert_eq!(
            triangle_congruence_asa(&t1, &t2, &sigma),
            solve_rigid_motion(&t1, &t2, &sigma).is_some()
        );
    }
}

#[test]
fn asa_true_for_moved_triangles() {
    // The randomized agreement test above must not be vacuous.
    let t = Triangle::new(Point::int(0, 0), Point::int(3, 0), Point::int(1, 2)).unwrap();
    let m = RigidMotion::rotation(QSqrt2::ratio(3, 5), QSqrt2::ratio(4, 5)).unwrap();
    let img = Triangle::new(
        m.apply_point(&t.q),
        m.apply_point(&t.r),
        m.apply_point(&t.p),
    )
    .unwrap();
    assert!(triangle_congruence_asa(&t, &img, &[2, 0, 1]));
    assert_eq!(solve_rigid_motion(&t, &img, &[2, 0, 1]), Some(m));
}
