//! Generators for the classical constructions, plus the exact analysis of
//! the artisans' flawed three-squares assembly.
//!
//! Generators only build plans; whether a plan is a valid dissection is
//! decided by [`crate::dissection::verify_plan`].

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed};
use thiserror::Error;

use crate::dissection::{DissectionPlan, Figure, PlacedPiece};
use crate::exactnum::{rat, QSqrt2, Rational};
use crate::geom::{find_motion, ConvexPolygon, Point, RigidMotion, Triangle};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid parameters: {0}")]
pub struct CatalogError(pub String);

fn param_err<T>(msg: impl Into<String>) -> Result<T, CatalogError> {
    Err(CatalogError(msg.into()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    TrickyTriangle,
    ThreeSquares,
    ThreeSquaresFlawed,
    Pythagoras,
    Case1,
    Case2,
}

impl Variant {
    pub const ALL: [Variant; 6] = [
        Variant::TrickyTriangle,
        Variant::ThreeSquares,
        Variant::ThreeSquaresFlawed,
        Variant::Pythagoras,
        Variant::Case1,
        Variant::Case2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Variant::TrickyTriangle => "tricky-triangle",
            Variant::ThreeSquares => "three-squares",
            Variant::ThreeSquaresFlawed => "three-squares-flawed",
            Variant::Pythagoras => "pythagoras",
            Variant::Case1 => "case1",
            Variant::Case2 => "case2",
        }
    }

    /// Parameter signature with defaults, for `list`.
    pub fn signature(self) -> &'static str {
        match self {
            Variant::TrickyTriangle => {
                "[--base x1,y1,x2,y2,x3,y3 (default 0,0,1,0,0,1)] [--s p/q in (0,1) (default 1/2)]"
            }
            Variant::ThreeSquares => "(no parameters)",
            Variant::ThreeSquaresFlawed => "(no parameters; fails verification by design)",
            Variant::Pythagoras => "[--a p/q] [--b p/q] with a >= b > 0 (default 2, 1)",
            Variant::Case1 => "[--m N] with N >= 1 (default 1)",
            Variant::Case2 => "[--a N] [--b N] integers with a > b >= 1 (default 2, 1)",
        }
    }

    pub fn parse(s: &str) -> Option<Variant> {
        Variant::ALL.into_iter().find(|v| v.name() == s)
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionParams {
    pub variant: Variant,
    pub base_triangle: Option<Triangle>,
    pub ratio_s: Option<Rational>,
    pub a: Option<Rational>,
    pub b: Option<Rational>,
    pub m: Option<u32>,
}

impl ConstructionParams {
    pub fn new(variant: Variant) -> Self {
        ConstructionParams {
            variant,
            base_triangle: None,
            ratio_s: None,
            a: None,
            b: None,
            m: None,
        }
    }
}

fn require<T: Clone>(v: &Option<T>, name: &str, variant: Variant) -> Result<T, CatalogError> {
    v.clone()
        .ok_or_else(|| CatalogError(format!("{variant} requires parameter {name}")))
}

fn small_int(r: &Rational, name: &str) -> Result<u32, CatalogError> {
    if !r.is_integer() {
        return param_err(format!("{name} must be an integer"));
    }
    u32::try_from(r.to_integer()).or_else(|_| param_err(format!("{name} out of range")))
}

pub fn construct(params: &ConstructionParams) -> Result<DissectionPlan, CatalogError> {
    let v = params.variant;
    match v {
        Variant::TrickyTriangle => tricky_triangle(
            &require(&params.base_triangle, "base", v)?,
            &require(&params.ratio_s, "s", v)?,
        ),
        Variant::ThreeSquares => Ok(three_squares_correct()),
        Variant::ThreeSquaresFlawed => Ok(three_squares_flawed()),
        Variant::Pythagoras => {
            pythagoras_two_squares(&require(&params.a, "a", v)?, &require(&params.b, "b", v)?)
        }
        Variant::Case1 => squares_sum_equal(require(&params.m, "m", v)?),
        Variant::Case2 => squares_sum_unequal(
            small_int(&require(&params.a, "a", v)?, "a")?,
            small_int(&require(&params.b, "b", v)?, "b")?,
        ),
    }
}

fn q(n: i64) -> QSqrt2 {
    QSqrt2::from_int(n)
}

fn qr(r: &Rational) -> QSqrt2 {
    QSqrt2::from_rational(r.clone())
}

fn pt(x: QSqrt2, y: QSqrt2) -> Point {
    Point::new(x, y)
}

fn poly(points: Vec<Point>) -> ConvexPolygon {
    ConvexPolygon::new(points).expect("catalog polygon")
}

fn unit_square_at(x: QSqrt2, y: QSqrt2) -> ConvexPolygon {
    let o = pt(x, y);
    poly(
        [(0, 0), (1, 0), (1, 1), (0, 1)]
            .iter()
            .map(|&(dx, dy)| o.add(&Point::int(dx, dy)))
            .collect(),
    )
}

fn fmt_point(p: &Point) -> String {
    format!("({}, {})", p.x, p.y)
}

#[derive(Default)]
struct Builder {
    sources: Vec<Figure>,
    pieces: Vec<PlacedPiece>,
    meta: BTreeMap<String, String>,
}

impl Builder {
    fn new(construction: &str) -> Self {
        let mut b = Builder::default();
        b.meta("construction", construction);
        b
    }

    fn meta(&mut self, k: &str, v: impl Into<String>) {
        self.meta.insert(k.to_string(), v.into());
    }

    fn source(&mut self, label: impl Into<String>, shape: ConvexPolygon) {
        self.sources.push(Figure::new(label, shape));
    }

    fn piece(
        &mut self,
        id: impl Into<String>,
        source: &str,
        shape: ConvexPolygon,
        motion: RigidMotion,
    ) {
        assert!(motion.is_rigid(), "catalog motion must be rigid");
        self.pieces
            .push(PlacedPiece::new(id, source, shape, motion));
    }

    /// Adds a piece whose source shape is `src` and whose target shape is
    /// `dst`, with the motion recovered from the two.
    fn piece_to(
        &mut self,
        id: impl Into<String>,
        source: &str,
        src: ConvexPolygon,
        dst: &ConvexPolygon,
    ) {
        let m = find_motion(&src, dst).expect("catalog piece must be congruent to its placement");
        self.piece(id, source, src, m);
    }

    /// Splits `assembled` along the one target edge it crosses. The inner
    /// part keeps `to_assembled`; the part sticking out is turned 180° about
    /// the crossing point on that edge, which drops it into the gap on the
    /// far side. `to_assembled` carries source coordinates to the assembled
    /// position.
    fn cut_and_reflect(
        &mut self,
        id: &str,
        source: &str,
        assembled: &ConvexPolygon,
        to_assembled: &RigidMotion,
        target: &ConvexPolygon,
    ) {
        let back = to_assembled.inverse().expect("rigid");
        let to_source = |p: &ConvexPolygon| back.map_polygon(p).expect("rigid");
        let (inner, out, crossing) = cut_protrusion(assembled, target)
            .unwrap_or_else(|| panic!("piece {id} must stick out across exactly one target edge"));
        let flip = RigidMotion::point_reflection(&crossing);
        let (in_id, out_id) = (format!("{id}.in"), format!("{id}.out"));
        self.piece(&in_id, source, to_source(&inner), to_assembled.clone());
        self.piece(&out_id, source, to_source(&out), flip.compose(to_assembled));
        self.meta(&format!("protrusion.{out_id}"), in_id);
        self.meta(&format!("crossing.{out_id}"), fmt_point(&crossing));
    }

    fn finish(self, target: Figure) -> DissectionPlan {
        DissectionPlan::new(self.sources, self.pieces, target, self.meta)
            .expect("catalog plans are structurally valid")
    }
}

/// For a triangle crossing exactly one edge of `target`, returns the inner
/// part, the triangular protrusion and the crossing point: the protrusion
/// vertex on the edge that is not a vertex of `tri`.
fn cut_protrusion(
    tri: &ConvexPolygon,
    target: &ConvexPolygon,
) -> Option<(ConvexPolygon, ConvexPolygon, Point)> {
    let mut found = None;
    for (p, q) in target.edges() {
        if let Some(out) = tri.clip_left(q, p) {
            if found.is_some() {
                return None;
            }
            let inner = tri.clip_left(p, q)?;
            found = Some((inner, out));
        }
    }
    let (inner, out) = found?;
    if out.len() != 3 {
        return None;
    }
    let mut fresh = out
        .vertices()
        .iter()
        .filter(|v| !tri.vertices().contains(v));
    let crossing = fresh.next()?.clone();
    if fresh.next().is_some() {
        return None;
    }
    Some((inner, out, crossing))
}

/// Lays shapes out left to right with a half-unit gap, bottoms on y = 0.
/// Returns, per shape, the motion from its slot back to where it was given.
fn row_layout(shapes: &[ConvexPolygon]) -> Vec<RigidMotion> {
    let mut x = QSqrt2::zero();
    let mut out = Vec::new();
    for s in shapes {
        let v = s.vertices();
        let min_x = v.iter().map(|p| &p.x).min().expect("non-empty").clone();
        let max_x = v.iter().map(|p| &p.x).max().expect("non-empty").clone();
        let min_y = v.iter().map(|p| &p.y).min().expect("non-empty").clone();
        out.push(RigidMotion::translation(&pt(&min_x - &x, min_y)));
        x = &x + &(&max_x - &min_x) + QSqrt2::ratio(1, 2);
    }
    out
}

fn side_lengths2(t: &Triangle) -> [QSqrt2; 3] {
    [
        t.q.sub(&t.p).norm2(),
        t.r.sub(&t.q).norm2(),
        t.p.sub(&t.r).norm2(),
    ]
}

/// Similarity up to any vertex correspondence, by proportional squared sides.
pub fn triangles_similar(t1: &Triangle, t2: &Triangle) -> bool {
    let e1 = side_lengths2(t1);
    let e2 = side_lengths2(t2);
    const PERMS: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    PERMS.iter().any(|p| {
        &e1[0] * &e2[p[1]] == &e1[1] * &e2[p[0]] && &e1[0] * &e2[p[2]] == &e1[2] * &e2[p[0]]
    })
}

/// Three copies of `base` and one copy scaled by `s` and turned 180°,
/// reassembled into one large triangle of area `(3 + s²)·area(base)`.
///
/// With centroid `c` and `A, B, C` the base vertices relative to it, the
/// copies sit at `base + (−sB − C)`, `base + (−sC − A)`, `base + (−sA − B)`
/// around the small triangle `c − s·(A, B, C)`, and the large triangle has
/// vertices `c + 2A + (1−s)B`, `c + 2B + (1−s)C`, `c + 2C + (1−s)A`. Each
/// copy then pokes out across one large edge by a triangle that is the
/// point reflection of the uncovered triangle next to it.
pub fn tricky_triangle(base: &Triangle, s: &Rational) -> Result<DissectionPlan, CatalogError> {
    if !s.is_positive() || *s >= Rational::one() {
        return param_err("s must satisfy 0 < s < 1");
    }
    let base = Triangle::new(base.p.clone(), base.q.clone(), base.r.clone())
        .or_else(|_| param_err("base triangle must be non-degenerate and counterclockwise"))?;
    let c = base.p.add(&base.q).add(&base.r).scale(&rat(1, 3));
    let a = base.p.sub(&c);
    let b = base.q.sub(&c);
    let cc = base.r.sub(&c);
    let one_minus = Rational::one() - s;
    let neg_s = -s.clone();

    let shifts = [
        b.scale(&neg_s).sub(&cc),
        cc.scale(&neg_s).sub(&a),
        a.scale(&neg_s).sub(&b),
    ];
    let big = Triangle::new(
        c.add(&a.scale(&rat(2, 1))).add(&b.scale(&one_minus)),
        c.add(&b.scale(&rat(2, 1))).add(&cc.scale(&one_minus)),
        c.add(&cc.scale(&rat(2, 1))).add(&a.scale(&one_minus)),
    )
    .expect("large triangle is counterclockwise");
    let small = poly(vec![
        c.sub(&a.scale(s)),
        c.sub(&b.scale(s)),
        c.sub(&cc.scale(s)),
    ]);
    let copies: Vec<ConvexPolygon> = shifts
        .iter()
        .map(|t| base.to_polygon().translate(t))
        .collect();

    let mut bld = Builder::new("tricky-triangle");
    bld.meta("s", format!("{}/{}", s.numer(), s.denom()));
    bld.meta("base", [&base.p, &base.q, &base.r].map(fmt_point).join(" "));
    let similar = triangles_similar(&base, &big);
    bld.meta("target_similar_to_base", similar.to_string());

    let target = big.to_polygon();
    let mut all = copies.clone();
    all.push(small.clone());
    let slots = row_layout(&all);
    for (k, copy) in copies.iter().enumerate() {
        let label = format!("copy{}", k + 1);
        let back = slots[k].inverse().expect("rigid");
        bld.source(&label, back.map_polygon(copy).expect("rigid"));
        bld.cut_and_reflect(&label, &label, copy, &slots[k], &target);
    }
    let back = slots[3].inverse().expect("rigid");
    bld.source("small", back.map_polygon(&small).expect("rigid"));
    bld.piece(
        "small",
        "small",
        back.map_polygon(&small).expect("rigid"),
        slots[3].clone(),
    );
    Ok(bld.finish(Figure::new("large", target)))
}

/// Three unit squares into one square of area 3: one square kept whole,
/// the other two halved on a diagonal and set around it, the overhanging
/// corners cut off and turned into the gaps.
pub fn three_squares_correct() -> DissectionPlan {
    let h = QSqrt2::half_sqrt2();
    let r2 = QSqrt2::sqrt2();
    let center = pt(QSqrt2::ratio(1, 2), QSqrt2::ratio(1, 2));
    // Bottom half-square: hypotenuse AG along the central square's bottom
    // line, right angle at B below it.
    let a = Point::int(0, 0);
    let bb = pt(h.clone(), -&h);
    let g = pt(r2.clone(), q(0));
    let bottom = poly(vec![a.clone(), bb.clone(), g.clone()]);
    let turns: Vec<RigidMotion> = (0..4)
        .map(|k| RigidMotion::quarter_turn_about(k, &center))
        .collect();
    let corners: Vec<Point> = turns.iter().map(|t| t.apply_point(&bb)).collect();
    let target = poly(corners.clone());

    let mut bld = Builder::new("three-squares");
    let src_x = [q(0), QSqrt2::ratio(3, 2), q(3)];
    bld.source("TIKL", unit_square_at(src_x[0].clone(), q(0)));
    bld.source("ABGD", unit_square_at(src_x[1].clone(), q(0)));
    bld.source("EWZH", unit_square_at(src_x[2].clone(), q(0)));
    bld.piece(
        "TIKL",
        "TIKL",
        unit_square_at(q(0), q(0)),
        RigidMotion::identity(),
    );

    // A source slot at x, turned -45° about its lower left corner, is the
    // assembled bottom square A, B, G and the fourth corner (h, h).
    let upright = |x: &QSqrt2| {
        RigidMotion::rotation(h.clone(), -&h)
            .expect("rigid")
            .compose(&RigidMotion::translation(&pt(-x, q(0))))
    };
    let letters = ["B", "Z", "W", "D"];
    // Bottom and left from ABGD, right and top from EWZH.
    let plan = [
        (0usize, "ABGD", false),
        (1, "EWZH", false),
        (2, "EWZH", true),
        (3, "ABGD", true),
    ];
    for (k, source, other_half) in plan {
        let slot_x = if source == "ABGD" {
            &src_x[1]
        } else {
            &src_x[2]
        };
        let mut to_bottom = upright(slot_x);
        if other_half {
            let mid = pt(slot_x + QSqrt2::ratio(1, 2), QSqrt2::ratio(1, 2));
            to_bottom = to_bottom.compose(&RigidMotion::point_reflection(&mid));
        }
        let to_assembled = turns[k].compose(&to_bottom);
        let assembled = turns[k].map_polygon(&bottom).expect("rigid");
        bld.cut_and_reflect(letters[k], source, &assembled, &to_assembled, &target);
    }

    let m = bb.midpoint(&corners[1]);
    let labels = [
        ("A", a),
        ("B", bb),
        ("G", g),
        ("M", m),
        ("Z", corners[1].clone()),
        ("H", Point::int(1, 0)),
        ("W", corners[2].clone()),
        ("D", corners[3].clone()),
    ];
    for (name, p) in labels {
        bld.meta(&format!("point.{name}"), fmt_point(&p));
    }
    bld.finish(Figure::new("BZWD", target))
}

/// Side of the artisans' assembled square, `1 + √2/2`.
pub fn flawed_side() -> QSqrt2 {
    QSqrt2::one() + QSqrt2::half_sqrt2()
}

/// The artisans' assembly: a unit square in one corner of a square of side
/// `1 + √2/2`, the two halves of a second square along the sides meeting at
/// the opposite corner, and the third square cut into a small right
/// isosceles triangle and two congruent trapezoids filling the rest. The
/// pieces cover the outline but the two halves overlap the unit square.
pub fn three_squares_flawed() -> DissectionPlan {
    let h = QSqrt2::half_sqrt2();
    let hh = h.scale(&rat(1, 2));
    let l = flawed_side();
    let one = q(1);
    let zero = q(0);
    let p = |x: &QSqrt2, y: &QSqrt2| pt(x.clone(), y.clone());

    let mut bld = Builder::new("three-squares-flawed");
    bld.meta("assembled_side", l.to_string());
    let center = unit_square_at(zero.clone(), zero.clone());
    let halved = unit_square_at(QSqrt2::ratio(3, 2), zero.clone());
    let cut = unit_square_at(q(3), zero.clone());
    bld.source("center", center.clone());
    bld.source("halved", halved);
    bld.source("trapezoids", cut);
    bld.piece("center", "center", center, RigidMotion::identity());

    let x0 = QSqrt2::ratio(3, 2);
    let x1 = QSqrt2::ratio(5, 2);
    let lower = poly(vec![p(&x0, &zero), p(&x1, &zero), p(&x1, &one)]);
    let upper = poly(vec![p(&x0, &zero), p(&x1, &one), p(&x0, &one)]);
    let t1 = poly(vec![p(&zero, &l), p(&zero, &h), p(&one, &l)]);
    let t2 = poly(vec![p(&l, &zero), p(&l, &one), p(&h, &zero)]);
    bld.piece_to("T1", "halved", upper, &t1);
    bld.piece_to("T2", "halved", lower, &t2);

    let (c3, c35, c4) = (q(3), QSqrt2::ratio(7, 2), q(4));
    let half = QSqrt2::ratio(1, 2);
    let s_src = poly(vec![p(&c35, &half), p(&c4, &one), p(&c3, &one)]);
    let zl = poly(vec![
        p(&c3, &zero),
        p(&c35, &zero),
        p(&c35, &half),
        p(&c3, &one),
    ]);
    let zr = poly(vec![
        p(&c35, &zero),
        p(&c4, &zero),
        p(&c4, &one),
        p(&c35, &half),
    ]);
    let s_dst = poly(vec![p(&l, &one), p(&l, &l), p(&one, &l)]);
    let mid = &one + &hh;
    let z1 = poly(vec![
        p(&(&one - &h), &one),
        p(&one, &one),
        p(&mid, &mid),
        p(&one, &l),
    ]);
    let z2 = poly(vec![
        p(&one, &(&one - &h)),
        p(&l, &one),
        p(&mid, &mid),
        p(&one, &one),
    ]);
    bld.piece_to("S", "trapezoids", s_src, &s_dst);
    bld.piece_to("Z1", "trapezoids", zl, &z1);
    bld.piece_to("Z2", "trapezoids", zr, &z2);

    let target = poly(vec![p(&zero, &zero), p(&l, &zero), p(&l, &l), p(&zero, &l)]);
    bld.finish(Figure::new("outline", target))
}

/// Exact account of why the flawed assembly cannot be a square of area 3.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlawReport {
    pub assembled_side: QSqrt2,
    pub assembled_side_squared: QSqrt2,
    pub required_area: QSqrt2,
    pub excess_piece_area: QSqrt2,
    pub side_is_rational: bool,
    pub diagonal_is_rational: bool,
}

pub fn flawed_analysis() -> FlawReport {
    let side = flawed_side();
    let squared = side.square();
    let required = q(3);
    let excess = &required - &squared;
    FlawReport {
        side_is_rational: side.is_rational(),
        diagonal_is_rational: QSqrt2::sqrt2().is_rational(),
        assembled_side: side,
        assembled_side_squared: squared,
        required_area: required,
        excess_piece_area: excess,
    }
}

/// Two squares of sides `a ≥ b` into one of area `a² + b²`, with the small
/// square set against the big one's lower right corner.
pub fn pythagoras_two_squares(a: &Rational, b: &Rational) -> Result<DissectionPlan, CatalogError> {
    if !b.is_positive() {
        return param_err("a and b must be positive");
    }
    if a < b {
        return param_err("pythagoras requires a >= b");
    }
    let (qa, qb) = (qr(a), qr(b));
    let ab = &qa + &qb;
    let y0 = qr(&((a - b) * b / a));
    let z = q(0);
    let p = |x: &QSqrt2, y: &QSqrt2| pt(x.clone(), y.clone());

    let mut bld = Builder::new("pythagoras");
    bld.meta("a", format!("{}/{}", a.numer(), a.denom()));
    bld.meta("b", format!("{}/{}", b.numer(), b.denom()));
    bld.source(
        "a-square",
        poly(vec![p(&z, &z), p(&qa, &z), p(&qa, &qa), p(&z, &qa)]),
    );
    bld.source(
        "b-square",
        poly(vec![p(&qa, &z), p(&ab, &z), p(&ab, &qb), p(&qa, &qb)]),
    );

    let corner_s = p(&z, &qa);
    let corner_q = p(&ab, &qb);
    let up = RigidMotion::quarter_turn_about(1, &corner_s);
    let down = RigidMotion::quarter_turn_about(-1, &corner_q);
    let ring = |v: Vec<Point>| ConvexPolygon::from_ring(v);

    bld.piece(
        "a.corner",
        "a-square",
        poly(vec![p(&z, &z), p(&qb, &z), p(&z, &qa)]),
        up,
    );
    if a != b {
        bld.piece(
            "a.cut",
            "a-square",
            poly(vec![p(&qb, &z), p(&qa, &z), p(&qa, &y0)]),
            down.clone(),
        );
    }
    let small_cut =
        ring(vec![p(&qa, &z), p(&ab, &z), p(&ab, &qb), p(&qa, &y0)]).expect("positive area");
    bld.piece("b.cut", "b-square", small_cut, down);
    let rest = ring(vec![p(&qb, &z), p(&qa, &y0), p(&qa, &qa), p(&z, &qa)]).expect("positive area");
    bld.piece("a.rest", "a-square", rest, RigidMotion::identity());
    bld.piece(
        "b.rest",
        "b-square",
        poly(vec![p(&qa, &y0), p(&ab, &qb), p(&qa, &qb)]),
        RigidMotion::identity(),
    );

    let target = poly(vec![p(&qb, &z), corner_q, p(&qa, &ab), corner_s]);
    Ok(bld.finish(Figure::new("c-square", target)))
}

/// `2m²` unit squares, each halved on a diagonal, into a square of area
/// `2m²` built from an `m × m` grid of tilted two-unit squares.
pub fn squares_sum_equal(m: u32) -> Result<DissectionPlan, CatalogError> {
    if m < 1 {
        return param_err("m must be at least 1");
    }
    let mi = i64::from(m);
    let mut bld = Builder::new("case1");
    bld.meta("m", m.to_string());
    let legs = [(1, 0), (0, 1), (-1, 0), (0, -1)];
    let cols = 2 * mi;
    let spacing = QSqrt2::ratio(3, 2);
    let mut k = 0i64;
    for i in 0..mi {
        for j in 0..mi {
            let center = Point::int(i + j + 1, j - i);
            for pair in 0..2 {
                let label = format!("sq{}", k + 1);
                let (row, col) = (k / cols, k % cols);
                let o = pt(&spacing * &q(col), &spacing * &q(row));
                bld.source(&label, unit_square_at(o.x.clone(), o.y.clone()));
                let lo = poly(
                    [(0, 0), (1, 0), (1, 1)]
                        .iter()
                        .map(|&(x, y)| o.add(&Point::int(x, y)))
                        .collect(),
                );
                let hi = poly(
                    [(0, 0), (1, 1), (0, 1)]
                        .iter()
                        .map(|&(x, y)| o.add(&Point::int(x, y)))
                        .collect(),
                );
                for (half, src) in [("lo", lo), ("up", hi)] {
                    let (ux, uy) = legs[2 * pair + usize::from(half == "up")];
                    let dst = poly(vec![
                        center.clone(),
                        center.add(&Point::int(ux, uy)),
                        center.add(&Point::int(-uy, ux)),
                    ]);
                    bld.piece_to(format!("{label}.{half}"), &label, src, &dst);
                }
                k += 1;
            }
        }
    }
    let target = poly(vec![
        Point::int(0, 0),
        Point::int(mi, -mi),
        Point::int(2 * mi, 0),
        Point::int(mi, mi),
    ]);
    Ok(bld.finish(Figure::new("square", target)))
}

/// `a² + b²` unit squares into a square of side vector `(a, b)`: an
/// `(a−b)²` block kept whole in the middle and two `a × b` rectangles, each
/// cut along its diagonal into two of the four pinwheel triangles.
pub fn squares_sum_unequal(a: u32, b: u32) -> Result<DissectionPlan, CatalogError> {
    if b < 1 || a <= b {
        return param_err("case2 requires integers a > b >= 1");
    }
    let (ai, bi) = (i64::from(a), i64::from(b));
    let mut bld = Builder::new("case2");
    bld.meta("a", a.to_string());
    bld.meta("b", b.to_string());
    bld.meta(
        "identity",
        format!(
            "({a}-{b})^2 + 2*{a}*{b} = {a}^2 + {b}^2 = {}",
            ai * ai + bi * bi
        ),
    );

    let offset = Point::int(ai + 2, 0);
    let home = RigidMotion::translation(&offset.neg());
    let add_cell = |bld: &mut Builder, x: i64, y: i64, cut: Option<(Point, Point, Point)>| {
        let label = format!("c{x}_{y}");
        let cell = unit_square_at(q(x), q(y));
        let src = cell.translate(&offset);
        bld.source(&label, src.clone());
        match cut {
            None => bld.piece(&label, &label, src, home.clone()),
            Some((p0, p1, move_shift)) => {
                if let Some(stay) = cell.clip_left(&p0, &p1) {
                    bld.piece(
                        format!("{label}.stay"),
                        &label,
                        stay.translate(&offset),
                        home.clone(),
                    );
                }
                if let Some(moved) = cell.clip_left(&p1, &p0) {
                    let m = RigidMotion::translation(&move_shift).compose(&home);
                    bld.piece(format!("{label}.move"), &label, moved.translate(&offset), m);
                }
            }
        }
    };

    for y in bi..ai {
        for x in 0..ai - bi {
            add_cell(&mut bld, x, y, None);
        }
    }
    // Lower rectangle [0,a]×[0,b]; the part below its diagonal slides up the
    // left side of the target.
    let r1 = (Point::int(0, 0), Point::int(ai, bi), Point::int(-bi, ai));
    for y in 0..bi {
        for x in 0..ai {
            add_cell(&mut bld, x, y, Some(r1.clone()));
        }
    }
    // Upright rectangle [a−b,a]×[b,a+b]; the part beyond its diagonal slides
    // down to the origin corner.
    let r2 = (
        Point::int(ai, bi),
        Point::int(ai - bi, ai + bi),
        Point::int(-ai, -bi),
    );
    for y in bi..ai + bi {
        for x in ai - bi..ai {
            add_cell(&mut bld, x, y, Some(r2.clone()));
        }
    }
    let target = poly(vec![
        Point::int(0, 0),
        Point::int(ai, bi),
        Point::int(ai - bi, ai + bi),
        Point::int(-bi, ai),
    ]);
    Ok(bld.finish(Figure::new("square", target)))
}

/// Parses `x1,y1,x2,y2,x3,y3` (rationals) into a triangle.
pub fn parse_base(s: &str) -> Result<Triangle, CatalogError> {
    let nums = s
        .split(',')
        .map(|t| crate::exactnum::parse_rational(t).map(QSqrt2::from_rational))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CatalogError(format!("base: {e}")))?;
    if nums.len() != 6 {
        return param_err("base needs six coordinates x1,y1,x2,y2,x3,y3");
    }
    let p = |i: usize| pt(nums[i].clone(), nums[i + 1].clone());
    Triangle::new(p(0), p(2), p(4))
        .or_else(|_| param_err("base triangle must be non-degenerate and counterclockwise"))
}
