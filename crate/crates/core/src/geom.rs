//! Exact planar geometry over Q(√2): points, convex polygons, rigid motions,
//! clipping and triangle congruence.
//!
//! Every predicate reduces to the sign of a [`QSqrt2`], so there are no
//! tolerances anywhere in this module.

use std::fmt;

use thiserror::Error;

use crate::exactnum::{QSqrt2, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("polygon is not strictly convex and counterclockwise")]
    NotConvexCcw,
    #[error("motion not rigid")]
    NotRigid,
    #[error("degenerate triangle")]
    DegenerateTriangle,
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Point {
    pub x: QSqrt2,
    pub y: QSqrt2,
}

impl Point {
    pub fn new(x: QSqrt2, y: QSqrt2) -> Self {
        Point { x, y }
    }

    pub fn int(x: i64, y: i64) -> Self {
        Point::new(QSqrt2::from_int(x), QSqrt2::from_int(y))
    }

    pub fn add(&self, o: &Point) -> Point {
        Point::new(&self.x + &o.x, &self.y + &o.y)
    }

    pub fn sub(&self, o: &Point) -> Point {
        Point::new(&self.x - &o.x, &self.y - &o.y)
    }

    pub fn neg(&self) -> Point {
        Point::new(-&self.x, -&self.y)
    }

    pub fn mul(&self, k: &QSqrt2) -> Point {
        Point::new(&self.x * k, &self.y * k)
    }

    pub fn scale(&self, k: &Rational) -> Point {
        Point::new(self.x.scale(k), self.y.scale(k))
    }

    pub fn dot(&self, o: &Point) -> QSqrt2 {
        &self.x * &o.x + &self.y * &o.y
    }

    /// z-component of the 2D cross product.
    pub fn cross(&self, o: &Point) -> QSqrt2 {
        &self.x * &o.y - &self.y * &o.x
    }

    pub fn norm2(&self) -> QSqrt2 {
        self.dot(self)
    }

    pub fn midpoint(&self, o: &Point) -> Point {
        self.add(o).scale(&crate::exactnum::rat(1, 2))
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Twice the signed area of triangle `abc`; positive when counterclockwise.
pub fn orient(a: &Point, b: &Point, c: &Point) -> QSqrt2 {
    b.sub(a).cross(&c.sub(a))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Location {
    Inside,
    Boundary,
    Outside,
}

/// A strictly convex polygon with counterclockwise vertices and no
/// collinear or repeated vertices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ConvexPolygon {
    vertices: Vec<Point>,
}

impl ConvexPolygon {
    pub fn new(vertices: Vec<Point>) -> Result<Self, GeomError> {
        let n = vertices.len();
        if n < 3 {
            return Err(GeomError::TooFewVertices(n));
        }
        for i in 0..n {
            let a = &vertices[i];
            let b = &vertices[(i + 1) % n];
            for (k, c) in vertices.iter().enumerate() {
                if k != i && k != (i + 1) % n && !orient(a, b, c).is_positive() {
                    return Err(GeomError::NotConvexCcw);
                }
            }
        }
        Ok(ConvexPolygon { vertices })
    }

    /// Builds a polygon from a counterclockwise, possibly degenerate ring:
    /// repeated and collinear vertices are dropped. Returns `None` when
    /// nothing of positive area remains.
    pub fn from_ring(points: Vec<Point>) -> Option<Self> {
        let mut pts: Vec<Point> = Vec::with_capacity(points.len());
        for p in points {
            if pts.last() != Some(&p) {
                pts.push(p);
            }
        }
        while pts.len() > 1 && pts.first() == pts.last() {
            pts.pop();
        }
        loop {
            let n = pts.len();
            if n < 3 {
                return None;
            }
            let drop = (0..n).find(|&i| {
                let prev = &pts[(i + n - 1) % n];
                let next = &pts[(i + 1) % n];
                orient(prev, &pts[i], next).signum() == 0
            });
            match drop {
                Some(i) => {
                    pts.remove(i);
                }
                None => break,
            }
        }
        ConvexPolygon::new(pts).ok()
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn edges(&self) -> impl Iterator<Item = (&Point, &Point)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (&self.vertices[i], &self.vertices[(i + 1) % n]))
    }

    /// Shoelace area.
    pub fn area(&self) -> QSqrt2 {
        let twice: QSqrt2 = self.edges().map(|(a, b)| a.cross(b)).sum();
        twice.scale(&crate::exactnum::rat(1, 2))
    }

    pub fn translate(&self, v: &Point) -> ConvexPolygon {
        ConvexPolygon {
            vertices: self.vertices.iter().map(|p| p.add(v)).collect(),
        }
    }

    /// Equality up to a cyclic shift of the vertex list.
    pub fn same_as(&self, other: &ConvexPolygon) -> bool {
        let n = self.len();
        n == other.len()
            && (0..n).any(|s| (0..n).all(|i| self.vertices[i] == other.vertices[(i + s) % n]))
    }

    /// Part of the polygon on the left of (or on) the directed line `a → b`.
    pub fn clip_left(&self, a: &Point, b: &Point) -> Option<ConvexPolygon> {
        let n = self.len();
        let sides: Vec<QSqrt2> = self.vertices.iter().map(|p| orient(a, b, p)).collect();
        let mut out = Vec::with_capacity(n + 1);
        for i in 0..n {
            let j = (i + 1) % n;
            let (p, q) = (&self.vertices[i], &self.vertices[j]);
            let (sp, sq) = (sides[i].signum(), sides[j].signum());
            if sp >= 0 {
                out.push(p.clone());
            }
            if sp * sq < 0 {
                let t = sides[i]
                    .checked_div(&(&sides[i] - &sides[j]))
                    .expect("distinct sides");
                out.push(p.add(&q.sub(p).mul(&t)));
            }
        }
        ConvexPolygon::from_ring(out)
    }

    pub fn locate(&self, pt: &Point) -> Location {
        let mut on_edge = false;
        for (a, b) in self.edges() {
            match orient(a, b, pt).signum() {
                -1 => return Location::Outside,
                0 => on_edge = true,
                _ => {}
            }
        }
        if on_edge {
            Location::Boundary
        } else {
            Location::Inside
        }
    }
}

impl fmt::Debug for ConvexPolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.vertices).finish()
    }
}

pub fn area(poly: &ConvexPolygon) -> QSqrt2 {
    poly.area()
}

pub fn point_in_convex(pt: &Point, poly: &ConvexPolygon) -> Location {
    poly.locate(pt)
}

pub fn contains_convex(outer: &ConvexPolygon, inner: &ConvexPolygon) -> bool {
    inner
        .vertices()
        .iter()
        .all(|p| outer.locate(p) != Location::Outside)
}

/// Intersection of two convex polygons, or `None` when it has zero area.
pub fn convex_clip(a: &ConvexPolygon, b: &ConvexPolygon) -> Option<ConvexPolygon> {
    let mut cur = a.clone();
    for (p, q) in b.edges() {
        cur = cur.clip_left(p, q)?;
    }
    Some(cur)
}

/// `a \ b` as a list of convex pieces with pairwise disjoint interiors.
pub fn convex_difference(a: &ConvexPolygon, b: &ConvexPolygon) -> Vec<ConvexPolygon> {
    let mut out = Vec::new();
    let mut rest = a.clone();
    for (p, q) in b.edges() {
        if let Some(outside) = rest.clip_left(q, p) {
            out.push(outside);
        }
        match rest.clip_left(p, q) {
            Some(r) => rest = r,
            None => return out,
        }
    }
    out
}

/// Affine map `x ↦ M·x + t`. Rigid motions have an exactly orthonormal `M`;
/// [`RigidMotion::new_unchecked`] admits other matrices so that faulty plans
/// can be represented and reported.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RigidMotion {
    pub m00: QSqrt2,
    pub m01: QSqrt2,
    pub m10: QSqrt2,
    pub m11: QSqrt2,
    pub tx: QSqrt2,
    pub ty: QSqrt2,
}

impl fmt::Debug for RigidMotion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]] + ({}, {})",
            self.m00, self.m01, self.m10, self.m11, self.tx, self.ty
        )
    }
}

impl RigidMotion {
    pub fn new(
        m00: QSqrt2,
        m01: QSqrt2,
        m10: QSqrt2,
        m11: QSqrt2,
        tx: QSqrt2,
        ty: QSqrt2,
    ) -> Result<Self, GeomError> {
        let m = RigidMotion {
            m00,
            m01,
            m10,
            m11,
            tx,
            ty,
        };
        if m.is_rigid() {
            Ok(m)
        } else {
            Err(GeomError::NotRigid)
        }
    }

    pub fn new_unchecked(
        m00: QSqrt2,
        m01: QSqrt2,
        m10: QSqrt2,
        m11: QSqrt2,
        tx: QSqrt2,
        ty: QSqrt2,
    ) -> Self {
        RigidMotion {
            m00,
            m01,
            m10,
            m11,
            tx,
            ty,
        }
    }

    pub fn identity() -> Self {
        Self::translation(&Point::default())
    }

    pub fn translation(v: &Point) -> Self {
        RigidMotion {
            m00: QSqrt2::one(),
            m01: QSqrt2::zero(),
            m10: QSqrt2::zero(),
            m11: QSqrt2::one(),
            tx: v.x.clone(),
            ty: v.y.clone(),
        }
    }

    /// Rotation by the angle with the given cosine and sine, about the origin.
    pub fn rotation(cos: QSqrt2, sin: QSqrt2) -> Result<Self, GeomError> {
        let z = QSqrt2::zero();
        Self::new(cos.clone(), -&sin, sin, cos, z.clone(), z)
    }

    /// Rotation by `quarter_turns · 90°` about `center`.
    pub fn quarter_turn_about(quarter_turns: i32, center: &Point) -> Self {
        let (c, s) = match quarter_turns.rem_euclid(4) {
            0 => (1, 0),
            1 => (0, 1),
            2 => (-1, 0),
            _ => (0, -1),
        };
        let r = Self::rotation(QSqrt2::from_int(c), QSqrt2::from_int(s)).expect("rigid");
        r.about(center)
    }

    /// 180° rotation about `center`.
    pub fn point_reflection(center: &Point) -> Self {
        Self::quarter_turn_about(2, center)
    }

    /// Reflection across the line through `through` with direction `dir`.
    /// The matrix `2·d·dᵀ/|d|² − I` stays in the field without a square root.
    pub fn reflection(through: &Point, dir: &Point) -> Result<Self, GeomError> {
        let n2 = dir.norm2();
        let inv = n2.inv().map_err(|_| GeomError::NotRigid)?;
        let two = QSqrt2::from_int(2);
        let one = QSqrt2::one();
        let xx = &two * &dir.x * &dir.x * &inv - &one;
        let xy = &two * &dir.x * &dir.y * &inv;
        let yy = &two * &dir.y * &dir.y * &inv - &one;
        let z = QSqrt2::zero();
        Ok(Self::new(xx, xy.clone(), xy, yy, z.clone(), z)?.about(through))
    }

    /// Conjugates the linear part so that it acts about `center` instead of
    /// the origin; the existing translation is discarded.
    pub fn about(&self, center: &Point) -> Self {
        let lin = RigidMotion {
            tx: QSqrt2::zero(),
            ty: QSqrt2::zero(),
            ..self.clone()
        };
        let t = center.sub(&lin.apply_point(center));
        RigidMotion {
            tx: t.x,
            ty: t.y,
            ..lin
        }
    }

    pub fn det(&self) -> QSqrt2 {
        &self.m00 * &self.m11 - &self.m01 * &self.m10
    }

    pub fn is_rigid(&self) -> bool {
        self.rigidity_defect().is_zero()
    }

    /// Zero exactly when the columns are orthonormal; otherwise a positive
    /// measure of how far they are from it.
    pub fn rigidity_defect(&self) -> QSqrt2 {
        let one = QSqrt2::one();
        let c0 = &self.m00 * &self.m00 + &self.m10 * &self.m10 - &one;
        let c1 = &self.m01 * &self.m01 + &self.m11 * &self.m11 - &one;
        let d = &self.m00 * &self.m01 + &self.m10 * &self.m11;
        c0.abs() + c1.abs() + (&d + &d).abs()
    }

    pub fn is_translation(&self) -> bool {
        self.m00 == QSqrt2::one()
            && self.m11 == QSqrt2::one()
            && self.m01.is_zero()
            && self.m10.is_zero()
    }

    /// Linear part equals `-I`.
    pub fn is_point_reflection(&self) -> bool {
        let m1 = -QSqrt2::one();
        self.m00 == m1 && self.m11 == m1 && self.m01.is_zero() && self.m10.is_zero()
    }

    pub fn apply_point(&self, p: &Point) -> Point {
        Point::new(
            &self.m00 * &p.x + &self.m01 * &p.y + &self.tx,
            &self.m10 * &p.x + &self.m11 * &p.y + &self.ty,
        )
    }

    pub fn apply_vector(&self, v: &Point) -> Point {
        Point::new(
            &self.m00 * &v.x + &self.m01 * &v.y,
            &self.m10 * &v.x + &self.m11 * &v.y,
        )
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &RigidMotion) -> RigidMotion {
        let t = self.apply_point(&Point::new(other.tx.clone(), other.ty.clone()));
        RigidMotion {
            m00: &self.m00 * &other.m00 + &self.m01 * &other.m10,
            m01: &self.m00 * &other.m01 + &self.m01 * &other.m11,
            m10: &self.m10 * &other.m00 + &self.m11 * &other.m10,
            m11: &self.m10 * &other.m01 + &self.m11 * &other.m11,
            tx: t.x,
            ty: t.y,
        }
    }

    /// Inverse of a rigid motion (transpose of the linear part).
    pub fn inverse(&self) -> Result<RigidMotion, GeomError> {
        if !self.is_rigid() {
            return Err(GeomError::NotRigid);
        }
        let lin = RigidMotion {
            m00: self.m00.clone(),
            m01: self.m10.clone(),
            m10: self.m01.clone(),
            m11: self.m11.clone(),
            tx: QSqrt2::zero(),
            ty: QSqrt2::zero(),
        };
        let t = lin
            .apply_vector(&Point::new(self.tx.clone(), self.ty.clone()))
            .neg();
        Ok(RigidMotion {
            tx: t.x,
            ty: t.y,
            ..lin
        })
    }

    /// Image of a polygon under the affine map, whether or not it is rigid.
    /// Orientation-reversing maps get their vertex order flipped back.
    /// `None` if the map is singular.
    pub fn map_polygon(&self, poly: &ConvexPolygon) -> Option<ConvexPolygon> {
        let det = self.det().signum();
        if det == 0 {
            return None;
        }
        let mut pts: Vec<Point> = poly
            .vertices()
            .iter()
            .map(|p| self.apply_point(p))
            .collect();
        if det < 0 {
            pts.reverse();
        }
        Some(ConvexPolygon::new(pts).expect("affine image of a convex polygon"))
    }
}

pub fn apply_motion(m: &RigidMotion, poly: &ConvexPolygon) -> Result<ConvexPolygon, GeomError> {
    if !m.is_rigid() {
        return Err(GeomError::NotRigid);
    }
    Ok(m.map_polygon(poly).expect("rigid maps are invertible"))
}

/// Counterclockwise non-degenerate triangle.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Triangle {
    pub p: Point,
    pub q: Point,
    pub r: Point,
}

/// Vertex pairing: vertex `i` of the first triangle corresponds to vertex
/// `pairing[i]` of the second. Vertices are numbered p = 0, q = 1, r = 2.
pub type Pairing = [usize; 3];

impl Triangle {
    pub fn new(p: Point, q: Point, r: Point) -> Result<Self, GeomError> {
        if orient(&p, &q, &r).is_positive() {
            Ok(Triangle { p, q, r })
        } else {
            Err(GeomError::DegenerateTriangle)
        }
    }

    pub fn from_polygon(poly: &ConvexPolygon) -> Option<Self> {
        match poly.vertices() {
            [p, q, r] => Some(Triangle {
                p: p.clone(),
                q: q.clone(),
                r: r.clone(),
            }),
            _ => None,
        }
    }

    pub fn vertex(&self, i: usize) -> &Point {
        match i {
            0 => &self.p,
            1 => &self.q,
            2 => &self.r,
            _ => panic!("triangle vertex index {i}"),
        }
    }

    pub fn to_polygon(&self) -> ConvexPolygon {
        ConvexPolygon {
            vertices: vec![self.p.clone(), self.q.clone(), self.r.clone()],
        }
    }

    pub fn area(&self) -> QSqrt2 {
        orient(&self.p, &self.q, &self.r).scale(&crate::exactnum::rat(1, 2))
    }
}

fn is_bijection(s: &Pairing) -> bool {
    let mut seen = [false; 3];
    for &i in s {
        if i > 2 || seen[i] {
            return false;
        }
        seen[i] = true;
    }
    true
}

/// Vectors from vertex `at` to the other two, in index order.
fn arms(t: &Triangle, at: usize, other: usize) -> (Point, Point) {
    let third = 3 - at - other;
    let v = t.vertex(at);
    (t.vertex(other).sub(v), t.vertex(third).sub(v))
}

/// Same angle between `(u, w)` and `(u2, w2)`: equal cosines, compared as
/// `dot² · |u2|²|w2|² = dot2² · |u|²|w|²` with matching dot signs. Within a
/// triangle an angle lies in (0, π), so the cosine pins it down; the cross
/// product only has to be non-zero on both sides.
fn same_angle(u: &Point, w: &Point, u2: &Point, w2: &Point) -> bool {
    let d1 = u.dot(w);
    let d2 = u2.dot(w2);
    if d1.signum() != d2.signum() {
        return false;
    }
    if u.cross(w).is_zero() || u2.cross(w2).is_zero() {
        return false;
    }
    &d1 * &d1 * u2.norm2() * w2.norm2() == &d2 * &d2 * u.norm2() * w.norm2()
}

/// Angle-side-angle test on side `p q` of `t1` and its partner in `t2`.
pub fn triangle_congruence_asa(t1: &Triangle, t2: &Triangle, pairing: &Pairing) -> bool {
    if !is_bijection(pairing) {
        return false;
    }
    let (i, j) = (0usize, 1usize);
    let (pi, pj) = (pairing[i], pairing[j]);
    let side1 = t1.vertex(j).sub(t1.vertex(i)).norm2();
    let side2 = t2.vertex(pj).sub(t2.vertex(pi)).norm2();
    if side1 != side2 {
        return false;
    }
    let (u, w) = arms(t1, i, j);
    let (u2, w2) = arms(t2, pi, pj);
    if !same_angle(&u, &w, &u2, &w2) {
        return false;
    }
    let (u, w) = arms(t1, j, i);
    let (u2, w2) = arms(t2, pj, pi);
    if !same_angle(&u, &w, &u2, &w2) {
        return false;
    }
    // The orientation relating the two angle pairs has to be consistent:
    // either both sines keep their sign (rotation) or both flip (reflection).
    let s_i = u.cross(&w).signum() * u2.cross(&w2).signum();
    let (a, b) = arms(t1, i, j);
    let (a2, b2) = arms(t2, pi, pj);
    s_i == a.cross(&b).signum() * a2.cross(&b2).signum()
}

/// The unique rigid motion taking vertex `i` of `t1` to vertex `pairing[i]`
/// of `t2`, if there is one.
pub fn solve_rigid_motion(t1: &Triangle, t2: &Triangle, pairing: &Pairing) -> Option<RigidMotion> {
    if !is_bijection(pairing) {
        return None;
    }
    let p1 = &t1.p;
    let p2 = t2.vertex(pairing[0]);
    let u1 = t1.q.sub(p1);
    let u2 = t1.r.sub(p1);
    let w1 = t2.vertex(pairing[1]).sub(p2);
    let w2 = t2.vertex(pairing[2]).sub(p2);
    // M = W · U⁻¹ with U = [u1 u2], W = [w1 w2] as columns.
    let det = u1.cross(&u2);
    let inv = det.inv().ok()?;
    let (a, b, c, d) = (&u2.y * &inv, -(&u2.x * &inv), -(&u1.y * &inv), &u1.x * &inv);
    let m00 = &w1.x * &a + &w2.x * &c;
    let m01 = &w1.x * &b + &w2.x * &d;
    let m10 = &w1.y * &a + &w2.y * &c;
    let m11 = &w1.y * &b + &w2.y * &d;
    let lin = RigidMotion::new(m00, m01, m10, m11, QSqrt2::zero(), QSqrt2::zero()).ok()?;
    let t = p2.sub(&lin.apply_point(p1));
    let m = RigidMotion {
        tx: t.x,
        ty: t.y,
        ..lin
    };
    (0..3)
        .all(|k| &m.apply_point(t1.vertex(k)) == t2.vertex(pairing[k]))
        .then_some(m)
}

/// Finds a rigid motion carrying `src` onto `dst` as vertex sets, trying
/// every cyclic correspondence, orientation-preserving ones first.
pub fn find_motion(src: &ConvexPolygon, dst: &ConvexPolygon) -> Option<RigidMotion> {
    let n = src.len();
    if n != dst.len() {
        return None;
    }
    let s = src.vertices();
    let d = dst.vertices();
    let t1 = Triangle {
        p: s[0].clone(),
        q: s[1].clone(),
        r: s[2].clone(),
    };
    let candidates = (0..n).map(|k| (k, false)).chain((0..n).map(|k| (k, true)));
    for (shift, reversed) in candidates {
        let idx = |i: usize| {
            if reversed {
                (shift + n - i) % n
            } else {
                (shift + i) % n
            }
        };
        let t2 = Triangle {
            p: d[idx(0)].clone(),
            q: d[idx(1)].clone(),
            r: d[idx(2)].clone(),
        };
        if let Some(m) = solve_rigid_motion(&t1, &t2, &[0, 1, 2]) {
            if (0..n).all(|i| m.apply_point(&s[i]) == d[idx(i)]) {
                return Some(m);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn poly(pts: &[(i64, i64)]) -> ConvexPolygon {
        ConvexPolygon::new(pts.iter().map(|&(x, y)| Point::int(x, y)).collect()).unwrap()
    }

    fn unit() -> ConvexPolygon {
        poly(&[(0, 0), (1, 0), (1, 1), (0, 1)])
    }

    fn tri(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> Triangle {
        Triangle::new(
            Point::int(a.0, a.1),
            Point::int(b.0, b.1),
            Point::int(c.0, c.1),
        )
        .unwrap()
    }

    fn half(p: &Point) -> Point {
        p.scale(&rat(1, 2))
    }

    #[test]
    fn polygon_validation() {
        assert!(ConvexPolygon::new(vec![Point::int(0, 0), Point::int(1, 0)]).is_err());
        assert_eq!(
            ConvexPolygon::new(vec![Point::int(0, 0), Point::int(0, 1), Point::int(1, 0)]),
            Err(GeomError::NotConvexCcw)
        );
        assert_eq!(
            ConvexPolygon::new(vec![
                Point::int(0, 0),
                Point::int(1, 0),
                Point::int(2, 0),
                Point::int(1, 1)
            ]),
            Err(GeomError::NotConvexCcw)
        );
        // A ring with a collinear vertex is repaired by from_ring.
        let r = ConvexPolygon::from_ring(vec![
            Point::int(0, 0),
            Point::int(1, 0),
            Point::int(2, 0),
            Point::int(1, 1),
        ])
        .unwrap();
        assert_eq!(r.len(), 3);
    }

    #[test]
    fn areas() {
        assert_eq!(unit().area(), QSqrt2::one());
        assert_eq!(
            poly(&[(0, 0), (1, -1), (2, 0), (1, 1)]).area(),
            QSqrt2::from_int(2)
        );
        assert_eq!(poly(&[(0, 0), (1, 0), (0, 1)]).area(), QSqrt2::ratio(1, 2));
    }

    #[test]
    fn motions_on_polygons() {
        let t = poly(&[(0, 0), (1, 0), (0, 1)]);
        assert_eq!(apply_motion(&RigidMotion::identity(), &t).unwrap(), t);
        let r = apply_motion(&RigidMotion::point_reflection(&Point::default()), &t).unwrap();
        assert!(r.same_as(&poly(&[(0, 0), (-1, 0), (0, -1)])));

        let h = QSqrt2::half_sqrt2();
        let rot = RigidMotion::rotation(h.clone(), h.clone()).unwrap();
        let img = apply_motion(&rot, &unit()).unwrap();
        let z = QSqrt2::zero();
        let expect = ConvexPolygon::new(vec![
            Point::new(z.clone(), z.clone()),
            Point::new(h.clone(), h.clone()),
            Point::new(z.clone(), QSqrt2::sqrt2()),
            Point::new(-&h, h.clone()),
        ])
        .unwrap();
        assert_eq!(img, expect);
        assert_eq!(img.area(), QSqrt2::one());

        let refl = RigidMotion::reflection(&Point::default(), &Point::int(1, 0)).unwrap();
        let img = apply_motion(&refl, &t).unwrap();
        assert!(img.same_as(&poly(&[(0, 0), (0, -1), (1, 0)])));

        let two = QSqrt2::from_int(2);
        let z = QSqrt2::zero();
        let scaled =
            RigidMotion::new_unchecked(two.clone(), z.clone(), z.clone(), two, z.clone(), z);
        assert_eq!(apply_motion(&scaled, &t), Err(GeomError::NotRigid));
        assert_eq!(GeomError::NotRigid.to_string(), "motion not rigid");
    }

    #[test]
    fn compose_and_inverse() {
        let h = QSqrt2::half_sqrt2();
        let m = RigidMotion::rotation(h.clone(), -&h)
            .unwrap()
            .compose(&RigidMotion::translation(&Point::int(3, -2)));
        let inv = m.inverse().unwrap();
        assert_eq!(m.compose(&inv), RigidMotion::identity());
        assert_eq!(inv.compose(&m), RigidMotion::identity());
    }

    #[test]
    fn locations() {
        let h = Point::new(QSqrt2::ratio(1, 2), QSqrt2::ratio(1, 2));
        assert_eq!(point_in_convex(&h, &unit()), Location::Inside);
        let b = Point::new(QSqrt2::one(), QSqrt2::ratio(1, 2));
        assert_eq!(point_in_convex(&b, &unit()), Location::Boundary);
        assert_eq!(
            point_in_convex(&Point::int(2, 0), &unit()),
            Location::Outside
        );
    }

    #[test]
    fn containment() {
        assert!(contains_convex(&unit(), &poly(&[(0, 0), (1, 0), (0, 1)])));
        assert!(contains_convex(&unit(), &unit()));
        assert!(!contains_convex(&unit(), &poly(&[(0, 0), (2, 0), (0, 1)])));
    }

    #[test]
    fn clipping() {
        let shifted = unit().translate(&Point::new(QSqrt2::ratio(1, 2), QSqrt2::zero()));
        let c = convex_clip(&unit(), &shifted).unwrap();
        let q = QSqrt2::ratio(1, 2);
        let expect = ConvexPolygon::new(vec![
            Point::new(q.clone(), QSqrt2::zero()),
            Point::int(1, 0),
            Point::int(1, 1),
            Point::new(q, QSqrt2::one()),
        ])
        .unwrap();
        assert!(c.same_as(&expect));
        assert_eq!(c.area(), QSqrt2::ratio(1, 2));
        assert!(convex_clip(&unit(), &unit().translate(&Point::int(1, 0))).is_none());
        assert!(convex_clip(&unit(), &unit().translate(&Point::int(1, 1))).is_none());
        assert!(convex_clip(&unit(), &unit().translate(&Point::int(2, 2))).is_none());
    }

    #[test]
    fn difference() {
        let lower = poly(&[(0, 0), (1, 0), (1, 1)]);
        let parts = convex_difference(&unit(), &lower);
        let total: QSqrt2 = parts.iter().map(|p| p.area()).sum();
        assert_eq!(total, QSqrt2::ratio(1, 2));
        assert!(convex_difference(&lower, &unit()).is_empty());
        let far = unit().translate(&Point::int(5, 5));
        let parts = convex_difference(&unit(), &far);
        assert_eq!(
            parts.iter().map(|p| p.area()).sum::<QSqrt2>(),
            QSqrt2::one()
        );
    }

    #[test]
    fn asa_examples() {
        let t = tri((0, 0), (1, 0), (0, 1));
        assert!(triangle_congruence_asa(&t, &t, &[0, 1, 2]));
        // 180° turn about (1/2, 0).
        let c = half(&Point::int(1, 0));
        let m = RigidMotion::point_reflection(&c);
        let img = Triangle::new(
            m.apply_point(&t.p),
            m.apply_point(&t.q),
            m.apply_point(&t.r),
        )
        .unwrap();
        assert!(triangle_congruence_asa(&t, &img, &[0, 1, 2]));
        let a = tri((0, 0), (1, 0), (0, 2));
        let b = tri((0, 0), (1, 0), (0, 3));
        assert!(!triangle_congruence_asa(&a, &b, &[0, 1, 2]));
        // Mirror image with the mirrored pairing.
        let mirror = tri((0, 0), (0, 1), (-1, 0));
        assert!(triangle_congruence_asa(&t, &mirror, &[0, 2, 1]));
        assert!(!triangle_congruence_asa(&t, &t, &[0, 0, 1]));
    }

    #[test]
    fn solve_examples() {
        let t = tri((0, 0), (1, 0), (0, 1));
        assert_eq!(
            solve_rigid_motion(&t, &t, &[0, 1, 2]),
            Some(RigidMotion::identity())
        );
        let img = tri((1, 1), (0, 1), (1, 0));
        let m = solve_rigid_motion(&t, &img, &[0, 1, 2]).unwrap();
        assert!(m.is_point_reflection());
        assert_eq!(m, RigidMotion::point_reflection(&half(&Point::int(1, 1))));

        let rot = RigidMotion::rotation(QSqrt2::ratio(4, 5), QSqrt2::ratio(3, 5)).unwrap();
        let t345 = tri((0, 0), (4, 0), (0, 3));
        let img = Triangle::new(
            rot.apply_point(&t345.p),
            rot.apply_point(&t345.q),
            rot.apply_point(&t345.r),
        )
        .unwrap();
        let got = solve_rigid_motion(&t345, &img, &[0, 1, 2]).unwrap();
        assert_eq!(got.m00, QSqrt2::ratio(4, 5));
        assert_eq!(got.m01, QSqrt2::ratio(-3, 5));
        assert_eq!(got.m10, QSqrt2::ratio(3, 5));
        assert_eq!(got.m11, QSqrt2::ratio(4, 5));

        let a = tri((0, 0), (1, 0), (0, 2));
        let b = tri((0, 0), (1, 0), (0, 3));
        assert!(solve_rigid_motion(&a, &b, &[0, 1, 2]).is_none());
    }

    #[test]
    fn find_motion_handles_reflections() {
        let t = poly(&[(0, 0), (2, 0), (0, 1)]);
        let refl = RigidMotion::reflection(&Point::int(3, 0), &Point::int(0, 1)).unwrap();
        let img = apply_motion(&refl, &t).unwrap();
        let m = find_motion(&t, &img).unwrap();
        assert_eq!(m, refl);
        assert!(find_motion(&t, &poly(&[(0, 0), (3, 0), (0, 1)])).is_none());
    }
}
