//! Deterministic SVG output for plans and repeated panels.
//!
//! Layout is computed exactly; numbers only become decimals when written.

use std::fmt::Write as _;

use num_traits::Signed;
use thiserror::Error;

use crate::dissection::{DissectionPlan, PlanError};
use crate::exactnum::{rat, QSqrt2, Rational};
use crate::geom::{ConvexPolygon, Point, RigidMotion};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RenderError {
    #[error(transparent)]
    Plan(#[from] PlanError),
    #[error("panel requires square motif")]
    NotSquare,
    #[error("invalid style: {0}")]
    Style(String),
    #[error("rows and cols must be at least 1")]
    EmptyGrid,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RenderStyle {
    /// SVG user units per model unit.
    pub scale: Rational,
    pub stroke_width: Rational,
    pub palette: Vec<String>,
    pub label_points: bool,
    pub decimal_digits: usize,
}

impl Default for RenderStyle {
    fn default() -> Self {
        RenderStyle {
            scale: rat(100, 1),
            stroke_width: rat(1, 1),
            palette: [
                "#c8553d", "#2d6a8f", "#e0a458", "#588b5d", "#8f5b9e", "#d98aa6", "#3f8f8a",
                "#b5a33a",
            ]
            .map(String::from)
            .to_vec(),
            label_points: true,
            decimal_digits: 3,
        }
    }
}

impl RenderStyle {
    fn check(&self) -> Result<(), RenderError> {
        if !self.scale.is_positive() {
            return Err(RenderError::Style("scale must be positive".into()));
        }
        if self.stroke_width.is_negative() {
            return Err(RenderError::Style(
                "stroke_width must not be negative".into(),
            ));
        }
        if self.palette.is_empty() {
            return Err(RenderError::Style("palette must not be empty".into()));
        }
        if self.decimal_digits < 3 {
            return Err(RenderError::Style(
                "decimal_digits must be at least 3".into(),
            ));
        }
        Ok(())
    }

    fn num(&self, x: &QSqrt2) -> String {
        x.approx(self.decimal_digits)
    }

    fn color(&self, i: usize) -> &str {
        &self.palette[i % self.palette.len()]
    }
}

/// A complete SVG document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SvgDoc {
    pub text: String,
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            _ => out.push(c),
        }
    }
    out
}

struct BBox {
    min_x: QSqrt2,
    min_y: QSqrt2,
    max_x: QSqrt2,
    max_y: QSqrt2,
}

impl BBox {
    fn of<'a>(polys: impl IntoIterator<Item = &'a ConvexPolygon>) -> BBox {
        let pts: Vec<&Point> = polys.into_iter().flat_map(|p| p.vertices()).collect();
        let xs = || pts.iter().map(|p| &p.x);
        let ys = || pts.iter().map(|p| &p.y);
        BBox {
            min_x: xs().min().expect("non-empty").clone(),
            min_y: ys().min().expect("non-empty").clone(),
            max_x: xs().max().expect("non-empty").clone(),
            max_y: ys().max().expect("non-empty").clone(),
        }
    }

    fn width(&self) -> QSqrt2 {
        &self.max_x - &self.min_x
    }

    fn height(&self) -> QSqrt2 {
        &self.max_y - &self.min_y
    }
}

/// Maps model coordinates into a group's local SVG coordinates, with y
/// pointing down.
struct Frame<'a> {
    bbox: BBox,
    style: &'a RenderStyle,
}

impl Frame<'_> {
    fn x(&self, p: &Point) -> String {
        self.style
            .num(&(&p.x - &self.bbox.min_x).scale(&self.style.scale))
    }

    fn y(&self, p: &Point) -> String {
        self.style
            .num(&(&self.bbox.max_y - &p.y).scale(&self.style.scale))
    }

    fn path_data(&self, poly: &ConvexPolygon) -> String {
        let mut d = String::new();
        for (i, p) in poly.vertices().iter().enumerate() {
            let cmd = if i == 0 { 'M' } else { 'L' };
            let _ = write!(d, "{cmd}{},{} ", self.x(p), self.y(p));
        }
        d.push('Z');
        d
    }

    fn points(&self, poly: &ConvexPolygon) -> String {
        poly.vertices()
            .iter()
            .map(|p| format!("{},{}", self.x(p), self.y(p)))
            .collect::<Vec<_>>()
            .join(" ")
    }

    fn width(&self) -> QSqrt2 {
        self.bbox.width().scale(&self.style.scale)
    }

    fn height(&self) -> QSqrt2 {
        self.bbox.height().scale(&self.style.scale)
    }
}

fn outline(frame: &Frame, poly: &ConvexPolygon, class: &str) -> String {
    format!(
        "<polygon class=\"{class}\" points=\"{}\" fill=\"none\" stroke=\"#222222\" stroke-width=\"{}\"/>\n",
        frame.points(poly),
        frame.style.num(&QSqrt2::from_rational(frame.style.stroke_width.clone() * rat(2, 1)))
    )
}

fn piece_path(frame: &Frame, idx: usize, id: &str, poly: &ConvexPolygon) -> String {
    format!(
        "<path class=\"piece\" data-piece=\"{}\" d=\"{}\" fill=\"{}\" fill-opacity=\"0.75\" stroke=\"#222222\" stroke-width=\"{}\"/>\n",
        escape(id),
        frame.path_data(poly),
        escape(frame.style.color(idx)),
        frame.style.num(&QSqrt2::from_rational(frame.style.stroke_width.clone()))
    )
}

fn placed_pieces(plan: &DissectionPlan) -> Result<Vec<(usize, &str, ConvexPolygon)>, RenderError> {
    plan.pieces
        .iter()
        .enumerate()
        .map(|(i, p)| {
            p.placed()
                .map(|poly| (i, p.id.as_str(), poly))
                .ok_or_else(|| {
                    RenderError::Plan(PlanError {
                        path: format!("pieces[{i}].motion"),
                        message: "motion is singular".into(),
                    })
                })
        })
        .collect()
}

fn motif(frame: &Frame, pieces: &[(usize, &str, ConvexPolygon)]) -> String {
    pieces
        .iter()
        .map(|(i, id, poly)| piece_path(frame, *i, id, poly))
        .collect()
}

/// Parses a `(x, y)` metadata point.
fn parse_point(s: &str) -> Option<Point> {
    let inner = s.strip_prefix('(')?.strip_suffix(')')?;
    let (x, y) = inner.split_once(", ")?;
    Some(Point::new(x.parse().ok()?, y.parse().ok()?))
}

fn translate(style: &RenderStyle, x: &QSqrt2, y: &QSqrt2) -> String {
    format!("translate({},{})", style.num(x), style.num(y))
}

fn header(style: &RenderStyle, w: &QSqrt2, h: &QSqrt2, title: &str) -> String {
    format!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n<title>{}</title>\n",
        escape(title),
        w = style.num(w),
        h = style.num(h),
    )
}

fn title(plan: &DissectionPlan) -> String {
    plan.metadata
        .get("construction")
        .cloned()
        .unwrap_or_else(|| "dissection".into())
}

/// Sources with their cuts on the left, the assembled target on the right.
pub fn render_plan(plan: &DissectionPlan, style: &RenderStyle) -> Result<SvgDoc, RenderError> {
    plan.validate()?;
    style.check()?;
    let margin = QSqrt2::from_rational(style.scale.clone() * rat(1, 2));

    let src_frame = Frame {
        bbox: BBox::of(plan.sources.iter().map(|s| &s.shape)),
        style,
    };
    let placed = placed_pieces(plan)?;
    let tgt_frame = Frame {
        bbox: BBox::of(std::iter::once(&plan.target.shape).chain(placed.iter().map(|(_, _, p)| p))),
        style,
    };

    let tgt_x = &margin + &src_frame.width() + &margin + &margin;
    let width = &tgt_x + &tgt_frame.width() + &margin;
    let height = src_frame.height().max(tgt_frame.height()) + &margin + &margin;

    let mut out = header(style, &width, &height, &title(plan));
    let _ = writeln!(
        out,
        "<g id=\"sources\" transform=\"{}\">",
        translate(style, &margin, &margin)
    );
    for s in &plan.sources {
        let _ = writeln!(
            out,
            "<g class=\"source\" data-source=\"{}\">",
            escape(&s.label)
        );
        out.push_str(&outline(&src_frame, &s.shape, "figure"));
        for (i, p) in plan.pieces.iter().enumerate() {
            if p.source_label == s.label {
                out.push_str(&piece_path(&src_frame, i, &p.id, &p.shape));
            }
        }
        out.push_str("</g>\n");
    }
    out.push_str("</g>\n");

    let _ = writeln!(
        out,
        "<g id=\"target\" transform=\"{}\">",
        translate(style, &tgt_x, &margin)
    );
    out.push_str(&motif(&tgt_frame, &placed));
    out.push_str(&outline(&tgt_frame, &plan.target.shape, "figure"));
    if style.label_points {
        for (k, v) in &plan.metadata {
            let Some(name) = k.strip_prefix("point.") else {
                continue;
            };
            let Some(p) = parse_point(v) else { continue };
            let _ = writeln!(
                out,
                "<text x=\"{}\" y=\"{}\" font-family=\"serif\" font-size=\"{}\">{}</text>",
                tgt_frame.x(&p),
                tgt_frame.y(&p),
                style.num(&QSqrt2::from_rational(style.scale.clone() * rat(3, 20))),
                escape(name)
            );
        }
    }
    out.push_str("</g>\n</svg>\n");
    Ok(SvgDoc { text: out })
}

/// The four corners as a square: each edge is the previous one turned 90°.
fn square_sides(poly: &ConvexPolygon) -> Option<(Point, Point)> {
    let v = poly.vertices();
    if v.len() != 4 {
        return None;
    }
    let turn = RigidMotion::quarter_turn_about(1, &Point::default());
    let edges: Vec<Point> = (0..4).map(|i| v[(i + 1) % 4].sub(&v[i])).collect();
    (0..4)
        .all(|i| turn.apply_vector(&edges[i]) == edges[(i + 1) % 4])
        .then(|| (edges[0].clone(), edges[1].clone()))
}

/// The target with its pieces repeated `rows × cols` times edge to edge
/// along the square's own sides. With `mirror`, every other tile in a
/// checkerboard is reflected across its mid-line parallel to the first side.
pub fn render_panel(
    plan: &DissectionPlan,
    rows: u32,
    cols: u32,
    style: &RenderStyle,
    mirror: bool,
) -> Result<SvgDoc, RenderError> {
    plan.validate()?;
    style.check()?;
    if rows == 0 || cols == 0 {
        return Err(RenderError::EmptyGrid);
    }
    let (e0, e1) = square_sides(&plan.target.shape).ok_or(RenderError::NotSquare)?;
    let v = plan.target.shape.vertices();
    let center = v[0].midpoint(&v[2]);
    let flip = RigidMotion::reflection(&center, &e0).expect("non-zero side");
    let placed = placed_pieces(plan)?;

    let mut tiles = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let shift = e0
                .mul(&QSqrt2::from_int(c.into()))
                .add(&e1.mul(&QSqrt2::from_int(r.into())));
            let base = if mirror && (r + c) % 2 == 1 {
                flip.clone()
            } else {
                RigidMotion::identity()
            };
            let m = RigidMotion::translation(&shift).compose(&base);
            let pieces: Vec<(usize, &str, ConvexPolygon)> = placed
                .iter()
                .map(|(i, id, p)| (*i, *id, m.map_polygon(p).expect("rigid")))
                .collect();
            let frame = plan.target.shape.clone();
            tiles.push((r, c, m.map_polygon(&frame).expect("rigid"), pieces));
        }
    }
    let frame = Frame {
        bbox: BBox::of(
            tiles
                .iter()
                .flat_map(|(_, _, t, ps)| std::iter::once(t).chain(ps.iter().map(|(_, _, p)| p))),
        ),
        style,
    };
    let margin = QSqrt2::from_rational(style.scale.clone() * rat(1, 2));
    let width = &frame.width() + &margin + &margin;
    let height = &frame.height() + &margin + &margin;
    let mut out = header(
        style,
        &width,
        &height,
        &format!("{} panel {rows}x{cols}", title(plan)),
    );
    let _ = writeln!(
        out,
        "<g id=\"panel\" transform=\"{}\">",
        translate(style, &margin, &margin)
    );
    for (r, c, _, pieces) in &tiles {
        let _ = writeln!(out, "<g class=\"motif\" data-row=\"{r}\" data-col=\"{c}\">");
        out.push_str(&motif(&frame, pieces));
        out.push_str("</g>\n");
    }
    out.push_str("</g>\n</svg>\n");
    Ok(SvgDoc { text: out })
}
