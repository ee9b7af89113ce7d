//! Dissection plans, the exact verifier, and the plan file format.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::exactnum::QSqrt2;
use crate::geom::{contains_convex, convex_clip, ConvexPolygon, Point, RigidMotion};

pub const FORMAT_VERSION: &str = "dustboard-plan/1";

/// Digits used for the decimal approximations carried in reports.
pub const REPORT_DIGITS: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Figure {
    pub label: String,
    pub shape: ConvexPolygon,
}

impl Figure {
    pub fn new(label: impl Into<String>, shape: ConvexPolygon) -> Self {
        Figure {
            label: label.into(),
            shape,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlacedPiece {
    pub id: String,
    pub source_label: String,
    /// Shape in source coordinates.
    pub shape: ConvexPolygon,
    /// Carries the shape from source to target coordinates.
    pub motion: RigidMotion,
}

impl PlacedPiece {
    pub fn new(
        id: impl Into<String>,
        source_label: impl Into<String>,
        shape: ConvexPolygon,
        motion: RigidMotion,
    ) -> Self {
        PlacedPiece {
            id: id.into(),
            source_label: source_label.into(),
            shape,
            motion,
        }
    }

    /// The piece in target coordinates. `None` only for a singular motion.
    pub fn placed(&self) -> Option<ConvexPolygon> {
        self.motion.map_polygon(&self.shape)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DissectionPlan {
    pub sources: Vec<Figure>,
    pub pieces: Vec<PlacedPiece>,
    pub target: Figure,
    pub metadata: BTreeMap<String, String>,
}

/// Structural problem in a plan or plan document, tagged with the path of
/// the offending element.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{path}: {message}")]
pub struct PlanError {
    pub path: String,
    pub message: String,
}

impl PlanError {
    fn new(path: impl Into<String>, message: impl fmt::Display) -> Self {
        PlanError {
            path: path.into(),
            message: message.to_string(),
        }
    }
}

impl DissectionPlan {
    pub fn new(
        sources: Vec<Figure>,
        pieces: Vec<PlacedPiece>,
        target: Figure,
        metadata: BTreeMap<String, String>,
    ) -> Result<Self, PlanError> {
        let plan = DissectionPlan {
            sources,
            pieces,
            target,
            metadata,
        };
        plan.validate()?;
        Ok(plan)
    }

    /// Checks the structural invariants: unique source labels, unique piece
    /// ids, and every piece naming an existing source.
    pub fn validate(&self) -> Result<(), PlanError> {
        let mut labels = BTreeSet::new();
        for (i, s) in self.sources.iter().enumerate() {
            if !labels.insert(s.label.as_str()) {
                return Err(PlanError::new(
                    format!("sources[{i}].label"),
                    format!("duplicate source label {:?}", s.label),
                ));
            }
        }
        let mut ids = BTreeSet::new();
        for (i, p) in self.pieces.iter().enumerate() {
            if !ids.insert(p.id.as_str()) {
                return Err(PlanError::new(
                    format!("pieces[{i}].id"),
                    format!("duplicate piece id {:?}", p.id),
                ));
            }
            if !labels.contains(p.source_label.as_str()) {
                return Err(PlanError::new(
                    format!("pieces[{i}].source_label"),
                    format!("unknown source label {:?}", p.source_label),
                ));
            }
        }
        Ok(())
    }

    pub fn piece(&self, id: &str) -> Option<&PlacedPiece> {
        self.pieces.iter().find(|p| p.id == id)
    }

    pub fn source(&self, label: &str) -> Option<&Figure> {
        self.sources.iter().find(|s| s.label == label)
    }

    pub fn source_area(&self) -> QSqrt2 {
        self.sources.iter().map(|s| s.shape.area()).sum()
    }

    pub fn piece_area(&self) -> QSqrt2 {
        self.pieces.iter().map(|p| p.shape.area()).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FindingKind {
    PieceOverlap,
    SourceGap,
    TargetOverlap,
    TargetGap,
    PieceOutsideSource,
    PieceOutsideTarget,
    NonRigidMotion,
    AreaMismatch,
}

impl FindingKind {
    pub fn name(self) -> &'static str {
        match self {
            FindingKind::PieceOverlap => "piece-overlap",
            FindingKind::SourceGap => "source-gap",
            FindingKind::TargetOverlap => "target-overlap",
            FindingKind::TargetGap => "target-gap",
            FindingKind::PieceOutsideSource => "piece-outside-source",
            FindingKind::PieceOutsideTarget => "piece-outside-target",
            FindingKind::NonRigidMotion => "non-rigid-motion",
            FindingKind::AreaMismatch => "area-mismatch",
        }
    }
}

impl fmt::Display for FindingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Finding {
    pub kind: FindingKind,
    pub subjects: Vec<String>,
    pub exact_magnitude: QSqrt2,
    pub approx: String,
}

impl Finding {
    pub fn new(kind: FindingKind, subjects: Vec<String>, magnitude: QSqrt2) -> Self {
        let approx = magnitude.approx(REPORT_DIGITS);
        Finding {
            kind,
            subjects,
            exact_magnitude: magnitude,
            approx,
        }
    }
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} [{}] {} ≈ {}",
            self.kind,
            self.subjects.join(", "),
            self.exact_magnitude,
            self.approx
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub verdict: Verdict,
    pub findings: Vec<Finding>,
}

impl VerificationReport {
    fn from_findings(mut findings: Vec<Finding>) -> Self {
        findings.sort_by(|a, b| (a.kind, &a.subjects).cmp(&(b.kind, &b.subjects)));
        let verdict = if findings.is_empty() {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        VerificationReport { verdict, findings }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn total(&self, kind: FindingKind) -> QSqrt2 {
        self.findings
            .iter()
            .filter(|f| f.kind == kind)
            .map(|f| &f.exact_magnitude)
            .sum()
    }

    /// Area the placed pieces put on the target beyond a clean tiling:
    /// doubly covered area plus area spilling outside the target.
    pub fn excess(&self) -> QSqrt2 {
        self.total(FindingKind::TargetOverlap) + self.total(FindingKind::PieceOutsideTarget)
    }

    pub fn to_json(&self) -> Value {
        let findings: Vec<Value> = self
            .findings
            .iter()
            .map(|f| {
                json!({
                    "kind": f.kind.name(),
                    "subjects": f.subjects,
                    "exact_magnitude": f.exact_magnitude.to_string(),
                    "approx": f.approx,
                })
            })
            .collect();
        json!({ "verdict": self.verdict.to_string(), "findings": findings })
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "verdict: {}", self.verdict)?;
        for finding in &self.findings {
            writeln!(f, "  {finding}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy)]
struct Kinds {
    overlap: FindingKind,
    gap: FindingKind,
    outside: FindingKind,
}

const SOURCE_KINDS: Kinds = Kinds {
    overlap: FindingKind::PieceOverlap,
    gap: FindingKind::SourceGap,
    outside: FindingKind::PieceOutsideSource,
};

const TARGET_KINDS: Kinds = Kinds {
    overlap: FindingKind::TargetOverlap,
    gap: FindingKind::TargetGap,
    outside: FindingKind::PieceOutsideTarget,
};

struct BBox {
    min_x: QSqrt2,
    max_x: QSqrt2,
    min_y: QSqrt2,
    max_y: QSqrt2,
}

impl BBox {
    fn of(poly: &ConvexPolygon) -> Self {
        let v = poly.vertices();
        let xs = || v.iter().map(|p| &p.x);
        let ys = || v.iter().map(|p| &p.y);
        BBox {
            min_x: xs().min().expect("non-empty").clone(),
            max_x: xs().max().expect("non-empty").clone(),
            min_y: ys().min().expect("non-empty").clone(),
            max_y: ys().max().expect("non-empty").clone(),
        }
    }

    /// Interiors of the boxes meet.
    fn meets(&self, o: &BBox) -> bool {
        self.min_x < o.max_x && o.min_x < self.max_x && self.min_y < o.max_y && o.min_y < self.max_y
    }
}

fn partition_findings(
    figure: &Figure,
    parts: &[(&str, ConvexPolygon)],
    kinds: Kinds,
) -> Vec<Finding> {
    let mut out = Vec::new();
    for (id, part) in parts {
        if !contains_convex(&figure.shape, part) {
            let inside = convex_clip(part, &figure.shape)
                .map(|c| c.area())
                .unwrap_or_default();
            out.push(Finding::new(
                kinds.outside,
                vec![id.to_string(), figure.label.clone()],
                part.area() - inside,
            ));
        }
    }
    let boxes: Vec<BBox> = parts.iter().map(|(_, p)| BBox::of(p)).collect();
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            if !boxes[i].meets(&boxes[j]) {
                continue;
            }
            if let Some(common) = convex_clip(&parts[i].1, &parts[j].1) {
                let mut subjects = vec![parts[i].0.to_string(), parts[j].0.to_string()];
                subjects.sort();
                out.push(Finding::new(kinds.overlap, subjects, common.area()));
            }
        }
    }
    let covered: QSqrt2 = parts.iter().map(|(_, p)| p.area()).sum();
    let deficit = figure.shape.area() - covered;
    if deficit.is_positive() {
        out.push(Finding::new(kinds.gap, vec![figure.label.clone()], deficit));
    }
    out
}

/// Checks that `parts` tile `figure` up to measure zero. Parts are named
/// by their index in the findings.
pub fn verify_partition(figure: &Figure, parts: &[ConvexPolygon]) -> Vec<Finding> {
    let names: Vec<String> = (0..parts.len()).map(|i| format!("#{i}")).collect();
    let named: Vec<(&str, ConvexPolygon)> = names
        .iter()
        .map(String::as_str)
        .zip(parts.iter().cloned())
        .collect();
    let mut f = partition_findings(figure, &named, SOURCE_KINDS);
    f.sort_by(|a, b| (a.kind, &a.subjects).cmp(&(b.kind, &b.subjects)));
    f
}

pub fn verify_plan(plan: &DissectionPlan) -> Result<VerificationReport, PlanError> {
    plan.validate()?;
    let mut findings = Vec::new();

    for source in &plan.sources {
        let parts: Vec<(&str, ConvexPolygon)> = plan
            .pieces
            .iter()
            .filter(|p| p.source_label == source.label)
            .map(|p| (p.id.as_str(), p.shape.clone()))
            .collect();
        findings.extend(partition_findings(source, &parts, SOURCE_KINDS));
    }

    for p in &plan.pieces {
        let defect = p.motion.rigidity_defect();
        if !defect.is_zero() {
            findings.push(Finding::new(
                FindingKind::NonRigidMotion,
                vec![p.id.clone()],
                defect,
            ));
        }
    }

    // A singular map flattens its piece; it already has a non-rigid finding
    // and contributes nothing measurable to the target.
    let placed: Vec<(&str, ConvexPolygon)> = plan
        .pieces
        .iter()
        .filter_map(|p| p.placed().map(|poly| (p.id.as_str(), poly)))
        .collect();
    findings.extend(partition_findings(&plan.target, &placed, TARGET_KINDS));

    let diff = plan.source_area() - plan.target.shape.area();
    if !diff.is_zero() {
        findings.push(Finding::new(
            FindingKind::AreaMismatch,
            vec![plan.target.label.clone()],
            diff.abs(),
        ));
    }

    Ok(VerificationReport::from_findings(findings))
}

fn point_json(p: &Point) -> Value {
    json!([p.x.to_string(), p.y.to_string()])
}

fn vertices_json(poly: &ConvexPolygon) -> Value {
    Value::Array(poly.vertices().iter().map(point_json).collect())
}

/// Serializes a plan. Output is deterministic: fixed field order, sorted
/// metadata keys, canonical number strings, trailing newline.
pub fn write_plan(plan: &DissectionPlan) -> String {
    let mut root = Map::new();
    root.insert("format_version".into(), json!(FORMAT_VERSION));
    let meta: Map<String, Value> = plan
        .metadata
        .iter()
        .map(|(k, v)| (k.clone(), json!(v)))
        .collect();
    root.insert("metadata".into(), Value::Object(meta));
    let sources: Vec<Value> = plan
        .sources
        .iter()
        .map(|s| {
            let mut o = Map::new();
            o.insert("label".into(), json!(s.label));
            o.insert("vertices".into(), vertices_json(&s.shape));
            Value::Object(o)
        })
        .collect();
    root.insert("sources".into(), Value::Array(sources));
    let pieces: Vec<Value> = plan
        .pieces
        .iter()
        .map(|p| {
            let m = &p.motion;
            let mut motion = Map::new();
            motion.insert(
                "matrix".into(),
                json!([
                    [m.m00.to_string(), m.m01.to_string()],
                    [m.m10.to_string(), m.m11.to_string()]
                ]),
            );
            motion.insert(
                "translation".into(),
                json!([m.tx.to_string(), m.ty.to_string()]),
            );
            let mut o = Map::new();
            o.insert("id".into(), json!(p.id));
            o.insert("source_label".into(), json!(p.source_label));
            o.insert("vertices".into(), vertices_json(&p.shape));
            o.insert("motion".into(), Value::Object(motion));
            Value::Object(o)
        })
        .collect();
    root.insert("pieces".into(), Value::Array(pieces));
    let mut target = Map::new();
    target.insert("label".into(), json!(plan.target.label));
    target.insert("vertices".into(), vertices_json(&plan.target.shape));
    root.insert("target".into(), Value::Object(target));
    let mut text = serde_json::to_string_pretty(&Value::Object(root)).expect("json");
    text.push('\n');
    text
}

fn object<'a>(
    v: &'a Value,
    path: &str,
    keys: &[&str],
) -> Result<&'a Map<String, Value>, PlanError> {
    let o = v
        .as_object()
        .ok_or_else(|| PlanError::new(path, "expected an object"))?;
    for k in o.keys() {
        if !keys.contains(&k.as_str()) {
            return Err(PlanError::new(format!("{path}.{k}"), "unexpected field"));
        }
    }
    for k in keys {
        if !o.contains_key(*k) {
            return Err(PlanError::new(format!("{path}.{k}"), "missing field"));
        }
    }
    Ok(o)
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>, PlanError> {
    v.as_array()
        .ok_or_else(|| PlanError::new(path, "expected an array"))
}

fn string<'a>(v: &'a Value, path: &str) -> Result<&'a str, PlanError> {
    v.as_str()
        .ok_or_else(|| PlanError::new(path, "expected a string"))
}

fn number(v: &Value, path: &str) -> Result<QSqrt2, PlanError> {
    string(v, path)?
        .parse()
        .map_err(|e| PlanError::new(path, e))
}

fn pair(v: &Value, path: &str) -> Result<(QSqrt2, QSqrt2), PlanError> {
    let a = array(v, path)?;
    if a.len() != 2 {
        return Err(PlanError::new(path, "expected two entries"));
    }
    Ok((
        number(&a[0], &format!("{path}[0]"))?,
        number(&a[1], &format!("{path}[1]"))?,
    ))
}

fn polygon(v: &Value, path: &str) -> Result<ConvexPolygon, PlanError> {
    let pts = array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, p)| pair(p, &format!("{path}[{i}]")).map(|(x, y)| Point::new(x, y)))
        .collect::<Result<Vec<_>, _>>()?;
    ConvexPolygon::new(pts).map_err(|e| PlanError::new(path, e))
}

fn motion(v: &Value, path: &str) -> Result<RigidMotion, PlanError> {
    let o = object(v, path, &["matrix", "translation"])?;
    let mpath = format!("{path}.matrix");
    let rows = array(&o["matrix"], &mpath)?;
    if rows.len() != 2 {
        return Err(PlanError::new(mpath, "expected two rows"));
    }
    let (m00, m01) = pair(&rows[0], &format!("{mpath}[0]"))?;
    let (m10, m11) = pair(&rows[1], &format!("{mpath}[1]"))?;
    let (tx, ty) = pair(&o["translation"], &format!("{path}.translation"))?;
    RigidMotion::new(m00, m01, m10, m11, tx, ty).map_err(|e| PlanError::new(path, e))
}

/// Parses a plan document. Numbers must be canonical strings and motions
/// exactly rigid; errors name the offending path.
pub fn read_plan(text: &str) -> Result<DissectionPlan, PlanError> {
    let root: Value = serde_json::from_str(text).map_err(|e| PlanError::new("$", e))?;
    let o = object(
        &root,
        "$",
        &["format_version", "metadata", "sources", "pieces", "target"],
    )?;
    let version = string(&o["format_version"], "format_version")?;
    if version != FORMAT_VERSION {
        return Err(PlanError::new(
            "format_version",
            format!("unsupported format {version:?}, expected {FORMAT_VERSION:?}"),
        ));
    }
    let meta_obj = o["metadata"]
        .as_object()
        .ok_or_else(|| PlanError::new("metadata", "expected an object"))?;
    let mut metadata = BTreeMap::new();
    for (k, v) in meta_obj {
        metadata.insert(k.clone(), string(v, &format!("metadata.{k}"))?.to_string());
    }
    let mut sources = Vec::new();
    for (i, s) in array(&o["sources"], "sources")?.iter().enumerate() {
        let path = format!("sources[{i}]");
        let so = object(s, &path, &["label", "vertices"])?;
        sources.push(Figure {
            label: string(&so["label"], &format!("{path}.label"))?.to_string(),
            shape: polygon(&so["vertices"], &format!("{path}.vertices"))?,
        });
    }
    let mut pieces = Vec::new();
    for (i, p) in array(&o["pieces"], "pieces")?.iter().enumerate() {
        let path = format!("pieces[{i}]");
        let po = object(p, &path, &["id", "source_label", "vertices", "motion"])?;
        pieces.push(PlacedPiece {
            id: string(&po["id"], &format!("{path}.id"))?.to_string(),
            source_label: string(&po["source_label"], &format!("{path}.source_label"))?.to_string(),
            shape: polygon(&po["vertices"], &format!("{path}.vertices"))?,
            motion: motion(&po["motion"], &format!("{path}.motion"))?,
        });
    }
    let to = object(&o["target"], "target", &["label", "vertices"])?;
    let target = Figure {
        label: string(&to["label"], "target.label")?.to_string(),
        shape: polygon(&to["vertices"], "target.vertices")?,
    };
    DissectionPlan::new(sources, pieces, target, metadata)
}
