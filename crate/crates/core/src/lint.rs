//! Static renderability checks.
//!
//! Levels: 1 = the document breaks the format, 2 = valid but without
//! content, 3 = content that renders invisibly or wrongly.

use std::collections::HashSet;
use std::fmt;

use serde_json::{json, Value};

use crate::model::*;

/// Opacity at or below this (0..100 scale) counts as invisible.
pub const OPACITY_COLLAPSE_MAX: f64 = 2.0;
/// Scale components at or below this many percent count as collapsed.
pub const SCALE_COLLAPSE_MAX: f64 = 2.0;
/// Shortest visible layer span, in frames.
pub const MIN_VISIBLE_FRAMES: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LintCode {
    SchemaViolation,
    EmptyLayers,
    MissingStyle,
    TemporalVisibility,
    OpacityCollapse,
    ScaleCollapse,
    OffCanvas,
    DanglingRef,
    FontMissing,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Severity {
    Error,
    Warning,
}

impl LintCode {
    pub const ALL: [LintCode; 9] = [
        LintCode::SchemaViolation,
        LintCode::EmptyLayers,
        LintCode::MissingStyle,
        LintCode::TemporalVisibility,
        LintCode::OpacityCollapse,
        LintCode::ScaleCollapse,
        LintCode::OffCanvas,
        LintCode::DanglingRef,
        LintCode::FontMissing,
    ];

    pub fn level(self) -> u8 {
        match self {
            LintCode::SchemaViolation | LintCode::DanglingRef | LintCode::FontMissing => 1,
            LintCode::EmptyLayers => 2,
            _ => 3,
        }
    }

    pub fn severity(self) -> Severity {
        match self {
            LintCode::OpacityCollapse | LintCode::ScaleCollapse | LintCode::OffCanvas => Severity::Warning,
            _ => Severity::Error,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            LintCode::SchemaViolation => "SchemaViolation",
            LintCode::EmptyLayers => "EmptyLayers",
            LintCode::MissingStyle => "MissingStyle",
            LintCode::TemporalVisibility => "TemporalVisibility",
            LintCode::OpacityCollapse => "OpacityCollapse",
            LintCode::ScaleCollapse => "ScaleCollapse",
            LintCode::OffCanvas => "OffCanvas",
            LintCode::DanglingRef => "DanglingRef",
            LintCode::FontMissing => "FontMissing",
        }
    }
}

impl fmt::Display for LintCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Error => "error",
            Severity::Warning => "warning",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Diagnostic {
    pub level: u8,
    pub code: LintCode,
    pub path: String,
    pub message: String,
    pub severity: Severity,
}

impl Diagnostic {
    fn new(code: LintCode, path: impl Into<String>, message: impl Into<String>) -> Self {
        Diagnostic {
            level: code.level(),
            code,
            path: path.into(),
            message: message.into(),
            severity: code.severity(),
        }
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }

    pub fn to_json(&self) -> Value {
        json!({
            "level": self.level,
            "code": self.code.name(),
            "severity": self.severity.to_string(),
            "path": self.path,
            "message": self.message,
        })
    }
}

impl fmt::Display for Diagnostic {
    /// `L<level> <code> <path>: <message>`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L{} {} {}: {}", self.level, self.code, self.path, self.message)
    }
}

/// Structured report for a set of diagnostics.
pub fn report_json(diags: &[Diagnostic]) -> Value {
    json!({
        "errors": diags.iter().filter(|d| d.is_error()).count(),
        "warnings": diags.iter().filter(|d| !d.is_error()).count(),
        "diagnostics": diags.iter().map(Diagnostic::to_json).collect::<Vec<_>>(),
    })
}

/// Lints JSON text. Documents that do not parse yield one SchemaViolation.
pub fn lint_str(text: &str) -> Vec<Diagnostic> {
    match serde_json::from_str::<Value>(text) {
        Ok(v) => lint_value(&v),
        Err(e) => vec![Diagnostic::new(LintCode::SchemaViolation, "$", format!("malformed JSON: {e}"))],
    }
}

pub fn lint_value(v: &Value) -> Vec<Diagnostic> {
    match parse_value_structural(v) {
        Ok(a) => lint_unchecked(&a),
        Err(e) => vec![schema_diag(e)],
    }
}

/// Lints an in-memory animation, including constraints the reader enforces.
pub fn lint(a: &Animation) -> Vec<Diagnostic> {
    match parse_value_structural(&to_value(a)) {
        Ok(_) => lint_unchecked(a),
        Err(e) => vec![schema_diag(e)],
    }
}

fn schema_diag(e: ModelError) -> Diagnostic {
    let path = match &e {
        ModelError::SchemaViolation { path, .. } | ModelError::UnsupportedLayerKind { path, .. } => path.clone(),
        ModelError::MalformedJson(_) => "$".into(),
    };
    Diagnostic::new(LintCode::SchemaViolation, path, e.to_string())
}

fn lint_unchecked(a: &Animation) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    for v in a.reference_violations() {
        let code = match v.kind {
            ViolationKind::DuplicateIndex | ViolationKind::ParentCycle => LintCode::SchemaViolation,
            _ => LintCode::DanglingRef,
        };
        out.push(Diagnostic::new(code, v.path, v.message));
    }
    if a.layers.is_empty() {
        out.push(Diagnostic::new(LintCode::EmptyLayers, "$.layers", "no layers"));
    }
    fonts(a, &mut out);
    for (i, l) in a.layers.iter().enumerate() {
        let path = format!("$.layers[{i}]");
        timing(a, l, &path, &mut out);
        if l.parent.is_none() {
            off_canvas(a, l, &path, &mut out);
        }
    }
    let containers = std::iter::once(("$.layers".to_string(), &a.layers)).chain(
        a.assets
            .iter()
            .enumerate()
            .map(|(i, asset)| (format!("$.assets[{i}].layers"), &asset.layers)),
    );
    for (base, layers) in containers {
        for (i, l) in layers.iter().enumerate() {
            let path = format!("{base}[{i}]");
            collapse(l, &path, &mut out);
            if let LayerPayload::Shape(items) = &l.payload {
                styles(items, false, &format!("{path}.shapes"), &mut out);
            }
        }
    }
    out.sort_by_key(|d| d.level);
    out
}

fn fonts(a: &Animation, out: &mut Vec<Diagnostic>) {
    let mut reported = HashSet::new();
    for (i, l) in a.layers.iter().enumerate() {
        let LayerPayload::Text(t) = &l.payload else { continue };
        let path = format!("$.layers[{i}]");
        if a.fonts.is_empty() {
            out.push(Diagnostic::new(LintCode::FontMissing, path, "text layer without a fonts table"));
            continue;
        }
        for (j, d) in t.documents.iter().enumerate() {
            if !a.fonts.contains(&d.document.font) && reported.insert(d.document.font.clone()) {
                out.push(Diagnostic::new(
                    LintCode::FontMissing,
                    format!("{path}.t.d.k[{j}].s.f"),
                    format!("font {:?} is not defined", d.document.font),
                ));
            }
        }
    }
}

fn timing(a: &Animation, l: &Layer, path: &str, out: &mut Vec<Diagnostic>) {
    let why = if l.in_point >= a.out_point {
        Some(format!("starts at {} after the animation ends at {}", l.in_point, a.out_point))
    } else if l.out_point <= a.in_point {
        Some(format!("ends at {} before the animation starts at {}", l.out_point, a.in_point))
    } else if l.out_point - l.in_point < MIN_VISIBLE_FRAMES {
        Some(format!("visible for {} frames", l.out_point - l.in_point))
    } else {
        None
    };
    if let Some(why) = why {
        out.push(Diagnostic::new(LintCode::TemporalVisibility, format!("{path}.ip"), why));
    }
}

fn static_values(p: &Option<Property>) -> Option<&[f64]> {
    p.as_ref().and_then(|p| p.static_value())
}

fn collapse(l: &Layer, path: &str, out: &mut Vec<Diagnostic>) {
    if l.kind() != LayerKind::Null && !l.is_hidden() {
        if let Some(&[o, ..]) = static_values(&l.transform.opacity) {
            if o <= OPACITY_COLLAPSE_MAX {
                out.push(Diagnostic::new(
                    LintCode::OpacityCollapse,
                    format!("{path}.ks.o"),
                    format!("opacity {o} on a 0-100 scale"),
                ));
            }
        }
    }
    if let Some(s) = static_values(&l.transform.scale) {
        if s.iter().take(2).any(|c| c.abs() <= SCALE_COLLAPSE_MAX) {
            out.push(Diagnostic::new(
                LintCode::ScaleCollapse,
                format!("{path}.ks.s"),
                format!("scale {s:?} percent"),
            ));
        }
    }
}

/// Every point a root layer's position takes at static or keyframe values.
fn position_points(t: &Transform) -> Vec<[f64; 2]> {
    fn values(p: &Property) -> Vec<f64> {
        match &p.value {
            PropValue::Static(v) => v.first().copied().into_iter().collect(),
            PropValue::Keyframed(k) => k.iter().filter_map(|k| k.start.as_ref()?.first().copied()).collect(),
        }
    }
    fn points(p: &Property) -> Vec<[f64; 2]> {
        match &p.value {
            PropValue::Static(v) if v.len() >= 2 => vec![[v[0], v[1]]],
            PropValue::Static(_) => vec![],
            PropValue::Keyframed(k) => k
                .iter()
                .filter_map(|k| k.start.as_ref().filter(|s| s.len() >= 2).map(|s| [s[0], s[1]]))
                .collect(),
        }
    }
    match &t.position {
        None => vec![],
        Some(Position::Combined(p)) => points(p),
        Some(Position::Split(s)) => {
            let xs = values(&s.x);
            let ys = values(&s.y);
            xs.iter().flat_map(|&x| ys.iter().map(move |&y| [x, y])).collect()
        }
    }
}

fn off_canvas(a: &Animation, l: &Layer, path: &str, out: &mut Vec<Diagnostic>) {
    let outside = |v: f64, c: f64| v < -c || v > 2.0 * c;
    if let Some(p) = position_points(&l.transform)
        .into_iter()
        .find(|p| outside(p[0], a.width) && outside(p[1], a.height))
    {
        out.push(Diagnostic::new(
            LintCode::OffCanvas,
            format!("{path}.ks.p"),
            format!("position {p:?} is far outside the {}x{} canvas", a.width, a.height),
        ));
    }
}

/// Geometry needs a fill or stroke in its own group or an enclosing one.
fn styles(items: &[ShapeNode], inherited: bool, path: &str, out: &mut Vec<Diagnostic>) {
    let styled = inherited || items.iter().any(|n| n.kind.shape_type().is_style());
    if !styled {
        if let Some(i) = items.iter().position(|n| n.kind.shape_type().is_geometry()) {
            out.push(Diagnostic::new(
                LintCode::MissingStyle,
                format!("{path}[{i}]"),
                "geometry without a fill or stroke",
            ));
        }
    }
    for (i, n) in items.iter().enumerate() {
        if let ShapeKind::Group(g) = &n.kind {
            styles(&g.items, styled, &format!("{path}[{i}].it"), out);
        }
    }
}

/// Per-code share of failing files, keyed by each file's dominant error:
/// the lowest-level one, ties broken by code order.
pub fn failure_histogram(files: &[Vec<Diagnostic>]) -> Vec<(LintCode, usize, f64)> {
    let dominant: Vec<LintCode> = files
        .iter()
        .filter_map(|d| d.iter().filter(|d| d.is_error()).map(|d| (d.level, d.code)).min())
        .map(|(_, c)| c)
        .collect();
    let total = dominant.len();
    LintCode::ALL
        .iter()
        .filter_map(|&code| {
            let n = dominant.iter().filter(|&&c| c == code).count();
            (n > 0).then(|| (code, n, 100.0 * n as f64 / total as f64))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const EMPTY: &str = r#"{"v":"5.12.1","fr":25,"ip":0,"op":105,"w":512,"h":512,"layers":[],"assets":[],"markers":[]}"#;

    fn codes(d: &[Diagnostic]) -> Vec<LintCode> {
        d.iter().map(|d| d.code).collect()
    }

    #[test]
    fn empty_layer_file() {
        let d = lint_str(EMPTY);
        assert_eq!(codes(&d), vec![LintCode::EmptyLayers]);
        assert_eq!(d[0].to_string(), "L2 EmptyLayers $.layers: no layers");
    }

    #[test]
    fn path_without_fill() {
        let a = parse_lottie(
            r#"{"v":"5.7.0","fr":30,"ip":0,"op":60,"w":512,"h":512,"layers":[{"ty":4,"ind":1,"ip":0,"op":60,"st":0,"ks":{},
            "shapes":[{"ty":"gr","it":[{"ty":"el","p":{"a":0,"k":[0,0]},"s":{"a":0,"k":[10,10]}}]}]}]}"#,
        )
        .unwrap();
        let d = lint(&a);
        assert_eq!(codes(&d), vec![LintCode::MissingStyle]);
        assert_eq!(d[0].path, "$.layers[0].shapes[0].it[0]");
    }

    #[test]
    fn late_layer() {
        let a = parse_lottie(
            r#"{"v":"5.7.0","fr":30,"ip":0,"op":60,"w":512,"h":512,"layers":[{"ty":3,"ind":1,"ip":100,"op":120,"st":0,"ks":{}}]}"#,
        )
        .unwrap();
        assert_eq!(codes(&lint(&a)), vec![LintCode::TemporalVisibility]);
    }

    #[test]
    fn histogram_splits_evenly() {
        let e = |c| vec![Diagnostic::new(c, "$", "")];
        let files = vec![
            e(LintCode::EmptyLayers),
            e(LintCode::EmptyLayers),
            e(LintCode::MissingStyle),
            e(LintCode::MissingStyle),
            e(LintCode::OffCanvas),
            vec![],
        ];
        assert_eq!(
            failure_histogram(&files),
            vec![(LintCode::EmptyLayers, 2, 50.0), (LintCode::MissingStyle, 2, 50.0)]
        );
        assert!(failure_histogram(&[vec![]]).is_empty());
    }
}
