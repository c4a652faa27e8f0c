//! Command inventory and the structured command sequence.

use std::fmt::{self, Write as _};

use crate::model::{LayerKind, ShapeType};
use crate::vocab::ParamType;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CommandKind {
    Meta,
    Layer(LayerKind),
    Shape(ShapeType),
    GroupEnd,
    Keyframe,
    Mask,
    Effect,
    Transform,
    TextGroup,
    End,
    EffectParam,
    TextDoc,
    TextAnim,
    Fonts,
    Font,
    Asset,
    Extra,
}

use CommandKind as K;

const ALL: [CommandKind; 35] = [
    K::Meta,
    K::Layer(LayerKind::Precomp),
    K::Layer(LayerKind::Solid),
    K::Layer(LayerKind::Null),
    K::Layer(LayerKind::Text),
    K::Layer(LayerKind::Shape),
    K::Shape(ShapeType::Group),
    K::Shape(ShapeType::Path),
    K::Shape(ShapeType::Fill),
    K::Shape(ShapeType::Stroke),
    K::Shape(ShapeType::GradientFill),
    K::Shape(ShapeType::GradientStroke),
    K::Shape(ShapeType::Rect),
    K::Shape(ShapeType::Ellipse),
    K::Shape(ShapeType::Star),
    K::Shape(ShapeType::Transform),
    K::Shape(ShapeType::TrimPath),
    K::Shape(ShapeType::Repeater),
    K::Shape(ShapeType::MergePaths),
    K::Shape(ShapeType::RoundedCorners),
    K::Shape(ShapeType::ZigZag),
    K::GroupEnd,
    K::Keyframe,
    K::Mask,
    K::Effect,
    K::Transform,
    K::TextGroup,
    K::End,
    K::EffectParam,
    K::TextDoc,
    K::TextAnim,
    K::Fonts,
    K::Font,
    K::Asset,
    K::Extra,
];

impl CommandKind {
    /// Every command, in default token id order.
    pub fn all() -> &'static [CommandKind] {
        &ALL
    }

    pub fn ordinal(self) -> usize {
        ALL.iter().position(|k| *k == self).unwrap()
    }

    pub fn name(self) -> &'static str {
        match self {
            K::Meta => "META",
            K::Layer(LayerKind::Precomp) => "LAYER-0",
            K::Layer(LayerKind::Solid) => "LAYER-1",
            K::Layer(LayerKind::Null) => "LAYER-3",
            K::Layer(LayerKind::Shape) => "LAYER-4",
            K::Layer(LayerKind::Text) => "LAYER-5",
            K::Shape(t) => match t {
                ShapeType::Group => "SH-GROUP",
                ShapeType::Path => "SH-PATH",
                ShapeType::Fill => "SH-FILL",
                ShapeType::Stroke => "SH-STROKE",
                ShapeType::GradientFill => "SH-GFILL",
                ShapeType::GradientStroke => "SH-GSTROKE",
                ShapeType::Rect => "SH-RECT",
                ShapeType::Ellipse => "SH-ELLIPSE",
                ShapeType::Star => "SH-STAR",
                ShapeType::Transform => "SH-TRANSFORM",
                ShapeType::TrimPath => "SH-TRIM",
                ShapeType::Repeater => "SH-REPEATER",
                ShapeType::MergePaths => "SH-MERGE",
                ShapeType::RoundedCorners => "SH-ROUND",
                ShapeType::ZigZag => "SH-ZIGZAG",
            },
            K::GroupEnd => "GROUP-END",
            K::Keyframe => "KEYFRAME",
            K::Mask => "MASK",
            K::Effect => "EFFECT",
            K::Transform => "TRANSFORM",
            K::TextGroup => "TEXTGROUP",
            K::End => "END",
            K::EffectParam => "EFFECT-PARAM",
            K::TextDoc => "TEXTDOC",
            K::TextAnim => "TEXTANIM",
            K::Fonts => "FONTS",
            K::Font => "FONT",
            K::Asset => "ASSET",
            K::Extra => "EXTRA",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        ALL.iter().copied().find(|k| k.name() == name)
    }

    /// Word used in the readable dump.
    fn dump_word(self) -> String {
        match self {
            K::Meta => "animation".into(),
            K::Layer(k) => format!("layer.{}", k.label()),
            K::Shape(t) => format!("shape.{}", t.code()),
            other => other.name().to_ascii_lowercase(),
        }
    }
}

impl fmt::Display for CommandKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One typed parameter slot; `None` is the padding marker.
#[derive(Debug, Clone, PartialEq)]
pub struct Param {
    pub name: &'static str,
    pub ty: ParamType,
    pub value: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Command {
    pub kind: CommandKind,
    pub params: Vec<Param>,
    /// Text groups; `None` marks an absent optional text.
    pub texts: Vec<Option<String>>,
}

impl Command {
    pub fn new(kind: CommandKind) -> Self {
        Command {
            kind,
            params: Vec::new(),
            texts: Vec::new(),
        }
    }
}

/// Structured command sequence, `META` first.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CommandSeq {
    pub commands: Vec<Command>,
}

impl CommandSeq {
    pub fn kinds(&self) -> Vec<CommandKind> {
        self.commands.iter().map(|c| c.kind).collect()
    }

    /// Human-readable listing, one command per line. Diagnostic only.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        let mut depth = 0usize;
        for c in &self.commands {
            if matches!(c.kind, K::GroupEnd | K::End) {
                depth = depth.saturating_sub(1);
            }
            for _ in 0..depth {
                out.push_str("  ");
            }
            out.push_str(&c.kind.dump_word());
            for p in &c.params {
                match p.value {
                    Some(v) if p.ty == ParamType::SchemaVersion => {
                        write!(out, " {}={:?}", p.name, super::version_label(v)).unwrap()
                    }
                    Some(v) => write!(out, " {}={}", p.name, v).unwrap(),
                    None => write!(out, " {}=_", p.name).unwrap(),
                }
            }
            for t in &c.texts {
                match t {
                    Some(s) => write!(out, " {s:?}").unwrap(),
                    None => out.push_str(" _"),
                }
            }
            out.push('\n');
            if matches!(c.kind, K::Layer(_) | K::Shape(ShapeType::Group) | K::Asset) {
                depth += 1;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique_and_invertible() {
        for (i, k) in CommandKind::all().iter().enumerate() {
            assert_eq!(k.ordinal(), i);
            assert_eq!(CommandKind::from_name(k.name()), Some(*k));
        }
    }
}
