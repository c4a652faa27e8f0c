//! Typed model of a Lottie animation.
//!
//! Every optional JSON key is an `Option`: `None` means the key was absent in
//! the source and is omitted again on serialization, while the accessor
//! methods apply the usual Lottie defaults. Keys the model does not know about
//! are kept, in source order, in the `extras` map of the owning object.

mod json;
mod validate;
mod visit;

pub use json::{parse_lottie, parse_value, serialize_lottie, to_value};
pub use validate::{Violation, ViolationKind};
pub use visit::LayerTracks;
pub(crate) use json::parse_value_structural;

use serde_json::Value;

/// Unknown keys of an object, in source order.
pub type Extras = serde_json::Map<String, Value>;

/// Layer type ids the tokenizer can parameterize.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LayerKind {
    Precomp,
    Solid,
    Null,
    Shape,
    Text,
}

impl LayerKind {
    pub const ALL: [LayerKind; 5] = [
        LayerKind::Precomp,
        LayerKind::Solid,
        LayerKind::Null,
        LayerKind::Shape,
        LayerKind::Text,
    ];

    /// The `ty` value used in Lottie JSON.
    pub fn type_id(self) -> i64 {
        match self {
            LayerKind::Precomp => 0,
            LayerKind::Solid => 1,
            LayerKind::Null => 3,
            LayerKind::Shape => 4,
            LayerKind::Text => 5,
        }
    }

    pub fn from_type_id(ty: i64) -> Option<Self> {
        match ty {
            0 => Some(LayerKind::Precomp),
            1 => Some(LayerKind::Solid),
            3 => Some(LayerKind::Null),
            4 => Some(LayerKind::Shape),
            5 => Some(LayerKind::Text),
            _ => None,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            LayerKind::Precomp => "precomp",
            LayerKind::Solid => "solid",
            LayerKind::Null => "null",
            LayerKind::Shape => "shape",
            LayerKind::Text => "text",
        }
    }
}

/// One Lottie document.
#[derive(Debug, Clone, PartialEq)]
pub struct Animation {
    pub version: String,
    pub frame_rate: f64,
    pub in_point: f64,
    pub out_point: f64,
    pub width: f64,
    pub height: f64,
    pub name: Option<String>,
    pub three_d: Option<bool>,
    pub layers: Vec<Layer>,
    /// Precomposition assets. Absent in the source means empty.
    pub assets: Vec<PrecompAsset>,
    /// Opaque marker objects.
    pub markers: Vec<Value>,
    pub fonts: FontTable,
    /// Opaque glyph definitions.
    pub chars: Vec<Value>,
    pub extras: Extras,
}

impl Animation {
    /// An animation with no layers and empty conditional tables.
    pub fn empty(version: &str, frame_rate: f64, in_point: f64, out_point: f64, width: f64, height: f64) -> Self {
        Animation {
            version: version.to_string(),
            frame_rate,
            in_point,
            out_point,
            width,
            height,
            name: None,
            three_d: None,
            layers: Vec::new(),
            assets: Vec::new(),
            markers: Vec::new(),
            fonts: FontTable::default(),
            chars: Vec::new(),
            extras: Extras::new(),
        }
    }

    pub fn asset(&self, id: &str) -> Option<&PrecompAsset> {
        self.assets.iter().find(|a| a.id == id)
    }

    /// Every layer of the document: root layers first, then asset layers.
    pub fn all_layers(&self) -> impl Iterator<Item = &Layer> {
        self.layers
            .iter()
            .chain(self.assets.iter().flat_map(|a| a.layers.iter()))
    }

    pub fn all_layers_mut(&mut self) -> impl Iterator<Item = &mut Layer> {
        self.layers
            .iter_mut()
            .chain(self.assets.iter_mut().flat_map(|a| a.layers.iter_mut()))
    }

    pub fn duration(&self) -> f64 {
        self.out_point - self.in_point
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct PrecompAsset {
    pub id: String,
    pub name: Option<String>,
    pub frame_rate: Option<f64>,
    pub layers: Vec<Layer>,
    pub extras: Extras,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct FontTable {
    pub list: Vec<Font>,
    pub extras: Extras,
}

impl FontTable {
    pub fn is_empty(&self) -> bool {
        self.list.is_empty() && self.extras.is_empty()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.list.iter().any(|f| f.name == name)
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Font {
    pub name: String,
    pub family: Option<String>,
    pub style: Option<String>,
    pub ascent: Option<f64>,
    pub extras: Extras,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Layer {
    pub index: Option<i64>,
    pub name: Option<String>,
    pub match_name: Option<String>,
    pub in_point: f64,
    pub out_point: f64,
    pub start_time: Option<f64>,
    pub stretch: Option<f64>,
    pub parent: Option<i64>,
    pub transform: Transform,
    pub auto_orient: Option<bool>,
    pub three_d: Option<bool>,
    pub hidden: Option<bool>,
    pub collapse: Option<bool>,
    pub matte_mode: Option<i64>,
    pub matte_parent: Option<i64>,
    pub matte_target: Option<i64>,
    pub blend_mode: Option<i64>,
    pub css_class: Option<String>,
    pub layer_xml_id: Option<String>,
    pub has_mask: Option<bool>,
    pub masks: Vec<Mask>,
    pub effects: Vec<Effect>,
    /// Opaque layer styles (`sy`).
    pub styles: Option<Value>,
    pub payload: LayerPayload,
    pub extras: Extras,
}

impl Layer {
    /// A layer with an empty transform and no optional attributes.
    pub fn new(kind_payload: LayerPayload, index: i64, in_point: f64, out_point: f64) -> Self {
        Layer {
            index: Some(index),
            name: None,
            match_name: None,
            in_point,
            out_point,
            start_time: None,
            stretch: None,
            parent: None,
            transform: Transform::default(),
            auto_orient: None,
            three_d: None,
            hidden: None,
            collapse: None,
            matte_mode: None,
            matte_parent: None,
            matte_target: None,
            blend_mode: None,
            css_class: None,
            layer_xml_id: None,
            has_mask: None,
            masks: Vec::new(),
            effects: Vec::new(),
            styles: None,
            payload: kind_payload,
            extras: Extras::new(),
        }
    }

    pub fn kind(&self) -> LayerKind {
        match self.payload {
            LayerPayload::Precomp(_) => LayerKind::Precomp,
            LayerPayload::Solid(_) => LayerKind::Solid,
            LayerPayload::Null => LayerKind::Null,
            LayerPayload::Shape(_) => LayerKind::Shape,
            LayerPayload::Text(_) => LayerKind::Text,
        }
    }

    pub fn start_time(&self) -> f64 {
        self.start_time.unwrap_or(0.0)
    }

    pub fn stretch(&self) -> f64 {
        self.stretch.unwrap_or(1.0)
    }

    pub fn is_hidden(&self) -> bool {
        self.hidden.unwrap_or(false)
    }

    pub fn shapes(&self) -> Option<&[ShapeNode]> {
        match &self.payload {
            LayerPayload::Shape(s) => Some(s),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum LayerPayload {
    Precomp(PrecompPayload),
    Solid(SolidPayload),
    Null,
    Shape(Vec<ShapeNode>),
    Text(TextData),
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct PrecompPayload {
    pub ref_id: String,
    pub width: Option<f64>,
    pub height: Option<f64>,
    /// Time remapping curve (`tm`), in seconds of the nested composition.
    pub time_remap: Option<Property>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SolidPayload {
    pub width: f64,
    pub height: f64,
    /// Hex color text exactly as in the source, e.g. `#ff0000`.
    pub color: String,
}

/// Layer or shape-group transform (`ks` / `tr`).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Transform {
    pub anchor: Option<Property>,
    pub position: Option<Position>,
    pub scale: Option<Property>,
    pub rotation: Option<Property>,
    pub opacity: Option<Property>,
    pub skew: Option<Property>,
    pub skew_axis: Option<Property>,
    /// Repeater transforms only.
    pub start_opacity: Option<Property>,
    /// Repeater transforms only.
    pub end_opacity: Option<Property>,
    pub extras: Extras,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Position {
    Combined(Property),
    /// `"s": true` with independently animated components.
    Split(SplitPosition),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SplitPosition {
    pub x: Property,
    pub y: Property,
    pub z: Option<Property>,
    pub extras: Extras,
}

/// Numeric animatable property: a static vector or a keyframe track.
#[derive(Debug, Clone, PartialEq)]
pub struct Property {
    pub value: PropValue,
    pub extras: Extras,
}

#[derive(Debug, Clone, PartialEq)]
pub enum PropValue {
    Static(Vec<f64>),
    Keyframed(Vec<Keyframe<Vec<f64>>>),
}

impl Property {
    pub fn fixed(values: Vec<f64>) -> Self {
        Property {
            value: PropValue::Static(values),
            extras: Extras::new(),
        }
    }

    pub fn scalar(v: f64) -> Self {
        Property::fixed(vec![v])
    }

    pub fn keyframed(keyframes: Vec<Keyframe<Vec<f64>>>) -> Self {
        Property {
            value: PropValue::Keyframed(keyframes),
            extras: Extras::new(),
        }
    }

    pub fn is_animated(&self) -> bool {
        matches!(self.value, PropValue::Keyframed(_))
    }

    pub fn static_value(&self) -> Option<&[f64]> {
        match &self.value {
            PropValue::Static(v) => Some(v),
            PropValue::Keyframed(_) => None,
        }
    }

    pub fn keyframes(&self) -> &[Keyframe<Vec<f64>>] {
        match &self.value {
            PropValue::Static(_) => &[],
            PropValue::Keyframed(k) => k,
        }
    }

    /// The value shown at the start: the static value or the first keyframe's start.
    pub fn initial_value(&self) -> Option<&[f64]> {
        match &self.value {
            PropValue::Static(v) => Some(v),
            PropValue::Keyframed(k) => k.first().and_then(|k| k.start.as_deref()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Keyframe<V> {
    pub time: f64,
    pub start: Option<V>,
    pub end: Option<V>,
    pub ease_in: Option<Easing>,
    pub ease_out: Option<Easing>,
    pub hold: Option<bool>,
    pub spatial_in: Option<Vec<f64>>,
    pub spatial_out: Option<Vec<f64>>,
    pub extras: Extras,
}

impl<V> Keyframe<V> {
    pub fn new(time: f64, start: V) -> Self {
        Keyframe {
            time,
            start: Some(start),
            end: None,
            ease_in: None,
            ease_out: None,
            hold: None,
            spatial_in: None,
            spatial_out: None,
            extras: Extras::new(),
        }
    }

    pub fn is_hold(&self) -> bool {
        self.hold.unwrap_or(false)
    }
}

/// Keyframe easing tangent (`i` / `o`).
#[derive(Debug, Clone, PartialEq)]
pub struct Easing {
    pub x: EaseComponent,
    pub y: EaseComponent,
    pub extras: Extras,
}

impl Easing {
    pub fn new(x: f64, y: f64) -> Self {
        Easing {
            x: EaseComponent::PerAxis(vec![x]),
            y: EaseComponent::PerAxis(vec![y]),
            extras: Extras::new(),
        }
    }

    pub fn linear_in() -> Self {
        Easing::new(1.0, 1.0)
    }

    pub fn linear_out() -> Self {
        Easing::new(0.0, 0.0)
    }
}

/// Lottie writes easing components either as a bare number or one entry per axis.
#[derive(Debug, Clone, PartialEq)]
pub enum EaseComponent {
    Scalar(f64),
    PerAxis(Vec<f64>),
}

impl EaseComponent {
    /// Component for axis `i`, falling back to the first entry.
    pub fn axis(&self, i: usize) -> f64 {
        match self {
            EaseComponent::Scalar(v) => *v,
            EaseComponent::PerAxis(v) => v.get(i).or(v.first()).copied().unwrap_or(0.0),
        }
    }

    pub fn values(&self) -> &[f64] {
        match self {
            EaseComponent::Scalar(v) => std::slice::from_ref(v),
            EaseComponent::PerAxis(v) => v,
        }
    }
}

/// Path-valued animatable property (`ks` of a path, `pt` of a mask).
#[derive(Debug, Clone, PartialEq)]
pub struct ShapeProperty {
    pub value: ShapeValue,
    pub extras: Extras,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ShapeValue {
    Static(Bezier),
    Keyframed(Vec<Keyframe<Vec<Bezier>>>),
}

impl ShapeProperty {
    pub fn fixed(b: Bezier) -> Self {
        ShapeProperty {
            value: ShapeValue::Static(b),
            extras: Extras::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Bezier {
    pub closed: Option<bool>,
    pub vertices: Vec<[f64; 2]>,
    pub in_tangents: Vec<[f64; 2]>,
    pub out_tangents: Vec<[f64; 2]>,
    pub extras: Extras,
}

impl Bezier {
    /// Straight-edged polygon through `points`.
    pub fn polygon(points: &[[f64; 2]], closed: bool) -> Self {
        Bezier {
            closed: Some(closed),
            vertices: points.to_vec(),
            in_tangents: vec![[0.0, 0.0]; points.len()],
            out_tangents: vec![[0.0, 0.0]; points.len()],
            extras: Extras::new(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MaskMode {
    None,
    Add,
    Subtract,
    Intersect,
    Lighten,
    Darken,
    Difference,
}

impl MaskMode {
    pub const ALL: [MaskMode; 7] = [
        MaskMode::None,
        MaskMode::Add,
        MaskMode::Subtract,
        MaskMode::Intersect,
        MaskMode::Lighten,
        MaskMode::Darken,
        MaskMode::Difference,
    ];

    pub fn code(self) -> &'static str {
        match self {
            MaskMode::None => "n",
            MaskMode::Add => "a",
            MaskMode::Subtract => "s",
            MaskMode::Intersect => "i",
            MaskMode::Lighten => "l",
            MaskMode::Darken => "d",
            MaskMode::Difference => "f",
        }
    }

    pub fn from_code(code: &str) -> Option<Self> {
        MaskMode::ALL.into_iter().find(|m| m.code() == code)
    }

    pub fn ordinal(self) -> i64 {
        MaskMode::ALL.iter().position(|m| *m == self).unwrap() as i64
    }

    pub fn from_ordinal(i: i64) -> Option<Self> {
        usize::try_from(i).ok().and_then(|i| MaskMode::ALL.get(i).copied())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Mask {
    pub name: Option<String>,
    pub mode: Option<MaskMode>,
    pub inverted: Option<bool>,
    pub path: ShapeProperty,
    pub opacity: Option<Property>,
    pub expansion: Option<Property>,
    pub extras: Extras,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Effect {
    /// Effect type id (`ty`).
    pub kind: i64,
    pub name: Option<String>,
    pub match_name: Option<String>,
    pub enabled: Option<bool>,
    pub params: Vec<EffectParam>,
    pub extras: Extras,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EffectParamKind {
    Slider,
    Angle,
    Color,
    Point,
    Checkbox,
    Dropdown,
    LayerRef,
}

impl EffectParamKind {
    pub const ALL: [EffectParamKind; 7] = [
        EffectParamKind::Slider,
        EffectParamKind::Angle,
        EffectParamKind::Color,
        EffectParamKind::Point,
        EffectParamKind::Checkbox,
        EffectParamKind::Dropdown,
        EffectParamKind::LayerRef,
    ];

    pub fn type_id(self) -> i64 {
        match self {
            EffectParamKind::Slider => 0,
            EffectParamKind::Angle => 1,
            EffectParamKind::Color => 2,
            EffectParamKind::Point => 3,
            EffectParamKind::Checkbox => 4,
            EffectParamKind::Dropdown => 7,
            EffectParamKind::LayerRef => 10,
        }
    }

    pub fn from_type_id(ty: i64) -> Option<Self> {
        EffectParamKind::ALL.into_iter().find(|k| k.type_id() == ty)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EffectParam {
    pub kind: EffectParamKind,
    pub name: Option<String>,
    pub match_name: Option<String>,
    pub value: Property,
    pub extras: Extras,
}

/// Text layer data (`t`).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TextData {
    pub documents: Vec<TextDocumentKeyframe>,
    /// Unknown keys of the `d` object.
    pub document_extras: Extras,
    pub animators: Vec<TextAnimator>,
    pub extras: Extras,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct TextDocumentKeyframe {
    pub time: f64,
    pub document: TextDocument,
    pub extras: Extras,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct TextDocument {
    pub font: String,
    pub size: f64,
    pub text: String,
    pub justify: Option<i64>,
    pub tracking: Option<f64>,
    pub leading: Option<f64>,
    pub fill_color: Option<Vec<f64>>,
    pub stroke_color: Option<Vec<f64>>,
    pub stroke_width: Option<f64>,
    pub extras: Extras,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct TextAnimator {
    pub name: Option<String>,
    pub selector: TextSelector,
    pub style: TextStyle,
    pub extras: Extras,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct TextSelector {
    pub start: Option<Property>,
    pub end: Option<Property>,
    pub offset: Option<Property>,
    /// Range basis (`b`): characters, words, lines...
    pub basis: Option<i64>,
    pub extras: Extras,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct TextStyle {
    pub position: Option<Property>,
    pub rotation: Option<Property>,
    pub scale: Option<Property>,
    pub fill_color: Option<Property>,
    pub stroke_color: Option<Property>,
    pub opacity: Option<Property>,
    pub tracking: Option<Property>,
    pub extras: Extras,
}

/// A node of a shape layer's shape tree.
#[derive(Debug, Clone, PartialEq)]
pub struct ShapeNode {
    pub name: Option<String>,
    pub match_name: Option<String>,
    pub hidden: Option<bool>,
    pub blend_mode: Option<i64>,
    pub kind: ShapeKind,
    pub extras: Extras,
}

impl ShapeNode {
    pub fn new(kind: ShapeKind) -> Self {
        ShapeNode {
            name: None,
            match_name: None,
            hidden: None,
            blend_mode: None,
            kind,
            extras: Extras::new(),
        }
    }

    pub fn type_code(&self) -> &'static str {
        self.kind.type_code()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ShapeType {
    Group,
    Path,
    Fill,
    Stroke,
    GradientFill,
    GradientStroke,
    Rect,
    Ellipse,
    Star,
    Transform,
    TrimPath,
    Repeater,
    MergePaths,
    RoundedCorners,
    ZigZag,
}

impl ShapeType {
    pub const ALL: [ShapeType; 15] = [
        ShapeType::Group,
        ShapeType::Path,
        ShapeType::Fill,
        ShapeType::Stroke,
        ShapeType::GradientFill,
        ShapeType::GradientStroke,
        ShapeType::Rect,
        ShapeType::Ellipse,
        ShapeType::Star,
        ShapeType::Transform,
        ShapeType::TrimPath,
        ShapeType::Repeater,
        ShapeType::MergePaths,
        ShapeType::RoundedCorners,
        ShapeType::ZigZag,
    ];

    pub fn code(self) -> &'static str {
        match self {
            ShapeType::Group => "gr",
            ShapeType::Path => "sh",
            ShapeType::Fill => "fl",
            ShapeType::Stroke => "st",
            ShapeType::GradientFill => "gf",
            ShapeType::GradientStroke => "gs",
            ShapeType::Rect => "rc",
            ShapeType::Ellipse => "el",
            ShapeType::Star => "sr",
            ShapeType::Transform => "tr",
            ShapeType::TrimPath => "tm",
            ShapeType::Repeater => "rp",
            ShapeType::MergePaths => "mm",
            ShapeType::RoundedCorners => "rd",
            ShapeType::ZigZag => "zz",
        }
    }

    pub fn from_code(code: &str) -> Option<Self> {
        ShapeType::ALL.into_iter().find(|t| t.code() == code)
    }

    pub fn is_geometry(self) -> bool {
        matches!(
            self,
            ShapeType::Path | ShapeType::Rect | ShapeType::Ellipse | ShapeType::Star
        )
    }

    pub fn is_style(self) -> bool {
        matches!(
            self,
            ShapeType::Fill | ShapeType::Stroke | ShapeType::GradientFill | ShapeType::GradientStroke
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ShapeKind {
    Group(Group),
    Path(PathShape),
    Fill(Fill),
    Stroke(Stroke),
    GradientFill(GradientFill),
    GradientStroke(GradientStroke),
    Rect(Rect),
    Ellipse(Ellipse),
    Star(Star),
    Transform(Transform),
    TrimPath(TrimPath),
    Repeater(Repeater),
    MergePaths(MergePaths),
    RoundedCorners(RoundedCorners),
    ZigZag(ZigZag),
}

impl ShapeKind {
    pub fn shape_type(&self) -> ShapeType {
        match self {
            ShapeKind::Group(_) => ShapeType::Group,
            ShapeKind::Path(_) => ShapeType::Path,
            ShapeKind::Fill(_) => ShapeType::Fill,
            ShapeKind::Stroke(_) => ShapeType::Stroke,
            ShapeKind::GradientFill(_) => ShapeType::GradientFill,
            ShapeKind::GradientStroke(_) => ShapeType::GradientStroke,
            ShapeKind::Rect(_) => ShapeType::Rect,
            ShapeKind::Ellipse(_) => ShapeType::Ellipse,
            ShapeKind::Star(_) => ShapeType::Star,
            ShapeKind::Transform(_) => ShapeType::Transform,
            ShapeKind::TrimPath(_) => ShapeType::TrimPath,
            ShapeKind::Repeater(_) => ShapeType::Repeater,
            ShapeKind::MergePaths(_) => ShapeType::MergePaths,
            ShapeKind::RoundedCorners(_) => ShapeType::RoundedCorners,
            ShapeKind::ZigZag(_) => ShapeType::ZigZag,
        }
    }

    pub fn type_code(&self) -> &'static str {
        self.shape_type().code()
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Group {
    /// `np`, number of properties.
    pub num_properties: Option<f64>,
    pub items: Vec<ShapeNode>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PathShape {
    pub direction: Option<i64>,
    pub path: ShapeProperty,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Fill {
    pub color: Option<Property>,
    pub opacity: Option<Property>,
    pub rule: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Stroke {
    pub color: Option<Property>,
    pub opacity: Option<Property>,
    pub width: Option<Property>,
    pub cap: Option<i64>,
    pub join: Option<i64>,
    pub miter_limit: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Gradient {
    pub opacity: Option<Property>,
    pub start_point: Option<Property>,
    pub end_point: Option<Property>,
    /// 1 linear, 2 radial.
    pub gradient_type: Option<i64>,
    pub highlight_length: Option<Property>,
    pub highlight_angle: Option<Property>,
    pub stops: GradientStops,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GradientStops {
    /// Number of color stops (`p`).
    pub count: i64,
    /// Flat stop list: offset, r, g, b per stop, then optional opacity stops.
    pub colors: Property,
    pub extras: Extras,
}

impl Default for GradientStops {
    fn default() -> Self {
        GradientStops {
            count: 0,
            colors: Property::fixed(Vec::new()),
            extras: Extras::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct GradientFill {
    pub gradient: Gradient,
    pub rule: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct GradientStroke {
    pub gradient: Gradient,
    pub width: Option<Property>,
    pub cap: Option<i64>,
    pub join: Option<i64>,
    pub miter_limit: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Rect {
    pub direction: Option<i64>,
    pub position: Option<Property>,
    pub size: Option<Property>,
    pub roundness: Option<Property>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Ellipse {
    pub direction: Option<i64>,
    pub position: Option<Property>,
    pub size: Option<Property>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Star {
    pub direction: Option<i64>,
    pub position: Option<Property>,
    pub outer_radius: Option<Property>,
    pub outer_roundness: Option<Property>,
    pub inner_radius: Option<Property>,
    pub inner_roundness: Option<Property>,
    pub rotation: Option<Property>,
    pub points: Option<Property>,
    /// 1 star, 2 polygon.
    pub star_type: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct TrimPath {
    pub start: Option<Property>,
    pub end: Option<Property>,
    pub offset: Option<Property>,
    pub mode: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Repeater {
    pub copies: Option<Property>,
    pub offset: Option<Property>,
    pub composite: Option<i64>,
    pub transform: Transform,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct MergePaths {
    pub mode: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct RoundedCorners {
    pub radius: Option<Property>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ZigZag {
    pub frequency: Option<Property>,
    pub amplitude: Option<Property>,
    pub point_type: Option<Property>,
}

/// Errors produced when reading Lottie JSON.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ModelError {
    #[error("malformed JSON: {0}")]
    MalformedJson(String),
    #[error("unsupported layer kind ty={ty} at {path}; run `clean` first")]
    UnsupportedLayerKind { ty: i64, path: String },
    #[error("schema violation at {path}: {reason}")]
    SchemaViolation { path: String, reason: String },
}

impl ModelError {
    pub(crate) fn schema(path: impl Into<String>, reason: impl Into<String>) -> Self {
        ModelError::SchemaViolation {
            path: path.into(),
            reason: reason.into(),
        }
    }
}
