//! The command schema, written once as a walk over the model.
//!
//! The same walk drives three backends: the command writer reads model
//! fields and emits commands; the command reader and the token reader fill
//! blank model objects from their input. Every field accessor takes a
//! mutable reference so the walk is symmetric in both directions.
//!
//! Layout of one command: numeric parameters, then text groups, then EXTRA
//! commands carrying unknown JSON keys of the objects walked so far (one
//! slot per object, in walk order), then KEYFRAME commands for every
//! animated property the command owns, then any child commands.

use serde_json::{Map, Value};

use super::{CommandKind as K, TokenizerError};
use crate::model::*;
use crate::vocab::{pack_version, unpack_version, ParamType as T, COUNT_MAX};

type R = Result<(), TokenizerError>;

pub(crate) trait Walker {
    fn writing(&self) -> bool;
    /// Writers open a command; readers consume one and fail on a different kind.
    fn begin(&mut self, kind: K) -> R;
    /// Readers: kind of the next command, or `None` when the next item is
    /// not a command. Writers never call this.
    fn peek(&mut self) -> Result<Option<K>, TokenizerError>;
    fn num(&mut self, name: &'static str, ty: T, v: &mut Option<f64>) -> R;
    fn text(&mut self, v: &mut Option<String>) -> R;
    /// Readers: the input must be exhausted.
    fn end_of_input(&mut self) -> R;
    /// Error for a value that is well-typed but not acceptable here.
    fn invalid(&self, detail: &str) -> TokenizerError;
}

/// Opaque typed fields folded into an object's EXTRA JSON.
enum Opaque<'a> {
    Value(&'static str, &'a mut Option<Value>),
    List(&'static str, &'a mut Vec<Value>),
}

struct Slot<'a> {
    extras: &'a mut Extras,
    opaque: Vec<Opaque<'a>>,
}

impl Slot<'_> {
    fn fold(&self) -> Map<String, Value> {
        let mut m = Map::new();
        for o in &self.opaque {
            match o {
                Opaque::Value(k, Some(v)) => {
                    m.insert((*k).into(), v.clone());
                }
                Opaque::List(k, l) if !l.is_empty() => {
                    m.insert((*k).into(), Value::Array(l.to_vec()));
                }
                _ => {}
            }
        }
        for (k, v) in self.extras.iter() {
            m.insert(k.clone(), v.clone());
        }
        m
    }

    fn split(&mut self, mut m: Map<String, Value>) -> Result<(), &'static str> {
        for o in &mut self.opaque {
            match o {
                Opaque::Value(k, v) => **v = m.shift_remove(*k),
                Opaque::List(k, l) => match m.shift_remove(*k) {
                    None => l.clear(),
                    Some(Value::Array(items)) => **l = items,
                    Some(_) => return Err("opaque list is not an array"),
                },
            }
        }
        *self.extras = m;
        Ok(())
    }
}

enum Track<'a> {
    Num(&'a mut Vec<Keyframe<Vec<f64>>>, T),
    Path(&'a mut Vec<Keyframe<Vec<Bezier>>>),
}

/// Per-command state: extras slots and keyframe tracks still to emit.
#[derive(Default)]
struct Frame<'a> {
    slots: Vec<Slot<'a>>,
    tracks: Vec<Track<'a>>,
}

impl<'a> Frame<'a> {
    fn slot(&mut self, extras: &'a mut Extras) {
        self.slots.push(Slot {
            extras,
            opaque: Vec::new(),
        });
    }

    fn slot_with(&mut self, extras: &'a mut Extras, opaque: Vec<Opaque<'a>>) {
        self.slots.push(Slot { extras, opaque });
    }
}

fn finish<W: Walker>(w: &mut W, f: Frame) -> R {
    let Frame { mut slots, tracks } = f;
    if w.writing() {
        for (i, slot) in slots.iter().enumerate() {
            let m = slot.fold();
            if m.is_empty() {
                continue;
            }
            w.begin(K::Extra)?;
            count(w, "slot", i)?;
            let mut text = Some(serde_json::to_string(&Value::Object(m)).unwrap());
            w.text(&mut text)?;
        }
    } else {
        let mut next = 0usize;
        while w.peek()? == Some(K::Extra) {
            w.begin(K::Extra)?;
            let i = count(w, "slot", 0)?;
            if i < next || i >= slots.len() {
                return Err(w.invalid("EXTRA slot out of order"));
            }
            next = i + 1;
            let mut text = None;
            w.text(&mut text)?;
            let text = text.ok_or_else(|| w.invalid("EXTRA without JSON text"))?;
            let m = match serde_json::from_str::<Value>(&text) {
                Ok(Value::Object(m)) if !m.is_empty() => m,
                _ => return Err(w.invalid("EXTRA text is not a non-empty JSON object")),
            };
            slots[i].split(m).map_err(|e| w.invalid(e))?;
            let canonical = serde_json::to_string(&Value::Object(slots[i].fold())).unwrap();
            if canonical != text {
                return Err(w.invalid("EXTRA text is not in canonical form"));
            }
        }
    }
    for track in tracks {
        match track {
            Track::Num(kfs, ty) => {
                for k in kfs.iter_mut() {
                    keyframe(w, k, |w, _, v| opt_values(w, "s", ty, v), |w, _, v| opt_values(w, "e", ty, v))?;
                }
            }
            Track::Path(kfs) => {
                for k in kfs.iter_mut() {
                    keyframe(w, k, |w, f, v| opt_beziers(w, f, v), |w, f, v| opt_beziers(w, f, v))?;
                }
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// scalar helpers

fn required<W: Walker>(w: &W, v: Option<f64>, name: &str) -> Result<f64, TokenizerError> {
    v.ok_or_else(|| w.invalid(&format!("required parameter {name} is absent")))
}

fn integral<W: Walker>(w: &W, v: f64, name: &str) -> Result<i64, TokenizerError> {
    if v.fract() == 0.0 && v.is_finite() {
        Ok(v as i64)
    } else {
        Err(w.invalid(&format!("parameter {name} must be an integer")))
    }
}

fn req_num<W: Walker>(w: &mut W, name: &'static str, ty: T, v: &mut f64) -> R {
    let mut o = Some(*v);
    w.num(name, ty, &mut o)?;
    *v = required(w, o, name)?;
    Ok(())
}

fn opt_num<W: Walker>(w: &mut W, name: &'static str, ty: T, v: &mut Option<f64>) -> R {
    w.num(name, ty, v)
}

fn opt_count<W: Walker>(w: &mut W, name: &'static str, n: Option<usize>) -> Result<Option<usize>, TokenizerError> {
    if let Some(n) = n {
        if n > COUNT_MAX as usize {
            return Err(TokenizerError::CountTooLarge {
                count: n,
                max: COUNT_MAX as usize,
            });
        }
    }
    let mut o = n.map(|n| n as f64);
    w.num(name, T::Count, &mut o)?;
    match o {
        None => Ok(None),
        Some(x) => {
            let i = integral(w, x, name)?;
            if i < 0 || i > COUNT_MAX as i64 {
                return Err(w.invalid(&format!("count {name} out of range")));
            }
            Ok(Some(i as usize))
        }
    }
}

fn count<W: Walker>(w: &mut W, name: &'static str, n: usize) -> Result<usize, TokenizerError> {
    let o = opt_count(w, name, Some(n))?;
    o.ok_or_else(|| w.invalid(&format!("required count {name} is absent")))
}

fn int<W: Walker>(w: &mut W, name: &'static str, ty: T, v: &mut Option<i64>) -> R {
    let mut o = v.map(|i| i as f64);
    w.num(name, ty, &mut o)?;
    *v = match o {
        None => None,
        Some(x) => Some(integral(w, x, name)?),
    };
    Ok(())
}

fn req_int<W: Walker>(w: &mut W, name: &'static str, ty: T, v: &mut i64) -> R {
    let mut o = Some(*v);
    int(w, name, ty, &mut o)?;
    *v = o.ok_or_else(|| w.invalid(&format!("required parameter {name} is absent")))?;
    Ok(())
}

fn flag_value<W: Walker>(w: &W, x: f64, name: &str) -> Result<bool, TokenizerError> {
    match x {
        x if x == 0.0 => Ok(false),
        x if x == 1.0 => Ok(true),
        _ => Err(w.invalid(&format!("flag {name} must be 0 or 1"))),
    }
}

fn flag<W: Walker>(w: &mut W, name: &'static str, v: &mut Option<bool>) -> R {
    let mut o = v.map(|b| b as u8 as f64);
    w.num(name, T::BinaryFlag, &mut o)?;
    *v = match o {
        None => None,
        Some(x) => Some(flag_value(w, x, name)?),
    };
    Ok(())
}

fn text<W: Walker>(w: &mut W, v: &mut Option<String>) -> R {
    w.text(v)
}

fn req_text<W: Walker>(w: &mut W, name: &str, v: &mut String) -> R {
    let mut o = Some(std::mem::take(v));
    w.text(&mut o)?;
    *v = o.ok_or_else(|| w.invalid(&format!("required text {name} is absent")))?;
    Ok(())
}

fn values<W: Walker>(w: &mut W, name: &'static str, ty: T, v: &mut Vec<f64>) -> R {
    let n = count(w, "len", v.len())?;
    if !w.writing() {
        v.clear();
        v.resize(n, 0.0);
    }
    for x in v.iter_mut() {
        req_num(w, name, ty, x)?;
    }
    Ok(())
}

fn opt_values<W: Walker>(w: &mut W, name: &'static str, ty: T, v: &mut Option<Vec<f64>>) -> R {
    let n = opt_count(w, "len", v.as_ref().map(|v| v.len()))?;
    match n {
        None => *v = None,
        Some(n) => {
            let items = v.get_or_insert_with(Vec::new);
            if items.len() != n {
                items.resize(n, 0.0);
            }
            for x in items.iter_mut() {
                req_num(w, name, ty, x)?;
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// animated properties

fn blank_keyframe<V>() -> Keyframe<V> {
    Keyframe {
        time: 0.0,
        start: None,
        end: None,
        ease_in: None,
        ease_out: None,
        hold: None,
        spatial_in: None,
        spatial_out: None,
        extras: Extras::new(),
    }
}

fn blank_prop(animated: bool) -> Property {
    Property {
        value: if animated {
            PropValue::Keyframed(Vec::new())
        } else {
            PropValue::Static(Vec::new())
        },
        extras: Extras::new(),
    }
}

fn prop<'a, W: Walker>(
    w: &mut W,
    f: &mut Frame<'a>,
    name: &'static str,
    ty: T,
    p: &'a mut Option<Property>,
) -> R {
    let mut state = p.as_ref().map(|p| p.is_animated() as u8 as f64);
    w.num(name, T::BinaryFlag, &mut state)?;
    let Some(s) = state else {
        *p = None;
        return Ok(());
    };
    let animated = flag_value(w, s, name)?;
    let prop = p.get_or_insert_with(|| blank_prop(animated));
    prop_content(w, f, ty, prop)
}

fn req_prop<'a, W: Walker>(
    w: &mut W,
    f: &mut Frame<'a>,
    name: &'static str,
    ty: T,
    p: &'a mut Property,
) -> R {
    let mut state = Some(p.is_animated() as u8 as f64);
    w.num(name, T::BinaryFlag, &mut state)?;
    let s = required(w, state, name)?;
    let animated = flag_value(w, s, name)?;
    if !w.writing() {
        *p = blank_prop(animated);
    }
    prop_content(w, f, ty, p)
}

fn prop_content<'a, W: Walker>(w: &mut W, f: &mut Frame<'a>, ty: T, p: &'a mut Property) -> R {
    let Property { value, extras } = p;
    match value {
        PropValue::Static(vals) => values(w, "v", ty, vals)?,
        PropValue::Keyframed(kfs) => {
            let n = count(w, "n", kfs.len())?;
            if !w.writing() {
                kfs.resize_with(n, blank_keyframe);
            }
            f.tracks.push(Track::Num(kfs, ty));
        }
    }
    f.slot(extras);
    Ok(())
}

fn shape_prop<'a, W: Walker>(w: &mut W, f: &mut Frame<'a>, name: &'static str, p: &'a mut ShapeProperty) -> R {
    let mut state = Some(matches!(p.value, ShapeValue::Keyframed(_)) as u8 as f64);
    w.num(name, T::BinaryFlag, &mut state)?;
    let s = required(w, state, name)?;
    let animated = flag_value(w, s, name)?;
    if !w.writing() {
        p.value = if animated {
            ShapeValue::Keyframed(Vec::new())
        } else {
            ShapeValue::Static(Bezier::default())
        };
    }
    let ShapeProperty { value, extras } = p;
    match value {
        ShapeValue::Static(b) => bezier(w, f, b)?,
        ShapeValue::Keyframed(kfs) => {
            let n = count(w, "n", kfs.len())?;
            if !w.writing() {
                kfs.resize_with(n, blank_keyframe);
            }
            f.tracks.push(Track::Path(kfs));
        }
    }
    f.slot(extras);
    Ok(())
}

fn bezier<'a, W: Walker>(w: &mut W, f: &mut Frame<'a>, b: &'a mut Bezier) -> R {
    flag(w, "c", &mut b.closed)?;
    let n = count(w, "nv", b.vertices.len())?;
    if !w.writing() {
        b.vertices = vec![[0.0; 2]; n];
        b.in_tangents = vec![[0.0; 2]; n];
        b.out_tangents = vec![[0.0; 2]; n];
    }
    for i in 0..n {
        for (name, pts) in [("v", &mut b.vertices), ("i", &mut b.in_tangents), ("o", &mut b.out_tangents)] {
            let [x, y] = &mut pts[i];
            req_num(w, name, T::SpatialCoord, x)?;
            req_num(w, name, T::SpatialCoord, y)?;
        }
    }
    f.slot(&mut b.extras);
    Ok(())
}

fn opt_beziers<'a, W: Walker>(w: &mut W, f: &mut Frame<'a>, v: &'a mut Option<Vec<Bezier>>) -> R {
    let n = opt_count(w, "paths", v.as_ref().map(|v| v.len()))?;
    match n {
        None => *v = None,
        Some(n) => {
            let items = v.get_or_insert_with(Vec::new);
            if !w.writing() {
                items.resize_with(n, Bezier::default);
            }
            for b in items.iter_mut() {
                bezier(w, f, b)?;
            }
        }
    }
    Ok(())
}

fn ease_component<W: Walker>(w: &mut W, name: &'static str, c: &mut EaseComponent) -> R {
    let n = opt_count(
        w,
        "len",
        match c {
            EaseComponent::Scalar(_) => None,
            EaseComponent::PerAxis(v) => Some(v.len()),
        },
    )?;
    match n {
        None => {
            let mut x = match c {
                EaseComponent::Scalar(x) => *x,
                EaseComponent::PerAxis(_) => 0.0,
            };
            req_num(w, name, T::EasingTangent, &mut x)?;
            *c = EaseComponent::Scalar(x);
        }
        Some(n) => {
            if !w.writing() {
                *c = EaseComponent::PerAxis(vec![0.0; n]);
            }
            if let EaseComponent::PerAxis(v) = c {
                for x in v.iter_mut() {
                    req_num(w, name, T::EasingTangent, x)?;
                }
            }
        }
    }
    Ok(())
}

fn easing<'a, W: Walker>(w: &mut W, f: &mut Frame<'a>, name: &'static str, e: &'a mut Option<Easing>) -> R {
    let mut present = e.as_ref().map(|_| 1.0);
    w.num(name, T::BinaryFlag, &mut present)?;
    match present {
        None => {
            *e = None;
            Ok(())
        }
        Some(x) if x == 1.0 => {
            let e = e.get_or_insert_with(|| Easing {
                x: EaseComponent::Scalar(0.0),
                y: EaseComponent::Scalar(0.0),
                extras: Extras::new(),
            });
            ease_component(w, "x", &mut e.x)?;
            ease_component(w, "y", &mut e.y)?;
            f.slot(&mut e.extras);
            Ok(())
        }
        Some(_) => Err(w.invalid("easing presence flag must be 1 or absent")),
    }
}

fn keyframe<W: Walker, V>(
    w: &mut W,
    k: &mut Keyframe<V>,
    start: impl for<'b> FnOnce(&mut W, &mut Frame<'b>, &'b mut Option<V>) -> R,
    end: impl for<'b> FnOnce(&mut W, &mut Frame<'b>, &'b mut Option<V>) -> R,
) -> R {
    w.begin(K::Keyframe)?;
    let Keyframe {
        time,
        start: s,
        end: e,
        ease_in,
        ease_out,
        hold,
        spatial_in,
        spatial_out,
        extras,
    } = k;
    let mut f = Frame::default();
    f.slot(extras);
    req_num(w, "t", T::Temporal, time)?;
    flag(w, "h", hold)?;
    start(w, &mut f, s)?;
    end(w, &mut f, e)?;
    easing(w, &mut f, "o", ease_out)?;
    easing(w, &mut f, "i", ease_in)?;
    opt_values(w, "to", T::SpatialCoord, spatial_out)?;
    opt_values(w, "ti", T::SpatialCoord, spatial_in)?;
    finish(w, f)
}

// ---------------------------------------------------------------------------
// document structure

pub(crate) fn animation<W: Walker>(w: &mut W, a: &mut Animation) -> R {
    w.begin(K::Meta)?;
    let mut packed = pack_version(&a.version).map(|p| p as f64);
    w.num("v", T::SchemaVersion, &mut packed)?;
    req_num(w, "fr", T::Generic, &mut a.frame_rate)?;
    req_num(w, "ip", T::Temporal, &mut a.in_point)?;
    req_num(w, "op", T::Temporal, &mut a.out_point)?;
    req_num(w, "w", T::SpatialCoord, &mut a.width)?;
    req_num(w, "h", T::SpatialCoord, &mut a.height)?;
    flag(w, "ddd", &mut a.three_d)?;
    text(w, &mut a.name)?;
    match packed {
        Some(p) => {
            let p = integral(w, p, "v")?;
            a.version = unpack_version(p as u32);
        }
        None => {
            // Versions that do not fit the packed form travel as text.
            req_text(w, "v", &mut a.version)?;
            if pack_version(&a.version).is_some() {
                return Err(w.invalid("packable version sent as text"));
            }
        }
    }
    let mut f = Frame::default();
    f.slot_with(
        &mut a.extras,
        vec![
            Opaque::List("markers", &mut a.markers),
            Opaque::List("chars", &mut a.chars),
        ],
    );
    finish(w, f)?;
    layers(w, &mut a.layers)?;
    if w.writing() {
        for asset in &mut a.assets {
            precomp_asset(w, asset)?;
        }
        if !a.fonts.is_empty() {
            fonts(w, &mut a.fonts)?;
        }
    } else {
        while w.peek()? == Some(K::Asset) {
            let mut asset = PrecompAsset::default();
            precomp_asset(w, &mut asset)?;
            a.assets.push(asset);
        }
        if w.peek()? == Some(K::Fonts) {
            fonts(w, &mut a.fonts)?;
        }
    }
    w.end_of_input()
}

fn precomp_asset<W: Walker>(w: &mut W, asset: &mut PrecompAsset) -> R {
    w.begin(K::Asset)?;
    let mut f = Frame::default();
    f.slot(&mut asset.extras);
    opt_num(w, "fr", T::Generic, &mut asset.frame_rate)?;
    req_text(w, "id", &mut asset.id)?;
    text(w, &mut asset.name)?;
    finish(w, f)?;
    layers(w, &mut asset.layers)?;
    w.begin(K::GroupEnd)
}

fn fonts<W: Walker>(w: &mut W, table: &mut FontTable) -> R {
    w.begin(K::Fonts)?;
    let mut f = Frame::default();
    f.slot(&mut table.extras);
    finish(w, f)?;
    let font = |w: &mut W, font: &mut Font| -> R {
        w.begin(K::Font)?;
        let mut f = Frame::default();
        f.slot(&mut font.extras);
        opt_num(w, "ascent", T::Generic, &mut font.ascent)?;
        req_text(w, "fName", &mut font.name)?;
        text(w, &mut font.family)?;
        text(w, &mut font.style)?;
        finish(w, f)
    };
    if w.writing() {
        for x in &mut table.list {
            font(w, x)?;
        }
    } else {
        while w.peek()? == Some(K::Font) {
            let mut x = Font::default();
            font(w, &mut x)?;
            table.list.push(x);
        }
    }
    Ok(())
}

/// Layers travel in render order: last in the document first.
fn layers<W: Walker>(w: &mut W, list: &mut Vec<Layer>) -> R {
    if w.writing() {
        for l in list.iter_mut().rev() {
            layer(w, l)?;
        }
        return Ok(());
    }
    let mut out = Vec::new();
    while let Some(K::Layer(kind)) = w.peek()? {
        let payload = match kind {
            LayerKind::Precomp => LayerPayload::Precomp(PrecompPayload::default()),
            LayerKind::Solid => LayerPayload::Solid(SolidPayload::default()),
            LayerKind::Null => LayerPayload::Null,
            LayerKind::Shape => LayerPayload::Shape(Vec::new()),
            LayerKind::Text => LayerPayload::Text(TextData::default()),
        };
        let mut l = Layer::new(payload, 0, 0.0, 0.0);
        l.index = None;
        layer(w, &mut l)?;
        out.push(l);
    }
    out.reverse();
    *list = out;
    Ok(())
}

fn layer<W: Walker>(w: &mut W, l: &mut Layer) -> R {
    w.begin(K::Layer(l.kind()))?;
    let mut f = Frame::default();
    f.slot_with(&mut l.extras, vec![Opaque::Value("sy", &mut l.styles)]);
    int(w, "ind", T::Count, &mut l.index)?;
    req_num(w, "ip", T::Temporal, &mut l.in_point)?;
    req_num(w, "op", T::Temporal, &mut l.out_point)?;
    opt_num(w, "st", T::Temporal, &mut l.start_time)?;
    opt_num(w, "sr", T::Generic, &mut l.stretch)?;
    int(w, "parent", T::Count, &mut l.parent)?;
    flag(w, "ao", &mut l.auto_orient)?;
    flag(w, "ddd", &mut l.three_d)?;
    flag(w, "hd", &mut l.hidden)?;
    flag(w, "ct", &mut l.collapse)?;
    int(w, "tt", T::SmallEnum, &mut l.matte_mode)?;
    int(w, "tp", T::Count, &mut l.matte_parent)?;
    int(w, "td", T::SmallEnum, &mut l.matte_target)?;
    int(w, "bm", T::SmallEnum, &mut l.blend_mode)?;
    flag(w, "hasMask", &mut l.has_mask)?;
    let mut payload_text = None;
    match &mut l.payload {
        LayerPayload::Precomp(PrecompPayload {
            ref_id,
            width,
            height,
            time_remap,
        }) => {
            opt_num(w, "w", T::SpatialCoord, width)?;
            opt_num(w, "h", T::SpatialCoord, height)?;
            prop(w, &mut f, "tm", T::Temporal, time_remap)?;
            payload_text = Some(("refId", ref_id));
        }
        LayerPayload::Solid(SolidPayload { width, height, color }) => {
            req_num(w, "sw", T::SpatialCoord, width)?;
            req_num(w, "sh", T::SpatialCoord, height)?;
            payload_text = Some(("sc", color));
        }
        _ => {}
    }
    text(w, &mut l.name)?;
    text(w, &mut l.match_name)?;
    text(w, &mut l.css_class)?;
    text(w, &mut l.layer_xml_id)?;
    if let Some((name, t)) = payload_text {
        req_text(w, name, t)?;
    }
    finish(w, f)?;
    transform_command(w, &mut l.transform)?;
    list(w, K::Mask, &mut l.masks, blank_mask, mask)?;
    list(w, K::Effect, &mut l.effects, blank_effect, effect)?;
    match &mut l.payload {
        LayerPayload::Shape(items) => shapes(w, items)?,
        LayerPayload::Text(t) => text_data(w, t)?,
        _ => {}
    }
    w.begin(K::End)
}

/// A list of same-kind commands: written in order, read while the next
/// command has that kind.
fn list<W: Walker, X>(
    w: &mut W,
    kind: K,
    items: &mut Vec<X>,
    blank: fn() -> X,
    walk: fn(&mut W, &mut X) -> R,
) -> R {
    if w.writing() {
        for x in items.iter_mut() {
            walk(w, x)?;
        }
    } else {
        while w.peek()? == Some(kind) {
            let mut x = blank();
            walk(w, &mut x)?;
            items.push(x);
        }
    }
    Ok(())
}

fn transform_command<W: Walker>(w: &mut W, t: &mut Transform) -> R {
    w.begin(K::Transform)?;
    let mut f = Frame::default();
    transform_fields(w, &mut f, t, true)?;
    finish(w, f)
}

fn transform_fields<'a, W: Walker>(w: &mut W, f: &mut Frame<'a>, t: &'a mut Transform, own_extras: bool) -> R {
    let Transform {
        anchor,
        position,
        scale,
        rotation,
        opacity,
        skew,
        skew_axis,
        start_opacity,
        end_opacity,
        extras,
    } = t;
    if own_extras {
        f.slot(extras);
    }
    prop(w, f, "a", T::SpatialCoord, anchor)?;
    position_prop(w, f, position)?;
    prop(w, f, "s", T::ScalePercent, scale)?;
    prop(w, f, "r", T::RotationDeg, rotation)?;
    prop(w, f, "o", T::Opacity, opacity)?;
    prop(w, f, "sk", T::SkewDeg, skew)?;
    prop(w, f, "sa", T::SkewDeg, skew_axis)?;
    prop(w, f, "so", T::Opacity, start_opacity)?;
    prop(w, f, "eo", T::Opacity, end_opacity)
}

fn position_prop<'a, W: Walker>(w: &mut W, f: &mut Frame<'a>, p: &'a mut Option<Position>) -> R {
    let mut mode = p.as_ref().map(|p| matches!(p, Position::Split(_)) as u8 as f64);
    w.num("p.split", T::BinaryFlag, &mut mode)?;
    let Some(m) = mode else {
        *p = None;
        return Ok(());
    };
    let split = flag_value(w, m, "p.split")?;
    if !w.writing() {
        *p = Some(if split {
            Position::Split(SplitPosition {
                x: blank_prop(false),
                y: blank_prop(false),
                z: None,
                extras: Extras::new(),
            })
        } else {
            Position::Combined(blank_prop(false))
        });
    }
    match p.as_mut().unwrap() {
        Position::Combined(c) => req_prop(w, f, "p", T::SpatialCoord, c),
        Position::Split(s) => {
            let SplitPosition { x, y, z, extras } = s;
            f.slot(extras);
            req_prop(w, f, "px", T::SpatialCoord, x)?;
            req_prop(w, f, "py", T::SpatialCoord, y)?;
            prop(w, f, "pz", T::SpatialCoord, z)
        }
    }
}

fn blank_mask() -> Mask {
    Mask {
        name: None,
        mode: None,
        inverted: None,
        path: ShapeProperty::fixed(Bezier::default()),
        opacity: None,
        expansion: None,
        extras: Extras::new(),
    }
}

fn mask<W: Walker>(w: &mut W, m: &mut Mask) -> R {
    w.begin(K::Mask)?;
    let mut f = Frame::default();
    f.slot(&mut m.extras);
    let mut mode = m.mode.map(|x| x.ordinal());
    int(w, "mode", T::SmallEnum, &mut mode)?;
    m.mode = match mode {
        None => None,
        Some(i) => Some(MaskMode::from_ordinal(i).ok_or_else(|| w.invalid("unknown mask mode"))?),
    };
    flag(w, "inv", &mut m.inverted)?;
    shape_prop(w, &mut f, "pt", &mut m.path)?;
    prop(w, &mut f, "o", T::Opacity, &mut m.opacity)?;
    prop(w, &mut f, "x", T::Expansion, &mut m.expansion)?;
    text(w, &mut m.name)?;
    finish(w, f)
}

fn blank_effect() -> Effect {
    Effect {
        kind: 0,
        name: None,
        match_name: None,
        enabled: None,
        params: Vec::new(),
        extras: Extras::new(),
    }
}

fn blank_effect_param() -> EffectParam {
    EffectParam {
        kind: EffectParamKind::Slider,
        name: None,
        match_name: None,
        value: blank_prop(false),
        extras: Extras::new(),
    }
}

fn effect<W: Walker>(w: &mut W, e: &mut Effect) -> R {
    w.begin(K::Effect)?;
    let mut f = Frame::default();
    f.slot(&mut e.extras);
    req_int(w, "ty", T::SmallEnum, &mut e.kind)?;
    flag(w, "en", &mut e.enabled)?;
    text(w, &mut e.name)?;
    text(w, &mut e.match_name)?;
    finish(w, f)?;
    list(w, K::EffectParam, &mut e.params, blank_effect_param, effect_param)
}

fn effect_param<W: Walker>(w: &mut W, p: &mut EffectParam) -> R {
    w.begin(K::EffectParam)?;
    let mut f = Frame::default();
    f.slot(&mut p.extras);
    let mut kind = Some(EffectParamKind::ALL.iter().position(|k| *k == p.kind).unwrap() as i64);
    int(w, "kind", T::SmallEnum, &mut kind)?;
    p.kind = kind
        .and_then(|i| usize::try_from(i).ok())
        .and_then(|i| EffectParamKind::ALL.get(i).copied())
        .ok_or_else(|| w.invalid("unknown effect parameter kind"))?;
    let ty = match p.kind {
        EffectParamKind::Angle => T::RotationDeg,
        EffectParamKind::Color => T::ColorChannel,
        EffectParamKind::Point => T::SpatialCoord,
        _ => T::Generic,
    };
    req_prop(w, &mut f, "v", ty, &mut p.value)?;
    text(w, &mut p.name)?;
    text(w, &mut p.match_name)?;
    finish(w, f)
}

fn text_data<W: Walker>(w: &mut W, t: &mut TextData) -> R {
    w.begin(K::TextGroup)?;
    let mut f = Frame::default();
    f.slot(&mut t.extras);
    f.slot(&mut t.document_extras);
    finish(w, f)?;
    list(w, K::TextDoc, &mut t.documents, TextDocumentKeyframe::default, text_document)?;
    list(w, K::TextAnim, &mut t.animators, TextAnimator::default, text_animator)
}

fn text_document<W: Walker>(w: &mut W, k: &mut TextDocumentKeyframe) -> R {
    w.begin(K::TextDoc)?;
    let TextDocumentKeyframe { time, document: d, extras } = k;
    let mut f = Frame::default();
    f.slot(extras);
    f.slot(&mut d.extras);
    req_num(w, "t", T::Temporal, time)?;
    req_num(w, "s", T::FontSize, &mut d.size)?;
    int(w, "j", T::SmallEnum, &mut d.justify)?;
    opt_num(w, "tr", T::Generic, &mut d.tracking)?;
    opt_num(w, "lh", T::Generic, &mut d.leading)?;
    opt_values(w, "fc", T::ColorChannel, &mut d.fill_color)?;
    opt_values(w, "sc", T::ColorChannel, &mut d.stroke_color)?;
    opt_num(w, "sw", T::SpatialCoord, &mut d.stroke_width)?;
    req_text(w, "f", &mut d.font)?;
    req_text(w, "t", &mut d.text)?;
    finish(w, f)
}

fn text_animator<W: Walker>(w: &mut W, a: &mut TextAnimator) -> R {
    w.begin(K::TextAnim)?;
    let TextAnimator {
        name,
        selector: s,
        style: y,
        extras,
    } = a;
    let mut f = Frame::default();
    f.slot(extras);
    f.slot(&mut s.extras);
    f.slot(&mut y.extras);
    prop(w, &mut f, "s", T::TrimPercent, &mut s.start)?;
    prop(w, &mut f, "e", T::TrimPercent, &mut s.end)?;
    prop(w, &mut f, "o", T::Generic, &mut s.offset)?;
    int(w, "b", T::SmallEnum, &mut s.basis)?;
    prop(w, &mut f, "p", T::SpatialCoord, &mut y.position)?;
    prop(w, &mut f, "r", T::RotationDeg, &mut y.rotation)?;
    prop(w, &mut f, "s", T::ScalePercent, &mut y.scale)?;
    prop(w, &mut f, "fc", T::ColorChannel, &mut y.fill_color)?;
    prop(w, &mut f, "sc", T::ColorChannel, &mut y.stroke_color)?;
    prop(w, &mut f, "o", T::Opacity, &mut y.opacity)?;
    prop(w, &mut f, "t", T::Generic, &mut y.tracking)?;
    text(w, name)?;
    finish(w, f)
}

fn blank_shape(ty: ShapeType) -> ShapeNode {
    let kind = match ty {
        ShapeType::Group => ShapeKind::Group(Group::default()),
        ShapeType::Path => ShapeKind::Path(PathShape {
            direction: None,
            path: ShapeProperty::fixed(Bezier::default()),
        }),
        ShapeType::Fill => ShapeKind::Fill(Fill::default()),
        ShapeType::Stroke => ShapeKind::Stroke(Stroke::default()),
        ShapeType::GradientFill => ShapeKind::GradientFill(GradientFill::default()),
        ShapeType::GradientStroke => ShapeKind::GradientStroke(GradientStroke::default()),
        ShapeType::Rect => ShapeKind::Rect(Rect::default()),
        ShapeType::Ellipse => ShapeKind::Ellipse(Ellipse::default()),
        ShapeType::Star => ShapeKind::Star(Star::default()),
        ShapeType::Transform => ShapeKind::Transform(Transform::default()),
        ShapeType::TrimPath => ShapeKind::TrimPath(TrimPath::default()),
        ShapeType::Repeater => ShapeKind::Repeater(Repeater::default()),
        ShapeType::MergePaths => ShapeKind::MergePaths(MergePaths::default()),
        ShapeType::RoundedCorners => ShapeKind::RoundedCorners(RoundedCorners::default()),
        ShapeType::ZigZag => ShapeKind::ZigZag(ZigZag::default()),
    };
    ShapeNode::new(kind)
}

fn shapes<W: Walker>(w: &mut W, items: &mut Vec<ShapeNode>) -> R {
    if w.writing() {
        for n in items.iter_mut() {
            shape(w, n)?;
        }
    } else {
        while let Some(K::Shape(ty)) = w.peek()? {
            let mut n = blank_shape(ty);
            shape(w, &mut n)?;
            items.push(n);
        }
    }
    Ok(())
}

fn gradient<'a, W: Walker>(w: &mut W, f: &mut Frame<'a>, g: &'a mut Gradient) -> R {
    let Gradient {
        opacity,
        start_point,
        end_point,
        gradient_type,
        highlight_length,
        highlight_angle,
        stops,
    } = g;
    prop(w, f, "o", T::Opacity, opacity)?;
    prop(w, f, "s", T::SpatialCoord, start_point)?;
    prop(w, f, "e", T::SpatialCoord, end_point)?;
    int(w, "t", T::SmallEnum, gradient_type)?;
    prop(w, f, "h", T::Generic, highlight_length)?;
    prop(w, f, "a", T::RotationDeg, highlight_angle)?;
    let GradientStops { count: n, colors, extras } = stops;
    let mut c = Some(*n as usize);
    c = opt_count(w, "p", c)?;
    *n = c.ok_or_else(|| w.invalid("gradient without stop count"))? as i64;
    req_prop(w, f, "g", T::ColorChannel, colors)?;
    f.slot(extras);
    Ok(())
}

fn shape<W: Walker>(w: &mut W, n: &mut ShapeNode) -> R {
    let ty = n.kind.shape_type();
    w.begin(K::Shape(ty))?;
    let ShapeNode {
        name,
        match_name,
        hidden,
        blend_mode,
        kind,
        extras,
    } = n;
    let mut f = Frame::default();
    f.slot(extras);
    flag(w, "hd", hidden)?;
    int(w, "bm", T::SmallEnum, blend_mode)?;
    let mut children = None;
    match kind {
        ShapeKind::Group(g) => {
            opt_num(w, "np", T::Generic, &mut g.num_properties)?;
            children = Some(&mut g.items);
        }
        ShapeKind::Path(p) => {
            int(w, "d", T::SmallEnum, &mut p.direction)?;
            shape_prop(w, &mut f, "ks", &mut p.path)?;
        }
        ShapeKind::Fill(x) => {
            prop(w, &mut f, "c", T::ColorChannel, &mut x.color)?;
            prop(w, &mut f, "o", T::Opacity, &mut x.opacity)?;
            int(w, "r", T::SmallEnum, &mut x.rule)?;
        }
        ShapeKind::Stroke(x) => {
            prop(w, &mut f, "c", T::ColorChannel, &mut x.color)?;
            prop(w, &mut f, "o", T::Opacity, &mut x.opacity)?;
            prop(w, &mut f, "w", T::SpatialCoord, &mut x.width)?;
            int(w, "lc", T::SmallEnum, &mut x.cap)?;
            int(w, "lj", T::SmallEnum, &mut x.join)?;
            opt_num(w, "ml", T::Generic, &mut x.miter_limit)?;
        }
        ShapeKind::GradientFill(x) => {
            gradient(w, &mut f, &mut x.gradient)?;
            int(w, "r", T::SmallEnum, &mut x.rule)?;
        }
        ShapeKind::GradientStroke(x) => {
            gradient(w, &mut f, &mut x.gradient)?;
            prop(w, &mut f, "w", T::SpatialCoord, &mut x.width)?;
            int(w, "lc", T::SmallEnum, &mut x.cap)?;
            int(w, "lj", T::SmallEnum, &mut x.join)?;
            opt_num(w, "ml", T::Generic, &mut x.miter_limit)?;
        }
        ShapeKind::Rect(x) => {
            int(w, "d", T::SmallEnum, &mut x.direction)?;
            prop(w, &mut f, "p", T::SpatialCoord, &mut x.position)?;
            prop(w, &mut f, "s", T::SpatialCoord, &mut x.size)?;
            prop(w, &mut f, "r", T::SpatialCoord, &mut x.roundness)?;
        }
        ShapeKind::Ellipse(x) => {
            int(w, "d", T::SmallEnum, &mut x.direction)?;
            prop(w, &mut f, "p", T::SpatialCoord, &mut x.position)?;
            prop(w, &mut f, "s", T::SpatialCoord, &mut x.size)?;
        }
        ShapeKind::Star(x) => {
            int(w, "d", T::SmallEnum, &mut x.direction)?;
            prop(w, &mut f, "p", T::SpatialCoord, &mut x.position)?;
            prop(w, &mut f, "or", T::SpatialCoord, &mut x.outer_radius)?;
            prop(w, &mut f, "os", T::Opacity, &mut x.outer_roundness)?;
            prop(w, &mut f, "ir", T::SpatialCoord, &mut x.inner_radius)?;
            prop(w, &mut f, "is", T::Opacity, &mut x.inner_roundness)?;
            prop(w, &mut f, "r", T::RotationDeg, &mut x.rotation)?;
            prop(w, &mut f, "pt", T::Generic, &mut x.points)?;
            int(w, "sy", T::SmallEnum, &mut x.star_type)?;
        }
        ShapeKind::Transform(t) => transform_fields(w, &mut f, t, false)?,
        ShapeKind::TrimPath(x) => {
            prop(w, &mut f, "s", T::TrimPercent, &mut x.start)?;
            prop(w, &mut f, "e", T::TrimPercent, &mut x.end)?;
            prop(w, &mut f, "o", T::RotationDeg, &mut x.offset)?;
            int(w, "m", T::SmallEnum, &mut x.mode)?;
        }
        ShapeKind::Repeater(x) => {
            prop(w, &mut f, "c", T::Generic, &mut x.copies)?;
            prop(w, &mut f, "o", T::Generic, &mut x.offset)?;
            int(w, "m", T::SmallEnum, &mut x.composite)?;
            transform_fields(w, &mut f, &mut x.transform, true)?;
        }
        ShapeKind::MergePaths(x) => int(w, "mm", T::SmallEnum, &mut x.mode)?,
        ShapeKind::RoundedCorners(x) => prop(w, &mut f, "r", T::SpatialCoord, &mut x.radius)?,
        ShapeKind::ZigZag(x) => {
            prop(w, &mut f, "r", T::Generic, &mut x.frequency)?;
            prop(w, &mut f, "s", T::SpatialCoord, &mut x.amplitude)?;
            prop(w, &mut f, "pt", T::Generic, &mut x.point_type)?;
        }
    }
    text(w, name)?;
    text(w, match_name)?;
    finish(w, f)?;
    if let Some(items) = children {
        shapes(w, items)?;
        w.begin(K::GroupEnd)?;
    }
    Ok(())
}
