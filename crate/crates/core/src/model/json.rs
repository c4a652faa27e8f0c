//! Lottie JSON reader and canonical writer.

use serde_json::{Map, Value};

use super::validate;
use super::*;

type Res<T> = Result<T, ModelError>;

/// Parses Lottie JSON text into a validated [`Animation`].
pub fn parse_lottie(text: &str) -> Res<Animation> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| ModelError::MalformedJson(e.to_string()))?;
    parse_value(&value)
}

/// Parses an already decoded JSON value.
pub fn parse_value(value: &Value) -> Res<Animation> {
    let anim = read_animation(value)?;
    validate::check_references(&anim)?;
    Ok(anim)
}

/// Parses without checking `parent`/`tp` references. Used by lint, which
/// reports those as their own diagnostic.
pub(crate) fn parse_value_structural(value: &Value) -> Res<Animation> {
    read_animation(value)
}

/// Serializes to compact canonical JSON text.
pub fn serialize_lottie(a: &Animation) -> String {
    serde_json::to_string(&to_value(a)).expect("JSON values always serialize")
}

/// Converts to a JSON value with deterministic key order.
pub fn to_value(a: &Animation) -> Value {
    let mut m = Map::new();
    m.insert("v".into(), Value::String(a.version.clone()));
    m.insert("fr".into(), num(a.frame_rate));
    m.insert("ip".into(), num(a.in_point));
    m.insert("op".into(), num(a.out_point));
    m.insert("w".into(), num(a.width));
    m.insert("h".into(), num(a.height));
    put_str(&mut m, "nm", &a.name);
    put_int_flag(&mut m, "ddd", a.three_d);
    m.insert("layers".into(), layers_value(&a.layers));
    m.insert(
        "assets".into(),
        Value::Array(a.assets.iter().map(asset_value).collect()),
    );
    if !a.fonts.is_empty() {
        let mut f = Map::new();
        f.insert(
            "list".into(),
            Value::Array(a.fonts.list.iter().map(font_value).collect()),
        );
        append(&mut f, &a.fonts.extras);
        m.insert("fonts".into(), Value::Object(f));
    }
    m.insert("markers".into(), Value::Array(a.markers.clone()));
    if !a.chars.is_empty() {
        m.insert("chars".into(), Value::Array(a.chars.clone()));
    }
    append(&mut m, &a.extras);
    Value::Object(m)
}

// ---------------------------------------------------------------------------
// reading

/// Field reader over one JSON object. Keys that are read are marked used;
/// everything else ends up in the extras map, in source order.
struct Obj<'v> {
    map: &'v Map<String, Value>,
    path: String,
    used: Vec<&'static str>,
}

impl<'v> Obj<'v> {
    fn new(v: &'v Value, path: &str) -> Res<Self> {
        match v {
            Value::Object(map) => Ok(Obj {
                map,
                path: path.to_string(),
                used: Vec::new(),
            }),
            _ => Err(ModelError::schema(path, "expected an object")),
        }
    }

    fn at(&self, key: &str) -> String {
        format!("{}.{}", self.path, key)
    }

    /// Present, non-null value of `key`. Null values are left for extras so
    /// they survive a round trip untouched.
    fn get(&mut self, key: &'static str) -> Option<&'v Value> {
        match self.map.get(key) {
            None | Some(Value::Null) => None,
            Some(v) => {
                self.used.push(key);
                Some(v)
            }
        }
    }

    fn f64(&mut self, key: &'static str) -> Res<Option<f64>> {
        let path = self.at(key);
        self.get(key).map(|v| as_f64(v, &path)).transpose()
    }

    fn req_f64(&mut self, key: &'static str) -> Res<f64> {
        self.f64(key)?
            .ok_or_else(|| ModelError::schema(self.at(key), "missing required number"))
    }

    fn int(&mut self, key: &'static str) -> Res<Option<i64>> {
        let path = self.at(key);
        self.get(key).map(|v| as_int(v, &path)).transpose()
    }

    fn flag(&mut self, key: &'static str) -> Res<Option<bool>> {
        let path = self.at(key);
        self.get(key).map(|v| as_flag(v, &path)).transpose()
    }

    fn str(&mut self, key: &'static str) -> Res<Option<String>> {
        let path = self.at(key);
        match self.get(key) {
            None => Ok(None),
            Some(Value::String(s)) => Ok(Some(s.clone())),
            Some(_) => Err(ModelError::schema(path, "expected a string")),
        }
    }

    fn req_str(&mut self, key: &'static str) -> Res<String> {
        self.str(key)?
            .ok_or_else(|| ModelError::schema(self.at(key), "missing required string"))
    }

    fn array(&mut self, key: &'static str) -> Res<Option<&'v Vec<Value>>> {
        let path = self.at(key);
        match self.get(key) {
            None => Ok(None),
            Some(Value::Array(a)) => Ok(Some(a)),
            Some(_) => Err(ModelError::schema(path, "expected an array")),
        }
    }

    fn prop(&mut self, key: &'static str) -> Res<Option<Property>> {
        let path = self.at(key);
        self.get(key).map(|v| read_property(v, &path)).transpose()
    }

    fn req_prop(&mut self, key: &'static str) -> Res<Property> {
        self.prop(key)?
            .ok_or_else(|| ModelError::schema(self.at(key), "missing required property"))
    }

    fn finish(self) -> Extras {
        self.map
            .iter()
            .filter(|(k, _)| !self.used.contains(&k.as_str()))
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect()
    }
}

fn as_f64(v: &Value, path: &str) -> Res<f64> {
    v.as_f64()
        .ok_or_else(|| ModelError::schema(path, "expected a number"))
}

fn as_int(v: &Value, path: &str) -> Res<i64> {
    if let Some(i) = v.as_i64() {
        return Ok(i);
    }
    match v.as_f64() {
        Some(f) if f.fract() == 0.0 && f.abs() < 9.0e15 => Ok(f as i64),
        _ => Err(ModelError::schema(path, "expected an integer")),
    }
}

fn as_flag(v: &Value, path: &str) -> Res<bool> {
    match v {
        Value::Bool(b) => Ok(*b),
        Value::Number(_) => match as_f64(v, path)? {
            x if x == 0.0 => Ok(false),
            x if x == 1.0 => Ok(true),
            _ => Err(ModelError::schema(path, "expected 0 or 1")),
        },
        _ => Err(ModelError::schema(path, "expected a boolean or 0/1")),
    }
}

/// A number or an array of numbers.
fn as_vec(v: &Value, path: &str) -> Res<Vec<f64>> {
    match v {
        Value::Number(_) => Ok(vec![as_f64(v, path)?]),
        Value::Array(items) => items
            .iter()
            .enumerate()
            .map(|(i, x)| as_f64(x, &format!("{path}[{i}]")))
            .collect(),
        _ => Err(ModelError::schema(path, "expected a number or an array of numbers")),
    }
}

fn read_animation(v: &Value) -> Res<Animation> {
    let mut o = Obj::new(v, "$")?;
    let version = o.req_str("v")?;
    let frame_rate = o.req_f64("fr")?;
    let in_point = o.req_f64("ip")?;
    let out_point = o.req_f64("op")?;
    let width = o.req_f64("w")?;
    let height = o.req_f64("h")?;
    let name = o.str("nm")?;
    let three_d = o.flag("ddd")?;
    let layers = match o.array("layers")? {
        Some(items) => read_layers(items, "$.layers")?,
        None => return Err(ModelError::schema("$.layers", "missing layers array")),
    };
    let mut assets = Vec::new();
    if let Some(items) = o.array("assets")? {
        for (i, item) in items.iter().enumerate() {
            assets.push(read_asset(item, &format!("$.assets[{i}]"))?);
        }
    }
    let markers = o.array("markers")?.cloned().unwrap_or_default();
    let fonts = match o.get("fonts") {
        Some(f) => read_fonts(f, "$.fonts")?,
        None => FontTable::default(),
    };
    let chars = o.array("chars")?.cloned().unwrap_or_default();
    let extras = o.finish();

    if !(frame_rate > 0.0) {
        return Err(ModelError::schema("$.fr", "frame rate must be positive"));
    }
    if !(width > 0.0) || !(height > 0.0) {
        return Err(ModelError::schema("$.w", "canvas size must be positive"));
    }
    if out_point < in_point {
        return Err(ModelError::schema("$.op", "out point precedes in point"));
    }
    Ok(Animation {
        version,
        frame_rate,
        in_point,
        out_point,
        width,
        height,
        name,
        three_d,
        layers,
        assets,
        markers,
        fonts,
        chars,
        extras,
    })
}

fn read_asset(v: &Value, path: &str) -> Res<PrecompAsset> {
    let mut o = Obj::new(v, path)?;
    let id = o.req_str("id")?;
    let layers = match o.array("layers")? {
        Some(items) => read_layers(items, &o.at("layers"))?,
        None => {
            return Err(ModelError::schema(
                path,
                "only precomposition assets are supported; run `clean` first",
            ))
        }
    };
    Ok(PrecompAsset {
        id,
        name: o.str("nm")?,
        frame_rate: o.f64("fr")?,
        layers,
        extras: o.finish(),
    })
}

fn read_fonts(v: &Value, path: &str) -> Res<FontTable> {
    let mut o = Obj::new(v, path)?;
    let mut list = Vec::new();
    if let Some(items) = o.array("list")? {
        for (i, item) in items.iter().enumerate() {
            let mut f = Obj::new(item, &format!("{path}.list[{i}]"))?;
            list.push(Font {
                name: f.req_str("fName")?,
                family: f.str("fFamily")?,
                style: f.str("fStyle")?,
                ascent: f.f64("ascent")?,
                extras: f.finish(),
            });
        }
    }
    Ok(FontTable {
        list,
        extras: o.finish(),
    })
}

fn read_layers(items: &[Value], path: &str) -> Res<Vec<Layer>> {
    items
        .iter()
        .enumerate()
        .map(|(i, item)| read_layer(item, &format!("{path}[{i}]")))
        .collect()
}

fn read_layer(v: &Value, path: &str) -> Res<Layer> {
    let mut o = Obj::new(v, path)?;
    let ty = o
        .int("ty")?
        .ok_or_else(|| ModelError::schema(o.at("ty"), "missing layer type"))?;
    let kind = LayerKind::from_type_id(ty).ok_or_else(|| match ty {
        2 | 6 | 13 | 15 => ModelError::UnsupportedLayerKind {
            ty,
            path: path.to_string(),
        },
        _ => ModelError::schema(format!("{path}.ty"), format!("unknown layer type {ty}")),
    })?;
    let transform = match o.get("ks") {
        Some(ks) => read_transform(ks, &o.at("ks"))?,
        None => return Err(ModelError::schema(o.at("ks"), "missing layer transform")),
    };
    let payload = match kind {
        LayerKind::Precomp => LayerPayload::Precomp(PrecompPayload {
            ref_id: o.req_str("refId")?,
            width: o.f64("w")?,
            height: o.f64("h")?,
            time_remap: o.prop("tm")?,
        }),
        LayerKind::Solid => LayerPayload::Solid(SolidPayload {
            width: o.req_f64("sw")?,
            height: o.req_f64("sh")?,
            color: o.req_str("sc")?,
        }),
        LayerKind::Null => LayerPayload::Null,
        LayerKind::Shape => {
            let items = o.array("shapes")?.map(|a| a.as_slice()).unwrap_or(&[]);
            LayerPayload::Shape(read_shapes(items, &o.at("shapes"))?)
        }
        LayerKind::Text => match o.get("t") {
            Some(t) => LayerPayload::Text(read_text(t, &o.at("t"))?),
            None => return Err(ModelError::schema(o.at("t"), "text layer without text data")),
        },
    };
    let mut masks = Vec::new();
    if let Some(items) = o.array("masksProperties")? {
        for (i, item) in items.iter().enumerate() {
            masks.push(read_mask(item, &format!("{path}.masksProperties[{i}]"))?);
        }
    }
    let mut effects = Vec::new();
    if let Some(items) = o.array("ef")? {
        for (i, item) in items.iter().enumerate() {
            effects.push(read_effect(item, &format!("{path}.ef[{i}]"))?);
        }
    }
    Ok(Layer {
        index: o.int("ind")?,
        name: o.str("nm")?,
        match_name: o.str("mn")?,
        in_point: o.req_f64("ip")?,
        out_point: o.req_f64("op")?,
        start_time: o.f64("st")?,
        stretch: o.f64("sr")?,
        parent: o.int("parent")?,
        transform,
        auto_orient: o.flag("ao")?,
        three_d: o.flag("ddd")?,
        hidden: o.flag("hd")?,
        collapse: o.flag("ct")?,
        matte_mode: o.int("tt")?,
        matte_parent: o.int("tp")?,
        matte_target: o.int("td")?,
        blend_mode: o.int("bm")?,
        css_class: o.str("cl")?,
        layer_xml_id: o.str("ln")?,
        has_mask: o.flag("hasMask")?,
        masks,
        effects,
        styles: o.get("sy").cloned(),
        payload,
        extras: o.finish(),
    })
}

fn read_transform(v: &Value, path: &str) -> Res<Transform> {
    let mut o = Obj::new(v, path)?;
    let t = read_transform_fields(&mut o)?;
    Ok(Transform {
        extras: o.finish(),
        ..t
    })
}

/// Transform keys of `o`; extras are left to the caller so shape-level
/// transforms can share the node's own extras map.
fn read_transform_fields(o: &mut Obj) -> Res<Transform> {
    let position = match o.get("p") {
        None => None,
        Some(p) => Some(read_position(p, &o.at("p"))?),
    };
    Ok(Transform {
        anchor: o.prop("a")?,
        position,
        scale: o.prop("s")?,
        rotation: o.prop("r")?,
        opacity: o.prop("o")?,
        skew: o.prop("sk")?,
        skew_axis: o.prop("sa")?,
        start_opacity: o.prop("so")?,
        end_opacity: o.prop("eo")?,
        extras: Extras::new(),
    })
}

fn read_position(v: &Value, path: &str) -> Res<Position> {
    let split = matches!(v.get("s"), Some(Value::Bool(true)));
    if !split {
        return Ok(Position::Combined(read_property(v, path)?));
    }
    let mut o = Obj::new(v, path)?;
    o.get("s");
    Ok(Position::Split(SplitPosition {
        x: o.req_prop("x")?,
        y: o.req_prop("y")?,
        z: o.prop("z")?,
        extras: o.finish(),
    }))
}

fn is_keyframe_list(k: &Value) -> bool {
    match k {
        Value::Array(items) => items.first().is_some_and(|f| f.is_object()),
        _ => false,
    }
}

fn read_property(v: &Value, path: &str) -> Res<Property> {
    let mut o = Obj::new(v, path)?;
    // `a` is derived from the shape of `k` and re-emitted on write.
    o.get("a");
    let k = o
        .get("k")
        .ok_or_else(|| ModelError::schema(o.at("k"), "property without value"))?;
    let kpath = o.at("k");
    let value = if is_keyframe_list(k) {
        let items = k.as_array().unwrap();
        let mut kfs = Vec::with_capacity(items.len());
        for (i, item) in items.iter().enumerate() {
            kfs.push(read_keyframe(item, &format!("{kpath}[{i}]"), as_vec)?);
        }
        check_times(&kfs, &kpath)?;
        PropValue::Keyframed(kfs)
    } else {
        PropValue::Static(as_vec(k, &kpath)?)
    };
    Ok(Property {
        value,
        extras: o.finish(),
    })
}

fn check_times<V>(kfs: &[Keyframe<V>], path: &str) -> Res<()> {
    for (i, w) in kfs.windows(2).enumerate() {
        if !(w[1].time > w[0].time) {
            return Err(ModelError::schema(
                format!("{path}[{}].t", i + 1),
                "keyframe times must be strictly increasing",
            ));
        }
    }
    Ok(())
}

fn read_keyframe<V>(
    v: &Value,
    path: &str,
    read_value: impl Fn(&Value, &str) -> Res<V>,
) -> Res<Keyframe<V>> {
    let mut o = Obj::new(v, path)?;
    let time = o.req_f64("t")?;
    let start = match o.get("s") {
        Some(s) => Some(read_value(s, &o.at("s"))?),
        None => None,
    };
    let end = match o.get("e") {
        Some(e) => Some(read_value(e, &o.at("e"))?),
        None => None,
    };
    let ease_out = match o.get("o") {
        Some(e) => Some(read_easing(e, &o.at("o"))?),
        None => None,
    };
    let ease_in = match o.get("i") {
        Some(e) => Some(read_easing(e, &o.at("i"))?),
        None => None,
    };
    let hold = o.flag("h")?;
    let spatial_out = match o.get("to") {
        Some(x) => Some(as_vec(x, &o.at("to"))?),
        None => None,
    };
    let spatial_in = match o.get("ti") {
        Some(x) => Some(as_vec(x, &o.at("ti"))?),
        None => None,
    };
    Ok(Keyframe {
        time,
        start,
        end,
        ease_in,
        ease_out,
        hold,
        spatial_in,
        spatial_out,
        extras: o.finish(),
    })
}

fn read_easing(v: &Value, path: &str) -> Res<Easing> {
    let mut o = Obj::new(v, path)?;
    let comp = |o: &mut Obj, key: &'static str| -> Res<EaseComponent> {
        let path = o.at(key);
        match o.get(key) {
            Some(x @ Value::Array(_)) => Ok(EaseComponent::PerAxis(as_vec(x, &path)?)),
            Some(x) => Ok(EaseComponent::Scalar(as_f64(x, &path)?)),
            None => Err(ModelError::schema(path, "missing easing component")),
        }
    };
    let x = comp(&mut o, "x")?;
    let y = comp(&mut o, "y")?;
    Ok(Easing {
        x,
        y,
        extras: o.finish(),
    })
}

fn read_shape_property(v: &Value, path: &str) -> Res<ShapeProperty> {
    let mut o = Obj::new(v, path)?;
    o.get("a");
    let k = o
        .get("k")
        .ok_or_else(|| ModelError::schema(o.at("k"), "path property without value"))?;
    let kpath = o.at("k");
    let value = if is_keyframe_list(k) && k[0].get("t").is_some() {
        let items = k.as_array().unwrap();
        let mut kfs = Vec::with_capacity(items.len());
        for (i, item) in items.iter().enumerate() {
            kfs.push(read_keyframe(item, &format!("{kpath}[{i}]"), read_bezier_list)?);
        }
        check_times(&kfs, &kpath)?;
        ShapeValue::Keyframed(kfs)
    } else {
        ShapeValue::Static(read_bezier(k, &kpath)?)
    };
    Ok(ShapeProperty {
        value,
        extras: o.finish(),
    })
}

fn read_bezier_list(v: &Value, path: &str) -> Res<Vec<Bezier>> {
    match v {
        Value::Array(items) => items
            .iter()
            .enumerate()
            .map(|(i, b)| read_bezier(b, &format!("{path}[{i}]")))
            .collect(),
        _ => Err(ModelError::schema(path, "expected an array of paths")),
    }
}

fn read_points(o: &mut Obj, key: &'static str) -> Res<Vec<[f64; 2]>> {
    let path = o.at(key);
    let items = o
        .array(key)?
        .ok_or_else(|| ModelError::schema(&path, "missing point list"))?;
    items
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let v = as_vec(p, &format!("{path}[{i}]"))?;
            match v.as_slice() {
                [x, y] => Ok([*x, *y]),
                _ => Err(ModelError::schema(format!("{path}[{i}]"), "expected an [x, y] pair")),
            }
        })
        .collect()
}

fn read_bezier(v: &Value, path: &str) -> Res<Bezier> {
    let mut o = Obj::new(v, path)?;
    let closed = o.flag("c")?;
    let vertices = read_points(&mut o, "v")?;
    let in_tangents = read_points(&mut o, "i")?;
    let out_tangents = read_points(&mut o, "o")?;
    if in_tangents.len() != vertices.len() || out_tangents.len() != vertices.len() {
        return Err(ModelError::schema(
            path,
            "vertex and tangent lists differ in length",
        ));
    }
    Ok(Bezier {
        closed,
        vertices,
        in_tangents,
        out_tangents,
        extras: o.finish(),
    })
}

fn read_mask(v: &Value, path: &str) -> Res<Mask> {
    let mut o = Obj::new(v, path)?;
    let mode = match o.str("mode")? {
        None => None,
        Some(code) => Some(
            MaskMode::from_code(&code)
                .ok_or_else(|| ModelError::schema(o.at("mode"), format!("unknown mask mode {code:?}")))?,
        ),
    };
    let path_prop = match o.get("pt") {
        Some(pt) => read_shape_property(pt, &o.at("pt"))?,
        None => return Err(ModelError::schema(o.at("pt"), "mask without path")),
    };
    Ok(Mask {
        name: o.str("nm")?,
        mode,
        inverted: o.flag("inv")?,
        path: path_prop,
        opacity: o.prop("o")?,
        expansion: o.prop("x")?,
        extras: o.finish(),
    })
}

fn read_effect(v: &Value, path: &str) -> Res<Effect> {
    let mut o = Obj::new(v, path)?;
    let kind = o
        .int("ty")?
        .ok_or_else(|| ModelError::schema(o.at("ty"), "missing effect type"))?;
    let mut params = Vec::new();
    if let Some(items) = o.array("ef")? {
        for (i, item) in items.iter().enumerate() {
            params.push(read_effect_param(item, &format!("{path}.ef[{i}]"))?);
        }
    }
    Ok(Effect {
        kind,
        name: o.str("nm")?,
        match_name: o.str("mn")?,
        enabled: o.flag("en")?,
        params,
        extras: o.finish(),
    })
}

fn read_effect_param(v: &Value, path: &str) -> Res<EffectParam> {
    let mut o = Obj::new(v, path)?;
    let ty = o
        .int("ty")?
        .ok_or_else(|| ModelError::schema(o.at("ty"), "missing effect parameter type"))?;
    let kind = EffectParamKind::from_type_id(ty).ok_or_else(|| {
        ModelError::schema(o.at("ty"), format!("unsupported effect parameter type {ty}"))
    })?;
    Ok(EffectParam {
        kind,
        name: o.str("nm")?,
        match_name: o.str("mn")?,
        value: o.req_prop("v")?,
        extras: o.finish(),
    })
}

fn read_text(v: &Value, path: &str) -> Res<TextData> {
    let mut o = Obj::new(v, path)?;
    let dpath = o.at("d");
    let d = o
        .get("d")
        .ok_or_else(|| ModelError::schema(&dpath, "text without document"))?;
    let mut dobj = Obj::new(d, &dpath)?;
    let kpath = dobj.at("k");
    let items = dobj
        .array("k")?
        .ok_or_else(|| ModelError::schema(&kpath, "text document without keyframes"))?;
    let mut documents = Vec::with_capacity(items.len());
    for (i, item) in items.iter().enumerate() {
        let kp = format!("{kpath}[{i}]");
        let mut ko = Obj::new(item, &kp)?;
        let spath = ko.at("s");
        let s = ko
            .get("s")
            .ok_or_else(|| ModelError::schema(&spath, "text keyframe without document"))?;
        let document = read_text_document(s, &spath)?;
        documents.push(TextDocumentKeyframe {
            time: ko.req_f64("t")?,
            document,
            extras: ko.finish(),
        });
    }
    for (i, w) in documents.windows(2).enumerate() {
        if !(w[1].time > w[0].time) {
            return Err(ModelError::schema(
                format!("{kpath}[{}].t", i + 1),
                "keyframe times must be strictly increasing",
            ));
        }
    }
    let mut animators = Vec::new();
    if let Some(items) = o.array("a")? {
        for (i, item) in items.iter().enumerate() {
            animators.push(read_text_animator(item, &format!("{path}.a[{i}]"))?);
        }
    }
    Ok(TextData {
        documents,
        document_extras: dobj.finish(),
        animators,
        extras: o.finish(),
    })
}

fn read_text_document(v: &Value, path: &str) -> Res<TextDocument> {
    let mut o = Obj::new(v, path)?;
    let opt_vec = |o: &mut Obj, key: &'static str| -> Res<Option<Vec<f64>>> {
        let p = o.at(key);
        o.get(key).map(|x| as_vec(x, &p)).transpose()
    };
    Ok(TextDocument {
        font: o.req_str("f")?,
        size: o.req_f64("s")?,
        text: o.req_str("t")?,
        justify: o.int("j")?,
        tracking: o.f64("tr")?,
        leading: o.f64("lh")?,
        fill_color: opt_vec(&mut o, "fc")?,
        stroke_color: opt_vec(&mut o, "sc")?,
        stroke_width: o.f64("sw")?,
        extras: o.finish(),
    })
}

fn read_text_animator(v: &Value, path: &str) -> Res<TextAnimator> {
    let mut o = Obj::new(v, path)?;
    let selector = match o.get("s") {
        Some(s) => {
            let mut so = Obj::new(s, &o.at("s"))?;
            TextSelector {
                start: so.prop("s")?,
                end: so.prop("e")?,
                offset: so.prop("o")?,
                basis: so.int("b")?,
                extras: so.finish(),
            }
        }
        None => TextSelector::default(),
    };
    let style = match o.get("a") {
        Some(a) => {
            let mut ao = Obj::new(a, &o.at("a"))?;
            TextStyle {
                position: ao.prop("p")?,
                rotation: ao.prop("r")?,
                scale: ao.prop("s")?,
                fill_color: ao.prop("fc")?,
                stroke_color: ao.prop("sc")?,
                opacity: ao.prop("o")?,
                tracking: ao.prop("t")?,
                extras: ao.finish(),
            }
        }
        None => TextStyle::default(),
    };
    Ok(TextAnimator {
        name: o.str("nm")?,
        selector,
        style,
        extras: o.finish(),
    })
}

fn read_shapes(items: &[Value], path: &str) -> Res<Vec<ShapeNode>> {
    items
        .iter()
        .enumerate()
        .map(|(i, item)| read_shape(item, &format!("{path}[{i}]")))
        .collect()
}

fn read_gradient(o: &mut Obj) -> Res<Gradient> {
    let gpath = o.at("g");
    let stops = match o.get("g") {
        Some(g) => {
            let mut go = Obj::new(g, &gpath)?;
            GradientStops {
                count: go
                    .int("p")?
                    .ok_or_else(|| ModelError::schema(go.at("p"), "missing stop count"))?,
                colors: go.req_prop("k")?,
                extras: go.finish(),
            }
        }
        None => return Err(ModelError::schema(gpath, "gradient without stops")),
    };
    Ok(Gradient {
        opacity: o.prop("o")?,
        start_point: o.prop("s")?,
        end_point: o.prop("e")?,
        gradient_type: o.int("t")?,
        highlight_length: o.prop("h")?,
        highlight_angle: o.prop("a")?,
        stops,
    })
}

fn read_shape(v: &Value, path: &str) -> Res<ShapeNode> {
    let mut o = Obj::new(v, path)?;
    let code = o
        .str("ty")?
        .ok_or_else(|| ModelError::schema(o.at("ty"), "missing shape type"))?;
    let ty = ShapeType::from_code(&code).ok_or_else(|| {
        ModelError::schema(o.at("ty"), format!("unsupported shape type {code:?}"))
    })?;
    let name = o.str("nm")?;
    let match_name = o.str("mn")?;
    let hidden = o.flag("hd")?;
    let blend_mode = o.int("bm")?;
    let kind = match ty {
        ShapeType::Group => {
            let items = o.array("it")?.map(|a| a.as_slice()).unwrap_or(&[]);
            let items = read_shapes(items, &o.at("it"))?;
            ShapeKind::Group(Group {
                num_properties: o.f64("np")?,
                items,
            })
        }
        ShapeType::Path => {
            let kpath = o.at("ks");
            let ks = o
                .get("ks")
                .ok_or_else(|| ModelError::schema(&kpath, "path without geometry"))?;
            ShapeKind::Path(PathShape {
                direction: o.int("d")?,
                path: read_shape_property(ks, &kpath)?,
            })
        }
        ShapeType::Fill => ShapeKind::Fill(Fill {
            color: o.prop("c")?,
            opacity: o.prop("o")?,
            rule: o.int("r")?,
        }),
        ShapeType::Stroke => ShapeKind::Stroke(Stroke {
            color: o.prop("c")?,
            opacity: o.prop("o")?,
            width: o.prop("w")?,
            cap: o.int("lc")?,
            join: o.int("lj")?,
            miter_limit: o.f64("ml")?,
        }),
        ShapeType::GradientFill => ShapeKind::GradientFill(GradientFill {
            gradient: read_gradient(&mut o)?,
            rule: o.int("r")?,
        }),
        ShapeType::GradientStroke => ShapeKind::GradientStroke(GradientStroke {
            gradient: read_gradient(&mut o)?,
            width: o.prop("w")?,
            cap: o.int("lc")?,
            join: o.int("lj")?,
            miter_limit: o.f64("ml")?,
        }),
        ShapeType::Rect => ShapeKind::Rect(Rect {
            direction: o.int("d")?,
            position: o.prop("p")?,
            size: o.prop("s")?,
            roundness: o.prop("r")?,
        }),
        ShapeType::Ellipse => ShapeKind::Ellipse(Ellipse {
            direction: o.int("d")?,
            position: o.prop("p")?,
            size: o.prop("s")?,
        }),
        ShapeType::Star => {
            let star = Star {
                direction: o.int("d")?,
                position: o.prop("p")?,
                outer_radius: o.prop("or")?,
                outer_roundness: o.prop("os")?,
                inner_radius: o.prop("ir")?,
                inner_roundness: o.prop("is")?,
                rotation: o.prop("r")?,
                points: o.prop("pt")?,
                star_type: o.int("sy")?,
            };
            check_star_points(&star, &o.at("pt"))?;
            ShapeKind::Star(star)
        }
        ShapeType::Transform => ShapeKind::Transform(read_transform_fields(&mut o)?),
        ShapeType::TrimPath => ShapeKind::TrimPath(TrimPath {
            start: o.prop("s")?,
            end: o.prop("e")?,
            offset: o.prop("o")?,
            mode: o.int("m")?,
        }),
        ShapeType::Repeater => {
            let tpath = o.at("tr");
            let transform = match o.get("tr") {
                Some(t) => read_transform(t, &tpath)?,
                None => Transform::default(),
            };
            ShapeKind::Repeater(Repeater {
                copies: o.prop("c")?,
                offset: o.prop("o")?,
                composite: o.int("m")?,
                transform,
            })
        }
        ShapeType::MergePaths => ShapeKind::MergePaths(MergePaths { mode: o.int("mm")? }),
        ShapeType::RoundedCorners => ShapeKind::RoundedCorners(RoundedCorners {
            radius: o.prop("r")?,
        }),
        ShapeType::ZigZag => ShapeKind::ZigZag(ZigZag {
            frequency: o.prop("r")?,
            amplitude: o.prop("s")?,
            point_type: o.prop("pt")?,
        }),
    };
    Ok(ShapeNode {
        name,
        match_name,
        hidden,
        blend_mode,
        kind,
        extras: o.finish(),
    })
}

pub(crate) fn check_star_points(star: &Star, path: &str) -> Res<()> {
    let Some(points) = &star.points else {
        return Ok(());
    };
    let too_few = |v: &[f64]| v.first().is_some_and(|p| *p < 3.0);
    let bad = match &points.value {
        PropValue::Static(v) => too_few(v),
        PropValue::Keyframed(kfs) => kfs
            .iter()
            .any(|k| k.start.as_deref().is_some_and(too_few)),
    };
    if bad {
        return Err(ModelError::schema(path, "star needs at least 3 points"));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// writing

/// JSON number in canonical form: integral values inside the exactly
/// representable range are written without a fraction.
pub(crate) fn num(x: f64) -> Value {
    if x.fract() == 0.0 && x.abs() < 9.0e15 && !(x == 0.0 && x.is_sign_negative()) {
        Value::from(x as i64)
    } else {
        serde_json::Number::from_f64(x)
            .map(Value::Number)
            .unwrap_or(Value::Null)
    }
}

fn nums(v: &[f64]) -> Value {
    Value::Array(v.iter().map(|x| num(*x)).collect())
}

fn append(m: &mut Map<String, Value>, extras: &Extras) {
    for (k, v) in extras {
        m.insert(k.clone(), v.clone());
    }
}

fn put_str(m: &mut Map<String, Value>, key: &str, v: &Option<String>) {
    if let Some(s) = v {
        m.insert(key.into(), Value::String(s.clone()));
    }
}

fn put_num(m: &mut Map<String, Value>, key: &str, v: Option<f64>) {
    if let Some(x) = v {
        m.insert(key.into(), num(x));
    }
}

fn put_int(m: &mut Map<String, Value>, key: &str, v: Option<i64>) {
    if let Some(x) = v {
        m.insert(key.into(), Value::from(x));
    }
}

fn put_int_flag(m: &mut Map<String, Value>, key: &str, v: Option<bool>) {
    if let Some(b) = v {
        m.insert(key.into(), Value::from(b as i64));
    }
}

fn put_bool(m: &mut Map<String, Value>, key: &str, v: Option<bool>) {
    if let Some(b) = v {
        m.insert(key.into(), Value::Bool(b));
    }
}

/// Scalar-valued properties write a lone static value as a bare number.
#[derive(Clone, Copy, PartialEq)]
enum Role {
    Scalar,
    Vector,
}

fn put_prop(m: &mut Map<String, Value>, key: &str, p: &Option<Property>, role: Role) {
    if let Some(p) = p {
        m.insert(key.into(), property_value(p, role));
    }
}

fn property_value(p: &Property, role: Role) -> Value {
    let mut m = Map::new();
    match &p.value {
        PropValue::Static(v) => {
            m.insert("a".into(), Value::from(0));
            let k = if role == Role::Scalar && v.len() == 1 {
                num(v[0])
            } else {
                nums(v)
            };
            m.insert("k".into(), k);
        }
        PropValue::Keyframed(kfs) => {
            m.insert("a".into(), Value::from(1));
            m.insert(
                "k".into(),
                Value::Array(kfs.iter().map(|k| keyframe_value(k, |v| nums(v))).collect()),
            );
        }
    }
    append(&mut m, &p.extras);
    Value::Object(m)
}

fn keyframe_value<V>(k: &Keyframe<V>, write: impl Fn(&V) -> Value) -> Value {
    let mut m = Map::new();
    m.insert("t".into(), num(k.time));
    if let Some(s) = &k.start {
        m.insert("s".into(), write(s));
    }
    if let Some(e) = &k.end {
        m.insert("e".into(), write(e));
    }
    if let Some(o) = &k.ease_out {
        m.insert("o".into(), easing_value(o));
    }
    if let Some(i) = &k.ease_in {
        m.insert("i".into(), easing_value(i));
    }
    put_int_flag(&mut m, "h", k.hold);
    if let Some(to) = &k.spatial_out {
        m.insert("to".into(), nums(to));
    }
    if let Some(ti) = &k.spatial_in {
        m.insert("ti".into(), nums(ti));
    }
    append(&mut m, &k.extras);
    Value::Object(m)
}

fn easing_value(e: &Easing) -> Value {
    let comp = |c: &EaseComponent| match c {
        EaseComponent::Scalar(x) => num(*x),
        EaseComponent::PerAxis(v) => nums(v),
    };
    let mut m = Map::new();
    m.insert("x".into(), comp(&e.x));
    m.insert("y".into(), comp(&e.y));
    append(&mut m, &e.extras);
    Value::Object(m)
}

fn shape_property_value(p: &ShapeProperty) -> Value {
    let mut m = Map::new();
    match &p.value {
        ShapeValue::Static(b) => {
            m.insert("a".into(), Value::from(0));
            m.insert("k".into(), bezier_value(b));
        }
        ShapeValue::Keyframed(kfs) => {
            m.insert("a".into(), Value::from(1));
            m.insert(
                "k".into(),
                Value::Array(
                    kfs.iter()
                        .map(|k| {
                            keyframe_value(k, |v: &Vec<Bezier>| {
                                Value::Array(v.iter().map(bezier_value).collect())
                            })
                        })
                        .collect(),
                ),
            );
        }
    }
    append(&mut m, &p.extras);
    Value::Object(m)
}

fn bezier_value(b: &Bezier) -> Value {
    let points = |pts: &[[f64; 2]]| Value::Array(pts.iter().map(|p| nums(p)).collect());
    let mut m = Map::new();
    put_bool(&mut m, "c", b.closed);
    m.insert("v".into(), points(&b.vertices));
    m.insert("i".into(), points(&b.in_tangents));
    m.insert("o".into(), points(&b.out_tangents));
    append(&mut m, &b.extras);
    Value::Object(m)
}

fn asset_value(a: &PrecompAsset) -> Value {
    let mut m = Map::new();
    m.insert("id".into(), Value::String(a.id.clone()));
    put_str(&mut m, "nm", &a.name);
    put_num(&mut m, "fr", a.frame_rate);
    m.insert("layers".into(), layers_value(&a.layers));
    append(&mut m, &a.extras);
    Value::Object(m)
}

fn font_value(f: &Font) -> Value {
    let mut m = Map::new();
    m.insert("fName".into(), Value::String(f.name.clone()));
    put_str(&mut m, "fFamily", &f.family);
    put_str(&mut m, "fStyle", &f.style);
    put_num(&mut m, "ascent", f.ascent);
    append(&mut m, &f.extras);
    Value::Object(m)
}

fn layers_value(layers: &[Layer]) -> Value {
    Value::Array(layers.iter().map(layer_value).collect())
}

fn layer_value(l: &Layer) -> Value {
    let mut m = Map::new();
    put_int_flag(&mut m, "ddd", l.three_d);
    put_int(&mut m, "ind", l.index);
    m.insert("ty".into(), Value::from(l.kind().type_id()));
    put_str(&mut m, "nm", &l.name);
    put_str(&mut m, "mn", &l.match_name);
    put_str(&mut m, "cl", &l.css_class);
    put_str(&mut m, "ln", &l.layer_xml_id);
    put_num(&mut m, "sr", l.stretch);
    put_int(&mut m, "parent", l.parent);
    put_int(&mut m, "tt", l.matte_mode);
    put_int(&mut m, "tp", l.matte_parent);
    put_int(&mut m, "td", l.matte_target);
    put_bool(&mut m, "hd", l.hidden);
    put_int_flag(&mut m, "ct", l.collapse);
    put_int_flag(&mut m, "ao", l.auto_orient);
    put_int(&mut m, "bm", l.blend_mode);
    put_bool(&mut m, "hasMask", l.has_mask);
    if !l.masks.is_empty() {
        m.insert(
            "masksProperties".into(),
            Value::Array(l.masks.iter().map(mask_value).collect()),
        );
    }
    if !l.effects.is_empty() {
        m.insert(
            "ef".into(),
            Value::Array(l.effects.iter().map(effect_value).collect()),
        );
    }
    if let Some(sy) = &l.styles {
        m.insert("sy".into(), sy.clone());
    }
    m.insert("ks".into(), transform_value(&l.transform));
    match &l.payload {
        LayerPayload::Precomp(p) => {
            m.insert("refId".into(), Value::String(p.ref_id.clone()));
            put_num(&mut m, "w", p.width);
            put_num(&mut m, "h", p.height);
            put_prop(&mut m, "tm", &p.time_remap, Role::Scalar);
        }
        LayerPayload::Solid(s) => {
            m.insert("sw".into(), num(s.width));
            m.insert("sh".into(), num(s.height));
            m.insert("sc".into(), Value::String(s.color.clone()));
        }
        LayerPayload::Null => {}
        LayerPayload::Shape(shapes) => {
            m.insert(
                "shapes".into(),
                Value::Array(shapes.iter().map(shape_value).collect()),
            );
        }
        LayerPayload::Text(t) => {
            m.insert("t".into(), text_value(t));
        }
    }
    m.insert("ip".into(), num(l.in_point));
    m.insert("op".into(), num(l.out_point));
    put_num(&mut m, "st", l.start_time);
    append(&mut m, &l.extras);
    Value::Object(m)
}

fn transform_fields(m: &mut Map<String, Value>, t: &Transform) {
    put_prop(m, "a", &t.anchor, Role::Vector);
    match &t.position {
        None => {}
        Some(Position::Combined(p)) => {
            m.insert("p".into(), property_value(p, Role::Vector));
        }
        Some(Position::Split(s)) => {
            let mut pm = Map::new();
            pm.insert("s".into(), Value::Bool(true));
            pm.insert("x".into(), property_value(&s.x, Role::Scalar));
            pm.insert("y".into(), property_value(&s.y, Role::Scalar));
            if let Some(z) = &s.z {
                pm.insert("z".into(), property_value(z, Role::Scalar));
            }
            append(&mut pm, &s.extras);
            m.insert("p".into(), Value::Object(pm));
        }
    }
    put_prop(m, "s", &t.scale, Role::Vector);
    put_prop(m, "r", &t.rotation, Role::Scalar);
    put_prop(m, "o", &t.opacity, Role::Scalar);
    put_prop(m, "sk", &t.skew, Role::Scalar);
    put_prop(m, "sa", &t.skew_axis, Role::Scalar);
    put_prop(m, "so", &t.start_opacity, Role::Scalar);
    put_prop(m, "eo", &t.end_opacity, Role::Scalar);
}

fn transform_value(t: &Transform) -> Value {
    let mut m = Map::new();
    transform_fields(&mut m, t);
    append(&mut m, &t.extras);
    Value::Object(m)
}

fn mask_value(mask: &Mask) -> Value {
    let mut m = Map::new();
    put_str(&mut m, "nm", &mask.name);
    if let Some(mode) = mask.mode {
        m.insert("mode".into(), Value::String(mode.code().into()));
    }
    put_bool(&mut m, "inv", mask.inverted);
    m.insert("pt".into(), shape_property_value(&mask.path));
    put_prop(&mut m, "o", &mask.opacity, Role::Scalar);
    put_prop(&mut m, "x", &mask.expansion, Role::Scalar);
    append(&mut m, &mask.extras);
    Value::Object(m)
}

fn effect_value(e: &Effect) -> Value {
    let mut m = Map::new();
    m.insert("ty".into(), Value::from(e.kind));
    put_str(&mut m, "nm", &e.name);
    put_str(&mut m, "mn", &e.match_name);
    put_int_flag(&mut m, "en", e.enabled);
    m.insert(
        "ef".into(),
        Value::Array(
            e.params
                .iter()
                .map(|p| {
                    let mut pm = Map::new();
                    pm.insert("ty".into(), Value::from(p.kind.type_id()));
                    put_str(&mut pm, "nm", &p.name);
                    put_str(&mut pm, "mn", &p.match_name);
                    let role = match p.kind {
                        EffectParamKind::Color | EffectParamKind::Point => Role::Vector,
                        _ => Role::Scalar,
                    };
                    pm.insert("v".into(), property_value(&p.value, role));
                    append(&mut pm, &p.extras);
                    Value::Object(pm)
                })
                .collect(),
        ),
    );
    append(&mut m, &e.extras);
    Value::Object(m)
}

fn text_value(t: &TextData) -> Value {
    let docs = t
        .documents
        .iter()
        .map(|k| {
            let d = &k.document;
            let mut dm = Map::new();
            dm.insert("f".into(), Value::String(d.font.clone()));
            dm.insert("s".into(), num(d.size));
            dm.insert("t".into(), Value::String(d.text.clone()));
            put_int(&mut dm, "j", d.justify);
            put_num(&mut dm, "tr", d.tracking);
            put_num(&mut dm, "lh", d.leading);
            if let Some(c) = &d.fill_color {
                dm.insert("fc".into(), nums(c));
            }
            if let Some(c) = &d.stroke_color {
                dm.insert("sc".into(), nums(c));
            }
            put_num(&mut dm, "sw", d.stroke_width);
            append(&mut dm, &d.extras);
            let mut km = Map::new();
            km.insert("s".into(), Value::Object(dm));
            km.insert("t".into(), num(k.time));
            append(&mut km, &k.extras);
            Value::Object(km)
        })
        .collect();
    let mut d = Map::new();
    d.insert("k".into(), Value::Array(docs));
    append(&mut d, &t.document_extras);
    let mut m = Map::new();
    m.insert("d".into(), Value::Object(d));
    if !t.animators.is_empty() {
        m.insert(
            "a".into(),
            Value::Array(t.animators.iter().map(text_animator_value).collect()),
        );
    }
    append(&mut m, &t.extras);
    Value::Object(m)
}

fn text_animator_value(a: &TextAnimator) -> Value {
    let mut s = Map::new();
    put_prop(&mut s, "s", &a.selector.start, Role::Scalar);
    put_prop(&mut s, "e", &a.selector.end, Role::Scalar);
    put_prop(&mut s, "o", &a.selector.offset, Role::Scalar);
    put_int(&mut s, "b", a.selector.basis);
    append(&mut s, &a.selector.extras);
    let st = &a.style;
    let mut y = Map::new();
    put_prop(&mut y, "p", &st.position, Role::Vector);
    put_prop(&mut y, "r", &st.rotation, Role::Scalar);
    put_prop(&mut y, "s", &st.scale, Role::Vector);
    put_prop(&mut y, "fc", &st.fill_color, Role::Vector);
    put_prop(&mut y, "sc", &st.stroke_color, Role::Vector);
    put_prop(&mut y, "o", &st.opacity, Role::Scalar);
    put_prop(&mut y, "t", &st.tracking, Role::Scalar);
    append(&mut y, &st.extras);
    let mut m = Map::new();
    put_str(&mut m, "nm", &a.name);
    m.insert("s".into(), Value::Object(s));
    m.insert("a".into(), Value::Object(y));
    append(&mut m, &a.extras);
    Value::Object(m)
}

fn gradient_fields(m: &mut Map<String, Value>, g: &Gradient) {
    put_prop(m, "o", &g.opacity, Role::Scalar);
    put_prop(m, "s", &g.start_point, Role::Vector);
    put_prop(m, "e", &g.end_point, Role::Vector);
    put_int(m, "t", g.gradient_type);
    put_prop(m, "h", &g.highlight_length, Role::Scalar);
    put_prop(m, "a", &g.highlight_angle, Role::Scalar);
    let mut gm = Map::new();
    gm.insert("p".into(), Value::from(g.stops.count));
    gm.insert("k".into(), property_value(&g.stops.colors, Role::Vector));
    append(&mut gm, &g.stops.extras);
    m.insert("g".into(), Value::Object(gm));
}

fn shape_value(n: &ShapeNode) -> Value {
    let mut m = Map::new();
    m.insert("ty".into(), Value::String(n.type_code().into()));
    put_str(&mut m, "nm", &n.name);
    put_str(&mut m, "mn", &n.match_name);
    put_bool(&mut m, "hd", n.hidden);
    put_int(&mut m, "bm", n.blend_mode);
    match &n.kind {
        ShapeKind::Group(g) => {
            put_num(&mut m, "np", g.num_properties);
            m.insert(
                "it".into(),
                Value::Array(g.items.iter().map(shape_value).collect()),
            );
        }
        ShapeKind::Path(p) => {
            put_int(&mut m, "d", p.direction);
            m.insert("ks".into(), shape_property_value(&p.path));
        }
        ShapeKind::Fill(f) => {
            put_prop(&mut m, "c", &f.color, Role::Vector);
            put_prop(&mut m, "o", &f.opacity, Role::Scalar);
            put_int(&mut m, "r", f.rule);
        }
        ShapeKind::Stroke(s) => {
            put_prop(&mut m, "c", &s.color, Role::Vector);
            put_prop(&mut m, "o", &s.opacity, Role::Scalar);
            put_prop(&mut m, "w", &s.width, Role::Scalar);
            put_int(&mut m, "lc", s.cap);
            put_int(&mut m, "lj", s.join);
            put_num(&mut m, "ml", s.miter_limit);
        }
        ShapeKind::GradientFill(g) => {
            gradient_fields(&mut m, &g.gradient);
            put_int(&mut m, "r", g.rule);
        }
        ShapeKind::GradientStroke(g) => {
            gradient_fields(&mut m, &g.gradient);
            put_prop(&mut m, "w", &g.width, Role::Scalar);
            put_int(&mut m, "lc", g.cap);
            put_int(&mut m, "lj", g.join);
            put_num(&mut m, "ml", g.miter_limit);
        }
        ShapeKind::Rect(r) => {
            put_int(&mut m, "d", r.direction);
            put_prop(&mut m, "p", &r.position, Role::Vector);
            put_prop(&mut m, "s", &r.size, Role::Vector);
            put_prop(&mut m, "r", &r.roundness, Role::Scalar);
        }
        ShapeKind::Ellipse(e) => {
            put_int(&mut m, "d", e.direction);
            put_prop(&mut m, "p", &e.position, Role::Vector);
            put_prop(&mut m, "s", &e.size, Role::Vector);
        }
        ShapeKind::Star(s) => {
            put_int(&mut m, "d", s.direction);
            put_prop(&mut m, "p", &s.position, Role::Vector);
            put_prop(&mut m, "or", &s.outer_radius, Role::Scalar);
            put_prop(&mut m, "os", &s.outer_roundness, Role::Scalar);
            put_prop(&mut m, "ir", &s.inner_radius, Role::Scalar);
            put_prop(&mut m, "is", &s.inner_roundness, Role::Scalar);
            put_prop(&mut m, "r", &s.rotation, Role::Scalar);
            put_prop(&mut m, "pt", &s.points, Role::Scalar);
            put_int(&mut m, "sy", s.star_type);
        }
        ShapeKind::Transform(t) => transform_fields(&mut m, t),
        ShapeKind::TrimPath(t) => {
            put_prop(&mut m, "s", &t.start, Role::Scalar);
            put_prop(&mut m, "e", &t.end, Role::Scalar);
            put_prop(&mut m, "o", &t.offset, Role::Scalar);
            put_int(&mut m, "m", t.mode);
        }
        ShapeKind::Repeater(r) => {
            put_prop(&mut m, "c", &r.copies, Role::Scalar);
            put_prop(&mut m, "o", &r.offset, Role::Scalar);
            put_int(&mut m, "m", r.composite);
            m.insert("tr".into(), transform_value(&r.transform));
        }
        ShapeKind::MergePaths(mp) => put_int(&mut m, "mm", mp.mode),
        ShapeKind::RoundedCorners(r) => put_prop(&mut m, "r", &r.radius, Role::Scalar),
        ShapeKind::ZigZag(z) => {
            put_prop(&mut m, "r", &z.frequency, Role::Scalar);
            put_prop(&mut m, "s", &z.amplitude, Role::Scalar);
            put_prop(&mut m, "pt", &z.point_type, Role::Scalar);
        }
    }
    append(&mut m, &n.extras);
    Value::Object(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    const EMPTY: &str = r#"{"v":"5.12.1","fr":25.0,"ip":0.0,"op":105.0,"w":512.0,"h":512.0,"layers":[],"assets":[],"markers":[]}"#;

    #[test]
    fn empty_layer_file() {
        let a = parse_lottie(EMPTY).unwrap();
        assert_eq!(a.layers.len(), 0);
        assert_eq!(a.out_point, 105.0);
        assert_eq!(
            serialize_lottie(&a),
            r#"{"v":"5.12.1","fr":25,"ip":0,"op":105,"w":512,"h":512,"layers":[],"assets":[],"markers":[]}"#
        );
    }

    #[test]
    fn numbers_are_canonical() {
        assert_eq!(num(1.0).to_string(), "1");
        assert_eq!(num(-0.0).to_string(), "-0.0");
        assert_eq!(num(0.1).to_string(), "0.1");
        assert_eq!(num(1e300).to_string(), "1e+300");
    }

    #[test]
    fn unknown_keys_survive_in_order() {
        let text = r#"{"v":"5.7.0","zz":1,"fr":30,"ip":0,"op":60,"w":100,"h":100,"layers":[
            {"ty":3,"ind":1,"ks":{"ix":7},"ip":0,"op":60,"custom":{"b":1,"a":2}}],"aa":null}"#;
        let a = parse_lottie(text).unwrap();
        let keys: Vec<_> = a.extras.keys().cloned().collect();
        assert_eq!(keys, ["zz", "aa"]);
        assert_eq!(a.layers[0].transform.extras["ix"], 7);
        let out = serialize_lottie(&a);
        assert!(out.contains(r#""custom":{"b":1,"a":2}"#));
        assert_eq!(parse_lottie(&out).unwrap(), a);
    }

    #[test]
    fn rejects_excluded_layer_kinds() {
        let text = r#"{"v":"5","fr":30,"ip":0,"op":60,"w":100,"h":100,"layers":[{"ty":2,"ks":{},"ip":0,"op":60}]}"#;
        assert!(matches!(
            parse_lottie(text),
            Err(ModelError::UnsupportedLayerKind { ty: 2, .. })
        ));
    }

    #[test]
    fn rejects_type_mismatch_with_path() {
        let text = r#"{"v":"5","fr":30,"ip":0,"op":60,"w":100,"h":100,"layers":[{"ty":4,"ks":{"r":{"k":"x"}},"ip":0,"op":60}]}"#;
        match parse_lottie(text) {
            Err(ModelError::SchemaViolation { path, .. }) => assert_eq!(path, "$.layers[0].ks.r.k"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_unordered_keyframes() {
        let text = r#"{"v":"5","fr":30,"ip":0,"op":60,"w":100,"h":100,"layers":[{"ty":4,"ks":{"r":{"a":1,"k":[{"t":10,"s":[0]},{"t":5,"s":[1]}]}},"ip":0,"op":60}]}"#;
        assert!(matches!(parse_lottie(text), Err(ModelError::SchemaViolation { .. })));
    }

    #[test]
    fn rejects_malformed_json() {
        assert!(matches!(parse_lottie("{"), Err(ModelError::MalformedJson(_))));
    }

    #[test]
    fn split_position_is_kept() {
        let text = r#"{"v":"5","fr":30,"ip":0,"op":60,"w":100,"h":100,"layers":[{"ty":3,"ind":1,"ks":{"p":{"s":true,"x":{"a":0,"k":3},"y":{"a":0,"k":4}}},"ip":0,"op":60}]}"#;
        let a = parse_lottie(text).unwrap();
        assert!(matches!(a.layers[0].transform.position, Some(Position::Split(_))));
        assert_eq!(parse_lottie(&serialize_lottie(&a)).unwrap(), a);
    }
}
