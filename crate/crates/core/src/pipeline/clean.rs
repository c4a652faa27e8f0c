//! Removal of non-parameterizable content from raw Lottie JSON.

use std::collections::HashSet;
use std::fmt;

use serde_json::{Map, Value};

use crate::model::{parse_value, Animation, LayerKind, ModelError};

/// Why a layer was dropped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RemovalReason {
    Base64Image,
    Audio,
    Camera,
    Data,
}

impl RemovalReason {
    fn from_type_id(ty: i64) -> Option<Self> {
        match ty {
            2 => Some(Self::Base64Image),
            6 => Some(Self::Audio),
            13 => Some(Self::Camera),
            15 => Some(Self::Data),
            _ => None,
        }
    }
}

impl fmt::Display for RemovalReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Base64Image => "image",
            Self::Audio => "audio",
            Self::Camera => "camera",
            Self::Data => "data",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RemovedLayer {
    /// The layer's `ind`, if it had one.
    pub index: Option<i64>,
    /// JSON path of the layer in the input.
    pub path: String,
    pub reason: RemovalReason,
}

#[derive(Debug, Clone, PartialEq)]
pub enum RejectReason {
    /// Removing content would leave the file without defined semantics.
    NonParameterizable(String),
    /// The remaining document does not satisfy the model.
    Invalid(ModelError),
}

impl fmt::Display for RejectReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NonParameterizable(why) => write!(f, "non-parameterizable: {why}"),
            Self::Invalid(e) => write!(f, "invalid: {e}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Verdict {
    Kept,
    Rejected(RejectReason),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CleanReport {
    pub removed_layers: Vec<RemovedLayer>,
    pub removed_assets: Vec<String>,
    pub stripped_expressions: usize,
    pub verdict: Verdict,
}

impl CleanReport {
    pub fn is_kept(&self) -> bool {
        self.verdict == Verdict::Kept
    }
}

/// Parses text leniently and cleans it. Malformed JSON is a rejection.
pub fn clean_str(text: &str) -> (Option<Animation>, CleanReport) {
    match serde_json::from_str::<Value>(text) {
        Ok(v) => clean(&v),
        Err(e) => (
            None,
            CleanReport {
                removed_layers: Vec::new(),
                removed_assets: Vec::new(),
                stripped_expressions: 0,
                verdict: Verdict::Rejected(RejectReason::Invalid(ModelError::MalformedJson(e.to_string()))),
            },
        ),
    }
}

/// Drops image, audio, camera and data layers and non-precomp assets,
/// strips expressions, then parses the rest strictly.
pub fn clean(raw: &Value) -> (Option<Animation>, CleanReport) {
    let mut c = Cleaner::default();
    let mut doc = raw.clone();
    let outcome = c.run(&mut doc);
    let mut report = CleanReport {
        removed_layers: c.removed,
        removed_assets: c.removed_assets,
        stripped_expressions: c.stripped,
        verdict: Verdict::Kept,
    };
    let result = outcome.and_then(|()| parse_value(&doc).map_err(RejectReason::Invalid));
    match result {
        Ok(a) => (Some(a), report),
        Err(why) => {
            report.verdict = Verdict::Rejected(why);
            (None, report)
        }
    }
}

#[derive(Default)]
struct Cleaner {
    removed: Vec<RemovedLayer>,
    removed_assets: Vec<String>,
    stripped: usize,
}

fn reject(why: impl Into<String>) -> Result<(), RejectReason> {
    Err(RejectReason::NonParameterizable(why.into()))
}

impl Cleaner {
    fn run(&mut self, doc: &mut Value) -> Result<(), RejectReason> {
        let Some(root) = doc.as_object_mut() else {
            return Err(RejectReason::Invalid(ModelError::schema("$", "expected an object")));
        };
        let mut removed_assets = HashSet::new();
        if let Some(Value::Array(assets)) = root.get_mut("assets") {
            assets.retain(|a| {
                let keep = a.get("layers").is_some();
                if !keep {
                    let id = a.get("id").and_then(Value::as_str).unwrap_or("").to_string();
                    removed_assets.insert(id.clone());
                    self.removed_assets.push(id);
                }
                keep
            });
            for (i, asset) in assets.iter_mut().enumerate() {
                if let Some(Value::Array(layers)) = asset.get_mut("layers") {
                    self.layer_list(layers, &format!("$.assets[{i}].layers"), &removed_assets)?;
                }
            }
        }
        if let Some(Value::Array(layers)) = root.get_mut("layers") {
            let before = layers.len();
            self.layer_list(layers, "$.layers", &removed_assets)?;
            if before > 0 && layers.is_empty() {
                return reject("every layer was removed");
            }
        }
        Ok(())
    }

    fn layer_list(&mut self, layers: &mut Vec<Value>, path: &str, removed_assets: &HashSet<String>) -> Result<(), RejectReason> {
        let mut gone = HashSet::new();
        let mut kept = Vec::with_capacity(layers.len());
        for (i, layer) in std::mem::take(layers).into_iter().enumerate() {
            let lpath = format!("{path}[{i}]");
            let ty = layer.get("ty").and_then(Value::as_i64);
            let index = layer.get("ind").and_then(Value::as_i64);
            match ty.and_then(RemovalReason::from_type_id) {
                Some(reason) => {
                    if layer.get("td").and_then(Value::as_i64).is_some_and(|td| td != 0) {
                        return reject(format!("{lpath} is a removed matte source"));
                    }
                    if let Some(ind) = index {
                        gone.insert(ind);
                    }
                    self.removed.push(RemovedLayer {
                        index,
                        path: lpath,
                        reason,
                    });
                }
                None => {
                    match ty.and_then(LayerKind::from_type_id) {
                        Some(_) => {}
                        None => return reject(format!("{lpath} has unsupported type {ty:?}")),
                    }
                    if layer.get("ddd").and_then(Value::as_i64).is_some_and(|d| d != 0) {
                        return reject(format!("{lpath} is a 3D layer"));
                    }
                    if let Some(r) = layer.get("refId").and_then(Value::as_str) {
                        if removed_assets.contains(r) {
                            return reject(format!("{lpath} references removed asset {r}"));
                        }
                    }
                    kept.push((lpath, layer));
                }
            }
        }
        for (lpath, layer) in &kept {
            for key in ["parent", "tp"] {
                if let Some(target) = layer.get(key).and_then(Value::as_i64) {
                    if gone.contains(&target) {
                        return reject(format!("{lpath}.{key} references removed layer {target}"));
                    }
                }
            }
        }
        for (_, mut layer) in kept {
            self.stripped += strip_expressions(&mut layer);
            layers.push(layer);
        }
        Ok(())
    }
}

/// Removes `x` expression strings from every animatable property object.
fn strip_expressions(v: &mut Value) -> usize {
    match v {
        Value::Object(m) => {
            let mut n = strip_here(m);
            for child in m.values_mut() {
                n += strip_expressions(child);
            }
            n
        }
        Value::Array(items) => items.iter_mut().map(strip_expressions).sum(),
        _ => 0,
    }
}

fn strip_here(m: &mut Map<String, Value>) -> usize {
    if m.contains_key("k") && matches!(m.get("x"), Some(Value::String(_))) {
        m.shift_remove("x");
        1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn base(layers: Value) -> Value {
        json!({"v":"5.7.0","fr":30,"ip":0,"op":60,"w":512,"h":512,"layers":layers})
    }

    fn shape_layer(ind: i64) -> Value {
        json!({"ty":4,"ind":ind,"ip":0,"op":60,"st":0,"ks":{},"shapes":[]})
    }

    #[test]
    fn audio_layer_is_removed() {
        let raw = base(json!([shape_layer(1), {"ty":6,"ind":2,"ip":0,"op":60,"st":0}]));
        let (a, r) = clean(&raw);
        assert_eq!(r.verdict, Verdict::Kept);
        assert_eq!(
            r.removed_layers,
            vec![RemovedLayer {
                index: Some(2),
                path: "$.layers[1]".into(),
                reason: RemovalReason::Audio
            }]
        );
        assert_eq!(a.unwrap().layers.len(), 1);
    }

    #[test]
    fn image_only_file_is_rejected() {
        let mut raw = base(json!([{"ty":2,"ind":1,"refId":"img","ip":0,"op":60,"st":0,"ks":{}}]));
        raw["assets"] = json!([{"id":"img","w":10,"h":10,"p":"data:image/png;base64,AAAA","e":1}]);
        let (a, r) = clean(&raw);
        assert!(a.is_none());
        assert!(matches!(r.verdict, Verdict::Rejected(RejectReason::NonParameterizable(_))));
        assert_eq!(r.removed_assets, vec!["img".to_string()]);
    }

    #[test]
    fn expression_is_stripped() {
        let mut layer = shape_layer(1);
        layer["ks"] = json!({"r":{"a":1,"k":[{"t":0,"s":[0]},{"t":60,"s":[90]}],"x":"time*360"}});
        let (a, r) = clean(&base(json!([layer])));
        assert_eq!(r.stripped_expressions, 1);
        let a = a.unwrap();
        assert_eq!(a.layers[0].transform.rotation.as_ref().unwrap().keyframes().len(), 2);
        assert!(a.layers[0].transform.rotation.as_ref().unwrap().extras.is_empty());
    }

    #[test]
    fn precomp_on_removed_asset_is_rejected() {
        let mut raw = base(json!([shape_layer(1), {"ty":0,"ind":2,"refId":"img","ip":0,"op":60,"st":0,"ks":{}}]));
        raw["assets"] = json!([{"id":"img","w":10,"h":10,"p":"x.png"}]);
        let (a, r) = clean(&raw);
        assert!(a.is_none());
        assert!(matches!(r.verdict, Verdict::Rejected(_)));
    }

    #[test]
    fn parent_on_removed_layer_is_rejected() {
        let mut child = shape_layer(1);
        child["parent"] = json!(2);
        let raw = base(json!([child, {"ty":13,"ind":2,"ip":0,"op":60,"st":0}]));
        assert!(clean(&raw).0.is_none());
    }

    #[test]
    fn nested_asset_layers_are_cleaned() {
        let mut raw = base(json!([shape_layer(1), {"ty":0,"ind":2,"refId":"c","ip":0,"op":60,"st":0,"ks":{}}]));
        raw["assets"] = json!([{"id":"c","layers":[shape_layer(1), {"ty":15,"ind":2,"ip":0,"op":60}]}]);
        let (a, r) = clean(&raw);
        assert!(r.is_kept());
        assert_eq!(r.removed_layers[0].path, "$.assets[0].layers[1]");
        assert_eq!(a.unwrap().assets[0].layers.len(), 1);
    }

    #[test]
    fn clean_is_idempotent() {
        let raw = base(json!([shape_layer(1), {"ty":6,"ind":2,"ip":0,"op":60,"st":0}]));
        let a = clean(&raw).0.unwrap();
        let (b, r) = clean(&crate::model::to_value(&a));
        assert_eq!(b.unwrap(), a);
        assert!(r.removed_layers.is_empty());
    }
}
