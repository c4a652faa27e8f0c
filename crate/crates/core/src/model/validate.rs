//! Cross-reference checks between layers and assets.

use std::collections::{HashMap, HashSet};

use super::{Animation, Layer, LayerPayload, ModelError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    DuplicateIndex,
    DanglingParent,
    ParentCycle,
    DanglingMatte,
    DanglingAsset,
}

/// A broken reference, with the JSON path of the referring field.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub path: String,
    pub message: String,
}

impl Animation {
    /// All reference problems, in document order: root layers first, then
    /// each asset's layers.
    pub fn reference_violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        check_container(&self.layers, "$.layers", &mut out);
        for (i, asset) in self.assets.iter().enumerate() {
            check_container(&asset.layers, &format!("$.assets[{i}].layers"), &mut out);
        }
        let ids: HashSet<&str> = self.assets.iter().map(|a| a.id.as_str()).collect();
        let mut visit = |layers: &[Layer], base: &str| {
            for (i, l) in layers.iter().enumerate() {
                if let LayerPayload::Precomp(p) = &l.payload {
                    if !ids.contains(p.ref_id.as_str()) {
                        out.push(Violation {
                            kind: ViolationKind::DanglingAsset,
                            path: format!("{base}[{i}].refId"),
                            message: format!("no asset with id {:?}", p.ref_id),
                        });
                    }
                }
            }
        };
        visit(&self.layers, "$.layers");
        for (i, asset) in self.assets.iter().enumerate() {
            visit(&asset.layers, &format!("$.assets[{i}].layers"));
        }
        out
    }
}

fn check_container(layers: &[Layer], base: &str, out: &mut Vec<Violation>) {
    let mut by_index: HashMap<i64, usize> = HashMap::new();
    for (i, l) in layers.iter().enumerate() {
        if let Some(ind) = l.index {
            if by_index.insert(ind, i).is_some() {
                out.push(Violation {
                    kind: ViolationKind::DuplicateIndex,
                    path: format!("{base}[{i}].ind"),
                    message: format!("layer index {ind} is used twice"),
                });
            }
        }
    }
    for (i, l) in layers.iter().enumerate() {
        if let Some(p) = l.parent {
            if !by_index.contains_key(&p) {
                out.push(Violation {
                    kind: ViolationKind::DanglingParent,
                    path: format!("{base}[{i}].parent"),
                    message: format!("parent {p} does not exist"),
                });
            } else if has_cycle(layers, &by_index, i) {
                out.push(Violation {
                    kind: ViolationKind::ParentCycle,
                    path: format!("{base}[{i}].parent"),
                    message: "parent chain forms a cycle".into(),
                });
            }
        }
        if let Some(tp) = l.matte_parent {
            if !by_index.contains_key(&tp) {
                out.push(Violation {
                    kind: ViolationKind::DanglingMatte,
                    path: format!("{base}[{i}].tp"),
                    message: format!("matte parent {tp} does not exist"),
                });
            }
        }
    }
}

fn has_cycle(layers: &[Layer], by_index: &HashMap<i64, usize>, start: usize) -> bool {
    let mut at = start;
    for _ in 0..=layers.len() {
        match layers[at].parent.and_then(|p| by_index.get(&p)) {
            None => return false,
            Some(&next) if next == start => return true,
            Some(&next) => at = next,
        }
    }
    true
}

/// Parse-time check: parent and matte links must resolve without cycles.
/// Dangling asset references are left to lint.
pub(crate) fn check_references(a: &Animation) -> Result<(), ModelError> {
    match a
        .reference_violations()
        .into_iter()
        .find(|v| v.kind != ViolationKind::DanglingAsset)
    {
        Some(v) => Err(ModelError::schema(v.path, v.message)),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::parse_lottie;

    fn doc(layers: &str) -> String {
        format!(r#"{{"v":"5","fr":30,"ip":0,"op":60,"w":100,"h":100,"layers":[{layers}]}}"#)
    }

    #[test]
    fn parent_must_resolve() {
        let text = doc(r#"{"ty":3,"ind":1,"parent":9,"ks":{},"ip":0,"op":60}"#);
        assert!(matches!(
            parse_lottie(&text),
            Err(ModelError::SchemaViolation { path, .. }) if path == "$.layers[0].parent"
        ));
    }

    #[test]
    fn cycles_are_rejected() {
        let text = doc(
            r#"{"ty":3,"ind":1,"parent":2,"ks":{},"ip":0,"op":60},{"ty":3,"ind":2,"parent":1,"ks":{},"ip":0,"op":60}"#,
        );
        assert!(parse_lottie(&text).is_err());
    }

    #[test]
    fn dangling_asset_parses_but_is_reported() {
        let text = doc(r#"{"ty":0,"ind":1,"refId":"missing","ks":{},"ip":0,"op":60}"#);
        let a = parse_lottie(&text).unwrap();
        let v = a.reference_violations();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].kind, ViolationKind::DanglingAsset);
    }
}
