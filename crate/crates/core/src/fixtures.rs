//! Seeded generator of valid, lint-clean animations for tests, benches and
//! the bundled corpus.
//!
//! Generated files live on the normalized canvas and timeline (512×512,
//! frames 0–60), with values on the default token grid, so encoding them
//! never clamps.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::*;

pub const CANVAS: f64 = 512.0;
pub const FRAMES: f64 = 60.0;

const WORDS: [&str; 8] = ["hello", "sale", "go", "wave", "new", "play", "hi there", "ok"];
const FONTS: [&str; 2] = ["Roboto-Regular", "Inter-Bold"];

/// Features forced into a generated file on top of random ones.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Focus {
    pub layer: Option<LayerKind>,
    pub shape: Option<ShapeType>,
    pub masks: bool,
    pub effects: bool,
}

impl Focus {
    /// Cycles through every layer kind and shape kind so that any 15
    /// consecutive indices cover them all.
    pub fn cycle(i: usize) -> Self {
        const LAYERS: [LayerKind; 5] = [
            LayerKind::Shape,
            LayerKind::Precomp,
            LayerKind::Solid,
            LayerKind::Null,
            LayerKind::Text,
        ];
        Focus {
            layer: Some(LAYERS[i % LAYERS.len()]),
            shape: Some(ShapeType::ALL[i % ShapeType::ALL.len()]),
            masks: i % 3 == 0,
            effects: i % 4 == 1,
        }
    }
}

/// A random animation; the same seed always gives the same file.
pub fn generate(seed: u64) -> Animation {
    generate_with(seed, Focus::default())
}

pub fn generate_with(seed: u64, focus: Focus) -> Animation {
    Gen::new(seed).animation(focus)
}

/// The `i`-th file of the bundled corpus.
pub fn corpus_file(i: usize) -> Animation {
    generate_with(0x5eed_0000 + i as u64, Focus::cycle(i))
}

/// A composition nested two precomps deep: root precomp layer, whose asset
/// holds another precomp layer, whose asset holds a shape layer.
pub fn nested_precomp() -> Animation {
    let mut g = Gen::new(3);
    let mut a = Animation::empty("5.7.0", 30.0, 0.0, FRAMES, CANVAS, CANVAS);
    let inner = vec![g.shape_layer(1, Focus::default())];
    let mut mid_layer = Layer::new(LayerPayload::Precomp(g.precomp_payload("inner")), 1, 0.0, FRAMES);
    mid_layer.start_time = Some(0.0);
    mid_layer.transform = g.transform(false);
    let mut root = Layer::new(LayerPayload::Precomp(g.precomp_payload("mid")), 1, 0.0, FRAMES);
    root.start_time = Some(0.0);
    root.transform = g.transform(false);
    a.assets.push(asset("mid", vec![mid_layer]));
    a.assets.push(asset("inner", inner));
    a.layers.push(root);
    a
}

fn asset(id: &str, layers: Vec<Layer>) -> PrecompAsset {
    PrecompAsset {
        id: id.into(),
        name: None,
        frame_rate: None,
        layers,
        extras: Extras::new(),
    }
}

struct Gen {
    rng: ChaCha8Rng,
}

impl Gen {
    fn new(seed: u64) -> Self {
        Gen {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    fn chance(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    fn int(&mut self, lo: i64, hi: i64) -> f64 {
        self.rng.gen_range(lo..=hi) as f64
    }

    /// A frame time on the quarter-frame grid.
    fn time(&mut self, lo: f64, hi: f64) -> f64 {
        let q = self.rng.gen_range((lo * 4.0).ceil() as i64..=(hi * 4.0).floor() as i64);
        q as f64 / 4.0
    }

    fn unit(&mut self, steps: i64) -> f64 {
        self.rng.gen_range(0..=steps) as f64 / steps as f64
    }

    fn color(&mut self) -> Vec<f64> {
        (0..3).map(|_| self.unit(255)).collect()
    }

    fn name(&mut self, prefix: &str) -> Option<String> {
        self.chance(0.6).then(|| format!("{prefix} {}", self.rng.gen_range(1..100)))
    }

    fn animation(&mut self, focus: Focus) -> Animation {
        let fr = *[24.0, 25.0, 30.0, 60.0].choose(&mut self.rng).unwrap();
        let version = *["5.5.2", "5.7.0", "5.7.4", "5.12.1"].choose(&mut self.rng).unwrap();
        let mut a = Animation::empty(version, fr, 0.0, FRAMES, CANVAS, CANVAS);
        a.name = self.name("anim");

        let mut kinds: Vec<LayerKind> = (0..self.rng.gen_range(1..=4))
            .map(|_| {
                *[LayerKind::Shape, LayerKind::Shape, LayerKind::Shape, LayerKind::Null, LayerKind::Solid]
                    .choose(&mut self.rng)
                    .unwrap()
            })
            .collect();
        if let Some(k) = focus.layer {
            kinds.insert(self.rng.gen_range(0..=kinds.len()), k);
        }
        if focus.shape.is_some() && !kinds.contains(&LayerKind::Shape) {
            kinds.push(LayerKind::Shape);
        }

        let mut focus = focus;
        let mut index = 1;
        let null_index = kinds.iter().position(|k| *k == LayerKind::Null).map(|i| i as i64 + 1);
        for kind in kinds {
            let mut l = match kind {
                LayerKind::Shape => {
                    let l = self.shape_layer(index, focus);
                    focus.shape = None;
                    l
                }
                LayerKind::Null => {
                    let mut l = self.base_layer(LayerPayload::Null, index);
                    l.transform.opacity = Some(Property::scalar(self.int(0, 100)));
                    l
                }
                LayerKind::Solid => {
                    let c = self.color();
                    let hex: String = c.iter().map(|v| format!("{:02x}", (v * 255.0).round() as u8)).collect();
                    let payload = SolidPayload {
                        width: self.int(50, 512),
                        height: self.int(50, 512),
                        color: format!("#{hex}"),
                    };
                    self.base_layer(LayerPayload::Solid(payload), index)
                }
                LayerKind::Text => {
                    if a.fonts.list.is_empty() {
                        a.fonts.list = FONTS
                            .iter()
                            .map(|f| Font {
                                name: f.to_string(),
                                family: Some(f.split('-').next().unwrap().to_string()),
                                style: Some(f.split('-').nth(1).unwrap().to_string()),
                                ascent: self.chance(0.5).then(|| self.int(60, 80)),
                                extras: Extras::new(),
                            })
                            .collect();
                    }
                    let t = self.text();
                    self.base_layer(LayerPayload::Text(t), index)
                }
                LayerKind::Precomp => {
                    let id = format!("comp_{}", a.assets.len());
                    let inner = (1..=self.rng.gen_range(1..=2)).map(|i| self.shape_layer(i, Focus::default())).collect();
                    a.assets.push(asset(&id, inner));
                    let p = self.precomp_payload(&id);
                    self.base_layer(LayerPayload::Precomp(p), index)
                }
            };
            if kind != LayerKind::Null && null_index.is_some_and(|n| n < index) && self.chance(0.5) {
                l.parent = null_index;
            }
            if focus.masks && kind != LayerKind::Null {
                l.masks = (0..self.rng.gen_range(1..=2)).map(|_| self.mask()).collect();
                l.has_mask = Some(true);
                focus.masks = false;
            }
            if focus.effects && kind != LayerKind::Null {
                l.effects = vec![self.effect()];
                focus.effects = false;
            }
            a.layers.push(l);
            index += 1;
        }
        if a.layers.len() >= 2 && self.chance(0.15) {
            // Track matte: the layer above masks the one below.
            a.layers[0].matte_target = Some(1);
            a.layers[1].matte_mode = Some(1);
            a.layers[0].transform.opacity = Some(Property::scalar(100.0));
        }
        if self.chance(0.2) {
            a.markers.push(serde_json::json!({"tm": self.time(0.0, 50.0), "cm": "intro", "dr": 10}));
        }
        a
    }

    fn base_layer(&mut self, payload: LayerPayload, index: i64) -> Layer {
        let animate = self.chance(0.5);
        let mut l = Layer::new(payload, index, 0.0, FRAMES);
        if self.chance(0.3) {
            l.in_point = self.time(0.0, 20.0);
            l.out_point = self.time(40.0, 60.0);
        }
        l.start_time = Some(0.0);
        l.name = self.name("layer");
        l.transform = self.transform(animate);
        if self.chance(0.2) {
            l.blend_mode = Some(0);
        }
        l
    }

    fn precomp_payload(&mut self, id: &str) -> PrecompPayload {
        PrecompPayload {
            ref_id: id.into(),
            width: Some(CANVAS),
            height: Some(CANVAS),
            time_remap: self.chance(0.3).then(|| {
                let mut k0 = Keyframe::new(0.0, vec![0.0]);
                k0.ease_out = Some(Easing::linear_out());
                k0.ease_in = Some(Easing::linear_in());
                Property::keyframed(vec![k0, Keyframe::new(FRAMES, vec![2.0])])
            }),
        }
    }

    fn shape_layer(&mut self, index: i64, focus: Focus) -> Layer {
        let mut items: Vec<ShapeNode> = (0..self.rng.gen_range(1..=2)).map(|_| self.group(0, None)).collect();
        if let Some(t) = focus.shape {
            let at = self.rng.gen_range(0..=items.len());
            items.insert(at, self.group(0, Some(t)));
        }
        self.base_layer(LayerPayload::Shape(items), index)
    }

    /// A styled group; `want` forces one node of that kind inside it.
    fn group(&mut self, depth: usize, want: Option<ShapeType>) -> ShapeNode {
        let mut items = Vec::new();
        let geometry = [ShapeType::Path, ShapeType::Rect, ShapeType::Ellipse, ShapeType::Star];
        for _ in 0..self.rng.gen_range(1..=2) {
            let g = *geometry.choose(&mut self.rng).unwrap();
            items.push(self.node(g));
        }
        let want = want.filter(|t| *t != ShapeType::Transform);
        if want == Some(ShapeType::Group) || (depth < 2 && self.chance(0.2)) {
            items.push(self.group(depth + 1, None));
        }
        if let Some(t) = want.filter(|t| !t.is_style() && *t != ShapeType::Group && !t.is_geometry()) {
            items.push(self.node(t));
        }
        if let Some(t) = want.filter(|t| t.is_geometry()) {
            items.push(self.node(t));
        }
        let styles = [ShapeType::Fill, ShapeType::Fill, ShapeType::Stroke, ShapeType::GradientFill, ShapeType::GradientStroke];
        let style = want.filter(|t| t.is_style()).unwrap_or_else(|| *styles.choose(&mut self.rng).unwrap());
        items.push(self.node(style));
        if style != ShapeType::Fill && self.chance(0.5) {
            items.push(self.node(ShapeType::Fill));
        }
        let animate = self.chance(0.2);
        items.push(ShapeNode::new(ShapeKind::Transform(self.transform(animate))));
        let np = items.len() as f64;
        let mut n = ShapeNode::new(ShapeKind::Group(Group {
            num_properties: Some(np),
            items,
        }));
        n.name = self.name("group");
        n
    }

    fn prop(&mut self, values: Vec<f64>, animate: bool, step: impl Fn(&mut Self, usize, f64) -> f64) -> Property {
        if !animate {
            return Property::fixed(values);
        }
        let n = self.rng.gen_range(2..=3);
        let mut times: Vec<f64> = (0..n).map(|_| self.time(0.0, FRAMES)).collect();
        times.sort_by(f64::total_cmp);
        times.dedup();
        if times.len() < 2 {
            times = vec![0.0, FRAMES];
        }
        let last = times.len() - 1;
        let kfs = times
            .into_iter()
            .enumerate()
            .map(|(j, t)| {
                let v: Vec<f64> = values.iter().enumerate().map(|(i, x)| if j == 0 { *x } else { step(self, i, *x) }).collect();
                let mut k = Keyframe::new(t, v);
                if j < last {
                    if self.chance(0.15) {
                        k.hold = Some(true);
                    } else {
                        k.ease_out = Some(Easing::new(self.unit(100), self.unit(100)));
                        k.ease_in = Some(Easing::new(self.unit(100), self.unit(100)));
                    }
                }
                k
            })
            .collect();
        Property::keyframed(kfs)
    }

    fn scalar(&mut self, lo: i64, hi: i64, animate: bool) -> Property {
        let v = self.int(lo, hi);
        self.prop(vec![v], animate, move |g, _, _| g.int(lo, hi))
    }

    fn point(&mut self, lo: i64, hi: i64, animate: bool) -> Property {
        let v = vec![self.int(lo, hi), self.int(lo, hi)];
        self.prop(v, animate, move |g, _, _| g.int(lo, hi))
    }

    fn transform(&mut self, animate: bool) -> Transform {
        let a = |g: &mut Self| g.chance(0.4) && animate;
        let anim = (a(self), a(self), a(self), a(self));
        let position = if self.chance(0.1) {
            Position::Split(SplitPosition {
                x: self.scalar(64, 448, anim.0),
                y: self.scalar(64, 448, anim.0),
                z: None,
                extras: Extras::new(),
            })
        } else {
            Position::Combined(self.point(64, 448, anim.0))
        };
        let s = self.int(50, 150);
        Transform {
            anchor: Some(self.point(-50, 50, false)),
            position: Some(position),
            scale: Some(self.prop(vec![s, s], anim.1, |g, _, _| g.int(50, 150))),
            rotation: Some(self.scalar(-180, 180, anim.2)),
            opacity: Some(self.scalar(40, 100, anim.3)),
            skew: self.chance(0.2).then(|| Property::scalar(self.int(-30, 30))),
            skew_axis: self.chance(0.2).then(|| Property::scalar(self.int(0, 90))),
            ..Transform::default()
        }
    }

    fn bezier(&mut self) -> Bezier {
        let n = self.rng.gen_range(3..=5);
        let cx = self.int(-50, 50);
        let cy = self.int(-50, 50);
        let r = self.int(20, 120);
        let pts: Vec<[f64; 2]> = (0..n)
            .map(|i| {
                let t = std::f64::consts::TAU * i as f64 / n as f64;
                [(cx + r * t.cos()).round(), (cy + r * t.sin()).round()]
            })
            .collect();
        let mut b = Bezier::polygon(&pts, self.chance(0.8));
        if self.chance(0.5) {
            for (i, o) in b.in_tangents.iter_mut().zip(b.out_tangents.iter_mut()) {
                let d = [self.int(-20, 20), self.int(-20, 20)];
                *o = d;
                *i = [-d[0], -d[1]];
            }
        }
        b
    }

    fn shape_prop(&mut self) -> ShapeProperty {
        let b = self.bezier();
        if !self.chance(0.25) {
            return ShapeProperty::fixed(b);
        }
        let mut other = b.clone();
        for v in &mut other.vertices {
            v[0] += self.int(-10, 10);
            v[1] += self.int(-10, 10);
        }
        let mut k0 = Keyframe::new(0.0, vec![b]);
        k0.ease_out = Some(Easing::new(self.unit(100), self.unit(100)));
        k0.ease_in = Some(Easing::new(self.unit(100), self.unit(100)));
        let t = self.time(10.0, FRAMES);
        ShapeProperty {
            value: ShapeValue::Keyframed(vec![k0, Keyframe::new(t, vec![other])]),
            extras: Extras::new(),
        }
    }

    fn gradient(&mut self) -> Gradient {
        let count = self.rng.gen_range(2..=3);
        let mut flat = Vec::new();
        for i in 0..count {
            // Offsets on the colour grid: 0, 127/255, 1.
            flat.push((255 * i / (count - 1)) as f64 / 255.0);
            flat.extend(self.color());
        }
        let radial = self.chance(0.4);
        Gradient {
            opacity: Some(self.scalar(60, 100, false)),
            start_point: Some(self.point(-100, 0, false)),
            end_point: Some(self.point(0, 100, false)),
            gradient_type: Some(if radial { 2 } else { 1 }),
            highlight_length: radial.then(|| Property::scalar(self.int(0, 50))),
            highlight_angle: radial.then(|| Property::scalar(self.int(0, 90))),
            stops: GradientStops {
                count: count as i64,
                colors: Property::fixed(flat),
                extras: Extras::new(),
            },
        }
    }

    fn node(&mut self, t: ShapeType) -> ShapeNode {
        let animate = self.chance(0.2);
        let dir = self.chance(0.3).then_some(1);
        let kind = match t {
            ShapeType::Group => return self.group(2, None),
            ShapeType::Path => ShapeKind::Path(PathShape {
                direction: dir,
                path: self.shape_prop(),
            }),
            ShapeType::Rect => ShapeKind::Rect(Rect {
                direction: dir,
                position: Some(self.point(-50, 50, false)),
                size: Some(self.point(20, 200, animate)),
                roundness: Some(self.scalar(0, 20, false)),
            }),
            ShapeType::Ellipse => ShapeKind::Ellipse(Ellipse {
                direction: dir,
                position: Some(self.point(-50, 50, false)),
                size: Some(self.point(20, 200, animate)),
            }),
            ShapeType::Star => {
                let polygon = self.chance(0.3);
                ShapeKind::Star(Star {
                    direction: dir,
                    position: Some(self.point(-20, 20, false)),
                    outer_radius: Some(self.scalar(40, 120, animate)),
                    outer_roundness: Some(self.scalar(0, 50, false)),
                    inner_radius: (!polygon).then(|| self.scalar(10, 40, false)),
                    inner_roundness: (!polygon).then(|| self.scalar(0, 50, false)),
                    rotation: Some(self.scalar(0, 90, false)),
                    points: Some(Property::scalar(self.int(3, 8))),
                    star_type: Some(if polygon { 2 } else { 1 }),
                })
            }
            ShapeType::Fill => ShapeKind::Fill(Fill {
                color: {
                    let c = self.color();
                    Some(self.prop(c, animate, |g, _, _| g.unit(255)))
                },
                opacity: Some(self.scalar(50, 100, false)),
                rule: Some(self.rng.gen_range(1..=2)),
            }),
            ShapeType::Stroke => ShapeKind::Stroke(Stroke {
                color: Some(Property::fixed(self.color())),
                opacity: Some(self.scalar(50, 100, false)),
                width: Some(self.scalar(1, 20, animate)),
                cap: Some(self.rng.gen_range(1..=3)),
                join: Some(self.rng.gen_range(1..=3)),
                miter_limit: self.chance(0.5).then_some(4.0),
            }),
            ShapeType::GradientFill => ShapeKind::GradientFill(GradientFill {
                gradient: self.gradient(),
                rule: Some(1),
            }),
            ShapeType::GradientStroke => ShapeKind::GradientStroke(GradientStroke {
                gradient: self.gradient(),
                width: Some(self.scalar(1, 12, false)),
                cap: Some(2),
                join: Some(2),
                miter_limit: None,
            }),
            ShapeType::Transform => ShapeKind::Transform(self.transform(animate)),
            ShapeType::TrimPath => ShapeKind::TrimPath(TrimPath {
                start: Some(self.scalar(0, 40, animate)),
                end: Some(self.scalar(60, 100, animate)),
                offset: Some(self.scalar(0, 90, false)),
                mode: Some(self.rng.gen_range(1..=2)),
            }),
            ShapeType::Repeater => {
                let mut tr = self.transform(false);
                tr.start_opacity = Some(Property::scalar(100.0));
                tr.end_opacity = Some(self.scalar(20, 100, false));
                ShapeKind::Repeater(Repeater {
                    copies: Some(self.scalar(2, 6, false)),
                    offset: Some(Property::scalar(0.0)),
                    composite: Some(1),
                    transform: tr,
                })
            }
            ShapeType::MergePaths => ShapeKind::MergePaths(MergePaths {
                mode: Some(self.rng.gen_range(1..=5)),
            }),
            ShapeType::RoundedCorners => ShapeKind::RoundedCorners(RoundedCorners {
                radius: Some(self.scalar(1, 30, animate)),
            }),
            ShapeType::ZigZag => ShapeKind::ZigZag(ZigZag {
                frequency: Some(self.scalar(1, 10, false)),
                amplitude: Some(self.scalar(1, 20, animate)),
                point_type: Some(Property::scalar(self.int(1, 2))),
            }),
        };
        let mut n = ShapeNode::new(kind);
        n.name = self.name(t.code());
        n
    }

    fn mask(&mut self) -> Mask {
        let modes = [MaskMode::Add, MaskMode::Subtract, MaskMode::Intersect];
        Mask {
            name: self.name("mask"),
            mode: Some(*modes.choose(&mut self.rng).unwrap()),
            inverted: Some(self.chance(0.2)),
            path: self.shape_prop(),
            opacity: Some(self.scalar(50, 100, false)),
            expansion: Some(self.scalar(-10, 10, false)),
            extras: Extras::new(),
        }
    }

    fn effect(&mut self) -> Effect {
        let kinds: Vec<EffectParamKind> = EffectParamKind::ALL.into_iter().filter(|_| self.chance(0.6)).collect();
        let params = kinds
            .into_iter()
            .map(|kind| {
                let value = match kind {
                    EffectParamKind::Slider => {
                        let animate = self.chance(0.3);
                        self.scalar(-100, 100, animate)
                    }
                    EffectParamKind::Angle => self.scalar(-180, 180, false),
                    EffectParamKind::Color => {
                        let mut c = self.color();
                        c.push(1.0);
                        Property::fixed(c)
                    }
                    EffectParamKind::Point => self.point(0, 512, false),
                    EffectParamKind::Checkbox => Property::scalar(self.int(0, 1)),
                    EffectParamKind::Dropdown => Property::scalar(self.int(1, 4)),
                    EffectParamKind::LayerRef => Property::scalar(1.0),
                };
                EffectParam {
                    kind,
                    name: Some(format!("{kind:?}")),
                    match_name: None,
                    value,
                    extras: Extras::new(),
                }
            })
            .collect();
        Effect {
            kind: 5,
            name: Some("Controls".into()),
            match_name: Some("ADBE Slider Control".into()),
            enabled: Some(true),
            params,
            extras: Extras::new(),
        }
    }

    fn text(&mut self) -> TextData {
        let n = if self.chance(0.3) { 2 } else { 1 };
        let documents = (0..n)
            .map(|i| TextDocumentKeyframe {
                time: if i == 0 { 0.0 } else { self.time(10.0, 50.0) },
                document: TextDocument {
                    font: FONTS.choose(&mut self.rng).unwrap().to_string(),
                    size: self.int(12, 96),
                    text: WORDS.choose(&mut self.rng).unwrap().to_string(),
                    justify: Some(self.rng.gen_range(0..=2)),
                    tracking: Some(self.int(0, 20)),
                    leading: Some(self.int(12, 120)),
                    fill_color: Some(self.color()),
                    stroke_color: self.chance(0.3).then(|| self.color()),
                    stroke_width: self.chance(0.3).then(|| self.int(1, 4)),
                    extras: Extras::new(),
                },
                extras: Extras::new(),
            })
            .collect();
        let animators = if self.chance(0.4) {
            vec![TextAnimator {
                name: Some("Animator 1".into()),
                selector: TextSelector {
                    start: Some(self.scalar(0, 50, true)),
                    end: Some(Property::scalar(100.0)),
                    offset: Some(Property::scalar(0.0)),
                    basis: Some(1),
                    extras: Extras::new(),
                },
                style: TextStyle {
                    position: Some(self.point(-20, 20, false)),
                    opacity: Some(self.scalar(0, 100, false)),
                    fill_color: self.chance(0.5).then(|| Property::fixed(self.color())),
                    ..TextStyle::default()
                },
                extras: Extras::new(),
            }]
        } else {
            Vec::new()
        };
        TextData {
            documents,
            document_extras: Extras::new(),
            animators,
            extras: Extras::new(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn deterministic() {
        assert_eq!(serialize_lottie(&generate(9)), serialize_lottie(&generate(9)));
        assert_ne!(serialize_lottie(&generate(9)), serialize_lottie(&generate(10)));
    }

    #[test]
    fn generated_files_reparse_and_lint_clean() {
        for i in 0..60 {
            let a = corpus_file(i);
            let text = serialize_lottie(&a);
            assert_eq!(parse_lottie(&text).unwrap(), a, "file {i}");
            let diags = crate::lint::lint(&a);
            assert!(diags.is_empty(), "file {i}: {diags:?}");
        }
    }

    #[test]
    fn fifteen_files_cover_every_kind() {
        let mut layers = HashSet::new();
        let mut shapes = HashSet::new();
        fn walk(items: &[ShapeNode], out: &mut HashSet<ShapeType>) {
            for n in items {
                out.insert(n.kind.shape_type());
                if let ShapeKind::Group(g) = &n.kind {
                    walk(&g.items, out);
                }
            }
        }
        for i in 0..15 {
            for l in corpus_file(i).all_layers() {
                layers.insert(l.kind());
                if let Some(s) = l.shapes() {
                    walk(s, &mut shapes);
                }
            }
        }
        assert_eq!(layers.len(), 5);
        assert_eq!(shapes.len(), ShapeType::ALL.len());
    }
}
