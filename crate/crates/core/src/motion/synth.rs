//! Keyframe synthesis onto static animations.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::signature::{Channel, MotionSignature};
use super::template::MotionTemplate;
use crate::model::*;
use crate::pipeline::FIT_LAYER_NAME;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MotionError {
    #[error("root layer {0} already has a keyframed transform")]
    AlreadyAnimated(String),
    #[error("animation has no root layers to animate")]
    NoRootLayers,
    #[error("invalid motion parameters: {0}")]
    InvalidParams(String),
}

/// The seven synthetic motion families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasicMotion {
    MoveH,
    MoveV,
    Zoom,
    Rotate,
    Fade,
    Combined2,
    Combined3,
}

impl BasicMotion {
    pub const ALL: [BasicMotion; 7] = [
        BasicMotion::MoveH,
        BasicMotion::MoveV,
        BasicMotion::Zoom,
        BasicMotion::Rotate,
        BasicMotion::Fade,
        BasicMotion::Combined2,
        BasicMotion::Combined3,
    ];

    const SINGLE: [BasicMotion; 5] = [
        BasicMotion::MoveH,
        BasicMotion::MoveV,
        BasicMotion::Zoom,
        BasicMotion::Rotate,
        BasicMotion::Fade,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BasicMotion::MoveH => "move-h",
            BasicMotion::MoveV => "move-v",
            BasicMotion::Zoom => "zoom",
            BasicMotion::Rotate => "rotate",
            BasicMotion::Fade => "fade",
            BasicMotion::Combined2 => "combined2",
            BasicMotion::Combined3 => "combined3",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        BasicMotion::ALL.into_iter().find(|k| k.name() == s)
    }
}

impl std::fmt::Display for BasicMotion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Which basic family a signature belongs to; `None` for a static file.
pub fn classify(sig: &MotionSignature) -> Option<BasicMotion> {
    let active = sig.active();
    match active.as_slice() {
        [] => None,
        [Channel::PositionX] => Some(BasicMotion::MoveH),
        [Channel::PositionY] => Some(BasicMotion::MoveV),
        [Channel::Scale] => Some(BasicMotion::Zoom),
        [Channel::Rotation] => Some(BasicMotion::Rotate),
        [Channel::Opacity] => Some(BasicMotion::Fade),
        [_, _] => Some(BasicMotion::Combined2),
        _ => Some(BasicMotion::Combined3),
    }
}

/// One concrete transform change, applied over the motion duration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Motion {
    /// Screen-space offset in canvas pixels.
    Translate { dx: f64, dy: f64 },
    /// Final scale as a multiple of the initial one.
    Scale { factor: f64 },
    /// Degrees, positive is clockwise.
    Rotate { degrees: f64 },
    Fade { fade_in: bool },
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SynthParams {
    pub seed: u64,
    /// Motion length in frames; the whole timeline when `None`.
    pub duration: Option<f64>,
}

/// Draws parameters for `kind` from `seed` and applies them.
pub fn synth_basic_motion(a: &Animation, kind: BasicMotion, params: &SynthParams) -> Result<Animation, MotionError> {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let kinds: Vec<BasicMotion> = match kind {
        BasicMotion::Combined2 | BasicMotion::Combined3 => {
            let n = if kind == BasicMotion::Combined2 { 2 } else { 3 };
            let mut pool = BasicMotion::SINGLE.to_vec();
            let mut picked = Vec::new();
            for _ in 0..n {
                picked.push(pool.remove(rng.gen_range(0..pool.len())));
            }
            picked
        }
        k => vec![k],
    };
    let side = a.width.min(a.height);
    let motions: Vec<Motion> = kinds
        .into_iter()
        .map(|k| {
            let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            match k {
                BasicMotion::MoveH => Motion::Translate {
                    dx: sign * rng.gen_range(0.15..=0.4) * side,
                    dy: 0.0,
                },
                BasicMotion::MoveV => Motion::Translate {
                    dx: 0.0,
                    dy: sign * rng.gen_range(0.15..=0.4) * side,
                },
                BasicMotion::Zoom => Motion::Scale {
                    factor: if sign > 0.0 { rng.gen_range(1.25..=2.0) } else { rng.gen_range(0.5..=0.8) },
                },
                BasicMotion::Rotate => Motion::Rotate {
                    degrees: sign * [90.0, 180.0, 360.0][rng.gen_range(0..3)],
                },
                _ => Motion::Fade { fade_in: sign > 0.0 },
            }
        })
        .collect();
    apply_motions(a, &motions, params.duration)
}

/// Adds linear keyframes for `motions` to every root layer. Rotation and
/// scale pivot on the canvas centre.
pub fn apply_motions(a: &Animation, motions: &[Motion], duration: Option<f64>) -> Result<Animation, MotionError> {
    let duration = duration.unwrap_or(a.out_point - a.in_point);
    if !(duration > 0.0 && duration.is_finite()) {
        return Err(MotionError::InvalidParams(format!("duration {duration}")));
    }
    let mut out = a.clone();
    let ctx = RootContext::of(&out)?;
    for &i in &ctx.roots {
        let mut t0 = Transform::default();
        std::mem::swap(&mut t0, &mut out.layers[i].transform);
        let l = &out.layers[i];
        let local = |t: f64| (t - l.start_time()) / l.stretch();
        let (k0, k1) = (local(out.in_point), local(out.in_point + duration));
        let mut t = t0;
        let pivot = motions.iter().any(|m| matches!(m, Motion::Scale { .. } | Motion::Rotate { .. }));
        if pivot {
            recentre(&mut t, ctx.canvas_centre);
        }
        for m in motions {
            match *m {
                Motion::Translate { dx, dy } => {
                    let d = ctx.to_parent_delta([dx, dy]);
                    animate_position(&mut t, k0, k1, |p| [p[0] + d[0], p[1] + d[1]]);
                }
                Motion::Scale { factor } => {
                    let s = t.scale.as_ref().and_then(|p| p.static_value()).map(|v| v.to_vec());
                    let s = s.unwrap_or_else(|| vec![100.0, 100.0]);
                    let end: Vec<f64> = s.iter().enumerate().map(|(i, v)| if i < 2 { v * factor } else { *v }).collect();
                    t.scale = Some(with_extras(linear(k0, k1, s, end), t.scale.as_ref()));
                }
                Motion::Rotate { degrees } => {
                    let r = static_scalar(t.rotation.as_ref(), 0.0);
                    t.rotation = Some(with_extras(linear(k0, k1, vec![r], vec![r + degrees]), t.rotation.as_ref()));
                }
                Motion::Fade { fade_in } => {
                    let o = static_scalar(t.opacity.as_ref(), 100.0);
                    let (from, to) = if fade_in { (0.0, o) } else { (o, 0.0) };
                    t.opacity = Some(with_extras(linear(k0, k1, vec![from], vec![to]), t.opacity.as_ref()));
                }
            }
        }
        out.layers[i].transform = t;
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InjectParams {
    /// Motion length in frames; the whole timeline when `None`.
    pub duration: Option<f64>,
    /// Multiplier on template magnitudes; 0 leaves values unchanged.
    pub magnitude: f64,
    /// Jitters non-opacity magnitudes by up to 10%.
    pub seed: Option<u64>,
}

impl Default for InjectParams {
    fn default() -> Self {
        InjectParams {
            duration: None,
            magnitude: 1.0,
            seed: None,
        }
    }
}

/// Instantiates a template's channel patterns on every root layer.
///
/// Opacity patterns are absolute (fraction of the layer's own opacity);
/// the other channels are offsets in channel units.
pub fn inject_motion(a: &Animation, tmpl: &MotionTemplate, params: &InjectParams) -> Result<Animation, MotionError> {
    let duration = params.duration.unwrap_or(a.out_point - a.in_point);
    if !(duration > 0.0 && duration.is_finite()) {
        return Err(MotionError::InvalidParams(format!("duration {duration}")));
    }
    if !params.magnitude.is_finite() || params.magnitude < 0.0 {
        return Err(MotionError::InvalidParams(format!("magnitude {}", params.magnitude)));
    }
    let jitter = match params.seed {
        Some(seed) => ChaCha8Rng::seed_from_u64(seed).gen_range(0.9..=1.1),
        None => 1.0,
    };
    let mag = params.magnitude * jitter;
    let mut out = a.clone();
    let ctx = RootContext::of(&out)?;
    let canvas = a.width.max(a.height);
    for &i in &ctx.roots {
        let l = &out.layers[i];
        let local = |u: f64| (out.in_point + u * duration - l.start_time()) / l.stretch();
        let mut t = l.transform.clone();
        let at = |pattern: &[(f64, f64)], f: &dyn Fn(f64) -> Vec<f64>| {
            let kfs: Vec<_> = pattern.iter().map(|(u, m)| (local(*u), f(*m))).collect();
            keyframes(kfs)
        };
        let pivot = tmpl.channels.iter().any(|(c, _)| matches!(c, Channel::Scale | Channel::Rotation));
        if pivot {
            recentre(&mut t, ctx.canvas_centre);
        }
        for (c, pattern) in &tmpl.channels {
            match c {
                Channel::Opacity => {
                    let o = static_scalar(t.opacity.as_ref(), 100.0);
                    let m = params.magnitude.min(1.0);
                    t.opacity = Some(at(pattern, &|v| vec![o * (1.0 - m + m * v)]));
                }
                Channel::Rotation => {
                    let r = static_scalar(t.rotation.as_ref(), 0.0);
                    t.rotation = Some(at(pattern, &|v| vec![r + mag * v * 360.0]));
                }
                Channel::Scale => {
                    let s = t.scale.as_ref().and_then(|p| p.static_value()).map(|v| v.to_vec());
                    let s = s.unwrap_or_else(|| vec![100.0, 100.0]);
                    t.scale = Some(at(pattern, &|v| {
                        s.iter().enumerate().map(|(i, x)| if i < 2 { x * (1.0 + mag * v) } else { *x }).collect()
                    }));
                }
                Channel::PositionX | Channel::PositionY => {
                    let axis = (*c == Channel::PositionY) as usize;
                    let p = static_position(&t);
                    let prop = at(pattern, &|v| {
                        let mut d = [0.0; 2];
                        d[axis] = mag * v * canvas;
                        let d = ctx.to_parent_delta(d);
                        vec![p[0] + d[0], p[1] + d[1]]
                    });
                    merge_position(&mut t, prop, axis);
                }
            }
        }
        out.layers[i].transform = t;
    }
    Ok(out)
}

/// Root layers to animate, with the parent-space geometry they share.
struct RootContext {
    roots: Vec<usize>,
    canvas_centre: [f64; 2],
    /// Rotation (degrees) and scale (percent) of the fit layer, if any.
    parent_rs: Option<(f64, [f64; 2])>,
}

impl RootContext {
    fn of(a: &Animation) -> Result<Self, MotionError> {
        let fit = a
            .layers
            .iter()
            .position(|l| l.name.as_deref() == Some(FIT_LAYER_NAME) && l.parent.is_none());
        let fit_index = fit.and_then(|i| a.layers[i].index);
        let roots: Vec<usize> = (0..a.layers.len())
            .filter(|&i| Some(i) != fit)
            .filter(|&i| a.layers[i].parent.is_none() || a.layers[i].parent == fit_index)
            .collect();
        if roots.is_empty() {
            return Err(MotionError::NoRootLayers);
        }
        let animated = |t: &Transform| {
            let pos = match &t.position {
                Some(Position::Combined(p)) => p.is_animated(),
                Some(Position::Split(s)) => s.x.is_animated() || s.y.is_animated(),
                None => false,
            };
            pos || [&t.anchor, &t.scale, &t.rotation, &t.opacity]
                .into_iter()
                .any(|p| p.as_ref().is_some_and(Property::is_animated))
        };
        for i in roots.iter().copied().chain(fit) {
            if animated(&a.layers[i].transform) {
                let l = &a.layers[i];
                return Err(MotionError::AlreadyAnimated(
                    l.name.clone().or(l.index.map(|n| n.to_string())).unwrap_or_else(|| i.to_string()),
                ));
            }
        }
        let screen_centre = [a.width / 2.0, a.height / 2.0];
        let (canvas_centre, parent_rs) = match fit {
            Some(i) => {
                let t = &a.layers[i].transform;
                let anchor = static_pair(t.anchor.as_ref(), [0.0, 0.0]);
                let pos = static_position(t);
                let r = static_scalar(t.rotation.as_ref(), 0.0);
                let s = static_pair(t.scale.as_ref(), [100.0, 100.0]);
                let d = inverse_rs([screen_centre[0] - pos[0], screen_centre[1] - pos[1]], r, s);
                ([anchor[0] + d[0], anchor[1] + d[1]], Some((r, s)))
            }
            None => (screen_centre, None),
        };
        Ok(RootContext {
            roots,
            canvas_centre,
            parent_rs,
        })
    }

    fn to_parent_delta(&self, d: [f64; 2]) -> [f64; 2] {
        match self.parent_rs {
            Some((r, s)) => inverse_rs(d, r, s),
            None => d,
        }
    }
}

/// Applies (R(r)·S(s))⁻¹ to `v`.
fn inverse_rs(v: [f64; 2], r: f64, s: [f64; 2]) -> [f64; 2] {
    let (sin, cos) = (-r).to_radians().sin_cos();
    let x = cos * v[0] - sin * v[1];
    let y = sin * v[0] + cos * v[1];
    let sx = if s[0] == 0.0 { 1.0 } else { s[0] / 100.0 };
    let sy = if s[1] == 0.0 { 1.0 } else { s[1] / 100.0 };
    [x / sx, y / sy]
}

/// Moves the anchor so that the position sits on `centre` without moving
/// the layer's content.
fn recentre(t: &mut Transform, centre: [f64; 2]) {
    let p = static_position(t);
    let a = static_pair(t.anchor.as_ref(), [0.0, 0.0]);
    let r = static_scalar(t.rotation.as_ref(), 0.0);
    let s = static_pair(t.scale.as_ref(), [100.0, 100.0]);
    let d = inverse_rs([centre[0] - p[0], centre[1] - p[1]], r, s);
    let mut anchor = t.anchor.as_ref().and_then(|p| p.static_value()).map(|v| v.to_vec()).unwrap_or_default();
    anchor.resize(anchor.len().max(2), 0.0);
    anchor[0] = a[0] + d[0];
    anchor[1] = a[1] + d[1];
    t.anchor = Some(with_extras(Property::fixed(anchor), t.anchor.as_ref()));
    set_static_position(t, centre);
}

fn with_extras(mut p: Property, old: Option<&Property>) -> Property {
    if let Some(old) = old {
        p.extras = old.extras.clone();
    }
    p
}

fn static_scalar(p: Option<&Property>, default: f64) -> f64 {
    p.and_then(|p| p.static_value()).and_then(|v| v.first().copied()).unwrap_or(default)
}

fn static_pair(p: Option<&Property>, default: [f64; 2]) -> [f64; 2] {
    match p.and_then(|p| p.static_value()) {
        Some([x, y, ..]) => [*x, *y],
        Some([x]) => [*x, *x],
        _ => default,
    }
}

fn static_position(t: &Transform) -> [f64; 2] {
    match &t.position {
        Some(Position::Combined(p)) => static_pair(Some(p), [0.0, 0.0]),
        Some(Position::Split(s)) => [static_scalar(Some(&s.x), 0.0), static_scalar(Some(&s.y), 0.0)],
        None => [0.0, 0.0],
    }
}

fn set_static_position(t: &mut Transform, p: [f64; 2]) {
    match &mut t.position {
        Some(Position::Combined(prop)) => {
            let mut v = prop.static_value().map(|v| v.to_vec()).unwrap_or_default();
            v.resize(v.len().max(2), 0.0);
            v[0] = p[0];
            v[1] = p[1];
            prop.value = PropValue::Static(v);
        }
        Some(Position::Split(s)) => {
            s.x.value = PropValue::Static(vec![p[0]]);
            s.y.value = PropValue::Static(vec![p[1]]);
        }
        None => t.position = Some(Position::Combined(Property::fixed(p.to_vec()))),
    }
}

fn animate_position(t: &mut Transform, k0: f64, k1: f64, f: impl Fn([f64; 2]) -> [f64; 2]) {
    // Earlier motions may already have keyframed the position; extend them.
    let current = |t: &Transform, axis: usize, key: usize| -> f64 {
        let prop = match &t.position {
            Some(Position::Combined(p)) => Some((p, axis)),
            Some(Position::Split(s)) => Some((if axis == 0 { &s.x } else { &s.y }, 0)),
            None => None,
        };
        prop.and_then(|(p, ax)| match &p.value {
            PropValue::Static(v) => v.get(ax).copied(),
            PropValue::Keyframed(k) => k.get(key)?.start.as_ref()?.get(ax).copied(),
        })
        .unwrap_or(0.0)
    };
    let start = [current(t, 0, 0), current(t, 1, 0)];
    let end = f([current(t, 0, 1), current(t, 1, 1)]);
    match &mut t.position {
        Some(Position::Split(s)) => {
            s.x = with_extras(linear(k0, k1, vec![start[0]], vec![end[0]]), Some(&s.x));
            s.y = with_extras(linear(k0, k1, vec![start[1]], vec![end[1]]), Some(&s.y));
        }
        pos => {
            let old = match pos {
                Some(Position::Combined(p)) => Some(p.clone()),
                _ => None,
            };
            let tail: Vec<f64> = old
                .as_ref()
                .and_then(|p| p.static_value().map(|v| v.iter().skip(2).copied().collect()))
                .unwrap_or_default();
            let mut s = start.to_vec();
            s.extend(&tail);
            let mut e = end.to_vec();
            e.extend(&tail);
            *pos = Some(Position::Combined(with_extras(linear(k0, k1, s, e), old.as_ref())));
        }
    }
}

/// Sets one position axis from `prop` (a two-component track), keeping the
/// other axis as it was.
fn merge_position(t: &mut Transform, prop: Property, axis: usize) {
    match &mut t.position {
        Some(Position::Split(s)) => {
            let one = map_values(&prop, |v| vec![v[axis]]);
            let target = if axis == 0 { &mut s.x } else { &mut s.y };
            *target = with_extras(one, Some(target));
        }
        Some(Position::Combined(p)) if p.is_animated() => {
            // Another axis is already keyframed on the same times.
            let kfs = p.keyframes().to_vec();
            let mut merged = prop.clone();
            if let PropValue::Keyframed(new) = &mut merged.value {
                for (k, old) in new.iter_mut().zip(kfs) {
                    if let (Some(v), Some(o)) = (&mut k.start, &old.start) {
                        v[1 - axis] = o[1 - axis];
                    }
                }
            }
            merged.extras = p.extras.clone();
            *p = merged;
        }
        pos => {
            let old = match pos {
                Some(Position::Combined(p)) => Some(p.clone()),
                _ => None,
            };
            let tail: Vec<f64> = old
                .as_ref()
                .and_then(|p| p.static_value().map(|v| v.iter().skip(2).copied().collect()))
                .unwrap_or_default();
            let full = map_values(&prop, |v| v.iter().chain(&tail).copied().collect());
            *pos = Some(Position::Combined(with_extras(full, old.as_ref())));
        }
    }
}

fn map_values(p: &Property, f: impl Fn(&[f64]) -> Vec<f64>) -> Property {
    let mut out = p.clone();
    if let PropValue::Keyframed(kfs) = &mut out.value {
        for k in kfs {
            if let Some(v) = &mut k.start {
                *v = f(v);
            }
        }
    }
    out
}

fn linear(k0: f64, k1: f64, from: Vec<f64>, to: Vec<f64>) -> Property {
    keyframes(vec![(k0, from), (k1, to)])
}

/// A track of linear segments through the given (time, value) points.
fn keyframes(points: Vec<(f64, Vec<f64>)>) -> Property {
    let n = points.len();
    let kfs = points
        .into_iter()
        .enumerate()
        .map(|(i, (t, v))| {
            let mut k = Keyframe::new(t, v);
            if i + 1 < n {
                k.ease_out = Some(Easing::linear_out());
                k.ease_in = Some(Easing::linear_in());
            }
            k
        })
        .collect();
    Property::keyframed(kfs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::motion::extract_signature;

    fn icon() -> Animation {
        let mut a = Animation::empty("5.7.0", 30.0, 0.0, 60.0, 512.0, 512.0);
        let mut l = Layer::new(LayerPayload::Shape(Vec::new()), 1, 0.0, 60.0);
        l.transform.position = Some(Position::Combined(Property::fixed(vec![100.0, 150.0])));
        l.transform.anchor = Some(Property::fixed(vec![10.0, 20.0]));
        a.layers.push(l);
        a
    }

    /// Maps a point through a layer's static transform: p + R·S·(x − a).
    fn to_parent(t: &Transform, x: [f64; 2]) -> [f64; 2] {
        let p = static_position(t);
        let a = static_pair(t.anchor.as_ref(), [0.0; 2]);
        let r = static_scalar(t.rotation.as_ref(), 0.0).to_radians();
        let s = static_pair(t.scale.as_ref(), [100.0; 2]);
        let (u, v) = ((x[0] - a[0]) * s[0] / 100.0, (x[1] - a[1]) * s[1] / 100.0);
        [p[0] + r.cos() * u - r.sin() * v, p[1] + r.sin() * u + r.cos() * v]
    }

    #[test]
    fn rotate_full_turn() {
        let b = apply_motions(&icon(), &[Motion::Rotate { degrees: 360.0 }], None).unwrap();
        let r = b.layers[0].transform.rotation.as_ref().unwrap().keyframes();
        assert_eq!((r[0].time, r[0].start.as_deref()), (0.0, Some(&[0.0][..])));
        assert_eq!((r[1].time, r[1].start.as_deref()), (60.0, Some(&[360.0][..])));
    }

    #[test]
    fn recentring_keeps_content_in_place() {
        let mut a = icon();
        a.layers[0].transform.scale = Some(Property::fixed(vec![50.0, 80.0]));
        a.layers[0].transform.rotation = Some(Property::scalar(30.0));
        let before = a.layers[0].transform.clone();
        let mut after = before.clone();
        recentre(&mut after, [256.0, 256.0]);
        assert_eq!(static_position(&after), [256.0, 256.0]);
        for x in [[0.0, 0.0], [37.0, -12.0], [400.0, 90.0]] {
            let (p, q) = (to_parent(&before, x), to_parent(&after, x));
            assert!((p[0] - q[0]).abs() < 1e-9 && (p[1] - q[1]).abs() < 1e-9);
        }
    }

    #[test]
    fn fade_out_uses_layer_opacity() {
        let b = apply_motions(&icon(), &[Motion::Fade { fade_in: false }], Some(30.0)).unwrap();
        let o = b.layers[0].transform.opacity.as_ref().unwrap().keyframes();
        assert_eq!(o[0].start.as_deref(), Some(&[100.0][..]));
        assert_eq!((o[1].time, o[1].start.as_deref()), (30.0, Some(&[0.0][..])));
    }

    #[test]
    fn every_kind_classifies_as_itself() {
        for kind in BasicMotion::ALL {
            for seed in 0..20 {
                let b = synth_basic_motion(&icon(), kind, &SynthParams { seed, duration: None }).unwrap();
                assert_eq!(classify(&extract_signature(&b)), Some(kind), "{kind} seed {seed}");
            }
        }
    }

    #[test]
    fn synthesis_is_deterministic_and_keeps_shapes() {
        let p = SynthParams { seed: 7, duration: None };
        let a = synth_basic_motion(&icon(), BasicMotion::Combined3, &p).unwrap();
        let b = synth_basic_motion(&icon(), BasicMotion::Combined3, &p).unwrap();
        assert_eq!(serialize_lottie(&a), serialize_lottie(&b));
        assert_eq!(a.layers[0].payload, icon().layers[0].payload);
    }

    #[test]
    fn animated_input_is_rejected() {
        let a = apply_motions(&icon(), &[Motion::Fade { fade_in: true }], None).unwrap();
        assert!(matches!(
            synth_basic_motion(&a, BasicMotion::Zoom, &SynthParams::default()),
            Err(MotionError::AlreadyAnimated(_))
        ));
    }

    #[test]
    fn translation_goes_through_fit_parent() {
        let cfg = crate::pipeline::NormalizeConfig::default();
        let mut wide = icon();
        wide.width = 1024.0;
        wide.height = 512.0;
        let n = crate::pipeline::normalize(&wide, &cfg).unwrap();
        let b = apply_motions(&n, &[Motion::Translate { dx: 100.0, dy: 0.0 }], None).unwrap();
        let Some(Position::Combined(p)) = &b.layers[0].transform.position else { panic!() };
        let k = p.keyframes();
        // The fit scale is 0.5, so 100 screen pixels are 200 parent pixels.
        assert!((k[1].start.as_ref().unwrap()[0] - k[0].start.as_ref().unwrap()[0] - 200.0).abs() < 1e-9);
    }

    #[test]
    fn signature_reads_translation_in_screen_pixels() {
        let mut wide = icon();
        wide.width = 1024.0;
        wide.height = 512.0;
        let n = crate::pipeline::normalize(&wide, &crate::pipeline::NormalizeConfig::default()).unwrap();
        let b = apply_motions(&n, &[Motion::Translate { dx: 100.0, dy: 0.0 }], None).unwrap();
        let sig = crate::motion::signature::extract_signature(&b);
        assert!((sig.channel(Channel::PositionX).unwrap().delta - 100.0).abs() < 1e-9);
    }
}
