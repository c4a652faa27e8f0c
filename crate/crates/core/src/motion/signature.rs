//! Trajectory summaries of transform channels.

use std::fmt;

use crate::model::*;
use crate::pipeline::FIT_LAYER_NAME;

/// Samples per channel trajectory.
pub const SAMPLES: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Channel {
    Rotation,
    Scale,
    PositionX,
    PositionY,
    Opacity,
}

impl Channel {
    pub const ALL: [Channel; 5] = [
        Channel::Rotation,
        Channel::Scale,
        Channel::PositionX,
        Channel::PositionY,
        Channel::Opacity,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Channel::Rotation => "rotation",
            Channel::Scale => "scale",
            Channel::PositionX => "position-x",
            Channel::PositionY => "position-y",
            Channel::Opacity => "opacity",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Channel::ALL.into_iter().find(|c| c.name() == s)
    }

    /// Magnitude that maps to 1.0 in normalized units. Position uses the canvas.
    pub fn unit(self, canvas: f64) -> f64 {
        match self {
            Channel::Rotation => 360.0,
            Channel::Scale | Channel::Opacity => 100.0,
            Channel::PositionX | Channel::PositionY => canvas,
        }
    }
}

impl fmt::Display for Channel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Monotonicity {
    Constant,
    Increasing,
    Decreasing,
    Mixed,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChannelSummary {
    /// Change from the first to the last sample, in channel units.
    pub delta: f64,
    /// Sign of `delta`: -1, 0 or 1.
    pub direction: i8,
    pub monotonicity: Monotonicity,
    pub keyframes: usize,
    /// First sample divided by the channel unit.
    pub initial: f64,
    /// Samples minus the first sample, divided by the channel unit.
    pub samples: Vec<f64>,
}

/// Per-channel summaries; `None` marks a static or absent channel.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct MotionSignature {
    pub channels: [Option<ChannelSummary>; 5],
}

impl MotionSignature {
    pub fn channel(&self, c: Channel) -> Option<&ChannelSummary> {
        self.channels[c.index()].as_ref()
    }

    pub fn is_static(&self) -> bool {
        self.channels.iter().all(Option::is_none)
    }

    /// Channels that actually move.
    pub fn active(&self) -> Vec<Channel> {
        Channel::ALL
            .into_iter()
            .filter(|c| self.channel(*c).is_some_and(|s| s.monotonicity != Monotonicity::Constant))
            .collect()
    }

    /// Readable description such as `fade-in + upward motion`.
    pub fn label(&self) -> String {
        let parts: Vec<&str> = Channel::ALL
            .into_iter()
            .filter_map(|c| {
                let s = self.channel(c)?;
                let up = s.direction > 0;
                Some(match (c, s.direction) {
                    (_, 0) => return None,
                    (Channel::Opacity, _) => if up { "fade-in" } else { "fade-out" },
                    (Channel::PositionY, _) => if up { "downward motion" } else { "upward motion" },
                    (Channel::PositionX, _) => if up { "rightward motion" } else { "leftward motion" },
                    (Channel::Scale, _) => if up { "scale-up" } else { "scale-down" },
                    (Channel::Rotation, _) => if up { "clockwise rotation" } else { "counter-clockwise rotation" },
                })
            })
            .collect();
        if parts.is_empty() {
            "static".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// Value of an animated property at local time `t` for component `axis`.
pub fn sample_property(p: &Property, t: f64, axis: usize) -> Option<f64> {
    let kfs = match &p.value {
        PropValue::Static(v) => return v.get(axis).or(v.first()).copied(),
        PropValue::Keyframed(k) => k,
    };
    let comp = |v: &Option<Vec<f64>>| v.as_ref().and_then(|v| v.get(axis).or(v.first()).copied());
    let first = kfs.first()?;
    if t <= first.time {
        return comp(&first.start);
    }
    for (i, k) in kfs.iter().enumerate() {
        let Some(next) = kfs.get(i + 1) else {
            return comp(&k.start).or_else(|| comp(&kfs.get(i.wrapping_sub(1))?.end));
        };
        if t >= next.time {
            continue;
        }
        let a = comp(&k.start)?;
        if k.is_hold() {
            return Some(a);
        }
        let b = comp(&k.end).or_else(|| comp(&next.start))?;
        let u = (t - k.time) / (next.time - k.time);
        let y = match (&k.ease_out, &k.ease_in) {
            (Some(o), Some(i)) => ease(o.x.axis(axis), o.y.axis(axis), i.x.axis(axis), i.y.axis(axis), u),
            _ => u,
        };
        return Some(a + (b - a) * y);
    }
    None
}

/// Cubic bezier easing through (0,0), (x1,y1), (x2,y2), (1,1) at progress `u`.
pub fn ease(x1: f64, y1: f64, x2: f64, y2: f64, u: f64) -> f64 {
    let bez = |p1: f64, p2: f64, s: f64| {
        let m = 1.0 - s;
        3.0 * m * m * s * p1 + 3.0 * m * s * s * p2 + s * s * s
    };
    let (x1, x2) = (x1.clamp(0.0, 1.0), x2.clamp(0.0, 1.0));
    let (mut lo, mut hi) = (0.0, 1.0);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if bez(x1, x2, mid) < u {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    bez(y1, y2, 0.5 * (lo + hi))
}

fn channel_property(t: &Transform, c: Channel) -> Option<(&Property, usize)> {
    match c {
        Channel::Rotation => t.rotation.as_ref().map(|p| (p, 0)),
        Channel::Opacity => t.opacity.as_ref().map(|p| (p, 0)),
        Channel::Scale => t.scale.as_ref().map(|p| (p, 0)),
        Channel::PositionX | Channel::PositionY => {
            let axis = (c == Channel::PositionY) as usize;
            match t.position.as_ref()? {
                Position::Combined(p) => Some((p, axis)),
                Position::Split(s) => Some((if axis == 0 { &s.x } else { &s.y }, 0)),
            }
        }
    }
}

/// Root layers in the order signatures look at them: the canvas-fit null
/// first, then the rest in document order.
pub(crate) fn root_layers(a: &Animation) -> Vec<&Layer> {
    let fit = a.layers.iter().find(|l| l.name.as_deref() == Some(FIT_LAYER_NAME));
    let fit_index = fit.and_then(|l| l.index);
    let others = a
        .layers
        .iter()
        .filter(|l| l.name.as_deref() != Some(FIT_LAYER_NAME))
        .filter(|l| l.parent.is_none() || l.parent == fit_index);
    fit.into_iter().chain(others).collect()
}

/// Static scale of the canvas-fit layer as factors.
fn fit_scale(a: &Animation) -> Option<[f64; 2]> {
    let fit = a.layers.iter().find(|l| l.name.as_deref() == Some(FIT_LAYER_NAME))?;
    match fit.transform.scale.as_ref().and_then(|p| p.static_value()) {
        Some([x, y, ..]) => Some([x / 100.0, y / 100.0]),
        Some([x]) => Some([x / 100.0; 2]),
        _ => Some([1.0, 1.0]),
    }
}

/// Summarizes each channel from the first root layer where it is animated.
pub fn extract_signature(a: &Animation) -> MotionSignature {
    let mut sig = MotionSignature::default();
    let canvas = a.width.max(a.height).max(1.0);
    for c in Channel::ALL {
        let found = root_layers(a).into_iter().find_map(|l| {
            let (p, axis) = channel_property(&l.transform, c)?;
            p.is_animated().then_some((l, p, axis))
        });
        let Some((layer, p, axis)) = found else { continue };
        // Positions under the fit layer are in its scaled space.
        let screen = match fit_scale(a) {
            Some(s) if matches!(c, Channel::PositionX | Channel::PositionY) && layer.parent.is_some() => s[axis],
            _ => 1.0,
        };
        let values: Vec<f64> = (0..SAMPLES)
            .map(|j| {
                let t = a.in_point + (a.out_point - a.in_point) * j as f64 / (SAMPLES - 1) as f64;
                let local = (t - layer.start_time()) / layer.stretch();
                let v = sample_property(p, local, axis).unwrap_or(0.0);
                if c == Channel::Scale {
                    0.5 * (v + sample_property(p, local, 1).unwrap_or(v))
                } else {
                    v * screen
                }
            })
            .collect();
        sig.channels[c.index()] = Some(summarize(&values, p.keyframes().len(), c.unit(canvas)));
    }
    sig
}

fn summarize(values: &[f64], keyframes: usize, unit: f64) -> ChannelSummary {
    let first = values[0];
    let last = *values.last().unwrap();
    let span = values.iter().fold(0f64, |m, v| m.max((v - first).abs()));
    let eps = 1e-9 * span.max(1.0);
    let delta = last - first;
    let diffs: Vec<f64> = values.windows(2).map(|w| w[1] - w[0]).collect();
    let monotonicity = if span <= eps {
        Monotonicity::Constant
    } else if diffs.iter().all(|d| *d >= -eps) {
        Monotonicity::Increasing
    } else if diffs.iter().all(|d| *d <= eps) {
        Monotonicity::Decreasing
    } else {
        Monotonicity::Mixed
    };
    ChannelSummary {
        delta,
        direction: if delta.abs() <= eps { 0 } else { delta.signum() as i8 },
        monotonicity,
        keyframes,
        initial: first / unit,
        samples: values.iter().map(|v| (v - first) / unit).collect(),
    }
}
