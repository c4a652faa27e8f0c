//! Canvas and timeline normalization.

use crate::model::*;

/// Name of the null layer that carries the canvas fit.
pub const FIT_LAYER_NAME: &str = "__canvas_fit";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalizeConfig {
    /// Output canvas side in pixels.
    pub canvas: u32,
    /// Length of the output timeline in frames.
    pub time_range_max: f64,
}

impl Default for NormalizeConfig {
    fn default() -> Self {
        NormalizeConfig {
            canvas: 512,
            time_range_max: 60.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NormalizeError {
    #[error("animation has zero duration (ip == op)")]
    DegenerateDuration,
    #[error("invalid normalization config: {0}")]
    InvalidConfig(&'static str),
    #[error("animation has a non-positive canvas")]
    EmptyCanvas,
}

impl NormalizeConfig {
    fn check(&self) -> Result<(), NormalizeError> {
        if self.canvas == 0 {
            return Err(NormalizeError::InvalidConfig("canvas must be positive"));
        }
        if !(self.time_range_max > 0.0 && self.time_range_max.is_finite()) {
            return Err(NormalizeError::InvalidConfig("time range must be positive"));
        }
        Ok(())
    }
}

/// Temporal then spatial normalization.
pub fn normalize(a: &Animation, cfg: &NormalizeConfig) -> Result<Animation, NormalizeError> {
    normalize_spatial(&normalize_temporal(a, cfg)?, cfg)
}

/// The fit scale and offset for a `w`×`h` canvas shown on a `canvas` square.
pub fn fit(width: f64, height: f64, canvas: f64) -> (f64, [f64; 2]) {
    let r = (canvas / width).min(canvas / height);
    (r, [(canvas - width * r) / 2.0, (canvas - height * r) / 2.0])
}

/// Scales and centers the content on a square canvas by parenting every
/// root layer to one null layer. Inner coordinates are left untouched.
pub fn normalize_spatial(a: &Animation, cfg: &NormalizeConfig) -> Result<Animation, NormalizeError> {
    cfg.check()?;
    if !(a.width > 0.0 && a.height > 0.0) {
        return Err(NormalizeError::EmptyCanvas);
    }
    let canvas = cfg.canvas as f64;
    let (r, off) = fit(a.width, a.height, canvas);
    let mut out = a.clone();
    out.width = canvas;
    out.height = canvas;

    if let Some(fit_layer) = out.layers.iter_mut().find(|l| is_fit_layer(l)) {
        let t = &mut fit_layer.transform;
        if let Some(Position::Combined(p)) = &mut t.position {
            map_static(p, |i, v| if i < 2 { off[i] + r * v } else { v });
        }
        if let Some(s) = &mut t.scale {
            map_static(s, |i, v| if i < 2 { r * v } else { v });
        }
        return Ok(out);
    }

    let index = out.layers.iter().filter_map(|l| l.index).max().unwrap_or(0) + 1;
    for l in &mut out.layers {
        if l.parent.is_none() {
            l.parent = Some(index);
        }
    }
    let mut fit_layer = Layer::new(LayerPayload::Null, index, out.in_point, out.out_point);
    fit_layer.name = Some(FIT_LAYER_NAME.to_string());
    fit_layer.start_time = Some(0.0);
    fit_layer.transform = Transform {
        anchor: Some(Property::fixed(vec![0.0, 0.0])),
        position: Some(Position::Combined(Property::fixed(off.to_vec()))),
        scale: Some(Property::fixed(vec![100.0 * r, 100.0 * r])),
        ..Transform::default()
    };
    out.layers.push(fit_layer);
    Ok(out)
}

fn is_fit_layer(l: &Layer) -> bool {
    l.kind() == LayerKind::Null && l.name.as_deref() == Some(FIT_LAYER_NAME) && l.parent.is_none()
}

fn map_static(p: &mut Property, f: impl Fn(usize, f64) -> f64) {
    match &mut p.value {
        PropValue::Static(v) => v.iter_mut().enumerate().for_each(|(i, x)| *x = f(i, *x)),
        PropValue::Keyframed(kfs) => {
            for k in kfs {
                for v in [&mut k.start, &mut k.end].into_iter().flatten() {
                    v.iter_mut().enumerate().for_each(|(i, x)| *x = f(i, *x));
                }
            }
        }
    }
}

/// Maps the timeline `[ip, op]` linearly onto `[0, time_range_max]`.
///
/// Layer in/out points are clamped to the new timeline; the frame rate is
/// kept. Markers are left as they are.
pub fn normalize_temporal(a: &Animation, cfg: &NormalizeConfig) -> Result<Animation, NormalizeError> {
    cfg.check()?;
    let duration = a.out_point - a.in_point;
    if duration == 0.0 {
        return Err(NormalizeError::DegenerateDuration);
    }
    let range = cfg.time_range_max;
    let factor = range / duration;
    let mut out = a.clone();
    let origin = a.in_point;
    for l in &mut out.layers {
        rescale_layer(l, factor, origin);
        l.in_point = l.in_point.clamp(0.0, range);
        l.out_point = l.out_point.clamp(0.0, range);
    }
    for asset in &mut out.assets {
        for l in &mut asset.layers {
            rescale_layer(l, factor, 0.0);
        }
    }
    out.in_point = 0.0;
    out.out_point = range;
    Ok(out)
}

/// Rescales one layer's times about `origin` in its container's timeline.
fn rescale_layer(l: &mut Layer, factor: f64, origin: f64) {
    let map = |t: f64| if factor == 1.0 && origin == 0.0 { t } else { factor * (t - origin) };
    l.in_point = map(l.in_point);
    l.out_point = map(l.out_point);
    let st = l.start_time();
    let sr = l.stretch();
    let is_precomp = l.kind() == LayerKind::Precomp;
    // Keyframe times are layer-local: global = k * sr + st.
    let (new_st, local): (f64, Box<dyn Fn(f64) -> f64>) = if is_precomp || st >= origin {
        (map(st), Box::new(move |k: f64| if factor == 1.0 { k } else { factor * k }))
    } else {
        // A layer starting before the container would get a negative start;
        // pin it to zero and shift its keyframes instead.
        (0.0, Box::new(move |k: f64| factor * (k * sr + st - origin) / sr))
    };
    if l.start_time.is_some() || new_st != 0.0 {
        l.start_time = Some(new_st);
    }
    if let LayerPayload::Precomp(p) = &mut l.payload {
        if let Some(tm) = &mut p.time_remap {
            // Remap values are inner-composition seconds, which scale too.
            map_static(tm, |_, v| factor * v);
        }
    }
    let mut tracks = LayerTracks::of(l);
    tracks.for_each_time(|t| *t = local(*t));
}
