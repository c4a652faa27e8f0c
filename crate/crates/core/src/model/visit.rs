//! Mutable traversal over every animatable property of a layer.

use super::*;

/// Mutable handles to every track of one layer, excluding nested assets.
#[derive(Default)]
pub struct LayerTracks<'a> {
    pub props: Vec<&'a mut Property>,
    pub paths: Vec<&'a mut ShapeProperty>,
    pub text_documents: Vec<&'a mut TextDocumentKeyframe>,
    /// The precomp time remap curve, kept apart because its values are times too.
    pub time_remap: Option<&'a mut Property>,
}

impl<'a> LayerTracks<'a> {
    pub fn of(layer: &'a mut Layer) -> Self {
        let mut out = LayerTracks::default();
        transform(&mut layer.transform, &mut out.props);
        for m in &mut layer.masks {
            out.paths.push(&mut m.path);
            opt(&mut m.opacity, &mut out.props);
            opt(&mut m.expansion, &mut out.props);
        }
        for e in &mut layer.effects {
            for p in &mut e.params {
                out.props.push(&mut p.value);
            }
        }
        match &mut layer.payload {
            LayerPayload::Precomp(p) => out.time_remap = p.time_remap.as_mut(),
            LayerPayload::Solid(_) | LayerPayload::Null => {}
            LayerPayload::Shape(shapes) => shape_list(shapes, &mut out),
            LayerPayload::Text(t) => {
                out.text_documents.extend(t.documents.iter_mut());
                for a in &mut t.animators {
                    let s = &mut a.selector;
                    opt(&mut s.start, &mut out.props);
                    opt(&mut s.end, &mut out.props);
                    opt(&mut s.offset, &mut out.props);
                    let y = &mut a.style;
                    for p in [
                        &mut y.position,
                        &mut y.rotation,
                        &mut y.scale,
                        &mut y.fill_color,
                        &mut y.stroke_color,
                        &mut y.opacity,
                        &mut y.tracking,
                    ] {
                        opt(p, &mut out.props);
                    }
                }
            }
        }
        out
    }

    /// Applies `f` to every keyframe time, including the time remap's.
    pub fn for_each_time(&mut self, mut f: impl FnMut(&mut f64)) {
        for p in self.props.iter_mut().chain(self.time_remap.iter_mut()) {
            if let PropValue::Keyframed(kfs) = &mut p.value {
                kfs.iter_mut().for_each(|k| f(&mut k.time));
            }
        }
        for p in &mut self.paths {
            if let ShapeValue::Keyframed(kfs) = &mut p.value {
                kfs.iter_mut().for_each(|k| f(&mut k.time));
            }
        }
        for d in &mut self.text_documents {
            f(&mut d.time);
        }
    }
}

fn opt<'a>(p: &'a mut Option<Property>, out: &mut Vec<&'a mut Property>) {
    if let Some(p) = p {
        out.push(p);
    }
}

fn transform<'a>(t: &'a mut Transform, out: &mut Vec<&'a mut Property>) {
    opt(&mut t.anchor, out);
    match &mut t.position {
        Some(Position::Combined(p)) => out.push(p),
        Some(Position::Split(s)) => {
            out.push(&mut s.x);
            out.push(&mut s.y);
            opt(&mut s.z, out);
        }
        None => {}
    }
    for p in [
        &mut t.scale,
        &mut t.rotation,
        &mut t.opacity,
        &mut t.skew,
        &mut t.skew_axis,
        &mut t.start_opacity,
        &mut t.end_opacity,
    ] {
        opt(p, out);
    }
}

fn gradient<'a>(g: &'a mut Gradient, out: &mut Vec<&'a mut Property>) {
    for p in [
        &mut g.opacity,
        &mut g.start_point,
        &mut g.end_point,
        &mut g.highlight_length,
        &mut g.highlight_angle,
    ] {
        opt(p, out);
    }
    out.push(&mut g.stops.colors);
}

fn shape_list<'a>(shapes: &'a mut [ShapeNode], out: &mut LayerTracks<'a>) {
    for node in shapes {
        let props = &mut out.props;
        match &mut node.kind {
            ShapeKind::Group(g) => shape_list(&mut g.items, out),
            ShapeKind::Path(p) => out.paths.push(&mut p.path),
            ShapeKind::Fill(f) => {
                opt(&mut f.color, props);
                opt(&mut f.opacity, props);
            }
            ShapeKind::Stroke(s) => {
                opt(&mut s.color, props);
                opt(&mut s.opacity, props);
                opt(&mut s.width, props);
            }
            ShapeKind::GradientFill(g) => gradient(&mut g.gradient, props),
            ShapeKind::GradientStroke(g) => {
                gradient(&mut g.gradient, props);
                opt(&mut g.width, props);
            }
            ShapeKind::Rect(r) => {
                opt(&mut r.position, props);
                opt(&mut r.size, props);
                opt(&mut r.roundness, props);
            }
            ShapeKind::Ellipse(e) => {
                opt(&mut e.position, props);
                opt(&mut e.size, props);
            }
            ShapeKind::Star(s) => {
                for p in [
                    &mut s.position,
                    &mut s.outer_radius,
                    &mut s.outer_roundness,
                    &mut s.inner_radius,
                    &mut s.inner_roundness,
                    &mut s.rotation,
                    &mut s.points,
                ] {
                    opt(p, props);
                }
            }
            ShapeKind::Transform(t) => transform(t, props),
            ShapeKind::TrimPath(t) => {
                opt(&mut t.start, props);
                opt(&mut t.end, props);
                opt(&mut t.offset, props);
            }
            ShapeKind::Repeater(r) => {
                opt(&mut r.copies, props);
                opt(&mut r.offset, props);
                transform(&mut r.transform, props);
            }
            ShapeKind::MergePaths(_) => {}
            ShapeKind::RoundedCorners(r) => opt(&mut r.radius, props),
            ShapeKind::ZigZag(z) => {
                opt(&mut z.frequency, props);
                opt(&mut z.amplitude, props);
                opt(&mut z.point_type, props);
            }
        }
    }
}
