//! Static Lottie from a small SVG subset: path (M/L/C/Z), rect, circle,
//! ellipse and g, with solid fill and stroke and translate/rotate/scale
//! transforms.

use roxmltree::{Document, Node};

use crate::model::*;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SvgError {
    #[error("unsupported SVG feature: {0}")]
    UnsupportedSvgFeature(String),
    #[error("malformed SVG: {0}")]
    Malformed(String),
}

fn unsupported<T>(name: impl Into<String>) -> Result<T, SvgError> {
    Err(SvgError::UnsupportedSvgFeature(name.into()))
}

fn malformed<T>(why: impl Into<String>) -> Result<T, SvgError> {
    Err(SvgError::Malformed(why.into()))
}

const SVG_NS: &str = "http://www.w3.org/2000/svg";
const FRAMES: f64 = 60.0;

/// Converts SVG text into a static animation: one shape layer per top-level
/// `g`, with runs of top-level primitives sharing a layer.
pub fn svg_to_static_lottie(svg: &str) -> Result<Animation, SvgError> {
    let doc = Document::parse(svg).map_err(|e| SvgError::Malformed(e.to_string()))?;
    let root = doc.root_element();
    if root.tag_name().name() != "svg" {
        return malformed("root element is not <svg>");
    }
    let (origin, width, height) = viewport(root)?;
    let root_style = Style::default().inherit(root)?;

    let mut layers: Vec<(Option<String>, Affine, f64, Vec<ShapeNode>)> = Vec::new();
    let mut loose: Vec<ShapeNode> = Vec::new();
    let flush = |loose: &mut Vec<ShapeNode>, layers: &mut Vec<_>| {
        if !loose.is_empty() {
            let mut items = std::mem::take(loose);
            items.reverse();
            layers.push((None, Affine::IDENTITY, 1.0, items));
        }
    };
    for child in elements(root)? {
        if child.tag_name().name() == "g" {
            flush(&mut loose, &mut layers);
            let style = root_style.inherit(child)?;
            let m = parse_transform(child.attribute("transform").unwrap_or(""))?;
            let items = children(child, &style)?;
            let name = child.attribute("id").map(str::to_string);
            layers.push((name, m, style.opacity, items));
        } else if let Some(node) = primitive(child, &root_style)? {
            loose.push(node);
        }
    }
    flush(&mut loose, &mut layers);

    let mut a = Animation::empty("5.7.0", 30.0, 0.0, FRAMES, width, height);
    let shift = Affine::translate(-origin[0], -origin[1]);
    for (i, (name, m, opacity, items)) in layers.into_iter().rev().enumerate() {
        let mut l = Layer::new(LayerPayload::Shape(items), i as i64 + 1, 0.0, FRAMES);
        l.name = name;
        l.start_time = Some(0.0);
        l.transform = shift.then(&m).to_transform(opacity)?;
        a.layers.push(l);
    }
    Ok(a)
}

/// ViewBox origin and canvas size.
fn viewport(root: Node) -> Result<([f64; 2], f64, f64), SvgError> {
    if let Some(vb) = root.attribute("viewBox") {
        let v = numbers(vb)?;
        if v.len() != 4 || !(v[2] > 0.0 && v[3] > 0.0) {
            return malformed(format!("viewBox {vb:?}"));
        }
        return Ok(([v[0], v[1]], v[2], v[3]));
    }
    let size = |name: &str| -> Result<f64, SvgError> {
        match root.attribute(name) {
            None => Ok(512.0),
            Some(s) => {
                let s = s.trim().trim_end_matches("px");
                match s.parse::<f64>() {
                    Ok(v) if v > 0.0 => Ok(v),
                    _ => unsupported(format!("{name}={s:?}")),
                }
            }
        }
    };
    Ok(([0.0, 0.0], size("width")?, size("height")?))
}

/// SVG-namespace child elements; metadata is skipped and anything outside
/// the subset is rejected.
fn elements<'a, 'i>(n: Node<'a, 'i>) -> Result<Vec<Node<'a, 'i>>, SvgError> {
    let mut out = Vec::new();
    for c in n.children().filter(Node::is_element) {
        if c.tag_name().namespace().is_some_and(|ns| ns != SVG_NS) {
            continue;
        }
        match c.tag_name().name() {
            "title" | "desc" | "metadata" => {}
            "defs" => {
                for d in c.descendants().filter(Node::is_element) {
                    match d.tag_name().name() {
                        "linearGradient" | "radialGradient" => return unsupported("gradient"),
                        "defs" => {}
                        other => return unsupported(other),
                    }
                }
            }
            "linearGradient" | "radialGradient" => return unsupported("gradient"),
            "g" | "path" | "rect" | "circle" | "ellipse" | "line" | "polyline" | "polygon" => {
                for attr in ["clip-path", "mask", "filter"] {
                    if c.attribute(attr).is_some() {
                        return unsupported(attr);
                    }
                }
                out.push(c);
            }
            other => return unsupported(other),
        }
    }
    Ok(out)
}

/// Shape items for the children of a group, in Lottie order (topmost first).
fn children(g: Node, style: &Style) -> Result<Vec<ShapeNode>, SvgError> {
    let mut items = Vec::new();
    for c in elements(g)? {
        if c.tag_name().name() == "g" {
            let inner = style.inherit(c)?;
            let m = parse_transform(c.attribute("transform").unwrap_or(""))?;
            let mut group = children(c, &inner)?;
            group.push(ShapeNode::new(ShapeKind::Transform(m.to_transform(inner.opacity)?)));
            items.push(named(ShapeNode::new(ShapeKind::Group(Group { num_properties: None, items: group })), c));
        } else if let Some(node) = primitive(c, style)? {
            items.push(node);
        }
    }
    items.reverse();
    Ok(items)
}

fn named(mut node: ShapeNode, n: Node) -> ShapeNode {
    node.name = n.attribute("id").map(str::to_string);
    node
}

/// A group holding one element's geometry, its styles and its transform.
fn primitive(n: Node, parent: &Style) -> Result<Option<ShapeNode>, SvgError> {
    let style = parent.inherit(n)?;
    let attr = |name: &str| -> Result<f64, SvgError> {
        match n.attribute(name) {
            None => Ok(0.0),
            Some(s) => s.trim().trim_end_matches("px").parse().or_else(|_| unsupported(format!("{name}={s:?}"))),
        }
    };
    let mut items: Vec<ShapeNode> = match n.tag_name().name() {
        "path" => parse_path(n.attribute("d").unwrap_or(""))?
            .into_iter()
            .map(|b| {
                ShapeNode::new(ShapeKind::Path(PathShape {
                    direction: None,
                    path: ShapeProperty::fixed(b),
                }))
            })
            .collect(),
        "rect" => {
            let (x, y, w, h) = (attr("x")?, attr("y")?, attr("width")?, attr("height")?);
            let rx = if n.has_attribute("rx") { attr("rx")? } else { attr("ry")? };
            vec![ShapeNode::new(ShapeKind::Rect(Rect {
                direction: None,
                position: Some(Property::fixed(vec![x + w / 2.0, y + h / 2.0])),
                size: Some(Property::fixed(vec![w, h])),
                roundness: Some(Property::scalar(rx)),
            }))]
        }
        "circle" => {
            let r = attr("r")?;
            vec![ellipse(attr("cx")?, attr("cy")?, r, r)]
        }
        "ellipse" => vec![ellipse(attr("cx")?, attr("cy")?, attr("rx")?, attr("ry")?)],
        "line" => vec![polyline(&[[attr("x1")?, attr("y1")?], [attr("x2")?, attr("y2")?]], false)],
        "polyline" | "polygon" => {
            let nums = numbers(n.attribute("points").unwrap_or(""))?;
            if nums.len() % 2 == 1 {
                return Err(SvgError::Malformed("odd number of point coordinates".into()));
            }
            let points: Vec<[f64; 2]> = nums.chunks(2).map(|c| [c[0], c[1]]).collect();
            if points.len() < 2 {
                return Ok(None);
            }
            vec![polyline(&points, n.tag_name().name() == "polygon")]
        }
        _ => return Ok(None),
    };
    if items.is_empty() {
        return Ok(None);
    }
    if let Some(c) = style.stroke {
        items.push(ShapeNode::new(ShapeKind::Stroke(Stroke {
            color: Some(Property::fixed(c.to_vec())),
            opacity: Some(Property::scalar(100.0 * style.stroke_opacity)),
            width: Some(Property::scalar(style.stroke_width)),
            cap: Some(style.cap),
            join: Some(style.join),
            miter_limit: None,
        })));
    }
    if let Some(c) = style.fill {
        items.push(ShapeNode::new(ShapeKind::Fill(Fill {
            color: Some(Property::fixed(c.to_vec())),
            opacity: Some(Property::scalar(100.0 * style.fill_opacity)),
            rule: Some(style.rule),
        })));
    }
    let m = parse_transform(n.attribute("transform").unwrap_or(""))?;
    items.push(ShapeNode::new(ShapeKind::Transform(m.to_transform(style.opacity)?)));
    Ok(Some(named(
        ShapeNode::new(ShapeKind::Group(Group {
            num_properties: None,
            items,
        })),
        n,
    )))
}

fn polyline(points: &[[f64; 2]], closed: bool) -> ShapeNode {
    ShapeNode::new(ShapeKind::Path(PathShape {
        direction: None,
        path: ShapeProperty::fixed(Bezier::polygon(points, closed)),
    }))
}

fn ellipse(cx: f64, cy: f64, rx: f64, ry: f64) -> ShapeNode {
    ShapeNode::new(ShapeKind::Ellipse(Ellipse {
        direction: None,
        position: Some(Property::fixed(vec![cx, cy])),
        size: Some(Property::fixed(vec![2.0 * rx, 2.0 * ry])),
    }))
}

/// Inherited presentation attributes. `opacity` is not inherited; it
/// applies to the element's own transform.
#[derive(Debug, Clone)]
struct Style {
    fill: Option<[f64; 3]>,
    stroke: Option<[f64; 3]>,
    fill_opacity: f64,
    stroke_opacity: f64,
    stroke_width: f64,
    rule: i64,
    cap: i64,
    join: i64,
    opacity: f64,
}

impl Default for Style {
    fn default() -> Self {
        Style {
            fill: Some([0.0, 0.0, 0.0]),
            stroke: None,
            fill_opacity: 1.0,
            stroke_opacity: 1.0,
            stroke_width: 1.0,
            rule: 1,
            cap: 1,
            join: 1,
            opacity: 1.0,
        }
    }
}

impl Style {
    fn inherit(&self, n: Node) -> Result<Style, SvgError> {
        let mut s = Style {
            opacity: 1.0,
            ..self.clone()
        };
        let mut decls: Vec<(String, String)> = Vec::new();
        for a in n.attributes() {
            decls.push((a.name().to_string(), a.value().to_string()));
        }
        if let Some(style) = n.attribute("style") {
            for d in style.split(';') {
                if let Some((k, v)) = d.split_once(':') {
                    decls.push((k.trim().to_string(), v.trim().to_string()));
                }
            }
        }
        let unit = |k: &str, v: &str| -> Result<f64, SvgError> {
            match v.trim().parse::<f64>() {
                Ok(x) if (0.0..=1.0).contains(&x) => Ok(x),
                _ => unsupported(format!("{k}={v:?}")),
            }
        };
        for (k, v) in &decls {
            let v = v.trim();
            match k.as_str() {
                "fill" => s.fill = paint(v)?,
                "stroke" => s.stroke = paint(v)?,
                "fill-opacity" => s.fill_opacity = unit(k, v)?,
                "stroke-opacity" => s.stroke_opacity = unit(k, v)?,
                "opacity" => s.opacity = unit(k, v)?,
                "stroke-width" => {
                    s.stroke_width = v
                        .trim_end_matches("px")
                        .parse()
                        .or_else(|_| unsupported(format!("stroke-width={v:?}")))?
                }
                "fill-rule" => {
                    s.rule = match v {
                        "nonzero" => 1,
                        "evenodd" => 2,
                        _ => return unsupported(format!("fill-rule={v:?}")),
                    }
                }
                "stroke-linecap" => {
                    s.cap = match v {
                        "butt" => 1,
                        "round" => 2,
                        "square" => 3,
                        _ => return unsupported(format!("stroke-linecap={v:?}")),
                    }
                }
                "stroke-linejoin" => {
                    s.join = match v {
                        "miter" => 1,
                        "round" => 2,
                        "bevel" => 3,
                        _ => return unsupported(format!("stroke-linejoin={v:?}")),
                    }
                }
                "stroke-dasharray" if v != "none" => return unsupported("stroke-dasharray"),
                _ => {}
            }
        }
        Ok(s)
    }
}

/// A solid paint as RGB in [0, 1]; `None` for `none`.
fn paint(v: &str) -> Result<Option<[f64; 3]>, SvgError> {
    let rgb = |r: f64, g: f64, b: f64| Ok(Some([r / 255.0, g / 255.0, b / 255.0]));
    if v == "none" {
        return Ok(None);
    }
    if v.starts_with("url(") {
        return unsupported("gradient");
    }
    if let Some(hex) = v.strip_prefix('#') {
        let digits: Option<Vec<u8>> = hex.chars().map(|c| c.to_digit(16).map(|d| d as u8)).collect();
        return match (digits.as_deref(), hex.len()) {
            (Some(&[r, g, b]), 3) => rgb((r * 17) as f64, (g * 17) as f64, (b * 17) as f64),
            (Some(&[r1, r2, g1, g2, b1, b2]), 6) => {
                rgb((r1 * 16 + r2) as f64, (g1 * 16 + g2) as f64, (b1 * 16 + b2) as f64)
            }
            _ => unsupported(format!("color {v:?}")),
        };
    }
    if let Some(inner) = v.strip_prefix("rgb(").and_then(|s| s.strip_suffix(')')) {
        let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
        let channel = |p: &str| -> Option<f64> {
            match p.strip_suffix('%') {
                Some(pct) => pct.parse::<f64>().ok().map(|x| x * 2.55),
                None => p.parse().ok(),
            }
        };
        if let [r, g, b] = parts[..] {
            if let (Some(r), Some(g), Some(b)) = (channel(r), channel(g), channel(b)) {
                return rgb(r.clamp(0.0, 255.0), g.clamp(0.0, 255.0), b.clamp(0.0, 255.0));
            }
        }
        return unsupported(format!("color {v:?}"));
    }
    match v {
        "black" => rgb(0.0, 0.0, 0.0),
        "white" => rgb(255.0, 255.0, 255.0),
        "red" => rgb(255.0, 0.0, 0.0),
        "green" => rgb(0.0, 128.0, 0.0),
        "lime" => rgb(0.0, 255.0, 0.0),
        "blue" => rgb(0.0, 0.0, 255.0),
        "yellow" => rgb(255.0, 255.0, 0.0),
        "gray" | "grey" => rgb(128.0, 128.0, 128.0),
        "orange" => rgb(255.0, 165.0, 0.0),
        _ => unsupported(format!("color {v:?}")),
    }
}

/// Numbers in SVG list syntax: separators are commas or whitespace, and a
/// sign or second dot starts a new number.
fn numbers(s: &str) -> Result<Vec<f64>, SvgError> {
    let mut out = Vec::new();
    let b = s.as_bytes();
    let mut i = 0;
    while i < b.len() {
        let c = b[i];
        if c.is_ascii_whitespace() || c == b',' {
            i += 1;
            continue;
        }
        let start = i;
        if c == b'+' || c == b'-' {
            i += 1;
        }
        let mut dot = false;
        while i < b.len() && (b[i].is_ascii_digit() || (b[i] == b'.' && !dot)) {
            dot |= b[i] == b'.';
            i += 1;
        }
        if i < b.len() && (b[i] == b'e' || b[i] == b'E') {
            let save = i;
            i += 1;
            if i < b.len() && (b[i] == b'+' || b[i] == b'-') {
                i += 1;
            }
            let digits = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            if i == digits {
                i = save;
            }
        }
        match s[start..i].parse::<f64>() {
            Ok(v) if i > start => out.push(v),
            _ => return malformed(format!("bad number in {s:?}")),
        }
    }
    Ok(out)
}

/// One bezier per subpath.
fn parse_path(d: &str) -> Result<Vec<Bezier>, SvgError> {
    let mut segments: Vec<(char, &str)> = Vec::new();
    let mut start = None;
    for (i, c) in d.char_indices() {
        if c.is_ascii_alphabetic() && c != 'e' && c != 'E' {
            if let Some((cmd, from)) = start {
                segments.push((cmd, &d[from..i]));
            }
            start = Some((c, i + 1));
        }
    }
    if let Some((cmd, from)) = start {
        segments.push((cmd, &d[from..]));
    } else if !d.trim().is_empty() {
        return malformed(format!("path data {d:?}"));
    }

    let mut paths = Vec::new();
    let mut cur: Option<Bezier> = None;
    let mut pen = [0.0, 0.0];
    let mut subpath_start = [0.0, 0.0];
    let finish = |b: Option<Bezier>, paths: &mut Vec<Bezier>| {
        if let Some(b) = b {
            if !b.vertices.is_empty() {
                paths.push(b);
            }
        }
    };
    for (cmd, args) in segments {
        let v = numbers(args)?;
        let rel = cmd.is_ascii_lowercase();
        let at = |pen: [f64; 2], x: f64, y: f64| if rel { [pen[0] + x, pen[1] + y] } else { [x, y] };
        match cmd.to_ascii_uppercase() {
            'M' | 'L' => {
                if v.is_empty() || v.len() % 2 != 0 {
                    return malformed(format!("{cmd} needs coordinate pairs"));
                }
                for (j, p) in v.chunks(2).enumerate() {
                    pen = at(pen, p[0], p[1]);
                    if j == 0 && cmd.eq_ignore_ascii_case(&'M') {
                        finish(cur.take(), &mut paths);
                        subpath_start = pen;
                        cur = Some(Bezier::polygon(&[pen], false));
                    } else {
                        let b = cur.get_or_insert_with(|| Bezier::polygon(&[subpath_start], false));
                        b.vertices.push(pen);
                        b.in_tangents.push([0.0, 0.0]);
                        b.out_tangents.push([0.0, 0.0]);
                    }
                }
            }
            'C' => {
                if v.is_empty() || v.len() % 6 != 0 {
                    return malformed("C needs groups of six numbers");
                }
                for p in v.chunks(6) {
                    let c1 = at(pen, p[0], p[1]);
                    let c2 = at(pen, p[2], p[3]);
                    let end = at(pen, p[4], p[5]);
                    let b = cur.get_or_insert_with(|| Bezier::polygon(&[subpath_start], false));
                    let last = b.out_tangents.len() - 1;
                    b.out_tangents[last] = [c1[0] - pen[0], c1[1] - pen[1]];
                    b.vertices.push(end);
                    b.in_tangents.push([c2[0] - end[0], c2[1] - end[1]]);
                    b.out_tangents.push([0.0, 0.0]);
                    pen = end;
                }
            }
            'Z' => {
                if !v.is_empty() {
                    return malformed("Z takes no arguments");
                }
                if let Some(mut b) = cur.take() {
                    let n = b.vertices.len();
                    if n > 1 && b.vertices[n - 1] == b.vertices[0] {
                        b.in_tangents[0] = b.in_tangents[n - 1];
                        b.vertices.pop();
                        b.in_tangents.pop();
                        b.out_tangents.pop();
                    }
                    b.closed = Some(true);
                    paths.push(b);
                }
                pen = subpath_start;
            }
            other => return unsupported(format!("path command {other}")),
        }
    }
    finish(cur, &mut paths);
    Ok(paths)
}

/// Affine map x' = M·x + t with M = [[a, c], [b, d]].
#[derive(Debug, Clone, Copy, PartialEq)]
struct Affine {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    t: [f64; 2],
}

impl Affine {
    const IDENTITY: Affine = Affine {
        a: 1.0,
        b: 0.0,
        c: 0.0,
        d: 1.0,
        t: [0.0, 0.0],
    };

    fn translate(x: f64, y: f64) -> Self {
        Affine {
            t: [x, y],
            ..Self::IDENTITY
        }
    }

    fn rotate(deg: f64) -> Self {
        let (s, c) = deg.to_radians().sin_cos();
        Affine {
            a: c,
            b: s,
            c: -s,
            d: c,
            t: [0.0, 0.0],
        }
    }

    fn scale(x: f64, y: f64) -> Self {
        Affine {
            a: x,
            d: y,
            ..Self::IDENTITY
        }
    }

    /// `self` applied after `o`.
    fn then(&self, o: &Affine) -> Affine {
        Affine {
            a: self.a * o.a + self.c * o.b,
            b: self.b * o.a + self.d * o.b,
            c: self.a * o.c + self.c * o.d,
            d: self.b * o.c + self.d * o.d,
            t: [
                self.a * o.t[0] + self.c * o.t[1] + self.t[0],
                self.b * o.t[0] + self.d * o.t[1] + self.t[1],
            ],
        }
    }

    /// Splits into position, rotation and scale; skewed maps are rejected.
    fn to_transform(&self, opacity: f64) -> Result<Transform, SvgError> {
        let sx = self.a.hypot(self.b);
        if sx == 0.0 {
            return unsupported("degenerate transform");
        }
        let det = self.a * self.d - self.b * self.c;
        let dot = self.a * self.c + self.b * self.d;
        if dot.abs() > 1e-9 * (sx * self.c.hypot(self.d)).max(1e-300) {
            return unsupported("skew");
        }
        let sy = det / sx;
        let r = self.b.atan2(self.a).to_degrees();
        let clean = |v: f64| if v.abs() < 1e-12 { 0.0 } else { v };
        Ok(Transform {
            anchor: Some(Property::fixed(vec![0.0, 0.0])),
            position: Some(Position::Combined(Property::fixed(vec![clean(self.t[0]), clean(self.t[1])]))),
            scale: Some(Property::fixed(vec![clean(100.0 * sx), clean(100.0 * sy)])),
            rotation: Some(Property::scalar(clean(r))),
            opacity: Some(Property::scalar(100.0 * opacity)),
            ..Transform::default()
        })
    }
}

fn parse_transform(s: &str) -> Result<Affine, SvgError> {
    let mut m = Affine::IDENTITY;
    let mut rest = s.trim();
    while !rest.is_empty() {
        let Some(open) = rest.find('(') else {
            return malformed(format!("transform {s:?}"));
        };
        let Some(close) = rest.find(')') else {
            return malformed(format!("transform {s:?}"));
        };
        let name = rest[..open].trim().trim_start_matches(',').trim();
        let args = numbers(&rest[open + 1..close])?;
        let step = match (name, args.as_slice()) {
            ("translate", [x]) => Affine::translate(*x, 0.0),
            ("translate", [x, y]) => Affine::translate(*x, *y),
            ("scale", [k]) => Affine::scale(*k, *k),
            ("scale", [x, y]) => Affine::scale(*x, *y),
            ("rotate", [r]) => Affine::rotate(*r),
            ("rotate", [r, cx, cy]) => Affine::translate(*cx, *cy)
                .then(&Affine::rotate(*r))
                .then(&Affine::translate(-cx, -cy)),
            ("matrix" | "skewX" | "skewY", _) => return unsupported(name),
            _ => return malformed(format!("transform {s:?}")),
        };
        m = m.then(&step);
        rest = rest[close + 1..].trim_start();
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn svg(body: &str) -> String {
        format!(r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 200 100">{body}</svg>"#)
    }

    fn items(a: &Animation) -> &[ShapeNode] {
        let ShapeKind::Group(g) = &a.layers[0].shapes().unwrap()[0].kind else { panic!() };
        &g.items
    }

    #[test]
    fn red_square() {
        let a = svg_to_static_lottie(&svg(r##"<rect x="0" y="0" width="100" height="100" fill="#ff0000"/>"##)).unwrap();
        assert_eq!((a.width, a.height), (200.0, 100.0));
        let it = items(&a);
        let ShapeKind::Rect(r) = &it[0].kind else { panic!() };
        assert_eq!(r.position.as_ref().unwrap().static_value(), Some(&[50.0, 50.0][..]));
        assert_eq!(r.size.as_ref().unwrap().static_value(), Some(&[100.0, 100.0][..]));
        let ShapeKind::Fill(f) = &it[1].kind else { panic!() };
        assert_eq!(f.color.as_ref().unwrap().static_value(), Some(&[1.0, 0.0, 0.0][..]));
        assert_eq!(it[2].kind.shape_type(), ShapeType::Transform);
    }

    #[test]
    fn circle_has_equal_radii() {
        let a = svg_to_static_lottie(&svg(r#"<circle cx="10" cy="20" r="50"/>"#)).unwrap();
        let ShapeKind::Ellipse(e) = &items(&a)[0].kind else { panic!() };
        assert_eq!(e.size.as_ref().unwrap().static_value(), Some(&[100.0, 100.0][..]));
    }

    #[test]
    fn polygons_and_lines_become_paths() {
        let a = svg_to_static_lottie(&svg(r#"<polygon points="0,0 10,0 10,10" fill="red"/>"#)).unwrap();
        let ShapeKind::Path(p) = &items(&a)[0].kind else { panic!() };
        let ShapeValue::Static(b) = &p.path.value else { panic!() };
        assert_eq!((b.vertices.len(), b.closed), (3, Some(true)));
        let a = svg_to_static_lottie(&svg(r#"<line x1="1" y1="2" x2="3" y2="4" stroke="black"/>"#)).unwrap();
        let ShapeKind::Path(p) = &items(&a)[0].kind else { panic!() };
        let ShapeValue::Static(b) = &p.path.value else { panic!() };
        assert_eq!(b.vertices, vec![[1.0, 2.0], [3.0, 4.0]]);
        assert_eq!(b.closed, Some(false));
        assert!(svg_to_static_lottie(&svg(r#"<polyline points="0,0 1"/>"#)).is_err());
    }

    #[test]
    fn gradient_is_rejected() {
        let doc = svg(
            r#"<defs><linearGradient id="g"/></defs><rect width="10" height="10" fill="url(#g)"/>"#,
        );
        assert_eq!(
            svg_to_static_lottie(&doc),
            Err(SvgError::UnsupportedSvgFeature("gradient".into()))
        );
        assert_eq!(
            svg_to_static_lottie(&svg(r#"<rect width="1" height="1" fill="url(#x)"/>"#)),
            Err(SvgError::UnsupportedSvgFeature("gradient".into()))
        );
    }

    #[test]
    fn out_of_subset_content() {
        for body in [
            r#"<text>hi</text>"#,
            r#"<path d="M0 0 Q 5 5 10 0"/>"#,
            r#"<g transform="matrix(1 0 0 1 0 0)"/>"#,
            r#"<image href="a.png" width="4" height="4"/>"#,
        ] {
            assert!(matches!(
                svg_to_static_lottie(&svg(body)),
                Err(SvgError::UnsupportedSvgFeature(_))
            ));
        }
    }

    #[test]
    fn path_commands() {
        let b = parse_path("M10 10 l10,0 C 30 10 30 20 20 20 z m5-5L1e1 .5.5.5").unwrap();
        assert_eq!(b.len(), 2);
        assert_eq!(b[0].vertices, vec![[10.0, 10.0], [20.0, 10.0], [20.0, 20.0]]);
        assert_eq!(b[0].out_tangents[1], [10.0, 0.0]);
        assert_eq!(b[0].in_tangents[2], [10.0, 0.0]);
        assert_eq!(b[0].closed, Some(true));
        // The relative move starts from the closed subpath's first point.
        assert_eq!(b[1].vertices, vec![[15.0, 5.0], [10.0, 0.5], [0.5, 0.5]]);
        assert_eq!(b[1].closed, Some(false));
    }

    #[test]
    fn closing_curve_merges_into_first_vertex() {
        let b = parse_path("M0 0 L10 0 C 10 10 0 10 0 0 Z").unwrap();
        assert_eq!(b[0].vertices.len(), 2);
        assert_eq!(b[0].in_tangents[0], [0.0, 10.0]);
    }

    #[test]
    fn groups_become_layers_in_paint_order() {
        let doc = svg(
            r#"<g id="back" transform="translate(10 20) rotate(90) scale(2)"><circle r="5"/></g>
               <rect width="5" height="5"/><rect width="6" height="6"/>
               <g id="front" style="fill:none;stroke:blue;stroke-width:3"><circle r="4"/></g>"#,
        );
        let a = svg_to_static_lottie(&doc).unwrap();
        let names: Vec<_> = a.layers.iter().map(|l| l.name.clone()).collect();
        assert_eq!(names, vec![Some("front".into()), None, Some("back".into())]);
        assert_eq!(a.layers[1].shapes().unwrap().len(), 2);
        let t = &a.layers[2].transform;
        let Some(Position::Combined(p)) = &t.position else { panic!() };
        assert_eq!(p.static_value(), Some(&[10.0, 20.0][..]));
        assert_eq!(t.rotation.as_ref().unwrap().static_value(), Some(&[90.0][..]));
        assert!(t.scale.as_ref().unwrap().static_value().unwrap().iter().all(|s| (s - 200.0).abs() < 1e-9));
        let front: Vec<_> = items(&a).iter().map(|n| n.kind.shape_type()).collect();
        assert_eq!(front, vec![ShapeType::Ellipse, ShapeType::Stroke, ShapeType::Transform]);
    }

    #[test]
    fn output_is_lint_clean_and_serializable() {
        let doc = svg(r##"<g><path d="M10 10 L90 10 L50 90 Z" fill="#123" stroke="black"/></g>"##);
        let a = svg_to_static_lottie(&doc).unwrap();
        assert_eq!(parse_lottie(&serialize_lottie(&a)).unwrap(), a);
        assert!(crate::lint::lint(&a).iter().all(|d| !d.is_error()));
    }
}
