//! Motion templates and their text file format.
//!
//! ```text
//! #lottie-motion-template v1
//! template 12 fade-in + upward motion
//! channel opacity 0:0 1:1
//! channel position-y 0:0 1:-0.3
//! end
//! ```

use std::fmt::Write as _;

use super::signature::{Channel, MotionSignature};

pub const TEMPLATE_HEADER: &str = "#lottie-motion-template v1";

#[derive(Debug, Clone, PartialEq)]
pub struct MotionTemplate {
    pub label: String,
    /// Per channel, (normalized time, normalized value) points. Opacity
    /// values are fractions of full opacity; other channels are offsets from
    /// the start in channel units.
    pub channels: Vec<(Channel, Vec<(f64, f64)>)>,
    /// Number of signatures in the source cluster.
    pub cluster_size: usize,
}

impl MotionTemplate {
    /// The pattern of every moving channel in `sig`, with collinear
    /// interior samples dropped.
    pub fn from_signature(sig: &MotionSignature, cluster_size: usize) -> Self {
        let channels = sig
            .active()
            .into_iter()
            .map(|c| {
                let s = sig.channel(c).unwrap();
                let last = (s.samples.len() - 1).max(1) as f64;
                let base = if c == Channel::Opacity { s.initial } else { 0.0 };
                let points: Vec<(f64, f64)> =
                    s.samples.iter().enumerate().map(|(j, v)| (j as f64 / last, base + v)).collect();
                (c, simplify(&points))
            })
            .collect();
        MotionTemplate {
            label: sig.label(),
            channels,
            cluster_size,
        }
    }

    pub fn pattern(&self, c: Channel) -> Option<&[(f64, f64)]> {
        self.channels.iter().find(|(k, _)| *k == c).map(|(_, p)| p.as_slice())
    }
}

fn simplify(points: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut out: Vec<(f64, f64)> = Vec::with_capacity(points.len());
    for (i, &p) in points.iter().enumerate() {
        if let (Some(&a), Some(&b)) = (out.last(), points.get(i + 1)) {
            let cross = (p.0 - a.0) * (b.1 - a.1) - (p.1 - a.1) * (b.0 - a.0);
            if cross.abs() <= 1e-9 {
                continue;
            }
        }
        out.push(p);
    }
    out
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("template file line {line}: {message}")]
pub struct TemplateFileError {
    pub line: usize,
    pub message: String,
}

pub fn write_templates(templates: &[MotionTemplate]) -> String {
    let mut out = format!("{TEMPLATE_HEADER}\n");
    for t in templates {
        let _ = writeln!(out, "template {} {}", t.cluster_size, t.label);
        for (c, points) in &t.channels {
            let _ = write!(out, "channel {c}");
            for (u, m) in points {
                let _ = write!(out, " {u}:{m}");
            }
            out.push('\n');
        }
        out.push_str("end\n");
    }
    out
}

pub fn read_templates(text: &str) -> Result<Vec<MotionTemplate>, TemplateFileError> {
    let err = |line: usize, message: &str| TemplateFileError {
        line,
        message: message.to_string(),
    };
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    match lines.next() {
        Some((_, TEMPLATE_HEADER)) => {}
        _ => return Err(err(1, "missing header")),
    }
    let mut out = Vec::new();
    let mut current: Option<MotionTemplate> = None;
    for (n, line) in lines {
        if line.is_empty() {
            continue;
        }
        let (word, rest) = line.split_once(' ').unwrap_or((line, ""));
        match (word, current.as_mut()) {
            ("template", None) => {
                let (size, label) = rest.split_once(' ').unwrap_or((rest, ""));
                let cluster_size = size.parse().map_err(|_| err(n, "bad cluster size"))?;
                current = Some(MotionTemplate {
                    label: label.to_string(),
                    channels: Vec::new(),
                    cluster_size,
                });
            }
            ("channel", Some(t)) => {
                let mut parts = rest.split_whitespace();
                let name = parts.next().unwrap_or("");
                let c = Channel::from_name(name).ok_or_else(|| err(n, &format!("unknown channel {name:?}")))?;
                if t.pattern(c).is_some() {
                    return Err(err(n, "duplicate channel"));
                }
                let points = parts
                    .map(|p| {
                        let (u, m) = p.split_once(':')?;
                        Some((u.parse::<f64>().ok()?, m.parse::<f64>().ok()?))
                    })
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| err(n, "bad point"))?;
                let ordered = points.windows(2).all(|w| w[0].0 < w[1].0);
                let in_range = points.iter().all(|(u, m)| (0.0..=1.0).contains(u) && m.is_finite());
                if points.is_empty() || !ordered || !in_range {
                    return Err(err(n, "points must have increasing times in [0, 1]"));
                }
                t.channels.push((c, points));
            }
            ("end", Some(_)) => out.push(current.take().unwrap()),
            _ => return Err(err(n, &format!("unexpected {word:?}"))),
        }
    }
    if current.is_some() {
        return Err(err(text.lines().count(), "missing end"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn collinear_points_are_dropped() {
        let pts: Vec<_> = (0..16).map(|j| (j as f64 / 15.0, j as f64 / 15.0)).collect();
        assert_eq!(simplify(&pts), vec![(0.0, 0.0), (1.0, 1.0)]);
        let bent = [(0.0, 0.0), (0.5, 1.0), (1.0, 1.0)];
        assert_eq!(simplify(&bent), bent.to_vec());
    }

    #[test]
    fn file_round_trip() {
        let t = MotionTemplate {
            label: "fade-in + upward motion".into(),
            channels: vec![
                (Channel::PositionY, vec![(0.0, 0.0), (1.0, -0.25)]),
                (Channel::Opacity, vec![(0.0, 0.0), (0.5, 0.8), (1.0, 1.0)]),
            ],
            cluster_size: 4,
        };
        let text = write_templates(&[t.clone(), t.clone()]);
        assert_eq!(read_templates(&text).unwrap(), vec![t.clone(), t]);
    }

    #[test]
    fn malformed_files() {
        assert!(read_templates("template 1 x\nend\n").is_err());
        let bad = format!("{TEMPLATE_HEADER}\ntemplate 1 x\nchannel spin 0:0\nend\n");
        assert_eq!(read_templates(&bad).unwrap_err().line, 3);
        let open = format!("{TEMPLATE_HEADER}\ntemplate 1 x\n");
        assert!(read_templates(&open).is_err());
        let backwards = format!("{TEMPLATE_HEADER}\ntemplate 1 x\nchannel opacity 1:0 0:1\nend\n");
        assert!(read_templates(&backwards).is_err());
    }
}
