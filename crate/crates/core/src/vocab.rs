//! Offset/scale vocabulary: disjoint integer token regions per parameter type.
//!
//! A value `x` of type `t` maps to `⌊x·scale⌋ + offset`, where `offset` is the
//! token id of the value zero. Each region is preceded by its pad token, which
//! encodes an absent optional value. Command tokens come first, then the value
//! regions in [`ParamType::ALL`] order, then the text region delegated to the
//! text tokenizer.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use sha2::{Digest, Sha256};

use crate::tokenizer::CommandKind;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ParamType {
    BinaryFlag,
    SmallEnum,
    Count,
    SchemaVersion,
    Temporal,
    SpatialCoord,
    ScalePercent,
    RotationDeg,
    SkewDeg,
    Opacity,
    ColorChannel,
    EasingTangent,
    Expansion,
    TrimPercent,
    FontSize,
    Generic,
}

impl ParamType {
    pub const ALL: [ParamType; 16] = [
        ParamType::BinaryFlag,
        ParamType::SmallEnum,
        ParamType::Count,
        ParamType::SchemaVersion,
        ParamType::Temporal,
        ParamType::SpatialCoord,
        ParamType::ScalePercent,
        ParamType::RotationDeg,
        ParamType::SkewDeg,
        ParamType::Opacity,
        ParamType::ColorChannel,
        ParamType::EasingTangent,
        ParamType::Expansion,
        ParamType::TrimPercent,
        ParamType::FontSize,
        ParamType::Generic,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            ParamType::BinaryFlag => "BinaryFlag",
            ParamType::SmallEnum => "SmallEnum",
            ParamType::Count => "Count",
            ParamType::SchemaVersion => "SchemaVersion",
            ParamType::Temporal => "Temporal",
            ParamType::SpatialCoord => "SpatialCoord",
            ParamType::ScalePercent => "ScalePercent",
            ParamType::RotationDeg => "RotationDeg",
            ParamType::SkewDeg => "SkewDeg",
            ParamType::Opacity => "Opacity",
            ParamType::ColorChannel => "ColorChannel",
            ParamType::EasingTangent => "EasingTangent",
            ParamType::Expansion => "Expansion",
            ParamType::TrimPercent => "TrimPercent",
            ParamType::FontSize => "FontSize",
            ParamType::Generic => "Generic",
        }
    }

    /// Default `(min, max, scale)`.
    pub fn default_range(self) -> (f64, f64, f64) {
        match self {
            ParamType::BinaryFlag => (0.0, 1.0, 1.0),
            ParamType::SmallEnum => (0.0, 63.0, 1.0),
            ParamType::Count => (0.0, COUNT_MAX as f64, 1.0),
            ParamType::SchemaVersion => (0.0, 1023.0, 1.0),
            ParamType::Temporal => (0.0, 60.0, 4.0),
            ParamType::SpatialCoord => (-512.0, 1024.0, 1.0),
            ParamType::ScalePercent => (0.0, 400.0, 1.0),
            ParamType::RotationDeg => (-360.0, 720.0, 1.0),
            ParamType::SkewDeg => (-180.0, 180.0, 1.0),
            ParamType::Opacity => (0.0, 100.0, 1.0),
            ParamType::ColorChannel => (0.0, 1.0, 255.0),
            ParamType::EasingTangent => (0.0, 1.0, 100.0),
            ParamType::Expansion => (-256.0, 256.0, 1.0),
            ParamType::TrimPercent => (0.0, 100.0, 1.0),
            ParamType::FontSize => (0.0, 512.0, 1.0),
            ParamType::Generic => (-1000.0, 1000.0, 1.0),
        }
    }

    /// Structural types keep their default range regardless of corpus data.
    pub fn is_structural(self) -> bool {
        matches!(
            self,
            ParamType::BinaryFlag | ParamType::SmallEnum | ParamType::Count | ParamType::SchemaVersion
        )
    }
}

impl fmt::Display for ParamType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ParamType {
    type Err = VocabError;
    fn from_str(s: &str) -> Result<Self, VocabError> {
        ParamType::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| VocabError::UnknownParamType(s.to_string()))
    }
}

/// Largest value of the Count region.
pub const COUNT_MAX: u32 = 1023;

/// Size of the text region in the default vocabulary (one id per byte).
pub const DEFAULT_TEXT_REGION: u32 = 256;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum VocabError {
    #[error("unknown parameter type {0:?}")]
    UnknownParamType(String),
    #[error("token {token} is outside the {ty} region")]
    TokenOutOfRange { ty: ParamType, token: u32 },
    #[error("no observations for {0} and no default range allowed")]
    EmptyStats(ParamType),
    #[error("vocabulary file line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("vocabulary version {declared} does not match its content ({computed})")]
    VersionMismatch { declared: String, computed: String },
    #[error("vocabulary regions overlap: {0}")]
    Overlap(String),
}

/// Floor that snaps values within rounding noise of an integer onto it, so
/// that `k/s·s` lands back on `k`.
pub(crate) fn grid_floor(y: f64) -> i64 {
    let r = y.round();
    if (y - r).abs() <= 1e-9 * y.abs().max(1.0) {
        r as i64
    } else {
        y.floor() as i64
    }
}

fn grid_ceil(y: f64) -> i64 {
    let r = y.round();
    if (y - r).abs() <= 1e-9 * y.abs().max(1.0) {
        r as i64
    } else {
        y.ceil() as i64
    }
}

/// Token region of one parameter type.
#[derive(Debug, Clone, PartialEq)]
pub struct TypeRegion {
    pub ty: ParamType,
    /// Token id of the value zero.
    pub offset: i64,
    pub scale: f64,
    pub min: f64,
    pub max: f64,
    pub pad: u32,
}

impl TypeRegion {
    pub fn lo(&self) -> i64 {
        grid_floor(self.min * self.scale)
    }

    pub fn hi(&self) -> i64 {
        grid_floor(self.max * self.scale)
    }

    /// First and last value token ids.
    pub fn span(&self) -> (u32, u32) {
        ((self.offset + self.lo()) as u32, (self.offset + self.hi()) as u32)
    }

    pub fn step(&self) -> f64 {
        1.0 / self.scale
    }
}

/// What a token id denotes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TokenClass {
    Command(CommandKind),
    Pad(ParamType),
    Value(ParamType),
    Text(u32),
    Unknown,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VocabSpec {
    command_ids: Vec<u32>,
    regions: Vec<TypeRegion>,
    pub text_base: u32,
    pub text_size: u32,
    pub version: String,
}

impl Default for VocabSpec {
    fn default() -> Self {
        let ranges: Vec<_> = ParamType::ALL
            .iter()
            .map(|t| {
                let (min, max, scale) = t.default_range();
                (*t, min, max, scale)
            })
            .collect();
        VocabSpec::layout(&ranges, DEFAULT_TEXT_REGION)
    }
}

impl VocabSpec {
    /// Packs commands, then each region (pad first), then the text region.
    pub fn layout(ranges: &[(ParamType, f64, f64, f64)], text_size: u32) -> Self {
        let command_ids: Vec<u32> = (0..CommandKind::all().len() as u32).collect();
        let mut cursor = command_ids.len() as i64;
        let mut regions = Vec::with_capacity(ranges.len());
        for ty in ParamType::ALL {
            let &(_, min, max, scale) = ranges
                .iter()
                .find(|r| r.0 == ty)
                .expect("every parameter type has a range");
            let pad = cursor;
            let lo = grid_floor(min * scale);
            let hi = grid_floor(max * scale);
            let offset = pad + 1 - lo;
            regions.push(TypeRegion {
                ty,
                offset,
                scale,
                min,
                max,
                pad: pad as u32,
            });
            cursor = offset + hi + 1;
        }
        let mut v = VocabSpec {
            command_ids,
            regions,
            text_base: cursor as u32,
            text_size,
            version: String::new(),
        };
        v.version = v.content_hash();
        v
    }

    pub fn region(&self, ty: ParamType) -> &TypeRegion {
        &self.regions[ty.index()]
    }

    pub fn regions(&self) -> &[TypeRegion] {
        &self.regions
    }

    pub fn command_token(&self, kind: CommandKind) -> u32 {
        self.command_ids[kind.ordinal()]
    }

    pub fn pad_token(&self, ty: ParamType) -> u32 {
        self.region(ty).pad
    }

    /// Total number of ids, text region included.
    pub fn size(&self) -> u32 {
        self.text_base + self.text_size
    }

    /// Quantizes `x`, clamping to the region. Returns the token and whether
    /// clamping happened.
    pub fn quantize(&self, x: f64, ty: ParamType) -> (u32, bool) {
        let r = self.region(ty);
        let (x, clamped) = if !x.is_finite() {
            (0f64.clamp(r.min, r.max), true)
        } else if x < r.min {
            (r.min, true)
        } else if x > r.max {
            (r.max, true)
        } else {
            (x, false)
        };
        let k = grid_floor(x * r.scale).clamp(r.lo(), r.hi());
        ((r.offset + k) as u32, clamped)
    }

    /// Like [`quantize`](Self::quantize) but maps `None` to the pad token.
    pub fn quantize_opt(&self, x: Option<f64>, ty: ParamType) -> (u32, bool) {
        match x {
            None => (self.pad_token(ty), false),
            Some(x) => self.quantize(x, ty),
        }
    }

    /// `Ok(None)` for the pad token.
    pub fn dequantize(&self, token: u32, ty: ParamType) -> Result<Option<f64>, VocabError> {
        let r = self.region(ty);
        if token == r.pad {
            return Ok(None);
        }
        let (start, end) = r.span();
        if token < start || token > end {
            return Err(VocabError::TokenOutOfRange { ty, token });
        }
        Ok(Some((token as i64 - r.offset) as f64 / r.scale))
    }

    pub fn classify(&self, token: u32) -> TokenClass {
        if let Some(i) = self.command_ids.iter().position(|&c| c == token) {
            return TokenClass::Command(CommandKind::all()[i]);
        }
        for r in &self.regions {
            if token == r.pad {
                return TokenClass::Pad(r.ty);
            }
            let (start, end) = r.span();
            if (start..=end).contains(&token) {
                return TokenClass::Value(r.ty);
            }
        }
        if token >= self.text_base && token < self.text_base + self.text_size {
            return TokenClass::Text(token - self.text_base);
        }
        TokenClass::Unknown
    }

    /// Every reserved interval, labelled, for disjointness checks.
    pub fn intervals(&self) -> Vec<(String, u32, u32)> {
        let mut out = Vec::new();
        for (i, k) in CommandKind::all().iter().enumerate() {
            out.push((format!("command {k}"), self.command_ids[i], self.command_ids[i]));
        }
        for r in &self.regions {
            out.push((format!("pad {}", r.ty), r.pad, r.pad));
            let (s, e) = r.span();
            out.push((format!("values {}", r.ty), s, e));
        }
        if self.text_size > 0 {
            out.push((
                "text".to_string(),
                self.text_base,
                self.text_base + self.text_size - 1,
            ));
        }
        out
    }

    /// Pairs of intervals that share at least one id.
    pub fn overlaps(&self) -> Vec<(String, String)> {
        let iv = self.intervals();
        let mut out = Vec::new();
        for i in 0..iv.len() {
            for j in i + 1..iv.len() {
                if iv[i].1 <= iv[j].2 && iv[j].1 <= iv[i].2 {
                    out.push((iv[i].0.clone(), iv[j].0.clone()));
                }
            }
        }
        out
    }

    fn body(&self) -> String {
        let mut s = String::new();
        writeln!(s, "TEXT {} {}", self.text_base, self.text_size).unwrap();
        for (i, k) in CommandKind::all().iter().enumerate() {
            writeln!(s, "CMD {} {}", k.name(), self.command_ids[i]).unwrap();
        }
        for r in &self.regions {
            writeln!(
                s,
                "TYPE {} {} {} {} {} {}",
                r.ty, r.offset, r.scale, r.min, r.max, r.pad
            )
            .unwrap();
        }
        s
    }

    fn content_hash(&self) -> String {
        let digest = Sha256::digest(self.body().as_bytes());
        digest[..8].iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Line-oriented file form.
    pub fn to_file_string(&self) -> String {
        format!("version {}\n{}", self.version, self.body())
    }

    pub fn from_file_str(text: &str) -> Result<Self, VocabError> {
        let err = |line: usize, message: &str| VocabError::Parse {
            line,
            message: message.to_string(),
        };
        let mut version = None;
        let mut text_region = None;
        let mut command_ids: Vec<Option<u32>> = vec![None; CommandKind::all().len()];
        let mut regions: Vec<Option<TypeRegion>> = vec![None; ParamType::ALL.len()];
        for (n, line) in text.lines().enumerate() {
            let n = n + 1;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let f: Vec<&str> = line.split_whitespace().collect();
            let int = |s: &str| s.parse::<i64>().map_err(|_| err(n, "expected an integer"));
            let real = |s: &str| s.parse::<f64>().map_err(|_| err(n, "expected a number"));
            match f[0] {
                "version" if f.len() == 2 => version = Some(f[1].to_string()),
                "TEXT" if f.len() == 3 => text_region = Some((int(f[1])? as u32, int(f[2])? as u32)),
                "CMD" if f.len() == 3 => {
                    let k = CommandKind::from_name(f[1])
                        .ok_or_else(|| err(n, &format!("unknown command {}", f[1])))?;
                    command_ids[k.ordinal()] = Some(int(f[2])? as u32);
                }
                "TYPE" if f.len() == 7 => {
                    let ty: ParamType = f[1].parse()?;
                    regions[ty.index()] = Some(TypeRegion {
                        ty,
                        offset: int(f[2])?,
                        scale: real(f[3])?,
                        min: real(f[4])?,
                        max: real(f[5])?,
                        pad: int(f[6])? as u32,
                    });
                }
                _ => return Err(err(n, "unrecognized line")),
            }
        }
        let version = version.ok_or_else(|| err(0, "missing version line"))?;
        let (text_base, text_size) = text_region.ok_or_else(|| err(0, "missing TEXT line"))?;
        let command_ids = command_ids
            .into_iter()
            .zip(CommandKind::all())
            .map(|(id, k)| id.ok_or_else(|| err(0, &format!("missing command {k}"))))
            .collect::<Result<Vec<_>, _>>()?;
        let regions = regions
            .into_iter()
            .zip(ParamType::ALL)
            .map(|(r, t)| r.ok_or_else(|| err(0, &format!("missing type {t}"))))
            .collect::<Result<Vec<_>, _>>()?;
        for r in &regions {
            if !(r.scale > 0.0) || r.min > r.max {
                return Err(err(0, &format!("invalid range for {}", r.ty)));
            }
            if r.pad as i64 != r.offset + r.lo() - 1 {
                return Err(err(0, &format!("pad token of {} is not below its range", r.ty)));
            }
        }
        let v = VocabSpec {
            command_ids,
            regions,
            text_base,
            text_size,
            version,
        };
        let computed = v.content_hash();
        if computed != v.version {
            return Err(VocabError::VersionMismatch {
                declared: v.version,
                computed,
            });
        }
        if let Some((a, b)) = v.overlaps().into_iter().next() {
            return Err(VocabError::Overlap(format!("{a} / {b}")));
        }
        Ok(v)
    }
}

/// Packs `"M.m.p"` (M ∈ {4,5}, m < 16, p < 32) into one SchemaVersion value.
pub fn pack_version(v: &str) -> Option<u32> {
    let parts: Vec<&str> = v.split('.').collect();
    let [major, minor, patch] = parts.as_slice() else {
        return None;
    };
    let (major, minor, patch): (u32, u32, u32) =
        (major.parse().ok()?, minor.parse().ok()?, patch.parse().ok()?);
    if !(4..=5).contains(&major) || minor >= 16 || patch >= 32 {
        return None;
    }
    let packed = (major - 4) * 512 + minor * 32 + patch;
    (unpack_version(packed) == v).then_some(packed)
}

pub fn unpack_version(packed: u32) -> String {
    format!("{}.{}.{}", packed / 512 + 4, (packed % 512) / 32, packed % 32)
}

/// Observed parameter values per type.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CorpusStats {
    samples: BTreeMap<ParamType, Vec<f64>>,
}

impl CorpusStats {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, ty: ParamType, x: f64) {
        if x.is_finite() {
            self.samples.entry(ty).or_default().push(x);
        }
    }

    pub fn merge(&mut self, other: CorpusStats) {
        for (ty, mut xs) in other.samples {
            self.samples.entry(ty).or_default().append(&mut xs);
        }
    }

    pub fn samples(&self, ty: ParamType) -> &[f64] {
        self.samples.get(&ty).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn is_empty(&self) -> bool {
        self.samples.values().all(|v| v.is_empty())
    }

    /// Type-7 (linear interpolation) quantile of the observations.
    pub fn quantile(&self, ty: ParamType, q: f64) -> Option<f64> {
        let mut xs = self.samples(ty).to_vec();
        if xs.is_empty() {
            return None;
        }
        xs.sort_by(|a, b| a.total_cmp(b));
        let h = (xs.len() - 1) as f64 * q.clamp(0.0, 1.0);
        let (i, frac) = (h.floor() as usize, h.fract());
        let lo = xs[i];
        let hi = xs[(i + 1).min(xs.len() - 1)];
        Some(lo + (hi - lo) * frac)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BuildConfig {
    pub q_lo: f64,
    pub q_hi: f64,
    pub text_region: u32,
    /// Use a type's default range when it has no observations; otherwise
    /// fail with `EmptyStats`.
    pub defaults_for_missing: bool,
}

impl Default for BuildConfig {
    fn default() -> Self {
        BuildConfig {
            q_lo: 0.001,
            q_hi: 0.999,
            text_region: DEFAULT_TEXT_REGION,
            defaults_for_missing: true,
        }
    }
}

/// Builds a vocabulary whose ranges cover the `[q_lo, q_hi]` quantiles of
/// the observations, rounded outward to whole token steps.
pub fn build_vocab(stats: &CorpusStats, cfg: &BuildConfig) -> Result<VocabSpec, VocabError> {
    let mut ranges = Vec::with_capacity(ParamType::ALL.len());
    for ty in ParamType::ALL {
        let (dmin, dmax, scale) = ty.default_range();
        if ty.is_structural() {
            ranges.push((ty, dmin, dmax, scale));
            continue;
        }
        match (stats.quantile(ty, cfg.q_lo), stats.quantile(ty, cfg.q_hi)) {
            (Some(lo), Some(hi)) => {
                let min = grid_floor(lo * scale) as f64 / scale;
                let max = grid_ceil(hi * scale) as f64 / scale;
                ranges.push((ty, min, max, scale));
            }
            _ if cfg.defaults_for_missing => ranges.push((ty, dmin, dmax, scale)),
            _ => return Err(VocabError::EmptyStats(ty)),
        }
    }
    Ok(VocabSpec::layout(&ranges, cfg.text_region))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn opacity_and_rotation_examples() {
        let v = VocabSpec::default();
        let op = v.region(ParamType::Opacity).offset;
        assert_eq!(v.quantize(100.0, ParamType::Opacity), ((op + 100) as u32, false));
        let rot = v.region(ParamType::RotationDeg).offset;
        assert_eq!(v.quantize(-90.0, ParamType::RotationDeg).0 as i64, rot - 90);
        let sp = v.region(ParamType::SpatialCoord).offset;
        let (t, _) = v.quantize(0.7, ParamType::SpatialCoord);
        assert_eq!(t as i64, sp);
        assert_eq!(v.dequantize(t, ParamType::SpatialCoord).unwrap(), Some(0.0));
    }

    #[test]
    fn pad_and_foreign_tokens() {
        let v = VocabSpec::default();
        let pad = v.pad_token(ParamType::SpatialCoord);
        assert_eq!(v.dequantize(pad, ParamType::SpatialCoord).unwrap(), None);
        let foreign = v.quantize(50.0, ParamType::Opacity).0;
        assert!(matches!(
            v.dequantize(foreign, ParamType::SpatialCoord),
            Err(VocabError::TokenOutOfRange { .. })
        ));
    }

    #[test]
    fn clamping_is_reported() {
        let v = VocabSpec::default();
        let (t, clamped) = v.quantize(150.0, ParamType::Opacity);
        assert!(clamped);
        assert_eq!(v.dequantize(t, ParamType::Opacity).unwrap(), Some(100.0));
    }

    #[test]
    fn file_round_trip() {
        let v = VocabSpec::default();
        let text = v.to_file_string();
        assert_eq!(VocabSpec::from_file_str(&text).unwrap(), v);
        let tampered = text.replace("\nTEXT ", "\n# comment\nTEXT ").replace(
            &format!("TEXT {} 256", v.text_base),
            &format!("TEXT {} 300", v.text_base),
        );
        let r = VocabSpec::from_file_str(&tampered);
        assert!(matches!(r, Err(VocabError::VersionMismatch { .. })), "{r:?}");
    }

    #[test]
    fn version_packing() {
        assert_eq!(pack_version("5.12.1"), Some(512 + 12 * 32 + 1));
        assert_eq!(unpack_version(pack_version("5.12.1").unwrap()), "5.12.1");
        assert_eq!(pack_version("4.8.0"), Some(8 * 32));
        assert_eq!(pack_version("5.07.1"), None);
        assert_eq!(pack_version("6.0.0"), None);
        assert_eq!(pack_version("5.12"), None);
    }

    #[test]
    fn constant_observations_give_single_token() {
        let mut s = CorpusStats::new();
        for _ in 0..10 {
            s.add(ParamType::Opacity, 42.0);
        }
        let v = build_vocab(&s, &BuildConfig::default()).unwrap();
        let r = v.region(ParamType::Opacity);
        assert_eq!((r.min, r.max), (42.0, 42.0));
        let (a, b) = r.span();
        assert_eq!(a, b);
        assert_eq!(r.pad + 1, a);
    }

    #[test]
    fn empty_stats_without_defaults() {
        let cfg = BuildConfig {
            defaults_for_missing: false,
            ..BuildConfig::default()
        };
        assert!(matches!(
            build_vocab(&CorpusStats::new(), &cfg),
            Err(VocabError::EmptyStats(_))
        ));
        assert_eq!(
            build_vocab(&CorpusStats::new(), &BuildConfig::default()).unwrap(),
            VocabSpec::default()
        );
    }

    #[test]
    fn quantile_type7() {
        let mut s = CorpusStats::new();
        for x in [1.0, 2.0, 3.0, 4.0] {
            s.add(ParamType::Generic, x);
        }
        assert_eq!(s.quantile(ParamType::Generic, 0.5), Some(2.5));
        assert_eq!(s.quantile(ParamType::Generic, 0.0), Some(1.0));
        assert_eq!(s.quantile(ParamType::Generic, 1.0), Some(4.0));
    }
}
