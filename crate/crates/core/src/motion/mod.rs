//! Motion signatures, template clustering, keyframe injection, synthetic
//! basic motions and static SVG import.

mod cluster;
mod signature;
mod svg;
mod synth;
mod template;

pub use cluster::{cluster_signatures, purity, signature_distance, ClusterError, Clustering, PRESENCE_PENALTY};
pub use signature::{
    ease, extract_signature, sample_property, Channel, ChannelSummary, Monotonicity, MotionSignature, SAMPLES,
};
pub use svg::{svg_to_static_lottie, SvgError};
pub use synth::{
    apply_motions, classify, inject_motion, synth_basic_motion, BasicMotion, InjectParams, Motion, MotionError,
    SynthParams,
};
pub use template::{read_templates, write_templates, MotionTemplate, TemplateFileError, TEMPLATE_HEADER};
