//! Corpus preparation: cleaning and normalization.

mod clean;
mod normalize;

pub use clean::{clean, clean_str, CleanReport, RejectReason, RemovalReason, RemovedLayer, Verdict};
pub use normalize::{
    fit, normalize, normalize_spatial, normalize_temporal, NormalizeConfig, NormalizeError, FIT_LAYER_NAME,
};
