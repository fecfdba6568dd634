//! Requests and their per-command payloads.

use serde::{Deserialize, Serialize};

use crate::format::{DivisorJson, FibrationJson, GeometryJson, KodJson, ModelJson, SurfaceJson};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Dim2,
    Dim3,
    Dim4,
    Relative,
    Fibersum,
    Lefschetz,
    Seifert,
    Rhurwitz,
    Cover,
    Bundle,
}

impl Command {
    pub fn as_str(self) -> &'static str {
        match self {
            Command::Dim2 => "dim2",
            Command::Dim3 => "dim3",
            Command::Dim4 => "dim4",
            Command::Relative => "relative",
            Command::Fibersum => "fibersum",
            Command::Lefschetz => "lefschetz",
            Command::Seifert => "seifert",
            Command::Rhurwitz => "rhurwitz",
            Command::Cover => "cover",
            Command::Bundle => "bundle",
        }
    }
}

/// How a report is rendered.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Output {
    #[default]
    Text,
    Json,
}

/// Per-request options; unset fields fall back to the command line.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default)]
    pub bound: Option<u32>,
    #[serde(default)]
    pub trace: Option<bool>,
    #[serde(default)]
    pub output: Option<Output>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Request {
    pub command: Command,
    pub payload: serde_json::Value,
    #[serde(default)]
    pub options: Options,
}

/// Resolved settings for one evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Settings {
    pub bound: u32,
    pub trace: bool,
    pub output: Output,
}

impl Settings {
    pub fn resolve(&self, o: &Options) -> Settings {
        Settings {
            bound: o.bound.unwrap_or(self.bound),
            trace: o.trace.unwrap_or(self.trace),
            output: o.output.unwrap_or(self.output),
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Dim2Payload {
    pub genus: u32,
    #[serde(default)]
    pub divisor: DivisorJson,
}

/// One decomposition of a connected 3-manifold, or several components.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum Dim3Payload {
    Pieces { pieces: Vec<GeometryJson> },
    Components { components: Vec<Vec<GeometryJson>> },
}

#[derive(Clone, Debug, Deserialize)]
pub struct Dim4Payload {
    #[serde(flatten)]
    pub model: ModelJson,
    /// Also report the −1 set.
    #[serde(default)]
    pub enumerate: bool,
}

#[derive(Clone, Debug, Deserialize)]
pub struct RelativePayload {
    #[serde(flatten)]
    pub model: ModelJson,
    #[serde(default)]
    pub surface: SurfaceJson,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FibersumPayload {
    pub first: RelativePayload,
    pub second: RelativePayload,
}

pub type LefschetzPayload = FibrationJson;

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeifertPayload {
    #[serde(default)]
    pub base_genus: u32,
    pub multiplicities: Vec<u32>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RhurwitzPayload {
    pub degree: u32,
    pub chi_base: i64,
    #[serde(default)]
    pub indices: Vec<u32>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct CoverPayload {
    #[serde(flatten)]
    pub model: ModelJson,
    pub n: u32,
}

/// A surface bundle over a surface, or a bundle of total dimension ≤ 3
/// given by the base and fiber values.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum BundlePayload {
    Surface { base_genus: u32, fiber_genus: u32 },
    Low { kappa_base: KodJson, kappa_fiber: KodJson },
}
