use std::fmt;

use crate::error::{Error, Result};
use crate::path::Path;

/// Default loop repetition bound for boundary-interior coverage.
pub const DEFAULT_BIC_DEPTH: u32 = 1;

/// The coverage criteria. `NSwitch(0)` and `NSwitch(1)` coincide with edge
/// and edge-pair coverage.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Criterion {
    Node,
    Edge,
    Branch,
    EdgePair,
    AllPaths,
    PrimePath,
    SpecifiedPath(Vec<Path>),
    SimpleRoundTrip,
    CompleteRoundTrip,
    BasisPath,
    WMethod,
    NSwitch(u32),
    BoundaryInterior(u32),
}

impl Criterion {
    /// Short upper-case code, e.g. `EPC`.
    pub fn code(&self) -> &'static str {
        match self {
            Criterion::Node => "NC",
            Criterion::Edge => "EC",
            Criterion::Branch => "BC",
            Criterion::EdgePair => "EPC",
            Criterion::AllPaths => "APC",
            Criterion::PrimePath => "PPC",
            Criterion::SpecifiedPath(_) => "SPC",
            Criterion::SimpleRoundTrip => "SRTC",
            Criterion::CompleteRoundTrip => "CRTC",
            Criterion::BasisPath => "BPC",
            Criterion::WMethod => "WMC",
            Criterion::NSwitch(_) => "NSC",
            Criterion::BoundaryInterior(_) => "BIC",
        }
    }

    /// Parses a parameterless code (`nc`, `ppc`, ...). `bic` gets the default
    /// depth; `nsc` and `spc` need parameters and are rejected here.
    pub fn from_code(code: &str) -> Result<Criterion> {
        let c = match code.to_ascii_uppercase().as_str() {
            "NC" => Criterion::Node,
            "EC" => Criterion::Edge,
            "BC" => Criterion::Branch,
            "EPC" => Criterion::EdgePair,
            "APC" => Criterion::AllPaths,
            "PPC" => Criterion::PrimePath,
            "SRTC" => Criterion::SimpleRoundTrip,
            "CRTC" => Criterion::CompleteRoundTrip,
            "BPC" => Criterion::BasisPath,
            "WMC" => Criterion::WMethod,
            "BIC" => Criterion::BoundaryInterior(DEFAULT_BIC_DEPTH),
            "NSC" => return Err(Error::Config("nsc needs a parameter, e.g. nsc:2".into())),
            "SPC" => return Err(Error::Config("spc needs a path list, e.g. spc:@paths.json".into())),
            other => return Err(Error::Config(format!("unknown criterion `{other}`"))),
        };
        Ok(c)
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Criterion::NSwitch(n) => write!(f, "NSC({n})"),
            Criterion::BoundaryInterior(d) if *d != DEFAULT_BIC_DEPTH => write!(f, "BIC({d})"),
            other => f.write_str(other.code()),
        }
    }
}
