//! JSON mask specifications.
//!
//! ```json
//! {"domain":"phase4d","kind":"ball","t":0.5}
//! {"domain":"freq2d","kind":"rect","bounds":[[-0.4,0.4],[-0.4,0.4]]}
//! {"kind":"product","S":{"kind":"rect","bounds":[[-0.4,0.4],[-0.4,0.4]]},"R":0.25}
//! {"kind":"explicit","cells":[[0,1,2,3],[1,1,1,1]]}
//! ```
//!
//! `domain` defaults to the context the mask is used in (`phase4d` for
//! verification suites); the `S` part of a product is always `freq2d`.

use serde::{Deserialize, Serialize};

use qgabor_core::{GridGeometry, MaskDomain, RegionMask};

use crate::CliError;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MaskSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<String>,
    #[serde(flatten)]
    pub kind: MaskKindSpec,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MaskKindSpec {
    Ball {
        t: f64,
    },
    Rect {
        bounds: Vec<(f64, f64)>,
    },
    Product {
        #[serde(rename = "S")]
        s: Box<MaskSpec>,
        #[serde(rename = "R")]
        r: f64,
    },
    Explicit {
        cells: Vec<Vec<usize>>,
    },
}

impl MaskSpec {
    pub fn parse(json: &str) -> Result<Self, CliError> {
        serde_json::from_str(json)
            .map_err(|e| CliError::Usage(format!("invalid mask spec: {e}")))
    }

    fn domain(&self, default: MaskDomain) -> Result<MaskDomain, CliError> {
        match self.domain.as_deref() {
            None => Ok(default),
            Some("freq2d") => Ok(MaskDomain::Freq2D),
            Some("phase4d") => Ok(MaskDomain::Phase4D),
            Some(other) => Err(CliError::Usage(format!(
                "unknown mask domain {other:?}; expected \"freq2d\" or \"phase4d\""
            ))),
        }
    }

    /// Builds the mask on the given geometry; `default_domain` applies when
    /// the document does not name one.
    pub fn build(
        &self,
        geometry: GridGeometry,
        default_domain: MaskDomain,
    ) -> Result<RegionMask, CliError> {
        let domain = self.domain(default_domain)?;
        match &self.kind {
            MaskKindSpec::Ball { t } => Ok(RegionMask::ball(domain, geometry, *t)),
            MaskKindSpec::Rect { bounds } => {
                RegionMask::rect(domain, geometry, bounds).map_err(CliError::from)
            }
            MaskKindSpec::Product { s, r } => {
                if domain != MaskDomain::Phase4D {
                    return Err(CliError::Usage(
                        "product masks live on the phase4d domain".into(),
                    ));
                }
                let s_mask = s.build(geometry, MaskDomain::Freq2D)?;
                RegionMask::product_s_ball(&s_mask, *r).map_err(CliError::from)
            }
            MaskKindSpec::Explicit { cells } => {
                RegionMask::explicit(domain, geometry, cells).map_err(CliError::from)
            }
        }
    }
}

/// Reads a mask spec from an inline JSON string or, when the argument does
/// not start with `{`, from a file path.
pub fn mask_spec_from_arg(arg: &str) -> Result<MaskSpec, CliError> {
    if arg.trim_start().starts_with('{') {
        MaskSpec::parse(arg)
    } else {
        let text = std::fs::read_to_string(arg).map_err(|e| CliError::Io {
            path: arg.to_string(),
            source: e,
        })?;
        MaskSpec::parse(&text)
    }
}
