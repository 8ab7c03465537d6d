//! QSIG and QGAB binary codecs.
//!
//! Both formats are an ASCII magic line, one JSON header line, then raw
//! little-endian f64 payload:
//!
//! ```text
//! QSIG1\n{"n1":..,"n2":..,"mode":"discrete"|"quadrature","L1":..,"L2":..}\n<floats>
//! QGAB1\n{...same fields...,"window_norm_sq":..}\n<floats>
//! ```
//!
//! QSIG payload holds `n1·n2·4` floats row-major with components interleaved
//! in storage order `(q1, q2, q3, q4)`; QGAB holds `n1·n2·n1·n2·4` floats in
//! index order `(m1, m2, b1, b2)`. Decoding then re-encoding reproduces the
//! byte stream exactly.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use qgabor_core::{GaborField4D, GridGeometry, GridMode, QSignal2D, Quaternion};

pub const QSIG_MAGIC: &[u8] = b"QSIG1\n";
pub const QGAB_MAGIC: &[u8] = b"QGAB1\n";

#[derive(Debug, Error)]
pub enum CodecError {
    #[error("bad magic: expected {expected:?}")]
    BadMagic { expected: &'static str },

    #[error("truncated stream: {0}")]
    Truncated(String),

    #[error("invalid header: {0}")]
    BadHeader(String),

    #[error("header/payload size mismatch: header implies {expected} payload bytes, found {found}")]
    SizeMismatch { expected: usize, found: usize },
}

#[derive(Serialize, Deserialize)]
struct SigHeader {
    n1: usize,
    n2: usize,
    mode: String,
    #[serde(rename = "L1")]
    l1: Option<f64>,
    #[serde(rename = "L2")]
    l2: Option<f64>,
}

#[derive(Serialize, Deserialize)]
struct GabHeader {
    n1: usize,
    n2: usize,
    mode: String,
    #[serde(rename = "L1")]
    l1: Option<f64>,
    #[serde(rename = "L2")]
    l2: Option<f64>,
    window_norm_sq: f64,
}

fn mode_fields(geometry: &GridGeometry) -> (String, Option<f64>, Option<f64>) {
    match geometry.mode {
        GridMode::PureDiscrete => ("discrete".into(), None, None),
        GridMode::Quadrature { l1, l2 } => ("quadrature".into(), Some(l1), Some(l2)),
    }
}

fn geometry_from(n1: usize, n2: usize, mode: &str, l1: Option<f64>, l2: Option<f64>) -> Result<GridGeometry, CodecError> {
    let build = match mode {
        "discrete" => GridGeometry::pure_discrete(n1, n2),
        "quadrature" => {
            let (l1, l2) = match (l1, l2) {
                (Some(l1), Some(l2)) => (l1, l2),
                _ => {
                    return Err(CodecError::BadHeader(
                        "quadrature mode requires L1 and L2".into(),
                    ))
                }
            };
            GridGeometry::quadrature(n1, n2, l1, l2)
        }
        other => {
            return Err(CodecError::BadHeader(format!(
                "unknown mode {other:?}; expected \"discrete\" or \"quadrature\""
            )))
        }
    };
    build.map_err(|e| CodecError::BadHeader(e.to_string()))
}

/// Splits `magic + header-line + payload`; errors are distinct per failure.
fn split_frame<'a>(bytes: &'a [u8], magic: &'static [u8]) -> Result<(&'a str, &'a [u8]), CodecError> {
    let expected = std::str::from_utf8(&magic[..magic.len() - 1]).unwrap();
    if bytes.len() < magic.len() || &bytes[..magic.len()] != magic {
        return Err(CodecError::BadMagic { expected });
    }
    let rest = &bytes[magic.len()..];
    let nl = rest
        .iter()
        .position(|&b| b == b'\n')
        .ok_or_else(|| CodecError::Truncated("header line not terminated".into()))?;
    let header = std::str::from_utf8(&rest[..nl])
        .map_err(|e| CodecError::BadHeader(format!("header not utf-8: {e}")))?;
    Ok((header, &rest[nl + 1..]))
}

fn write_floats(out: &mut Vec<u8>, data: &[Quaternion]) {
    for q in data {
        for c in q.to_array() {
            out.extend_from_slice(&c.to_le_bytes());
        }
    }
}

fn read_floats(payload: &[u8], quaternions: usize) -> Result<Vec<Quaternion>, CodecError> {
    let expected = quaternions * 4 * 8;
    if payload.len() != expected {
        return Err(CodecError::SizeMismatch {
            expected,
            found: payload.len(),
        });
    }
    let mut out = Vec::with_capacity(quaternions);
    for chunk in payload.chunks_exact(32) {
        let f = |i: usize| f64::from_le_bytes(chunk[i * 8..(i + 1) * 8].try_into().unwrap());
        out.push(Quaternion::new(f(0), f(1), f(2), f(3)));
    }
    Ok(out)
}

pub fn encode_qsig(signal: &QSignal2D) -> Vec<u8> {
    let g = signal.geometry();
    let (mode, l1, l2) = mode_fields(g);
    let header = SigHeader {
        n1: g.n1,
        n2: g.n2,
        mode,
        l1,
        l2,
    };
    let mut out = Vec::new();
    out.extend_from_slice(QSIG_MAGIC);
    out.extend_from_slice(serde_json::to_string(&header).unwrap().as_bytes());
    out.push(b'\n');
    write_floats(&mut out, signal.data());
    out
}

pub fn decode_qsig(bytes: &[u8]) -> Result<QSignal2D, CodecError> {
    let (header, payload) = split_frame(bytes, QSIG_MAGIC)?;
    let h: SigHeader =
        serde_json::from_str(header).map_err(|e| CodecError::BadHeader(e.to_string()))?;
    let geometry = geometry_from(h.n1, h.n2, &h.mode, h.l1, h.l2)?;
    let data = read_floats(payload, geometry.len())?;
    QSignal2D::from_data(geometry, data).map_err(|e| CodecError::BadHeader(e.to_string()))
}

pub fn encode_qgab(field: &GaborField4D) -> Vec<u8> {
    let g = field.geometry();
    let (mode, l1, l2) = mode_fields(g);
    let header = GabHeader {
        n1: g.n1,
        n2: g.n2,
        mode,
        l1,
        l2,
        window_norm_sq: field.window_norm_sq(),
    };
    let mut out = Vec::new();
    out.extend_from_slice(QGAB_MAGIC);
    out.extend_from_slice(serde_json::to_string(&header).unwrap().as_bytes());
    out.push(b'\n');
    write_floats(&mut out, field.data());
    out
}

pub fn decode_qgab(bytes: &[u8]) -> Result<GaborField4D, CodecError> {
    let (header, payload) = split_frame(bytes, QGAB_MAGIC)?;
    let h: GabHeader =
        serde_json::from_str(header).map_err(|e| CodecError::BadHeader(e.to_string()))?;
    let geometry = geometry_from(h.n1, h.n2, &h.mode, h.l1, h.l2)?;
    let data = read_floats(payload, geometry.len() * geometry.len())?;
    GaborField4D::from_raw(geometry, h.window_norm_sq, data)
        .map_err(|e| CodecError::BadHeader(e.to_string()))
}
