//! Spectrogram-slice rendering to binary PGM (P5).

use qgabor_core::GaborField4D;

use crate::CliError;

/// One of the four phase-space axes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SliceAxis {
    M1,
    M2,
    B1,
    B2,
}

impl SliceAxis {
    pub const ALL: [SliceAxis; 4] = [SliceAxis::M1, SliceAxis::M2, SliceAxis::B1, SliceAxis::B2];

    pub fn parse(s: &str) -> Result<Self, CliError> {
        match s {
            "m1" => Ok(SliceAxis::M1),
            "m2" => Ok(SliceAxis::M2),
            "b1" => Ok(SliceAxis::B1),
            "b2" => Ok(SliceAxis::B2),
            other => Err(CliError::Usage(format!(
                "unknown slice axis {other:?}; expected m1, m2, b1 or b2"
            ))),
        }
    }

    fn name(self) -> &'static str {
        match self {
            SliceAxis::M1 => "m1",
            SliceAxis::M2 => "m2",
            SliceAxis::B1 => "b1",
            SliceAxis::B2 => "b2",
        }
    }
}

/// A slice specification fixing exactly two of `(m1, m2, b1, b2)`,
/// parsed from `"b1=0,b2=3"` style text.
#[derive(Clone, Debug)]
pub struct SliceSpec {
    pub fixed: Vec<(SliceAxis, usize)>,
}

impl SliceSpec {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut fixed = Vec::new();
        for part in text.split(',') {
            let (axis, value) = part.split_once('=').ok_or_else(|| {
                CliError::Usage(format!("slice component {part:?} is not axis=index"))
            })?;
            let axis = SliceAxis::parse(axis.trim())?;
            if fixed.iter().any(|(a, _)| *a == axis) {
                return Err(CliError::Usage(format!(
                    "slice fixes axis {} twice",
                    axis.name()
                )));
            }
            let value: usize = value.trim().parse().map_err(|_| {
                CliError::Usage(format!("slice index {value:?} is not an integer"))
            })?;
            fixed.push((axis, value));
        }
        Ok(SliceSpec { fixed })
    }
}

/// 8-bit grayscale image with a P5 encoder.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PgmImage {
    pub width: usize,
    pub height: usize,
    pub pixels: Vec<u8>,
}

impl PgmImage {
    pub fn encode(&self) -> Vec<u8> {
        let mut out = format!("P5\n{} {}\n255\n", self.width, self.height).into_bytes();
        out.extend_from_slice(&self.pixels);
        out
    }
}

/// Renders `|G|` over the two unfixed axes, linearly mapped to `0..=255`
/// (max value maps to 255; an all-zero slice stays all zero). The fixed axes
/// must be exactly two and in range.
pub fn render_spectrogram_slice(
    field: &GaborField4D,
    spec: &SliceSpec,
) -> Result<PgmImage, CliError> {
    if spec.fixed.len() != 2 {
        return Err(CliError::Usage(format!(
            "slice must fix exactly two of (m1, m2, b1, b2), got {}",
            spec.fixed.len()
        )));
    }
    let g = field.geometry();
    let size = |axis: SliceAxis| match axis {
        SliceAxis::M1 | SliceAxis::B1 => g.n1,
        SliceAxis::M2 | SliceAxis::B2 => g.n2,
    };
    let mut index = [0usize; 4]; // (m1, m2, b1, b2)
    let slot = |axis: SliceAxis| match axis {
        SliceAxis::M1 => 0,
        SliceAxis::M2 => 1,
        SliceAxis::B1 => 2,
        SliceAxis::B2 => 3,
    };
    for &(axis, value) in &spec.fixed {
        if value >= size(axis) {
            return Err(CliError::Usage(format!(
                "slice index {}={} out of range (size {})",
                axis.name(),
                value,
                size(axis)
            )));
        }
        index[slot(axis)] = value;
    }
    let free: Vec<SliceAxis> = SliceAxis::ALL
        .into_iter()
        .filter(|a| spec.fixed.iter().all(|(fa, _)| fa != a))
        .collect();
    let (rows_axis, cols_axis) = (free[0], free[1]);
    let (height, width) = (size(rows_axis), size(cols_axis));

    let mut moduli = Vec::with_capacity(width * height);
    for r in 0..height {
        for c in 0..width {
            index[slot(rows_axis)] = r;
            index[slot(cols_axis)] = c;
            moduli.push(field.get(index[0], index[1], index[2], index[3]).norm());
        }
    }
    let max = moduli.iter().cloned().fold(0.0f64, f64::max);
    let pixels = moduli
        .iter()
        .map(|&v| {
            if max > 0.0 {
                (v / max * 255.0).round() as u8
            } else {
                0
            }
        })
        .collect();
    Ok(PgmImage {
        width,
        height,
        pixels,
    })
}
