//! Command-line frontend: file codecs, mask specs, verification suites and
//! spectrogram export.
//!
//! Exit-code contract of the `qgabor` binary: 0 = all checks pass,
//! 1 = an asserted check failed, 2 = usage or precondition error,
//! 3 = I/O or malformed-file error.

pub mod codec;
pub mod maskspec;
pub mod pgm;
pub mod suite;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },

    #[error(transparent)]
    Codec(#[from] codec::CodecError),

    #[error(transparent)]
    Core(#[from] qgabor_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Core(_) => 2,
            CliError::Io { .. } | CliError::Codec(_) => 3,
        }
    }
}

pub fn read_file(path: &std::path::Path) -> Result<Vec<u8>, CliError> {
    std::fs::read(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        source: e,
    })
}

pub fn write_file(path: &std::path::Path, bytes: &[u8]) -> Result<(), CliError> {
    std::fs::write(path, bytes).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        source: e,
    })
}
