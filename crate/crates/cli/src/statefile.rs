//! Plain-text state files: one `label,re,im` record per basis state.
//!
//! ```text
//! # GHZ
//! label,re,im
//! 000,0.7071067811865476,0
//! 111,0.7071067811865476,0
//! 001,0,0
//! ...
//! ```
//!
//! Blank lines and `#` comments are ignored and the header row is optional.
//! All eight labels must appear exactly once.

use std::fmt;

use gme_core::{PureState3, C64};

/// Norm deviations up to this are accepted silently.
pub const SILENT_TOL: f64 = 1e-10;
/// Norm deviations up to this are renormalized with a warning.
pub const RENORM_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub enum StateFileError {
    /// Malformed content.
    Parse { line: usize, message: String },
    MissingLabel(String),
    /// Norm too far from 1 to be a typing slip.
    Norm { norm: f64 },
}

impl fmt::Display for StateFileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StateFileError::Parse { line, message } => write!(f, "line {line}: {message}"),
            StateFileError::MissingLabel(l) => write!(f, "missing amplitude for |{l}>"),
            StateFileError::Norm { norm } => {
                write!(f, "state norm {norm} differs from 1 by more than {RENORM_TOL:e}")
            }
        }
    }
}

impl std::error::Error for StateFileError {}

/// Parsed state plus the norm of the raw amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct StateFile {
    pub state: PureState3,
    pub raw_norm: f64,
}

impl StateFile {
    pub fn renormalized(&self) -> bool {
        (self.raw_norm - 1.0).abs() > SILENT_TOL
    }
}

fn label_index(label: &str) -> Option<usize> {
    if label.len() != 3 || !label.bytes().all(|b| b == b'0' || b == b'1') {
        return None;
    }
    usize::from_str_radix(label, 2).ok()
}

pub fn parse(text: &str) -> Result<StateFile, StateFileError> {
    let mut amps: [Option<C64>; 8] = [None; 8];
    let mut seen_record = false;
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = content.split(',').map(str::trim).collect();
        let err = |message: String| StateFileError::Parse { line, message };
        let Some(idx) = label_index(fields[0]) else {
            if !seen_record && fields[0].eq_ignore_ascii_case("label") {
                seen_record = true;
                continue;
            }
            return Err(err(format!("invalid basis label {:?}", fields[0])));
        };
        seen_record = true;
        if fields.len() != 3 {
            return Err(err(format!("expected 3 fields, found {}", fields.len())));
        }
        let num = |s: &str| {
            s.parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| err(format!("invalid number {s:?}")))
        };
        let z = C64::new(num(fields[1])?, num(fields[2])?);
        if amps[idx].replace(z).is_some() {
            return Err(err(format!("duplicate label {}", fields[0])));
        }
    }
    let mut a = [C64::new(0.0, 0.0); 8];
    for (i, slot) in amps.iter().enumerate() {
        a[i] = slot.ok_or_else(|| StateFileError::MissingLabel(format!("{i:03b}")))?;
    }
    let norm = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm.is_nan() || (norm - 1.0).abs() > RENORM_TOL {
        return Err(StateFileError::Norm { norm });
    }
    let state = PureState3::normalized(a).map_err(|_| StateFileError::Norm { norm })?;
    Ok(StateFile { state, raw_norm: norm })
}

#[cfg(test)]
/// Renders a state in the format accepted by [`parse`].
pub fn render(state: &PureState3) -> String {
    let mut out = String::from("label,re,im\n");
    for (i, z) in state.amplitudes().iter().enumerate() {
        out.push_str(&format!("{i:03b},{:e},{:e}\n", z.re, z.im));
    }
    out
}
