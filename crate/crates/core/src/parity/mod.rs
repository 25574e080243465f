//! Encoders for the parity tail of a GC+ codeword.

mod buffer;
mod repetition;
pub mod sld;

use std::sync::Arc;

pub use buffer::{buffer_classify, buffer_make, BufferClass};
pub use repetition::{rep_decode, rep_encode};
pub use sld::{levenshtein, sld_suffix, SldCodebook, SldError};

/// How the parities are written after the information bits.
#[derive(Debug, Clone)]
pub enum ParityScheme {
    /// `p_G` in the clear, then every check-parity bit repeated `t` times.
    Repetition { t: usize },
    /// `p_G` in the clear, then the codeword of `p_C` from a suffix-distance code.
    Sld(Arc<SldCodebook>),
    /// `b`, `p_G` and `p_C` in the clear after the information bits.
    Buffer { w: usize },
}

impl ParityScheme {
    pub fn name(&self) -> String {
        match self {
            ParityScheme::Repetition { t } => format!("rep{t}"),
            ParityScheme::Sld(cb) => {
                format!("sld{}-{}-{}-{}", cb.n_tilde, cb.k_tilde, cb.d_min, cb.alphabet)
            }
            ParityScheme::Buffer { w } => format!("buffer{w}"),
        }
    }
}
