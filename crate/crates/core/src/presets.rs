//! Ready-made code configurations.

use std::sync::Arc;

use crate::code::{CheckStrategy, GcCode, GcError, GcParams, LambdaMap, TailSync};
use crate::parity::{sld, ParityScheme, SldError};

#[derive(Debug, thiserror::Error)]
pub enum PresetError {
    #[error(transparent)]
    Code(#[from] GcError),
    #[error(transparent)]
    Sld(#[from] SldError),
    #[error("unknown preset {0:?}")]
    Unknown(String),
}

fn general(k: usize, ell: usize, c1: usize, scheme: ParityScheme, alphabet: usize) -> Result<GcCode, GcError> {
    GcCode::new(GcParams {
        k,
        ell,
        c1,
        c2: 1,
        lambda: LambdaMap::small_offsets(),
        scheme,
        check: CheckStrategy::General,
        alphabet,
        tail: TailSync::Aligned,
    })
}

/// k=140, ell=7, (c1,c2)=(8,1), t-fold repetition tail.
pub fn binary_repetition(t: usize) -> Result<GcCode, GcError> {
    general(140, 7, 8, ParityScheme::Repetition { t }, 2)
}

/// k=140, ell=7, (c1,c2)=(8,1), tail from the (20,7) suffix-distance code.
pub fn binary_sld() -> Result<GcCode, PresetError> {
    let cb = sld::cached(20, 7, 5, 2)?;
    Ok(general(140, 7, 8, ParityScheme::Sld(Arc::new(cb)), 2)?)
}

/// Quaternary k=168, ell=8, (c1,1), tail from the (12,4) suffix-distance
/// code over ACGT. Oligo length 96 + 4 c1 nucleotides.
pub fn dna(c1: usize) -> Result<GcCode, PresetError> {
    let cb = sld::cached(12, 4, 5, 4)?;
    Ok(general(168, 8, c1, ParityScheme::Sld(Arc::new(cb)), 4)?)
}

/// Binary k=140, ell=7, buffer scheme with window w. A window of w bits
/// spans at most ceil((w-1)/7) + 1 segments, which sets c1 = c2.
pub fn binary_buffer(w: usize) -> Result<GcCode, GcError> {
    let c = (w.max(1) - 1).div_ceil(7) + 1;
    GcCode::new(GcParams {
        k: 140,
        ell: 7,
        c1: c,
        c2: c,
        lambda: LambdaMap::constant(0),
        scheme: ParityScheme::Buffer { w },
        check: CheckStrategy::Burst,
        alphabet: 2,
        tail: TailSync::Global,
    })
}

/// Inner codes A..F of the storage experiment (c1 = 2..7).
pub fn dna_inner(label: char) -> Result<GcCode, PresetError> {
    match label.to_ascii_uppercase() {
        l @ 'A'..='F' => dna(l as usize - 'A' as usize + 2),
        _ => Err(PresetError::Unknown(label.to_string())),
    }
}

/// Codes by name: `rep3`, `rep5`, `sld20`, `dna`, `dna-A`..`dna-F`,
/// `buffer<w>`.
pub fn by_name(name: &str) -> Result<GcCode, PresetError> {
    match name {
        "rep3" => Ok(binary_repetition(3)?),
        "rep5" => Ok(binary_repetition(5)?),
        "sld20" => binary_sld(),
        "dna" => dna(8),
        _ => {
            if let Some(l) = name.strip_prefix("dna-") {
                let mut c = l.chars();
                if let (Some(ch), None) = (c.next(), c.next()) {
                    return dna_inner(ch);
                }
            }
            if let Some(w) = name.strip_prefix("buffer").and_then(|w| w.parse().ok()) {
                return Ok(binary_buffer(w)?);
            }
            Err(PresetError::Unknown(name.to_string()))
        }
    }
}

pub const NAMES: &[&str] = &["rep3", "rep5", "sld20", "dna", "dna-A", "dna-B", "dna-C", "dna-D", "dna-E", "dna-F", "buffer8", "buffer15"];
