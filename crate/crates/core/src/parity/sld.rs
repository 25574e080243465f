//! Codes with a minimum suffix sequence-Levenshtein distance, used to protect
//! the parity tail at the end of a codeword.
//!
//! The suffix distance between two strings is the least number of edits that
//! turns one of them into a suffix of the other.

use std::fmt::Write as _;
use std::io::{BufRead, BufReader, Read};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SldError {
    #[error("greedy search found only {found} of {wanted} codewords")]
    InsufficientCodewords { found: usize, wanted: usize },
    #[error("alphabet size must be 2 or 4, got {0}")]
    BadAlphabet(usize),
    #[error("codebook file: {0}")]
    Format(String),
    #[error("codebook failed verification: {0}")]
    Verification(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Edit distance that lets one string end anywhere inside the other: the
/// minimum over the last row and last column of the usual table.
pub fn sld_prefix(x: &[u8], y: &[u8]) -> usize {
    let m = y.len();
    let mut prev: Vec<usize> = (0..=m).collect();
    let mut cur = vec![0usize; m + 1];
    let mut best_col = prev[m];
    for i in 1..=x.len() {
        cur[0] = i;
        for j in 1..=m {
            let sub = prev[j - 1] + (x[i - 1] != y[j - 1]) as usize;
            cur[j] = sub.min(prev[j] + 1).min(cur[j - 1] + 1);
        }
        best_col = best_col.min(cur[m]);
        std::mem::swap(&mut prev, &mut cur);
    }
    let best_row = *prev.iter().min().unwrap();
    best_row.min(best_col)
}

pub fn sld_suffix(x: &[u8], y: &[u8]) -> usize {
    let xr: Vec<u8> = x.iter().rev().copied().collect();
    let yr: Vec<u8> = y.iter().rev().copied().collect();
    sld_prefix(&xr, &yr)
}

/// Plain Levenshtein distance.
pub fn levenshtein(x: &[u8], y: &[u8]) -> usize {
    let m = y.len();
    let mut prev: Vec<usize> = (0..=m).collect();
    let mut cur = vec![0usize; m + 1];
    for i in 1..=x.len() {
        cur[0] = i;
        for j in 1..=m {
            let sub = prev[j - 1] + (x[i - 1] != y[j - 1]) as usize;
            cur[j] = sub.min(prev[j] + 1).min(cur[j - 1] + 1);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[m]
}

/// Is the suffix distance of two equal-length reversed words below `d`?
/// Works on reversed strings and stops as soon as the whole band reaches `d`.
fn prefix_dist_below(xr: &[u8], yr: &[u8], d: usize) -> bool {
    let m = yr.len();
    let mut prev = [0u8; 64];
    let mut cur = [0u8; 64];
    for (j, v) in prev.iter_mut().enumerate().take(m + 1) {
        *v = j as u8;
    }
    if prev[m] < d as u8 {
        return true;
    }
    for i in 1..=xr.len() {
        cur[0] = i as u8;
        let mut row_min = cur[0];
        for j in 1..=m {
            let sub = prev[j - 1] + (xr[i - 1] != yr[j - 1]) as u8;
            let v = sub.min(prev[j] + 1).min(cur[j - 1] + 1);
            cur[j] = v;
            row_min = row_min.min(v);
        }
        if cur[m] < d as u8 {
            return true;
        }
        if row_min >= d as u8 {
            return false;
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[..=m].iter().any(|&v| v < d as u8)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SldCodebook {
    pub n_tilde: usize,
    pub k_tilde: usize,
    pub d_min: usize,
    pub alphabet: usize,
    /// codeword `i` encodes message value `i`
    pub words: Vec<Vec<u8>>,
}

impl SldCodebook {
    /// Greedy lexicographic scan over all words of length `n_tilde`, keeping a
    /// word when its suffix distance to every kept word is at least `d_min`.
    pub fn build(
        n_tilde: usize,
        k_tilde: usize,
        d_min: usize,
        alphabet: usize,
    ) -> Result<Self, SldError> {
        if alphabet != 2 && alphabet != 4 {
            return Err(SldError::BadAlphabet(alphabet));
        }
        assert!(n_tilde < 64, "codeword length too large");
        let wanted = alphabet.pow(k_tilde as u32);
        let total = (alphabet as u64).pow(n_tilde as u32);
        // Candidates are screened in parallel against the words kept so far,
        // then the survivors of each chunk are settled in order, which gives
        // exactly the sequential greedy result. Words are held reversed
        // (least significant digit first) for the suffix check.
        let digits = |v: u64| -> Vec<u8> {
            let mut x = v;
            (0..n_tilde)
                .map(|_| {
                    let s = (x % alphabet as u64) as u8;
                    x /= alphabet as u64;
                    s
                })
                .collect()
        };
        let mut kept: Vec<Vec<u8>> = Vec::with_capacity(wanted);
        let chunk = 1u64 << 14;
        let mut start = 0u64;
        while start < total && kept.len() < wanted {
            let end = (start + chunk).min(total);
            let survivors: Vec<Vec<u8>> = (start..end)
                .into_par_iter()
                .filter_map(|v| {
                    let cand = digits(v);
                    kept.iter().rev().all(|w| !prefix_dist_below(&cand, w, d_min)).then_some(cand)
                })
                .collect();
            let screened = kept.len();
            for cand in survivors {
                if kept[screened..].iter().all(|w| !prefix_dist_below(&cand, w, d_min)) {
                    kept.push(cand);
                    if kept.len() == wanted {
                        break;
                    }
                }
            }
            start = end;
        }
        if kept.len() < wanted {
            return Err(SldError::InsufficientCodewords { found: kept.len(), wanted });
        }
        let words = kept.into_iter().map(|w| w.into_iter().rev().collect()).collect();
        Ok(SldCodebook { n_tilde, k_tilde, d_min, alphabet, words })
    }

    /// Checks sizes, symbol ranges and every pairwise suffix distance.
    pub fn verify(&self) -> Result<(), SldError> {
        let wanted = self.alphabet.pow(self.k_tilde as u32);
        if self.words.len() != wanted {
            return Err(SldError::Verification(format!(
                "{} codewords, expected {wanted}",
                self.words.len()
            )));
        }
        for (i, w) in self.words.iter().enumerate() {
            if w.len() != self.n_tilde || w.iter().any(|&s| s as usize >= self.alphabet) {
                return Err(SldError::Verification(format!("malformed codeword {i}")));
            }
        }
        let rev: Vec<Vec<u8>> =
            self.words.iter().map(|w| w.iter().rev().copied().collect()).collect();
        for i in 0..rev.len() {
            for j in 0..i {
                if prefix_dist_below(&rev[i], &rev[j], self.d_min) {
                    return Err(SldError::Verification(format!(
                        "codewords {j} and {i} closer than {}",
                        self.d_min
                    )));
                }
            }
        }
        Ok(())
    }

    /// Number of edits the code is guaranteed to correct.
    pub fn radius(&self) -> usize {
        (self.d_min - 1) / 2
    }

    pub fn encode(&self, value: usize) -> &[u8] {
        &self.words[value]
    }

    /// Minimum suffix-distance decoding of the last `n_tilde + radius` symbols
    /// of `y`. Ties go to the smallest message value. Also returns the distance.
    ///
    /// With only `n_tilde` symbols, an insertion pushes the first codeword
    /// symbol out of view, and another codeword can then tie at distance
    /// `radius`.
    pub fn decode(&self, y: &[u8]) -> (usize, usize) {
        let tail = &y[y.len().saturating_sub(self.n_tilde + self.radius())..];
        let mut best = (0, usize::MAX);
        for (i, w) in self.words.iter().enumerate() {
            let d = sld_suffix(w, tail);
            if d < best.1 {
                best = (i, d);
                if d == 0 {
                    break;
                }
            }
        }
        best
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("SLD {} {} {} {}\n", self.n_tilde, self.k_tilde, self.d_min, self.alphabet);
        for w in &self.words {
            for &c in w {
                s.push(symbol_char(c, self.alphabet));
            }
            s.push('\n');
        }
        s
    }

    /// Parses the text format and verifies the result.
    pub fn from_reader<R: Read>(r: R) -> Result<Self, SldError> {
        let mut lines = BufReader::new(r).lines();
        let header = lines.next().ok_or_else(|| SldError::Format("empty file".into()))??;
        let f: Vec<&str> = header.split_whitespace().collect();
        if f.len() != 5 || f[0] != "SLD" {
            return Err(SldError::Format(format!("bad header {header:?}")));
        }
        let num = |s: &str| s.parse::<usize>().map_err(|e| SldError::Format(e.to_string()));
        let (n_tilde, k_tilde, d_min, alphabet) = (num(f[1])?, num(f[2])?, num(f[3])?, num(f[4])?);
        if alphabet != 2 && alphabet != 4 {
            return Err(SldError::BadAlphabet(alphabet));
        }
        let mut words = Vec::new();
        for line in lines {
            let line = line?;
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let w = line
                .chars()
                .map(|c| {
                    symbol_value(c, alphabet)
                        .ok_or_else(|| SldError::Format(format!("bad symbol {c:?}")))
                })
                .collect::<Result<Vec<u8>, _>>()?;
            words.push(w);
        }
        let cb = SldCodebook { n_tilde, k_tilde, d_min, alphabet, words };
        cb.verify()?;
        Ok(cb)
    }

    pub fn load(path: &Path) -> Result<Self, SldError> {
        Self::from_reader(std::fs::File::open(path)?)
    }

    pub fn save(&self, path: &Path) -> Result<(), SldError> {
        if let Some(dir) = path.parent() {
            std::fs::create_dir_all(dir)?;
        }
        let tmp = path.with_extension("tmp");
        std::fs::write(&tmp, self.to_text())?;
        std::fs::rename(tmp, path)?;
        Ok(())
    }

    /// Loads the codebook from `dir` if a valid cached copy exists, otherwise
    /// builds and stores it.
    pub fn load_or_build(
        dir: &Path,
        n_tilde: usize,
        k_tilde: usize,
        d_min: usize,
        alphabet: usize,
    ) -> Result<Self, SldError> {
        let path = dir.join(cache_name(n_tilde, k_tilde, d_min, alphabet));
        if let Ok(cb) = Self::load(&path) {
            if (cb.n_tilde, cb.k_tilde, cb.d_min, cb.alphabet) == (n_tilde, k_tilde, d_min, alphabet) {
                return Ok(cb);
            }
        }
        let cb = Self::build(n_tilde, k_tilde, d_min, alphabet)?;
        cb.save(&path)?;
        Ok(cb)
    }
}

pub fn cache_name(n_tilde: usize, k_tilde: usize, d_min: usize, alphabet: usize) -> String {
    format!("sld_{n_tilde}_{k_tilde}_{d_min}_{alphabet}.txt")
}

/// Cache directory: `$GCPLUS_CACHE_DIR`, else `<tmp>/gcplus-cache`.
pub fn default_cache_dir() -> PathBuf {
    std::env::var_os("GCPLUS_CACHE_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("gcplus-cache"))
}

/// Codebook from the default cache, built on first use.
pub fn cached(
    n_tilde: usize,
    k_tilde: usize,
    d_min: usize,
    alphabet: usize,
) -> Result<SldCodebook, SldError> {
    SldCodebook::load_or_build(&default_cache_dir(), n_tilde, k_tilde, d_min, alphabet)
}

fn symbol_char(c: u8, alphabet: usize) -> char {
    if alphabet == 4 {
        b"ACGT"[c as usize] as char
    } else {
        (b'0' + c) as char
    }
}

fn symbol_value(c: char, alphabet: usize) -> Option<u8> {
    match (alphabet, c) {
        (2, '0') => Some(0),
        (2, '1') => Some(1),
        (4, 'A') => Some(0),
        (4, 'C') => Some(1),
        (4, 'G') => Some(2),
        (4, 'T') => Some(3),
        _ => None,
    }
}

/// Debug rendering of a codebook row.
pub fn render(word: &[u8], alphabet: usize) -> String {
    let mut s = String::new();
    for &c in word {
        let _ = write!(s, "{}", symbol_char(c, alphabet));
    }
    s
}
