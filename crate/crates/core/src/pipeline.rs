//! DNA storage workflow: data fragments protected by an outer RS code over
//! GF(2^14) across fragments, each fragment inner-encoded and mapped to
//! nucleotides at 2 bits/NT.
//!
//! The outer code is interleaved column-wise: symbol `j` of every fragment
//! forms one RS codeword, so a lost oligo costs one erasure per column.

use std::io::{BufRead, Write};
use std::path::Path;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::channel::{channel_apply, ChannelParams};
use crate::code::{bits_value, push_bits, GcCode, Outcome};
use crate::gf::{Field, Gf};
use crate::rs::RsCode;
use crate::sim::random_bits;

/// Outer symbol size in bits.
pub const OUTER_M: usize = 14;
/// Longest outer codeword.
pub const OUTER_MAX_LEN: usize = (1 << OUTER_M) - 1;

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("bit string of odd length {0} cannot be mapped to nucleotides")]
    OddLength(usize),
    #[error("invalid nucleotide {0:?}")]
    BadNucleotide(char),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("data has {got} bits, expected {expected}")]
    DataLength { expected: usize, got: usize },
    #[error("no feasible outer rate up to length {0}")]
    NoFeasibleRate(usize),
    #[error("malformed oligo line {0}")]
    OligoLine(usize),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

const NT: [char; 4] = ['A', 'C', 'G', 'T'];

/// 00→A, 01→C, 10→G, 11→T.
pub fn nt_encode(bits: &[u8]) -> Result<String, PipelineError> {
    if bits.len() % 2 != 0 {
        return Err(PipelineError::OddLength(bits.len()));
    }
    Ok(bits.chunks(2).map(|c| NT[(c[0] << 1 | c[1]) as usize]).collect())
}

pub fn nt_decode(nts: &str) -> Result<Vec<u8>, PipelineError> {
    let mut out = Vec::with_capacity(2 * nts.len());
    for u in units_from_nt(nts)? {
        out.push(u >> 1);
        out.push(u & 1);
    }
    Ok(out)
}

/// Nucleotide values 0..4 to letters.
pub fn units_to_nt(units: &[u8]) -> String {
    units.iter().map(|&u| NT[u as usize]).collect()
}

pub fn units_from_nt(nts: &str) -> Result<Vec<u8>, PipelineError> {
    nts.chars()
        .map(|c| NT.iter().position(|&x| x == c).map(|i| i as u8).ok_or(PipelineError::BadNucleotide(c)))
        .collect()
}

fn bits_to_units(bits: &[u8]) -> Vec<u8> {
    bits.chunks(2).map(|c| c[0] << 1 | c[1]).collect()
}

fn units_to_bits(units: &[u8]) -> Vec<u8> {
    units.iter().flat_map(|&u| [u >> 1, u & 1]).collect()
}

/// The per-oligo code.
#[derive(Debug, Clone)]
pub enum InnerCode {
    /// Plain 2 bits/NT mapping; reads of the wrong length become erasures.
    Uncoded,
    /// A quaternary GC+ code.
    Gc(Arc<GcCode>),
}

impl InnerCode {
    pub fn rate(&self, fragment_bits: usize) -> f64 {
        match self {
            InnerCode::Uncoded => 1.0,
            InnerCode::Gc(c) => fragment_bits as f64 / c.len_bits() as f64,
        }
    }

    /// Oligo length in nucleotides.
    pub fn oligo_len(&self, fragment_bits: usize) -> usize {
        match self {
            InnerCode::Uncoded => fragment_bits / 2,
            InnerCode::Gc(c) => c.len(),
        }
    }

    pub fn encode(&self, fragment: &[u8]) -> Vec<u8> {
        match self {
            InnerCode::Uncoded => bits_to_units(fragment),
            InnerCode::Gc(c) => c.encode(fragment).expect("fragment length matches the inner code"),
        }
    }

    /// Fragment bits, or `None` for an erasure.
    pub fn decode(&self, read: &[u8], fragment_bits: usize) -> Option<Vec<u8>> {
        match self {
            InnerCode::Uncoded => (read.len() * 2 == fragment_bits).then(|| units_to_bits(read)),
            InnerCode::Gc(c) => match c.decode(read).outcome {
                Outcome::Decoded(m) => Some(m),
                Outcome::Failure => None,
            },
        }
    }
}

#[derive(Debug, Clone)]
pub struct PipelineConfig {
    pub num_fragments: usize,
    pub fragment_bits: usize,
    pub inner: InnerCode,
    /// outer codeword length (number of oligos)
    pub outer_len: usize,
    pub channel: ChannelParams,
}

impl PipelineConfig {
    pub fn validate(&self) -> Result<(), PipelineError> {
        let bad = |s: String| Err(PipelineError::Config(s));
        if self.num_fragments == 0 || self.fragment_bits == 0 {
            return bad("need at least one fragment of positive length".into());
        }
        if self.fragment_bits % OUTER_M != 0 || self.fragment_bits % 2 != 0 {
            return bad(format!("fragment length {} must be a multiple of 14 and even", self.fragment_bits));
        }
        if let InnerCode::Gc(c) = &self.inner {
            if c.params().k != self.fragment_bits || c.params().alphabet != 4 {
                return bad("inner code must be quaternary with k = fragment length".into());
            }
        }
        if self.outer_len < self.num_fragments || self.outer_len > OUTER_MAX_LEN {
            return bad(format!(
                "outer length {} must lie in [{}, {OUTER_MAX_LEN}]",
                self.outer_len, self.num_fragments
            ));
        }
        Ok(())
    }

    pub fn outer_rate(&self) -> f64 {
        self.num_fragments as f64 / self.outer_len as f64
    }

    pub fn inner_rate(&self) -> f64 {
        self.inner.rate(self.fragment_bits)
    }

    pub fn density(&self) -> f64 {
        information_density(self.inner_rate(), self.outer_rate())
    }

    fn columns(&self) -> usize {
        self.fragment_bits / OUTER_M
    }

    fn outer(&self) -> Option<RsCode> {
        if self.outer_len == self.num_fragments {
            return None;
        }
        let field = Arc::new(Field::new(OUTER_M as u32, None).expect("GF(2^14) exists"));
        Some(RsCode::new(field, self.outer_len, self.num_fragments).expect("validated lengths"))
    }
}

/// Bits per nucleotide after both codes: 2 R_in R_out.
pub fn information_density(r_in: f64, r_out: f64) -> f64 {
    2.0 * r_in * r_out
}

fn fragment_symbols(bits: &[u8]) -> Vec<Gf> {
    bits.chunks(OUTER_M).map(bits_value).collect()
}

fn symbols_fragment(syms: &[Gf]) -> Vec<u8> {
    let mut out = Vec::with_capacity(syms.len() * OUTER_M);
    for &s in syms {
        push_bits(&mut out, s, OUTER_M);
    }
    out
}

/// All `outer_len` fragments: the data fragments followed by the outer
/// parity fragments.
pub fn outer_encode(cfg: &PipelineConfig, data: &[u8]) -> Result<Vec<Vec<u8>>, PipelineError> {
    cfg.validate()?;
    let expected = cfg.num_fragments * cfg.fragment_bits;
    if data.len() != expected {
        return Err(PipelineError::DataLength { expected, got: data.len() });
    }
    let mut frags: Vec<Vec<u8>> = data.chunks(cfg.fragment_bits).map(|c| c.to_vec()).collect();
    if let Some(rs) = cfg.outer() {
        let syms: Vec<Vec<Gf>> = frags.iter().map(|f| fragment_symbols(f)).collect();
        let cols: Vec<Vec<Gf>> = (0..cfg.columns())
            .into_par_iter()
            .map(|j| {
                let col: Vec<Gf> = syms.iter().map(|s| s[j]).collect();
                rs.parity(&col).expect("column length matches")
            })
            .collect();
        for i in 0..rs.parity_len() {
            let row: Vec<Gf> = cols.iter().map(|c| c[i]).collect();
            frags.push(symbols_fragment(&row));
        }
    }
    Ok(frags)
}

/// Oligos as nucleotide values 0..4, in order.
pub fn pipeline_encode(cfg: &PipelineConfig, data: &[u8]) -> Result<Vec<Vec<u8>>, PipelineError> {
    let frags = outer_encode(cfg, data)?;
    Ok(frags.par_iter().map(|f| cfg.inner.encode(f)).collect())
}

/// Generator for oligo `index` of dataset `dataset`.
pub fn oligo_rng(seed: u64, dataset: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ dataset.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    rng.set_stream(index);
    rng
}

/// Random data for dataset `dataset`.
pub fn dataset_bits(seed: u64, dataset: u64, bits: usize) -> Vec<u8> {
    let mut rng = oligo_rng(seed, dataset, u64::MAX);
    random_bits(&mut rng, bits)
}

/// One read per oligo, in order.
pub fn transmit(cfg: &PipelineConfig, oligos: &[Vec<u8>], seed: u64, dataset: u64) -> Vec<Vec<u8>> {
    oligos
        .par_iter()
        .enumerate()
        .map(|(i, o)| {
            let mut rng = oligo_rng(seed, dataset, i as u64);
            channel_apply(&cfg.channel, o, &mut rng).expect("no window")
        })
        .collect()
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RetrievalResult {
    pub success: bool,
    pub erased_oligos: usize,
    /// inner decodes that returned a wrong fragment (found by the outer code)
    pub miscorrected_oligos: usize,
    /// outer symbols corrected outside the erasures
    pub residual_symbol_errors: usize,
}

/// Two-stage decoding. Returns the counts and the data when every outer
/// column decodes. `success` here means every column decoded; compare
/// against the source to confirm.
pub fn pipeline_decode(cfg: &PipelineConfig, reads: &[Vec<u8>]) -> Result<(RetrievalResult, Option<Vec<u8>>), PipelineError> {
    cfg.validate()?;
    if reads.len() != cfg.outer_len {
        return Err(PipelineError::Config(format!("{} reads for {} oligos", reads.len(), cfg.outer_len)));
    }
    let inner: Vec<Option<Vec<Gf>>> = reads
        .par_iter()
        .map(|r| cfg.inner.decode(r, cfg.fragment_bits).map(|b| fragment_symbols(&b)))
        .collect();
    let erasures: Vec<usize> = (0..inner.len()).filter(|&i| inner[i].is_none()).collect();
    let mut res = RetrievalResult { erased_oligos: erasures.len(), ..Default::default() };
    let ncol = cfg.columns();
    let received: Vec<Vec<Gf>> = (0..ncol)
        .map(|j| inner.iter().map(|f| f.as_ref().map_or(0, |s| s[j])).collect())
        .collect();
    let decoded: Vec<Option<Vec<Gf>>> = match cfg.outer() {
        Some(rs) => received.par_iter().map(|col| rs.decode_codeword(col, &erasures).ok()).collect(),
        None => received.iter().map(|col| erasures.is_empty().then(|| col.clone())).collect(),
    };
    if decoded.iter().any(|d| d.is_none()) {
        return Ok((res, None));
    }
    let decoded: Vec<Vec<Gf>> = decoded.into_iter().map(|d| d.expect("checked")).collect();
    for (i, f) in inner.iter().enumerate() {
        if let Some(s) = f {
            let wrong = (0..ncol).filter(|&j| s[j] != decoded[j][i]).count();
            res.residual_symbol_errors += wrong;
            res.miscorrected_oligos += (wrong > 0) as usize;
        }
    }
    res.success = true;
    let mut data = Vec::with_capacity(cfg.num_fragments * cfg.fragment_bits);
    for i in 0..cfg.num_fragments {
        let row: Vec<Gf> = decoded.iter().map(|c| c[i]).collect();
        data.extend(symbols_fragment(&row));
    }
    Ok((res, Some(data)))
}

/// Encode, transmit and decode one dataset; success requires the recovered
/// data to equal the source.
pub fn run_retrieval(cfg: &PipelineConfig, seed: u64, dataset: u64) -> Result<RetrievalResult, PipelineError> {
    let data = dataset_bits(seed, dataset, cfg.num_fragments * cfg.fragment_bits);
    let oligos = pipeline_encode(cfg, &data)?;
    let reads = transmit(cfg, &oligos, seed, dataset);
    let (mut res, out) = pipeline_decode(cfg, &reads)?;
    res.success = out.as_deref() == Some(&data[..]);
    Ok(res)
}

/// Per-column demand `e + 2s` of a set of inner outcomes against the truth.
fn column_demand(truth: &[Vec<Gf>], inner: &[Option<Vec<Gf>>], ncol: usize) -> Vec<usize> {
    let mut demand = vec![0; ncol];
    for (t, f) in truth.iter().zip(inner) {
        match f {
            None => demand.iter_mut().for_each(|d| *d += 1),
            Some(s) => {
                for j in 0..ncol {
                    if s[j] != t[j] {
                        demand[j] += 2;
                    }
                }
            }
        }
    }
    demand
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridPoint {
    pub outer_len: usize,
    pub outer_rate: f64,
    pub inner_rate: f64,
    pub density: f64,
}

#[derive(Debug, Clone)]
pub struct GridSearch {
    pub num_fragments: usize,
    pub fragment_bits: usize,
    pub datasets: u64,
    pub seed: u64,
    /// increment of the outer parity count between grid points
    pub step: usize,
    /// longest outer codeword tried
    pub max_outer_len: usize,
}

impl GridSearch {
    /// 10^3 fragments of 168 bits, 3 datasets.
    pub fn desk() -> Self {
        GridSearch { num_fragments: 1000, fragment_bits: 168, datasets: 3, seed: 2024, step: 2, max_outer_len: 2000 }
    }

    /// 10^4 fragments of 168 bits, 10 datasets.
    pub fn full() -> Self {
        GridSearch { num_fragments: 10_000, fragment_bits: 168, datasets: 10, seed: 2024, step: 2, max_outer_len: OUTER_MAX_LEN }
    }
}

/// Smallest outer length `K + step*j` (largest density) for which every
/// dataset is retrieved.
///
/// A bounded-distance outer decoder recovers a column exactly when
/// `e + 2s <= N_out - K`, so each grid point is judged by counting erasures
/// and wrong symbols per column against the source. The data oligos do not
/// change with `N_out`, so their demand is computed once and grid points
/// below it are skipped.
pub fn grid_search_outer_rate(
    inner: &InnerCode,
    channel: &ChannelParams,
    g: &GridSearch,
) -> Result<GridPoint, PipelineError> {
    let k = g.num_fragments;
    let ncol = g.fragment_bits / OUTER_M;
    let max_len = g.max_outer_len.min(OUTER_MAX_LEN);
    let template = |outer_len| PipelineConfig {
        num_fragments: k,
        fragment_bits: g.fragment_bits,
        inner: inner.clone(),
        outer_len,
        channel: *channel,
    };
    template(k).validate()?;
    if g.step == 0 {
        return Err(PipelineError::Config("grid step must be positive".into()));
    }
    struct Ds {
        data: Vec<u8>,
        base: Vec<usize>,
    }
    let decode_range = |cfg: &PipelineConfig, frags: &[Vec<u8>], ds: u64, from: usize| -> Vec<Option<Vec<Gf>>> {
        (from..frags.len())
            .into_par_iter()
            .map(|i| {
                let o = cfg.inner.encode(&frags[i]);
                let mut rng = oligo_rng(g.seed, ds, i as u64);
                let r = channel_apply(&cfg.channel, &o, &mut rng).expect("no window");
                cfg.inner.decode(&r, cfg.fragment_bits).map(|b| fragment_symbols(&b))
            })
            .collect()
    };
    let mut sets = Vec::new();
    let mut need = 0;
    for ds in 0..g.datasets {
        let cfg = template(k);
        let data = dataset_bits(g.seed, ds, k * g.fragment_bits);
        let frags: Vec<Vec<u8>> = data.chunks(g.fragment_bits).map(|c| c.to_vec()).collect();
        let truth: Vec<Vec<Gf>> = frags.iter().map(|f| fragment_symbols(f)).collect();
        let base = column_demand(&truth, &decode_range(&cfg, &frags, ds, 0), ncol);
        need = need.max(*base.iter().max().unwrap_or(&0));
        sets.push(Ds { data, base });
    }
    let mut parity = need.div_ceil(g.step) * g.step;
    while k + parity <= max_len {
        let cfg = template(k + parity);
        let ok = sets.iter().enumerate().all(|(ds, s)| {
            if parity == 0 {
                return s.base.iter().all(|&d| d == 0);
            }
            let frags = outer_encode(&cfg, &s.data).expect("validated");
            let truth: Vec<Vec<Gf>> = frags[k..].iter().map(|f| fragment_symbols(f)).collect();
            let extra = column_demand(&truth, &decode_range(&cfg, &frags, ds as u64, k), ncol);
            s.base.iter().zip(&extra).all(|(a, b)| a + b <= parity)
        });
        if ok {
            return Ok(GridPoint {
                outer_len: cfg.outer_len,
                outer_rate: cfg.outer_rate(),
                inner_rate: cfg.inner_rate(),
                density: cfg.density(),
            });
        }
        parity += g.step;
    }
    Err(PipelineError::NoFeasibleRate(max_len))
}

/// Raw binary blob to bits, most significant bit first. `bits` limits the
/// length (the blob is zero-padded if shorter).
pub fn read_dataset(path: &Path, bits: Option<usize>) -> Result<Vec<u8>, PipelineError> {
    let bytes = std::fs::read(path)?;
    let mut out: Vec<u8> = bytes.iter().flat_map(|&b| (0..8).rev().map(move |i| (b >> i) & 1)).collect();
    if let Some(n) = bits {
        out.resize(n, 0);
    }
    Ok(out)
}

/// Bits to a raw binary blob, zero-padded to whole bytes.
pub fn write_dataset(path: &Path, bits: &[u8]) -> Result<(), PipelineError> {
    let bytes: Vec<u8> = bits.chunks(8).map(|c| c.iter().enumerate().fold(0u8, |a, (i, &b)| a | b << (7 - i))).collect();
    std::fs::write(path, bytes)?;
    Ok(())
}

/// One `index<TAB>sequence` line per oligo.
pub fn write_oligos<W: Write>(mut w: W, oligos: &[Vec<u8>]) -> Result<(), PipelineError> {
    for (i, o) in oligos.iter().enumerate() {
        writeln!(w, "{i}\t{}", units_to_nt(o))?;
    }
    Ok(())
}

/// Reads `index<TAB>sequence` lines (any whitespace separator) in file order.
/// An empty sequence is a read that lost every nucleotide.
pub fn read_oligos<R: BufRead>(r: R) -> Result<Vec<Vec<u8>>, PipelineError> {
    let mut out = Vec::new();
    for (n, line) in r.lines().enumerate() {
        let line = line?;
        let line = line.trim_end();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let idx = parts.next().ok_or(PipelineError::OligoLine(n + 1))?;
        idx.parse::<usize>().map_err(|_| PipelineError::OligoLine(n + 1))?;
        out.push(units_from_nt(parts.next().unwrap_or(""))?);
    }
    Ok(out)
}
