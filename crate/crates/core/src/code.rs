//! The GC+ encoder and guess-and-check decoder.
//!
//! The message is cut into K segments of `ell` bits (the last one possibly
//! shorter, zero-padded at the most significant end) and protected by a
//! systematic RS code over GF(2^ell) with `c1` guess parities and `c2` check
//! parities. The decoder guesses the net offset of every segment, erases the
//! segments it believes are misaligned, decodes, and keeps the first guess
//! whose re-encoded check parities match the recovered ones.
//!
//! Codewords are symbol strings: bits for the binary alphabet, nucleotides
//! `0..4` (two bits each) for the quaternary one.

use std::sync::Arc;

use thiserror::Error;

use crate::gf::{Field, Gf};
use crate::parity::{
    buffer_classify, buffer_make, levenshtein, rep_decode, rep_encode, BufferClass, ParityScheme,
};
use crate::patterns::for_each_general;
use crate::rs::{RsCode, RsError};

/// Largest tail length change considered by `TailSync::Aligned`.
const TAIL_SLACK: usize = 3;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GcError {
    #[error("invalid parameters: {0}")]
    Params(String),
    #[error("message has {got} bits, expected {expected}")]
    MessageLength { expected: usize, got: usize },
    #[error(transparent)]
    Rs(#[from] RsError),
}

/// Decoding depth as a function of the net offset. `by_abs[j]` applies to
/// `|Delta| = j`; larger offsets get `otherwise`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaMap {
    pub by_abs: Vec<usize>,
    pub otherwise: usize,
}

impl LambdaMap {
    pub fn constant(lambda: usize) -> Self {
        LambdaMap { by_abs: Vec::new(), otherwise: lambda }
    }

    /// Depth 1 when `|Delta| <= 1`, depth 0 otherwise.
    pub fn small_offsets() -> Self {
        LambdaMap { by_abs: vec![1, 1], otherwise: 0 }
    }

    pub fn get(&self, delta: i64) -> usize {
        *self.by_abs.get(delta.unsigned_abs() as usize).unwrap_or(&self.otherwise)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStrategy {
    /// One guess per window of `c1` consecutive segments.
    Burst,
    /// Every offset pattern within the L1 budget, fewest offsets first.
    General,
}

/// How the decoder splits the total length change between the head
/// (information and guess parities) and the parity tail.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailSync {
    /// The whole length change is attributed to the head.
    Global,
    /// The tail's received length is estimated by aligning the re-encoded
    /// check parities against the end of the word. The global split is tried
    /// next if the aligned one finds no valid guess.
    Aligned,
}

#[derive(Debug, Clone)]
pub struct GcParams {
    pub k: usize,
    pub ell: usize,
    pub c1: usize,
    pub c2: usize,
    pub lambda: LambdaMap,
    pub scheme: ParityScheme,
    pub check: CheckStrategy,
    /// 2 (bits) or 4 (nucleotides)
    pub alphabet: usize,
    pub tail: TailSync,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Decoded(Vec<u8>),
    Failure,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeOutcome {
    pub outcome: Outcome,
    pub guesses: usize,
    /// false when the parity tail was shorter than nominal or was decoded
    /// beyond the guaranteed radius
    pub parity_ok: bool,
}

impl DecodeOutcome {
    fn failure(guesses: usize, parity_ok: bool) -> Self {
        DecodeOutcome { outcome: Outcome::Failure, guesses, parity_ok }
    }

    pub fn message(&self) -> Option<&[u8]> {
        match &self.outcome {
            Outcome::Decoded(m) => Some(m),
            Outcome::Failure => None,
        }
    }
}

/// A configured code with its RS tables.
#[derive(Debug, Clone)]
pub struct GcCode {
    p: GcParams,
    rs: RsCode,
    big_k: usize,
    /// symbols per unit (1 for bits, 2 for nucleotides)
    bpu: usize,
    /// nominal segment lengths in units, N' entries
    seg_units: Vec<usize>,
    /// information + guess parities, in units
    head_units: usize,
    /// total length in units
    n_units: usize,
}

impl GcCode {
    pub fn new(p: GcParams) -> Result<Self, GcError> {
        let bad = |s: String| Err(GcError::Params(s));
        if p.k == 0 || p.ell == 0 || p.ell > 16 {
            return bad(format!("need k >= 1 and 1 <= ell <= 16 (k={}, ell={})", p.k, p.ell));
        }
        if p.c1 == 0 || p.c2 == 0 {
            return bad("c1 and c2 must be positive".into());
        }
        let bpu = match p.alphabet {
            2 => 1,
            4 => 2,
            a => return bad(format!("alphabet must be 2 or 4, got {a}")),
        };
        let big_k = p.k.div_ceil(p.ell);
        let last = p.k - (big_k - 1) * p.ell;
        if bpu == 2 && (p.ell % 2 != 0 || p.k % 2 != 0) {
            return bad("quaternary codes need even k and ell".into());
        }
        let n_sym = big_k + p.c1 + p.c2;
        if n_sym > (1usize << p.ell) - 1 {
            return bad(format!(
                "RS length {n_sym} exceeds 2^ell - 1 = {}",
                (1usize << p.ell) - 1
            ));
        }
        let tail_units = match &p.scheme {
            ParityScheme::Repetition { t } => {
                if bpu != 1 {
                    return bad("repetition tail is binary only".into());
                }
                if t % 2 == 0 || *t < 1 {
                    return bad(format!("repetition factor must be odd, got {t}"));
                }
                t * p.c2 * p.ell
            }
            ParityScheme::Sld(cb) => {
                if cb.alphabet != p.alphabet {
                    return bad("codebook alphabet differs from code alphabet".into());
                }
                let bits = cb.k_tilde * bpu;
                if bits != p.c2 * p.ell {
                    return bad(format!(
                        "codebook carries {bits} bits but c2*ell = {}",
                        p.c2 * p.ell
                    ));
                }
                cb.n_tilde
            }
            ParityScheme::Buffer { w } => {
                if bpu != 1 {
                    return bad("buffer scheme is binary only".into());
                }
                if *w == 0 {
                    return bad("buffer window must be positive".into());
                }
                if p.check != CheckStrategy::Burst {
                    return bad("buffer scheme decodes with the burst check".into());
                }
                3 * (w + 1) + p.c2 * p.ell
            }
        };
        if p.check == CheckStrategy::Burst {
            let segs = if matches!(p.scheme, ParityScheme::Buffer { .. }) { big_k } else { big_k + p.c1 };
            if p.c1 > segs {
                return bad(format!("c1 = {} exceeds the {segs} segments searched", p.c1));
            }
        }
        let field = Arc::new(Field::new(p.ell as u32, None).map_err(|e| GcError::Params(e.to_string()))?);
        let rs = RsCode::new(field, n_sym, big_k)?;
        let mut seg_units = vec![p.ell / bpu; big_k + p.c1];
        seg_units[big_k - 1] = last / bpu;
        let head_units = (p.k + p.c1 * p.ell) / bpu;
        let n_units = head_units + tail_units;
        Ok(GcCode { p, rs, big_k, bpu, seg_units, head_units, n_units })
    }

    pub fn params(&self) -> &GcParams {
        &self.p
    }

    pub fn rs(&self) -> &RsCode {
        &self.rs
    }

    /// K, the number of information segments.
    pub fn info_segments(&self) -> usize {
        self.big_k
    }

    /// N' = K + c1.
    pub fn n_prime(&self) -> usize {
        self.big_k + self.p.c1
    }

    /// Codeword length in channel symbols.
    pub fn len(&self) -> usize {
        self.n_units
    }

    pub fn is_empty(&self) -> bool {
        self.n_units == 0
    }

    /// Codeword length in bits.
    pub fn len_bits(&self) -> usize {
        self.n_units * self.bpu
    }

    /// Redundancy added by the parity tail encoding, in bits.
    pub fn tail_redundancy_bits(&self) -> usize {
        self.len_bits() - self.p.k - (self.p.c1 + self.p.c2) * self.p.ell
    }

    pub fn rate(&self) -> f64 {
        self.p.k as f64 / self.len_bits() as f64
    }

    /// Message bits to the K field symbols.
    pub fn message_symbols(&self, msg: &[u8]) -> Vec<Gf> {
        msg.chunks(self.p.ell).map(bits_value).collect()
    }

    fn symbols_to_bits(&self, syms: &[Gf]) -> Vec<u8> {
        let ell = self.p.ell;
        let last = self.p.k - (self.big_k - 1) * ell;
        let mut out = Vec::with_capacity(self.p.k);
        for (i, &s) in syms.iter().enumerate() {
            let w = if i + 1 == self.big_k { last } else { ell };
            push_bits(&mut out, s, w);
        }
        out
    }

    fn bits_to_units(&self, bits: &[u8]) -> Vec<u8> {
        if self.bpu == 1 {
            bits.to_vec()
        } else {
            bits.chunks(2).map(|c| c[0] << 1 | c[1]).collect()
        }
    }

    /// Encodes `k` message bits into a codeword of `len()` symbols.
    pub fn encode(&self, msg: &[u8]) -> Result<Vec<u8>, GcError> {
        if msg.len() != self.p.k {
            return Err(GcError::MessageLength { expected: self.p.k, got: msg.len() });
        }
        let syms = self.message_symbols(msg);
        let par = self.rs.parity(&syms)?;
        let ell = self.p.ell;
        let mut pg = Vec::with_capacity(self.p.c1 * ell);
        for &s in &par[..self.p.c1] {
            push_bits(&mut pg, s, ell);
        }
        let mut pc = Vec::with_capacity(self.p.c2 * ell);
        for &s in &par[self.p.c1..] {
            push_bits(&mut pc, s, ell);
        }
        let out = match &self.p.scheme {
            ParityScheme::Repetition { t } => {
                let mut x = msg.to_vec();
                x.extend(pg);
                x.extend(rep_encode(&pc, *t));
                x
            }
            ParityScheme::Sld(cb) => {
                let mut head = msg.to_vec();
                head.extend(pg);
                let mut x = self.bits_to_units(&head);
                x.extend_from_slice(cb.encode(bits_value_usize(&pc)));
                x
            }
            ParityScheme::Buffer { w } => {
                let mut x = msg.to_vec();
                x.extend(buffer_make(*w));
                x.extend(pg);
                x.extend(pc);
                x
            }
        };
        debug_assert_eq!(out.len(), self.n_units);
        Ok(out)
    }

    /// True when the check parities of `guess` equal `p_c`.
    pub fn validate_guess(&self, guess: &[Gf], p_c: &[Gf]) -> bool {
        match self.rs.parity(guess) {
            Ok(par) => par[self.p.c1..] == *p_c,
            Err(_) => false,
        }
    }

    fn symbols_from_bits(&self, bits: &[u8]) -> Vec<Gf> {
        bits.chunks(self.p.ell).map(bits_value).collect()
    }

    /// Check parities read back from the tail, whether the read is within
    /// the tail code's guarantees, and the re-encoded tail.
    fn recover_check_parities(&self, y: &[u8]) -> (Vec<Gf>, bool, Vec<u8>) {
        match &self.p.scheme {
            ParityScheme::Repetition { t } => {
                let bits = rep_decode(y, self.p.c2 * self.p.ell, *t);
                let full = y.len() >= t * self.p.c2 * self.p.ell;
                (self.symbols_from_bits(&bits), full, rep_encode(&bits, *t))
            }
            ParityScheme::Sld(cb) => {
                let (value, dist) = cb.decode(y);
                let mut bits = Vec::with_capacity(self.p.c2 * self.p.ell);
                push_bits(&mut bits, value as Gf, self.p.c2 * self.p.ell);
                let ok = dist <= cb.radius() && y.len() >= cb.n_tilde;
                (self.symbols_from_bits(&bits), ok, cb.encode(value).to_vec())
            }
            ParityScheme::Buffer { .. } => unreachable!("buffer parities are read in place"),
        }
    }

    #[inline]
    fn unit_value(&self, units: &[u8]) -> Gf {
        units.iter().fold(0, |acc, &u| acc << self.bpu | u as Gf)
    }

    /// Received tail lengths within `TAIL_SLACK` of nominal that explain the
    /// end of `y` as `template` with the fewest edits, nearest to nominal first.
    fn aligned_tail_lens(&self, y: &[u8], template: &[u8]) -> Vec<usize> {
        let nominal = template.len();
        let mut scored: Vec<(usize, usize, usize)> = (nominal.saturating_sub(TAIL_SLACK)..=nominal + TAIL_SLACK)
            .filter(|&m| m <= y.len())
            .map(|m| (levenshtein(&y[y.len() - m..], template), m.abs_diff(nominal), m))
            .collect();
        scored.sort_unstable();
        let best = scored.first().map_or(0, |s| s.0);
        scored.into_iter().take_while(|s| s.0 <= best + 1).map(|s| s.2).collect()
    }

    /// Guess-and-check decoding of a received word of any length.
    pub fn decode(&self, y: &[u8]) -> DecodeOutcome {
        if let ParityScheme::Buffer { w } = self.p.scheme {
            return self.decode_buffer(y, w);
        }
        let (p_c, parity_ok, template) = self.recover_check_parities(y);
        let global = y.len() as i64 - self.n_units as i64;
        let mut splits = Vec::with_capacity(2 * TAIL_SLACK + 2);
        if self.p.tail == TailSync::Aligned {
            for m in self.aligned_tail_lens(y, &template) {
                splits.push(y.len() as i64 - m as i64 - self.head_units as i64);
            }
        }
        if !splits.contains(&global) {
            splits.push(global);
        }
        let mut guesses = 0;
        for d in splits {
            let (found, g) = self.search(y, d, &p_c);
            guesses += g;
            if let Some(m) = found {
                return DecodeOutcome { outcome: Outcome::Decoded(m), guesses, parity_ok };
            }
        }
        DecodeOutcome::failure(guesses, parity_ok)
    }

    /// Tries the offset patterns for a head offset `d`. Returns the message of
    /// the first validated guess and the number of guesses made.
    fn search(&self, y: &[u8], d: i64, p_c: &[Gf]) -> (Option<Vec<u8>>, usize) {
        let head = self.head_units as i64 + d;
        if head < 0 || head > y.len() as i64 {
            return (None, 0);
        }
        let yp = &y[..head as usize];
        let np = self.n_prime();
        let n = self.rs.n();
        let mut word = vec![0 as Gf; n];
        let mut erasures: Vec<usize> = Vec::with_capacity(n);
        let mut guesses = 0usize;
        let mut found: Option<Vec<Gf>> = None;

        let attempt = |word: &mut Vec<Gf>, erasures: &mut Vec<usize>| -> Option<Vec<Gf>> {
            erasures.extend(np..n);
            let guess = self.rs.decode(word, erasures).ok()?;
            let last_bits = self.p.k - (self.big_k - 1) * self.p.ell;
            if guess[self.big_k - 1] >> last_bits != 0 {
                return None;
            }
            self.validate_guess(&guess, p_c).then_some(guess)
        };

        match self.p.check {
            CheckStrategy::General => {
                let ell_units = self.p.ell / self.bpu;
                let mut dense = vec![0i64; np];
                for_each_general(d, np, self.p.c1, self.p.lambda.get(d), ell_units, |sparse| {
                    for &(pos, v) in sparse {
                        dense[pos] = v;
                    }
                    let ok = self.segment(yp, &dense, &mut word, &mut erasures);
                    for &(pos, _) in sparse {
                        dense[pos] = 0;
                    }
                    if !ok {
                        return true;
                    }
                    guesses += 1;
                    if let Some(g) = attempt(&mut word, &mut erasures) {
                        found = Some(g);
                        return false;
                    }
                    true
                });
            }
            CheckStrategy::Burst => {
                for j in 0..=np - self.p.c1 {
                    if !self.segment_window(yp, j, np, d, &mut word, &mut erasures) {
                        continue;
                    }
                    guesses += 1;
                    if let Some(g) = attempt(&mut word, &mut erasures) {
                        found = Some(g);
                        break;
                    }
                }
            }
        }
        (found.map(|g| self.symbols_to_bits(&g)), guesses)
    }

    /// Cuts `yp` by the offsets `dense`. Returns false for infeasible lengths.
    fn segment(&self, yp: &[u8], dense: &[i64], word: &mut [Gf], erasures: &mut Vec<usize>) -> bool {
        erasures.clear();
        let mut pos = 0usize;
        for (i, (&len, &dl)) in self.seg_units.iter().zip(dense).enumerate() {
            let l = len as i64 + dl;
            if l < 0 {
                return false;
            }
            let l = l as usize;
            if dl == 0 {
                word[i] = self.unit_value(&yp[pos..pos + l]);
            } else {
                word[i] = 0;
                erasures.push(i);
            }
            pos += l;
        }
        debug_assert_eq!(pos, yp.len());
        true
    }

    /// Cuts `yp` with segments `j..j+c1` erased and absorbing all of `d`.
    /// Only the first `count` segments are read from `yp`.
    fn segment_window(
        &self,
        yp: &[u8],
        j: usize,
        count: usize,
        d: i64,
        word: &mut [Gf],
        erasures: &mut Vec<usize>,
    ) -> bool {
        erasures.clear();
        let win_end = j + self.p.c1;
        let win_len: i64 = self.seg_units[j..win_end].iter().sum::<usize>() as i64 + d;
        if win_len < 0 {
            return false;
        }
        let mut pos = 0usize;
        for i in 0..count {
            if i == j {
                pos += win_len as usize;
            }
            if (j..win_end).contains(&i) {
                word[i] = 0;
                erasures.push(i);
                continue;
            }
            let l = self.seg_units[i];
            word[i] = self.unit_value(&yp[pos..pos + l]);
            pos += l;
        }
        true
    }

    fn decode_buffer(&self, y: &[u8], w: usize) -> DecodeOutcome {
        let k = self.p.k;
        let ell = self.p.ell;
        let par_bits = (self.p.c1 + self.p.c2) * ell;
        let n = self.rs.n();
        let bk = self.big_k;
        let d = y.len() as i64 - self.n_units as i64;
        match buffer_classify(y, self.n_units, par_bits, w) {
            BufferClass::Ambiguous => {
                // same length: drop the buffer and correct substitutions
                let mut word = self.symbols_from_bits(&y[..k]);
                word.extend(self.symbols_from_bits(&y[y.len() - par_bits..]));
                let last_bits = k - (bk - 1) * ell;
                match self.rs.decode(&word, &[]) {
                    Ok(m) if m[bk - 1] >> last_bits == 0 => DecodeOutcome {
                        outcome: Outcome::Decoded(self.symbols_to_bits(&m)),
                        guesses: 1,
                        parity_ok: true,
                    },
                    _ => DecodeOutcome::failure(1, true),
                }
            }
            BufferClass::InfoClean => {
                if y.len() < k {
                    return DecodeOutcome::failure(0, false);
                }
                DecodeOutcome { outcome: Outcome::Decoded(y[..k].to_vec()), guesses: 0, parity_ok: false }
            }
            BufferClass::InfoDirtyParitiesClean => {
                let head = k as i64 + d;
                if head < 0 || head as usize > y.len() {
                    return DecodeOutcome::failure(0, true);
                }
                let yp = &y[..head as usize];
                let par = self.symbols_from_bits(&y[y.len() - par_bits..]);
                let p_c = par[self.p.c1..].to_vec();
                let mut word = vec![0 as Gf; n];
                word[bk..bk + self.p.c1].copy_from_slice(&par[..self.p.c1]);
                let mut erasures = Vec::with_capacity(n);
                let mut guesses = 0;
                let last_bits = k - (bk - 1) * ell;
                for j in 0..=bk - self.p.c1 {
                    if !self.segment_window(yp, j, bk, d, &mut word, &mut erasures) {
                        continue;
                    }
                    guesses += 1;
                    erasures.extend(bk + self.p.c1..n);
                    let Ok(g) = self.rs.decode(&word, &erasures) else { continue };
                    if g[bk - 1] >> last_bits == 0 && self.validate_guess(&g, &p_c) {
                        return DecodeOutcome {
                            outcome: Outcome::Decoded(self.symbols_to_bits(&g)),
                            guesses,
                            parity_ok: true,
                        };
                    }
                }
                DecodeOutcome::failure(guesses, true)
            }
        }
    }
}

/// MSB-first value of a bit slice.
pub fn bits_value(bits: &[u8]) -> Gf {
    bits.iter().fold(0, |acc, &b| acc << 1 | b as Gf)
}

fn bits_value_usize(bits: &[u8]) -> usize {
    bits.iter().fold(0, |acc, &b| acc << 1 | b as usize)
}

/// Appends the `width` low bits of `v`, MSB first.
pub fn push_bits(out: &mut Vec<u8>, v: Gf, width: usize) {
    for i in (0..width).rev() {
        out.push((v >> i & 1) as u8);
    }
}
