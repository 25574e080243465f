//! Analytic estimates of the decoding error probability under i.i.d. edits.
//!
//! The estimate is the sum of three event probabilities:
//! * E1: the segment errors exceed what the guess parities can fix,
//! * E2: the true offset pattern lies outside the searched set,
//! * E3: the check parities are recovered incorrectly from the tail.

use thiserror::Error;

use crate::channel::ChannelParams;
use crate::code::{GcCode, LambdaMap};
use crate::parity::ParityScheme;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnalysisError {
    #[error("no analytic estimate for the buffer scheme")]
    BufferScheme,
    #[error("quaternary analysis needs an even segment length, got {0}")]
    OddSegment(usize),
    #[error("analysis assumes edits anywhere in the codeword (no window)")]
    Windowed,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnalyticReport {
    pub p_e1: f64,
    pub p_e2: f64,
    pub p_e3: f64,
    pub total: f64,
    pub ell_eff: usize,
    pub n_prime: usize,
    pub c1: usize,
    pub p_d: f64,
    pub p_i: f64,
    pub p_s: f64,
    pub scheme: String,
}

fn ln_factorial(n: usize) -> f64 {
    (1..=n).map(|i| (i as f64).ln()).sum()
}

/// n! / (a! b! (n-a-b)!) as a float.
pub fn multinomial(n: usize, a: usize, b: usize) -> f64 {
    assert!(a + b <= n);
    (ln_factorial(n) - ln_factorial(a) - ln_factorial(b) - ln_factorial(n - a - b)).exp()
}

pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        0.0
    } else {
        multinomial(n, k, 0)
    }
}

/// Probability that a segment of `ell` symbols has a nonzero net offset.
fn alpha_offset(ell: usize, p_d: f64, p_i: f64) -> f64 {
    let keep = 1.0 - p_d - p_i;
    let balanced: f64 = (0..=ell / 2)
        .map(|j| multinomial(ell, j, j) * (p_d * p_i).powi(j as i32) * keep.powi((ell - 2 * j) as i32))
        .sum();
    1.0 - balanced
}

/// Probability that the segment errors outweigh the guess parities, where an
/// offset segment costs one erasure and any other damaged segment costs two.
pub fn prob_e1(ell: usize, n_prime: usize, c1: usize, ch: &ChannelParams) -> f64 {
    let a0 = (1.0 - ch.p_edit()).powi(ell as i32);
    let a1 = alpha_offset(ell, ch.p_d, ch.p_i);
    let a2 = 1.0 - a0 - a1;
    let mut ok = 0.0;
    for j1 in 0..=c1.min(n_prime) {
        for j2 in 0..=(c1 - j1) / 2 {
            if j1 + j2 > n_prime {
                break;
            }
            ok += multinomial(n_prime, j1, j2)
                * a1.powi(j1 as i32)
                * a2.powi(j2 as i32)
                * a0.powi((n_prime - j1 - j2) as i32);
        }
    }
    1.0 - ok
}

/// Distribution of the net offset (insertions minus deletions) of one
/// segment of `ell` symbols.
#[derive(Debug, Clone, PartialEq)]
pub struct OffsetPmf {
    pub ell: usize,
    /// `probs[d + ell]` is Pr(D = d) for d in -ell..=ell
    pub probs: Vec<f64>,
}

impl OffsetPmf {
    pub fn get(&self, d: i64) -> f64 {
        let i = d + self.ell as i64;
        if i < 0 || i as usize >= self.probs.len() {
            0.0
        } else {
            self.probs[i as usize]
        }
    }

    /// Pr(D = d) for d = 0..=ell.
    pub fn p(&self) -> Vec<f64> {
        (0..=self.ell as i64).map(|d| self.get(d)).collect()
    }

    /// Pr(D = -d) for d = 0..=ell.
    pub fn q(&self) -> Vec<f64> {
        (0..=self.ell as i64).map(|d| self.get(-d)).collect()
    }

    pub fn p_bar(&self) -> Vec<f64> {
        let mut v = self.p();
        v[0] = 0.0;
        v
    }

    pub fn q_bar(&self) -> Vec<f64> {
        let mut v = self.q();
        v[0] = 0.0;
        v
    }
}

pub fn offset_pmf(ell: usize, p_d: f64, p_i: f64) -> OffsetPmf {
    let keep = 1.0 - p_d - p_i;
    let l = ell as i64;
    let probs = (-l..=l)
        .map(|d| {
            let mut s = 0.0;
            let j0 = 0.max(-d);
            let j1 = (l - d).div_euclid(2);
            for j in j0..=j1 {
                let (dels, ins) = (j as usize, (j + d) as usize);
                s += multinomial(ell, dels, ins)
                    * p_d.powi(dels as i32)
                    * p_i.powi(ins as i32)
                    * keep.powi((l - 2 * j - d) as i32);
            }
            s
        })
        .collect();
    OffsetPmf { ell, probs }
}

pub fn convolve(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0.0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// `v^(*j)` for j = 0..=max.
fn convolution_powers(v: &[f64], max: usize) -> Vec<Vec<f64>> {
    let mut out = vec![vec![1.0]];
    for j in 1..=max {
        let next = convolve(&out[j - 1], v);
        out.push(next);
    }
    out
}

fn at(v: &[f64], i: usize) -> f64 {
    v.get(i).copied().unwrap_or(0.0)
}

/// Joint distribution of the cancelled offset mass Z and the total offset D
/// over `n_prime` independent segments.
#[derive(Debug, Clone, PartialEq)]
pub struct JointPmf {
    pub ell: usize,
    pub n_prime: usize,
    /// `table[z][d + ell*n_prime]`
    pub table: Vec<Vec<f64>>,
}

impl JointPmf {
    pub fn get(&self, z: usize, d: i64) -> f64 {
        let span = (self.ell * self.n_prime) as i64;
        if z >= self.table.len() || d.abs() > span {
            return 0.0;
        }
        self.table[z][(d + span) as usize]
    }

    pub fn total(&self) -> f64 {
        self.table.iter().flatten().sum()
    }
}

struct JointParts {
    ell: usize,
    n_prime: usize,
    p_pow: Vec<Vec<f64>>,
    q_pow: Vec<Vec<f64>>,
    pb_pow: Vec<Vec<f64>>,
    qb_pow: Vec<Vec<f64>>,
}

impl JointParts {
    fn new(ell: usize, n_prime: usize, ch: &ChannelParams) -> Self {
        let pmf = offset_pmf(ell, ch.p_d, ch.p_i);
        JointParts {
            ell,
            n_prime,
            p_pow: convolution_powers(&pmf.p(), n_prime),
            q_pow: convolution_powers(&pmf.q(), n_prime),
            pb_pow: convolution_powers(&pmf.p_bar(), n_prime),
            qb_pow: convolution_powers(&pmf.q_bar(), n_prime),
        }
    }

    /// Pr(Z = z, D = d): j segments carry the minority sign, the others the
    /// majority sign or zero.
    fn prob(&self, z: usize, d: i64) -> f64 {
        let ell = self.ell;
        let np = self.n_prime;
        let ad = d.unsigned_abs() as usize;
        let j_lo = z.div_ceil(ell);
        let need = (ad + z).div_ceil(ell);
        if need > np {
            return 0.0;
        }
        let j_hi = z.min(np - need);
        let (minor, major) = if d >= 0 { (&self.qb_pow, &self.p_pow) } else { (&self.pb_pow, &self.q_pow) };
        let mut s = 0.0;
        for j in j_lo..=j_hi {
            s += binomial(np, j) * at(&minor[j], z) * at(&major[np - j], ad + z);
        }
        s
    }
}

pub fn joint_pmf_z_delta(ell: usize, n_prime: usize, ch: &ChannelParams) -> JointPmf {
    let parts = JointParts::new(ell, n_prime, ch);
    let span = (ell * n_prime) as i64;
    let table = (0..=ell * n_prime)
        .map(|z| (-span..=span).map(|d| parts.prob(z, d)).collect())
        .collect();
    JointPmf { ell, n_prime, table }
}

/// Probability that the channel's offsets need more cancellations than the
/// decoding depth allows.
pub fn prob_e2(ell: usize, n_prime: usize, ch: &ChannelParams, lambda: &LambdaMap) -> f64 {
    let parts = JointParts::new(ell, n_prime, ch);
    let span = (ell * n_prime) as i64;
    let mut covered = 0.0;
    for d in -span..=span {
        for z in 0..=lambda.get(d).min(ell * n_prime) {
            covered += parts.prob(z, d);
        }
    }
    1.0 - covered
}

/// Bound on a wrong tail decode for a suffix-distance code: more than
/// `(d_min-1)/2` edits among its `n_tilde` symbols.
pub fn prob_e3_sld(n_tilde: usize, d_min: usize, p_edit: f64) -> f64 {
    let radius = (d_min - 1) / 2;
    let ok: f64 = (0..=radius.min(n_tilde))
        .map(|j| binomial(n_tilde, j) * p_edit.powi(j as i32) * (1.0 - p_edit).powi((n_tilde - j) as i32))
        .sum();
    1.0 - ok
}

/// States below this probability are dropped and counted as errors.
const DROP: f64 = 1e-15;

/// Union bound on a wrong majority vote over `k_tilde` repeated bits.
///
/// Block `b` is tracked with a Markov chain over (correct votes so far, net
/// offset) while the channel walks over the bits of blocks b-1, b and b+1.
/// The offset accumulated before block b-1 starts from the offset law of the
/// preceding `(b-2)t` bits. The neighbours' bits either agree or disagree
/// with block b; the four combinations are run separately and averaged. The
/// block after the last one is random. An inserted symbol and the symbol that
/// follows it are both counted when the position reached so far lies inside
/// the voting window.
pub fn prob_e3_repetition(t: usize, k_tilde: usize, ch: &ChannelParams) -> f64 {
    assert!(t % 2 == 1, "repetition factor must be odd");
    let mut total = 0.0;
    for b in 1..=k_tilde {
        let mut block = 0.0;
        for (left, right) in [(1.0, 1.0), (0.0, 1.0), (1.0, 0.0), (0.0, 0.0)] {
            block += 0.25 * repetition_block_error(t, k_tilde, b, left, right, ch);
        }
        total += block;
    }
    total
}

/// Error probability of block `b` for fixed neighbour agreement.
pub fn repetition_block_error(
    t: usize,
    k_tilde: usize,
    b: usize,
    left: f64,
    right: f64,
    ch: &ChannelParams,
) -> f64 {
    let m = if b >= 2 { (b - 2) * t } else { 0 };
    let steps = if b == 1 { 2 * t } else { 3 * t };
    let (w_lo, w_hi) = (((b - 1) * t + 1) as i64, (b * t) as i64);
    // wrong votes needed for a wrong majority
    let thr = t / 2 + 1;
    let span = (m + steps) as i64;
    let width = (2 * span + 1) as usize;
    let idx = |s: usize, d: i64| s * width + (d + span) as usize;
    let mut h = vec![0.0; (thr + 1) * width];
    let pmf = offset_pmf(m, ch.p_d, ch.p_i);
    for d in -(m as i64)..=m as i64 {
        h[idx(0, d)] = pmf.get(d);
    }
    let agree = |i: usize| -> f64 {
        if b == 1 {
            if i <= t {
                1.0
            } else {
                right
            }
        } else if i <= t {
            left
        } else if i <= 2 * t {
            1.0
        } else if b == k_tilde {
            0.5
        } else {
            right
        }
    };
    let p_none = 1.0 - ch.p_edit();
    let mut dropped = 0.0;
    let mut next = vec![0.0; h.len()];
    for i in 1..=steps {
        next.iter_mut().for_each(|v| *v = 0.0);
        let beta = agree(i);
        for s in 0..=thr {
            for d in -span..=span {
                let pr = h[idx(s, d)];
                if pr == 0.0 {
                    continue;
                }
                if pr < DROP {
                    dropped += pr;
                    continue;
                }
                let inw = {
                    let pos = (m + i) as i64 + d;
                    pos >= w_lo && pos <= w_hi
                };
                let mut add = |s2: usize, d2: i64, v: f64| {
                    if v > 0.0 {
                        next[idx(s2.min(thr), d2)] += v;
                    }
                };
                for (bit_ok, pb) in [(true, beta), (false, 1.0 - beta)] {
                    if pb == 0.0 {
                        continue;
                    }
                    let base = pr * pb;
                    let vote = inw as usize;
                    add(s + vote * bit_ok as usize, d, base * p_none);
                    add(s, d - 1, base * ch.p_d);
                    add(s + vote * (!bit_ok) as usize, d, base * ch.p_s);
                    // inserted symbol equal to the original, or different
                    for same in [true, false] {
                        let sigma_ok = bit_ok == same;
                        let inc = vote * (sigma_ok as usize + bit_ok as usize);
                        add(s + inc, d + 1, base * ch.p_i * 0.5);
                    }
                }
            }
        }
        std::mem::swap(&mut h, &mut next);
    }
    let mut err = dropped;
    for s in 0..thr {
        for d in -span..=span {
            err += h[idx(s, d)];
        }
    }
    err
}

/// Sum of the three event probabilities for a configured code. Quaternary
/// codes are analysed with segments of `ell/2` nucleotides.
pub fn total_error_estimate(code: &GcCode, ch: &ChannelParams) -> Result<AnalyticReport, AnalysisError> {
    if ch.w.is_some() {
        return Err(AnalysisError::Windowed);
    }
    let p = code.params();
    let ell_eff = if p.alphabet == 4 {
        if p.ell % 2 != 0 {
            return Err(AnalysisError::OddSegment(p.ell));
        }
        p.ell / 2
    } else {
        p.ell
    };
    let n_prime = code.n_prime();
    let p_e1 = prob_e1(ell_eff, n_prime, p.c1, ch);
    let p_e2 = prob_e2(ell_eff, n_prime, ch, &p.lambda);
    let p_e3 = match &p.scheme {
        ParityScheme::Repetition { t } => prob_e3_repetition(*t, p.c2 * p.ell, ch),
        ParityScheme::Sld(cb) => prob_e3_sld(cb.n_tilde, cb.d_min, ch.p_edit()),
        ParityScheme::Buffer { .. } => return Err(AnalysisError::BufferScheme),
    };
    Ok(AnalyticReport {
        p_e1,
        p_e2,
        p_e3,
        total: p_e1 + p_e2 + p_e3,
        ell_eff,
        n_prime,
        c1: p.c1,
        p_d: ch.p_d,
        p_i: ch.p_i,
        p_s: ch.p_s,
        scheme: p.scheme.name(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::EditMix;

    fn ch(p_d: f64, p_i: f64, p_s: f64) -> ChannelParams {
        ChannelParams { w: None, p_d, p_i, p_s, alphabet: 2 }
    }

    #[test]
    fn zero_noise() {
        let c = ch(0.0, 0.0, 0.0);
        assert_eq!(prob_e1(7, 28, 8, &c), 0.0);
        assert!(prob_e2(7, 28, &c, &LambdaMap::small_offsets()).abs() < 1e-15);
        assert_eq!(prob_e3_sld(20, 5, 0.0), 0.0);
        assert_eq!(prob_e3_repetition(3, 7, &c), 0.0);
    }

    #[test]
    fn offset_pmf_small() {
        let pmf = offset_pmf(1, 0.1, 0.2);
        assert!((pmf.get(1) - 0.2).abs() < 1e-15);
        assert!((pmf.get(-1) - 0.1).abs() < 1e-15);
        assert!((pmf.get(0) - 0.7).abs() < 1e-15);
        let pmf = offset_pmf(2, 0.1, 0.1);
        assert!((pmf.get(0) - 0.66).abs() < 1e-12);
        let pmf = offset_pmf(7, 0.004, 0.003);
        assert!((pmf.probs.iter().sum::<f64>() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn single_segment_joint() {
        let c = ChannelParams::new(0.05, EditMix::Symmetric, 2);
        let j = joint_pmf_z_delta(4, 1, &c);
        let pmf = offset_pmf(4, c.p_d, c.p_i);
        for d in -4..=4 {
            assert!((j.get(0, d) - pmf.get(d)).abs() < 1e-15);
        }
        assert!((j.total() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn e3_sld_hand_value() {
        let p: f64 = 0.01;
        let ok = 0.99f64.powi(20) + 20.0 * p * 0.99f64.powi(19) + 190.0 * p * p * 0.99f64.powi(18);
        assert!((prob_e3_sld(20, 5, p) - (1.0 - ok)).abs() < 1e-15);
    }

    #[test]
    fn e1_single_symbol_segments() {
        // with ell = 1 the classes are (no edit, indel, substitution)
        let c = ch(0.01, 0.02, 0.03);
        let e = prob_e1(1, 3, 1, &c);
        let (a0, a1, a2) = (0.94f64, 0.03f64, 0.03f64);
        let ok = a0.powi(3) + 3.0 * a1 * a0 * a0;
        assert!((e - (1.0 - ok)).abs() < 1e-14);
        assert!(a2 > 0.0);
    }
}
