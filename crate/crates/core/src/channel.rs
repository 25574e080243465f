//! Random edit channel: deletions, insertions and substitutions confined to a
//! window of `w` consecutive symbols placed uniformly at random.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ChannelError {
    #[error("window length {w} exceeds input length {n}")]
    WindowTooLong { w: usize, n: usize },
    #[error("invalid probabilities: {0}")]
    Probabilities(String),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelParams {
    /// window length; `None` means the whole input
    pub w: Option<usize>,
    pub p_d: f64,
    pub p_i: f64,
    pub p_s: f64,
    pub alphabet: usize,
}

/// Split of the edit probability between deletions, insertions and
/// substitutions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EditMix {
    /// equal thirds
    Symmetric,
    /// 45% deletions, 2% insertions, 53% substitutions
    Asymmetric,
    Custom { d: f64, i: f64, s: f64 },
}

impl EditMix {
    pub fn fractions(&self) -> (f64, f64, f64) {
        match *self {
            EditMix::Symmetric => (1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0),
            EditMix::Asymmetric => (0.45, 0.02, 0.53),
            EditMix::Custom { d, i, s } => (d, i, s),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            EditMix::Symmetric => "sym",
            EditMix::Asymmetric => "asym",
            EditMix::Custom { .. } => "custom",
        }
    }
}

impl ChannelParams {
    pub fn new(p_edit: f64, mix: EditMix, alphabet: usize) -> Self {
        let (d, i, s) = mix.fractions();
        ChannelParams { w: None, p_d: d * p_edit, p_i: i * p_edit, p_s: s * p_edit, alphabet }
    }

    pub fn with_window(mut self, w: usize) -> Self {
        self.w = Some(w);
        self
    }

    pub fn p_edit(&self) -> f64 {
        self.p_d + self.p_i + self.p_s
    }

    pub fn validate(&self) -> Result<(), ChannelError> {
        let ok = [self.p_d, self.p_i, self.p_s].iter().all(|p| (0.0..=1.0).contains(p))
            && self.p_edit() <= 1.0 + 1e-12;
        if !ok {
            return Err(ChannelError::Probabilities(format!(
                "p_d={}, p_i={}, p_s={}",
                self.p_d, self.p_i, self.p_s
            )));
        }
        if self.alphabet < 2 {
            return Err(ChannelError::Probabilities("alphabet needs two symbols".into()));
        }
        if self.w == Some(0) {
            return Err(ChannelError::Probabilities("window must be positive".into()));
        }
        Ok(())
    }
}

/// Per-sample counts of each edit type.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EditCounts {
    pub deletions: usize,
    pub insertions: usize,
    pub substitutions: usize,
}

/// Applies the channel to `x`.
pub fn channel_apply<R: Rng + ?Sized>(
    params: &ChannelParams,
    x: &[u8],
    rng: &mut R,
) -> Result<Vec<u8>, ChannelError> {
    channel_apply_counted(params, x, rng).map(|(y, _)| y)
}

/// Same as [`channel_apply`], also reporting what happened.
pub fn channel_apply_counted<R: Rng + ?Sized>(
    params: &ChannelParams,
    x: &[u8],
    rng: &mut R,
) -> Result<(Vec<u8>, EditCounts), ChannelError> {
    let n = x.len();
    let w = params.w.unwrap_or(n);
    if w > n {
        return Err(ChannelError::WindowTooLong { w, n });
    }
    let start = if w < n { rng.gen_range(0..=n - w) } else { 0 };
    let a = params.alphabet as u8;
    let (pd, pi, pe) = (params.p_d, params.p_i, params.p_edit());
    let mut y = Vec::with_capacity(n + 8);
    let mut counts = EditCounts::default();
    y.extend_from_slice(&x[..start]);
    for &sym in &x[start..start + w] {
        let u: f64 = rng.gen();
        if u >= pe {
            y.push(sym);
        } else if u < pd {
            counts.deletions += 1;
        } else if u < pd + pi {
            counts.insertions += 1;
            y.push(rng.gen_range(0..a));
            y.push(sym);
        } else {
            counts.substitutions += 1;
            let r = rng.gen_range(1..a);
            y.push((sym + r) % a);
        }
    }
    y.extend_from_slice(&x[start + w..]);
    Ok((y, counts))
}

/// Average edit rate over a codeword of length `n`: `P_edit * w / n`.
pub fn average_edit_rate(params: &ChannelParams, n: usize) -> f64 {
    params.p_edit() * params.w.unwrap_or(n) as f64 / n as f64
}

/// Generator for trial `index` under `seed`: the same pair always gives the
/// same stream, whatever the thread schedule.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_channels() {
        let x: Vec<u8> = (0..50).map(|i| (i % 2) as u8).collect();
        let mut rng = trial_rng(1, 0);
        let clean = ChannelParams::new(0.0, EditMix::Symmetric, 2);
        assert_eq!(channel_apply(&clean, &x, &mut rng).unwrap(), x);
        let erase = ChannelParams { w: None, p_d: 1.0, p_i: 0.0, p_s: 0.0, alphabet: 2 };
        assert!(channel_apply(&erase, &x, &mut rng).unwrap().is_empty());
        let bad = clean.with_window(51);
        assert!(channel_apply(&bad, &x, &mut rng).is_err());
    }

    #[test]
    fn substitution_changes_symbol() {
        let x = vec![2u8; 40];
        let p = ChannelParams { w: None, p_d: 0.0, p_i: 0.0, p_s: 1.0, alphabet: 4 };
        let y = channel_apply(&p, &x, &mut trial_rng(5, 5)).unwrap();
        assert!(y.iter().all(|&s| s != 2 && s < 4));
    }

    #[test]
    fn length_bookkeeping() {
        let x = vec![0u8; 100];
        let p = ChannelParams::new(0.3, EditMix::Symmetric, 2).with_window(30);
        for i in 0..200 {
            let (y, c) = channel_apply_counted(&p, &x, &mut trial_rng(9, i)).unwrap();
            assert_eq!(x.len() as i64 - y.len() as i64, c.deletions as i64 - c.insertions as i64);
            assert!(c.deletions + c.insertions + c.substitutions <= 30);
        }
    }

    #[test]
    fn edit_rates() {
        let p = ChannelParams::new(0.99, EditMix::Symmetric, 2).with_window(8);
        assert!((average_edit_rate(&p, 195) - 0.0406).abs() < 1e-3);
        let q = ChannelParams::new(0.01, EditMix::Asymmetric, 2);
        assert_eq!(average_edit_rate(&q, 217), q.p_edit());
    }
}
