//! Offset patterns: the hypotheses tried by the guess stage.
//!
//! A pattern assigns a net offset `delta_i` (insertions minus deletions) to
//! each of the N' segments. The burst check tries one representative per
//! window of `c1` consecutive segments; the general check walks every pattern
//! with at most `c1` nonzero entries and L1 norm at most `|Delta| + 2*lambda`.

use num_bigint::BigUint;
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OffsetPattern {
    pub deltas: Vec<i64>,
    pub delta_total: i64,
    pub l1: u64,
    pub l0: usize,
}

impl OffsetPattern {
    pub fn from_deltas(deltas: Vec<i64>) -> Self {
        let delta_total = deltas.iter().sum();
        let l1 = deltas.iter().map(|d| d.unsigned_abs()).sum();
        let l0 = deltas.iter().filter(|&&d| d != 0).count();
        OffsetPattern { deltas, delta_total, l1, l0 }
    }

    pub fn from_sparse(n_prime: usize, entries: &[(usize, i64)]) -> Self {
        let mut d = vec![0; n_prime];
        for &(p, v) in entries {
            d[p] = v;
        }
        Self::from_deltas(d)
    }
}

/// One representative per window `{j, .., j+c1-1}`, `j = 0..=N'-c1`, with all
/// of `delta` placed on segment `j`.
pub fn enumerate_burst(delta: i64, n_prime: usize, c1: usize) -> Vec<(usize, OffsetPattern)> {
    assert!(c1 >= 1 && c1 <= n_prime, "need 1 <= c1 <= N'");
    (0..=n_prime - c1)
        .map(|j| {
            let mut d = vec![0; n_prime];
            d[j] = delta;
            (j, OffsetPattern::from_deltas(d))
        })
        .collect()
}

/// Visits the general-check patterns in order: nondecreasing L1 norm, then
/// lexicographic on the sorted support, then lexicographic on the values.
/// Patterns are passed in sparse form `(position, offset)`. The visitor returns
/// `false` to stop early. Returns the number of patterns visited.
pub fn for_each_general<F>(
    delta: i64,
    n_prime: usize,
    c1: usize,
    lambda: usize,
    ell: usize,
    mut visit: F,
) -> usize
where
    F: FnMut(&[(usize, i64)]) -> bool,
{
    let mut count = 0;
    let mut buf: Vec<(usize, i64)> = Vec::with_capacity(c1);
    let mut stopped = false;
    for z in 0..=lambda as i64 {
        let l1 = delta.abs() + 2 * z;
        let pos_mass = (l1 + delta) / 2;
        let neg_mass = (l1 - delta) / 2;
        if l1 == 0 {
            count += 1;
            if !visit(&[]) {
                return count;
            }
            continue;
        }
        let mut walker = Walker {
            n_prime,
            c1,
            ell: ell as i64,
            pos_mass,
            neg_mass,
            count: &mut count,
            stopped: &mut stopped,
            visit: &mut visit,
            support: Vec::with_capacity(c1),
            buf: &mut buf,
        };
        walker.supports(0);
        if stopped {
            return count;
        }
    }
    count
}

struct Walker<'a, F> {
    n_prime: usize,
    c1: usize,
    ell: i64,
    pos_mass: i64,
    neg_mass: i64,
    count: &'a mut usize,
    stopped: &'a mut bool,
    visit: &'a mut F,
    support: Vec<usize>,
    buf: &'a mut Vec<(usize, i64)>,
}

impl<F: FnMut(&[(usize, i64)]) -> bool> Walker<'_, F> {
    fn supports(&mut self, start: usize) {
        if !self.support.is_empty() {
            self.buf.clear();
            self.values(0, self.pos_mass, self.neg_mass);
            if *self.stopped {
                return;
            }
        }
        let cap = (self.pos_mass + self.neg_mass) as usize;
        if self.support.len() == self.c1.min(cap) {
            return;
        }
        for p in start..self.n_prime {
            self.support.push(p);
            self.supports(p + 1);
            self.support.pop();
            if *self.stopped {
                return;
            }
        }
    }

    fn values(&mut self, idx: usize, pos_left: i64, neg_left: i64) {
        let s = self.support.len();
        if idx == s {
            if pos_left == 0 && neg_left == 0 {
                *self.count += 1;
                if !(self.visit)(self.buf) {
                    *self.stopped = true;
                }
            }
            return;
        }
        let rest = (s - idx - 1) as i64;
        let lo = -neg_left.min(self.ell);
        for v in lo..=pos_left {
            if v == 0 {
                continue;
            }
            let (p, m) = if v > 0 { (pos_left - v, neg_left) } else { (pos_left, neg_left + v) };
            let need = (p > 0) as i64 + (m > 0) as i64;
            if need > rest || p + m < rest || m > rest * self.ell {
                continue;
            }
            self.buf.push((self.support[idx], v));
            self.values(idx + 1, p, m);
            self.buf.pop();
            if *self.stopped {
                return;
            }
        }
    }
}

/// All general-check patterns, materialized.
pub fn enumerate_general(
    delta: i64,
    n_prime: usize,
    c1: usize,
    lambda: usize,
    ell: usize,
) -> Vec<OffsetPattern> {
    let mut out = Vec::new();
    for_each_general(delta, n_prime, c1, lambda, ell, |e| {
        out.push(OffsetPattern::from_sparse(n_prime, e));
        true
    });
    out
}

/// Binomial coefficient extended to negative arguments: 1 if b == a, 0 if
/// a > b or a < 0, ordinary otherwise.
pub fn binom_ext(b: i64, a: i64) -> BigUint {
    if b == a {
        return BigUint::one();
    }
    if a > b || a < 0 {
        return BigUint::zero();
    }
    let a = a.min(b - a);
    let mut r = BigUint::one();
    for i in 0..a {
        r = r * BigUint::from((b - i) as u64) / BigUint::from((i + 1) as u64);
    }
    r
}

/// Exact number of general-check patterns, counted without the per-segment
/// cap `delta_i >= -ell`.
pub fn cardinality_general(delta: i64, n_prime: usize, c1: usize, lambda: usize) -> BigUint {
    let d = delta.abs();
    let np = n_prime as i64;
    let mut total = BigUint::zero();
    for i1 in 0..=c1 as i64 {
        for i2 in 0..=lambda as i64 {
            for i3 in 0..=lambda as i64 {
                let term = binom_ext(np, i1)
                    * binom_ext(i1, i2)
                    * binom_ext(i3 - 1, i2 - 1)
                    * binom_ext(d + i3 - 1, i1 - i2 - 1);
                total += term;
            }
        }
    }
    total
}

/// Closed-form upper bound
/// `2^(|D|+lambda-1) * i * N'^i * (lambda+i)^i / (i!)^2`, rounded up, with
/// `i = min(c1, max(lambda+1, |D|+2 lambda))`.
pub fn cardinality_upper_bound(delta: i64, n_prime: usize, c1: usize, lambda: usize) -> BigUint {
    let d = delta.unsigned_abs() as usize;
    let i = c1.min((lambda + 1).max(d + 2 * lambda));
    let mut num = BigUint::from(i) * (BigUint::one() << (d + lambda));
    num *= BigUint::from(n_prime).pow(i as u32);
    num *= BigUint::from(lambda + i).pow(i as u32);
    let mut fact = BigUint::one();
    for x in 1..=i {
        fact *= BigUint::from(x);
    }
    let den = BigUint::from(2u32) * &fact * &fact;
    (num + &den - BigUint::one()) / den
}
