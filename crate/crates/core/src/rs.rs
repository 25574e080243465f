//! Systematic Reed-Solomon codes over GF(2^m) with an errors-and-erasures
//! syndrome decoder.
//!
//! Codeword index `j` holds the coefficient of `x^(N-1-j)`, so the message
//! occupies indices `0..K` and the parities `K..N`. The generator polynomial
//! is `prod_{i=1..N-K} (x - alpha^i)`.

use std::sync::Arc;

use thiserror::Error;

use crate::gf::{Field, Gf};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RsError {
    #[error("need 0 < K < N <= {max}, got N={n}, K={k}")]
    BadLength { n: usize, k: usize, max: usize },
    #[error("expected {expected} symbols, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("erasure position {0} out of range")]
    BadErasure(usize),
    #[error("uncorrectable word")]
    DecodeFailure,
}

#[derive(Debug, Clone)]
pub struct RsCode {
    field: Arc<Field>,
    n: usize,
    k: usize,
    /// generator coefficients, highest degree first (gen[0] = 1)
    gen: Vec<Gf>,
}

impl RsCode {
    pub fn new(field: Arc<Field>, n: usize, k: usize) -> Result<RsCode, RsError> {
        let max = field.order();
        if k == 0 || k >= n || n > max {
            return Err(RsError::BadLength { n, k, max });
        }
        let c = n - k;
        let mut gen: Vec<Gf> = vec![1];
        for i in 1..=c {
            // multiply by (x + alpha^i)
            let root = field.alpha_pow(i);
            let mut next = vec![0 as Gf; gen.len() + 1];
            for (d, &g) in gen.iter().enumerate() {
                next[d] ^= g;
                next[d + 1] ^= field.mul(g, root);
            }
            gen = next;
        }
        Ok(RsCode { field, n, k, gen })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn parity_len(&self) -> usize {
        self.n - self.k
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Parity symbols of `msg`, in codeword order.
    pub fn parity(&self, msg: &[Gf]) -> Result<Vec<Gf>, RsError> {
        if msg.len() != self.k {
            return Err(RsError::LengthMismatch { expected: self.k, got: msg.len() });
        }
        let f = &*self.field;
        let c = self.n - self.k;
        let mut rem = vec![0 as Gf; c];
        for &s in msg {
            let fb = s ^ rem[0];
            for i in 0..c - 1 {
                rem[i] = rem[i + 1] ^ f.mul(fb, self.gen[i + 1]);
            }
            rem[c - 1] = f.mul(fb, self.gen[c]);
        }
        Ok(rem)
    }

    pub fn encode(&self, msg: &[Gf]) -> Result<Vec<Gf>, RsError> {
        let mut cw = msg.to_vec();
        cw.extend(self.parity(msg)?);
        Ok(cw)
    }

    fn syndromes(&self, word: &[Gf]) -> Vec<Gf> {
        let f = &*self.field;
        (1..=self.n - self.k)
            .map(|i| {
                let a = f.alpha_pow(i);
                word.iter().fold(0, |acc, &w| f.mul(acc, a) ^ w)
            })
            .collect()
    }

    /// Locator of codeword index j: alpha^(N-1-j).
    #[inline]
    fn locator(&self, j: usize) -> Gf {
        self.field.alpha_pow(self.n - 1 - j)
    }

    /// Errors-and-erasures decoding. Returns the corrected codeword. Values at
    /// erased positions are ignored. Succeeds whenever `e + 2s <= N - K`.
    pub fn decode_codeword(&self, word: &[Gf], erasures: &[usize]) -> Result<Vec<Gf>, RsError> {
        if word.len() != self.n {
            return Err(RsError::LengthMismatch { expected: self.n, got: word.len() });
        }
        let f = &*self.field;
        let c = self.n - self.k;
        let mut w = word.to_vec();
        let mut erased = vec![false; self.n];
        for &p in erasures {
            if p >= self.n {
                return Err(RsError::BadErasure(p));
            }
            if !erased[p] {
                erased[p] = true;
                w[p] = 0;
            }
        }
        let e = erased.iter().filter(|&&x| x).count();
        if e > c {
            return Err(RsError::DecodeFailure);
        }
        let synd = self.syndromes(&w);
        if synd.iter().all(|&s| s == 0) {
            return Ok(w);
        }

        // erasure locator, ascending coefficients
        let mut gamma: Vec<Gf> = vec![1];
        for j in (0..self.n).filter(|&j| erased[j]) {
            gamma = poly_mul(f, &gamma, &[1, self.locator(j)]);
        }

        // Forney syndromes: coefficients e..c of gamma(x) S(x)
        let mut forney = poly_mul(f, &gamma, &synd);
        forney.truncate(c);
        let sigma = berlekamp_massey(f, &forney[e..]);
        let nu = sigma.len() - 1;
        if e + 2 * nu > c {
            return Err(RsError::DecodeFailure);
        }
        let mut lambda = poly_mul(f, &gamma, &sigma);
        trim(&mut lambda);

        let mut omega = poly_mul(f, &synd, &lambda);
        omega.truncate(c);
        let dlambda: Vec<Gf> = (1..lambda.len())
            .map(|i| if i % 2 == 1 { lambda[i] } else { 0 })
            .collect();

        let mut roots = 0;
        for j in 0..self.n {
            let xinv = f.inv(self.locator(j)).expect("nonzero locator");
            if poly_eval(f, &lambda, xinv) != 0 {
                continue;
            }
            roots += 1;
            let den = poly_eval(f, &dlambda, xinv);
            if den == 0 {
                return Err(RsError::DecodeFailure);
            }
            let y = f.div(poly_eval(f, &omega, xinv), den);
            w[j] ^= y;
        }
        if roots != lambda.len() - 1 {
            return Err(RsError::DecodeFailure);
        }
        if self.syndromes(&w).iter().any(|&s| s != 0) {
            return Err(RsError::DecodeFailure);
        }
        Ok(w)
    }

    /// Message symbols after errors-and-erasures decoding.
    pub fn decode(&self, word: &[Gf], erasures: &[usize]) -> Result<Vec<Gf>, RsError> {
        let mut cw = self.decode_codeword(word, erasures)?;
        cw.truncate(self.k);
        Ok(cw)
    }

    /// Decoding of the code punctured at its last `punct` positions: those
    /// positions are added to the erasure set, so the contract becomes
    /// `e + 2s <= N - K - punct`.
    pub fn decode_punctured(
        &self,
        word: &[Gf],
        erasures: &[usize],
        punct: usize,
    ) -> Result<Vec<Gf>, RsError> {
        let mut er = erasures.to_vec();
        er.extend(self.n - punct..self.n);
        self.decode(word, &er)
    }
}

fn trim(p: &mut Vec<Gf>) {
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
}

fn poly_mul(f: &Field, a: &[Gf], b: &[Gf]) -> Vec<Gf> {
    let mut out = vec![0 as Gf; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] ^= f.mul(x, y);
        }
    }
    out
}

/// Ascending-coefficient evaluation.
fn poly_eval(f: &Field, p: &[Gf], x: Gf) -> Gf {
    p.iter().rev().fold(0, |acc, &c| f.mul(acc, x) ^ c)
}

/// Shortest LFSR generating `seq`; connection polynomial, ascending, C[0] = 1.
fn berlekamp_massey(f: &Field, seq: &[Gf]) -> Vec<Gf> {
    let mut cpoly: Vec<Gf> = vec![1];
    let mut bpoly: Vec<Gf> = vec![1];
    let mut l = 0usize;
    let mut shift = 1usize;
    let mut bd: Gf = 1;
    for n in 0..seq.len() {
        let mut d = seq[n];
        for i in 1..=l.min(cpoly.len() - 1) {
            d ^= f.mul(cpoly[i], seq[n - i]);
        }
        if d == 0 {
            shift += 1;
            continue;
        }
        let coef = f.div(d, bd);
        let mut next = cpoly.clone();
        if next.len() < bpoly.len() + shift {
            next.resize(bpoly.len() + shift, 0);
        }
        for (i, &b) in bpoly.iter().enumerate() {
            next[i + shift] ^= f.mul(coef, b);
        }
        if 2 * l <= n {
            bpoly = cpoly;
            l = n + 1 - l;
            bd = d;
            shift = 1;
        } else {
            shift += 1;
        }
        cpoly = next;
    }
    cpoly.resize(l + 1, 0);
    cpoly
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn code(m: u32, n: usize, k: usize) -> RsCode {
        RsCode::new(Arc::new(Field::new(m, None).unwrap()), n, k).unwrap()
    }

    /// Brute-force systematic encoder: the parity is the unique completion
    /// whose polynomial vanishes at alpha^1..alpha^c, found by solving the
    /// Vandermonde system with Gaussian elimination.
    fn oracle_parity(rs: &RsCode, msg: &[Gf]) -> Vec<Gf> {
        let f = rs.field();
        let (n, k) = (rs.n(), rs.k());
        let c = n - k;
        // rows i: sum_j cw_j alpha^(i*(n-1-j)) = 0
        let mut a = vec![vec![0 as Gf; c + 1]; c];
        for (i, row) in a.iter_mut().enumerate() {
            let root = f.alpha_pow(i + 1);
            let mut rhs = 0;
            for (j, &mj) in msg.iter().enumerate() {
                rhs ^= f.mul(mj, f.pow(root, (n - 1 - j) as i64));
            }
            for p in 0..c {
                row[p] = f.pow(root, (c - 1 - p) as i64);
            }
            row[c] = rhs;
        }
        for col in 0..c {
            let piv = (col..c).find(|&r| a[r][col] != 0).unwrap();
            a.swap(col, piv);
            let inv = f.inv(a[col][col]).unwrap();
            for x in a[col].iter_mut() {
                *x = f.mul(*x, inv);
            }
            for r in 0..c {
                if r != col && a[r][col] != 0 {
                    let factor = a[r][col];
                    let pivot_row = a[col].clone();
                    for (x, p) in a[r].iter_mut().zip(pivot_row) {
                        *x ^= f.mul(factor, p);
                    }
                }
            }
        }
        a.iter().map(|row| row[c]).collect()
    }

    #[test]
    fn zero_message() {
        let rs = code(3, 4, 2);
        assert_eq!(rs.encode(&[0, 0]).unwrap(), vec![0; 4]);
    }

    #[test]
    fn encoder_matches_linear_solve() {
        let rs = code(3, 4, 2);
        assert_eq!(rs.parity(&[1, 2]).unwrap(), oracle_parity(&rs, &[1, 2]));
        let rs = code(7, 29, 20);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let msg: Vec<Gf> = (0..20).map(|_| rng.gen_range(0..128)).collect();
            assert_eq!(rs.parity(&msg).unwrap(), oracle_parity(&rs, &msg));
        }
    }

    #[test]
    fn exhaustive_small_patterns() {
        // GF(8), (7,3): every (e, s) with e + 2s <= 4
        let rs = code(3, 7, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for mask in 0u32..(1 << 7) {
            for smask in 0u32..(1 << 7) {
                if mask & smask != 0 {
                    continue;
                }
                let e = mask.count_ones() as usize;
                let s = smask.count_ones() as usize;
                if e + 2 * s > 4 {
                    continue;
                }
                let msg: Vec<Gf> = (0..3).map(|_| rng.gen_range(0..8)).collect();
                let mut w = rs.encode(&msg).unwrap();
                for j in 0..7 {
                    if smask >> j & 1 == 1 {
                        w[j] ^= rng.gen_range(1..8);
                    }
                    if mask >> j & 1 == 1 {
                        w[j] = rng.gen_range(0..8);
                    }
                }
                let er: Vec<usize> = (0..7).filter(|j| mask >> j & 1 == 1).collect();
                assert_eq!(rs.decode(&w, &er).unwrap(), msg, "e={e} s={s}");
            }
        }
    }

    #[test]
    fn too_many_erasures_fail() {
        let rs = code(3, 7, 3);
        let w = rs.encode(&[1, 2, 3]).unwrap();
        assert_eq!(rs.decode(&w, &[0, 1, 2, 3, 4]), Err(RsError::DecodeFailure));
    }
}
