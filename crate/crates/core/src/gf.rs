//! Arithmetic in GF(2^m), 1 <= m <= 16, backed by exp/log tables.
//!
//! Elements are plain `u16` values whose bits are polynomial coefficients.
//! The field is passed explicitly to every operation.

use thiserror::Error;

pub type Gf = u16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("field width m={0} outside 1..=16")]
    BadWidth(u32),
    #[error("polynomial {poly:#x} does not have degree {m}")]
    BadDegree { m: u32, poly: u32 },
    #[error("polynomial {0:#x} is not primitive")]
    NotPrimitive(u32),
    #[error("inverse of zero")]
    ZeroInverse,
}

/// Default primitive polynomials, indexed by m. Fixed so that parities are
/// reproducible everywhere.
pub const DEFAULT_POLYS: [u32; 17] = [
    0, 0x3, 0x7, 0xB, 0x13, 0x25, 0x43, 0x89, 0x11D, 0x211, 0x409, 0x805, 0x1053, 0x201B,
    0x4443, 0x8003, 0x1100B,
];

#[derive(Debug, Clone)]
pub struct Field {
    m: u32,
    poly: u32,
    exp: Vec<Gf>,
    log: Vec<u32>,
}

impl Field {
    /// Builds GF(2^m). With `poly = None` the entry of [`DEFAULT_POLYS`] is used.
    pub fn new(m: u32, poly: Option<u32>) -> Result<Field, GfError> {
        if !(1..=16).contains(&m) {
            return Err(GfError::BadWidth(m));
        }
        let poly = poly.unwrap_or(DEFAULT_POLYS[m as usize]);
        if poly >> m != 1 {
            return Err(GfError::BadDegree { m, poly });
        }
        let order = (1usize << m) - 1;
        let mut exp = vec![0 as Gf; 2 * order + 1];
        let mut log = vec![0u32; 1 << m];
        let mut seen = vec![false; 1 << m];
        let mut x: u32 = 1;
        for i in 0..order {
            if seen[x as usize] {
                return Err(GfError::NotPrimitive(poly));
            }
            seen[x as usize] = true;
            exp[i] = x as Gf;
            log[x as usize] = i as u32;
            x <<= 1;
            if x >> m & 1 == 1 {
                x ^= poly;
            }
        }
        if x != 1 {
            return Err(GfError::NotPrimitive(poly));
        }
        for i in order..exp.len() {
            exp[i] = exp[i - order];
        }
        Ok(Field { m, poly, exp, log })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn poly(&self) -> u32 {
        self.poly
    }

    /// Number of elements, 2^m.
    pub fn size(&self) -> usize {
        1 << self.m
    }

    /// Order of the multiplicative group, 2^m - 1.
    pub fn order(&self) -> usize {
        (1 << self.m) - 1
    }

    #[inline]
    pub fn add(&self, a: Gf, b: Gf) -> Gf {
        a ^ b
    }

    #[inline]
    pub fn mul(&self, a: Gf, b: Gf) -> Gf {
        if a == 0 || b == 0 {
            0
        } else {
            self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
        }
    }

    pub fn inv(&self, a: Gf) -> Result<Gf, GfError> {
        if a == 0 {
            return Err(GfError::ZeroInverse);
        }
        Ok(self.exp[self.order() - self.log[a as usize] as usize])
    }

    /// a / b with b != 0. Panics on b == 0.
    #[inline]
    pub fn div(&self, a: Gf, b: Gf) -> Gf {
        assert!(b != 0, "division by zero in GF(2^{})", self.m);
        if a == 0 {
            return 0;
        }
        let o = self.order() as u32;
        self.exp[((self.log[a as usize] + o - self.log[b as usize]) % o) as usize]
    }

    /// a^e for any integer e (negative exponents need a != 0).
    pub fn pow(&self, a: Gf, e: i64) -> Gf {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            assert!(e > 0, "zero to a negative power");
            return 0;
        }
        let o = self.order() as i64;
        let l = (self.log[a as usize] as i64 * e).rem_euclid(o);
        self.exp[l as usize]
    }

    /// alpha^i for the primitive element alpha = x.
    #[inline]
    pub fn alpha_pow(&self, i: usize) -> Gf {
        self.exp[i % self.order()]
    }

    /// Discrete log base alpha. Panics on zero.
    #[inline]
    pub fn log(&self, a: Gf) -> usize {
        assert!(a != 0, "log of zero");
        self.log[a as usize] as usize
    }
}

/// Schoolbook carry-less multiply followed by reduction. Slow; used to
/// cross-check the tables.
pub fn mul_reference(a: u32, b: u32, m: u32, poly: u32) -> u32 {
    let mut prod: u64 = 0;
    for i in 0..m {
        if b >> i & 1 == 1 {
            prod ^= (a as u64) << i;
        }
    }
    for bit in (m..2 * m).rev() {
        if prod >> bit & 1 == 1 {
            prod ^= (poly as u64) << (bit - m);
        }
    }
    prod as u32
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_polys_are_primitive() {
        for m in 1..=16 {
            let f = Field::new(m, None).unwrap();
            assert_eq!(f.size(), 1 << m);
        }
    }

    #[test]
    fn rejects_reducible() {
        // x^4 + 1 = (x+1)^4
        assert_eq!(Field::new(4, Some(0x11)).unwrap_err(), GfError::NotPrimitive(0x11));
        // x^4+x^3+x^2+x+1 is irreducible but has order 5
        assert!(Field::new(4, Some(0x1F)).is_err());
        assert!(Field::new(0, None).is_err());
        assert!(Field::new(17, None).is_err());
        assert!(Field::new(3, Some(0x7)).is_err());
    }

    #[test]
    fn gf8_hand_product() {
        let f = Field::new(3, Some(0b1011)).unwrap();
        // (x^2+x)(x^2+1) = x^4+x^3+x^2+x; x^3=x+1, x^4=x^2+x
        // => x^2+x + x+1 + x^2 + x = x+1
        assert_eq!(f.mul(0b110, 0b101), 0b011);
        assert_eq!(mul_reference(0b110, 0b101, 3, 0b1011), 0b011);
    }

    #[test]
    fn tables_match_reference() {
        for m in [3u32, 5, 7, 8] {
            let f = Field::new(m, None).unwrap();
            for a in 0..f.size() as u32 {
                for b in 0..f.size() as u32 {
                    assert_eq!(f.mul(a as Gf, b as Gf) as u32, mul_reference(a, b, m, f.poly()));
                }
            }
        }
    }

    #[test]
    fn inverse_and_log() {
        let f = Field::new(14, None).unwrap();
        for a in 1..f.size() as Gf {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            assert_eq!(f.alpha_pow(f.log(a)), a);
        }
        assert!(f.inv(0).is_err());
    }
}
