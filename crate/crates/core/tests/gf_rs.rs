use std::sync::Arc;

use gcplus::gf::{mul_reference, Field, DEFAULT_POLYS};
use gcplus::rs::RsCode;
use proptest::prelude::*;

fn field(m: u32) -> Arc<Field> {
    Arc::new(Field::new(m, None).unwrap())
}

proptest! {
    #[test]
    fn mul_matches_shift_and_add(m in 2u32..=14, a in any::<u16>(), b in any::<u16>()) {
        let f = field(m);
        let mask = (1u16 << m) - 1;
        let (a, b) = (a & mask, b & mask);
        prop_assert_eq!(f.mul(a, b) as u32, mul_reference(a as u32, b as u32, m, DEFAULT_POLYS[m as usize]));
    }

    #[test]
    fn field_axioms(m in 2u32..=10, a in any::<u16>(), b in any::<u16>(), c in any::<u16>()) {
        let f = field(m);
        let mask = (1u16 << m) - 1;
        let (a, b, c) = (a & mask, b & mask, c & mask);
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            prop_assert_eq!(f.div(f.mul(a, b), a), b);
        }
    }

    #[test]
    fn rs_corrects_within_radius(
        msg in proptest::collection::vec(0u16..128, 20),
        seed in any::<u64>(),
    ) {
        let rs = RsCode::new(field(7), 29, 20).unwrap();
        let cw = rs.encode(&msg).unwrap();
        prop_assert_eq!(&cw[..20], &msg[..]);
        // spread e erasures and s errors from the seed
        let mut word = cw.clone();
        let s = (seed % 5) as usize;
        let e = ((seed >> 8) % (10 - 2 * s as u64)) as usize;
        let mut pos: Vec<usize> = (0..29).collect();
        let mut x = seed;
        for i in (1..29).rev() {
            x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            pos.swap(i, (x >> 33) as usize % (i + 1));
        }
        for &p in &pos[e..e + s] {
            word[p] ^= 1 + (p as u16 % 127);
        }
        for &p in &pos[..e] {
            word[p] = 0;
        }
        prop_assert_eq!(rs.decode(&word, &pos[..e]).unwrap(), msg);
    }
}

#[test]
fn rs_rejects_overlong_code() {
    assert!(RsCode::new(field(4), 16, 8).is_err());
    assert!(RsCode::new(field(4), 15, 8).is_ok());
}

#[test]
fn punctured_decode_uses_remaining_parities() {
    let rs = RsCode::new(field(7), 29, 20).unwrap();
    let msg: Vec<u16> = (0..20).map(|i| (i * 37 % 128) as u16).collect();
    let mut word = rs.encode(&msg).unwrap();
    word[28] = 99;
    word[3] ^= 5;
    word[11] ^= 77;
    word[15] ^= 1;
    word[19] ^= 3;
    assert_eq!(rs.decode_punctured(&word, &[], 1).unwrap(), msg);
}
