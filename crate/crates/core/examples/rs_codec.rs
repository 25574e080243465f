//! Systematic Reed-Solomon over GF(2^7): encode, damage, decode with errors
//! and erasures, and decode with the last parity punctured.
//!
//! cargo run --example rs_codec

use std::sync::Arc;

use gcplus::gf::Field;
use gcplus::rs::RsCode;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = Arc::new(Field::new(7, None)?);
    println!("GF(2^{}) poly {:#b}, alpha^7 = {}", f.m(), f.poly(), f.alpha_pow(7));
    let rs = RsCode::new(f, 29, 20)?;
    let msg: Vec<u16> = (0..20).map(|i| (i * 29 + 3) % 128).collect();
    let cw = rs.encode(&msg)?;
    println!("parities {:?}", &cw[20..]);

    // 3 errors and 3 erasures: 3 + 2*3 = 9 = N - K
    let mut word = cw.clone();
    for p in [2, 9, 25] {
        word[p] ^= 0x55;
    }
    let erasures = [0, 14, 27];
    for &p in &erasures {
        word[p] = 0;
    }
    println!("e=3 s=3 -> {}", if rs.decode(&word, &erasures)? == msg { "ok" } else { "wrong" });

    // one more error is beyond the radius
    word[5] ^= 1;
    println!("e=3 s=4 -> {:?}", rs.decode(&word, &erasures).map(|m| m == msg));

    // last parity unknown: budget drops to 8
    let mut word = cw.clone();
    word[28] = 0;
    for p in [1, 4, 7, 10] {
        word[p] ^= 0x0f;
    }
    println!("punctured, s=4 -> {}", if rs.decode_punctured(&word, &[], 1)? == msg { "ok" } else { "wrong" });
    Ok(())
}
