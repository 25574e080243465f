//! Builds the two suffix-distance codebooks used by the binary and the DNA
//! configurations, verifies them and shows a decode of a damaged tail.
//!
//! cargo run --release --example sld_codebook

use std::time::Instant;

use gcplus::parity::sld::{render, SldCodebook};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (n, k, d, a) in [(20, 7, 5, 2), (12, 4, 5, 4)] {
        let t0 = Instant::now();
        let cb = SldCodebook::build(n, k, d, a)?;
        let built = t0.elapsed();
        cb.verify()?;
        println!(
            "({n},{k}) d_min={d} alphabet={a}: {} words, built in {:.2?}, verified in {:.2?}",
            cb.words.len(),
            built,
            t0.elapsed() - built
        );
        let value = cb.words.len() / 3;
        let mut tail = cb.encode(value).to_vec();
        // one deletion and one substitution, plus a foreign leading symbol
        tail.remove(n / 2);
        tail[n - 3] = (tail[n - 3] + 1) % a as u8;
        tail.insert(0, 1);
        let (got, dist) = cb.decode(&tail);
        println!("  sent {} -> {} decoded {got} at distance {dist}", value, render(&tail, a));
    }
    Ok(())
}
