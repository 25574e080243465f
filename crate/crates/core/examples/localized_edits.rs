//! Buffer-scheme codes under edits confined to a window of w symbols, with
//! nearly every symbol in the window edited.
//!
//! cargo run --release --example localized_edits -- [trials]

use gcplus::channel::{ChannelParams, EditMix};
use gcplus::presets;
use gcplus::sim::simulate;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let trials: u64 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(100_000);
    println!("w,n,rate,fer,failures,miscorrections,mean_guesses");
    for w in [4, 8, 12, 15, 22] {
        let code = presets::binary_buffer(w)?;
        let ch = ChannelParams::new(0.99, EditMix::Symmetric, 2).with_window(w);
        let s = simulate(&code, &ch, trials, 2024);
        println!(
            "{w},{},{:.3},{:.3e},{},{},{:.1}",
            code.len_bits(),
            code.rate(),
            s.fer(),
            s.failures,
            s.miscorrections,
            s.mean_guesses()
        );
    }
    Ok(())
}
