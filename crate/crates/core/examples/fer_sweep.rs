//! Frame error rate of the repetition-tail code (k=140, ell=7, c1=8, c2=1)
//! under i.i.d. edits, next to the uncoded rate.
//!
//! cargo run --release --example fer_sweep -- [trials]

use gcplus::channel::{ChannelParams, EditMix};
use gcplus::code::{CheckStrategy, GcCode, GcParams, LambdaMap, TailSync};
use gcplus::parity::ParityScheme;
use gcplus::sim::simulate;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let trials: u64 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(10_000);
    let code = GcCode::new(GcParams {
        k: 140,
        ell: 7,
        c1: 8,
        c2: 1,
        lambda: LambdaMap::small_offsets(),
        scheme: ParityScheme::Repetition { t: 3 },
        check: CheckStrategy::General,
        alphabet: 2,
        tail: TailSync::Aligned,
    })?;
    println!("n={} rate={:.3}", code.len(), code.rate());
    println!("p_edit,fer,failures,miscorrections,mean_guesses,uncoded,us_per_trial");
    for p in [0.005, 0.01, 0.015] {
        let ch = ChannelParams::new(p, EditMix::Symmetric, 2);
        let s = simulate(&code, &ch, trials, 2024);
        let uncoded = 1.0 - (1.0 - p).powi(code.len() as i32);
        println!(
            "{p},{:.6},{},{},{:.2},{:.4},{:.1}",
            s.fer(),
            s.failures,
            s.miscorrections,
            s.mean_guesses(),
            uncoded,
            1e6 * s.seconds / trials as f64
        );
    }
    Ok(())
}
