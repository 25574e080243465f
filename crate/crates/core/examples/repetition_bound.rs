//! Bound on the failure of the repetition tail next to a Monte Carlo estimate.
//! The tail follows 56 random bits, and decoding reads windows back from the
//! end of the received word.
//!
//! cargo run --release --example repetition_bound -- [trials]

use gcplus::analysis::prob_e3_repetition;
use gcplus::channel::{channel_apply, trial_rng, ChannelParams, EditMix};
use gcplus::parity::{rep_decode, rep_encode};
use gcplus::sim::random_bits;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let trials: u64 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(200_000);
    let kt = 7;
    println!("t,mix,p_edit,bound,monte_carlo");
    for t in [3, 5] {
        for mix in [EditMix::Symmetric, EditMix::Asymmetric] {
            for p in [0.005, 0.01, 0.015] {
                let ch = ChannelParams::new(p, mix, 2);
                let mut bad = 0;
                for i in 0..trials {
                    let mut rng = trial_rng(1, i);
                    let bits = random_bits(&mut rng, kt);
                    let mut x = random_bits(&mut rng, 56);
                    x.extend(rep_encode(&bits, t));
                    let y = channel_apply(&ch, &x, &mut rng)?;
                    bad += (rep_decode(&y, kt, t) != bits) as u64;
                }
                println!(
                    "{t},{},{p},{:.3e},{:.3e}",
                    mix.name(),
                    prob_e3_repetition(t, kt, &ch),
                    bad as f64 / trials as f64
                );
            }
        }
    }
    Ok(())
}
