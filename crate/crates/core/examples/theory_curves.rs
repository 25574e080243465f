//! Analytic error estimates for the binary codes with repetition and
//! suffix-distance tails, and for the DNA code, over P_edit = 0.001..0.015.
//!
//! cargo run --release --example theory_curves

use std::sync::Arc;

use gcplus::analysis::total_error_estimate;
use gcplus::channel::{ChannelParams, EditMix};
use gcplus::code::{CheckStrategy, GcCode, GcParams, LambdaMap, TailSync};
use gcplus::parity::{sld, ParityScheme};

fn code(k: usize, ell: usize, scheme: ParityScheme, alphabet: usize) -> GcCode {
    GcCode::new(GcParams {
        k,
        ell,
        c1: 8,
        c2: 1,
        lambda: LambdaMap::small_offsets(),
        scheme,
        check: CheckStrategy::General,
        alphabet,
        tail: TailSync::Aligned,
    })
    .expect("valid parameters")
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let configs = [
        ("rep3", code(140, 7, ParityScheme::Repetition { t: 3 }, 2), 2),
        ("rep5", code(140, 7, ParityScheme::Repetition { t: 5 }, 2), 2),
        ("sld20", code(140, 7, ParityScheme::Sld(Arc::new(sld::cached(20, 7, 5, 2)?)), 2), 2),
        ("dna", code(168, 8, ParityScheme::Sld(Arc::new(sld::cached(12, 4, 5, 4)?)), 4), 4),
    ];
    println!("code,mix,p_edit,p_e1,p_e2,p_e3,total");
    for (name, c, a) in &configs {
        for mix in [EditMix::Symmetric, EditMix::Asymmetric] {
            for i in 1..=15 {
                let p = i as f64 * 1e-3;
                let r = total_error_estimate(c, &ChannelParams::new(p, mix, *a))?;
                println!("{name},{},{p},{:.6e},{:.6e},{:.6e},{:.6e}", mix.name(), r.p_e1, r.p_e2, r.p_e3, r.total);
            }
        }
    }
    Ok(())
}
