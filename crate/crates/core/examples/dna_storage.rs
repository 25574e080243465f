//! Best information density of each inner code after the outer grid search,
//! at desk scale (10^3 fragments, 3 datasets) or with `--full`.
//!
//! cargo run --release --example dna_storage -- [p_edit ...] [--full]

use std::sync::Arc;
use std::time::Instant;

use gcplus::channel::{ChannelParams, EditMix};
use gcplus::pipeline::{grid_search_outer_rate, GridSearch, InnerCode};
use gcplus::presets;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let g = if args.iter().any(|a| a == "--full") { GridSearch::full() } else { GridSearch::desk() };
    let mut ps: Vec<f64> = args.iter().filter_map(|a| a.parse().ok()).collect();
    if ps.is_empty() {
        ps = vec![0.005, 0.010];
    }
    let mut inners = vec![("uncoded".to_string(), InnerCode::Uncoded)];
    for l in 'A'..='F' {
        inners.push((format!("code {l}"), InnerCode::Gc(Arc::new(presets::dna_inner(l)?))));
    }
    println!("p_edit,inner,r_in,outer_len,r_out,density,seconds");
    for &p in &ps {
        let ch = ChannelParams::new(p, EditMix::Asymmetric, 4);
        for (name, inner) in &inners {
            let t0 = Instant::now();
            match grid_search_outer_rate(inner, &ch, &g) {
                Ok(pt) => println!(
                    "{p},{name},{:.4},{},{:.4},{:.4},{:.1}",
                    pt.inner_rate,
                    pt.outer_len,
                    pt.outer_rate,
                    pt.density,
                    t0.elapsed().as_secs_f64()
                ),
                Err(e) => println!("{p},{name},,,,{e},{:.1}", t0.elapsed().as_secs_f64()),
            }
        }
    }
    Ok(())
}
