//! Stores a file in simulated DNA: outer RS across oligos, code C inside
//! each oligo, one noisy read per oligo, then recovery.
//!
//! cargo run --release --example store_file -- [path] [p_edit]

use std::sync::Arc;

use gcplus::channel::{ChannelParams, EditMix};
use gcplus::pipeline::{pipeline_decode, pipeline_encode, transmit, units_to_nt, InnerCode, PipelineConfig};
use gcplus::presets;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let bytes = match args.next() {
        Some(p) => std::fs::read(p)?,
        None => include_bytes!("store_file.rs").to_vec(),
    };
    let p: f64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(0.01);

    let fragment_bits = 168;
    let mut bits: Vec<u8> = bytes.iter().flat_map(|&b| (0..8).rev().map(move |i| (b >> i) & 1)).collect();
    let num_fragments = bits.len().div_ceil(fragment_bits);
    bits.resize(num_fragments * fragment_bits, 0);
    let cfg = PipelineConfig {
        num_fragments,
        fragment_bits,
        inner: InnerCode::Gc(Arc::new(presets::dna_inner('C')?)),
        outer_len: num_fragments + num_fragments / 5 + 2,
        channel: ChannelParams::new(p, EditMix::Asymmetric, 4),
    };
    let oligos = pipeline_encode(&cfg, &bits)?;
    println!("{} bytes -> {} oligos of {} nt, density {:.3} bits/nt", bytes.len(), oligos.len(), oligos[0].len(), cfg.density());
    println!("first oligo {}", units_to_nt(&oligos[0]));

    let reads = transmit(&cfg, &oligos, 7, 0);
    let (res, out) = pipeline_decode(&cfg, &reads)?;
    println!(
        "erased {} oligos, miscorrected {}, outer corrected {} symbols",
        res.erased_oligos, res.miscorrected_oligos, res.residual_symbol_errors
    );
    match out {
        Some(data) if data == bits => println!("recovered intact"),
        Some(_) => println!("recovered with errors"),
        None => println!("outer decoding failed"),
    }
    Ok(())
}
