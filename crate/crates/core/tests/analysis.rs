use gcplus::analysis::{
    binomial, joint_pmf_z_delta, offset_pmf, prob_e1, prob_e2, prob_e3_repetition, prob_e3_sld,
    total_error_estimate,
};
use gcplus::channel::{channel_apply_counted, trial_rng, ChannelParams, EditMix};
use gcplus::code::LambdaMap;
use gcplus::presets;
use proptest::prelude::*;
use rand::Rng;

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1e-300)
}

#[test]
fn sld_tail_is_a_binomial_tail() {
    let p: f64 = 0.01;
    let head: f64 = (0..=2).map(|j| binomial(20, j) * p.powi(j as i32) * (1.0 - p).powi(20 - j as i32)).sum();
    assert!(close(prob_e3_sld(20, 5, p), 1.0 - head, 1e-12));
}

#[test]
fn zero_channel_gives_zero_error() {
    let ch = ChannelParams::new(0.0, EditMix::Symmetric, 2);
    for name in ["rep3", "rep5", "sld20", "dna"] {
        let r = total_error_estimate(&presets::by_name(name).unwrap(), &ch).unwrap();
        assert_eq!((r.p_e1, r.p_e2, r.p_e3, r.total), (0.0, 0.0, 0.0, 0.0), "{name}");
    }
}

#[test]
fn buffer_code_has_no_iid_estimate() {
    let ch = ChannelParams::new(0.01, EditMix::Symmetric, 2);
    assert!(total_error_estimate(&presets::binary_buffer(8).unwrap(), &ch).is_err());
}

#[test]
fn e1_weighs_offsets_as_erasures() {
    // symmetric 0.3: p_d = p_i = p_s = 0.1
    let ch = ChannelParams::new(0.3, EditMix::Symmetric, 2);
    assert!(close(prob_e1(1, 1, 0, &ch), 0.3, 1e-12));
    // a substituted one-symbol segment needs two parities
    assert!(close(prob_e1(1, 1, 1, &ch), 0.1, 1e-12));
    assert!(prob_e1(1, 1, 2, &ch).abs() < 1e-15);
    // two segments of two symbols, one parity: only a single offset segment
    // next to a clean one is recoverable
    let clean = 0.7f64 * 0.7;
    let offset = 1.0 - (0.8f64 * 0.8 + 2.0 * 0.1 * 0.1);
    assert!(close(prob_e1(2, 2, 1, &ch), 1.0 - clean * clean - 2.0 * offset * clean, 1e-12));
}

#[test]
fn e2_vanishes_without_indels() {
    let ch = ChannelParams { w: None, p_d: 0.0, p_i: 0.0, p_s: 0.05, alphabet: 2 };
    assert!(prob_e2(7, 28, &ch, &LambdaMap::constant(0)).abs() < 1e-15);
}

#[test]
fn offset_pmf_matches_sampled_segments() {
    let ch = ChannelParams::new(0.2, EditMix::Asymmetric, 2);
    let pmf = offset_pmf(7, ch.p_d, ch.p_i);
    let n = 200_000u64;
    let mut hist = [0u64; 15];
    for i in 0..n {
        let mut rng = trial_rng(11, i);
        let x: Vec<u8> = (0..7).map(|_| rng.gen_range(0..2)).collect();
        let (_, c) = channel_apply_counted(&ch, &x, &mut rng).unwrap();
        hist[(c.insertions as i64 - c.deletions as i64 + 7) as usize] += 1;
    }
    for d in -7i64..=7 {
        let p = pmf.get(d);
        let se = (p * (1.0 - p) / n as f64).sqrt();
        let got = hist[(d + 7) as usize] as f64 / n as f64;
        assert!((got - p).abs() <= 4.0 * se + 1e-9, "d={d}: {got} vs {p}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn joint_pmf_normalizes_and_marginalizes(ell in 1usize..=5, n in 1usize..=8, p in 0.0f64..0.5, d in 0.0f64..1.0) {
        let ch = ChannelParams::new(p, EditMix::Custom { d, i: 1.0 - d, s: 0.0 }, 2);
        let j = joint_pmf_z_delta(ell, n, &ch);
        prop_assert!((j.total() - 1.0).abs() < 1e-12);
        // D marginal equals the n-fold convolution of the segment PMF
        let seg = offset_pmf(ell, ch.p_d, ch.p_i).probs;
        let mut conv = vec![1.0];
        for _ in 0..n {
            conv = gcplus::analysis::convolve(&conv, &seg);
        }
        let span = (ell * n) as i64;
        for delta in -span..=span {
            let marg: f64 = (0..=ell * n).map(|z| j.get(z, delta)).sum();
            prop_assert!((marg - conv[(delta + span) as usize]).abs() < 1e-12);
        }
    }

    #[test]
    fn estimates_grow_with_the_edit_rate(p in 0.001f64..0.02) {
        let c = presets::binary_repetition(3).unwrap();
        let lo = total_error_estimate(&c, &ChannelParams::new(p, EditMix::Symmetric, 2)).unwrap();
        let hi = total_error_estimate(&c, &ChannelParams::new(p * 1.5, EditMix::Symmetric, 2)).unwrap();
        prop_assert!(hi.total > lo.total);
        prop_assert!(lo.total <= lo.p_e1 + lo.p_e2 + lo.p_e3 + 1e-15);
    }
}

#[test]
fn repetition_bound_grows_with_indels() {
    let sub = ChannelParams { w: None, p_d: 0.0, p_i: 0.0, p_s: 0.01, alphabet: 2 };
    let mixed = ChannelParams { w: None, p_d: 0.005, p_i: 0.005, p_s: 0.01, alphabet: 2 };
    assert!(prob_e3_repetition(3, 7, &mixed) > prob_e3_repetition(3, 7, &sub));
}
