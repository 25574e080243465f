use gcplus::channel::{average_edit_rate, channel_apply, channel_apply_counted, trial_rng, ChannelParams, EditMix};
use gcplus::sim::random_bits;
use proptest::prelude::*;

#[test]
fn mean_edit_count_matches_rate() {
    let ch = ChannelParams::new(0.01, EditMix::Symmetric, 2);
    let n = 216;
    let runs = 100_000u64;
    let mut sum = 0.0;
    let mut sq = 0.0;
    for i in 0..runs {
        let mut rng = trial_rng(5, i);
        let x = random_bits(&mut rng, n);
        let (_, c) = channel_apply_counted(&ch, &x, &mut rng).unwrap();
        let e = (c.deletions + c.insertions + c.substitutions) as f64;
        sum += e;
        sq += e * e;
    }
    let mean = sum / runs as f64;
    let se = ((sq / runs as f64 - mean * mean) / runs as f64).sqrt();
    assert!((mean - 0.01 * n as f64).abs() <= 3.0 * se, "mean {mean}, se {se}");
}

#[test]
fn asymmetric_split() {
    let ch = ChannelParams::new(0.1, EditMix::Asymmetric, 4);
    assert!((ch.p_d - 0.045).abs() < 1e-15 && (ch.p_i - 0.002).abs() < 1e-15 && (ch.p_s - 0.053).abs() < 1e-15);
}

#[test]
fn window_longer_than_input_is_an_error() {
    let ch = ChannelParams::new(0.5, EditMix::Symmetric, 2).with_window(10);
    assert!(channel_apply(&ch, &[0; 9], &mut trial_rng(0, 0)).is_err());
    assert!((average_edit_rate(&ch, 100) - 0.05).abs() < 1e-15);
}

proptest! {
    #[test]
    fn edits_stay_inside_the_window(seed in any::<u64>(), w in 1usize..20) {
        let n = 60;
        let ch = ChannelParams::new(0.9, EditMix::Symmetric, 4).with_window(w);
        let mut rng = trial_rng(seed, 0);
        let x: Vec<u8> = (0..n).map(|i| (i % 4) as u8).collect();
        let (y, c) = channel_apply_counted(&ch, &x, &mut rng).unwrap();
        prop_assert_eq!(y.len() + c.deletions, n + c.insertions);
        prop_assert!(c.deletions + c.insertions + c.substitutions <= w);
        prop_assert!(y.iter().all(|&s| s < 4));
        // the untouched ends survive: some split of y has a prefix and suffix of x
        // covering all but at most w symbols
        let pre = x.iter().zip(&y).take_while(|(a, b)| a == b).count();
        let suf = x.iter().rev().zip(y.iter().rev()).take_while(|(a, b)| a == b).count();
        prop_assert!(pre + suf + w >= n);
    }

    #[test]
    fn same_seed_same_output(seed in any::<u64>(), idx in any::<u64>()) {
        let ch = ChannelParams::new(0.2, EditMix::Asymmetric, 2);
        let x = random_bits(&mut trial_rng(seed, idx), 100);
        let a = channel_apply(&ch, &x, &mut trial_rng(seed, idx)).unwrap();
        let b = channel_apply(&ch, &x, &mut trial_rng(seed, idx)).unwrap();
        prop_assert_eq!(a, b);
    }
}
