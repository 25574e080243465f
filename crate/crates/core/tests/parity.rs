use gcplus::parity::sld::{sld_prefix, SldCodebook};
use gcplus::parity::{buffer_classify, buffer_make, levenshtein, rep_decode, rep_encode, sld_suffix, BufferClass};
use proptest::prelude::*;

fn bits(max: usize) -> impl Strategy<Value = Vec<u8>> {
    proptest::collection::vec(0u8..2, 0..max)
}

proptest! {
    #[test]
    fn suffix_distance_properties(x in bits(12), y in bits(12)) {
        let d = sld_suffix(&x, &y);
        prop_assert_eq!(d, sld_suffix(&y, &x));
        prop_assert!(d <= levenshtein(&x, &y));
        let is_suffix = x.ends_with(&y) || y.ends_with(&x);
        prop_assert_eq!(d == 0, is_suffix);
    }

    #[test]
    fn prefix_distance_is_reversed_suffix(x in bits(10), y in bits(10)) {
        let xr: Vec<u8> = x.iter().rev().copied().collect();
        let yr: Vec<u8> = y.iter().rev().copied().collect();
        prop_assert_eq!(sld_prefix(&x, &y), sld_suffix(&xr, &yr));
    }

    #[test]
    fn repetition_absorbs_one_flip_per_window(msg in bits(12), flips in proptest::collection::vec(0usize..3, 12), prefix in bits(20)) {
        let t = 3;
        let mut tail = rep_encode(&msg, t);
        for (i, f) in flips.iter().take(msg.len()).enumerate() {
            tail[i * t + f] ^= 1;
        }
        let mut y = prefix.clone();
        y.extend(tail);
        prop_assert_eq!(rep_decode(&y, msg.len(), t), msg);
    }
}

#[test]
fn levenshtein_examples() {
    assert_eq!(levenshtein(b"kitten", b"sitting"), 3);
    assert_eq!(levenshtein(b"", b"abc"), 3);
    assert_eq!(sld_suffix(b"abc", b"c"), 0);
}

#[test]
fn too_dense_codebook_fails() {
    assert!(SldCodebook::build(3, 3, 2, 2).is_err());
}

#[test]
fn small_codebook_decodes_two_edits() {
    let cb = SldCodebook::build(10, 2, 5, 2).unwrap();
    cb.verify().unwrap();
    for v in 0..4 {
        let w = cb.encode(v).to_vec();
        for i in 0..10 {
            for j in 0..10 {
                let mut y = vec![1, 0, 1];
                let mut t = w.clone();
                t.remove(i);
                let at = j.min(t.len() - 1);
                t[at] ^= 1;
                y.extend(t);
                assert_eq!(cb.decode(&y).0, v, "word {v}, del {i}, flip {j}");
            }
        }
    }
}

#[test]
fn codebook_text_roundtrip() {
    let cb = SldCodebook::build(8, 1, 3, 4).unwrap();
    let text = cb.to_text();
    assert!(text.starts_with("SLD 8 1 3 4\n"));
    let back = SldCodebook::from_reader(text.as_bytes()).unwrap();
    assert_eq!(back.words, cb.words);
}

#[test]
fn buffer_separates_information_from_parities() {
    let w = 4;
    let info = vec![0u8, 1, 1, 0, 1, 0, 0, 1, 1, 1, 0, 1];
    let par = vec![1u8, 0, 0, 1, 1, 0, 1, 0];
    let mut x = info.clone();
    x.extend(buffer_make(w));
    x.extend(&par);
    let n = x.len();
    let b0 = info.len();
    // any window of <= w deletions is classified on the side it hit
    for start in 0..n - w {
        for len in 1..=w {
            let mut y = x.clone();
            y.drain(start..start + len);
            let class = buffer_classify(&y, n, par.len(), w);
            if start + len <= b0 + w + 1 {
                assert_eq!(class, BufferClass::InfoDirtyParitiesClean, "start {start} len {len}");
                assert!(y.ends_with(&par));
            } else {
                assert_eq!(class, BufferClass::InfoClean, "start {start} len {len}");
                assert!(y.starts_with(&info));
            }
        }
    }
}
