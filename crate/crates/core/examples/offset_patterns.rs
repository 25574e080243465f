//! How many offset patterns the general check may try, exactly and by the
//! closed-form bound, and the first few in decoding order.
//!
//! cargo run --example offset_patterns

use gcplus::patterns::{cardinality_general, cardinality_upper_bound, enumerate_burst, for_each_general};

fn main() {
    let (np, c1) = (28, 8);
    println!("N'={np} c1={c1}");
    println!("delta,lambda,walked,exact,bound");
    for delta in [0i64, 1, 2, 3] {
        for lambda in 0..=2 {
            let walked = for_each_general(delta, np, c1, lambda, 7, |_| true);
            println!(
                "{delta},{lambda},{walked},{},{}",
                cardinality_general(delta, np, c1, lambda),
                cardinality_upper_bound(delta, np, c1, lambda)
            );
        }
    }

    println!("\nfirst patterns for delta=-1, lambda=1 on 5 segments:");
    let mut left = 12;
    for_each_general(-1, 5, 3, 1, 7, |p| {
        let mut v = [0i64; 5];
        for &(i, d) in p {
            v[i] = d;
        }
        println!("  {v:?}");
        left -= 1;
        left > 0
    });

    println!("\nburst windows for delta=2, N'=6, c1=3:");
    for (j, p) in enumerate_burst(2, 6, 3) {
        println!("  window {j}..{}: {:?}", j + 2, p.deltas);
    }
}
