//! Closed-form asymptotic estimators next to the exact counts they
//! approximate. Rooted hypertrees converge at O(1/s); the hypercycle and
//! complex-component estimators converge at O(1/sqrt(s)).
//!
//!     cargo run --release --example asymptotic_ratios

use excessum::asympt;
use excessum::counts::{count_components, count_rooted_hypertrees};
use excessum::ratio::rat_big;
use excessum::species::Uniformity;

fn main() {
    let b2 = Uniformity::new(2).unwrap();
    let b3 = Uniformity::new(3).unwrap();

    println!("rooted hypertrees, exact/estimate:");
    for bb in [b2, b3] {
        for s in [25usize, 50, 100, 200] {
            let exact = rat_big(count_rooted_hypertrees(bb, s));
            let ratio = asympt::rooted_hypertrees(bb, s).ratio_to(&exact);
            println!("  b = {}, s = {s}: {ratio:.5}", bb.b());
        }
    }

    println!("\nunicyclic graphs (b = 2), exact/estimate:");
    for s in [50usize, 100, 200, 400] {
        let exact = rat_big(count_components(b2, 0, s).unwrap());
        let ratio = asympt::hypercycles(b2, s).ratio_to(&exact);
        println!("  s = {s}: {ratio:.4}  (deviation shrinks like 1/sqrt(s))");
    }

    println!("\nexcess-1 components (b = 3), exact/estimate:");
    for s in [25usize, 50, 100] {
        let exact = rat_big(count_components(b3, 1, 2 * s - 1).unwrap());
        let ratio = asympt::components(b3, 1, s).ratio_to(&exact);
        println!("  s = {s}: {ratio:.4}");
    }

    println!("\nthree-term Stirling expansion for [z^(2s+1)] T at b = 3:");
    for s in [20usize, 50, 100] {
        let exact = asympt::rooted_coeff_b3_exact(s);
        let ratio = asympt::rooted_coeff_b3_stirling(s).ratio_to(&exact);
        println!("  s = {s}: {ratio:.9}");
    }
}
