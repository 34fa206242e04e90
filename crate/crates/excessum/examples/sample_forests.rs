//! Uniform random generation of rooted hypertree forests through the codec,
//! with an empirical frequency check against the exact counts.
//!
//!     cargo run --release --example sample_forests

use excessum::codec::sample_forest;
use excessum::counts::count_forests;
use excessum::parallel::run_stream;
use excessum::species::Uniformity;
use std::collections::BTreeMap;

fn main() {
    let b2 = Uniformity::new(2).unwrap();

    // 64 rooted trees on 4 vertices; sample and compare against 1/64
    let mut freq: BTreeMap<String, u64> = BTreeMap::new();
    let samples = 64_000u64;
    let mut rng = run_stream(7, 0);
    for _ in 0..samples {
        let (forest, roots) = sample_forest(b2, 3, 0, &mut rng);
        *freq.entry(format!("{roots:?}{forest:?}")).or_insert(0) += 1;
    }
    let support = count_forests(b2, 3, 0);
    println!(
        "rooted trees on 4 vertices: support {} (expected {support}), {} samples",
        freq.len(),
        samples
    );
    let expected = samples as f64 / 64.0;
    let chi2: f64 = freq
        .values()
        .map(|&c| {
            let d = c as f64 - expected;
            d * d / expected
        })
        .sum();
    println!("chi-square statistic {chi2:.1} on 63 degrees of freedom");
    let (min, max) = (freq.values().min().unwrap(), freq.values().max().unwrap());
    println!("cell counts range {min}..={max} around the expected {expected}\n");

    // a larger stratum: forests of 3 rooted 3-uniform hypertrees
    let b3 = Uniformity::new(3).unwrap();
    let (forest, roots) = sample_forest(b3, 4, 2, &mut run_stream(42, 0));
    println!("one uniform b=3 forest with s=4, k=2 (n = 11), roots {roots:?}:");
    for e in forest.edges() {
        println!("  {e:?}");
    }
}
