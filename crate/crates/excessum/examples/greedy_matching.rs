//! Average size of the matching the greedy algorithm returns: exact oracle,
//! exact series, Monte-Carlo and the asymptotic law, side by side.
//!
//!     cargo run --release --example greedy_matching

use excessum::greedy;
use excessum::hypergraph::collect_connected_with_excess;
use excessum::ratio::{rat_int, rat_to_string, Rat};
use excessum::species::Uniformity;
use num_traits::ToPrimitive;

fn main() {
    let b2 = Uniformity::new(2).unwrap();
    let b3 = Uniformity::new(3).unwrap();

    // small trees: exact recursion averaged over the uniform input
    println!("uniform random trees (b = 2), mean greedy matching size:");
    for n in [2usize, 3, 4, 5, 6] {
        let support = collect_connected_with_excess(b2, n, -1, 24).unwrap();
        let total: Rat = support
            .iter()
            .map(|h| greedy::exact_expectation(h).unwrap())
            .sum();
        let oracle = total / rat_int(support.len() as i64);
        let series = greedy::mean_hypertree_exact(b2, n).unwrap();
        assert_eq!(oracle, series);
        println!("  n = {n}: {}", rat_to_string(&series));
    }

    // larger inputs: seeded Monte-Carlo against the exact series value and
    // the asymptotic (1 - 2^(-b/(b-1))) n / b
    println!("\nlarge hypertrees:");
    for (b, n) in [(b2, 1001usize), (b3, 601)] {
        let exact = greedy::mean_hypertree_exact(b, n).unwrap();
        let mc = greedy::monte_carlo_mean(b, n, 2_000, 5, 1).unwrap();
        let theory = greedy::asympt_mean(b, -1, n);
        println!(
            "  b = {}, n = {n}: series {:.4}, monte-carlo {:.4} +- {:.4}, asymptotic {:.4}",
            b.b(),
            exact.to_f64().unwrap(),
            mc.mean(),
            mc.stderr(),
            theory
        );
    }

    // the leading coefficients behind the excess-ell asymptotic means
    let coeffs = greedy::mean_series_coeffs(b3, 3);
    print!("\nsigma_0..3 at b = 3:");
    for s in &coeffs.sigma {
        print!(" {}", rat_to_string(s));
    }
    println!();
    for ell in [0i64, 1, 2] {
        println!(
            "asymptotic mean over excess-{ell} components at b = 3, n = 601: {:.3}",
            greedy::asympt_mean(b3, ell, 601)
        );
    }
}
