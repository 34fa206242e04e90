//! Exact two-sided bounds around the component counts, built from the
//! leading coefficients of the smooth series. All three columns are exact
//! big rationals; no floats are involved.
//!
//!     cargo run --release --example sandwich_bounds

use excessum::asympt::wright_bounds;
use excessum::counts::count_components;
use excessum::ratio::rat_big;
use excessum::species::Uniformity;

fn main() {
    for (bb, ell) in [(2usize, 1usize), (2, 2), (3, 1), (3, 2)] {
        let b = Uniformity::new(bb).unwrap();
        println!("b = {bb}, excess {ell}:");
        for n in bb..=14 {
            if (n + ell) % (bb - 1) != 0 {
                continue;
            }
            let exact = rat_big(count_components(b, ell as i64, n).unwrap());
            let s = wright_bounds(b, ell, n).unwrap();
            assert!(s.lower <= exact && exact <= s.upper);
            println!("  n = {n:2}: {} <= {} <= {}", s.lower, exact, s.upper);
        }
        println!();
    }
    // the lower bound turns positive once sqrt(s) beats C/B
    let b2 = Uniformity::new(2).unwrap();
    let s = wright_bounds(b2, 1, 120).unwrap();
    let exact = rat_big(count_components(b2, 1, 120).unwrap());
    println!(
        "b = 2, excess 1, n = 120: bounds bracket the exact count within a factor\n  {} <= {} <= {}",
        s.lower, exact, s.upper
    );
}
