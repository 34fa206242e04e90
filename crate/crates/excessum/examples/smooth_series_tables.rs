//! The smooth generating functions H_ell computed by the differential
//! recurrence, in both the Laurent basis and the nonnegative combinatorial
//! basis A_{ell,p}.
//!
//!     cargo run --release --example smooth_series_tables

use excessum::hl::{comb_form, wright_coeffs, HlTable};
use excessum::ratio::rat_to_string;
use excessum::species::Uniformity;

fn main() {
    for bb in [2usize, 3, 4] {
        let b = Uniformity::new(bb).unwrap();
        let mut table = HlTable::new(b);
        println!("b = {bb}");
        for ell in 1..=3i64 {
            let f = table.smooth_poly(ell).unwrap();
            let cf = comb_form(&f, ell, b);
            println!("  excess {ell} (tau exponent r = {}):", cf.r_ell);
            print!("    Laurent in theta:");
            for (deg, c) in f.terms() {
                print!(" [{deg}] {}", rat_to_string(c));
            }
            println!();
            print!("    A coefficients p=0..{}:", 3 * ell);
            for a in &cf.a {
                print!(" {}", rat_to_string(a));
            }
            println!();
        }
        let w = wright_coeffs(4, b);
        print!("  leading constants lambda_0..4:");
        for l in &w.lambda {
            print!(" {}", rat_to_string(l));
        }
        println!("\n");
    }
}
