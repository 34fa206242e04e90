//! Exact counts of connected b-uniform hypergraphs by excess, checked
//! against the brute-force enumerator on small vertex sets.
//!
//!     cargo run --release --example count_components

use excessum::counts::{count_components_with, count_hypercycles_closed, count_rooted_hypertrees};
use excessum::hl::HlTable;
use excessum::hypergraph::connected_counts_by_excess;
use excessum::species::Uniformity;

fn main() {
    for bb in [2usize, 3] {
        let b = Uniformity::new(bb).unwrap();
        let mut table = HlTable::new(b);
        println!("b = {bb}: connected hypergraphs on n vertices, by excess");
        for n in bb..=6 {
            let oracle = connected_counts_by_excess(b, n, 24).unwrap();
            print!("  n = {n}:");
            for (ell, brute) in &oracle {
                if *ell > 6 {
                    print!(" ...");
                    break;
                }
                let exact = count_components_with(&mut table, *ell, n).unwrap();
                assert_eq!(exact, (*brute).into(), "mismatch at excess {ell}");
                print!(" excess {ell}: {exact}");
            }
            println!();
        }
    }

    println!("\nrooted 3-uniform hypertrees by edge count:");
    for s in 0..=6 {
        let c = count_rooted_hypertrees(Uniformity::new(3).unwrap(), s);
        println!("  s = {s}: {c}");
    }

    // the closed hypercycle sum: the uncorrected version overcounts each
    // cycle length j by a factor j; the corrected one matches the series
    println!("\nhypercycles, closed sum vs coefficient extraction (b = 3):");
    let b3 = Uniformity::new(3).unwrap();
    let mut table = HlTable::new(b3);
    for s in 2..=5 {
        let closed = count_hypercycles_closed(b3, s).unwrap();
        let exact = count_components_with(&mut table, 0, 2 * s).unwrap();
        println!(
            "  s = {s}: exact {exact}, corrected sum {}, uncorrected sum {}",
            closed.corrected, closed.uncorrected
        );
    }
}
