//! The evolving hypergraph: add distinct random hyperedges until the first
//! component with a cycle appears. Exact expectation by the finite forest
//! sum, seeded simulation, and the 2n/(3b(b-1)) asymptotic.
//!
//!     cargo run --release --example first_cycle

use excessum::evolving;
use excessum::parallel::run_stream;
use excessum::ratio::rat_to_string;
use excessum::species::Uniformity;
use num_traits::ToPrimitive;

fn main() {
    let b2 = Uniformity::new(2).unwrap();
    let b3 = Uniformity::new(3).unwrap();

    // one trajectory, spelled out
    let run = evolving::simulate_first_cycle(b3, 9, &mut run_stream(1, 0));
    println!("one b = 3 trajectory on 9 vertices:");
    for (i, e) in run.edges.iter().enumerate() {
        println!("  edge {}: {e:?}", i + 1);
    }
    println!("first cycle closed by edge {}\n", run.first_cycle_at());

    println!("exact expectation vs simulation (100k runs each):");
    for (b, n) in [(b2, 10usize), (b2, 25), (b3, 13)] {
        let exact = evolving::exact_mean(b, n).unwrap();
        let mc = evolving::monte_carlo_mean(b, n, 100_000, 9, 1);
        println!(
            "  b = {}, n = {n}: exact {} = {:.5}, simulated {:.5} +- {:.5}",
            b.b(),
            rat_to_string(&exact),
            exact.to_f64().unwrap(),
            mc.mean(),
            mc.stderr()
        );
    }

    println!("\nexact mean against the asymptotic 2n/(3b(b-1)) at b = 2:");
    for n in [50usize, 100, 200] {
        let exact = evolving::exact_mean(b2, n).unwrap().to_f64().unwrap();
        let asympt = evolving::asympt_mean_evolving(b2, n);
        println!(
            "  n = {n}: exact {exact:.3}, asymptotic {asympt:.3}, ratio {:.4}",
            exact / asympt
        );
    }
    println!("(the ratio drifts toward 1 from above; reported, not asserted)");
}
