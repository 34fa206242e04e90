//! The evolving hypergraph: distinct random hyperedges arrive one at a time
//! until the first component of excess >= 0 appears. The waiting time has an
//! exact finite-sum expectation through forest counts,
//!   E_n = sum_{m >= 0} f_{m,n} / C(N, m),  N = C(n, b),
//! equivalently 1 + sum_{m >= 1} (the m = 0 term is 1); both are computed
//! and compared. The asymptotic mean is 2n/(3b(b-1)).

use crate::error::{Error, Result};
use crate::hypergraph::DisjointSet;
use crate::parallel::{monte_carlo, McSummary};
use crate::ratio::{binomial, factorial, rat_big, Rat};
use crate::species::Uniformity;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;

/// One trajectory: the edges in arrival order; the last one closes the
/// first cycle.
pub struct EvolvingRun {
    pub edges: Vec<Vec<usize>>,
}

impl EvolvingRun {
    /// Number of hyperedges at the moment the first cycle appears.
    pub fn first_cycle_at(&self) -> usize {
        self.edges.len()
    }
}

/// Add uniformly random *new* hyperedges until one meets an existing
/// component in at least two vertices (equivalently, a component of excess
/// >= 0 appears). Needs n > b so a cycle is reachable.
pub fn simulate_first_cycle<R: Rng>(b: Uniformity, n: usize, rng: &mut R) -> EvolvingRun {
    assert!(n > b.b(), "a cycle needs n > b");
    let mut dsu = DisjointSet::new(n + 1); // 1-based labels
    let mut present: std::collections::HashSet<Vec<usize>> = Default::default();
    let mut edges = Vec::new();
    loop {
        // rejection sampling over the C(n,b) possible edges; "new" means
        // repeats are redrawn
        let edge: Vec<usize> = loop {
            let mut picks = rand::seq::index::sample(rng, n, b.b())
                .into_iter()
                .map(|i| i + 1)
                .collect::<Vec<usize>>();
            picks.sort_unstable();
            if !present.contains(&picks) {
                break picks;
            }
        };
        present.insert(edge.clone());
        edges.push(edge.clone());
        let mut roots: Vec<usize> = edge.iter().map(|&v| dsu.find(v)).collect();
        roots.sort_unstable();
        roots.dedup();
        let creates_cycle = roots.len() < b.b();
        for w in edge.windows(2) {
            dsu.union(w[0], w[1]);
        }
        if creates_cycle {
            return EvolvingRun { edges };
        }
    }
}

/// Hypertree-forest counts f_{m,n} on n labeled vertices by edge count m,
/// anchored at the component of vertex 1: a hypertree with i edges there
/// uses i(b-1)+1 labels.
pub fn forest_edge_counts(b: Uniformity, n: usize) -> Vec<BigInt> {
    let bm1 = b.b() - 1;
    let m_max = if n == 0 { 0 } else { (n - 1) / bm1 };
    // unrooted hypertree counts by edge count
    let trees: Vec<BigInt> = (0..=m_max)
        .map(|i| {
            let ni = i * bm1 + 1;
            let rooted = crate::counts::count_rooted_hypertrees(b, i);
            let (q, r) = num_integer::Integer::div_rem(&rooted, &BigInt::from(ni));
            assert!(r.is_zero());
            q
        })
        .collect();
    // f[m][v]: forests on v labeled vertices with m edges
    let mut f = vec![vec![BigInt::zero(); n + 1]; m_max + 1];
    f[0][0] = BigInt::one();
    for v in 1..=n {
        for m in 0..=m_max {
            let mut acc = BigInt::zero();
            for i in 0..=m {
                let ni = i * bm1 + 1;
                if ni > v {
                    break;
                }
                let ways = binomial(v - 1, ni - 1) * &trees[i] * &f[m - i][v - ni];
                acc += ways;
            }
            f[m][v] = acc;
        }
    }
    (0..=m_max).map(|m| f[m][n].clone()).collect()
}

/// Exact expectation of the first-cycle time. Computes the sum both with
/// the m = 0 term folded in and with it split off as a standalone 1, and
/// asserts the two agree.
pub fn exact_mean(b: Uniformity, n: usize) -> Result<Rat> {
    if n < b.b() {
        return Err(Error::IncompatibleSize(format!(
            "need at least b = {} vertices, got {n}",
            b.b()
        )));
    }
    let counts = forest_edge_counts(b, n);
    assert!(counts[0].is_one(), "f_{{0,n}} must be 1");
    let big_n = binomial(n, b.b());
    let term = |m: usize| rat_big(counts[m].clone()) / rat_big(binomial_big(&big_n, m));
    let full: Rat = (0..counts.len()).map(term).sum();
    let shifted: Rat = Rat::one() + (1..counts.len()).map(term).sum::<Rat>();
    assert_eq!(full, shifted, "the two sum forms must coincide");
    Ok(full)
}

// C(N, m) for big N
fn binomial_big(n: &BigInt, m: usize) -> BigInt {
    let mut numer = BigInt::one();
    for i in 0..m {
        numer *= n - BigInt::from(i);
    }
    let (q, r) = num_integer::Integer::div_rem(&numer, &factorial(m));
    assert!(r.is_zero());
    q
}

/// Leading-order mean waiting time: 2n/(3b(b-1)).
pub fn asympt_mean_evolving(b: Uniformity, n: usize) -> f64 {
    2.0 * n as f64 / (3.0 * b.b() as f64 * (b.b() as f64 - 1.0))
}

/// Seeded Monte-Carlo estimate of the first-cycle time.
pub fn monte_carlo_mean(b: Uniformity, n: usize, runs: u64, seed: u64, workers: usize) -> McSummary {
    monte_carlo(runs, seed, workers, |rng| {
        simulate_first_cycle(b, n, rng).first_cycle_at() as u64
    })
}

/// Total forest count from the series side, for cross-checks:
/// n! [z^n] exp(H_{-1} o T).
pub fn forest_total_by_series(b: Uniformity, n: usize) -> BigInt {
    use crate::species::{smooth_catalog, smooth_series_in_t, rooted_series};
    let g = smooth_catalog(-1, b).expect("catalog");
    let ht = smooth_series_in_t(&g, b, n);
    let composed = ht
        .compose(&rooted_series(b, n.max(1)))
        .expect("T(0)=0")
        .exp()
        .expect("H(0)=0");
    let coeff = composed.coeff(n) * rat_big(factorial(n));
    assert!(coeff.denom().is_one());
    coeff.numer().clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{forest_counts_by_edges, DEFAULT_EDGE_CAP};
    use crate::parallel::run_stream;
    use crate::ratio::{rat, rat_to_string};

    fn b(x: usize) -> Uniformity {
        Uniformity::new(x).unwrap()
    }

    #[test]
    fn triangle_always_takes_three() {
        let mut rng = run_stream(3, 0);
        for _ in 0..50 {
            let run = simulate_first_cycle(b(2), 3, &mut rng);
            assert_eq!(run.first_cycle_at(), 3);
        }
    }

    #[test]
    fn two_triples_on_four_vertices() {
        // any two distinct triples on 4 vertices share 2 vertices
        let mut rng = run_stream(4, 0);
        for _ in 0..50 {
            let run = simulate_first_cycle(b(3), 4, &mut rng);
            assert_eq!(run.first_cycle_at(), 2);
        }
    }

    #[test]
    fn prefixes_are_acyclic() {
        let mut rng = run_stream(9, 0);
        for _ in 0..100 {
            let run = simulate_first_cycle(b(2), 12, &mut rng);
            // all edges but the last form a forest: verified by an
            // independent excess check per component
            let mut h = crate::hypergraph::Hypergraph::empty(2, 12);
            for e in &run.edges[..run.edges.len() - 1] {
                h.insert_edge(e).unwrap();
            }
            assert!(h.component_excesses().values().all(|&x| x == -1));
            let mut full = h.clone();
            full.insert_edge(run.edges.last().unwrap()).unwrap();
            assert!(full.component_excesses().values().any(|&x| x >= 0));
        }
    }

    #[test]
    fn forest_counts_small() {
        assert_eq!(
            forest_edge_counts(b(2), 4),
            vec![
                BigInt::from(1),
                BigInt::from(6),
                BigInt::from(15),
                BigInt::from(16)
            ]
        );
        assert_eq!(
            forest_edge_counts(b(3), 3),
            vec![BigInt::from(1), BigInt::from(1)]
        );
    }

    #[test]
    fn forest_counts_match_brute_force() {
        for (bb, n) in [(2usize, 5usize), (2, 6), (3, 5), (3, 6)] {
            let oracle = forest_counts_by_edges(b(bb), n, DEFAULT_EDGE_CAP).unwrap();
            let table = forest_edge_counts(b(bb), n);
            for (m, count) in table.iter().enumerate() {
                let want = oracle.get(&m).copied().unwrap_or(0);
                assert_eq!(count, &BigInt::from(want), "b={bb} n={n} m={m}");
            }
        }
    }

    #[test]
    fn forest_totals_match_series() {
        for (bb, n) in [(2usize, 6usize), (3, 7), (4, 9)] {
            let total: BigInt = forest_edge_counts(b(bb), n).iter().sum();
            assert_eq!(total, forest_total_by_series(b(bb), n), "b={bb} n={n}");
        }
    }

    #[test]
    fn exact_mean_values() {
        assert_eq!(exact_mean(b(2), 3).unwrap(), rat(3, 1));
        assert_eq!(rat_to_string(&exact_mean(b(2), 4).unwrap()), "19/5");
        assert_eq!(exact_mean(b(3), 4).unwrap(), rat(2, 1));
    }

    #[test]
    fn asymptotic_values() {
        assert_eq!(asympt_mean_evolving(b(2), 600), 200.0);
        assert!((asympt_mean_evolving(b(3), 600) - 2.0 * 600.0 / 18.0).abs() < 1e-12);
    }

    #[test]
    fn simulation_matches_exact_small() {
        let exact = exact_mean(b(2), 4).unwrap(); // 19/5
        let mc = monte_carlo_mean(b(2), 4, 40_000, 17, 2);
        let dev = (mc.mean() - 3.8).abs();
        assert!(dev < 3.0 * mc.stderr(), "dev {dev} stderr {}", mc.stderr());
        assert_eq!(rat_to_string(&exact), "19/5");
    }
}
