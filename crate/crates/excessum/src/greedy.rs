//! The greedy hypermatching process and its average-case analysis: an exact
//! expectation oracle at desk scale, the exact mean series over hypertrees,
//! the leading-coefficient recurrences behind the asymptotic means, and
//! seeded Monte-Carlo estimates.

use crate::codec::sample_forest;
use crate::error::{Error, Result};
use crate::hl::wright_coeffs;
use crate::hypergraph::Hypergraph;
use crate::parallel::{monte_carlo, McSummary};
use crate::ratio::{binomial_rat, factorial, rat, rat_big, rat_int, Rat};
use crate::series::TruncSeries;
use crate::species::{kernel_pow_coeff, rooted_series, Uniformity};
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use std::collections::HashMap;

/// One run of the greedy algorithm: repeatedly pick a uniformly random
/// remaining hyperedge, keep it, and drop it together with every adjacent
/// hyperedge. The result is always a maximal hypermatching.
pub struct MatchingRun {
    pub matching: Vec<Vec<usize>>,
}

impl MatchingRun {
    pub fn size(&self) -> usize {
        self.matching.len()
    }
}

pub fn greedy_matching<R: Rng>(h: &Hypergraph, rng: &mut R) -> MatchingRun {
    let edges: Vec<Vec<usize>> = h.edges().cloned().collect();
    let mut incident: HashMap<usize, Vec<usize>> = HashMap::new();
    for (i, e) in edges.iter().enumerate() {
        for &v in e {
            incident.entry(v).or_default().push(i);
        }
    }
    let mut alive = vec![true; edges.len()];
    // lazy pool: dead entries are discarded on draw, so each accepted draw
    // is uniform over the remaining edges
    let mut pool: Vec<usize> = (0..edges.len()).collect();
    let mut matching = Vec::new();
    while !pool.is_empty() {
        let slot = rng.gen_range(0..pool.len());
        let e = pool.swap_remove(slot);
        if !alive[e] {
            continue;
        }
        matching.push(edges[e].clone());
        for &v in &edges[e] {
            for &f in &incident[&v] {
                alive[f] = false;
            }
        }
    }
    MatchingRun { matching }
}

/// Pairwise disjoint and maximal, for post-hoc verification of runs.
pub fn is_maximal_matching(h: &Hypergraph, matching: &[Vec<usize>]) -> bool {
    let mut used: Vec<usize> = Vec::new();
    for e in matching {
        if e.iter().any(|v| used.contains(v)) {
            return false;
        }
        used.extend_from_slice(e);
    }
    h.edges()
        .all(|e| e.iter().any(|v| used.contains(v)) || matching.iter().any(|m| m == e))
}

/// Exact expectation of the greedy matching size by memoized recursion
///   E[S] = 1 + (1/|S|) sum_{e in S} E[S minus e's closed neighborhood],
/// keyed on the remaining edge subset (bitmask over the initial edge list;
/// no vertex relabeling).
pub fn exact_expectation(h: &Hypergraph) -> Result<Rat> {
    let edges: Vec<Vec<usize>> = h.edges().cloned().collect();
    if edges.len() > 24 {
        return Err(Error::CapExceeded {
            n: h.vertex_count(),
            b: h.b(),
            edges: edges.len() as u64,
            cap: 24,
        });
    }
    // neighborhood masks: edge i conflicts with every edge sharing a vertex
    let masks: Vec<u32> = (0..edges.len())
        .map(|i| {
            let mut m = 0u32;
            for (j, f) in edges.iter().enumerate() {
                if edges[i].iter().any(|v| f.contains(v)) {
                    m |= 1 << j;
                }
            }
            m
        })
        .collect();
    let full: u32 = if edges.is_empty() {
        0
    } else {
        (1u32 << edges.len()) - 1
    };
    let mut memo: HashMap<u32, Rat> = HashMap::new();

    fn go(set: u32, masks: &[u32], memo: &mut HashMap<u32, Rat>) -> Rat {
        if set == 0 {
            return Rat::zero();
        }
        if let Some(v) = memo.get(&set) {
            return v.clone();
        }
        let count = set.count_ones() as i64;
        let mut acc = Rat::zero();
        let mut rest = set;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            acc += go(set & !masks[i], masks, memo);
        }
        let value = Rat::one() + acc / rat_int(count);
        memo.insert(set, value.clone());
        value
    }

    Ok(go(full, &masks, &mut memo))
}

/// The exact mean series E(x) = sum_n E_n c_n x^n/n! over hypertrees:
/// E(x) = (T/b)(1 - (1 + tau o T)^(-1/(b-1))), computed through the series
/// engine (rational-power included) and composed with T.
pub fn mean_series_hypertrees(b: Uniformity, order: usize) -> TruncSeries {
    assert!(order >= 1);
    let inv_bm2 = Rat::one() / rat_big(factorial(b.b() - 2));
    let tau = TruncSeries::monomial(inv_bm2, b.b() - 1, order);
    let one_plus_tau = TruncSeries::one(order).add(&tau);
    let alpha = rat(-1, b.b() as i64 - 1);
    let power = one_plus_tau.pow_ratio(&alpha).expect("constant term 1");
    let t_var = TruncSeries::monomial(Rat::one(), 1, order);
    let smooth = t_var
        .mul(&TruncSeries::one(order).sub(&power))
        .scale(&(Rat::one() / rat_int(b.b() as i64)));
    smooth
        .compose(&rooted_series(b, order))
        .expect("T(0) = 0")
}

/// The same coefficient extracted without long series, for large n:
/// n [x^n] E = (1/b)([t^(n-1)] Phi^n - sum_i C(-b/(b-1), i) (b-2)!^(-i)
///             [t^(n-1-i(b-1))] Phi^n).
pub fn mean_numerator_coeff(b: Uniformity, n: usize) -> Rat {
    let alpha = rat(-(b.b() as i64), b.b() as i64 - 1);
    let step = (b.b() - 1) as i64;
    let fact = factorial(b.b() - 2);
    let target = n as i64 - 1;
    let mut acc = kernel_pow_coeff(b, n, target);
    let mut i: i64 = 0;
    while i * step <= target {
        let phi = kernel_pow_coeff(b, n, target - i * step);
        if !phi.is_zero() {
            acc -= binomial_rat(&alpha, i as usize) / rat_big(fact.pow(i as u32)) * phi;
        }
        i += 1;
    }
    acc / (rat_int(n as i64) * rat_int(b.b() as i64))
}

/// Exact E_n over hypertrees on n vertices: the mean-series coefficient
/// divided by the hypertree count (both as coefficients of x^n/n!).
pub fn mean_hypertree_exact(b: Uniformity, n: usize) -> Result<Rat> {
    if n < 1 || (n - 1) % (b.b() - 1) != 0 {
        return Err(Error::IncompatibleSize(format!(
            "hypertrees need n = s(b-1)+1, got n = {n}"
        )));
    }
    let s = (n - 1) / (b.b() - 1);
    let trees = rat_big(crate::counts::count_rooted_hypertrees(b, s)) / rat_int(n as i64);
    Ok(mean_numerator_coeff(b, n) * rat_big(factorial(n)) / trees)
}

/// Leading coefficients of the mean series over excess-ell components.
/// bhat_scaled[ell] = bhat_ell 2^(ell/(b-1)) / (1 - 2^(-b/(b-1))) is the
/// rational avatar of the (irrational for b >= 3) bhat_ell; sigma comes
/// from the defining relation 2 bhat_scaled = 3 lambda sigma and is checked
/// against its own recurrence.
#[derive(Clone, Debug)]
pub struct MeanSeriesCoeffs {
    pub lambda: Vec<Rat>,
    pub bhat_scaled: Vec<Rat>,
    pub sigma: Vec<Rat>,
}

impl MeanSeriesCoeffs {
    /// bhat_ell as a float (the scaled value times (1-2^(-b/(b-1)))/2^(ell/(b-1))).
    pub fn bhat_f64(&self, b: Uniformity, ell: usize) -> f64 {
        let bb = b.b() as f64;
        let factor = 1.0 - (-bb / (bb - 1.0) * 2f64.ln()).exp();
        self.bhat_scaled[ell].to_f64().expect("desk scale")
            * factor
            * (-(ell as f64) / (bb - 1.0) * 2f64.ln()).exp()
    }
}

pub fn mean_series_coeffs(b: Uniformity, ell_max: usize) -> MeanSeriesCoeffs {
    let bb = b.b() as i64;
    let lambda = wright_coeffs(ell_max, b).lambda;
    let mut v = vec![rat_int(3 * bb - 2) / rat_int(4 * bb)];
    for ell in 1..=ell_max {
        let l = ell as i64;
        let mut next = &lambda[ell] / rat_int(2) + rat_int(3 * l + 1) * &v[ell - 1] / rat_int(2);
        for p in 0..ell {
            next += &lambda[ell - 1 - p] * &v[p];
        }
        v.push(next);
    }
    let sigma: Vec<Rat> = (0..=ell_max)
        .map(|ell| rat_int(2) * &v[ell] / (rat_int(3) * &lambda[ell]))
        .collect();

    // independent route: the sigma recurrence, with the 3/2 weights the
    // defining relation forces
    let mut sigma_rec = vec![rat_int(3 * bb - 2) / rat_int(3 * bb)];
    for ell in 1..=ell_max {
        let l = ell as i64;
        let mut s = rat(1, 3)
            + rat(3, 2) * &lambda[ell - 1] * rat_int(3 * l + 1) * &sigma_rec[ell - 1]
                / (rat_int(3) * &lambda[ell]);
        for p in 0..ell {
            s += rat(3, 2) * &lambda[ell - 1 - p] * &lambda[p]
                * (&sigma_rec[p] + &sigma_rec[ell - 1 - p])
                / (rat_int(3) * &lambda[ell]);
        }
        sigma_rec.push(s);
    }
    assert_eq!(sigma, sigma_rec, "the two mean-coefficient routes disagree");

    MeanSeriesCoeffs {
        lambda,
        bhat_scaled: v,
        sigma,
    }
}

/// Asymptotic mean matching size for a uniform excess-ell input on n
/// vertices. ell = -1 is the hypertree law (1 - 2^(-b/(b-1))) n/b; ell = 0
/// and ell >= 1 are the leading-order component laws in s.
pub fn asympt_mean(b: Uniformity, ell: i64, n: usize) -> f64 {
    let bb = b.b() as f64;
    let factor = 1.0 - (-bb / (bb - 1.0) * 2f64.ln()).exp();
    match ell {
        -1 => factor * n as f64 / bb,
        0 => {
            let s = n as f64 / (bb - 1.0);
            (3.0 * bb - 2.0) * factor * (std::f64::consts::E / 3.0).powf(1.5)
                / (2.0 * bb * std::f64::consts::PI.sqrt())
                * s
        }
        l => {
            assert!(l >= 1);
            let s = (n as f64 + l as f64) / (bb - 1.0);
            let coeffs = mean_series_coeffs(b, l as usize);
            let sigma = coeffs.sigma[l as usize].to_f64().expect("desk scale");
            let lf = l as f64;
            sigma * std::f64::consts::E * factor
                * ((3.0 * lf + 1.0) / (3.0 * lf + 3.0)).powf((3.0 * lf + 1.0) / 2.0)
                / (2.0 * (lf + 1.0))
                * s
        }
    }
}

/// Seeded Monte-Carlo mean of the greedy matching size over uniform random
/// hypertrees on n vertices. Runs are keyed by (seed, run index) and the
/// accumulators are exact integers, so any worker count gives identical
/// output.
pub fn monte_carlo_mean(
    b: Uniformity,
    n: usize,
    runs: u64,
    seed: u64,
    workers: usize,
) -> Result<McSummary> {
    if n < 1 || (n - 1) % (b.b() - 1) != 0 {
        return Err(Error::IncompatibleSize(format!(
            "hypertrees need n = s(b-1)+1, got n = {n}"
        )));
    }
    let s = (n - 1) / (b.b() - 1);
    Ok(monte_carlo(runs, seed, workers, |rng| {
        let (tree, _roots) = sample_forest(b, s, 0, rng);
        greedy_matching(&tree, rng).size() as u64
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{collect_connected_with_excess, DEFAULT_EDGE_CAP};
    use crate::ratio::rat_to_string;

    fn b(x: usize) -> Uniformity {
        Uniformity::new(x).unwrap()
    }

    fn graph(b_: usize, n: usize, edges: &[&[usize]]) -> Hypergraph {
        let mut h = Hypergraph::empty(b_, n);
        for e in edges {
            h.insert_edge(e).unwrap();
        }
        h
    }

    #[test]
    fn single_edge_always_one() {
        let h = graph(3, 3, &[&[1, 2, 3]]);
        let mut rng = crate::parallel::run_stream(1, 0);
        for _ in 0..20 {
            assert_eq!(greedy_matching(&h, &mut rng).size(), 1);
        }
        assert_eq!(exact_expectation(&h).unwrap(), Rat::one());
    }

    #[test]
    fn path_three_vertices_always_one() {
        let h = graph(2, 3, &[&[1, 2], &[2, 3]]);
        let mut rng = crate::parallel::run_stream(2, 0);
        for _ in 0..20 {
            let run = greedy_matching(&h, &mut rng);
            assert_eq!(run.size(), 1);
            assert!(is_maximal_matching(&h, &run.matching));
        }
        assert_eq!(exact_expectation(&h).unwrap(), Rat::one());
    }

    #[test]
    fn path_four_vertices_expectation() {
        // three first picks: the middle edge ends at 1, the outer two at 2
        let h = graph(2, 4, &[&[1, 2], &[2, 3], &[3, 4]]);
        assert_eq!(rat_to_string(&exact_expectation(&h).unwrap()), "5/3");
    }

    #[test]
    fn edge_star_is_one() {
        let h = graph(3, 7, &[&[1, 2, 3], &[1, 4, 5], &[1, 6, 7]]);
        assert_eq!(exact_expectation(&h).unwrap(), Rat::one());
    }

    #[test]
    fn mean_series_small_graph_values() {
        // b=2: E_2 = E_3 = 1, E_4 = 3/2 (oracle-averaged over the 16 trees)
        let series = mean_series_hypertrees(b(2), 6);
        let trees = |n: usize| rat_big(crate::counts::count_components(b(2), -1, n).unwrap());
        for (n, want) in [(2usize, Rat::one()), (3, Rat::one()), (4, rat(3, 2))] {
            let mean = series.coeff(n) * rat_big(factorial(n)) / trees(n);
            assert_eq!(mean, want, "n = {n}");
        }
    }

    #[test]
    fn mean_series_equals_oracle_sum() {
        // sum over all labeled hypertrees of E[Y | tree] = n! [x^n] E(x)
        for (bb, n) in [(2usize, 4usize), (2, 5), (3, 5)] {
            let series = mean_series_hypertrees(b(bb), n);
            let total: Rat = collect_connected_with_excess(b(bb), n, -1, DEFAULT_EDGE_CAP)
                .unwrap()
                .iter()
                .map(|h| exact_expectation(h).unwrap())
                .sum();
            assert_eq!(
                total,
                series.coeff(n) * rat_big(factorial(n)),
                "b={bb} n={n}"
            );
        }
    }

    #[test]
    fn fast_coefficient_route_matches_series() {
        for bb in [2usize, 3, 4] {
            let series = mean_series_hypertrees(b(bb), 13);
            for s in 1..=3usize {
                let n = s * (bb - 1) + 1;
                assert_eq!(
                    mean_numerator_coeff(b(bb), n),
                    series.coeff(n),
                    "b={bb} n={n}"
                );
            }
        }
    }

    #[test]
    fn sigma_values() {
        for bb in [2usize, 3, 4, 5] {
            let c = mean_series_coeffs(b(bb), 4);
            let bq = bb as i64;
            assert_eq!(c.sigma[0], rat_int(3 * bq - 2) / rat_int(3 * bq));
            // closed bhat identities for ell = 1..4
            assert_eq!(
                c.bhat_scaled[1],
                rat_int(7 * bq - 4) * &c.lambda[1] / rat_int(2 * bq),
                "b={bb}"
            );
            assert_eq!(
                c.bhat_scaled[2],
                rat_int(65 * bq - 34) * &c.lambda[2] / rat_int(12 * bq),
                "b={bb}"
            );
            assert_eq!(
                c.bhat_scaled[3],
                rat_int(11) * rat_int(293 * bq - 144) * &c.lambda[3] / rat_int(442 * bq),
                "b={bb}"
            );
            assert_eq!(
                c.bhat_scaled[4],
                rat_int(7) * rat_int(7081 * bq - 3314) * &c.lambda[4] / rat_int(5424 * bq),
                "b={bb}"
            );
        }
    }

    #[test]
    fn asymptotic_mean_values() {
        assert_eq!(asympt_mean(b(2), -1, 1000), 375.0);
        let want = (1.0 - 2f64.powf(-1.5)) * 333.0;
        assert!((asympt_mean(b(3), -1, 999) - want).abs() < 1e-9);
    }

    #[test]
    fn monte_carlo_agrees_with_oracle_small() {
        // E over uniform hypertrees on 5 vertices (b=2): exact via series
        let exact = mean_hypertree_exact(b(2), 5).unwrap();
        let mc = monte_carlo_mean(b(2), 5, 20_000, 11, 2).unwrap();
        let dev = (mc.mean() - exact.to_f64().unwrap()).abs();
        assert!(dev < 4.0 * mc.stderr(), "dev {dev} stderr {}", mc.stderr());
    }

    #[test]
    fn path_four_branch_probabilities() {
        // size is 1 or 2; a first pick of either outer edge forces size 2,
        // the middle edge forces size 1, so P(size = 2) = 2/3
        let h = graph(2, 4, &[&[1, 2], &[2, 3], &[3, 4]]);
        let mut rng = crate::parallel::run_stream(8, 0);
        let runs = 30_000u64;
        let mut twos = 0u64;
        for _ in 0..runs {
            match greedy_matching(&h, &mut rng).size() {
                1 => {}
                2 => twos += 1,
                other => panic!("impossible size {other}"),
            }
        }
        let freq = twos as f64 / runs as f64;
        // 5 sigma band around 2/3 at 30k runs
        assert!((freq - 2.0 / 3.0).abs() < 5.0 * (2.0f64 / 9.0 / runs as f64).sqrt());
    }

    #[test]
    fn monte_carlo_zero_variance_case() {
        let mc = monte_carlo_mean(b(2), 3, 2_000, 5, 2).unwrap();
        assert_eq!(mc.mean(), 1.0);
        assert_eq!(mc.stderr(), 0.0);
    }
}
