//! Exact counts of rooted hypertrees, forests, hypercycles and complex
//! components. Lagrange inversion is the authoritative route; the closed
//! forms are cross-checks. The classical hypercycle sum ships in two
//! variants because its textbook form overcounts (see below); only the
//! corrected variant survives the brute-force oracle.

use crate::error::{Error, Result};
use crate::hl::HlTable;
use crate::ratio::{binomial, factorial, pow_big, rat_big, rat_int, Rat};
use crate::species::{lagrange_coeff_smooth, smooth_catalog, Uniformity};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// (n-1)! n^s / ((b-1)!^s s!), always an integer (asserted).
pub fn count_rooted_hypertrees(b: Uniformity, s: usize) -> BigInt {
    let n = s * (b.b() - 1) + 1;
    let numer = factorial(n - 1) * pow_big(&BigInt::from(n), s);
    let denom = pow_big(&factorial(b.b() - 1), s) * factorial(s);
    let (q, r) = num_integer::Integer::div_rem(&numer, &denom);
    assert!(r.is_zero(), "rooted hypertree count must be integral");
    q
}

/// Forests of (k+1) rooted hypertrees with s hyperedges:
/// C(n,k+1) (k+1) (n-k-1)!/((b-1)!^s s!) n^(s-1), n = s(b-1)+k+1.
pub fn count_forests(b: Uniformity, s: usize, k: usize) -> BigInt {
    let n = s * (b.b() - 1) + k + 1;
    if s == 0 {
        return BigInt::one(); // k+1 isolated roots
    }
    let numer = binomial(n, k + 1)
        * BigInt::from(k + 1)
        * factorial(n - k - 1)
        * pow_big(&BigInt::from(n), s - 1);
    let denom = pow_big(&factorial(b.b() - 1), s) * factorial(s);
    let (q, r) = num_integer::Integer::div_rem(&numer, &denom);
    assert!(r.is_zero(), "forest count must be integral");
    q
}

/// n! [z^n] H_ell o T: the number of connected components of excess ell on
/// n labeled vertices. Sizes off the (b-1) congruence give zero.
pub fn count_components(b: Uniformity, ell: i64, n: usize) -> Result<BigInt> {
    let mut table = HlTable::new(b);
    count_components_with(&mut table, ell, n)
}

/// Same, but sharing a memoized smooth-series table across queries; batch
/// callers over many excesses should prefer this.
pub fn count_components_with(table: &mut HlTable, ell: i64, n: usize) -> Result<BigInt> {
    let b = table.b();
    if ell < -1 {
        return Err(Error::IncompatibleSize(format!("excess {ell} below -1")));
    }
    let g = if ell <= 0 {
        smooth_catalog(ell, b)?
    } else {
        table.smooth(ell)?
    };
    let coeff = lagrange_coeff_smooth(&g, b, n) * rat_big(factorial(n));
    rat_to_int(&coeff)
}

fn rat_to_int(x: &Rat) -> Result<BigInt> {
    if !x.denom().is_one() {
        return Err(Error::IncompatibleSize(format!(
            "expected an integer count, got {x}"
        )));
    }
    Ok(x.numer().clone())
}

/// Both evaluations of the closed hypercycle sum with s hyperedges on
/// n = s(b-1) vertices: the uncorrected sum
///   n! n^(s-1) (b-1)/(2 (b-1)!^s) * sum_{j=2..s} j/(s^j (s-j)!)
/// counts each smooth cycle of length j once per rotation, so every term
/// must be divided by j. The corrected value matches Lagrange inversion;
/// the uncorrected one is reported for comparison, never trusted.
pub struct HypercycleClosedForm {
    pub uncorrected: Rat,
    pub corrected: Rat,
}

pub fn count_hypercycles_closed(b: Uniformity, s: usize) -> Result<HypercycleClosedForm> {
    if b.b() < 3 || s < 2 {
        return Err(Error::IncompatibleSize(
            "closed hypercycle sum needs b >= 3 and s >= 2".into(),
        ));
    }
    let n = s * (b.b() - 1);
    let prefactor = rat_big(factorial(n))
        * rat_big(pow_big(&BigInt::from(n), s - 1))
        * rat_int(b.b() as i64 - 1)
        / (rat_int(2) * rat_big(pow_big(&factorial(b.b() - 1), s)));
    let mut uncorrected = Rat::zero();
    let mut corrected = Rat::zero();
    for j in 2..=s {
        let term = Rat::one() / (rat_big(pow_big(&BigInt::from(s), j)) * rat_big(factorial(s - j)));
        uncorrected += rat_int(j as i64) * &term;
        corrected += term;
    }
    Ok(HypercycleClosedForm {
        uncorrected: &prefactor * uncorrected,
        corrected: prefactor * corrected,
    })
}

/// The families the `count` CLI subcommand exposes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    RootedHypertree,
    Hypertree,
    Forest,
    Hypercycle,
    Component,
}

/// One size-checked query against the counting routines.
pub struct CountQuery {
    pub b: Uniformity,
    pub family: Family,
    pub s: Option<usize>,
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub ell: Option<i64>,
}

pub struct CountAnswer {
    pub n: usize,
    pub s: usize,
    pub count: BigInt,
}

impl CountQuery {
    /// Resolve the n/s/k/ell congruences and dispatch.
    pub fn run(&self) -> Result<CountAnswer> {
        let bm1 = self.b.b() - 1;
        match self.family {
            Family::RootedHypertree => {
                let s = self.size_edges(0)?;
                Ok(CountAnswer {
                    n: s * bm1 + 1,
                    s,
                    count: count_rooted_hypertrees(self.b, s),
                })
            }
            Family::Hypertree => {
                let s = self.size_edges(0)?;
                let n = s * bm1 + 1;
                Ok(CountAnswer {
                    n,
                    s,
                    count: count_components(self.b, -1, n)?,
                })
            }
            Family::Forest => {
                let k = self
                    .k
                    .ok_or_else(|| Error::Usage("forest counts need --k".into()))?;
                let s = self.size_edges(k)?;
                Ok(CountAnswer {
                    n: s * bm1 + k + 1,
                    s,
                    count: count_forests(self.b, s, k),
                })
            }
            Family::Hypercycle => {
                let s = match self.s {
                    Some(s) => s,
                    None => {
                        let n = self
                            .n
                            .ok_or_else(|| Error::Usage("need --s or --n".into()))?;
                        if n % bm1 != 0 {
                            return Err(Error::IncompatibleSize(format!(
                                "hypercycles need n divisible by b-1 = {bm1}, got {n}"
                            )));
                        }
                        n / bm1
                    }
                };
                let n = s * bm1;
                Ok(CountAnswer {
                    n,
                    s,
                    count: count_components(self.b, 0, n)?,
                })
            }
            Family::Component => {
                let ell = self
                    .ell
                    .ok_or_else(|| Error::Usage("component counts need --ell".into()))?;
                let n = self
                    .n
                    .ok_or_else(|| Error::Usage("component counts need --n".into()))?;
                let s_num = n as i64 + ell;
                if s_num < 0 || s_num % bm1 as i64 != 0 {
                    return Err(Error::IncompatibleSize(format!(
                        "n + ell = {s_num} must be a nonnegative multiple of b-1 = {bm1}"
                    )));
                }
                Ok(CountAnswer {
                    n,
                    s: (s_num / bm1 as i64) as usize,
                    count: count_components(self.b, ell, n)?,
                })
            }
        }
    }

    // rooted-style families: accept --s or derive it from n = s(b-1)+k+1
    fn size_edges(&self, k: usize) -> Result<usize> {
        let bm1 = self.b.b() - 1;
        if let Some(s) = self.s {
            return Ok(s);
        }
        let n = self
            .n
            .ok_or_else(|| Error::Usage("need --s or --n".into()))?;
        let base = k + 1;
        if n < base || (n - base) % bm1 != 0 {
            return Err(Error::IncompatibleSize(format!(
                "n = {n} incompatible with b = {} and k = {k}",
                self.b.b()
            )));
        }
        Ok((n - base) / bm1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{connected_counts_by_excess, DEFAULT_EDGE_CAP};

    fn b(x: usize) -> Uniformity {
        Uniformity::new(x).unwrap()
    }

    #[test]
    fn rooted_hypertree_values() {
        assert_eq!(count_rooted_hypertrees(b(3), 1), BigInt::from(3));
        assert_eq!(count_rooted_hypertrees(b(3), 2), BigInt::from(75));
        // Cayley: n^(n-1) rooted trees
        assert_eq!(count_rooted_hypertrees(b(2), 3), BigInt::from(64));
    }

    #[test]
    fn forest_values() {
        assert_eq!(count_forests(b(2), 1, 1), BigInt::from(6));
        assert_eq!(count_forests(b(3), 0, 2), BigInt::from(1));
        for bb in 2..=5usize {
            for s in 0..=6usize {
                assert_eq!(
                    count_forests(b(bb), s, 0),
                    count_rooted_hypertrees(b(bb), s),
                    "b={bb} s={s}"
                );
            }
        }
    }

    #[test]
    fn rooted_equals_n_times_unrooted() {
        for bb in 2..=4usize {
            for s in 1..=5usize {
                let n = s * (bb - 1) + 1;
                let unrooted = count_components(b(bb), -1, n).unwrap();
                assert_eq!(
                    count_rooted_hypertrees(b(bb), s),
                    unrooted * BigInt::from(n),
                    "b={bb} s={s}"
                );
            }
        }
    }

    #[test]
    fn component_counts_match_brute_force_n4() {
        assert_eq!(count_components(b(2), 0, 4).unwrap(), BigInt::from(15));
        assert_eq!(count_components(b(3), 0, 4).unwrap(), BigInt::from(6));
        assert_eq!(count_components(b(2), 1, 4).unwrap(), BigInt::from(6));
        let oracle = connected_counts_by_excess(b(2), 4, DEFAULT_EDGE_CAP).unwrap();
        for (ell, want) in oracle {
            let got = count_components(b(2), ell, 4).unwrap();
            assert_eq!(got, BigInt::from(want), "ell={ell}");
        }
    }

    #[test]
    fn hypercycle_closed_form_vs_lagrange() {
        // the uncorrected sum overcounts at (b=3, s=2): 12 vs the true 6
        let both = count_hypercycles_closed(b(3), 2).unwrap();
        assert_eq!(both.uncorrected, rat_int(12));
        assert_eq!(both.corrected, rat_int(6));
        for (bb, s) in [(3usize, 2usize), (3, 3), (3, 4), (4, 2), (4, 3)] {
            let n = s * (bb - 1);
            let lif = count_components(b(bb), 0, n).unwrap();
            let closed = count_hypercycles_closed(b(bb), s).unwrap();
            assert_eq!(closed.corrected, rat_big(lif), "b={bb} s={s}");
        }
    }

    #[test]
    fn forests_by_kernel_convolution() {
        // n! [z^n] T^(k+1)/(k+1)! = (n-1)!/k! * phi_{n-1-k}(n) equals the
        // closed forest count
        use crate::species::kernel_pow_coeff;
        for bb in 2..=4usize {
            for s in 1..=4usize {
                for k in 0..=3usize {
                    let n = s * (bb - 1) + k + 1;
                    let via_kernel = rat_big(factorial(n - 1)) / rat_big(factorial(k))
                        * kernel_pow_coeff(b(bb), n, (n - 1 - k) as i64);
                    assert_eq!(
                        via_kernel,
                        rat_big(count_forests(b(bb), s, k)),
                        "b={bb} s={s} k={k}"
                    );
                }
            }
        }
    }

    #[test]
    fn query_resolves_sizes() {
        let q = CountQuery {
            b: b(3),
            family: Family::RootedHypertree,
            s: None,
            n: Some(5),
            k: None,
            ell: None,
        };
        let a = q.run().unwrap();
        assert_eq!(a.s, 2);
        assert_eq!(a.count, BigInt::from(75));
        let bad = CountQuery {
            b: b(3),
            family: Family::Component,
            s: None,
            n: Some(4),
            k: None,
            ell: Some(1),
        };
        assert!(matches!(bad.run(), Err(Error::IncompatibleSize(_))));
    }
}
