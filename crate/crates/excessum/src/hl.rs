//! The recurrence that produces the smooth series of excess ell >= 1.
//!
//! Writing H_j(t) = (f_j(theta) + c_j log theta)/t^j, the k-fold vertex
//! marking z^k d^k/dz^k H_j o T = f_{j,k}(theta o T)/T^j stays inside Laurent
//! polynomials, with the step rule
//!   f_{j,k+1}(x) = -(b-1) f'_{j,k}(x)/x + (b-1) f'_{j,k}(x)
//!                  - j f_{j,k}(x)/x - k f_{j,k}(x).
//! Removing a marked hyperedge from an excess-ell component splits it into
//! marked pieces of smaller excess; reassembling that decomposition gives
//!   f_ell(x) = integral from 1 to x of J(u) du,
//!   J(u) = -(b-2)! [U^b Cyc^(ell+1)] exp( sum_{k=1..b} sum_{j=-1..ell-1}
//!              Cyc^(j+k) U^k f_{j,k}(u) / k! )
//!          + (b-2)! ((ell-b+1) f_{ell-b+1,0}(u) + f_{ell-b+1,1}(u)) / (b-1).
//! The correction adds back markings that would re-create an existing
//! hyperedge; its excess index ell-b+1 hits the log-carrying row 0 only with
//! a zero factor, so everything stays polynomial. Golden-table tests pin all
//! of the sign/factor conventions above.

use crate::error::Result;
use crate::laurent::{one_minus_x_pow, LaurentPoly};
use crate::ratio::{factorial, rat, rat_big, rat_int, Rat};
use crate::species::{smooth_catalog, SmoothGf, Uniformity};
use crate::ucyc::{exp_extract, UCycPoly};
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// Maximum power of tau in the combinatorial form: floor((ell+1)/(b-1) + 1).
pub fn r_ell(ell: i64, b: Uniformity) -> i64 {
    assert!(ell >= 0);
    (ell + 1).div_euclid(b.b() as i64 - 1) + 1
}

/// One application of the marking rule to a plain Laurent entry f_{j,k}.
pub fn mark_step(f: &LaurentPoly, j: i64, k: usize, b: Uniformity) -> LaurentPoly {
    let b1 = rat_int(b.b() as i64 - 1);
    let x_minus_one_over_x = LaurentPoly::from_terms([(0, Rat::one()), (-1, -Rat::one())]);
    let mut out = f.derive().scale(&b1).mul(&x_minus_one_over_x);
    out = out.add(&f.shift(-1).scale(&rat_int(-j)));
    out = out.add(&f.scale(&rat_int(-(k as i64))));
    out
}

/// The k=0 -> k=1 step straight from a smooth series, feeding the log slot
/// only through its derivative c/x.
fn mark_first(g: &SmoothGf, b: Uniformity) -> LaurentPoly {
    let b1 = rat_int(b.b() as i64 - 1);
    let x_minus_one_over_x = LaurentPoly::from_terms([(0, Rat::one()), (-1, -Rat::one())]);
    let mut d = g.f.derive();
    if !g.log_coeff.is_zero() {
        assert_eq!(g.ell, 0, "log slot only exists at excess 0");
        d.add_term(-1, g.log_coeff.clone());
    }
    let mut out = d.scale(&b1).mul(&x_minus_one_over_x);
    // -j f_{j,0}/x; at j = 0 this vanishes, which is the only case where
    // f_{j,0} would have carried a log
    out = out.add(&g.f.shift(-1).scale(&rat_int(-g.ell)));
    out
}

/// Memoized table of the smooth series H_j and their marked versions f_{j,k}.
/// Rows are built once; computing excess 5 reuses everything below it.
pub struct HlTable {
    b: Uniformity,
    smooth: BTreeMap<i64, SmoothGf>,
    marked: BTreeMap<(i64, usize), LaurentPoly>,
}

impl HlTable {
    pub fn new(b: Uniformity) -> Self {
        let mut t = HlTable {
            b,
            smooth: BTreeMap::new(),
            marked: BTreeMap::new(),
        };
        for ell in [-1, 0] {
            t.smooth.insert(ell, smooth_catalog(ell, b).expect("catalog"));
        }
        t
    }

    pub fn b(&self) -> Uniformity {
        self.b
    }

    /// H_ell as a smooth generating function, computing it if needed.
    pub fn smooth(&mut self, ell: i64) -> Result<SmoothGf> {
        assert!(ell >= -1);
        self.ensure(ell)?;
        Ok(self.smooth[&ell].clone())
    }

    /// f_ell as a Laurent polynomial (ell >= 1).
    pub fn smooth_poly(&mut self, ell: i64) -> Result<LaurentPoly> {
        assert!(ell >= 1);
        Ok(self.smooth(ell)?.f)
    }

    /// f_{j,k}; k = 0 returns the Laurent part (only row 0 has a log slot,
    /// and its k = 0 entry is never requested by the assembly).
    pub fn marked(&mut self, j: i64, k: usize) -> Result<LaurentPoly> {
        self.ensure(j)?;
        if k == 0 {
            let g = &self.smooth[&j];
            assert!(
                g.log_coeff.is_zero(),
                "the Laurent view of f_{{0,0}} would drop the log term"
            );
            return Ok(g.f.clone());
        }
        self.fill_row(j);
        Ok(self.marked[&(j, k)].clone())
    }

    fn fill_row(&mut self, j: i64) {
        if self.marked.contains_key(&(j, 1)) {
            return;
        }
        let g = self.smooth[&j].clone();
        let mut cur = mark_first(&g, self.b);
        self.marked.insert((j, 1), cur.clone());
        for k in 1..self.b.b() {
            cur = mark_step(&cur, j, k, self.b);
            self.marked.insert((j, k + 1), cur.clone());
        }
    }

    fn ensure(&mut self, ell: i64) -> Result<()> {
        for e in 1..=ell {
            if self.smooth.contains_key(&e) {
                continue;
            }
            let f = self.compute_smooth_poly(e)?;
            self.smooth.insert(e, SmoothGf::from_laurent(e, f));
        }
        Ok(())
    }

    fn compute_smooth_poly(&mut self, ell: i64) -> Result<LaurentPoly> {
        let b = self.b.b();
        // argument of the exponential: sum over marked pieces
        let mut arg = UCycPoly::zero(b, (ell + 1) as usize);
        for j in -1..ell {
            for k in 1..=b {
                let dc = j + k as i64; // >= 0 since j >= -1, k >= 1
                if dc > ell + 1 {
                    continue;
                }
                let coeff = self.marked(j, k)?;
                let scaled = coeff.scale(&(Rat::one() / rat_big(factorial(k))));
                arg.add_term(k, dc as usize, scaled);
            }
        }
        let extract = exp_extract(&arg, b, (ell + 1) as usize)?;

        // correction: the marking of an already existing hyperedge
        let j0 = ell - b as i64 + 1;
        let correction = if j0 >= -1 {
            let weighted = if j0 == 0 {
                // factor ell-b+1 is exactly zero here; the log row never leaks
                LaurentPoly::zero()
            } else {
                self.marked(j0, 0)?.scale(&rat_int(j0))
            };
            weighted.add(&self.marked(j0, 1)?)
        } else {
            LaurentPoly::zero()
        };

        let bm2_fact = rat_big(factorial(b - 2));
        let integrand = extract
            .scale(&-bm2_fact.clone())
            .add(&correction.scale(&(bm2_fact / rat_int(b as i64 - 1))));
        let f = integrand.antiderive_zero_at_one()?;

        assert_eq!(
            f.min_degree(),
            Some(-3 * ell),
            "f_ell must have minimum degree -3 ell"
        );
        assert!(
            f.max_degree().unwrap() <= r_ell(ell, self.b),
            "f_ell exceeds its maximum degree bound"
        );
        assert!(f.eval(&Rat::one()).unwrap().is_zero());
        Ok(f)
    }
}

/// H_ell in the combinatorial basis:
///   H_ell(t) = tau^(r_ell)/t^ell * sum_p A_p (tau/(1-tau))^p,  tau = 1-theta.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CombForm {
    pub ell: i64,
    pub r_ell: i64,
    /// A[p] for p = 0..=3*ell.
    pub a: Vec<Rat>,
}

impl CombForm {
    /// Expand back to the Laurent polynomial f_ell(x).
    pub fn reconstruct(&self) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (p, coeff) in self.a.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let e = (p as i64 + self.r_ell) as usize;
            out = out.add(&one_minus_x_pow(e).shift(-(p as i64)).scale(coeff));
        }
        out
    }
}

/// Exact change of basis from the Laurent form, peeling the deepest pole
/// first. Reconstruction is the identity (asserted).
pub fn comb_form(f: &LaurentPoly, ell: i64, b: Uniformity) -> CombForm {
    assert!(ell >= 1);
    let r = r_ell(ell, b);
    let top = (3 * ell) as usize;
    let mut rest = f.clone();
    let mut a = vec![Rat::zero(); top + 1];
    for p in (0..=top).rev() {
        let c = rest.coeff(-(p as i64));
        if !c.is_zero() {
            let e = (p as i64 + r) as usize;
            rest = rest.sub(&one_minus_x_pow(e).shift(-(p as i64)).scale(&c));
            a[p] = c;
        }
        assert!(
            rest.min_degree().map_or(true, |d| d > -(p as i64)),
            "pole of order {p} not eliminated"
        );
    }
    assert!(rest.is_zero(), "Laurent form not representable at r_ell");
    let cf = CombForm { ell, r_ell: r, a };
    debug_assert_eq!(cf.reconstruct(), *f);
    cf
}

/// Leading-coefficient sequences. lambda and nu do not depend on b; kappa
/// and mu do. At b = 2 the exposed kappa carries the extra
/// lambda_{ell-1}(3 ell - 1)/2 demanded by the one-more-term unicyclic
/// series (validated against the excess 1..3 graph tables).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WrightCoeffs {
    pub lambda: Vec<Rat>,
    /// nu[0] is unused (the sequence starts at ell = 1).
    pub nu: Vec<Rat>,
    /// kappa[0] is unused.
    pub kappa: Vec<Rat>,
    pub mu: Vec<Rat>,
}

pub fn wright_coeffs(ell_max: usize, b: Uniformity) -> WrightCoeffs {
    let bb = b.b() as i64;
    let mut lambda = vec![rat(1, 2)];
    for ell in 1..=ell_max {
        let l = ell as i64;
        let mut v = &lambda[ell - 1] * rat_int(3 * l - 1) / rat_int(2);
        let mut conv = Rat::zero();
        for p in 0..ell {
            conv += &lambda[p] * &lambda[ell - 1 - p];
        }
        v += conv / rat_int(2);
        lambda.push(v);
    }

    let mut nu = vec![Rat::zero(); ell_max + 1];
    if ell_max >= 1 {
        nu[1] = rat(1, 6) + &lambda[0] / rat_int(2);
    }
    for ell in 2..=ell_max {
        let l = ell as i64;
        let mut triple = Rat::zero();
        for s in 0..=ell - 2 {
            for p in 0..=ell - 2 - s {
                triple += &lambda[s] * &lambda[p] * &lambda[ell - 2 - s - p];
            }
        }
        let mut weighted = Rat::zero();
        for p in 0..=ell - 2 {
            weighted += rat_int(3 * p as i64 + 2) * &lambda[p] * &lambda[ell - 2 - p];
        }
        nu[ell] = triple / rat_int(6)
            + &lambda[ell - 1] / rat_int(2)
            + weighted / rat_int(2)
            + rat_int((3 * l - 4) * (3 * l - 2)) * &lambda[ell - 2] / rat_int(6);
    }

    let mut kappa_chain = vec![Rat::zero(); ell_max + 1];
    let mut mu = vec![rat_int(bb - 1)];
    for ell in 1..=ell_max {
        let l = ell as i64;
        let k = (rat_int(3 * l - 2) * &mu[ell - 1]
            + rat_int(3 * bb * l - bb - 2 * l) * &lambda[ell - 1])
            / rat_int(2)
            + (0..ell)
                .map(|p| &mu[p] * &lambda[ell - 1 - p])
                .sum::<Rat>();
        kappa_chain[ell] = k.clone();
        mu.push(k - &nu[ell] * rat_int(bb - 2) + &lambda[ell] * (rat_int(bb) - rat(2, 3)));
    }

    let mut kappa = kappa_chain;
    if bb == 2 {
        for ell in 1..=ell_max {
            let l = ell as i64;
            let corr = &lambda[ell - 1] * rat_int(3 * l - 1) / rat_int(2);
            kappa[ell] += corr;
        }
    }

    WrightCoeffs {
        lambda,
        nu,
        kappa,
        mu,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: usize) -> Uniformity {
        Uniformity::new(x).unwrap()
    }

    #[test]
    fn first_marking_of_hypertrees_is_one() {
        for bb in 2..=5 {
            let g = smooth_catalog(-1, b(bb)).unwrap();
            assert_eq!(mark_first(&g, b(bb)), LaurentPoly::one(), "b = {bb}");
        }
    }

    #[test]
    fn second_marking_of_hypertrees() {
        // applying the rule to f_{-1,1} = 1 gives 1/x - 1
        let next = mark_step(&LaurentPoly::one(), -1, 1, b(2));
        assert_eq!(
            next,
            LaurentPoly::from_terms([(-1, Rat::one()), (0, -Rat::one())])
        );
    }

    #[test]
    fn first_marking_of_hypercycles() {
        // b >= 3: f_{0,1} = (b-1)(1-x)^2/(2 x^2)
        for bb in 3..=5i64 {
            let g = smooth_catalog(0, b(bb as usize)).unwrap();
            let got = mark_first(&g, b(bb as usize));
            let want = one_minus_x_pow(2)
                .shift(-2)
                .scale(&(rat_int(bb - 1) / rat_int(2)));
            assert_eq!(got, want, "b = {bb}");
        }
        // b = 2 carries the extra unicyclic term: f_{0,1} = (1-x)^3/(2 x^2)
        let g = smooth_catalog(0, b(2)).unwrap();
        let got = mark_first(&g, b(2));
        let want = one_minus_x_pow(3).shift(-2).scale(&rat(1, 2));
        assert_eq!(got, want);
    }

    #[test]
    fn excess_one_graphs_match_table() {
        // W_1 = 5 t^5/(24 (1-t)^3) + t^4/(4 (1-t)^2)
        // as a Laurent polynomial: f_1 = 5 (1-x)^6/(24 x^3) + (1-x)^5/(4 x^2)
        let mut table = HlTable::new(b(2));
        let f1 = table.smooth_poly(1).unwrap();
        let want = one_minus_x_pow(6)
            .shift(-3)
            .scale(&rat(5, 24))
            .add(&one_minus_x_pow(5).shift(-2).scale(&rat(1, 4)));
        assert_eq!(f1, want);
    }

    #[test]
    fn excess_one_b3_comb_form() {
        let mut table = HlTable::new(b(3));
        let f1 = table.smooth_poly(1).unwrap();
        let cf = comb_form(&f1, 1, b(3));
        assert_eq!(cf.r_ell, 2);
        assert_eq!(cf.a, vec![rat_int(0), rat(5, 6), rat(19, 12), rat(5, 6)]);
    }

    #[test]
    fn excess_two_b4_leading_a() {
        let mut table = HlTable::new(b(4));
        let f2 = table.smooth_poly(2).unwrap();
        let cf = comb_form(&f2, 2, b(4));
        assert_eq!(cf.a[6], rat(405, 16));
    }

    #[test]
    fn comb_form_of_zero() {
        let cf = comb_form(&LaurentPoly::zero(), 2, b(3));
        assert!(cf.a.iter().all(|c| c.is_zero()));
        assert_eq!(cf.reconstruct(), LaurentPoly::zero());
    }

    #[test]
    fn general_b_leading_a_for_excess_one() {
        // A_{1,3} = 5 (b-1)^2/24 checked pointwise at b = 5, 6, 7
        for bb in [5usize, 6, 7] {
            let mut table = HlTable::new(b(bb));
            let f1 = table.smooth_poly(1).unwrap();
            let cf = comb_form(&f1, 1, b(bb));
            let want = rat_int(5 * (bb as i64 - 1) * (bb as i64 - 1)) / rat_int(24);
            assert_eq!(cf.a[3], want, "b = {bb}");
        }
    }

    #[test]
    fn lambda_values() {
        let w = wright_coeffs(3, b(3));
        assert_eq!(w.lambda[0], rat(1, 2));
        assert_eq!(w.lambda[1], rat(5, 8));
        assert_eq!(w.lambda[2], rat(15, 8));
        assert_eq!(w.lambda[3], rat(1105, 128));
        assert_eq!(w.mu[0], rat_int(2));
    }

    #[test]
    fn nu_and_kappa_small_values() {
        let w3 = wright_coeffs(2, b(3));
        assert_eq!(w3.nu[1], rat(5, 12));
        assert_eq!(w3.nu[2], rat(5, 4));
        assert_eq!(w3.kappa[1], rat_int(3)); // 3(b-1)/2 at b = 3
        // at b = 2 the exposed kappa includes the unicyclic correction
        let w2 = wright_coeffs(3, b(2));
        assert_eq!(w2.kappa[1], rat_int(2));
        assert_eq!(w2.kappa[2], rat(475, 48));
        assert_eq!(w2.kappa[3], rat(1525, 24));
    }

    #[test]
    fn leading_law_through_excess_five() {
        // coefficient at theta^(-3 ell) is lambda_ell (b-1)^(2 ell)/(3 ell)
        for bb in 2..=5usize {
            let w = wright_coeffs(5, b(bb));
            let mut table = HlTable::new(b(bb));
            for ell in 1..=5i64 {
                let f = table.smooth_poly(ell).unwrap();
                let mut want = w.lambda[ell as usize].clone() / rat_int(3 * ell);
                for _ in 0..2 * ell {
                    want *= rat_int(bb as i64 - 1);
                }
                assert_eq!(f.coeff(-3 * ell), want, "b={bb} ell={ell}");
            }
        }
    }

    #[test]
    fn comb_form_coefficients_are_nonnegative() {
        use num_traits::Signed;
        for bb in 2..=7usize {
            let ell_max = if bb <= 3 { 4 } else { 3 };
            let mut table = HlTable::new(b(bb));
            for ell in 1..=ell_max {
                let f = table.smooth_poly(ell).unwrap();
                let cf = comb_form(&f, ell, b(bb));
                for (p, a) in cf.a.iter().enumerate() {
                    assert!(!a.is_negative(), "A < 0 at b={bb} ell={ell} p={p}");
                }
            }
        }
    }

    #[test]
    fn table_is_memoized_across_excess() {
        let mut table = HlTable::new(b(2));
        let f3_direct = table.smooth_poly(3).unwrap();
        // rows 1 and 2 are already present; asking again must be identical
        let f3_again = table.smooth_poly(3).unwrap();
        assert_eq!(f3_direct, f3_again);
        assert!(table.smooth.contains_key(&1) && table.smooth.contains_key(&2));
    }
}
