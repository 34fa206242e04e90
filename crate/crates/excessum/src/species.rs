//! The rooted-hypertree series T(z), the kernel Phi(t)^n, Lagrange inversion,
//! and the closed-form smooth series catalog for excess -1 and 0.
//!
//! Conventions, used throughout the crate:
//!   tau(t)   = t^(b-1)/(b-2)!
//!   theta(t) = 1 - tau(t)
//!   Phi(t)   = exp(t^(b-1)/(b-1)!)
//! A smooth generating function of excess ell is
//!   H(t) = (f(theta(t)) + c log theta(t)) / t^ell
//! with f a Laurent polynomial and c nonzero only for ell = 0.

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::ratio::{factorial, rat_big, rat_int, Rat};
use crate::series::TruncSeries;
use num_traits::{One, Zero};

/// Edge size b of a uniform hypergraph; b >= 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Uniformity {
    b: usize,
}

impl Uniformity {
    pub fn new(b: usize) -> Result<Self> {
        if b < 2 {
            return Err(Error::BadUniformity(b));
        }
        Ok(Uniformity { b })
    }

    pub fn b(&self) -> usize {
        self.b
    }
}

/// H(t) = (f(theta(t)) + log_coeff * ln theta(t)) / t^ell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmoothGf {
    pub ell: i64,
    pub f: LaurentPoly,
    pub log_coeff: Rat,
}

impl SmoothGf {
    pub fn from_laurent(ell: i64, f: LaurentPoly) -> Self {
        SmoothGf {
            ell,
            f,
            log_coeff: Rat::zero(),
        }
    }

    /// The Laurent polynomial R with H'(t) = R(theta(t)) / t^(ell+1),
    /// obtained by the chain rule from theta'(t) = -(b-1)(1-theta)/t:
    ///   R(x) = -(b-1)(1-x)(f'(x) + c/x) - ell f(x).
    /// The log term contributes only through its derivative; ell != 0 with a
    /// log slot never occurs.
    pub fn derivative_weight(&self, b: Uniformity) -> LaurentPoly {
        assert!(
            self.log_coeff.is_zero() || self.ell == 0,
            "log slot is only meaningful at excess 0"
        );
        let b1 = rat_int(b.b() as i64 - 1);
        let mut df = self.f.derive();
        if !self.log_coeff.is_zero() {
            df.add_term(-1, self.log_coeff.clone());
        }
        // -(b-1)(1-x) df = (b-1)(x-1) df
        let x_minus_1 = LaurentPoly::from_terms([(1, Rat::one()), (0, -Rat::one())]);
        let mut r = x_minus_1.mul(&df).scale(&b1);
        r = r.sub(&self.f.scale(&rat_int(self.ell)));
        r
    }
}

/// [t^m] Phi(t)^n: n^s/((b-1)!^s s!) when m = s(b-1), else zero.
pub fn kernel_pow_coeff(b: Uniformity, n: usize, m: i64) -> Rat {
    if m < 0 {
        return Rat::zero();
    }
    let step = (b.b() - 1) as i64;
    if m % step != 0 {
        return Rat::zero();
    }
    let s = (m / step) as usize;
    let numer = rat_big(num_bigint::BigInt::from(n).pow(s as u32));
    let denom = rat_big(factorial(b.b() - 1).pow(s as u32) * factorial(s));
    numer / denom
}

/// Phi(t)^n as a truncated series.
pub fn kernel_pow_series(b: Uniformity, n: usize, order: usize) -> TruncSeries {
    let mut coeffs = vec![Rat::zero(); order + 1];
    let step = b.b() - 1;
    let mut m = 0usize;
    while m <= order {
        coeffs[m] = kernel_pow_coeff(b, n, m as i64);
        m += step;
    }
    TruncSeries::from_coeffs(coeffs)
}

/// theta(t)^j as a truncated series in t, for any integer j.
/// Negative powers expand with the binomial series of (1 - tau)^j.
pub fn theta_pow_series(b: Uniformity, j: i64, order: usize) -> TruncSeries {
    let step = b.b() - 1;
    let fact = factorial(b.b() - 2);
    let mut coeffs = vec![Rat::zero(); order + 1];
    // [tau^i] (1 - tau)^j, iterated incrementally: c_{i+1}/c_i = -(j-i)/(i+1)
    let mut c = Rat::one();
    let mut i = 0usize;
    loop {
        let deg = i * step;
        if deg > order {
            break;
        }
        if !c.is_zero() {
            // tau^i = t^(i(b-1)) / (b-2)!^i
            coeffs[deg] = &c / rat_big(fact.pow(i as u32));
        }
        c = -c * (rat_int(j) - rat_int(i as i64)) / rat_int(i as i64 + 1);
        if c.is_zero() && j >= 0 && i as i64 >= j {
            break;
        }
        i += 1;
    }
    TruncSeries::from_coeffs(coeffs)
}

/// [t^target] f(theta(t)) * Phi(t)^n, computed term by term without building
/// long series. This is the workhorse behind the exact counts at large n.
pub fn extract_theta_kernel(f: &LaurentPoly, b: Uniformity, n: usize, target: i64) -> Rat {
    if target < 0 {
        return Rat::zero();
    }
    let step = (b.b() - 1) as i64;
    let fact = factorial(b.b() - 2);
    let mut acc = Rat::zero();
    for (j, coeff) in f.terms() {
        // [tau^i] theta^j, walked incrementally as in theta_pow_series
        let mut c = Rat::one();
        let mut i: i64 = 0;
        while i * step <= target {
            if !c.is_zero() {
                let phi = kernel_pow_coeff(b, n, target - i * step);
                if !phi.is_zero() {
                    acc += coeff * &c / rat_big(fact.pow(i as u32)) * phi;
                }
            }
            c = -c * (rat_int(j) - rat_int(i)) / rat_int(i + 1);
            if c.is_zero() && j >= 0 && i >= j {
                break;
            }
            i += 1;
        }
    }
    acc
}

/// T(z) = z exp(T^(b-1)/(b-1)!) to the requested order, by Newton iteration
/// on F(T) = T - z exp(T^(b-1)/(b-1)!). The fixed point is verified to the
/// full order before returning.
pub fn rooted_series(b: Uniformity, order: usize) -> TruncSeries {
    assert!(order >= 1);
    let bm1 = b.b() - 1;
    let inv_bm1_fact = Rat::one() / rat_big(factorial(bm1));
    let inv_bm2_fact = Rat::one() / rat_big(factorial(b.b() - 2));
    let z = TruncSeries::monomial(Rat::one(), 1, order);

    let mut t = z.clone();
    // Each Newton step doubles the number of correct coefficients.
    let mut correct = 1usize;
    while correct < order {
        let expo = t.pow(bm1).scale(&inv_bm1_fact).exp().expect("T(0)=0");
        let z_exp = z.mul(&expo);
        let f_val = t.sub(&z_exp);
        // F'(T) = 1 - z exp(...) T^(b-2)/(b-2)!
        let f_prime = TruncSeries::one(order).sub(
            &z_exp.mul(&t.pow(b.b() - 2).scale(&inv_bm2_fact)),
        );
        t = t.sub(&f_val.mul(&f_prime.inv().expect("F'(0) = 1")));
        correct = (correct * 2).min(order);
    }

    // fixed-point residual must vanish identically at this order
    let expo = t.pow(bm1).scale(&inv_bm1_fact).exp().expect("T(0)=0");
    let residual = t.sub(&z.mul(&expo));
    assert!(residual.is_zero(), "rooted series residual nonzero");
    t
}

/// The closed-form smooth series for excess -1 (hypertrees) and excess 0
/// (hypercycles; unicyclic graphs carry one extra term at b = 2).
pub fn smooth_catalog(ell: i64, b: Uniformity) -> Result<SmoothGf> {
    match ell {
        -1 => {
            let bb = rat_int(b.b() as i64);
            let f = LaurentPoly::from_terms([
                (0, (rat_int(b.b() as i64 - 1)) / &bb),
                (1, Rat::one() / &bb),
            ]);
            Ok(SmoothGf::from_laurent(-1, f))
        }
        0 => {
            // -(1-x)/2, plus -(1-x)^2/4 when b = 2
            let mut f = LaurentPoly::from_terms([
                (0, crate::ratio::rat(-1, 2)),
                (1, crate::ratio::rat(1, 2)),
            ]);
            if b.b() == 2 {
                f = f.add(&LaurentPoly::from_terms([
                    (0, crate::ratio::rat(-1, 4)),
                    (1, crate::ratio::rat(1, 2)),
                    (2, crate::ratio::rat(-1, 4)),
                ]));
            }
            Ok(SmoothGf {
                ell: 0,
                f,
                log_coeff: crate::ratio::rat(-1, 2),
            })
        }
        other => Err(Error::IncompatibleSize(format!(
            "smooth_catalog covers excess -1 and 0, not {other}; use the recurrence"
        ))),
    }
}

/// [z^n] H o T for a smooth generating function H, by Lagrange inversion:
///   [z^n] H o T = (1/n) [t^(n+ell)] R(theta(t)) Phi(t)^n.
/// Sizes with n + ell not a multiple of (b-1) yield zero.
pub fn lagrange_coeff_smooth(g: &SmoothGf, b: Uniformity, n: usize) -> Rat {
    assert!(n >= 1);
    let target = n as i64 + g.ell;
    if target < 0 || target % (b.b() as i64 - 1) != 0 {
        return Rat::zero();
    }
    let r = g.derivative_weight(b);
    extract_theta_kernel(&r, b, n, target) / rat_int(n as i64)
}

/// [z^n] G o T for a plain series G(t) (e.g. the identity), by
///   [z^n] G o T = (1/n) [t^(n-1)] Phi(t)^n G'(t).
pub fn lagrange_coeff_series(g: &TruncSeries, b: Uniformity, n: usize) -> Rat {
    assert!(n >= 1);
    assert!(g.order() >= n, "series order too small for [z^{n}]");
    let dg = g.derive();
    let mut acc = Rat::zero();
    for m in 0..n {
        let c = dg.coeff(m);
        if c.is_zero() {
            continue;
        }
        acc += c * kernel_pow_coeff(b, n, (n - 1 - m) as i64);
    }
    acc / rat_int(n as i64)
}

/// H(t) as a truncated series in t (log slot expanded through series log).
pub fn smooth_series_in_t(g: &SmoothGf, b: Uniformity, order: usize) -> TruncSeries {
    let shift = g.ell.max(0) as usize;
    let work = order + shift;
    let mut acc = TruncSeries::zero(work);
    for (j, c) in g.f.terms() {
        acc = acc.add(&theta_pow_series(b, j, work).scale(c));
    }
    if !g.log_coeff.is_zero() {
        let log_theta = theta_pow_series(b, 1, work).log().expect("theta(0) = 1");
        acc = acc.add(&log_theta.scale(&g.log_coeff));
    }
    // divide or multiply by t^ell
    if g.ell >= 0 {
        let ell = g.ell as usize;
        let mut coeffs = Vec::with_capacity(order + 1);
        for m in 0..ell {
            assert!(acc.coeff(m).is_zero(), "smooth series not divisible by t^ell");
            let _ = m;
        }
        for m in 0..=order {
            coeffs.push(acc.coeff(m + ell));
        }
        TruncSeries::from_coeffs(coeffs)
    } else {
        let up = (-g.ell) as usize;
        let mut coeffs = vec![Rat::zero(); order + 1];
        for m in 0..=order {
            if m >= up {
                coeffs[m] = acc.coeff(m - up);
            }
        }
        TruncSeries::from_coeffs(coeffs)
    }
}

/// H o T as a truncated series in z: the direct composition route,
/// independent of Lagrange inversion.
pub fn smooth_composed_with_rooted(g: &SmoothGf, b: Uniformity, order: usize) -> TruncSeries {
    let ht = smooth_series_in_t(g, b, order);
    let t = rooted_series(b, order);
    ht.compose(&t).expect("T(0) = 0")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::{rat, rat_to_string};

    fn b(n: usize) -> Uniformity {
        Uniformity::new(n).unwrap()
    }

    #[test]
    fn uniformity_rejects_small_b() {
        assert!(Uniformity::new(1).is_err());
        assert!(Uniformity::new(2).is_ok());
    }

    #[test]
    fn rooted_series_cayley() {
        // b = 2: [z^n] T = n^(n-1)/n!
        let t = rooted_series(b(2), 4);
        assert_eq!(t.coeff(1), rat_int(1));
        assert_eq!(t.coeff(2), rat_int(1));
        assert_eq!(t.coeff(3), rat(3, 2));
        assert_eq!(t.coeff(4), rat(8, 3));
    }

    #[test]
    fn rooted_series_b3() {
        let t = rooted_series(b(3), 6);
        assert_eq!(t.coeff(1), rat_int(1));
        assert_eq!(t.coeff(2), Rat::zero());
        assert_eq!(t.coeff(3), rat(1, 2));
        assert_eq!(t.coeff(5), rat(5, 8));
    }

    #[test]
    fn kernel_coeff_values() {
        assert_eq!(kernel_pow_coeff(b(5), 9, 0), Rat::one());
        // b = 3, n = 4, m = 2: from e^(2 t^2), first order term
        assert_eq!(kernel_pow_coeff(b(3), 4, 2), rat_int(2));
        // b = 2, n = 3, m = 2: e^(3t) -> 9/2
        assert_eq!(kernel_pow_coeff(b(2), 3, 2), rat(9, 2));
        assert_eq!(kernel_pow_coeff(b(3), 4, 3), Rat::zero());
    }

    #[test]
    fn lagrange_identity_recovers_rooted_counts() {
        // n! [z^n] T = (n-1)! n^s / ((b-1)!^s s!)
        for bb in 2..=4usize {
            let u = b(bb);
            for s in 0..=6usize {
                let n = s * (bb - 1) + 1;
                let ident = TruncSeries::monomial(Rat::one(), 1, n.max(1));
                let got = lagrange_coeff_series(&ident, u, n) * rat_big(factorial(n));
                let want = rat_big(factorial(n - 1))
                    * rat_big(num_bigint::BigInt::from(n).pow(s as u32))
                    / rat_big(factorial(bb - 1).pow(s as u32) * factorial(s));
                assert_eq!(got, want, "b={bb} s={s}");
            }
        }
    }

    #[test]
    fn catalog_hypertrees_b3() {
        let g = smooth_catalog(-1, b(3)).unwrap();
        assert_eq!(rat_to_string(&g.f.coeff(0)), "2/3");
        assert_eq!(rat_to_string(&g.f.coeff(1)), "1/3");
        assert!(g.log_coeff.is_zero());
    }

    #[test]
    fn catalog_hypercycles() {
        let g3 = smooth_catalog(0, b(3)).unwrap();
        assert_eq!(g3.log_coeff, rat(-1, 2));
        assert_eq!(g3.f.coeff(0), rat(-1, 2));
        assert_eq!(g3.f.coeff(1), rat(1, 2));
        assert_eq!(g3.f.coeff(2), Rat::zero());
        // b = 2 carries the extra -(1-x)^2/4
        let g2 = smooth_catalog(0, b(2)).unwrap();
        assert_eq!(g2.f.coeff(0), rat(-3, 4));
        assert_eq!(g2.f.coeff(1), rat_int(1));
        assert_eq!(g2.f.coeff(2), rat(-1, 4));
        // H(0) = 0 comes from f(1) = 0 in both cases
        assert!(g2.f.eval(&Rat::one()).unwrap().is_zero());
        assert!(g3.f.eval(&Rat::one()).unwrap().is_zero());
        assert!(smooth_catalog(2, b(3)).is_err());
    }

    #[test]
    fn lagrange_smooth_matches_composition_route() {
        // two independent computation paths agree for the catalog series
        for bb in [2usize, 3, 4] {
            let u = b(bb);
            for ell in [-1i64, 0] {
                let g = smooth_catalog(ell, u).unwrap();
                let composed = smooth_composed_with_rooted(&g, u, 12);
                for n in 1..=12usize {
                    assert_eq!(
                        lagrange_coeff_smooth(&g, u, n),
                        composed.coeff(n),
                        "b={bb} ell={ell} n={n}"
                    );
                }
            }
        }
    }

    #[test]
    fn hypertree_count_small() {
        // 4 labeled trees on n=4: 16; smooth route: 4! [z^4] H_(-1) o T
        let g = smooth_catalog(-1, b(2)).unwrap();
        let got = lagrange_coeff_smooth(&g, b(2), 4) * rat_big(factorial(4));
        assert_eq!(got, rat_int(16));
    }

    #[test]
    fn hypercycle_count_small() {
        // b=3, n=4: 6 hypercycles (2-edge connected on 4 vertices)
        let g = smooth_catalog(0, b(3)).unwrap();
        let got = lagrange_coeff_smooth(&g, b(3), 4) * rat_big(factorial(4));
        assert_eq!(got, rat_int(6));
        assert_eq!(lagrange_coeff_smooth(&g, b(3), 4), rat(1, 4));
    }

    #[test]
    fn theta_power_series_negative_exponent() {
        // 1/theta = 1/(1-tau) = sum tau^i; b=3: tau = t^2
        let s = theta_pow_series(b(3), -1, 6);
        for m in 0..=6 {
            let want = if m % 2 == 0 { Rat::one() } else { Rat::zero() };
            assert_eq!(s.coeff(m), want);
        }
    }

    #[test]
    fn extract_matches_series_route() {
        let f = LaurentPoly::from_terms([(-3, rat(5, 6)), (-1, rat(-2, 7)), (2, rat_int(3))]);
        let u = b(3);
        let n = 8;
        let target = 10i64;
        let mut series = TruncSeries::zero(target as usize);
        for (j, c) in f.terms() {
            series = series.add(&theta_pow_series(u, j, target as usize).scale(c));
        }
        let series_route = series
            .mul(&kernel_pow_series(u, n, target as usize))
            .coeff(target as usize);
        assert_eq!(extract_theta_kernel(&f, u, n, target), series_route);
    }
}
