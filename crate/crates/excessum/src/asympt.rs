//! Floating-point asymptotic estimators for the exact counts, plus the exact
//! Wright-style sandwich bounds. Estimators accumulate in the log domain, so
//! s up to 10^4 stays finite; comparisons against exact counts go through
//! big-integer logarithms.

use crate::error::Result;
use crate::hl::{comb_form, r_ell, wright_coeffs, HlTable};
use crate::laurent::LaurentPoly;
use crate::ratio::{factorial, ln_big, ln_rat, rat_big, rat_int, Rat};
use crate::species::{extract_theta_kernel, kernel_pow_coeff, Uniformity};
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Copy, Debug)]
pub struct Estimate {
    pub ln_value: f64,
    /// The error order the derivation claims, e.g. "O(s^-1/6)".
    pub error_order: &'static str,
}

impl Estimate {
    pub fn value(&self) -> f64 {
        self.ln_value.exp()
    }

    pub fn log10(&self) -> f64 {
        self.ln_value / std::f64::consts::LN_10
    }

    /// exact / estimate, computed through logs.
    pub fn ratio_to(&self, exact: &Rat) -> f64 {
        assert!(exact.is_positive());
        (ln_rat(exact) - self.ln_value).exp()
    }
}

fn ln_fact(n: usize) -> f64 {
    ln_big(&factorial(n).max(num_bigint::BigInt::one()))
}

/// Rooted hypertrees with s hyperedges:
/// e sqrt(b-1) s^(s(b-1)) e^(-(b-2)(s+1/(b-1))) [(b-1)^(b-1)/(b-2)!]^s.
pub fn rooted_hypertrees(b: Uniformity, s: usize) -> Estimate {
    assert!(s >= 1);
    let bb = b.b() as f64;
    let sf = s as f64;
    let ln_value = 1.0 + 0.5 * (bb - 1.0).ln() + sf * (bb - 1.0) * sf.ln()
        - (bb - 2.0) * (sf + 1.0 / (bb - 1.0))
        + sf * ((bb - 1.0) * (bb - 1.0).ln() - ln_fact(b.b() - 2));
    Estimate {
        ln_value,
        error_order: "O(s^-1)",
    }
}

/// Unrooted hypertrees: the rooted estimate divided by n = s(b-1)+1.
pub fn hypertrees(b: Uniformity, s: usize) -> Estimate {
    let rooted = rooted_hypertrees(b, s);
    let n = s * (b.b() - 1) + 1;
    Estimate {
        ln_value: rooted.ln_value - (n as f64).ln(),
        error_order: rooted.error_order,
    }
}

/// Hypercycles with s hyperedges on n = s(b-1) vertices:
/// sqrt(2 pi (b-1))/4 s^(s(b-1)-1/2) e^(-s(b-2)) [(b-1)^(b-1)/(b-2)!]^s.
pub fn hypercycles(b: Uniformity, s: usize) -> Estimate {
    assert!(s >= 1);
    let bb = b.b() as f64;
    let sf = s as f64;
    let ln_value = 0.5 * (2.0 * std::f64::consts::PI * (bb - 1.0)).ln() - 4f64.ln()
        + (sf * (bb - 1.0) - 0.5) * sf.ln()
        - sf * (bb - 2.0)
        + sf * ((bb - 1.0) * (bb - 1.0).ln() - ln_fact(b.b() - 2));
    Estimate {
        ln_value,
        error_order: "O(s^-1)",
    }
}

/// Complex components of excess ell >= 1 with s hyperedges:
/// 3 ell A_{ell,3ell} (b-1) (es/(3ell+1))^((3ell+1)/2)
///   / (sqrt(2 s n) e^(s b - 2 s + ell/(b-1))) * [s(b-1)]^(s(b-1)-ell)/(b-2)!^s
/// with n = s(b-1) - ell and A_{ell,3ell} = lambda_ell (b-1)^(2 ell)/(3 ell).
pub fn components(b: Uniformity, ell: usize, s: usize) -> Estimate {
    assert!(ell >= 1);
    let bb = b.b() as f64;
    let sf = s as f64;
    let lf = ell as f64;
    let n = s * (b.b() - 1) - ell;
    assert!(n >= 1, "no vertices left at this excess");
    let lambda = wright_coeffs(ell, b).lambda[ell]
        .to_f64()
        .expect("lambda fits in f64 at desk scale");
    let ln_a = lambda.ln() + 2.0 * lf * (bb - 1.0).ln() - (3.0 * lf).ln();
    let m = 3.0 * lf + 1.0;
    let ln_value = (3.0 * lf).ln() + ln_a + (bb - 1.0).ln()
        + 0.5 * m * (1.0 + sf.ln() - m.ln())
        - 0.5 * (2.0 * sf * n as f64).ln()
        - (sf * bb - 2.0 * sf + lf / (bb - 1.0))
        + (sf * (bb - 1.0) - lf) * (sf * (bb - 1.0)).ln()
        - sf * ln_fact(b.b() - 2);
    Estimate {
        ln_value,
        error_order: "O(s^-1/2)",
    }
}

/// The chain-sequence coefficient [t^(n+ell)] tau/(1-tau)^m Phi^n:
/// e^(s + m/2 - ell/(b-1)) (s/m)^(m/2) / (2 sqrt(s pi) (b-2)!^s).
pub fn chain_coeff(b: Uniformity, ell: i64, m: usize, s: usize) -> Estimate {
    assert!(m >= 2);
    let bb = b.b() as f64;
    let sf = s as f64;
    let mf = m as f64;
    let ln_value = sf + mf / 2.0 - ell as f64 / (bb - 1.0) + 0.5 * mf * (sf.ln() - mf.ln())
        - (2.0 * (sf * std::f64::consts::PI).sqrt()).ln()
        - sf * ln_fact(b.b() - 2);
    Estimate {
        ln_value,
        error_order: "O(s^-1/2)",
    }
}

/// Exact value of the chain-sequence coefficient, for ratio reports.
pub fn chain_coeff_exact(b: Uniformity, ell: i64, m: usize, s: usize) -> Rat {
    let n = (s * (b.b() - 1)) as i64 - ell;
    assert!(n >= 1, "no vertices at this (s, ell)");
    let n = n as usize;
    let target = n as i64 + ell;
    let step = (b.b() - 1) as i64;
    let fact = factorial(b.b() - 2);
    // tau/(1-tau)^m = sum_{i>=1} C(i+m-2, m-1) tau^i
    let mut acc = Rat::zero();
    let mut i: i64 = 1;
    let mut c = Rat::one(); // C(m-1, m-1)
    while i * step <= target {
        let phi = kernel_pow_coeff(b, n, target - i * step);
        if !phi.is_zero() {
            acc += &c / rat_big(fact.pow(i as u32)) * phi;
        }
        // C(i+m-1, m-1) = C(i+m-2, m-1) * (i+m-1)/i
        c = c * rat_int(i + m as i64 - 1) / rat_int(i);
        i += 1;
    }
    acc
}

/// The b = 3 rooted coefficient with the three-term Stirling correction:
/// [z^(2s+1)] T = e^(s+1/2)/(2 s sqrt(2 pi s)) (1 - 17/(24 s) + 481/(1152 s^2)).
pub fn rooted_coeff_b3_stirling(s: usize) -> Estimate {
    let sf = s as f64;
    let ln_main = sf + 0.5 - (2.0 * sf).ln() - 0.5 * (2.0 * std::f64::consts::PI * sf).ln();
    let correction = 1.0 - 17.0 / (24.0 * sf) + 481.0 / (1152.0 * sf * sf);
    Estimate {
        ln_value: ln_main + correction.ln(),
        error_order: "O(s^-3)",
    }
}

/// Exact [z^(2s+1)] T for b = 3: (2s+1)^(s-1)/(2^s s!).
pub fn rooted_coeff_b3_exact(s: usize) -> Rat {
    let n = num_bigint::BigInt::from(2 * s + 1).pow(s as u32 - 1);
    rat_big(n) / rat_big(num_bigint::BigInt::from(2u32).pow(s as u32) * factorial(s))
}

/// Exact two-sided bounds around the component count, all big rationals.
#[derive(Clone, Debug)]
pub struct SandwichBounds {
    pub lower: Rat,
    pub upper: Rat,
    pub b_ell: Rat,
    pub c_ell: Rat,
}

/// B_ell and C_ell are the x^(-3ell-1) and negated x^(-3ell) coefficients of
///   R(x) = -(b-1)(1-x) f_ell'(x) - ell f_ell(x);
/// then for n compatible with the excess,
///   (n-1)! [t^(n+ell)] (B/theta^(3ell+1) - C/theta^(3ell)) Phi^n
///     <= n! [z^n] H_ell o T <=
///   3 ell (b-1) A_{ell,3ell} (n-1)! [t^(n+ell)] tau/(1-tau)^(3ell+1) Phi^n.
pub fn wright_bounds(b: Uniformity, ell: usize, n: usize) -> Result<SandwichBounds> {
    assert!(ell >= 1);
    if (n + ell) % (b.b() - 1) != 0 {
        return Err(crate::error::Error::IncompatibleSize(format!(
            "n + ell = {} must be divisible by b-1 = {}",
            n + ell,
            b.b() - 1
        )));
    }
    let mut table = HlTable::new(b);
    let g = table.smooth(ell as i64)?;
    let r = g.derivative_weight(b);
    let b_ell = r.coeff(-3 * ell as i64 - 1);
    let c_ell = -r.coeff(-3 * ell as i64);

    // B equals 3 ell (b-1) A_{ell,3ell}; at b = 2, C collapses to a direct
    // combination of the top two A coefficients
    let cf = comb_form(&g.f, ell as i64, b);
    let a_top = cf.a[3 * ell].clone();
    assert_eq!(
        b_ell,
        rat_int(3 * ell as i64) * rat_int(b.b() as i64 - 1) * &a_top
    );
    if b.b() == 2 {
        let l = ell as i64;
        let direct = rat_int(9 * l * l + l) * &a_top
            + rat_int(b.b() as i64 - 1)
                * rat_int(3 * l - 1)
                * (rat_int(r_ell(l, b)) * &a_top - &cf.a[3 * ell - 1]);
        assert_eq!(c_ell, direct);
    }

    let target = n as i64 + ell as i64;
    let fact_nm1 = rat_big(factorial(n - 1));
    let lower_poly = LaurentPoly::from_terms([
        (-3 * ell as i64 - 1, b_ell.clone()),
        (-3 * ell as i64, -c_ell.clone()),
    ]);
    let lower = &fact_nm1 * extract_theta_kernel(&lower_poly, b, n, target);
    let m = 3 * ell + 1;
    let s_edges = (n + ell) / (b.b() - 1);
    let upper = &b_ell * fact_nm1 * chain_coeff_exact(b, ell as i64, m, s_edges);
    assert!(lower <= upper);
    Ok(SandwichBounds {
        lower,
        upper,
        b_ell,
        c_ell,
    })
}
