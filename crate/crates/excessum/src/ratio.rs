//! Exact rational scalars and big-integer helpers.
//!
//! All symbolic coefficients in this crate are `BigRational` values: always
//! reduced, denominator positive, zero is 0/1 (invariants maintained by
//! `num-rational`). They serialize as "p/q" strings.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rat = num_rational::BigRational;

pub fn rat(numer: i64, denom: i64) -> Rat {
    Rat::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_big(n: BigInt) -> Rat {
    Rat::from_integer(n)
}

/// "p/q" form, q > 0, reduced. Integers still print with the "/1".
pub fn rat_to_string(x: &Rat) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn rat_from_str(s: &str) -> Option<Rat> {
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p, q),
        None => (s, "1"),
    };
    let p: BigInt = p.trim().parse().ok()?;
    let q: BigInt = q.trim().parse().ok()?;
    if q.is_zero() {
        return None;
    }
    Some(Rat::new(p, q))
}

pub fn factorial(n: usize) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= k;
    }
    acc
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
}

/// Generalized binomial C(a, k) = a(a-1)...(a-k+1)/k! for rational a.
pub fn binomial_rat(a: &Rat, k: usize) -> Rat {
    let mut acc = Rat::one();
    for j in 0..k {
        acc *= a - rat_int(j as i64);
    }
    acc / rat_big(factorial(k))
}

pub fn pow_big(base: &BigInt, exp: usize) -> BigInt {
    base.pow(exp as u32)
}

/// Natural log of a positive big integer, stable for values far beyond f64 range.
pub fn ln_big(x: &BigInt) -> f64 {
    assert!(x.is_positive(), "ln_big needs a positive integer");
    let bits = x.bits();
    if bits <= 900 {
        return x.to_f64().expect("fits in f64").ln();
    }
    // keep the top 64 bits as mantissa, account for the shift
    let shift = bits - 64;
    let top = (x >> shift).to_f64().expect("64-bit mantissa fits");
    top.ln() + (shift as f64) * std::f64::consts::LN_2
}

/// Natural log of a positive rational.
pub fn ln_rat(x: &Rat) -> f64 {
    assert!(x.is_positive(), "ln_rat needs a positive rational");
    ln_big(x.numer()) - ln_big(x.denom())
}

/// Lossy conversion that goes through logs when the value overflows f64.
pub fn rat_to_f64(x: &Rat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let ln = ln_rat(&x.abs());
    if ln.abs() < 700.0 {
        x.to_f64().unwrap_or(if x.is_positive() {
            f64::INFINITY
        } else {
            f64::NEG_INFINITY
        })
    } else if x.is_positive() {
        f64::INFINITY
    } else {
        f64::NEG_INFINITY
    }
}
