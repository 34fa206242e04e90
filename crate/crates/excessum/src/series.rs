//! Truncated univariate power series with exact rational coefficients.
//!
//! A `TruncSeries` holds coefficients of z^0..z^K. Arithmetic never reads
//! past the truncation order; binary operations truncate to the shorter
//! operand. There is no hidden global precision: every constructor takes
//! the order explicitly.

use crate::error::{Error, Result};
use crate::ratio::{rat_int, rat_to_string, Rat};
use num_traits::{One, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    coeffs: Vec<Rat>,
}

impl TruncSeries {
    /// Zero series of the given order (K+1 stored coefficients).
    pub fn zero(order: usize) -> Self {
        TruncSeries {
            coeffs: vec![Rat::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = Rat::one();
        s
    }

    /// The monomial c * z^deg truncated at `order`.
    pub fn monomial(c: Rat, deg: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if deg <= order {
            s.coeffs[deg] = c;
        }
        s
    }

    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        assert!(!coeffs.is_empty(), "a series stores at least z^0");
        TruncSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> Rat {
        self.coeffs.get(n).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn truncated(&self, order: usize) -> Self {
        let mut c = self.coeffs.clone();
        c.truncate(order + 1);
        c.resize(order + 1, Rat::zero());
        TruncSeries { coeffs: c }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        let k = self.order().min(other.order());
        let coeffs = (0..=k).map(|i| self.coeff(i) + other.coeff(i)).collect();
        TruncSeries { coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let k = self.order().min(other.order());
        let coeffs = (0..=k).map(|i| self.coeff(i) - other.coeff(i)).collect();
        TruncSeries { coeffs }
    }

    pub fn neg(&self) -> Self {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Cauchy product, truncated to the shorter operand.
    pub fn mul(&self, other: &Self) -> Self {
        let k = self.order().min(other.order());
        let mut coeffs = vec![Rat::zero(); k + 1];
        for (i, a) in self.coeffs.iter().take(k + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(k + 1 - i).enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] += a * b;
            }
        }
        TruncSeries { coeffs }
    }

    /// Multiplicative inverse; the constant term must be nonzero.
    pub fn inv(&self) -> Result<Self> {
        let c0 = self.coeff(0);
        if c0.is_zero() {
            return Err(Error::NonzeroConstantTerm("0 (inverse needs != 0)".into()));
        }
        let k = self.order();
        let mut out = vec![Rat::zero(); k + 1];
        out[0] = Rat::one() / &c0;
        for n in 1..=k {
            let mut acc = Rat::zero();
            for j in 1..=n {
                acc += self.coeff(j) * &out[n - j];
            }
            out[n] = -acc / &c0;
        }
        Ok(TruncSeries { coeffs: out })
    }

    /// exp(self); requires a zero constant term.
    /// Uses the ODE recurrence n b_n = sum_{k=1..n} k a_k b_{n-k}.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeff(0).is_zero() {
            return Err(Error::NonzeroConstantTerm(rat_to_string(&self.coeff(0))));
        }
        let k = self.order();
        let mut out = vec![Rat::zero(); k + 1];
        out[0] = Rat::one();
        for n in 1..=k {
            let mut acc = Rat::zero();
            for j in 1..=n {
                let a = self.coeff(j);
                if a.is_zero() {
                    continue;
                }
                acc += a * rat_int(j as i64) * &out[n - j];
            }
            out[n] = acc / rat_int(n as i64);
        }
        Ok(TruncSeries { coeffs: out })
    }

    /// log(self); requires constant term 1.
    /// Uses n a_n = n b_n - sum_{k=1..n-1} k a_k b_{n-k}.
    pub fn log(&self) -> Result<Self> {
        if !self.coeff(0).is_one() {
            return Err(Error::ConstantTermNotOne(rat_to_string(&self.coeff(0))));
        }
        let k = self.order();
        let mut out = vec![Rat::zero(); k + 1];
        for n in 1..=k {
            let mut acc = self.coeff(n) * rat_int(n as i64);
            for j in 1..n {
                if out[j].is_zero() {
                    continue;
                }
                acc -= &out[j] * rat_int(j as i64) * self.coeff(n - j);
            }
            out[n] = acc / rat_int(n as i64);
        }
        Ok(TruncSeries { coeffs: out })
    }

    /// self^a for a rational exponent, via exp(a log self); constant term must be 1.
    pub fn pow_ratio(&self, a: &Rat) -> Result<Self> {
        self.log()?.scale(a).exp()
    }

    /// Integer power by repeated squaring (no constant-term restriction).
    pub fn pow(&self, mut e: usize) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.order());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Term-wise derivative; the result keeps the same order (top coefficient 0).
    pub fn derive(&self) -> Self {
        let k = self.order();
        let mut out = vec![Rat::zero(); k + 1];
        for n in 1..=k {
            out[n - 1] = self.coeff(n) * rat_int(n as i64);
        }
        TruncSeries { coeffs: out }
    }

    /// Composition self(inner); inner must have zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeff(0).is_zero() {
            return Err(Error::NonzeroConstantTerm(rat_to_string(&inner.coeff(0))));
        }
        let k = self.order().min(inner.order());
        // Horner from the top coefficient down
        let mut acc = TruncSeries::monomial(self.coeff(k), 0, k);
        for n in (0..k).rev() {
            acc = acc.mul(&inner.truncated(k));
            acc.coeffs[0] += self.coeff(n);
        }
        Ok(acc)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(rat_to_string).collect()
    }
}
