//! Laurent polynomials: finitely many terms, negative degrees allowed.

use crate::error::{Error, Result};
use crate::ratio::{rat_int, rat_to_string, Rat};
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// Map degree -> coefficient; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rat>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn constant(c: Rat) -> Self {
        let mut p = Self::zero();
        p.set(0, c);
        p
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn monomial(deg: i64, c: Rat) -> Self {
        let mut p = Self::zero();
        p.set(deg, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Rat)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (d, c) in terms {
            p.add_term(d, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, deg: i64) -> Rat {
        self.terms.get(&deg).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn set(&mut self, deg: i64, c: Rat) {
        if c.is_zero() {
            self.terms.remove(&deg);
        } else {
            self.terms.insert(deg, c);
        }
    }

    pub fn add_term(&mut self, deg: i64, c: Rat) {
        if c.is_zero() {
            return;
        }
        let v = self.terms.entry(deg).or_insert_with(Rat::zero);
        *v += c;
        if v.is_zero() {
            self.terms.remove(&deg);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rat)> {
        self.terms.iter().map(|(d, c)| (*d, c))
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (d, c) in other.terms() {
            out.add_term(d, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (d, c) in other.terms() {
            out.add_term(d, -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(d, c)| (*d, -c.clone())).collect(),
        }
    }

    pub fn scale(&self, k: &Rat) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(d, c)| (*d, c * k)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (d1, c1) in self.terms() {
            for (d2, c2) in other.terms() {
                out.add_term(d1 + d2, c1 * c2);
            }
        }
        out
    }

    /// Multiply by x^k (k may be negative).
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(d, c)| (d + k, c.clone())).collect(),
        }
    }

    /// Term-wise d/dx.
    pub fn derive(&self) -> Self {
        let mut out = Self::zero();
        for (d, c) in self.terms() {
            if d != 0 {
                out.add_term(d - 1, c * rat_int(d));
            }
        }
        out
    }

    /// The antiderivative F with F' = self and F(1) = 0.
    /// An x^-1 term has no Laurent antiderivative and is rejected.
    pub fn antiderive_zero_at_one(&self) -> Result<Self> {
        let res = self.coeff(-1);
        if !res.is_zero() {
            return Err(Error::LogTermRequired(rat_to_string(&res)));
        }
        let mut out = Self::zero();
        for (d, c) in self.terms() {
            out.add_term(d + 1, c / rat_int(d + 1));
        }
        let at_one = out.eval(&Rat::one()).expect("no pole at 1");
        out.add_term(0, -at_one);
        Ok(out)
    }

    /// Evaluate at a rational point; poles reject 0.
    pub fn eval(&self, x: &Rat) -> Option<Rat> {
        let mut acc = Rat::zero();
        for (d, c) in self.terms() {
            if d >= 0 {
                acc += c * pow_rat(x, d as u32);
            } else {
                if x.is_zero() {
                    return None;
                }
                acc += c / pow_rat(x, (-d) as u32);
            }
        }
        Some(acc)
    }

    /// Coefficients serialized as degree -> "p/q", degrees ascending.
    pub fn to_string_map(&self) -> BTreeMap<i64, String> {
        self.terms.iter().map(|(d, c)| (*d, rat_to_string(c))).collect()
    }
}

fn pow_rat(x: &Rat, e: u32) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..e {
        acc *= x;
    }
    acc
}

/// (1 - x)^e expanded as a Laurent polynomial (e >= 0).
pub fn one_minus_x_pow(e: usize) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    let mut c = Rat::one();
    for i in 0..=e {
        out.add_term(i as i64, c.clone());
        // next binomial coefficient with alternating sign
        c = -c * rat_int((e - i) as i64) / rat_int(i as i64 + 1);
    }
    out
}
