//! Polynomials in two marker variables U and Cyc with Laurent-polynomial
//! coefficients in an auxiliary variable u.
//!
//! U tracks how many vertices are marked, Cyc tracks the excess bookkeeping.
//! Products truncate on the fly to degU <= du_max and degCyc <= dc_max, which
//! keeps the exponential below polynomial-sized.

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::ratio::{rat_int, Rat};
use num_traits::One;
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UCycPoly {
    du_max: usize,
    dc_max: usize,
    terms: BTreeMap<(usize, usize), LaurentPoly>,
}

impl UCycPoly {
    pub fn zero(du_max: usize, dc_max: usize) -> Self {
        UCycPoly {
            du_max,
            dc_max,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(du_max: usize, dc_max: usize) -> Self {
        let mut p = Self::zero(du_max, dc_max);
        p.add_term(0, 0, LaurentPoly::one());
        p
    }

    pub fn add_term(&mut self, du: usize, dc: usize, c: LaurentPoly) {
        if du > self.du_max || dc > self.dc_max || c.is_zero() {
            return;
        }
        let entry = self.terms.entry((du, dc)).or_insert_with(LaurentPoly::zero);
        *entry = entry.add(&c);
        if entry.is_zero() {
            self.terms.remove(&(du, dc));
        }
    }

    pub fn coeff(&self, du: usize, dc: usize) -> LaurentPoly {
        self.terms
            .get(&(du, dc))
            .cloned()
            .unwrap_or_else(LaurentPoly::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((du, dc), c) in &other.terms {
            out.add_term(*du, *dc, c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.du_max, self.dc_max);
        for ((du1, dc1), c1) in &self.terms {
            for ((du2, dc2), c2) in &other.terms {
                if du1 + du2 > self.du_max || dc1 + dc2 > self.dc_max {
                    continue;
                }
                out.add_term(du1 + du2, dc1 + dc2, c1.mul(c2));
            }
        }
        out
    }

    /// exp of a polynomial with zero (0,0) term. Every term of the argument
    /// used in this crate has degU >= 1, so powers past du_max vanish and the
    /// exponential is the finite sum 1 + S + S^2/2! + ... + S^du_max/du_max!.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeff(0, 0).is_zero() {
            return Err(Error::NonzeroConstantTerm(
                "UCyc exp needs a zero (0,0) term".into(),
            ));
        }
        assert!(
            self.terms.keys().all(|(du, _)| *du >= 1),
            "exp argument must have positive U-degree in every term"
        );
        let mut acc = Self::one(self.du_max, self.dc_max);
        let mut power = Self::one(self.du_max, self.dc_max);
        let mut fact = Rat::one();
        for k in 1..=self.du_max {
            power = power.mul(self);
            if power.terms.is_empty() {
                break;
            }
            fact *= rat_int(k as i64);
            let inv = Rat::one() / &fact;
            let mut scaled = Self::zero(self.du_max, self.dc_max);
            for ((du, dc), c) in &power.terms {
                scaled.add_term(*du, *dc, c.scale(&inv));
            }
            acc = acc.add(&scaled);
        }
        Ok(acc)
    }
}

/// exp the argument and extract the (b, ell+1) coefficient.
pub fn exp_extract(arg: &UCycPoly, b: usize, ell_plus_one: usize) -> Result<LaurentPoly> {
    assert_eq!(arg.du_max, b);
    assert_eq!(arg.dc_max, ell_plus_one);
    Ok(arg.exp()?.coeff(b, ell_plus_one))
}
