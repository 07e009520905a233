use core::fmt;

use crate::error::{Error, Result};
use crate::ring::poly::{LaurentPoly, Monomial};

/// `num / ((1 - Q)^qpow (1 - T)^tpow)`, kept with every cancellable
/// `(1 - Q)` and `(1 - T)` factor removed.
///
/// Because the normal form is unique, derived equality is equality of
/// rational functions.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct StructuredRational {
    num: LaurentPoly,
    qpow: u32,
    tpow: u32,
}

impl StructuredRational {
    /// Builds and normalizes.
    pub fn new(num: LaurentPoly, qpow: u32, tpow: u32) -> Self {
        let mut r = StructuredRational { num, qpow, tpow };
        r.normalize();
        r
    }

    /// Wraps fields that are already known to be normalized.
    ///
    /// Only for deserializers and internal fast paths; debug builds check the claim.
    pub fn from_normalized_parts(num: LaurentPoly, qpow: u32, tpow: u32) -> Self {
        let r = StructuredRational { num, qpow, tpow };
        debug_assert!(r.is_normalized());
        r
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn from_poly(num: LaurentPoly) -> Self {
        StructuredRational { num, qpow: 0, tpow: 0 }
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn qpow(&self) -> u32 {
        self.qpow
    }

    pub fn tpow(&self) -> u32 {
        self.tpow
    }

    pub fn into_parts(self) -> (LaurentPoly, u32, u32) {
        (self.num, self.qpow, self.tpow)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `true` if the denominator is trivial.
    pub fn is_polynomial(&self) -> bool {
        self.qpow == 0 && self.tpow == 0
    }

    pub fn is_normalized(&self) -> bool {
        if self.num.is_zero() {
            return self.qpow == 0 && self.tpow == 0;
        }
        (self.qpow == 0 || self.num.try_div_one_minus_q().is_none())
            && (self.tpow == 0 || self.num.try_div_one_minus_t().is_none())
    }

    /// Cancels `(1 - Q)` and `(1 - T)` factors until neither divides the
    /// numerator. Idempotent.
    pub fn normalize(&mut self) {
        if self.num.is_zero() {
            self.qpow = 0;
            self.tpow = 0;
            return;
        }
        while self.qpow > 0 {
            match self.num.try_div_one_minus_q() {
                Some(n) => {
                    self.num = n;
                    self.qpow -= 1;
                }
                None => break,
            }
        }
        while self.tpow > 0 {
            match self.num.try_div_one_minus_t() {
                Some(n) => {
                    self.num = n;
                    self.tpow -= 1;
                }
                None => break,
            }
        }
    }

    /// Numerator over the larger denominator `(1-Q)^qpow (1-T)^tpow`.
    ///
    /// Panics if the requested powers are smaller than the current ones.
    pub fn numerator_over(&self, qpow: u32, tpow: u32) -> LaurentPoly {
        assert!(qpow >= self.qpow && tpow >= self.tpow, "cannot lower a normalized denominator");
        let mut n = self.num.clone();
        for _ in self.qpow..qpow {
            n = n.mul_one_minus(Monomial::q(1));
        }
        for _ in self.tpow..tpow {
            n = n.mul_one_minus(Monomial::t(1));
        }
        n
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let qp = self.qpow.max(other.qpow);
        let tp = self.tpow.max(other.tpow);
        let num = &self.numerator_over(qp, tp) + &other.numerator_over(qp, tp);
        Self::new(num, qp, tp)
    }

    pub fn neg(&self) -> Self {
        StructuredRational { num: -&self.num, ..*self }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(&self.num * &other.num, self.qpow + other.qpow, self.tpow + other.tpow)
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> Self {
        Self::new(&self.num * p, self.qpow, self.tpow)
    }

    /// Multiplication by a monomial never changes divisibility by `1 - Q` or `1 - T`.
    pub fn shift(&self, m: Monomial) -> Self {
        StructuredRational { num: self.num.shift(m), ..*self }
    }

    pub fn into_shift(self, m: Monomial) -> Self {
        StructuredRational { num: self.num.into_shift(m), ..self }
    }

    /// Multiplies by `1 / ((1 - Q)^dq (1 - T)^dt)`.
    pub fn div_denominator(&self, dq: u32, dt: u32) -> Self {
        // Already normalized numerators stay normalized when the denominator grows.
        StructuredRational { num: self.num.clone(), qpow: self.qpow + dq, tpow: self.tpow + dt }
            .normalized_if_zero()
    }

    /// Multiplies by `(1 - Q)^dq (1 - T)^dt`, cancelling against the denominator first.
    pub fn mul_denominator_factors(&self, dq: u32, dt: u32) -> Self {
        let cq = dq.min(self.qpow);
        let ct = dt.min(self.tpow);
        let mut num = self.num.clone();
        for _ in cq..dq {
            num = num.mul_one_minus(Monomial::q(1));
        }
        for _ in ct..dt {
            num = num.mul_one_minus(Monomial::t(1));
        }
        StructuredRational { num, qpow: self.qpow - cq, tpow: self.tpow - ct }
    }

    /// Exact division of the numerator by a Laurent polynomial, then renormalized.
    pub fn exact_div_poly(&self, d: &LaurentPoly) -> Result<Self> {
        Ok(Self::new(self.num.exact_div(d)?, self.qpow, self.tpow))
    }

    pub fn substitute_q1(&self) -> Result<LaurentPoly> {
        if self.qpow > 0 {
            return Err(Error::DivisionByZero);
        }
        if self.tpow > 0 {
            return Err(Error::Unsupported("(1 - T) denominator survives Q = 1".into()));
        }
        Ok(self.num.substitute_q1())
    }

    /// Normalizes the numerator up to a monomial factor; denominators are untouched.
    pub fn monomial_normalize(&self) -> Result<Self> {
        Ok(StructuredRational { num: self.num.monomial_normalize()?, ..*self })
    }

    /// Equality of the two rational functions after monomial normalization.
    pub fn eq_up_to_monomial(&self, other: &Self) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        self.qpow == other.qpow
            && self.tpow == other.tpow
            && self.num.monomial_normalize().ok() == other.num.monomial_normalize().ok()
    }

    fn normalized_if_zero(mut self) -> Self {
        if self.num.is_zero() {
            self.qpow = 0;
            self.tpow = 0;
        }
        self
    }
}

impl fmt::Display for StructuredRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({}) /", self.num)?;
        if self.qpow > 0 {
            write!(f, " (1-Q)^{}", self.qpow)?;
        }
        if self.tpow > 0 {
            write!(f, " (1-T)^{}", self.tpow)?;
        }
        Ok(())
    }
}

impl fmt::Debug for StructuredRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StructuredRational({self})")
    }
}
