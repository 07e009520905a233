//! Torus-link inputs, the correction factors, and reduced/unreduced series.

use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::int::Int;
use crate::recursion::{p_full, p_q1, BitString, FullMemo, Q1Memo, RecState};
use crate::ring::{LaurentPoly, Monomial, StructuredRational};

/// `T(m, n)` with its marked component colored `k` and the other `d - 1`
/// components colored 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TorusInput {
    pub m: usize,
    pub n: usize,
    pub k: usize,
    d: usize,
}

impl TorusInput {
    pub fn new(m: usize, n: usize, k: usize) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidInput(alloc::format!("torus parameters must be positive, got ({m}, {n})")));
        }
        if k == 0 {
            return Err(Error::InvalidInput("color k must be at least 1".into()));
        }
        Ok(TorusInput { m, n, k, d: m.gcd(&n) })
    }

    /// Number of link components, `gcd(m, n)`.
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn is_knot(&self) -> bool {
        self.d == 1
    }

    /// `v_k = 1^k 0^{(m/d)(d-1) + k(m/d - 1)}` and the same for `w_k` with `n`.
    pub fn build_strings(&self) -> (BitString, BitString) {
        let side = |x: usize| {
            let xd = x / self.d;
            BitString::ones_then_zeros(self.k, xd * (self.d - 1) + self.k * (xd - 1))
        };
        (side(self.m), side(self.n))
    }

    pub fn root_state(&self) -> RecState {
        let (v, w) = self.build_strings();
        RecState::identity(v, w).expect("v_k and w_k both have weight k")
    }
}

impl fmt::Display for TorusInput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T({},{}) k={}", self.m, self.n, self.k)
    }
}

/// `1 + A Q^{1-i}`
fn color_factor(i: usize) -> LaurentPoly {
    LaurentPoly::one().mul_one_plus(Monomial::new(1, 1 - i as i32, 0))
}

/// `∏_{i=1..k} (1 + A Q^{1-i})`
fn color_numerator(k: usize) -> LaurentPoly {
    (1..=k).fold(LaurentPoly::one(), |acc, i| acc.mul_one_plus(Monomial::new(1, 1 - i as i32, 0)))
}

/// `f(k)` up to a power of `Q`: `∏_{i=1..k} (1 + A Q^{1-i}) / (1 - Q)^k`.
///
/// Each quantum integer `[i]` agrees with `(1 - Q^i)/(1 - Q)` up to a monomial,
/// which cancels the `(1 - Q^i)` in the unknot part.
pub fn correction_f(k: usize) -> StructuredRational {
    StructuredRational::new(color_numerator(k), k as u32, 0)
}

/// Reduced Poincaré series with the input it was computed for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoincareSeries {
    pub value: StructuredRational,
    pub input: TorusInput,
    pub reduced: bool,
}

impl PoincareSeries {
    /// Same series with the numerator shifted so every exponent minimum is zero.
    pub fn monomial_normalized(&self) -> Self {
        let value = self.value.monomial_normalize().unwrap_or_else(|_| self.value.clone());
        PoincareSeries { value, ..self.clone() }
    }
}

/// `∏_{i=1..k} (1 + A Q^{1-i}) / (1 - Q^i)`, the graded dimension of the
/// unreduced `k`-colored unknot. The denominator is kept factored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnknotFactor {
    pub num: LaurentPoly,
    /// Exponents `i` of the factors `(1 - Q^i)`.
    pub den_q_powers: Vec<u32>,
}

impl UnknotFactor {
    pub fn denominator(&self) -> LaurentPoly {
        self.den_q_powers
            .iter()
            .fold(LaurentPoly::one(), |acc, &i| acc.mul_one_minus(Monomial::q(i as i32)))
    }
}

impl fmt::Display for UnknotFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den_q_powers.is_empty() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({}) / ", self.num)?;
        for &i in &self.den_q_powers {
            if i == 1 {
                f.write_str("(1-Q)")?;
            } else {
                write!(f, "(1-Q^{i})")?;
            }
        }
        Ok(())
    }
}

pub fn unknot_factor(k: usize) -> UnknotFactor {
    UnknotFactor { num: color_numerator(k), den_q_powers: (1..=k as u32).collect() }
}

/// `(1 - T)^d f(k)^{-1} p_e(v_k, w_k)`, normalized.
///
/// [`Error::InexactDivision`] here means the rule system produced a value
/// that is not a multiple of the color factors: a convention bug, not bad input.
pub fn reduced_poincare(t: &TorusInput, memo: &mut FullMemo) -> Result<PoincareSeries> {
    let raw = p_full(&t.root_state(), memo)?;
    let mut value = raw.mul_denominator_factors(t.k as u32, t.d as u32);
    for i in 1..=t.k {
        value = value.exact_div_poly(&color_factor(i)).map_err(|e| match e {
            Error::InexactDivision(msg) => {
                Error::InexactDivision(alloc::format!("{t}: color factor 1 + A*Q^{}: {msg}", 1 - i as i32))
            }
            other => other,
        })?;
    }
    Ok(PoincareSeries { value, input: *t, reduced: true })
}

/// The reduced series together with the unknot factor; their product is the
/// unreduced series.
pub fn unreduced_poincare(t: &TorusInput, memo: &mut FullMemo) -> Result<(PoincareSeries, UnknotFactor)> {
    Ok((reduced_poincare(t, memo)?, unknot_factor(t.k)))
}

/// Total dimension of reduced homology of a knot: the series at `A = Q = T = 1`.
pub fn total_dimension(t: &TorusInput, memo: &mut FullMemo) -> Result<Int> {
    if !t.is_knot() {
        return Err(Error::InfiniteDimension);
    }
    let series = reduced_poincare(t, memo)?;
    if !series.value.is_polynomial() {
        return Err(Error::InvariantViolation(alloc::format!("{t}: knot series has a denominator")));
    }
    Ok(series.value.num().coefficient_sum())
}

/// `(1 + A)^{-k} p̃(v_k, w_k)`: the series at `Q = 1`, for knots only.
pub fn reduced_q1(t: &TorusInput, memo: &mut Q1Memo) -> Result<LaurentPoly> {
    if !t.is_knot() {
        return Err(Error::Unsupported(alloc::format!("{t}: the Q = 1 recursion needs gcd(m, n) = 1")));
    }
    let (v, w) = t.build_strings();
    let mut p = p_q1(&v, &w, memo)?;
    let one_a = color_factor(1);
    for _ in 0..t.k {
        p = p.exact_div(&one_a)?;
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recursion::Retention;
    use alloc::string::ToString;

    fn full(m: usize, n: usize, k: usize) -> PoincareSeries {
        let mut memo = FullMemo::new(Retention::Roots);
        reduced_poincare(&TorusInput::new(m, n, k).unwrap(), &mut memo).unwrap().monomial_normalized()
    }

    fn q1(m: usize, n: usize, k: usize) -> LaurentPoly {
        reduced_q1(&TorusInput::new(m, n, k).unwrap(), &mut Q1Memo::default()).unwrap()
    }

    #[test]
    fn strings() {
        let s = |m, n, k| {
            let (v, w) = TorusInput::new(m, n, k).unwrap().build_strings();
            (v.to_string(), w.to_string())
        };
        assert_eq!(s(2, 3, 1), ("10".into(), "100".into()));
        assert_eq!(s(2, 2, 1), ("10".into(), "10".into()));
        assert_eq!(s(3, 3, 2), ("1100".into(), "1100".into()));
    }

    #[test]
    fn rejects_zero_color() {
        assert!(TorusInput::new(2, 3, 0).is_err());
        assert!(TorusInput::new(0, 3, 1).is_err());
    }

    #[test]
    fn correction_factor_examples() {
        assert_eq!(correction_f(0), StructuredRational::one());
        assert_eq!(correction_f(1).to_string(), "(1 + A) / (1-Q)^1");
        let expected = (&LaurentPoly::one() + &LaurentPoly::var_a()) * color_factor(2);
        assert_eq!(correction_f(2), StructuredRational::new(expected, 2, 0));
    }

    #[test]
    fn trefoil() {
        assert_eq!(full(2, 3, 1).value.to_string(), "A + Q + T");
        assert_eq!(q1(2, 3, 1).to_string(), "1 + A + T");
    }

    #[test]
    fn hopf_link() {
        assert_eq!(full(2, 2, 1).value.to_string(), "(A + Q + T - Q*T) / (1-Q)^1");
    }

    #[test]
    fn unknot_factors() {
        assert_eq!(unknot_factor(1).to_string(), "(1 + A) / (1-Q)");
        assert_eq!(unknot_factor(2).to_string(), "(A*Q^-1 + A^2*Q^-1 + 1 + A) / (1-Q)(1-Q^2)");
        assert_eq!(unknot_factor(0).to_string(), "1");
        let den = unknot_factor(2).denominator();
        assert_eq!(den, LaurentPoly::one_minus_q() * LaurentPoly::one().mul_one_minus(Monomial::q(2)));
    }

    #[test]
    fn small_dimensions() {
        let mut memo = FullMemo::default();
        assert_eq!(total_dimension(&TorusInput::new(2, 3, 1).unwrap(), &mut memo).unwrap(), Int::from(3));
        assert_eq!(
            total_dimension(&TorusInput::new(2, 2, 1).unwrap(), &mut memo),
            Err(Error::InfiniteDimension)
        );
    }

    #[test]
    fn q1_closed_forms() {
        let t = LaurentPoly::var_t();
        let one_a = &LaurentPoly::one() + &LaurentPoly::var_a();
        assert_eq!(q1(2, 5, 1), &(&t * &t) + &(&one_a * &(&LaurentPoly::one() + &t)));
        assert_eq!(q1(2, 3, 2), (&one_a + &t).pow(2));
        assert!(reduced_q1(&TorusInput::new(2, 4, 1).unwrap(), &mut Q1Memo::default()).is_err());
    }

    #[test]
    fn unknot_is_trivial() {
        for n in 1..=4 {
            for k in 1..=3 {
                assert_eq!(full(1, n, k).value, StructuredRational::one(), "T(1,{n}) k={k}");
            }
        }
    }
}
