use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::int::Int;

/// A Laurent monomial `A^a Q^q T^t`.
///
/// The derived order compares `t`, then `a`, then `q`. It is a group order on
/// exponent vectors, so it is compatible with multiplication; it serves both
/// as the storage order of [`LaurentPoly`] and as the elimination order of
/// [`LaurentPoly::exact_div`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub t: i32,
    pub a: i32,
    pub q: i32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { t: 0, a: 0, q: 0 };

    pub const fn new(a: i32, q: i32, t: i32) -> Self {
        Monomial { t, a, q }
    }

    pub const fn a(e: i32) -> Self {
        Monomial::new(e, 0, 0)
    }

    pub const fn q(e: i32) -> Self {
        Monomial::new(0, e, 0)
    }

    pub const fn t(e: i32) -> Self {
        Monomial::new(0, 0, e)
    }

    pub fn is_one(self) -> bool {
        self == Monomial::ONE
    }

    /// Ordering used for printing: ascending `(t, q, a)`.
    pub fn display_cmp(&self, o: &Monomial) -> Ordering {
        (self.t, self.q, self.a).cmp(&(o.t, o.q, o.a))
    }
}

impl Mul for Monomial {
    type Output = Monomial;

    #[inline]
    fn mul(self, o: Monomial) -> Monomial {
        Monomial { t: self.t + o.t, a: self.a + o.a, q: self.q + o.q }
    }
}

impl Div for Monomial {
    type Output = Monomial;

    #[inline]
    fn div(self, o: Monomial) -> Monomial {
        Monomial { t: self.t - o.t, a: self.a - o.a, q: self.q - o.q }
    }
}

/// Sparse Laurent polynomial in `A`, `Q`, `T` with integer coefficients.
///
/// Terms are kept sorted by [`Monomial`] order with no zero coefficients, so
/// structural equality is mathematical equality.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: Vec<(Monomial, Int)>,
}

/// Merges two sorted term lists, combining `lhs + sign * rhs`.
fn merge(lhs: &[(Monomial, Int)], rhs: &[(Monomial, Int)], negate_rhs: bool) -> Vec<(Monomial, Int)> {
    let mut out = Vec::with_capacity(lhs.len() + rhs.len());
    let (mut i, mut j) = (0, 0);
    while i < lhs.len() && j < rhs.len() {
        let (ma, ca) = &lhs[i];
        let (mb, cb) = &rhs[j];
        match ma.cmp(mb) {
            Ordering::Less => {
                out.push((*ma, ca.clone()));
                i += 1;
            }
            Ordering::Greater => {
                out.push((*mb, if negate_rhs { -cb } else { cb.clone() }));
                j += 1;
            }
            Ordering::Equal => {
                let c = if negate_rhs { ca - cb } else { ca + cb };
                if !c.is_zero() {
                    out.push((*ma, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(lhs[i..].iter().cloned());
    if negate_rhs {
        out.extend(rhs[j..].iter().map(|(m, c)| (*m, -c)));
    } else {
        out.extend(rhs[j..].iter().cloned());
    }
    out
}

/// Exact division by `1 ∓ m`, where `m` raises `level` by one and preserves
/// `group`, and terms are sorted by `(group, level, rest)`.
///
/// Walks the levels of each group upwards with `r_j = p_j ± m r_{j-1}`; the
/// division is exact iff the recurrence dies out by the top level. The output
/// comes out sorted.
fn level_div(
    terms: &[(Monomial, Int)],
    m: Monomial,
    subtract: bool,
    group: impl Fn(&Monomial) -> i32,
    level: impl Fn(&Monomial) -> i32,
) -> Option<Vec<(Monomial, Int)>> {
    let mut out = Vec::with_capacity(terms.len());
    let mut i = 0;
    while i < terms.len() {
        let g = group(&terms[i].0);
        let mut prev: Vec<(Monomial, Int)> = Vec::new();
        let mut lvl = 0;
        loop {
            let next = terms.get(i).filter(|x| group(&x.0) == g).map(|x| level(&x.0));
            match (prev.is_empty(), next) {
                (true, None) => break,
                (false, None) => return None,
                (true, Some(n)) => lvl = n - 1,
                (false, Some(_)) => {}
            }
            lvl += 1;
            let mut j = i;
            while j < terms.len() && group(&terms[j].0) == g && level(&terms[j].0) == lvl {
                j += 1;
            }
            let shifted: Vec<(Monomial, Int)> = prev.iter().map(|(x, c)| (x.mul(m), c.clone())).collect();
            let cur = merge(&terms[i..j], &shifted, subtract);
            out.append(&mut prev);
            prev = cur;
            i = j;
        }
    }
    Some(out)
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(Int::ONE, Monomial::ONE)
    }

    pub fn constant(c: impl Into<Int>) -> Self {
        Self::monomial(c.into(), Monomial::ONE)
    }

    pub fn monomial(c: impl Into<Int>, m: Monomial) -> Self {
        let c = c.into();
        if c.is_zero() {
            Self::zero()
        } else {
            LaurentPoly { terms: alloc::vec![(m, c)] }
        }
    }

    pub fn var_a() -> Self {
        Self::monomial(Int::ONE, Monomial::a(1))
    }

    pub fn var_q() -> Self {
        Self::monomial(Int::ONE, Monomial::q(1))
    }

    pub fn var_t() -> Self {
        Self::monomial(Int::ONE, Monomial::t(1))
    }

    /// `1 - Q`
    pub fn one_minus_q() -> Self {
        Self::from_terms([(Monomial::ONE, Int::ONE), (Monomial::q(1), Int::from(-1))])
    }

    /// `1 - T`
    pub fn one_minus_t() -> Self {
        Self::from_terms([(Monomial::ONE, Int::ONE), (Monomial::t(1), Int::from(-1))])
    }

    /// Builds a polynomial from arbitrary (possibly repeated, possibly zero) terms.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Int)>>(terms: I) -> Self {
        let mut v: Vec<(Monomial, Int)> = terms.into_iter().collect();
        v.sort_unstable_by_key(|x| x.0);
        Self::from_sorted_with_dups(v)
    }

    fn from_sorted_with_dups(v: Vec<(Monomial, Int)>) -> Self {
        let mut out: Vec<(Monomial, Int)> = Vec::with_capacity(v.len());
        for (m, c) in v {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += &c,
                _ => {
                    if let Some((_, lc)) = out.last() {
                        if lc.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((m, c));
                }
            }
        }
        if let Some((_, lc)) = out.last() {
            if lc.is_zero() {
                out.pop();
            }
        }
        LaurentPoly { terms: out }
    }

    pub fn terms(&self) -> &[(Monomial, Int)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn coeff(&self, m: Monomial) -> Int {
        match self.terms.binary_search_by(|(x, _)| x.cmp(&m)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Int::ZERO,
        }
    }

    pub fn leading(&self) -> Option<&(Monomial, Int)> {
        self.terms.last()
    }

    /// Multiplies by a single monomial. Monomial multiplication preserves the
    /// term order, so no re-sorting is needed.
    pub fn shift(&self, m: Monomial) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(x, c)| (x.mul(m), c.clone())).collect() }
    }

    pub fn into_shift(mut self, m: Monomial) -> Self {
        if !m.is_one() {
            for (x, _) in &mut self.terms {
                *x = x.mul(m);
            }
        }
        self
    }

    pub fn scale(&self, c: &Int) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect() }
    }

    /// `self * (1 - m)`
    pub fn mul_one_minus(&self, m: Monomial) -> Self {
        LaurentPoly { terms: merge(&self.terms, &self.shift(m).terms, true) }
    }

    /// `self * (1 + m)`
    pub fn mul_one_plus(&self, m: Monomial) -> Self {
        LaurentPoly { terms: merge(&self.terms, &self.shift(m).terms, false) }
    }

    /// `self * (m1 + m2)`
    pub fn mul_monomial_pair(&self, m1: Monomial, m2: Monomial) -> Self {
        LaurentPoly { terms: merge(&self.shift(m1).terms, &self.shift(m2).terms, false) }
    }

    /// Value at `A = Q = T = 1` is zero: necessary for divisibility by `1 - Q` or `1 - T`.
    fn vanishes_at_one(&self) -> bool {
        let mut s = Int::ZERO;
        for (_, c) in &self.terms {
            s += c;
        }
        s.is_zero()
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact division by `1 - Q`, or `None` when `1 - Q` does not divide `self`.
    ///
    /// Within each `(T, A)` slice the terms are contiguous and ascending in `Q`,
    /// and the quotient is the running sum of the slice's coefficients.
    pub fn try_div_one_minus_q(&self) -> Option<Self> {
        let mut out = Vec::new();
        let mut i = 0;
        while i < self.terms.len() {
            let (t, a) = (self.terms[i].0.t, self.terms[i].0.a);
            let mut j = i;
            while j < self.terms.len() && self.terms[j].0.t == t && self.terms[j].0.a == a {
                j += 1;
            }
            let slice = &self.terms[i..j];
            let mut run = Int::ZERO;
            for idx in 0..slice.len() {
                let (m, c) = &slice[idx];
                run += c;
                if idx + 1 < slice.len() && !run.is_zero() {
                    // Fill the dense stretch between this exponent and the next.
                    for q in m.q..slice[idx + 1].0.q {
                        out.push((Monomial { t, a, q }, run.clone()));
                    }
                }
            }
            if !run.is_zero() {
                return None;
            }
            i = j;
        }
        Some(LaurentPoly { terms: out })
    }

    /// Exact division by `1 - T`, or `None` when `1 - T` does not divide `self`.
    ///
    /// `T`-levels are contiguous in storage order and the quotient satisfies
    /// `r_t = p_t + T r_{t-1}`.
    pub fn try_div_one_minus_t(&self) -> Option<Self> {
        if !self.vanishes_at_one() {
            return None;
        }
        level_div(&self.terms, Monomial::t(1), false, |_| 0, |m| m.t).map(|terms| LaurentPoly { terms })
    }

    /// Exact division by `1 + m` for `m = A Q^e`, or `None` when it does not divide.
    ///
    /// Within a `T` slice the quotient's `A`-levels satisfy `r_a = p_a - m r_{a-1}`.
    pub fn try_div_one_plus(&self, m: Monomial) -> Option<Self> {
        assert!(m.a == 1 && m.t == 0, "level division needs m = A Q^e");
        level_div(&self.terms, m, true, |x| x.t, |x| x.a).map(|terms| LaurentPoly { terms })
    }

    /// Exact division `self / divisor`, by leading-term elimination.
    ///
    /// Fails with [`Error::InexactDivision`] if no Laurent polynomial `r` with
    /// `r * divisor == self` exists.
    pub fn exact_div(&self, divisor: &LaurentPoly) -> Result<Self> {
        let Some((lead_m, lead_c)) = divisor.leading().cloned() else {
            return Err(Error::DivisionByZero);
        };
        if self.is_zero() {
            return Ok(Self::zero());
        }
        if divisor.len() == 1 {
            let mut out = Vec::with_capacity(self.len());
            for (m, c) in &self.terms {
                out.push((m.div(lead_m), exact_coeff_div(c, &lead_c)?));
            }
            return Ok(LaurentPoly { terms: out });
        }
        if let [(m0, c0), (m1, c1)] = divisor.terms() {
            let m = if m0.is_one() { *m1 } else { *m0 };
            if (m0.is_one() || m1.is_one()) && c0.is_one() && c1.is_one() && m.a == 1 && m.t == 0 {
                return self
                    .try_div_one_plus(m)
                    .ok_or_else(|| Error::InexactDivision(format!("1 + {} does not divide", LaurentPoly::monomial(1, m))));
            }
        }
        // Every quotient monomial is at least min(self) / min(divisor).
        let floor = self.terms[0].0.div(divisor.terms[0].0);
        let mut rem: BTreeMap<Monomial, Int> = self.terms.iter().cloned().collect();
        let mut quot: Vec<(Monomial, Int)> = Vec::new();
        while let Some((m, c)) = rem.pop_last() {
            let qm = m.div(lead_m);
            if qm < floor {
                return Err(Error::InexactDivision(format!("remainder term at {qm:?} below quotient floor")));
            }
            let qc = exact_coeff_div(&c, &lead_c)?;
            for (dm, dc) in &divisor.terms[..divisor.len() - 1] {
                let target = dm.mul(qm);
                let delta = dc * &qc;
                match rem.entry(target) {
                    alloc::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() -= &delta;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                    alloc::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(-delta);
                    }
                }
            }
            quot.push((qm, qc));
        }
        quot.reverse();
        Ok(LaurentPoly { terms: quot })
    }

    /// Sets `Q = 1`, leaving a polynomial in `A` and `T`.
    pub fn substitute_q1(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (Monomial { q: 0, ..*m }, c.clone())))
    }

    /// Componentwise minimum exponents, or `None` for the zero polynomial.
    pub fn min_exponents(&self) -> Option<Monomial> {
        let mut it = self.terms.iter();
        let first = it.next()?.0;
        Some(it.fold(first, |acc, (m, _)| Monomial {
            t: acc.t.min(m.t),
            a: acc.a.min(m.a),
            q: acc.q.min(m.q),
        }))
    }

    pub fn max_exponents(&self) -> Option<Monomial> {
        let mut it = self.terms.iter();
        let first = it.next()?.0;
        Some(it.fold(first, |acc, (m, _)| Monomial {
            t: acc.t.max(m.t),
            a: acc.a.max(m.a),
            q: acc.q.max(m.q),
        }))
    }

    /// Divides out the largest monomial factor, so every variable has minimum
    /// exponent zero. Canonical representative for comparison up to a shift.
    pub fn monomial_normalize(&self) -> Result<Self> {
        let min = self.min_exponents().ok_or(Error::ZeroPolynomial)?;
        Ok(self.shift(Monomial { t: -min.t, a: -min.a, q: -min.q }))
    }

    /// `true` when every coefficient is non-negative.
    pub fn is_nonnegative(&self) -> bool {
        self.terms.iter().all(|(_, c)| !c.is_negative())
    }

    /// Sum of all coefficients, i.e. the value at `A = Q = T = 1`.
    pub fn coefficient_sum(&self) -> Int {
        let mut acc = Int::ZERO;
        for (_, c) in &self.terms {
            acc += c;
        }
        acc
    }

    /// Exact rational evaluation.
    pub fn eval(&self, a: &BigRational, q: &BigRational, t: &BigRational) -> Result<BigRational> {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut v = BigRational::from_integer(c.to_bigint());
            v *= rational_pow(a, m.a)?;
            v *= rational_pow(q, m.q)?;
            v *= rational_pow(t, m.t)?;
            acc += v;
        }
        Ok(acc)
    }
}

fn rational_pow(x: &BigRational, e: i32) -> Result<BigRational> {
    if e == 0 {
        return Ok(BigRational::one());
    }
    if e < 0 && x.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(num_traits::pow::Pow::pow(x, e))
}

fn exact_coeff_div(c: &Int, d: &Int) -> Result<Int> {
    if let (Some(a), Some(b)) = (c.as_i64(), d.as_i64()) {
        if b != 0 && a % b == 0 {
            if let Some(v) = a.checked_div(b) {
                return Ok(Int::from(v));
            }
        }
    }
    let (quo, rem) = c.to_bigint().div_rem(&d.to_bigint());
    if !rem.is_zero() {
        return Err(Error::InexactDivision(format!("coefficient {c} not divisible by {d}")));
    }
    Ok(Int::from(quo))
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly { terms: merge(&self.terms, &rhs.terms, false) }
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly { terms: merge(&self.terms, &rhs.terms, true) }
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        &self + &rhs
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

/// Below this many terms in the smaller factor, multiplication is a chain of
/// sorted merges; above it, products are collected and sorted once.
const MERGE_MUL_THRESHOLD: usize = 8;

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let (small, big) = if self.len() <= rhs.len() { (self, rhs) } else { (rhs, self) };
        if small.is_zero() {
            return LaurentPoly::zero();
        }
        if small.len() <= MERGE_MUL_THRESHOLD {
            let mut acc: Vec<(Monomial, Int)> = Vec::new();
            for (m, c) in &small.terms {
                let part: Vec<(Monomial, Int)> = big.terms.iter().map(|(x, y)| (x.mul(*m), y * c)).collect();
                acc = if acc.is_empty() { part } else { merge(&acc, &part, false) };
            }
            return LaurentPoly { terms: acc };
        }
        let mut prods = Vec::with_capacity(small.len() * big.len());
        for (m1, c1) in &small.terms {
            for (m2, c2) in &big.terms {
                prods.push((m1.mul(*m2), c1 * c2));
            }
        }
        LaurentPoly::from_terms(prods)
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, m: &Monomial, c: &Int, first: bool) -> fmt::Result {
    let neg = c.is_negative();
    let abs = c.abs();
    if first {
        if neg {
            f.write_str("-")?;
        }
    } else {
        f.write_str(if neg { " - " } else { " + " })?;
    }
    let mut factors: Vec<alloc::string::String> = Vec::new();
    for (name, e) in [("A", m.a), ("Q", m.q), ("T", m.t)] {
        match e {
            0 => {}
            1 => factors.push(name.into()),
            _ => factors.push(format!("{name}^{e}")),
        }
    }
    if factors.is_empty() {
        write!(f, "{abs}")
    } else if abs.is_one() {
        write!(f, "{}", factors.join("*"))
    } else {
        write!(f, "{abs}*{}", factors.join("*"))
    }
}

impl LaurentPoly {
    /// Terms in printing order (ascending `T`, then `Q`, then `A`).
    pub fn display_terms(&self) -> Vec<&(Monomial, Int)> {
        let mut v: Vec<&(Monomial, Int)> = self.terms.iter().collect();
        v.sort_by(|x, y| x.0.display_cmp(&y.0));
        v
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.display_terms().into_iter().enumerate() {
            write_term(f, m, c, i == 0)?;
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}
