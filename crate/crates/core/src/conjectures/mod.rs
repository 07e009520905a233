//! Finite-range checks of the growth theorem, the published closed forms and
//! the color-shifting ansatz. Every comparison is an exact identity.

mod affine;
mod closed_forms;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::RangeInclusive;

use crate::error::{Error, Result};
use crate::recursion::{FullMemo, Q1Memo};
use crate::ring::{LaurentPoly, StructuredRational};
use crate::torus::{reduced_poincare, reduced_q1, TorusInput};

pub use affine::{detect_affine_exponents, AffineExponentModel, AffineGenerator};
pub use closed_forms::{closed_form_t2even, closed_form_t2odd, closed_form_t33};

/// Outcome for one color `k`. A failing instance carries the nonzero
/// difference between the two normalized sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceResult {
    pub k: usize,
    pub pass: bool,
    pub witness: Option<StructuredRational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub claim: String,
    /// Named parameters of the run, in display order.
    pub range: Vec<(String, usize)>,
    pub results: Vec<InstanceResult>,
}

impl CheckReport {
    pub fn all_pass(&self) -> bool {
        self.results.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &InstanceResult> {
        self.results.iter().filter(|r| !r.pass)
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.claim)?;
        for (name, v) in &self.range {
            write!(f, " {name}={v}")?;
        }
        writeln!(f)?;
        for r in &self.results {
            match &r.witness {
                None => writeln!(f, "  k={}: {}", r.k, if r.pass { "pass" } else { "FAIL" })?,
                Some(w) => writeln!(f, "  k={}: FAIL, difference {w}", r.k)?,
            }
        }
        Ok(())
    }
}

/// Compares two series up to an overall monomial.
fn compare(k: usize, lhs: &StructuredRational, rhs: &StructuredRational) -> InstanceResult {
    if lhs.eq_up_to_monomial(rhs) {
        return InstanceResult { k, pass: true, witness: None };
    }
    let norm = |x: &StructuredRational| x.monomial_normalize().unwrap_or_else(|_| x.clone());
    let mut diff = norm(lhs).sub(&norm(rhs));
    if diff.is_zero() {
        // Same value but different denominators cannot happen for normalized
        // inputs; report the left side so the witness stays nonzero.
        diff = lhs.clone();
    }
    InstanceResult { k, pass: false, witness: Some(diff) }
}

/// `P(m,n)_k|_{Q=1} = (P(m,n)_1|_{Q=1})^k` for a single `k`.
pub fn growth_instance(m: usize, n: usize, k: usize, memo: &mut Q1Memo) -> Result<InstanceResult> {
    let base = reduced_q1(&TorusInput::new(m, n, 1)?, memo)?;
    let colored = reduced_q1(&TorusInput::new(m, n, k)?, memo)?;
    Ok(compare(k, &StructuredRational::from_poly(colored), &StructuredRational::from_poly(base.pow(k as u32))))
}

/// Runs [`growth_instance`] for `k = 1..=kmax`.
pub fn growth_check(m: usize, n: usize, kmax: usize, memo: &mut Q1Memo) -> Result<CheckReport> {
    growth_check_by(m, n, kmax, |ks| ks.map(|k| growth_instance(m, n, k, memo)).collect())
}

/// [`growth_check`] with the instances produced by `eval`, which must return
/// one result per `k` of the range, in order.
pub fn growth_check_by<F>(m: usize, n: usize, kmax: usize, eval: F) -> Result<CheckReport>
where
    F: FnOnce(RangeInclusive<usize>) -> Result<Vec<InstanceResult>>,
{
    let t = TorusInput::new(m, n, 1)?;
    if !t.is_knot() {
        return Err(Error::Unsupported(alloc::format!("growth needs coprime (m, n), got ({m}, {n})")));
    }
    if kmax == 0 {
        return Err(Error::InvalidInput("kmax must be at least 1".into()));
    }
    Ok(CheckReport {
        claim: "growth".into(),
        range: alloc::vec![("m".into(), m), ("n".into(), n), ("kmax".into(), kmax)],
        results: eval(1..=kmax)?,
    })
}

/// Families with a published closed form in `x = Q^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `T(2, 2n)` colored `(k, 1)`.
    T2Even { n: usize },
    /// `T(3, 3)` colored `(k, 1, 1)`.
    T33,
}

impl Family {
    pub fn torus(self, k: usize) -> Result<TorusInput> {
        match self {
            Family::T2Even { n } => TorusInput::new(2, 2 * n, k),
            Family::T33 => TorusInput::new(3, 3, k),
        }
    }

    pub fn closed_form(self, k: usize) -> StructuredRational {
        match self {
            Family::T2Even { n } => closed_form_t2even(n, k),
            Family::T33 => closed_form_t33(k),
        }
    }

    pub fn claim(self) -> &'static str {
        match self {
            Family::T2Even { .. } => "colorshift-t2even",
            Family::T33 => "colorshift-t33",
        }
    }

    fn validate(self) -> Result<()> {
        match self {
            Family::T2Even { n: 0 } => Err(Error::InvalidInput("t2even needs n >= 1".into())),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::T2Even { n } => write!(f, "t2even(n={n})"),
            Family::T33 => f.write_str("t33"),
        }
    }
}

/// Computed reduced series against the family's closed form for one `k`.
pub fn colorshift_instance(family: Family, k: usize, memo: &mut FullMemo) -> Result<InstanceResult> {
    family.validate()?;
    let computed = reduced_poincare(&family.torus(k)?, memo)?;
    Ok(compare(k, &computed.value, &family.closed_form(k)))
}

/// Runs [`colorshift_instance`] for every `k` in `kmin..=kmax`.
pub fn colorshift_check(family: Family, kmin: usize, kmax: usize, memo: &mut FullMemo) -> Result<CheckReport> {
    colorshift_check_by(family, kmin, kmax, |ks| ks.map(|k| colorshift_instance(family, k, memo)).collect())
}

/// [`colorshift_check`] with the instances produced by `eval`, one per `k`
/// of the range, in order.
pub fn colorshift_check_by<F>(family: Family, kmin: usize, kmax: usize, eval: F) -> Result<CheckReport>
where
    F: FnOnce(RangeInclusive<usize>) -> Result<Vec<InstanceResult>>,
{
    family.validate()?;
    if kmin == 0 || kmin > kmax {
        return Err(Error::InvalidInput(alloc::format!("bad color range {kmin}..={kmax}")));
    }
    let results = eval(kmin..=kmax)?;
    let mut range = Vec::new();
    if let Family::T2Even { n } = family {
        range.push(("n".into(), n));
    }
    range.push(("kmin".into(), kmin));
    range.push(("kmax".into(), kmax));
    Ok(CheckReport { claim: family.claim().into(), range, results })
}

/// `reduced_q1(2, 2n+1, k)` against the closed form.
pub fn t2odd_instance(n: usize, k: usize, memo: &mut Q1Memo) -> Result<InstanceResult> {
    let computed: LaurentPoly = reduced_q1(&TorusInput::new(2, 2 * n + 1, k)?, memo)?;
    Ok(compare(k, &StructuredRational::from_poly(computed), &StructuredRational::from_poly(closed_form_t2odd(n, k))))
}
