use core::fmt;

use alloc::format;

use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::recursion::bits::BitString;

/// The eight rules of the permutation recursion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    /// Base case: one side (or both) empty.
    R1,
    /// Trailing `(1, 1)` with weight one.
    R2,
    /// Trailing `(1, 1)`, weight at least two, `σ` fixes its last point.
    R3,
    /// Trailing `(1, 1)`, weight at least two, otherwise.
    R4,
    /// Trailing `(0, 1)`.
    R5,
    /// Trailing `(1, 0)`.
    R6,
    /// All zeros, weight zero.
    R7,
    /// Trailing `(0, 0)`, positive weight.
    R8,
}

impl Rule {
    pub fn number(self) -> u8 {
        self as u8 + 1
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R{}", self.number())
    }
}

/// `(σ, v, w)` with `|v|₁ = |w|₁ = deg σ`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RecState {
    pub sigma: Perm,
    pub v: BitString,
    pub w: BitString,
}

impl RecState {
    /// Checks the weight/degree invariant.
    pub fn new(sigma: Perm, v: BitString, w: BitString) -> Result<Self> {
        let s = RecState { sigma, v, w };
        s.check()?;
        Ok(s)
    }

    /// `(e, v, w)` with `e` the identity of the right degree.
    pub fn identity(v: BitString, w: BitString) -> Result<Self> {
        Self::new(Perm::identity(v.weight()), v, w)
    }

    pub fn weight(&self) -> usize {
        self.sigma.degree()
    }

    pub fn check(&self) -> Result<()> {
        let l = self.sigma.degree();
        if self.v.weight() != l || self.w.weight() != l {
            return Err(Error::InvariantViolation(format!(
                "weights |v|={} |w|={} but deg σ={l}",
                self.v.weight(),
                self.w.weight()
            )));
        }
        Ok(())
    }

    /// Upper bound on any rule chain starting here: the measure
    /// `(|v|+|w|-2l, |v|+|w|, trailing zeros)` strictly decreases
    /// lexicographically and each coordinate lies in `0..=|v|+|w|`.
    pub fn depth_bound(&self) -> usize {
        let n = self.v.len() + self.w.len() + 1;
        n.saturating_mul(n).saturating_mul(n)
    }

    /// Text form used in cache files: `<l>|<σ>|<v>|<w>`.
    pub fn key_string(&self) -> alloc::string::String {
        format!("{}|{}|{}|{}", self.weight(), self.sigma, self.v, self.w)
    }

    pub fn parse_key(s: &str) -> Result<Self> {
        let mut parts = s.split('|');
        let (Some(l), Some(sigma), Some(v), Some(w), None) =
            (parts.next(), parts.next(), parts.next(), parts.next(), parts.next())
        else {
            return Err(Error::InvalidInput(format!("bad state key {s:?}")));
        };
        let l: usize = l.parse().map_err(|_| Error::InvalidInput(format!("bad degree in {s:?}")))?;
        let sigma = Perm::parse_one_line(sigma)?;
        if sigma.degree() != l {
            return Err(Error::InvalidInput(format!("degree {l} does not match {sigma}")));
        }
        Self::new(sigma, BitString::parse(v)?, BitString::parse(w)?)
    }
}

impl fmt::Debug for RecState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.sigma, self.v, self.w)
    }
}

/// Picks the unique rule for a state.
pub fn rule_select(s: &RecState) -> Result<Rule> {
    s.check()?;
    let l = s.weight();
    let (x, y) = match (s.v.last(), s.w.last()) {
        (None, None) => return Ok(Rule::R1),
        (None, Some(_)) | (Some(_), None) => {
            let other = if s.v.is_empty() { &s.w } else { &s.v };
            if !other.is_all_zeros() || !s.sigma.is_identity() {
                return Err(Error::MalformedBase(format!("{s:?}")));
            }
            return Ok(Rule::R1);
        }
        (Some(x), Some(y)) => (x, y),
    };
    Ok(match (x, y) {
        (true, true) if l == 1 => Rule::R2,
        (true, true) if s.sigma.fixes_last()? => Rule::R3,
        (true, true) => Rule::R4,
        (false, true) => Rule::R5,
        (true, false) => Rule::R6,
        (false, false) if l == 0 => {
            if !s.sigma.is_identity() {
                return Err(Error::MalformedBase(format!("{s:?}")));
            }
            Rule::R7
        }
        (false, false) => Rule::R8,
    })
}

/// A rule application: which rule, and the states it refers to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step<S> {
    pub rule: Rule,
    pub children: StepChildren<S>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepChildren<S> {
    None,
    One(S),
    Two(S, S),
}

impl<S> StepChildren<S> {
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = &S> {
        let (a, b) = match self {
            StepChildren::None => (None, None),
            StepChildren::One(x) => (Some(x), None),
            StepChildren::Two(x, y) => (Some(x), Some(y)),
        };
        a.into_iter().chain(b)
    }

    pub fn len(&self) -> usize {
        match self {
            StepChildren::None => 0,
            StepChildren::One(_) => 1,
            StepChildren::Two(..) => 2,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Applies [`rule_select`] and builds the successor states.
pub fn expand(s: &RecState) -> Result<Step<RecState>> {
    let rule = rule_select(s)?;
    let l = s.weight();
    let children = match rule {
        Rule::R1 => StepChildren::None,
        Rule::R2 => StepChildren::One(RecState {
            sigma: Perm::identity(0),
            v: s.v.strip_last(),
            w: s.w.strip_last(),
        }),
        Rule::R3 | Rule::R4 => StepChildren::One(RecState {
            sigma: s.sigma.truncate_last()?,
            v: s.v.strip_last(),
            w: s.w.strip_last(),
        }),
        Rule::R5 => StepChildren::One(RecState {
            sigma: s.sigma.compose(&Perm::rotation_inverse(l))?,
            v: s.v.strip_last(),
            w: s.w.recycle(true),
        }),
        Rule::R6 => StepChildren::One(RecState {
            sigma: Perm::rotation(l).compose(&s.sigma)?,
            v: s.v.recycle(true),
            w: s.w.strip_last(),
        }),
        Rule::R7 => StepChildren::One(RecState {
            sigma: Perm::identity(1),
            v: BitString::ones_then_zeros(1, s.v.len() - 1),
            w: BitString::ones_then_zeros(1, s.w.len() - 1),
        }),
        Rule::R8 => StepChildren::Two(
            RecState { sigma: s.sigma.extend_front(), v: s.v.recycle(true), w: s.w.recycle(true) },
            RecState { sigma: s.sigma.clone(), v: s.v.recycle(false), w: s.w.recycle(false) },
        ),
    };
    Ok(Step { rule, children })
}
