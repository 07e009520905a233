use alloc::format;

use crate::error::{Error, Result};
use crate::recursion::bits::BitString;
use crate::recursion::engine::{evaluate, MemoTable, Recurrence, Retention};
use crate::recursion::full::one_plus_a_pow;
use crate::recursion::state::{Rule, Step, StepChildren};
use crate::ring::{LaurentPoly, Monomial};

/// State of the permutation-free recursion at `Q = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Q1State {
    pub v: BitString,
    pub w: BitString,
}

impl Q1State {
    pub fn new(v: BitString, w: BitString) -> Result<Self> {
        if v.weight() != w.weight() {
            return Err(Error::InvariantViolation(format!("weights differ: {v:?} vs {w:?}")));
        }
        Ok(Q1State { v, w })
    }
}

pub type Q1Memo = MemoTable<Q1State, LaurentPoly>;

/// `p̃(v, w)`: six rules over polynomials in `A` and `T`.
///
/// Rule identifiers reuse those of the permutation recursion they descend
/// from; [`Rule::R2`] stands for every trailing `(1, 1)` step.
#[derive(Clone, Copy, Debug, Default)]
pub struct Q1Recursion;

impl Recurrence for Q1Recursion {
    type State = Q1State;
    type Value = LaurentPoly;

    fn expand(&self, s: &Q1State) -> Result<Step<Q1State>> {
        if s.v.weight() != s.w.weight() {
            return Err(Error::InvariantViolation(format!("weights differ: {:?} vs {:?}", s.v, s.w)));
        }
        let (x, y) = match (s.v.last(), s.w.last()) {
            (Some(x), Some(y)) => (x, y),
            _ => return Ok(Step { rule: Rule::R1, children: StepChildren::None }),
        };
        let (rule, children) = match (x, y) {
            (true, true) => (Rule::R2, StepChildren::One(Q1State { v: s.v.strip_last(), w: s.w.strip_last() })),
            (false, true) => (Rule::R5, StepChildren::One(Q1State { v: s.v.strip_last(), w: s.w.recycle(true) })),
            (true, false) => (Rule::R6, StepChildren::One(Q1State { v: s.v.recycle(true), w: s.w.strip_last() })),
            (false, false) if s.v.weight() == 0 => (
                Rule::R7,
                StepChildren::One(Q1State {
                    v: BitString::ones_then_zeros(1, s.v.len() - 1),
                    w: BitString::ones_then_zeros(1, s.w.len() - 1),
                }),
            ),
            (false, false) => (
                Rule::R8,
                StepChildren::Two(
                    Q1State { v: s.v.recycle(true), w: s.w.recycle(true) },
                    Q1State { v: s.v.recycle(false), w: s.w.recycle(false) },
                ),
            ),
        };
        Ok(Step { rule, children })
    }

    fn combine(&self, s: &Q1State, rule: Rule, kids: &[&LaurentPoly]) -> Result<LaurentPoly> {
        Ok(match rule {
            Rule::R1 => one_plus_a_pow(s.v.len().max(s.w.len())),
            Rule::R2 => kids[0].mul_one_plus(Monomial::a(1)),
            Rule::R8 => kids[0] + &kids[1].shift(Monomial::t(1)),
            _ => kids[0].clone(),
        })
    }

    fn is_passthrough(&self, rule: Rule) -> bool {
        matches!(rule, Rule::R5 | Rule::R6 | Rule::R7)
    }

    fn depth_bound(&self, root: &Q1State) -> usize {
        let n = root.v.len() + root.w.len() + 1;
        n.saturating_mul(n).saturating_mul(n)
    }
}

/// `p̃(v, w)`, memoized in `memo`.
pub fn p_q1(v: &BitString, w: &BitString, memo: &mut Q1Memo) -> Result<LaurentPoly> {
    let s = Q1State::new(v.clone(), w.clone())?;
    evaluate(&Q1Recursion, &s, memo)
}

pub fn p_q1_once(v: &BitString, w: &BitString) -> Result<LaurentPoly> {
    p_q1(v, w, &mut Q1Memo::new(Retention::Roots))
}
