use crate::error::Result;
use crate::recursion::engine::{evaluate, MemoTable, Recurrence, Retention};
use crate::recursion::state::{expand, RecState, Rule, Step};
use crate::ring::{LaurentPoly, Monomial, StructuredRational};

/// Memo table of the permutation recursion.
pub type FullMemo = MemoTable<RecState, StructuredRational>;

/// The permutation recursion `p_σ(v, w)` over structured rationals.
#[derive(Clone, Copy, Debug, Default)]
pub struct FullRecursion;

/// `(1 + A)^m`
pub(crate) fn one_plus_a_pow(m: usize) -> LaurentPoly {
    (0..m).fold(LaurentPoly::one(), |acc, _| acc.mul_one_plus(Monomial::a(1)))
}

/// `num * (Q^e + A)`
fn times_q_pow_plus_a(num: &LaurentPoly, e: usize) -> LaurentPoly {
    num.mul_monomial_pair(Monomial::q(e as i32), Monomial::a(1))
}

impl Recurrence for FullRecursion {
    type State = RecState;
    type Value = StructuredRational;

    fn expand(&self, s: &RecState) -> Result<Step<RecState>> {
        expand(s)
    }

    fn combine(&self, s: &RecState, rule: Rule, kids: &[&StructuredRational]) -> Result<StructuredRational> {
        let l = s.weight();
        Ok(match rule {
            Rule::R1 => {
                let m = s.v.len().max(s.w.len());
                StructuredRational::new(one_plus_a_pow(m), m as u32, m as u32)
            }
            Rule::R2 => {
                let (num, q, t) = (kids[0].num(), kids[0].qpow(), kids[0].tpow());
                StructuredRational::new(num.mul_one_plus(Monomial::a(1)), q + 1, t + 1)
            }
            Rule::R3 => {
                let k = kids[0];
                StructuredRational::new(times_q_pow_plus_a(k.num(), l - 1), k.qpow() + 1, k.tpow())
            }
            Rule::R4 => {
                let k = kids[0];
                StructuredRational::new(times_q_pow_plus_a(k.num(), l - 1), k.qpow(), k.tpow())
            }
            Rule::R5 | Rule::R6 | Rule::R7 => kids[0].clone(),
            Rule::R8 => kids[0].add(&kids[1].shift(Monomial::t(1))).into_shift(Monomial::q(-(l as i32))),
        })
    }

    fn is_passthrough(&self, rule: Rule) -> bool {
        matches!(rule, Rule::R5 | Rule::R6 | Rule::R7)
    }

    fn depth_bound(&self, root: &RecState) -> usize {
        root.depth_bound()
    }
}

/// `p_σ(v, w)`, memoized in `memo`.
pub fn p_full(s: &RecState, memo: &mut FullMemo) -> Result<StructuredRational> {
    evaluate(&FullRecursion, s, memo)
}

/// `p_σ(v, w)` with a throwaway memo table.
pub fn p_full_once(s: &RecState) -> Result<StructuredRational> {
    p_full(s, &mut FullMemo::new(Retention::Roots))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::int::Int;
    use crate::recursion::bits::BitString;

    fn st(v: &str, w: &str) -> RecState {
        RecState::identity(BitString::parse(v).unwrap(), BitString::parse(w).unwrap()).unwrap()
    }

    fn u() -> StructuredRational {
        StructuredRational::new(one_plus_a_pow(1), 1, 1)
    }

    #[test]
    fn binomials() {
        assert_eq!(one_plus_a_pow(0), LaurentPoly::one());
        let one_a = &LaurentPoly::one() + &LaurentPoly::var_a();
        assert_eq!(one_plus_a_pow(5), one_a.pow(5));
    }

    #[test]
    fn empty_state_is_one() {
        assert_eq!(p_full_once(&st("", "")).unwrap(), StructuredRational::one());
    }

    #[test]
    fn single_crossing() {
        assert_eq!(p_full_once(&st("1", "1")).unwrap(), u());
    }

    #[test]
    fn trefoil_state() {
        // Q^{-1} (1+A)(Q+A+T) / ((1-Q)(1-T))
        let qat = LaurentPoly::from_terms([
            (Monomial::q(1), Int::ONE),
            (Monomial::a(1), Int::ONE),
            (Monomial::t(1), Int::ONE),
        ]);
        let num = (&one_plus_a_pow(1) * &qat).shift(Monomial::q(-1));
        let expected = StructuredRational::new(num, 1, 1);
        assert_eq!(p_full_once(&st("10", "100")).unwrap(), expected);
    }

    #[test]
    fn retention_modes_agree() {
        let s = st("110", "11000");
        let mut all = FullMemo::new(Retention::All);
        let mut roots = FullMemo::new(Retention::Roots);
        let a = p_full(&s, &mut all).unwrap();
        let b = p_full(&s, &mut roots).unwrap();
        assert_eq!(a, b);
        assert_eq!(roots.len(), 1);
        assert!(all.len() > 1);
        // Second lookup is a pure hit.
        let before = all.stats();
        assert_eq!(p_full(&s, &mut all).unwrap(), a);
        assert_eq!(all.stats().hits, before.hits + 1);
        assert_eq!(all.stats().misses, before.misses);
    }
}
