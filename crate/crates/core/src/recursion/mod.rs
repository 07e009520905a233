//! The two memoized recursion engines: the permutation recursion `p_σ(v, w)`
//! over structured rationals and its permutation-free `Q = 1` shadow `p̃(v, w)`.

mod bits;
mod engine;
mod full;
mod q1;
mod state;
pub mod trace;

pub use bits::BitString;
pub use engine::{evaluate, MemoStats, MemoTable, Recurrence, Retention};
pub use full::{p_full, p_full_once, FullMemo, FullRecursion};
pub use q1::{p_q1, p_q1_once, Q1Memo, Q1Recursion, Q1State};
pub use state::{expand, rule_select, RecState, Rule, Step, StepChildren};
