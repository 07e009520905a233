use crate::int::Int;
use crate::ring::{LaurentPoly, Monomial, StructuredRational};

fn mono(a: i32, q: i32, t: i32) -> LaurentPoly {
    LaurentPoly::monomial(1, Monomial::new(a, q, t))
}

fn a_plus_t() -> LaurentPoly {
    &LaurentPoly::var_a() + &LaurentPoly::var_t()
}

/// `(T^n + (1 + A) Σ_{j<n} T^j)^k`, the `Q = 1` series of `T(2, 2n+1)` colored `k`.
pub fn closed_form_t2odd(n: usize, k: usize) -> LaurentPoly {
    let one_a = &LaurentPoly::one() + &LaurentPoly::var_a();
    let geometric = LaurentPoly::from_terms((0..n as i32).map(|j| (Monomial::t(j), Int::ONE)));
    let base = &mono(0, 0, n as i32) + &(&one_a * &geometric);
    base.pow(k as u32)
}

/// Reduced series of `T(2, 2n)` colored `(k, 1)`:
///
/// `(Q^{nk}(1-T) + Σ_{j=1}^{n-1} Q^{jk} T^{n-j-1} (1-T)(A+T) + T^{n-1}(A+T)) / (1-Q)`.
pub fn closed_form_t2even(n: usize, k: usize) -> StructuredRational {
    let (n, k) = (n as i32, k as i32);
    let one_t = LaurentPoly::one_minus_t();
    let at = a_plus_t();
    let mut num = &mono(0, n * k, 0) * &one_t;
    let block = &one_t * &at;
    for j in 1..n {
        num = &num + &block.shift(Monomial::new(0, j * k, n - j - 1));
    }
    num = &num + &at.shift(Monomial::t(n - 1));
    StructuredRational::new(num, 1, 0)
}

/// Reduced series of `T(3, 3)` colored `(k, 1, 1)`, a quadratic in `x = Q^k` over `(1-Q)^2`:
///
/// `x² Q(1-T)² + x (Q(T+A)(1-T)² + (A+T)(1-T²)) + QT(A+T)(1-T) + (A+T²)(A+T)`.
pub fn closed_form_t33(k: usize) -> StructuredRational {
    let k = k as i32;
    let one_t = LaurentPoly::one_minus_t();
    let one_t2 = &one_t * &one_t;
    let at = a_plus_t();
    let x2 = one_t2.shift(Monomial::q(2 * k + 1));
    let x1 = &(&at * &one_t2).shift(Monomial::q(1)) + &(&at * &LaurentPoly::one().mul_one_minus(Monomial::t(2)));
    let x0 = &(&at * &one_t).shift(Monomial::new(0, 1, 1)) + &(&(&LaurentPoly::var_a() + &mono(0, 0, 2)) * &at);
    let num = &(&x2 + &x1.shift(Monomial::q(k))) + &x0;
    StructuredRational::new(num, 2, 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &[(i64, i32, i32, i32)]) -> LaurentPoly {
        LaurentPoly::from_terms(s.iter().map(|&(c, a, q, t)| (Monomial::new(a, q, t), Int::from(c))))
    }

    #[test]
    fn t2odd_examples() {
        assert_eq!(closed_form_t2odd(1, 1), p(&[(1, 0, 0, 0), (1, 1, 0, 0), (1, 0, 0, 1)]));
        let expected = &mono(0, 0, 2) + &(&p(&[(1, 0, 0, 0), (1, 1, 0, 0)]) * &p(&[(1, 0, 0, 0), (1, 0, 0, 1)]));
        assert_eq!(closed_form_t2odd(2, 1), expected);
        assert_eq!(closed_form_t2odd(1, 2), closed_form_t2odd(1, 1).pow(2));
    }

    #[test]
    fn t2even_examples() {
        // (Q(1-T) + A + T) / (1-Q)
        let n11 = p(&[(1, 0, 1, 0), (-1, 0, 1, 1), (1, 1, 0, 0), (1, 0, 0, 1)]);
        assert_eq!(closed_form_t2even(1, 1), StructuredRational::new(n11, 1, 0));
        // (Q^4(1-T) + Q^2(A+T)(1-T) + T(A+T)) / (1-Q)
        let one_t = LaurentPoly::one_minus_t();
        let n22 = &(&one_t.shift(Monomial::q(4)) + &(&a_plus_t() * &one_t).shift(Monomial::q(2)))
            + &a_plus_t().shift(Monomial::t(1));
        assert_eq!(closed_form_t2even(2, 2), StructuredRational::new(n22, 1, 0));
        // (Q^3(1-T) + Q^2(1-T)(A+T) + QT(1-T)(A+T) + T^2(A+T)) / (1-Q)
        let block = &a_plus_t() * &one_t;
        let n31 = &(&(&one_t.shift(Monomial::q(3)) + &block.shift(Monomial::q(2))) + &block.shift(Monomial::new(0, 1, 1)))
            + &a_plus_t().shift(Monomial::t(2));
        assert_eq!(closed_form_t2even(3, 1), StructuredRational::new(n31, 1, 0));
    }

    #[test]
    fn t33_at_three() {
        let one_t = LaurentPoly::one_minus_t();
        let one_t2 = &one_t * &one_t;
        let at = a_plus_t();
        let one_minus_t2 = LaurentPoly::one().mul_one_minus(Monomial::t(2));
        let num = &(&(&one_t2.shift(Monomial::q(7))
            + &(&(&at * &one_t2).shift(Monomial::q(4)) + &(&at * &one_minus_t2).shift(Monomial::q(3))))
            + &(&at * &one_t).shift(Monomial::new(0, 1, 1)))
            + &(&p(&[(1, 1, 0, 0), (1, 0, 0, 2)]) * &at);
        assert_eq!(closed_form_t33(3), StructuredRational::new(num, 2, 0));
    }
}
