//! Memoized evaluation against a plain recursive evaluation of the rules at a
//! rational point, over every state with `|v| + |w| <= 10`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use tlh_core::recursion::{p_full, BitString, FullMemo, RecState, Retention};
use tlh_core::{Perm, StructuredRational};

struct Point {
    a: BigRational,
    q: BigRational,
    t: BigRational,
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn pow(x: &BigRational, e: i64) -> BigRational {
    let mut r = BigRational::one();
    for _ in 0..e.abs() {
        r *= x;
    }
    if e < 0 {
        r.recip()
    } else {
        r
    }
}

/// Straight transcription of the rules, no caching.
fn naive(sigma: &[u16], v: &str, w: &str, p: &Point) -> BigRational {
    let l = sigma.len();
    let u = (BigRational::one() + &p.a) / ((BigRational::one() - &p.q) * (BigRational::one() - &p.t));
    if v.is_empty() || w.is_empty() {
        return pow(&u, v.len().max(w.len()) as i64);
    }
    let (vs, ws) = (&v[..v.len() - 1], &w[..w.len() - 1]);
    let perm = Perm::from_images(sigma.to_vec()).unwrap();
    match (v.ends_with('1'), w.ends_with('1')) {
        (true, true) if l == 1 => u * naive(&[], vs, ws, p),
        (true, true) => {
            let f = pow(&p.q, l as i64 - 1) + &p.a;
            let tr = perm.truncate_last().unwrap();
            let rest = naive(tr.images(), vs, ws, p);
            if sigma[l - 1] as usize == l {
                f * rest / (BigRational::one() - &p.q)
            } else {
                f * rest
            }
        }
        (false, true) => {
            let s = perm.compose(&Perm::rotation(l).inverse()).unwrap();
            naive(s.images(), vs, &format!("1{ws}"), p)
        }
        (true, false) => {
            let s = Perm::rotation(l).compose(&perm).unwrap();
            naive(s.images(), &format!("1{vs}"), ws, p)
        }
        (false, false) if l == 0 => {
            let v1 = format!("1{}", "0".repeat(v.len() - 1));
            let w1 = format!("1{}", "0".repeat(w.len() - 1));
            naive(&[1], &v1, &w1, p)
        }
        (false, false) => {
            let ext = perm.extend_front();
            let a = naive(ext.images(), &format!("1{vs}"), &format!("1{ws}"), p);
            let b = naive(sigma, &format!("0{vs}"), &format!("0{ws}"), p);
            (a + &p.t * b) * pow(&p.q, -(l as i64))
        }
    }
}

fn eval(x: &StructuredRational, p: &Point) -> BigRational {
    let mut r = x.num().eval(&p.a, &p.q, &p.t).unwrap();
    r /= pow(&(BigRational::one() - &p.q), x.qpow() as i64);
    r /= pow(&(BigRational::one() - &p.t), x.tpow() as i64);
    r
}

fn strings(len: usize) -> Vec<String> {
    (0..1u32 << len).map(|b| (0..len).map(|i| if b >> i & 1 == 1 { '1' } else { '0' }).collect()).collect()
}

fn perms(l: usize) -> Vec<Vec<u16>> {
    let mut out = vec![vec![]];
    for n in 1..=l as u16 {
        out = out
            .into_iter()
            .flat_map(|p| (0..=p.len()).map(move |i| {
                let mut q = p.clone();
                q.insert(i, n);
                q
            }))
            .collect();
    }
    out
}

#[test]
fn memoized_equals_unmemoized() {
    let point = Point { a: rat(2, 3), q: rat(3, 7), t: rat(5, 11) };
    let mut memo = FullMemo::new(Retention::All);
    let mut checked = 0usize;
    for total in 0..=10usize {
        for lv in 0..=total {
            for v in strings(lv) {
                let l = v.matches('1').count();
                for w in strings(total - lv).into_iter().filter(|w| w.matches('1').count() == l) {
                    for sigma in perms(l) {
                        let state = RecState::new(
                            Perm::from_images(sigma.clone()).unwrap(),
                            BitString::parse(&v).unwrap(),
                            BitString::parse(&w).unwrap(),
                        )
                        .unwrap();
                        let fast = p_full(&state, &mut memo).unwrap();
                        let slow = naive(&sigma, &v, &w, &point);
                        assert_eq!(eval(&fast, &point), slow, "state {state:?}");
                        checked += 1;
                    }
                }
            }
        }
    }
    // Σ_{|v|+|w|<=10} Σ_l C(|v|,l) C(|w|,l) l!
    assert_eq!(checked, 7083);
}
