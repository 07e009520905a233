use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::int::Int;
use crate::ring::{LaurentPoly, Monomial, StructuredRational};

/// One term `c · A^a T^t Q^{slope·k + intercept}` of an [`AffineExponentModel`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineGenerator {
    pub a: i32,
    pub t: i32,
    pub q_slope: i64,
    pub q_intercept: i64,
    pub coeff: Int,
}

/// A family of series whose numerators over `(1-Q)^den_q (1-T)^den_t` have
/// `Q`-exponents affine in the color `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineExponentModel {
    pub generators: Vec<AffineGenerator>,
    pub den_q: u32,
    pub den_t: u32,
}

impl AffineExponentModel {
    pub fn numerator_at(&self, k: i64) -> Result<LaurentPoly> {
        let terms = self
            .generators
            .iter()
            .map(|g| {
                let q = g.q_slope * k + g.q_intercept;
                let q = i32::try_from(q).map_err(|_| Error::InvalidInput(alloc::format!("Q exponent {q} out of range")))?;
                Ok((Monomial::new(g.a, q, g.t), g.coeff.clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(LaurentPoly::from_terms(terms))
    }

    pub fn evaluate(&self, k: i64) -> Result<StructuredRational> {
        Ok(StructuredRational::new(self.numerator_at(k)?, self.den_q, self.den_t))
    }
}

impl fmt::Display for AffineExponentModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{}*A^{}*T^{}*Q^({}k{:+})", g.coeff, g.a, g.t, g.q_slope, g.q_intercept)?;
        }
        write!(f, " over (1-Q)^{} (1-T)^{}", self.den_q, self.den_t)
    }
}

/// Terms keyed by `(A-exponent, T-exponent, coefficient)`, each with its sorted `Q`-exponents.
type Buckets = BTreeMap<(i32, i32, Int), Vec<i32>>;

fn buckets(p: &LaurentPoly) -> Buckets {
    let mut out = Buckets::new();
    for (m, c) in p.terms() {
        out.entry((m.a, m.t, c.clone())).or_default().push(m.q);
    }
    for qs in out.values_mut() {
        qs.sort_unstable();
    }
    out
}

fn same_shape(x: &Buckets, y: &Buckets) -> bool {
    x.len() == y.len() && x.iter().zip(y).all(|((kx, vx), (ky, vy))| kx == ky && vx.len() == vy.len())
}

/// Fits `Q`-exponents affine in `k` to a run of samples with consecutive `k`.
///
/// Numerators are brought over `(1-Q)^{d-1}` and the common `(1-T)` power.
/// Within each `(A, T, coefficient)` bucket the `Q`-exponents are paired by
/// sorted order between two neighbouring samples, which fixes an integer slope
/// and intercept per slot. A candidate pair is accepted only if the model
/// reproduces every sample, so at least one sample is always held out.
/// Pairs are tried in order, since small `k` can merge terms that are
/// distinct for larger `k`.
///
/// Returns `Ok(None)` when no pair yields a consistent model.
pub fn detect_affine_exponents(samples: &[(usize, StructuredRational)], d: usize) -> Result<Option<AffineExponentModel>> {
    if samples.len() < 3 {
        return Err(Error::InsufficientSamples { needed: 3, got: samples.len() });
    }
    let mut sorted: Vec<&(usize, StructuredRational)> = samples.iter().collect();
    sorted.sort_by_key(|s| s.0);
    if sorted.windows(2).any(|w| w[1].0 != w[0].0 + 1) {
        return Err(Error::InvalidInput("sample colors must be consecutive".into()));
    }
    let den_q = d.saturating_sub(1) as u32;
    if let Some(s) = sorted.iter().find(|s| s.1.qpow() > den_q) {
        return Err(Error::InvalidInput(alloc::format!("k={} has (1-Q)^{} beyond (1-Q)^{den_q}", s.0, s.1.qpow())));
    }
    let den_t = sorted.iter().map(|s| s.1.tpow()).max().unwrap_or(0);
    let nums: Vec<LaurentPoly> = sorted.iter().map(|s| s.1.numerator_over(den_q, den_t)).collect();
    let shapes: Vec<Buckets> = nums.iter().map(buckets).collect();

    for i in 0..sorted.len() - 1 {
        if !same_shape(&shapes[i], &shapes[i + 1]) {
            continue;
        }
        let k0 = sorted[i].0 as i64;
        let mut generators = Vec::new();
        for ((key, q0), q1) in shapes[i].iter().zip(shapes[i + 1].values()) {
            for (&e0, &e1) in q0.iter().zip(q1) {
                let slope = (e1 - e0) as i64;
                generators.push(AffineGenerator {
                    a: key.0,
                    t: key.1,
                    q_slope: slope,
                    q_intercept: e0 as i64 - slope * k0,
                    coeff: key.2.clone(),
                });
            }
        }
        let model = AffineExponentModel { generators, den_q, den_t };
        let reproduces = sorted
            .iter()
            .zip(&nums)
            .all(|(s, num)| model.numerator_at(s.0 as i64).is_ok_and(|m| &m == num));
        if reproduces {
            return Ok(Some(model));
        }
    }
    Ok(None)
}
