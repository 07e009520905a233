//! Permutations of `{1..l}` in one-line notation, with the three operators the
//! recursion needs: point deletion, the forward `l`-cycle, and front extension.

use core::fmt;

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// A bijection of `{1..l}`, stored as its images `(σ(1), …, σ(l))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u16>,
}

impl Perm {
    pub fn identity(l: usize) -> Self {
        Perm { images: (1..=l as u16).collect() }
    }

    /// Validates one-line notation.
    pub fn from_images(images: Vec<u16>) -> Result<Self> {
        let l = images.len();
        let mut seen = alloc::vec![false; l + 1];
        for &x in &images {
            let x = x as usize;
            if x == 0 || x > l || seen[x] {
                return Err(Error::NotAPermutation(format!("{images:?}")));
            }
            seen[x] = true;
        }
        Ok(Perm { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u16] {
        &self.images
    }

    /// `σ(i)`, 1-indexed.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| x as usize == i + 1)
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Perm) -> Result<Perm> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(Perm { images: other.images.iter().map(|&j| self.images[j as usize - 1]).collect() })
    }

    /// Point deletion of `l`: splice `l` out of its cycle and drop it.
    pub fn truncate_last(&self) -> Result<Perm> {
        let l = self.degree();
        if l == 0 {
            return Err(Error::EmptyPermutation);
        }
        let mut images = self.images.clone();
        let last = images.pop().expect("nonempty");
        if last as usize != l {
            let pre = images.iter().position(|&x| x as usize == l).expect("l has a preimage");
            images[pre] = last;
        }
        Ok(Perm { images })
    }

    /// The forward `l`-cycle `i ↦ i + 1`, `l ↦ 1`.
    pub fn rotation(l: usize) -> Perm {
        assert!(l >= 1, "rotation needs positive degree");
        Perm { images: (2..=l as u16).chain(core::iter::once(1)).collect() }
    }

    /// The backward `l`-cycle `i ↦ i - 1`, `1 ↦ l`.
    pub fn rotation_inverse(l: usize) -> Perm {
        assert!(l >= 1, "rotation needs positive degree");
        Perm { images: core::iter::once(l as u16).chain(1..l as u16).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = alloc::vec![0u16; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize - 1] = i as u16 + 1;
        }
        Perm { images }
    }

    /// `e₁ ⊔ σ`: fixes 1 and acts as `σ` shifted up by one on `{2..l+1}`.
    pub fn extend_front(&self) -> Perm {
        let mut images = Vec::with_capacity(self.degree() + 1);
        images.push(1);
        images.extend(self.images.iter().map(|&x| x + 1));
        Perm { images }
    }

    pub fn fixes_last(&self) -> Result<bool> {
        match self.images.last() {
            None => Err(Error::EmptyPermutation),
            Some(&x) => Ok(x as usize == self.degree()),
        }
    }

    /// Parses `[i1,i2,...]`.
    pub fn parse_one_line(s: &str) -> Result<Perm> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::NotAPermutation(s.into()))?;
        if inner.trim().is_empty() {
            return Ok(Perm::identity(0));
        }
        let images = inner
            .split(',')
            .map(|x| x.trim().parse::<u16>().map_err(|_| Error::NotAPermutation(s.into())))
            .collect::<Result<Vec<_>>>()?;
        Perm::from_images(images)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, x) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;
    use proptest::prelude::*;

    fn p(v: &[u16]) -> Perm {
        Perm::from_images(v.to_vec()).unwrap()
    }

    #[test]
    fn identity_examples() {
        assert_eq!(Perm::identity(0).images(), &[] as &[u16]);
        assert_eq!(Perm::identity(1).images(), &[1]);
        assert_eq!(Perm::identity(3).images(), &[1, 2, 3]);
    }

    #[test]
    fn compose_examples() {
        let s = p(&[3, 1, 2]);
        assert_eq!(Perm::identity(3).compose(&s).unwrap(), s);
        assert_eq!(p(&[2, 1]).compose(&p(&[2, 1])).unwrap(), p(&[1, 2]));
        assert_eq!(p(&[2, 3, 1]).compose(&p(&[2, 3, 1])).unwrap(), p(&[3, 1, 2]));
        assert_eq!(p(&[2, 1]).compose(&p(&[1])), Err(Error::DegreeMismatch(2, 1)));
    }

    #[test]
    fn truncate_examples() {
        assert_eq!(Perm::identity(4).truncate_last().unwrap(), Perm::identity(3));
        assert_eq!(p(&[2, 1]).truncate_last().unwrap(), p(&[1]));
        assert_eq!(p(&[3, 1, 2]).truncate_last().unwrap(), p(&[2, 1]));
        assert_eq!(Perm::identity(0).truncate_last(), Err(Error::EmptyPermutation));
    }

    #[test]
    fn rotation_examples() {
        assert_eq!(Perm::rotation(1), p(&[1]));
        assert_eq!(Perm::rotation(2), p(&[2, 1]));
        assert_eq!(Perm::rotation(3), p(&[2, 3, 1]));
        assert_eq!(Perm::rotation_inverse(3), p(&[3, 1, 2]));
        assert_eq!(Perm::rotation(4).inverse(), Perm::rotation_inverse(4));
        assert_eq!(p(&[3, 1, 2, 4]).inverse(), p(&[2, 3, 1, 4]));
    }

    #[test]
    fn extend_front_examples() {
        assert_eq!(Perm::identity(0).extend_front(), p(&[1]));
        assert_eq!(p(&[1]).extend_front(), p(&[1, 2]));
        assert_eq!(p(&[2, 1]).extend_front(), p(&[1, 3, 2]));
    }

    #[test]
    fn fixes_last_examples() {
        assert!(Perm::identity(3).fixes_last().unwrap());
        assert!(!p(&[2, 1]).fixes_last().unwrap());
        assert!(!p(&[1, 3, 2]).fixes_last().unwrap());
        assert_eq!(Perm::identity(0).fixes_last(), Err(Error::EmptyPermutation));
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(Perm::from_images(vec![1, 1]).is_err());
        assert!(Perm::from_images(vec![0]).is_err());
        assert!(Perm::from_images(vec![3, 1]).is_err());
    }

    #[test]
    fn one_line_text_round_trip() {
        let s = p(&[3, 1, 2]);
        assert_eq!(s.to_string(), "[3,1,2]");
        assert_eq!(Perm::parse_one_line("[3,1,2]").unwrap(), s);
        assert_eq!(Perm::parse_one_line("[]").unwrap(), Perm::identity(0));
    }

    fn any_perm() -> impl Strategy<Value = Perm> {
        (1usize..8).prop_flat_map(|l| {
            Just((1..=l as u16).collect::<Vec<_>>()).prop_shuffle().prop_map(|v| Perm::from_images(v).unwrap())
        })
    }

    proptest! {
        #[test]
        fn truncate_is_closed(s in any_perm()) {
            let t = s.truncate_last().unwrap();
            prop_assert!(Perm::from_images(t.images().to_vec()).is_ok());
            prop_assert_eq!(t.degree(), s.degree() - 1);
        }

        #[test]
        fn truncate_undoes_extension_at_end(s in any_perm()) {
            let mut images = s.images().to_vec();
            images.push(s.degree() as u16 + 1);
            let ext = Perm::from_images(images).unwrap();
            prop_assert!(ext.fixes_last().unwrap());
            prop_assert_eq!(ext.truncate_last().unwrap(), s);
        }

        #[test]
        fn rotation_has_exact_order(l in 1usize..10) {
            let r = Perm::rotation(l);
            let mut acc = Perm::identity(l);
            for i in 1..=l {
                acc = acc.compose(&r).unwrap();
                prop_assert_eq!(acc.is_identity(), i == l);
            }
        }

        #[test]
        fn inverse_cancels(s in any_perm()) {
            prop_assert!(s.compose(&s.inverse()).unwrap().is_identity());
            prop_assert!(s.inverse().compose(&s).unwrap().is_identity());
        }

        #[test]
        fn extend_front_then_truncate_front_point(s in any_perm()) {
            let e = s.extend_front();
            prop_assert_eq!(e.apply(1), 1);
            for i in 1..=s.degree() {
                prop_assert_eq!(e.apply(i + 1), s.apply(i) + 1);
            }
        }
    }
}
