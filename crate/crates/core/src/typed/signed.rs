use std::fmt;

use serde::{Serialize, Serializer};

use super::root::RootD;
use crate::error::{Error, Result};

/// An element of `D_n` as a signed permutation: `w(e_k) = ±e_|w(k)|` with an
/// even number of negative entries.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPermutation {
    window: Vec<i8>,
}

impl SignedPermutation {
    pub fn new(window: Vec<i64>) -> Result<Self> {
        let n = window.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        if n > i8::MAX as usize {
            return Err(Error::DegreeTooLarge { degree: n, max: i8::MAX as usize });
        }
        let mut seen = vec![false; n + 1];
        for &v in &window {
            let a = v.unsigned_abs() as usize;
            if a == 0 || a > n {
                return Err(Error::ValueOutOfRange { value: a, degree: n });
            }
            if std::mem::replace(&mut seen[a], true) {
                return Err(Error::Repeated(a));
            }
        }
        if window.iter().filter(|&&v| v < 0).count() % 2 != 0 {
            return Err(Error::NotInGroup(format!("{window:?} has an odd number of sign changes")));
        }
        Ok(Self { window: window.into_iter().map(|v| v as i8).collect() })
    }

    pub fn identity(n: usize) -> Self {
        Self { window: (1..=n as i8).collect() }
    }

    /// Comma-separated signed integers, e.g. `-2,-1,3,4`.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::Empty);
        }
        let window = text
            .split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|_| Error::Parse(text.to_string())))
            .collect::<Result<Vec<_>>>()?;
        Self::new(window)
    }

    pub fn rank(&self) -> usize {
        self.window.len()
    }

    pub fn window(&self) -> &[i8] {
        &self.window
    }

    /// `w(k)` for `k` in `±[n]`.
    #[inline]
    pub fn apply(&self, k: i8) -> i8 {
        let v = self.window[k.unsigned_abs() as usize - 1];
        if k < 0 {
            -v
        } else {
            v
        }
    }

    /// `(u * v)(k) = u(v(k))`.
    pub fn compose(&self, other: &SignedPermutation) -> SignedPermutation {
        assert_eq!(self.rank(), other.rank());
        Self { window: other.window.iter().map(|&k| self.apply(k)).collect() }
    }

    pub fn inverse(&self) -> SignedPermutation {
        let mut window = vec![0i8; self.rank()];
        for (pos, &v) in self.window.iter().enumerate() {
            let p = pos as i8 + 1;
            window[v.unsigned_abs() as usize - 1] = if v < 0 { -p } else { p };
        }
        Self { window }
    }

    pub fn is_identity(&self) -> bool {
        self.window.iter().enumerate().all(|(k, &v)| v as usize == k + 1)
    }

    /// Linear action on a vector of the ambient space.
    pub fn act(&self, root: &RootD) -> RootD {
        let mut coords = vec![0i8; self.rank()];
        for (k, &c) in root.coords().iter().enumerate() {
            let image = self.window[k];
            let target = image.unsigned_abs() as usize - 1;
            coords[target] += if image < 0 { -c } else { c };
        }
        RootD::from_coords(coords)
    }

    /// The reflection `t_alpha` for a root `alpha`; `t_alpha = t_(-alpha)`.
    pub fn reflection(alpha: &RootD) -> Result<SignedPermutation> {
        let positive = if alpha.is_positive() { alpha.clone() } else { alpha.neg() };
        let (j, i, sign) =
            positive.positive_parts().ok_or_else(|| Error::NotPositiveRoot(alpha.to_string()))?;
        let mut window: Vec<i8> = (1..=alpha.rank() as i8).collect();
        if sign == 1 {
            window[i - 1] = -(j as i8);
            window[j - 1] = -(i as i8);
        } else {
            window[i - 1] = j as i8;
            window[j - 1] = i as i8;
        }
        Ok(Self { window })
    }

    /// Whether the element permutes `[n]` without sign changes, i.e. lies in
    /// the copy of `S_n` generated by the `e_(k+1) - e_k` reflections.
    pub fn is_unsigned(&self) -> bool {
        self.window.iter().all(|&v| v > 0)
    }

    /// `inv(w) + #{i < j : w(i) + w(j) < 0}`.
    pub fn length_by_inversions(&self) -> usize {
        let w = &self.window;
        let mut count = 0;
        for a in 0..w.len() {
            for b in a + 1..w.len() {
                count += usize::from(w[a] > w[b]) + usize::from(w[a] as i16 + (w[b] as i16) < 0);
            }
        }
        count
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.window.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl fmt::Debug for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SignedPermutation({self})")
    }
}

impl Serialize for SignedPermutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::typed::root::RootSystem;

    fn sp(s: &str) -> SignedPermutation {
        SignedPermutation::parse(s).unwrap()
    }

    #[test]
    fn reflection_windows() {
        let t = SignedPermutation::reflection(&RootD::minus(2, 2, 1)).unwrap();
        assert_eq!(t, sp("2,1"));
        let t = SignedPermutation::reflection(&RootD::plus(4, 2, 1)).unwrap();
        assert_eq!(t, sp("-2,-1,3,4"));
        assert_eq!(SignedPermutation::identity(4).compose(&t), t);
        let t = SignedPermutation::reflection(&RootD::plus(4, 4, 2)).unwrap();
        assert_eq!(t, sp("1,-4,3,-2"));
    }

    #[test]
    fn reflections_are_involutions_negating_their_root() {
        let sys = RootSystem::new(4).unwrap();
        for alpha in &sys.positive {
            let t = SignedPermutation::reflection(alpha).unwrap();
            assert!(t.compose(&t).is_identity());
            assert_eq!(t.act(alpha), alpha.neg());
            assert_eq!(t.window().iter().filter(|&&v| v < 0).count() % 2, 0);
            assert_eq!(SignedPermutation::reflection(&alpha.neg()).unwrap(), t);
        }
    }

    #[test]
    fn parse_rejects_non_elements() {
        assert!(SignedPermutation::parse("-1,2").is_err());
        assert!(SignedPermutation::parse("1,1").is_err());
        assert!(SignedPermutation::parse("1,3").is_err());
        assert!(SignedPermutation::parse("").is_err());
        assert!(SignedPermutation::parse("a,b").is_err());
    }

    #[test]
    fn inverse_and_action() {
        let w = sp("-3,1,-2,4");
        assert!(w.compose(&w.inverse()).is_identity());
        let e31 = RootD::minus(4, 3, 1);
        // w(e3 - e1) = w(e3) - w(e1) = -e2 + e3
        assert_eq!(w.act(&e31), RootD::minus(4, 3, 2));
    }
}
