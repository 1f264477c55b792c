use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A vector `sum c_k e_k` with small integer coordinates. Roots of `D_n` are
/// the vectors `±e_j ± e_i` with `i != j`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootD {
    coords: Vec<i8>,
}

impl RootD {
    /// `e_j - e_i`, 1-based.
    pub fn minus(n: usize, j: usize, i: usize) -> Self {
        let mut coords = vec![0; n];
        coords[j - 1] += 1;
        coords[i - 1] -= 1;
        Self { coords }
    }

    /// `e_j + e_i`, 1-based.
    pub fn plus(n: usize, j: usize, i: usize) -> Self {
        let mut coords = vec![0; n];
        coords[j - 1] += 1;
        coords[i - 1] += 1;
        Self { coords }
    }

    pub fn from_coords(coords: Vec<i8>) -> Self {
        Self { coords }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[i8] {
        &self.coords
    }

    /// Exactly two nonzero coordinates, both `±1`.
    pub fn is_root(&self) -> bool {
        let nonzero: Vec<i8> = self.coords.iter().copied().filter(|&c| c != 0).collect();
        nonzero.len() == 2 && nonzero.iter().all(|c| c.abs() == 1)
    }

    /// `e_j ± e_i` with `j > i`: a root whose highest nonzero coordinate is
    /// `+1`.
    pub fn is_positive(&self) -> bool {
        self.is_root() && self.coords.iter().rev().find(|&&c| c != 0) == Some(&1)
    }

    /// `(j, i, sign)` for a positive root `e_j + sign * e_i`, `j > i`.
    pub fn positive_parts(&self) -> Option<(usize, usize, i8)> {
        if !self.is_positive() {
            return None;
        }
        let mut support = self.coords.iter().enumerate().filter(|(_, &c)| c != 0);
        let (lo, &sign) = support.next()?;
        let (hi, _) = support.next()?;
        Some((hi + 1, lo + 1, sign))
    }

    pub fn add(&self, other: &RootD) -> RootD {
        RootD { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &RootD) -> RootD {
        RootD { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect() }
    }

    pub fn neg(&self) -> RootD {
        RootD { coords: self.coords.iter().map(|c| -c).collect() }
    }

    /// Parses sums of signed basis vectors such as `e3-e1`, `e2+e1` or
    /// `-e3-e1` in rank `n`.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let err = || Error::Parse(text.to_string());
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Empty);
        }
        let mut coords = vec![0i8; n];
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let (sign, tail) = match rest.as_bytes()[0] {
                b'+' => (1, &rest[1..]),
                b'-' => (-1, &rest[1..]),
                _ if rest.len() == compact.len() => (1, rest),
                _ => return Err(err()),
            };
            let tail = tail.strip_prefix('e').ok_or_else(err)?;
            let digits = tail.bytes().take_while(u8::is_ascii_digit).count();
            let k: usize = tail[..digits].parse().map_err(|_| err())?;
            if k == 0 || k > n {
                return Err(Error::ValueOutOfRange { value: k, degree: n });
            }
            coords[k - 1] += sign;
            rest = &tail[digits..];
        }
        Ok(Self { coords })
    }
}

impl fmt::Display for RootD {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &c) in self.coords.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let magnitude = if c.abs() == 1 { String::new() } else { c.abs().to_string() };
            write!(f, "{sign}{magnitude}e{}", k + 1)?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for RootD {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for RootD {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Roots, simple roots and positive roots of `D_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootSystem {
    pub rank: usize,
    pub roots: Vec<RootD>,
    pub simple: Vec<RootD>,
    /// All `e_j - e_i` ordered by `(j, i)`, then all `e_j + e_i` likewise.
    pub positive: Vec<RootD>,
}

impl RootSystem {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::RankOutOfRange { rank: n, min: 2, max: usize::MAX });
        }
        let pairs: Vec<(usize, usize)> =
            (2..=n).flat_map(|j| (1..j).map(move |i| (j, i))).collect();
        let mut positive: Vec<RootD> = pairs.iter().map(|&(j, i)| RootD::minus(n, j, i)).collect();
        positive.extend(pairs.iter().map(|&(j, i)| RootD::plus(n, j, i)));
        let mut simple: Vec<RootD> = (1..n).map(|i| RootD::minus(n, i + 1, i)).collect();
        simple.push(RootD::plus(n, 2, 1));
        let mut roots = positive.clone();
        roots.extend(positive.iter().map(RootD::neg));
        Ok(Self { rank: n, roots, simple, positive })
    }

    pub fn is_simple(&self, r: &RootD) -> bool {
        self.simple.contains(r)
    }

    pub fn positive_index(&self, r: &RootD) -> Option<usize> {
        self.positive.iter().position(|p| p == r)
    }

    /// Pairs `(a, b)` of positive roots with `b - a` simple.
    pub fn root_poset_covers(&self) -> Vec<(RootD, RootD)> {
        let mut covers = Vec::new();
        for a in &self.positive {
            for b in &self.positive {
                if self.is_simple(&b.sub(a)) {
                    covers.push((a.clone(), b.clone()));
                }
            }
        }
        covers
    }
}

/// `f(e_j ± e_i) = e_j - e_(j-1)`, except `f(e_2 + e_1) = e_2 + e_1`.
pub fn f_map(alpha: &RootD) -> Result<RootD> {
    let (j, i, sign) = alpha.positive_parts().ok_or_else(|| Error::NotPositiveRoot(alpha.to_string()))?;
    let n = alpha.rank();
    Ok(if sign == 1 && (j, i) == (2, 1) { RootD::plus(n, 2, 1) } else { RootD::minus(n, j, j - 1) })
}

/// The larger coordinate index of a simple root: `k` for `e_k - e_(k-1)`,
/// and 2 for `e_2 + e_1`.
pub fn simple_index(simple: &RootD) -> usize {
    simple.positive_parts().map(|(j, _, _)| j).expect("simple roots are positive")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: usize, s: &str) -> RootD {
        RootD::parse(n, s).unwrap()
    }

    #[test]
    fn root_counts() {
        for n in 2..=7 {
            let sys = RootSystem::new(n).unwrap();
            assert_eq!(sys.roots.len(), 2 * n * (n - 1));
            assert_eq!(sys.positive.len(), n * (n - 1));
            assert_eq!(sys.simple.len(), n);
            assert!(sys.roots.iter().all(RootD::is_root));
            assert_eq!(sys.roots.iter().filter(|x| x.is_positive()).count(), n * (n - 1));
        }
        assert!(RootSystem::new(1).is_err());
    }

    #[test]
    fn small_rank_sets() {
        let d2 = RootSystem::new(2).unwrap();
        assert_eq!(d2.simple, vec![r(2, "e2-e1"), r(2, "e2+e1")]);
        let d3 = RootSystem::new(3).unwrap();
        let expected: Vec<RootD> =
            ["e2-e1", "e3-e1", "e3-e2", "e2+e1", "e3+e1", "e3+e2"].iter().map(|s| r(3, s)).collect();
        assert_eq!(d3.positive, expected);
    }

    #[test]
    fn poset_covers() {
        let d4 = RootSystem::new(4).unwrap();
        let covers = d4.root_poset_covers();
        assert!(covers.contains(&(r(4, "e2-e1"), r(4, "e3-e1"))));
        assert!(covers.iter().all(|(a, b)| a != b));
        assert_eq!(covers.len(), 16);
        assert_eq!(RootSystem::new(3).unwrap().root_poset_covers().len(), 6);
        assert!(RootSystem::new(2).unwrap().root_poset_covers().is_empty());
    }

    #[test]
    fn f_examples() {
        assert_eq!(f_map(&r(4, "e3-e1")).unwrap(), r(4, "e3-e2"));
        assert_eq!(f_map(&r(4, "e2+e1")).unwrap(), r(4, "e2+e1"));
        assert_eq!(f_map(&r(4, "e4+e2")).unwrap(), r(4, "e4-e3"));
        assert!(matches!(f_map(&r(4, "-e4-e2")), Err(Error::NotPositiveRoot(_))));
        assert!(matches!(f_map(&r(4, "e1-e2")), Err(Error::NotPositiveRoot(_))));
    }

    #[test]
    fn text_form() {
        for s in ["e3-e1", "e2+e1", "-e3-e1", "-e3+e1"] {
            assert_eq!(r(3, s).to_string(), s);
        }
        assert_eq!(r(3, "e1-e3").to_string(), "-e3+e1");
        assert_eq!(r(3, " e3 - e1 "), r(3, "e3-e1"));
        assert!(RootD::parse(3, "e4-e1").is_err());
        assert!(RootD::parse(3, "x3").is_err());
        assert!(RootD::parse(3, "").is_err());
        assert_eq!(serde_json::to_string(&r(3, "e2+e1")).unwrap(), "\"e2+e1\"");
    }
}
