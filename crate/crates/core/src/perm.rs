//! Permutations of `[n]` in one-line notation.
//!
//! Positions and values are 1-based throughout. Composition is
//! `(u * v)(x) = u(v(x))`, so multiplying `x` on the right by the
//! transposition `T(a,b)` swaps the entries in positions `a` and `b` of the
//! window, while multiplying on the left swaps the values `a` and `b`.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest degree accepted by [`Permutation::parse`].
pub const DEFAULT_MAX_DEGREE: usize = 12;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    window: Vec<u8>,
}

impl Permutation {
    /// Builds a permutation from its one-line notation, checking that the
    /// window is a bijection on `[n]`.
    pub fn new(window: Vec<usize>) -> Result<Self> {
        let n = window.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        if n > u8::MAX as usize {
            return Err(Error::DegreeTooLarge { degree: n, max: u8::MAX as usize });
        }
        let mut seen = vec![false; n + 1];
        for &v in &window {
            if v == 0 || v > n {
                return Err(Error::ValueOutOfRange { value: v, degree: n });
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::Repeated(v));
            }
        }
        Ok(Self { window: window.into_iter().map(|v| v as u8).collect() })
    }

    pub fn identity(n: usize) -> Self {
        assert!(n >= 1 && n <= u8::MAX as usize, "degree {n} unsupported");
        Self { window: (1..=n as u8).collect() }
    }

    /// Parses either a compact digit string (degree at most 9) or a
    /// comma-separated list, with degree capped at [`DEFAULT_MAX_DEGREE`].
    pub fn parse(text: &str) -> Result<Self> {
        Self::parse_with_limit(text, DEFAULT_MAX_DEGREE)
    }

    pub fn parse_with_limit(text: &str, max_degree: usize) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::Empty);
        }
        let window: Vec<usize> = if text.contains(',') {
            text.split(',')
                .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Parse(text.to_string())))
                .collect::<Result<_>>()?
        } else if text.bytes().all(|b| b.is_ascii_digit()) {
            text.bytes().map(|b| (b - b'0') as usize).collect()
        } else {
            return Err(Error::Parse(text.to_string()));
        };
        if window.len() > max_degree {
            return Err(Error::DegreeTooLarge { degree: window.len(), max: max_degree });
        }
        Self::new(window)
    }

    pub fn degree(&self) -> usize {
        self.window.len()
    }

    /// `w(i)` for a 1-based position `i`.
    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.window[i - 1] as usize
    }

    pub fn window(&self) -> Vec<usize> {
        self.window.iter().map(|&v| v as usize).collect()
    }

    pub(crate) fn raw(&self) -> &[u8] {
        &self.window
    }

    pub fn is_identity(&self) -> bool {
        self.window.iter().enumerate().all(|(k, &v)| v as usize == k + 1)
    }

    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch { left: self.degree(), right: other.degree() });
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Permutation) -> Permutation {
        let window = other.window.iter().map(|&x| self.window[x as usize - 1]).collect();
        Permutation { window }
    }

    pub fn inverse(&self) -> Permutation {
        let mut window = vec![0u8; self.degree()];
        for (pos, &v) in self.window.iter().enumerate() {
            window[v as usize - 1] = pos as u8 + 1;
        }
        Permutation { window }
    }

    /// Right multiplication by `T(i,j)`: swaps positions `i` and `j`.
    pub fn swap_positions(&self, t: Transposition) -> Permutation {
        let mut window = self.window.clone();
        window.swap(t.i - 1, t.j - 1);
        Permutation { window }
    }

    /// Left multiplication by `T(i,j)`: swaps values `i` and `j`.
    pub fn swap_values(&self, t: Transposition) -> Permutation {
        let window = self
            .window
            .iter()
            .map(|&v| match v as usize {
                x if x == t.i => t.j as u8,
                x if x == t.j => t.i as u8,
                _ => v,
            })
            .collect();
        Permutation { window }
    }

    /// Coxeter length, i.e. the number of inversions.
    pub fn length(&self) -> usize {
        let w = &self.window;
        let mut count = 0;
        for a in 0..w.len() {
            for b in a + 1..w.len() {
                if w[a] > w[b] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Running maximum of the window.
    pub fn mu(&self) -> MuTable {
        let mut max = 0;
        let values = self
            .window
            .iter()
            .map(|&v| {
                max = max.max(v as usize);
                max
            })
            .collect();
        MuTable { values }
    }

    /// True iff some subsequence of the window is order-isomorphic to
    /// `pattern`. Brute force over position subsets; see
    /// [`Permutation::contains_3412`] and [`Permutation::contains_4231`] for
    /// the fast paths.
    pub fn contains_pattern(&self, pattern: &Permutation) -> bool {
        self.find_pattern(pattern).is_some()
    }

    /// Lexicographically first occurrence of `pattern`, as 1-based positions.
    pub fn find_pattern(&self, pattern: &Permutation) -> Option<Vec<usize>> {
        let k = pattern.degree();
        let n = self.degree();
        if k > n {
            return None;
        }
        let mut positions: Vec<usize> = (0..k).collect();
        loop {
            let matches = (0..k).all(|a| {
                (a + 1..k).all(|b| {
                    (self.window[positions[a]] < self.window[positions[b]])
                        == (pattern.window[a] < pattern.window[b])
                })
            });
            if matches {
                return Some(positions.iter().map(|p| p + 1).collect());
            }
            // next k-subset of 0..n in lexicographic order
            let mut idx = k;
            loop {
                if idx == 0 {
                    return None;
                }
                idx -= 1;
                if positions[idx] < n - k + idx {
                    break;
                }
            }
            positions[idx] += 1;
            for t in idx + 1..k {
                positions[t] = positions[t - 1] + 1;
            }
        }
    }

    /// Positions `a<b<c<d` with `w(c) < w(d) < w(a) < w(b)`.
    pub fn contains_3412(&self) -> bool {
        let w = &self.window;
        let n = w.len();
        for b in 1..n {
            for c in b + 1..n {
                if w[c] >= w[b] {
                    continue;
                }
                // best "3": the largest value strictly between w(c) and w(b) left of b
                let Some(three) = w[..b].iter().copied().filter(|&x| x > w[c] && x < w[b]).max()
                else {
                    continue;
                };
                if w[c + 1..].iter().any(|&x| x > w[c] && x < three) {
                    return true;
                }
            }
        }
        false
    }

    /// Positions `a<b<c<d` with `w(d) < w(b) < w(c) < w(a)`.
    pub fn contains_4231(&self) -> bool {
        let w = &self.window;
        let n = w.len();
        if n < 4 {
            return false;
        }
        let mut prefix_max = vec![0u8; n];
        let mut suffix_min = vec![u8::MAX; n];
        for k in 1..n {
            prefix_max[k] = prefix_max[k - 1].max(w[k - 1]);
        }
        for k in (0..n - 1).rev() {
            suffix_min[k] = suffix_min[k + 1].min(w[k + 1]);
        }
        (1..n).any(|b| {
            (b + 1..n - 1).any(|c| w[b] < w[c] && prefix_max[b] > w[c] && suffix_min[c] < w[b])
        })
    }

    /// All permutations of degree `n` in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = Permutation> {
        let total = factorial(n);
        (0..total).map(move |r| Permutation::unrank(n, r))
    }

    /// The permutation of lexicographic rank `rank` among `S_n`.
    pub fn unrank(n: usize, mut rank: u64) -> Permutation {
        let mut remaining: Vec<u8> = (1..=n as u8).collect();
        let mut window = Vec::with_capacity(n);
        for k in (0..n).rev() {
            let f = factorial(k);
            let idx = (rank / f) as usize;
            rank %= f;
            window.push(remaining.remove(idx));
        }
        Permutation { window }
    }

    pub fn rank(&self) -> u64 {
        let n = self.degree();
        let mut r = 0;
        for a in 0..n {
            let smaller_after = self.window[a + 1..].iter().filter(|&&x| x < self.window[a]).count();
            r += smaller_after as u64 * factorial(n - 1 - a);
        }
        r
    }
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() <= 9 {
            for &v in &self.window {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.window.iter().map(|v| v.to_string()).collect();
            f.write_str(&parts.join(","))
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl FromStr for Permutation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Permutation::parse(s)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// The reflection `T(i,j)` swapping `i < j`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transposition {
    pub i: usize,
    pub j: usize,
}

impl Transposition {
    pub fn new(i: usize, j: usize) -> Result<Self> {
        if i == 0 || i >= j {
            return Err(Error::InvalidIndices { i, j, degree: j.max(i) });
        }
        Ok(Self { i, j })
    }

    pub(crate) const fn of(i: usize, j: usize) -> Self {
        Self { i, j }
    }

    pub fn as_permutation(&self, n: usize) -> Result<Permutation> {
        if self.j > n {
            return Err(Error::InvalidIndices { i: self.i, j: self.j, degree: n });
        }
        Ok(Permutation::identity(n).swap_positions(*self))
    }

    pub fn moves(&self, x: usize) -> bool {
        x == self.i || x == self.j
    }

    pub fn commutes_with(&self, other: &Transposition) -> bool {
        self == other || !(self.moves(other.i) || self.moves(other.j))
    }

    /// All transpositions of `S_n`, ordered lexicographically by `(i,j)`.
    pub fn all(n: usize) -> impl Iterator<Item = Transposition> {
        (1..=n).flat_map(move |i| (i + 1..=n).map(move |j| Transposition { i, j }))
    }

    /// Parses `T(i,j)`.
    pub fn parse(text: &str) -> Result<Self> {
        let err = || Error::Parse(text.to_string());
        let body = text
            .trim()
            .strip_prefix("T(")
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(err)?;
        let (a, b) = body.split_once(',').ok_or_else(err)?;
        let i = a.trim().parse().map_err(|_| err())?;
        let j = b.trim().parse().map_err(|_| err())?;
        Transposition::new(i, j)
    }
}

impl fmt::Display for Transposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T({},{})", self.i, self.j)
    }
}

impl fmt::Debug for Transposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Transposition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// `values[i-1] = max(w(1), ..., w(i))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuTable {
    values: Vec<usize>,
}

impl MuTable {
    /// `mu(i)` for a 1-based position.
    pub fn at(&self, i: usize) -> usize {
        self.values[i - 1]
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        Permutation::parse(s).unwrap()
    }

    #[test]
    fn parse_formats() {
        assert_eq!(p("35142").window(), vec![3, 5, 1, 4, 2]);
        assert_eq!(p("1"), Permutation::identity(1));
        let big = p("3,5,1,4,2,10,6,7,8,9");
        assert_eq!(big.degree(), 10);
        assert_eq!(big.to_string(), "3,5,1,4,2,10,6,7,8,9");
        assert_eq!(p("3, 1 ,2"), p("312"));
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert_eq!(Permutation::parse(""), Err(Error::Empty));
        assert_eq!(Permutation::parse("112"), Err(Error::Repeated(1)));
        assert!(matches!(Permutation::parse("14"), Err(Error::ValueOutOfRange { value: 4, .. })));
        assert!(matches!(Permutation::parse("102"), Err(Error::ValueOutOfRange { value: 0, .. })));
        assert!(matches!(Permutation::parse("1,x"), Err(Error::Parse(_))));
        assert!(matches!(Permutation::parse("abc"), Err(Error::Parse(_))));
        let thirteen = (1..=13).map(|v| v.to_string()).collect::<Vec<_>>().join(",");
        assert!(matches!(
            Permutation::parse(&thirteen),
            Err(Error::DegreeTooLarge { degree: 13, max: 12 })
        ));
        assert!(Permutation::parse_with_limit(&thirteen, 13).is_ok());
    }

    #[test]
    fn compose_convention() {
        assert_eq!(p("213").compose(&p("132")).unwrap(), p("231"));
        let w = p("35142");
        assert_eq!(Permutation::identity(5).compose(&w).unwrap(), w);
        let t13 = Transposition::of(1, 3).as_permutation(3).unwrap();
        assert_eq!(p("213").compose(&t13).unwrap(), p("312"));
        assert_eq!(p("213").swap_positions(Transposition::of(1, 3)), p("312"));
        assert_eq!(t13.compose(&p("213")).unwrap(), p("231"));
        assert_eq!(p("213").swap_values(Transposition::of(1, 3)), p("231"));
        assert_eq!(
            p("12").compose(&p("123")),
            Err(Error::DegreeMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(p("35142").inverse(), p("35142"));
        assert_eq!(Permutation::identity(4).inverse(), Permutation::identity(4));
        assert_eq!(p("231").inverse(), p("312"));
    }

    #[test]
    fn length_examples() {
        assert_eq!(p("35142").length(), 6);
        assert_eq!(Permutation::identity(6).length(), 0);
        assert_eq!(p("321").length(), 3);
    }

    #[test]
    fn mu_examples() {
        assert_eq!(p("35142").mu().values(), &[3, 5, 5, 5, 5]);
        assert_eq!(Permutation::identity(4).mu().values(), &[1, 2, 3, 4]);
        assert_eq!(p("321").mu().values(), &[3, 3, 3]);
    }

    #[test]
    fn pattern_examples() {
        assert!(p("35142").contains_pattern(&p("3412")));
        assert!(p("35142").contains_3412());
        assert_eq!(p("35142").find_pattern(&p("3412")), Some(vec![1, 2, 3, 5]));
        assert!(!Permutation::identity(5).contains_pattern(&p("21")));
        assert!(p("4231").contains_pattern(&p("4231")));
        assert!(p("4231").contains_4231());
        assert!(!p("123").contains_pattern(&p("1234")));
    }

    #[test]
    fn rank_unrank() {
        for n in 1..=5 {
            for (r, w) in Permutation::all(n).enumerate() {
                assert_eq!(w.rank(), r as u64);
            }
        }
        assert_eq!(Permutation::unrank(3, 5), p("321"));
    }

    #[test]
    fn transposition_text() {
        let t = Transposition::parse("T(2, 5)").unwrap();
        assert_eq!(t, Transposition::of(2, 5));
        assert_eq!(t.to_string(), "T(2,5)");
        assert!(Transposition::parse("T(3,3)").is_err());
        assert!(Transposition::parse("(1,2)").is_err());
        assert!(Transposition::of(1, 2).commutes_with(&Transposition::of(3, 4)));
        assert!(!Transposition::of(1, 2).commutes_with(&Transposition::of(2, 4)));
    }
}
