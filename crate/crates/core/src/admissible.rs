//! Smoothness tests, the sets `C(w)` and `C_T(w)`, admissibility, wedges and
//! the restriction used by the recursive order construction.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::bruhat::{reflection_leq_with, RankMatrix};
use crate::error::{Error, Result};
use crate::perm::{Permutation, Transposition};

/// A member of `C^{2,3}`: a reflection `T(i,j)` or one of the 3-cycles
/// `R(i,j,k) = T(i,j) T(j,k)` and `L(i,j,k) = T(j,k) T(i,j)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element23 {
    Reflection { i: usize, j: usize },
    RCycle { i: usize, j: usize, k: usize },
    LCycle { i: usize, j: usize, k: usize },
}

impl Element23 {
    pub const fn t(i: usize, j: usize) -> Self {
        Element23::Reflection { i, j }
    }

    pub const fn r(i: usize, j: usize, k: usize) -> Self {
        Element23::RCycle { i, j, k }
    }

    pub const fn l(i: usize, j: usize, k: usize) -> Self {
        Element23::LCycle { i, j, k }
    }

    fn indices_valid(&self) -> bool {
        match *self {
            Element23::Reflection { i, j } => 1 <= i && i < j,
            Element23::RCycle { i, j, k } | Element23::LCycle { i, j, k } => {
                1 <= i && i < j && j < k
            }
        }
    }

    /// Largest index mentioned.
    pub fn top(&self) -> usize {
        match *self {
            Element23::Reflection { j, .. } => j,
            Element23::RCycle { k, .. } | Element23::LCycle { k, .. } => k,
        }
    }

    pub fn as_transposition(&self) -> Option<Transposition> {
        match *self {
            Element23::Reflection { i, j } => Some(Transposition::of(i, j)),
            _ => None,
        }
    }

    pub fn realize(&self, n: usize) -> Result<Permutation> {
        if !self.indices_valid() || self.top() > n {
            let (i, j) = match *self {
                Element23::Reflection { i, j } => (i, j),
                Element23::RCycle { i, k, .. } | Element23::LCycle { i, k, .. } => (i, k),
            };
            return Err(Error::InvalidIndices { i, j, degree: n });
        }
        let e = Permutation::identity(n);
        Ok(match *self {
            Element23::Reflection { i, j } => e.swap_positions(Transposition::of(i, j)),
            Element23::RCycle { i, j, k } => e
                .swap_positions(Transposition::of(i, j))
                .swap_positions(Transposition::of(j, k)),
            Element23::LCycle { i, j, k } => e
                .swap_positions(Transposition::of(j, k))
                .swap_positions(Transposition::of(i, j)),
        })
    }

    pub fn inverse(&self) -> Self {
        match *self {
            Element23::Reflection { .. } => *self,
            Element23::RCycle { i, j, k } => Element23::LCycle { i, j, k },
            Element23::LCycle { i, j, k } => Element23::RCycle { i, j, k },
        }
    }

    /// Every member of `C^{2,3}` in degree `n`, sorted.
    pub fn universe(n: usize) -> Vec<Element23> {
        let mut all: Vec<Element23> = Transposition::all(n).map(Element23::from).collect();
        for i in 1..=n {
            for j in i + 1..=n {
                for k in j + 1..=n {
                    all.push(Element23::r(i, j, k));
                    all.push(Element23::l(i, j, k));
                }
            }
        }
        all.sort();
        all
    }

    /// Parses `T(i,j)`, `R(i,j,k)` or `L(i,j,k)`.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let err = || Error::Parse(text.to_string());
        let mut chars = text.chars();
        let kind = chars.next().ok_or(Error::Empty)?;
        let body = chars.as_str().strip_prefix('(').and_then(|s| s.strip_suffix(')')).ok_or_else(err)?;
        let idx: Vec<usize> =
            body.split(',').map(|s| s.trim().parse().map_err(|_| err())).collect::<Result<_>>()?;
        let element = match (kind, idx.as_slice()) {
            ('T', &[i, j]) => Element23::t(i, j),
            ('R', &[i, j, k]) => Element23::r(i, j, k),
            ('L', &[i, j, k]) => Element23::l(i, j, k),
            _ => return Err(err()),
        };
        if !element.indices_valid() {
            return Err(err());
        }
        Ok(element)
    }
}

impl From<Transposition> for Element23 {
    fn from(t: Transposition) -> Self {
        Element23::t(t.i, t.j)
    }
}

impl fmt::Display for Element23 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Element23::Reflection { i, j } => write!(f, "T({i},{j})"),
            Element23::RCycle { i, j, k } => write!(f, "R({i},{j},{k})"),
            Element23::LCycle { i, j, k } => write!(f, "L({i},{j},{k})"),
        }
    }
}

impl fmt::Debug for Element23 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Element23 {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// A subset of `C^{2,3}` in a fixed degree. Nothing here assumes the set is
/// admissible; see [`is_admissible`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdmissibleSet {
    degree: usize,
    members: BTreeSet<Element23>,
}

impl AdmissibleSet {
    pub fn new(degree: usize, members: impl IntoIterator<Item = Element23>) -> Result<Self> {
        let members: BTreeSet<Element23> = members.into_iter().collect();
        if let Some(bad) = members.iter().find(|m| !m.indices_valid() || m.top() > degree) {
            return Err(Error::Parse(format!("{bad} does not fit degree {degree}")));
        }
        Ok(Self { degree, members })
    }

    pub fn empty(degree: usize) -> Self {
        Self { degree, members: BTreeSet::new() }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, e: Element23) -> bool {
        self.members.contains(&e)
    }

    pub fn has_t(&self, i: usize, j: usize) -> bool {
        self.contains(Element23::t(i, j))
    }

    pub fn has_r(&self, i: usize, j: usize, k: usize) -> bool {
        self.contains(Element23::r(i, j, k))
    }

    pub fn has_l(&self, i: usize, j: usize, k: usize) -> bool {
        self.contains(Element23::l(i, j, k))
    }

    pub fn iter(&self) -> impl Iterator<Item = Element23> + '_ {
        self.members.iter().copied()
    }

    /// `A_T`, sorted lexicographically.
    pub fn reflections(&self) -> Vec<Transposition> {
        self.members.iter().filter_map(Element23::as_transposition).collect()
    }

    /// `A^-1`: every member inverted, so `R` and `L` trade places.
    pub fn inverse(&self) -> Self {
        Self { degree: self.degree, members: self.members.iter().map(Element23::inverse).collect() }
    }
}

pub fn is_smooth_pattern(w: &Permutation) -> bool {
    !w.contains_3412() && !w.contains_4231()
}

pub fn is_smooth_length(w: &Permutation) -> bool {
    w.length() == c_t(w).len()
}

/// Reflections below `w`, lexicographically sorted.
pub fn c_t(w: &Permutation) -> Vec<Transposition> {
    let mu_w = w.mu();
    let mu_inv = w.inverse().mu();
    Transposition::all(w.degree())
        .filter(|&t| reflection_leq_with(t, mu_w.values(), mu_inv.values()))
        .collect()
}

/// `C(w)`: all members of `C^{2,3}` below `w`.
pub fn c23(w: &Permutation) -> AdmissibleSet {
    let n = w.degree();
    let rank_w = RankMatrix::new(w);
    let members = Element23::universe(n).into_iter().filter(|e| {
        let realized = e.realize(n).expect("universe members fit the degree");
        RankMatrix::new(&realized).dominated_by(&rank_w)
    });
    AdmissibleSet { degree: n, members: members.collect() }
}

/// All smooth permutations of degree `n` in lexicographic order.
pub fn smooth_permutations(n: usize) -> Vec<Permutation> {
    Permutation::all(n).filter(is_smooth_pattern).collect()
}

/// First admissibility axiom found to fail, with its witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom", rename_all = "kebab-case")]
pub enum AdmissibilityViolation {
    /// `below <= member` in Bruhat order but `below` is absent.
    DownwardClosure { member: Element23, below: Element23 },
    /// `R(i,j,l)` and `L(i,k,l)` present without `T(i,l)`.
    RlClosure { r: Element23, l: Element23, missing: Element23 },
    /// `T(i,j)` and `T(j,k)` present with neither `R(i,j,k)` nor `L(i,j,k)`.
    CycleMissing { i: usize, j: usize, k: usize },
}

impl fmt::Display for AdmissibilityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::DownwardClosure { member, below } => {
                write!(f, "not downward closed: {below} <= {member} is missing")
            }
            Self::RlClosure { r, l, missing } => write!(f, "{r} and {l} present without {missing}"),
            Self::CycleMissing { i, j, k } => {
                write!(f, "T({i},{j}) and T({j},{k}) present without R({i},{j},{k}) or L({i},{j},{k})")
            }
        }
    }
}

pub fn is_admissible(a: &AdmissibleSet) -> bool {
    admissibility_violation(a).is_none()
}

pub fn admissibility_violation(a: &AdmissibleSet) -> Option<AdmissibilityViolation> {
    let n = a.degree;
    let universe: Vec<(Element23, RankMatrix)> = Element23::universe(n)
        .into_iter()
        .map(|e| {
            let rank = RankMatrix::new(&e.realize(n).expect("universe members fit the degree"));
            (e, rank)
        })
        .collect();
    for member in a.iter() {
        let rank_member = RankMatrix::new(&member.realize(n).expect("members fit the degree"));
        for (below, rank_below) in &universe {
            if !a.contains(*below) && rank_below.dominated_by(&rank_member) {
                return Some(AdmissibilityViolation::DownwardClosure { member, below: *below });
            }
        }
    }
    for i in 1..=n {
        for l in i + 2..=n {
            if a.has_t(i, l) {
                continue;
            }
            for j in i + 1..l {
                if !a.has_r(i, j, l) {
                    continue;
                }
                if let Some(k) = (i + 1..l).find(|&k| a.has_l(i, k, l)) {
                    return Some(AdmissibilityViolation::RlClosure {
                        r: Element23::r(i, j, l),
                        l: Element23::l(i, k, l),
                        missing: Element23::t(i, l),
                    });
                }
            }
        }
    }
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                if a.has_t(i, j) && a.has_t(j, k) && !a.has_r(i, j, k) && !a.has_l(i, j, k) {
                    return Some(AdmissibilityViolation::CycleMissing { i, j, k });
                }
            }
        }
    }
    None
}

/// A wedge `T(i,j)` of an admissible set.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct Wedge {
    pub i: usize,
    pub j: usize,
}

impl Wedge {
    pub fn transposition(&self) -> Transposition {
        Transposition::of(self.i, self.j)
    }
}

impl fmt::Display for Wedge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T({},{})", self.i, self.j)
    }
}

/// All `T(i,j) in A` with `T(i-1,i)` and `R(i,j,j+1)` absent, sorted.
/// Conditions naming an index outside `[n]` hold vacuously. Meaningful for
/// admissible `A` only; admissibility is not rechecked here.
pub fn find_wedges(a: &AdmissibleSet) -> Vec<Wedge> {
    let n = a.degree;
    a.reflections()
        .into_iter()
        .filter(|t| t.i == 1 || !a.has_t(t.i - 1, t.i))
        .filter(|t| t.j == n || !a.has_r(t.i, t.j, t.j + 1))
        .map(|t| Wedge { i: t.i, j: t.j })
        .collect()
}

/// Window form of the wedge condition for `C(w)`: `w` fixes `[i-1]` setwise,
/// `w(i) >= j` and `w^-1(i) = j`.
pub fn wedge_criterion(w: &Permutation, i: usize, j: usize) -> bool {
    let n = w.degree();
    if !(1 <= i && i < j && j <= n) {
        return false;
    }
    (1..i).all(|a| w.apply(a) < i) && w.apply(i) >= j && w.apply(j) == i
}

/// `A°`: remove every `T(i,r)`, `R(i,r,l)` and `L(i,r,l)` with first index
/// the wedge's `i`.
pub fn restrict(a: &AdmissibleSet, wedge: Wedge) -> Result<AdmissibleSet> {
    if !find_wedges(a).contains(&wedge) {
        return Err(Error::NotAWedge { i: wedge.i, j: wedge.j });
    }
    let first_index = |e: &Element23| match *e {
        Element23::Reflection { i, .. }
        | Element23::RCycle { i, .. }
        | Element23::LCycle { i, .. } => i,
    };
    let members = a.members.iter().copied().filter(|e| first_index(e) != wedge.i).collect();
    Ok(AdmissibleSet { degree: a.degree, members })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        Permutation::parse(s).unwrap()
    }

    fn ts(pairs: &[(usize, usize)]) -> Vec<Transposition> {
        pairs.iter().map(|&(i, j)| Transposition::of(i, j)).collect()
    }

    #[test]
    fn element_realizations() {
        assert_eq!(Element23::r(1, 2, 3).realize(3).unwrap(), p("231"));
        assert_eq!(Element23::l(1, 2, 3).realize(3).unwrap(), p("312"));
        assert_eq!(Element23::r(1, 3, 4).realize(4).unwrap(), p("3241"));
        assert!(Element23::r(1, 3, 4).realize(3).is_err());
        assert!(Element23::r(2, 2, 4).realize(4).is_err());
        assert_eq!(Element23::universe(3).len(), 5);
        assert_eq!(Element23::universe(6).len(), 15 + 40);
    }

    #[test]
    fn element_text() {
        for text in ["T(1,2)", "R(1,3,4)", "L(2,3,5)"] {
            assert_eq!(Element23::parse(text).unwrap().to_string(), text);
        }
        assert!(Element23::parse("R(3,2,4)").is_err());
        assert!(Element23::parse("X(1,2)").is_err());
        assert!(Element23::parse("T(1,2,3)").is_err());
    }

    #[test]
    fn smoothness_examples() {
        assert!(!is_smooth_pattern(&p("35142")));
        assert!(is_smooth_pattern(&Permutation::identity(5)));
        assert!(!is_smooth_pattern(&p("4231")));
        assert!(!is_smooth_length(&p("35142")));
        assert!(is_smooth_length(&Permutation::identity(3)));
        assert!(is_smooth_length(&p("321")));
    }

    #[test]
    fn c_t_examples() {
        let listed_35142 = ts(&[(1, 2), (1, 3), (2, 3), (2, 4), (3, 4), (2, 5), (4, 5), (3, 5)]);
        let mut expected = listed_35142.clone();
        expected.sort();
        assert_eq!(c_t(&p("35142")), expected);
        assert!(c_t(&Permutation::identity(4)).is_empty());
        assert_eq!(c_t(&p("321")), ts(&[(1, 2), (1, 3), (2, 3)]));
    }

    #[test]
    fn c23_examples() {
        assert!(c23(&Permutation::identity(4)).is_empty());
        let full = c23(&p("321"));
        assert_eq!(full.len(), 5);
        assert!(full.has_r(1, 2, 3) && full.has_l(1, 2, 3));
        let listed_35142 = c23(&p("35142"));
        assert!(listed_35142.len() >= 8);
        assert_eq!(listed_35142.reflections(), c_t(&p("35142")));
    }

    #[test]
    fn admissibility_examples() {
        assert!(is_admissible(&AdmissibleSet::empty(4)));
        let two = AdmissibleSet::new(3, [Element23::t(1, 2), Element23::t(2, 3)]).unwrap();
        assert_eq!(
            admissibility_violation(&two),
            Some(AdmissibilityViolation::CycleMissing { i: 1, j: 2, k: 3 })
        );
        let not_closed = AdmissibleSet::new(3, [Element23::t(1, 3)]).unwrap();
        assert!(matches!(
            admissibility_violation(&not_closed),
            Some(AdmissibilityViolation::DownwardClosure { .. })
        ));
        // both cycles of S_3 without the reflection they force
        let rl = AdmissibleSet::new(
            3,
            [Element23::t(1, 2), Element23::t(2, 3), Element23::r(1, 2, 3), Element23::l(1, 2, 3)],
        )
        .unwrap();
        assert_eq!(
            admissibility_violation(&rl),
            Some(AdmissibilityViolation::RlClosure {
                r: Element23::r(1, 2, 3),
                l: Element23::l(1, 2, 3),
                missing: Element23::t(1, 3),
            })
        );
        for w in Permutation::all(4).filter(is_smooth_pattern) {
            assert!(is_admissible(&c23(&w)), "{w}");
        }
    }

    #[test]
    fn wedge_examples() {
        assert_eq!(find_wedges(&c23(&p("321"))), vec![Wedge { i: 1, j: 3 }]);
        assert!(find_wedges(&AdmissibleSet::empty(3)).is_empty());
        assert!(find_wedges(&c23(&p("3214"))).contains(&Wedge { i: 1, j: 3 }));
        assert!(wedge_criterion(&p("321"), 1, 3));
        assert!(!wedge_criterion(&Permutation::identity(3), 1, 2));
        assert!(wedge_criterion(&p("3214"), 1, 3));
    }

    #[test]
    fn restrict_examples() {
        let a = c23(&p("321"));
        let a0 = restrict(&a, Wedge { i: 1, j: 3 }).unwrap();
        assert_eq!(a0.reflections(), ts(&[(2, 3)]));
        assert_eq!(a0.len(), 1);
        assert_eq!(restrict(&a, Wedge { i: 1, j: 2 }), Err(Error::NotAWedge { i: 1, j: 2 }));
        let only_one = AdmissibleSet::new(2, [Element23::t(1, 2)]).unwrap();
        assert!(restrict(&only_one, Wedge { i: 1, j: 2 }).unwrap().is_empty());
    }

    #[test]
    fn inverse_set_swaps_cycles() {
        let w = p("2431");
        assert_eq!(c23(&w).inverse(), c23(&w.inverse()));
    }

    #[test]
    fn set_serializes_sorted() {
        let a = c23(&p("321"));
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(
            json,
            r#"{"degree":3,"members":["T(1,2)","T(1,3)","T(2,3)","R(1,2,3)","L(1,2,3)"]}"#
        );
    }
}
