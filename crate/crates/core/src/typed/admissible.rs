use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use super::group::WeylGroupD;
use super::root::{f_map, simple_index, RootD};
use crate::constraints::{ConstraintSystem, OrderConstraint};
use crate::error::{Error, Result};

/// How two simple roots compare in the second admissibility condition.
///
/// The index orders key simple roots by their larger coordinate index (`k`
/// for `e_k - e_(k-1)`, 2 for `e_2 + e_1`); the two index-2 simple roots are
/// incomparable, and no pair summing to a root ever asks for that
/// comparison. `Explicit` lists every simple root once, smallest first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub enum SimpleRootOrder {
    #[default]
    IndexAscending,
    IndexDescending,
    /// `(j, i, sign)` of each simple root `e_j + sign e_i`.
    Explicit(Vec<(usize, usize, i8)>),
}

impl SimpleRootOrder {
    /// An explicit order from simple roots listed smallest first.
    pub fn explicit(roots: &[RootD]) -> Result<Self> {
        let mut parts = Vec::with_capacity(roots.len());
        for r in roots {
            let p = r.positive_parts().ok_or_else(|| Error::NotPositiveRoot(r.to_string()))?;
            let simple = matches!(p, (j, i, -1) if i + 1 == j) || p == (2, 1, 1);
            if !simple {
                return Err(Error::Config(format!("{r} is not a simple root")));
            }
            if parts.contains(&p) {
                return Err(Error::Repeated(p.0));
            }
            parts.push(p);
        }
        Ok(SimpleRootOrder::Explicit(parts))
    }

    /// `Some(Less)` when `x` precedes `y`; `None` when the order does not
    /// compare them.
    pub fn compare(&self, x: &RootD, y: &RootD) -> Option<Ordering> {
        if x == y {
            return Some(Ordering::Equal);
        }
        match self {
            SimpleRootOrder::Explicit(parts) => {
                let position = |r: &RootD| {
                    let p = r.positive_parts()?;
                    parts.iter().position(|&q| q == p)
                };
                Some(position(x)?.cmp(&position(y)?))
            }
            index => {
                let ord = simple_index(x).cmp(&simple_index(y));
                match ord {
                    Ordering::Equal => None,
                    o if *index == SimpleRootOrder::IndexAscending => Some(o),
                    o => Some(o.reverse()),
                }
            }
        }
    }

    /// Errors unless an explicit order lists exactly the simple roots of
    /// `D_n`.
    pub fn check_rank(&self, n: usize) -> Result<()> {
        let SimpleRootOrder::Explicit(parts) = self else { return Ok(()) };
        let mut expected: Vec<(usize, usize, i8)> = (2..=n).map(|j| (j, j - 1, -1)).collect();
        expected.push((2, 1, 1));
        let mut given = parts.clone();
        given.sort();
        expected.sort();
        if given != expected {
            return Err(Error::Config(format!("{self} does not list the {n} simple roots of D{n}")));
        }
        Ok(())
    }
}

impl fmt::Display for SimpleRootOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimpleRootOrder::IndexAscending => f.write_str("index-ascending"),
            SimpleRootOrder::IndexDescending => f.write_str("index-descending"),
            SimpleRootOrder::Explicit(parts) => {
                let names: Vec<String> = parts
                    .iter()
                    .map(|&(j, i, sign)| format!("e{j}{}e{i}", if sign < 0 { '-' } else { '+' }))
                    .collect();
                f.write_str(&names.join("<"))
            }
        }
    }
}

impl FromStr for SimpleRootOrder {
    type Err = Error;

    /// `index-ascending`, `index-descending`, or roots joined by `<` such
    /// as `e2-e1<e3-e2<e2+e1<e4-e3`.
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "index-ascending" => Ok(SimpleRootOrder::IndexAscending),
            "index-descending" => Ok(SimpleRootOrder::IndexDescending),
            list if list.contains('e') => {
                let width = list.split(|c: char| !c.is_ascii_digit()).filter_map(|d| d.parse().ok()).max();
                let width = width.ok_or_else(|| Error::Parse(s.to_string()))?;
                let roots = list.split('<').map(|r| RootD::parse(width, r)).collect::<Result<Vec<_>>>()?;
                Self::explicit(&roots)
            }
            _ => Err(Error::Parse(s.to_string())),
        }
    }
}

impl Serialize for SimpleRootOrder {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// A member of `C^{2,3}` in type `D`: `t_alpha`, or `t_alpha t_beta` with
/// `alpha`, `beta` and `alpha + beta` positive roots.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ElementD {
    Reflection(RootD),
    Product(RootD, RootD),
}

impl fmt::Display for ElementD {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementD::Reflection(a) => write!(f, "t({a})"),
            ElementD::Product(a, b) => write!(f, "t({a})t({b})"),
        }
    }
}

impl fmt::Debug for ElementD {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for ElementD {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdmissibleSetD {
    rank: usize,
    members: BTreeSet<ElementD>,
}

impl AdmissibleSetD {
    pub fn new(rank: usize, members: impl IntoIterator<Item = ElementD>) -> Result<Self> {
        let members: BTreeSet<ElementD> = members.into_iter().collect();
        for m in &members {
            let roots: Vec<&RootD> = match m {
                ElementD::Reflection(a) => vec![a],
                ElementD::Product(a, b) => vec![a, b],
            };
            if roots.iter().any(|r| r.rank() != rank || !r.is_positive()) {
                return Err(Error::NotPositiveRoot(m.to_string()));
            }
            if let ElementD::Product(a, b) = m {
                if !a.add(b).is_positive() {
                    return Err(Error::NotPositiveRoot(a.add(b).to_string()));
                }
            }
        }
        Ok(Self { rank, members })
    }

    pub fn empty(rank: usize) -> Self {
        Self { rank, members: BTreeSet::new() }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, e: &ElementD) -> bool {
        self.members.contains(e)
    }

    pub fn has_reflection(&self, a: &RootD) -> bool {
        self.members.contains(&ElementD::Reflection(a.clone()))
    }

    pub fn has_product(&self, a: &RootD, b: &RootD) -> bool {
        self.members.contains(&ElementD::Product(a.clone(), b.clone()))
    }

    pub fn iter(&self) -> impl Iterator<Item = &ElementD> {
        self.members.iter()
    }

    /// Roots of the reflections in the set, sorted.
    pub fn reflections(&self) -> Vec<RootD> {
        self.members
            .iter()
            .filter_map(|m| match m {
                ElementD::Reflection(a) => Some(a.clone()),
                ElementD::Product(..) => None,
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "condition", rename_all = "kebab-case")]
pub enum AdmissibilityViolationD {
    DownwardClosure { member: ElementD, below: ElementD },
    /// `t_a t_b` and `t_b' t_a'` present, `a + b = a' + b'`, without the
    /// reflection of the sum.
    SumClosure { first: ElementD, second: ElementD, missing: ElementD },
    /// `t_a`, `t_b` present with `a + b` a root but neither product present.
    ProductMissing { alpha: RootD, beta: RootD },
}

impl fmt::Display for AdmissibilityViolationD {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::DownwardClosure { member, below } => {
                write!(f, "not downward closed: {below} <= {member} is missing")
            }
            Self::SumClosure { first, second, missing } => {
                write!(f, "{first} and {second} present without {missing}")
            }
            Self::ProductMissing { alpha, beta } => {
                write!(f, "t({alpha}), t({beta}) present without either product")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompatibilityViolationD {
    pub alpha: RootD,
    pub beta: RootD,
    /// `t_(alpha+beta)` is present but not between `t_alpha` and `t_beta`.
    pub betweenness: bool,
}

/// Positive-root indices `alpha < beta` whose sum is the positive root
/// `sum`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct RootSum {
    alpha: usize,
    beta: usize,
    sum: usize,
}

/// Type `D_n` context: the group, `C^{2,3}` realized as group elements, and
/// the simple-root order used by admissibility.
#[derive(Clone, Debug)]
pub struct TypeD {
    group: WeylGroupD,
    simple_order: SimpleRootOrder,
    universe: Vec<(ElementD, usize)>,
    sums: Vec<RootSum>,
}

impl TypeD {
    pub fn new(n: usize, simple_order: SimpleRootOrder) -> Result<Self> {
        simple_order.check_rank(n)?;
        Ok(Self::from_group(WeylGroupD::new(n)?, simple_order))
    }

    /// Panics if an explicit `simple_order` does not fit the rank.
    pub fn from_group(group: WeylGroupD, simple_order: SimpleRootOrder) -> Self {
        simple_order.check_rank(group.rank()).expect("simple-root order fits the rank");
        let positive = group.roots().positive.clone();
        let mut sums = Vec::new();
        for a in 0..positive.len() {
            for b in a + 1..positive.len() {
                if let Some(sum) = group.roots().positive_index(&positive[a].add(&positive[b])) {
                    sums.push(RootSum { alpha: a, beta: b, sum });
                }
            }
        }
        let mut universe: Vec<(ElementD, usize)> = positive
            .iter()
            .enumerate()
            .map(|(k, a)| (ElementD::Reflection(a.clone()), group.reflection(k)))
            .collect();
        for s in &sums {
            let (ta, tb) = (group.reflection(s.alpha), group.reflection(s.beta));
            let (a, b) = (&positive[s.alpha], &positive[s.beta]);
            universe.push((ElementD::Product(a.clone(), b.clone()), group.multiply(ta, tb)));
            universe.push((ElementD::Product(b.clone(), a.clone()), group.multiply(tb, ta)));
        }
        universe.sort();
        Self { group, simple_order, universe, sums }
    }

    pub fn group(&self) -> &WeylGroupD {
        &self.group
    }

    pub fn simple_order(&self) -> &SimpleRootOrder {
        &self.simple_order
    }

    fn positive(&self, k: usize) -> &RootD {
        &self.group.roots().positive[k]
    }

    /// Every member of `C^{2,3}`, sorted.
    pub fn universe(&self) -> impl Iterator<Item = &ElementD> {
        self.universe.iter().map(|(e, _)| e)
    }

    /// Group element realizing a member of `C^{2,3}`.
    pub fn realize(&self, e: &ElementD) -> Result<usize> {
        self.universe
            .binary_search_by(|(x, _)| x.cmp(e))
            .map(|k| self.universe[k].1)
            .map_err(|_| Error::NotInGroup(e.to_string()))
    }

    /// `C(w)`: members of `C^{2,3}` Bruhat-below the element `w`.
    pub fn c23(&self, w: usize) -> AdmissibleSetD {
        let members =
            self.universe.iter().filter(|(_, x)| self.group.leq(*x, w)).map(|(e, _)| e.clone());
        AdmissibleSetD { rank: self.group.rank(), members: members.collect() }
    }

    pub fn is_admissible(&self, a: &AdmissibleSetD) -> bool {
        self.admissibility_violation(a).0.is_none()
    }

    /// First violated condition, and the number of simple-root comparisons
    /// the order could not decide.
    pub fn admissibility_violation(&self, a: &AdmissibleSetD) -> (Option<AdmissibilityViolationD>, usize) {
        for member in a.iter() {
            let top = self.realize(member).expect("members lie in C^{2,3}");
            for (below, x) in &self.universe {
                if self.group.leq(*x, top) && !a.contains(below) {
                    let v = AdmissibilityViolationD::DownwardClosure {
                        member: member.clone(),
                        below: below.clone(),
                    };
                    return (Some(v), 0);
                }
            }
        }

        let mut incomparable = 0;
        let mut by_sum: HashMap<usize, Vec<(usize, usize)>> = HashMap::new();
        for s in &self.sums {
            by_sum.entry(s.sum).or_default().push((s.alpha, s.beta));
        }
        let mut sums: Vec<_> = by_sum.into_iter().collect();
        sums.sort();
        for (gamma, pairs) in sums {
            let gamma = self.positive(gamma);
            if a.has_reflection(gamma) {
                continue;
            }
            // ordered pairs (x, y), x + y = gamma, with f(y) before f(x)
            let mut descending = Vec::new();
            for &(p, q) in &pairs {
                for (x, y) in [(p, q), (q, p)] {
                    let (fx, fy) = (self.f(x), self.f(y));
                    match self.simple_order.compare(&fy, &fx) {
                        Some(Ordering::Less) => descending.push((x, y)),
                        Some(_) => {}
                        None => incomparable += 1,
                    }
                }
            }
            let first = descending
                .iter()
                .find(|&&(x, y)| a.has_product(self.positive(x), self.positive(y)));
            let second = descending
                .iter()
                .find(|&&(x, y)| a.has_product(self.positive(y), self.positive(x)));
            if let (Some(&(x, y)), Some(&(x2, y2))) = (first, second) {
                let v = AdmissibilityViolationD::SumClosure {
                    first: ElementD::Product(self.positive(x).clone(), self.positive(y).clone()),
                    second: ElementD::Product(self.positive(y2).clone(), self.positive(x2).clone()),
                    missing: ElementD::Reflection(gamma.clone()),
                };
                return (Some(v), incomparable);
            }
        }

        for s in &self.sums {
            let (x, y) = (self.positive(s.alpha), self.positive(s.beta));
            if a.has_reflection(x) && a.has_reflection(y) && !a.has_product(x, y) && !a.has_product(y, x) {
                let v = AdmissibilityViolationD::ProductMissing { alpha: x.clone(), beta: y.clone() };
                return (Some(v), incomparable);
            }
        }
        (None, incomparable)
    }

    fn f(&self, k: usize) -> RootD {
        f_map(self.positive(k)).expect("positive root")
    }

    fn check_same_reflections(&self, order: &[RootD], a: &AdmissibleSetD) -> Result<()> {
        let mut sorted = order.to_vec();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != order.len() || sorted != a.reflections() {
            return Err(Error::SetMismatch(format!("{order:?} vs {:?}", a.reflections())));
        }
        Ok(())
    }

    pub fn is_compatible(&self, order: &[RootD], a: &AdmissibleSetD) -> Result<bool> {
        Ok(self.compatibility_violation(order, a)?.is_none())
    }

    /// Checks both compatibility conditions for every pair of reflections in
    /// the order whose roots sum to a root.
    pub fn compatibility_violation(
        &self,
        order: &[RootD],
        a: &AdmissibleSetD,
    ) -> Result<Option<CompatibilityViolationD>> {
        self.check_same_reflections(order, a)?;
        let position: HashMap<&RootD, usize> = order.iter().enumerate().map(|(p, r)| (r, p)).collect();
        for s in &self.sums {
            let (x, y, g) = (self.positive(s.alpha), self.positive(s.beta), self.positive(s.sum));
            let (Some(&px), Some(&py)) = (position.get(x), position.get(y)) else { continue };
            let violation = |betweenness| {
                Some(CompatibilityViolationD { alpha: x.clone(), beta: y.clone(), betweenness })
            };
            match position.get(g) {
                Some(&pg) => {
                    if !((px < pg && pg < py) || (py < pg && pg < px)) {
                        return Ok(violation(true));
                    }
                }
                None => {
                    if a.has_product(x, y) != (px < py) || a.has_product(y, x) != (py < px) {
                        return Ok(violation(false));
                    }
                }
            }
        }
        Ok(None)
    }

    /// Compatibility conditions of `A` as constraints over the indices of
    /// `A.reflections()`.
    pub fn constraint_system(&self, a: &AdmissibleSetD) -> (Vec<RootD>, ConstraintSystem) {
        let reflections = a.reflections();
        let index: HashMap<&RootD, usize> = reflections.iter().enumerate().map(|(k, r)| (r, k)).collect();
        let mut constraints = Vec::new();
        for s in &self.sums {
            let (x, y, g) = (self.positive(s.alpha), self.positive(s.beta), self.positive(s.sum));
            let (Some(&ix), Some(&iy)) = (index.get(x), index.get(y)) else { continue };
            match index.get(g) {
                Some(&ig) => constraints.push(OrderConstraint::Between { ends: [ix, iy], middle: ig }),
                None => {
                    let before = |first, second| OrderConstraint::Before { first, second };
                    constraints.push(if a.has_product(x, y) { before(ix, iy) } else { before(iy, ix) });
                    constraints.push(if a.has_product(y, x) { before(iy, ix) } else { before(ix, iy) });
                }
            }
        }
        let system = ConstraintSystem::new(reflections.len(), constraints);
        (reflections, system)
    }

    /// Group element `t_1 t_2 ... t_k`.
    pub fn product(&self, order: &[RootD]) -> Result<usize> {
        order.iter().try_fold(self.group.identity(), |acc, r| {
            Ok(self.group.multiply(acc, self.group.reflection_of(r)?))
        })
    }
}
