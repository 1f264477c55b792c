//! Compatible orders on the reflections of an admissible set: checking,
//! the recursive wedge construction, verification of the product identity
//! and of both saturated chains, enumeration, elementary moves and the move
//! graph.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt::{self, Write as _};
use std::ops::ControlFlow;

use serde::Serialize;

use crate::admissible::{c23, c_t, find_wedges, is_smooth_pattern, restrict, AdmissibleSet, Wedge};
use crate::bruhat::BruhatChain;
use crate::constraints::{ConstraintSystem, OrderConstraint};
use crate::error::{Error, Result};
use crate::perm::{Permutation, Transposition};

/// Largest reflection count for which full enumeration is attempted.
pub const DEFAULT_ENUMERATION_CAP: usize = 10;

/// A sequence of distinct reflections of `S_n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ReflectionOrder {
    degree: usize,
    sequence: Vec<Transposition>,
}

impl ReflectionOrder {
    pub fn new(degree: usize, sequence: Vec<Transposition>) -> Result<Self> {
        let mut seen = HashSet::new();
        for t in &sequence {
            if t.j > degree {
                return Err(Error::InvalidIndices { i: t.i, j: t.j, degree });
            }
            if !seen.insert(*t) {
                return Err(Error::SetMismatch(format!("{t} repeated")));
            }
        }
        Ok(Self { degree, sequence })
    }

    pub fn empty(degree: usize) -> Self {
        Self { degree, sequence: Vec::new() }
    }

    /// Reads the `.order` format: one `T(i,j)` per line; blank lines and
    /// lines starting with `#` are skipped.
    pub fn parse(degree: usize, text: &str) -> Result<Self> {
        let sequence = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(Transposition::parse)
            .collect::<Result<Vec<_>>>()?;
        Self::new(degree, sequence)
    }

    pub fn to_order_file(&self) -> String {
        self.sequence.iter().map(|t| format!("{t}\n")).collect()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn sequence(&self) -> &[Transposition] {
        &self.sequence
    }

    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }

    pub fn reversed(&self) -> Self {
        Self { degree: self.degree, sequence: self.sequence.iter().rev().copied().collect() }
    }

    /// `t1 t2 ... tk`.
    pub fn product(&self) -> Permutation {
        self.sequence
            .iter()
            .fold(Permutation::identity(self.degree), |acc, &t| acc.swap_positions(t))
    }

    pub fn prefix_chain(&self) -> BruhatChain {
        BruhatChain::from_prefix_products(self.degree, &self.sequence)
    }

    fn sorted_elements(&self) -> Vec<Transposition> {
        let mut sorted = self.sequence.clone();
        sorted.sort();
        sorted
    }
}

impl fmt::Display for ReflectionOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, t) in self.sequence.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{t}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for ReflectionOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn check_same_elements(order: &ReflectionOrder, reflections: &[Transposition]) -> Result<()> {
    if order.sorted_elements() != reflections {
        return Err(Error::SetMismatch(format!(
            "order {order} vs reflections {}",
            ReflectionOrder { degree: order.degree, sequence: reflections.to_vec() }
        )));
    }
    Ok(())
}

/// The triple `i<j<k` whose compatibility condition fails.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TripleViolation {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    /// `T(i,k)` is present but not between `T(i,j)` and `T(j,k)`.
    pub betweenness: bool,
}

impl fmt::Display for TripleViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (i, j, k) = (self.i, self.j, self.k);
        if self.betweenness {
            write!(f, "T({i},{k}) is not between T({i},{j}) and T({j},{k})")
        } else {
            write!(f, "relative order of T({i},{j}), T({j},{k}) disagrees with R({i},{j},{k})")
        }
    }
}

pub fn is_compatible(order: &ReflectionOrder, a: &AdmissibleSet) -> Result<bool> {
    Ok(compatibility_violation(order, a)?.is_none())
}

/// Checks the compatibility conditions triple by triple, straight from the
/// definition.
pub fn compatibility_violation(
    order: &ReflectionOrder,
    a: &AdmissibleSet,
) -> Result<Option<TripleViolation>> {
    if order.degree != a.degree() {
        return Err(Error::DegreeMismatch { left: order.degree, right: a.degree() });
    }
    check_same_elements(order, &a.reflections())?;
    let position: HashMap<Transposition, usize> =
        order.sequence.iter().enumerate().map(|(p, &t)| (t, p)).collect();
    let n = a.degree();
    for i in 1..=n {
        for j in i + 1..=n {
            let Some(&pij) = position.get(&Transposition::of(i, j)) else { continue };
            for k in j + 1..=n {
                let Some(&pjk) = position.get(&Transposition::of(j, k)) else { continue };
                let ok = match position.get(&Transposition::of(i, k)) {
                    Some(&pik) => (pij < pik && pik < pjk) || (pjk < pik && pik < pij),
                    None => a.has_r(i, j, k) == (pij < pjk),
                };
                if !ok {
                    let betweenness = position.contains_key(&Transposition::of(i, k));
                    return Ok(Some(TripleViolation { i, j, k, betweenness }));
                }
            }
        }
    }
    Ok(None)
}

/// One level of the recursive construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstructionLevel {
    /// The wedge used, found on the inverse set when `inverted` is set.
    pub wedge: Wedge,
    pub inverted: bool,
    /// Reflections of the set at this level.
    pub reflections: Vec<Transposition>,
    /// Order produced for the restricted set, before the wedge tail is
    /// appended.
    pub restricted_order: Vec<Transposition>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Construction {
    pub order: ReflectionOrder,
    /// Outermost level first.
    pub levels: Vec<ConstructionLevel>,
}

/// Compatible order on `C_T(w)` for smooth `w`.
pub fn construct_compatible_order(w: &Permutation) -> Result<ReflectionOrder> {
    if !is_smooth_pattern(w) {
        return Err(Error::NotSmooth(w.to_string()));
    }
    Ok(construct_for_set(&c23(w))?.order)
}

/// Recursive construction on an admissible set: take the lexicographically
/// smallest wedge `T(i,j)`, order `A°` recursively and append
/// `T(i,j), T(i,j-1), ..., T(i,i+1)`. A set without a wedge is handled by
/// constructing on its inverse and reversing.
pub fn construct_for_set(a: &AdmissibleSet) -> Result<Construction> {
    let mut levels = Vec::new();
    let sequence = build(a, &mut levels)?;
    levels.reverse();
    Ok(Construction { order: ReflectionOrder { degree: a.degree(), sequence }, levels })
}

fn build(a: &AdmissibleSet, levels: &mut Vec<ConstructionLevel>) -> Result<Vec<Transposition>> {
    let reflections = a.reflections();
    if reflections.is_empty() {
        return Ok(Vec::new());
    }
    if let Some(&wedge) = find_wedges(a).first() {
        return build_on_wedge(a, wedge, false, reflections, levels);
    }
    let inverse = a.inverse();
    let wedge = *find_wedges(&inverse).first().ok_or(Error::NoWedge)?;
    let mut sequence = build_on_wedge(&inverse, wedge, true, reflections, levels)?;
    sequence.reverse();
    Ok(sequence)
}

fn build_on_wedge(
    a: &AdmissibleSet,
    wedge: Wedge,
    inverted: bool,
    reflections: Vec<Transposition>,
    levels: &mut Vec<ConstructionLevel>,
) -> Result<Vec<Transposition>> {
    let restricted = restrict(a, wedge)?;
    let mut sequence = build(&restricted, levels)?;
    levels.push(ConstructionLevel {
        wedge,
        inverted,
        reflections,
        restricted_order: sequence.clone(),
    });
    sequence.extend((wedge.i + 1..=wedge.j).rev().map(|r| Transposition::of(wedge.i, r)));
    Ok(sequence)
}

/// Product and chain checks for an ordering of `C_T(w)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub element: Permutation,
    pub order: ReflectionOrder,
    pub product: Permutation,
    /// `e, t1, t1 t2, ..., t1 ... tk`.
    pub prefix_chain: BruhatChain,
    /// `e, tk, tk t(k-1), ..., tk ... t1`, which ends at the inverse of the
    /// product.
    pub suffix_chain: BruhatChain,
    pub product_ok: bool,
    pub prefix_saturated: bool,
    pub suffix_saturated: bool,
    /// 1-based step of the first non-cover in each chain.
    pub prefix_first_non_cover: Option<usize>,
    pub suffix_first_non_cover: Option<usize>,
}

impl VerificationReport {
    pub fn all_ok(&self) -> bool {
        self.product_ok && self.prefix_saturated && self.suffix_saturated
    }
}

pub fn verify_theorem(w: &Permutation, order: &ReflectionOrder) -> Result<VerificationReport> {
    if order.degree != w.degree() {
        return Err(Error::DegreeMismatch { left: order.degree, right: w.degree() });
    }
    check_same_elements(order, &c_t(w))?;
    Ok(verify_products(w, order))
}

fn verify_products(w: &Permutation, order: &ReflectionOrder) -> VerificationReport {
    let prefix_chain = order.prefix_chain();
    let suffix_chain = order.reversed().prefix_chain();
    let product = prefix_chain.last().clone();
    let prefix_first_non_cover = prefix_chain.first_non_cover();
    let suffix_first_non_cover = suffix_chain.first_non_cover();
    VerificationReport {
        element: w.clone(),
        order: order.clone(),
        product_ok: product == *w,
        product,
        prefix_saturated: prefix_first_non_cover.is_none(),
        suffix_saturated: suffix_first_non_cover.is_none(),
        prefix_chain,
        suffix_chain,
        prefix_first_non_cover,
        suffix_first_non_cover,
    }
}

/// The compatibility conditions of `A` as an order-constraint system over
/// the indices of `A.reflections()`.
pub fn constraint_system(a: &AdmissibleSet) -> (Vec<Transposition>, ConstraintSystem) {
    let reflections = a.reflections();
    let index: HashMap<Transposition, usize> =
        reflections.iter().enumerate().map(|(k, &t)| (t, k)).collect();
    let n = a.degree();
    let mut constraints = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            let Some(&ij) = index.get(&Transposition::of(i, j)) else { continue };
            for k in j + 1..=n {
                let Some(&jk) = index.get(&Transposition::of(j, k)) else { continue };
                constraints.push(match index.get(&Transposition::of(i, k)) {
                    Some(&ik) => OrderConstraint::Between { ends: [ij, jk], middle: ik },
                    None if a.has_r(i, j, k) => OrderConstraint::Before { first: ij, second: jk },
                    None => OrderConstraint::Before { first: jk, second: ij },
                });
            }
        }
    }
    let system = ConstraintSystem::new(reflections.len(), constraints);
    (reflections, system)
}

/// Streams every compatible order of `A` to `visit`.
pub fn for_each_compatible_order<F>(a: &AdmissibleSet, cap: usize, mut visit: F) -> Result<()>
where
    F: FnMut(&ReflectionOrder) -> ControlFlow<()>,
{
    let (reflections, system) = constraint_system(a);
    if reflections.len() > cap {
        return Err(Error::CapExceeded {
            what: "reflections to order",
            size: reflections.len(),
            cap,
        });
    }
    let _ = system.for_each_order(|indices| {
        let sequence = indices.iter().map(|&k| reflections[k]).collect();
        visit(&ReflectionOrder { degree: a.degree(), sequence })
    });
    Ok(())
}

/// All compatible orders of `A`, refusing when `A_T` has more than `cap`
/// reflections.
pub fn enumerate_compatible_orders(a: &AdmissibleSet, cap: usize) -> Result<Vec<ReflectionOrder>> {
    let mut all = Vec::new();
    for_each_compatible_order(a, cap, |order| {
        all.push(order.clone());
        ControlFlow::Continue(())
    })?;
    Ok(all)
}

/// Orders reachable from a compatible `order` by one elementary move that
/// remain compatible: swapping adjacent commuting reflections, or reversing
/// a consecutive `T(i,j), T(i,k), T(j,k)`.
pub fn elementary_neighbors(order: &ReflectionOrder, a: &AdmissibleSet) -> Result<Vec<ReflectionOrder>> {
    let seq = &order.sequence;
    let mut candidates = BTreeSet::new();
    for p in 0..seq.len().saturating_sub(1) {
        if seq[p].commutes_with(&seq[p + 1]) {
            let mut next = seq.clone();
            next.swap(p, p + 1);
            candidates.insert(next);
        }
    }
    for p in 0..seq.len().saturating_sub(2) {
        if is_reversible_triple(seq[p], seq[p + 1], seq[p + 2]) {
            let mut next = seq.clone();
            next[p..p + 3].reverse();
            candidates.insert(next);
        }
    }
    let mut out = Vec::new();
    for sequence in candidates {
        let candidate = ReflectionOrder { degree: order.degree, sequence };
        if is_compatible(&candidate, a)? {
            out.push(candidate);
        }
    }
    Ok(out)
}

fn is_reversible_triple(x: Transposition, y: Transposition, z: Transposition) -> bool {
    let forward = |a: Transposition, b: Transposition, c: Transposition| {
        a.i == b.i && c.i == a.j && c.j == b.j && a.j < b.j
    };
    // T(i,j), T(i,k), T(j,k) or its reverse
    forward(x, y, z) || forward(z, y, x)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConnectivityReport {
    /// Orders reached from the constructed order under elementary moves.
    pub component_size: usize,
    /// Number of compatible orders, when small enough to enumerate.
    pub total_orders: Option<usize>,
    /// `Some(component == all orders)` when enumeration was done.
    pub connected: Option<bool>,
    pub edges: usize,
}

/// Breadth-first search of the move graph from the constructed order,
/// compared with full enumeration when `A_T` has at most `cap` reflections.
pub fn graph_connectivity(a: &AdmissibleSet, cap: usize) -> Result<ConnectivityReport> {
    let (component, edges) = move_graph(a)?;
    let k = a.reflections().len();
    let (total_orders, connected) = if k <= cap {
        let all: HashSet<ReflectionOrder> = enumerate_compatible_orders(a, cap)?.into_iter().collect();
        let reached: HashSet<ReflectionOrder> = component.iter().cloned().collect();
        (Some(all.len()), Some(all == reached))
    } else {
        (None, None)
    };
    Ok(ConnectivityReport { component_size: component.len(), total_orders, connected, edges: edges.len() })
}

pub fn graph_connected(a: &AdmissibleSet) -> Result<bool> {
    graph_connectivity(a, DEFAULT_ENUMERATION_CAP)?.connected.ok_or(Error::CapExceeded {
        what: "reflections for a completeness claim",
        size: a.reflections().len(),
        cap: DEFAULT_ENUMERATION_CAP,
    })
}

/// Connected component of the constructed order in the move graph, in BFS
/// discovery order, plus its edges as index pairs.
pub fn move_graph(a: &AdmissibleSet) -> Result<(Vec<ReflectionOrder>, Vec<(usize, usize)>)> {
    let start = construct_for_set(a)?.order;
    let mut index: HashMap<ReflectionOrder, usize> = HashMap::new();
    let mut vertices = vec![start.clone()];
    index.insert(start, 0);
    let mut edges = BTreeSet::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        for next in elementary_neighbors(&vertices[v].clone(), a)? {
            let u = match index.get(&next) {
                Some(&u) => u,
                None => {
                    let u = vertices.len();
                    index.insert(next.clone(), u);
                    vertices.push(next);
                    queue.push_back(u);
                    u
                }
            };
            edges.insert((v.min(u), v.max(u)));
        }
    }
    Ok((vertices, edges.into_iter().collect()))
}

/// The move graph as an undirected DOT graph labelled by orders.
pub fn move_graph_dot(a: &AdmissibleSet) -> Result<String> {
    let (vertices, edges) = move_graph(a)?;
    let mut out = String::from("graph compatible_orders {\n  node [shape=box];\n");
    for (k, order) in vertices.iter().enumerate() {
        let label: Vec<String> = order.sequence.iter().map(|t| t.to_string()).collect();
        let _ = writeln!(out, "  v{k} [label=\"{}\"];", label.join(" "));
    }
    for (u, v) in edges {
        let _ = writeln!(out, "  v{u} -- v{v};");
    }
    out.push_str("}\n");
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum SmoothnessCertificate {
    /// A compatible order whose prefix products form a saturated chain.
    Smooth { report: Box<VerificationReport> },
    /// `|C_T(w)| != l(w)`, so no ordering of `C_T(w)` can give a saturated
    /// chain of the right length.
    NotSmooth { reflections: usize, length: usize },
}

impl SmoothnessCertificate {
    pub fn is_smooth(&self) -> bool {
        matches!(self, SmoothnessCertificate::Smooth { .. })
    }
}

pub fn smoothness_characterization(w: &Permutation) -> Result<SmoothnessCertificate> {
    if !is_smooth_pattern(w) {
        return Ok(SmoothnessCertificate::NotSmooth { reflections: c_t(w).len(), length: w.length() });
    }
    let order = construct_compatible_order(w)?;
    Ok(SmoothnessCertificate::Smooth { report: Box::new(verify_products(w, &order)) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        Permutation::parse(s).unwrap()
    }

    fn order(n: usize, pairs: &[(usize, usize)]) -> ReflectionOrder {
        ReflectionOrder::new(n, pairs.iter().map(|&(i, j)| Transposition::of(i, j)).collect()).unwrap()
    }

    #[test]
    fn compatibility_examples() {
        let a = c23(&p("321"));
        assert!(is_compatible(&order(3, &[(2, 3), (1, 3), (1, 2)]), &a).unwrap());
        assert_eq!(
            compatibility_violation(&order(3, &[(1, 2), (2, 3), (1, 3)]), &a).unwrap(),
            Some(TripleViolation { i: 1, j: 2, k: 3, betweenness: true })
        );
        assert!(is_compatible(&ReflectionOrder::empty(3), &AdmissibleSet::empty(3)).unwrap());
        assert!(matches!(is_compatible(&order(3, &[(1, 2)]), &a), Err(Error::SetMismatch(_))));
    }

    #[test]
    fn r_membership_decides_relative_order() {
        // 231 = R(1,2,3): T(1,3) is absent and R is present
        let a = c23(&p("231"));
        assert!(a.has_r(1, 2, 3) && !a.has_t(1, 3));
        assert!(is_compatible(&order(3, &[(1, 2), (2, 3)]), &a).unwrap());
        assert!(!is_compatible(&order(3, &[(2, 3), (1, 2)]), &a).unwrap());
    }

    #[test]
    fn construction_examples() {
        assert_eq!(construct_compatible_order(&p("321")).unwrap(), order(3, &[(2, 3), (1, 3), (1, 2)]));
        assert!(construct_compatible_order(&Permutation::identity(4)).unwrap().is_empty());
        assert_eq!(
            construct_compatible_order(&p("35142")),
            Err(Error::NotSmooth("35142".into()))
        );
    }

    #[test]
    fn construction_uses_inverse_when_no_wedge() {
        // 231 = R(1,2,3): C(231) has no wedge but its inverse 312 does
        let a = c23(&p("231"));
        assert!(find_wedges(&a).is_empty());
        assert_eq!(find_wedges(&a.inverse()), vec![Wedge { i: 1, j: 2 }]);
        let built = construct_for_set(&a).unwrap();
        assert!(built.levels[0].inverted);
        assert_eq!(built.order, order(3, &[(1, 2), (2, 3)]));
        assert!(is_compatible(&built.order, &a).unwrap());
    }

    #[test]
    fn verification_examples() {
        let w = p("321");
        let report = verify_theorem(&w, &construct_compatible_order(&w).unwrap()).unwrap();
        assert!(report.all_ok());
        assert_eq!(
            report.prefix_chain,
            BruhatChain::new(vec![p("123"), p("132"), p("231"), p("321")]).unwrap()
        );
        assert_eq!(report.suffix_chain.last(), &w.inverse());

        let e = Permutation::identity(3);
        let report = verify_theorem(&e, &ReflectionOrder::empty(3)).unwrap();
        assert!(report.all_ok());
        assert_eq!(report.prefix_chain.len(), 1);
        assert_eq!(report.suffix_chain.len(), 1);

        assert!(matches!(verify_theorem(&w, &order(3, &[(1, 2)])), Err(Error::SetMismatch(_))));
    }

    #[test]
    fn enumeration_examples() {
        let orders = enumerate_compatible_orders(&c23(&p("321")), DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(orders, vec![order(3, &[(1, 2), (1, 3), (2, 3)]), order(3, &[(2, 3), (1, 3), (1, 2)])]);
        assert_eq!(
            enumerate_compatible_orders(&AdmissibleSet::empty(4), 0).unwrap(),
            vec![ReflectionOrder::empty(4)]
        );
        assert!(matches!(
            enumerate_compatible_orders(&c23(&p("4321")), 5),
            Err(Error::CapExceeded { size: 6, cap: 5, .. })
        ));
    }

    #[test]
    fn neighbor_examples() {
        let a = c23(&p("321"));
        assert_eq!(
            elementary_neighbors(&order(3, &[(2, 3), (1, 3), (1, 2)]), &a).unwrap(),
            vec![order(3, &[(1, 2), (1, 3), (2, 3)])]
        );
        assert!(elementary_neighbors(&ReflectionOrder::empty(3), &AdmissibleSet::empty(3))
            .unwrap()
            .is_empty());
        // 2143 = T(1,2) T(3,4): both orders are compatible and adjacent
        let a = c23(&p("2143"));
        let n = elementary_neighbors(&order(4, &[(1, 2), (3, 4)]), &a).unwrap();
        assert_eq!(n, vec![order(4, &[(3, 4), (1, 2)])]);
    }

    #[test]
    fn connectivity_examples() {
        let report = graph_connectivity(&c23(&p("321")), DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(report, ConnectivityReport { component_size: 2, total_orders: Some(2), connected: Some(true), edges: 1 });
        assert!(graph_connected(&AdmissibleSet::empty(3)).unwrap());
        let dot = move_graph_dot(&c23(&p("321"))).unwrap();
        assert!(dot.contains("v0 -- v1;"));
    }

    #[test]
    fn characterization_examples() {
        assert_eq!(
            smoothness_characterization(&p("35142")).unwrap(),
            SmoothnessCertificate::NotSmooth { reflections: 8, length: 6 }
        );
        let SmoothnessCertificate::Smooth { report } =
            smoothness_characterization(&Permutation::identity(2)).unwrap()
        else {
            panic!("identity is smooth")
        };
        assert!(report.order.is_empty() && report.all_ok());
        let SmoothnessCertificate::Smooth { report } = smoothness_characterization(&p("321")).unwrap()
        else {
            panic!("321 is smooth")
        };
        assert_eq!(report.order, order(3, &[(2, 3), (1, 3), (1, 2)]));
    }

    #[test]
    fn order_file_round_trip() {
        let o = order(5, &[(1, 2), (3, 5)]);
        assert_eq!(ReflectionOrder::parse(5, &o.to_order_file()).unwrap(), o);
        assert_eq!(ReflectionOrder::parse(5, "# c\n\nT(1,2)\n T(3,5) \n").unwrap(), o);
        assert!(ReflectionOrder::parse(4, "T(3,5)").is_err());
        assert!(ReflectionOrder::parse(4, "T(1,2)\nT(1,2)").is_err());
    }
}
