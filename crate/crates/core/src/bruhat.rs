//! Strong Bruhat order on `S_n`.

use std::fmt::Write as _;

use serde::Serialize;

use crate::admissible::Element23;
use crate::error::{Error, Result};
use crate::perm::{Permutation, Transposition};

/// `r(i,j) = #{a <= i : w(a) >= j}` for `1 <= i,j <= n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankMatrix {
    n: usize,
    entries: Vec<u8>,
}

impl RankMatrix {
    pub fn new(w: &Permutation) -> Self {
        let n = w.degree();
        let mut entries = vec![0u8; n * n];
        for i in 0..n {
            let v = w.raw()[i] as usize;
            for j in 0..n {
                let prev = if i == 0 { 0 } else { entries[(i - 1) * n + j] };
                entries[i * n + j] = prev + u8::from(v > j);
            }
        }
        Self { n, entries }
    }

    pub fn get(&self, i: usize, j: usize) -> usize {
        self.entries[(i - 1) * self.n + (j - 1)] as usize
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    /// Entrywise dominance, which is Bruhat comparison of the underlying
    /// permutations.
    pub fn dominated_by(&self, other: &RankMatrix) -> bool {
        self.n == other.n && self.entries.iter().zip(&other.entries).all(|(a, b)| a <= b)
    }
}

fn same_degree(x: &Permutation, y: &Permutation) -> Result<()> {
    if x.degree() != y.degree() {
        return Err(Error::DegreeMismatch { left: x.degree(), right: y.degree() });
    }
    Ok(())
}

pub fn leq(x: &Permutation, y: &Permutation) -> Result<bool> {
    same_degree(x, y)?;
    Ok(RankMatrix::new(x).dominated_by(&RankMatrix::new(y)))
}

/// `x` is covered by `y` iff `y = x T(a,b)` with `x(a) < x(b)` and no
/// position strictly between `a` and `b` holding a value strictly between
/// `x(a)` and `x(b)`.
pub fn is_cover(x: &Permutation, y: &Permutation) -> Result<bool> {
    same_degree(x, y)?;
    Ok(cover_transposition(x, y).is_some())
}

/// The transposition `T(a,b)` realizing `x -> y` as a Bruhat cover, if any.
pub fn cover_transposition(x: &Permutation, y: &Permutation) -> Option<Transposition> {
    let (xs, ys) = (x.raw(), y.raw());
    if xs.len() != ys.len() {
        return None;
    }
    let mut diff = xs.iter().zip(ys).enumerate().filter(|(_, (u, v))| u != v).map(|(k, _)| k);
    let a = diff.next()?;
    let b = diff.next()?;
    if diff.next().is_some() || xs[a] != ys[b] || xs[b] != ys[a] {
        return None;
    }
    let (lo, hi) = (xs[a], xs[b]);
    if lo > hi || xs[a + 1..b].iter().any(|&c| lo < c && c < hi) {
        return None;
    }
    Some(Transposition::of(a + 1, b + 1))
}

/// `T(i,j) <= w` via the running-maximum criterion on `w` and `w^-1`.
///
/// Panics if `t` does not fit the degree of `w`.
pub fn reflection_leq(t: Transposition, w: &Permutation) -> bool {
    assert!(t.j <= w.degree(), "{t} outside degree {}", w.degree());
    w.mu().at(t.i) >= t.j && w.inverse().mu().at(t.i) >= t.j
}

/// Same as [`reflection_leq`] with the running maxima precomputed.
pub(crate) fn reflection_leq_with(t: Transposition, mu_w: &[usize], mu_winv: &[usize]) -> bool {
    mu_w[t.i - 1] >= t.j && mu_winv[t.i - 1] >= t.j
}

pub fn element23_leq(c: Element23, w: &Permutation) -> Result<bool> {
    let realized = c.realize(w.degree())?;
    leq(&realized, w)
}

/// A sequence of permutations, tested for being a saturated chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct BruhatChain {
    elements: Vec<Permutation>,
}

impl BruhatChain {
    pub fn new(elements: Vec<Permutation>) -> Result<Self> {
        let first = elements.first().ok_or(Error::Empty)?;
        for pair in elements.windows(2) {
            same_degree(first, &pair[1])?;
            if pair[0] == pair[1] {
                return Err(Error::Config(format!("repeated chain element {}", pair[0])));
            }
        }
        Ok(Self { elements })
    }

    /// Prefix products `e, t1, t1 t2, ...` of a reflection sequence.
    pub fn from_prefix_products(n: usize, reflections: &[Transposition]) -> Self {
        let mut current = Permutation::identity(n);
        let mut elements = vec![current.clone()];
        for &t in reflections {
            current = current.swap_positions(t);
            elements.push(current.clone());
        }
        Self { elements }
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn last(&self) -> &Permutation {
        self.elements.last().expect("chains are nonempty")
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_saturated(&self) -> bool {
        self.first_non_cover().is_none()
    }

    /// 1-based index `d` of the first step `elements[d-1] -> elements[d]`
    /// that is not a Bruhat cover.
    pub fn first_non_cover(&self) -> Option<usize> {
        self.elements
            .windows(2)
            .position(|pair| cover_transposition(&pair[0], &pair[1]).is_none())
            .map(|k| k + 1)
    }

    /// The chain as a directed path graph.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("digraph \"{name}\" {{\n  rankdir=BT;\n");
        for (k, w) in self.elements.iter().enumerate() {
            let _ = writeln!(out, "  n{k} [label=\"{w}\"];");
        }
        for (k, pair) in self.elements.windows(2).enumerate() {
            let style = if cover_transposition(&pair[0], &pair[1]).is_some() {
                ""
            } else {
                " [style=dashed, color=red]"
            };
            let _ = writeln!(out, "  n{k} -> n{}{style};", k + 1);
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        Permutation::parse(s).unwrap()
    }

    #[test]
    fn rank_matrix_entries() {
        let r = RankMatrix::new(&p("312"));
        // row 1: w(1)=3 >= j for j=1..3
        assert_eq!((r.get(1, 1), r.get(1, 2), r.get(1, 3)), (1, 1, 1));
        assert_eq!((r.get(2, 1), r.get(2, 2), r.get(2, 3)), (2, 1, 1));
        assert_eq!((r.get(3, 1), r.get(3, 2), r.get(3, 3)), (3, 2, 1));
    }

    #[test]
    fn leq_examples() {
        let w = p("35142");
        assert!(leq(&Permutation::identity(5), &w).unwrap());
        assert!(leq(&p("312"), &p("321")).unwrap());
        assert!(!leq(&p("3412"), &p("4231")).unwrap());
        assert!(!leq(&p("4231"), &p("3412")).unwrap());
        assert!(leq(&p("12"), &p("123")).is_err());
    }

    #[test]
    fn cover_examples() {
        assert!(is_cover(&p("213"), &p("312")).unwrap());
        assert!(!is_cover(&p("213"), &p("213")).unwrap());
        assert!(!is_cover(&p("1234"), &p("1432")).unwrap());
        assert!(!is_cover(&p("312"), &p("213")).unwrap());
        assert_eq!(cover_transposition(&p("213"), &p("312")), Some(Transposition::of(1, 3)));
    }

    #[test]
    fn reflection_leq_examples() {
        let w = p("35142");
        assert!(reflection_leq(Transposition::of(3, 5), &w));
        assert!(!reflection_leq(Transposition::of(1, 4), &w));
        let e = Permutation::identity(5);
        assert!(Transposition::all(5).all(|t| !reflection_leq(t, &e)));
    }

    #[test]
    fn element23_examples() {
        assert!(element23_leq(Element23::r(1, 2, 3), &p("321")).unwrap());
        assert!(!element23_leq(Element23::l(1, 2, 3), &Permutation::identity(3)).unwrap());
        assert!(!element23_leq(Element23::r(1, 3, 4), &p("3214")).unwrap());
    }

    #[test]
    fn chain_examples() {
        let chain = BruhatChain::new(vec![p("123"), p("132"), p("231"), p("321")]).unwrap();
        assert!(chain.is_saturated());
        assert!(BruhatChain::new(vec![p("123")]).unwrap().is_saturated());
        let jump = BruhatChain::new(vec![p("123"), p("321")]).unwrap();
        assert!(!jump.is_saturated());
        assert_eq!(jump.first_non_cover(), Some(1));
        assert!(BruhatChain::new(vec![]).is_err());
        assert!(BruhatChain::new(vec![p("12"), p("12")]).is_err());
        assert_eq!(serde_json::to_string(&chain).unwrap(), r#"["123","132","231","321"]"#);
        let dot = jump.to_dot("c");
        assert!(dot.starts_with("digraph \"c\" {") && dot.contains("n0 -> n1 [style=dashed"));
    }
}
