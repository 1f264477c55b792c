use std::collections::{HashMap, VecDeque};

use fixedbitset::FixedBitSet;

use super::root::{RootD, RootSystem};
use super::signed::SignedPermutation;
use crate::error::{Error, Result};

pub const DEFAULT_MAX_RANK: usize = 5;

/// The Weyl group of type `D_n` with Coxeter lengths and Bruhat order.
///
/// Elements are indexed in order of `(length, window)`. Bruhat covers are
/// the pairs `(x, x t_alpha)` whose lengths differ by one; the order itself
/// is stored as one down-set bitset per element.
#[derive(Clone, Debug)]
pub struct WeylGroupD {
    roots: RootSystem,
    elements: Vec<SignedPermutation>,
    lengths: Vec<usize>,
    index: HashMap<SignedPermutation, usize>,
    reflections: Vec<usize>,
    /// `x t_k` at `x * |R+| + k`.
    right_reflection: Vec<usize>,
    covers_down: Vec<Vec<usize>>,
    below: Vec<FixedBitSet>,
}

impl WeylGroupD {
    pub fn new(n: usize) -> Result<Self> {
        Self::with_max_rank(n, DEFAULT_MAX_RANK)
    }

    pub fn with_max_rank(n: usize, max_rank: usize) -> Result<Self> {
        if n < 2 || n > max_rank {
            return Err(Error::RankOutOfRange { rank: n, min: 2, max: max_rank });
        }
        let roots = RootSystem::new(n)?;
        let simple: Vec<SignedPermutation> = roots
            .simple
            .iter()
            .map(SignedPermutation::reflection)
            .collect::<Result<_>>()?;

        let identity = SignedPermutation::identity(n);
        let mut distance: HashMap<SignedPermutation, usize> = HashMap::from([(identity.clone(), 0)]);
        let mut queue = VecDeque::from([identity]);
        while let Some(x) = queue.pop_front() {
            let d = distance[&x];
            for s in &simple {
                let y = x.compose(s);
                if !distance.contains_key(&y) {
                    distance.insert(y.clone(), d + 1);
                    queue.push_back(y);
                }
            }
        }
        let mut ordered: Vec<(usize, SignedPermutation)> =
            distance.into_iter().map(|(w, d)| (d, w)).collect();
        ordered.sort();
        let lengths: Vec<usize> = ordered.iter().map(|(d, _)| *d).collect();
        let elements: Vec<SignedPermutation> = ordered.into_iter().map(|(_, w)| w).collect();
        let index: HashMap<SignedPermutation, usize> =
            elements.iter().enumerate().map(|(k, w)| (w.clone(), k)).collect();
        let reflections: Vec<usize> = roots
            .positive
            .iter()
            .map(|alpha| index[&SignedPermutation::reflection(alpha).expect("positive root")])
            .collect();

        let mut right_reflection = Vec::with_capacity(elements.len() * reflections.len());
        let mut covers_down = vec![Vec::new(); elements.len()];
        for (x, w) in elements.iter().enumerate() {
            for &t in &reflections {
                let y = index[&w.compose(&elements[t])];
                right_reflection.push(y);
                if lengths[y] == lengths[x] + 1 {
                    covers_down[y].push(x);
                }
            }
        }
        let mut below: Vec<FixedBitSet> = Vec::with_capacity(elements.len());
        for y in 0..elements.len() {
            let mut set = FixedBitSet::with_capacity(elements.len());
            set.insert(y);
            for &x in &covers_down[y] {
                // x has smaller length, hence a smaller index
                set.union_with(&below[x]);
            }
            below.push(set);
        }
        Ok(Self { roots, elements, lengths, index, reflections, right_reflection, covers_down, below })
    }

    pub fn rank(&self) -> usize {
        self.roots.rank
    }

    pub fn roots(&self) -> &RootSystem {
        &self.roots
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[SignedPermutation] {
        &self.elements
    }

    pub fn element(&self, k: usize) -> &SignedPermutation {
        &self.elements[k]
    }

    pub fn index_of(&self, w: &SignedPermutation) -> Result<usize> {
        self.index.get(w).copied().ok_or_else(|| Error::NotInGroup(w.to_string()))
    }

    pub fn length(&self, k: usize) -> usize {
        self.lengths[k]
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn longest(&self) -> usize {
        self.elements.len() - 1
    }

    pub fn multiply(&self, a: usize, b: usize) -> usize {
        self.index[&self.elements[a].compose(&self.elements[b])]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.index[&self.elements[a].inverse()]
    }

    /// Index of `t_alpha` for the `k`-th positive root.
    pub fn reflection(&self, k: usize) -> usize {
        self.reflections[k]
    }

    /// `x t_alpha` for the `k`-th positive root, by table lookup.
    pub fn times_reflection(&self, x: usize, k: usize) -> usize {
        self.right_reflection[x * self.reflections.len() + k]
    }

    pub fn reflection_of(&self, alpha: &RootD) -> Result<usize> {
        let k = self
            .roots
            .positive_index(alpha)
            .ok_or_else(|| Error::NotPositiveRoot(alpha.to_string()))?;
        Ok(self.reflections[k])
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.below[y].contains(x)
    }

    /// Elements covered by `y`.
    pub fn covered_by(&self, y: usize) -> &[usize] {
        &self.covers_down[y]
    }

    /// All Bruhat covers `(x, y)`, `x < y`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .covers_down
            .iter()
            .enumerate()
            .flat_map(|(y, xs)| xs.iter().map(move |&x| (x, y)))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn lower_interval(&self, w: usize) -> impl Iterator<Item = usize> + '_ {
        self.below[w].ones()
    }

    /// Coefficients of `sum_{x <= w} q^l(x)`.
    pub fn rank_generating_function(&self, w: usize) -> Vec<usize> {
        let mut coefficients = vec![0; self.lengths[w] + 1];
        for x in self.lower_interval(w) {
            coefficients[self.lengths[x]] += 1;
        }
        coefficients
    }
}

/// Rational smoothness of `X_w`: the rank generating function of `[e, w]` is
/// palindromic. In the simply-laced type `D` this coincides with smoothness.
pub fn is_smooth_d(group: &WeylGroupD, w: usize) -> bool {
    let p = group.rank_generating_function(w);
    p.iter().eq(p.iter().rev())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_orders() {
        for (n, order) in [(2, 4), (3, 24), (4, 192), (5, 1920)] {
            assert_eq!(WeylGroupD::new(n).unwrap().order(), order);
        }
        assert!(matches!(WeylGroupD::new(6), Err(Error::RankOutOfRange { rank: 6, .. })));
        assert!(WeylGroupD::new(1).is_err());
    }

    #[test]
    fn d4_lengths() {
        let g = WeylGroupD::new(4).unwrap();
        assert_eq!(g.length(g.longest()), 12);
        assert_eq!((0..g.order()).filter(|&k| g.length(k) == 1).count(), 4);
        assert_eq!(g.element(g.identity()), &SignedPermutation::identity(4));
        assert_eq!(g.element(g.longest()).to_string(), "-1,-2,-3,-4");
    }

    #[test]
    fn d4_smoothness_examples() {
        let g = WeylGroupD::new(4).unwrap();
        assert!(is_smooth_d(&g, g.identity()));
        assert_eq!(g.rank_generating_function(g.identity()), vec![1]);
        let s = g.reflection_of(&RootD::plus(4, 2, 1)).unwrap();
        assert_eq!(g.rank_generating_function(s), vec![1, 1]);
        assert!(is_smooth_d(&g, s));
        assert!(is_smooth_d(&g, g.longest()));
        assert_eq!(g.lower_interval(g.longest()).count(), 192);
    }
}
