//! Linear orders on `0..items` subject to betweenness and precedence
//! constraints, enumerated by backtracking.
//!
//! Both the type A and type D compatibility conditions compile down to this
//! form, so the two share pruning semantics.

use std::ops::ControlFlow;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderConstraint {
    /// `middle` sits strictly between the two ends, in either direction.
    Between { ends: [usize; 2], middle: usize },
    /// `first` precedes `second`.
    Before { first: usize, second: usize },
}

impl OrderConstraint {
    fn items(&self) -> [usize; 3] {
        match *self {
            OrderConstraint::Between { ends: [a, b], middle } => [a, b, middle],
            OrderConstraint::Before { first, second } => [first, second, second],
        }
    }

    fn holds(&self, position: &[usize]) -> bool {
        match *self {
            OrderConstraint::Between { ends: [a, b], middle } => {
                let (pa, pb, pm) = (position[a], position[b], position[middle]);
                (pa < pm && pm < pb) || (pb < pm && pm < pa)
            }
            OrderConstraint::Before { first, second } => position[first] < position[second],
        }
    }

    /// Whether `x` may be placed next given the already placed items.
    /// Checking this at every placement is equivalent to [`Self::holds`] on
    /// the completed order.
    fn admits(&self, x: usize, placed: &[bool]) -> bool {
        match *self {
            OrderConstraint::Between { ends: [a, b], middle } => {
                if x == middle {
                    placed[a] != placed[b]
                } else if x == a {
                    !placed[b] || placed[middle]
                } else if x == b {
                    !placed[a] || placed[middle]
                } else {
                    true
                }
            }
            OrderConstraint::Before { first, second } => x != second || placed[first],
        }
    }
}

#[derive(Clone, Debug)]
pub struct ConstraintSystem {
    items: usize,
    constraints: Vec<OrderConstraint>,
    touching: Vec<Vec<usize>>,
}

impl ConstraintSystem {
    pub fn new(items: usize, constraints: Vec<OrderConstraint>) -> Self {
        let mut touching = vec![Vec::new(); items];
        for (c, constraint) in constraints.iter().enumerate() {
            let mut seen = constraint.items();
            seen.sort_unstable();
            for (k, &x) in seen.iter().enumerate() {
                assert!(x < items, "constraint names item {x} of {items}");
                if k == 0 || seen[k - 1] != x {
                    touching[x].push(c);
                }
            }
        }
        Self { items, constraints, touching }
    }

    pub fn items(&self) -> usize {
        self.items
    }

    pub fn constraints(&self) -> &[OrderConstraint] {
        &self.constraints
    }

    /// Index of the first constraint violated by a complete order.
    pub fn first_violation(&self, order: &[usize]) -> Option<usize> {
        assert_eq!(order.len(), self.items);
        let mut position = vec![usize::MAX; self.items];
        for (p, &x) in order.iter().enumerate() {
            position[x] = p;
        }
        self.constraints.iter().position(|c| !c.holds(&position))
    }

    /// Calls `visit` on every satisfying order, in lexicographic order of
    /// item indices, until it breaks.
    pub fn for_each_order<F>(&self, mut visit: F) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        let mut placed = vec![false; self.items];
        let mut order = Vec::with_capacity(self.items);
        self.extend(&mut placed, &mut order, &mut visit)
    }

    fn extend<F>(&self, placed: &mut [bool], order: &mut Vec<usize>, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        if order.len() == self.items {
            return visit(order);
        }
        for x in 0..self.items {
            if placed[x] || !self.touching[x].iter().all(|&c| self.constraints[c].admits(x, placed)) {
                continue;
            }
            placed[x] = true;
            order.push(x);
            let flow = self.extend(placed, order, visit);
            order.pop();
            placed[x] = false;
            flow?;
        }
        ControlFlow::Continue(())
    }

    pub fn first_order(&self) -> Option<Vec<usize>> {
        let mut found = None;
        let _ = self.for_each_order(|order| {
            found = Some(order.to_vec());
            ControlFlow::Break(())
        });
        found
    }

    pub fn count_orders(&self) -> u64 {
        let mut count = 0;
        let _ = self.for_each_order(|_| {
            count += 1;
            ControlFlow::Continue(())
        });
        count
    }
}
