use std::ops::ControlFlow;

use rayon::prelude::*;
use serde::Serialize;

use super::admissible::{SimpleRootOrder, TypeD};
use super::group::is_smooth_d;
use super::signed::SignedPermutation;
use crate::error::{Error, Result};

pub const CONJECTURE_SCHEMA: &str = "bruhat-chains/conjecture-d/v1";

/// Largest number of reflections whose compatible orders are enumerated.
pub const DEFAULT_CONJECTURE_CAP: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjectureOptions {
    pub simple_order: SimpleRootOrder,
    pub cap: usize,
}

impl Default for ConjectureOptions {
    fn default() -> Self {
        Self { simple_order: SimpleRootOrder::default(), cap: DEFAULT_CONJECTURE_CAP }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ElementVerdictD {
    pub element: SignedPermutation,
    pub length: usize,
    pub reflections: usize,
    pub c23_size: usize,
    pub admissible: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub admissibility_violation: Option<String>,
    pub compatible_orders: u64,
    /// Orders whose product is not the element.
    pub wrong_products: u64,
    /// Orders whose prefix products form a saturated chain.
    pub saturated_orders: u64,
    /// Orders produced by the search that fail the direct compatibility check.
    pub search_mismatches: u64,
    pub incomparable_comparisons: usize,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjectureReport {
    pub schema: &'static str,
    pub rank: usize,
    pub simple_root_order: SimpleRootOrder,
    pub group_order: usize,
    pub smooth_elements: usize,
    pub orders_checked: u64,
    pub saturated_orders: u64,
    pub incomparable_comparisons: usize,
    pub counterexamples: usize,
    pub passed: bool,
    pub verdicts: Vec<ElementVerdictD>,
}

impl ConjectureReport {
    pub fn counterexample_elements(&self) -> impl Iterator<Item = &ElementVerdictD> {
        self.verdicts.iter().filter(|v| !v.passed)
    }
}

/// Checks, for every smooth `w` in `D_n`: `C(w)` is admissible, it has a
/// compatible order, and every compatible order multiplies to `w`.
///
/// Elements are checked in parallel on the current rayon pool. Refuses
/// before any work if some smooth element has more than `options.cap`
/// reflections below it.
pub fn verify_conjecture_d(n: usize, options: ConjectureOptions) -> Result<ConjectureReport> {
    let ctx = TypeD::new(n, options.simple_order)?;
    verify_conjecture_in(&ctx, options.cap)
}

pub fn verify_conjecture_in(ctx: &TypeD, cap: usize) -> Result<ConjectureReport> {
    let group = ctx.group();
    let smooth: Vec<usize> = (0..group.order()).filter(|&w| is_smooth_d(group, w)).collect();
    let sets: Vec<_> = smooth.iter().map(|&w| ctx.c23(w)).collect();
    if let Some(largest) = sets.iter().map(|a| a.reflections().len()).max() {
        if largest > cap {
            return Err(Error::CapExceeded { what: "reflections to order", size: largest, cap });
        }
    }
    let verdicts: Vec<ElementVerdictD> = smooth
        .par_iter()
        .zip(sets.par_iter())
        .map(|(&w, a)| check_element(ctx, w, a))
        .collect::<Result<_>>()?;

    let counterexamples = verdicts.iter().filter(|v| !v.passed).count();
    Ok(ConjectureReport {
        schema: CONJECTURE_SCHEMA,
        rank: group.rank(),
        simple_root_order: ctx.simple_order().clone(),
        group_order: group.order(),
        smooth_elements: verdicts.len(),
        orders_checked: verdicts.iter().map(|v| v.compatible_orders).sum(),
        saturated_orders: verdicts.iter().map(|v| v.saturated_orders).sum(),
        incomparable_comparisons: verdicts.iter().map(|v| v.incomparable_comparisons).sum(),
        counterexamples,
        passed: counterexamples == 0,
        verdicts,
    })
}

fn check_element(ctx: &TypeD, w: usize, a: &super::admissible::AdmissibleSetD) -> Result<ElementVerdictD> {
    let group = ctx.group();
    let (violation, incomparable) = ctx.admissibility_violation(a);
    let (roots, system) = ctx.constraint_system(a);
    let root_index: Vec<usize> = roots
        .iter()
        .map(|r| group.roots().positive_index(r).expect("positive root"))
        .collect();

    let (mut orders, mut wrong, mut saturated, mut mismatches) = (0u64, 0u64, 0u64, 0u64);
    let mut sequence = Vec::with_capacity(roots.len());
    let _ = system.for_each_order(|indices| {
        orders += 1;
        let mut x = group.identity();
        let mut chain_ok = true;
        for &k in indices {
            let y = group.times_reflection(x, root_index[k]);
            chain_ok &= group.length(y) == group.length(x) + 1;
            x = y;
        }
        wrong += u64::from(x != w);
        saturated += u64::from(chain_ok);
        sequence.clear();
        sequence.extend(indices.iter().map(|&k| roots[k].clone()));
        if !matches!(ctx.is_compatible(&sequence, a), Ok(true)) {
            mismatches += 1;
        }
        ControlFlow::Continue(())
    });

    let passed = violation.is_none() && orders > 0 && wrong == 0 && mismatches == 0 && incomparable == 0;
    Ok(ElementVerdictD {
        element: group.element(w).clone(),
        length: group.length(w),
        reflections: roots.len(),
        c23_size: a.len(),
        admissible: violation.is_none(),
        admissibility_violation: violation.map(|v| v.to_string()),
        compatible_orders: orders,
        wrong_products: wrong,
        saturated_orders: saturated,
        search_mismatches: mismatches,
        incomparable_comparisons: incomparable,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_two_passes() {
        let report = verify_conjecture_d(2, ConjectureOptions::default()).unwrap();
        assert_eq!(report.group_order, 4);
        assert_eq!(report.smooth_elements, 4);
        assert!(report.passed);
    }

    #[test]
    fn cap_refuses_before_work() {
        let options = ConjectureOptions { cap: 3, ..Default::default() };
        assert!(matches!(verify_conjecture_d(3, options), Err(Error::CapExceeded { size: 6, .. })));
    }
}
