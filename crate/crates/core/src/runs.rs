//! Window properties around a wedge `T(i,j)` of `C(w)` for smooth `w`.

use serde::Serialize;

use crate::admissible::{c23, find_wedges, Wedge};
use crate::compat::ConstructionLevel;
use crate::perm::{Permutation, Transposition};

/// `w(i) > w(i+1) > ... > w(j)`.
pub fn decreasing_run(w: &Permutation, wedge: Wedge) -> bool {
    (wedge.i..wedge.j).all(|p| w.apply(p) > w.apply(p + 1))
}

/// `w T(i,i+1) T(i,i+2) ... T(i,j)`.
pub fn wedge_shift(w: &Permutation, wedge: Wedge) -> Permutation {
    (wedge.i + 1..=wedge.j).fold(w.clone(), |x, r| x.swap_positions(Transposition::of(wedge.i, r)))
}

/// `w'(i+1) > w'(i+2) > ... > w'(j) > w'(i)` for `w' = wedge_shift(w)`.
pub fn shifted_run(w: &Permutation, wedge: Wedge) -> bool {
    let s = wedge_shift(w, wedge);
    let mut positions: Vec<usize> = (wedge.i + 1..=wedge.j).collect();
    positions.push(wedge.i);
    positions.windows(2).all(|p| s.apply(p[0]) > s.apply(p[1]))
}

/// `T(i,i+d) T(i,i+d-1) ... T(i,i+1)` in `S_n`.
pub fn tail(n: usize, i: usize, d: usize) -> Permutation {
    (i + 1..=i + d)
        .rev()
        .fold(Permutation::identity(n), |x, r| x.swap_positions(Transposition::of(i, r)))
}

/// Reflections `T(x,y)` with `x < i < y` in the order built for the
/// restricted set at one construction level.
pub fn pivot_crossings(level: &ConstructionLevel) -> Vec<Transposition> {
    let i = level.wedge.i;
    level.restricted_order.iter().copied().filter(|t| t.i < i && i < t.j).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WedgeCheck {
    pub wedge: Wedge,
    pub decreasing_run: bool,
    pub shifted_run: bool,
}

impl WedgeCheck {
    pub fn ok(&self) -> bool {
        self.decreasing_run && self.shifted_run
    }
}

/// Run properties for every wedge of `C(w)`.
pub fn wedge_checks(w: &Permutation) -> Vec<WedgeCheck> {
    find_wedges(&c23(w))
        .into_iter()
        .map(|wedge| WedgeCheck {
            wedge,
            decreasing_run: decreasing_run(w, wedge),
            shifted_run: shifted_run(w, wedge),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        Permutation::parse(s).unwrap()
    }

    #[test]
    fn tail_windows() {
        assert_eq!(tail(4, 1, 1), p("2134"));
        // (w(i), ..., w(j)) = (i+1, ..., j, i)
        assert_eq!(tail(5, 2, 3), p("13452"));
        assert_eq!(tail(5, 2, 3).length(), 3);
    }

    #[test]
    fn wedge_of_321() {
        let w = p("321");
        let checks = wedge_checks(&w);
        assert_eq!(checks.len(), 1);
        assert_eq!(checks[0].wedge, Wedge { i: 1, j: 3 });
        assert!(checks[0].ok());
        assert_eq!(wedge_shift(&w, checks[0].wedge), p("132"));
    }
}
