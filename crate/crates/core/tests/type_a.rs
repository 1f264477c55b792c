use bruhat_chains::compat::{construct_for_set, elementary_neighbors};
use bruhat_chains::perm::factorial;
use bruhat_chains::{
    c23, c_t, construct_compatible_order, enumerate_compatible_orders, graph_connectivity, is_compatible,
    is_smooth_length, is_smooth_pattern, leq, reflection_leq, verify_theorem, Permutation, ReflectionOrder,
    Transposition,
};
use proptest::prelude::*;

fn p(s: &str) -> Permutation {
    Permutation::parse(s).unwrap()
}

fn inversions(w: &[usize]) -> usize {
    (0..w.len()).flat_map(|a| (a + 1..w.len()).map(move |b| (a, b))).filter(|&(a, b)| w[a] > w[b]).count()
}

/// Occurrence of `pattern` by scanning all index subsets.
fn contains(w: &[usize], pattern: &[usize]) -> bool {
    let n = w.len();
    let k = pattern.len();
    (0u32..1 << n).filter(|m| m.count_ones() as usize == k).any(|m| {
        let sub: Vec<usize> = (0..n).filter(|b| m & (1 << b) != 0).map(|b| w[b]).collect();
        (0..k).all(|a| (0..k).all(|b| (sub[a] < sub[b]) == (pattern[a] < pattern[b])))
    })
}

/// Tableau criterion: every sorted prefix of `x` is dominated by that of `y`.
fn tableau_leq(x: &[usize], y: &[usize]) -> bool {
    (1..=x.len()).all(|m| {
        let mut a = x[..m].to_vec();
        let mut b = y[..m].to_vec();
        a.sort_unstable();
        b.sort_unstable();
        a.iter().zip(&b).all(|(u, v)| u <= v)
    })
}

/// Right-multiplies the window by each transposition in turn.
fn product(n: usize, order: &[Transposition]) -> Vec<Vec<usize>> {
    let mut w: Vec<usize> = (1..=n).collect();
    let mut chain = vec![w.clone()];
    for t in order {
        let (i, j) = (t.i, t.j);
        w.swap(i - 1, j - 1);
        chain.push(w.clone());
    }
    chain
}

#[test]
fn smooth_counts_by_brute_force() {
    let expected = [1, 2, 6, 22, 88, 366, 1552];
    for n in 1..=7 {
        let mut smooth = 0;
        for w in Permutation::all(n) {
            let win = w.window();
            let oracle = !contains(&win, &[3, 4, 1, 2]) && !contains(&win, &[4, 2, 3, 1]);
            assert_eq!(is_smooth_pattern(&w), oracle, "{w}");
            assert_eq!(is_smooth_length(&w), oracle, "{w}");
            smooth += usize::from(oracle);
        }
        assert_eq!(smooth, expected[n - 1], "n = {n}");
    }
}

#[test]
fn bruhat_order_matches_tableau_criterion() {
    for n in 1..=5 {
        let all: Vec<Permutation> = Permutation::all(n).collect();
        for x in &all {
            for y in &all {
                assert_eq!(leq(x, y).unwrap(), tableau_leq(&x.window(), &y.window()), "{x} <= {y}");
            }
        }
    }
}

#[test]
fn reflections_below_match_tableau_criterion() {
    for n in 2..=6 {
        for w in Permutation::all(n) {
            let expected: Vec<Transposition> = Transposition::all(n)
                .filter(|t| tableau_leq(&t.as_permutation(n).unwrap().window(), &w.window()))
                .collect();
            let mut got = c_t(&w);
            got.sort();
            assert_eq!(got, expected, "{w}");
            for t in Transposition::all(n) {
                assert_eq!(reflection_leq(t, &w), expected.contains(&t));
            }
        }
    }
}

#[test]
fn golden_35142() {
    let w = p("35142");
    assert_eq!(w.length(), 6);
    let listed = "T(1,2) T(1,3) T(2,3) T(2,4) T(3,4) T(2,5) T(4,5) T(3,5)";
    let order: Vec<Transposition> = listed.split(' ').map(|t| Transposition::parse(t).unwrap()).collect();
    let mut sorted = order.clone();
    sorted.sort();
    let mut below = c_t(&w);
    below.sort();
    assert_eq!(below, sorted);

    let chain = product(5, &order);
    assert_eq!(chain.last().unwrap(), &w.window());
    let first_bad = (1..chain.len()).find(|&s| inversions(&chain[s]) != inversions(&chain[s - 1]) + 1);
    assert_eq!(first_bad, Some(8));

    let report = verify_theorem(&w, &ReflectionOrder::new(5, order).unwrap()).unwrap();
    assert!(report.product_ok);
    assert!(!report.prefix_saturated);
    assert_eq!(report.prefix_first_non_cover, Some(8));
    assert_eq!(w.find_pattern(&p("3412")), Some(vec![1, 2, 3, 5]));
}

#[test]
fn constructed_orders_checked_independently() {
    for n in 1..=6 {
        for w in Permutation::all(n).filter(is_smooth_pattern) {
            let order = construct_compatible_order(&w).unwrap();
            assert!(is_compatible(&order, &c23(&w)).unwrap());
            let chain = product(n, order.sequence());
            assert_eq!(chain.last().unwrap(), &w.window(), "{w}");
            for (s, x) in chain.iter().enumerate() {
                assert_eq!(inversions(x), s, "{w} step {s}");
            }
            let suffix = product(n, order.reversed().sequence());
            assert_eq!(suffix.last().unwrap(), &w.inverse().window());
            assert!(verify_theorem(&w, &order).unwrap().all_ok());
        }
    }
}

#[test]
fn orders_321() {
    let a = c23(&p("321"));
    let orders: Vec<String> = enumerate_compatible_orders(&a, 10).unwrap().iter().map(|o| o.to_string()).collect();
    assert_eq!(orders, vec!["(T(1,2), T(1,3), T(2,3))", "(T(2,3), T(1,3), T(1,2))"]);
}

#[test]
fn every_order_in_s4_verifies_and_graph_is_connected() {
    for w in Permutation::all(4).filter(is_smooth_pattern) {
        let a = c23(&w);
        let all = enumerate_compatible_orders(&a, 10).unwrap();
        assert!(!all.is_empty());
        for o in &all {
            assert!(verify_theorem(&w, o).unwrap().all_ok(), "{w} {o}");
        }
        let report = graph_connectivity(&a, 10).unwrap();
        assert_eq!(report.total_orders, Some(all.len()));
        assert_eq!(report.component_size, all.len());
    }
}

#[test]
fn construction_levels_have_wedges() {
    let a = c23(&p("4321"));
    let c = construct_for_set(&a).unwrap();
    assert!(!c.levels.is_empty());
    assert_eq!(c.order.len(), 6);
    assert_eq!(c.levels[0].reflections.len(), 6);
    for level in &c.levels {
        let tail = level.wedge.j - level.wedge.i;
        assert_eq!(level.reflections.len(), level.restricted_order.len() + tail);
    }
    for pair in c.levels.windows(2) {
        assert_eq!(pair[1].reflections.len(), pair[0].restricted_order.len());
    }
}

fn smooth_perm() -> impl Strategy<Value = Permutation> {
    (1usize..=8)
        .prop_flat_map(|n| (Just(n), 0..factorial(n)))
        .prop_map(|(n, r)| Permutation::unrank(n, r))
        .prop_filter("smooth", is_smooth_pattern)
}

fn any_perm() -> impl Strategy<Value = Permutation> {
    (1usize..=9).prop_flat_map(|n| (Just(n), 0..factorial(n))).prop_map(|(n, r)| Permutation::unrank(n, r))
}

proptest! {
    #[test]
    fn rank_round_trips(w in any_perm()) {
        prop_assert_eq!(Permutation::unrank(w.degree(), w.rank()), w.clone());
        prop_assert_eq!(w.length(), inversions(&w.window()));
        prop_assert_eq!(w.length(), w.inverse().length());
    }

    #[test]
    fn criteria_agree(w in any_perm()) {
        prop_assert_eq!(is_smooth_pattern(&w), is_smooth_length(&w));
        prop_assert!(c_t(&w).len() >= w.length());
    }

    #[test]
    fn constructed_order_is_a_saturated_factorization(w in smooth_perm()) {
        let order = construct_compatible_order(&w).unwrap();
        prop_assert_eq!(order.len(), w.length());
        let report = verify_theorem(&w, &order).unwrap();
        prop_assert!(report.all_ok());
    }

    #[test]
    fn elementary_moves_preserve_compatibility(w in smooth_perm()) {
        let a = c23(&w);
        let order = construct_compatible_order(&w).unwrap();
        for next in elementary_neighbors(&order, &a).unwrap() {
            prop_assert!(is_compatible(&next, &a).unwrap());
            prop_assert_eq!(next.product(), w.clone());
        }
    }

    #[test]
    fn inverse_set_reverses_orders(w in smooth_perm()) {
        let order = construct_compatible_order(&w).unwrap();
        prop_assert!(is_compatible(&order.reversed(), &c23(&w.inverse())).unwrap());
    }
}
