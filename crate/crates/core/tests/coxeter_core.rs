use std::collections::{HashMap, HashSet, VecDeque};

use proptest::prelude::*;
use symplorbit::perm::{
    all_elements, enumerate_involutions, reflection, reflections, simple_reflections, BruhatPoset,
};
use symplorbit::{Error, Root, SignedPermutation, WeylType};

fn p(s: &str) -> SignedPermutation {
    s.parse().unwrap()
}

/// BFS distances in the Cayley graph, built from images alone.
fn bfs_lengths(n: usize, ty: WeylType) -> HashMap<Vec<i32>, usize> {
    let gens: Vec<Vec<i32>> = simple_reflections(n, ty).iter().map(|s| s.images().to_vec()).collect();
    let apply = |w: &[i32], x: i32| if x > 0 { w[x as usize - 1] } else { -w[(-x) as usize - 1] };
    let start: Vec<i32> = (1..=n as i32).collect();
    let mut dist = HashMap::from([(start.clone(), 0)]);
    let mut queue = VecDeque::from([start]);
    while let Some(w) = queue.pop_front() {
        let d = dist[&w];
        for s in &gens {
            // w·s
            let next: Vec<i32> = s.iter().map(|&x| apply(&w, x)).collect();
            if !dist.contains_key(&next) {
                dist.insert(next.clone(), d + 1);
                queue.push_back(next);
            }
        }
    }
    dist
}

/// All products of subwords of one reduced word for each element.
fn subword_oracle(n: usize, ty: WeylType) -> HashMap<SignedPermutation, HashSet<SignedPermutation>> {
    let gens = simple_reflections(n, ty);
    let mut word: HashMap<SignedPermutation, Vec<usize>> =
        HashMap::from([(SignedPermutation::identity(n), Vec::new())]);
    let mut queue = VecDeque::from([SignedPermutation::identity(n)]);
    while let Some(w) = queue.pop_front() {
        for (k, s) in gens.iter().enumerate() {
            let next = w.compose(s).unwrap();
            if !word.contains_key(&next) {
                let mut wd = word[&w].clone();
                wd.push(k);
                word.insert(next.clone(), wd);
                queue.push_back(next);
            }
        }
    }
    word.iter()
        .map(|(w, wd)| {
            let mut below = HashSet::new();
            for mask in 0u32..(1 << wd.len()) {
                let mut u = SignedPermutation::identity(n);
                for (pos, &k) in wd.iter().enumerate() {
                    if mask >> pos & 1 == 1 {
                        u = u.compose(&gens[k]).unwrap();
                    }
                }
                below.insert(u);
            }
            (w.clone(), below)
        })
        .collect()
}

#[test]
fn compose_follows_function_composition() {
    let u = reflection(Root::Diff(1, 2), 2).unwrap();
    let w = reflection(Root::Long(2), 2).unwrap();
    assert_eq!(u.compose(&w).unwrap().apply(1), 2);
    assert_eq!(w.compose(&u).unwrap().apply(1), -2);
    for i in [1, 2, -1, -2] {
        assert_eq!(u.compose(&w).unwrap().apply(i), u.apply(w.apply(i)));
    }
}

#[test]
fn rank_mismatch_on_compose() {
    let err = SignedPermutation::identity(2).compose(&SignedPermutation::identity(3)).unwrap_err();
    assert_eq!(err, Error::RankMismatch { left: 2, right: 3 });
}

#[test]
fn invalid_windows_rejected() {
    for bad in [vec![1, 1], vec![0, 1], vec![3, 1], vec![1, -1]] {
        assert!(SignedPermutation::new(bad).is_err());
    }
}

#[test]
fn reflection_windows() {
    assert_eq!(reflection(Root::Diff(1, 2), 2).unwrap(), p("[2,1]"));
    assert_eq!(reflection(Root::Long(1), 2).unwrap(), p("[-1,2]"));
    assert_eq!(reflection(Root::Sum(1, 2), 2).unwrap(), p("[-2,-1]"));
    assert!(reflection(Root::Long(3), 2).is_err());
}

#[test]
fn group_orders_and_reflection_counts() {
    for (n, order) in [(1, 2), (2, 8), (3, 48), (4, 384)] {
        assert_eq!(all_elements(n, WeylType::C).len(), order);
        assert_eq!(reflections(n, WeylType::C).len(), n * n);
    }
    assert_eq!(all_elements(4, WeylType::A).len(), 24);
}

#[test]
fn length_matches_bfs_oracle() {
    for n in 1..=4 {
        let dist = bfs_lengths(n, WeylType::C);
        assert_eq!(dist.len(), all_elements(n, WeylType::C).len());
        for w in all_elements(n, WeylType::C) {
            assert_eq!(w.length(), dist[w.images()], "{w}");
        }
    }
    let dist = bfs_lengths(4, WeylType::A);
    for w in all_elements(4, WeylType::A) {
        assert_eq!(w.length_in(WeylType::A), dist[w.images()], "{w}");
    }
}

/// inv + neg + nsp, the count for the reversed ordering of the simple roots.
fn inv_neg_nsp(w: &[i32]) -> usize {
    let n = w.len();
    let mut count = w.iter().filter(|&&x| x < 0).count();
    for i in 0..n {
        for j in i + 1..n {
            if w[i] > w[j] {
                count += 1;
            }
            if w[i] + w[j] < 0 {
                count += 1;
            }
        }
    }
    count
}

#[test]
fn closed_formula_after_reversal() {
    for n in 1..=4 {
        let rho = SignedPermutation::new((1..=n as i32).rev().collect()).unwrap();
        for w in all_elements(n, WeylType::C) {
            let conj = rho.compose(&w).unwrap().compose(&rho).unwrap();
            assert_eq!(w.length(), inv_neg_nsp(conj.images()), "{w}");
        }
    }
    // without the reversal the formula undercounts r_{2e1}
    assert_eq!(inv_neg_nsp(&[-1, 2]), 1);
    assert_eq!(p("[-1,2]").length(), 3);
}

#[test]
fn longest_element() {
    for n in 1..=4 {
        let w0 = SignedPermutation::new((1..=n as i32).map(|i| -i).collect()).unwrap();
        assert_eq!(w0.length(), n * n);
    }
}

#[test]
fn involution_counts_follow_recurrence() {
    let mut a = vec![1usize, 2];
    for n in 2..=5 {
        a.push(2 * (a[n - 1] + (n - 1) * a[n - 2]));
    }
    for n in 1..=5 {
        assert_eq!(enumerate_involutions(n, WeylType::C, 6).unwrap().len(), a[n]);
    }
    assert_eq!(enumerate_involutions(4, WeylType::A, 6).unwrap().len(), 10);
}

#[test]
fn bound_is_enforced() {
    assert_eq!(
        enumerate_involutions(7, WeylType::C, 6).unwrap_err(),
        Error::RankBound { n: 7, max_n: 6 }
    );
    assert!(BruhatPoset::build(0, WeylType::C, 6).is_err());
}

#[test]
fn bruhat_matches_subword_oracle() {
    for (n, ty) in [(1, WeylType::C), (2, WeylType::C), (3, WeylType::C), (4, WeylType::A)] {
        let poset = BruhatPoset::build(n, ty, 6).unwrap();
        let oracle = subword_oracle(n, ty);
        for w in poset.elements() {
            for u in poset.elements() {
                assert_eq!(poset.leq(u, w).unwrap(), oracle[w].contains(u), "{u} <= {w}");
            }
        }
    }
}

#[test]
fn bruhat_poset_sizes_and_covers() {
    let poset = BruhatPoset::build(2, WeylType::C, 6).unwrap();
    assert_eq!(poset.len(), 8);
    let id = SignedPermutation::identity(2);
    for w in poset.elements() {
        assert!(poset.leq(&id, w).unwrap());
    }
    for idx in 0..poset.len() {
        for &lo in poset.lower_covers(idx) {
            assert_eq!(poset.length_at(lo as usize) + 1, poset.length_at(idx));
        }
    }
}

fn perm_strategy(n: usize) -> impl Strategy<Value = SignedPermutation> {
    (Just((1..=n as i32).collect::<Vec<_>>()).prop_shuffle(), prop::collection::vec(any::<bool>(), n))
        .prop_map(|(perm, signs)| {
            let images = perm.into_iter().zip(signs).map(|(x, s)| if s { -x } else { x }).collect();
            SignedPermutation::new(images).unwrap()
        })
}

fn pair(n: usize) -> impl Strategy<Value = (SignedPermutation, SignedPermutation, SignedPermutation)> {
    (perm_strategy(n), perm_strategy(n), perm_strategy(n))
}

proptest! {
    #[test]
    fn group_axioms((a, b, c) in (1usize..=5).prop_flat_map(pair)) {
        let ab_c = a.compose(&b).unwrap().compose(&c).unwrap();
        let a_bc = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
        prop_assert!(a.compose(&a.inverse()).unwrap().is_identity());
        prop_assert_eq!(a.length(), a.inverse().length());
    }

    #[test]
    fn simple_reflections_change_length_by_one(w in (1usize..=5).prop_flat_map(perm_strategy)) {
        for s in simple_reflections(w.n(), WeylType::C) {
            let ws = w.compose(&s).unwrap();
            prop_assert_eq!(ws.length().abs_diff(w.length()), 1);
        }
    }

    #[test]
    fn window_round_trip(w in (1usize..=6).prop_flat_map(perm_strategy)) {
        prop_assert_eq!(w.window().parse::<SignedPermutation>().unwrap(), w.clone());
        let json = serde_json::to_string(&w).unwrap();
        prop_assert_eq!(serde_json::from_str::<SignedPermutation>(&json).unwrap(), w);
    }
}
