use std::collections::BTreeSet;

use symplorbit::matrix::{display_indices, index_at};
use symplorbit::orbits::{f_sigma, orbit_dimension, pi_rank, Functional};
use symplorbit::perm::{enumerate_involutions, BruhatPoset};
use symplorbit::rank_order::{
    leq_r, leq_rstar, rank_matrix, rank_matrix_counted, rook_placement, verify_equivalences,
    HasseFormat, InvolutionPoset, RookPlacement,
};
use symplorbit::{Rational, SignedPermutation, WeylType};

/// Rooks weakly South-West of every box, by direct scan.
fn sw_brute(p: &RookPlacement) -> Vec<Vec<u32>> {
    let m = p.size();
    (0..m)
        .map(|row| (0..m).map(|col| (row..m).filter(|&r| p.col_of(r) <= col).count() as u32).collect())
        .collect()
}

#[test]
fn rank_definitions_agree() {
    for (n, ty) in [(1, WeylType::C), (2, WeylType::C), (3, WeylType::C), (4, WeylType::C), (5, WeylType::A)] {
        for s in enumerate_involutions(n, ty, 6).unwrap() {
            let p = rook_placement(&s, ty).unwrap();
            let r = rank_matrix(&p).unwrap();
            assert_eq!(r.r, sw_brute(&p), "{s}");
            assert_eq!(r, rank_matrix_counted(&p));
        }
    }
}

#[test]
fn placements_are_centrally_symmetric() {
    for s in enumerate_involutions(3, WeylType::C, 6).unwrap() {
        let p = rook_placement(&s, WeylType::C).unwrap();
        let grid = p.grid();
        assert!(RookPlacement::from_grid(WeylType::C, 3, &grid).is_ok());
        for (row, col) in p.rooks() {
            assert!(p.rooks().contains(&(-row, -col)));
        }
    }
}

#[test]
fn type_a_figure() {
    let s: SignedPermutation = "[4,2,5,1,3,6]".parse().unwrap();
    let p = rook_placement(&s, WeylType::A).unwrap();
    let mut want = vec![vec![0u8; 6]; 6];
    for (r, c) in [(1, 4), (2, 2), (3, 5), (4, 1), (5, 3), (6, 6)] {
        want[r - 1][c - 1] = 1;
    }
    assert_eq!(p.grid(), want);
}

#[test]
fn bottom_left_corner_of_the_figure() {
    let s: SignedPermutation = "[4,-2,3,1]".parse().unwrap();
    let p = rook_placement(&s, WeylType::C).unwrap();
    let r = rank_matrix(&p).unwrap();
    // only the box itself is weakly SW of the corner; σ(−1) = −4, so it is empty
    assert_eq!(r.rstar[7][0], 0);
    let i = display_indices(4).position(|x| x == -1).unwrap();
    assert_eq!(r.rstar[i][0], u32::from(s.apply(-1) == 1));
}

#[test]
fn rstar_is_the_pi_rank_of_f_sigma() {
    for n in 1..=3 {
        for s in enumerate_involutions(n, WeylType::C, 6).unwrap() {
            let rstar = rank_matrix(&rook_placement(&s, WeylType::C).unwrap()).unwrap().rstar;
            let f: Functional<Rational> = f_sigma(&s).unwrap();
            for p in 0..2 * n {
                for q in 0..p {
                    assert_eq!(pi_rank(&f, index_at(n, p), index_at(n, q)), rstar[p][q] as usize, "{s} ({p},{q})");
                }
            }
        }
    }
}

#[test]
fn n2_table_against_the_oracle() {
    let full = BruhatPoset::build(2, WeylType::C, 6).unwrap();
    let invs = enumerate_involutions(2, WeylType::C, 6).unwrap();
    assert_eq!(invs.len(), 6);
    let mats: Vec<_> = invs.iter().map(|s| rank_matrix(&rook_placement(s, WeylType::C).unwrap()).unwrap()).collect();
    let mut pairs = 0;
    for (a, s) in invs.iter().enumerate() {
        for (b, t) in invs.iter().enumerate() {
            let want = full.leq(s, t).unwrap();
            assert_eq!(leq_r(&mats[a], &mats[b]).unwrap(), want, "{s} {t}");
            assert_eq!(leq_rstar(&mats[a], &mats[b]).unwrap(), want, "{s} {t}");
            pairs += 1;
        }
    }
    assert_eq!(pairs, 36);
}

#[test]
fn equivalences_exhaustive() {
    let r = verify_equivalences(3, WeylType::C, 6).unwrap();
    assert_eq!((r.involutions, r.pairs), (20, 400));
    assert!(r.passed());
    let r = verify_equivalences(4, WeylType::A, 6).unwrap();
    assert_eq!(r.involutions, 10);
    assert!(r.passed());
    let csv = r.to_csv();
    assert_eq!(csv.lines().count(), 101);
    assert!(csv.starts_with("sigma,tau,bruhat,leq_r,leq_rstar\n"));
}

/// Covers by an O(|I|³) scan over the oracle order.
fn brute_covers(poset: &InvolutionPoset, full: &BruhatPoset) -> BTreeSet<(usize, usize)> {
    let els = poset.elements();
    let leq = |a: usize, b: usize| full.leq(&els[a], &els[b]).unwrap();
    let k = els.len();
    let mut out = BTreeSet::new();
    for a in 0..k {
        for b in 0..k {
            if a != b && leq(a, b) && !(0..k).any(|c| c != a && c != b && leq(a, c) && leq(c, b)) {
                out.insert((a, b));
            }
        }
    }
    out
}

#[test]
fn covers_match_betweenness() {
    for (n, ty) in [(2, WeylType::C), (3, WeylType::C), (4, WeylType::A)] {
        let full = BruhatPoset::build(n, ty, 6).unwrap();
        let poset = InvolutionPoset::from_bruhat(&full, 6).unwrap();
        let covers: BTreeSet<_> = poset.covers().iter().copied().collect();
        assert_eq!(covers, brute_covers(&poset, &full), "n={n} {ty}");
    }
}

#[test]
fn saturated_chains_exist() {
    let poset = InvolutionPoset::build(3, WeylType::C, 6).unwrap();
    for a in 0..poset.len() {
        for b in 0..poset.len() {
            if poset.leq_idx(a, b) {
                assert!(poset.has_saturated_chain(a, b));
            } else {
                assert!(!poset.has_saturated_chain(a, b));
            }
        }
    }
}

#[test]
fn order_is_antisymmetric_and_monotone() {
    let poset = InvolutionPoset::build(4, WeylType::C, 6).unwrap();
    let stars: BTreeSet<_> = poset
        .elements()
        .iter()
        .map(|s| rank_matrix_counted(&rook_placement(s, WeylType::C).unwrap()).rstar)
        .collect();
    assert_eq!(stars.len(), poset.len());
    for a in 0..poset.len() {
        for b in 0..poset.len() {
            if a != b && poset.leq_idx(a, b) {
                assert!(!poset.leq_idx(b, a));
                assert!(poset.length_at(a) < poset.length_at(b));
            }
        }
    }
    for &(a, b) in poset.covers() {
        let (s, t) = (&poset.elements()[a], &poset.elements()[b]);
        assert!(orbit_dimension(s).unwrap() < orbit_dimension(t).unwrap());
    }
}

#[test]
fn n1_chain_and_exports() {
    let poset = InvolutionPoset::build(1, WeylType::C, 6).unwrap();
    assert_eq!(poset.covers(), &[(0, 1)]);
    let dot = poset.export_hasse(HasseFormat::Dot);
    assert_eq!(dot, "digraph hasse_C1 {\n  rankdir=BT;\n  n0 [label=\"[1] (0)\"];\n  n1 [label=\"[-1] (1)\"];\n  n0 -> n1;\n}\n");
    let json: serde_json::Value = serde_json::from_str(&poset.export_hasse(HasseFormat::Json)).unwrap();
    assert_eq!(json["n"], 1);
    assert_eq!(json["mode"], "C");
    assert_eq!(json["elements"][1]["window"], "[-1]");
    assert_eq!(json["covers"], serde_json::json!([[0, 1]]));
}

#[test]
fn exports_are_deterministic() {
    let a = InvolutionPoset::build(3, WeylType::C, 6).unwrap();
    let b = InvolutionPoset::build(3, WeylType::C, 6).unwrap();
    for f in [HasseFormat::Dot, HasseFormat::Json] {
        assert_eq!(a.export_hasse(f), b.export_hasse(f));
    }
    let dot = a.export_hasse(HasseFormat::Dot);
    assert_eq!(dot.matches(" -> ").count(), a.covers().len());
    assert_eq!(dot.matches("[label=").count(), 20);
}
