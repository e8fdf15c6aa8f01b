use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use symplorbit::matrix::{
    display_indices, index_at, is_symplectic_algebra, is_symplectic_group, laurent_limit_at_zero,
    position_of, symplectic_form,
};
use symplorbit::scalar::{int, rat};
use symplorbit::{Error, IndexedMatrix, Laurent, Matrix, Rational, Ring};

/// Plain Gaussian elimination over ℚ.
fn naive_rank(m: &Matrix<Rational>) -> usize {
    let mut a: Vec<Vec<Rational>> = (0..m.rows()).map(|r| m.row(r).to_vec()).collect();
    let mut rank = 0;
    for col in 0..m.cols() {
        let Some(piv) = (rank..a.len()).find(|&r| !a[r][col].is_zero()) else { continue };
        a.swap(rank, piv);
        let p = a[rank][col].clone();
        for r in 0..a.len() {
            if r != rank && !a[r][col].is_zero() {
                let f = a[r][col].clone() / p.clone();
                for c in 0..m.cols() {
                    let v = a[rank][c].clone() * f.clone();
                    a[r][c] -= v;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, zero_bias: u32) -> Matrix<Rational> {
    let data = (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| {
                    if rng.gen_ratio(zero_bias, 10) {
                        int(0)
                    } else {
                        rat(rng.gen_range(-5..=5), rng.gen_range(1..=4))
                    }
                })
                .collect()
        })
        .collect();
    Matrix::from_rows(data).unwrap()
}

#[test]
fn bareiss_matches_gaussian_elimination() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for t in 0..50 {
        let m = random_matrix(&mut rng, 8, 8, (t % 9) as u32);
        assert_eq!(m.rank(), naive_rank(&m), "matrix {t}");
    }
    for t in 0..30 {
        let (r, c) = (rng.gen_range(1..=7), rng.gen_range(1..=9));
        let m = random_matrix(&mut rng, r, c, 5);
        assert_eq!(m.rank(), naive_rank(&m), "rectangular {t}");
    }
}

#[test]
fn low_rank_products() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for k in 0..=4 {
        let a = random_matrix(&mut rng, 8, k, 0);
        let b = random_matrix(&mut rng, k, 8, 0);
        let m = a.mul(&b).unwrap();
        assert!(m.rank() <= k);
        assert_eq!(m.rank(), naive_rank(&m));
    }
}

#[test]
fn rank_edge_cases() {
    assert_eq!(Matrix::<Rational>::zeros(0, 0).rank(), 0);
    assert_eq!(Matrix::<Rational>::zeros(3, 4).rank(), 0);
    assert_eq!(Matrix::<Rational>::identity(5).rank(), 5);
}

#[test]
fn display_order() {
    assert_eq!(display_indices(3).collect::<Vec<_>>(), vec![1, 2, 3, -3, -2, -1]);
    for n in 1..=4 {
        for p in 0..2 * n {
            assert_eq!(position_of(n, index_at(n, p)), p);
        }
    }
}

#[test]
fn symplectic_form_properties() {
    for n in 1..=4 {
        let j: IndexedMatrix<Rational> = symplectic_form(n);
        let j2 = j.mul(&j).unwrap();
        assert_eq!(j2, IndexedMatrix::identity(n).scale(&int(-1)));
        assert_eq!(j.transpose(), j.scale(&int(-1)));
        assert!(is_symplectic_group(&IndexedMatrix::<Rational>::identity(n)));
        assert!(is_symplectic_algebra(&IndexedMatrix::<Rational>::zero(n)));
    }
    // e_{1,1} alone is not in sp(2)
    assert!(!is_symplectic_algebra(&IndexedMatrix::<Rational>::unit(1, 1, 1)));
}

#[test]
fn rank_mismatch_is_an_error() {
    let a = IndexedMatrix::<Rational>::identity(2);
    let b = IndexedMatrix::<Rational>::identity(3);
    assert_eq!(a.mul(&b).unwrap_err(), Error::RankMismatch { left: 2, right: 3 });
}

#[test]
fn laurent_limits() {
    let mut m = IndexedMatrix::<Laurent>::identity(1);
    m.set_at(-1, 1, "s^2 - s + 3".parse().unwrap());
    let lim = laurent_limit_at_zero(&m).unwrap();
    assert_eq!(*lim.at(-1, 1), int(3));
    m.set_at(-1, 1, "s^-1".parse().unwrap());
    assert!(matches!(laurent_limit_at_zero(&m), Err(Error::NegativeExponent { row: -1, col: 1, exponent: -1 })));
}

#[test]
fn laurent_examples() {
    let s = Laurent::var();
    let s_inv = Laurent::term(1, -1);
    assert_eq!(s.clone() * s_inv.clone(), Laurent::one());
    assert_eq!(s.try_inverse(), Some(s_inv));
    assert_eq!((s.clone() + Laurent::one()).try_inverse(), None);
    assert_eq!("s^2 - s + 1/2".parse::<Laurent>().unwrap().to_string(), "s^2 - s + 1/2");
    assert_eq!("-3/2*s^-1".parse::<Laurent>().unwrap(), Laurent::monomial(rat(-3, 2), -1));
    assert!("s^".parse::<Laurent>().is_err());
    assert!("2*t".parse::<Laurent>().is_err());
}

fn laurent_strategy() -> impl Strategy<Value = Laurent> {
    prop::collection::vec((-3i32..=3, -6i64..=6, 1i64..=4), 0..5).prop_map(|terms| {
        terms.into_iter().fold(Laurent::zero(), |acc, (e, p, q)| acc + Laurent::monomial(rat(p, q), e))
    })
}

fn small_matrix(n: usize) -> impl Strategy<Value = IndexedMatrix<Rational>> {
    prop::collection::vec(-3i64..=3, 4 * n * n).prop_map(move |v| {
        let rows = v.chunks(2 * n).map(|r| r.iter().map(|&x| int(x)).collect()).collect();
        IndexedMatrix::from_matrix(n, Matrix::from_rows(rows).unwrap()).unwrap()
    })
}

proptest! {
    #[test]
    fn laurent_ring_axioms(a in laurent_strategy(), b in laurent_strategy(), c in laurent_strategy()) {
        prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        prop_assert_eq!(a.clone() - a.clone(), Laurent::zero());
        prop_assert_eq!(a.clone() * Laurent::one(), a.clone());
    }

    #[test]
    fn laurent_display_round_trip(a in laurent_strategy()) {
        prop_assert_eq!(a.to_string().parse::<Laurent>().unwrap(), a);
    }

    #[test]
    fn evaluation_is_a_ring_map(a in laurent_strategy(), b in laurent_strategy(), x in prop_oneof![Just(rat(2, 1)), Just(rat(-1, 3)), Just(rat(5, 2))]) {
        let ev = |l: &Laurent| l.evaluate(&x).unwrap();
        prop_assert_eq!(ev(&(a.clone() * b.clone())), ev(&a) * ev(&b));
        prop_assert_eq!(ev(&(a.clone() + b.clone())), ev(&a) + ev(&b));
        prop_assert_eq!(a.double_exponents().evaluate_at_square(&x).unwrap(), ev(&a));
    }

    #[test]
    fn transpose_is_an_anti_homomorphism(a in small_matrix(2), b in small_matrix(2)) {
        let ab = a.mul(&b).unwrap();
        prop_assert_eq!(ab.transpose(), b.transpose().mul(&a.transpose()).unwrap());
    }

    #[test]
    fn rank_is_transpose_invariant(a in small_matrix(2)) {
        prop_assert_eq!(a.rank(), a.transpose().rank());
        prop_assert_eq!(a.rank(), naive_rank(a.as_matrix()));
    }

    #[test]
    fn lower_projection_is_idempotent(a in small_matrix(3)) {
        let low = a.lower_projection();
        prop_assert!(low.is_strictly_lower());
        prop_assert_eq!(low.lower_projection(), low.clone());
        prop_assert!(a.sub(&low).unwrap().lower_projection().is_zero());
    }
}
