use diocalc::exactalg::*;
use proptest::prelude::*;

fn q(v: i64) -> Rational {
    Rational::int(v)
}

fn perm_strategy(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((1..=n).collect::<Vec<usize>>()).prop_shuffle()
}

proptest! {
    #[test]
    fn koszul_sign_is_multiplicative(
        (s, t, d) in (1usize..7).prop_flat_map(|n| (perm_strategy(n), perm_strategy(n), prop::collection::vec(-3i32..4, n)))
    ) {
        // reordering by s then by t equals reordering by the composite
        let composite: Vec<usize> = t.iter().map(|&k| s[k - 1]).collect();
        let ds: Vec<i32> = s.iter().map(|&k| d[k - 1]).collect();
        let lhs = koszul_sign(&composite, &d).unwrap();
        let rhs = koszul_sign(&s, &d).unwrap() * koszul_sign(&t, &ds).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn rank_equals_rank_of_transpose(rows in prop::collection::vec(prop::collection::vec(-3i64..4, 5), 1..6)) {
        let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
        let m = SignedMatrix::from_ints(&refs);
        prop_assert_eq!(m.rank(), m.transpose().rank());
        let (r, k) = m.rank_kernel();
        prop_assert_eq!(r + k.len(), m.cols());
        for v in &k {
            prop_assert!(m.apply(v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn double_annihilator_restores_subspace(
        vecs in prop::collection::vec(prop::collection::vec(-2i64..3, 4), 0..4),
        diag in prop::collection::vec(prop::sample::select(vec![-2i64, -1, 1, 3]), 4),
        off in -2i64..3,
    ) {
        let mut pairing = SignedMatrix::zeros(4, 4);
        for (i, d) in diag.iter().enumerate() {
            pairing.set(i, i, q(*d));
        }
        pairing.set(0, 1, q(off));
        let sub: Vec<Vec<Rational>> = vecs.iter().map(|v| v.iter().map(|&x| q(x)).collect()).collect();
        let ann = annihilator(&sub, 4, &pairing).unwrap();
        let sub_rank = dense_rank(sub.clone());
        prop_assert_eq!(ann.len() + sub_rank, 4);
        // annihilator of the annihilator, with the transposed pairing
        let back = annihilator(&ann, 4, &pairing.transpose()).unwrap();
        let mut e = Echelon::new(4);
        for v in &back {
            e.insert(to_sparse(v));
        }
        prop_assert_eq!(e.rank(), sub_rank);
        for v in &sub {
            prop_assert!(e.contains(to_sparse(v)));
        }
    }
}

#[test]
fn spec_koszul_examples() {
    assert_eq!(koszul_sign(&[1, 2, 3], &[1, 1, 1]).unwrap(), 1);
    assert_eq!(koszul_sign(&[2, 1], &[1, 1]).unwrap(), -1);
    // the cycle moving x3 in front of x1 x2 with degrees (1,1,0): x2 and x1 swap
    assert_eq!(koszul_sign(&[2, 3, 1], &[1, 1, 0]).unwrap(), -1);
    assert!(koszul_sign(&[1, 2], &[1]).is_err());
}

#[test]
fn degenerate_pairing_rejected() {
    let p = SignedMatrix::from_ints(&[&[1, 1], &[1, 1]]);
    assert!(annihilator(&[], 2, &p).is_err());
}
