use bohrcheck_core::group::TorusPoint;
use bohrcheck_core::lie::{
    conditions_abc, largest_compact_verdict, lie_center, liftable, DeltaGenerator, LargestCompact,
    LieDatum, SimpleType,
};
use bohrcheck_core::zmat::IntMatrix;
use proptest::prelude::*;

fn m(rows: [[i64; 2]; 2]) -> IntMatrix {
    IntMatrix::from_rows(&[rows[0].to_vec(), rows[1].to_vec()]).unwrap()
}

fn unimodular_2x2() -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(0usize..4, 1..6).prop_map(|word| {
        let gens = [
            m([[1, 1], [0, 1]]),
            m([[1, 0], [1, 1]]),
            m([[0, 1], [1, 0]]),
            m([[1, 0], [0, -1]]),
        ];
        word.iter().fold(IntMatrix::identity(2), |acc, &i| &acc * &gens[i])
    })
}

/// A random valid datum: `phi` defined on generators of prime-power cyclic
/// centers by points of matching order.
fn random_datum() -> impl Strategy<Value = LieDatum> {
    let types = ["A1", "A2", "A3", "A8", "E6", "D5", "B2", "G2"];
    (0usize..=2, prop::collection::vec(0usize..types.len(), 0..3), any::<u64>()).prop_map(move |(z, idx, seed)| {
        let factors: Vec<SimpleType> = idx.iter().map(|&i| types[i].parse().unwrap()).collect();
        let moduli: Vec<i64> = factors.iter().flat_map(|f| f.center_orders()).collect();
        let mut generators = Vec::new();
        for (j, &n) in moduli.iter().enumerate() {
            let mut simple = vec![0; moduli.len()];
            simple[j] = 1;
            let coords: Vec<(i64, i64)> = (0..z)
                .map(|c| {
                    let a = ((seed >> (8 * j + 3 * c)) % n as u64) as i64;
                    (a, n)
                })
                .collect();
            generators.push(DeltaGenerator { simple, torus: TorusPoint::from_fractions(&coords) });
        }
        LieDatum::new(z, factors, generators).unwrap()
    })
}

#[test]
fn glued_family_is_basis_independent() {
    let base = LieDatum::glued_su3_powers(3, 2).unwrap();
    for p in [m([[2, 1], [1, 1]]), m([[0, 1], [1, 0]]), m([[1, 5], [0, 1]]), m([[-3, 2], [1, -1]])] {
        let moved = base.change_torus_basis(&p).unwrap();
        assert_eq!(lie_center(&moved), lie_center(&base));
        let (v0, v1) = (largest_compact_verdict(&base).unwrap(), largest_compact_verdict(&moved).unwrap());
        assert_eq!(v0.verdict, v1.verdict);
        assert_eq!(v0.classes, v1.classes);
    }
}

#[test]
fn bare_torus_witness_lifts() {
    let t2 = LieDatum::new(2, vec![], vec![]).unwrap();
    let v = largest_compact_verdict(&t2).unwrap();
    assert_eq!(v.verdict, LargestCompact::NoLargest);
    assert!(liftable(&t2, v.witness.as_ref().unwrap()).unwrap().is_some());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_conditions_agree(d in random_datum()) {
        let c = conditions_abc(&d).unwrap();
        prop_assert_eq!(c.no_central_2torus, c.dual_rank_le_1);
        prop_assert!(c.consistent);
        if c.aut_compact {
            prop_assert_eq!(c.has_largest_compact, Some(true));
        }
        if d.z() <= 1 {
            prop_assert_eq!(largest_compact_verdict(&d).unwrap().verdict, LargestCompact::HasLargest);
        }
    }

    #[test]
    fn liftable_is_closed_under_products(a in unimodular_2x2(), b in unimodular_2x2(), k in 2u32..=4, l in 1u32..=2) {
        let d = LieDatum::glued_su3_powers(k.max(l + 1), l).unwrap();
        let n = 3i64.pow(k.max(l + 1));
        // scale off-diagonal freedom so that some samples lift
        let ta = &a * &m([[1, n], [0, 1]]);
        for (x, y) in [(&a, &b), (&ta, &b), (&ta, &ta)] {
            if liftable(&d, x).unwrap().is_some() && liftable(&d, y).unwrap().is_some() {
                prop_assert!(liftable(&d, &(x * y)).unwrap().is_some());
                prop_assert!(liftable(&d, &x.inverse().unwrap()).unwrap().is_some());
            }
        }
        let unipotent = m([[1, n], [0, 1]]);
        prop_assert!(liftable(&d, &unipotent).unwrap().is_some());
        let minus = -&unipotent;
        prop_assert!(liftable(&d, &(&unipotent * &minus)).unwrap().is_some());
    }

    #[test]
    fn centers_are_invariant_under_torus_basis_change(d in random_datum(), p in unimodular_2x2()) {
        prop_assume!(d.z() == 2);
        let moved = d.change_torus_basis(&p).unwrap();
        prop_assert_eq!(lie_center(&moved), lie_center(&d));
        prop_assert_eq!(
            largest_compact_verdict(&moved).unwrap().verdict,
            largest_compact_verdict(&d).unwrap().verdict
        );
    }
}
