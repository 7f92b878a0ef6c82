mod common;

use std::collections::BTreeMap;
use std::sync::Arc;

use bohrcheck_core::character::{
    clifford_multiplicity, equalizer_witness, CharacterTable, CliffordFamily, RestrictionTable,
};
use bohrcheck_core::group::{cyclic_named, heisenberg, FiniteGroup, GroupHom};
use nalgebra::{Complex, DMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Squared degrees read off the regular representation: a random Hermitian
/// central element acts on the isotypic component of each irreducible by a
/// real scalar, with multiplicity `deg^2`.
fn regular_representation_squares(g: &FiniteGroup, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let n = g.order();
    let classes = g.conjugacy_classes();
    let inverse: Vec<usize> = (0..classes.len())
        .map(|c| classes.class_of[g.inv(classes.representative(c))])
        .collect();
    let mut weights = vec![Complex::new(0.0, 0.0); classes.len()];
    for c in 0..classes.len() {
        if inverse[c] < c {
            weights[c] = weights[inverse[c]].conj();
        } else if inverse[c] == c {
            weights[c] = Complex::new(rng.gen_range(-1.0..1.0), 0.0);
        } else {
            weights[c] = Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        }
    }
    let mut m = DMatrix::<Complex<f64>>::zeros(n, n);
    for x in 0..n {
        let w = weights[classes.class_of[x]];
        for y in 0..n {
            m[(g.mul(x, y), y)] += w;
        }
    }
    let mut eig: Vec<f64> = m.symmetric_eigen().eigenvalues.iter().copied().collect();
    eig.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut sizes = Vec::new();
    let mut start = 0;
    for i in 1..=n {
        if i == n || eig[i] - eig[i - 1] > 1e-7 {
            sizes.push(i - start);
            start = i;
        }
    }
    sizes.sort_unstable();
    sizes
}

#[test]
fn dixon_degrees_match_regular_representation() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (name, g) in common::corpus().into_iter().filter(|(_, g)| g.order() <= 24) {
        let table = CharacterTable::new(g.clone()).unwrap();
        table.verify().unwrap();
        let mut squares: Vec<usize> = table.degrees().iter().map(|&d| (d * d) as usize).collect();
        squares.sort_unstable();
        assert_eq!(squares, regular_representation_squares(&g, &mut rng), "{name}");
    }
}

#[test]
fn tables_satisfy_invariants_across_corpus() {
    for (name, g) in common::corpus() {
        let table = CharacterTable::new(g.clone()).unwrap();
        assert_eq!(table.len(), g.conjugacy_classes().len(), "{name}");
        table.verify().unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(table.row(0).iter().all(|&v| v == 1), "{name}: row 0 is not trivial");
    }
}

#[test]
fn tables_agree_across_primes_up_to_relabelling() {
    for (name, g) in common::corpus().into_iter().filter(|(_, g)| g.order() <= 24) {
        let a = CharacterTable::new(g.clone()).unwrap();
        let exponent = g.exponent();
        let mut p = a.prime() + exponent;
        while !bohrcheck_core::group::is_prime(p) {
            p += exponent;
        }
        let b = CharacterTable::with_prime(g.clone(), p).unwrap();
        let mut da = a.degrees().to_vec();
        let mut db = b.degrees().to_vec();
        da.sort_unstable();
        db.sort_unstable();
        assert_eq!(da, db, "{name}");
    }
}

#[test]
fn equalizer_witness_for_every_proper_subgroup() {
    for (name, g) in common::corpus().into_iter().filter(|(_, g)| g.order() <= 64) {
        for h in g.all_subgroups().unwrap() {
            if h.order() == g.order() {
                continue;
            }
            let (_, emb) = h.materialize(&g).unwrap();
            let rt = RestrictionTable::new(&emb).unwrap();
            let w = equalizer_witness(&emb).unwrap_or_else(|e| panic!("{name} / {h:?}: {e}"));
            assert!(w.verify(&rt), "{name}: invalid witness {w:?}");
        }
    }
}

#[test]
fn restriction_is_constant_on_one_clifford_class() {
    for (name, g) in common::corpus().into_iter().filter(|(_, g)| g.order() <= 48) {
        for h in g.all_subgroups().unwrap() {
            if !h.is_normal_in(&g) {
                continue;
            }
            let (src, emb) = h.materialize(&g).unwrap();
            let fam = CliffordFamily::new(src, std::slice::from_ref(&emb)).unwrap();
            let rt = &fam.members()[0];
            for pi in 0..rt.g_table().len() {
                let support: Vec<usize> = (0..fam.h_table().len()).filter(|&r| rt.multiplicity(pi, r) > 0).collect();
                assert!(!support.is_empty(), "{name}");
                let class = fam.clifford_class(support[0]);
                assert_eq!(class, support, "{name}: support of pi={pi} is not one class");
                let m = rt.multiplicity(pi, support[0]);
                assert!(support.iter().all(|&r| rt.multiplicity(pi, r) == m), "{name}");
            }
            for rho in 0..fam.h_table().len() {
                let class = fam.clifford_class(rho);
                for &other in &class {
                    assert_eq!(fam.clifford_class(other), class, "{name}");
                }
                let report = fam.report(rho);
                assert_eq!(report.class_size, report.class_members.len());
                assert_eq!(report.per_member_multiplicity[&0], fam.clifford_multiplicity(rho, 0));
            }
        }
    }
}

#[test]
fn central_clifford_classes_are_singletons() {
    for (name, g) in common::corpus().into_iter().filter(|(_, g)| g.order() <= 64) {
        let z = g.center();
        let (src, emb) = z.materialize(&g).unwrap();
        let fam = CliffordFamily::new(src, &[emb]).unwrap();
        for rho in 0..fam.h_table().len() {
            assert_eq!(fam.clifford_class(rho), vec![rho], "{name}");
        }
    }
}

#[test]
fn heisenberg_degrees_and_multiplicities() {
    let z = Arc::new(cyclic_named(2, "z").unwrap());
    let mut profile = Vec::new();
    for i in 1..=3u32 {
        let h = heisenberg(i).unwrap();
        let emb = GroupHom::from_generator_images(z.clone(), h.group.clone(), &[(1, h.central_involution())]).unwrap();
        let rt = RestrictionTable::new(&emb).unwrap();
        let mut by_degree: BTreeMap<u64, usize> = BTreeMap::new();
        for pi in 0..rt.g_table().len() {
            if rt.multiplicity(pi, 1) > 0 {
                assert_eq!(rt.g_table().degree(pi), 1 << i);
                assert_eq!(rt.multiplicity(pi, 1), 1 << i);
                *by_degree.entry(rt.g_table().degree(pi)).or_default() += 1;
            }
        }
        assert_eq!(by_degree.len(), 1);
        profile.push(clifford_multiplicity(1, &emb).unwrap());
    }
    assert_eq!(profile, vec![2, 4, 8]);
}
