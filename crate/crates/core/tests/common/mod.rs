#![allow(dead_code)]

use std::sync::Arc;

use bohrcheck_core::group::{
    alternating, cyclic, dihedral, direct_product, heisenberg, semidirect, symmetric, FiniteGroup,
};

/// Automorphism `x -> x^k` of the cyclic group of order `n`, as an image vector.
pub fn power_map(n: usize, k: usize) -> Vec<usize> {
    (0..n).map(|x| x * k % n).collect()
}

/// `Z/n x| Z/m` where the generator of `Z/m` acts by `x -> x^k`.
pub fn metacyclic(n: usize, m: usize, k: usize) -> Arc<FiniteGroup> {
    let action: Vec<Vec<usize>> = (0..m)
        .map(|a| power_map(n, (0..a).fold(1, |acc, _| acc * k % n)))
        .collect();
    semidirect(Arc::new(cyclic(n).unwrap()), Arc::new(cyclic(m).unwrap()), &action)
        .unwrap()
        .group
}

/// Groups used for sweeps: cyclic, dihedral, symmetric, alternating,
/// Heisenberg and small semidirect products.
pub fn corpus() -> Vec<(String, Arc<FiniteGroup>)> {
    let mut out: Vec<(String, Arc<FiniteGroup>)> = Vec::new();
    for n in [1, 2, 3, 4, 5, 6, 7, 8, 9, 12] {
        out.push((format!("Z{n}"), Arc::new(cyclic(n).unwrap())));
    }
    for n in [2, 3, 4, 5, 6, 8, 12] {
        out.push((format!("D{}", 2 * n), Arc::new(dihedral(n).unwrap())));
    }
    out.push(("S3".into(), Arc::new(symmetric(3).unwrap())));
    out.push(("S4".into(), Arc::new(symmetric(4).unwrap())));
    out.push(("A4".into(), Arc::new(alternating(4).unwrap())));
    out.push(("heis1".into(), heisenberg(1).unwrap().group));
    out.push(("heis2".into(), heisenberg(2).unwrap().group));
    out.push(("Z7:Z3".into(), metacyclic(7, 3, 2)));
    out.push(("Z5:Z4".into(), metacyclic(5, 4, 2)));
    out.push(("Z3:Z4".into(), metacyclic(3, 4, 2)));
    out.push(("Z9:Z2".into(), metacyclic(9, 2, 8)));
    let z2 = cyclic(2).unwrap();
    out.push(("Z2xS3".into(), Arc::new(direct_product(&z2, &symmetric(3).unwrap()).unwrap())));
    out.push(("Z2xA4".into(), Arc::new(direct_product(&z2, &alternating(4).unwrap()).unwrap())));
    out
}
