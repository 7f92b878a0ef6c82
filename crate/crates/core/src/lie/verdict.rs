use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::FiniteAbelian;
use crate::zmat::{abelian_embeds, element_order, fixed_subgroup_structure, ElementOrder, FixedStructure, IntMatrix};

use super::{achievable_center_autos, lie_center, CenterAuto, LieDatum};

/// Entry bound for the conjugators searched when building a concrete
/// torsion witness.
pub const CONJUGATOR_BOUND: i64 = 6;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionsReport {
    /// (a) the central torus has dimension at most one.
    pub no_central_2torus: bool,
    /// (b) the dual of the center has rank at most one.
    pub dual_rank_le_1: bool,
    /// (c) the automorphism group is compact.
    pub aut_compact: bool,
    /// (a), (b) and (c) agree.
    pub consistent: bool,
    /// `None` when undecided.
    pub has_largest_compact: Option<bool>,
    /// Torsion of the restriction to the central torus is at most `{+-1}`.
    pub inversion_only: Option<bool>,
}

pub fn conditions_abc(datum: &LieDatum) -> Result<ConditionsReport> {
    let a = datum.z() <= 1;
    let b = lie_center(datum).torus_dim <= 1;
    let largest = if datum.z() <= 2 {
        match largest_compact_verdict(datum)?.verdict {
            LargestCompact::HasLargest => Some(true),
            LargestCompact::NoLargest => Some(false),
            LargestCompact::Unknown => None,
        }
    } else {
        None
    };
    Ok(ConditionsReport {
        no_central_2torus: a,
        dual_rank_le_1: b,
        aut_compact: a,
        consistent: a == b,
        has_largest_compact: largest,
        inversion_only: largest,
    })
}

/// A center automorphism compatible with a torus automorphism.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftWitness {
    pub psi: CenterAuto,
}

fn apply_torus(datum: &LieDatum, m: &IntMatrix, t: &[i64]) -> Vec<i64> {
    let n = datum.denominator();
    m.apply(t).into_iter().map(|x| x.rem_euclid(n)).collect()
}

fn phi<'a>(datum: &'a LieDatum, s: &[i64]) -> Option<&'a Vec<i64>> {
    datum.graph().get(s)
}

fn reduced_generators(datum: &LieDatum) -> Vec<Vec<i64>> {
    datum
        .generators()
        .iter()
        .map(|g| {
            let mut s = g.simple.clone();
            datum.reduce_simple(&mut s);
            s
        })
        .collect()
}

/// Whether `alpha0` on the central torus extends to an automorphism of the
/// group: some achievable `psi` preserving `Delta_S` has
/// `alpha0 . phi = phi . psi`.
pub fn liftable(datum: &LieDatum, alpha0: &IntMatrix) -> Result<Option<LiftWitness>> {
    if alpha0.rows() != datum.z() || !alpha0.is_square() {
        return Err(Error::DimensionMismatch {
            expected: datum.z(),
            found: alpha0.rows(),
        });
    }
    alpha0.check_unimodular()?;
    let autos = achievable_center_autos(datum.factors())?;
    let gens = reduced_generators(datum);
    'psi: for psi in autos.elements {
        for s in &gens {
            let Some(image) = phi(datum, &psi.apply(datum, s)) else {
                continue 'psi;
            };
            if *image != apply_torus(datum, alpha0, &phi(datum, s).expect("generator in Delta_S")) {
                continue 'psi;
            }
        }
        return Ok(Some(LiftWitness { psi }));
    }
    Ok(None)
}

/// `I, -I`, the two classes of reflections, and the rotations of orders
/// 4 and 6 with their negatives: every finite-order element of `GL(2, Z)`
/// is conjugate to one of these.
pub fn torsion_class_representatives() -> Vec<IntMatrix> {
    let m = |r: [[i64; 2]; 2]| IntMatrix::from_rows(&[r[0].to_vec(), r[1].to_vec()]).expect("2x2");
    let base = [
        m([[1, 0], [0, -1]]),
        m([[-1, 1], [0, 1]]),
        m([[0, -1], [1, 0]]),
        m([[0, -1], [1, 1]]),
    ];
    let mut out = vec![IntMatrix::identity(2), -&IntMatrix::identity(2)];
    for b in base {
        let neg = -&b;
        out.push(b);
        out.push(neg);
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LargestCompact {
    HasLargest,
    NoLargest,
    Unknown,
}

/// What a torsion class contributes: `Delta_0` must embed in the fixed
/// subgroup of the representative (or of its negative when inversion is
/// available) for a liftable conjugate to exist.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRecord {
    pub representative: IntMatrix,
    pub order: u64,
    pub fixed: FixedStructure,
    pub embeds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LargestCompactReport {
    pub verdict: LargestCompact,
    pub explanation: String,
    pub delta0: FiniteAbelian,
    pub inversion_available: bool,
    pub classes: Vec<ClassRecord>,
    /// A liftable finite-order automorphism other than `+-I`.
    pub witness: Option<IntMatrix>,
}

/// Induced actions of the compatible center automorphisms on `Delta_0`:
/// `Some(+1)`, `Some(-1)` or `None` for anything else.
fn induced_signs(datum: &LieDatum) -> Result<Vec<Option<i64>>> {
    let autos = achievable_center_autos(datum.factors())?;
    let gens = reduced_generators(datum);
    let n = datum.denominator();
    let kernel: Vec<&Vec<i64>> = datum
        .graph()
        .iter()
        .filter(|(_, t)| t.iter().all(|&x| x == 0))
        .map(|(s, _)| s)
        .collect();
    let mut out = Vec::new();
    for psi in autos.elements {
        let preserves = gens.iter().all(|s| phi(datum, &psi.apply(datum, s)).is_some())
            && kernel
                .iter()
                .all(|s| phi(datum, &psi.apply(datum, s)).is_some_and(|t| t.iter().all(|&x| x == 0)));
        if !preserves {
            continue;
        }
        let sign_fits = |sign: i64| {
            gens.iter().all(|s| {
                let t = phi(datum, s).expect("generator");
                let expected: Vec<i64> = t.iter().map(|&x| (sign * x).rem_euclid(n)).collect();
                *phi(datum, &psi.apply(datum, s)).expect("preserved") == expected
            })
        };
        out.push(if sign_fits(1) {
            Some(1)
        } else if sign_fits(-1) {
            Some(-1)
        } else {
            None
        });
    }
    Ok(out)
}

fn conjugators(bound: i64) -> impl Iterator<Item = IntMatrix> {
    let range = move || -bound..=bound;
    range()
        .flat_map(move |a| range().flat_map(move |b| range().flat_map(move |c| range().map(move |d| [a, b, c, d]))))
        .filter(|[a, b, c, d]| (a * d - b * c).abs() == 1)
        .map(|[a, b, c, d]| IntMatrix::from_rows(&[vec![a, b], vec![c, d]]).expect("2x2"))
}

pub fn largest_compact_verdict(datum: &LieDatum) -> Result<LargestCompactReport> {
    let delta0 = datum.delta0();
    let mut report = LargestCompactReport {
        verdict: LargestCompact::HasLargest,
        explanation: String::new(),
        delta0: delta0.clone(),
        inversion_available: false,
        classes: Vec::new(),
        witness: None,
    };
    match datum.z() {
        0 | 1 => {
            report.explanation = "central torus of dimension at most one: the automorphism group is compact".into();
            return Ok(report);
        }
        2 => {}
        z => return Err(Error::UnsupportedRank(z)),
    }
    let signs = induced_signs(datum)?;
    if signs.iter().any(Option::is_none) {
        report.verdict = LargestCompact::Unknown;
        report.explanation =
            "some compatible center automorphism acts on Delta_0 neither trivially nor by inversion".into();
        return Ok(report);
    }
    report.inversion_available = signs.contains(&Some(-1));
    let reps = torsion_class_representatives();
    let mut unresolved = Vec::new();
    for r in reps.iter().skip(2) {
        let order = match element_order(r)? {
            ElementOrder::Finite(n) => n,
            ElementOrder::Infinite => unreachable!("representatives have finite order"),
        };
        let fixed = fixed_subgroup_structure(r)?;
        let minus_fixed = fixed_subgroup_structure(&-r)?;
        let embeds = abelian_embeds(&delta0, &fixed)
            || (report.inversion_available && abelian_embeds(&delta0, &minus_fixed));
        report.classes.push(ClassRecord {
            representative: r.clone(),
            order,
            fixed,
            embeds,
        });
        if !embeds || report.witness.is_some() {
            continue;
        }
        let mut found = None;
        for p in std::iter::once(IntMatrix::identity(2)).chain(conjugators(CONJUGATOR_BOUND)) {
            let g = &(&p * r) * &p.inverse()?;
            if liftable(datum, &g)?.is_some() {
                found = Some(g);
                break;
            }
        }
        match found {
            Some(g) => report.witness = Some(g),
            None => unresolved.push(r.to_string()),
        }
    }
    if let Some(w) = &report.witness {
        report.verdict = LargestCompact::NoLargest;
        report.explanation = format!("the finite-order automorphism {w} of the central torus lifts");
    } else if !unresolved.is_empty() {
        report.verdict = LargestCompact::Unknown;
        report.explanation = format!(
            "Delta_0 fits in the fixed subgroup of {} but no liftable conjugate was found",
            unresolved.join(", ")
        );
    } else {
        report.explanation = format!(
            "Delta_0 = {} embeds in no fixed subgroup of a torsion class other than +-I",
            delta0
        );
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::TorusPoint;
    use crate::lie::{DeltaGenerator, SimpleType};

    fn m(rows: [[i64; 2]; 2]) -> IntMatrix {
        IntMatrix::from_rows(&[rows[0].to_vec(), rows[1].to_vec()]).unwrap()
    }

    #[test]
    fn representatives_have_expected_orders() {
        let orders: Vec<u64> = torsion_class_representatives()
            .iter()
            .map(|r| match element_order(r).unwrap() {
                ElementOrder::Finite(n) => n,
                ElementOrder::Infinite => 0,
            })
            .collect();
        assert_eq!(orders, vec![1, 2, 2, 2, 2, 2, 4, 4, 6, 3]);
    }

    #[test]
    fn su2_and_bare_torus() {
        let su2 = LieDatum::new(0, vec!["A1".parse().unwrap()], vec![]).unwrap();
        let c = conditions_abc(&su2).unwrap();
        assert!(c.no_central_2torus && c.dual_rank_le_1 && c.aut_compact && c.consistent);
        assert_eq!(c.has_largest_compact, Some(true));

        let t2 = LieDatum::new(2, vec![], vec![]).unwrap();
        let c = conditions_abc(&t2).unwrap();
        assert!(!c.no_central_2torus && !c.dual_rank_le_1 && !c.aut_compact && c.consistent);
        let v = largest_compact_verdict(&t2).unwrap();
        assert_eq!(v.verdict, LargestCompact::NoLargest);
        assert_eq!(v.witness, Some(m([[1, 0], [0, -1]])));
    }

    #[test]
    fn glued_family() {
        for (k, l) in [(3, 2), (4, 2), (4, 3)] {
            let d = LieDatum::glued_su3_powers(k, l).unwrap();
            let v = largest_compact_verdict(&d).unwrap();
            assert_eq!(v.verdict, LargestCompact::HasLargest, "({k},{l}): {}", v.explanation);
            assert!(v.inversion_available);
            assert_eq!(v.delta0.order(), 3u64.pow(k + l - 1));
            for c in &v.classes {
                if c.order >= 3 {
                    assert!(c.fixed.finite_order().unwrap() <= 4);
                }
                assert!(!c.embeds);
            }
            assert_eq!(conditions_abc(&d).unwrap().has_largest_compact, Some(true));
        }
    }

    #[test]
    fn lifting() {
        let d = LieDatum::glued_su3_powers(3, 2).unwrap();
        let id = liftable(&d, &IntMatrix::identity(2)).unwrap().unwrap();
        assert!(id.psi.is_identity());
        let inv = liftable(&d, &-&IntMatrix::identity(2)).unwrap().unwrap();
        assert_eq!(inv.psi.invert, vec![true, true]);
        let unipotent = m([[1, 27], [0, 1]]);
        assert!(liftable(&d, &unipotent).unwrap().unwrap().psi.is_identity());
        assert!(liftable(&d, &m([[1, 1], [0, 1]])).unwrap().is_none());
        assert!(matches!(
            liftable(&d, &IntMatrix::identity(3)).unwrap_err(),
            Error::DimensionMismatch { .. }
        ));
    }

    #[test]
    fn non_rigid_data_are_unknown() {
        // two unglued SU(3) factors mapped onto independent circles: the
        // single inversion acts on Delta_0 by diag(-1, 1)
        let a2: SimpleType = "A2".parse().unwrap();
        let d = LieDatum::new(
            2,
            vec![a2, "A3".parse().unwrap()],
            vec![
                DeltaGenerator { simple: vec![1, 0], torus: TorusPoint::from_fractions(&[(1, 3), (0, 1)]) },
                DeltaGenerator { simple: vec![0, 1], torus: TorusPoint::from_fractions(&[(0, 1), (1, 4)]) },
            ],
        )
        .unwrap();
        assert_eq!(largest_compact_verdict(&d).unwrap().verdict, LargestCompact::Unknown);
        let z3 = LieDatum::new(3, vec![], vec![]).unwrap();
        assert_eq!(largest_compact_verdict(&z3).unwrap_err(), Error::UnsupportedRank(3));
    }
}
