use num::{Rational64, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::{AmalgamSpec, AmalgamWord, LengthFunction, PermutationRep};

/// Relative convergence tolerance of the power iteration.
pub const NORM_TOLERANCE: f64 = 1e-9;
/// Iteration cap of the power iteration (per start vector).
pub const NORM_ITERATION_CAP: usize = 10_000;

/// The pseudometric on a free product induced by length functions on the
/// factors: the value at `g_1 ... g_n` is the least total cost
/// `sum l(g_k e_k^-1)` over letterwise perturbations `e_k` in the same factor
/// whose product is trivial.
#[derive(Clone, Debug)]
pub struct Pseudometric<'a> {
    spec: &'a AmalgamSpec,
    lengths: Vec<LengthFunction>,
}

type Cost = Option<Rational64>;

fn better(slot: &mut Cost, candidate: Rational64) {
    if slot.map_or(true, |c| candidate < c) {
        *slot = Some(candidate);
    }
}

impl<'a> Pseudometric<'a> {
    pub fn new(spec: &'a AmalgamSpec, lengths: Vec<LengthFunction>) -> Result<Self> {
        if !spec.is_coproduct() {
            return Err(Error::AmalgamNotTrivial);
        }
        if lengths.len() != spec.factors().len() {
            return Err(Error::DimensionMismatch {
                expected: spec.factors().len(),
                found: lengths.len(),
            });
        }
        for (i, (l, g)) in lengths.iter().zip(spec.factors()).enumerate() {
            if !l.group().same_table(g) {
                return Err(Error::Invalid(format!("length function {i} lives on a different group")));
            }
        }
        Ok(Pseudometric { spec, lengths })
    }

    pub fn spec(&self) -> &AmalgamSpec {
        self.spec
    }

    pub fn lengths(&self) -> &[LengthFunction] {
        &self.lengths
    }

    /// Interval dynamic program. `zero[i][j]`: least cost of making letters
    /// `i..j` multiply to the empty word. `block[p][g]` (for the current
    /// left end `i`): least cost of letters `i..=p` where `i` and `p` lie in
    /// one same-factor block with product `g` and everything between block
    /// letters cancels.
    pub fn value(&self, w: &AmalgamWord) -> Result<Rational64> {
        self.spec.check_word(w)?;
        let n = w.len();
        let letters = &w.letters;
        let cost = |k: usize, e: usize| self.lengths[letters[k].factor].distance(letters[k].element, e);
        let mut zero: Vec<Vec<Cost>> = vec![vec![None; n + 1]; n + 1];
        for (i, row) in zero.iter_mut().enumerate() {
            row[i] = Some(Rational64::zero());
        }
        for i in (0..n).rev() {
            let f = letters[i].factor;
            let g = self.spec.factor(f);
            let m = g.order();
            let mut block: Vec<Option<Vec<Cost>>> = vec![None; n];
            block[i] = Some((0..m).map(|e| Some(cost(i, e))).collect());
            for p in i + 1..n {
                if letters[p].factor != f {
                    continue;
                }
                let mut row: Vec<Cost> = vec![None; m];
                for q in i..p {
                    let (Some(prev), Some(gap)) = (&block[q], zero[q + 1][p]) else {
                        continue;
                    };
                    for (a, ca) in prev.iter().enumerate() {
                        let Some(ca) = ca else { continue };
                        for e in 0..m {
                            better(&mut row[g.mul(a, e)], ca + gap + cost(p, e));
                        }
                    }
                }
                block[p] = Some(row);
            }
            for j in i + 1..=n {
                let mut best: Cost = None;
                for p in i..j {
                    if let (Some(b), Some(rest)) = (&block[p], zero[p + 1][j]) {
                        if let Some(c) = b[0] {
                            better(&mut best, c + rest);
                        }
                    }
                }
                zero[i][j] = best;
            }
        }
        Ok(zero[0][n].expect("the all-identity perturbation is admissible"))
    }

    /// `d(w, w') = value(w w'^-1)`.
    pub fn distance(&self, w: &AmalgamWord, w2: &AmalgamWord) -> Result<Rational64> {
        self.value(&w.concat(&self.spec.inverse_word(w2)))
    }
}

/// Largest singular value of a real square matrix (row-major), by power
/// iteration on `A^T A` from every basis vector.
pub fn operator_norm(a: &[Vec<f64>]) -> f64 {
    let n = a.len();
    if a.iter().all(|r| r.iter().all(|&x| x == 0.0)) {
        return 0.0;
    }
    let ata: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| a[k][i] * a[k][j]).sum()).collect())
        .collect();
    let apply = |v: &[f64]| -> Vec<f64> { ata.iter().map(|r| r.iter().zip(v).map(|(x, y)| x * y).sum()).collect() };
    let norm = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>().sqrt();
    let mut best = 0.0f64;
    for start in 0..n {
        let mut v = vec![0.0; n];
        v[start] = 1.0;
        let mut lambda = 0.0;
        for _ in 0..NORM_ITERATION_CAP {
            let u = apply(&v);
            let next = norm(&u);
            if next == 0.0 {
                break;
            }
            v = u.into_iter().map(|x| x / next).collect();
            let done = (next - lambda).abs() <= NORM_TOLERANCE * next.max(1.0);
            lambda = next;
            if done {
                break;
            }
        }
        best = best.max(lambda);
    }
    best.sqrt()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LipschitzVerdict {
    Holds,
    Fails,
    /// `delta >= 1`: the bound `delta / (1 - delta)` is not available.
    Vacuous,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LipschitzRecord {
    pub delta: Rational64,
    pub norm: f64,
    pub bound: Option<f64>,
    pub verdict: LipschitzVerdict,
    /// `norm <= delta` (within tolerance), valid for every pair since each
    /// length dominates the operator distance of its permutation matrix.
    pub telescoping_holds: bool,
}

/// `rho(w) = rho(g_1) ... rho(g_n)` as a point map.
fn permutation_of(reps: &[PermutationRep], w: &AmalgamWord, degree: usize) -> Vec<usize> {
    let mut acc: Vec<usize> = (0..degree).collect();
    for l in &w.letters {
        let p = reps[l.factor].image(l.element);
        acc = p.iter().map(|&i| acc[i]).collect();
    }
    acc
}

/// Compares `||rho(w) - rho(w')||` with the pseudometric distance built from
/// the moved-point lengths of the given permutation representations.
pub fn bohr_lipschitz_check(
    spec: &AmalgamSpec,
    reps: &[PermutationRep],
    w: &AmalgamWord,
    w2: &AmalgamWord,
) -> Result<LipschitzRecord> {
    if reps.len() != spec.factors().len() {
        return Err(Error::DimensionMismatch {
            expected: spec.factors().len(),
            found: reps.len(),
        });
    }
    let degree = reps.first().map_or(0, PermutationRep::degree);
    for r in reps {
        if r.degree() != degree {
            return Err(Error::DimensionMismatch {
                expected: degree,
                found: r.degree(),
            });
        }
    }
    let lengths = reps.iter().map(LengthFunction::moved_points).collect();
    let metric = Pseudometric::new(spec, lengths)?;
    let delta = metric.distance(w, w2)?;
    let p = permutation_of(reps, w, degree);
    let q = permutation_of(reps, w2, degree);
    let matrix = |perm: &[usize], i: usize, j: usize| f64::from(u8::from(perm[j] == i));
    let diff: Vec<Vec<f64>> = (0..degree)
        .map(|i| (0..degree).map(|j| matrix(&p, i, j) - matrix(&q, i, j)).collect())
        .collect();
    let norm = operator_norm(&diff);
    let d = delta.to_f64().expect("small rational");
    let telescoping_holds = norm <= d + NORM_TOLERANCE;
    let (bound, verdict) = if d < 1.0 {
        let b = d / (1.0 - d);
        let v = if norm <= b + NORM_TOLERANCE {
            LipschitzVerdict::Holds
        } else {
            LipschitzVerdict::Fails
        };
        (Some(b), v)
    } else {
        (None, LipschitzVerdict::Vacuous)
    };
    Ok(LipschitzRecord {
        delta,
        norm,
        bound,
        verdict,
        telescoping_holds,
    })
}
