use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{semidirect, validate_action, FiniteGroup};
use crate::zmat::IntMatrix;

use super::{AmalgamSpec, AmalgamWord, Letter};

/// The normal factor of a split embedding `H -> K ⋊ H`.
#[derive(Clone, Debug)]
pub enum SplitKernel {
    /// `action[a]` is the automorphism of `group` by which `a` acts.
    Finite {
        group: Arc<FiniteGroup>,
        action: Vec<Vec<usize>>,
    },
    /// `T^dim` with `action[a]` acting on characters.
    Torus { dim: usize, action: Vec<IntMatrix> },
}

impl SplitKernel {
    fn validate(&self, h: &FiniteGroup) -> Result<()> {
        match self {
            SplitKernel::Finite { group, action } => validate_action(group, h, action),
            SplitKernel::Torus { dim, action } => {
                if action.len() != h.order() {
                    return Err(Error::NotAnAction {
                        acting: action.len(),
                        element: 0,
                    });
                }
                for (a, m) in action.iter().enumerate() {
                    if m.rows() != *dim || !m.is_unimodular() {
                        return Err(Error::NotAnAction { acting: a, element: 0 });
                    }
                }
                if !action[0].is_identity() {
                    return Err(Error::NotAnAction { acting: 0, element: 0 });
                }
                for a in 0..h.order() {
                    for b in 0..h.order() {
                        if action[h.mul(a, b)] != &action[a] * &action[b] {
                            return Err(Error::NotAnAction {
                                acting: h.mul(a, b),
                                element: 0,
                            });
                        }
                    }
                }
                Ok(())
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub samples: usize,
    pub agreements: usize,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitCertificate {
    pub kind: String,
    pub members: usize,
    pub decomposition: Option<DecompositionReport>,
}

/// Families of split embeddings are always sound; when every kernel is
/// finite the word-level decomposition is checked as well.
pub fn split_family_verdict(
    h: &Arc<FiniteGroup>,
    kernels: &[SplitKernel],
    samples: usize,
    seed: u64,
) -> Result<SplitCertificate> {
    for k in kernels {
        k.validate(h)?;
    }
    let finite: Option<Vec<(Arc<FiniteGroup>, Vec<Vec<usize>>)>> = kernels
        .iter()
        .map(|k| match k {
            SplitKernel::Finite { group, action } => Some((group.clone(), action.clone())),
            SplitKernel::Torus { .. } => None,
        })
        .collect();
    let decomposition = match finite {
        Some(f) if !f.is_empty() => Some(split_decomposition_check(h, &f, samples, seed)?),
        _ => None,
    };
    Ok(SplitCertificate {
        kind: "split".into(),
        members: kernels.len(),
        decomposition,
    })
}

/// `(word over the free product of the kernels, element of H)`.
type RightElement = (AmalgamWord, usize);

struct Machines {
    h: Arc<FiniteGroup>,
    kernel_orders: Vec<usize>,
    actions: Vec<Vec<Vec<usize>>>,
    /// `∐_H (K_i ⋊ H)`.
    left: AmalgamSpec,
    /// `∐ K_i`, extended by `H` through the actions.
    right: AmalgamSpec,
}

impl Machines {
    fn build(h: &Arc<FiniteGroup>, kernels: &[(Arc<FiniteGroup>, Vec<Vec<usize>>)]) -> Result<Self> {
        let mut injections = Vec::new();
        let mut names = Vec::new();
        for (i, (k, action)) in kernels.iter().enumerate() {
            let sd = semidirect(k.clone(), h.clone(), action)?;
            injections.push(sd.complement);
            names.push(format!("K{i}"));
        }
        let left = AmalgamSpec::with_names(h.clone(), injections, names.clone())?;
        let right = AmalgamSpec::coproduct(kernels.iter().map(|(k, _)| k.clone()).collect(), names)?;
        Ok(Machines {
            h: h.clone(),
            kernel_orders: kernels.iter().map(|(k, _)| k.order()).collect(),
            actions: kernels.iter().map(|(_, a)| a.clone()).collect(),
            left,
            right,
        })
    }

    fn act(&self, a: usize, w: &AmalgamWord) -> AmalgamWord {
        AmalgamWord::new(
            w.letters
                .iter()
                .map(|l| Letter::new(l.factor, self.actions[l.factor][a][l.element]))
                .collect(),
        )
    }

    fn right_mul(&self, x: &RightElement, y: &RightElement) -> RightElement {
        (x.0.concat(&self.act(x.1, &y.0)), self.h.mul(x.1, y.1))
    }

    fn right_equal(&self, x: &RightElement, y: &RightElement) -> Result<bool> {
        Ok(x.1 == y.1 && self.right.word_equal(&x.0, &y.0)?)
    }

    fn forward(&self, w: &AmalgamWord) -> RightElement {
        w.letters.iter().fold((AmalgamWord::empty(), 0), |acc, l| {
            let nk = self.kernel_orders[l.factor];
            let letter = (
                AmalgamWord::new(vec![Letter::new(l.factor, l.element % nk)]),
                l.element / nk,
            );
            self.right_mul(&acc, &letter)
        })
    }

    fn backward(&self, x: &RightElement) -> AmalgamWord {
        let mut letters = x.0.letters.clone();
        if x.1 != 0 {
            letters.push(Letter::new(0, x.1 * self.kernel_orders[0]));
        }
        AmalgamWord::new(letters)
    }

    fn random_left(&self, rng: &mut ChaCha8Rng) -> AmalgamWord {
        let n = rng.gen_range(0..=6);
        AmalgamWord::new(
            (0..n)
                .map(|_| {
                    let f = rng.gen_range(0..self.left.factors().len());
                    Letter::new(f, rng.gen_range(0..self.left.factor(f).order()))
                })
                .collect(),
        )
    }

    fn random_right(&self, rng: &mut ChaCha8Rng) -> RightElement {
        let n = rng.gen_range(0..=6);
        let w = AmalgamWord::new(
            (0..n)
                .map(|_| {
                    let f = rng.gen_range(0..self.kernel_orders.len());
                    Letter::new(f, rng.gen_range(0..self.kernel_orders[f]))
                })
                .collect(),
        );
        (w, rng.gen_range(0..self.h.order()))
    }

    /// A word equal to `w` in the left machine, obtained by moving an
    /// element of `H` from one factor to another.
    fn rewrite(&self, w: &AmalgamWord, rng: &mut ChaCha8Rng) -> AmalgamWord {
        let a = rng.gen_range(0..self.h.order());
        let nf = self.left.factors().len();
        let (i, j) = (rng.gen_range(0..nf), rng.gen_range(0..nf));
        let inject = |f: usize, x: usize| Letter::new(f, self.left.injections()[f].apply(x));
        let mut letters = w.letters.clone();
        let at = rng.gen_range(0..=letters.len());
        letters.splice(at..at, [inject(i, a), inject(j, self.h.inv(a))]);
        AmalgamWord::new(letters)
    }
}

/// Checks on seeded samples that the canonical maps between
/// `∐_H (K_i ⋊ H)` and `(∐ K_i) ⋊ H` are mutually inverse and preserve
/// word equality.
pub fn split_decomposition_check(
    h: &Arc<FiniteGroup>,
    kernels: &[(Arc<FiniteGroup>, Vec<Vec<usize>>)],
    samples: usize,
    seed: u64,
) -> Result<DecompositionReport> {
    if kernels.is_empty() {
        return Err(Error::Invalid("at least one kernel is required".into()));
    }
    for (k, action) in kernels {
        validate_action(k, h, action)?;
    }
    let m = Machines::build(h, kernels)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut agreements = 0;
    for s in 0..samples {
        let w1 = m.random_left(&mut rng);
        let w2 = match s % 3 {
            0 => m.random_left(&mut rng),
            1 => m.backward(&m.forward(&w1)),
            _ => m.rewrite(&w1, &mut rng),
        };
        let x = m.random_right(&mut rng);
        let y = if s % 2 == 0 { m.random_right(&mut rng) } else { m.forward(&m.backward(&x)) };
        let (f1, f2) = (m.forward(&w1), m.forward(&w2));
        let ok = m.left.word_equal(&w1, &w2)? == m.right_equal(&f1, &f2)?
            && m.left.word_equal(&m.backward(&f1), &w1)?
            && m.right_equal(&m.forward(&m.backward(&x)), &x)?
            && m.right_equal(&x, &y)? == m.left.word_equal(&m.backward(&x), &m.backward(&y))?;
        agreements += usize::from(ok);
    }
    Ok(DecompositionReport {
        samples,
        agreements,
        passed: agreements == samples,
    })
}
