//! Free products of finite groups amalgamated over a common finite subgroup:
//! normal forms, the word problem, homomorphism evaluation, bi-invariant
//! pseudometrics from length functions, and split families.

mod eval;
mod length;
mod pseudometric;
mod split;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupHom};

pub use eval::{eval_hom, images_from_generators, FiniteTarget, MatrixTarget, TargetGroup, TorusSemidirect};
pub use length::{LengthFunction, PermutationRep};
pub use pseudometric::{
    bohr_lipschitz_check, operator_norm, LipschitzRecord, LipschitzVerdict, Pseudometric,
    NORM_ITERATION_CAP, NORM_TOLERANCE,
};
pub use split::{
    split_decomposition_check, split_family_verdict, DecompositionReport, SplitCertificate,
    SplitKernel,
};

/// A letter: an element of one factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub factor: usize,
    pub element: usize,
}

impl Letter {
    pub fn new(factor: usize, element: usize) -> Self {
        Letter { factor, element }
    }
}

/// A raw word; products are read left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AmalgamWord {
    pub letters: Vec<Letter>,
}

impl AmalgamWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        AmalgamWord { letters }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: &[(usize, usize)]) -> Self {
        AmalgamWord {
            letters: pairs.iter().map(|&(f, e)| Letter::new(f, e)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &AmalgamWord) -> AmalgamWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        AmalgamWord { letters }
    }
}

/// `iota(head) * t_1 * ... * t_m` with each `t_k` a nontrivial transversal
/// representative and adjacent factors distinct.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NormalForm {
    pub head: usize,
    pub tail: Vec<Letter>,
}

impl NormalForm {
    pub fn is_identity(&self) -> bool {
        self.head == 0 && self.tail.is_empty()
    }
}

/// Presentation of `G_0 *_H G_1 * ...` by injections `H -> G_i`, with
/// right-coset transversals of `iota_i(H)` in `G_i`.
#[derive(Clone, Debug)]
pub struct AmalgamSpec {
    amalgam: Arc<FiniteGroup>,
    factors: Vec<Arc<FiniteGroup>>,
    injections: Vec<GroupHom>,
    names: Vec<String>,
    transversals: Vec<Vec<usize>>,
    /// `split[i][g] = (h, t)` with `g = iota_i(h) * t`, `t` a representative.
    split: Vec<Vec<(usize, usize)>>,
    /// Preimages under each injection.
    preimage: Vec<Vec<Option<usize>>>,
}

impl AmalgamSpec {
    pub fn new(amalgam: Arc<FiniteGroup>, injections: Vec<GroupHom>) -> Result<Self> {
        let names = (0..injections.len()).map(|i| format!("G{i}")).collect();
        Self::with_names(amalgam, injections, names)
    }

    pub fn with_names(amalgam: Arc<FiniteGroup>, injections: Vec<GroupHom>, names: Vec<String>) -> Result<Self> {
        if names.len() != injections.len() {
            return Err(Error::Invalid("one name per factor is required".into()));
        }
        let mut factors = Vec::with_capacity(injections.len());
        let mut transversals = Vec::with_capacity(injections.len());
        let mut split = Vec::with_capacity(injections.len());
        let mut preimage = Vec::with_capacity(injections.len());
        for inj in &injections {
            if !inj.source().same_table(&amalgam) {
                return Err(Error::SourceMismatch);
            }
            if !inj.is_injective() {
                return Err(Error::NotInjective);
            }
            let g = inj.target().clone();
            let back = inj.inverse_map();
            let mut rep_of = vec![usize::MAX; g.order()];
            let mut reps = Vec::new();
            // elements in increasing order: the first element of each coset is its minimum
            for x in 0..g.order() {
                if rep_of[x] != usize::MAX {
                    continue;
                }
                reps.push(x);
                for h in 0..amalgam.order() {
                    rep_of[g.mul(inj.apply(h), x)] = x;
                }
            }
            let sp = (0..g.order())
                .map(|x| {
                    let t = rep_of[x];
                    let h = back[g.mul(x, g.inv(t))].expect("x t^-1 lies in the image of H");
                    (h, t)
                })
                .collect();
            factors.push(g);
            transversals.push(reps);
            split.push(sp);
            preimage.push(back);
        }
        Ok(AmalgamSpec {
            amalgam,
            factors,
            injections,
            names,
            transversals,
            split,
            preimage,
        })
    }

    /// The free product (trivial amalgam) of the given groups.
    pub fn coproduct(factors: Vec<Arc<FiniteGroup>>, names: Vec<String>) -> Result<Self> {
        let trivial = Arc::new(crate::group::cyclic(1)?);
        let injections = factors
            .into_iter()
            .map(|g| GroupHom::new(trivial.clone(), g, vec![0]))
            .collect::<Result<Vec<_>>>()?;
        Self::with_names(trivial, injections, names)
    }

    pub fn amalgam(&self) -> &Arc<FiniteGroup> {
        &self.amalgam
    }

    pub fn factors(&self) -> &[Arc<FiniteGroup>] {
        &self.factors
    }

    pub fn factor(&self, i: usize) -> &Arc<FiniteGroup> {
        &self.factors[i]
    }

    pub fn injections(&self) -> &[GroupHom] {
        &self.injections
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn transversal(&self, i: usize) -> &[usize] {
        &self.transversals[i]
    }

    pub fn is_coproduct(&self) -> bool {
        self.amalgam.order() == 1
    }

    /// Preimage of a factor element in `H`, when it lies in the amalgam.
    pub fn amalgam_preimage(&self, factor: usize, g: usize) -> Option<usize> {
        self.preimage[factor][g]
    }

    pub fn check_word(&self, w: &AmalgamWord) -> Result<()> {
        for (position, l) in w.letters.iter().enumerate() {
            if l.factor >= self.factors.len() || l.element >= self.factors[l.factor].order() {
                return Err(Error::InvalidLetter { position });
            }
        }
        Ok(())
    }

    pub fn normal_form(&self, w: &AmalgamWord) -> Result<NormalForm> {
        self.check_word(w)?;
        let mut head = 0usize;
        // stored reversed so the leftmost letter is at the end
        let mut rev_tail: Vec<Letter> = Vec::new();
        for l in w.letters.iter().rev() {
            let g = &self.factors[l.factor];
            let mut x = g.mul(l.element, self.injections[l.factor].apply(head));
            if let Some(first) = rev_tail.last() {
                if first.factor == l.factor {
                    x = g.mul(x, first.element);
                    rev_tail.pop();
                }
            }
            let (h, t) = self.split[l.factor][x];
            head = h;
            if t != 0 {
                rev_tail.push(Letter::new(l.factor, t));
            }
        }
        rev_tail.reverse();
        Ok(NormalForm { head, tail: rev_tail })
    }

    pub fn word_equal(&self, a: &AmalgamWord, b: &AmalgamWord) -> Result<bool> {
        Ok(self.normal_form(a)? == self.normal_form(b)?)
    }

    /// A word spelling the normal form: the head (in factor 0) followed by
    /// the tail letters.
    pub fn normal_form_word(&self, nf: &NormalForm) -> AmalgamWord {
        let mut letters = Vec::with_capacity(nf.tail.len() + 1);
        if nf.head != 0 {
            letters.push(Letter::new(0, self.injections[0].apply(nf.head)));
        }
        letters.extend_from_slice(&nf.tail);
        AmalgamWord { letters }
    }

    pub fn inverse_word(&self, w: &AmalgamWord) -> AmalgamWord {
        AmalgamWord {
            letters: w
                .letters
                .iter()
                .rev()
                .map(|l| Letter::new(l.factor, self.factors[l.factor].inv(l.element)))
                .collect(),
        }
    }

    /// Checks that the two factors meet exactly in the amalgam.
    pub fn intersection_check(&self) -> Result<IntersectionReport> {
        if self.factors.len() != 2 {
            return Err(Error::Invalid("intersection check needs exactly two factors".into()));
        }
        let mut in_second: HashMap<NormalForm, usize> = HashMap::new();
        for g in 0..self.factors[1].order() {
            in_second.insert(self.normal_form(&AmalgamWord::from_pairs(&[(1, g)]))?, g);
        }
        let mut holds = true;
        let mut order = 0;
        for g in 0..self.factors[0].order() {
            let nf = self.normal_form(&AmalgamWord::from_pairs(&[(0, g)]))?;
            let shared = in_second.contains_key(&nf);
            order += usize::from(shared);
            if shared != self.preimage[0][g].is_some() {
                holds = false;
            }
        }
        Ok(IntersectionReport {
            holds,
            intersection_order: order,
        })
    }

    pub fn find_factor(&self, reference: &str) -> Option<usize> {
        self.names
            .iter()
            .position(|n| n == reference)
            .or_else(|| reference.parse().ok().filter(|&i: &usize| i < self.factors.len()))
    }

    /// Parses whitespace-separated `factor:element` tokens, each side given
    /// by name/label or by index.
    pub fn parse_word(&self, text: &str) -> Result<AmalgamWord> {
        let mut letters = Vec::new();
        for (position, token) in text.split_whitespace().enumerate() {
            let (f, e) = token.split_once(':').ok_or(Error::InvalidLetter { position })?;
            let factor = self.find_factor(f).ok_or(Error::InvalidLetter { position })?;
            let element = self.factors[factor]
                .find_element(e)
                .ok_or(Error::InvalidLetter { position })?;
            letters.push(Letter::new(factor, element));
        }
        Ok(AmalgamWord { letters })
    }

    pub fn format_letter(&self, l: &Letter) -> String {
        format!("{}:{}", self.names[l.factor], self.factors[l.factor].label(l.element))
    }

    pub fn format_word(&self, w: &AmalgamWord) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.letters.iter().map(|l| self.format_letter(l)).collect::<Vec<_>>().join(" ")
    }

    pub fn format_normal_form(&self, nf: &NormalForm) -> String {
        NormalFormDisplay { spec: self, nf }.to_string()
    }
}

struct NormalFormDisplay<'a> {
    spec: &'a AmalgamSpec,
    nf: &'a NormalForm,
}

impl fmt::Display for NormalFormDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.spec.amalgam.label(self.nf.head))?;
        for l in &self.nf.tail {
            write!(f, " {}", self.spec.format_letter(l))?;
        }
        Ok(())
    }
}

pub fn normal_form(spec: &AmalgamSpec, w: &AmalgamWord) -> Result<NormalForm> {
    spec.normal_form(w)
}

pub fn word_equal(spec: &AmalgamSpec, a: &AmalgamWord, b: &AmalgamWord) -> Result<bool> {
    spec.word_equal(a, b)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionReport {
    pub holds: bool,
    pub intersection_order: usize,
}

pub fn intersection_check(spec: &AmalgamSpec) -> Result<IntersectionReport> {
    spec.intersection_check()
}
