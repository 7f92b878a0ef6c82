use std::collections::VecDeque;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, TorusPoint};
use crate::zmat::IntMatrix;

use super::{AmalgamSpec, AmalgamWord};

/// A group that words can be evaluated in.
pub trait TargetGroup {
    type Element: Clone + PartialEq + std::fmt::Debug;

    fn identity(&self) -> Self::Element;
    fn mul(&self, a: &Self::Element, b: &Self::Element) -> Self::Element;
}

/// A finite group given by its table.
#[derive(Clone, Debug)]
pub struct FiniteTarget(pub Arc<FiniteGroup>);

impl TargetGroup for FiniteTarget {
    type Element = usize;

    fn identity(&self) -> usize {
        0
    }

    fn mul(&self, a: &usize, b: &usize) -> usize {
        self.0.mul(*a, *b)
    }
}

/// `GL(k, Z)` with exact integer arithmetic.
#[derive(Clone, Copy, Debug)]
pub struct MatrixTarget {
    pub dim: usize,
}

impl TargetGroup for MatrixTarget {
    type Element = IntMatrix;

    fn identity(&self) -> IntMatrix {
        IntMatrix::identity(self.dim)
    }

    fn mul(&self, a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
        a * b
    }
}

/// `(Q/Z)^k ⋊ GL(k, Z)` with matrices acting on coordinates:
/// `(x, A)(y, B) = (x + A y, A B)`.
#[derive(Clone, Copy, Debug)]
pub struct TorusSemidirect {
    pub dim: usize,
}

impl TargetGroup for TorusSemidirect {
    type Element = (TorusPoint, IntMatrix);

    fn identity(&self) -> Self::Element {
        (TorusPoint::zero(self.dim), IntMatrix::identity(self.dim))
    }

    fn mul(&self, a: &Self::Element, b: &Self::Element) -> Self::Element {
        (a.0.add(&b.0.transform(&a.1)), &a.1 * &b.1)
    }
}

/// Extends generator images to a full image table over `group`, checking
/// consistency along the way.
pub fn images_from_generators<T: TargetGroup>(
    group: &FiniteGroup,
    target: &T,
    generators: &[(usize, T::Element)],
) -> Result<Vec<T::Element>> {
    let mut map: Vec<Option<T::Element>> = vec![None; group.order()];
    map[0] = Some(target.identity());
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        let fx = map[x].clone().expect("visited");
        for (s, t) in generators {
            let y = group.mul(x, *s);
            let fy = target.mul(&fx, t);
            match &map[y] {
                None => {
                    map[y] = Some(fy);
                    queue.push_back(y);
                }
                Some(old) if *old != fy => return Err(Error::NotAHomomorphism { a: x, b: *s }),
                Some(_) => {}
            }
        }
    }
    map.into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::Invalid("listed elements do not generate the group".into()))
}

fn check_images<T: TargetGroup>(spec: &AmalgamSpec, target: &T, images: &[Vec<T::Element>]) -> Result<()> {
    if images.len() != spec.factors().len() {
        return Err(Error::DimensionMismatch {
            expected: spec.factors().len(),
            found: images.len(),
        });
    }
    for (i, (g, img)) in spec.factors().iter().zip(images).enumerate() {
        if img.len() != g.order() {
            return Err(Error::Invalid(format!("factor {i}: one image per element is required")));
        }
        for a in 0..g.order() {
            for b in 0..g.order() {
                if img[g.mul(a, b)] != target.mul(&img[a], &img[b]) {
                    return Err(Error::NotAHomomorphism { a, b });
                }
            }
        }
    }
    let h = spec.amalgam();
    for x in 0..h.order() {
        let first = &images[0][spec.injections()[0].apply(x)];
        for (i, inj) in spec.injections().iter().enumerate().skip(1) {
            if images[i][inj.apply(x)] != *first {
                return Err(Error::DisagreeOnAmalgam { element: x, factor: i });
            }
        }
    }
    Ok(())
}

/// Evaluates a word under per-factor homomorphisms (`images[i][g]` is the
/// image of `g` in factor `i`) that agree on the amalgam.
pub fn eval_hom<T: TargetGroup>(
    spec: &AmalgamSpec,
    w: &AmalgamWord,
    target: &T,
    images: &[Vec<T::Element>],
) -> Result<T::Element> {
    check_images(spec, target, images)?;
    spec.check_word(w)?;
    Ok(w
        .letters
        .iter()
        .fold(target.identity(), |acc, l| target.mul(&acc, &images[l.factor][l.element])))
}
