//! Standard constructions: cyclic, symmetric, dihedral, Heisenberg groups,
//! direct and semidirect products.

use std::sync::Arc;

use super::{FiniteGroup, GroupHom, Subgroup};
use crate::error::{Error, Result};

/// Largest order any constructor here will build.
pub const MAX_CONSTRUCTED_ORDER: usize = 1 << 14;
/// Default bound on the Heisenberg parameter (order `2^(3i)`).
pub const HEISENBERG_MAX_I: u32 = 4;

fn check_size(what: &'static str, order: usize) -> Result<()> {
    if order > MAX_CONSTRUCTED_ORDER {
        return Err(Error::SizeLimit {
            what,
            value: order as u128,
            limit: MAX_CONSTRUCTED_ORDER as u128,
        });
    }
    Ok(())
}

fn from_fn(order: usize, labels: Option<Vec<String>>, f: impl Fn(usize, usize) -> usize) -> Result<FiniteGroup> {
    let mut mul = Vec::with_capacity(order * order);
    for a in 0..order {
        for b in 0..order {
            mul.push(f(a, b) as u32);
        }
    }
    FiniteGroup::from_flat(order, mul, labels)
}

pub fn cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::Invalid("cyclic group of order 0".into()));
    }
    check_size("cyclic order", n)?;
    from_fn(n, None, |a, b| (a + b) % n)
}

/// Cyclic group whose element `k` is labelled `gen^k`.
pub fn cyclic_named(n: usize, generator: &str) -> Result<FiniteGroup> {
    let labels = (0..n)
        .map(|k| match k {
            0 => "1".to_string(),
            1 => generator.to_string(),
            _ => format!("{generator}^{k}"),
        })
        .collect();
    cyclic(n)?.with_labels(labels)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Cycle notation on points `1..=n`, `()` for the identity.
pub(crate) fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        let mut cycle = vec![start + 1];
        seen[start] = true;
        let mut x = p[start];
        while x != start {
            seen[x] = true;
            cycle.push(x + 1);
            x = p[x];
        }
        out.push('(');
        out.push_str(&cycle.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" "));
        out.push(')');
    }
    if out.is_empty() {
        "()".into()
    } else {
        out
    }
}

fn permutation_group(perms: Vec<Vec<usize>>) -> Result<FiniteGroup> {
    use std::collections::HashMap;
    let index: HashMap<&[usize], usize> = perms.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
    let labels = perms.iter().map(|p| cycle_notation(p)).collect();
    let compose = |a: usize, b: usize| -> usize {
        // (a*b)(x) = a(b(x)): apply b first.
        let c: Vec<usize> = perms[b].iter().map(|&x| perms[a][x]).collect();
        index[c.as_slice()]
    };
    from_fn(perms.len(), Some(labels), compose)
}

/// Symmetric group on `n` points; elements in lexicographic order of their
/// image vectors (identity first), labelled in cycle notation.
pub fn symmetric(n: usize) -> Result<FiniteGroup> {
    if n == 0 || n > 7 {
        return Err(Error::SizeLimit {
            what: "symmetric degree",
            value: n as u128,
            limit: 7,
        });
    }
    permutation_group(permutations(n))
}

fn is_even(p: &[usize]) -> bool {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 0
}

pub fn alternating(n: usize) -> Result<FiniteGroup> {
    if n == 0 || n > 7 {
        return Err(Error::SizeLimit {
            what: "alternating degree",
            value: n as u128,
            limit: 7,
        });
    }
    permutation_group(permutations(n).into_iter().filter(|p| is_even(p)).collect())
}

/// Dihedral group of order `2n`; element `k + n*e` is `r^k s^e`.
pub fn dihedral(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::Invalid("dihedral group with n = 0".into()));
    }
    check_size("dihedral order", 2 * n)?;
    let labels = (0..2 * n)
        .map(|i| {
            let (k, e) = (i % n, i / n);
            let r = match k {
                0 => String::new(),
                1 => "r".into(),
                _ => format!("r^{k}"),
            };
            match (r.is_empty(), e) {
                (true, 0) => "1".into(),
                (false, 0) => r,
                (true, _) => "s".into(),
                (false, _) => format!("{r} s"),
            }
        })
        .collect();
    from_fn(2 * n, Some(labels), |a, b| {
        let (ka, ea) = (a % n, a / n);
        let (kb, eb) = (b % n, b / n);
        let k = if ea == 0 { ka + kb } else { ka + n - kb } % n;
        k + n * ((ea + eb) % 2)
    })
}

pub fn direct_product(left: &FiniteGroup, right: &FiniteGroup) -> Result<FiniteGroup> {
    let (m, n) = (left.order(), right.order());
    check_size("direct product order", m * n)?;
    let labels = match (left.labels(), right.labels()) {
        (None, None) => None,
        _ => Some(
            (0..m * n)
                .map(|i| format!("({},{})", left.label(i / n), right.label(i % n)))
                .collect(),
        ),
    };
    from_fn(m * n, labels, |a, b| {
        left.mul(a / n, b / n) * n + right.mul(a % n, b % n)
    })
}

/// Heisenberg group of unipotent upper-triangular 3x3 matrices over
/// `Z/2^i`, with its center.
#[derive(Clone, Debug)]
pub struct Heisenberg {
    pub i: u32,
    pub group: Arc<FiniteGroup>,
    pub center: Subgroup,
}

impl Heisenberg {
    pub fn modulus(&self) -> usize {
        1 << self.i
    }

    /// Element `[[1,a,c],[0,1,b],[0,0,1]]`.
    pub fn element(&self, a: usize, b: usize, c: usize) -> usize {
        let n = self.modulus();
        (a % n) * n * n + (b % n) * n + (c % n)
    }

    /// The central involution `c = 2^(i-1)`.
    pub fn central_involution(&self) -> usize {
        self.element(0, 0, self.modulus() / 2)
    }
}

pub fn heisenberg(i: u32) -> Result<Heisenberg> {
    if i == 0 || i > HEISENBERG_MAX_I {
        return Err(Error::SizeLimit {
            what: "Heisenberg parameter",
            value: i as u128,
            limit: HEISENBERG_MAX_I as u128,
        });
    }
    let n = 1usize << i;
    let order = n * n * n;
    check_size("Heisenberg order", order)?;
    let split = |x: usize| (x / (n * n), (x / n) % n, x % n);
    let labels = (0..order)
        .map(|x| {
            let (a, b, c) = split(x);
            format!("[[1,{a},{c}],[0,1,{b}],[0,0,1]]")
        })
        .collect();
    let group = from_fn(order, Some(labels), |x, y| {
        let (a, b, c) = split(x);
        let (a2, b2, c2) = split(y);
        ((a + a2) % n) * n * n + ((b + b2) % n) * n + (c + c2 + a * b2) % n
    })?;
    let center = Subgroup {
        elements: (0..n).collect(),
    };
    Ok(Heisenberg {
        i,
        group: Arc::new(group),
        center,
    })
}

/// A semidirect product `N ⋊ A` with its two structural embeddings.
#[derive(Clone, Debug)]
pub struct Semidirect {
    pub group: Arc<FiniteGroup>,
    pub normal: GroupHom,
    pub complement: GroupHom,
}

/// Builds `N ⋊ A` where `action[a]` is the automorphism of `N` by which `a`
/// acts (as an image vector). Element `(n, a)` has index `a*|N| + n` and the
/// product is `(n1, a1)(n2, a2) = (n1 * a1(n2), a1 a2)`.
pub fn semidirect(normal: Arc<FiniteGroup>, acting: Arc<FiniteGroup>, action: &[Vec<usize>]) -> Result<Semidirect> {
    let (nn, na) = (normal.order(), acting.order());
    check_size("semidirect order", nn * na)?;
    validate_action(&normal, &acting, action)?;
    let labels = match (normal.labels(), acting.labels()) {
        (None, None) => None,
        _ => Some(
            (0..nn * na)
                .map(|i| format!("({},{})", normal.label(i % nn), acting.label(i / nn)))
                .collect(),
        ),
    };
    let group = Arc::new(from_fn(nn * na, labels, |x, y| {
        let (n1, a1) = (x % nn, x / nn);
        let (n2, a2) = (y % nn, y / nn);
        acting.mul(a1, a2) * nn + normal.mul(n1, action[a1][n2])
    })?);
    let normal_emb = GroupHom::new(normal.clone(), group.clone(), (0..nn).collect())?;
    let complement = GroupHom::new(acting.clone(), group.clone(), (0..na).map(|a| a * nn).collect())?;
    Ok(Semidirect {
        group,
        normal: normal_emb,
        complement,
    })
}

/// Checks that `action` is a homomorphism from `acting` into `Aut(normal)`.
pub fn validate_action(normal: &FiniteGroup, acting: &FiniteGroup, action: &[Vec<usize>]) -> Result<()> {
    let nn = normal.order();
    if action.len() != acting.order() {
        return Err(Error::NotAnAction { acting: action.len(), element: 0 });
    }
    for (a, img) in action.iter().enumerate() {
        if img.len() != nn || img.iter().any(|&x| x >= nn) {
            return Err(Error::NotAnAction { acting: a, element: 0 });
        }
        let mut hit = vec![false; nn];
        for (x, &y) in img.iter().enumerate() {
            if hit[y] {
                return Err(Error::NotAnAction { acting: a, element: x });
            }
            hit[y] = true;
        }
        for x in 0..nn {
            for y in 0..nn {
                if img[normal.mul(x, y)] != normal.mul(img[x], img[y]) {
                    return Err(Error::NotAnAction { acting: a, element: x });
                }
            }
        }
    }
    if (0..nn).any(|x| action[0][x] != x) {
        return Err(Error::NotAnAction { acting: 0, element: 0 });
    }
    for a in 0..acting.order() {
        for b in 0..acting.order() {
            let ab = acting.mul(a, b);
            for x in 0..nn {
                if action[ab][x] != action[a][action[b][x]] {
                    return Err(Error::NotAnAction { acting: ab, element: x });
                }
            }
        }
    }
    Ok(())
}
