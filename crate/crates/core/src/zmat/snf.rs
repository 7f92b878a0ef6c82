use super::IntMatrix;

/// Smith normal form `U A V = S` with `U`, `V` unimodular and the diagonal
/// of `S` a nonnegative divisibility chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    pub rank: usize,
}

impl SmithForm {
    /// Nonzero diagonal entries, in order.
    pub fn invariant_factors(&self) -> Vec<i64> {
        (0..self.rank).map(|i| self.s.get(i, i)).collect()
    }
}

fn swap_rows(m: &mut IntMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for j in 0..m.cols() {
        let t = m.get(a, j);
        m.set(a, j, m.get(b, j));
        m.set(b, j, t);
    }
}

fn swap_cols(m: &mut IntMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for i in 0..m.rows() {
        let t = m.get(i, a);
        m.set(i, a, m.get(i, b));
        m.set(i, b, t);
    }
}

/// row[dst] += q * row[src]
fn add_row(m: &mut IntMatrix, dst: usize, src: usize, q: i64) {
    for j in 0..m.cols() {
        m.set(dst, j, m.get(dst, j) + q * m.get(src, j));
    }
}

/// col[dst] += q * col[src]
fn add_col(m: &mut IntMatrix, dst: usize, src: usize, q: i64) {
    for i in 0..m.rows() {
        m.set(i, dst, m.get(i, dst) + q * m.get(i, src));
    }
}

fn negate_row(m: &mut IntMatrix, r: usize) {
    for j in 0..m.cols() {
        m.set(r, j, -m.get(r, j));
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let (m, n) = (a.rows(), a.cols());
    let mut s = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    let mut rank = 0;

    for t in 0..m.min(n) {
        // smallest nonzero entry of the trailing block becomes the pivot
        let pivot = (t..m)
            .flat_map(|i| (t..n).map(move |j| (i, j)))
            .filter(|&(i, j)| s.get(i, j) != 0)
            .min_by_key(|&(i, j)| s.get(i, j).abs());
        let Some((pi, pj)) = pivot else { break };
        swap_rows(&mut s, t, pi);
        swap_rows(&mut u, t, pi);
        swap_cols(&mut s, t, pj);
        swap_cols(&mut v, t, pj);

        loop {
            let mut dirty = false;
            for i in t + 1..m {
                let q = s.get(i, t).div_euclid(s.get(t, t));
                if q != 0 {
                    add_row(&mut s, i, t, -q);
                    add_row(&mut u, i, t, -q);
                }
                if s.get(i, t) != 0 {
                    dirty = true;
                }
            }
            for j in t + 1..n {
                let q = s.get(t, j).div_euclid(s.get(t, t));
                if q != 0 {
                    add_col(&mut s, j, t, -q);
                    add_col(&mut v, j, t, -q);
                }
                if s.get(t, j) != 0 {
                    dirty = true;
                }
            }
            if dirty {
                // a nonzero remainder is smaller than the pivot: promote it
                let (bi, bj) = (t..m)
                    .map(|i| (i, t))
                    .chain((t..n).map(|j| (t, j)))
                    .filter(|&(i, j)| s.get(i, j) != 0)
                    .min_by_key(|&(i, j)| s.get(i, j).abs())
                    .expect("pivot row or column is nonzero");
                swap_rows(&mut s, t, bi);
                swap_rows(&mut u, t, bi);
                swap_cols(&mut s, t, bj);
                swap_cols(&mut v, t, bj);
                continue;
            }
            let p = s.get(t, t);
            let offender = (t + 1..m)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| s.get(i, j) % p != 0);
            match offender {
                Some((i, _)) => {
                    add_row(&mut s, t, i, 1);
                    add_row(&mut u, t, i, 1);
                }
                None => break,
            }
        }
        if s.get(t, t) < 0 {
            negate_row(&mut s, t);
            negate_row(&mut u, t);
        }
        rank += 1;
    }
    SmithForm { u, s, v, rank }
}
