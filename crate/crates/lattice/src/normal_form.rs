//! Hermite and Smith normal forms.
//!
//! The Hermite form is row style: `h = u·m` with `u` unimodular, `h` in
//! echelon form, positive pivots, and every entry above a pivot reduced into
//! `[0, pivot)`. Zero rows are kept at the bottom so `h` has the shape of `m`.
//!
//! Row elimination always picks the entry of smallest magnitude as the next
//! pivot and skips zero entries of the pivot row, which keeps the sparse
//! relation matrices of the higher layers cheap to reduce.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::IntMatrix;

#[derive(Clone, Debug)]
pub struct Hnf {
    pub h: IntMatrix,
    pub u: IntMatrix,
    /// Pivot column of each nonzero row of `h`, in row order.
    pub pivots: Vec<usize>,
}

impl Hnf {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

#[derive(Clone, Debug)]
pub struct Snf {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl Snf {
    /// The full diagonal of `s` (length min(rows, cols)), zeros included.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.nrows().min(self.s.ncols()))
            .map(|i| self.s.get(i, i).clone())
            .collect()
    }
}

/// `dst -= f·src` over the nonzero positions `nz` of `src`.
fn sub_mul(dst: &mut [BigInt], src: &[BigInt], nz: &[usize], f: &BigInt) {
    if f.is_zero() {
        return;
    }
    if f.is_one() {
        for &c in nz {
            dst[c] -= &src[c];
        }
    } else if (-f).is_one() {
        for &c in nz {
            dst[c] += &src[c];
        }
    } else {
        for &c in nz {
            dst[c] -= f * &src[c];
        }
    }
}

fn nonzero_positions(row: &[BigInt]) -> Vec<usize> {
    row.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(c, _)| c)
        .collect()
}

/// Borrows two distinct rows, the first mutably.
fn pair_mut(rows: &mut [Vec<BigInt>], dst: usize, src: usize) -> (&mut Vec<BigInt>, &Vec<BigInt>) {
    debug_assert_ne!(dst, src);
    if dst < src {
        let (a, b) = rows.split_at_mut(src);
        (&mut a[dst], &b[0])
    } else {
        let (a, b) = rows.split_at_mut(dst);
        (&mut b[0], &a[src])
    }
}

struct RowReducer {
    rows: Vec<Vec<BigInt>>,
    trans: Option<Vec<Vec<BigInt>>>,
    cols: usize,
}

impl RowReducer {
    fn new(m: &IntMatrix, track: bool) -> Self {
        let trans = track.then(|| IntMatrix::identity(m.nrows()).to_row_vecs());
        RowReducer {
            rows: m.to_row_vecs(),
            trans,
            cols: m.ncols(),
        }
    }

    /// `row[dst] -= f·row[src]`, mirrored on the transform.
    fn row_op(&mut self, dst: usize, src: usize, f: &BigInt, nz: &[usize]) {
        let (d, s) = pair_mut(&mut self.rows, dst, src);
        sub_mul(d, s, nz, f);
        if let Some(t) = self.trans.as_mut() {
            let (d, s) = pair_mut(t, dst, src);
            let tnz = nonzero_positions(s);
            sub_mul(d, s, &tnz, f);
        }
    }

    fn swap(&mut self, a: usize, b: usize) {
        self.rows.swap(a, b);
        if let Some(t) = self.trans.as_mut() {
            t.swap(a, b);
        }
    }

    fn negate(&mut self, r: usize) {
        for x in self.rows[r].iter_mut() {
            *x = -std::mem::take(x);
        }
        if let Some(t) = self.trans.as_mut() {
            for x in t[r].iter_mut() {
                *x = -std::mem::take(x);
            }
        }
    }

    fn run(&mut self) -> Vec<usize> {
        let nrows = self.rows.len();
        let mut pivots = Vec::new();
        let mut top = 0;
        for c in 0..self.cols {
            if top == nrows {
                break;
            }
            let mut found = false;
            loop {
                let best = (top..nrows)
                    .filter(|&r| !self.rows[r][c].is_zero())
                    .min_by(|&x, &y| self.rows[x][c].magnitude().cmp(self.rows[y][c].magnitude()));
                let Some(best) = best else { break };
                found = true;
                self.swap(top, best);
                let nz = nonzero_positions(&self.rows[top]);
                let mut clean = true;
                for r in top + 1..nrows {
                    if self.rows[r][c].is_zero() {
                        continue;
                    }
                    let q = self.rows[r][c].div_floor(&self.rows[top][c]);
                    self.row_op(r, top, &q, &nz);
                    if !self.rows[r][c].is_zero() {
                        clean = false;
                    }
                }
                if clean {
                    break;
                }
            }
            if !found {
                continue;
            }
            if self.rows[top][c].is_negative() {
                self.negate(top);
            }
            let nz = nonzero_positions(&self.rows[top]);
            for r in 0..top {
                if self.rows[r][c].is_zero() {
                    continue;
                }
                let q = self.rows[r][c].div_floor(&self.rows[top][c]);
                self.row_op(r, top, &q, &nz);
            }
            pivots.push(c);
            top += 1;
        }
        pivots
    }
}

/// Hermite normal form with unimodular transform: `h = u·m`.
pub fn hnf(m: &IntMatrix) -> Hnf {
    let mut red = RowReducer::new(m, true);
    let pivots = red.run();
    let u = IntMatrix::from_rows(m.nrows(), red.trans.take().unwrap_or_default());
    Hnf {
        h: IntMatrix::from_rows(m.ncols(), red.rows),
        u,
        pivots,
    }
}

/// Hermite normal form without the transform, returning only the nonzero
/// rows and their pivot columns. Much cheaper on tall sparse inputs.
pub fn hermite_form(m: &IntMatrix) -> (IntMatrix, Vec<usize>) {
    let mut red = RowReducer::new(m, false);
    let pivots = red.run();
    red.rows.truncate(pivots.len());
    (IntMatrix::from_rows(m.ncols(), red.rows), pivots)
}

struct SmithReducer {
    a: Vec<Vec<BigInt>>,
    u: Option<Vec<Vec<BigInt>>>,
    v: Option<Vec<Vec<BigInt>>>,
}

impl SmithReducer {
    fn row_add(&mut self, dst: usize, src: usize, f: &BigInt) {
        // row[dst] -= f·row[src]
        let (d, s) = pair_mut(&mut self.a, dst, src);
        let nz = nonzero_positions(s);
        sub_mul(d, s, &nz, f);
        if let Some(u) = self.u.as_mut() {
            let (d, s) = pair_mut(u, dst, src);
            let nz = nonzero_positions(s);
            sub_mul(d, s, &nz, f);
        }
    }

    fn col_add(&mut self, dst: usize, src: usize, f: &BigInt) {
        // col[dst] -= f·col[src]
        for row in self.a.iter_mut() {
            if !row[src].is_zero() {
                let t = f * &row[src];
                row[dst] -= t;
            }
        }
        if let Some(v) = self.v.as_mut() {
            for row in v.iter_mut() {
                if !row[src].is_zero() {
                    let t = f * &row[src];
                    row[dst] -= t;
                }
            }
        }
    }

    fn swap_rows(&mut self, x: usize, y: usize) {
        self.a.swap(x, y);
        if let Some(u) = self.u.as_mut() {
            u.swap(x, y);
        }
    }

    fn swap_cols(&mut self, x: usize, y: usize) {
        for row in self.a.iter_mut() {
            row.swap(x, y);
        }
        if let Some(v) = self.v.as_mut() {
            for row in v.iter_mut() {
                row.swap(x, y);
            }
        }
    }

    fn negate_row(&mut self, r: usize) {
        for x in self.a[r].iter_mut() {
            *x = -std::mem::take(x);
        }
        if let Some(u) = self.u.as_mut() {
            for x in u[r].iter_mut() {
                *x = -std::mem::take(x);
            }
        }
    }

    fn run(&mut self, rows: usize, cols: usize) {
        for t in 0..rows.min(cols) {
            loop {
                let mut best: Option<(usize, usize)> = None;
                for i in t..rows {
                    for j in t..cols {
                        let e = &self.a[i][j];
                        if e.is_zero() {
                            continue;
                        }
                        if best.is_none_or(|(bi, bj)| e.magnitude() < self.a[bi][bj].magnitude()) {
                            best = Some((i, j));
                        }
                    }
                }
                let Some((bi, bj)) = best else { return };
                self.swap_rows(t, bi);
                self.swap_cols(t, bj);

                let mut clean = true;
                for i in t + 1..rows {
                    if self.a[i][t].is_zero() {
                        continue;
                    }
                    let q = self.a[i][t].div_floor(&self.a[t][t]);
                    self.row_add(i, t, &q);
                    clean &= self.a[i][t].is_zero();
                }
                for j in t + 1..cols {
                    if self.a[t][j].is_zero() {
                        continue;
                    }
                    let q = self.a[t][j].div_floor(&self.a[t][t]);
                    self.col_add(j, t, &q);
                    clean &= self.a[t][j].is_zero();
                }
                if !clean {
                    continue;
                }
                // pivot must divide the whole remaining block
                let p = self.a[t][t].clone();
                let offender =
                    (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !self.a[i][j].is_multiple_of(&p)));
                match offender {
                    Some(i) => self.row_add(t, i, &BigInt::from(-1)),
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
        }
    }
}

/// Smith normal form `s = u·m·v` with `u`, `v` unimodular and a nonnegative
/// diagonal `d₁ | d₂ | …`.
pub fn snf(m: &IntMatrix) -> Snf {
    let (rows, cols) = (m.nrows(), m.ncols());
    let mut red = SmithReducer {
        a: m.to_row_vecs(),
        u: Some(IntMatrix::identity(rows).to_row_vecs()),
        v: Some(IntMatrix::identity(cols).to_row_vecs()),
    };
    red.run(rows, cols);
    Snf {
        s: IntMatrix::from_rows(cols, red.a),
        u: IntMatrix::from_rows(rows, red.u.unwrap_or_default()),
        v: IntMatrix::from_rows(cols, red.v.unwrap_or_default()),
    }
}

/// The Smith diagonal without transforms (length min(rows, cols)).
pub fn elementary_divisors(m: &IntMatrix) -> Vec<BigInt> {
    let (rows, cols) = (m.nrows(), m.ncols());
    // Reduce the row lattice first; the Smith form only depends on it.
    let (h, _) = hermite_form(m);
    let mut red = SmithReducer {
        a: h.to_row_vecs(),
        u: None,
        v: None,
    };
    red.run(h.nrows(), cols);
    let mut diag: Vec<BigInt> = (0..h.nrows()).map(|i| red.a[i][i].clone()).collect();
    diag.resize(rows.min(cols), BigInt::zero());
    diag
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_i64(rows)
    }

    #[test]
    fn hnf_identity_and_diagonal() {
        let id = IntMatrix::identity(2);
        let r = hnf(&id);
        assert_eq!(r.h, id);
        assert_eq!(r.u, id);

        let d = m(&[vec![2, 0], vec![0, 3]]);
        let r = hnf(&d);
        assert_eq!(r.h, d);
        assert!(r.u.is_identity());
    }

    #[test]
    fn hnf_reduces_above_pivots() {
        let a = m(&[vec![3, 5], vec![0, 2]]);
        let r = hnf(&a);
        // row 0 entry above the pivot 2 reduced into [0,2)
        assert_eq!(r.h, m(&[vec![3, 1], vec![0, 2]]));
        assert_eq!(&r.u * &a, r.h);
    }

    #[test]
    fn hnf_empty_matrices() {
        let r = hnf(&IntMatrix::zeros(0, 3));
        assert_eq!(r.h.nrows(), 0);
        assert_eq!(r.u.nrows(), 0);
        let r = hnf(&IntMatrix::zeros(2, 0));
        assert!(r.u.is_identity());
        assert_eq!(r.rank(), 0);
    }

    #[test]
    fn snf_coprime_diagonal() {
        let a = m(&[vec![2, 0], vec![0, 3]]);
        let r = snf(&a);
        assert_eq!(r.s, m(&[vec![1, 0], vec![0, 6]]));
        assert_eq!(&(&r.u * &a) * &r.v, r.s);
    }

    #[test]
    fn snf_zero_matrix() {
        let z = IntMatrix::zeros(3, 2);
        assert_eq!(snf(&z).s, z);
        assert_eq!(elementary_divisors(&z), vec![BigInt::zero(); 2]);
    }

    #[test]
    fn elementary_divisors_match_snf() {
        let a = m(&[vec![4, 6, 2], vec![2, 8, 10], vec![6, 2, 0]]);
        assert_eq!(elementary_divisors(&a), snf(&a).diagonal());
    }
}
