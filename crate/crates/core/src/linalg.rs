//! Dense exact linear algebra over a field context. Row reduction always
//! takes the first nonzero entry as pivot, so every result is deterministic
//! for a given input; nothing here is randomized.

use crate::ring::Field;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>, // row-major
}

impl<E: Clone> Matrix<E> {
    pub fn new(rows: usize, cols: usize, data: Vec<E>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix shape mismatch");
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<E>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn filled(rows: usize, cols: usize, e: E) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![e; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &E {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, e: E) {
        self.data[r * self.cols + c] = e;
    }

    pub fn col(&self, c: usize) -> Vec<E> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn row(&self, r: usize) -> Vec<E> {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.at(r, c).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn from_cols(rows: usize, cols: Vec<Vec<E>>) -> Self {
        let c = cols.len();
        assert!(cols.iter().all(|v| v.len() == rows), "ragged columns");
        let mut out = Vec::with_capacity(rows * c);
        for r in 0..rows {
            for col in &cols {
                out.push(col[r].clone());
            }
        }
        Matrix {
            rows,
            cols: c,
            data: out,
        }
    }

    /// [self | other], same row count.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let mut data = Vec::with_capacity((self.cols + other.cols) * self.rows);
        for r in 0..self.rows {
            data.extend_from_slice(&self.data[r * self.cols..(r + 1) * self.cols]);
            data.extend_from_slice(&other.data[r * other.cols..(r + 1) * other.cols]);
        }
        Matrix {
            rows: self.rows,
            cols: self.cols + other.cols,
            data,
        }
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "vstack col mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn map<T: Clone>(&self, f: impl Fn(&E) -> T) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

pub fn zero_matrix<F: Field>(f: &F, rows: usize, cols: usize) -> Matrix<F::Elem> {
    Matrix::filled(rows, cols, f.zero())
}

pub fn identity<F: Field>(f: &F, n: usize) -> Matrix<F::Elem> {
    let mut m = zero_matrix(f, n, n);
    for i in 0..n {
        m.set(i, i, f.one());
    }
    m
}

pub fn mat_mul<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    assert_eq!(a.cols, b.rows, "matmul shape mismatch");
    let mut out = zero_matrix(f, a.rows, b.cols);
    for r in 0..a.rows {
        for k in 0..a.cols {
            let ark = a.at(r, k);
            if f.is_zero(ark) {
                continue;
            }
            for c in 0..b.cols {
                let t = f.mul(ark, b.at(k, c));
                let s = f.add(out.at(r, c), &t);
                out.set(r, c, s);
            }
        }
    }
    out
}

pub fn mat_add<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    assert_eq!((a.rows, a.cols), (b.rows, b.cols));
    let mut out = a.clone();
    for r in 0..a.rows {
        for c in 0..a.cols {
            out.set(r, c, f.add(a.at(r, c), b.at(r, c)));
        }
    }
    out
}

pub fn mat_sub<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    mat_add(f, a, &b.map(|e| f.neg(e)))
}

pub fn mat_scale<F: Field>(f: &F, s: &F::Elem, a: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    a.map(|e| f.mul(s, e))
}

pub fn apply<F: Field>(f: &F, a: &Matrix<F::Elem>, v: &[F::Elem]) -> Vec<F::Elem> {
    assert_eq!(a.cols, v.len(), "apply shape mismatch");
    (0..a.rows)
        .map(|r| {
            let mut acc = f.zero();
            for c in 0..a.cols {
                acc = f.add(&acc, &f.mul(a.at(r, c), &v[c]));
            }
            acc
        })
        .collect()
}

pub fn is_zero_matrix<F: Field>(f: &F, a: &Matrix<F::Elem>) -> bool {
    a.data.iter().all(|e| f.is_zero(e))
}

#[derive(Clone, Debug)]
pub struct Rref<E> {
    pub mat: Matrix<E>,
    /// (row, col) of each pivot, in row order.
    pub pivots: Vec<(usize, usize)>,
}

impl<E> Rref<E> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
    pub fn pivot_cols(&self) -> Vec<usize> {
        self.pivots.iter().map(|&(_, c)| c).collect()
    }
}

/// Reduced row echelon form. Scans columns left to right and picks the
/// first row with a nonzero entry as pivot.
pub fn rref<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Rref<F::Elem> {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..a.cols {
        if row == a.rows {
            break;
        }
        let Some(p) = (row..a.rows).find(|&r| !f.is_zero(a.at(r, col))) else {
            continue;
        };
        if p != row {
            for c in 0..a.cols {
                let tmp = a.at(row, c).clone();
                a.set(row, c, a.at(p, c).clone());
                a.set(p, c, tmp);
            }
        }
        let inv = f.inv(a.at(row, col));
        for c in col..a.cols {
            let s = f.mul(&inv, a.at(row, c));
            a.set(row, c, s);
        }
        for r in 0..a.rows {
            if r == row || f.is_zero(a.at(r, col)) {
                continue;
            }
            let factor = a.at(r, col).clone();
            for c in col..a.cols {
                let s = f.sub(a.at(r, c), &f.mul(&factor, a.at(row, c)));
                a.set(r, c, s);
            }
        }
        pivots.push((row, col));
        row += 1;
    }
    Rref { mat: a, pivots }
}

pub fn rank<F: Field>(f: &F, m: &Matrix<F::Elem>) -> usize {
    rref(f, m).rank()
}

/// Basis of the right null space, one column per free variable, in column
/// order of the free variables.
pub fn kernel_basis<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    let red = rref(f, m);
    let pivot_cols = red.pivot_cols();
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivot_cols.contains(c)).collect();
    let mut cols = Vec::with_capacity(free.len());
    for &fc in &free {
        let mut v = vec![f.zero(); m.cols];
        v[fc] = f.one();
        for (pr, pc) in &red.pivots {
            v[*pc] = f.neg(red.mat.at(*pr, fc));
        }
        cols.push(v);
    }
    Matrix::from_cols(m.cols, cols)
}

pub fn nullity<F: Field>(f: &F, m: &Matrix<F::Elem>) -> usize {
    m.cols - rank(f, m)
}

/// One solution of a x = b, if any.
pub fn solve<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
    assert_eq!(a.rows, b.len(), "solve shape mismatch");
    let aug = a.hstack(&Matrix::from_cols(a.rows, vec![b.to_vec()]));
    let red = rref(f, &aug);
    if red.pivots.iter().any(|&(_, c)| c == a.cols) {
        return None; // pivot in the constant column
    }
    let mut x = vec![f.zero(); a.cols];
    for (pr, pc) in &red.pivots {
        x[*pc] = red.mat.at(*pr, a.cols).clone();
    }
    Some(x)
}

/// Inverse of a square matrix, None when singular.
pub fn inverse<F: Field>(f: &F, a: &Matrix<F::Elem>) -> Option<Matrix<F::Elem>> {
    assert_eq!(a.rows, a.cols, "inverse of non-square matrix");
    let n = a.rows;
    let red = rref(f, &a.hstack(&identity(f, n)));
    if red.rank() < n || red.pivots.iter().any(|&(_, c)| c >= n) {
        return None;
    }
    let mut out = zero_matrix(f, n, n);
    for r in 0..n {
        for c in 0..n {
            out.set(r, c, red.mat.at(r, n + c).clone());
        }
    }
    Some(out)
}

pub fn det<F: Field>(f: &F, a: &Matrix<F::Elem>) -> F::Elem {
    assert_eq!(a.rows, a.cols, "determinant of non-square matrix");
    let n = a.rows;
    let mut m = a.clone();
    let mut sign_flip = false;
    let mut acc = f.one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !f.is_zero(m.at(r, col))) else {
            return f.zero();
        };
        if p != col {
            for c in 0..n {
                let tmp = m.at(col, c).clone();
                m.set(col, c, m.at(p, c).clone());
                m.set(p, c, tmp);
            }
            sign_flip = !sign_flip;
        }
        let pivot = m.at(col, col).clone();
        acc = f.mul(&acc, &pivot);
        let inv = f.inv(&pivot);
        for r in col + 1..n {
            if f.is_zero(m.at(r, col)) {
                continue;
            }
            let factor = f.mul(m.at(r, col), &inv);
            for c in col..n {
                let s = f.sub(m.at(r, c), &f.mul(&factor, m.at(col, c)));
                m.set(r, c, s);
            }
        }
    }
    if sign_flip {
        f.neg(&acc)
    } else {
        acc
    }
}

/// Basis of the column span: the columns of m sitting at pivot positions.
pub fn column_space_basis<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    let red = rref(f, m);
    let cols = red.pivot_cols().iter().map(|&c| m.col(c)).collect();
    Matrix::from_cols(m.rows, cols)
}

/// Does v lie in the column span of basis? Returns coordinates if so.
pub fn in_column_span<F: Field>(
    f: &F,
    basis: &Matrix<F::Elem>,
    v: &[F::Elem],
) -> Option<Vec<F::Elem>> {
    solve(f, basis, v)
}

/// Rank of the concatenation [a | b]; dim of the span sum.
pub fn span_sum_rank<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> usize {
    rank(f, &a.hstack(b))
}

/// Basis of the intersection of two column spans over the same ambient space.
pub fn span_intersection<F: Field>(
    f: &F,
    a: &Matrix<F::Elem>,
    b: &Matrix<F::Elem>,
) -> Matrix<F::Elem> {
    assert_eq!(a.rows, b.rows, "ambient dimension mismatch");
    let ker = kernel_basis(f, &a.hstack(&b.map(|e| f.neg(e))));
    let mut cols = Vec::new();
    for k in 0..ker.cols() {
        let coeffs: Vec<_> = (0..a.cols()).map(|r| ker.at(r, k).clone()).collect();
        cols.push(apply(f, a, &coeffs));
    }
    let cand = Matrix::from_cols(a.rows, cols);
    column_space_basis(f, &cand)
}

/// Indices into `candidates` whose columns extend the span of `fixed` to the
/// span of [fixed | candidates]. Candidates are tried in the order given by
/// `order`; earlier ones win.
pub fn extend_basis<F: Field>(
    f: &F,
    fixed: &Matrix<F::Elem>,
    candidates: &Matrix<F::Elem>,
    order: &[usize],
) -> Vec<usize> {
    assert_eq!(fixed.rows(), candidates.rows());
    let permuted = Matrix::from_cols(
        candidates.rows(),
        order.iter().map(|&i| candidates.col(i)).collect(),
    );
    let red = rref(f, &fixed.hstack(&permuted));
    let mut chosen: Vec<usize> = red
        .pivot_cols()
        .into_iter()
        .filter(|&c| c >= fixed.cols())
        .map(|c| order[c - fixed.cols()])
        .collect();
    chosen.sort_unstable();
    chosen
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{q, qi, Rationals, Q};

    fn m(rows: Vec<Vec<i64>>) -> Matrix<Q> {
        Matrix::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(qi).collect())
                .collect(),
        )
    }

    #[test]
    fn rref_first_nonzero_pivot() {
        let f = Rationals;
        // First column's first nonzero entry is in row 1; it must be chosen.
        let a = m(vec![vec![0, 1], vec![2, 0], vec![4, 0]]);
        let red = rref(&f, &a);
        assert_eq!(red.pivots, vec![(0, 0), (1, 1)]);
        assert_eq!(red.mat, m(vec![vec![1, 0], vec![0, 1], vec![0, 0]]));
    }

    #[test]
    fn kernel_and_rank() {
        let f = Rationals;
        let a = m(vec![vec![1, 2, 3], vec![2, 4, 6]]);
        assert_eq!(rank(&f, &a), 1);
        let k = kernel_basis(&f, &a);
        assert_eq!(k.cols(), 2);
        for c in 0..k.cols() {
            let v = k.col(c);
            assert!(apply(&f, &a, &v).iter().all(|e| f.is_zero(e)));
        }
    }

    #[test]
    fn solve_and_inverse() {
        let f = Rationals;
        let a = m(vec![vec![2, 1], vec![1, 1]]);
        let x = solve(&f, &a, &[qi(3), qi(2)]).unwrap();
        assert_eq!(x, vec![qi(1), qi(1)]);
        let inv = inverse(&f, &a).unwrap();
        assert_eq!(mat_mul(&f, &a, &inv), identity(&f, 2));
        assert!(inverse(&f, &m(vec![vec![1, 2], vec![2, 4]])).is_none());
        assert!(solve(&f, &m(vec![vec![1, 1], vec![1, 1]]), &[qi(0), qi(1)]).is_none());
    }

    #[test]
    fn determinant() {
        let f = Rationals;
        assert_eq!(det(&f, &m(vec![vec![2, 1], vec![1, 1]])), qi(1));
        assert_eq!(det(&f, &m(vec![vec![0, 1], vec![1, 0]])), qi(-1));
        assert_eq!(det(&f, &m(vec![vec![1, 2], vec![2, 4]])), qi(0));
        // Killing-form shaped example.
        let k = m(vec![vec![8, 0, 0], vec![0, 0, 4], vec![0, 4, 0]]);
        assert_eq!(det(&f, &k), qi(-128));
    }

    #[test]
    fn fractions_stay_exact() {
        let f = Rationals;
        let a = Matrix::from_rows(vec![vec![q(1, 3), q(1, 6)], vec![q(1, 2), q(1, 4)]]);
        assert_eq!(rank(&f, &a), 1);
        let k = kernel_basis(&f, &a);
        assert_eq!(k.cols(), 1);
        assert_eq!(k.col(0), vec![q(-1, 2), qi(1)]);
    }

    #[test]
    fn span_operations() {
        let f = Rationals;
        let a = Matrix::from_cols(
            3,
            vec![vec![qi(1), qi(0), qi(0)], vec![qi(0), qi(1), qi(0)]],
        );
        let b = Matrix::from_cols(
            3,
            vec![vec![qi(0), qi(1), qi(0)], vec![qi(0), qi(0), qi(1)]],
        );
        assert_eq!(span_sum_rank(&f, &a, &b), 3);
        let cap = span_intersection(&f, &a, &b);
        assert_eq!(cap.cols(), 1);
        assert_eq!(cap.col(0), vec![qi(0), qi(1), qi(0)]);
    }

    #[test]
    fn empty_shapes_are_legal() {
        let f = Rationals;
        let a: Matrix<Q> = Matrix::new(0, 3, vec![]);
        assert_eq!(rank(&f, &a), 0);
        assert_eq!(kernel_basis(&f, &a).cols(), 3);
        let b: Matrix<Q> = Matrix::new(3, 0, vec![]);
        assert_eq!(rank(&f, &b), 0);
        assert_eq!(kernel_basis(&f, &b).cols(), 0);
        let e: Matrix<Q> = Matrix::new(0, 0, vec![]);
        assert_eq!(det(&f, &e), qi(1));
        assert_eq!(inverse(&f, &e).unwrap().rows(), 0);
    }

    #[test]
    fn extend_basis_prefers_requested_order() {
        let f = Rationals;
        let fixed = Matrix::from_cols(2, vec![vec![qi(1), qi(0)]]);
        let cands = Matrix::from_cols(2, vec![vec![qi(1), qi(1)], vec![qi(0), qi(1)]]);
        assert_eq!(extend_basis(&f, &fixed, &cands, &[0, 1]), vec![0]);
        assert_eq!(extend_basis(&f, &fixed, &cands, &[1, 0]), vec![1]);
    }
}
