//! Dense exact linear algebra: row reduction, kernels, solves, subspace bookkeeping.

use std::fmt;

use crate::field::Field;
use crate::poly::Poly;

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<F: Field> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }
    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }
    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_cols(rows: usize, cols: &[Vec<F>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, v) in c.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }
    pub fn diagonal(d: &[F]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, v) in d.iter().enumerate() {
            m.set(i, i, v.clone());
        }
        m
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }
    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }
    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
    pub fn col(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }
    pub fn map(&self, f: impl Fn(&F) -> F) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let data = self
            .data
            .iter()
            .zip(&o.data)
            .map(|(a, b)| a.plus(b))
            .collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }
    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let data = self
            .data
            .iter()
            .zip(&o.data)
            .map(|(a, b)| a.minus(b))
            .collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }
    pub fn scale(&self, s: &F) -> Self {
        self.map(|x| x.times(s))
    }
    pub fn neg(&self) -> Self {
        self.map(|x| x.negated())
    }
    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = out.data[idx].plus(&a.times(b));
                }
            }
        }
        out
    }
    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = F::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.plus(&a.times(b));
                    }
                }
                acc
            })
            .collect()
    }
    /// `[A, B] = AB - BA`
    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }
    pub fn trace(&self) -> F {
        (0..self.rows.min(self.cols)).fold(F::zero(), |acc, i| acc.plus(self.get(i, i)))
    }

    /// In-place reduced row echelon form; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self.get(r, c).inverse().unwrap();
            for j in c..self.cols {
                let v = self.get(r, j).times(&inv);
                self.set(r, j, v);
            }
            let pivot_row: Vec<F> = self.row(r)[c..].to_vec();
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for (off, pv) in pivot_row.iter().enumerate() {
                    if !pv.is_zero() {
                        let idx = i * self.cols + c + off;
                        self.data[idx].sub_mul_assign(&f, pv);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the right null space `{v : Av = 0}`.
    pub fn kernel(&self) -> Vec<Vec<F>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![F::zero(); self.cols];
            v[free] = F::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = m.get(r, free).negated();
            }
            basis.push(v);
        }
        basis
    }

    /// One solution of `Ax = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = aug.get(r, self.cols).clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, F::one());
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    /// Minimal polynomial by Krylov sequences of the standard basis vectors.
    pub fn minimal_polynomial(&self) -> Poly<F> {
        assert!(self.is_square());
        let sparse = SparseMatrix::from_dense(self);
        sparse.minimal_polynomial()
    }

    /// Integer power by repeated multiplication.
    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::identity(self.rows);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn is_nilpotent(&self) -> bool {
        let mp = self.minimal_polynomial();
        mp.coeffs().iter().rev().skip(1).all(|c| c.is_zero())
    }
}

impl<F: Field> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Compressed row storage for fast matrix-vector products.
#[derive(Clone, Debug)]
pub struct SparseMatrix<F: Field> {
    n_cols: usize,
    rows: Vec<Vec<(usize, F)>>,
}

impl<F: Field> SparseMatrix<F> {
    pub fn from_dense(m: &Matrix<F>) -> Self {
        let rows = (0..m.rows())
            .map(|i| {
                m.row(i)
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(j, v)| (j, v.clone()))
                    .collect()
            })
            .collect();
        SparseMatrix {
            n_cols: m.cols(),
            rows,
        }
    }
    pub fn from_rows(n_cols: usize, rows: Vec<Vec<(usize, F)>>) -> Self {
        SparseMatrix { n_cols, rows }
    }
    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.n_cols);
        self.rows
            .iter()
            .map(|row| {
                let mut acc = F::zero();
                for (j, a) in row {
                    if !v[*j].is_zero() {
                        acc = acc.plus(&a.times(&v[*j]));
                    }
                }
                acc
            })
            .collect()
    }

    /// Least common multiple of the local minimal polynomials of the basis vectors,
    /// skipping vectors already inside the accumulated Krylov span.
    pub fn minimal_polynomial(&self) -> Poly<F> {
        let n = self.rows.len();
        assert_eq!(n, self.n_cols);
        let mut span = Echelon::new(n);
        let mut total = Poly::one();
        for j in 0..n {
            let mut e = vec![F::zero(); n];
            e[j] = F::one();
            if span.contains(&e) {
                continue;
            }
            let (local, krylov) = self.local_minimal_polynomial(e);
            total = total.lcm(&local);
            for v in krylov {
                span.insert(v);
            }
            if span.dim() == n {
                break;
            }
        }
        total
    }

    fn local_minimal_polynomial(&self, v: Vec<F>) -> (Poly<F>, Vec<Vec<F>>) {
        let n = v.len();
        // Each stored row: reduced vector, pivot, and its expression as a polynomial in A applied to v.
        let mut rows: Vec<(Vec<F>, usize, Vec<F>)> = Vec::new();
        let mut krylov = Vec::new();
        let mut cur = v;
        for k in 0..=n {
            krylov.push(cur.clone());
            let mut red = cur.clone();
            let mut expr = vec![F::zero(); k + 1];
            expr[k] = F::one();
            for (row, piv, rexpr) in &rows {
                let f = red[*piv].clone();
                if f.is_zero() {
                    continue;
                }
                for (a, b) in red.iter_mut().zip(row) {
                    a.sub_mul_assign(&f, b);
                }
                for (a, b) in expr.iter_mut().zip(rexpr) {
                    a.sub_mul_assign(&f, b);
                }
            }
            match red.iter().position(|x| !x.is_zero()) {
                None => {
                    krylov.pop();
                    return (Poly::new(expr).monic(), krylov);
                }
                Some(p) => {
                    let inv = red[p].inverse().unwrap();
                    let red: Vec<F> = red.iter().map(|x| x.times(&inv)).collect();
                    let expr: Vec<F> = expr.iter().map(|x| x.times(&inv)).collect();
                    rows.push((red, p, expr));
                }
            }
            cur = self.mul_vec(&cur);
        }
        unreachable!("Krylov sequence longer than the dimension")
    }
}

/// Incrementally maintained semi-echelon basis of a subspace.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    ambient: usize,
    rows: Vec<(usize, Vec<F>)>,
}

impl<F: Field> Echelon<F> {
    pub fn new(ambient: usize) -> Self {
        Echelon {
            ambient,
            rows: Vec::new(),
        }
    }
    pub fn from_vectors<'a>(ambient: usize, vs: impl IntoIterator<Item = &'a Vec<F>>) -> Self
    where
        F: 'a,
    {
        let mut e = Self::new(ambient);
        for v in vs {
            e.insert(v.clone());
        }
        e
    }
    pub fn dim(&self) -> usize {
        self.rows.len()
    }
    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Remainder of `v` after reduction against the stored rows.
    pub fn reduce(&self, mut v: Vec<F>) -> Vec<F> {
        assert_eq!(v.len(), self.ambient);
        for (p, row) in &self.rows {
            let f = v[*p].clone();
            if f.is_zero() {
                continue;
            }
            for (a, b) in v.iter_mut().zip(row) {
                a.sub_mul_assign(&f, b);
            }
        }
        v
    }
    pub fn contains(&self, v: &[F]) -> bool {
        self.reduce(v.to_vec()).iter().all(|x| x.is_zero())
    }
    /// Insert `v`; returns true if it enlarged the span.
    pub fn insert(&mut self, v: Vec<F>) -> bool {
        let red = self.reduce(v);
        match red.iter().position(|x| !x.is_zero()) {
            None => false,
            Some(p) => {
                let inv = red[p].inverse().unwrap();
                self.rows
                    .push((p, red.iter().map(|x| x.times(&inv)).collect()));
                true
            }
        }
    }
    pub fn basis(&self) -> Vec<Vec<F>> {
        self.rows.iter().map(|(_, r)| r.clone()).collect()
    }
    pub fn contains_all(&self, other: &Echelon<F>) -> bool {
        other.rows.iter().all(|(_, r)| self.contains(r))
    }
    pub fn same_span(&self, other: &Echelon<F>) -> bool {
        self.dim() == other.dim() && self.contains_all(other)
    }
}

/// Dimension of the span of the vectors.
pub fn span_dim<F: Field>(ambient: usize, vs: &[Vec<F>]) -> usize {
    Echelon::from_vectors(ambient, vs.iter()).dim()
}

/// Basis of `U ∩ W` for subspaces given by spanning sets.
pub fn intersection<F: Field>(ambient: usize, u: &[Vec<F>], w: &[Vec<F>]) -> Vec<Vec<F>> {
    let ub = Echelon::from_vectors(ambient, u.iter()).basis();
    let wb = Echelon::from_vectors(ambient, w.iter()).basis();
    if ub.is_empty() || wb.is_empty() {
        return vec![];
    }
    // Solve sum a_i u_i - sum b_j w_j = 0.
    let mut cols: Vec<Vec<F>> = ub.clone();
    cols.extend(wb.iter().map(|v| v.iter().map(|x| x.negated()).collect()));
    let m = Matrix::from_cols(ambient, &cols);
    let out: Vec<Vec<F>> = m
        .kernel()
        .into_iter()
        .map(|k| {
            let mut v = vec![F::zero(); ambient];
            for (a, ui) in k.iter().zip(&ub) {
                for (x, y) in v.iter_mut().zip(ui) {
                    *x = x.plus(&a.times(y));
                }
            }
            v
        })
        .collect();
    Echelon::from_vectors(ambient, out.iter()).basis()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{qi, Q};

    fn mq(rows: &[&[i64]]) -> Matrix<Q> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| qi(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn kernel_and_rank() {
        let m = mq(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn inverse_roundtrip() {
        let m = mq(&[&[2, 1, 0], &[0, 1, 4], &[1, 0, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(3));
        assert!(mq(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn solve_consistent_and_not() {
        let m = mq(&[&[1, 1], &[1, -1]]);
        assert_eq!(m.solve(&[qi(3), qi(1)]).unwrap(), vec![qi(2), qi(1)]);
        let s = mq(&[&[1, 1], &[2, 2]]);
        assert!(s.solve(&[qi(1), qi(3)]).is_none());
    }

    #[test]
    fn minimal_polynomial_of_jordan_block_plus_scalar() {
        let m = mq(&[&[2, 1, 0], &[0, 2, 0], &[0, 0, 3]]);
        let mp = m.minimal_polynomial();
        // (t-2)^2 (t-3)
        assert_eq!(mp.degree(), Some(3));
        assert!(mp.eval_matrix(&m).is_zero());
        assert!(!mp.is_squarefree());
        assert!(mq(&[&[0, 1], &[0, 0]]).is_nilpotent());
    }

    #[test]
    fn intersection_of_planes() {
        let u = vec![vec![qi(1), qi(0), qi(0)], vec![qi(0), qi(1), qi(0)]];
        let w = vec![vec![qi(0), qi(1), qi(0)], vec![qi(0), qi(0), qi(1)]];
        let i = intersection(3, &u, &w);
        assert_eq!(i.len(), 1);
        assert_eq!(i[0], vec![qi(0), qi(1), qi(0)]);
    }
}
