//! Dense exact linear algebra: Gaussian elimination over fields and
//! Hermite-style integer row reduction over `Z`.
//!
//! Kernels are returned in an echelon form adapted to the column order, so
//! that a kernel vector's maximal support column is well defined. Callers
//! order columns by filtration weight and read the weight of a kernel basis
//! vector off that column.

use crate::ring::{Ring, Scalar};
use num_traits::Signed as _;

#[derive(Debug, Clone)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub ring: Ring,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zero(ring: Ring, rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            ring,
            data: vec![ring.zero(); rows * cols],
        }
    }

    pub fn identity(ring: Ring, n: usize) -> Matrix {
        let mut m = Matrix::zero(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, s: &Scalar) {
        for c in 0..self.cols {
            let v = self.get(r, c).mul(s);
            self.set(r, c, v);
        }
    }

    /// row[dst] += s * row[src]
    fn add_multiple(&mut self, dst: usize, src: usize, s: &Scalar) {
        if s.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let v = self.get(dst, c).add(&self.get(src, c).mul(s));
            self.set(dst, c, v);
        }
    }
}

/// Result of an echelonization: the reduced matrix, the pivot column of each
/// nonzero row (in elimination order) and the transform applied on the left.
pub struct Echelon {
    pub mat: Matrix,
    pub pivots: Vec<usize>,
    pub transform: Matrix,
}

/// Reduced row echelon form over a field, processing columns in the order
/// given by `col_order`.
fn rref(m: &Matrix, col_order: &[usize]) -> Echelon {
    let mut a = m.clone();
    let mut t = Matrix::identity(m.ring, m.rows);
    let mut pivots = Vec::new();
    let mut row = 0;
    for &col in col_order {
        if row == a.rows {
            break;
        }
        let Some(pr) = (row..a.rows).find(|&r| !a.get(r, col).is_zero()) else {
            continue;
        };
        a.swap_rows(row, pr);
        t.swap_rows(row, pr);
        let inv = a.ring.one().div(a.get(row, col)).expect("field inverse");
        a.scale_row(row, &inv);
        t.scale_row(row, &inv);
        for r in 0..a.rows {
            if r != row && !a.get(r, col).is_zero() {
                let f = a.get(r, col).neg();
                a.add_multiple(r, row, &f);
                t.add_multiple(r, row, &f);
            }
        }
        pivots.push(col);
        row += 1;
    }
    Echelon {
        mat: a,
        pivots,
        transform: t,
    }
}

/// Hermite-style integer row reduction with the same interface as `rref`.
/// Pivots are positive; entries in other rows are reduced modulo the pivot.
fn hermite(m: &Matrix, col_order: &[usize]) -> Echelon {
    let mut a = m.clone();
    let mut t = Matrix::identity(m.ring, m.rows);
    let mut pivots = Vec::new();
    let mut row = 0;
    for &col in col_order {
        if row == a.rows {
            break;
        }
        // Euclidean loop: shrink entries below `row` in this column until one
        // nonzero entry remains.
        loop {
            let mut best: Option<usize> = None;
            for r in row..a.rows {
                if !a.get(r, col).is_zero()
                    && best.is_none_or(|b| a.get(r, col).abs() < a.get(b, col).abs())
                {
                    best = Some(r);
                }
            }
            let Some(b) = best else { break };
            a.swap_rows(row, b);
            t.swap_rows(row, b);
            let mut again = false;
            for r in row + 1..a.rows {
                if a.get(r, col).is_zero() {
                    continue;
                }
                let q = int_quot(a.get(r, col), a.get(row, col));
                let f = q.neg();
                a.add_multiple(r, row, &f);
                t.add_multiple(r, row, &f);
                if !a.get(r, col).is_zero() {
                    again = true;
                }
            }
            if !again {
                break;
            }
        }
        if a.get(row, col).is_zero() {
            continue;
        }
        if let Scalar::Int(n) = a.get(row, col) {
            if n.sign() == num_bigint::Sign::Minus {
                let minus_one = a.ring.from_i64(-1);
                a.scale_row(row, &minus_one);
                t.scale_row(row, &minus_one);
            }
        }
        // Reduce the rows above modulo the pivot.
        for r in 0..row {
            if !a.get(r, col).is_zero() {
                let q = int_quot_floor(a.get(r, col), a.get(row, col));
                if !q.is_zero() {
                    let f = q.neg();
                    a.add_multiple(r, row, &f);
                    t.add_multiple(r, row, &f);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    Echelon {
        mat: a,
        pivots,
        transform: t,
    }
}

fn int_quot(a: &Scalar, b: &Scalar) -> Scalar {
    match (a, b) {
        (Scalar::Int(a), Scalar::Int(b)) => {
            // Round-to-nearest keeps the Euclidean loop short.
            let two = num_bigint::BigInt::from(2);
            let half = b.clone() * &two;
            let _ = half;
            let q = num_integer::Integer::div_floor(a, b);
            let r = a - &q * b;
            if &r * &two > b.abs() {
                Scalar::Int(q + 1)
            } else {
                Scalar::Int(q)
            }
        }
        _ => panic!("integer quotient on non-integers"),
    }
}

fn int_quot_floor(a: &Scalar, b: &Scalar) -> Scalar {
    match (a, b) {
        (Scalar::Int(a), Scalar::Int(b)) => Scalar::Int(num_integer::Integer::div_floor(a, b)),
        _ => panic!("integer quotient on non-integers"),
    }
}

pub fn echelonize(m: &Matrix, col_order: &[usize]) -> Echelon {
    if m.ring.is_field() {
        rref(m, col_order)
    } else {
        hermite(m, col_order)
    }
}

pub fn rank(m: &Matrix) -> usize {
    let order: Vec<usize> = (0..m.cols).collect();
    echelonize(m, &order).pivots.len()
}

/// Basis of the right kernel `{v : M v = 0}`.
///
/// The returned vectors are in echelon form with respect to the column order
/// `0..cols`: each vector has a distinct maximal support coordinate, and the
/// vectors with maximal coordinate `< d` span the kernel of the submatrix on
/// the first `d` columns. Over `Z` the basis generates the kernel lattice.
pub fn kernel_basis(m: &Matrix) -> Vec<Vec<Scalar>> {
    let ring = m.ring;
    if ring.is_field() {
        let order: Vec<usize> = (0..m.cols).collect();
        let e = rref(m, &order);
        let pivot_of_col: Vec<Option<usize>> = {
            let mut v = vec![None; m.cols];
            for (i, &p) in e.pivots.iter().enumerate() {
                v[p] = Some(i);
            }
            v
        };
        let mut basis = Vec::new();
        for j in 0..m.cols {
            if pivot_of_col[j].is_some() {
                continue;
            }
            let mut v = vec![ring.zero(); m.cols];
            v[j] = ring.one();
            for (i, &p) in e.pivots.iter().enumerate() {
                if p < j {
                    v[p] = e.mat.get(i, j).neg();
                }
            }
            basis.push(v);
        }
        basis
    } else {
        // Reduce [M^T | I]: rows with zero M^T part give the kernel lattice.
        let mut aug = Matrix::zero(ring, m.cols, m.rows + m.cols);
        for r in 0..m.cols {
            for c in 0..m.rows {
                aug.set(r, c, m.get(c, r).clone());
            }
            aug.set(r, m.rows + r, ring.one());
        }
        let order: Vec<usize> = (0..m.rows).collect();
        let e = hermite(&aug, &order);
        let mut kernel_rows = Vec::new();
        for r in 0..e.mat.rows {
            if (0..m.rows).all(|c| e.mat.get(r, c).is_zero()) {
                kernel_rows.push(e.mat.row(r)[m.rows..].to_vec());
            }
        }
        // Canonical echelon with maximal-coordinate pivots: Hermite with the
        // column order reversed.
        let mut km = Matrix::zero(ring, kernel_rows.len(), m.cols);
        for (r, row) in kernel_rows.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                km.set(r, c, v.clone());
            }
        }
        let rev: Vec<usize> = (0..m.cols).rev().collect();
        let e2 = hermite(&km, &rev);
        let mut out = Vec::new();
        for r in 0..e2.pivots.len() {
            out.push(e2.mat.row(r).to_vec());
        }
        // Order by maximal coordinate so weights come out ascending.
        out.sort_by_key(|v| v.iter().rposition(|s| !s.is_zero()).unwrap_or(0));
        out
    }
}

/// Expresses targets in the span (over a field) or lattice (over `Z`) of a
/// fixed family of vectors. Precomputes an echelon form once.
#[derive(Debug)]
pub struct Solver {
    dim: usize,
    ring: Ring,
    echelon: Matrix,
    pivots: Vec<usize>,
    transform: Matrix,
    n_vectors: usize,
}

impl Solver {
    pub fn new(ring: Ring, dim: usize, vectors: &[Vec<Scalar>]) -> Solver {
        let mut m = Matrix::zero(ring, vectors.len(), dim);
        for (r, v) in vectors.iter().enumerate() {
            assert_eq!(v.len(), dim, "vector dimension mismatch");
            for (c, s) in v.iter().enumerate() {
                m.set(r, c, s.clone());
            }
        }
        let order: Vec<usize> = (0..dim).collect();
        let e = echelonize(&m, &order);
        Solver {
            dim,
            ring,
            echelon: e.mat,
            pivots: e.pivots,
            transform: e.transform,
            n_vectors: vectors.len(),
        }
    }

    /// Coefficients `c` with `target = sum c_i * vectors_i`, if they exist.
    pub fn solve(&self, target: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(target.len(), self.dim);
        let mut residue = target.to_vec();
        let mut coeffs_echelon = vec![self.ring.zero(); self.echelon.rows];
        for (row, &p) in self.pivots.iter().enumerate() {
            if residue[p].is_zero() {
                continue;
            }
            let c = residue[p].div(self.echelon.get(row, p))?;
            for j in 0..self.dim {
                let delta = self.echelon.get(row, j).mul(&c);
                residue[j] = residue[j].sub(&delta);
            }
            coeffs_echelon[row] = c;
        }
        if residue.iter().any(|s| !s.is_zero()) {
            return None;
        }
        // Pull back through the transform: echelon = transform * original.
        let mut out = vec![self.ring.zero(); self.n_vectors];
        for (row, c) in coeffs_echelon.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, slot) in out.iter_mut().enumerate() {
                *slot = slot.add(&self.transform.get(row, j).mul(c));
            }
        }
        Some(out)
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Scalar {
        Ring::Q.from_i64(n)
    }

    fn z(n: i64) -> Scalar {
        Ring::Z.from_i64(n)
    }

    #[test]
    fn kernel_over_q_is_echelon() {
        // x + y + z = 0 over Q: kernel dim 2.
        let mut m = Matrix::zero(Ring::Q, 1, 3);
        for c in 0..3 {
            m.set(0, c, q(1));
        }
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 2);
        // Maximal support coordinates are distinct and ascending.
        let tops: Vec<usize> = k
            .iter()
            .map(|v| v.iter().rposition(|s| !s.is_zero()).unwrap())
            .collect();
        assert_eq!(tops, vec![1, 2]);
        for v in &k {
            let s = v.iter().fold(q(0), |a, b| a.add(b));
            assert!(s.is_zero());
        }
    }

    #[test]
    fn kernel_over_z_is_primitive() {
        // 2x + 4y = 0 over Z: kernel generated by (2, -1).
        let mut m = Matrix::zero(Ring::Z, 1, 2);
        m.set(0, 0, z(2));
        m.set(0, 1, z(4));
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 1);
        // Canonical form has a positive trailing pivot.
        assert_eq!(k[0], vec![z(-2), z(1)]);
    }

    #[test]
    fn solver_over_z_requires_integrality() {
        let solver = Solver::new(Ring::Z, 2, &[vec![z(2), z(0)], vec![z(0), z(1)]]);
        assert_eq!(solver.solve(&[z(4), z(3)]), Some(vec![z(2), z(3)]));
        assert_eq!(solver.solve(&[z(3), z(0)]), None);
    }

    #[test]
    fn solver_recovers_coefficients() {
        let vs = vec![vec![q(1), q(2), q(0)], vec![q(0), q(1), q(1)]];
        let solver = Solver::new(Ring::Q, 3, &vs);
        let target = vec![q(2), q(7), q(3)];
        let c = solver.solve(&target).unwrap();
        assert_eq!(c, vec![q(2), q(3)]);
        assert_eq!(solver.solve(&[q(1), q(0), q(0)]), None);
    }

    #[test]
    fn rank_counts_pivots() {
        let mut m = Matrix::zero(Ring::Q, 2, 2);
        m.set(0, 0, q(1));
        m.set(0, 1, q(2));
        m.set(1, 0, q(2));
        m.set(1, 1, q(4));
        assert_eq!(rank(&m), 1);
    }
}
