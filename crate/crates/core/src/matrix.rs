//! Dense matrices over F_p and the handful of exact elimination routines
//! everything else is built from.
//!
//! Conventions used across the crate:
//! * an action matrix acts on column vectors, `v -> A v`;
//! * a subspace is stored as the rows of a matrix, canonically in RREF, so two
//!   subspaces are equal exactly when their RREF bases are equal.

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{Fp, Prime};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    p: Prime,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FpMatrix(p={}, {}x{})", self.p, self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl FpMatrix {
    pub fn zeros(p: Prime, rows: usize, cols: usize) -> Self {
        FpMatrix { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: Prime, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn scalar(p: Prime, n: usize, c: u8) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = c % p.get();
        }
        m
    }

    /// Builds a matrix from integer rows, reducing every entry mod p.
    pub fn from_rows(p: Prime, rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged matrix literal".into()));
        }
        let data = rows.iter().flatten().map(|&v| p.reduce(v)).collect();
        Ok(FpMatrix { p, rows: r, cols: c, data })
    }

    /// Builds a matrix from already reduced residues in row-major order.
    pub fn from_data(p: Prime, rows: usize, cols: usize, data: Vec<u8>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must be rows * cols");
        debug_assert!(data.iter().all(|&v| v < p.get()));
        FpMatrix { p, rows, cols, data }
    }

    /// Parses the fixture literal: rows of integers that must already lie in `[0, p)`.
    pub fn from_literal(p: Prime, rows: &[Vec<u64>], cols: usize) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!("row of length {} in a matrix with {} columns", row.len(), cols)));
            }
            for &v in row {
                if v >= p.get() as u64 {
                    return Err(Error::Parse(format!("entry {v} is not reduced mod {p}")));
                }
                data.push(v as u8);
            }
        }
        Ok(FpMatrix { p, rows: rows.len(), cols, data })
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn random<R: Rng + ?Sized>(p: Prime, rows: usize, cols: usize, rng: &mut R) -> Self {
        let data = (0..rows * cols).map(|_| rng.gen_range(0..p.get())).collect();
        FpMatrix { p, rows, cols, data }
    }

    #[inline]
    pub fn prime(&self) -> Prime {
        self.p
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn data(&self) -> &[u8] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u8) {
        debug_assert!(v < self.p.get());
        self.data[r * self.cols + c] = v;
    }

    pub fn entry(&self, r: usize, c: usize) -> Fp {
        Fp::new(self.get(r, c) as i64, self.p)
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[u8] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, r: usize) -> &mut [u8] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u8> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && (0..self.rows).all(|r| (0..self.cols).all(|c| self.get(r, c) == u8::from(r == c)))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.p, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        t
    }

    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        debug_assert_eq!(self.p, other.p);
        let p = self.p.as_u32();
        let (n, m, k) = (self.rows, other.cols, self.cols);
        let mut acc = vec![0u32; m];
        let mut out = Vec::with_capacity(n * m);
        for i in 0..n {
            acc.iter_mut().for_each(|a| *a = 0);
            let arow = &self.data[i * k..(i + 1) * k];
            for (l, &a) in arow.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let a = a as u32;
                let brow = &other.data[l * m..(l + 1) * m];
                for (slot, &b) in acc.iter_mut().zip(brow) {
                    *slot += a * b as u32;
                }
                // keep the accumulators small for long inner dimensions
                if l % 1024 == 1023 {
                    acc.iter_mut().for_each(|s| *s %= p);
                }
            }
            out.extend(acc.iter().map(|&s| (s % p) as u8));
        }
        FpMatrix { p: self.p, rows: n, cols: m, data: out }
    }

    /// `self * v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[u8]) -> Vec<u8> {
        assert_eq!(self.cols, v.len());
        let p = self.p.as_u32();
        (0..self.rows)
            .map(|r| {
                let s: u32 = self.row(r).iter().zip(v).map(|(&a, &b)| a as u32 * b as u32).sum();
                (s % p) as u8
            })
            .collect()
    }

    /// `v^T * self` for a row vector `v`.
    pub fn vec_mul(&self, v: &[u8]) -> Vec<u8> {
        assert_eq!(self.rows, v.len());
        let p = self.p.as_u32();
        let mut acc = vec![0u32; self.cols];
        for (r, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (slot, &b) in acc.iter_mut().zip(self.row(r)) {
                *slot += a as u32 * b as u32;
            }
        }
        acc.into_iter().map(|s| (s % p) as u8).collect()
    }

    pub fn add(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let p = self.p;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| p.add(a, b)).collect();
        FpMatrix { p, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let p = self.p;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| p.sub(a, b)).collect();
        FpMatrix { p, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: u8) -> FpMatrix {
        let p = self.p;
        let data = self.data.iter().map(|&a| p.mul(a, c)).collect();
        FpMatrix { p, rows: self.rows, cols: self.cols, data }
    }

    /// `self += c * other`
    pub fn add_scaled_assign(&mut self, c: u8, other: &FpMatrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        if c == 0 {
            return;
        }
        let p = self.p;
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a = p.add(*a, p.mul(c, b));
        }
    }

    pub fn pow(&self, mut e: u64) -> FpMatrix {
        assert!(self.is_square());
        let mut result = Self::identity(self.p, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    pub fn commutes_with(&self, other: &FpMatrix) -> bool {
        self.mul(other) == other.mul(self)
    }

    pub fn vstack(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        FpMatrix { p: self.p, rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn hstack(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.rows, other.rows);
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            data.extend_from_slice(self.row(r));
            data.extend_from_slice(other.row(r));
        }
        FpMatrix { p: self.p, rows: self.rows, cols, data }
    }

    /// Stacks row vectors into a matrix with `cols` columns.
    pub fn from_row_vectors(p: Prime, cols: usize, vecs: &[Vec<u8>]) -> FpMatrix {
        let mut data = Vec::with_capacity(vecs.len() * cols);
        for v in vecs {
            assert_eq!(v.len(), cols);
            data.extend_from_slice(v);
        }
        FpMatrix { p, rows: vecs.len(), cols, data }
    }

    /// Places column vectors side by side.
    pub fn from_column_vectors(p: Prime, rows: usize, vecs: &[Vec<u8>]) -> FpMatrix {
        Self::from_row_vectors(p, rows, vecs).transpose()
    }

    pub fn block_diag(p: Prime, blocks: &[&FpMatrix]) -> FpMatrix {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let m: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(p, n, m);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &FpMatrix) {
        for r in 0..block.rows {
            let dst = (r0 + r) * self.cols + c0;
            self.data[dst..dst + block.cols].copy_from_slice(block.row(r));
        }
    }

    pub fn submatrix(&self, r0: usize, rows: usize, c0: usize, cols: usize) -> FpMatrix {
        let mut out = Self::zeros(self.p, rows, cols);
        for r in 0..rows {
            let src = (r0 + r) * self.cols + c0;
            out.data[r * cols..(r + 1) * cols].copy_from_slice(&self.data[src..src + cols]);
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> FpMatrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &r in idx {
            data.extend_from_slice(self.row(r));
        }
        FpMatrix { p: self.p, rows: idx.len(), cols: self.cols, data }
    }

    pub fn select_cols(&self, idx: &[usize]) -> FpMatrix {
        let mut data = Vec::with_capacity(idx.len() * self.rows);
        for r in 0..self.rows {
            let row = self.row(r);
            data.extend(idx.iter().map(|&c| row[c]));
        }
        FpMatrix { p: self.p, rows: self.rows, cols: idx.len(), data }
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &FpMatrix) -> FpMatrix {
        let p = self.p;
        let mut out = Self::zeros(p, self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let v = p.mul(a, other.get(k, l));
                        out.set(i * other.rows + k, j * other.cols + l, v);
                    }
                }
            }
        }
        out
    }

    /// Row-major flattening, used to treat matrices as vectors.
    pub fn flatten(&self) -> Vec<u8> {
        self.data.clone()
    }

    pub fn unflatten(p: Prime, rows: usize, cols: usize, v: &[u8]) -> FpMatrix {
        Self::from_data(p, rows, cols, v.to_vec())
    }

    /// Reduced row-echelon form and its pivot columns.
    pub fn rref(&self) -> (FpMatrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    /// Row-reduces in place and returns the pivot columns. Zero rows are kept at the bottom.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let p = self.p;
        let (nr, nc) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut pr = 0;
        for c in 0..nc {
            if pr == nr {
                break;
            }
            let Some(sel) = (pr..nr).find(|&r| self.data[r * nc + c] != 0) else {
                continue;
            };
            if sel != pr {
                for k in 0..nc {
                    self.data.swap(sel * nc + k, pr * nc + k);
                }
            }
            let inv = p.inv(self.data[pr * nc + c]);
            if inv != 1 {
                for k in c..nc {
                    let v = &mut self.data[pr * nc + k];
                    *v = p.mul(*v, inv);
                }
            }
            let (head, tail) = self.data.split_at_mut(pr * nc);
            let (pivot_row, rest) = tail.split_at_mut(nc);
            let eliminate = |row: &mut [u8]| {
                let f = row[c];
                if f != 0 {
                    let nf = p.neg(f);
                    for k in c..nc {
                        if pivot_row[k] != 0 {
                            row[k] = p.add(row[k], p.mul(nf, pivot_row[k]));
                        }
                    }
                }
            };
            head.chunks_mut(nc).for_each(eliminate);
            rest.chunks_mut(nc).for_each(eliminate);
            pivots.push(c);
            pr += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// RREF with zero rows removed: the canonical basis of the row space.
    pub fn row_space(&self) -> FpMatrix {
        let (mut r, piv) = self.rref();
        r.rows = piv.len();
        r.data.truncate(piv.len() * r.cols);
        r
    }

    /// Basis (as rows) of the right null space `{x : self * x = 0}`.
    pub fn kernel_basis(&self) -> FpMatrix {
        let p = self.p;
        let (r, piv) = self.rref();
        let n = self.cols;
        let mut is_pivot = vec![false; n];
        for &c in &piv {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
        let mut out = Self::zeros(p, free.len(), n);
        for (k, &f) in free.iter().enumerate() {
            out.set(k, f, 1);
            for (i, &pc) in piv.iter().enumerate() {
                out.set(k, pc, p.neg(r.get(i, f)));
            }
        }
        out
    }

    /// Basis (as rows) of the column space.
    pub fn image_basis(&self) -> FpMatrix {
        self.transpose().row_space()
    }

    pub fn inverse(&self) -> Result<FpMatrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(self.clone());
        }
        let aug = self.hstack(&Self::identity(self.p, n));
        let (r, piv) = aug.rref();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        Ok(r.submatrix(0, n, n, n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }
}

/// One solution of `constraints * x = rhs`, or `None` when the system is inconsistent.
pub fn solve_linear(constraints: &FpMatrix, rhs: &[u8]) -> Result<Option<Vec<u8>>> {
    if rhs.len() != constraints.rows() {
        return Err(Error::DimensionMismatch(format!("{} constraints but right-hand side of length {}", constraints.rows(), rhs.len())));
    }
    let p = constraints.prime();
    let n = constraints.cols();
    let b = FpMatrix::from_data(p, rhs.len(), 1, rhs.iter().map(|&v| v % p.get()).collect());
    let (r, piv) = constraints.hstack(&b).rref();
    if piv.last() == Some(&n) {
        return Ok(None);
    }
    let mut x = vec![0u8; n];
    for (i, &c) in piv.iter().enumerate() {
        x[c] = r.get(i, n);
    }
    Ok(Some(x))
}

/// RREF basis of the sum of two row spaces.
pub fn subspace_sum(a: &FpMatrix, b: &FpMatrix) -> Result<FpMatrix> {
    if a.cols() != b.cols() {
        return Err(Error::DimensionMismatch(format!("subspaces of F_p^{} and F_p^{}", a.cols(), b.cols())));
    }
    Ok(a.vstack(b).row_space())
}

/// RREF basis of the intersection of two row spaces.
pub fn subspace_intersection(a: &FpMatrix, b: &FpMatrix) -> Result<FpMatrix> {
    if a.cols() != b.cols() {
        return Err(Error::DimensionMismatch("intersection of different ambients".into()));
    }
    let p = a.prime();
    let a = a.row_space();
    let b = b.row_space();
    if a.rows() == 0 || b.rows() == 0 {
        return Ok(FpMatrix::zeros(p, 0, a.cols()));
    }
    // x A = y B  <=>  [x | y] [A; -B] = 0
    let stacked = a.vstack(&b.scale(p.neg(1)));
    let rel = stacked.transpose().kernel_basis();
    let coeffs = rel.submatrix(0, rel.rows(), 0, a.rows());
    Ok(coeffs.mul(&a).row_space())
}

/// Whether every row of `sub` lies in the row space of `space`.
pub fn contains_subspace(space: &FpMatrix, sub: &FpMatrix) -> bool {
    let base = space.rank();
    sub.rows() == 0 || space.vstack(sub).rank() == base
}

/// The quotient of F_p^n by a subspace, with coordinates taken on the
/// non-pivot positions of the subspace's RREF basis.
#[derive(Clone, Debug)]
pub struct Quotient {
    basis: FpMatrix,
    pivots: Vec<usize>,
    complement: Vec<usize>,
    ambient: usize,
}

impl Quotient {
    pub fn new(subspace: &FpMatrix) -> Self {
        let basis = subspace.row_space();
        let ambient = subspace.cols();
        let (_, pivots) = basis.rref();
        let mut is_pivot = vec![false; ambient];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let complement = (0..ambient).filter(|&c| !is_pivot[c]).collect();
        Quotient { basis, pivots, complement, ambient }
    }

    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn subspace(&self) -> &FpMatrix {
        &self.basis
    }

    pub fn complement_coordinates(&self) -> &[usize] {
        &self.complement
    }

    /// Reduces `v` modulo the subspace, in ambient coordinates.
    pub fn reduce(&self, v: &[u8]) -> Vec<u8> {
        let p = self.basis.prime();
        let mut w = v.to_vec();
        for (i, &c) in self.pivots.iter().enumerate() {
            let f = w[c];
            if f != 0 {
                let nf = p.neg(f);
                for (x, &b) in w.iter_mut().zip(self.basis.row(i)) {
                    *x = p.add(*x, p.mul(nf, b));
                }
            }
        }
        w
    }

    /// Quotient coordinates of an ambient vector.
    pub fn project(&self, v: &[u8]) -> Vec<u8> {
        let w = self.reduce(v);
        self.complement.iter().map(|&c| w[c]).collect()
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Matrix of the quotient map, `dim x ambient`.
    pub fn projection_matrix(&self) -> FpMatrix {
        let p = self.basis.prime();
        let mut q = FpMatrix::zeros(p, self.dim(), self.ambient);
        for j in 0..self.ambient {
            let mut e = vec![0u8; self.ambient];
            e[j] = 1;
            for (k, v) in self.project(&e).into_iter().enumerate() {
                q.set(k, j, v);
            }
        }
        q
    }

    /// Matrix of the section sending quotient coordinate k to the unit vector at
    /// the k-th complement position, `ambient x dim`.
    pub fn lift_matrix(&self) -> FpMatrix {
        let p = self.basis.prime();
        let mut l = FpMatrix::zeros(p, self.ambient, self.dim());
        for (k, &c) in self.complement.iter().enumerate() {
            l.set(c, k, 1);
        }
        l
    }

    /// Induced action on the quotient; fails unless the subspace is invariant.
    pub fn induced_action(&self, action: &FpMatrix) -> Result<FpMatrix> {
        if action.rows() != self.ambient || action.cols() != self.ambient {
            return Err(Error::DimensionMismatch("action does not match the ambient space".into()));
        }
        for i in 0..self.basis.rows() {
            if !self.contains(&action.mul_vec(self.basis.row(i))) {
                return Err(Error::NotInvariant);
            }
        }
        let cols = action.select_cols(&self.complement);
        let mut out = FpMatrix::zeros(action.prime(), self.dim(), self.dim());
        for k in 0..self.dim() {
            for (i, v) in self.project(&cols.column(k)).into_iter().enumerate() {
                out.set(i, k, v);
            }
        }
        Ok(out)
    }
}

/// Matrix of the map induced by `action` on `F_p^n / subspace`.
pub fn induced_quotient_action(action: &FpMatrix, subspace: &FpMatrix) -> Result<FpMatrix> {
    Quotient::new(subspace).induced_action(action)
}

/// Coordinates with respect to a fixed linearly independent family of vectors.
#[derive(Clone, Debug)]
pub struct SpanCoords {
    reduced: FpMatrix,
    pivots: Vec<usize>,
    transform: FpMatrix,
}

impl SpanCoords {
    /// `basis` holds the vectors as rows; they must be independent.
    pub fn new(basis: &FpMatrix) -> Result<Self> {
        let k = basis.rows();
        let aug = basis.hstack(&FpMatrix::identity(basis.prime(), k));
        let (r, piv) = aug.rref();
        if piv.len() < k || piv.iter().any(|&c| c >= basis.cols()) {
            return Err(Error::DimensionMismatch("basis vectors are linearly dependent".into()));
        }
        Ok(SpanCoords { reduced: r.submatrix(0, k, 0, basis.cols()), pivots: piv, transform: r.submatrix(0, k, basis.cols(), k) })
    }

    pub fn len(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pivots.is_empty()
    }

    /// Coordinates of `v`, assuming it lies in the span.
    pub fn coords_unchecked(&self, v: &[u8]) -> Vec<u8> {
        let lead: Vec<u8> = self.pivots.iter().map(|&c| v[c]).collect();
        self.transform.vec_mul(&lead)
    }

    /// Coordinates of `v`, or `None` when it is outside the span.
    pub fn coords(&self, v: &[u8]) -> Option<Vec<u8>> {
        let lead: Vec<u8> = self.pivots.iter().map(|&c| v[c]).collect();
        let recon = self.reduced.vec_mul(&lead);
        (recon == v).then(|| self.transform.vec_mul(&lead))
    }
}
