//! Finite-dimensional algebras over F_p and their Jacobson radicals.
//!
//! The radical is computed with the characteristic-p trace-form iteration:
//! starting from `I_{-1} = A`, each step keeps the elements `x` of the previous
//! ideal for which `Tr((x y)^{p^i}) / p^i` vanishes mod p for every `y`,
//! evaluated on integer lifts modulo `p^{i+1}`. After `floor(log_p n)` steps
//! (n the size of a faithful representation) what remains is the radical.

use crate::error::{Error, Result};
use crate::field::Prime;
use crate::matrix::{FpMatrix, SpanCoords};

/// An associative unital algebra given by structure constants on a basis.
#[derive(Clone, Debug)]
pub struct StructAlgebra {
    p: Prime,
    dim: usize,
    /// `table[(i * dim + j) * dim + k]` is the coefficient of `b_k` in `b_i b_j`.
    table: Vec<u8>,
    one: Vec<u8>,
}

impl StructAlgebra {
    pub fn new(p: Prime, dim: usize, table: Vec<u8>, one: Vec<u8>) -> Self {
        assert_eq!(table.len(), dim * dim * dim);
        assert_eq!(one.len(), dim);
        StructAlgebra { p, dim, table, one }
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn one(&self) -> &[u8] {
        &self.one
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &[u8] {
        let start = (i * self.dim + j) * self.dim;
        &self.table[start..start + self.dim]
    }

    pub fn mul(&self, x: &[u8], y: &[u8]) -> Vec<u8> {
        let p = self.p.as_u32();
        let d = self.dim;
        let mut acc = vec![0u32; d];
        for (i, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let ab = a as u32 * b as u32;
                for (slot, &c) in acc.iter_mut().zip(self.basis_product(i, j)) {
                    *slot += ab * c as u32;
                }
            }
            acc.iter_mut().for_each(|s| *s %= p);
        }
        acc.into_iter().map(|s| (s % p) as u8).collect()
    }

    pub fn pow(&self, x: &[u8], mut e: u64) -> Vec<u8> {
        let mut result = self.one.clone();
        let mut base = x.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        result
    }

    /// Matrix of left multiplication by `x`; column j holds `x b_j`.
    pub fn left_regular(&self, x: &[u8]) -> FpMatrix {
        let d = self.dim;
        let mut m = FpMatrix::zeros(self.p, d, d);
        for j in 0..d {
            let mut e = vec![0u8; d];
            e[j] = 1;
            for (k, v) in self.mul(x, &e).into_iter().enumerate() {
                m.set(k, j, v);
            }
        }
        m
    }

    /// Associativity on all basis triples.
    pub fn is_associative(&self) -> bool {
        let d = self.dim;
        let unit = |i: usize| {
            let mut e = vec![0u8; d];
            e[i] = 1;
            e
        };
        (0..d).all(|i| {
            (0..d).all(|j| {
                let ij = self.basis_product(i, j).to_vec();
                (0..d).all(|k| self.mul(&ij, &unit(k)) == self.mul(&unit(i), self.basis_product(j, k)))
            })
        })
    }

    /// Basis (coordinate rows) of the Jacobson radical.
    pub fn radical(&self) -> FpMatrix {
        if self.dim == 0 {
            return FpMatrix::zeros(self.p, 0, 0);
        }
        let regular: Vec<FpMatrix> = (0..self.dim)
            .map(|i| {
                let mut e = vec![0u8; self.dim];
                e[i] = 1;
                self.left_regular(&e)
            })
            .collect();
        trace_form_radical(self.p, &regular)
    }

    /// Whether the span of the rows of `ideal` is a two-sided ideal.
    pub fn is_ideal(&self, ideal: &FpMatrix) -> bool {
        let span = ideal.row_space();
        let Ok(coords) = SpanCoords::new(&span) else { return false };
        let d = self.dim;
        (0..span.rows()).all(|r| {
            let x = span.row(r);
            (0..d).all(|i| {
                let mut e = vec![0u8; d];
                e[i] = 1;
                coords.coords(&self.mul(&e, x)).is_some() && coords.coords(&self.mul(x, &e)).is_some()
            })
        })
    }

    /// Smallest L with `J^L = 0`, or `None` if the span is not nilpotent.
    pub fn nilpotency_index(&self, ideal: &FpMatrix) -> Option<usize> {
        let base = ideal.row_space();
        if base.rows() == 0 {
            return Some(0);
        }
        let mut power = base.clone();
        for l in 1..=self.dim + 1 {
            if power.rows() == 0 {
                return Some(l);
            }
            let mut prods = Vec::new();
            for a in 0..power.rows() {
                for b in 0..base.rows() {
                    prods.push(self.mul(power.row(a), base.row(b)));
                }
            }
            power = FpMatrix::from_row_vectors(self.p, self.dim, &prods).row_space();
        }
        None
    }

    /// The quotient algebra by a two-sided ideal, on the non-pivot coordinates
    /// of the ideal's RREF basis.
    pub fn quotient(&self, ideal: &FpMatrix) -> StructAlgebra {
        let q = crate::matrix::Quotient::new(ideal);
        let comp = q.complement_coordinates().to_vec();
        let qd = comp.len();
        let mut table = Vec::with_capacity(qd * qd * qd);
        for &i in &comp {
            for &j in &comp {
                table.extend(q.project(self.basis_product(i, j)));
            }
        }
        StructAlgebra { p: self.p, dim: qd, table, one: q.project(&self.one) }
    }

    /// Checks the defining properties of a radical candidate: it is an ideal,
    /// nilpotent, and the quotient has zero radical.
    pub fn verify_radical(&self, radical: &FpMatrix) -> RadicalCheck {
        let is_ideal = self.is_ideal(radical);
        let nilpotency_index = self.nilpotency_index(radical);
        let quotient_radical_dim = if is_ideal { self.quotient(radical).radical().rows() } else { usize::MAX };
        RadicalCheck { is_ideal, nilpotency_index, quotient_radical_dim }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalCheck {
    pub is_ideal: bool,
    pub nilpotency_index: Option<usize>,
    pub quotient_radical_dim: usize,
}

impl RadicalCheck {
    pub fn passed(&self) -> bool {
        self.is_ideal && self.nilpotency_index.is_some() && self.quotient_radical_dim == 0
    }
}

/// A subalgebra of `M_n(F_p)` given by a basis of matrices.
#[derive(Clone, Debug)]
pub struct MatrixAlgebra {
    p: Prime,
    n: usize,
    basis: Vec<FpMatrix>,
    coords: SpanCoords,
}

impl MatrixAlgebra {
    /// Builds the algebra spanned by `spanning`; the span must be closed under
    /// multiplication and contain the identity.
    pub fn from_span(p: Prime, n: usize, spanning: &[FpMatrix]) -> Result<Self> {
        let flat: Vec<Vec<u8>> = spanning.iter().map(FpMatrix::flatten).collect();
        let space = FpMatrix::from_row_vectors(p, n * n, &flat).row_space();
        let basis: Vec<FpMatrix> = (0..space.rows()).map(|r| FpMatrix::unflatten(p, n, n, space.row(r))).collect();
        Self::from_basis(p, n, basis)
    }

    /// Uses the given independent matrices as the basis.
    pub fn from_basis(p: Prime, n: usize, basis: Vec<FpMatrix>) -> Result<Self> {
        let flat: Vec<Vec<u8>> = basis.iter().map(FpMatrix::flatten).collect();
        let coords = SpanCoords::new(&FpMatrix::from_row_vectors(p, n * n, &flat))?;
        let alg = MatrixAlgebra { p, n, basis, coords };
        if alg.coordinates(&FpMatrix::identity(p, n)).is_none() {
            return Err(Error::Verification("identity is not in the span".into()));
        }
        Ok(alg)
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    /// Size of the matrices.
    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[FpMatrix] {
        &self.basis
    }

    pub fn coordinates(&self, m: &FpMatrix) -> Option<Vec<u8>> {
        self.coords.coords(m.data())
    }

    pub fn element(&self, coords: &[u8]) -> FpMatrix {
        let mut m = FpMatrix::zeros(self.p, self.n, self.n);
        for (c, b) in coords.iter().zip(&self.basis) {
            m.add_scaled_assign(*c, b);
        }
        m
    }

    /// Structure constants; fails if the span is not closed under products.
    pub fn to_struct(&self) -> Result<StructAlgebra> {
        let d = self.dim();
        let mut table = Vec::with_capacity(d * d * d);
        for a in &self.basis {
            for b in &self.basis {
                let c = self.coordinates(&a.mul(b)).ok_or_else(|| Error::Verification("span is not closed under multiplication".into()))?;
                table.extend(c);
            }
        }
        let one = self.coordinates(&FpMatrix::identity(self.p, self.n)).expect("checked at construction");
        Ok(StructAlgebra::new(self.p, d, table, one))
    }

    /// Radical basis as coordinate rows, computed in whichever faithful
    /// representation is smaller.
    pub fn radical_coords(&self) -> Result<FpMatrix> {
        if self.n <= self.dim() {
            let j = trace_form_radical(self.p, &self.basis);
            Ok(j)
        } else {
            Ok(self.to_struct()?.radical())
        }
    }

    /// Radical basis as matrices.
    pub fn radical(&self) -> Result<Vec<FpMatrix>> {
        let j = self.radical_coords()?;
        Ok((0..j.rows()).map(|r| self.element(j.row(r))).collect())
    }
}

/// Radical of the algebra spanned by `basis` (a faithful representation),
/// returned as coordinate rows with respect to `basis`.
pub fn trace_form_radical(p: Prime, basis: &[FpMatrix]) -> FpMatrix {
    let d = basis.len();
    if d == 0 {
        return FpMatrix::zeros(p, 0, 0);
    }
    let n = basis[0].rows();
    let q = p.get() as u64;
    let mut steps = 0;
    let mut pw = q;
    while pw <= n as u64 {
        steps += 1;
        pw *= q;
    }
    // current ideal, as coordinate rows, and its matrices
    let mut ideal = FpMatrix::identity(p, d);
    for i in 0..=steps {
        let k = ideal.rows();
        if k == 0 {
            break;
        }
        let members: Vec<FpMatrix> = (0..k)
            .map(|r| {
                let mut m = FpMatrix::zeros(p, n, n);
                for (c, b) in ideal.row(r).iter().zip(basis) {
                    m.add_scaled_assign(*c, b);
                }
                m
            })
            .collect();
        let modulus = q.pow(i as u32 + 1);
        let scale = q.pow(i as u32);
        let exponent = scale;
        let mut gram = FpMatrix::zeros(p, k, d);
        for (r, x) in members.iter().enumerate() {
            for (c, y) in basis.iter().enumerate() {
                let t = lifted_power_trace(&x.mul(y), exponent, modulus);
                debug_assert_eq!(t % scale, 0, "trace not divisible by p^i on the ideal");
                gram.set(r, c, ((t / scale) % q) as u8);
            }
        }
        // keep combinations c with c * gram = 0
        let keep = gram.transpose().kernel_basis();
        ideal = keep.mul(&ideal).row_space();
    }
    ideal
}

/// `Tr(X^e) mod modulus` for the integer lift of X with entries in `[0, p)`.
fn lifted_power_trace(x: &FpMatrix, e: u64, modulus: u64) -> u64 {
    let n = x.rows();
    let lift: Vec<u64> = x.data().iter().map(|&v| v as u64).collect();
    let mul = |a: &[u64], b: &[u64]| -> Vec<u64> {
        let mut out = vec![0u64; n * n];
        for i in 0..n {
            for l in 0..n {
                let av = a[i * n + l];
                if av == 0 {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] += av * b[l * n + j];
                }
            }
            for j in 0..n {
                out[i * n + j] %= modulus;
            }
        }
        out
    };
    let mut result: Vec<u64> = (0..n * n).map(|k| u64::from(k % (n + 1) == 0)).collect();
    let mut base = lift;
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            result = mul(&result, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mul(&base, &base);
        }
    }
    (0..n).map(|i| result[i * n + i]).sum::<u64>() % modulus
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: u8) -> Prime {
        Prime::new(v).unwrap()
    }

    fn unit(d: usize, i: usize) -> Vec<u8> {
        let mut e = vec![0u8; d];
        e[i] = 1;
        e
    }

    /// Dickson's criterion by enumeration: x is in the radical iff x*y is
    /// nilpotent for every y.
    fn brute_force_radical_dim(alg: &StructAlgebra) -> usize {
        let q = alg.prime().get() as usize;
        let d = alg.dim();
        let all: Vec<Vec<u8>> = (0..q.pow(d as u32))
            .map(|mut idx| {
                (0..d)
                    .map(|_| {
                        let v = (idx % q) as u8;
                        idx /= q;
                        v
                    })
                    .collect()
            })
            .collect();
        let nilpotent = |z: &[u8]| alg.pow(z, d as u64 + 1).iter().all(|&v| v == 0);
        let members: Vec<&Vec<u8>> = all.iter().filter(|x| all.iter().all(|y| nilpotent(&alg.mul(x, y)))).collect();
        // the radical is a subspace; its size is q^dim
        let mut dim = 0;
        while q.pow(dim) < members.len() {
            dim += 1;
        }
        assert_eq!(q.pow(dim), members.len());
        dim as usize
    }

    fn full_matrix_algebra(pr: Prime, n: usize) -> MatrixAlgebra {
        let mut basis = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let mut m = FpMatrix::zeros(pr, n, n);
                m.set(i, j, 1);
                basis.push(m);
            }
        }
        MatrixAlgebra::from_span(pr, n, &basis).unwrap()
    }

    #[test]
    fn full_matrix_algebra_is_semisimple() {
        for &q in &[2, 3] {
            let a = full_matrix_algebra(p(q), 2);
            assert_eq!(a.radical_coords().unwrap().rows(), 0);
            assert_eq!(a.to_struct().unwrap().radical().rows(), 0);
        }
    }

    #[test]
    fn dual_numbers_have_one_dimensional_radical() {
        // End(kC2) = span(I, J) with J^2 = 0
        let pr = p(2);
        let i = FpMatrix::identity(pr, 2);
        let j = FpMatrix::from_rows(pr, &[vec![0, 1], vec![0, 0]]).unwrap();
        let a = MatrixAlgebra::from_span(pr, 2, &[i, j.clone()]).unwrap();
        let rad = a.radical().unwrap();
        assert_eq!(rad.len(), 1);
        assert_eq!(rad[0], j);
    }

    #[test]
    fn upper_triangular_radical() {
        let pr = p(2);
        let mut basis = Vec::new();
        for (r, c) in [(0, 0), (0, 1), (1, 1)] {
            let mut m = FpMatrix::zeros(pr, 2, 2);
            m.set(r, c, 1);
            basis.push(m);
        }
        let a = MatrixAlgebra::from_span(pr, 2, &basis).unwrap();
        let rad = a.radical().unwrap();
        assert_eq!(rad.len(), 1);
        assert_eq!(rad[0].get(0, 1), 1);
        assert_eq!(rad[0].get(0, 0), 0);
        let s = a.to_struct().unwrap();
        assert!(s.verify_radical(&a.radical_coords().unwrap()).passed());
    }

    #[test]
    fn group_algebra_of_c3_in_char_3() {
        // F_3[C3]: radical is the augmentation ideal, dimension 2
        let pr = p(3);
        let g = FpMatrix::from_rows(pr, &[vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
        let a = MatrixAlgebra::from_span(pr, 3, &[FpMatrix::identity(pr, 3), g.clone(), g.mul(&g)]).unwrap();
        let s = a.to_struct().unwrap();
        let rad = s.radical();
        assert_eq!(rad.rows(), 2);
        assert_eq!(s.nilpotency_index(&rad), Some(3));
        assert_eq!(brute_force_radical_dim(&s), 2);
    }

    #[test]
    fn matches_brute_force_on_small_algebras() {
        // F_2[C2 x C2] (local, radical dim 3), F_2[S3] in its regular representation
        // restricted to a 4-dim corner, and F_2 x F_2.
        let pr = p(2);
        let swap01 = FpMatrix::from_rows(pr, &[vec![0, 1, 0, 0], vec![1, 0, 0, 0], vec![0, 0, 0, 1], vec![0, 0, 1, 0]]).unwrap();
        let swap02 = FpMatrix::from_rows(pr, &[vec![0, 0, 1, 0], vec![0, 0, 0, 1], vec![1, 0, 0, 0], vec![0, 1, 0, 0]]).unwrap();
        let v4 = MatrixAlgebra::from_span(pr, 4, &[FpMatrix::identity(pr, 4), swap01.clone(), swap02.clone(), swap01.mul(&swap02)])
            .unwrap()
            .to_struct()
            .unwrap();
        assert_eq!(v4.radical().rows(), brute_force_radical_dim(&v4));
        assert_eq!(v4.radical().rows(), 3);

        let mut e1 = FpMatrix::zeros(pr, 2, 2);
        e1.set(0, 0, 1);
        let mut e2 = FpMatrix::zeros(pr, 2, 2);
        e2.set(1, 1, 1);
        let split = MatrixAlgebra::from_span(pr, 2, &[e1, e2]).unwrap().to_struct().unwrap();
        assert_eq!(split.radical().rows(), 0);
        assert_eq!(brute_force_radical_dim(&split), 0);
    }

    #[test]
    fn quotient_by_radical_is_semisimple() {
        let pr = p(3);
        let j = FpMatrix::from_rows(pr, &[vec![0, 1, 0], vec![0, 0, 1], vec![0, 0, 0]]).unwrap();
        let a = MatrixAlgebra::from_span(pr, 3, &[FpMatrix::identity(pr, 3), j.clone(), j.mul(&j)]).unwrap().to_struct().unwrap();
        let rad = a.radical();
        let check = a.verify_radical(&rad);
        assert!(check.passed(), "{check:?}");
        assert_eq!(check.nilpotency_index, Some(3));
        assert!(a.is_associative());
        assert_eq!(a.mul(a.one(), &unit(3, 1)), unit(3, 1));
    }
}
