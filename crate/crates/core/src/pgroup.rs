//! Elementary abelian p-groups as F_p vector spaces: subgroups are subspaces,
//! automorphisms are invertible matrices.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Prime;
use crate::matrix::FpMatrix;

/// The group `(C_p)^rank` with standard generators `g_1, ..., g_rank`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ElemAbelianGroup {
    pub p: Prime,
    pub rank: usize,
}

impl ElemAbelianGroup {
    pub fn new(p: Prime, rank: usize) -> Self {
        ElemAbelianGroup { p, rank }
    }

    pub fn order(&self) -> u64 {
        (self.p.get() as u64).pow(self.rank as u32)
    }

    pub fn trivial(p: Prime) -> Self {
        ElemAbelianGroup { p, rank: 0 }
    }

    /// All subgroups, each given by its RREF basis, in order of increasing rank.
    pub fn subgroups(&self) -> Vec<SubgroupInclusion> {
        (0..=self.rank).flat_map(|s| subspaces(self.p, self.rank, s)).map(|b| SubgroupInclusion::from_rows(*self, &b)).collect()
    }

    /// The index-p subgroups.
    pub fn hyperplanes(&self) -> Vec<SubgroupInclusion> {
        if self.rank == 0 {
            return Vec::new();
        }
        subspaces(self.p, self.rank, self.rank - 1).into_iter().map(|b| SubgroupInclusion::from_rows(*self, &b)).collect()
    }
}

/// A subgroup `H <= P` presented by generator vectors (exponent vectors in F_p^r).
/// A kH-module attached to this inclusion has one action per generator, in order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupInclusion {
    pub ambient: ElemAbelianGroup,
    generators: Vec<Vec<u8>>,
}

impl SubgroupInclusion {
    pub fn new(ambient: ElemAbelianGroup, generators: Vec<Vec<u8>>) -> Result<Self> {
        let p = ambient.p;
        if generators.iter().any(|g| g.len() != ambient.rank) {
            return Err(Error::InvalidSubgroup("generator of wrong length".into()));
        }
        let gens: Vec<Vec<u8>> = generators.into_iter().map(|g| g.into_iter().map(|v| v % p.get()).collect()).collect();
        let m = FpMatrix::from_row_vectors(p, ambient.rank, &gens);
        if m.rank() != gens.len() {
            return Err(Error::InvalidSubgroup("generators are not independent".into()));
        }
        Ok(SubgroupInclusion { ambient, generators: gens })
    }

    fn from_rows(ambient: ElemAbelianGroup, basis: &FpMatrix) -> Self {
        let generators = (0..basis.rows()).map(|r| basis.row(r).to_vec()).collect();
        SubgroupInclusion { ambient, generators }
    }

    pub fn whole(ambient: ElemAbelianGroup) -> Self {
        Self::from_rows(ambient, &FpMatrix::identity(ambient.p, ambient.rank))
    }

    pub fn generators(&self) -> &[Vec<u8>] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn corank(&self) -> usize {
        self.ambient.rank - self.rank()
    }

    pub fn order(&self) -> u64 {
        (self.ambient.p.get() as u64).pow(self.rank() as u32)
    }

    /// The subgroup as an abstract group of its own rank.
    pub fn as_group(&self) -> ElemAbelianGroup {
        ElemAbelianGroup::new(self.ambient.p, self.rank())
    }

    /// Generators as rows.
    pub fn basis_matrix(&self) -> FpMatrix {
        FpMatrix::from_row_vectors(self.ambient.p, self.ambient.rank, &self.generators)
    }

    /// Canonical RREF basis of the subgroup.
    pub fn canonical(&self) -> FpMatrix {
        self.basis_matrix().row_space()
    }

    pub fn same_subgroup(&self, other: &SubgroupInclusion) -> bool {
        self.ambient == other.ambient && self.canonical() == other.canonical()
    }

    /// Standard basis vectors at the non-pivot coordinates of the canonical
    /// basis, ascending: the default completion to a basis of F_p^r.
    pub fn default_extension(&self) -> Vec<Vec<u8>> {
        let (_, piv) = self.canonical().rref();
        (0..self.ambient.rank)
            .filter(|c| !piv.contains(c))
            .map(|c| {
                let mut e = vec![0u8; self.ambient.rank];
                e[c] = 1;
                e
            })
            .collect()
    }
}

/// An automorphism of `(C_p)^r`: column i is the exponent vector of the image of `g_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutTwist {
    matrix: FpMatrix,
}

impl AutTwist {
    pub fn new(matrix: FpMatrix) -> Result<Self> {
        if !matrix.is_invertible() {
            return Err(Error::Singular);
        }
        Ok(AutTwist { matrix })
    }

    pub fn identity(g: ElemAbelianGroup) -> Self {
        AutTwist { matrix: FpMatrix::identity(g.p, g.rank) }
    }

    pub fn matrix(&self) -> &FpMatrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.rows()
    }
}

/// All s-dimensional subspaces of F_p^n, as RREF bases, enumerated by pivot
/// pattern and then by free entries.
pub fn subspaces(p: Prime, n: usize, s: usize) -> Vec<FpMatrix> {
    let mut out = Vec::new();
    if s > n {
        return out;
    }
    for pivots in combinations(n, s) {
        // free positions: (row i, col c) with c > pivots[i] and c not a pivot
        let free: Vec<(usize, usize)> = (0..s)
            .flat_map(|i| {
                let piv = pivots.clone();
                ((pivots[i] + 1)..n).filter(move |c| !piv.contains(c)).map(move |c| (i, c))
            })
            .collect();
        let q = p.get() as u64;
        for mut idx in 0..q.pow(free.len() as u32) {
            let mut m = FpMatrix::zeros(p, s, n);
            for (i, &c) in pivots.iter().enumerate() {
                m.set(i, c, 1);
            }
            for &(i, c) in &free {
                m.set(i, c, (idx % q) as u8);
                idx /= q;
            }
            out.push(m);
        }
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Order of GL_r(F_p).
pub fn gl_order(p: Prime, r: usize) -> u64 {
    let q = p.get() as u64;
    (0..r as u32).map(|i| q.pow(r as u32) - q.pow(i)).product()
}

/// Every element of GL_r(F_p), by extending independent columns one at a time.
pub fn gl_elements(p: Prime, r: usize) -> Vec<FpMatrix> {
    let q = p.get() as u64;
    let vectors: Vec<Vec<u8>> = (0..q.pow(r as u32))
        .map(|mut idx| {
            (0..r)
                .map(|_| {
                    let v = (idx % q) as u8;
                    idx /= q;
                    v
                })
                .collect()
        })
        .collect();
    let mut partial: Vec<Vec<Vec<u8>>> = vec![Vec::new()];
    for _ in 0..r {
        let mut next = Vec::new();
        for cols in &partial {
            for v in &vectors {
                let mut c = cols.clone();
                c.push(v.clone());
                if FpMatrix::from_row_vectors(p, r, &c).rank() == c.len() {
                    next.push(c);
                }
            }
        }
        partial = next;
    }
    partial.into_iter().map(|cols| FpMatrix::from_column_vectors(p, r, &cols)).collect()
}

/// A generating set of GL_r(F_p): a primitive-root diagonal scaling, the
/// transvection `e_2 -> e_2 + e_1`, and the cycle and swap of coordinates.
pub fn gl_generators(p: Prime, r: usize) -> Vec<FpMatrix> {
    let mut gens = Vec::new();
    if r == 0 {
        return gens;
    }
    let mut d = FpMatrix::identity(p, r);
    d.set(0, 0, p.primitive_root());
    gens.push(d);
    if r >= 2 {
        let mut t = FpMatrix::identity(p, r);
        t.set(0, 1, 1);
        gens.push(t);
        let mut swap = FpMatrix::identity(p, r);
        swap.set(0, 0, 0);
        swap.set(1, 1, 0);
        swap.set(0, 1, 1);
        swap.set(1, 0, 1);
        gens.push(swap);
        let mut cycle = FpMatrix::zeros(p, r, r);
        for i in 0..r {
            cycle.set((i + 1) % r, i, 1);
        }
        gens.push(cycle);
    }
    gens
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Gaussian binomial coefficient, the number of s-dim subspaces of F_q^n.
    fn gaussian_binomial(q: u64, n: u32, s: u32) -> u64 {
        let num: u64 = (0..s).map(|i| q.pow(n - i) - 1).product();
        let den: u64 = (0..s).map(|i| q.pow(i + 1) - 1).product();
        num / den
    }

    #[test]
    fn subspace_counts_match_gaussian_binomials() {
        for &(q, n) in &[(2u8, 3usize), (3, 2), (2, 4), (5, 2)] {
            let p = Prime::new(q).unwrap();
            for s in 0..=n {
                let subs = subspaces(p, n, s);
                assert_eq!(subs.len() as u64, gaussian_binomial(q as u64, n as u32, s as u32));
                let distinct: std::collections::BTreeSet<Vec<u8>> = subs.iter().map(|m| m.flatten()).collect();
                assert_eq!(distinct.len(), subs.len());
                assert!(subs.iter().all(|m| m.row_space() == *m));
            }
        }
    }

    #[test]
    fn v4_has_five_subgroups() {
        let g = ElemAbelianGroup::new(Prime::new(2).unwrap(), 2);
        assert_eq!(g.subgroups().len(), 5);
        assert_eq!(g.hyperplanes().len(), 3);
    }

    #[test]
    fn gl_enumeration_matches_order() {
        for &(q, r) in &[(2u8, 2usize), (3, 2), (2, 3)] {
            let p = Prime::new(q).unwrap();
            let all = gl_elements(p, r);
            assert_eq!(all.len() as u64, gl_order(p, r));
            assert!(all.iter().all(FpMatrix::is_invertible));
        }
        assert_eq!(gl_order(Prime::new(2).unwrap(), 2), 6);
    }

    #[test]
    fn gl_generators_generate() {
        for &(q, r) in &[(2u8, 2usize), (3, 2), (2, 3)] {
            let p = Prime::new(q).unwrap();
            let gens = gl_generators(p, r);
            let mut seen: std::collections::HashSet<FpMatrix> = std::collections::HashSet::new();
            let mut frontier = vec![FpMatrix::identity(p, r)];
            seen.insert(frontier[0].clone());
            while let Some(x) = frontier.pop() {
                for g in &gens {
                    let y = x.mul(g);
                    if seen.insert(y.clone()) {
                        frontier.push(y);
                    }
                }
            }
            assert_eq!(seen.len() as u64, gl_order(p, r));
        }
    }

    #[test]
    fn rejects_dependent_generators() {
        let g = ElemAbelianGroup::new(Prime::new(3).unwrap(), 2);
        assert!(SubgroupInclusion::new(g, vec![vec![1, 2], vec![2, 1]]).is_err());
        assert!(SubgroupInclusion::new(g, vec![vec![1, 2], vec![0, 1]]).is_ok());
        assert!(AutTwist::new(FpMatrix::zeros(g.p, 2, 2)).is_err());
    }

    #[test]
    fn default_extension_completes_basis() {
        let g = ElemAbelianGroup::new(Prime::new(2).unwrap(), 3);
        let h = SubgroupInclusion::new(g, vec![vec![0, 1, 1]]).unwrap();
        let ext = h.default_extension();
        assert_eq!(ext, vec![vec![1, 0, 0], vec![0, 0, 1]]);
        let mut all = h.generators().to_vec();
        all.extend(ext);
        assert_eq!(FpMatrix::from_row_vectors(g.p, 3, &all).rank(), 3);
    }
}
