//! Basic algebras presented as small linear categories: finitely many pairwise
//! non-isomorphic objects with local endomorphism rings, Hom spaces given by
//! bases of matrices, and composition by structure constants.
//!
//! Convention: modules are covariant functors. A module N assigns a space
//! N(Y) to every object and to every morphism `b: Y -> Z` a linear map
//! `N(Y) -> N(Z)`. The indecomposable projectives are the representables
//! `P_X = Hom(X, -)`, on which morphisms act by postcomposition. Equivalently
//! these are left modules over `End(M)` for M the sum of the objects.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::MatrixAlgebra;
use crate::error::{Error, Result};
use crate::field::Prime;
use crate::matrix::{FpMatrix, Quotient, SpanCoords};
use crate::par::{IntoParallelIterator, ParallelIterator};

#[derive(Clone, Debug)]
pub struct BasicAlgebra {
    p: Prime,
    labels: Vec<String>,
    object_dims: Vec<usize>,
    /// `hom[i][j]`: basis of `Hom(X_i, X_j)`, matrices of shape `dim X_j x dim X_i`.
    hom: Vec<Vec<Vec<FpMatrix>>>,
    hom_coords: Vec<Vec<Option<SpanCoords>>>,
    /// `comp[(i * n + j) * n + k]`: for `a` in `Hom(i, j)` and `b` in `Hom(j, k)`,
    /// the coordinates of `b ∘ a` start at `(a * h_jk + b) * h_ik`.
    comp: Vec<Vec<u8>>,
    /// Radical of `End(X_i)` as coordinate rows.
    rad_end: Vec<FpMatrix>,
}

impl BasicAlgebra {
    /// Builds the algebra from Hom bases; every `End(X_i)` must be local.
    pub fn new(p: Prime, labels: Vec<String>, object_dims: Vec<usize>, hom: Vec<Vec<Vec<FpMatrix>>>) -> Result<Self> {
        let n = labels.len();
        if object_dims.len() != n || hom.len() != n || hom.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("hom table does not match the object list".into()));
        }
        let hom_coords: Vec<Vec<Option<SpanCoords>>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if hom[i][j].is_empty() {
                            return Ok(None);
                        }
                        let flat: Vec<Vec<u8>> = hom[i][j].iter().map(FpMatrix::flatten).collect();
                        let m = FpMatrix::from_row_vectors(p, object_dims[i] * object_dims[j], &flat);
                        SpanCoords::new(&m).map(Some)
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let mut alg = BasicAlgebra { p, labels, object_dims, hom, hom_coords, comp: Vec::new(), rad_end: Vec::new() };
        let triples: Vec<(usize, usize, usize)> = (0..n).flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k)))).collect();
        let comp: Vec<Result<Vec<u8>>> = triples.into_par_iter().map(|(i, j, k)| alg.composition_block(i, j, k)).collect();
        alg.comp = comp.into_iter().collect::<Result<Vec<_>>>()?;
        let rad: Vec<Result<FpMatrix>> = (0..n)
            .into_par_iter()
            .map(|i| {
                let end = MatrixAlgebra::from_basis(p, alg.object_dims[i], alg.hom[i][i].clone())?;
                end.radical_coords()
            })
            .collect();
        alg.rad_end = rad.into_iter().collect::<Result<Vec<_>>>()?;
        Ok(alg)
    }

    fn composition_block(&self, i: usize, j: usize, k: usize) -> Result<Vec<u8>> {
        let (hij, hjk, hik) = (self.hom_dim(i, j), self.hom_dim(j, k), self.hom_dim(i, k));
        let mut out = Vec::with_capacity(hij * hjk * hik);
        for a in &self.hom[i][j] {
            for b in &self.hom[j][k] {
                let ba = b.mul(a);
                let c = match &self.hom_coords[i][k] {
                    Some(sc) => sc.coords(ba.data()),
                    None => ba.is_zero().then(Vec::new),
                };
                out.extend(c.ok_or_else(|| Error::Verification("a composite fell outside the Hom basis".into()))?);
            }
        }
        Ok(out)
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn n_objects(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels.iter().position(|l| l == label).ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn object_dim(&self, i: usize) -> usize {
        self.object_dims[i]
    }

    pub fn hom_dim(&self, i: usize, j: usize) -> usize {
        self.hom[i][j].len()
    }

    pub fn hom_basis(&self, i: usize, j: usize) -> &[FpMatrix] {
        &self.hom[i][j]
    }

    /// Coordinates of a matrix in `Hom(X_i, X_j)`, if it lies there.
    pub fn hom_coordinates(&self, i: usize, j: usize, m: &FpMatrix) -> Option<Vec<u8>> {
        match &self.hom_coords[i][j] {
            Some(sc) => sc.coords(m.data()),
            None => m.is_zero().then(Vec::new),
        }
    }

    /// Total dimension `sum_{i,j} dim Hom(X_i, X_j)`.
    pub fn dim(&self) -> usize {
        (0..self.n_objects()).map(|i| (0..self.n_objects()).map(|j| self.hom_dim(i, j)).sum::<usize>()).sum()
    }

    /// `dim End(X_i) / rad End(X_i)`.
    pub fn residue_dim(&self, i: usize) -> usize {
        self.hom_dim(i, i) - self.rad_end[i].rows()
    }

    pub fn radical_end(&self, i: usize) -> &FpMatrix {
        &self.rad_end[i]
    }

    /// Coordinates of `b ∘ a` for basis elements `a` of `Hom(i, j)`, `b` of `Hom(j, k)`.
    pub fn compose_basis(&self, i: usize, j: usize, k: usize, a: usize, b: usize) -> &[u8] {
        let n = self.n_objects();
        let hik = self.hom_dim(i, k);
        let start = (a * self.hom_dim(j, k) + b) * hik;
        &self.comp[(i * n + j) * n + k][start..start + hik]
    }

    /// Composition of arbitrary elements given by coordinates.
    pub fn compose(&self, i: usize, j: usize, k: usize, a: &[u8], b: &[u8]) -> Vec<u8> {
        let p = self.p;
        let mut out = vec![0u8; self.hom_dim(i, k)];
        for (ai, &ac) in a.iter().enumerate() {
            if ac == 0 {
                continue;
            }
            for (bi, &bc) in b.iter().enumerate() {
                if bc == 0 {
                    continue;
                }
                let c = p.mul(ac, bc);
                for (o, &v) in out.iter_mut().zip(self.compose_basis(i, j, k, ai, bi)) {
                    *o = p.add(*o, p.mul(c, v));
                }
            }
        }
        out
    }

    /// Matrix of `a ↦ b ∘ a` from `Hom(i, j)` to `Hom(i, k)`, for `b` in `Hom(j, k)` by coordinates.
    pub fn postcompose_matrix(&self, i: usize, j: usize, k: usize, b: &[u8]) -> FpMatrix {
        let (hij, hik) = (self.hom_dim(i, j), self.hom_dim(i, k));
        let mut m = FpMatrix::zeros(self.p, hik, hij);
        for a in 0..hij {
            let mut e = vec![0u8; hij];
            e[a] = 1;
            for (r, v) in self.compose(i, j, k, &e, b).into_iter().enumerate() {
                m.set(r, a, v);
            }
        }
        m
    }

    /// Coordinate rows spanning the radical of `Hom(i, j)`: everything when
    /// `i != j`, the radical of the local ring `End(X_i)` when `i == j`.
    pub fn radical_hom(&self, i: usize, j: usize) -> FpMatrix {
        if i == j {
            self.rad_end[i].clone()
        } else {
            FpMatrix::identity(self.p, self.hom_dim(i, j))
        }
    }

    /// Checks `(c ∘ b) ∘ a = c ∘ (b ∘ a)` on random basis triples and that the
    /// identity of every object lies in its endomorphism ring.
    pub fn spot_check(&self, samples: usize, seed: u64) -> Result<()> {
        let n = self.n_objects();
        for i in 0..n {
            if self.hom_coordinates(i, i, &FpMatrix::identity(self.p, self.object_dims[i])).is_none() {
                return Err(Error::Verification(format!("identity of {} is missing", self.labels[i])));
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let (i, j, k, l) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
            if self.hom_dim(i, j) == 0 || self.hom_dim(j, k) == 0 || self.hom_dim(k, l) == 0 {
                continue;
            }
            let unit = |len: usize, at: usize| {
                let mut e = vec![0u8; len];
                e[at] = 1;
                e
            };
            let a = unit(self.hom_dim(i, j), rng.gen_range(0..self.hom_dim(i, j)));
            let b = unit(self.hom_dim(j, k), rng.gen_range(0..self.hom_dim(j, k)));
            let c = unit(self.hom_dim(k, l), rng.gen_range(0..self.hom_dim(k, l)));
            let left = self.compose(i, k, l, &self.compose(i, j, k, &a, &b), &c);
            let right = self.compose(i, j, l, &a, &self.compose(j, k, l, &b, &c));
            if left != right {
                return Err(Error::Verification(format!("composition is not associative on ({i}, {j}, {k}, {l})")));
            }
        }
        Ok(())
    }

    /// The representable projective `P_X = Hom(X, -)`.
    pub fn projective(&self, x: usize) -> AlgModule {
        let n = self.n_objects();
        let dims = (0..n).map(|y| self.hom_dim(x, y)).collect();
        let mut action = Vec::with_capacity(n * n);
        for j in 0..n {
            for k in 0..n {
                action.push(
                    (0..self.hom_dim(j, k))
                        .map(|b| {
                            let mut e = vec![0u8; self.hom_dim(j, k)];
                            e[b] = 1;
                            self.postcompose_matrix(x, j, k, &e)
                        })
                        .collect(),
                );
            }
        }
        AlgModule { dims, action }
    }

    /// The simple module at X, `P_X / rad P_X`.
    pub fn simple(&self, x: usize) -> AlgModule {
        let p = self.projective(x);
        let n = self.n_objects();
        let subs: Vec<FpMatrix> = (0..n).map(|y| self.radical_hom(x, y).row_space()).collect();
        p.quotient(&subs).expect("the radical is a submodule")
    }

    /// Projective dimension of the simple at X; errors past `cap` steps.
    pub fn projective_dimension(&self, x: usize, choice: GeneratorChoice, cap: usize) -> Result<usize> {
        let n = self.n_objects();
        let mut rng = match choice {
            GeneratorChoice::Canonical => None,
            GeneratorChoice::Randomized(seed) => Some(ChaCha8Rng::seed_from_u64(seed ^ (x as u64) << 32)),
        };
        let mut k = SubProjective { components: vec![x], spaces: (0..n).map(|y| self.radical_hom(x, y).row_space()).collect() };
        if k.is_zero() {
            return Ok(0);
        }
        for s in 1..=cap {
            let next = self.syzygy(&k, rng.as_mut())?;
            if next.is_zero() {
                return Ok(s);
            }
            k = next;
        }
        Err(Error::ResolutionCap(cap))
    }

    /// Global dimension as the maximum projective dimension of the simples,
    /// computed in parallel over the simples.
    pub fn global_dimension(&self, cap: usize) -> Result<usize> {
        Ok(self.projective_dimensions(GeneratorChoice::Canonical, cap)?.into_iter().max().unwrap_or(0))
    }

    pub fn projective_dimensions(&self, choice: GeneratorChoice, cap: usize) -> Result<Vec<usize>> {
        let pds: Vec<Result<usize>> = (0..self.n_objects()).into_par_iter().map(|x| self.projective_dimension(x, choice, cap)).collect();
        pds.into_iter().collect()
    }

    fn component_offsets(&self, components: &[usize], z: usize) -> Vec<usize> {
        let mut off = Vec::with_capacity(components.len() + 1);
        let mut acc = 0;
        off.push(0);
        for &y in components {
            acc += self.hom_dim(y, z);
            off.push(acc);
        }
        off
    }

    /// Matrix of the morphism `b: Z -> W` on `Q(Z) -> Q(W)` for `Q = ⊕ P_{Y_k}`.
    fn action_on_sum(&self, components: &[usize], z: usize, w: usize, b: &[u8]) -> FpMatrix {
        let blocks: Vec<FpMatrix> = components.iter().map(|&y| self.postcompose_matrix(y, z, w, b)).collect();
        let offz = self.component_offsets(components, z);
        let offw = self.component_offsets(components, w);
        let mut m = FpMatrix::zeros(self.p, *offw.last().unwrap(), *offz.last().unwrap());
        for (k, blk) in blocks.iter().enumerate() {
            m.set_block(offw[k], offz[k], blk);
        }
        m
    }

    /// `rad K`, as subspaces of `Q(W)` for every W.
    fn radical_of(&self, k: &SubProjective) -> Vec<FpMatrix> {
        let n = self.n_objects();
        (0..n)
            .map(|w| {
                let dim_w = *self.component_offsets(&k.components, w).last().unwrap();
                let mut acc = FpMatrix::zeros(self.p, 0, dim_w);
                for z in 0..n {
                    if k.spaces[z].rows() == 0 {
                        continue;
                    }
                    let rad = self.radical_hom(z, w);
                    for r in 0..rad.rows() {
                        let m = self.action_on_sum(&k.components, z, w, rad.row(r));
                        acc = acc.vstack(&k.spaces[z].mul(&m.transpose()));
                    }
                    acc = acc.row_space();
                }
                acc
            })
            .collect()
    }

    /// Generators of K modulo its radical, one per summand of the top.
    #[allow(clippy::needless_range_loop)]
    fn choose_generators<R: Rng>(&self, k: &SubProjective, mut rng: Option<&mut R>) -> Vec<(usize, Vec<u8>)> {
        let rad = self.radical_of(k);
        let mut gens = Vec::new();
        for w in 0..self.n_objects() {
            let full = &k.spaces[w];
            let mut span = rad[w].clone();
            if span.rows() == full.rows() {
                continue;
            }
            let end: Vec<FpMatrix> = (0..self.hom_dim(w, w))
                .map(|e| {
                    let mut v = vec![0u8; self.hom_dim(w, w)];
                    v[e] = 1;
                    self.action_on_sum(&k.components, w, w, &v)
                })
                .collect();
            let mut order: Vec<usize> = (0..full.rows()).collect();
            if let Some(r) = rng.as_deref_mut() {
                order.shuffle(r);
            }
            let mut pos = 0;
            while span.rows() < full.rows() {
                let g: Vec<u8> = match rng.as_deref_mut() {
                    Some(r) => {
                        let coeffs: Vec<u8> = (0..full.rows()).map(|_| r.gen_range(0..self.p.get())).collect();
                        full.vec_mul(&coeffs)
                    }
                    None => {
                        let g = full.row(order[pos]).to_vec();
                        pos += 1;
                        g
                    }
                };
                let q = Quotient::new(&span);
                if q.contains(&g) {
                    continue;
                }
                let orbit: Vec<Vec<u8>> = end.iter().map(|e| e.mul_vec(&g)).collect();
                span = span.vstack(&FpMatrix::from_row_vectors(self.p, full.cols(), &orbit)).row_space();
                gens.push((w, g));
            }
        }
        gens
    }

    /// Kernel of a projective cover of K.
    fn syzygy<R: Rng>(&self, k: &SubProjective, rng: Option<&mut R>) -> Result<SubProjective> {
        let gens = self.choose_generators(k, rng);
        let components: Vec<usize> = gens.iter().map(|(w, _)| *w).collect();
        let n = self.n_objects();
        let spaces: Vec<Result<FpMatrix>> = (0..n)
            .into_par_iter()
            .map(|z| {
                let target = *self.component_offsets(&k.components, z).last().unwrap();
                let mut images: Vec<Vec<u8>> = Vec::new();
                for (w, g) in &gens {
                    for a in 0..self.hom_dim(*w, z) {
                        let mut e = vec![0u8; self.hom_dim(*w, z)];
                        e[a] = 1;
                        images.push(self.action_on_sum(&k.components, *w, z, &e).mul_vec(g));
                    }
                }
                let map = FpMatrix::from_column_vectors(self.p, target, &images);
                if map.rank() != k.spaces[z].rows() {
                    return Err(Error::Verification("projective cover is not onto".into()));
                }
                Ok(map.kernel_basis())
            })
            .collect();
        Ok(SubProjective { components, spaces: spaces.into_iter().collect::<Result<Vec<_>>>()? })
    }
}

/// How generators of a syzygy's top are chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorChoice {
    /// Basis rows in order.
    Canonical,
    /// Random combinations from a seeded generator.
    Randomized(u64),
}

/// A submodule of `⊕_k P_{Y_k}`, given by its subspace at every object.
#[derive(Clone, Debug)]
struct SubProjective {
    components: Vec<usize>,
    spaces: Vec<FpMatrix>,
}

impl SubProjective {
    fn is_zero(&self) -> bool {
        self.spaces.iter().all(|s| s.rows() == 0)
    }
}

/// A module given by its spaces at each object and the matrices of all basis
/// morphisms.
#[derive(Clone, Debug)]
pub struct AlgModule {
    dims: Vec<usize>,
    /// `action[j * n + k][b]`: matrix of basis morphism b of `Hom(j, k)`.
    action: Vec<Vec<FpMatrix>>,
}

impl AlgModule {
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn action(&self, j: usize, k: usize, b: usize) -> &FpMatrix {
        &self.action[j * self.dims.len() + k][b]
    }

    /// Quotient by the submodule with the given subspace (rows) at each object.
    pub fn quotient(&self, sub: &[FpMatrix]) -> Result<AlgModule> {
        let n = self.dims.len();
        let qs: Vec<Quotient> = sub.iter().map(Quotient::new).collect();
        let mut action = Vec::with_capacity(n * n);
        for j in 0..n {
            for k in 0..n {
                let proj = qs[k].projection_matrix();
                let lift = qs[j].lift_matrix();
                let mut mats = Vec::new();
                for m in &self.action[j * n + k] {
                    for r in 0..sub[j].rows() {
                        if !qs[k].contains(&m.mul_vec(sub[j].row(r))) {
                            return Err(Error::NotInvariant);
                        }
                    }
                    mats.push(proj.mul(m).mul(&lift));
                }
                action.push(mats);
            }
        }
        Ok(AlgModule { dims: qs.iter().map(Quotient::dim).collect(), action })
    }

    /// Checks the functor axioms on basis morphisms: identities act as the
    /// identity and `N(b ∘ a) = N(b) N(a)`.
    pub fn verify(&self, alg: &BasicAlgebra) -> Result<()> {
        let n = alg.n_objects();
        let p = alg.prime();
        let combo = |j: usize, k: usize, coords: &[u8]| {
            let mut m = FpMatrix::zeros(p, self.dims[k], self.dims[j]);
            for (b, &c) in coords.iter().enumerate() {
                if c != 0 {
                    m.add_scaled_assign(c, self.action(j, k, b));
                }
            }
            m
        };
        for i in 0..n {
            let id = alg
                .hom_coordinates(i, i, &FpMatrix::identity(p, alg.object_dim(i)))
                .ok_or_else(|| Error::Verification("identity missing".into()))?;
            if !combo(i, i, &id).is_identity() {
                return Err(Error::Verification(format!("identity of object {i} does not act trivially")));
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for a in 0..alg.hom_dim(i, j) {
                        for b in 0..alg.hom_dim(j, k) {
                            let lhs = combo(i, k, alg.compose_basis(i, j, k, a, b));
                            let rhs = self.action(j, k, b).mul(self.action(i, j, a));
                            if lhs != rhs {
                                return Err(Error::Verification(format!("functoriality fails on ({i}, {j}, {k})")));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Dimensions of `rad N` at every object.
    pub fn radical_dims(&self, alg: &BasicAlgebra) -> Vec<usize> {
        let n = self.dims.len();
        let p = alg.prime();
        (0..n)
            .map(|w| {
                let mut cols: Vec<Vec<u8>> = Vec::new();
                for z in 0..n {
                    let rad = alg.radical_hom(z, w);
                    for r in 0..rad.rows() {
                        let mut m = FpMatrix::zeros(p, self.dims[w], self.dims[z]);
                        for (b, &c) in rad.row(r).iter().enumerate() {
                            if c != 0 {
                                m.add_scaled_assign(c, self.action(z, w, b));
                            }
                        }
                        let t = m.transpose();
                        cols.extend((0..t.rows()).map(|i| t.row(i).to_vec()));
                    }
                }
                FpMatrix::from_row_vectors(p, self.dims[w], &cols).rank()
            })
            .collect()
    }

    /// Composition multiplicities `[N : S_Y] = dim N(Y) / dim S_Y(Y)`.
    pub fn composition_multiplicities(&self, alg: &BasicAlgebra) -> Vec<usize> {
        self.dims.iter().enumerate().map(|(y, &d)| d / alg.residue_dim(y)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The path algebra of `1 -> 2` realized by matrices: objects of size 1
    /// with one nonzero arrow.
    fn a2() -> BasicAlgebra {
        let p = Prime::new(3).unwrap();
        let one = FpMatrix::identity(p, 1);
        let hom = vec![vec![vec![one.clone()], vec![one.clone()]], vec![vec![], vec![one]]];
        BasicAlgebra::new(p, vec!["1".into(), "2".into()], vec![1, 1], hom).unwrap()
    }

    /// `k[x]/(x^2)` as a one-object algebra.
    fn dual_numbers() -> BasicAlgebra {
        let p = Prime::new(2).unwrap();
        let x = FpMatrix::from_rows(p, &[vec![0, 0], vec![1, 0]]).unwrap();
        BasicAlgebra::new(p, vec!["k[x]/x^2".into()], vec![2], vec![vec![vec![FpMatrix::identity(p, 2), x]]]).unwrap()
    }

    #[test]
    fn dimensions_and_projectives() {
        let a = a2();
        assert_eq!(a.dim(), 3);
        a.spot_check(50, 1).unwrap();
        let p1 = a.projective(0);
        assert_eq!(p1.dims(), &[1, 1]);
        p1.verify(&a).unwrap();
        assert_eq!(a.projective(1).dims(), &[0, 1]);
        let s1 = a.simple(0);
        assert_eq!(s1.dims(), &[1, 0]);
        s1.verify(&a).unwrap();
        assert_eq!(p1.radical_dims(&a), vec![0, 1]);
    }

    #[test]
    fn hereditary_and_selfinjective_examples() {
        let a = a2();
        assert_eq!(a.projective_dimension(0, GeneratorChoice::Canonical, 10).unwrap(), 1);
        assert_eq!(a.projective_dimension(1, GeneratorChoice::Canonical, 10).unwrap(), 0);
        assert_eq!(a.global_dimension(10).unwrap(), 1);
        // k[x]/(x^2) has infinite global dimension
        let d = dual_numbers();
        assert!(matches!(d.global_dimension(6), Err(Error::ResolutionCap(6))));
    }

    #[test]
    fn randomized_choice_agrees() {
        let a = a2();
        for seed in 0..5 {
            assert_eq!(a.projective_dimensions(GeneratorChoice::Randomized(seed), 10).unwrap(), vec![1, 0]);
        }
    }

    #[test]
    fn unknown_labels_are_errors() {
        assert!(matches!(a2().index_of("3"), Err(Error::UnknownLabel(_))));
    }
}
