//! From kP to kG: Sylow embeddings of P = (C_p)^r in permutation groups,
//! induction and restriction, the Mackey decomposition, the add-closure
//! condition for `(M↑G)↓P`, and the global dimension of `End_kG(M↑G)`.
//!
//! Induced modules `X↑G = ⊕_c t_c ⊗ X` use left cosets `t_c P` with the
//! earliest-enumerated element of each coset as representative (the identity
//! for P itself). An element g acts by `t_c ⊗ m ↦ t_{c'} ⊗ u m` where
//! `g t_c = t_{c'} u` with `u ∈ P`.

use std::collections::HashMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::basic::BasicAlgebra;
use crate::decompose::{are_isomorphic, decompose_pieces, split_representation, Piece};
use crate::error::{Error, Result};
use crate::field::Prime;
use crate::genset::{build_np, layer_partition, BuildOptions, ClosureReport, ModuleSet};
use crate::matrix::FpMatrix;
use crate::module::PModule;
use crate::par::{IntoParallelIterator, ParallelIterator};
use crate::perm::{Perm, PermGroup};
use crate::pgroup::{AutTwist, ElemAbelianGroup, SubgroupInclusion};
use crate::qh::bound_report;

/// Largest group whose group algebra radical we compute.
pub const MAX_LOEWY_GROUP_ORDER: usize = 720;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SylowReport {
    pub valid: bool,
    pub subgroup_order: u64,
    pub p_part: u64,
    pub diagnostics: Vec<String>,
}

fn exponent_vectors(p: Prime, r: usize) -> Vec<Vec<u8>> {
    let q = p.get() as u64;
    (0..q.pow(r as u32))
        .map(|mut idx| {
            (0..r)
                .map(|_| {
                    let d = (idx % q) as u8;
                    idx /= q;
                    d
                })
                .collect()
        })
        .collect()
}

fn product_of_powers(images: &[Perm], v: &[u8], degree: usize) -> Perm {
    let mut g = Perm::identity(degree);
    for (h, &e) in images.iter().zip(v) {
        g = h.pow(e as u64).compose(&g);
    }
    g
}

/// Checks that the images commute, have order p, and generate an elementary
/// abelian subgroup whose order is the full p-part of `|G|`.
pub fn verify_sylow(group: &PermGroup, p: Prime, images: &[Perm]) -> SylowReport {
    let mut diagnostics = Vec::new();
    let q = p.get() as u64;
    let mut p_part = 1u64;
    let mut rest = group.order() as u64;
    while rest.is_multiple_of(q) {
        rest /= q;
        p_part *= q;
    }
    for (i, h) in images.iter().enumerate() {
        if h.degree() != group.degree() || !group.contains(h) {
            diagnostics.push(format!("image {} = {h} is not in the group", i + 1));
        } else if h.order() != q {
            diagnostics.push(format!("image {} = {h} has order {}, not {q}", i + 1, h.order()));
        }
    }
    for i in 0..images.len() {
        for j in i + 1..images.len() {
            if images[i].degree() == images[j].degree() && images[i].compose(&images[j]) != images[j].compose(&images[i]) {
                diagnostics.push(format!("images {} and {} do not commute", i + 1, j + 1));
            }
        }
    }
    let mut subgroup_order = 0;
    if diagnostics.is_empty() {
        let elems: std::collections::HashSet<Perm> =
            exponent_vectors(p, images.len()).iter().map(|v| product_of_powers(images, v, group.degree())).collect();
        subgroup_order = elems.len() as u64;
        if subgroup_order != q.pow(images.len() as u32) {
            diagnostics.push(format!("images are dependent: they generate a subgroup of order {subgroup_order}"));
        }
        if subgroup_order != p_part {
            diagnostics.push(format!("subgroup order {subgroup_order} differs from the p-part {p_part} of |G|"));
        }
    }
    SylowReport { valid: diagnostics.is_empty(), subgroup_order, p_part, diagnostics }
}

/// A verified embedding of `(C_p)^r` as a Sylow subgroup of G, with the coset data.
#[derive(Clone, Debug)]
pub struct SylowEmbedding {
    group: PermGroup,
    p: Prime,
    images: Vec<Perm>,
    /// Group index of the element with each exponent vector (indexed as in `exponent_vectors`).
    p_elements: Vec<usize>,
    dlog: HashMap<usize, Vec<u8>>,
    transversal: Vec<usize>,
    coset_of: Vec<usize>,
}

impl SylowEmbedding {
    pub fn new(group: PermGroup, p: Prime, images: Vec<Perm>) -> Result<Self> {
        let report = verify_sylow(&group, p, &images);
        if !report.valid {
            return Err(Error::InvalidSylow(report.diagnostics.join("; ")));
        }
        let vecs = exponent_vectors(p, images.len());
        let mut p_elements = Vec::with_capacity(vecs.len());
        let mut dlog = HashMap::new();
        for v in vecs {
            let idx = group.index_of(&product_of_powers(&images, &v, group.degree())).expect("checked membership");
            p_elements.push(idx);
            dlog.insert(idx, v);
        }
        let mut coset_of = vec![usize::MAX; group.order()];
        let mut transversal = Vec::new();
        for g in 0..group.order() {
            if coset_of[g] != usize::MAX {
                continue;
            }
            let c = transversal.len();
            transversal.push(g);
            for &u in &p_elements {
                let gu = group.mul(g, u);
                if coset_of[gu] != usize::MAX {
                    return Err(Error::Verification("left cosets overlap".into()));
                }
                coset_of[gu] = c;
            }
        }
        // kG is free over kP: every coset has |P| elements
        if transversal.len() * p_elements.len() != group.order() {
            return Err(Error::Verification("cosets do not partition the group".into()));
        }
        Ok(SylowEmbedding { group, p, images, p_elements, dlog, transversal, coset_of })
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn images(&self) -> &[Perm] {
        &self.images
    }

    pub fn sylow(&self) -> ElemAbelianGroup {
        ElemAbelianGroup::new(self.p, self.images.len())
    }

    pub fn index(&self) -> usize {
        self.transversal.len()
    }

    pub fn transversal(&self) -> &[usize] {
        &self.transversal
    }

    /// Exponent vector of a group element lying in P.
    pub fn dlog(&self, g: usize) -> Option<&[u8]> {
        self.dlog.get(&g).map(Vec::as_slice)
    }

    /// `g t_c = t_{c'} u`: returns `(c', u)` with u as an exponent vector.
    pub fn coset_action(&self, g: usize, c: usize) -> (usize, &[u8]) {
        let h = self.group.mul(g, self.transversal[c]);
        let c2 = self.coset_of[h];
        let u = self.group.mul(self.group.inv(self.transversal[c2]), h);
        (c2, self.dlog(u).expect("coset return lies in P"))
    }

    fn check_module(&self, m: &PModule) -> Result<()> {
        if m.group() != self.sylow() {
            return Err(Error::GroupMismatch(format!("module over {:?}, Sylow subgroup is {:?}", m.group(), self.sylow())));
        }
        Ok(())
    }

    /// Matrix of the group element `g` on `m↑G`.
    pub fn induced_element_action(&self, m: &PModule, g: usize) -> FpMatrix {
        let d = m.dim();
        let n = self.index();
        let mut out = FpMatrix::zeros(self.p, n * d, n * d);
        for c in 0..n {
            let (c2, u) = self.coset_action(g, c);
            out.set_block(c2 * d, c * d, &m.element_action(u));
        }
        out
    }

    /// `m↑G` with one matrix per generator of G.
    pub fn induce_to_g(&self, m: &PModule) -> Result<GRep> {
        self.check_module(m)?;
        let gens = (0..self.group.generators().len())
            .map(|j| {
                let idx = self.group.index_of(&self.group.generators()[j]).expect("generators are elements");
                self.induced_element_action(m, idx)
            })
            .collect();
        Ok(GRep { p: self.p, dim: m.dim() * self.index(), generators: gens })
    }

    /// `(m↑G)↓P`, computed directly from the coset formula.
    pub fn induce_restrict(&self, m: &PModule) -> Result<PModule> {
        self.check_module(m)?;
        let id = FpMatrix::identity(self.p, m.dim() * self.index());
        let actions: Vec<FpMatrix> = (0..self.images.len())
            .map(|i| {
                let mut e = vec![0u8; self.images.len()];
                e[i] = 1;
                let g = self.p_elements[vec_index(self.p, &e)];
                self.induced_element_action(m, g).sub(&id)
            })
            .collect();
        PModule::new(self.sylow(), id.rows(), actions)
    }

    /// Restriction of any kG-module to P.
    pub fn restrict_to_p(&self, n: &GRep) -> Result<PModule> {
        let id = FpMatrix::identity(self.p, n.dim);
        let actions = self
            .images
            .iter()
            .map(|h| Ok(n.element_action(&self.group, self.group.index_of(h).expect("checked"))?.sub(&id)))
            .collect::<Result<Vec<_>>>()?;
        PModule::new(self.sylow(), n.dim, actions)
    }

    /// Representatives of `P\G/P` (earliest enumerated element of each) with sizes.
    pub fn double_cosets(&self) -> Vec<DoubleCoset> {
        let mut covered = vec![false; self.group.order()];
        let mut out = Vec::new();
        for g in 0..self.group.order() {
            if covered[g] {
                continue;
            }
            let mut size = 0;
            for &u in &self.p_elements {
                let ug = self.group.mul(u, g);
                for &v in &self.p_elements {
                    let x = self.group.mul(ug, v);
                    if !covered[x] {
                        covered[x] = true;
                        size += 1;
                    }
                }
            }
            out.push(DoubleCoset { representative: g, size });
        }
        out
    }

    /// `Q = P ∩ sPs^{-1}` with, for each basis vector q_j of Q, the exponent
    /// vector of `s^{-1} q_j s`.
    pub fn intersection(&self, s: usize) -> Result<(SubgroupInclusion, Vec<Vec<u8>>)> {
        let s_inv = self.group.inv(s);
        let mut vecs = Vec::new();
        for (k, &u) in self.p_elements.iter().enumerate() {
            let conj = self.group.mul(self.group.mul(s_inv, u), s);
            if self.dlog.contains_key(&conj) {
                vecs.push(exponent_vectors(self.p, self.images.len())[k].clone());
            }
        }
        let r = self.images.len();
        let basis = FpMatrix::from_row_vectors(self.p, r, &vecs).row_space();
        let gens: Vec<Vec<u8>> = (0..basis.rows()).map(|i| basis.row(i).to_vec()).collect();
        let conj: Vec<Vec<u8>> = gens
            .iter()
            .map(|v| {
                let u = self.p_elements[vec_index(self.p, v)];
                let c = self.group.mul(self.group.mul(s_inv, u), s);
                self.dlog(c).expect("in P by construction").to_vec()
            })
            .collect();
        Ok((SubgroupInclusion::new(self.sylow(), gens)?, conj))
    }

    /// The Mackey summand for `s`: the conjugate of m restricted to `P ∩ sPs^{-1}`
    /// and induced back to P. The conjugation is an automorphism twist of P
    /// extending `q ↦ s^{-1} q s`.
    pub fn mackey_summand(&self, m: &PModule, s: usize) -> Result<PModule> {
        let (q, conj) = self.intersection(s)?;
        let p = self.p;
        let r = self.images.len();
        let mut src = q.generators().to_vec();
        src.extend(q.default_extension());
        let image_sub = SubgroupInclusion::new(self.sylow(), conj.clone())?;
        let mut dst = conj;
        dst.extend(image_sub.default_extension());
        let src_m = FpMatrix::from_column_vectors(p, r, &src);
        let dst_m = FpMatrix::from_column_vectors(p, r, &dst);
        let a = AutTwist::new(dst_m.mul(&src_m.inverse()?))?;
        m.twist(&a)?.restrict(&q)?.induce_general(&q)
    }

    /// Both sides of the Mackey formula for m, compared up to isomorphism.
    pub fn mackey_check(&self, m: &PModule) -> Result<MackeyReport> {
        let left = self.induce_restrict(m)?;
        let cosets = self.double_cosets();
        let sizes_sum_to_order = cosets.iter().map(|c| c.size).sum::<usize>() == self.group.order();
        let parts: Vec<PModule> = cosets.iter().map(|c| self.mackey_summand(m, c.representative)).collect::<Result<Vec<_>>>()?;
        let refs: Vec<&PModule> = parts.iter().collect();
        let right = PModule::direct_sum(self.sylow(), &refs)?;
        let isomorphic = left.dim() == right.dim() && are_isomorphic(&left, &right)?;
        Ok(MackeyReport { double_cosets: cosets.len(), sizes_sum_to_order, left_dim: left.dim(), right_dim: right.dim(), isomorphic })
    }

    /// Every indecomposable summand of `(X↑G)↓P` is isomorphic to a member, for each member X.
    pub fn condition_b_check(&self, set: &ModuleSet, seed: u64) -> Result<ClosureReport> {
        let results: Vec<Result<Vec<String>>> = set
            .members()
            .to_vec()
            .into_par_iter()
            .map(|m| {
                let down = self.induce_restrict(&m.module)?;
                let mut failures = Vec::new();
                for (z, _) in decompose_pieces(&down, seed)? {
                    if set.find(&z)?.is_none() {
                        failures.push(format!("{}: induced and restricted has a summand of dim {} outside the set", m.label, z.dim()));
                    }
                }
                Ok(failures)
            })
            .collect();
        let mut report = ClosureReport::default();
        for r in results {
            report.checks += 1;
            report.failures.extend(r?);
        }
        Ok(report)
    }

    /// Basis of `Hom_kG(X↑G, Y↑G)` by Frobenius reciprocity: each
    /// `φ ∈ Hom_kP(X, (Y↑G)↓P)` extends to `t_c ⊗ m ↦ t_c φ(m)`.
    pub fn hom_induced(&self, x: &PModule, y: &PModule) -> Result<Vec<FpMatrix>> {
        let down = self.induce_restrict(y)?;
        let phis = x.hom_basis(&down)?;
        let reps: Vec<FpMatrix> = self.transversal.iter().map(|&t| self.induced_element_action(y, t)).collect();
        Ok(phis
            .iter()
            .map(|phi| {
                let blocks: Vec<FpMatrix> = reps.iter().map(|r| r.mul(phi)).collect();
                blocks.iter().skip(1).fold(blocks[0].clone(), |acc, b| acc.hstack(b))
            })
            .collect())
    }
}

fn vec_index(p: Prime, v: &[u8]) -> usize {
    let q = p.get() as usize;
    v.iter().rev().fold(0, |acc, &d| acc * q + d as usize)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoubleCoset {
    pub representative: usize,
    pub size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MackeyReport {
    pub double_cosets: usize,
    pub sizes_sum_to_order: bool,
    pub left_dim: usize,
    pub right_dim: usize,
    pub isomorphic: bool,
}

impl MackeyReport {
    pub fn passed(&self) -> bool {
        self.sizes_sum_to_order && self.left_dim == self.right_dim && self.isomorphic
    }
}

/// A representation of a permutation group by the matrices of its generators.
#[derive(Clone, Debug)]
pub struct GRep {
    pub p: Prime,
    pub dim: usize,
    pub generators: Vec<FpMatrix>,
}

impl GRep {
    /// Matrix of `group.element(i)`, along its enumeration word.
    pub fn element_action(&self, group: &PermGroup, i: usize) -> Result<FpMatrix> {
        if self.generators.len() != group.generators().len() {
            return Err(Error::GroupMismatch("representation and group have different generator counts".into()));
        }
        let mut m = FpMatrix::identity(self.p, self.dim);
        for j in group.word(i) {
            m = self.generators[j].mul(&m);
        }
        Ok(m)
    }

    /// Checks that the generator matrices define a homomorphism: computing
    /// every element along its word, `ρ(g_j) ρ(a) = ρ(g_j a)` for all a and j.
    pub fn verify(&self, group: &PermGroup) -> Result<()> {
        let mut mats: Vec<FpMatrix> = Vec::with_capacity(group.order());
        mats.push(FpMatrix::identity(self.p, self.dim));
        for i in 1..group.order() {
            let (pred, g) = group.parent(i).expect("non-identity elements have parents");
            mats.push(self.generators[g].mul(&mats[pred]));
        }
        for (a, ma) in mats.iter().enumerate() {
            for (j, gj) in group.generators().iter().enumerate() {
                let b = group.index_of(&gj.compose(group.element(a))).expect("closed");
                if self.generators[j].mul(ma) != mats[b] {
                    return Err(Error::Verification(format!("relation fails at element {}", group.element(a))));
                }
            }
        }
        Ok(())
    }
}

/// The basic algebra of `End_kG(M↑G)`: one object per isomorphism class of
/// indecomposable kG-summand of `M↑G`.
#[derive(Clone, Debug)]
pub struct KgEndoAlgebra {
    pub algebra: BasicAlgebra,
    pub multiplicities: Vec<usize>,
    pub residue_dims: Vec<usize>,
    pub summand_dims: Vec<usize>,
}

struct KgPiece {
    source: usize,
    piece: Piece,
}

pub fn kg_endo_algebra(e: &SylowEmbedding, set: &ModuleSet, seed: u64) -> Result<KgEndoAlgebra> {
    let members = set.members();
    let n = members.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
    let homs: Vec<Result<Vec<FpMatrix>>> =
        pairs.into_par_iter().map(|(a, b)| e.hom_induced(&members[a].module, &members[b].module)).collect();
    let homs: Vec<Vec<FpMatrix>> = homs.into_iter().collect::<Result<_>>()?;
    let hom = |a: usize, b: usize| &homs[a * n + b];

    let mut pieces: Vec<KgPiece> = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for (a, m) in members.iter().enumerate() {
        let rep = e.induce_to_g(&m.module)?;
        for piece in split_representation(e.p, rep.dim, &rep.generators, Some(hom(a, a).clone()), &mut rng)? {
            pieces.push(KgPiece { source: a, piece });
        }
    }

    let piece_hom = |i: &KgPiece, j: &KgPiece| -> Vec<FpMatrix> {
        let (di, dj) = (i.piece.dim(), j.piece.dim());
        let flat: Vec<Vec<u8>> =
            hom(i.source, j.source).iter().map(|phi| j.piece.projection.mul(phi).mul(&i.piece.inclusion).flatten()).collect();
        let span = FpMatrix::from_row_vectors(e.p, di * dj, &flat).row_space();
        (0..span.rows()).map(|r| FpMatrix::unflatten(e.p, dj, di, span.row(r))).collect()
    };

    let mut unique: Vec<usize> = Vec::new();
    let mut multiplicities: Vec<usize> = Vec::new();
    for i in 0..pieces.len() {
        let mut found = None;
        for (u, &k) in unique.iter().enumerate() {
            if pieces[k].piece.dim() != pieces[i].piece.dim() {
                continue;
            }
            let there = piece_hom(&pieces[k], &pieces[i]);
            let back = piece_hom(&pieces[i], &pieces[k]);
            if there.iter().any(|f| back.iter().any(|g| g.mul(f).is_invertible())) {
                found = Some(u);
                break;
            }
        }
        match found {
            Some(u) => multiplicities[u] += 1,
            None => {
                unique.push(i);
                multiplicities.push(1);
            }
        }
    }

    let m = unique.len();
    let mut hom_table: Vec<Vec<Vec<FpMatrix>>> = vec![Vec::with_capacity(m); m];
    for (a, &i) in unique.iter().enumerate() {
        for &j in &unique {
            hom_table[a].push(piece_hom(&pieces[i], &pieces[j]));
        }
    }
    let labels = (0..m).map(|i| format!("U{i}")).collect();
    let summand_dims: Vec<usize> = unique.iter().map(|&i| pieces[i].piece.dim()).collect();
    let algebra = BasicAlgebra::new(e.p, labels, summand_dims.clone(), hom_table)?;
    let residue_dims = (0..m).map(|i| algebra.residue_dim(i)).collect();
    Ok(KgEndoAlgebra { algebra, multiplicities, residue_dims, summand_dims })
}

/// Loewy length of the group algebra kG, from its Jacobson radical computed
/// by the trace-form iteration on integer lifts in the regular representation.
pub fn group_algebra_loewy_length(group: &PermGroup, p: Prime) -> Result<usize> {
    let n = group.order();
    if n > MAX_LOEWY_GROUP_ORDER {
        return Err(Error::Guardrail(format!("|G| = {n} exceeds {MAX_LOEWY_GROUP_ORDER} for the group algebra radical")));
    }
    let table: Vec<usize> = (0..n * n).map(|ab| group.mul(ab / n, ab % n)).collect();
    let q = p.get() as u64;
    let mul_mod = |x: &[u64], y: &[u64], modulus: u64| -> Vec<u64> {
        let mut out = vec![0u64; n];
        for (a, &xa) in x.iter().enumerate() {
            if xa == 0 {
                continue;
            }
            for (b, &yb) in y.iter().enumerate() {
                if yb != 0 {
                    let c = table[a * n + b];
                    out[c] = (out[c] + xa * yb) % modulus;
                }
            }
        }
        out
    };
    let mut steps = 0;
    let mut pw = q;
    while pw <= n as u64 {
        steps += 1;
        pw *= q;
    }
    let mut ideal = FpMatrix::identity(p, n);
    for i in 0..=steps {
        if ideal.rows() == 0 {
            break;
        }
        let modulus = q.pow(i as u32 + 1);
        let scale = q.pow(i as u32);
        let k = ideal.rows();
        let rows: Vec<Result<Vec<u8>>> = (0..k)
            .into_par_iter()
            .map(|r| {
                let x: Vec<u64> = ideal.row(r).iter().map(|&v| v as u64).collect();
                (0..n)
                    .map(|c| {
                        // x * g_c reduced mod p, lifted, raised to p^i mod p^(i+1)
                        let mut z = vec![0u64; n];
                        for (a, &xa) in x.iter().enumerate() {
                            z[table[a * n + c]] = xa;
                        }
                        for _ in 0..i {
                            let mut acc = z.clone();
                            for _ in 1..q {
                                acc = mul_mod(&acc, &z, modulus);
                            }
                            z = acc;
                        }
                        let t = (n as u64 % modulus) * z[0] % modulus;
                        if !t.is_multiple_of(scale) {
                            return Err(Error::Verification("trace not divisible on the ideal".into()));
                        }
                        Ok(((t / scale) % q) as u8)
                    })
                    .collect()
            })
            .collect();
        let rows: Vec<Vec<u8>> = rows.into_iter().collect::<Result<_>>()?;
        let gram = FpMatrix::from_row_vectors(p, n, &rows);
        ideal = gram.transpose().kernel_basis().mul(&ideal).row_space();
    }
    // powers of the radical
    let rad = ideal;
    if rad.rows() == 0 {
        return Ok(1);
    }
    let mut power = rad.clone();
    let mut length = 1;
    while power.rows() > 0 {
        let prods: Vec<Vec<Vec<u8>>> = (0..power.rows())
            .into_par_iter()
            .map(|a| {
                let x: Vec<u64> = power.row(a).iter().map(|&v| v as u64).collect();
                (0..rad.rows())
                    .map(|b| {
                        let y: Vec<u64> = rad.row(b).iter().map(|&v| v as u64).collect();
                        mul_mod(&x, &y, q).into_iter().map(|v| v as u8).collect::<Vec<u8>>()
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
        let prods: Vec<Vec<u8>> = prods.into_iter().flatten().collect();
        power = FpMatrix::from_row_vectors(p, n, &prods).row_space();
        length += 1;
    }
    Ok(length)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupBoundReport {
    pub group_order: usize,
    pub p: u8,
    pub rank: usize,
    pub sylow_order: u64,
    pub index: usize,
    pub double_cosets: usize,
    pub mackey_passed: bool,
    pub condition_b_passed: bool,
    pub n_members: usize,
    pub n_layers: usize,
    pub gldim_kp: usize,
    pub kg_summands: usize,
    pub kg_multiplicities: Vec<usize>,
    pub kg_residue_dims: Vec<usize>,
    pub kg_algebra_dim: usize,
    pub gldim_kg: usize,
    pub loewy_length_kg: Option<usize>,
    /// `|P|`, the bound on the representation dimension of kG.
    pub bound: u64,
    pub chain_holds: bool,
}

/// Runs the whole chain `repdim kG <= gldim End_kG(M↑G) <= gldim End_kP(M)
/// <= n_layers <= |P|`, with the Mackey and add-closure checks it relies on.
pub fn repdim_bound_g(e: &SylowEmbedding, opts: &BuildOptions) -> Result<GroupBoundReport> {
    let g = e.sylow();
    let set = build_np(g, opts)?;
    let layers = layer_partition(&set)?;
    let (kp, _) = bound_report(&set, &layers)?;
    let cosets = e.double_cosets();
    let mackey: Vec<Result<MackeyReport>> = set.members().to_vec().into_par_iter().map(|m| e.mackey_check(&m.module)).collect();
    let mut mackey_passed = true;
    for r in mackey {
        mackey_passed &= r?.passed();
    }
    if !mackey_passed {
        return Err(Error::Verification("Mackey decomposition check failed".into()));
    }
    let cond_b = e.condition_b_check(&set, opts.seed)?;
    if !cond_b.passed() {
        return Err(Error::Verification(format!("condition (b) failed: {}", cond_b.failures.join("; "))));
    }
    let kg = kg_endo_algebra(e, &set, opts.seed)?;
    let gldim_kg = kg.algebra.global_dimension(crate::qh::default_cap(kg.algebra.n_objects()).max(2 * kp.n_layers + 4))?;
    let loewy = if e.group().order() <= MAX_LOEWY_GROUP_ORDER { Some(group_algebra_loewy_length(e.group(), e.p)?) } else { None };
    let bound = g.order();
    let chain_holds = gldim_kg <= kp.gldim && kp.gldim <= kp.n_layers && kp.n_layers as u64 <= bound;
    let report = GroupBoundReport {
        group_order: e.group().order(),
        p: e.p.get(),
        rank: g.rank,
        sylow_order: bound,
        index: e.index(),
        double_cosets: cosets.len(),
        mackey_passed,
        condition_b_passed: cond_b.passed(),
        n_members: set.len(),
        n_layers: kp.n_layers,
        gldim_kp: kp.gldim,
        kg_summands: kg.multiplicities.len(),
        kg_multiplicities: kg.multiplicities,
        kg_residue_dims: kg.residue_dims,
        kg_algebra_dim: kg.algebra.dim(),
        gldim_kg,
        loewy_length_kg: loewy,
        bound,
        chain_holds,
    };
    if !chain_holds {
        return Err(Error::Verification(format!(
            "inequality chain fails: {} <= {} <= {} <= {}",
            report.gldim_kg, report.gldim_kp, report.n_layers, bound
        )));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str, n: usize) -> Perm {
        Perm::parse(s, n).unwrap()
    }

    fn group(n: usize, gens: &[&str]) -> PermGroup {
        PermGroup::enumerate(n, gens.iter().map(|g| perm(g, n)).collect(), 1000).unwrap()
    }

    fn s3_p2() -> SylowEmbedding {
        SylowEmbedding::new(group(3, &["(1 2)", "(1 2 3)"]), Prime::new(2).unwrap(), vec![perm("(1 2)", 3)]).unwrap()
    }

    fn a4_p2() -> SylowEmbedding {
        SylowEmbedding::new(
            group(4, &["(1 2 3)", "(1 2)(3 4)"]),
            Prime::new(2).unwrap(),
            vec![perm("(1 2)(3 4)", 4), perm("(1 3)(2 4)", 4)],
        )
        .unwrap()
    }

    #[test]
    fn sylow_verification() {
        let a4 = group(4, &["(1 2 3)", "(1 2)(3 4)"]);
        let two = Prime::new(2).unwrap();
        assert!(verify_sylow(&a4, two, &[perm("(1 2)(3 4)", 4), perm("(1 3)(2 4)", 4)]).valid);
        let r = verify_sylow(&a4, two, &[perm("(1 2)(3 4)", 4)]);
        assert!(!r.valid);
        assert_eq!(r.p_part, 4);
        let s3 = group(3, &["(1 2)", "(1 2 3)"]);
        assert!(verify_sylow(&s3, Prime::new(3).unwrap(), &[perm("(1 2 3)", 3)]).valid);
        assert!(!verify_sylow(&s3, two, &[perm("(1 2 3)", 3)]).valid);
        assert!(!verify_sylow(&a4, two, &[perm("(1 2)(3 4)", 4), perm("(1 2)(3 4)", 4)]).valid);
    }

    #[test]
    fn double_coset_counts() {
        let a4 = a4_p2();
        let dc = a4.double_cosets();
        assert_eq!(dc.len(), 3);
        assert_eq!(dc.iter().map(|d| d.size).sum::<usize>(), 12);
        assert_eq!(s3_p2().double_cosets().len(), 2);
        let v4 = SylowEmbedding::new(
            group(4, &["(1 2)(3 4)", "(1 3)(2 4)"]),
            Prime::new(2).unwrap(),
            vec![perm("(1 2)(3 4)", 4), perm("(1 3)(2 4)", 4)],
        )
        .unwrap();
        assert_eq!(v4.double_cosets().len(), 1);
    }

    #[test]
    fn induction_and_restriction() {
        let e = s3_p2();
        let k = PModule::trivial(e.sylow());
        let up = e.induce_to_g(&k).unwrap();
        assert_eq!(up.dim, 3);
        up.verify(e.group()).unwrap();
        // the permutation module on cosets: each generator is a permutation matrix
        for g in &up.generators {
            assert!(g.is_invertible());
        }
        let down = e.restrict_to_p(&up).unwrap();
        assert_eq!(down, e.induce_restrict(&k).unwrap());
        let a4 = a4_p2();
        let kd = a4.induce_restrict(&PModule::trivial(a4.sylow())).unwrap();
        let d = crate::decompose::decompose(&kd, 1).unwrap();
        assert_eq!(d.summands.len(), 1);
        assert_eq!((d.summands[0].module.dim(), d.summands[0].multiplicity), (1, 3));
    }

    #[test]
    fn reciprocity_homs_are_equivariant() {
        let e = s3_p2();
        let kp = PModule::regular(e.sylow()).unwrap();
        let k = PModule::trivial(e.sylow());
        let up_x = e.induce_to_g(&kp).unwrap();
        let up_y = e.induce_to_g(&k).unwrap();
        let homs = e.hom_induced(&kp, &k).unwrap();
        assert!(!homs.is_empty());
        for h in &homs {
            for (gx, gy) in up_x.generators.iter().zip(&up_y.generators) {
                assert_eq!(h.mul(gx), gy.mul(h));
            }
        }
    }

    #[test]
    fn mackey_small_cases() {
        let e = a4_p2();
        let r = e.mackey_check(&PModule::trivial(e.sylow())).unwrap();
        assert!(r.passed());
        assert_eq!((r.double_cosets, r.left_dim), (3, 3));
        let s = s3_p2();
        assert!(s.mackey_check(&PModule::regular(s.sylow()).unwrap()).unwrap().passed());
    }

    #[test]
    fn loewy_lengths_of_group_algebras() {
        let v4 = group(4, &["(1 2)(3 4)", "(1 3)(2 4)"]);
        assert_eq!(group_algebra_loewy_length(&v4, Prime::new(2).unwrap()).unwrap(), 3);
        let c3 = group(3, &["(1 2 3)"]);
        assert_eq!(group_algebra_loewy_length(&c3, Prime::new(3).unwrap()).unwrap(), 3);
        assert_eq!(group_algebra_loewy_length(&c3, Prime::new(2).unwrap()).unwrap(), 1);
        let s3 = group(3, &["(1 2)", "(1 2 3)"]);
        assert_eq!(group_algebra_loewy_length(&s3, Prime::new(2).unwrap()).unwrap(), 2);
    }

    #[test]
    fn bound_for_s3_at_two() {
        let r = repdim_bound_g(&s3_p2(), &BuildOptions::default()).unwrap();
        assert_eq!(r.bound, 2);
        assert!(r.chain_holds);
        assert!(r.gldim_kg <= 2);
    }
}
