//! Modules over kP for P = (C_p)^r, presented by the matrices of
//! `x_i = g_i - 1` acting on column vectors.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Prime;
use crate::matrix::{FpMatrix, Quotient};
use crate::pgroup::{AutTwist, ElemAbelianGroup, SubgroupInclusion};

/// Largest regular module we are willing to build.
pub const MAX_REGULAR_DIM: u64 = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PModule {
    group: ElemAbelianGroup,
    dim: usize,
    actions: Vec<FpMatrix>,
}

impl PModule {
    /// Validates shapes, commutation and `X_i^p = 0`.
    pub fn new(group: ElemAbelianGroup, dim: usize, actions: Vec<FpMatrix>) -> Result<Self> {
        if actions.len() != group.rank {
            return Err(Error::InvalidModule(format!("{} action matrices for a group of rank {}", actions.len(), group.rank)));
        }
        for a in &actions {
            if a.rows() != dim || a.cols() != dim || a.prime() != group.p {
                return Err(Error::InvalidModule("action matrix has the wrong shape or field".into()));
            }
            if !a.pow(group.p.get() as u64).is_zero() {
                return Err(Error::InvalidModule("an action is not killed by its p-th power".into()));
            }
        }
        for i in 0..actions.len() {
            for j in i + 1..actions.len() {
                if !actions[i].commutes_with(&actions[j]) {
                    return Err(Error::InvalidModule(format!("actions {i} and {j} do not commute")));
                }
            }
        }
        Ok(PModule { group, dim, actions })
    }

    /// Skips validation; callers guarantee the invariants.
    pub(crate) fn from_parts(group: ElemAbelianGroup, dim: usize, actions: Vec<FpMatrix>) -> Self {
        debug_assert_eq!(actions.len(), group.rank);
        debug_assert!(actions.iter().all(|a| a.rows() == dim && a.cols() == dim));
        PModule { group, dim, actions }
    }

    pub fn zero(group: ElemAbelianGroup) -> Self {
        PModule { group, dim: 0, actions: vec![FpMatrix::zeros(group.p, 0, 0); group.rank] }
    }

    /// The trivial module k.
    pub fn trivial(group: ElemAbelianGroup) -> Self {
        PModule { group, dim: 1, actions: vec![FpMatrix::zeros(group.p, 1, 1); group.rank] }
    }

    /// The regular module kP on the monomial basis `x^a`, `a in [0, p)^r`,
    /// indexed by `sum_i a_i p^i`.
    pub fn regular(group: ElemAbelianGroup) -> Result<Self> {
        let order = group.order();
        if order > MAX_REGULAR_DIM {
            return Err(Error::Guardrail(format!("|P| = {order} exceeds {MAX_REGULAR_DIM}")));
        }
        let p = group.p.get() as usize;
        let n = order as usize;
        let actions = (0..group.rank)
            .map(|i| {
                let stride = p.pow(i as u32);
                let mut x = FpMatrix::zeros(group.p, n, n);
                for idx in 0..n {
                    let a_i = (idx / stride) % p;
                    if a_i + 1 < p {
                        x.set(idx + stride, idx, 1);
                    }
                }
                x
            })
            .collect();
        Ok(PModule { group, dim: n, actions })
    }

    pub fn group(&self) -> ElemAbelianGroup {
        self.group
    }

    pub fn prime(&self) -> Prime {
        self.group.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    pub fn actions(&self) -> &[FpMatrix] {
        &self.actions
    }

    /// Matrix of the group element with exponent vector `v`: `prod_i (I + X_i)^{v_i}`.
    pub fn element_action(&self, v: &[u8]) -> FpMatrix {
        assert_eq!(v.len(), self.group.rank);
        let id = FpMatrix::identity(self.prime(), self.dim);
        let mut acc = id.clone();
        for (x, &e) in self.actions.iter().zip(v) {
            if e != 0 {
                acc = acc.mul(&id.add(x).pow(e as u64));
            }
        }
        acc
    }

    fn check_group(&self, other: &PModule) -> Result<()> {
        if self.group != other.group {
            return Err(Error::GroupMismatch(format!("{:?} vs {:?}", self.group, other.group)));
        }
        Ok(())
    }

    /// RREF basis of `J V` for a subspace V (rows).
    fn radical_of_subspace(&self, v: &FpMatrix) -> FpMatrix {
        let mut rows: Vec<Vec<u8>> = Vec::new();
        for x in &self.actions {
            let img = v.mul(&x.transpose());
            rows.extend((0..img.rows()).map(|r| img.row(r).to_vec()));
        }
        FpMatrix::from_row_vectors(self.prime(), self.dim, &rows).row_space()
    }

    /// RREF basis of `rad^m N`; the whole space when `m <= 0`.
    pub fn radical_power_subspace(&self, m: i64) -> FpMatrix {
        let mut v = FpMatrix::identity(self.prime(), self.dim);
        for _ in 0..m.max(0) {
            if v.rows() == 0 {
                break;
            }
            v = self.radical_of_subspace(&v);
        }
        v
    }

    /// `[rad^0 N, rad^1 N, ..., rad^L N = 0]`.
    pub fn radical_series(&self) -> Vec<FpMatrix> {
        let mut out = vec![FpMatrix::identity(self.prime(), self.dim)];
        while out.last().unwrap().rows() > 0 {
            let next = self.radical_of_subspace(out.last().unwrap());
            out.push(next);
        }
        out
    }

    /// Least L with `rad^L N = 0`.
    pub fn loewy_length(&self) -> usize {
        self.radical_series().len() - 1
    }

    /// Dimensions of `rad^i N / rad^{i+1} N`.
    pub fn radical_layer_dims(&self) -> Vec<usize> {
        self.radical_series().windows(2).map(|w| w[0].rows() - w[1].rows()).collect()
    }

    /// `[soc^1 N, soc^2 N, ...]` up to the whole module.
    pub fn socle_series(&self) -> Vec<FpMatrix> {
        let p = self.prime();
        let mut out: Vec<FpMatrix> = Vec::new();
        let mut current = FpMatrix::zeros(p, 0, self.dim);
        while current.rows() < self.dim {
            let q = Quotient::new(&current).projection_matrix();
            let mut stacked = FpMatrix::zeros(p, 0, self.dim);
            for x in &self.actions {
                stacked = stacked.vstack(&q.mul(x));
            }
            current = stacked.kernel_basis().row_space();
            out.push(current.clone());
        }
        out
    }

    /// Dimensions of `soc^{i+1} N / soc^i N`.
    pub fn socle_layer_dims(&self) -> Vec<usize> {
        let mut prev = 0;
        self.socle_series()
            .iter()
            .map(|s| {
                let d = s.rows() - prev;
                prev = s.rows();
                d
            })
            .collect()
    }

    /// Whether the row space `sub` is stable under every action.
    pub fn is_submodule(&self, sub: &FpMatrix) -> bool {
        let q = Quotient::new(sub);
        (0..sub.rows()).all(|r| self.actions.iter().all(|x| q.contains(&x.mul_vec(sub.row(r)))))
    }

    /// `N / sub` together with the quotient coordinates used.
    pub fn quotient_by_submodule(&self, sub: &FpMatrix) -> Result<(PModule, Quotient)> {
        let q = Quotient::new(sub);
        let actions = self.actions.iter().map(|x| q.induced_action(x)).collect::<Result<Vec<_>>>()?;
        Ok((PModule { group: self.group, dim: q.dim(), actions }, q))
    }

    /// `N_(m) = N / rad^m N`; the zero module when `m <= 0`.
    pub fn quotient_by_radical_power(&self, m: i64) -> PModule {
        if m <= 0 {
            return PModule::zero(self.group);
        }
        let sub = self.radical_power_subspace(m);
        self.quotient_by_submodule(&sub).expect("radical powers are submodules").0
    }

    /// The operator 𝔯: `N_(L-1)` where L is the Loewy length.
    pub fn reduce(&self) -> Result<PModule> {
        if self.is_zero() {
            return Err(Error::ZeroModule("reduce"));
        }
        Ok(self.quotient_by_radical_power(self.loewy_length() as i64 - 1))
    }

    /// The natural projection `N -> 𝔯N` and the reduced module.
    pub fn reduce_with_projection(&self) -> Result<(PModule, FpMatrix)> {
        if self.is_zero() {
            return Err(Error::ZeroModule("reduce"));
        }
        let l = self.loewy_length() as i64;
        let sub = self.radical_power_subspace(l - 1);
        let (m, q) = self.quotient_by_submodule(&sub)?;
        Ok((m, q.projection_matrix()))
    }

    /// Restriction to a subgroup; generator j acts as `prod_i (I + X_i)^{v_ji} - I`.
    pub fn restrict(&self, h: &SubgroupInclusion) -> Result<PModule> {
        if h.ambient != self.group {
            return Err(Error::GroupMismatch("restriction to a subgroup of another group".into()));
        }
        let id = FpMatrix::identity(self.prime(), self.dim);
        let actions = h.generators().iter().map(|v| self.element_action(v).sub(&id)).collect();
        Ok(PModule { group: h.as_group(), dim: self.dim, actions })
    }

    /// Twist by an automorphism: the new `g_i` acts as the old element with
    /// exponent vector `A e_i`. Twisting composes as `twist(twist(N, A), B) = twist(N, A B)`.
    pub fn twist(&self, a: &AutTwist) -> Result<PModule> {
        if a.rank() != self.group.rank {
            return Err(Error::GroupMismatch("automorphism of a group of another rank".into()));
        }
        Ok(self.twist_unchecked(a.matrix()))
    }

    fn twist_unchecked(&self, a: &FpMatrix) -> PModule {
        let id = FpMatrix::identity(self.prime(), self.dim);
        let actions = (0..self.group.rank).map(|i| self.element_action(&a.column(i)).sub(&id)).collect();
        PModule { group: self.group, dim: self.dim, actions }
    }

    /// `Y ⊗ k[x]/(x^p)`: induction from rank s to rank s+1 with the new
    /// generator appended last, blocks indexed by the power of x.
    fn induce_one_step(&self) -> PModule {
        let p = self.prime();
        let q = p.get() as usize;
        let id_p = FpMatrix::identity(p, q);
        let mut actions: Vec<FpMatrix> = self.actions.iter().map(|y| id_p.kron(y)).collect();
        let mut shift = FpMatrix::zeros(p, q, q);
        for s in 0..q - 1 {
            shift.set(s + 1, s, 1);
        }
        actions.push(shift.kron(&FpMatrix::identity(p, self.dim)));
        PModule { group: ElemAbelianGroup::new(p, self.group.rank + 1), dim: self.dim * q, actions }
    }

    /// Induction from an index-p subgroup, with `complement` completing its
    /// generators to a basis of F_p^r.
    pub fn induce_index_p(&self, h: &SubgroupInclusion, complement: &[u8]) -> Result<PModule> {
        if h.corank() != 1 {
            return Err(Error::InvalidSubgroup(format!("index-p induction from a subgroup of corank {}", h.corank())));
        }
        self.induce_along(h, &[complement.to_vec()])
    }

    /// Induction along the adapted chain given by the default extension of
    /// the subgroup's canonical basis.
    pub fn induce_general(&self, h: &SubgroupInclusion) -> Result<PModule> {
        self.induce_along(h, &h.default_extension())
    }

    /// Induction along the chain `H < H + <e_1> < H + <e_1, e_2> < ... = P`
    /// for the given extension vectors.
    pub fn induce_along(&self, h: &SubgroupInclusion, extension: &[Vec<u8>]) -> Result<PModule> {
        if self.group != h.as_group() {
            return Err(Error::GroupMismatch("module is not over the subgroup being induced from".into()));
        }
        let ambient = h.ambient;
        if h.rank() + extension.len() != ambient.rank {
            return Err(Error::InvalidSubgroup("extension does not complete the subgroup to P".into()));
        }
        let mut basis: Vec<Vec<u8>> = h.generators().to_vec();
        basis.extend(extension.iter().cloned());
        if basis.iter().any(|v| v.len() != ambient.rank) {
            return Err(Error::InvalidSubgroup("extension vector of wrong length".into()));
        }
        let b = FpMatrix::from_column_vectors(ambient.p, ambient.rank, &basis);
        let b_inv = b.inverse().map_err(|_| Error::InvalidSubgroup("extension vectors are dependent".into()))?;
        let mut cur = self.clone();
        for _ in 0..extension.len() {
            cur = cur.induce_one_step();
        }
        // `cur` has generator j acting as the basis element b_j; move to the standard generators
        Ok(cur.twist_unchecked(&b_inv))
    }

    /// Basis of `Hom_kP(self, other)`, as rows of flattened `dim(other) x dim(self)` matrices.
    pub fn hom_space(&self, other: &PModule) -> Result<FpMatrix> {
        self.check_group(other)?;
        Ok(hom_solve(self.prime(), &self.actions, &other.actions, self.dim, other.dim))
    }

    /// `Hom_kP(self, other)` as a list of matrices.
    pub fn hom_basis(&self, other: &PModule) -> Result<Vec<FpMatrix>> {
        let h = self.hom_space(other)?;
        Ok((0..h.rows()).map(|r| FpMatrix::unflatten(self.prime(), other.dim, self.dim, h.row(r))).collect())
    }

    pub fn direct_sum(group: ElemAbelianGroup, parts: &[&PModule]) -> Result<PModule> {
        if let Some(bad) = parts.iter().find(|m| m.group != group) {
            return Err(Error::GroupMismatch(format!("summand over {:?}", bad.group)));
        }
        let dim = parts.iter().map(|m| m.dim).sum();
        let actions = (0..group.rank)
            .map(|i| {
                let blocks: Vec<&FpMatrix> = parts.iter().map(|m| &m.actions[i]).collect();
                FpMatrix::block_diag(group.p, &blocks)
            })
            .collect();
        Ok(PModule { group, dim, actions })
    }

    /// Transport along a change of basis `T` (columns = new basis in old coordinates).
    pub fn conjugate(&self, t: &FpMatrix, t_inv: &FpMatrix) -> PModule {
        let actions = self.actions.iter().map(|x| t_inv.mul(x).mul(t)).collect();
        PModule { group: self.group, dim: self.dim, actions }
    }

    pub fn to_payload(&self) -> ModulePayload {
        ModulePayload {
            p: self.prime().get(),
            rank: self.group.rank,
            dim: self.dim,
            actions: self.actions.iter().map(FpMatrix::to_rows).collect(),
        }
    }

    pub fn from_payload(payload: &ModulePayload) -> Result<Self> {
        let p = Prime::new(payload.p)?;
        let actions = payload
            .actions
            .iter()
            .map(|rows| {
                let rows64: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|&v| v as u64).collect()).collect();
                let m = FpMatrix::from_literal(p, &rows64, payload.dim)?;
                if m.rows() != payload.dim {
                    return Err(Error::DimensionMismatch("action with wrong number of rows".into()));
                }
                Ok(m)
            })
            .collect::<Result<Vec<_>>>()?;
        PModule::new(ElemAbelianGroup::new(p, payload.rank), payload.dim, actions)
    }
}

/// Serialized form `{ p, rank, dim, actions }`, each action an array of rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModulePayload {
    pub p: u8,
    pub rank: usize,
    pub dim: usize,
    pub actions: Vec<Vec<Vec<u8>>>,
}

/// Solves `F A_i = B_i F` for all i, with `F` of shape `m x n`; returns the
/// solution space as rows of flattened matrices.
pub(crate) fn hom_solve(p: Prime, source: &[FpMatrix], target: &[FpMatrix], n: usize, m: usize) -> FpMatrix {
    let unknowns = m * n;
    if unknowns == 0 {
        return FpMatrix::zeros(p, 0, 0);
    }
    // accumulate constraints generator by generator, keeping them reduced
    let mut system = FpMatrix::zeros(p, 0, unknowns);
    for (a, b) in source.iter().zip(target) {
        let mut block = FpMatrix::zeros(p, unknowns, unknowns);
        // row (r, c) of the equation: sum_k F[r][k] A[k][c] - sum_k B[r][k] F[k][c] = 0
        for r in 0..m {
            for c in 0..n {
                let row = r * n + c;
                for k in 0..n {
                    let v = a.get(k, c);
                    if v != 0 {
                        let col = r * n + k;
                        block.set(row, col, p.add(block.get(row, col), v));
                    }
                }
                for k in 0..m {
                    let v = b.get(r, k);
                    if v != 0 {
                        let col = k * n + c;
                        block.set(row, col, p.sub(block.get(row, col), v));
                    }
                }
            }
        }
        system = system.vstack(&block).row_space();
        if system.rows() == unknowns {
            break;
        }
    }
    system.kernel_basis()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(p: u8, r: usize) -> ElemAbelianGroup {
        ElemAbelianGroup::new(Prime::new(p).unwrap(), r)
    }

    /// The 2-dim V4-module where `g` acts trivially and `h` by a Jordan block.
    pub(crate) fn m_g() -> PModule {
        let g = grp(2, 2);
        let j = FpMatrix::from_rows(g.p, &[vec![0, 0], vec![1, 0]]).unwrap();
        PModule::new(g, 2, vec![FpMatrix::zeros(g.p, 2, 2), j]).unwrap()
    }

    fn m_h() -> PModule {
        let g = grp(2, 2);
        let j = FpMatrix::from_rows(g.p, &[vec![0, 0], vec![1, 0]]).unwrap();
        PModule::new(g, 2, vec![j, FpMatrix::zeros(g.p, 2, 2)]).unwrap()
    }

    #[test]
    fn regular_module_examples() {
        let k2 = PModule::regular(grp(2, 1)).unwrap();
        assert_eq!(k2.dim(), 2);
        assert_eq!(k2.actions()[0], FpMatrix::from_rows(k2.prime(), &[vec![0, 0], vec![1, 0]]).unwrap());
        assert_eq!(PModule::regular(grp(2, 2)).unwrap().dim(), 4);
        let k3 = PModule::regular(grp(3, 1)).unwrap();
        assert!(!k3.actions()[0].pow(2).is_zero());
        assert!(k3.actions()[0].pow(3).is_zero());
        assert!(PModule::regular(grp(7, 5)).is_err());
    }

    #[test]
    fn radical_powers_of_kv4() {
        let kp = PModule::regular(grp(2, 2)).unwrap();
        assert_eq!(kp.radical_power_subspace(1).rows(), 3);
        assert_eq!(kp.radical_power_subspace(2).rows(), 1);
        assert_eq!(kp.radical_power_subspace(0).rows(), 4);
        assert_eq!(kp.radical_power_subspace(-3).rows(), 4);
        assert_eq!(kp.radical_layer_dims(), vec![1, 2, 1]);
        assert_eq!(kp.socle_layer_dims(), vec![1, 2, 1]);
    }

    #[test]
    fn loewy_lengths() {
        assert_eq!(PModule::trivial(grp(3, 2)).loewy_length(), 1);
        assert_eq!(PModule::regular(grp(2, 2)).unwrap().loewy_length(), 3);
        assert_eq!(PModule::regular(grp(3, 2)).unwrap().loewy_length(), 5);
        assert_eq!(PModule::zero(grp(2, 1)).loewy_length(), 0);
    }

    #[test]
    fn quotients_and_reduction() {
        let kp = PModule::regular(grp(2, 2)).unwrap();
        let head = kp.quotient_by_radical_power(1);
        assert_eq!(head.dim(), 1);
        assert!(head.actions().iter().all(FpMatrix::is_zero));
        assert_eq!(kp.quotient_by_radical_power(2).dim(), 3);
        assert_eq!(kp.quotient_by_radical_power(3).dim(), 4);
        assert_eq!(kp.quotient_by_radical_power(0).dim(), 0);
        let r = kp.reduce().unwrap();
        assert_eq!((r.dim(), r.loewy_length()), (3, 2));
        let rr = r.reduce().unwrap();
        assert_eq!((rr.dim(), rr.loewy_length()), (1, 1));
        assert!(PModule::trivial(grp(2, 2)).reduce().unwrap().is_zero());
        assert!(matches!(PModule::zero(grp(2, 2)).reduce(), Err(Error::ZeroModule(_))));
    }

    #[test]
    fn restriction_examples() {
        let g = grp(2, 2);
        let k = PModule::trivial(g);
        let sub = SubgroupInclusion::new(g, vec![vec![1, 0]]).unwrap();
        let r = k.restrict(&sub).unwrap();
        assert_eq!(r, PModule::trivial(grp(2, 1)));
        // M_g restricted to <g>: zero action
        let res = m_g().restrict(&sub).unwrap();
        assert!(res.actions()[0].is_zero());
        assert!(k.restrict(&SubgroupInclusion::whole(grp(3, 2))).is_err());
    }

    #[test]
    fn induction_dimensions_and_loewy() {
        let g = grp(2, 2);
        let h = SubgroupInclusion::new(g, vec![vec![1, 0]]).unwrap();
        let k = PModule::trivial(grp(2, 1));
        let ind = k.induce_index_p(&h, &[0, 1]).unwrap();
        assert_eq!((ind.dim(), ind.loewy_length()), (2, 2));
        // g acts trivially on k induced from <g>
        assert!(ind.actions()[0].is_zero());
        let kh = PModule::regular(grp(2, 1)).unwrap();
        let big = kh.induce_index_p(&h, &[0, 1]).unwrap();
        assert_eq!((big.dim(), big.loewy_length()), (4, 3));
        assert!(k.induce_index_p(&h, &[1, 0]).is_err());
        let trivial_sub = SubgroupInclusion::new(g, vec![]).unwrap();
        assert!(k.induce_index_p(&trivial_sub, &[1, 0]).is_err());
        let from_trivial = PModule::trivial(grp(2, 0)).induce_general(&trivial_sub).unwrap();
        assert_eq!(from_trivial.dim(), 4);
        assert_eq!(from_trivial.loewy_length(), 3);
    }

    #[test]
    fn twists() {
        let g = grp(2, 2);
        let kp = PModule::regular(g).unwrap();
        assert_eq!(kp.twist(&AutTwist::identity(g)).unwrap(), kp);
        let swap = AutTwist::new(FpMatrix::from_rows(g.p, &[vec![0, 1], vec![1, 0]]).unwrap()).unwrap();
        assert_eq!(m_g().twist(&swap).unwrap(), m_h());
    }

    #[test]
    fn twist_composition_convention() {
        let g = grp(3, 2);
        let n = PModule::regular(g).unwrap().reduce().unwrap();
        let a = FpMatrix::from_rows(g.p, &[vec![1, 1], vec![0, 1]]).unwrap();
        let b = FpMatrix::from_rows(g.p, &[vec![2, 0], vec![1, 1]]).unwrap();
        let left = n.twist(&AutTwist::new(a.clone()).unwrap()).unwrap().twist(&AutTwist::new(b.clone()).unwrap()).unwrap();
        let right = n.twist(&AutTwist::new(a.mul(&b)).unwrap()).unwrap();
        assert_eq!(left, right);
    }

    #[test]
    fn hom_space_examples() {
        let g = grp(2, 2);
        let kp = PModule::regular(g).unwrap();
        assert_eq!(kp.hom_space(&kp).unwrap().rows(), 4);
        assert_eq!(PModule::trivial(g).hom_space(&kp).unwrap().rows(), 1);
        // Frobenius reciprocity: Hom(k↑P, k) = Hom_H(k, k↓H) = 1
        let h = SubgroupInclusion::new(g, vec![vec![1, 0]]).unwrap();
        let ind = PModule::trivial(grp(2, 1)).induce_index_p(&h, &[0, 1]).unwrap();
        assert_eq!(ind.hom_space(&PModule::trivial(g)).unwrap().rows(), 1);
        let res = PModule::trivial(g).restrict(&h).unwrap();
        assert_eq!(PModule::trivial(grp(2, 1)).hom_space(&res).unwrap().rows(), 1);
        for f in kp.hom_basis(&kp).unwrap() {
            for x in kp.actions() {
                assert_eq!(f.mul(x), x.mul(&f));
            }
        }
        assert!(kp.hom_space(&PModule::trivial(grp(3, 2))).is_err());
    }

    #[test]
    fn direct_sums() {
        let g = grp(2, 2);
        assert_eq!(PModule::direct_sum(g, &[]).unwrap().dim(), 0);
        let k = PModule::trivial(g);
        let kk = PModule::direct_sum(g, &[&k, &k]).unwrap();
        assert_eq!(kk.dim(), 2);
        assert!(kk.actions().iter().all(FpMatrix::is_zero));
        assert!(PModule::direct_sum(g, &[&PModule::trivial(grp(2, 1))]).is_err());
    }

    #[test]
    fn validation_rejects_bad_actions() {
        let g = grp(2, 2);
        let a = FpMatrix::from_rows(g.p, &[vec![0, 1], vec![0, 0]]).unwrap();
        let b = FpMatrix::from_rows(g.p, &[vec![0, 0], vec![1, 0]]).unwrap();
        assert!(PModule::new(g, 2, vec![a.clone(), b]).is_err());
        assert!(PModule::new(g, 2, vec![FpMatrix::identity(g.p, 2), a.clone()]).is_err());
        assert!(PModule::new(g, 2, vec![a]).is_err());
    }

    #[test]
    fn payload_roundtrip() {
        let m = m_g();
        let json = serde_json::to_string(&m.to_payload()).unwrap();
        let back: ModulePayload = serde_json::from_str(&json).unwrap();
        assert_eq!(PModule::from_payload(&back).unwrap(), m);
    }
}
