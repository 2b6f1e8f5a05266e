//! The basic algebra of a module set, its standard modules and the layered
//! quasi-hereditary certificate, and the resulting global-dimension bound.
//!
//! Modules over the algebra follow the covariant convention of
//! [`crate::basic`]: `P_X = Hom(X, M)` with morphisms acting by
//! postcomposition. For a member X with reduction map `π: X -> 𝔯X`, the
//! submodule `R_X ⊆ P_X` consists of the maps factoring through π and
//! `Δ_X = P_X / R_X`.

use serde::{Deserialize, Serialize};

use crate::basic::{AlgModule, BasicAlgebra, GeneratorChoice};
use crate::decompose::{decompose_pieces, isomorphic_indecomposables};
use crate::error::{Error, Result};
use crate::genset::{LayerAssignment, ModuleSet};
use crate::matrix::FpMatrix;
use crate::par::{IntoParallelIterator, ParallelIterator};

/// `End_kP(M)` for M the sum of the members of a module set.
#[derive(Clone, Debug)]
pub struct BasicEndoAlgebra {
    set: ModuleSet,
    algebra: BasicAlgebra,
}

impl BasicEndoAlgebra {
    pub fn build(set: &ModuleSet) -> Result<Self> {
        let members = set.members();
        let n = members.len();
        for i in 0..n {
            for j in i + 1..n {
                let (a, b) = (&members[i], &members[j]);
                if a.fingerprint == b.fingerprint && isomorphic_indecomposables(&a.module, &b.module)? {
                    return Err(Error::DuplicateSummand(a.label.clone(), b.label.clone()));
                }
            }
        }
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
        let homs: Vec<Result<Vec<FpMatrix>>> =
            pairs.into_par_iter().map(|(i, j)| members[i].module.hom_basis(&members[j].module)).collect();
        let mut hom: Vec<Vec<Vec<FpMatrix>>> = vec![Vec::with_capacity(n); n];
        for (idx, h) in homs.into_iter().enumerate() {
            hom[idx / n].push(h?);
        }
        let algebra = BasicAlgebra::new(
            set.group().p,
            members.iter().map(|m| m.label.clone()).collect(),
            members.iter().map(|m| m.module.dim()).collect(),
            hom,
        )?;
        Ok(BasicEndoAlgebra { set: set.clone(), algebra })
    }

    pub fn algebra(&self) -> &BasicAlgebra {
        &self.algebra
    }

    pub fn set(&self) -> &ModuleSet {
        &self.set
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn projective_of(&self, label: &str) -> Result<AlgModule> {
        Ok(self.algebra.projective(self.algebra.index_of(label)?))
    }

    /// The exact sequence `0 -> R_X -> P_X -> Δ_X -> 0` for a member.
    pub fn standard_data(&self, label: &str) -> Result<StandardData> {
        let x = self.algebra.index_of(label)?;
        let members = self.set.members();
        let module = &members[x].module;
        let n = self.algebra.n_objects();
        let p = self.algebra.prime();
        let (reduced, pi) = module.reduce_with_projection()?;
        let mut summands = Vec::new();
        if !reduced.is_zero() {
            for (z, _) in decompose_pieces(&reduced, 0)? {
                let idx = self
                    .set
                    .find(&z)?
                    .ok_or_else(|| Error::ClosureViolation(format!("a summand of the reduction of {label} is not in the set")))?;
                summands.push(idx);
            }
        }
        summands.sort_unstable();
        let mut r_spaces = Vec::with_capacity(n);
        let mut injective = true;
        for (y, member) in members.iter().enumerate() {
            let rows: Vec<Vec<u8>> = if reduced.is_zero() {
                Vec::new()
            } else {
                let gs = reduced.hom_basis(&member.module)?;
                let mut rows = Vec::with_capacity(gs.len());
                for g in &gs {
                    let c = self
                        .algebra
                        .hom_coordinates(x, y, &g.mul(&pi))
                        .ok_or_else(|| Error::Verification(format!("a map out of {label} is missing from the Hom basis")))?;
                    rows.push(c);
                }
                rows
            };
            let count = rows.len();
            let space = FpMatrix::from_row_vectors(p, self.algebra.hom_dim(x, y), &rows).row_space();
            injective &= space.rows() == count;
            r_spaces.push(space);
        }
        Ok(StandardData { object: x, reduced_summands: summands, r_spaces, injective })
    }

    /// `Δ_X` as a module.
    pub fn delta_module(&self, label: &str) -> Result<AlgModule> {
        let data = self.standard_data(label)?;
        self.algebra.projective(data.object).quotient(&data.r_spaces)
    }

    /// Checks conditions (a) and (b) of the layered certificate for every member.
    #[allow(clippy::needless_range_loop)]
    pub fn verify_sqh(&self, layers: &LayerAssignment) -> Result<SqhCertificate> {
        let labels = self.algebra.labels();
        let layer =
            |i: usize| -> Result<usize> { layers.layer_of.get(&labels[i]).copied().ok_or_else(|| Error::UnknownLabel(labels[i].clone())) };
        let n = self.algebra.n_objects();
        let datas: Vec<Result<StandardData>> = (0..n).into_par_iter().map(|x| self.standard_data(&labels[x])).collect();
        let mut entries = Vec::with_capacity(n);
        let mut failures = Vec::new();
        for data in datas {
            let data = data?;
            let x = data.object;
            let lx = layer(x)?;
            let label = labels[x].clone();

            let dim_p: usize = (0..n).map(|y| self.algebra.hom_dim(x, y)).sum();
            let dim_r: usize = data.r_spaces.iter().map(FpMatrix::rows).sum();
            let mut expected_r = 0;
            for &s in &data.reduced_summands {
                expected_r += (0..n).map(|y| self.algebra.hom_dim(s, y)).sum::<usize>();
            }
            let exact = data.injective && dim_r == expected_r;
            if !exact {
                failures.push(format!("{label}: R is not the sum of the projectives of the reduction's summands"));
            }

            let mut r_summands = Vec::new();
            let mut condition_a = true;
            for &s in &data.reduced_summands {
                let ls = layer(s)?;
                if ls <= lx {
                    condition_a = false;
                    failures.push(format!("({label}, {}): summand of R in layer {ls}, not above {lx}", labels[s]));
                }
                r_summands.push(LabelledLayer { label: labels[s].clone(), layer: ls, multiplicity: 1 });
            }
            merge_multiplicities(&mut r_summands);

            // R_X must lie in the radical, so that rad Δ_X = rad P_X / R_X
            let rad_end = self.algebra.radical_end(x);
            let inside = crate::matrix::contains_subspace(&rad_end.row_space(), &data.r_spaces[x]);
            let mut condition_b = inside;
            if !inside {
                failures.push(format!("{label}: R meets the top of P"));
            }
            let mut rad_delta_factors = Vec::new();
            for y in 0..n {
                let rad_dim = self.algebra.radical_hom(x, y).rows();
                let r_dim = data.r_spaces[y].rows();
                let d = rad_dim.saturating_sub(r_dim);
                if d == 0 {
                    continue;
                }
                let mult = d / self.algebra.residue_dim(y);
                let ly = layer(y)?;
                if ly >= lx {
                    condition_b = false;
                    failures.push(format!("({label}, {}): composition factor of rad Δ in layer {ly}, not below {lx}", labels[y]));
                }
                rad_delta_factors.push(LabelledLayer { label: labels[y].clone(), layer: ly, multiplicity: mult });
            }
            entries.push(SqhEntry {
                label,
                layer: lx,
                dim_p,
                dim_r,
                dim_delta: dim_p - dim_r,
                exact,
                r_summands,
                rad_delta_factors,
                condition_a,
                condition_b,
            });
        }
        let passed = failures.is_empty();
        Ok(SqhCertificate { n_layers: layers.n_layers(), entries, passed, failures })
    }

    /// Exact global dimension of the algebra.
    pub fn global_dimension(&self) -> Result<usize> {
        self.algebra.global_dimension(default_cap(self.algebra.n_objects()))
    }

    pub fn projective_dimensions(&self, choice: GeneratorChoice) -> Result<Vec<usize>> {
        self.algebra.projective_dimensions(choice, default_cap(self.algebra.n_objects()))
    }
}

/// Resolution cap: well above any layer count the set can have.
pub fn default_cap(n_objects: usize) -> usize {
    2 * n_objects + 4
}

fn merge_multiplicities(v: &mut Vec<LabelledLayer>) {
    let mut out: Vec<LabelledLayer> = Vec::new();
    for e in v.drain(..) {
        match out.iter_mut().find(|o| o.label == e.label) {
            Some(o) => o.multiplicity += e.multiplicity,
            None => out.push(e),
        }
    }
    *v = out;
}

/// `R_X ⊆ P_X` at every object, with the members it decomposes into.
#[derive(Clone, Debug)]
pub struct StandardData {
    pub object: usize,
    /// Object indices of the summands of 𝔯X, with repetition.
    pub reduced_summands: Vec<usize>,
    pub r_spaces: Vec<FpMatrix>,
    /// Whether precomposition with π is injective.
    pub injective: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelledLayer {
    pub label: String,
    pub layer: usize,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SqhEntry {
    pub label: String,
    pub layer: usize,
    pub dim_p: usize,
    pub dim_r: usize,
    pub dim_delta: usize,
    pub exact: bool,
    pub r_summands: Vec<LabelledLayer>,
    pub rad_delta_factors: Vec<LabelledLayer>,
    pub condition_a: bool,
    pub condition_b: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SqhCertificate {
    pub n_layers: usize,
    pub entries: Vec<SqhEntry>,
    pub passed: bool,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub p: u8,
    pub rank: usize,
    pub n_members: usize,
    pub algebra_dim: usize,
    pub n_layers: usize,
    pub gldim: usize,
    pub group_order: u64,
    pub loewy_length_kp: usize,
    pub sqh_passed: bool,
}

/// Builds the algebra, certifies the layers and computes the global
/// dimension; fails unless `gldim <= n_layers <= |P|`.
pub fn bound_report(set: &ModuleSet, layers: &LayerAssignment) -> Result<(BoundReport, SqhCertificate)> {
    let alg = BasicEndoAlgebra::build(set)?;
    let cert = alg.verify_sqh(layers)?;
    let gldim = alg.global_dimension()?;
    let g = set.group();
    let report = BoundReport {
        p: g.p.get(),
        rank: g.rank,
        n_members: set.len(),
        algebra_dim: alg.dim(),
        n_layers: layers.n_layers(),
        gldim,
        group_order: g.order(),
        loewy_length_kp: g.rank * (g.p.get() as usize - 1) + 1,
        sqh_passed: cert.passed,
    };
    if !cert.passed {
        return Err(Error::Verification(format!("layer certificate failed: {}", cert.failures.join("; "))));
    }
    if report.gldim > report.n_layers || report.n_layers as u64 > report.group_order {
        return Err(Error::Verification(format!(
            "expected gldim {} <= layers {} <= |P| {}",
            report.gldim, report.n_layers, report.group_order
        )));
    }
    Ok((report, cert))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Prime;
    use crate::genset::{build_np, layer_partition, BuildOptions};
    use crate::pgroup::ElemAbelianGroup;

    fn set(p: u8, r: usize) -> ModuleSet {
        build_np(ElemAbelianGroup::new(Prime::new(p).unwrap(), r), &BuildOptions::default()).unwrap()
    }

    #[test]
    fn trivial_group_is_semisimple() {
        let s = set(2, 0);
        let a = BasicEndoAlgebra::build(&s).unwrap();
        assert_eq!(a.dim(), 1);
        assert_eq!(a.global_dimension().unwrap(), 0);
        let l = layer_partition(&s).unwrap();
        let cert = a.verify_sqh(&l).unwrap();
        assert!(cert.passed);
        assert_eq!(cert.n_layers, 1);
        assert_eq!(a.projective_of("M0").unwrap().dim(), 1);
    }

    #[test]
    fn cyclic_of_order_two() {
        let s = set(2, 1);
        let a = BasicEndoAlgebra::build(&s).unwrap();
        assert_eq!(a.dim(), 5);
        // M0 = kC2, M1 = k
        assert_eq!(a.projective_of("M0").unwrap().dim(), 3);
        assert_eq!(a.projective_of("M1").unwrap().dim(), 2);
        let delta = a.delta_module("M0").unwrap();
        assert_eq!(delta.dim(), 1);
        delta.verify(a.algebra()).unwrap();
        assert_eq!(a.delta_module("M1").unwrap().dim(), 2);
        let l = layer_partition(&s).unwrap();
        let cert = a.verify_sqh(&l).unwrap();
        assert!(cert.passed, "{:?}", cert.failures);
        assert_eq!(a.global_dimension().unwrap(), 2);
        let (report, _) = bound_report(&s, &l).unwrap();
        assert_eq!((report.n_layers, report.gldim, report.group_order, report.loewy_length_kp), (2, 2, 2, 2));
    }

    #[test]
    fn delta_top_is_simple() {
        let s = set(2, 2);
        let a = BasicEndoAlgebra::build(&s).unwrap();
        for m in s.members() {
            let d = a.delta_module(&m.label).unwrap();
            d.verify(a.algebra()).unwrap();
            let rad = d.radical_dims(a.algebra());
            let top: Vec<usize> = d.dims().iter().zip(&rad).map(|(x, r)| x - r).collect();
            let x = a.algebra().index_of(&m.label).unwrap();
            for (y, &t) in top.iter().enumerate() {
                assert_eq!(t, if y == x { 1 } else { 0 });
            }
        }
    }

    #[test]
    fn duplicate_members_are_rejected() {
        let s = set(2, 1);
        let mut dup = s.clone();
        dup.push_unchecked(s.members()[1].module.clone(), "copy");
        assert!(matches!(BasicEndoAlgebra::build(&dup), Err(Error::DuplicateSummand(..))));
    }
}
