//! The generator set of kP-modules: the recursive construction, the closure
//! construction used to cross-check it, and the partition into layers.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::decompose::{decompose_pieces, fingerprint, is_indecomposable, isomorphic_indecomposables, Fingerprint};
use crate::error::{Error, Result};
use crate::module::PModule;
use crate::par::{IntoParallelRefIterator, ParallelIterator};
use crate::pgroup::{gl_elements, gl_generators, gl_order, AutTwist, ElemAbelianGroup, SubgroupInclusion};

/// Default limit on `|P|` for the set constructions.
pub const DEFAULT_MAX_ORDER: u64 = 32;
/// Above this many elements only generators of GL_r(F_p) are used for twist checks.
pub const EXHAUSTIVE_GL_LIMIT: u64 = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BuildOptions {
    /// Seed for the randomized decompositions; results do not depend on it.
    pub seed: u64,
    /// Largest `|P|` accepted.
    pub max_order: u64,
    pub max_rounds: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { seed: 0x5eed, max_order: DEFAULT_MAX_ORDER, max_rounds: 64 }
    }
}

fn check_guardrail(g: ElemAbelianGroup, opts: &BuildOptions) -> Result<()> {
    if g.order() > opts.max_order {
        return Err(Error::Guardrail(format!(
            "p^r = {} exceeds the limit {}; raise the limit explicitly to proceed",
            g.order(),
            opts.max_order
        )));
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct Member {
    pub label: String,
    pub module: PModule,
    pub fingerprint: Fingerprint,
}

/// Pairwise non-isomorphic, absolutely indecomposable kP-modules.
#[derive(Clone, Debug)]
pub struct ModuleSet {
    group: ElemAbelianGroup,
    members: Vec<Member>,
}

impl ModuleSet {
    pub fn new(group: ElemAbelianGroup) -> Self {
        ModuleSet { group, members: Vec::new() }
    }

    pub fn group(&self) -> ElemAbelianGroup {
        self.group
    }

    pub fn members(&self) -> &[Member] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn member(&self, label: &str) -> Result<&Member> {
        self.members.iter().find(|m| m.label == label).ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// Index of the member isomorphic to `n`, if any.
    pub fn find(&self, n: &PModule) -> Result<Option<usize>> {
        let layers = (n.dim(), n.radical_layer_dims(), n.socle_layer_dims());
        for (i, m) in self.members.iter().enumerate() {
            let f = &m.fingerprint;
            if f.dim == layers.0 && f.radical_layers == layers.1 && f.socle_layers == layers.2 && isomorphic_indecomposables(&m.module, n)?
            {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    /// Inserts `n` unless an isomorphic member exists. New members are
    /// certified absolutely indecomposable first. Returns whether it was new.
    pub fn insert(&mut self, n: PModule, context: &str) -> Result<bool> {
        if n.group() != self.group {
            return Err(Error::GroupMismatch(format!("inserting a module over {:?}", n.group())));
        }
        if n.is_zero() || self.find(&n)?.is_some() {
            return Ok(false);
        }
        let (ok, w) = is_indecomposable(&n)?;
        if !ok {
            return Err(Error::NotIndecomposable { context: context.to_string(), end_dim: w.end_dim, residue_dim: w.residue_dim });
        }
        let fp = fingerprint(&n);
        let label = format!("tmp{}", self.members.len());
        self.members.push(Member { label, module: n, fingerprint: fp });
        Ok(true)
    }

    /// Appends without deduplication or certification.
    #[cfg(test)]
    pub(crate) fn push_unchecked(&mut self, module: PModule, label: &str) {
        let fingerprint = fingerprint(&module);
        self.members.push(Member { label: label.to_string(), module, fingerprint });
    }

    /// Sorts by (Loewy length descending, dimension ascending, fingerprint)
    /// and relabels `M0, M1, ...`.
    pub fn canonicalize(&mut self) {
        self.members.sort_by(|a, b| {
            b.fingerprint
                .loewy_length
                .cmp(&a.fingerprint.loewy_length)
                .then(a.fingerprint.dim.cmp(&b.fingerprint.dim))
                .then(a.fingerprint.cmp(&b.fingerprint))
        });
        for (i, m) in self.members.iter_mut().enumerate() {
            m.label = format!("M{i}");
        }
    }

    /// A copy with one member removed.
    pub fn without(&self, label: &str) -> ModuleSet {
        ModuleSet { group: self.group, members: self.members.iter().filter(|m| m.label != label).cloned().collect() }
    }

    pub fn modules(&self) -> impl Iterator<Item = &PModule> {
        self.members.iter().map(|m| &m.module)
    }
}

/// Indecomposable summands of `X↓L↑P`, using `ind(X↓L↑P) = ∪ ind(Z↑P)` over
/// the summands Z of `X↓L`.
pub fn res_ind_summands(x: &PModule, l: &SubgroupInclusion, seed: u64) -> Result<Vec<PModule>> {
    let res = x.restrict(l)?;
    let mut small: Vec<PModule> = Vec::new();
    for (z, _) in decompose_pieces(&res, seed)? {
        let mut seen = false;
        for s in &small {
            if s.dim() == z.dim() && isomorphic_indecomposables(s, &z)? {
                seen = true;
                break;
            }
        }
        if !seen {
            small.push(z);
        }
    }
    let mut out = Vec::new();
    for z in small {
        let up = z.induce_general(l)?;
        out.extend(decompose_pieces(&up, seed)?.into_iter().map(|(m, _)| m));
    }
    Ok(out)
}

/// Indecomposable summands of the quotients `X_(m)`, `1 <= m < LL(X)`.
pub fn quotient_summands(x: &PModule, seed: u64) -> Result<Vec<PModule>> {
    let ll = x.loewy_length();
    let mut out = Vec::new();
    for m in 1..ll {
        out.extend(decompose_pieces(&x.quotient_by_radical_power(m as i64), seed)?.into_iter().map(|(m, _)| m));
    }
    Ok(out)
}

/// The recursive construction: `{k}` for the trivial group, and otherwise
/// `𝔯^i(X↑P)` for every index-p subgroup H, every X in the set for H, and
/// `0 <= i < LL(X) + p - 1`.
pub fn build_np(g: ElemAbelianGroup, opts: &BuildOptions) -> Result<ModuleSet> {
    check_guardrail(g, opts)?;
    let mut current = ModuleSet::new(ElemAbelianGroup::trivial(g.p));
    current.insert(PModule::trivial(current.group), "base case")?;
    for rank in 1..=g.rank {
        let big = ElemAbelianGroup::new(g.p, rank);
        let jobs: Vec<(SubgroupInclusion, &PModule)> =
            big.hyperplanes().into_iter().flat_map(|h| current.modules().map(move |x| (h.clone(), x))).collect();
        let produced: Vec<Result<Vec<PModule>>> = jobs
            .par_iter()
            .map(|(h, x)| {
                let mut y = x.induce_general(h)?;
                let count = x.loewy_length() + g.p.get() as usize - 1;
                let mut out = Vec::with_capacity(count);
                for _ in 0..count {
                    let next = y.reduce()?;
                    out.push(std::mem::replace(&mut y, next));
                }
                Ok(out)
            })
            .collect();
        let mut next = ModuleSet::new(big);
        for batch in produced {
            for m in batch? {
                next.insert(m, "reduced induced module")?;
            }
        }
        current = next;
    }
    current.canonicalize();
    Ok(current)
}

/// The closure construction: the smallest set containing kP and closed under
/// `ind(X↓H↑P)` for all subgroups H and `ind(X_(m))` for `1 <= m < LL(X)`,
/// computed as a worklist fixpoint.
pub fn build_mp_closure(g: ElemAbelianGroup, opts: &BuildOptions) -> Result<ModuleSet> {
    check_guardrail(g, opts)?;
    let mut set = ModuleSet::new(g);
    set.insert(PModule::regular(g)?, "regular module")?;
    let subgroups = g.subgroups();
    let mut frontier: Vec<usize> = vec![0];
    let mut rounds = 0;
    while !frontier.is_empty() {
        if rounds == opts.max_rounds {
            return Err(Error::NoFixpoint(opts.max_rounds));
        }
        rounds += 1;
        let jobs: Vec<(usize, Option<&SubgroupInclusion>)> =
            frontier.iter().flat_map(|&i| std::iter::once((i, None)).chain(subgroups.iter().map(move |l| (i, Some(l))))).collect();
        let produced: Vec<Result<Vec<PModule>>> = jobs
            .par_iter()
            .map(|&(i, l)| {
                let x = &set.members[i].module;
                match l {
                    None => quotient_summands(x, opts.seed),
                    Some(l) => res_ind_summands(x, l, opts.seed),
                }
            })
            .collect();
        let before = set.len();
        for batch in produced {
            for m in batch? {
                set.insert(m, "closure candidate")?;
            }
        }
        frontier = (before..set.len()).collect();
    }
    set.canonicalize();
    Ok(set)
}

/// Outcome of comparing two module sets up to isomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetComparison {
    pub equal: bool,
    /// `(label in a, label in b)` for matched members.
    pub matching: Vec<(String, String)>,
    pub only_in_a: Vec<String>,
    pub only_in_b: Vec<String>,
}

pub fn sets_equal_up_to_iso(a: &ModuleSet, b: &ModuleSet) -> Result<SetComparison> {
    if a.group != b.group {
        return Err(Error::GroupMismatch("comparing module sets over different groups".into()));
    }
    let mut matching = Vec::new();
    let mut only_in_a = Vec::new();
    let mut used = vec![false; b.len()];
    for m in &a.members {
        match b.find(&m.module)? {
            Some(j) if !used[j] => {
                used[j] = true;
                matching.push((m.label.clone(), b.members[j].label.clone()));
            }
            _ => only_in_a.push(m.label.clone()),
        }
    }
    let only_in_b: Vec<String> = b.members.iter().zip(&used).filter(|(_, &u)| !u).map(|(m, _)| m.label.clone()).collect();
    Ok(SetComparison { equal: only_in_a.is_empty() && only_in_b.is_empty(), matching, only_in_a, only_in_b })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayerAssignment {
    pub layers: Vec<Vec<String>>,
    pub layer_of: BTreeMap<String, usize>,
    /// `(Loewy length, dimension)` shared by the members of each layer.
    pub r_d_sequence: Vec<(usize, usize)>,
}

impl LayerAssignment {
    pub fn n_layers(&self) -> usize {
        self.layers.len()
    }
}

/// Layer 0 is the regular module; then repeatedly take the largest remaining
/// Loewy length r and the smallest dimension d among modules of that Loewy
/// length, and make the modules with that pair the next layer.
pub fn layer_partition(s: &ModuleSet) -> Result<LayerAssignment> {
    let regular = PModule::regular(s.group)?;
    let reg = s.find(&regular)?.ok_or(Error::MissingRegular)?;
    let mut layers = vec![vec![s.members[reg].label.clone()]];
    let mut r_d_sequence = vec![(regular.loewy_length(), regular.dim())];
    let mut remaining: Vec<&Member> = s.members.iter().enumerate().filter(|&(i, _)| i != reg).map(|(_, m)| m).collect();
    while !remaining.is_empty() {
        let r = remaining.iter().map(|m| m.fingerprint.loewy_length).max().unwrap();
        let d = remaining.iter().filter(|m| m.fingerprint.loewy_length == r).map(|m| m.fingerprint.dim).min().unwrap();
        let (this, rest): (Vec<&Member>, Vec<&Member>) =
            remaining.into_iter().partition(|m| m.fingerprint.loewy_length == r && m.fingerprint.dim == d);
        layers.push(this.iter().map(|m| m.label.clone()).collect());
        r_d_sequence.push((r, d));
        remaining = rest;
    }
    let layer_of = layers.iter().enumerate().flat_map(|(i, l)| l.iter().map(move |lab| (lab.clone(), i))).collect();
    Ok(LayerAssignment { layers, layer_of, r_d_sequence })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureReport {
    pub checks: usize,
    pub failures: Vec<String>,
}

impl ClosureReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// For every member X and subgroup L, every summand of `X↓L↑P` is a member.
pub fn verify_res_ind_closure(s: &ModuleSet, seed: u64) -> Result<ClosureReport> {
    let subgroups = s.group.subgroups();
    let jobs: Vec<(&Member, &SubgroupInclusion)> = s.members.iter().flat_map(|m| subgroups.iter().map(move |l| (m, l))).collect();
    let results: Vec<Result<Option<String>>> = jobs
        .par_iter()
        .map(|&(m, l)| {
            for z in res_ind_summands(&m.module, l, seed)? {
                if s.find(&z)?.is_none() {
                    return Ok(Some(format!(
                        "{} restricted to {:?} and induced back has a summand of dim {} outside the set",
                        m.label,
                        l.canonical().to_rows(),
                        z.dim()
                    )));
                }
            }
            Ok(None)
        })
        .collect();
    let mut report = ClosureReport::default();
    for r in results {
        report.checks += 1;
        if let Some(f) = r? {
            report.failures.push(f);
        }
    }
    Ok(report)
}

/// Automorphisms used for twist checks: all of GL_r(F_p) when small, else generators.
pub fn automorphism_sample(g: ElemAbelianGroup) -> Vec<AutTwist> {
    let mats = if gl_order(g.p, g.rank) <= EXHAUSTIVE_GL_LIMIT { gl_elements(g.p, g.rank) } else { gl_generators(g.p, g.rank) };
    mats.into_iter().map(|m| AutTwist::new(m).expect("GL elements are invertible")).collect()
}

/// Twisting any member by an automorphism gives a module isomorphic to a member.
pub fn verify_isom_closure(s: &ModuleSet) -> Result<ClosureReport> {
    let auts = automorphism_sample(s.group);
    let jobs: Vec<(&Member, &AutTwist)> = s.members.iter().flat_map(|m| auts.iter().map(move |a| (m, a))).collect();
    let results: Vec<Result<Option<String>>> = jobs
        .par_iter()
        .map(|&(m, a)| {
            let t = m.module.twist(a)?;
            Ok(match s.find(&t)? {
                Some(_) => None,
                None => Some(format!("twist of {} by {:?} is not in the set", m.label, a.matrix().to_rows())),
            })
        })
        .collect();
    let mut report = ClosureReport::default();
    for r in results {
        report.checks += 1;
        if let Some(f) = r? {
            report.failures.push(f);
        }
    }
    Ok(report)
}

/// Label of the member isomorphic to each twist, for orbit computations.
pub fn twist_images(s: &ModuleSet, a: &AutTwist) -> Result<Vec<Option<String>>> {
    s.members.iter().map(|m| Ok(s.find(&m.module.twist(a)?)?.map(|i| s.members[i].label.clone()))).collect()
}
