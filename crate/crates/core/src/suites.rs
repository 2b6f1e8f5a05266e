//! Seeded property suites behind `repdim verify`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::decompose::{are_isomorphic, decompose, decompose_pieces, is_indecomposable, same_multiset};
use crate::error::{Error, Result};
use crate::genset::{
    automorphism_sample, build_np, quotient_summands, verify_isom_closure, verify_res_ind_closure, BuildOptions, ModuleSet,
};
use crate::matrix::FpMatrix;
use crate::module::PModule;
use crate::par::{IntoParallelIterator, ParallelIterator};
use crate::pgroup::{ElemAbelianGroup, SubgroupInclusion};

pub const LEMMA43_TRIALS: usize = 100;
pub const KRULL_SCHMIDT_CORPUS: usize = 25;
pub const KRULL_SCHMIDT_SEEDS: u64 = 10;
/// Modules in the Krull-Schmidt corpus stay at or below this dimension.
pub const KRULL_SCHMIDT_MAX_DIM: usize = 48;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Suite {
    Lemma41,
    Lemma42,
    Lemma43,
    Closure,
    KrullSchmidt,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Lemma41, Suite::Lemma42, Suite::Lemma43, Suite::Closure, Suite::KrullSchmidt];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Lemma41 => "lemma41",
            Suite::Lemma42 => "lemma42",
            Suite::Lemma43 => "lemma43",
            Suite::Closure => "closure",
            Suite::KrullSchmidt => "krull-schmidt",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}; expected one of lemma41, lemma42, lemma43, closure, krull-schmidt")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub p: u8,
    pub rank: usize,
    pub seed: u64,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(suite: Suite, g: ElemAbelianGroup, seed: u64) -> Self {
        SuiteReport { suite, p: g.p.get(), rank: g.rank, seed, checks: 0, failures: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn passes(&self) -> usize {
        self.checks - self.failures.len()
    }

    fn absorb(&mut self, results: Vec<Result<Option<String>>>) -> Result<()> {
        for r in results {
            self.checks += 1;
            if let Some(f) = r? {
                self.failures.push(f);
            }
        }
        Ok(())
    }
}

pub fn run_suite(suite: Suite, g: ElemAbelianGroup, seed: u64, opts: &BuildOptions) -> Result<SuiteReport> {
    match suite {
        Suite::Lemma41 => lemma41(g, opts),
        Suite::Lemma42 => lemma42(g, opts),
        Suite::Lemma43 => lemma43(g, seed, LEMMA43_TRIALS, opts),
        Suite::Closure => closure(g, seed, opts),
        Suite::KrullSchmidt => krull_schmidt(g, seed, opts),
    }
}

fn proper_subgroups(g: ElemAbelianGroup) -> Vec<SubgroupInclusion> {
    g.subgroups().into_iter().filter(|h| h.rank() < g.rank).collect()
}

/// One generating set per subgroup rank below r.
fn sets_by_rank(g: ElemAbelianGroup, opts: &BuildOptions) -> Result<Vec<ModuleSet>> {
    (0..g.rank).map(|s| build_np(ElemAbelianGroup::new(g.p, s), opts)).collect()
}

fn subgroup_name(h: &SubgroupInclusion) -> String {
    format!("{:?}", h.generators())
}

/// Every member of the set for each proper subgroup H induces to an indecomposable kP-module.
pub fn lemma41(g: ElemAbelianGroup, opts: &BuildOptions) -> Result<SuiteReport> {
    let sets = sets_by_rank(g, opts)?;
    let jobs: Vec<(SubgroupInclusion, PModule, String)> = proper_subgroups(g)
        .into_iter()
        .flat_map(|h| sets[h.rank()].members().iter().map(move |m| (h.clone(), m.module.clone(), m.label.clone())).collect::<Vec<_>>())
        .collect();
    let results = jobs
        .into_par_iter()
        .map(|(h, x, label)| {
            let up = x.induce_general(&h)?;
            let (ok, w) = is_indecomposable(&up)?;
            Ok((!ok).then(|| {
                format!("{label} induced from {} is decomposable (End dim {}, residue {})", subgroup_name(&h), w.end_dim, w.residue_dim)
            }))
        })
        .collect();
    let mut report = SuiteReport::new(Suite::Lemma41, g, opts.seed);
    report.absorb(results)?;
    Ok(report)
}

/// Restricting a member to any proper subgroup H gives summands in the set for H.
pub fn lemma42(g: ElemAbelianGroup, opts: &BuildOptions) -> Result<SuiteReport> {
    let sets = sets_by_rank(g, opts)?;
    let mp = build_np(g, opts)?;
    let subgroups = proper_subgroups(g);
    let jobs: Vec<(&SubgroupInclusion, &PModule, &str)> =
        mp.members().iter().flat_map(|m| subgroups.iter().map(move |h| (h, &m.module, m.label.as_str()))).collect();
    let results = jobs
        .into_par_iter()
        .map(|(h, x, label)| {
            let down = x.restrict(h)?;
            for (z, _) in decompose_pieces(&down, opts.seed)? {
                if sets[h.rank()].find(&z)?.is_none() {
                    return Ok(Some(format!(
                        "{label} restricted to {} has a summand of dim {} outside the set",
                        subgroup_name(h),
                        z.dim()
                    )));
                }
            }
            Ok(None)
        })
        .collect();
    let mut report = SuiteReport::new(Suite::Lemma42, g, opts.seed);
    report.absorb(results)?;
    Ok(report)
}

/// Random triples (H of index p, X over H, m): `(X↑P)_(m) ≅ (X_(m)↑P)_(m)`.
/// X is a member of the set for H or a direct sum of two members.
pub fn lemma43(g: ElemAbelianGroup, seed: u64, trials: usize, opts: &BuildOptions) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::Lemma43, g, seed);
    if g.rank == 0 {
        return Ok(report);
    }
    let hyperplanes = g.hyperplanes();
    let mh = build_np(ElemAbelianGroup::new(g.p, g.rank - 1), opts)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut jobs = Vec::with_capacity(trials);
    for _ in 0..trials {
        let h = hyperplanes.choose(&mut rng).expect("rank >= 1").clone();
        let a = &mh.members()[rng.gen_range(0..mh.len())].module;
        let x = if rng.gen_ratio(1, 3) {
            let b = &mh.members()[rng.gen_range(0..mh.len())].module;
            PModule::direct_sum(mh.group(), &[a, b])?
        } else {
            a.clone()
        };
        jobs.push((h, x));
    }
    let jobs: Vec<(SubgroupInclusion, PModule, i64)> = jobs
        .into_iter()
        .map(|(h, x)| {
            // Loewy length of X↑P is LL(X) + p - 1
            let bound = x.loewy_length() + g.p.get() as usize - 1;
            let m = rng.gen_range(1..=bound) as i64;
            (h, x, m)
        })
        .collect();
    let results = jobs
        .into_par_iter()
        .map(|(h, x, m)| {
            let lhs = x.induce_general(&h)?.quotient_by_radical_power(m);
            let rhs = x.quotient_by_radical_power(m).induce_general(&h)?.quotient_by_radical_power(m);
            Ok((!are_isomorphic(&lhs, &rhs)?)
                .then(|| format!("X of dim {} over {}, m = {m}: truncations differ", x.dim(), subgroup_name(&h))))
        })
        .collect();
    report.absorb(results)?;
    Ok(report)
}

/// The three closure properties of the set: regular module, restriction-induction
/// along every subgroup, radical quotients, plus twists by automorphisms.
pub fn closure(g: ElemAbelianGroup, seed: u64, opts: &BuildOptions) -> Result<SuiteReport> {
    let mp = build_np(g, opts)?;
    let mut report = SuiteReport::new(Suite::Closure, g, seed);
    report.checks += 1;
    if mp.find(&PModule::regular(g)?)?.is_none() {
        report.failures.push("the regular module is missing".into());
    }
    for r in [verify_res_ind_closure(&mp, seed)?, verify_isom_closure(&mp)?] {
        report.checks += r.checks;
        report.failures.extend(r.failures);
    }
    let results = mp
        .members()
        .to_vec()
        .into_par_iter()
        .map(|m| {
            for z in quotient_summands(&m.module, seed)? {
                if mp.find(&z)?.is_none() {
                    return Ok(Some(format!("a radical quotient of {} has a summand of dim {} outside the set", m.label, z.dim())));
                }
            }
            Ok(None)
        })
        .collect();
    report.absorb(results)?;
    Ok(report)
}

fn random_invertible<R: Rng>(g: ElemAbelianGroup, n: usize, rng: &mut R) -> (FpMatrix, FpMatrix) {
    loop {
        let t = FpMatrix::random(g.p, n, n, rng);
        if let Ok(inv) = t.inverse() {
            return (t, inv);
        }
    }
}

/// A disguised direct sum of 1 to 3 twisted members, with the labels it is built from.
pub fn krull_schmidt_corpus(mp: &ModuleSet, seed: u64) -> Result<Vec<(PModule, BTreeMap<String, usize>)>> {
    let g = mp.group();
    let auts = automorphism_sample(g);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(KRULL_SCHMIDT_CORPUS);
    while out.len() < KRULL_SCHMIDT_CORPUS {
        let k = rng.gen_range(1..=3);
        let mut parts = Vec::new();
        let mut expected = BTreeMap::new();
        for _ in 0..k {
            let m = &mp.members()[rng.gen_range(0..mp.len())];
            let a = auts.choose(&mut rng).expect("GL is nonempty");
            let t = m.module.twist(a)?;
            let idx = mp.find(&t)?.ok_or_else(|| Error::ClosureViolation(format!("twist of {} left the set", m.label)))?;
            *expected.entry(mp.members()[idx].label.clone()).or_insert(0) += 1;
            parts.push(t);
        }
        let dim: usize = parts.iter().map(PModule::dim).sum();
        if dim > KRULL_SCHMIDT_MAX_DIM {
            continue;
        }
        let refs: Vec<&PModule> = parts.iter().collect();
        let sum = PModule::direct_sum(g, &refs)?;
        let (t, t_inv) = random_invertible(g, dim, &mut rng);
        out.push((sum.conjugate(&t, &t_inv), expected));
    }
    Ok(out)
}

/// Decompositions under distinct seeds agree with each other and with the
/// summands each corpus module was built from.
pub fn krull_schmidt(g: ElemAbelianGroup, seed: u64, opts: &BuildOptions) -> Result<SuiteReport> {
    let mp = build_np(g, opts)?;
    let corpus = krull_schmidt_corpus(&mp, seed)?;
    let results = corpus
        .into_iter()
        .enumerate()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(i, (n, expected))| {
            let runs =
                (0..KRULL_SCHMIDT_SEEDS).map(|k| decompose(&n, seed.wrapping_mul(31).wrapping_add(k))).collect::<Result<Vec<_>>>()?;
            for run in &runs[1..] {
                if !same_multiset(&runs[0], run)? {
                    return Ok(Some(format!("corpus module {i}: decompositions disagree between seeds")));
                }
            }
            let mut found = BTreeMap::new();
            for class in &runs[0].summands {
                let idx =
                    mp.find(&class.module)?.ok_or_else(|| Error::ClosureViolation(format!("corpus module {i} has a foreign summand")))?;
                *found.entry(mp.members()[idx].label.clone()).or_insert(0) += class.multiplicity;
            }
            Ok((found != expected).then(|| format!("corpus module {i}: found {found:?}, built from {expected:?}")))
        })
        .collect();
    let mut report = SuiteReport::new(Suite::KrullSchmidt, g, seed);
    report.absorb(results)?;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Prime;

    fn group(p: u8, r: usize) -> ElemAbelianGroup {
        ElemAbelianGroup::new(Prime::new(p).unwrap(), r)
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("lemma44".parse::<Suite>().is_err());
    }

    #[test]
    fn all_suites_pass_on_small_groups() {
        let opts = BuildOptions::default();
        for (p, r) in [(2, 1), (3, 1), (2, 2)] {
            for s in Suite::ALL {
                let rep = run_suite(s, group(p, r), 7, &opts).unwrap();
                assert!(rep.passed(), "{s} at ({p},{r}): {:?}", rep.failures);
                assert!(rep.checks > 0);
            }
        }
    }

    #[test]
    fn lemma43_counts_trials() {
        let rep = lemma43(group(2, 2), 7, 100, &BuildOptions::default()).unwrap();
        assert_eq!((rep.checks, rep.passes()), (100, 100));
    }

    #[test]
    fn corpus_is_seed_stable() {
        let mp = build_np(group(2, 2), &BuildOptions::default()).unwrap();
        let a = krull_schmidt_corpus(&mp, 3).unwrap();
        let b = krull_schmidt_corpus(&mp, 3).unwrap();
        assert_eq!(a.len(), KRULL_SCHMIDT_CORPUS);
        assert!(a.iter().zip(&b).all(|(x, y)| x.0 == y.0 && x.1 == y.1));
    }
}
