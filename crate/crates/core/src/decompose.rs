//! Endomorphism algebras, Krull–Schmidt decomposition and isomorphism tests.
//!
//! The splitting engine works on any representation given by action matrices
//! together with a basis of its endomorphism algebra, so the same code serves
//! kP-modules (endomorphisms from the commutant) and kG-modules (endomorphisms
//! supplied by the caller).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::MatrixAlgebra;
use crate::error::{Error, Result};
use crate::field::Prime;
use crate::matrix::{FpMatrix, Quotient};
use crate::module::{hom_solve, ModulePayload, PModule};
use crate::poly::{coprime_split, minimal_polynomial, SplitOutcome};

/// Exhaustive search over End/rad is used when it has at most this many elements.
const ENUMERATION_LIMIT: u64 = 65_536;

/// Endomorphism algebra of a nonzero module, as the commutant of its actions.
pub fn end_algebra(n: &PModule) -> Result<MatrixAlgebra> {
    if n.is_zero() {
        return Err(Error::ZeroModule("end_algebra"));
    }
    commutant(n.prime(), n.dim(), n.actions())
}

fn commutant(p: Prime, dim: usize, actions: &[FpMatrix]) -> Result<MatrixAlgebra> {
    let h = hom_solve(p, actions, actions, dim, dim);
    let basis = (0..h.rows()).map(|r| FpMatrix::unflatten(p, dim, dim, h.row(r))).collect();
    MatrixAlgebra::from_basis(p, dim, basis)
}

/// Jacobson radical of a matrix algebra, as matrices.
pub fn algebra_radical(a: &MatrixAlgebra) -> Result<Vec<FpMatrix>> {
    a.radical()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IndecomposabilityWitness {
    pub end_dim: usize,
    pub residue_dim: usize,
}

impl IndecomposabilityWitness {
    pub fn is_absolutely_indecomposable(&self) -> bool {
        self.residue_dim == 1
    }
}

fn witness_of(alg: &MatrixAlgebra) -> Result<IndecomposabilityWitness> {
    let j = alg.radical_coords()?;
    Ok(IndecomposabilityWitness { end_dim: alg.dim(), residue_dim: alg.dim() - j.rows() })
}

/// Whether End(n)/rad End(n) is one-dimensional, with the two dimensions.
pub fn is_indecomposable(n: &PModule) -> Result<(bool, IndecomposabilityWitness)> {
    let w = witness_of(&end_algebra(n)?)?;
    Ok((w.is_absolutely_indecomposable(), w))
}

/// One indecomposable summand found by the splitting engine, with maps
/// `projection * inclusion = I` into and out of the input representation.
#[derive(Clone, Debug)]
pub struct Piece {
    pub actions: Vec<FpMatrix>,
    pub inclusion: FpMatrix,
    pub projection: FpMatrix,
    pub end_basis: Vec<FpMatrix>,
    pub witness: IndecomposabilityWitness,
}

impl Piece {
    pub fn dim(&self) -> usize {
        self.inclusion.cols()
    }
}

struct Work {
    actions: Vec<FpMatrix>,
    inclusion: FpMatrix,
    projection: FpMatrix,
    end_basis: Option<Vec<FpMatrix>>,
}

/// Splits a representation into indecomposable pieces.
///
/// `end_basis`, when given, must span the endomorphism algebra; otherwise it is
/// computed as the commutant of the actions. Pieces whose endomorphism algebra
/// is local with residue field larger than F_p are returned as leaves with
/// `residue_dim > 1`; callers decide whether that is acceptable.
pub fn split_representation<R: Rng + ?Sized>(
    p: Prime,
    dim: usize,
    actions: &[FpMatrix],
    end_basis: Option<Vec<FpMatrix>>,
    rng: &mut R,
) -> Result<Vec<Piece>> {
    let id = FpMatrix::identity(p, dim);
    let mut stack = Vec::new();
    for block in coordinate_blocks(dim, actions) {
        let inc = id.select_cols(&block);
        let proj = id.select_rows(&block);
        stack.push(restrict_work(p, actions, &inc, &proj, end_basis.as_deref(), &inc, &proj));
    }
    let mut out = Vec::new();
    while let Some(w) = stack.pop() {
        let n = w.inclusion.cols();
        if n == 0 {
            continue;
        }
        let alg = match w.end_basis {
            Some(b) => MatrixAlgebra::from_span(p, n, &b)?,
            None => commutant(p, n, &w.actions)?,
        };
        let j = alg.radical_coords()?;
        let witness = IndecomposabilityWitness { end_dim: alg.dim(), residue_dim: alg.dim() - j.rows() };
        if witness.residue_dim == 1 {
            out.push(Piece {
                actions: w.actions,
                inclusion: w.inclusion,
                projection: w.projection,
                end_basis: alg.basis().to_vec(),
                witness,
            });
            continue;
        }
        match find_split(&alg, &j, witness.residue_dim, rng)? {
            None => out.push(Piece {
                actions: w.actions,
                inclusion: w.inclusion,
                projection: w.projection,
                end_basis: alg.basis().to_vec(),
                witness,
            }),
            Some(b) => {
                let ker = b.kernel_basis();
                let img = b.image_basis();
                debug_assert_eq!(ker.rows() + img.rows(), n);
                let t = ker.vstack(&img).transpose();
                let t_inv = t.inverse()?;
                let k = ker.rows();
                let parts = [(0..k).collect::<Vec<_>>(), (k..n).collect::<Vec<_>>()];
                for idx in parts {
                    let inc = t.select_cols(&idx);
                    let proj = t_inv.select_rows(&idx);
                    stack.push(restrict_work(
                        p,
                        &w.actions,
                        &inc,
                        &proj,
                        Some(alg.basis()),
                        &w.inclusion.mul(&inc),
                        &proj.mul(&w.projection),
                    ));
                }
            }
        }
    }
    Ok(out)
}

fn restrict_work(
    p: Prime,
    actions: &[FpMatrix],
    inc: &FpMatrix,
    proj: &FpMatrix,
    end_basis: Option<&[FpMatrix]>,
    total_inc: &FpMatrix,
    total_proj: &FpMatrix,
) -> Work {
    let k = inc.cols();
    let end_basis = end_basis.map(|b| {
        let flat: Vec<Vec<u8>> = b.iter().map(|e| proj.mul(e).mul(inc).flatten()).collect();
        let span = FpMatrix::from_row_vectors(p, k * k, &flat).row_space();
        (0..span.rows()).map(|r| FpMatrix::unflatten(p, k, k, span.row(r))).collect()
    });
    Work {
        actions: actions.iter().map(|x| proj.mul(x).mul(inc)).collect(),
        inclusion: total_inc.clone(),
        projection: total_proj.clone(),
        end_basis,
    }
}

/// Connected components of the coordinate graph with an edge wherever some
/// action has a nonzero entry; each component spans a direct summand.
fn coordinate_blocks(dim: usize, actions: &[FpMatrix]) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..dim).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for a in actions {
        for r in 0..dim {
            for c in 0..dim {
                if r != c && a.get(r, c) != 0 {
                    let (x, y) = (find(&mut parent, r), find(&mut parent, c));
                    if x != y {
                        parent[x] = y;
                    }
                }
            }
        }
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut index_of_root = vec![usize::MAX; dim];
    for i in 0..dim {
        let root = find(&mut parent, i);
        if index_of_root[root] == usize::MAX {
            index_of_root[root] = blocks.len();
            blocks.push(Vec::new());
        }
        blocks[index_of_root[root]].push(i);
    }
    blocks
}

/// Looks for an endomorphism `b` with `V = ker b ⊕ im b` nontrivially.
/// Returns `None` when the algebra is shown to be local.
fn find_split<R: Rng + ?Sized>(alg: &MatrixAlgebra, j: &FpMatrix, residue_dim: usize, rng: &mut R) -> Result<Option<FpMatrix>> {
    let p = alg.prime();
    let n = alg.ambient_dim();
    let q = p.get();
    let budget = 20 * n.max(1);
    for _ in 0..budget {
        let coeffs: Vec<u8> = (0..alg.dim()).map(|_| rng.gen_range(0..q)).collect();
        match try_element(&alg.element(&coeffs), rng) {
            Attempt::Split(b) => return Ok(Some(b)),
            Attempt::Primary(d) if d == residue_dim => return Ok(None),
            Attempt::Primary(_) => {}
        }
    }
    // deterministic sweep over End/rad
    let size = (q as u64).checked_pow(residue_dim as u32).unwrap_or(u64::MAX);
    if size > ENUMERATION_LIMIT {
        return Err(Error::DecompositionStalled { attempts: budget });
    }
    let comp = Quotient::new(j).complement_coordinates().to_vec();
    for idx in 1..size {
        let mut coeffs = vec![0u8; alg.dim()];
        let mut rest = idx;
        for &c in &comp {
            coeffs[c] = (rest % q as u64) as u8;
            rest /= q as u64;
        }
        if let Attempt::Split(b) = try_element(&alg.element(&coeffs), rng) {
            return Ok(Some(b));
        }
    }
    Ok(None)
}

enum Attempt {
    Split(FpMatrix),
    Primary(usize),
}

fn try_element<R: Rng + ?Sized>(a: &FpMatrix, rng: &mut R) -> Attempt {
    let p = a.prime();
    let n = a.rows();
    let mut power = FpMatrix::identity(p, n);
    let mut last = 0usize;
    let m = minimal_polynomial(p, n, |k| {
        while last < k {
            power = power.mul(a);
            last += 1;
        }
        power.flatten()
    });
    if m.degree() == 0 {
        return Attempt::Primary(0);
    }
    match coprime_split(&m, rng) {
        SplitOutcome::Split(f, _) => Attempt::Split(f.eval_matrix(a)),
        SplitOutcome::Primary(d) => Attempt::Primary(d),
    }
}

/// Isomorphism-invariant summary used to pre-filter isomorphism tests and to
/// order modules canonically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Fingerprint {
    pub dim: usize,
    pub loewy_length: usize,
    pub radical_layers: Vec<usize>,
    pub socle_layers: Vec<usize>,
    pub end_dim: usize,
}

pub fn fingerprint(n: &PModule) -> Fingerprint {
    let end_dim = if n.is_zero() { 0 } else { hom_solve(n.prime(), n.actions(), n.actions(), n.dim(), n.dim()).rows() };
    Fingerprint {
        dim: n.dim(),
        loewy_length: n.loewy_length(),
        radical_layers: n.radical_layer_dims(),
        socle_layers: n.socle_layer_dims(),
        end_dim,
    }
}

/// A class of isomorphic summands.
#[derive(Clone, Debug)]
pub struct SummandClass {
    pub module: PModule,
    pub multiplicity: usize,
    pub fingerprint: Fingerprint,
    pub witness: IndecomposabilityWitness,
}

#[derive(Clone, Debug, Default)]
pub struct DecompositionResult {
    pub summands: Vec<SummandClass>,
}

impl DecompositionResult {
    pub fn total_dim(&self) -> usize {
        self.summands.iter().map(|s| s.multiplicity * s.module.dim()).sum()
    }

    pub fn summand_count(&self) -> usize {
        self.summands.iter().map(|s| s.multiplicity).sum()
    }

    pub fn to_payload(&self) -> Vec<SummandPayload> {
        self.summands
            .iter()
            .map(|s| SummandPayload { fingerprint: s.fingerprint.clone(), multiplicity: s.multiplicity, module: s.module.to_payload() })
            .collect()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SummandPayload {
    pub fingerprint: Fingerprint,
    pub multiplicity: usize,
    pub module: ModulePayload,
}

/// Indecomposable summands of a kP-module with their inclusion and projection
/// maps; fails if some summand is not absolutely indecomposable.
pub fn decompose_pieces(n: &PModule, seed: u64) -> Result<Vec<(PModule, Piece)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pieces = split_representation(n.prime(), n.dim(), n.actions(), None, &mut rng)?;
    pieces
        .into_iter()
        .map(|piece| {
            if piece.witness.residue_dim != 1 {
                return Err(Error::NotAbsolutelyIndecomposable { residue_dim: piece.witness.residue_dim });
            }
            let m = PModule::from_parts(n.group(), piece.dim(), piece.actions.clone());
            Ok((m, piece))
        })
        .collect()
}

/// Krull–Schmidt decomposition, grouped into isomorphism classes ordered by
/// fingerprint.
pub fn decompose(n: &PModule, seed: u64) -> Result<DecompositionResult> {
    let pieces = decompose_pieces(n, seed)?;
    let mut classes: Vec<SummandClass> = Vec::new();
    for (m, piece) in pieces {
        let fp = fingerprint(&m);
        let mut found = false;
        for class in classes.iter_mut() {
            if class.fingerprint == fp && isomorphic_indecomposables(&class.module, &m)? {
                class.multiplicity += 1;
                found = true;
                break;
            }
        }
        if !found {
            classes.push(SummandClass { module: m, multiplicity: 1, fingerprint: fp, witness: piece.witness });
        }
    }
    classes.sort_by(|a, b| a.fingerprint.cmp(&b.fingerprint));
    Ok(DecompositionResult { summands: classes })
}

/// Isomorphism test for two indecomposable modules: some composite of basis
/// homomorphisms `n -> m -> n` is invertible.
pub fn isomorphic_indecomposables(n: &PModule, m: &PModule) -> Result<bool> {
    if n.group() != m.group() {
        return Err(Error::GroupMismatch("isomorphism test across groups".into()));
    }
    if n.dim() != m.dim() {
        return Ok(false);
    }
    if n.dim() == 0 {
        return Ok(true);
    }
    if n.radical_layer_dims() != m.radical_layer_dims() || n.socle_layer_dims() != m.socle_layer_dims() {
        return Ok(false);
    }
    let there = n.hom_basis(m)?;
    if there.is_empty() {
        return Ok(false);
    }
    let back = m.hom_basis(n)?;
    Ok(there.iter().any(|f| f.is_invertible()) || there.iter().any(|f| back.iter().any(|g| g.mul(f).is_invertible())))
}

/// Isomorphism of arbitrary modules, by matching indecomposable summands.
pub fn are_isomorphic(n: &PModule, m: &PModule) -> Result<bool> {
    if n.group() != m.group() {
        return Err(Error::GroupMismatch("isomorphism test across groups".into()));
    }
    if n.dim() != m.dim() {
        return Ok(false);
    }
    let a = decompose(n, 0)?;
    let b = decompose(m, 0)?;
    same_multiset(&a, &b)
}

/// Whether two decompositions agree up to isomorphism of summands.
pub fn same_multiset(a: &DecompositionResult, b: &DecompositionResult) -> Result<bool> {
    if a.summands.len() != b.summands.len() {
        return Ok(false);
    }
    let mut used = vec![false; b.summands.len()];
    for s in &a.summands {
        let mut matched = false;
        for (i, t) in b.summands.iter().enumerate() {
            if !used[i]
                && s.multiplicity == t.multiplicity
                && s.fingerprint == t.fingerprint
                && isomorphic_indecomposables(&s.module, &t.module)?
            {
                used[i] = true;
                matched = true;
                break;
            }
        }
        if !matched {
            return Ok(false);
        }
    }
    Ok(true)
}
