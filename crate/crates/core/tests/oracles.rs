use repdim_core::bridge::{group_algebra_loewy_length, kg_endo_algebra, repdim_bound_g, SylowEmbedding};
use repdim_core::genset::{build_np, layer_partition, BuildOptions};
use repdim_core::module::PModule;
use repdim_core::perm::{Perm, PermGroup};
use repdim_core::pgroup::ElemAbelianGroup;
use repdim_core::qh::bound_report;
use repdim_core::{FpMatrix, Prime};

fn two() -> Prime {
    Prime::new(2).unwrap()
}

fn perm(s: &str, n: usize) -> Perm {
    Perm::parse(s, n).unwrap()
}

fn group(n: usize, gens: &[&str]) -> PermGroup {
    PermGroup::enumerate(n, gens.iter().map(|g| perm(g, n)).collect(), 1000).unwrap()
}

/// Every F_2 matrix of the given shape.
fn all_matrices(rows: usize, cols: usize) -> impl Iterator<Item = FpMatrix> {
    let n = rows * cols;
    (0u64..1 << n).map(move |bits| FpMatrix::from_data(two(), rows, cols, (0..n).map(|k| (bits >> k & 1) as u8).collect()))
}

fn intertwines(f: &FpMatrix, a: &[FpMatrix], b: &[FpMatrix]) -> bool {
    a.iter().zip(b).all(|(x, y)| f.mul(x) == y.mul(f))
}

#[test]
fn hom_dimensions_match_brute_force() {
    let s = build_np(ElemAbelianGroup::new(two(), 2), &BuildOptions::default()).unwrap();
    for x in s.modules() {
        for y in s.modules() {
            let count = all_matrices(y.dim(), x.dim()).filter(|f| intertwines(f, x.actions(), y.actions())).count();
            let dim = x.hom_basis(y).unwrap().len();
            assert_eq!(count, 1 << dim, "dims {} -> {}", x.dim(), y.dim());
        }
    }
}

#[test]
fn induced_trivial_module_is_the_permutation_module() {
    let g = group(3, &["(1 2)", "(1 2 3)"]);
    let e = SylowEmbedding::new(g.clone(), two(), vec![perm("(1 2)", 3)]).unwrap();
    let up = e.induce_to_g(&PModule::trivial(e.sylow())).unwrap();
    let natural: Vec<FpMatrix> = g
        .generators()
        .iter()
        .map(|h| {
            let mut m = FpMatrix::zeros(two(), 3, 3);
            for x in 0..3 {
                m.set(h.image(x), x, 1);
            }
            m
        })
        .collect();
    let iso = all_matrices(3, 3).find(|f| f.is_invertible() && intertwines(f, &up.generators, &natural));
    assert!(iso.is_some());
}

#[test]
fn group_algebra_radical_matches_augmentation_powers_for_p_groups() {
    let three = Prime::new(3).unwrap();
    let c3xc3 = group(6, &["(1 2 3)", "(4 5 6)"]);
    let ll = PModule::regular(ElemAbelianGroup::new(three, 2)).unwrap().loewy_length();
    assert_eq!(group_algebra_loewy_length(&c3xc3, three).unwrap(), ll);
    let v4 = group(4, &["(1 2)(3 4)", "(1 3)(2 4)"]);
    let ll = PModule::regular(ElemAbelianGroup::new(two(), 2)).unwrap().loewy_length();
    assert_eq!(group_algebra_loewy_length(&v4, two()).unwrap(), ll);
}

#[test]
fn loewy_length_of_a_semisimple_group_algebra() {
    // |S3| = 6 is prime to 5
    let s3 = group(3, &["(1 2)", "(1 2 3)"]);
    assert_eq!(group_algebra_loewy_length(&s3, Prime::new(5).unwrap()).unwrap(), 1);
}

#[test]
fn trivial_index_reproduces_the_p_group_computation() {
    let v4 = group(4, &["(1 2)(3 4)", "(1 3)(2 4)"]);
    let e = SylowEmbedding::new(v4, two(), vec![perm("(1 2)(3 4)", 4), perm("(1 3)(2 4)", 4)]).unwrap();
    assert_eq!(e.index(), 1);
    assert_eq!(e.double_cosets().len(), 1);
    let set = build_np(e.sylow(), &BuildOptions::default()).unwrap();
    for m in set.modules() {
        assert_eq!(&e.induce_restrict(m).unwrap(), m);
    }
    let kg = kg_endo_algebra(&e, &set, 1).unwrap();
    assert_eq!(kg.multiplicities, vec![1; set.len()]);
    let (kp, _) = bound_report(&set, &layer_partition(&set).unwrap()).unwrap();
    let r = repdim_bound_g(&e, &BuildOptions::default()).unwrap();
    assert_eq!(r.gldim_kg, kp.gldim);
    assert_eq!(kg.algebra.dim(), kp.algebra_dim);
}

#[test]
fn induced_dimensions() {
    let a4 = group(4, &["(1 2 3)", "(1 2)(3 4)"]);
    let e = SylowEmbedding::new(a4, two(), vec![perm("(1 2)(3 4)", 4), perm("(1 3)(2 4)", 4)]).unwrap();
    let set = build_np(e.sylow(), &BuildOptions::default()).unwrap();
    let total: usize = set.modules().map(PModule::dim).sum();
    assert_eq!(total, 14);
    let sum = PModule::direct_sum(e.sylow(), &set.modules().collect::<Vec<_>>()).unwrap();
    let up = e.induce_to_g(&sum).unwrap();
    assert_eq!(up.dim, 42);
    up.verify(e.group()).unwrap();
}

#[test]
fn invalid_embeddings_are_rejected() {
    let a4 = group(4, &["(1 2 3)", "(1 2)(3 4)"]);
    assert!(SylowEmbedding::new(a4.clone(), two(), vec![perm("(1 2)(3 4)", 4)]).is_err());
    assert!(SylowEmbedding::new(a4, Prime::new(3).unwrap(), vec![perm("(1 2)(3 4)", 4)]).is_err());
}
