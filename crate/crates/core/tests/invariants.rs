use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use repdim_core::decompose::{are_isomorphic, decompose, fingerprint, is_indecomposable};
use repdim_core::genset::{build_np, BuildOptions, ModuleSet};
use repdim_core::module::PModule;
use repdim_core::pgroup::{gl_elements, AutTwist, ElemAbelianGroup};
use repdim_core::{FpMatrix, Prime};

fn set(p: u8, r: usize) -> ModuleSet {
    build_np(ElemAbelianGroup::new(Prime::new(p).unwrap(), r), &BuildOptions::default()).unwrap()
}

fn random_invertible(p: Prime, n: usize, seed: u64) -> (FpMatrix, FpMatrix) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let t = FpMatrix::random(p, n, n, &mut rng);
        if let Ok(inv) = t.inverse() {
            return (t, inv);
        }
    }
}

fn grid_point() -> impl Strategy<Value = (u8, usize)> {
    prop_oneof![Just((2u8, 2usize)), Just((3, 1)), Just((3, 2)), Just((2, 3))]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn twists_compose((p, r) in grid_point(), i in any::<prop::sample::Index>(), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let s = set(p, r);
        let n = &s.members()[i.index(s.len())].module;
        let gl = gl_elements(Prime::new(p).unwrap(), r);
        let (ma, mb) = (&gl[a.index(gl.len())], &gl[b.index(gl.len())]);
        let ta = AutTwist::new(ma.clone()).unwrap();
        let tb = AutTwist::new(mb.clone()).unwrap();
        let tab = AutTwist::new(ma.mul(mb)).unwrap();
        prop_assert_eq!(n.twist(&ta).unwrap().twist(&tb).unwrap(), n.twist(&tab).unwrap());
    }

    #[test]
    fn decomposition_recovers_disguised_sums((p, r) in grid_point(), picks in prop::collection::vec(any::<prop::sample::Index>(), 1..4), seed in any::<u64>()) {
        let s = set(p, r);
        let parts: Vec<&PModule> = picks.iter().map(|i| &s.members()[i.index(s.len())].module).collect();
        let sum = PModule::direct_sum(s.group(), &parts).unwrap();
        prop_assume!(sum.dim() <= 40);
        let (t, t_inv) = random_invertible(s.group().p, sum.dim(), seed);
        let n = sum.conjugate(&t, &t_inv);
        let d = decompose(&n, seed).unwrap();
        prop_assert_eq!(d.total_dim(), n.dim());
        prop_assert_eq!(d.summand_count(), parts.len());
        for c in &d.summands {
            prop_assert!(is_indecomposable(&c.module).unwrap().0);
            prop_assert!(s.find(&c.module).unwrap().is_some());
        }
    }

    #[test]
    fn isomorphism_is_symmetric_and_respects_fingerprints((p, r) in grid_point(), i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>(), seed in any::<u64>()) {
        let s = set(p, r);
        let x = &s.members()[i.index(s.len())].module;
        let y = &s.members()[j.index(s.len())].module;
        let (t, t_inv) = random_invertible(s.group().p, y.dim(), seed);
        let y2 = y.conjugate(&t, &t_inv);
        prop_assert!(are_isomorphic(y, &y2).unwrap());
        prop_assert_eq!(fingerprint(y), fingerprint(&y2));
        let xy = are_isomorphic(x, &y2).unwrap();
        prop_assert_eq!(xy, are_isomorphic(&y2, x).unwrap());
        prop_assert_eq!(xy, i.index(s.len()) == j.index(s.len()));
        if fingerprint(x) != fingerprint(y) {
            prop_assert!(!xy);
        }
    }

    #[test]
    fn radical_truncations((p, r) in grid_point(), i in any::<prop::sample::Index>(), m in 0i64..8) {
        let s = set(p, r);
        let n = &s.members()[i.index(s.len())].module;
        let ll = n.loewy_length();
        let q = n.quotient_by_radical_power(m);
        prop_assert_eq!(q.loewy_length(), (m.max(0) as usize).min(ll));
        let dims: Vec<usize> = (0..=ll as i64).map(|k| n.radical_power_subspace(k).rows()).collect();
        prop_assert!(dims.windows(2).all(|w| w[0] > w[1]));
        prop_assert_eq!(dims[ll], 0);
        prop_assert_eq!(q.dim(), n.dim() - n.radical_power_subspace(m.max(0)).rows());
    }

    #[test]
    fn index_p_induction((p, r) in grid_point(), h in any::<prop::sample::Index>(), i in any::<prop::sample::Index>()) {
        let g = ElemAbelianGroup::new(Prime::new(p).unwrap(), r);
        let hyper = g.hyperplanes();
        let hsub = &hyper[h.index(hyper.len())];
        let sh = set(p, r - 1);
        let x = &sh.members()[i.index(sh.len())].module;
        let up = x.induce_general(hsub).unwrap();
        prop_assert_eq!(up.dim(), x.dim() * p as usize);
        prop_assert_eq!(up.loewy_length(), x.loewy_length() + p as usize - 1);
        // X is a summand of its induced module restricted back
        let down = up.restrict(hsub).unwrap();
        let d = decompose(&down, 1).unwrap();
        let mut found = false;
        for c in &d.summands {
            found |= are_isomorphic(&c.module, x).unwrap();
        }
        prop_assert!(found);
    }

    #[test]
    fn rank_nullity(rows in 1usize..9, cols in 1usize..9, p in prop_oneof![Just(2u8), Just(3), Just(5), Just(7)], seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = FpMatrix::random(Prime::new(p).unwrap(), rows, cols, &mut rng);
        let k = a.kernel_basis();
        prop_assert_eq!(a.rank() + k.rows(), cols);
        prop_assert!(a.mul(&k.transpose()).is_zero());
        if let Ok(inv) = a.inverse() {
            prop_assert!(a.mul(&inv).is_identity());
        }
    }
}
