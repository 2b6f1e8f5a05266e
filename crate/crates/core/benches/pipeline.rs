use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use repdim_core::basic::GeneratorChoice;
use repdim_core::genset::{build_mp_closure, build_np, BuildOptions, ModuleSet};
use repdim_core::pgroup::ElemAbelianGroup;
use repdim_core::qh::BasicEndoAlgebra;
use repdim_core::Prime;

fn grp(p: u8, r: usize) -> ElemAbelianGroup {
    ElemAbelianGroup::new(Prime::new(p).unwrap(), r)
}

/// Runs `f` on a pool of the given size; `None` means rayon's default.
#[cfg(feature = "parallel")]
fn on_pool<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        b = b.num_threads(n);
    }
    b.build().unwrap().install(f)
}

#[cfg(not(feature = "parallel"))]
fn on_pool<T: Send>(_threads: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    f()
}

fn modes() -> Vec<(&'static str, Option<usize>)> {
    if cfg!(feature = "parallel") {
        vec![("sequential", Some(1)), ("parallel", None)]
    } else {
        vec![("sequential", Some(1))]
    }
}

fn closure(c: &mut Criterion) {
    let mut g = c.benchmark_group("closure");
    g.sample_size(10);
    for (name, threads) in modes() {
        g.bench_function(BenchmarkId::new(name, "p3 r2"), |b| {
            b.iter(|| on_pool(threads, || build_mp_closure(grp(3, 2), &BuildOptions::default()).unwrap()))
        });
    }
    g.finish();
}

fn endomorphism_algebra(c: &mut Criterion) {
    let set: ModuleSet = build_np(grp(2, 3), &BuildOptions::default()).unwrap();
    let mut g = c.benchmark_group("hom_and_composition");
    g.sample_size(10);
    for (name, threads) in modes() {
        g.bench_function(BenchmarkId::new(name, "p2 r3"), |b| b.iter(|| on_pool(threads, || BasicEndoAlgebra::build(&set).unwrap())));
    }
    g.finish();
}

fn projective_dimensions(c: &mut Criterion) {
    let set = build_np(grp(3, 2), &BuildOptions::default()).unwrap();
    let alg = BasicEndoAlgebra::build(&set).unwrap();
    let mut g = c.benchmark_group("projective_dimensions");
    g.sample_size(10);
    for (name, threads) in modes() {
        g.bench_function(BenchmarkId::new(name, "p3 r2"), |b| {
            b.iter(|| on_pool(threads, || alg.projective_dimensions(GeneratorChoice::Canonical).unwrap()))
        });
    }
    g.finish();
}

criterion_group!(benches, closure, endomorphism_algebra, projective_dimensions);
criterion_main!(benches);
