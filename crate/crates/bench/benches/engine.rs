use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use loopsplit_core::homology::{bockstein_homology, subalgebra_generated};
use loopsplit_core::lie::CmnModel;
use loopsplit_core::tensor::{Echelon, Field};
use loopsplit_core::{Derivation, PrimeConfig, TensorAlgebra};

fn tensor_mul(c: &mut Criterion) {
    let cfg = PrimeConfig::new(3, 1, 1, 16).unwrap();
    let t = TensorAlgebra::uv(&cfg, 16).unwrap();
    let u = t.generator(0).unwrap();
    let v = t.generator(1).unwrap();
    let a = t
        .add(&t.mul(&u, &v).unwrap(), &t.mul(&v, &u).unwrap())
        .unwrap();
    let b = (0..3).fold(a.clone(), |acc, _| t.mul(&acc, &a).unwrap());
    c.bench_function("tensor commutator deg 12 x deg 3", |bch| {
        bch.iter(|| t.commutator(&b, &a).unwrap())
    });
}

fn echelon(c: &mut Criterion) {
    let field = Field::new(7).unwrap();
    let mut seed = 0x2545_f491_u64;
    let rows: Vec<Vec<u8>> = (0..120)
        .map(|_| {
            (0..160)
                .map(|_| {
                    seed ^= seed << 13;
                    seed ^= seed >> 7;
                    seed ^= seed << 17;
                    (seed % 7) as u8
                })
                .collect()
        })
        .collect();
    c.bench_function("echelon 120x160 over F_7", |bch| {
        bch.iter_batched(
            || rows.clone(),
            |r| Echelon::from_rows(&field, 160, r),
            BatchSize::SmallInput,
        )
    });
}

fn pipeline(c: &mut Criterion) {
    let cfg = PrimeConfig::new(3, 1, 1, 12).unwrap();
    let mut g = c.benchmark_group("pipeline D=12");
    g.sample_size(10);
    g.bench_function("filtration", |bch| {
        bch.iter(|| CmnModel::build(&cfg, 13).unwrap())
    });
    let model = CmnModel::build(&cfg, 13).unwrap();
    g.bench_function("enveloping L(0)", |bch| {
        bch.iter(|| subalgebra_generated(model.l0(), "L(0)").unwrap())
    });
    let u0 = subalgebra_generated(model.l0(), "L(0)").unwrap().0;
    let beta = Derivation::bockstein(&model.algebra).unwrap();
    g.bench_function("homology U(L(0))", |bch| {
        bch.iter(|| bockstein_homology(&u0, &beta).unwrap())
    });
    g.finish();
}

criterion_group!(benches, tensor_mul, echelon, pipeline);
criterion_main!(benches);
