use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use ncsym::corpus::random_field;
use ncsym::diffops::{default_test_space, OperatorSystem};
use ncsym::jacobian::{run_batch, JcSpec};
use ncsym::nsym::{verify_identity, FamilyKind, FamilyTable, IdentityId};
use ncsym::par::Exec;

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn identities(c: &mut Criterion) {
    let mut group = c.benchmark_group("identities_weight_6");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| {
                let table = FamilyTable::new(6);
                IdentityId::ALL
                    .iter()
                    .all(|id| verify_identity(&table, *id, exec).unwrap().passed())
            })
        });
    }
    group.finish();
}

fn word_tables(c: &mut Criterion) {
    let h = random_field(2, 3, 7).unwrap();
    let mut group = c.benchmark_group("lambda_word_table_t6");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| {
                let sys = OperatorSystem::with_exec(h.clone(), 6, exec).unwrap();
                sys.word_table(FamilyKind::Lambda, 6, &sys.coordinates()).unwrap().len()
            })
        });
    }
    group.finish();
}

fn axioms(c: &mut Criterion) {
    let h = random_field(2, 2, 3).unwrap();
    let tests = default_test_space(2);
    let mut group = c.benchmark_group("operator_axioms_t6");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| {
                let sys = OperatorSystem::with_exec(h.clone(), 6, exec).unwrap();
                sys.check_axioms(&tests).unwrap().all()
            })
        });
    }
    group.finish();
}

fn jc_batch(c: &mut Criterion) {
    let specs: Vec<JcSpec> = (0..8).map(|seed| JcSpec::Generate { n: 3, d: 2, seed }).collect();
    let mut group = c.benchmark_group("jc_batch_8");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| run_batch(&specs, 8, exec).unwrap().len()));
    }
    group.finish();
}

criterion_group!(benches, identities, word_tables, axioms, jc_batch);
criterion_main!(benches);
