//! Sequential vs parallel throughput on the two batch workloads: corpus
//! verification (rational Gram products, rank, and PSD checks per
//! certificate) and the reproduction report (tree enumeration plus the
//! full lower-bound ladder per row). Run with `cargo bench`.

use std::path::PathBuf;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use msrlab::bounds::RefuteBudget;
use msrlab::cert::{load_corpus, verify_corpus, Certificate};
use msrlab::engine::batch_report;
use msrlab::exec::ExecMode;

fn corpus() -> Vec<Certificate> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    load_corpus(&dir).expect("corpus loads")
}

fn modes() -> [(&'static str, ExecMode); 2] {
    [
        ("sequential", ExecMode::Sequential),
        ("parallel", ExecMode::Parallel),
    ]
}

fn bench_verification(c: &mut Criterion) {
    let certs = corpus();
    let mut group = c.benchmark_group("verify_corpus");
    for (name, mode) in modes() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &mode, |b, &mode| {
            b.iter(|| verify_corpus(&certs, mode));
        });
    }
    group.finish();
}

fn bench_report(c: &mut Criterion) {
    let certs = corpus();
    let budget = RefuteBudget::default();
    let mut group = c.benchmark_group("batch_report");
    group.sample_size(10);
    for (name, mode) in modes() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &mode, |b, &mode| {
            b.iter(|| batch_report(&certs, &budget, mode).expect("corpus rows are well formed"));
        });
    }
    group.finish();
}

criterion_group!(benches, bench_verification, bench_report);
criterion_main!(benches);
