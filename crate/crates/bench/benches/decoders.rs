use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use gfsurgery::montecarlo::DecoderChoice;
use gfsurgery_bench::decode_fixture;

fn decoders(c: &mut Criterion) {
    let mut g = c.benchmark_group("decode");
    for (n, r) in [(3, 3), (5, 5)] {
        for choice in [DecoderChoice::Modular, DecoderChoice::WholeGraph] {
            let f = decode_fixture(n, r, 3e-3, choice);
            let id = BenchmarkId::new(choice.id(), format!("rep{n} R={r}"));
            g.bench_with_input(id, &f, |b, f| {
                let mut i = 0;
                b.iter(|| {
                    i = (i + 1) % f.syndromes.len();
                    f.decoder.decode(&f.graph, &f.syndromes[i])
                });
            });
        }
    }
    g.finish();
}

criterion_group!(benches, decoders);
criterion_main!(benches);
