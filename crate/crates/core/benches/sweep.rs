// Copyright 2026 emvisc developers
//
// Licensed under the Apache license, version 2.0 (the "license");
// you may not use this file except in compliance with the license.
// You may obtain a copy of the license at
//
//     http://www.apache.org/licenses/license-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the license is distributed on an "as is" basis,
// without warranties or conditions of any kind, either express or implied.
// See the license for the specific language governing permissions and
// limitations under the license.


//! Sequential against rayon sweeps over a distance panel.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use emvisc::force::{force_symmetric, Accuracy, Scenario};
use emvisc::spectra::{Order, Statistics};
use emvisc::sweep::{available_workers, sweep, sweep_sequential};
use std::hint::black_box;

fn panel(n: usize) -> Vec<Scenario> {
    (0..n)
        .map(|i| Scenario::reference().with_distance(2.0 * 10f64.powf(i as f64 / (n - 1) as f64)))
        .collect()
}

fn distance_sweep(c: &mut Criterion) {
    let items = panel(16);
    let acc = Accuracy::default();
    let eval = |s: &Scenario| force_symmetric(s, Statistics::Full, Order::Leading, &acc).map(|f| f.force_n);
    let mut g = c.benchmark_group("distance_sweep");
    g.sample_size(10);
    g.bench_function("sequential", |b| b.iter(|| black_box(sweep_sequential(&items, eval))));
    let mut counts = vec![2, available_workers()];
    counts.dedup();
    for w in counts {
        g.bench_with_input(BenchmarkId::new("parallel", w), &w, |b, &w| {
            b.iter(|| black_box(sweep(&items, eval, w)))
        });
    }
    g.finish();
}

criterion_group!(benches, distance_sweep);
criterion_main!(benches);
