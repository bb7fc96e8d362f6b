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

//! Order-preserving parameter sweeps.
//!
//! Each item is evaluated independently, so results do not depend on the
//! number of workers. With the `parallel` feature the work is spread over a
//! dedicated rayon pool; without it everything runs on the calling thread.

use std::time::{Duration, Instant};

/// Outcome of one sweep point.
#[derive(Debug, Clone)]
pub struct SweepItem<R> {
    pub index: usize,
    pub result: R,
    pub elapsed: Duration,
}

fn timed<T, R>(index: usize, item: &T, eval: &(impl Fn(&T) -> R + Sync)) -> SweepItem<R> {
    let start = Instant::now();
    let result = eval(item);
    SweepItem {
        index,
        result,
        elapsed: start.elapsed(),
    }
}

/// Evaluates every item on the calling thread.
pub fn sweep_sequential<T, R, F>(items: &[T], eval: F) -> Vec<SweepItem<R>>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync,
{
    items
        .iter()
        .enumerate()
        .map(|(i, t)| timed(i, t, &eval))
        .collect()
}

/// Evaluates every item on `workers` threads, returning results in input order.
///
/// `workers == 0` uses the rayon default. Without the `parallel` feature
/// this is [`sweep_sequential`].
#[cfg(feature = "parallel")]
pub fn sweep<T, R, F>(items: &[T], eval: F, workers: usize) -> Vec<SweepItem<R>>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    if workers == 1 {
        return sweep_sequential(items, eval);
    }
    let run = || {
        items
            .par_iter()
            .enumerate()
            .map(|(i, t)| timed(i, t, &eval))
            .collect()
    };
    match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
        Ok(pool) => pool.install(run),
        Err(_) => run(),
    }
}

#[cfg(not(feature = "parallel"))]
pub fn sweep<T, R, F>(items: &[T], eval: F, _workers: usize) -> Vec<SweepItem<R>>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    sweep_sequential(items, eval)
}

/// Number of hardware threads visible to the process.
pub fn available_workers() -> usize {
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
}
