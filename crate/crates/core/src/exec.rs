//! A minimal fixed-size worker pool for embarrassingly parallel Monte Carlo
//! cells. Tasks are claimed from an atomic counter and results land in a
//! slot indexed by task id, so the reduction order is fixed by construction
//! and the output is byte-identical for any worker count.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

#[derive(Debug, Clone, Copy)]
pub struct Pool {
    workers: usize,
}

impl Pool {
    pub fn new(workers: usize) -> Self {
        Self {
            workers: workers.max(1),
        }
    }

    pub fn serial() -> Self {
        Self::new(1)
    }

    pub fn workers(&self) -> usize {
        self.workers
    }

    /// Evaluate `f(0..n_tasks)` across the pool; `out[i] = f(i)`.
    pub fn run<T, F>(&self, n_tasks: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync,
    {
        if self.workers == 1 || n_tasks <= 1 {
            return (0..n_tasks).map(f).collect();
        }
        let next = AtomicUsize::new(0);
        let slots: Vec<Mutex<Option<T>>> = (0..n_tasks).map(|_| Mutex::new(None)).collect();
        std::thread::scope(|scope| {
            for _ in 0..self.workers.min(n_tasks) {
                scope.spawn(|| loop {
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    if i >= n_tasks {
                        break;
                    }
                    let v = f(i);
                    *slots[i].lock().unwrap() = Some(v);
                });
            }
        });
        slots
            .into_iter()
            .map(|s| s.into_inner().unwrap().expect("every task ran"))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn results_are_indexed_not_scheduled() {
        let serial: Vec<usize> = Pool::serial().run(64, |i| i * i);
        let parallel: Vec<usize> = Pool::new(4).run(64, |i| i * i);
        assert_eq!(serial, parallel);
    }
}
