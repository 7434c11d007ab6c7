use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Runs independent replications on a fixed-size worker pool.
///
/// Results always come back in replication order, so any reduction over them
/// is independent of the number of workers.
#[derive(Clone)]
pub struct Engine {
    pool: Arc<rayon::ThreadPool>,
}

impl std::fmt::Debug for Engine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Engine")
            .field("jobs", &self.jobs())
            .finish()
    }
}

impl Engine {
    /// `jobs = None` (or `Some(0)`) uses the available hardware parallelism.
    pub fn new(jobs: Option<usize>) -> Result<Self> {
        let jobs = match jobs {
            Some(n) if n > 0 => n,
            _ => std::thread::available_parallelism().map_or(1, |n| n.get()),
        };
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))?;
        Ok(Engine {
            pool: Arc::new(pool),
        })
    }

    pub fn sequential() -> Self {
        Self::new(Some(1)).expect("single-thread pool")
    }

    pub fn jobs(&self) -> usize {
        self.pool.current_num_threads()
    }

    pub fn map<R, F>(&self, n: u64, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(u64) -> R + Sync + Send,
    {
        self.pool
            .install(|| (0..n).into_par_iter().map(f).collect())
    }

    pub fn try_map<R, F>(&self, n: u64, f: F) -> Result<Vec<R>>
    where
        R: Send,
        F: Fn(u64) -> Result<R> + Sync + Send,
    {
        self.pool
            .install(|| (0..n).into_par_iter().map(f).collect())
    }
}

impl Default for Engine {
    fn default() -> Self {
        Engine::new(None).expect("default worker pool")
    }
}
