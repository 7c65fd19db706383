//! Execution policy for data-parallel sweeps.
//!
//! Every sweep in the crate maps an independent function over a list of
//! points and collects the results in order. Reductions are always done
//! sequentially over the collected vector, so the parallel and sequential
//! policies return bit-identical numbers.

/// How independent point evaluations are scheduled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    /// One point after the other on the calling thread.
    Sequential,
    /// Fan out over the rayon pool. Falls back to [`Execution::Sequential`]
    /// when the crate is built without the `parallel` feature.
    #[default]
    Parallel,
}

impl Execution {
    /// True when this policy actually runs on more than one thread.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }

    /// Map `f` over `items`, preserving order.
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Execution::Parallel {
            use rayon::prelude::*;
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }

    /// Map a fallible `f` over `items`; the first error (in item order) wins.
    pub fn try_map<T, R, E, F>(self, items: &[T], f: F) -> Result<Vec<R>, E>
    where
        T: Sync,
        R: Send,
        E: Send,
        F: Fn(&T) -> Result<R, E> + Sync + Send,
    {
        self.map(items, f).into_iter().collect()
    }
}

/// Size the global worker pool. Must run before the first parallel call;
/// a no-op without the `parallel` feature.
pub fn set_thread_count(threads: usize) -> crate::Result<()> {
    if threads == 0 {
        return Err(crate::Error::Config("thread count must be at least 1".into()));
    }
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| crate::Error::Config(format!("cannot configure worker pool: {e}")))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn policies_agree() {
        let items: Vec<f64> = (0..1000).map(|i| i as f64 * 0.37).collect();
        let seq = Execution::Sequential.map(&items, |v| v.sin());
        let par = Execution::Parallel.map(&items, |v| v.sin());
        assert_eq!(seq, par);
    }

    #[test]
    fn try_map_reports_first_error() {
        let items = [1, 2, 3, 4];
        let out: Result<Vec<i32>, i32> =
            Execution::Parallel.try_map(&items, |&v| if v >= 3 { Err(v) } else { Ok(v) });
        assert_eq!(out, Err(3));
    }
}
