//! Execution schedule for the data-parallel loops (over `l`, over `(s, w)`
//! grids, over lattice shells).
//!
//! With the `parallel` feature the [`Exec::Parallel`] schedule fans work out
//! on the rayon pool; without it every schedule runs sequentially. Results
//! are collected in index order, so output never depends on the schedule.

/// How a batch of independent evaluations is scheduled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

impl Exec {
    /// Maps `f` over `items`, preserving order.
    pub fn map<T, R, F>(self, items: Vec<T>, f: F) -> Vec<R>
    where
        T: Send,
        R: Send,
        F: Fn(T) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                items.into_par_iter().map(f).collect()
            }
            _ => items.into_iter().map(f).collect(),
        }
    }

    /// Maps `f` over `lo..=hi`, preserving order.
    pub fn map_range<R, F>(self, lo: usize, hi: usize, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize) -> R + Sync + Send,
    {
        if hi < lo {
            return Vec::new();
        }
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                (lo..=hi).into_par_iter().map(f).collect()
            }
            _ => (lo..=hi).map(f).collect(),
        }
    }

    /// Fallible variant of [`Exec::map`]; the first error in index order wins.
    pub fn try_map<T, R, E, F>(self, items: Vec<T>, f: F) -> Result<Vec<R>, E>
    where
        T: Send,
        R: Send,
        E: Send,
        F: Fn(T) -> Result<R, E> + Sync + Send,
    {
        self.map(items, f).into_iter().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schedules_agree() {
        let a = Exec::Sequential.map_range(0, 100, |i| i * i);
        let b = Exec::Parallel.map_range(0, 100, |i| i * i);
        assert_eq!(a, b);
        assert!(Exec::Parallel.map_range(5, 4, |i| i).is_empty());
    }
}
