//! Index-parallel collection, sequential without the `parallel` feature.

use alloc::vec::Vec;

pub(crate) fn collect_indexed<T, F>(total: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..total).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..total).map(f).collect()
    }
}
