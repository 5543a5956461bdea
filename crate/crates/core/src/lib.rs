//! Exact combinatorics of torus representations and labeled one-skeleton
//! graphs: GF(2) sparse-set analysis, weight-lattice splitting, skeleton
//! graph validation and reconstruction, and Z2-labeled graph structure.
//!
//! All verdicts are exact integer or GF(2) computations. The optional
//! `parallel` feature (on by default) runs the heavier enumerations and
//! batch checks on a rayon pool; results never depend on the worker count.

pub mod gkm;
pub mod io;
pub mod lattice;
pub mod poly;
pub(crate) mod ratlin;
pub mod report;
pub mod synth;
pub mod weights;
pub mod z2;
pub mod z2graph;

/// Maps a batch through `f`, in parallel when the `parallel` feature is
/// enabled. Output order always matches input order.
pub fn batch_map<T, R, F>(items: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        items.into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.into_iter().map(f).collect()
    }
}

/// Sequential twin of [`batch_map`], kept available for benchmarks comparing
/// the two execution paths.
pub fn batch_map_seq<T, R, F>(items: Vec<T>, f: F) -> Vec<R>
where
    F: Fn(T) -> R,
{
    items.into_iter().map(f).collect()
}
