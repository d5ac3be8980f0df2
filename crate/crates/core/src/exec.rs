//! Data-parallel map with a deterministic contract.
//!
//! Every parallel site in this crate maps independent units of work
//! (batch examples, corpus documents, perturbation queries) and then
//! combines the results sequentially in input order. Because the combine
//! step never runs on worker threads, outputs are bitwise identical for
//! any thread count and for the sequential fallback (`parallel` feature
//! disabled).

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps `f` over `items`, in parallel when the `parallel` feature is on.
/// The output vector always preserves input order.
#[cfg(feature = "parallel")]
pub fn ordered_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn ordered_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

/// Sequential map, available regardless of features. Benchmarks use this
/// as the baseline against [`ordered_map`].
pub fn ordered_map_seq<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_and_sequential_agree_in_order() {
        let items: Vec<u64> = (0..1000).collect();
        let f = |x: &u64| x * x + 1;
        assert_eq!(ordered_map(&items, f), ordered_map_seq(&items, f));
    }
}
