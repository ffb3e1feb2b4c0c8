use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::rng::RngStream;
use crate::space::distinct_indices;

/// Per-individual record of the best trial fitness seen through each
/// neighbor link. Diagnostic only: selection never reads it.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct NeighborhoodState {
    links: Vec<BTreeMap<usize, f64>>,
}

impl NeighborhoodState {
    pub fn new(n: usize) -> Self {
        Self {
            links: vec![BTreeMap::new(); n],
        }
    }

    pub fn links(&self, owner: usize) -> &BTreeMap<usize, f64> {
        &self.links[owner]
    }

    /// Drop links of `owner` that are not part of its current neighborhood.
    pub fn retain(&mut self, owner: usize, neighbors: &[usize]) {
        self.links[owner].retain(|j, _| neighbors.contains(j));
    }

    pub fn len(&self) -> usize {
        self.links.len()
    }

    pub fn is_empty(&self) -> bool {
        self.links.is_empty()
    }
}

/// `min(k, n - 1)` distinct indices other than `i`, uniformly without
/// replacement.
pub fn dynamic_neighborhood(i: usize, n: usize, k: usize, rng: &mut RngStream) -> Result<Vec<usize>> {
    if n < 2 {
        return Err(Error::InvalidConfig(format!("neighborhood needs n >= 2, got {n}")));
    }
    distinct_indices(n, k.min(n - 1), &[i], rng)
}

/// For each neighbor link of `i`, keep the smaller of the stored value
/// (unset counts as +inf) and `trial_f`.
pub fn update_neighborhoods(state: &mut NeighborhoodState, i: usize, neighbors: &[usize], trial_f: f64) {
    let links = &mut state.links[i];
    for &j in neighbors {
        debug_assert_ne!(i, j);
        let slot = links.entry(j).or_insert(f64::INFINITY);
        if trial_f < *slot {
            *slot = trial_f;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn capped_at_n_minus_one() {
        let mut v = dynamic_neighborhood(0, 3, 5, &mut RngStream::new(1)).unwrap();
        v.sort_unstable();
        assert_eq!(v, vec![1, 2]);
        assert!(dynamic_neighborhood(0, 1, 5, &mut RngStream::new(1)).is_err());
    }

    #[test]
    fn never_contains_self() {
        let mut rng = RngStream::new(99);
        for t in 0..10_000 {
            let i = t % 7;
            let v = dynamic_neighborhood(i, 7, 3, &mut rng).unwrap();
            assert!(!v.contains(&i));
            assert_eq!(v.len(), 3);
        }
    }

    #[test]
    fn update_rules() {
        let mut s = NeighborhoodState::new(4);
        update_neighborhoods(&mut s, 0, &[1], 5.0);
        update_neighborhoods(&mut s, 0, &[1], 3.0);
        assert_eq!(s.links(0)[&1], 3.0);
        update_neighborhoods(&mut s, 1, &[2], 2.0);
        update_neighborhoods(&mut s, 1, &[2], 3.0);
        assert_eq!(s.links(1)[&2], 2.0);
        update_neighborhoods(&mut s, 2, &[3], 3.0);
        assert_eq!(s.links(2)[&3], 3.0);
    }

    #[test]
    fn retain_bounds_link_count() {
        let mut s = NeighborhoodState::new(6);
        update_neighborhoods(&mut s, 0, &[1, 2, 3], 1.0);
        s.retain(0, &[2, 4]);
        assert_eq!(s.links(0).keys().copied().collect::<Vec<_>>(), vec![2]);
    }
}
