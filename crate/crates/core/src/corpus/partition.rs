//! Learning/held-out partitioning by seeded sampling without replacement.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{CorpusError, SplitSpec};

/// Split sentence indices `0..total` into `(learning, holdout)`.
///
/// The holdout is a uniform sample without replacement of
/// `spec.holdout_count` indices, deterministic for a fixed seed. Both halves
/// keep ascending index order, so the split is disjoint and exhaustive.
pub fn partition(total: usize, spec: &SplitSpec) -> Result<(Vec<usize>, Vec<usize>), CorpusError> {
    if spec.holdout_count > total {
        return Err(CorpusError::InvalidSplit {
            requested: spec.holdout_count,
            available: total,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut indices: Vec<usize> = (0..total).collect();
    indices.shuffle(&mut rng);
    let mut holdout: Vec<usize> = indices[..spec.holdout_count].to_vec();
    let mut learning: Vec<usize> = indices[spec.holdout_count..].to_vec();
    holdout.sort_unstable();
    learning.sort_unstable();
    Ok((learning, holdout))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_for_fixed_seed() {
        let spec = SplitSpec {
            holdout_count: 20,
            seed: 7,
        };
        let (l1, h1) = partition(100, &spec).unwrap();
        let (l2, h2) = partition(100, &spec).unwrap();
        assert_eq!(h1, h2);
        assert_eq!(l1, l2);
        assert_eq!(h1.len(), 20);
    }

    #[test]
    fn zero_holdout_keeps_everything() {
        let spec = SplitSpec {
            holdout_count: 0,
            seed: 1,
        };
        let (learning, holdout) = partition(10, &spec).unwrap();
        assert!(holdout.is_empty());
        assert_eq!(learning, (0..10).collect::<Vec<_>>());
    }

    #[test]
    fn disjoint_and_exhaustive() {
        let spec = SplitSpec {
            holdout_count: 33,
            seed: 99,
        };
        let (learning, holdout) = partition(100, &spec).unwrap();
        let mut all: Vec<usize> = learning.iter().chain(holdout.iter()).copied().collect();
        all.sort_unstable();
        assert_eq!(all, (0..100).collect::<Vec<_>>());
        assert!(learning.iter().all(|i| !holdout.contains(i)));
    }

    #[test]
    fn oversized_holdout_errors() {
        let spec = SplitSpec {
            holdout_count: 11,
            seed: 0,
        };
        assert!(matches!(
            partition(10, &spec),
            Err(CorpusError::InvalidSplit {
                requested: 11,
                available: 10
            })
        ));
    }

    #[test]
    fn different_seeds_differ() {
        let a = partition(100, &SplitSpec { holdout_count: 50, seed: 1 }).unwrap();
        let b = partition(100, &SplitSpec { holdout_count: 50, seed: 2 }).unwrap();
        assert_ne!(a.1, b.1);
    }
}
