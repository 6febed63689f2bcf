use std::collections::BTreeMap;

use super::{LinComb, Scalar};

/// Incremental row echelon form for sparse vectors over the rationals.
///
/// Each stored row has its smallest key as pivot, normalized to coefficient 1.
/// Used for rank and span-membership questions.
#[derive(Clone, Debug)]
pub struct Echelon<B: Ord + Clone> {
    rows: BTreeMap<B, LinComb<B>>,
}

impl<B: Ord + Clone> Default for Echelon<B> {
    fn default() -> Self {
        Echelon {
            rows: BTreeMap::new(),
        }
    }
}

impl<B: Ord + Clone> Echelon<B> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the stored rows.
    pub fn reduce(&self, v: &LinComb<B>) -> LinComb<B> {
        let mut v = v.clone();
        // Subtracting a row only touches keys at or above its pivot, so the
        // pivot keys found in `v` strictly increase.
        loop {
            let hit = v
                .iter()
                .find(|(k, _)| self.rows.contains_key(*k))
                .map(|(k, c)| (k.clone(), c.clone()));
            match hit {
                Some((k, c)) => v.add_scaled(&self.rows[&k], &-c),
                None => return v,
            }
        }
    }

    /// Inserts `v`; returns `true` when it was independent of the stored rows.
    pub fn insert(&mut self, v: &LinComb<B>) -> bool {
        let r = self.reduce(v);
        let Some((pivot, lead)) = r.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        let inv = Scalar::one().checked_div(&lead).expect("nonzero pivot");
        self.rows.insert(pivot, r.scale(&inv));
        true
    }

    pub fn contains(&self, v: &LinComb<B>) -> bool {
        self.reduce(v).is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(terms: &[(u8, i64)]) -> LinComb<u8> {
        LinComb::from_terms(terms.iter().map(|&(k, c)| (k, Scalar::from_int(c))))
    }

    #[test]
    fn rank_and_membership() {
        let mut e = Echelon::new();
        assert!(e.insert(&v(&[(0, 1), (1, -1)])));
        assert!(e.insert(&v(&[(1, 1), (2, -1)])));
        assert!(!e.insert(&v(&[(0, 2), (2, -2)])));
        assert_eq!(e.rank(), 2);
        assert!(e.contains(&v(&[(0, 1), (2, -1)])));
        assert!(!e.contains(&v(&[(0, 1)])));
        assert!(e.contains(&LinComb::zero()));
    }
}
