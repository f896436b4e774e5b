//! Small exact linear-algebra helpers: rank, incremental echelon bases and
//! scalar proportionality.

use alloc::vec::Vec;
use num_traits::{One, Zero};

use crate::Q;

/// Incrementally built row-echelon basis of a subspace of `Qᵈ`.
///
/// Rows are kept fully reduced against each other's pivots, so membership is
/// decided by a single reduction pass.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    rows: Vec<Vec<Q>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Q>] {
        &self.rows
    }

    fn reduce(&self, v: &mut [Q]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p];
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= f * r;
                }
            }
        }
    }

    /// Returns `true` when `v` lies in the span already collected.
    pub fn contains(&self, v: &[Q]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(Zero::is_zero)
    }

    /// Adds `v`; returns `true` if it was independent of the rows so far.
    pub fn insert(&mut self, v: &[Q]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = Q::one() / w[p];
        for x in w.iter_mut() {
            *x *= inv;
        }
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p];
            for (x, r) in row.iter_mut().zip(&w) {
                if !r.is_zero() {
                    *x -= f * r;
                }
            }
        }
        self.rows.push(w);
        self.pivots.push(p);
        true
    }
}

/// Rank of the matrix whose rows are `rows`.
pub fn rank<'a, I>(rows: I) -> usize
where
    I: IntoIterator<Item = &'a [Q]>,
{
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Finds `c` with `a = c · b` entrywise.
///
/// Returns `None` when `b` is zero, or when no single scalar works.
pub fn proportionality(a: &[Q], b: &[Q]) -> Option<Q> {
    let mut c: Option<Q> = None;
    for (x, y) in a.iter().zip(b) {
        if y.is_zero() {
            if !x.is_zero() {
                return None;
            }
            continue;
        }
        let r = *x / *y;
        match c {
            None => c = Some(r),
            Some(prev) if prev != r => return None,
            _ => {}
        }
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qi;
    use alloc::vec;

    #[test]
    fn rank_of_dependent_rows() {
        let rows = [vec![qi(1), qi(2), qi(3)], vec![qi(2), qi(4), qi(6)], vec![qi(0), qi(1), qi(1)]];
        assert_eq!(rank(rows.iter().map(|r| r.as_slice())), 2);
    }

    #[test]
    fn proportionality_cases() {
        let a = [qi(2), qi(0), qi(-4)];
        let b = [qi(1), qi(0), qi(-2)];
        assert_eq!(proportionality(&a, &b), Some(qi(2)));
        assert_eq!(proportionality(&a, &[qi(1), qi(1), qi(-2)]), None);
        assert_eq!(proportionality(&[qi(0)], &[qi(0)]), None);
    }

    #[test]
    fn echelon_membership() {
        let mut e = Echelon::new();
        assert!(e.insert(&[qi(1), qi(1), qi(0)]));
        assert!(e.insert(&[qi(0), qi(1), qi(1)]));
        assert!(e.contains(&[qi(1), qi(2), qi(1)]));
        assert!(!e.contains(&[qi(0), qi(0), qi(1)]));
        assert!(!e.insert(&[qi(2), qi(3), qi(1)]));
    }
}
