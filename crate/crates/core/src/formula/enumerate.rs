//! Exhaustive enumeration of small formulas.

use alloc::vec;
use alloc::vec::Vec;

use super::Formula;

/// All formulas with exactly `size` nodes whose leaves come from `leaves`.
/// Index `k` of the result holds the formulas of size `k`.
pub fn by_size(leaves: &[Formula], max_size: usize) -> Vec<Vec<Formula>> {
    let mut table: Vec<Vec<Formula>> = vec![Vec::new(); max_size + 1];
    if max_size == 0 {
        return table;
    }
    table[1] = leaves.to_vec();
    for n in 2..=max_size {
        let mut level: Vec<Formula> = table[n - 1].iter().cloned().map(Formula::prov).collect();
        for left in 1..n - 1 {
            let right = n - 1 - left;
            for a in &table[left] {
                for b in &table[right] {
                    level.push(Formula::and(a.clone(), b.clone()));
                    level.push(Formula::or(a.clone(), b.clone()));
                    level.push(Formula::imp(a.clone(), b.clone()));
                }
            }
        }
        table[n] = level;
    }
    table
}

/// All formulas with at most `max_size` nodes, smallest first.
pub fn up_to(leaves: &[Formula], max_size: usize) -> Vec<Formula> {
    by_size(leaves, max_size).into_iter().flatten().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeSet;

    #[test]
    fn counts_match_recurrence() {
        // One leaf: c1 = 1, cn = c(n-1) + 3 * sum c_k c_(n-1-k).
        let t = by_size(&[Formula::Falsum], 5);
        let counts: Vec<usize> = t.iter().map(Vec::len).collect();
        assert_eq!(counts, vec![0, 1, 1, 4, 10, 37]);
    }

    #[test]
    fn no_duplicates() {
        let all = up_to(&[Formula::atom("A"), Formula::atom("B")], 5);
        let set: BTreeSet<_> = all.iter().collect();
        assert_eq!(set.len(), all.len());
        assert!(all.iter().all(|f| f.size() <= 5));
    }
}
