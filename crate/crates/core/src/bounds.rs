//! Upper bounds on the minimum distance of codes with local repair groups.
//!
//! The central object is a strictly increasing sequence `e_1 < ... < e_b = n`
//! modelling the smallest possible footprint of `m` repair groups of weight
//! `r + 1`: going from `m` groups down to `m - 1` frees at least
//! `ceil(2 e_m / m) - (r + 1)` positions. Positions of `1..=n` missed by the
//! sequence are the gaps, and the distance bound for a dimension `k` code is
//! `n + 1` minus the `k`-th gap. Two group counts matter: `ceil(2n / (r+2))`
//! groups for codes repairing two erasures sequentially, and the weaker
//! `ceil(n / (r+1))` for plain single-erasure locality.
//!
//! Classical yardsticks are provided for comparison: the locality Singleton
//! bound and its `(r, delta)` refinements.

use crate::error::{Error, Result};

/// A distance bound obtained from the gap positions of a group sequence.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct DistanceBound {
    /// The bound itself: `d_min <= value`.
    pub value: usize,
    /// Number of repair groups the underlying sequence models.
    pub groups: usize,
    /// The `k`-th gap of the sequence, the quantity the bound is built from.
    pub gap: usize,
    /// How far the gap sits past `k`, equally the number of sequence terms
    /// below it. Zero means the code must waste nothing on locality at all.
    pub slack: usize,
}

fn validate_common(n: usize, k: usize, r: usize) -> Result<()> {
    if n == 0 || r == 0 {
        return Err(Error::InvalidParameters(format!(
            "need n >= 1 and r >= 1, got n={n}, r={r}"
        )));
    }
    if k == 0 || k > n {
        return Err(Error::InvalidParameters(format!(
            "dimension k={k} must lie in 1..={n}"
        )));
    }
    Ok(())
}

/// The footprint sequence `e_1 < ... < e_groups = n` for locality `r`,
/// built by walking the recurrence downward from `e_groups = n`.
///
/// Fails when no strictly increasing sequence exists for these parameters,
/// which is how infeasible `(n, r, groups)` combinations surface.
pub fn bound_sequence(n: usize, r: usize, groups: usize) -> Result<Vec<usize>> {
    if n == 0 || r == 0 || groups == 0 {
        return Err(Error::InvalidParameters(format!(
            "need n, r, groups >= 1, got n={n}, r={r}, groups={groups}"
        )));
    }
    let mut e = vec![0usize; groups];
    e[groups - 1] = n;
    for m in (2..=groups).rev() {
        let cur = e[m - 1];
        let freed = (2 * cur).div_ceil(m);
        e[m - 2] = cur - freed + r + 1;
    }
    let increasing = e.windows(2).all(|w| w[0] < w[1]) && e[0] >= 1;
    if !increasing {
        return Err(Error::InvalidParameters(format!(
            "{groups} groups of locality {r} do not fit a length {n} code"
        )));
    }
    Ok(e)
}

fn gap_bound(n: usize, k: usize, r: usize, groups: usize) -> Result<Option<DistanceBound>> {
    validate_common(n, k, r)?;
    if k > n - groups {
        // The sequence leaves only n - groups gaps, so no k-th gap exists;
        // codes of this dimension cannot carry that many groups.
        return Ok(None);
    }
    let e = bound_sequence(n, r, groups)?;
    let mut in_sequence = vec![false; n + 1];
    for &v in &e {
        in_sequence[v] = true;
    }
    let gap = (1..=n)
        .filter(|&g| !in_sequence[g])
        .nth(k - 1)
        .expect("k <= n - groups guarantees a k-th gap");
    Ok(Some(DistanceBound {
        value: n + 1 - gap,
        groups,
        gap,
        slack: gap - k,
    }))
}

/// Distance bound for `[n, k]` codes in which any two erasures can be
/// repaired by two local groups applied in sequence. Returns `None` when `k`
/// is too large for the required number of groups to fit at all.
pub fn two_erasure_dmin_bound(n: usize, k: usize, r: usize) -> Result<Option<DistanceBound>> {
    validate_common(n, k, r)?;
    gap_bound(n, k, r, (2 * n).div_ceil(r + 2))
}

/// Distance bound for `[n, k]` codes in which every coordinate has a repair
/// group of size at most `r + 1`, with no two-erasure requirement.
pub fn single_erasure_dmin_bound(n: usize, k: usize, r: usize) -> Result<Option<DistanceBound>> {
    validate_common(n, k, r)?;
    gap_bound(n, k, r, n.div_ceil(r + 1))
}

/// The classical locality Singleton bound `n - k - ceil(k/r) + 2`.
pub fn gopalan_bound(n: usize, k: usize, r: usize) -> Result<usize> {
    validate_common(n, k, r)?;
    (n + 2)
        .checked_sub(k + k.div_ceil(r))
        .filter(|&v| v >= 1)
        .ok_or_else(|| {
            Error::InvalidParameters(format!(
                "no [{n}, {k}] code with locality {r} exists"
            ))
        })
}

/// Singleton-type bound for `(r, delta)` locality, where each group can
/// repair `delta - 1` erasures on its own.
pub fn r_delta_bound(n: usize, k: usize, r: usize, delta: usize) -> Result<usize> {
    validate_common(n, k, r)?;
    if delta < 2 {
        return Err(Error::InvalidParameters(format!(
            "delta={delta} must be at least 2"
        )));
    }
    (n - k + 1)
        .checked_sub((k.div_ceil(r) - 1) * (delta - 1))
        .filter(|&v| v >= 1)
        .ok_or_else(|| {
            Error::InvalidParameters(format!(
                "no [{n}, {k}] code with ({r}, {delta}) locality exists"
            ))
        })
}

/// Distance bound for codes whose repair groups carry `delta - 1` internal
/// parities with disjoint group supports.
pub fn disjoint_parity_bound(n: usize, k: usize, r: usize, delta: usize) -> Result<usize> {
    validate_common(n, k, r)?;
    if delta < 2 {
        return Err(Error::InvalidParameters(format!(
            "delta={delta} must be at least 2"
        )));
    }
    let groups_touched = ((k - 1) * (delta - 1) + 1).div_ceil((r - 1) * (delta - 1) + 1);
    (n - k + 1)
        .checked_sub(groups_touched - 1)
        .filter(|&v| v >= 1)
        .ok_or_else(|| {
            Error::InvalidParameters(format!(
                "no [{n}, {k}] code with ({r}, {delta}) disjoint groups exists"
            ))
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn footprint_sequences_for_known_parameters() {
        assert_eq!(bound_sequence(10, 3, 4).unwrap(), vec![4, 7, 9, 10]);
        assert_eq!(bound_sequence(18, 3, 5).unwrap(), vec![4, 7, 11, 14, 18]);
        assert_eq!(
            bound_sequence(18, 3, 8).unwrap(),
            vec![4, 7, 10, 12, 14, 16, 17, 18]
        );
        assert_eq!(bound_sequence(15, 3, 6).unwrap(), vec![4, 7, 10, 12, 14, 15]);
        assert_eq!(bound_sequence(6, 2, 3).unwrap(), vec![3, 5, 6]);
        assert_eq!(bound_sequence(4, 3, 1).unwrap(), vec![4]);
    }

    #[test]
    fn footprint_sequence_always_starts_at_r_plus_one() {
        // A single group has no recurrence step, so its lone term is n.
        for n in 2..40 {
            for r in 1..8 {
                assert_eq!(bound_sequence(n, r, 1).unwrap(), vec![n]);
                for groups in 2..=n {
                    if let Ok(e) = bound_sequence(n, r, groups) {
                        assert_eq!(e[0], r + 1, "n={n} r={r} groups={groups}");
                        assert_eq!(*e.last().unwrap(), n);
                    }
                }
            }
        }
    }

    #[test]
    fn infeasible_group_counts_are_rejected() {
        assert!(bound_sequence(4, 1, 4).is_err());
        assert!(bound_sequence(5, 3, 3).is_err());
        assert!(bound_sequence(0, 3, 1).is_err());
        assert!(bound_sequence(10, 0, 2).is_err());
        assert!(bound_sequence(10, 3, 0).is_err());
    }

    #[test]
    fn two_erasure_bound_known_values() {
        let b = two_erasure_dmin_bound(10, 4, 3).unwrap().unwrap();
        assert_eq!(b.value, 6);
        assert_eq!(b.groups, 4);
        assert_eq!(b.gap, 5);
        assert_eq!(b.slack, 1);
        let b = two_erasure_dmin_bound(10, 6, 3).unwrap().unwrap();
        assert_eq!(b.value, 3);
        assert_eq!(b.slack, 2);
        let b = two_erasure_dmin_bound(15, 6, 3).unwrap().unwrap();
        assert_eq!(b.value, 8);
        assert!(two_erasure_dmin_bound(10, 7, 3).unwrap().is_none());
    }

    #[test]
    fn single_erasure_bound_known_values() {
        let b = single_erasure_dmin_bound(18, 9, 3).unwrap().unwrap();
        assert_eq!(b.value, 7);
        assert_eq!(b.groups, 5);
        assert_eq!(b.slack, 3);
        let b = single_erasure_dmin_bound(4, 1, 3).unwrap().unwrap();
        assert_eq!(b.value, 4);
        assert_eq!(b.groups, 1);
    }

    #[test]
    fn classical_bounds_known_values() {
        assert_eq!(gopalan_bound(18, 9, 3).unwrap(), 8);
        assert_eq!(gopalan_bound(10, 4, 3).unwrap(), 6);
        assert_eq!(r_delta_bound(10, 4, 3, 3).unwrap(), 5);
        assert_eq!(r_delta_bound(15, 6, 3, 3).unwrap(), 8);
        assert_eq!(disjoint_parity_bound(10, 4, 3, 3).unwrap(), 6);
        assert_eq!(disjoint_parity_bound(15, 6, 3, 3).unwrap(), 8);
    }

    #[test]
    fn delta_two_collapses_to_the_singleton_type_bound() {
        for n in 4..24 {
            for r in 1..6 {
                for k in 1..=n {
                    let classic = gopalan_bound(n, k, r);
                    let pair = r_delta_bound(n, k, r, 2);
                    let disjoint = disjoint_parity_bound(n, k, r, 2);
                    match classic {
                        Ok(v) => {
                            assert_eq!(pair.unwrap(), v);
                            assert_eq!(disjoint.unwrap(), v);
                        }
                        Err(_) => {
                            assert!(pair.is_err());
                            assert!(disjoint.is_err());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn parameter_validation_is_loud() {
        assert!(two_erasure_dmin_bound(10, 0, 3).is_err());
        assert!(two_erasure_dmin_bound(10, 11, 3).is_err());
        assert!(two_erasure_dmin_bound(0, 1, 3).is_err());
        assert!(two_erasure_dmin_bound(10, 4, 0).is_err());
        assert!(gopalan_bound(4, 4, 1).is_err());
        assert!(r_delta_bound(10, 4, 3, 1).is_err());
        assert!(r_delta_bound(10, 9, 2, 5).is_err());
        assert!(disjoint_parity_bound(10, 4, 3, 1).is_err());
    }

    #[test]
    fn table_column_for_n18_r3_is_frozen() {
        // (k, classical, single-erasure, two-erasure-sequential)
        let want: [(usize, usize, Option<usize>, Option<usize>); 13] = [
            (1, 18, Some(18), Some(18)),
            (2, 17, Some(17), Some(17)),
            (3, 16, Some(16), Some(16)),
            (4, 14, Some(14), Some(14)),
            (5, 13, Some(13), Some(13)),
            (6, 12, Some(11), Some(11)),
            (7, 10, Some(10), Some(10)),
            (8, 9, Some(9), Some(8)),
            (9, 8, Some(7), Some(6)),
            (10, 6, Some(6), Some(4)),
            (11, 5, Some(4), None),
            (12, 4, Some(3), None),
            (13, 2, Some(2), None),
        ];
        for (k, classic, single, seq) in want {
            assert_eq!(gopalan_bound(18, k, 3).unwrap(), classic, "k={k}");
            assert_eq!(
                single_erasure_dmin_bound(18, k, 3).unwrap().map(|b| b.value),
                single,
                "k={k}"
            );
            assert_eq!(
                two_erasure_dmin_bound(18, k, 3).unwrap().map(|b| b.value),
                seq,
                "k={k}"
            );
        }
    }

    #[test]
    fn sequential_bound_is_never_weaker() {
        for n in 3..30 {
            for r in 1..7 {
                for k in 1..=n {
                    let Ok(classic) = gopalan_bound(n, k, r) else {
                        continue;
                    };
                    let single = match single_erasure_dmin_bound(n, k, r) {
                        Ok(Some(b)) => b.value,
                        _ => continue,
                    };
                    assert!(
                        single <= classic,
                        "single {single} > classic {classic} at n={n} k={k} r={r}"
                    );
                    if let Ok(Some(two)) = two_erasure_dmin_bound(n, k, r) {
                        assert!(
                            two.value <= single,
                            "two-erasure {} > single {single} at n={n} k={k} r={r}",
                            two.value
                        );
                    }
                }
            }
        }
    }
}
