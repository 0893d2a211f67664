//! Budgets for the exhaustive enumerations in this crate.
//!
//! Several operations walk every subset of the coordinate positions or every
//! codeword of a small code. The budgets below bound that work; exceeding a
//! budget is a [`crate::Error::ResourceLimit`], never a silently truncated
//! answer.

/// Enumeration budgets. `Limits::default()` is used by every operation that
/// does not take an explicit `Limits` argument.
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    /// Longest code for which a full weight profile is computed by subset
    /// enumeration (the cost is `2^n` rank computations).
    pub ghw_max_len: usize,
    /// Cap on the number of coordinate subsets any single scan may visit
    /// (core enumeration, low-weight parity scans, support unions).
    pub subset_budget: u64,
    /// Cap on direct codeword enumeration, as a count of codewords; used when
    /// a scan can walk a small dual code instead of all coordinate subsets.
    pub word_budget: u64,
    /// Number of random subsets drawn when a completion has too many cores to
    /// check exhaustively.
    pub core_sample: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            ghw_max_len: 24,
            subset_budget: 10_000_000,
            word_budget: 1 << 20,
            core_sample: 100_000,
        }
    }
}

/// Binomial coefficient as `u128`, saturating on overflow. Saturation only
/// matters for arguments far beyond any budget this crate accepts.
pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc
            .saturating_mul((n - i) as u128)
            .checked_div((i + 1) as u128)
            .unwrap_or(u128::MAX);
        // Exact at every step because C(n, 0..=i+1) are integers and the
        // partial product n(n-1)...(n-i) is divisible by (i+1)!.
    }
    acc
}
