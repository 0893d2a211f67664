//! Local repair analysis: which erasure pairs a parity family can fix.
//!
//! Repair words are the codewords of weight at most `r + 1` in the span of
//! the local parities. For a coordinate `i`, the covering family `A_i` is
//! the set of achieved supports containing `i`. A pair of erasures `{i, j}`
//! is repaired sequentially by first finding a support that covers one of
//! them while avoiding the other, then covering the second with any support
//! at all, since the first symbol is already back. Over the whole code this
//! works for every pair exactly when every `A_i` is nonempty and no two
//! coordinates have identical covering families.

use crate::code::{CoordSet, LinearCode};
use crate::error::{Error, Result};
use crate::limits::Limits;

/// The covering structure of a parity family: every achieved repair support
/// of weight at most `r + 1`, indexed by the coordinates it covers.
#[derive(Clone, Debug)]
pub struct RepairStructure {
    n: usize,
    r: usize,
    supports: Vec<CoordSet>,
    covers: Vec<Vec<usize>>,
}

/// A two-erasure repair schedule: `first` is rebuilt from `first_support`,
/// which avoids `second`; then `second` is rebuilt from `second_support`,
/// which may use the repaired `first`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RecoveryPlan {
    pub first: usize,
    pub second: usize,
    pub first_support: CoordSet,
    pub second_support: CoordSet,
}

/// Full two-erasure diagnosis of a parity family.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RecoveryReport {
    /// Whether every erasure pair has a sequential repair schedule. This is
    /// the operational verdict, true exactly when `failing_pairs` is empty.
    pub recoverable: bool,
    /// Coordinates no repair support covers at all.
    pub uncovered: Vec<usize>,
    /// Pairs of coordinates whose covering families are nonempty but equal,
    /// so neither can be repaired while the other is missing.
    pub identical_cover_pairs: Vec<(usize, usize)>,
    /// Every pair with no repair schedule in either order.
    pub failing_pairs: Vec<(usize, usize)>,
}

/// Result of [`dimension_and_rate_check`]. Both flags are vacuously true
/// for codes the premise does not apply to, recorded by `applicable`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct DimensionRateCheck {
    /// The code is nonzero and repairs every erasure pair sequentially.
    pub applicable: bool,
    /// Dimension of the span of the weight `r + 1` repair words.
    pub parity_dimension: usize,
    /// Least parity dimension a repairable code can get away with,
    /// `ceil(2n / (r + 2))`.
    pub parity_floor: usize,
    /// Whether `parity_dimension >= parity_floor`.
    pub dimension_ok: bool,
    /// Largest dimension a repairable code of this length and locality can
    /// have, `n - parity_floor`.
    pub max_dimension: usize,
    /// Whether the rate stays within `r / (r + 2)`, compared exactly as
    /// `k * (r + 2) <= n * r`.
    pub rate_ok: bool,
    /// Conjunction of the two flags.
    pub holds: bool,
}

impl RepairStructure {
    /// Builds the covering structure from a parity family given directly as
    /// a code: its achieved supports of weight at most `r + 1` become the
    /// repair sets.
    pub fn from_parity(parity: &LinearCode, r: usize, limits: &Limits) -> Result<Self> {
        let n = parity.length();
        if r == 0 || r + 1 > n {
            return Err(Error::InvalidParameters(format!(
                "locality must satisfy 1 <= r <= n - 1, got r = {r} with n = {n}"
            )));
        }
        let supports = parity.supports_up_to_weight(r + 1, limits)?;
        let mut covers = vec![Vec::new(); n];
        for (idx, s) in supports.iter().enumerate() {
            for c in s.iter() {
                covers[c - 1].push(idx);
            }
        }
        Ok(RepairStructure {
            n,
            r,
            supports,
            covers,
        })
    }

    /// Builds the covering structure of a full code: repair words live in
    /// the dual, so the parity family is the span of the dual words of
    /// weight at most `r + 1`.
    pub fn from_code(code: &LinearCode, r: usize, limits: &Limits) -> Result<Self> {
        if r == 0 || r + 1 > code.length() {
            return Err(Error::InvalidParameters(format!(
                "locality must satisfy 1 <= r <= n - 1, got r = {r} with n = {}",
                code.length()
            )));
        }
        let parity = code.low_weight_dual_subcode(r + 1, limits)?;
        Self::from_parity(&parity, r, limits)
    }

    pub fn block_length(&self) -> usize {
        self.n
    }

    pub fn locality(&self) -> usize {
        self.r
    }

    pub fn supports(&self) -> &[CoordSet] {
        &self.supports
    }

    /// The supports covering a coordinate.
    pub fn covering_supports(&self, coord: usize) -> Result<Vec<&CoordSet>> {
        self.check_coord(coord)?;
        Ok(self.covers[coord - 1]
            .iter()
            .map(|&i| &self.supports[i])
            .collect())
    }

    /// Coordinates no support covers; these cannot be repaired even alone.
    pub fn uncovered(&self) -> Vec<usize> {
        (1..=self.n).filter(|&c| self.covers[c - 1].is_empty()).collect()
    }

    fn check_coord(&self, coord: usize) -> Result<()> {
        if coord == 0 || coord > self.n {
            return Err(Error::CoordOutOfRange {
                coord,
                max: self.n,
            });
        }
        Ok(())
    }

    fn plan_in_order(&self, first: usize, second: usize) -> Option<RecoveryPlan> {
        if self.covers[second - 1].is_empty() {
            return None;
        }
        let opener = self.covers[first - 1]
            .iter()
            .map(|&i| &self.supports[i])
            .find(|s| !s.contains(second))?;
        let closer = &self.supports[self.covers[second - 1][0]];
        Some(RecoveryPlan {
            first,
            second,
            first_support: opener.clone(),
            second_support: closer.clone(),
        })
    }

    /// A sequential schedule for the erased pair `{a, b}`, trying `a` first
    /// and then `b` first; `None` when no order works.
    pub fn recover_pair(&self, a: usize, b: usize) -> Result<Option<RecoveryPlan>> {
        self.check_coord(a)?;
        self.check_coord(b)?;
        if a == b {
            return Err(Error::InvalidParameters(format!(
                "erasure pair needs two distinct coordinates, got {a} twice"
            )));
        }
        Ok(self
            .plan_in_order(a, b)
            .or_else(|| self.plan_in_order(b, a)))
    }

    /// The covering-family condition: every coordinate is covered and no
    /// two coordinates have identical covering families. Stated on the
    /// families alone, without constructing any repair schedule.
    pub fn covers_distinguish_pairs(&self) -> bool {
        (0..self.n).all(|a| !self.covers[a].is_empty())
            && (0..self.n).all(|a| (a + 1..self.n).all(|b| self.covers[a] != self.covers[b]))
    }

    /// Diagnoses all pairs operationally: a pair fails when no repair
    /// schedule exists in either order, and `recoverable` reports whether
    /// no pair fails.
    pub fn sequential_recovery_check(&self) -> RecoveryReport {
        let uncovered = self.uncovered();
        let mut identical = Vec::new();
        let mut failing = Vec::new();
        for a in 1..=self.n {
            for b in a + 1..=self.n {
                let ca = &self.covers[a - 1];
                let cb = &self.covers[b - 1];
                if !ca.is_empty() && ca == cb {
                    identical.push((a, b));
                }
                if self.plan_in_order(a, b).is_none() && self.plan_in_order(b, a).is_none() {
                    failing.push((a, b));
                }
            }
        }
        RecoveryReport {
            recoverable: failing.is_empty(),
            uncovered,
            identical_cover_pairs: identical,
            failing_pairs: failing,
        }
    }
}

/// Whether any two erasures in `code` can be repaired one after the other
/// by parities of weight at most `r + 1`. This evaluates the covering
/// condition of [`RepairStructure::covers_distinguish_pairs`]; the
/// schedule-by-schedule scan in [`sequential_recovery_check`] always
/// reaches the same verdict.
pub fn is_locally_2_reconstructible(
    code: &LinearCode,
    r: usize,
    limits: &Limits,
) -> Result<bool> {
    Ok(RepairStructure::from_code(code, r, limits)?.covers_distinguish_pairs())
}

/// Operational two-erasure diagnosis of `code`, pair by pair.
pub fn sequential_recovery_check(
    code: &LinearCode,
    r: usize,
    limits: &Limits,
) -> Result<RecoveryReport> {
    Ok(RepairStructure::from_code(code, r, limits)?.sequential_recovery_check())
}

/// Per-support counts of privately covered coordinates: entry `i` is the
/// number of coordinates of `supports[i]` lying in no other support. The
/// flag says whether every count is at most one, which repairable parity
/// families must satisfy.
pub fn unique_coverage_counts(supports: &[CoordSet]) -> (Vec<usize>, bool) {
    let counts: Vec<usize> = supports
        .iter()
        .enumerate()
        .map(|(i, s)| {
            s.iter()
                .filter(|&c| {
                    supports
                        .iter()
                        .enumerate()
                        .all(|(j, other)| j == i || !other.contains(c))
                })
                .count()
        })
        .collect();
    let all_at_most_one = counts.iter().all(|&s| s <= 1);
    (counts, all_at_most_one)
}

/// Checks the structural consequences of sequential two-erasure repair for
/// `code`: the repair-word span needs dimension at least `ceil(2n / (r+2))`
/// and the rate cannot exceed `r / (r + 2)`. Codes that are not repairable
/// in that sense make both checks vacuously true, with `applicable` false.
pub fn dimension_and_rate_check(
    code: &LinearCode,
    r: usize,
    limits: &Limits,
) -> Result<DimensionRateCheck> {
    let n = code.length();
    let k = code.dimension();
    let structure = RepairStructure::from_code(code, r, limits)?;
    let applicable = k >= 1 && structure.covers_distinguish_pairs();
    let parity_dimension = code.low_weight_dual_subcode(r + 1, limits)?.dimension();
    let parity_floor = (2 * n).div_ceil(r + 2);
    let dimension_ok = !applicable || parity_dimension >= parity_floor;
    let rate_ok = !applicable || k * (r + 2) <= n * r;
    Ok(DimensionRateCheck {
        applicable,
        parity_dimension,
        parity_floor,
        dimension_ok,
        max_dimension: n - parity_floor,
        rate_ok,
        holds: dimension_ok && rate_ok,
    })
}
