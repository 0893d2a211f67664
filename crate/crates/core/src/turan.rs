//! Graph-based parity designs whose repair groups meet the sequential
//! two-erasure distance bound exactly.
//!
//! The construction takes a locality `r` and a part size `beta` dividing it,
//! and builds the complete multipartite graph on `r + beta` vertices split
//! into parts of `beta`. Code coordinates are the vertices followed by the
//! edges; vertex `v` contributes one parity group supported on `v` and its
//! incident edges, which has weight exactly `r + 1` because every vertex has
//! degree `r`. Any two groups share at most one coordinate (their joining
//! edge), every edge coordinate belongs to exactly two groups, and each
//! group owns its vertex coordinate privately. Those three properties are
//! what make the weight hierarchy of the span equal the minimal unions of
//! the supports, computed here both by brute force and in closed form.

use crate::algebra::{FieldMatrix, PrimeField};
use crate::code::{CoordSet, GhwProfile, KSubsets, LinearCode};
use crate::error::{Error, Result};
use crate::limits::{binomial, Limits};

/// A multipartite parity design with locality `r` and parts of size `beta`.
#[derive(Clone, Debug)]
pub struct TuranDesign {
    r: usize,
    beta: usize,
    parts: usize,
    groups: usize,
    n: usize,
    edges: Vec<(usize, usize)>,
    supports: Vec<CoordSet>,
}

impl TuranDesign {
    /// Builds the design for locality `r` and part size `beta`; `beta` must
    /// divide `r`.
    pub fn new(r: usize, beta: usize) -> Result<Self> {
        if r == 0 || beta == 0 || r % beta != 0 {
            return Err(Error::InvalidParameters(format!(
                "need r >= 1 and beta | r, got r={r}, beta={beta}"
            )));
        }
        let groups = r + beta;
        let parts = groups / beta;
        let n = groups * (r + 2) / 2;
        let part_of = |v: usize| (v - 1) / beta;
        let mut edges = Vec::with_capacity(n - groups);
        for u in 1..=groups {
            for v in u + 1..=groups {
                if part_of(u) != part_of(v) {
                    edges.push((u, v));
                }
            }
        }
        debug_assert_eq!(groups + edges.len(), n);
        let supports = (1..=groups)
            .map(|v| {
                CoordSet::new(std::iter::once(v).chain(
                    edges.iter().enumerate().filter_map(|(i, &(a, b))| {
                        (a == v || b == v).then_some(groups + 1 + i)
                    }),
                ))
            })
            .collect();
        Ok(TuranDesign {
            r,
            beta,
            parts,
            groups,
            n,
            edges,
            supports,
        })
    }

    pub fn locality(&self) -> usize {
        self.r
    }

    pub fn part_size(&self) -> usize {
        self.beta
    }

    pub fn part_count(&self) -> usize {
        self.parts
    }

    pub fn group_count(&self) -> usize {
        self.groups
    }

    pub fn block_length(&self) -> usize {
        self.n
    }

    /// Edge endpoints in label order: entry `i` is the edge with coordinate
    /// label `group_count() + 1 + i`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// One support per vertex, each of size `r + 1`.
    pub fn supports(&self) -> &[CoordSet] {
        &self.supports
    }

    /// The design as a parity code: one indicator row per group. The rows
    /// are independent over every field because each owns a private vertex
    /// coordinate.
    pub fn parity_code(&self, field: PrimeField) -> Result<LinearCode> {
        let rows: Vec<Vec<u64>> = self
            .supports
            .iter()
            .map(|s| {
                let mut row = vec![0u64; self.n];
                for c in s.iter() {
                    row[c - 1] = 1;
                }
                row
            })
            .collect();
        LinearCode::from_generator(FieldMatrix::from_rows(field, &rows)?)
    }

    /// Smallest union of `m` supports, by direct enumeration.
    pub fn min_union(&self, m: usize, limits: &Limits) -> Result<usize> {
        if m == 0 || m > self.groups {
            return Err(Error::InvalidParameters(format!(
                "m={m} must lie in 1..={}",
                self.groups
            )));
        }
        let count = binomial(self.groups, m);
        if count > limits.subset_budget as u128 {
            return Err(Error::ResourceLimit {
                what: "support union subsets",
                needed: count,
                limit: limits.subset_budget as u128,
            });
        }
        let mut best = usize::MAX;
        let mut subs = KSubsets::new(self.groups, m);
        while let Some(sub) = subs.next() {
            let mut union = CoordSet::empty();
            for &i in sub {
                union = union.union(&self.supports[i - 1]);
            }
            best = best.min(union.len());
        }
        Ok(best)
    }

    /// Smallest union of `m` supports, in closed form: picking groups part
    /// by part, the `j`-th group adds its private vertex plus one edge for
    /// each of the `groups - j` vertices not yet picked and not in its own
    /// part, and packing the picked vertices into as few parts as possible
    /// maximizes the shared edges.
    pub fn min_union_closed_form(&self, m: usize) -> Result<usize> {
        if m == 0 || m > self.groups {
            return Err(Error::InvalidParameters(format!(
                "m={m} must lie in 1..={}",
                self.groups
            )));
        }
        Ok((1..=m)
            .map(|j| {
                let rem = self.groups - j;
                rem - rem / self.parts + 1
            })
            .sum())
    }

    /// The weight hierarchy of the design's span, from the support family.
    pub fn profile(&self, limits: &Limits) -> Result<GhwProfile> {
        ghw_from_supports(self.n, &self.supports, limits)
    }
}

/// Whether a support family is regular enough for its minimal unions to be
/// the weight hierarchy of its span: supports pairwise share at most one
/// coordinate, no coordinate lies in more than two supports, and every
/// support keeps at least one private coordinate.
pub fn subset_ghw_applicable(supports: &[CoordSet]) -> bool {
    if supports.is_empty() || supports.iter().any(CoordSet::is_empty) {
        return false;
    }
    for (i, a) in supports.iter().enumerate() {
        for b in supports.iter().skip(i + 1) {
            if a.intersection(b).len() > 1 {
                return false;
            }
        }
    }
    let mut coverage: std::collections::BTreeMap<usize, usize> = Default::default();
    for s in supports {
        for c in s.iter() {
            *coverage.entry(c).or_default() += 1;
        }
    }
    if coverage.values().any(|&count| count > 2) {
        return false;
    }
    supports
        .iter()
        .all(|s| s.iter().any(|c| coverage[&c] == 1))
}

/// Weight hierarchy of the span of indicator rows of `supports`, computed
/// as the minimal union of `m` supports for each `m`. Only valid for
/// families accepted by [`subset_ghw_applicable`], and rejected otherwise.
pub fn ghw_from_supports(
    n: usize,
    supports: &[CoordSet],
    limits: &Limits,
) -> Result<GhwProfile> {
    if !subset_ghw_applicable(supports) {
        return Err(Error::InvalidParameters(
            "support family is not regular enough to read the hierarchy off its unions".into(),
        ));
    }
    if supports.iter().any(|s| s.iter().any(|c| c > n)) {
        return Err(Error::InvalidParameters(format!(
            "supports mention coordinates beyond n={n}"
        )));
    }
    let b = supports.len();
    let total: u128 = (1..=b).map(|m| binomial(b, m)).sum();
    if total > limits.subset_budget as u128 {
        return Err(Error::ResourceLimit {
            what: "support union subsets",
            needed: total,
            limit: limits.subset_budget as u128,
        });
    }
    let mut weights = Vec::with_capacity(b);
    for m in 1..=b {
        let mut best = usize::MAX;
        let mut subs = KSubsets::new(b, m);
        while let Some(sub) = subs.next() {
            let mut union = CoordSet::empty();
            for &i in sub {
                union = union.union(&supports[i - 1]);
            }
            best = best.min(union.len());
        }
        weights.push(best);
    }
    GhwProfile::new(n, weights)
}
