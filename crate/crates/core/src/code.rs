//! Linear codes and their support structure.
//!
//! A [`LinearCode`] is the row space of a generator matrix over a prime
//! field. On top of plain code operations (dual, membership, lifting) this
//! module computes the generalized Hamming weight hierarchy, enumerates core
//! coordinate sets, and extracts the subcode of the dual spanned by its
//! low-weight words. Those three ingredients drive the bound computations
//! and the randomized completions elsewhere in the crate.
//!
//! The central identity used throughout: for a coordinate set `S`, the
//! codewords supported inside `S` form a subspace of dimension
//! `|S| - rank(H restricted to S)` where `H` generates the dual code. Every
//! subset search below is a rank computation in this form, so no path
//! depends on enumerating codewords over large fields.

use std::collections::BTreeSet;
use std::fmt;

use crate::algebra::{rank_of_mask_generic, FieldMatrix, Gf2Rows, Gf2Scratch, PrimeField};
use crate::error::{Error, Result};
use crate::limits::{binomial, Limits};

/// A set of 1-based coordinate positions, kept sorted and deduplicated.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CoordSet {
    coords: Vec<usize>,
}

impl CoordSet {
    /// Collects coordinates into a set. Coordinates are 1-based; zero is a
    /// programming error and panics.
    pub fn new<I: IntoIterator<Item = usize>>(coords: I) -> Self {
        let mut coords: Vec<usize> = coords.into_iter().collect();
        assert!(
            coords.iter().all(|&c| c >= 1),
            "coordinates are 1-based, got 0"
        );
        coords.sort_unstable();
        coords.dedup();
        CoordSet { coords }
    }

    pub fn empty() -> Self {
        CoordSet { coords: Vec::new() }
    }

    /// Set bits of `mask` become coordinates: bit `i` is coordinate `i + 1`.
    pub fn from_mask(mask: u64) -> Self {
        CoordSet {
            coords: (0..64).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect(),
        }
    }

    /// Inverse of [`CoordSet::from_mask`]; panics past coordinate 64.
    pub fn mask(&self) -> u64 {
        self.coords.iter().fold(0u64, |m, &c| {
            assert!(c <= 64, "coordinate {c} does not fit in a 64-bit mask");
            m | 1 << (c - 1)
        })
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn contains(&self, coord: usize) -> bool {
        self.coords.binary_search(&coord).is_ok()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.coords
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.coords.iter().copied()
    }

    pub fn union(&self, other: &CoordSet) -> CoordSet {
        CoordSet::new(self.iter().chain(other.iter()))
    }

    pub fn intersection(&self, other: &CoordSet) -> CoordSet {
        CoordSet {
            coords: self.iter().filter(|&c| other.contains(c)).collect(),
        }
    }

    pub fn difference(&self, other: &CoordSet) -> CoordSet {
        CoordSet {
            coords: self.iter().filter(|&c| !other.contains(c)).collect(),
        }
    }

    pub fn is_subset_of(&self, other: &CoordSet) -> bool {
        self.iter().all(|c| other.contains(c))
    }

    /// The complement within `{1, ..., n}`.
    pub fn complement(&self, n: usize) -> CoordSet {
        CoordSet {
            coords: (1..=n).filter(|&c| !self.contains(c)).collect(),
        }
    }
}

impl fmt::Display for CoordSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

/// The generalized Hamming weight hierarchy of a code: `weights()[i-1]` is
/// the smallest support size of an `i`-dimensional subcode. Weights are
/// strictly increasing, and the positions of `1..=n` they skip (the gaps)
/// are what the distance bounds in this crate are built from.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GhwProfile {
    n: usize,
    weights: Vec<usize>,
}

impl GhwProfile {
    /// Wraps a weight list, enforcing that it is strictly increasing and
    /// stays within `1..=n`.
    pub fn new(n: usize, weights: Vec<usize>) -> Result<Self> {
        let mut prev = 0usize;
        for &w in &weights {
            if w <= prev || w > n {
                return Err(Error::InvariantViolation(format!(
                    "weights {weights:?} are not strictly increasing within 1..={n}"
                )));
            }
            prev = w;
        }
        Ok(GhwProfile { n, weights })
    }

    pub fn block_length(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[usize] {
        &self.weights
    }

    pub fn d_min(&self) -> Option<usize> {
        self.weights.first().copied()
    }

    /// Elements of `1..=n` that are not weights, ascending. There are
    /// exactly `n - dimension()` of them.
    pub fn gaps(&self) -> Vec<usize> {
        let mut hit = vec![false; self.n + 1];
        for &w in &self.weights {
            hit[w] = true;
        }
        (1..=self.n).filter(|&g| !hit[g]).collect()
    }

    /// The `i`-th smallest gap, 1-based; `None` when there are fewer gaps.
    pub fn gap(&self, i: usize) -> Option<usize> {
        if i == 0 {
            return None;
        }
        self.gaps().get(i - 1).copied()
    }
}

impl fmt::Display for GhwProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ws: Vec<String> = self.weights.iter().map(usize::to_string).collect();
        write!(f, "[{}]", ws.join(", "))
    }
}

/// Outcome of [`LinearCode::find_core_within`]. The direct construction is
/// expected to succeed every time; `used_fallback` records whether the
/// exhaustive search had to run instead, so long verification runs can
/// assert it stayed false.
#[derive(Clone, Debug)]
pub struct CoreSearch {
    pub core: CoordSet,
    pub used_fallback: bool,
}

/// A linear code, stored as a generator matrix with independent rows.
///
/// Equality compares row spaces, not the stored generators, so a code built
/// from a hand-picked basis equals the same code built from its canonical
/// reduced form.
#[derive(Clone, Debug)]
pub struct LinearCode {
    gen: FieldMatrix,
}

impl PartialEq for LinearCode {
    fn eq(&self, other: &Self) -> bool {
        self.gen.field() == other.gen.field()
            && self.gen.cols() == other.gen.cols()
            && self.gen.rows() == other.gen.rows()
            && self.gen.rref().matrix == other.gen.rref().matrix
    }
}

impl Eq for LinearCode {}

impl LinearCode {
    /// Adopts `gen` as the generator, keeping its rows exactly as given.
    /// The rows must be linearly independent.
    pub fn from_generator(gen: FieldMatrix) -> Result<Self> {
        if gen.cols() == 0 {
            return Err(Error::InvalidParameters(
                "a code needs at least one coordinate".into(),
            ));
        }
        let rank = gen.rank();
        if rank < gen.rows() {
            return Err(Error::RankDeficient {
                rank,
                rows: gen.rows(),
            });
        }
        Ok(LinearCode { gen })
    }

    /// The code spanned by the rows of `m`, reduced to a canonical basis.
    /// Dependent and zero rows are allowed and simply collapse.
    pub fn from_span(m: FieldMatrix) -> Result<Self> {
        if m.cols() == 0 {
            return Err(Error::InvalidParameters(
                "a code needs at least one coordinate".into(),
            ));
        }
        let rr = m.rref();
        let mut rows = Vec::with_capacity(rr.rank);
        for r in 0..rr.rank {
            rows.push(rr.matrix.row(r).to_vec());
        }
        let gen = if rows.is_empty() {
            FieldMatrix::zeros(m.field(), 0, m.cols())
        } else {
            FieldMatrix::from_rows(m.field(), &rows)?
        };
        Ok(LinearCode { gen })
    }

    /// The zero code of the given length.
    pub fn zero(field: PrimeField, n: usize) -> Result<Self> {
        Self::from_span(FieldMatrix::zeros(field, 0, n))
    }

    pub fn field(&self) -> PrimeField {
        self.gen.field()
    }

    pub fn length(&self) -> usize {
        self.gen.cols()
    }

    pub fn dimension(&self) -> usize {
        self.gen.rows()
    }

    pub fn generator(&self) -> &FieldMatrix {
        &self.gen
    }

    /// Supports of the generator rows, in row order.
    pub fn row_supports(&self) -> Vec<CoordSet> {
        (0..self.gen.rows())
            .map(|r| {
                CoordSet::new(
                    self.gen
                        .row(r)
                        .iter()
                        .enumerate()
                        .filter(|&(_, &e)| e != 0)
                        .map(|(j, _)| j + 1),
                )
            })
            .collect()
    }

    fn dual_gen(&self) -> FieldMatrix {
        self.gen.null_space_basis()
    }

    /// The dual code, with its canonical generator.
    pub fn dual(&self) -> LinearCode {
        LinearCode {
            gen: self.dual_gen(),
        }
    }

    /// Whether `word` lies in the row space of the generator.
    pub fn contains_word(&self, word: &[u64]) -> Result<bool> {
        if word.len() != self.length() {
            return Err(Error::DimensionMismatch(format!(
                "word length {} in a code of length {}",
                word.len(),
                self.length()
            )));
        }
        let mut rows: Vec<Vec<u64>> = (0..self.gen.rows()).map(|r| self.gen.row(r).to_vec()).collect();
        rows.push(word.to_vec());
        let stacked = FieldMatrix::from_rows(self.field(), &rows)?;
        Ok(stacked.rank() == self.dimension())
    }

    /// Dimension of the subcode of words supported inside `set`: the size of
    /// the set minus the rank of the dual generator on those columns.
    pub fn dimension_within(&self, set: &CoordSet) -> Result<usize> {
        let rank = self.dual_gen().rank_of_columns(set.as_slice())?;
        Ok(set.len() - rank)
    }

    /// Whether no nonzero codeword is supported inside `set`.
    pub fn is_core(&self, set: &CoordSet) -> Result<bool> {
        Ok(self.dimension_within(set)? == 0)
    }

    /// All coordinate sets of the given size that contain no nonzero
    /// codeword support, in lexicographic order.
    pub fn enumerate_cores(&self, size: usize, limits: &Limits) -> Result<Vec<CoordSet>> {
        let n = self.length();
        if n > 64 {
            return Err(Error::ResourceLimit {
                what: "core enumeration block length",
                needed: n as u128,
                limit: 64,
            });
        }
        let count = binomial(n, size);
        if count > limits.subset_budget as u128 {
            return Err(Error::ResourceLimit {
                what: "core enumeration subsets",
                needed: count,
                limit: limits.subset_budget as u128,
            });
        }
        let h = self.dual_gen();
        let packed = Gf2Rows::pack(&h);
        let mut gf2_scratch = Gf2Scratch::new();
        let mut scratch = Vec::new();
        let mut out = Vec::new();
        let mut subs = KSubsets::new(n, size);
        while let Some(sub) = subs.next() {
            let mask = mask_of(sub);
            let rank = match &packed {
                Some(g) => g.rank_masked(mask, &mut gf2_scratch),
                None => rank_of_mask_generic(&h, mask, &mut scratch),
            };
            if rank == size {
                out.push(CoordSet::new(sub.iter().copied()));
            }
        }
        Ok(out)
    }

    /// Finds a core of the given size inside `within`.
    ///
    /// The direct route shortens the code to `within`, row reduces, and takes
    /// the first `size` non-pivot positions: no shortened word can be
    /// supported there, because any nonzero word in reduced form has a pivot
    /// coordinate. The result is verified, and an exhaustive search over
    /// subsets of `within` stands by as a fallback.
    pub fn find_core_within(
        &self,
        within: &CoordSet,
        size: usize,
        limits: &Limits,
    ) -> Result<CoreSearch> {
        let n = self.length();
        let inside = self.gen.select_columns(within.as_slice())?;
        let outside = self.gen.select_columns(within.complement(n).as_slice())?;
        let keep = outside.transpose().null_space_basis();
        let shortened = keep.mul(&inside)?.rref();
        if within.len() - shortened.rank < size {
            return Err(Error::InvalidParameters(format!(
                "no core of size {size} inside {within}: words supported there span dimension {}",
                shortened.rank
            )));
        }
        let mut is_pivot = vec![false; within.len()];
        for &p in &shortened.pivots {
            is_pivot[p - 1] = true;
        }
        let candidate = CoordSet::new(
            within
                .iter()
                .enumerate()
                .filter(|(local, _)| !is_pivot[*local])
                .map(|(_, coord)| coord)
                .take(size),
        );
        if candidate.len() == size && self.is_core(&candidate)? {
            return Ok(CoreSearch {
                core: candidate,
                used_fallback: false,
            });
        }
        let count = binomial(within.len(), size);
        if count > limits.subset_budget as u128 {
            return Err(Error::ResourceLimit {
                what: "core fallback subsets",
                needed: count,
                limit: limits.subset_budget as u128,
            });
        }
        let coords = within.as_slice();
        let mut subs = KSubsets::new(coords.len(), size);
        while let Some(sub) = subs.next() {
            let t = CoordSet::new(sub.iter().map(|&i| coords[i - 1]));
            if self.is_core(&t)? {
                return Ok(CoreSearch {
                    core: t,
                    used_fallback: true,
                });
            }
        }
        Err(Error::InvariantViolation(format!(
            "dimension count promises a core of size {size} inside {within}, none found"
        )))
    }

    /// The full weight hierarchy. Exponential in the block length; capped by
    /// `limits.ghw_max_len`.
    pub fn ghw(&self, limits: &Limits) -> Result<GhwProfile> {
        self.ghw_impl(limits, false)
    }

    pub(crate) fn ghw_impl(&self, limits: &Limits, force_generic: bool) -> Result<GhwProfile> {
        let k = self.dimension();
        if k == 0 {
            return Err(Error::ZeroCode);
        }
        let n = self.length();
        let cap = limits.ghw_max_len.min(63);
        if n > cap {
            return Err(Error::ResourceLimit {
                what: "weight hierarchy block length",
                needed: n as u128,
                limit: cap as u128,
            });
        }
        let h = self.dual_gen();
        let packed = if force_generic { None } else { Gf2Rows::pack(&h) };
        let mut gf2_scratch = Gf2Scratch::new();
        let mut scratch = Vec::new();
        let mut weights: Vec<usize> = Vec::with_capacity(k);
        'sizes: for s in 1..=n {
            let mut subs = KSubsets::new(n, s);
            while let Some(sub) = subs.next() {
                let mask = mask_of(sub);
                let rank = match &packed {
                    Some(g) => g.rank_masked(mask, &mut gf2_scratch),
                    None => rank_of_mask_generic(&h, mask, &mut scratch),
                };
                let dim = s - rank;
                while weights.len() < dim {
                    weights.push(s);
                }
                if weights.len() == k {
                    break 'sizes;
                }
            }
        }
        if weights.len() != k {
            return Err(Error::InvariantViolation(format!(
                "hierarchy sweep found {} weights for a dimension {k} code",
                weights.len()
            )));
        }
        GhwProfile::new(n, weights)
    }

    /// Minimum distance, via the smallest support size at which the dual
    /// generator loses column rank. Early exit makes this much cheaper than
    /// the full hierarchy when the distance is small.
    pub fn d_min(&self, limits: &Limits) -> Result<usize> {
        if self.dimension() == 0 {
            return Err(Error::ZeroCode);
        }
        let n = self.length();
        let cap = limits.ghw_max_len.min(63);
        if n > cap {
            return Err(Error::ResourceLimit {
                what: "minimum distance block length",
                needed: n as u128,
                limit: cap as u128,
            });
        }
        let h = self.dual_gen();
        let packed = Gf2Rows::pack(&h);
        let mut gf2_scratch = Gf2Scratch::new();
        let mut scratch = Vec::new();
        for s in 1..=n {
            let mut subs = KSubsets::new(n, s);
            while let Some(sub) = subs.next() {
                let mask = mask_of(sub);
                let rank = match &packed {
                    Some(g) => g.rank_masked(mask, &mut gf2_scratch),
                    None => rank_of_mask_generic(&h, mask, &mut scratch),
                };
                if rank < s {
                    return Ok(s);
                }
            }
        }
        Err(Error::InvariantViolation(
            "a nonzero code has a word of weight at most n".into(),
        ))
    }

    /// Reinterprets generator entries as integers over a new field and spans
    /// a code there. The dimension can drop when rows that were independent
    /// become dependent modulo the new characteristic.
    pub fn lift_to(&self, field: PrimeField) -> Result<LinearCode> {
        let entries: Vec<u64> = (0..self.gen.rows())
            .flat_map(|r| self.gen.row(r).iter().copied())
            .collect();
        let m = FieldMatrix::new(field, self.gen.rows(), self.gen.cols(), entries)?;
        LinearCode::from_span(m)
    }

    /// The subcode of the dual spanned by all dual words of weight at most
    /// `w`. The returned generator rows each have weight at most `w`.
    ///
    /// When the dual is small enough to walk word by word, its light words
    /// are collected directly. Otherwise, for every support candidate `S` of
    /// size `w`, the dual words supported inside `S` form the null space of
    /// the generator columns on `S`; the union of those spaces over all `S`
    /// spans the subcode, and a greedy rank-growing pass keeps a low-weight
    /// basis.
    pub fn low_weight_dual_subcode(&self, w: usize, limits: &Limits) -> Result<LinearCode> {
        let n = self.length();
        let f = self.field();
        let s = w.min(n);
        if s == 0 {
            return LinearCode::zero(f, n);
        }
        let dual_dim = n - self.dimension();
        if let Some(words) = (f.modulus() as u128).checked_pow(dual_dim as u32) {
            if words <= limits.word_budget as u128 {
                return self.dual().light_word_span(s);
            }
        }
        let count = binomial(n, s);
        if count > limits.subset_budget as u128 {
            return Err(Error::ResourceLimit {
                what: "low weight support subsets",
                needed: count,
                limit: limits.subset_budget as u128,
            });
        }
        let mut basis_rows: Vec<Vec<u64>> = Vec::new();
        let mut rank = 0usize;
        let mut subs = KSubsets::new(n, s);
        'subsets: while let Some(sub) = subs.next() {
            let local = self.gen.select_columns(sub)?.null_space_basis();
            for r in 0..local.rows() {
                let mut word = vec![0u64; n];
                for (j, &coord) in sub.iter().enumerate() {
                    word[coord - 1] = local.get(r, j);
                }
                let mut trial = basis_rows.clone();
                trial.push(word.clone());
                let m = FieldMatrix::from_rows(f, &trial)?;
                if m.rank() > rank {
                    rank += 1;
                    basis_rows.push(word);
                    if rank == dual_dim {
                        break 'subsets;
                    }
                }
            }
        }
        if basis_rows.is_empty() {
            return LinearCode::zero(f, n);
        }
        LinearCode::from_generator(FieldMatrix::from_rows(f, &basis_rows)?)
    }

    /// The subcode spanned by this code's own words of weight at most `w`,
    /// found by walking every word once. Basis rows are the light words
    /// themselves; echelon residues are kept separately only to decide
    /// independence.
    fn light_word_span(&self, w: usize) -> Result<LinearCode> {
        let n = self.length();
        let f = self.field();
        let mut word = vec![0u64; n];
        let mut echelon: Vec<Vec<u64>> = Vec::new();
        let mut basis: Vec<Vec<u64>> = Vec::new();
        self.walk_words(0, &mut word, &mut |word| {
            let weight = word.iter().filter(|&&x| x != 0).count();
            if weight == 0 || weight > w {
                return;
            }
            let mut residue = word.to_vec();
            for row in &echelon {
                let lead = row.iter().position(|&x| x != 0).expect("nonzero row");
                if residue[lead] != 0 {
                    let factor = f.div(residue[lead], row[lead]);
                    for (x, &y) in residue.iter_mut().zip(row) {
                        *x = f.sub(*x, f.mul(factor, y));
                    }
                }
            }
            if residue.iter().any(|&x| x != 0) {
                let lead = residue.iter().position(|&x| x != 0).unwrap();
                let at = echelon
                    .iter()
                    .position(|row| row.iter().position(|&x| x != 0).unwrap() > lead)
                    .unwrap_or(echelon.len());
                echelon.insert(at, residue);
                basis.push(word.to_vec());
            }
        });
        if basis.is_empty() {
            return LinearCode::zero(f, n);
        }
        LinearCode::from_generator(FieldMatrix::from_rows(f, &basis)?)
    }

    /// Visits every codeword exactly once, depth first over the coefficient
    /// of each generator row. Stepping a coefficient adds the row in place;
    /// after the last step one further addition wraps it back to zero.
    fn walk_words(&self, depth: usize, word: &mut Vec<u64>, visit: &mut impl FnMut(&[u64])) {
        if depth == self.dimension() {
            visit(word);
            return;
        }
        let f = self.field();
        self.walk_words(depth + 1, word, visit);
        for _ in 1..=f.modulus() - 1 {
            for (x, &g) in word.iter_mut().zip(self.gen.row(depth)) {
                *x = f.add(*x, g);
            }
            self.walk_words(depth + 1, word, visit);
        }
        for (x, &g) in word.iter_mut().zip(self.gen.row(depth)) {
            *x = f.add(*x, g);
        }
    }

    /// All distinct supports of nonzero codewords of weight at most `w`,
    /// in lexicographic order.
    pub fn supports_up_to_weight(&self, w: usize, limits: &Limits) -> Result<Vec<CoordSet>> {
        self.supports_impl(w, limits, false)
    }

    pub(crate) fn supports_impl(
        &self,
        w: usize,
        limits: &Limits,
        force_scan: bool,
    ) -> Result<Vec<CoordSet>> {
        let n = self.length();
        let k = self.dimension();
        let p = self.field().modulus();
        if k == 0 || w == 0 {
            return Ok(Vec::new());
        }
        if n > 64 {
            return Err(Error::ResourceLimit {
                what: "support scan block length",
                needed: n as u128,
                limit: 64,
            });
        }
        let mut found =
            if !force_scan && p == 2 && k <= 63 && (1u128 << k) <= limits.word_budget as u128 {
                self.supports_by_word_enumeration(w)?
            } else {
                self.supports_by_subset_scan(w, limits)?
            };
        found.sort();
        Ok(found)
    }

    /// Walks all codewords of a small binary code, collecting supports.
    fn supports_by_word_enumeration(&self, w: usize) -> Result<Vec<CoordSet>> {
        let k = self.dimension();
        let rows: Vec<u64> = (0..k)
            .map(|r| {
                self.gen
                    .row(r)
                    .iter()
                    .enumerate()
                    .fold(0u64, |acc, (c, &v)| acc | (v << c))
            })
            .collect();
        let mut seen = BTreeSet::new();
        for combo in 1u64..(1 << k) {
            let word = rows
                .iter()
                .enumerate()
                .filter(|(i, _)| combo >> i & 1 == 1)
                .fold(0u64, |acc, (_, &r)| acc ^ r);
            if word != 0 && word.count_ones() as usize <= w {
                seen.insert(word);
            }
        }
        Ok(seen.into_iter().map(CoordSet::from_mask).collect())
    }

    /// Scans supports directly: `T` carries a word of full support exactly
    /// when the supported subspace shrinks on removing any position, plus,
    /// if `|T|` exceeds the field characteristic, a check over the words of
    /// that subspace. The dimension criterion alone is sufficient for
    /// `|T| <= p` because a vector space over GF(p) is never the union of
    /// `p` or fewer proper subspaces.
    fn supports_by_subset_scan(&self, w: usize, limits: &Limits) -> Result<Vec<CoordSet>> {
        let n = self.length();
        let p = self.field().modulus();
        let top = w.min(n);
        let total: u128 = (1..=top).map(|s| binomial(n, s)).sum();
        if total > limits.subset_budget as u128 {
            return Err(Error::ResourceLimit {
                what: "support scan subsets",
                needed: total,
                limit: limits.subset_budget as u128,
            });
        }
        let h = self.dual_gen();
        let packed = Gf2Rows::pack(&h);
        let mut gf2_scratch = Gf2Scratch::new();
        let mut scratch = Vec::new();
        let mut rank_of = |mask: u64| match &packed {
            Some(g) => g.rank_masked(mask, &mut gf2_scratch),
            None => rank_of_mask_generic(&h, mask, &mut scratch),
        };
        let mut out = Vec::new();
        for s in 1..=top {
            let mut subs = KSubsets::new(n, s);
            'next_subset: while let Some(sub) = subs.next() {
                let mask = mask_of(sub);
                let dim = s - rank_of(mask);
                if dim == 0 {
                    continue;
                }
                for &c in sub {
                    let smaller = mask & !(1 << (c - 1));
                    let dim_smaller = (s - 1) - rank_of(smaller);
                    if dim_smaller == dim {
                        continue 'next_subset;
                    }
                }
                if s as u64 <= p || self.subset_has_full_support_word(sub, dim, limits)? {
                    out.push(CoordSet::new(sub.iter().copied()));
                }
            }
        }
        Ok(out)
    }

    /// Enumerates the subspace of words supported inside `sub` and tests
    /// whether any of them avoids zero on every position of `sub`.
    fn subset_has_full_support_word(
        &self,
        sub: &[usize],
        dim: usize,
        limits: &Limits,
    ) -> Result<bool> {
        let f = self.field();
        let p = f.modulus();
        let count = (p as u128).saturating_pow(dim as u32);
        if count > limits.word_budget as u128 {
            return Err(Error::ResourceLimit {
                what: "support scan words",
                needed: count,
                limit: limits.word_budget as u128,
            });
        }
        let basis = self.dual_gen().select_columns(sub)?.null_space_basis();
        debug_assert_eq!(basis.rows(), dim);
        let mut coeffs = vec![0u64; dim];
        let mut word = vec![0u64; sub.len()];
        loop {
            let mut idx = 0;
            while idx < dim {
                coeffs[idx] += 1;
                if coeffs[idx] < p {
                    break;
                }
                coeffs[idx] = 0;
                idx += 1;
            }
            if idx == dim {
                return Ok(false);
            }
            word.fill(0);
            for (i, &c) in coeffs.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for j in 0..sub.len() {
                    word[j] = f.add(word[j], f.mul(c, basis.get(i, j)));
                }
            }
            if word.iter().all(|&v| v != 0) {
                return Ok(true);
            }
        }
    }

    /// All `p^k` codewords, zero included. Only for small codes; guarded by
    /// `limits.word_budget`.
    pub fn enumerate_words(&self, limits: &Limits) -> Result<Vec<Vec<u64>>> {
        let f = self.field();
        let p = f.modulus();
        let k = self.dimension();
        let n = self.length();
        let count = (p as u128).saturating_pow(k as u32);
        if count > limits.word_budget as u128 {
            return Err(Error::ResourceLimit {
                what: "codeword enumeration",
                needed: count,
                limit: limits.word_budget as u128,
            });
        }
        let mut out = Vec::with_capacity(count as usize);
        let mut coeffs = vec![0u64; k];
        loop {
            let mut word = vec![0u64; n];
            for (i, &c) in coeffs.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for j in 0..n {
                    word[j] = f.add(word[j], f.mul(c, self.gen.get(i, j)));
                }
            }
            out.push(word);
            let mut idx = 0;
            while idx < k {
                coeffs[idx] += 1;
                if coeffs[idx] < p {
                    break;
                }
                coeffs[idx] = 0;
                idx += 1;
            }
            if idx == k {
                return Ok(out);
            }
        }
    }
}

/// Checks the duality relation between the weight hierarchies of a code and
/// its dual: the `i`-th weight of the code is `n + 1` minus the
/// `(k - i + 1)`-th gap of the dual hierarchy.
pub fn wei_duality_check(code: &LinearCode, limits: &Limits) -> Result<bool> {
    let n = code.length();
    let k = code.dimension();
    let profile = code.ghw(limits)?;
    let dual = code.dual();
    let dual_profile = if dual.dimension() == 0 {
        GhwProfile::new(n, Vec::new())?
    } else {
        dual.ghw(limits)?
    };
    let gaps = dual_profile.gaps();
    if gaps.len() != k {
        return Ok(false);
    }
    Ok((1..=k).all(|i| profile.weights()[i - 1] == n + 1 - gaps[k - i]))
}

/// Lexicographic enumeration of the size-`k` subsets of `{1, ..., n}`,
/// yielding each as a borrowed slice to avoid allocating per subset.
pub(crate) struct KSubsets {
    n: usize,
    k: usize,
    cur: Vec<usize>,
    started: bool,
}

impl KSubsets {
    pub(crate) fn new(n: usize, k: usize) -> Self {
        KSubsets {
            n,
            k,
            cur: Vec::new(),
            started: false,
        }
    }

    pub(crate) fn next(&mut self) -> Option<&[usize]> {
        if self.k > self.n {
            return None;
        }
        if !self.started {
            self.started = true;
            self.cur = (1..=self.k).collect();
            return Some(&self.cur);
        }
        let k = self.k;
        let mut i = k;
        while i > 0 {
            i -= 1;
            if self.cur[i] < self.n - (k - 1 - i) {
                self.cur[i] += 1;
                for j in i + 1..k {
                    self.cur[j] = self.cur[j - 1] + 1;
                }
                return Some(&self.cur);
            }
        }
        None
    }
}

pub(crate) fn mask_of(coords: &[usize]) -> u64 {
    coords.iter().fold(0u64, |m, &c| m | 1 << (c - 1))
}
