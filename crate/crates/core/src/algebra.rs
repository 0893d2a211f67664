//! Exact linear algebra over prime fields.
//!
//! Everything in this module works on dense row-major matrices whose entries
//! are canonical residues in `0..p`. Row reduction, column ranks, and null
//! spaces are the workhorses for all the code-level operations in the crate,
//! so the routines favor predictable exact behavior over cleverness: no
//! floating point, no sparsity, no extension fields.
//!
//! Column positions in the public API are 1-based throughout the crate; a
//! pivot list of `[1, 2, 3]` means the first three columns carry pivots.

use std::fmt;

use crate::error::{Error, Result};

/// A prime field of order `p`, used as a lightweight copyable handle for
/// modular arithmetic on `u64` residues.
///
/// Construction checks primality, so a `PrimeField` value always denotes a
/// real field.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Builds the field of order `p`, rejecting composites and `p < 2`.
    pub fn new(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(PrimeField { p })
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn modulus(self) -> u64 {
        self.p
    }

    /// Canonical residue of an arbitrary `u64`.
    pub fn reduce(self, x: u64) -> u64 {
        x % self.p
    }

    /// Sum of two canonical residues.
    pub fn add(self, a: u64, b: u64) -> u64 {
        debug_assert!(a < self.p && b < self.p);
        // a + b < 2p <= 2^64 may still overflow u64 for p near the top, so go
        // through the subtraction form instead of a plain sum.
        let r = self.p - b;
        if a >= r {
            a - r
        } else {
            a + b
        }
    }

    /// Additive inverse of a canonical residue.
    pub fn neg(self, a: u64) -> u64 {
        debug_assert!(a < self.p);
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn sub(self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    pub fn mul(self, a: u64, b: u64) -> u64 {
        debug_assert!(a < self.p && b < self.p);
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    /// Multiplicative inverse via the extended Euclidean algorithm.
    ///
    /// # Panics
    ///
    /// Panics if `a == 0`; callers are expected to guard divisions.
    pub fn inv(self, a: u64) -> u64 {
        assert!(a != 0, "division by zero in GF({})", self.p);
        let (mut r0, mut r1) = (self.p as i128, a as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1, "gcd(a, p) must be 1 for prime p");
        t0.rem_euclid(self.p as i128) as u64
    }

    pub fn div(self, a: u64, b: u64) -> u64 {
        self.mul(a, self.inv(b))
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.p)
    }
}

/// Deterministic Miller-Rabin primality test, exact for all `u64`.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    // Write n - 1 = d * 2^s with d odd.
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    // These twelve bases are known to decide primality for every 64-bit n.
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pow_mod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    let m = modulus as u128;
    let mut acc: u128 = 1;
    let mut b = base as u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Result of row reduction: the reduced row echelon form, its rank, and the
/// 1-based pivot columns in strictly increasing order.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: FieldMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// Dense row-major matrix over a prime field.
///
/// Entries are always canonical residues; the constructor reduces its input.
/// Zero-row and zero-column shapes are legal and behave as the empty products
/// they are, which keeps the code-level operations free of special cases.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FieldMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    entries: Vec<u64>,
}

impl FieldMatrix {
    /// Builds a matrix from row-major entries, reducing each entry mod p.
    pub fn new(field: PrimeField, rows: usize, cols: usize, entries: Vec<u64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch {
                rows,
                cols,
                got: entries.len(),
            });
        }
        let entries = entries.into_iter().map(|e| field.reduce(e)).collect();
        Ok(FieldMatrix {
            field,
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        FieldMatrix {
            field,
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from explicit rows; all rows must share one length.
    pub fn from_rows(field: PrimeField, rows: &[Vec<u64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(
                "rows of differing lengths".into(),
            ));
        }
        Self::new(field, rows.len(), cols, rows.concat())
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        debug_assert!(r < self.rows && c < self.cols);
        self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        debug_assert!(r < self.rows && c < self.cols);
        self.entries[r * self.cols + c] = self.field.reduce(v);
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    pub fn transpose(&self) -> FieldMatrix {
        let mut out = FieldMatrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.entries[c * self.rows + r] = self.get(r, c);
            }
        }
        out
    }

    /// Matrix product; fails on shape or field mismatch.
    pub fn mul(&self, other: &FieldMatrix) -> Result<FieldMatrix> {
        if self.field != other.field {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply over {} and {}",
                self.field, other.field
            )));
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = self.field;
        let mut out = FieldMatrix::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for i in 0..self.cols {
                let a = self.get(r, i);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let cur = out.entries[r * other.cols + c];
                    out.entries[r * other.cols + c] = f.add(cur, f.mul(a, other.get(i, c)));
                }
            }
        }
        Ok(out)
    }

    /// Keeps only the columns named by the 1-based coordinates in `coords`,
    /// in the matrix's own column order.
    pub fn select_columns(&self, coords: &[usize]) -> Result<FieldMatrix> {
        let mut sorted: Vec<usize> = Vec::with_capacity(coords.len());
        for &c in coords {
            if c == 0 || c > self.cols {
                return Err(Error::CoordOutOfRange {
                    coord: c,
                    max: self.cols,
                });
            }
            sorted.push(c - 1);
        }
        sorted.sort_unstable();
        sorted.dedup();
        let mut out = FieldMatrix::zeros(self.field, self.rows, sorted.len());
        for r in 0..self.rows {
            for (j, &c) in sorted.iter().enumerate() {
                out.entries[r * sorted.len() + j] = self.get(r, c);
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form, with rank and 1-based pivot columns.
    pub fn rref(&self) -> Rref {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead = 0usize; // next row to place a pivot in
        for c in 0..m.cols {
            let Some(src) = (lead..m.rows).find(|&r| m.get(r, c) != 0) else {
                continue;
            };
            if src != lead {
                for j in 0..m.cols {
                    m.entries.swap(src * m.cols + j, lead * m.cols + j);
                }
            }
            let inv = f.inv(m.get(lead, c));
            for j in c..m.cols {
                let v = m.get(lead, j);
                m.entries[lead * m.cols + j] = f.mul(v, inv);
            }
            for r in 0..m.rows {
                if r == lead {
                    continue;
                }
                let factor = m.get(r, c);
                if factor == 0 {
                    continue;
                }
                for j in c..m.cols {
                    let v = f.sub(m.get(r, j), f.mul(factor, m.get(lead, j)));
                    m.entries[r * m.cols + j] = v;
                }
            }
            pivots.push(c + 1);
            lead += 1;
            if lead == m.rows {
                break;
            }
        }
        Rref {
            rank: pivots.len(),
            matrix: m,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Rank of the submatrix formed by the 1-based columns in `coords`.
    pub fn rank_of_columns(&self, coords: &[usize]) -> Result<usize> {
        Ok(self.select_columns(coords)?.rank())
    }

    /// Basis of the right null space `{x : M xᵀ = 0}`, one vector per row,
    /// itself in reduced row echelon form so the result is canonical. The
    /// basis has exactly `cols - rank` rows.
    pub fn null_space_basis(&self) -> FieldMatrix {
        let f = self.field;
        let rr = self.rref();
        let pivot_cols: Vec<usize> = rr.pivots.iter().map(|p| p - 1).collect();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivot_cols {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut basis = FieldMatrix::zeros(f, free.len(), self.cols);
        for (i, &fc) in free.iter().enumerate() {
            basis.entries[i * self.cols + fc] = 1;
            for (row, &pc) in pivot_cols.iter().enumerate() {
                basis.entries[i * self.cols + pc] = f.neg(rr.matrix.get(row, fc));
            }
        }
        // The rows are independent (each has a lone 1 in its free column);
        // reduce once more so the basis does not depend on construction order.
        let out = basis.rref();
        debug_assert_eq!(out.rank, free.len());
        out.matrix
    }

    /// Serializes in the plain text format accepted by [`FieldMatrix::parse_text`]:
    /// a `rows cols p` header line followed by one line of space-separated
    /// entries per row, each in `0..p`, with `\n` line endings.
    pub fn to_text(&self) -> String {
        assert!(
            self.cols > 0 || self.rows == 0,
            "matrices with rows but no columns have no text form"
        );
        let mut out = format!("{} {} {}\n", self.rows, self.cols, self.field.p);
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(u64::to_string).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    /// Parses the text format written by [`FieldMatrix::to_text`]. Lines that
    /// begin with `#` are comments; blank lines and trailing whitespace are
    /// ignored. Entries must already be canonical residues in `0..p`.
    pub fn parse_text(text: &str) -> Result<FieldMatrix> {
        let mut content = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim_end()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = content
            .next()
            .ok_or_else(|| Error::Parse {
                line: 1,
                msg: "empty input".into(),
            })?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(Error::Parse {
                line: hline,
                msg: format!("header must be `rows cols p`, got {fields:?}"),
            });
        }
        let parse_num = |s: &str, line: usize| -> Result<u64> {
            s.parse().map_err(|_| Error::Parse {
                line,
                msg: format!("`{s}` is not a non-negative integer"),
            })
        };
        let rows = parse_num(fields[0], hline)? as usize;
        let cols = parse_num(fields[1], hline)? as usize;
        let p = parse_num(fields[2], hline)?;
        let field = PrimeField::new(p)?;
        if cols == 0 && rows > 0 {
            return Err(Error::Parse {
                line: hline,
                msg: "matrices with rows but no columns are not representable".into(),
            });
        }
        let mut entries = Vec::with_capacity(rows * cols);
        for want_row in 0..rows {
            let (lno, line) = content.next().ok_or_else(|| Error::Parse {
                line: hline,
                msg: format!("expected {rows} data rows, found {want_row}"),
            })?;
            let mut count = 0usize;
            for tok in line.split_whitespace() {
                let v = parse_num(tok, lno)?;
                if v >= p {
                    return Err(Error::Parse {
                        line: lno,
                        msg: format!("entry {v} is not a canonical residue mod {p}"),
                    });
                }
                entries.push(v);
                count += 1;
            }
            if count != cols {
                return Err(Error::Parse {
                    line: lno,
                    msg: format!("expected {cols} entries, found {count}"),
                });
            }
        }
        if let Some((lno, _)) = content.next() {
            return Err(Error::Parse {
                line: lno,
                msg: "trailing content after final row".into(),
            });
        }
        FieldMatrix::new(field, rows, cols, entries)
    }
}

/// Bit-packed GF(2) row set for fast masked-column rank computations.
///
/// Row `i` of the source matrix becomes a word whose bit `c` is entry
/// `(i, c)`; ranks restricted to a column subset are then a handful of XORs.
/// Only usable for matrices over GF(2) with at most 64 columns.
pub(crate) struct Gf2Rows {
    rows: Vec<u64>,
}

impl Gf2Rows {
    pub(crate) fn pack(m: &FieldMatrix) -> Option<Gf2Rows> {
        if m.field().modulus() != 2 || m.cols() > 64 {
            return None;
        }
        let rows = (0..m.rows())
            .map(|r| {
                m.row(r)
                    .iter()
                    .enumerate()
                    .fold(0u64, |acc, (c, &v)| acc | (v << c))
            })
            .collect();
        Some(Gf2Rows { rows })
    }

    /// Rank of the rows with columns restricted to the set bits of `mask`.
    pub(crate) fn rank_masked(&self, mask: u64, scratch: &mut Gf2Scratch) -> usize {
        let mut rank = 0;
        for &row in &self.rows {
            let mut v = row & mask;
            while v != 0 {
                let lead = 63 - v.leading_zeros() as usize;
                let b = scratch.basis[lead];
                if b == 0 {
                    scratch.basis[lead] = v;
                    scratch.touched.push(lead as u8);
                    rank += 1;
                    break;
                }
                v ^= b;
            }
        }
        for &t in &scratch.touched {
            scratch.basis[t as usize] = 0;
        }
        scratch.touched.clear();
        rank
    }
}

/// Reusable elimination state for [`Gf2Rows::rank_masked`].
pub(crate) struct Gf2Scratch {
    basis: [u64; 64],
    touched: Vec<u8>,
}

impl Gf2Scratch {
    pub(crate) fn new() -> Self {
        Gf2Scratch {
            basis: [0; 64],
            touched: Vec::with_capacity(64),
        }
    }
}

/// Rank of the columns of `m` selected by the set bits of `mask`, over any
/// prime field, reusing `scratch` for the working copy.
pub(crate) fn rank_of_mask_generic(m: &FieldMatrix, mask: u64, scratch: &mut Vec<u64>) -> usize {
    let f = m.field();
    let width = mask.count_ones() as usize;
    if width == 0 || m.rows() == 0 {
        return 0;
    }
    scratch.clear();
    scratch.reserve(m.rows() * width);
    for r in 0..m.rows() {
        let row = m.row(r);
        let mut bits = mask;
        while bits != 0 {
            let c = bits.trailing_zeros() as usize;
            scratch.push(row[c]);
            bits &= bits - 1;
        }
    }
    // Plain Gaussian elimination on the packed scratch buffer.
    let rows = m.rows();
    let mut rank = 0usize;
    for col in 0..width {
        let Some(src) = (rank..rows).find(|&r| scratch[r * width + col] != 0) else {
            continue;
        };
        if src != rank {
            for j in col..width {
                scratch.swap(src * width + j, rank * width + j);
            }
        }
        let inv = f.inv(scratch[rank * width + col]);
        for j in col..width {
            scratch[rank * width + j] = f.mul(scratch[rank * width + j], inv);
        }
        for r in 0..rows {
            if r == rank {
                continue;
            }
            let factor = scratch[r * width + col];
            if factor == 0 {
                continue;
            }
            for j in col..width {
                let v = f.sub(scratch[r * width + j], f.mul(factor, scratch[rank * width + j]));
                scratch[r * width + j] = v;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gf(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn primality_is_checked_loudly() {
        for bad in [0u64, 1, 4, 6, 9, 1_000_000, 65536, (1 << 61) - 2] {
            assert!(matches!(PrimeField::new(bad), Err(Error::NotPrime(_))), "{bad}");
        }
        for good in [2u64, 3, 5, 7, 65537, 2_147_483_647, (1 << 61) - 1] {
            assert!(PrimeField::new(good).is_ok(), "{good}");
        }
    }

    #[test]
    fn field_axioms_on_random_triples() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(11);
        for p in [2u64, 3, 5, 65537, 2_147_483_647] {
            let f = gf(p);
            for _ in 0..200 {
                let a = rng.gen_range(0..p);
                let b = rng.gen_range(0..p);
                let c = rng.gen_range(0..p);
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                assert_eq!(f.add(a, f.neg(a)), 0);
                assert_eq!(f.sub(a, b), f.add(a, f.neg(b)));
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
            }
        }
    }

    #[test]
    fn addition_near_the_top_of_u64_does_not_overflow() {
        let p = (1 << 61) - 1;
        let f = gf(p);
        assert_eq!(f.add(p - 1, p - 1), p - 2);
        assert_eq!(f.mul(p - 1, p - 1), 1);
    }

    #[test]
    fn rref_of_identity_has_unit_pivots() {
        let m = FieldMatrix::identity(gf(5), 3);
        let rr = m.rref();
        assert_eq!(rr.rank, 3);
        assert_eq!(rr.pivots, vec![1, 2, 3]);
        assert_eq!(rr.matrix, m);
    }

    #[test]
    fn rref_two_overlapping_gf2_rows() {
        let m = FieldMatrix::from_rows(gf(2), &[vec![1, 1, 1, 0], vec![0, 1, 1, 1]]).unwrap();
        let rr = m.rref();
        assert_eq!(rr.rank, 2);
        assert_eq!(rr.pivots, vec![1, 2]);
        let want =
            FieldMatrix::from_rows(gf(2), &[vec![1, 0, 0, 1], vec![0, 1, 1, 1]]).unwrap();
        assert_eq!(rr.matrix, want);
    }

    #[test]
    fn rref_handles_empty_shapes() {
        let m = FieldMatrix::zeros(gf(3), 0, 4);
        let rr = m.rref();
        assert_eq!(rr.rank, 0);
        assert!(rr.pivots.is_empty());
        let m = FieldMatrix::zeros(gf(3), 4, 0);
        assert_eq!(m.rref().rank, 0);
    }

    #[test]
    fn null_space_of_parity_row_is_even_weight_basis() {
        let m = FieldMatrix::from_rows(gf(2), &[vec![1, 1, 1, 1]]).unwrap();
        let ns = m.null_space_basis();
        let want = FieldMatrix::from_rows(
            gf(2),
            &[vec![1, 0, 0, 1], vec![0, 1, 0, 1], vec![0, 0, 1, 1]],
        )
        .unwrap();
        assert_eq!(ns, want);
    }

    #[test]
    fn null_space_edge_shapes() {
        // Full-rank square matrix: trivial null space.
        let m = FieldMatrix::identity(gf(7), 4);
        let ns = m.null_space_basis();
        assert_eq!((ns.rows(), ns.cols()), (0, 4));
        // No rows at all: everything is in the null space.
        let m = FieldMatrix::zeros(gf(7), 0, 3);
        assert_eq!(m.null_space_basis(), FieldMatrix::identity(gf(7), 3));
    }

    #[test]
    fn null_space_vectors_annihilate_the_matrix() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(5);
        for p in [2u64, 3, 65537] {
            let f = gf(p);
            for _ in 0..40 {
                let rows = rng.gen_range(0..5);
                let cols = rng.gen_range(1..7);
                let entries: Vec<u64> = (0..rows * cols).map(|_| rng.gen_range(0..p)).collect();
                let m = FieldMatrix::new(f, rows, cols, entries).unwrap();
                let ns = m.null_space_basis();
                assert_eq!(ns.rows(), cols - m.rank());
                if ns.rows() > 0 {
                    assert!(m.mul(&ns.transpose()).unwrap().is_zero());
                }
            }
        }
    }

    // Column ranks of the example parity matrix whose rows have supports
    // {1,2,3,4}, {1,5,6,7}, {2,5,8,9}, {3,6,8,10}. Restricted to columns
    // 1..=4 the four rows reduce to (1,1,1,1), (1,0,0,0), (0,1,0,0),
    // (0,0,1,0), which are independent, so the rank there is 4.
    #[test]
    fn rank_of_columns_on_the_k4_parity_matrix() {
        let m = k4_parity_matrix();
        assert_eq!(m.rank_of_columns(&[1, 2, 3, 4]).unwrap(), 4);
        assert_eq!(m.rank_of_columns(&[4, 7, 9, 10]).unwrap(), 4);
        assert_eq!(m.rank_of_columns(&[1]).unwrap(), 1);
        assert_eq!(m.rank(), 4);
        assert!(matches!(
            m.rank_of_columns(&[0]),
            Err(Error::CoordOutOfRange { coord: 0, max: 10 })
        ));
        assert!(matches!(
            m.rank_of_columns(&[11]),
            Err(Error::CoordOutOfRange { coord: 11, max: 10 })
        ));
    }

    fn k4_parity_matrix() -> FieldMatrix {
        FieldMatrix::from_rows(
            gf(2),
            &[
                vec![1, 1, 1, 1, 0, 0, 0, 0, 0, 0],
                vec![1, 0, 0, 0, 1, 1, 1, 0, 0, 0],
                vec![0, 1, 0, 0, 1, 0, 0, 1, 1, 0],
                vec![0, 0, 1, 0, 0, 1, 0, 1, 0, 1],
            ],
        )
        .unwrap()
    }

    #[test]
    fn masked_rank_paths_agree_with_submatrix_rank() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(9);
        let mut scratch = Vec::new();
        let mut gf2_scratch = Gf2Scratch::new();
        for p in [2u64, 5] {
            let f = gf(p);
            for _ in 0..30 {
                let rows = rng.gen_range(1..6);
                let cols = rng.gen_range(1..9);
                let entries: Vec<u64> = (0..rows * cols).map(|_| rng.gen_range(0..p)).collect();
                let m = FieldMatrix::new(f, rows, cols, entries).unwrap();
                let packed = Gf2Rows::pack(&m);
                for mask in 0u64..(1 << cols) {
                    let coords: Vec<usize> =
                        (0..cols).filter(|c| mask >> c & 1 == 1).map(|c| c + 1).collect();
                    let want = m.rank_of_columns(&coords).unwrap();
                    assert_eq!(rank_of_mask_generic(&m, mask, &mut scratch), want);
                    if let Some(g) = &packed {
                        assert_eq!(g.rank_masked(mask, &mut gf2_scratch), want);
                    }
                }
            }
        }
    }

    #[test]
    fn text_format_round_trip_examples() {
        let m = k4_parity_matrix();
        let text = m.to_text();
        assert!(text.starts_with("4 10 2\n"));
        assert!(text.ends_with('\n'));
        assert_eq!(FieldMatrix::parse_text(&text).unwrap(), m);

        let parsed = FieldMatrix::parse_text(
            "# comment line\n2 3 5\n0 1 4   \n\n# another\n2 2 2\n",
        )
        .unwrap();
        assert_eq!(parsed.row(0), &[0, 1, 4]);
        assert_eq!(parsed.row(1), &[2, 2, 2]);

        let empty = FieldMatrix::zeros(gf(2), 0, 10);
        assert_eq!(FieldMatrix::parse_text(&empty.to_text()).unwrap(), empty);
    }

    #[test]
    fn parse_rejects_malformed_input() {
        let cases = [
            ("", "empty"),
            ("2 3\n0 0 0\n0 0 0\n", "short header"),
            ("1 3 4\n0 0 0\n", "composite modulus"),
            ("1 3 5\n0 0\n", "short row"),
            ("1 3 5\n0 0 0 0\n", "long row"),
            ("2 3 5\n0 0 0\n", "missing row"),
            ("1 3 5\n0 0 7\n", "entry out of range"),
            ("1 3 5\n0 0 0\n1 1 1\n", "trailing row"),
            ("1 0 5\n", "zero columns"),
            ("1 3 5\n0 x 0\n", "non-numeric"),
        ];
        for (text, what) in cases {
            assert!(FieldMatrix::parse_text(text).is_err(), "{what}");
        }
    }

    #[test]
    fn select_columns_keeps_original_order() {
        let m = FieldMatrix::from_rows(gf(7), &[vec![1, 2, 3], vec![4, 5, 6]]).unwrap();
        let s = m.select_columns(&[3, 1]).unwrap();
        assert_eq!(s.row(0), &[1, 3]);
        assert_eq!(s.row(1), &[4, 6]);
    }

    proptest! {
        #[test]
        fn serialization_then_parsing_is_identity(
            p in prop::sample::select(vec![2u64, 3, 5, 65537]),
            rows in 0usize..5,
            cols in 1usize..6,
            seed in any::<u64>(),
        ) {
            use rand::{Rng, SeedableRng};
            let f = gf(p);
            let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed);
            let entries: Vec<u64> = (0..rows * cols).map(|_| rng.gen_range(0..p)).collect();
            let m = FieldMatrix::new(f, rows, cols, entries).unwrap();
            prop_assert_eq!(FieldMatrix::parse_text(&m.to_text()).unwrap(), m);
        }

        #[test]
        fn rref_is_idempotent_and_rank_transposes(
            p in prop::sample::select(vec![2u64, 3, 5]),
            rows in 0usize..5,
            cols in 0usize..6,
            seed in any::<u64>(),
        ) {
            use rand::{Rng, SeedableRng};
            let f = gf(p);
            let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed);
            let entries: Vec<u64> = (0..rows * cols).map(|_| rng.gen_range(0..p)).collect();
            let m = FieldMatrix::new(f, rows, cols, entries).unwrap();
            let rr = m.rref();
            let again = rr.matrix.rref();
            prop_assert_eq!(&again.matrix, &rr.matrix);
            prop_assert_eq!(again.rank, rr.rank);
            prop_assert_eq!(m.transpose().rank(), rr.rank);
            let mut last = 0;
            for &pv in &rr.pivots {
                prop_assert!(pv > last, "pivots strictly increasing");
                last = pv;
            }
        }
    }
}
