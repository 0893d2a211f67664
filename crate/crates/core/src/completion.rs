//! Randomized completion of a parity family into a full code.
//!
//! Given a parity span and a target dimension `k`, the completion picks a
//! random `k`-dimensional code inside the annihilator of the parities over a
//! chosen (typically large) prime field. A candidate is accepted when its
//! generator has full rank and every size-`k` core of the parity span is an
//! information set of the candidate; over a large field a random candidate
//! passes with overwhelming probability, and acceptance certifies that the
//! completed code has the largest minimum distance its parity structure
//! allows: `n + 1` minus the `k`-th gap of the parity weight hierarchy.
//!
//! Trials are deterministic: trial `i` draws from a counter-based stream `i`
//! of a ChaCha generator seeded by the configuration, so results reproduce
//! across runs and platforms.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::algebra::{FieldMatrix, PrimeField};
use crate::code::{CoordSet, GhwProfile, LinearCode};
use crate::error::{Error, Result};
use crate::limits::{binomial, Limits};

/// Parameters for [`complete`].
#[derive(Clone, Copy, Debug)]
pub struct CompletionConfig {
    /// Field to complete over; the parity span is lifted into it first.
    pub field: PrimeField,
    /// Dimension of the completed code; at most `n - t` for a lifted parity
    /// span of dimension `t`.
    pub dimension: usize,
    /// How many random candidates to try before giving up.
    pub attempts: u32,
    /// Seed for the deterministic trial streams.
    pub seed: u64,
}

impl CompletionConfig {
    pub fn new(field: PrimeField, dimension: usize) -> Self {
        CompletionConfig {
            field,
            dimension,
            attempts: 32,
            seed: 7,
        }
    }
}

/// A successful completion.
#[derive(Clone, Debug)]
pub struct Completion {
    /// The completed `[n, k]` code.
    pub code: LinearCode,
    /// The parity span lifted to the completion field; every row of it is a
    /// parity check of `code`.
    pub parity: LinearCode,
    /// Trials consumed, counting the successful one.
    pub attempts_used: u32,
    /// Cores whose information-set property was verified for the accepted
    /// candidate.
    pub cores_checked: u64,
    /// Whether the core check covered every size-`k` subset or a random
    /// sample of `limits.core_sample` subsets.
    pub exhaustive: bool,
    /// Field sizes above `k * n^k` guarantee that a passing candidate
    /// exists. Reported for reference only; acceptance rests on the checks,
    /// not on this counting threshold, and much smaller fields usually work.
    pub existence_threshold: u128,
}

/// Completes `parity` to a code of dimension `config.dimension` over
/// `config.field`.
pub fn complete(
    parity: &LinearCode,
    config: &CompletionConfig,
    limits: &Limits,
) -> Result<Completion> {
    if config.attempts == 0 {
        return Err(Error::InvalidParameters(
            "completion needs at least one attempt".into(),
        ));
    }
    let q = config.field;
    let k = config.dimension;
    let lifted = parity.lift_to(q)?;
    let n = lifted.length();
    let t = lifted.dimension();
    if k == 0 || k > n - t {
        return Err(Error::InvalidParameters(format!(
            "completion dimension {k} must lie in 1..={} for a parity span of dimension {t}",
            n - t
        )));
    }
    let annihilator = lifted.generator().null_space_basis();
    let exhaustive = n <= 64 && binomial(n, k) <= limits.subset_budget as u128;
    let cores: Vec<CoordSet> = if exhaustive {
        lifted.enumerate_cores(k, limits)?
    } else {
        let mut rng = ChaCha12Rng::seed_from_u64(config.seed);
        rng.set_stream(0);
        let mut sampled = Vec::new();
        for _ in 0..limits.core_sample {
            let pick = rand::seq::index::sample(&mut rng, n, k);
            let set = CoordSet::new(pick.iter().map(|i| i + 1));
            if lifted.is_core(&set)? {
                sampled.push(set);
            }
        }
        sampled
    };
    for attempt in 1..=config.attempts {
        let mut rng = ChaCha12Rng::seed_from_u64(config.seed);
        rng.set_stream(attempt as u64);
        let entries: Vec<u64> = (0..k * annihilator.rows())
            .map(|_| rng.gen_range(0..q.modulus()))
            .collect();
        let coeffs = FieldMatrix::new(q, k, annihilator.rows(), entries)?;
        let gen = coeffs.mul(&annihilator)?;
        if gen.rank() < k {
            continue;
        }
        let preserves_cores = cores
            .iter()
            .map(|s| gen.rank_of_columns(s.as_slice()))
            .try_fold(true, |ok, rank| Ok::<bool, Error>(ok && rank? == k))?;
        if !preserves_cores {
            continue;
        }
        debug_assert!(gen.mul(&lifted.generator().transpose())?.is_zero());
        return Ok(Completion {
            code: LinearCode::from_generator(gen)?,
            parity: lifted,
            attempts_used: attempt,
            cores_checked: cores.len() as u64,
            exhaustive,
            existence_threshold: (k as u128)
                .saturating_mul((n as u128).saturating_pow(k as u32)),
        });
    }
    Err(Error::RetryExhausted {
        attempts: config.attempts,
    })
}

/// Checks that a code built on a parity span has the promised minimum
/// distance `n + 1` minus the `k`-th gap of the parity weight hierarchy.
pub fn verify_dmin_gap_formula(
    parity: &LinearCode,
    code: &LinearCode,
    limits: &Limits,
) -> Result<bool> {
    check_compatible(parity, code)?;
    let n = code.length();
    let k = code.dimension();
    let gap = parity_profile(parity, limits)?.gap(k).ok_or_else(|| {
        Error::InvalidParameters(format!(
            "the parity hierarchy has fewer than {k} gaps"
        ))
    })?;
    Ok(code.d_min(limits)? == n + 1 - gap)
}

/// Checks the weight hierarchy of the dual of a completed code against the
/// parity span: writing `g` for the `k`-th gap of the parity hierarchy, the
/// first `g - k` dual weights equal the parity weights, and from there on
/// the `i`-th dual weight is simply `i + k`.
pub fn verify_dual_ghw_pattern(
    parity: &LinearCode,
    code: &LinearCode,
    limits: &Limits,
) -> Result<bool> {
    check_compatible(parity, code)?;
    let n = code.length();
    let k = code.dimension();
    let profile = parity_profile(parity, limits)?;
    let gap = profile.gap(k).ok_or_else(|| {
        Error::InvalidParameters(format!(
            "the parity hierarchy has fewer than {k} gaps"
        ))
    })?;
    let slack = gap - k;
    let dual_profile = code.dual().ghw(limits)?;
    let expected: Vec<usize> = (1..=n - k)
        .map(|i| {
            if i <= slack {
                profile.weights()[i - 1]
            } else {
                i + k
            }
        })
        .collect();
    Ok(dual_profile.weights() == expected)
}

/// The weight hierarchy of the parity span, treating a zero span as an
/// empty hierarchy whose gaps are all of `1..=n`.
fn parity_profile(parity: &LinearCode, limits: &Limits) -> Result<GhwProfile> {
    if parity.dimension() == 0 {
        GhwProfile::new(parity.length(), Vec::new())
    } else {
        parity.ghw(limits)
    }
}

fn check_compatible(parity: &LinearCode, code: &LinearCode) -> Result<()> {
    if parity.field() != code.field() || parity.length() != code.length() {
        return Err(Error::DimensionMismatch(format!(
            "parity is a length {} code over {}, candidate is a length {} code over {}",
            parity.length(),
            parity.field(),
            code.length(),
            code.field()
        )));
    }
    Ok(())
}
