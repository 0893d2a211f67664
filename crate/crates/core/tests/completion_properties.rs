//! Completions of random parity spans, checked against the distance and
//! hierarchy formulas they are accepted to satisfy.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use seqloc::completion::{
    complete, verify_dmin_gap_formula, verify_dual_ghw_pattern, CompletionConfig,
};
use seqloc::{FieldMatrix, LinearCode, Limits, PrimeField};

fn gf(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn random_span(rng: &mut ChaCha12Rng, n: usize, max_rows: usize) -> LinearCode {
    loop {
        let rows = rng.gen_range(1..=max_rows);
        let entries: Vec<u64> = (0..rows * n).map(|_| rng.gen_range(0..2)).collect();
        let m = FieldMatrix::new(gf(2), rows, n, entries).unwrap();
        let code = LinearCode::from_span(m).unwrap();
        if code.dimension() > 0 {
            return code;
        }
    }
}

#[test]
fn random_spans_complete_and_satisfy_both_formulas() {
    let limits = Limits::default();
    let field = gf(65537);
    let mut rng = ChaCha12Rng::seed_from_u64(613);
    for round in 0..25 {
        let n = rng.gen_range(6..=12);
        let parity = random_span(&mut rng, n, 4);
        let lifted_dim = parity.lift_to(field).unwrap().dimension();
        let k = rng.gen_range(1..=(n - lifted_dim).min(4));
        let config = CompletionConfig {
            attempts: 50,
            seed: 1000 + round,
            ..CompletionConfig::new(field, k)
        };
        let done = complete(&parity, &config, &limits).unwrap();
        assert_eq!(done.code.dimension(), k);
        assert!(done.exhaustive);
        assert!(
            done.code
                .generator()
                .mul(&done.parity.generator().transpose())
                .unwrap()
                .is_zero(),
            "{parity:?} k={k}"
        );
        assert!(
            verify_dmin_gap_formula(&done.parity, &done.code, &limits).unwrap(),
            "{parity:?} k={k}"
        );
        assert!(
            verify_dual_ghw_pattern(&done.parity, &done.code, &limits).unwrap(),
            "{parity:?} k={k}"
        );
    }
}

#[test]
fn accepted_candidates_keep_full_rank_on_every_core() {
    let limits = Limits::default();
    let field = gf(65537);
    let mut rng = ChaCha12Rng::seed_from_u64(727);
    for _ in 0..10 {
        let n = rng.gen_range(6..=10);
        let parity = random_span(&mut rng, n, 3);
        let lifted = parity.lift_to(field).unwrap();
        let k = rng.gen_range(1..=(n - lifted.dimension()).min(3));
        let done =
            complete(&parity, &CompletionConfig::new(field, k), &limits).unwrap();
        let cores = lifted.enumerate_cores(k, &limits).unwrap();
        assert_eq!(done.cores_checked, cores.len() as u64);
        for core in &cores {
            assert_eq!(
                done.code
                    .generator()
                    .rank_of_columns(core.as_slice())
                    .unwrap(),
                k,
                "{parity:?} core {core}"
            );
        }
    }
}

#[test]
fn completions_reproduce_and_respond_to_the_seed() {
    let limits = Limits::default();
    let field = gf(65537);
    let mut rng = ChaCha12Rng::seed_from_u64(811);
    let parity = random_span(&mut rng, 9, 3);
    let k = 9 - parity.lift_to(field).unwrap().dimension();
    let config = CompletionConfig {
        attempts: 50,
        ..CompletionConfig::new(field, k)
    };
    let a = complete(&parity, &config, &limits).unwrap();
    let b = complete(&parity, &config, &limits).unwrap();
    assert_eq!(a.code.generator(), b.code.generator());
    assert_eq!(a.attempts_used, b.attempts_used);
    let other = complete(
        &parity,
        &CompletionConfig {
            seed: config.seed + 1,
            ..config
        },
        &limits,
    )
    .unwrap();
    assert_eq!(other.code.dimension(), k);
    assert_eq!(
        other.code.d_min(&limits).unwrap(),
        a.code.d_min(&limits).unwrap()
    );
}

#[test]
fn empty_span_forces_the_classical_distance() {
    let limits = Limits::default();
    let parity = LinearCode::zero(gf(11), 6).unwrap();
    let done = complete(
        &parity,
        &CompletionConfig::new(gf(11), 3),
        &limits,
    )
    .unwrap();
    assert_eq!(done.cores_checked, 20);
    assert_eq!(done.code.d_min(&limits).unwrap(), 4);
    assert!(verify_dmin_gap_formula(&done.parity, &done.code, &limits).unwrap());
    assert!(verify_dual_ghw_pattern(&done.parity, &done.code, &limits).unwrap());
}
