# tests/test_protocol.py
import itertools

import numpy as np
import pytest

from tfqkd.Analytic import fidelity
from tfqkd.Errors import DomainError
from tfqkd.Eve import Absent, FullInterceptResend, TimeSliceAttack
from tfqkd.Measurement import sample_measurement
from tfqkd.Protocol import (
    BLOCK_SIZE,
    SessionConfig,
    TrialRecord,
    run_session,
    shard_plan,
    sift,
    simulate_block,
)
from tfqkd.PulseModel import Basis, DimensionlessParams

T, F = Basis.TIME, Basis.FREQUENCY
STRATEGIES = [Absent(), FullInterceptResend(), TimeSliceAttack(0.3)]


def _config(trials=50_000, seed=1, eve=None, shards=1, **kw):
    params = DimensionlessParams(**{"x": 1.65, "y": 0.05, "z": 2.5, **kw})
    return SessionConfig(params, trials, seed, eve or Absent(), shards)


# --- configuration ---


@pytest.mark.parametrize(
    "kw, match",
    [
        ({"trials": 0}, "trials must be >= 1"),
        ({"shards": 0}, "shards must be >= 1"),
        ({"seed": -1}, "seed must lie"),
        ({"seed": 2**64}, "seed must lie"),
    ],
)
def test_session_config_rejects(kw, match):
    with pytest.raises(DomainError, match=match):
        _config(**kw)


def test_blocks_and_shard_plan():
    config = _config(trials=5 * BLOCK_SIZE + 1, shards=4)
    assert config.blocks == 6
    assert shard_plan(config) == [(0, 1), (1, 3), (3, 4), (4, 6)]
    assert shard_plan(_config(trials=10, shards=8)) == [(0, 1)]


# --- sifting ---


@pytest.mark.parametrize(
    "alice_basis, symbol, bob_basis", list(itertools.product(Basis, (0, 1), Basis))
)
def test_sift_truth_table(alice_basis, symbol, bob_basis):
    params = DimensionlessParams(10.0, 0.05, 2.5)
    rng = np.random.default_rng(symbol)
    _, decoded = sample_measurement(alice_basis, symbol, bob_basis, params, rng)
    record = TrialRecord(alice_basis, symbol, False, None, None, False, bob_basis, int(decoded))
    kept = sift([record])
    if alice_basis == bob_basis:
        assert len(kept) == 1
        assert kept[0].sifted and kept[0].bob_error is False
        assert kept[0].bob_symbol == symbol
    else:
        assert kept == []


def test_sift_blocked_record_has_no_error_flag():
    record = TrialRecord(T, 1, False, None, None, True, T, None)
    (kept,) = sift([record])
    assert kept.sifted and kept.bob_error is None


def test_sift_all_mismatched():
    records = [TrialRecord(T, 0, False, None, None, False, F, 0) for _ in range(5)]
    assert sift(records) == []


def test_sift_keeps_half(binomial_close):
    batch = simulate_block(_config(trials=BLOCK_SIZE, seed=3), 0)
    records = batch.records()
    assert binomial_close(len(sift(records)), len(records), 0.5)


# --- blocks ---


def test_simulate_block_is_deterministic():
    config = _config(trials=3000, eve=TimeSliceAttack(0.3))
    a, b = simulate_block(config, 0), simulate_block(config, 0)
    for name in ("alice_basis", "alice_symbol", "bob_basis", "bob_symbol"):
        assert np.array_equal(getattr(a, name), getattr(b, name))
    assert np.array_equal(a.eve.detected, b.eve.detected)


def test_blocks_use_distinct_streams():
    config = _config(trials=2 * BLOCK_SIZE)
    a, b = simulate_block(config, 0), simulate_block(config, 1)
    assert not np.array_equal(a.alice_symbol, b.alice_symbol)


def test_last_block_is_partial():
    config = _config(trials=BLOCK_SIZE + 10)
    assert len(simulate_block(config, 1)) == 10
    with pytest.raises(DomainError):
        simulate_block(config, 2)


@pytest.mark.parametrize("eve", STRATEGIES)
def test_records_agree_with_tally(eve):
    batch = simulate_block(_config(trials=4000, eve=eve, seed=11), 0)
    tally = batch.tally()
    records = batch.records()
    kept = sift(records)
    assert tally.trials == len(records)
    assert tally.blocked == sum(r.photon_blocked for r in records)
    assert tally.sifted_original == len(kept)
    assert tally.sifted_error == sum(r.bob_error is True for r in kept)
    assert tally.sifted_correct == sum(r.bob_error is False for r in kept)
    assert tally.eve_correct == sum(r.eve_correct is True for r in kept)


@pytest.mark.parametrize("eve", STRATEGIES)
def test_record_invariants(eve):
    for r in simulate_block(_config(trials=3000, eve=eve, seed=12), 0).records():
        if r.photon_blocked:
            assert r.bob_symbol is None
        if not r.eve_detected:
            assert r.eve_symbol is None and r.eve_resend_basis is None
            assert r.eve_correct is None
    for r in sift(simulate_block(_config(trials=3000, eve=eve, seed=12), 0).records()):
        assert r.alice_basis == r.bob_basis
        assert (r.bob_error is None) == r.photon_blocked


# --- sessions ---


@pytest.mark.parametrize("eve", STRATEGIES)
def test_conservation(eve):
    stats = run_session(_config(trials=100_000, eve=eve, x=0.9))
    total = stats.blocked + stats.discarded + stats.sifted_correct + stats.sifted_error
    assert total == stats.trials == 100_000
    assert stats.sifted_received <= stats.sifted_original <= stats.trials


def test_same_config_same_stats():
    config = _config(trials=70_000, eve=TimeSliceAttack(0.2), seed=99)
    assert run_session(config) == run_session(config)


def test_shard_count_does_not_change_results():
    base = _config(trials=3 * BLOCK_SIZE + 123, eve=FullInterceptResend(), seed=5)
    one = run_session(base)
    for shards in (2, 3, 8):
        sharded = SessionConfig(base.params, base.trials, base.seed, base.eve, shards)
        assert run_session(sharded, workers=1) == one


def test_worker_processes_match_in_process_run():
    config = _config(trials=2 * BLOCK_SIZE, eve=TimeSliceAttack(0.2), seed=6, shards=2)
    assert run_session(config, workers=2) == run_session(config, workers=1)


def test_seed_changes_results():
    assert run_session(_config(seed=1)) != run_session(_config(seed=2))


def test_eavesdropper_free_error_rate(binomial_close):
    stats = run_session(_config(trials=1_000_000, seed=42))
    assert binomial_close(stats.sifted_error, stats.sifted_received, 1.0 - fidelity(1.65))
    assert stats.blocked == 0
    assert stats.eve_info_per_original.value == 0.0
    assert stats.seed_echo == 42


def test_full_intercept_matches_textbook_counting():
    stats = run_session(_config(trials=1_000_000, eve=FullInterceptResend(), x=4.0))
    assert stats.eve_info_per_received.value == pytest.approx(0.75, abs=0.005)
    assert stats.added_error.value == pytest.approx(0.25, abs=0.005)
    assert stats.loss_rate.value == 0.0


def test_slice_attack_blocks_most_pulses():
    stats = run_session(_config(trials=200_000, eve=TimeSliceAttack(0.05)))
    assert stats.loss_rate.value > 0.9
    # (p1/2 + p3/4) / ((p1 + p2)/2 + p3/2) = 0.829
    assert 0.78 < stats.eve_info_per_received.value < 0.88
    assert stats.qber.lo <= stats.qber.value <= stats.qber.hi
