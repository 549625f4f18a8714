"""Seeded Monte Carlo of complete sessions.

Trials are cut into fixed blocks of :data:`BLOCK_SIZE`. Block ``k`` draws
from its own counter-based stream, ``Philox(SeedSequence(seed,
spawn_key=(k,)))``, so its outcome depends only on the seed and ``k``.
Shards group consecutive blocks for worker processes, and their tallies
merge by addition; the result is the same for every shard and worker count.

Per block the draws happen in a fixed order: Alice's bases, Alice's
symbols, Eve's draws (see :func:`~tfqkd.Eve.eve_intercept`), Bob's bases,
then one normal per pulse for Bob's reading.
"""
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from .Errors import DomainError
from .Eve import EveStrategy, Interception, eve_intercept
from .Measurement import sample_measurement
from .Oracle import baseline_qber
from .PulseModel import Basis, DimensionlessParams
from .Stats import SessionStats, Tally, summarize

logger = logging.getLogger(__name__)

BLOCK_SIZE = 65536
_SEED_LIMIT = 2**64


@dataclass(frozen=True)
class SessionConfig:
    """Everything a session's outcome depends on.

    Attributes:
        params: Pulse geometry.
        trials: Pulses to send (>= 1).
        seed: Unsigned 64-bit seed.
        eve: Eavesdropping strategy.
        shards: Number of work units the blocks are grouped into (>= 1).

    Raises:
        DomainError: On a nonpositive trial or shard count, or a seed
            outside ``[0, 2**64)``.
    """

    params: DimensionlessParams
    trials: int
    seed: int
    eve: EveStrategy
    shards: int = 1

    def __post_init__(self) -> None:
        if self.trials < 1:
            raise DomainError(f"SessionConfig: trials must be >= 1, got {self.trials}")
        if self.shards < 1:
            raise DomainError(f"SessionConfig: shards must be >= 1, got {self.shards}")
        if not 0 <= self.seed < _SEED_LIMIT:
            raise DomainError(f"SessionConfig: seed must lie in [0, 2**64), got {self.seed}")

    @property
    def blocks(self) -> int:
        return math.ceil(self.trials / BLOCK_SIZE)


@dataclass(frozen=True)
class TrialRecord:
    """One pulse from preparation to sifting.

    ``eve_symbol`` and ``eve_resend_basis`` are ``None`` unless Eve detected
    the pulse; ``bob_symbol`` is ``None`` when it was blocked. ``bob_error``
    is set by :func:`sift` for sifted, unblocked pulses only.
    """

    alice_basis: Basis
    alice_symbol: int
    eve_detected: bool
    eve_symbol: Optional[int]
    eve_resend_basis: Optional[Basis]
    photon_blocked: bool
    bob_basis: Basis
    bob_symbol: Optional[int]
    sifted: bool = False
    bob_error: Optional[bool] = None
    eve_correct: Optional[bool] = None


@dataclass(frozen=True)
class TrialBatch:
    """The trials of one block, one array per quantity."""

    alice_basis: np.ndarray
    alice_symbol: np.ndarray
    eve: Interception
    bob_basis: np.ndarray
    bob_symbol: np.ndarray

    def __len__(self) -> int:
        return int(self.alice_basis.shape[0])

    def records(self) -> list[TrialRecord]:
        """Expand the batch into unsifted :class:`TrialRecord` objects."""
        out = []
        for i in range(len(self)):
            detected = bool(self.eve.detected[i])
            blocked = bool(self.eve.blocked[i])
            eve_symbol = int(self.eve.symbol[i]) if detected else None
            out.append(
                TrialRecord(
                    alice_basis=Basis(int(self.alice_basis[i])),
                    alice_symbol=int(self.alice_symbol[i]),
                    eve_detected=detected,
                    eve_symbol=eve_symbol,
                    eve_resend_basis=Basis(int(self.eve.resend_basis[i])) if detected else None,
                    photon_blocked=blocked,
                    bob_basis=Basis(int(self.bob_basis[i])),
                    bob_symbol=None if blocked else int(self.bob_symbol[i]),
                    eve_correct=eve_symbol == int(self.alice_symbol[i]) if detected else None,
                )
            )
        return out

    def tally(self) -> Tally:
        """Count the outcomes of the batch.

        Vectorised form of :func:`sift` over every trial; the two agree
        record for record.
        """
        ab = self.alice_basis
        time_pulse = ab == int(Basis.TIME)
        blocked = self.eve.blocked
        matched = ab == self.bob_basis
        received = matched & ~blocked
        correct = received & (self.bob_symbol == self.alice_symbol)
        eve_right = self.eve.detected & (self.eve.symbol == self.alice_symbol)
        eve_wrong = self.eve.detected & ~eve_right
        return Tally(
            trials=len(self),
            blocked=int(np.count_nonzero(blocked)),
            discarded=int(np.count_nonzero(~matched & ~blocked)),
            sifted_blocked=int(np.count_nonzero(matched & blocked)),
            sifted_correct=int(np.count_nonzero(correct)),
            sifted_error=int(np.count_nonzero(received & ~correct)),
            eve_correct=int(np.count_nonzero(matched & eve_right)),
            time_sent=int(np.count_nonzero(time_pulse)),
            eve_time_right=int(np.count_nonzero(time_pulse & eve_right)),
            eve_time_wrong=int(np.count_nonzero(time_pulse & eve_wrong)),
            freq_sent=int(np.count_nonzero(~time_pulse)),
            eve_freq_detect=int(np.count_nonzero(~time_pulse & self.eve.detected)),
        )


def sift(records: list[TrialRecord]) -> list[TrialRecord]:
    """Keep the records whose bases match and mark them sifted.

    Example::

        >>> from tfqkd.Protocol import TrialRecord, sift
        >>> from tfqkd.PulseModel import Basis
        >>> kept = TrialRecord(Basis.TIME, 0, False, None, None, False, Basis.TIME, 0)
        >>> dropped = TrialRecord(Basis.TIME, 0, False, None, None, False, Basis.FREQUENCY, 1)
        >>> [(r.sifted, r.bob_error) for r in sift([kept, dropped])]
        [(True, False)]
    """
    out = []
    for r in records:
        if r.alice_basis != r.bob_basis:
            continue
        error = None if r.photon_blocked else r.bob_symbol != r.alice_symbol
        out.append(replace(r, sifted=True, bob_error=error))
    return out


def block_stream(seed: int, block_index: int) -> np.random.Generator:
    """Return the random stream of block *block_index*."""
    seq = np.random.SeedSequence(seed, spawn_key=(block_index,))
    return np.random.Generator(np.random.Philox(seq))


def simulate_block(config: SessionConfig, block_index: int) -> TrialBatch:
    """Simulate block *block_index* of *config*."""
    start = block_index * BLOCK_SIZE
    size = min(BLOCK_SIZE, config.trials - start)
    if size <= 0:
        raise DomainError(f"simulate_block: block {block_index} outside 0..{config.blocks - 1}")
    rng = block_stream(config.seed, block_index)
    params = config.params

    alice_basis = rng.integers(0, 2, size=size)
    alice_symbol = rng.integers(0, params.n_symbols, size=size)
    eve = eve_intercept(config.eve, alice_basis, alice_symbol, params, rng)
    bob_basis = rng.integers(0, 2, size=size)

    resent = eve.resend_basis >= 0
    pulse_basis = np.where(resent, eve.resend_basis, alice_basis)
    pulse_symbol = np.where(resent, eve.symbol, alice_symbol)
    _, decoded = sample_measurement(pulse_basis, pulse_symbol, bob_basis, params, rng)
    bob_symbol = np.where(eve.blocked, -1, decoded)
    return TrialBatch(alice_basis, alice_symbol, eve, bob_basis, bob_symbol)


def _run_blocks(config: SessionConfig, first: int, stop: int) -> Tally:
    tally = Tally()
    for k in range(first, stop):
        tally = tally + simulate_block(config, k).tally()
    logger.debug("blocks %d..%d done", first, stop - 1)
    return tally


def shard_plan(config: SessionConfig) -> list[tuple[int, int]]:
    """Split the blocks of *config* into at most ``config.shards`` contiguous ranges."""
    blocks = config.blocks
    shards = min(config.shards, blocks)
    edges = [blocks * i // shards for i in range(shards + 1)]
    return [(edges[i], edges[i + 1]) for i in range(shards)]


def run_session(config: SessionConfig, workers: Optional[int] = None) -> SessionStats:
    """Simulate a whole session and summarise it.

    Args:
        config: The session to run.
        workers: Worker processes; ``None`` uses one per shard, and a single
            shard or ``workers == 1`` runs in this process.

    Returns:
        The sampled :class:`~tfqkd.Stats.SessionStats`.

    Raises:
        DomainError: If ``config.trials`` is not positive.
    """
    if config.trials < 1:
        raise DomainError(f"run_session: trials must be >= 1, got {config.trials}")
    plan = shard_plan(config)
    logger.debug(
        "session: %d trials, %d blocks, %d shards, eve=%s",
        config.trials,
        config.blocks,
        len(plan),
        config.eve.label,
    )
    if len(plan) == 1 or workers == 1:
        parts = [_run_blocks(config, a, b) for a, b in plan]
    else:
        with ProcessPoolExecutor(max_workers=workers or len(plan)) as pool:
            futures = [pool.submit(_run_blocks, config, a, b) for a, b in plan]
            parts = [f.result() for f in futures]
    total = Tally()
    for part in parts:
        total = total + part
    return summarize(total, baseline_qber(config.params), config.seed)
