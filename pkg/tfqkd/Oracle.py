"""Exact expectations of a session by enumerating every branch of a trial.

Alice's basis and symbol, Eve's outcome, Bob's basis and Bob's decoded bin
form a finite tree; each leaf's probability comes from
:func:`~tfqkd.SpecFun.gaussian_interval_prob` through the same geometry the
Monte Carlo samples, so the two agree up to sampling noise.
"""
import logging
from typing import TYPE_CHECKING

from .Eve import Absent, EveStrategy, eve_branches
from .Measurement import decode_distribution
from .PulseModel import Basis, DimensionlessParams
from .Stats import SessionStats, Tally, summarize

if TYPE_CHECKING:
    from .Protocol import SessionConfig

logger = logging.getLogger(__name__)


def oracle_tally(params: DimensionlessParams, strategy: EveStrategy, trials: float = 1.0) -> Tally:
    """Return the expected :class:`~tfqkd.Stats.Tally` of *trials* pulses."""
    n = params.n_symbols
    acc = dict.fromkeys(
        (
            "blocked",
            "discarded",
            "sifted_blocked",
            "sifted_correct",
            "sifted_error",
            "eve_correct",
            "eve_time_right",
            "eve_time_wrong",
            "eve_freq_detect",
        ),
        0.0,
    )
    for alice_basis in Basis:
        for symbol in range(n):
            prior = 0.5 / n
            for branch in eve_branches(strategy, alice_basis, symbol, params):
                w = prior * branch.probability
                eve_right = branch.detected and branch.symbol == symbol
                if branch.detected:
                    if alice_basis is Basis.TIME:
                        acc["eve_time_right" if eve_right else "eve_time_wrong"] += w
                    else:
                        acc["eve_freq_detect"] += w
                if branch.blocked:
                    acc["blocked"] += w
                    acc["sifted_blocked"] += 0.5 * w
                    continue
                if branch.resend_basis is not None:
                    pulse_basis, pulse_symbol = branch.resend_basis, branch.symbol
                else:
                    pulse_basis, pulse_symbol = alice_basis, symbol
                # Bob picks the other basis half of the time; sifting drops those.
                acc["discarded"] += 0.5 * w
                dist = decode_distribution(pulse_basis, pulse_symbol, alice_basis, params)
                correct = float(dist[symbol])
                acc["sifted_correct"] += 0.5 * w * correct
                acc["sifted_error"] += 0.5 * w * (1.0 - correct)
                if eve_right:
                    acc["eve_correct"] += 0.5 * w
    tally = Tally(trials=1.0, time_sent=0.5, freq_sent=0.5, **acc)
    return tally.scaled(trials)


def baseline_qber(params: DimensionlessParams) -> float:
    """Error rate of the sifted key at *params* without an eavesdropper."""
    t = oracle_tally(params, Absent())
    return t.sifted_error / t.sifted_received


def oracle_expectations(config: "SessionConfig") -> SessionStats:
    """Expected :class:`~tfqkd.Stats.SessionStats` of *config*, with zero-width intervals."""
    tally = oracle_tally(config.params, config.eve, float(config.trials))
    logger.debug("oracle for %s at %s: %s", config.eve.label, config.params, tally)
    return summarize(tally, baseline_qber(config.params), config.seed, exact=True)
