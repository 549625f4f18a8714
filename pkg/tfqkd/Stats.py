"""Session tallies and the statistics derived from them.

A :class:`Tally` holds outcome counts. The Monte Carlo fills it with integer
counts; the enumeration oracle fills it with expected counts (floats).
Tallies of disjoint trial ranges merge with ``+``. :func:`summarize` turns a
tally into :class:`SessionStats`, and :func:`agreement` compares a sampled
session against its expectation.
"""
import math
from dataclasses import dataclass, fields
from typing import Union

from scipy import stats

Count = Union[int, float]


@dataclass(frozen=True)
class Tally:
    """Outcome counts of a session or part of one.

    Every trial ends in exactly one of ``blocked``, ``discarded``,
    ``sifted_correct`` and ``sifted_error``. ``sifted_blocked`` is the part
    of ``blocked`` where the two bases matched.

    Attributes:
        trials: Pulses sent.
        blocked: Pulses Eve destroyed.
        discarded: Pulses received in the wrong basis and dropped by sifting.
        sifted_blocked: Blocked pulses whose bases matched.
        sifted_correct: Sifted pulses decoded to Alice's symbol.
        sifted_error: Sifted pulses decoded to another symbol.
        eve_correct: Sifted pulses whose symbol Eve decoded correctly.
        time_sent: Pulses Alice sent in the time basis.
        eve_time_right: Time pulses Eve caught in the slice of the sent bin.
        eve_time_wrong: Time pulses Eve caught in the slice of another bin.
        freq_sent: Pulses Alice sent in the frequency basis.
        eve_freq_detect: Frequency pulses Eve caught in any slice.
    """

    trials: Count = 0
    blocked: Count = 0
    discarded: Count = 0
    sifted_blocked: Count = 0
    sifted_correct: Count = 0
    sifted_error: Count = 0
    eve_correct: Count = 0
    time_sent: Count = 0
    eve_time_right: Count = 0
    eve_time_wrong: Count = 0
    freq_sent: Count = 0
    eve_freq_detect: Count = 0

    def __add__(self, other: "Tally") -> "Tally":
        return Tally(*(getattr(self, f.name) + getattr(other, f.name) for f in fields(self)))

    def scaled(self, factor: float) -> "Tally":
        return Tally(*(getattr(self, f.name) * factor for f in fields(self)))

    @property
    def sifted_received(self) -> Count:
        return self.sifted_correct + self.sifted_error

    @property
    def sifted_original(self) -> Count:
        return self.sifted_blocked + self.sifted_received


@dataclass(frozen=True)
class Estimate:
    """A proportion ``count / total`` with its 95% interval.

    Exact estimates (from the oracle) have ``lo == hi == value``. ``offset``
    shifts value and interval, which is how a baseline is subtracted.

    Example::

        >>> from tfqkd.Stats import Estimate
        >>> e = Estimate.proportion(50, 100)
        >>> e.value, round(e.lo, 4), round(e.hi, 4)
        (0.5, 0.4038, 0.5962)
    """

    value: float
    lo: float
    hi: float
    count: Count
    total: Count
    offset: float = 0.0

    @staticmethod
    def proportion(
        count: Count, total: Count, exact: bool = False, offset: float = 0.0
    ) -> "Estimate":
        if total <= 0:
            return Estimate(math.nan, math.nan, math.nan, count, total, offset)
        p = count / total
        if exact:
            return Estimate(p - offset, p - offset, p - offset, count, total, offset)
        lo, hi = wilson_interval(count, total)
        return Estimate(p - offset, lo - offset, hi - offset, count, total, offset)

    @property
    def proportion_value(self) -> float:
        """The underlying proportion, before any offset."""
        return self.value + self.offset


def wilson_interval(count: Count, total: Count, confidence: float = 0.95) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion."""
    ci = stats.binomtest(int(count), int(total)).proportion_ci(
        confidence_level=confidence, method="wilson"
    )
    return max(0.0, float(ci.low)), min(1.0, float(ci.high))


@dataclass(frozen=True)
class SessionStats:
    """Statistics of one session, sampled or expected.

    Attributes:
        trials: Pulses sent.
        sifted_original: Matched-basis trials, blocked ones included.
        sifted_received: Matched-basis trials that reached the receiver.
        blocked / discarded / sifted_correct / sifted_error: Terminal outcomes.
        qber: Error rate over received sifted pulses.
        eve_info_per_original: Eve's correct symbols over ``sifted_original``.
        eve_info_per_received: Eve's correct symbols over ``sifted_received``.
        added_error: ``qber`` minus the eavesdropper-free error rate.
        loss_rate: Share of all pulses blocked.
        error_per_original: Sifted errors over ``sifted_original``.
        eve_p1 / eve_p2 / eve_p3: Eve's per-basis detection rates (time pulse
            caught in its own slice / in another slice, frequency pulse caught).
        info_per_disturbance: ``eve_info_per_original / error_per_original``.
        disturbance_per_info: Its reciprocal.
        seed_echo: Seed of the session.
        exact: True for oracle expectations.
    """

    trials: Count
    sifted_original: Count
    sifted_received: Count
    blocked: Count
    discarded: Count
    sifted_correct: Count
    sifted_error: Count
    qber: Estimate
    eve_info_per_original: Estimate
    eve_info_per_received: Estimate
    added_error: Estimate
    loss_rate: Estimate
    error_per_original: Estimate
    eve_p1: Estimate
    eve_p2: Estimate
    eve_p3: Estimate
    info_per_disturbance: float
    disturbance_per_info: float
    seed_echo: int
    exact: bool = False


def _ratio(num: float, den: float) -> float:
    if math.isnan(num) or math.isnan(den):
        return math.nan
    if den == 0.0:
        return math.nan if num == 0.0 else math.inf
    return num / den


def summarize(tally: Tally, baseline_qber: float, seed: int, exact: bool = False) -> SessionStats:
    """Derive :class:`SessionStats` from *tally*.

    Args:
        tally: Counts (or expected counts) of the session.
        baseline_qber: Error rate of the same geometry without an eavesdropper.
        seed: Echoed into the result.
        exact: Whether the tally holds expectations (zero-width intervals).
    """
    original = tally.sifted_original
    received = tally.sifted_received
    info = Estimate.proportion(tally.eve_correct, original, exact)
    errors = Estimate.proportion(tally.sifted_error, original, exact)
    return SessionStats(
        trials=tally.trials,
        sifted_original=original,
        sifted_received=received,
        blocked=tally.blocked,
        discarded=tally.discarded,
        sifted_correct=tally.sifted_correct,
        sifted_error=tally.sifted_error,
        qber=Estimate.proportion(tally.sifted_error, received, exact),
        eve_info_per_original=info,
        eve_info_per_received=Estimate.proportion(tally.eve_correct, received, exact),
        added_error=Estimate.proportion(tally.sifted_error, received, exact, baseline_qber),
        loss_rate=Estimate.proportion(tally.blocked, tally.trials, exact),
        error_per_original=errors,
        eve_p1=Estimate.proportion(tally.eve_time_right, tally.time_sent, exact),
        eve_p2=Estimate.proportion(tally.eve_time_wrong, tally.time_sent, exact),
        eve_p3=Estimate.proportion(tally.eve_freq_detect, tally.freq_sent, exact),
        info_per_disturbance=_ratio(info.value, errors.value),
        disturbance_per_info=_ratio(errors.value, info.value),
        seed_echo=seed,
        exact=exact,
    )


def binomial_close(k: Count, n: Count, p: float, n_sigma: float = 4.0) -> bool:
    """True when *k* successes in *n* trials are within *n_sigma* of probability *p*.

    The variance is floored at one count, so events expected about once or
    less never fail on a single occurrence.
    """
    if math.isnan(p):
        return n == 0
    var = max(n * p * (1.0 - p), 1.0)
    return abs(k - n * p) <= n_sigma * math.sqrt(var)


COUNT_FIELDS = (
    "sifted_original",
    "sifted_received",
    "blocked",
    "discarded",
    "sifted_correct",
    "sifted_error",
)
ESTIMATE_FIELDS = (
    "qber",
    "eve_info_per_original",
    "eve_info_per_received",
    "added_error",
    "loss_rate",
    "error_per_original",
    "eve_p1",
    "eve_p2",
    "eve_p3",
)


def agreement(sampled: SessionStats, expected: SessionStats, n_sigma: float = 4.0) -> list[str]:
    """Return the names of the sampled statistics inconsistent with *expected*.

    Counts are tested as binomials over all trials, proportions as binomials
    over the sampled denominator. An empty list means agreement.
    """
    failures = []
    for name in COUNT_FIELDS:
        p = getattr(expected, name) / expected.trials
        if not binomial_close(getattr(sampled, name), sampled.trials, p, n_sigma):
            failures.append(name)
    for name in ESTIMATE_FIELDS:
        got: Estimate = getattr(sampled, name)
        want: Estimate = getattr(expected, name)
        if not binomial_close(got.count, got.total, want.proportion_value, n_sigma):
            failures.append(name)
    return failures
