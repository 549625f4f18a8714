"""Eavesdropping strategies, sampled and enumerated.

- :class:`EveStrategy` -- base of :class:`Absent`, :class:`FullInterceptResend`
  and :class:`TimeSliceAttack`
- :class:`Interception` -- what Eve did to each pulse of a batch
- :func:`eve_intercept` -- sample Eve's actions for a batch
- :class:`EveBranch` / :func:`eve_branches` -- the same actions with their exact
  probabilities, for the enumeration oracle

Eve's slice detector is a time-domain measurement: it fires when the
reading falls within ``sqrt2*y`` of a bin centre and destroys the pulse
otherwise, so undetected pulses are blocked.
"""
import math
from dataclasses import dataclass
from typing import ClassVar, Optional

import numpy as np

from .Errors import DomainError
from .Measurement import decode_distribution, reading_distribution, sample_measurement
from .PulseModel import Basis, DimensionlessParams, bin_grid
from .SpecFun import gaussian_interval_prob

_SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class EveStrategy:
    """Base class; subclasses set ``label`` to their command-line name."""

    label: ClassVar[str] = ""

    @staticmethod
    def from_label(label: str, y: float) -> "EveStrategy":
        """Build the strategy named *label*; *y* is used by the slice attack only."""
        if label == Absent.label:
            return Absent()
        if label == FullInterceptResend.label:
            return FullInterceptResend()
        if label == TimeSliceAttack.label:
            return TimeSliceAttack(y)
        raise DomainError(f"unknown eavesdropping strategy {label!r}")


@dataclass(frozen=True)
class Absent(EveStrategy):
    """No eavesdropper."""

    label: ClassVar[str] = "none"


@dataclass(frozen=True)
class FullInterceptResend(EveStrategy):
    """Eve measures every pulse in a uniformly random basis and resends what she decoded."""

    label: ClassVar[str] = "full"


@dataclass(frozen=True)
class TimeSliceAttack(EveStrategy):
    """Eve gates a slice of half-width ``sqrt2*y`` around each time bin.

    Attributes:
        y: Slice half-width in units of ``sqrt2*sigma_t``.
    """

    label: ClassVar[str] = "slice"
    y: float

    def __post_init__(self) -> None:
        if not (self.y > 0.0 and math.isfinite(self.y)):
            raise DomainError(f"TimeSliceAttack: y must be finite and > 0, got {self.y}")


@dataclass(frozen=True)
class Interception:
    """Eve's action on each pulse of a batch.

    Attributes:
        detected: Eve obtained a reading.
        symbol: Bin Eve decoded, ``-1`` where she did not detect.
        resend_basis: Basis of the pulse Eve sent on, ``-1`` where none.
        blocked: The pulse never reaches the receiver.
    """

    detected: np.ndarray
    symbol: np.ndarray
    resend_basis: np.ndarray
    blocked: np.ndarray

    @staticmethod
    def passthrough(size: int) -> "Interception":
        none = np.full(size, -1, dtype=np.int64)
        no = np.zeros(size, dtype=bool)
        return Interception(no, none, none.copy(), no.copy())


def eve_intercept(
    strategy: EveStrategy,
    sent_basis: np.ndarray,
    symbol: np.ndarray,
    params: DimensionlessParams,
    rng: np.random.Generator,
) -> Interception:
    """Sample Eve's action on each pulse.

    Draw order: the full attack draws its basis choices, then one normal per
    pulse; the slice attack draws one normal per pulse; :class:`Absent`
    draws nothing.
    """
    sent_basis = np.asarray(sent_basis)
    size = sent_basis.shape[0]
    if isinstance(strategy, Absent):
        return Interception.passthrough(size)

    if isinstance(strategy, FullInterceptResend):
        eve_basis = rng.integers(0, 2, size=size)
        _, decoded = sample_measurement(sent_basis, symbol, eve_basis, params, rng)
        detected = np.ones(size, dtype=bool)
        return Interception(detected, decoded, eve_basis.astype(np.int64), ~detected)

    if isinstance(strategy, TimeSliceAttack):
        grid = bin_grid(params)
        values, nearest = sample_measurement(sent_basis, symbol, int(Basis.TIME), params, rng)
        centers = np.asarray(grid.centers)
        detected = np.abs(values - centers[nearest]) <= _SQRT2 * strategy.y
        eve_symbol = np.where(detected, nearest, -1)
        resend = np.where(detected, int(Basis.TIME), -1).astype(np.int64)
        return Interception(detected, eve_symbol, resend, ~detected)

    raise TypeError(f"eve_intercept: unsupported strategy {strategy!r}")


@dataclass(frozen=True)
class EveBranch:
    """One outcome of Eve's action on a single pulse, with its probability."""

    probability: float
    detected: bool
    symbol: Optional[int] = None
    resend_basis: Optional[Basis] = None
    blocked: bool = False


def eve_branches(
    strategy: EveStrategy, sent_basis: Basis, symbol: int, params: DimensionlessParams
) -> list[EveBranch]:
    """Enumerate Eve's outcomes for one pulse; probabilities sum to 1."""
    if isinstance(strategy, Absent):
        return [EveBranch(1.0, detected=False)]

    if isinstance(strategy, FullInterceptResend):
        branches = []
        for eve_basis in Basis:
            dist = decode_distribution(sent_basis, symbol, eve_basis, params)
            for j, p in enumerate(dist):
                branches.append(EveBranch(0.5 * float(p), True, j, eve_basis))
        return branches

    if isinstance(strategy, TimeSliceAttack):
        grid = bin_grid(params)
        mean, std = reading_distribution(grid, params.z, int(sent_basis), symbol, int(Basis.TIME))
        m, s = float(mean), float(std)
        branches = []
        for i in range(grid.n):
            p = gaussian_interval_prob(m, s, grid.slice_window(i, strategy.y))
            branches.append(EveBranch(p, True, i, Basis.TIME))
        caught = math.fsum(b.probability for b in branches)
        branches.append(EveBranch(max(0.0, 1.0 - caught), detected=False, blocked=True))
        return branches

    raise TypeError(f"eve_branches: unsupported strategy {strategy!r}")
