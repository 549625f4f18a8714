"""Pulse geometry, its dimensionless reduction, and configuration checks.

Every formula and the simulator work in three scale-free numbers:

- ``x = dt_sep / (2*sqrt2*sigma_t)`` -- bin separation relative to pulse width
- ``y = slice_halfwidth / (sqrt2*sigma_t)`` -- Eve's slice half-width
- ``z = sigma_T / sigma_t`` -- wrong-basis pulse width relative to pulse width

Measurement values live in units of ``sigma_t`` with the first bin centre
pinned at 0. The frequency basis mirrors the time basis with the same x and z.
"""
import math
from dataclasses import dataclass, fields
from enum import Enum, IntEnum

import numpy as np

from .Errors import DomainError
from .SpecFun import Interval

_SQRT2 = math.sqrt(2.0)


class Basis(IntEnum):
    """The two conjugate encodings; integer values are used in sample arrays."""

    TIME = 0
    FREQUENCY = 1


class Severity(Enum):
    """Severity of a configuration :class:`Finding`.

    Members:
        ERROR: The configuration cannot describe a physical pulse set.
        WARNING: The configuration is usable but leaks information or breaks a
            design rule.
    """

    ERROR = "ERROR"
    WARNING = "WARNING"


@dataclass(frozen=True)
class Finding:
    """One result of :func:`validate`.

    Attributes:
        severity: :class:`Severity` of the finding.
        code: Stable short identifier (e.g. ``"separation-exceeds-width"``).
        message: Human-readable explanation with the offending values.
    """

    severity: Severity
    code: str
    message: str

    def __str__(self) -> str:
        return f"{self.severity.value} [{self.code}] {self.message}"


@dataclass(frozen=True)
class PhysicalConfig:
    """Dimensioned pulse geometry for both bases, in SI units.

    Attributes:
        t0: Centre of the first time bin (s).
        dt_sep: Separation between adjacent time bins (s).
        sigma_t: Temporal width (standard deviation) of time-basis pulses (s).
        sigma_T: Temporal width of frequency-basis pulses (s).
        nu0: Centre of the first frequency bin (Hz).
        dnu_sep: Separation between adjacent frequency bins (Hz).
        sigma_nu: Spectral width of frequency-basis pulses (Hz).
        sigma_omega: Spectral width of time-basis pulses (Hz).
        n_symbols: Number of bins per basis (2 for qubits).

    Construction never fails; use :func:`validate` to check the invariants.
    """

    t0: float
    dt_sep: float
    sigma_t: float
    sigma_T: float
    nu0: float
    dnu_sep: float
    sigma_nu: float
    sigma_omega: float
    n_symbols: int

    @classmethod
    def keys(cls) -> tuple[str, ...]:
        """Return the field names in declaration order (the config-file keys)."""
        return tuple(f.name for f in fields(cls))


@dataclass(frozen=True)
class DimensionlessParams:
    """The scale-free parameters every formula is written in.

    Attributes:
        x: Half bin separation in units of ``sqrt2*sigma_t``.
        y: Eve's slice half-width in units of ``sqrt2*sigma_t``.
        z: Wrong-basis pulse width in units of ``sigma_t``.
        n_symbols: Bins per basis.

    Raises:
        DomainError: If any of x, y, z is not strictly positive or
            ``n_symbols < 2``.

    Example::

        >>> from tfqkd.PulseModel import DimensionlessParams
        >>> DimensionlessParams(1.65, 0.05, 2.5)
        DimensionlessParams(x=1.65, y=0.05, z=2.5, n_symbols=2)
    """

    x: float
    y: float
    z: float
    n_symbols: int = 2

    def __post_init__(self) -> None:
        for name in ("x", "y", "z"):
            value = getattr(self, name)
            if not (value > 0.0 and math.isfinite(value)):
                raise DomainError(
                    f"DimensionlessParams: {name} must be finite and > 0, got {value}"
                )
        if int(self.n_symbols) != self.n_symbols or self.n_symbols < 2:
            raise DomainError(
                f"DimensionlessParams: n_symbols must be an integer >= 2, got {self.n_symbols}"
            )


@dataclass(frozen=True)
class BinGrid:
    """Bin centres of one basis in units of ``sigma_t`` and their decision rule.

    Attributes:
        centers: Strictly increasing, evenly spaced centres, the first at 0.

    Example::

        >>> from tfqkd.PulseModel import BinGrid
        >>> grid = BinGrid((0.0, 2.0, 4.0))
        >>> grid.midpoints
        (1.0, 3.0)
    """

    centers: tuple[float, ...]

    @property
    def n(self) -> int:
        return len(self.centers)

    @property
    def spacing(self) -> float:
        return self.centers[1] - self.centers[0]

    @property
    def midpoints(self) -> tuple[float, ...]:
        """Decision thresholds bisecting adjacent centres."""
        c = self.centers
        return tuple(0.5 * (c[i] + c[i + 1]) for i in range(len(c) - 1))

    @property
    def midpoint(self) -> float:
        """Centre of the whole grid, where wrong-basis pulses are centred."""
        return 0.5 * (self.centers[0] + self.centers[-1])

    def cell(self, i: int) -> Interval:
        """Return the decision interval of bin *i* (unbounded at the edges)."""
        if not 0 <= i < self.n:
            raise DomainError(f"BinGrid.cell: bin {i} outside 0..{self.n - 1}")
        m = self.midpoints
        lo = -math.inf if i == 0 else m[i - 1]
        hi = math.inf if i == self.n - 1 else m[i]
        return Interval(lo, hi)

    def decode(self, values: np.ndarray) -> np.ndarray:
        """Map measurement values to the nearest bin index, ties to the lower index."""
        values = np.asarray(values, dtype=float)
        if self.spacing <= 0.0:
            return np.zeros(values.shape, dtype=np.int64)
        k = np.ceil((values - self.centers[0]) / self.spacing - 0.5)
        return np.clip(k, 0, self.n - 1).astype(np.int64)

    def slice_window(self, i: int, y: float) -> Interval:
        """Return Eve's gate ``centers[i] +- sqrt2*y``, clipped to bin *i*'s cell."""
        half = _SQRT2 * y
        gate = Interval(self.centers[i] - half, self.centers[i] + half)
        return gate.intersect(self.cell(i))


def to_dimensionless(cfg: PhysicalConfig, slice_halfwidth: float) -> DimensionlessParams:
    """Reduce a physical configuration and Eve's slice half-width to (x, y, z).

    Args:
        cfg: The dimensioned geometry.
        slice_halfwidth: Eve's gate half-width (s).

    Returns:
        The :class:`DimensionlessParams` of *cfg*.

    Raises:
        DomainError: If a width, the separation, or the slice is not positive,
            or ``n_symbols < 2``.

    Example::

        >>> import math
        >>> from tfqkd.PulseModel import PhysicalConfig, to_dimensionless
        >>> cfg = PhysicalConfig(0.0, 2 * math.sqrt(2), 1.0, 2.5, 1.0, 1.0, 1.0, 1.0, 2)
        >>> p = to_dimensionless(cfg, math.sqrt(2))
        >>> (round(p.x, 12), round(p.y, 12), p.z)
        (1.0, 1.0, 2.5)
    """
    for name in ("dt_sep", "sigma_t", "sigma_T"):
        value = getattr(cfg, name)
        if not value > 0.0:
            raise DomainError(f"to_dimensionless: {name} must be > 0, got {value}")
    if not slice_halfwidth > 0.0:
        raise DomainError(f"to_dimensionless: slice_halfwidth must be > 0, got {slice_halfwidth}")
    return DimensionlessParams(
        x=cfg.dt_sep / (2.0 * _SQRT2 * cfg.sigma_t),
        y=slice_halfwidth / (_SQRT2 * cfg.sigma_t),
        z=cfg.sigma_T / cfg.sigma_t,
        n_symbols=cfg.n_symbols,
    )


def bin_grid(params: DimensionlessParams) -> BinGrid:
    """Return the N centres spaced ``2*sqrt2*x`` apart, starting at 0.

    Example::

        >>> from tfqkd.PulseModel import DimensionlessParams, bin_grid
        >>> [round(c, 4) for c in bin_grid(DimensionlessParams(1.0, 0.1, 2.0, 3)).centers]
        [0.0, 2.8284, 5.6569]
    """
    spacing = 2.0 * _SQRT2 * params.x
    return BinGrid(tuple(j * spacing for j in range(params.n_symbols)))


_POSITIVE_FIELDS = ("dt_sep", "sigma_t", "sigma_T", "dnu_sep", "sigma_nu", "sigma_omega")


def validate(cfg: PhysicalConfig) -> list[Finding]:
    """Check *cfg* against the pulse-set constraints.

    ERROR findings: non-finite or nonpositive widths/separations, fewer than
    two symbols, or a time-bandwidth product below 1. WARNING findings: a bin
    separation wider than the wrong-basis pulse (the two time bins become
    distinguishable in the frequency basis), and for N > 2 a total bin span
    wider than the wrong-basis pulse.

    Args:
        cfg: The configuration to check. It is not modified.

    Returns:
        The findings, errors first, in a fixed order.
    """
    errors: list[Finding] = []
    warnings: list[Finding] = []

    for name in ("t0", "nu0"):
        value = getattr(cfg, name)
        if not math.isfinite(value):
            errors.append(Finding(Severity.ERROR, "not-finite", f"{name}={value} is not finite"))

    positive = {}
    for name in _POSITIVE_FIELDS:
        value = getattr(cfg, name)
        ok = math.isfinite(value) and value > 0.0
        positive[name] = ok
        if not ok:
            errors.append(
                Finding(Severity.ERROR, "nonpositive", f"{name}={value} must be finite and > 0")
            )

    if cfg.n_symbols < 2:
        errors.append(
            Finding(Severity.ERROR, "too-few-symbols", f"n_symbols={cfg.n_symbols} must be >= 2")
        )

    for a, b in (("sigma_T", "sigma_nu"), ("sigma_omega", "sigma_t")):
        if positive[a] and positive[b]:
            product = getattr(cfg, a) * getattr(cfg, b)
            if product < 1.0:
                errors.append(
                    Finding(
                        Severity.ERROR,
                        "uncertainty",
                        f"{a}*{b}={product:.6g} violates the time-bandwidth bound (>= 1)",
                    )
                )

    if positive["dt_sep"] and positive["sigma_T"]:
        if cfg.dt_sep > cfg.sigma_T:
            warnings.append(
                Finding(
                    Severity.WARNING,
                    "separation-exceeds-width",
                    f"dt_sep={cfg.dt_sep:.6g} > sigma_T={cfg.sigma_T:.6g} violates the separation "
                    "constraint dt_sep <= sigma_T: bins are distinguishable in the wrong basis",
                )
            )
        span = (cfg.n_symbols - 1) * cfg.dt_sep
        if cfg.n_symbols > 2 and span > cfg.sigma_T:
            warnings.append(
                Finding(
                    Severity.WARNING,
                    "span-exceeds-width",
                    f"(n_symbols-1)*dt_sep={span:.6g} > sigma_T={cfg.sigma_T:.6g}: the bin "
                    "span should be of the order of the wrong-basis pulse width",
                )
            )

    return errors + warnings
