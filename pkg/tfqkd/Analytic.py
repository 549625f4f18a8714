"""Closed-form fidelity and slice-attack formulas.

Everything is expressed in the dimensionless parameters of
:mod:`tfqkd.PulseModel`:

- :func:`fidelity` / :func:`required_x` -- binary decoding fidelity and its inverse
- :func:`qundit_fidelity` / :func:`mean_qundit_fidelity` -- N-ary nearest-bin decoding
- :func:`eve_p1` / :func:`eve_p2` / :func:`eve_p3` -- slice detection probabilities
- :func:`eve_key_fraction` / :func:`eve_added_error` -- Eve's share P and the added error E
- :func:`eve_analytics` / :func:`small_y_approx` -- exact and thin-slice aggregates
- :func:`slices_overlap` / :func:`separation_exceeds_width` / :func:`span_exceeds_width`
  -- geometry checks
"""
import math
from dataclasses import dataclass

from .Errors import DomainError
from .SpecFun import erf, erf_inv, erfc

_SQRT2 = math.sqrt(2.0)
_SQRT_PI = math.sqrt(math.pi)


def _check_x(fn: str, x: float) -> None:
    if not (x >= 0.0 and math.isfinite(x)):
        raise DomainError(f"{fn}: x must be >= 0, got {x}")


def _check_y(fn: str, y: float) -> None:
    if not y >= 0.0:
        raise DomainError(f"{fn}: y must be >= 0, got {y}")


def _check_z(fn: str, z: float) -> None:
    if not z > 0.0:
        raise DomainError(f"{fn}: z must be > 0, got {z}")


def _erf_diff(a: float, b: float) -> float:
    """Return ``erf(a) - erf(b)``, through erfc when both lie on one side of 0."""
    if a >= 0.0 and b >= 0.0:
        return erfc(b) - erfc(a)
    if a <= 0.0 and b <= 0.0:
        return erfc(-a) - erfc(-b)
    return erf(a) - erf(b)


def _ratio(num: float, den: float) -> float:
    if den == 0.0:
        return math.nan if num == 0.0 else math.inf
    return num / den


@dataclass(frozen=True)
class EveAnalytics:
    """The slice attack's figures of merit at one (x, y, z).

    Attributes:
        p1: Eve fires in the slice of the pulse actually sent (time basis).
        p2: Eve fires in the slice of the other bin (time basis).
        p3: Eve fires in either slice for a frequency-basis pulse.
        key_fraction_P: Share of the sifted key Eve learns, ``p1/2 + p3/4``.
        added_error_E: Error Eve adds to the sifted key, ``p2*F/4 + p3/4``.
        ratio_info_per_disturbance: ``P / E`` (the reported figure of merit).
        ratio_error_per_info: ``E / P``.
    """

    p1: float
    p2: float
    p3: float
    key_fraction_P: float
    added_error_E: float
    ratio_info_per_disturbance: float
    ratio_error_per_info: float


def fidelity(x: float) -> float:
    """Probability that a binary time-bin pulse is decoded correctly.

    A unit-width pulse read against the midpoint threshold ``sqrt2*x`` away.

    Args:
        x: Half bin separation (>= 0).

    Returns:
        ``(1 + erf(x)) / 2``.

    Raises:
        DomainError: If ``x < 0``.

    Example::

        >>> from tfqkd.Analytic import fidelity
        >>> round(fidelity(1.65), 6)
        0.990188
    """
    _check_x("fidelity", x)
    return 0.5 * (1.0 + erf(x))


def required_x(target_fidelity: float) -> float:
    """Smallest x whose :func:`fidelity` reaches *target_fidelity*.

    Raises:
        DomainError: If the target is outside ``[0.5, 1)``.

    Example::

        >>> from tfqkd.Analytic import required_x
        >>> round(required_x(0.99), 4)
        1.645
    """
    if not 0.5 <= target_fidelity < 1.0:
        raise DomainError(f"required_x: target must lie in [0.5, 1), got {target_fidelity}")
    if target_fidelity == 0.5:
        return 0.0
    return erf_inv(2.0 * target_fidelity - 1.0)


def qundit_fidelity(x: float, n: int, bin: int) -> float:
    """Probability that a pulse in *bin* of an N-bin grid decodes to *bin*.

    Edge bins lose probability on one side only, interior bins on both.

    Raises:
        DomainError: If ``x < 0``, ``n < 2`` or *bin* is outside ``0..n-1``.
    """
    _check_x("qundit_fidelity", x)
    if n < 2:
        raise DomainError(f"qundit_fidelity: n must be >= 2, got {n}")
    if not 0 <= bin < n:
        raise DomainError(f"qundit_fidelity: bin {bin} outside 0..{n - 1}")
    if bin in (0, n - 1):
        return 0.5 * (1.0 + erf(x))
    return erf(x)


def mean_qundit_fidelity(x: float, n: int) -> float:
    """:func:`qundit_fidelity` averaged over bins with equal priors."""
    edge = qundit_fidelity(x, n, 0)
    inner = erf(x)
    return (2.0 * edge + (n - 2) * inner) / n


def eve_p1(y: float) -> float:
    """Probability that Eve's slice around the sent bin catches a time pulse: ``erf(y)``."""
    _check_y("eve_p1", y)
    return erf(y)


def eve_p2(x: float, y: float) -> float:
    """Probability that a time pulse lands in the slice of the neighbouring bin.

    Equals ``(erf(2x+y) - erf(2x-y)) / 2``.

    Example::

        >>> from tfqkd.Analytic import eve_p2
        >>> f"{eve_p2(1.65, 0.05):.3g}"
        '1.07e-06'
    """
    _check_x("eve_p2", x)
    _check_y("eve_p2", y)
    return 0.5 * _erf_diff(2.0 * x + y, 2.0 * x - y)


def eve_p3(x: float, y: float, z: float) -> float:
    """Probability that a frequency-basis pulse lands in either of Eve's two slices.

    Equals ``erf((x+y)/z) - erf((x-y)/z)``.
    """
    _check_x("eve_p3", x)
    _check_y("eve_p3", y)
    _check_z("eve_p3", z)
    return _erf_diff((x + y) / z, (x - y) / z)


def eve_key_fraction(x: float, y: float, z: float) -> float:
    """Share P of the sifted key Eve reads correctly: ``p1/2 + p3/4``.

    Example::

        >>> from tfqkd.Analytic import eve_key_fraction
        >>> round(eve_key_fraction(1.65, 0.05, 2.5), 6)
        0.035485
    """
    return 0.5 * eve_p1(y) + 0.25 * eve_p3(x, y, z)


def eve_added_error(x: float, y: float, z: float) -> float:
    """Error E added to the sifted key: ``p2*fidelity(x)/4 + p3/4``."""
    return 0.25 * eve_p2(x, y) * fidelity(x) + 0.25 * eve_p3(x, y, z)


def _aggregate(p1: float, p2: float, p3: float, key: float, err: float) -> EveAnalytics:
    return EveAnalytics(
        p1=p1,
        p2=p2,
        p3=p3,
        key_fraction_P=key,
        added_error_E=err,
        ratio_info_per_disturbance=_ratio(key, err),
        ratio_error_per_info=_ratio(err, key),
    )


def eve_analytics(x: float, y: float, z: float) -> EveAnalytics:
    """Evaluate every exact slice-attack quantity at (x, y, z).

    With ``y == 0`` both P and E vanish and the ratios are ``nan``.

    Example::

        >>> from tfqkd.Analytic import eve_analytics
        >>> round(eve_analytics(1.65, 0.05, 2.5).ratio_info_per_disturbance, 3)
        4.861
    """
    p1, p2, p3 = eve_p1(y), eve_p2(x, y), eve_p3(x, y, z)
    return _aggregate(p1, p2, p3, 0.5 * p1 + 0.25 * p3, 0.25 * p2 * fidelity(x) + 0.25 * p3)


def small_y_approx(x: float, y: float, z: float) -> EveAnalytics:
    """Linear-in-y forms of :func:`eve_analytics`, valid for thin slices.

    The E form carries the time-basis term as ``exp(-4x^2)*fidelity(x)*y/sqrt(pi)``,
    twice the linearisation of ``p2*fidelity(x)/4``; the term is negligible
    wherever the frequency-basis term ``exp(-x^2/z^2)/z`` is not tiny.
    """
    _check_x("small_y_approx", x)
    _check_y("small_y_approx", y)
    _check_z("small_y_approx", z)
    wrong = math.exp(-((x / z) ** 2)) / z
    near = math.exp(-4.0 * x * x)
    p1 = 2.0 / _SQRT_PI * y
    p2 = 2.0 / _SQRT_PI * near * y
    p3 = 4.0 / _SQRT_PI * wrong * y
    key = y / _SQRT_PI * (1.0 + wrong)
    err = y / _SQRT_PI * (near * fidelity(x) + wrong)
    return _aggregate(p1, p2, p3, key, err)


def slices_overlap(x: float, y: float) -> bool:
    """True when Eve's windows ``centre +- sqrt2*y`` around adjacent bins overlap (``y > x``)."""
    return y > x


def separation_exceeds_width(x: float, z: float) -> bool:
    """True when the bin separation exceeds the wrong-basis width (``2*sqrt2*x > z``)."""
    return 2.0 * _SQRT2 * x > z


def span_exceeds_width(x: float, z: float, n: int) -> bool:
    """True for N > 2 grids whose total span ``(n-1)*2*sqrt2*x`` exceeds z."""
    return n > 2 and (n - 1) * 2.0 * _SQRT2 * x > z
