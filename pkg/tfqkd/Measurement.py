"""The measurement model shared by the Monte Carlo and the exact enumeration.

A pulse sent in basis ``b`` with symbol ``s`` and measured in basis ``b``
reads ``Normal(centers[s], 1)``; measured in the other basis it reads
``Normal(midpoint, z)`` whatever ``s`` was. The reading is decoded to the
nearest bin centre.
"""
from typing import Union

import numpy as np

from .PulseModel import Basis, BinGrid, DimensionlessParams, bin_grid
from .SpecFun import gaussian_interval_prob

ArrayLike = Union[int, np.ndarray]


def reading_distribution(
    grid: BinGrid, z: float, sent_basis: ArrayLike, symbol: ArrayLike, measured_basis: ArrayLike
) -> tuple[np.ndarray, np.ndarray]:
    """Return the mean and standard deviation of each reading, broadcast together."""
    sent_basis, symbol, measured_basis = np.broadcast_arrays(
        np.asarray(sent_basis), np.asarray(symbol), np.asarray(measured_basis)
    )
    centers = np.asarray(grid.centers)
    matched = sent_basis == measured_basis
    mean = np.where(matched, centers[symbol], grid.midpoint)
    std = np.where(matched, 1.0, z)
    return mean, std


def sample_measurement(
    sent_basis: ArrayLike,
    symbol: ArrayLike,
    measured_basis: ArrayLike,
    params: DimensionlessParams,
    rng: np.random.Generator,
) -> tuple[np.ndarray, np.ndarray]:
    """Draw one reading per measurement event and decode it.

    Arguments broadcast against each other; exactly one standard normal is
    drawn per element of the broadcast shape.

    Args:
        sent_basis: Basis the pulse was prepared in (``Basis`` values).
        symbol: Bin the pulse was prepared in.
        measured_basis: Basis the receiver measures in.
        params: Pulse geometry.
        rng: Random stream; advanced by exactly ``size`` normals.

    Returns:
        ``(values, decoded)`` arrays, values in units of ``sigma_t``.

    Example::

        >>> import numpy as np
        >>> from tfqkd.Measurement import sample_measurement
        >>> from tfqkd.PulseModel import Basis, DimensionlessParams
        >>> rng = np.random.default_rng(0)
        >>> _, decoded = sample_measurement(Basis.TIME, 1, Basis.TIME,
        ...                                 DimensionlessParams(8.0, 0.1, 2.0), rng)
        >>> int(decoded)
        1
    """
    grid = bin_grid(params)
    mean, std = reading_distribution(grid, params.z, sent_basis, symbol, measured_basis)
    values = mean + std * rng.standard_normal(mean.shape)
    return values, grid.decode(values)


def decode_distribution(
    sent_basis: Basis, symbol: int, measured_basis: Basis, params: DimensionlessParams
) -> np.ndarray:
    """Exact probability of decoding each bin, the counterpart of :func:`sample_measurement`."""
    grid = bin_grid(params)
    mean, std = reading_distribution(grid, params.z, int(sent_basis), symbol, int(measured_basis))
    m, s = float(mean), float(std)
    return np.array([gaussian_interval_prob(m, s, grid.cell(i)) for i in range(grid.n)])
