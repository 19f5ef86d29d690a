"""Fourier transforms of uniformly sampled real-space profiles"""

import numpy as np

_SERIES_THRESHOLD = 1e-3


def hat_transform(theta):
    """h * hat_transform(kh) is the transform of one full hat function of half-width h"""
    theta = np.asarray(theta, dtype=float)
    return np.sinc(theta / (2.0 * np.pi)) ** 2


def half_hat_transform(theta):
    """int_0^1 (1 - s) exp(-i theta s) ds, the transform of a one-sided hat"""
    theta = np.asarray(theta, dtype=float)
    small = np.abs(theta) < _SERIES_THRESHOLD
    safe = np.where(small, 1.0, theta)
    exact = 1.0 / (1j * safe) + (1.0 - np.exp(-1j * safe)) / safe ** 2
    series = 0.5 - 1j * theta / 6.0 - theta ** 2 / 24.0
    return np.where(small, series, exact)


def phase_sum(k: np.ndarray, z: np.ndarray, values: np.ndarray, chunk: int = 2048) -> np.ndarray:
    """sum_j values_j exp(-i k z_j) for every k, accumulated over z-chunks"""
    k = np.asarray(k, dtype=float)
    total = np.zeros(k.shape, dtype=complex)
    for start in range(0, z.size, chunk):
        stop = min(start + chunk, z.size)
        total += np.exp(-1j * np.multiply.outer(k, z[start:stop])) @ values[start:stop]
    return total


def piecewise_linear_transform(z: np.ndarray, values: np.ndarray, k: np.ndarray) -> np.ndarray:
    """
    int dz f(z) exp(-ikz) for the piecewise-linear interpolant of samples on a uniform grid

    The interpolant ends at the first and last sample, so a jump to zero just
    outside the window is captured exactly.
    """
    z = np.asarray(z, dtype=float)
    values = np.asarray(values, dtype=complex)
    k = np.asarray(k, dtype=float)
    h = z[1] - z[0]
    theta = k * h
    interior = h * hat_transform(theta) * phase_sum(k, z, values)
    left = values[0] * np.exp(-1j * k * z[0]) * h * (half_hat_transform(theta) - hat_transform(theta))
    right = values[-1] * np.exp(-1j * k * z[-1]) * h * (half_hat_transform(-theta) - hat_transform(theta))
    return interior + left + right
