"""Periodic plus smooth image decomposition.

Splits an image into a torus-periodic component and a smooth residual so
that spectral computations are not polluted by the cross-shaped artifacts
caused by wrap-around discontinuities at the image borders. The smooth
component solves a discrete Poisson equation driven by the opposite-edge
differences of the input.
"""

from typing import NamedTuple

import numpy as np

from .grid import as_image

__all__ = ["PeriodicSmoothPair", "periodic_smooth_decompose"]


class PeriodicSmoothPair(NamedTuple):
    periodic: np.ndarray
    smooth: np.ndarray


def periodic_smooth_decompose(u):
    """Decompose ``u`` into periodic + smooth, channel by channel.

    The smooth component is computed spectrally. With v the boundary
    discrepancy image (v(0,:) = u(M-1,:) - u(0,:), the negation on the last
    row, plus the analogous column terms), its spectrum is divided by the
    discrete Laplacian symbol 2cos(2*pi*x1/M) + 2cos(2*pi*x2/N) - 4, with
    the zero frequency pinned to 0 so the smooth component has zero mean.

    Guarantees: periodic + smooth == u exactly up to rounding, and
    mean(smooth) == 0.
    """
    u = as_image(u)
    M, N = u.shape[0], u.shape[1]

    v = np.zeros_like(u)
    du = u[-1, :] - u[0, :]
    v[0, :] += du
    v[-1, :] -= du
    du = u[:, -1] - u[:, 0]
    v[:, 0] += du
    v[:, -1] -= du

    cos_m = np.cos(2.0 * np.pi * np.fft.fftfreq(M))
    cos_n = np.cos(2.0 * np.pi * np.fft.fftfreq(N))
    denom = 2.0 * (cos_m[:, None] + cos_n[None, :] - 2.0)
    denom[0, 0] = 1.0
    if u.ndim == 3:
        denom = denom[:, :, None]

    s_hat = np.fft.fft2(v, axes=(0, 1)) / denom
    s_hat[0, 0] = 0.0
    smooth = np.fft.ifft2(s_hat, axes=(0, 1)).real
    return PeriodicSmoothPair(periodic=u - smooth, smooth=smooth)
