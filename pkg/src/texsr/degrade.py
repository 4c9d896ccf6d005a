"""The zoom-out operator A = S C.

C is a periodic separable convolution by an antialiased bicubic kernel and
S is the subsampling with stride r, so that

    (A u)(x) = sum_j tap(j1) tap(j2) u(r*x1 + j1, r*x2 + j2).

The 1-D taps come from the Keys cubic kernel (a = -0.5) stretched by the
zoom factor, tap(j) = k((j - delta)/r) / r for |j - delta| < 2r with
delta = (r - 1)/2, then normalized to sum exactly 1. The delta offset
aligns output pixel x with input position r*x + delta, i.e. the standard
pixel-center mapping (x + 0.5)*r - 0.5. Boundary handling is periodic
throughout (the borders intentionally differ from replicate-edge resizers;
interior pixels match them).
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidFactor, NotDivisible, SizeMismatch
from .grid import channel_count, image_size

__all__ = [
    "DegradeOperator",
    "build_downscale_kernel",
    "apply_degrade",
    "apply_degrade_adjoint",
]


def _keys_cubic(s):
    """Keys interpolation cubic with a = -0.5, support (-2, 2)."""
    s = np.abs(np.asarray(s, dtype=np.float64))
    return np.where(
        s <= 1.0,
        1.5 * s**3 - 2.5 * s**2 + 1.0,
        np.where(s < 2.0, -0.5 * s**3 + 2.5 * s**2 - 4.0 * s + 2.0, 0.0),
    )


@dataclass(frozen=True, eq=False)
class DegradeOperator:
    """Immutable zoom-out operator: taps at integer offsets plus the stride."""

    factor: int
    offsets: np.ndarray = field(repr=False)
    taps: np.ndarray = field(repr=False)

    def kernel_1d(self, n):
        """Axis kernel of the convolution C embedded on a length-n circle.

        C u = c * u (true periodic convolution), which places tap(j) at
        index (-j) mod n. Overlapping wraps accumulate.
        """
        c = np.zeros(n)
        np.add.at(c, (-self.offsets) % n, self.taps)
        return c

    def kernel_2d(self, M, N):
        """Separable grid kernel c of C on an M x N torus."""
        return np.outer(self.kernel_1d(M), self.kernel_1d(N))

    def spectrum(self, M, N):
        """DFT of kernel_2d, computed from the two axis kernels."""
        return np.multiply.outer(np.fft.fft(self.kernel_1d(M)), np.fft.fft(self.kernel_1d(N)))


def build_downscale_kernel(r):
    """Antialiased bicubic zoom-out operator for integer factor r >= 1."""
    if not isinstance(r, (int, np.integer)) or isinstance(r, bool) or r < 1:
        raise InvalidFactor(f"zoom factor must be a positive integer, got {r!r}")
    r = int(r)
    delta = (r - 1) / 2.0
    lo = int(np.floor(delta - 2 * r)) + 1
    hi = int(np.ceil(delta + 2 * r)) - 1
    offsets = np.arange(lo, hi + 1)
    taps = _keys_cubic((offsets - delta) / r) / r
    keep = taps != 0.0
    offsets, taps = offsets[keep], taps[keep]
    taps = taps / taps.sum()
    return DegradeOperator(factor=r, offsets=offsets, taps=taps)


def _checked_spectrum(op, u):
    M, N = image_size(u)
    if M % op.factor or N % op.factor:
        raise NotDivisible(f"factor {op.factor} does not divide image size {M}x{N}")
    ch = op.spectrum(M, N)
    return ch[:, :, None] if u.ndim == 3 else ch


def apply_degrade(op, u):
    """A u: periodic separable blur then stride-r subsampling, per channel."""
    u = np.asarray(u, dtype=np.float64)
    ch = _checked_spectrum(op, u)
    blurred = np.fft.ifft2(np.fft.fft2(u, axes=(0, 1)) * ch, axes=(0, 1)).real
    return np.ascontiguousarray(blurred[:: op.factor, :: op.factor])


def apply_degrade_adjoint(op, y, hr_shape):
    """A^T y: zero-insertion upsampling followed by correlation with c.

    ``hr_shape`` is the (M, N) of the high-resolution grid the adjoint maps
    back to.
    """
    y = np.asarray(y, dtype=np.float64)
    M, N = hr_shape
    r = op.factor
    if image_size(y) != (M // r, N // r):
        raise SizeMismatch(
            f"LR image {y.shape} does not match ({M}//{r}, {N}//{r}) for HR size {M}x{N}"
        )
    up = np.zeros((M, N) + y.shape[2:])
    up[::r, ::r] = y
    ch = _checked_spectrum(op, up)
    out = np.fft.ifft2(np.fft.fft2(up, axes=(0, 1)) * np.conj(ch), axes=(0, 1)).real
    return np.ascontiguousarray(out)
