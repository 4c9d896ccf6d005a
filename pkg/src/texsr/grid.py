"""Image containers and operations on the discrete torus.

Images are float64 arrays of shape (M, N) for grayscale or (M, N, 3) for
color, with implicit periodic extension: the pixel at (x1, x2) is the pixel
at (x1 mod M, x2 mod N). Spectra are complex128 arrays of the same shape.

The transform convention is the unnormalized forward sum

    X_hat(x) = sum_y X(y) exp(-2i*pi*x1*y1/M) exp(-2i*pi*x2*y2/N)

with 1/(MN) times the conjugate transform as inverse, so that
dft2(conv2_periodic(X, Y)) = dft2(X) * dft2(Y) holds without scale factors.
This matches numpy's fft2/ifft2 applied over the first two axes.
"""

import numpy as np

from .errors import ChannelMismatch, NonHermitianSpectrum, NotDivisible, SizeMismatch

__all__ = [
    "as_image",
    "image_size",
    "channel_count",
    "dft2",
    "idft2",
    "conv2_periodic",
    "flip",
    "translate",
    "subsample",
    "gather_subgrid",
    "scatter_subgrid",
]


def as_image(u, check_finite=False):
    """Coerce ``u`` to a float64 image array of shape (M, N) or (M, N, 3)."""
    a = np.asarray(u, dtype=np.float64)
    if a.ndim not in (2, 3):
        raise ChannelMismatch(f"expected a 2-D or 3-D array, got ndim={a.ndim}")
    if a.ndim == 3 and a.shape[2] != 3:
        raise ChannelMismatch(f"color images must have 3 channels, got {a.shape[2]}")
    if check_finite and not np.all(np.isfinite(a)):
        raise ValueError("image contains non-finite values")
    return a


def image_size(u):
    """(M, N) of an image or spectrum array."""
    return u.shape[0], u.shape[1]


def channel_count(u):
    return 1 if u.ndim == 2 else u.shape[2]


def dft2(img):
    """Forward 2-D transform of each channel (unnormalized sum convention)."""
    return np.fft.fft2(img, axes=(0, 1))


def idft2(spec, tol=1e-8):
    """Inverse 2-D transform, returning a real image.

    Raises NonHermitianSpectrum if the imaginary residual after inversion
    exceeds ``tol`` times the largest spectral magnitude, which indicates the
    spectrum was corrupted upstream (a real image's spectrum satisfies
    ``spec(-x) == conj(spec(x))``).
    """
    x = np.fft.ifft2(spec, axes=(0, 1))
    scale = np.max(np.abs(spec)) if spec.size else 0.0
    if scale > 0.0:
        resid = np.max(np.abs(x.imag))
        if resid > tol * scale:
            raise NonHermitianSpectrum(
                f"imaginary residual {resid:.3e} exceeds {tol:.0e} x max|spec|={scale:.3e}"
            )
    return np.ascontiguousarray(x.real)


def conv2_periodic(x, y):
    """Periodic convolution (X * Y)(x) = sum_y X(x - y) Y(y), via the FFT.

    Accepts a mix of grayscale and color arguments: a 2-D operand is applied
    to every channel of a 3-D one. Both operands must share (M, N).
    """
    if image_size(x) != image_size(y):
        raise SizeMismatch(f"convolution operands differ in size: {x.shape} vs {y.shape}")
    xh = np.fft.fft2(x, axes=(0, 1))
    yh = np.fft.fft2(y, axes=(0, 1))
    if xh.ndim != yh.ndim:
        if xh.ndim == 2:
            xh = xh[..., None]
        else:
            yh = yh[..., None]
    return np.ascontiguousarray(np.fft.ifft2(xh * yh, axes=(0, 1)).real)


def flip(x):
    """The symmetric image: out(x) = in(-x mod (M, N))."""
    return np.roll(np.flip(x, axis=(0, 1)), shift=(1, 1), axis=(0, 1))


def translate(u, a, b):
    """Periodic translation: out(x) = in(x1 - a, x2 - b)."""
    return np.roll(u, shift=(a, b), axis=(0, 1))


def _check_stride(u, r):
    M, N = image_size(u)
    if not isinstance(r, (int, np.integer)) or r < 1:
        raise NotDivisible(f"stride must be a positive integer, got {r!r}")
    if M % r or N % r:
        raise NotDivisible(f"stride {r} does not divide image size {M}x{N}")


def subsample(u, r):
    """Keep every r-th pixel: out(x) = in(r*x). Output is (M/r, N/r)."""
    _check_stride(u, r)
    return np.ascontiguousarray(u[::r, ::r])


def gather_subgrid(u, k, l, r):
    """Read the subgrid with stride r starting at (k, l): out(i,j) = u(k+ir, l+jr)."""
    _check_stride(u, r)
    if not (0 <= k < r and 0 <= l < r):
        raise ValueError(f"subgrid start ({k}, {l}) outside [0, {r})^2")
    return np.ascontiguousarray(u[k::r, l::r])


def scatter_subgrid(u_hr, patch, k, l, r):
    """Write ``patch`` onto the subgrid of ``u_hr`` with stride r at (k, l), in place."""
    _check_stride(u_hr, r)
    if not (0 <= k < r and 0 <= l < r):
        raise ValueError(f"subgrid start ({k}, {l}) outside [0, {r})^2")
    M, N = image_size(u_hr)
    expect = (M // r, N // r) + u_hr.shape[2:]
    if patch.shape != expect:
        raise SizeMismatch(f"patch shape {patch.shape} does not match subgrid shape {expect}")
    u_hr[k::r, l::r] = patch
