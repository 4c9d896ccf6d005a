"""Spectral kriging kernels for the subsampled-convolution observation model.

The conditional expectation E(X | A X) of a stationary Gaussian texture X
given its zoom-out A X is Lambda^T A X, where Lambda solves

    A Gamma A^T Lambda = A Gamma.

Stationarity makes Lambda block-circulant: it is fully determined by r^2
low-resolution kernels lambda(k, l), one per subgrid of stride r, and each
one solves the LR-grid convolution system

    kappa * lambda(k, l) = b(k, l),
    kappa   = S(c * gamma * flip(c)),
    b(k, l) = S((c * gamma)(. - k, . - l)),

which is pseudo-inverted frequency by frequency. Applying Lambda^T to an LR
image y then scatters idft2(dft2(y) * conj(lambda_hat(k, l))) onto subgrid
(k, l) of the HR grid.
"""

import struct
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import CorruptFile, DegenerateModel, NotDivisible, SizeMismatch
from .grid import channel_count, image_size
from .periodic import periodic_smooth_decompose

__all__ = [
    "KrigingPrecomputation",
    "KrigingKernels",
    "precompute_kernels",
    "solve_kriging_kernels",
    "apply_kriging",
    "save_kriging_kernels",
    "load_kriging_kernels",
]

_MAGIC = b"TEXSRKK1"
_VERSION = 1


def _channels_first(u):
    """(M, N[, C]) -> (C, M, N) view."""
    return u[None] if u.ndim == 2 else np.moveaxis(u, 2, 0)


@dataclass(frozen=True, eq=False)
class KrigingPrecomputation:
    """Convolution kernels shared by the r^2 per-shift systems.

    gamma and c_gamma live on the HR grid (same layout as the texton
    kernel); kappa lives on the LR grid. gamma is built from the periodic
    component of the texton to keep border discontinuities out of the
    spectral products.
    """

    gamma: np.ndarray
    c_gamma: np.ndarray
    kappa: np.ndarray
    factor: int


@dataclass(frozen=True, eq=False)
class KrigingKernels:
    """The r^2 spectral kriging kernels per channel, plus the zeroed-frequency mask.

    lambda_hat has shape (channels, r, r, M/r, N/r); zero_mask and kappa_hat
    have shape (channels, M/r, N/r). lambda_hat is zero wherever zero_mask
    is set.
    """

    factor: int
    hr_shape: tuple
    lambda_hat: np.ndarray
    zero_mask: np.ndarray
    kappa_hat: np.ndarray
    tol_rel: float

    @property
    def channels(self):
        return self.lambda_hat.shape[0]

    @property
    def lr_shape(self):
        return self.hr_shape[0] // self.factor, self.hr_shape[1] // self.factor


def precompute_kernels(t, op):
    """Kernels gamma = per(t) * flip(per(t)), c * gamma and kappa, in Fourier."""
    M, N = t.shape
    r = op.factor
    if M % r or N % r:
        raise NotDivisible(f"factor {r} does not divide texton size {M}x{N}")
    p = periodic_smooth_decompose(t.kernel).periodic
    ph = np.fft.fft2(p, axes=(0, 1))
    ch = op.spectrum(M, N)
    if p.ndim == 3:
        ch = ch[:, :, None]
    gamma_hat = (ph * np.conj(ph)).real
    gamma = np.fft.ifft2(gamma_hat, axes=(0, 1)).real
    c_gamma = np.fft.ifft2(ch * gamma_hat, axes=(0, 1)).real
    kappa_hr = np.fft.ifft2((ch * np.conj(ch)).real * gamma_hat, axes=(0, 1)).real
    kappa = np.ascontiguousarray(kappa_hr[::r, ::r])
    return KrigingPrecomputation(
        gamma=np.ascontiguousarray(gamma),
        c_gamma=np.ascontiguousarray(c_gamma),
        kappa=kappa,
        factor=r,
    )


def solve_kriging_kernels(pre, op, tol_rel=1e-10):
    """Pseudo-invert the r^2 per-shift systems frequency-wise.

    Frequencies where |kappa_hat| <= tol_rel * max|kappa_hat| are treated as
    zero and recorded in zero_mask; the corresponding lambda_hat entries are
    set to 0 (the minimum-norm solution). In exact arithmetic the right-hand
    sides vanish on masked frequencies; a warning is emitted if they do not
    within sqrt(tol_rel) relative.
    """
    r = pre.factor
    kappa_cf = _channels_first(pre.kappa)
    cg_cf = _channels_first(pre.c_gamma)
    C = kappa_cf.shape[0]
    m, n = kappa_cf.shape[1], kappa_cf.shape[2]
    M, N = cg_cf.shape[1], cg_cf.shape[2]

    lambda_hat = np.zeros((C, r, r, m, n), dtype=np.complex128)
    zero_mask = np.zeros((C, m, n), dtype=bool)
    kappa_hat = np.zeros((C, m, n), dtype=np.complex128)

    for c in range(C):
        kh = np.fft.fft2(kappa_cf[c])
        kmax = np.max(np.abs(kh))
        if kmax == 0.0:
            raise DegenerateModel(
                "kappa_hat vanishes identically (zero texton); kriging is undefined"
            )
        keep = np.abs(kh) > tol_rel * kmax
        kappa_hat[c] = kh
        zero_mask[c] = ~keep
        for k in range(r):
            for l in range(r):
                b = np.roll(cg_cf[c], shift=(k, l), axis=(0, 1))[::r, ::r]
                bh = np.fft.fft2(b)
                if not keep.all():
                    bmax = np.max(np.abs(bh))
                    leak = np.max(np.abs(bh[~keep])) if bmax else 0.0
                    if bmax and leak > np.sqrt(tol_rel) * bmax:
                        warnings.warn(
                            f"right-hand side not negligible on masked frequencies "
                            f"(channel {c}, shift ({k},{l}): {leak:.3e} vs max {bmax:.3e})",
                            RuntimeWarning,
                        )
                lambda_hat[c, k, l][keep] = bh[keep] / kh[keep]

    return KrigingKernels(
        factor=r,
        hr_shape=(M, N),
        lambda_hat=lambda_hat,
        zero_mask=zero_mask,
        kappa_hat=kappa_hat,
        tol_rel=float(tol_rel),
    )


def apply_kriging(kk, y):
    """Lambda^T y: per subgrid (k, l), the correlation of y with lambda(k, l).

    y must have the LR size (M/r, N/r); channels are processed independently
    and the output has the HR size with y's channel layout.
    """
    y = np.asarray(y, dtype=np.float64)
    if image_size(y) != kk.lr_shape:
        raise SizeMismatch(f"LR image {y.shape} does not match kernel LR size {kk.lr_shape}")
    if channel_count(y) != kk.channels:
        raise SizeMismatch(
            f"channel count {channel_count(y)} does not match kernels ({kk.channels})"
        )
    r = kk.factor
    out = np.zeros((kk.hr_shape[0], kk.hr_shape[1]) + y.shape[2:])
    out_cf = _channels_first(out)
    y_cf = _channels_first(y)
    for c in range(kk.channels):
        yh = np.fft.fft2(y_cf[c])
        for k in range(r):
            for l in range(r):
                out_cf[c, k::r, l::r] = np.fft.ifft2(yh * np.conj(kk.lambda_hat[c, k, l])).real
    return out


def save_kriging_kernels(kk, path):
    """Write kernels to the binary cache container (see README for the layout)."""
    M, N = kk.hr_shape
    header = _MAGIC + struct.pack(
        "<IIIIId", _VERSION, M, N, kk.factor, kk.channels, kk.tol_rel
    )
    with open(path, "wb") as fh:
        fh.write(header)
        for c in range(kk.channels):
            fh.write(np.ascontiguousarray(kk.kappa_hat[c], dtype="<c16").tobytes())
            for k in range(kk.factor):
                for l in range(kk.factor):
                    fh.write(np.ascontiguousarray(kk.lambda_hat[c, k, l], dtype="<c16").tobytes())


def load_kriging_kernels(path):
    """Read a kernel cache written by save_kriging_kernels."""
    with open(path, "rb") as fh:
        raw = fh.read()
    head = len(_MAGIC) + struct.calcsize("<IIIIId")
    if len(raw) < head or raw[: len(_MAGIC)] != _MAGIC:
        raise CorruptFile(f"{path}: not a texsr kernel cache")
    version, M, N, r, C, tol_rel = struct.unpack("<IIIIId", raw[len(_MAGIC) : head])
    if version != _VERSION:
        raise CorruptFile(f"{path}: unsupported cache version {version}")
    if r < 1 or M % r or N % r or C < 1:
        raise CorruptFile(f"{path}: inconsistent header (M={M}, N={N}, r={r}, channels={C})")
    m, n = M // r, N // r
    per_image = m * n * 16
    expect = head + C * (1 + r * r) * per_image
    if len(raw) != expect:
        raise CorruptFile(f"{path}: expected {expect} bytes, found {len(raw)}")

    kappa_hat = np.zeros((C, m, n), dtype=np.complex128)
    lambda_hat = np.zeros((C, r, r, m, n), dtype=np.complex128)
    pos = head
    for c in range(C):
        kappa_hat[c] = np.frombuffer(raw, dtype="<c16", count=m * n, offset=pos).reshape(m, n)
        pos += per_image
        for k in range(r):
            for l in range(r):
                lambda_hat[c, k, l] = np.frombuffer(
                    raw, dtype="<c16", count=m * n, offset=pos
                ).reshape(m, n)
                pos += per_image

    kmax = np.max(np.abs(kappa_hat), axis=(1, 2), keepdims=True)
    zero_mask = np.abs(kappa_hat) <= tol_rel * kmax
    return KrigingKernels(
        factor=r,
        hr_shape=(M, N),
        lambda_hat=lambda_hat,
        zero_mask=zero_mask,
        kappa_hat=kappa_hat,
        tol_rel=tol_rel,
    )
