"""Asymptotic discrete spot noise (ADSN) texture model.

A texture image U with per-channel mean m defines the zero-sum kernel
t = (U - m) / sqrt(M*N). Convolving t with a standard Gaussian white noise
field W yields a stationary Gaussian texture X = t * W whose covariance is
the circular convolution by gamma = t * flip(t). Color textures share one
noise field across channels, which realizes the cross-channel covariance
implicitly.
"""

from dataclasses import dataclass

import numpy as np

from .errors import SizeMismatch
from .grid import as_image, channel_count, conv2_periodic, flip, image_size

__all__ = [
    "Texton",
    "compute_texton",
    "adsn_covariance_kernel",
    "adsn_sample",
    "draw_standard_noise",
    "PRNG_NAME",
]

# Fixed, named generator so runs are reproducible across platforms: numpy's
# default_rng is PCG64 seeded through SeedSequence, with the ziggurat
# standard-normal sampler.
PRNG_NAME = "numpy.default_rng(PCG64)/ziggurat"


@dataclass(frozen=True)
class Texton:
    """Zero-sum convolution kernel of an ADSN model.

    ``kernel`` has the shape of the source image; each channel sums to zero.
    ``source_mean`` records the per-channel mean that was subtracted.
    """

    kernel: np.ndarray
    source_mean: np.ndarray

    @property
    def channels(self):
        return channel_count(self.kernel)

    @property
    def shape(self):
        return image_size(self.kernel)


def compute_texton(u):
    """Texton of an image: per channel, (u - mean(u)) / sqrt(M*N)."""
    u = as_image(u, check_finite=True)
    M, N = image_size(u)
    mean = u.mean(axis=(0, 1))
    kernel = (u - mean) / np.sqrt(M * N)
    return Texton(kernel=kernel, source_mean=np.atleast_1d(mean))


def adsn_covariance_kernel(t):
    """Covariance kernel gamma = kernel * flip(kernel), per channel."""
    return conv2_periodic(t.kernel, flip(t.kernel))


def adsn_sample(t, w):
    """Draw one texture X = kernel * w; all channels share the noise field w."""
    w = np.asarray(w, dtype=np.float64)
    if w.ndim != 2:
        raise SizeMismatch("noise field must be a single-channel (M, N) array")
    if w.shape != t.shape:
        raise SizeMismatch(f"noise field {w.shape} does not match texton {t.shape}")
    return conv2_periodic(t.kernel, w)


def draw_standard_noise(M, N, seed):
    """I.i.d. N(0,1) field of shape (M, N), fully determined by ``seed``."""
    rng = np.random.default_rng(seed)
    return rng.standard_normal((M, N))
