"""Exception types raised by the texsr library."""


class TexsrError(Exception):
    """Base class for all texsr errors."""


class SizeMismatch(TexsrError, ValueError):
    """Two images (or an image and an operator) disagree on grid size."""


class ChannelMismatch(TexsrError, ValueError):
    """Grayscale/color channel counts are incompatible."""


class NotDivisible(TexsrError, ValueError):
    """The zoom factor does not divide the image dimensions."""


class InvalidFactor(TexsrError, ValueError):
    """Zoom factor is not a positive integer."""


class NonHermitianSpectrum(TexsrError, ValueError):
    """A spectrum fed to the inverse transform is not Hermitian-symmetric.

    Signals upstream spectral corruption: the inverse of a valid real-image
    spectrum must be real up to rounding noise.
    """


class DegenerateModel(TexsrError, ValueError):
    """The texture model carries no energy (zero texton); kriging undefined."""


class TooLarge(TexsrError, ValueError):
    """Instance exceeds the dense oracle's size cap."""


class TooSmall(TexsrError, ValueError):
    """Image is smaller than an evaluator's minimum window size."""


class UnsupportedFormat(TexsrError, ValueError):
    """Image file format (or bit depth) is not supported."""


class CorruptFile(TexsrError, ValueError):
    """Image file exists but cannot be decoded."""


class AlphaNotSupported(TexsrError, ValueError):
    """Image carries an alpha channel, which the pipeline does not model."""
