"""Domain errors raised across the package.

Each class carries a stable ``code`` used in CLI error reports.
"""


class HolodiffError(Exception):
    """Base class of all domain errors."""

    code = "HolodiffError"

    def __init__(self, detail=""):
        super().__init__(detail)
        self.detail = detail


class SingularMatrix(HolodiffError):
    """A matrix that must be invertible has zero determinant."""

    code = "SingularMatrix"


class UnsupportedPoint(HolodiffError):
    """A singular point or orbit is not rational."""

    code = "UnsupportedPoint"


class NotNormalizable(HolodiffError):
    """An operator cannot be normalised to nonnegative tau powers."""

    code = "NotNormalizable"


class RankZero(HolodiffError):
    """A cyclic difference module has generic rank zero (it is torsion)."""

    code = "RankZero"


class IncompatibleTriple(HolodiffError):
    """A disk triple does not match the punctured module."""

    code = "IncompatibleTriple"


class MixedCaseUnsupported(HolodiffError):
    """A module with both free and torsion parts was given where only one is supported."""

    code = "MixedCaseUnsupported"


class InsufficientPrecision(HolodiffError):
    """The truncation order is too low to certify a result."""

    code = "InsufficientPrecision"


class SingularInput(HolodiffError):
    """The determinant vanishes through the truncation order."""

    code = "SingularInput"


class IrrationalEigenvalue(HolodiffError):
    """The characteristic polynomial has non-rational roots."""

    code = "IrrationalEigenvalue"


class WindowTooSmall(HolodiffError):
    """The tau-exponent window is not large enough to be stable."""

    code = "WindowTooSmall"


class ParseError(HolodiffError):
    """Malformed textual or JSON input."""

    code = "ParseError"
