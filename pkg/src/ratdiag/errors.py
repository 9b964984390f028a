"""Exception types raised across the package."""


class RatDiagError(Exception):
    """Base class for every computation error raised here."""


class NonRationalRoot(RatDiagError):
    pass


class CompositionAtNonzeroPoint(RatDiagError):
    pass


class InexactDivision(RatDiagError):
    pass


class ExpansionAtPole(RatDiagError):
    pass


class WrongFamilyShape(RatDiagError):
    pass


class PullbackNotVanishing(RatDiagError):
    pass


class GammaPole(RatDiagError):
    pass


class UnknownIdentity(RatDiagError):
    pass


class UnsupportedLevel(RatDiagError):
    pass


class UnknownTag(RatDiagError):
    pass


class SingularBranch(RatDiagError):
    pass


class ZeroDerivative(RatDiagError):
    pass


class InvalidMonomialMap(RatDiagError):
    pass


class ParseError(RatDiagError):
    pass


class ResidualNonzero(RatDiagError):
    """A polynomial relation fails; ``exponent`` is the first nonzero term."""

    def __init__(self, msg: str, exponent: int | None = None):
        super().__init__(msg)
        self.exponent = exponent


class NotInvolutive(RatDiagError):
    pass


class CompositionMismatch(RatDiagError):
    pass


class NonconstantRatio(RatDiagError):
    pass


class InvarianceViolation(RatDiagError):
    pass
