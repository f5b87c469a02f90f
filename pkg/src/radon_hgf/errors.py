"""Exception and warning types shared across the package."""


class RadonHGFError(Exception):
    """Base class for all errors raised by this package."""


# --- linear algebra / numeric core ---

class SingularMatrix(RadonHGFError):
    pass


class NotHermitian(RadonHGFError):
    pass


class UnsupportedCount(RadonHGFError):
    pass


class ShapeMismatch(RadonHGFError):
    pass


# --- truncated matrix polynomial ring ---

class NotAUnit(RadonHGFError):
    pass


class NotUnipotent(RadonHGFError):
    pass


class NotNilpotent(RadonHGFError):
    pass


# --- characters ---

class SingularBlock(RadonHGFError):
    pass


class InvalidWeight(RadonHGFError):
    pass


class BranchCutWarning(UserWarning):
    """A determinant sits on the negative real axis: the principal branch
    is discontinuous there.  Flagged, not fatal."""


# --- coordinates / normal forms ---

class BadIndexSet(RadonHGFError):
    pass


class SingularFrame(RadonHGFError):
    pass


class NotInZLambda(RadonHGFError):
    def __init__(self, message, witnesses=None):
        super().__init__(message)
        self.witnesses = witnesses or []


class DegenerateOrbit(RadonHGFError):
    pass


# --- integrands ---

class OnBranchLocus(RadonHGFError):
    pass


class OutOfDomain(RadonHGFError):
    pass


class UnsupportedPartition(RadonHGFError):
    pass


class UnpinnedAlpha(RadonHGFError):
    pass


# --- integration ---

class NonConvergent(RadonHGFError):
    pass


class DivergentEndpoint(RadonHGFError):
    pass


class NotInvariant(RadonHGFError):
    pass


class IncompatibleChain(RadonHGFError):
    pass


# --- differential system checks ---

class StencilCrossesBranchLocus(RadonHGFError):
    pass


# --- series oracles ---

class PoleInC(RadonHGFError):
    pass


class PoleHit(RadonHGFError):
    pass


class SlowConvergence(RadonHGFError):
    pass
