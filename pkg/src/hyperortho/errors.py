"""Exception types shared across the package."""


class HyperOrthoError(Exception):
    """Base class for all errors raised by hyperortho."""


class Inadmissible(HyperOrthoError, ValueError):
    """Parameters (alpha, beta) violate the constraints of the chosen case."""


class OutOfDomain(HyperOrthoError, ValueError):
    """A point lies outside the open interval where a function is defined."""


class IndexBeyondCutoff(HyperOrthoError, ValueError):
    """A polynomial index is not below the cutoff nu, or m/l are inconsistent."""


class NonConvergence(HyperOrthoError, RuntimeError):
    """Quadrature refinements failed to agree within tolerance."""


class Mismatch(HyperOrthoError, ValueError):
    """Two functions are not proportional on the sample points."""


class AllZero(HyperOrthoError, ValueError):
    """The reference function vanishes at every sample point."""


class GridTooCoarse(HyperOrthoError, ValueError):
    pass


class WindowTooSmall(HyperOrthoError, ValueError):
    """Targeted bound states have not decayed at the truncation window edges."""


class NumericalFailure(HyperOrthoError, RuntimeError):
    pass
