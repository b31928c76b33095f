"""Exception types shared across the package."""


class StokeslabError(Exception):
    """Base class for all package errors."""


class NonConvergence(StokeslabError):
    """An iterative solver failed to reach its target residual."""


class MultipleTurningPoint(StokeslabError):
    """A turning point of multiplicity > 1 was found; downstream analysis
    assumes simple turning points."""

    def __init__(self, z, multiplicity=None):
        self.z = z
        self.multiplicity = multiplicity
        msg = f"multiple turning point at {z}"
        if multiplicity is not None:
            msg += f" (multiplicity {multiplicity})"
        super().__init__(msg)


class BranchJump(StokeslabError):
    """sqrt(q) could not be continued; a turning point sits on or near the path."""


class QuadratureFailure(StokeslabError):
    """Adaptive quadrature failed to meet its error target at maximum depth."""


class SignError(StokeslabError):
    """q had the wrong sign at an interior sample of a well/barrier integral."""


class CutoffTooSmall(StokeslabError):
    """The shooting cutoff X does not lie in the forbidden region (q(X) <= 0)."""


class StiffnessFailure(StokeslabError):
    """The shooting integrator's step size underflowed."""


class StepUnderflow(StokeslabError):
    """An ODE step size underflowed during complex continuation."""


class PhaseAliasing(StokeslabError):
    """A phase step along a contour exceeded pi/2 after maximal refinement."""


class LostZero(StokeslabError):
    """Zero counts disagreed after quadtree refinement."""

    def __init__(self, message, audit=None):
        self.audit = audit or []
        super().__init__(message)


class TooFewZeros(StokeslabError):
    """Not enough zeros in the requested region to perform a fit."""


class NoBracket(StokeslabError):
    """A root bracket could not be established for a calibration target."""


class UnsupportedFamily(StokeslabError):
    """Unknown potential family name."""


class ConfigError(StokeslabError):
    """Invalid run configuration."""


class MissedEigenvalueWarning(UserWarning):
    """The a-posteriori WKB eigenvalue count disagrees with the found count."""
