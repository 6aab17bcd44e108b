"""Exceptions raised by c3msv.

The command line front end maps these onto exit codes: ``ConfigError`` is 2,
``NonConvergenceError`` is 4 and the remaining numeric failures are 3.
"""


class C3MSVError(Exception):
    """Base class for every error raised deliberately by this package."""


class ConfigError(C3MSVError, ValueError):
    """Invalid parameter, tag, grid or configuration file."""


class SingularBlockError(C3MSVError, ValueError):
    """The steering party's covariance block cannot be inverted reliably."""

    def __init__(self, message, condition=None):
        super(SingularBlockError, self).__init__(message)
        self.condition = condition


class NotPositiveDefiniteError(C3MSVError, ValueError):
    """A matrix that must be positive definite is not."""


class CutoffError(C3MSVError, ValueError):
    """Fock cutoff too small for the defect budget or the requested operator powers."""


class VacuumSubtractionError(C3MSVError, ValueError):
    """Annihilation operator applied to a mode that carries no photons."""


class NonConvergenceError(C3MSVError, RuntimeError):
    """Quadrature refinement ran out of refinements before meeting its tolerance."""

    def __init__(self, message, estimates=None):
        super(NonConvergenceError, self).__init__(message)
        self.estimates = tuple(estimates or ())
