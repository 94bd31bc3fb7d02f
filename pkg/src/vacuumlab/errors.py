"""Exception hierarchy shared by all vacuumlab modules."""


class VacuumlabError(Exception):
    """Base class for all vacuumlab errors."""


class DomainError(VacuumlabError, ValueError):
    """Argument outside the mathematical domain of the function."""


class NonConvergence(VacuumlabError, RuntimeError):
    """A quadrature, series, or limit sweep failed its stability test."""


class NoConvergence(NonConvergence):
    """Iterative root polishing did not converge within the step cap."""


class SingularRoot(VacuumlabError, ValueError):
    """Root with |f'(root)| below tolerance; delta composition undefined there."""


class IncompatibleClasses(VacuumlabError, ValueError):
    """Product of delta sequences drawn from different equivalence classes."""


class DegenerateMode(VacuumlabError, ValueError):
    """Scattering/inner-product evaluation hit a degenerate wavenumber channel."""


class BranchError(VacuumlabError, ArithmeticError):
    """Complex kernel lost the conjugate-pair structure beyond tolerance."""


class NoSignChange(VacuumlabError, ValueError):
    """Bisection bracket has the same sign at both endpoints."""


class DimensionCap(VacuumlabError, ValueError):
    """Requested truncated representation exceeds the configured size cap."""


class CombinatorialCap(VacuumlabError, ValueError):
    """Requested exact expansion exceeds the configured pattern-count cap."""


class ConfigError(VacuumlabError, ValueError):
    """Invalid run configuration (unknown key, bad range, missing parameter)."""


class IoError(VacuumlabError, OSError):
    """Artifact file could not be written."""
