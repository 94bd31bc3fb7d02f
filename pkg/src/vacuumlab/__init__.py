"""vacuumlab: numerics for scalar fields over structured vacua.

Subpackages cover delta-sequence calculus (deltaseq), the special-function
kernel (specfun), vacuum profiles (vacuum), averaged potentials (coulomb),
double-barrier cavity modes (cavity), Casimir pressure (casimir), oscillator
ensembles and statistics (oscillator), and a self-validation suite
(validation) exposed through the CLI.
"""

__version__ = "0.1.0"

from . import (casimir, cavity, constants, coulomb, deltaseq, errors,
               numerics, oscillator, specfun, vacuum)

__all__ = [
    "__version__", "casimir", "cavity", "constants", "coulomb", "deltaseq",
    "errors", "numerics", "oscillator", "specfun", "vacuum",
]
