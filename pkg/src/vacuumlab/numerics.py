"""Shared numerical plumbing: quadrature settings, limit sweeps, tagged results.

Improper limits of integral sequences are realized as index sweeps
n = 16, 32, 64, ... with Richardson extrapolation; a sweep either settles
(finite value), grows without bound (divergent), or raises NonConvergence.
Divergence is always reported as a tagged result, never as float('inf').
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import quad

from .errors import NonConvergence


class OscillatoryStrategy(Enum):
    SERIES_TERMWISE = "series_termwise"
    FILON_SEGMENTS = "filon_segments"


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances and strategy knobs for improper/oscillatory integrals."""

    abs_tol: float = 1e-12
    rel_tol: float = 1e-10
    max_subdivisions: int = 300
    oscillatory_strategy: OscillatoryStrategy = OscillatoryStrategy.FILON_SEGMENTS

    def __post_init__(self):
        if self.abs_tol <= 0 or self.rel_tol <= 0:
            raise ValueError("tolerances must be positive")
        if self.max_subdivisions < 10:
            raise ValueError("max_subdivisions must be at least 10")


DEFAULT_SPEC = QuadratureSpec()


@dataclass(frozen=True)
class LimitResult:
    """Outcome of a limit sweep: a finite value or an explicit divergence tag."""

    kind: str  # "finite" | "divergent"
    value: float | None = None
    history: tuple = field(default=(), compare=False)

    @property
    def is_divergent(self) -> bool:
        return self.kind == "divergent"

    def expect_finite(self) -> float:
        if self.kind != "finite":
            raise NonConvergence("limit sweep diverged; no finite value available")
        return self.value


def finite(value: float, history: Sequence[float] = ()) -> LimitResult:
    return LimitResult("finite", float(value), tuple(history))


def divergent(history: Sequence[float] = ()) -> LimitResult:
    return LimitResult("divergent", None, tuple(history))


def quad_careful(f: Callable[[float], float], a: float, b: float,
                 spec: QuadratureSpec = DEFAULT_SPEC,
                 points: Sequence[float] | None = None) -> float:
    """scipy.integrate.quad wrapper honoring a QuadratureSpec.

    Breakpoints outside (a, b) are dropped; infinite ranges ignore points
    (scipy restriction).
    """
    kwargs = dict(limit=spec.max_subdivisions, epsabs=spec.abs_tol,
                  epsrel=spec.rel_tol)
    if points is not None and np.isfinite(a) and np.isfinite(b):
        pts = sorted({p for p in points if a < p < b})
        if pts:
            kwargs["points"] = pts
    val, err = quad(f, a, b, **kwargs)
    if not np.isfinite(val):
        raise NonConvergence(f"quadrature returned non-finite value on [{a}, {b}]")
    return val


def richardson(values: Sequence[float]) -> np.ndarray:
    """One Richardson triangle row per order, assuming error ~ c/n on an
    index grid that doubles (n, 2n, 4n, ...). Returns the extrapolant ladder,
    last entry being the highest order."""
    v = np.asarray(values, dtype=float)
    out = [v[-1]]
    work = v.copy()
    order = 1
    while len(work) > 1:
        # error model c * n^{-order}: doubling n scales the error by 2^{-order}
        work = (2.0 ** order * work[1:] - work[:-1]) / (2.0 ** order - 1.0)
        out.append(work[-1])
        order += 1
    return np.asarray(out)


def sweep_limit(evaluate: Callable[[int], float],
                spec: QuadratureSpec = DEFAULT_SPEC,
                start: int = 16, max_doublings: int = 12,
                divergence_ratio: float = 1.5) -> LimitResult:
    """Estimate lim_{n->inf} evaluate(n) over n = start, 2*start, 4*start, ...

    Stability test: the last two Richardson extrapolants differ by less than
    spec.abs_tol + spec.rel_tol * |value|.  Sustained geometric growth
    (three consecutive doubling ratios above divergence_ratio) is tagged
    divergent.  Anything else raises NonConvergence.
    """
    history: list[float] = []
    n = start
    for _ in range(max_doublings):
        history.append(evaluate(n))
        n *= 2
        if len(history) >= 3 and all(abs(v) < spec.abs_tol for v in history[-3:]):
            return finite(0.0, history)
        if len(history) >= 4:
            tail = np.abs(history[-4:])
            if np.all(tail[:-1] > 0) and np.all(tail[1:] / tail[:-1] > divergence_ratio):
                return divergent(history)
        if len(history) >= 3:
            ladder = richardson(history)
            tol = spec.abs_tol + spec.rel_tol * abs(ladder[-1])
            if abs(ladder[-1] - ladder[-2]) < tol:
                return finite(ladder[-1], history)
    raise NonConvergence(
        f"index sweep failed stability test after {len(history)} doublings; "
        f"history={history}")


def cesaro_mean(f: Callable[[float], float], lo: float, hi: float,
                samples: int = 512) -> float:
    """Arithmetic mean of f over an evenly spaced window grid."""
    xs = np.linspace(lo, hi, samples)
    return float(np.mean([f(x) for x in xs]))
