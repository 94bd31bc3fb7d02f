"""Delta-sequence calculus on the real line.

A delta sequence is a family of ordinary functions delta_n with unit
integral whose filtering integrals converge,

    lim_n int delta_n(k) f(k) dk = (f(0-) + f(0+)) / 2.

Four families are implemented:

* LAMBDA_TRIANGLE -- the triangle of height n on [-1/n, 1/n] (the classical
  picture, delta_n(0) = n);
* M_SHAPE -- the piecewise-linear "M" profile of width epsilon = 1/n whose
  value at the origin is a constant a for every n;
* SHIFTED_PAIR -- the symmetrized pair of shifted triangles
  (delta_n(k - j/n) + delta_n(-k - j/n)) / 2, vanishing at 0 for j >= 1;
* PRINCIPAL_VALUE -- exp(i k n) / (i pi k), understood in the Cauchy
  principal-value sense (complex valued).

Families with the same origin value delta(0) form one multiplication class:
powers of a family are defined through nested limits with one independent
index per factor, swept innermost first.  Squares of the triangle family
diverge; that outcome is reported as a tagged LimitResult, never as inf.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError, IncompatibleClasses, SingularRoot
from .numerics import (DEFAULT_SPEC, LimitResult, QuadratureSpec, divergent,
                       finite, quad_careful, sweep_limit)
from .specfun import sine_integral

TWO_PI = 2.0 * np.pi


class DeltaShape(Enum):
    LAMBDA_TRIANGLE = "lambda_triangle"
    M_SHAPE = "m_shape"
    SHIFTED_PAIR = "shifted_pair"
    PRINCIPAL_VALUE = "principal_value"


@dataclass(frozen=True)
class DeltaFamily:
    """Parametric descriptor of one delta-sequence family.

    n is the sequence index (epsilon = 1/n for the M shape), j the shift of
    the SHIFTED_PAIR family, a the origin height of the M shape.
    """

    shape: DeltaShape
    n: int = 1
    j: int = 0
    a: float = 0.0

    def __post_init__(self):
        if self.n < 1:
            raise DomainError("sequence index n must be a positive integer")
        if self.j < 0:
            raise DomainError("shift j must be nonnegative")
        if self.a < 0:
            raise DomainError("M-shape height a must be nonnegative")

    def with_index(self, n: int) -> "DeltaFamily":
        return DeltaFamily(self.shape, n, self.j, self.a)

    @property
    def origin_value(self) -> float:
        """delta_n(0), constant in n for M shapes and shifted pairs."""
        if self.shape is DeltaShape.LAMBDA_TRIANGLE:
            return float(self.n)
        if self.shape is DeltaShape.M_SHAPE:
            return self.a
        if self.shape is DeltaShape.SHIFTED_PAIR:
            return float(self.n) if self.j == 0 else 0.0
        raise DomainError("principal-value family has no origin value")

    @property
    def multiplication_class(self) -> tuple:
        """Key identifying the equivalence class under which products exist."""
        if self.shape is DeltaShape.LAMBDA_TRIANGLE:
            return ("divergent-at-zero",)
        if self.shape is DeltaShape.M_SHAPE:
            return ("regular-at-zero", self.a)
        if self.shape is DeltaShape.SHIFTED_PAIR:
            return ("divergent-at-zero",) if self.j == 0 \
                else ("regular-at-zero", 0.0)
        return ("principal-value",)

    @property
    def support(self) -> tuple[float, float]:
        if self.shape is DeltaShape.LAMBDA_TRIANGLE:
            return (-1.0 / self.n, 1.0 / self.n)
        if self.shape is DeltaShape.M_SHAPE:
            eps = 1.0 / self.n
            return (-eps / 2.0, eps / 2.0)
        if self.shape is DeltaShape.SHIFTED_PAIR:
            return (-(self.j + 1.0) / self.n, (self.j + 1.0) / self.n)
        return (-np.inf, np.inf)

    @property
    def breakpoints(self) -> list[float]:
        """Kink locations of the piecewise-linear profile."""
        if self.shape is DeltaShape.LAMBDA_TRIANGLE:
            h = 1.0 / self.n
            return [-h, 0.0, h]
        if self.shape is DeltaShape.M_SHAPE:
            eps = 1.0 / self.n
            return [c * eps for c in (-0.5, -0.25, 0.0, 0.25, 0.5)]
        if self.shape is DeltaShape.SHIFTED_PAIR:
            h = 1.0 / self.n
            c = self.j * h
            pts = [-c - h, -c, -c + h, c - h, c, c + h]
            return sorted(set(pts))
        return []


def _triangle(k, n):
    k = np.asarray(k, dtype=float)
    return np.where(np.abs(k) < 1.0 / n, n - n * n * np.abs(k), 0.0)


def _m_profile(k, a, eps):
    k = np.abs(np.asarray(k, dtype=float))
    inner = (4.0 * k / eps) * (2.0 / eps - 1.5 * a) + a
    outer = (2.0 - 4.0 * k / eps) * (2.0 / eps - 0.5 * a)
    out = np.where(k < 0.25 * eps, inner, np.where(k < 0.5 * eps, outer, 0.0))
    return out


def eval_family(family: DeltaFamily, k):
    """Pointwise value delta_n(k); complex for the principal-value family."""
    n = family.n
    if family.shape is DeltaShape.LAMBDA_TRIANGLE:
        out = _triangle(k, n)
    elif family.shape is DeltaShape.M_SHAPE:
        out = _m_profile(k, family.a, 1.0 / n)
    elif family.shape is DeltaShape.SHIFTED_PAIR:
        k = np.asarray(k, dtype=float)
        c = family.j / n
        out = 0.5 * (_triangle(k - c, n) + _triangle(-k - c, n))
    else:
        k = np.asarray(k, dtype=float)
        if np.any(k == 0):
            raise DomainError("principal-value profile is singular at k = 0")
        out = np.exp(1j * k * n) / (1j * np.pi * k)
    if np.ndim(out) == 0:
        return complex(out) if np.iscomplexobj(out) else float(out)
    return out


def fourier(family: DeltaFamily, x):
    """Closed-form transform (1/2pi) int delta_n(k) exp(i k x) dk.

    Real for every implemented shape; bounded by 1/(2 pi) for the triangle.
    The x -> 0 value is the analytic limit 1/(2 pi).
    """
    x = np.asarray(x, dtype=float)
    n = family.n
    if family.shape is DeltaShape.LAMBDA_TRIANGLE:
        out = _sinc_sq(x / (2.0 * n)) / TWO_PI
    elif family.shape is DeltaShape.M_SHAPE:
        eps = 1.0 / n
        a = family.a
        u = eps * x / 8.0
        out = (eps * a + (4.0 - eps * a) * np.cos(2.0 * u)) \
            * _sinc_sq(u) / (8.0 * np.pi)
    elif family.shape is DeltaShape.SHIFTED_PAIR:
        out = _sinc_sq(x / (2.0 * n)) * np.cos(family.j * x / n) / TWO_PI
    else:
        out = np.sign(x + n) / TWO_PI
    return float(out) if out.ndim == 0 else out


def _sinc_sq(u):
    u = np.asarray(u, dtype=float)
    small = np.abs(u) < 1e-6
    safe = np.where(small, 1.0, u)
    out = np.where(small, 1.0 - u * u / 3.0, np.sin(safe) ** 2 / safe ** 2)
    return out


def _cos_tail(a: float, U: float) -> float:
    """int_U^inf cos(a u) / u^2 du, exact via the sine integral."""
    if a == 0.0:
        return 1.0 / U
    return np.cos(a * U) / U - a * (np.pi / 2.0 - sine_integral(a * U))


def _cosine_pieces_integral(pieces: Sequence[tuple[float, float]],
                            spec: QuadratureSpec, U: float) -> float:
    """int_0^inf sum_i c_i cos(a_i u) / u^2 du for coefficient sets whose
    u -> 0 singularities cancel (sum c_i = 0, sum c_i a_i^2 finite).

    [0, pi] is integrated as the combined smooth function, [pi, U] piecewise
    with cosine-weighted quadrature, and [U, inf) with the exact tails.
    """
    from scipy.integrate import quad

    def combined(u):
        if u < 1e-8:
            return -0.5 * sum(c * a * a for c, a in pieces)
        return sum(c * np.cos(a * u) for c, a in pieces) / u ** 2

    total = quad_careful(combined, 0.0, np.pi, spec)
    for c, a in pieces:
        if c == 0.0:
            continue
        if a == 0.0:
            total += c * (1.0 / np.pi - 1.0 / U)
        else:
            v, _ = quad(lambda u: 1.0 / u ** 2, np.pi, U, weight="cos",
                        wvar=a, limit=spec.max_subdivisions,
                        epsabs=spec.abs_tol, epsrel=spec.rel_tol)
            total += c * v
        total += c * _cos_tail(a, U)
    return total


def fourier_integral(family: DeltaFamily, spec: QuadratureSpec = DEFAULT_SPEC,
                     window: float = 400.0) -> float:
    """int_R fourier(family, x) dx by oscillatory quadrature.

    Recovers the origin value of the profile: n for the triangle, 0 for
    shifted pairs with j >= 1, a for the M shape.  The finite window is
    closed with the exact cosine tails
    int_U^inf cos(a u)/u^2 du = cos(aU)/U - a (pi/2 - Si(aU)).
    """
    if family.shape is DeltaShape.PRINCIPAL_VALUE:
        raise DomainError("fourier_integral is defined for compactly "
                          "supported families only")
    U = window
    if family.shape is DeltaShape.M_SHAPE:
        # in u = eps x / 8 the transform reads
        # (eps a + (4 - eps a) cos 2u) sin^2 u / (8 pi u^2); expanding sin^2
        # and the cosine product gives pure cosine pieces
        eps = 1.0 / family.n
        c0, c1 = eps * family.a, 4.0 - eps * family.a
        pieces = [((c0 - 0.5 * c1) / 2.0, 0.0),
                  ((c1 - c0) * 0.5, 2.0),
                  (-0.25 * c1, 4.0)]
        per_side = _cosine_pieces_integral(pieces, spec, U) / (8.0 * np.pi)
        return 2.0 * per_side * 8.0 / eps
    n = family.n
    j = family.j if family.shape is DeltaShape.SHIFTED_PAIR else 0
    # u = x/(2n): I = (2n/pi) int_0^inf (sin u/u)^2 cos(2ju) du,
    # sin^2 u cos(2ju) = cos(2ju)/2 - cos(2(j+1)u)/4 - cos(2(j-1)u)/4
    pieces = [(0.5, 2.0 * j), (-0.25, 2.0 * (j + 1)), (-0.25, 2.0 * abs(j - 1))]
    return (2.0 * n / np.pi) * _cosine_pieces_integral(pieces, spec, U)


def _filter_once(family: DeltaFamily, n: int, f: Callable,
                 spec: QuadratureSpec) -> float:
    fam = family.with_index(n)
    if fam.shape is DeltaShape.PRINCIPAL_VALUE:
        return _pv_filter(n, f, spec)
    lo, hi = fam.support

    def g(k):
        return eval_family(fam, k) * f(k)

    return quad_careful(g, lo, hi, spec, points=fam.breakpoints + [0.0])


def _pv_filter(n: int, f: Callable, spec: QuadratureSpec,
               window: float = 60.0) -> float:
    """Principal-value filtering for continuous f of moderate growth.

    Real part of the symmetrized integrand,
    (f(k) + f(-k)) sin(nk) / (2 pi k), integrated over 0 < k < W with the
    exact Dirichlet part f(0) (2/pi) Si(nW) split off; the remainder is
    continuous at 0 and handled by sine-weighted quadrature.  W is
    phase-locked to n W = (m + 1/2) pi, which cancels the leading boundary
    term of the neglected tail; for f without decay the residual error is
    O(1/n^2), so a matching (looser) spec tolerance is required.
    """
    from scipy.integrate import quad

    m = int(np.floor(window * n / np.pi))
    W = (m + 0.5) * np.pi / n
    f0 = 0.5 * (f(1e-12) + f(-1e-12))
    exact = 2.0 * f0 / np.pi * sine_integral(n * W)

    def rest(k):
        if abs(k) < 1e-10:
            return 0.0
        return (f(k) + f(-k) - 2.0 * f0) / (np.pi * k)

    v, _ = quad(rest, 0.0, W, weight="sin", wvar=float(n),
                limit=spec.max_subdivisions, epsabs=spec.abs_tol,
                epsrel=spec.rel_tol)
    return exact + v


def filtering_integral(family: DeltaFamily, f: Callable[[float], float],
                       spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """lim_n int delta_n(k) f(k) dk by index sweep with extrapolation.

    Converges to (f(0-) + f(0+))/2 for piecewise-continuous bounded f.
    """
    return sweep_limit(lambda n: _filter_once(family, n, f, spec),
                       spec).expect_finite()


def product_filtering_integral(families: Sequence[DeltaFamily],
                               f: Callable[[float], float],
                               spec: QuadratureSpec = DEFAULT_SPEC,
                               reverse_order: bool = False) -> LimitResult:
    """Nested-limit integral of a product of delta sequences against f.

    Each factor carries its own index; the innermost factor is swept to
    convergence before the next one advances.  Numerically the iterated
    limit is realized on the staircase n, n^3, n^9, ... (innermost largest):
    the profiles rise with slope O(n^2) at the origin, so an inner index
    growing faster than the square of the outer one reproduces the iterated
    limit, and the outer sweep extrapolates in n.  All factors must belong
    to one multiplication class.
    """
    if not families:
        raise DomainError("need at least one family")
    classes = {fam.multiplication_class for fam in families}
    if len(classes) > 1:
        raise IncompatibleClasses(
            f"delta product across distinct classes: {sorted(classes)}")
    if families[0].shape is DeltaShape.PRINCIPAL_VALUE:
        raise IncompatibleClasses(
            "principal-value sequences do not admit products")
    if len(families) == 1:
        return finite(filtering_integral(families[0], f, spec))

    order = list(range(len(families)))
    if reverse_order:
        order.reverse()

    def evaluate(n: int) -> float:
        fams = [None] * len(families)
        for rank, pos in enumerate(order):
            fams[pos] = families[pos].with_index(n ** 3 ** rank)
        pts = sorted({p for fam in fams for p in fam.breakpoints}) + [0.0]
        lo = max(fam.support[0] for fam in fams)
        hi = min(fam.support[1] for fam in fams)
        if hi <= lo:
            return 0.0

        def g(k):
            out = f(k)
            for fam in fams:
                out = out * eval_family(fam, k)
            return out

        return quad_careful(g, lo, hi, spec, points=pts)

    return sweep_limit(evaluate, spec, start=4, max_doublings=8)


def power_filtering_integral(family: DeltaFamily, power: int,
                             f: Callable[[float], float],
                             spec: QuadratureSpec = DEFAULT_SPEC) -> LimitResult:
    """int delta(k)^power f(k) dk as a nested limit, one index per factor.

    Evaluates to delta(0)^(power-1) * (f(0-) + f(0+))/2: zero for families
    vanishing at the origin, divergent (tagged) for the triangle family with
    power >= 2.  Both limit orderings are computed and must agree.
    """
    if power < 1:
        raise DomainError("power must be a positive integer")
    fams = [family] * power
    fwd = product_filtering_integral(fams, f, spec)
    if power == 1:
        return fwd
    rev = product_filtering_integral(fams, f, spec, reverse_order=True)
    if fwd.is_divergent != rev.is_divergent:
        return divergent(fwd.history + rev.history)
    if fwd.is_divergent:
        return fwd
    tol = 1e-8 + spec.rel_tol * abs(fwd.value)
    if abs(fwd.value - rev.value) > max(tol, 1e-8):
        raise IncompatibleClasses(
            f"limit orderings disagree: {fwd.value} vs {rev.value}")
    return fwd


def convolve_eval(fam1: DeltaFamily, n: int, fam2: DeltaFamily, m: int,
                  k: float, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """(delta_n * delta_m)(k) = int delta_n(k - k') delta_m(k') dk'.

    Defined for the square-integrable compact families (M shape and shifted
    pair); symmetric under (fam1, n) <-> (fam2, m).
    """
    for fam in (fam1, fam2):
        if fam.shape not in (DeltaShape.M_SHAPE, DeltaShape.SHIFTED_PAIR):
            raise DomainError("convolution is implemented for M-shape and "
                              "shifted-pair families")
    f1, f2 = fam1.with_index(n), fam2.with_index(m)
    lo2, hi2 = f2.support
    lo1, hi1 = f1.support
    lo = max(lo2, k - hi1)
    hi = min(hi2, k - lo1)
    if hi <= lo:
        return 0.0
    pts = list(f2.breakpoints) + [k - p for p in f1.breakpoints]

    def g(kp):
        return eval_family(f1, k - kp) * eval_family(f2, kp)

    return quad_careful(g, lo, hi, spec, points=pts)


def convolution_origin_diagonal(family: DeltaFamily,
                                spec: QuadratureSpec = DEFAULT_SPEC) -> LimitResult:
    """lim_n (delta_n * delta_n)(0), tagged: divergent for every admissible
    family (the equal-index diagonal of the convolution square)."""
    return sweep_limit(
        lambda n: convolve_eval(family, n, family, n, 0.0, spec),
        spec, start=4, max_doublings=10)


@dataclass(frozen=True)
class MeasureDensity:
    """Density rho(p) = d mu(p)/dp of an integration measure."""

    rho: Callable[[float], float]
    is_constant: bool = False
    probe_interval: tuple[float, float] = (1e-3, 10.0)

    def __post_init__(self):
        lo, hi = self.probe_interval
        probes = np.geomspace(lo, hi, 17)
        vals = np.array([self.rho(p) for p in probes], dtype=float)
        if np.any(vals <= 0):
            raise DomainError("measure density must be positive on its domain")
        if self.is_constant and np.ptp(vals) > 1e-12 * np.max(np.abs(vals)):
            raise DomainError("is_constant flag contradicts sampled density")


def measure_consistency_check(rho: MeasureDensity, a: float) -> bool:
    """Whether an M-shape origin value a is compatible with measure rho:
    either a = 0, or the density is constant."""
    return a == 0.0 or rho.is_constant


def composed_delta_weights(f: Callable[[float], float],
                           f_prime: Callable[[float], float],
                           roots: Sequence[float],
                           tol: float = 1e-9) -> list[tuple[float, float]]:
    """Weights of delta[f(k)]: pairs (k_l, 1/|f'(k_l)|) over the given roots,
    so that int delta[f(k)] F(k) dk = sum_l w_l (F(k_l+) + F(k_l-))/2.

    Raises SingularRoot when |f'(k_l)| falls below tolerance (e.g. the
    massless zero-momentum channel, which must be rejected).
    """
    out = []
    for k in roots:
        val = f(k)
        slope = f_prime(k)
        if abs(slope) < tol:
            raise SingularRoot(f"|f'({k})| = {abs(slope)} below tolerance")
        if abs(val) > tol * max(1.0, abs(slope)):
            raise DomainError(f"{k} is not a root of f (f = {val})")
        out.append((float(k), 1.0 / abs(slope)))
    return out
