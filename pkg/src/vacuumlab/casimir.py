"""Casimir pressure of a scalar field between two delta barriers.

1+1 routes (barrier strength alpha, separation L, reflection coefficient
r(k) = 1/(1 - 2ik/alpha)^2):

* series: p = (1/2pi) sum_n int_0^inf k r^n e^{2nikL} dk + c.c.; each term
  is rotated onto the imaginary axis where it is a smooth positive-decay
  integral, and the 1/n^2 tail is closed with Euler-Maclaurin corrections;
* quadrature: p = (1/2pi) int_0^inf k [(1-|r|^2)/|1 - r e^{2ikL}|^2 - 1] dk,
  integrated over half-period panels that resolve the quasi-resonant peaks,
  with the smooth remainder beyond the last panel evaluated on a vertical
  contour (the integrand's analytic continuation decays there and all its
  poles lie below the real axis);
* Dirichlet comb: the cutoff-regularized mode-sum-minus-integral closed form
  (-L^2 kappa^2 + J pi (pi - 2 L kappa)) / (4 L^2 pi), J-independent only at
  kappa = pi/(2L) where it equals -pi/(16 L^2);
* Euler-Maclaurin: -pi/(24 L^2) exactly, via B_2.

3+1 route for the exponentially cut vacuum (peak Z, scales y0, lambda^2):

    p = sum_j (Z j^2 pi / (2 L^3 y0)) Gamma(1, y0 j pi / L, lambda^2)
        - (Z/(6 pi^2 y0^4)) Gamma(4, 0, lambda^2),

reported as a breakdown around the leading term -Z pi^2/(240 L^4).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import wraps

import numpy as np
from scipy.integrate import IntegrationWarning, quad as _scipy_quad
from scipy.special import exp1

from .constants import PRESSURE_UNIT_PA
from .errors import DomainError, NonConvergence
from .numerics import DEFAULT_SPEC, QuadratureSpec
from .specfun import bernoulli_number, gamma_from_zero, upper_gamma
from .vacuum import ProfileKind, VacuumProfile

TWO_PI = 2.0 * math.pi


@wraps(_scipy_quad)
def quad(*args, **kwargs):
    # tolerances below quadpack's roundoff floor are requested deliberately;
    # accuracy is cross-validated by the mutual oracles, so the roundoff
    # advisory is noise here
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IntegrationWarning)
        return _scipy_quad(*args, **kwargs)


def reflection_coeff(k: float, alpha: float) -> complex:
    """Single-barrier reflection amplitude r(k) = 1/(1 - 2ik/alpha)^2;
    |r| = 1/(1 + 4k^2/alpha^2) < 1 for k > 0."""
    if k <= 0 or alpha <= 0:
        raise DomainError("reflection_coeff requires k > 0 and alpha > 0")
    return 1.0 / (1.0 - 2j * k / alpha) ** 2


# ------------------------------------------------------------- 1+1 series

def _series_term(n: float, alpha: float, L: float, log_power: int = 0) -> float:
    """-(1/pi) int_0^inf t (1+2t/alpha)^(-2n) e^(-2ntL) h(t)^m dt with
    h(t) = -2tL - 2 log(1+2t/alpha); m-th n-derivative of the rotated term."""

    def f(t):
        h = -2.0 * t * L - 2.0 * np.log1p(2.0 * t / alpha)
        w = t * math.exp(n * h)
        return w * h ** log_power if log_power else w

    val, _ = quad(f, 0.0, np.inf, limit=300, epsabs=1e-15, epsrel=1e-14)
    return -val / math.pi


def _series_tail_integral(N: int, alpha: float, L: float) -> float:
    """int_N^inf term(n) dn, integrating the n-exponential in closed form."""

    def f(t):
        h = -2.0 * t * L - 2.0 * np.log1p(2.0 * t / alpha)
        return t * math.exp(N * h) / (-h)

    val, _ = quad(f, 0.0, np.inf, limit=300, epsabs=1e-15, epsrel=1e-14)
    return -val / math.pi


def pressure_1p1_series(alpha: float, L: float,
                        spec: QuadratureSpec = DEFAULT_SPEC,
                        explicit_terms: int = 64) -> float:
    """Reflection-series pressure.  Terms are summed explicitly while they
    matter and the slowly decaying ~1/n^2 remainder is closed with
    Euler-Maclaurin corrections through the fifth derivative."""
    if alpha <= 0 or L <= 0:
        raise DomainError("pressure_1p1_series requires alpha, L > 0")
    N = max(8, explicit_terms)
    total = 0.0
    for n in range(1, N):
        t = _series_term(n, alpha, L)
        total += t
        if abs(t) < spec.abs_tol and n > 4:
            return total
    total += _series_tail_integral(N, alpha, L) \
        + 0.5 * _series_term(N, alpha, L) \
        - _series_term(N, alpha, L, 1) / 12.0 \
        + _series_term(N, alpha, L, 3) / 720.0 \
        - _series_term(N, alpha, L, 5) / 30240.0
    if not np.isfinite(total):
        raise NonConvergence("series pressure did not converge")
    return total


# --------------------------------------------------------- 1+1 quadrature

def _resonant_factor(k: float, alpha: float, L: float) -> complex:
    """w/(1-w) with w = r e^{2ikL}, in the cancellation-free form
    e^{2ikL}/N(k), N = -2i sin(kL) e^{ikL} - 4ik/alpha - 4k^2/alpha^2."""
    N = -2j * math.sin(k * L) * np.exp(1j * k * L) \
        - 4j * k / alpha - 4.0 * k * k / (alpha * alpha)
    return np.exp(2j * k * L) / N


def pressure_1p1_quad(alpha: float, L: float,
                      spec: QuadratureSpec = DEFAULT_SPEC,
                      panels: int | None = None) -> float:
    """Direct quadrature of the mode-density form of the pressure.

    The integrand k/(2pi) [(1-|r|^2)/|1-r e^{2ikL}|^2 - 1], equal to
    (k/pi) Re[w/(1-w)], is integrated over half-period panels with explicit
    subdivision points graded into each quasi-resonant peak (width
    (1-|r|)/(2L sqrt(|r|))).  Past the panelled range the remainder is taken
    along the vertical contour k = K + it, where the continued integrand
    decays like e^{-2tL} and is pole-free (all resonances lie in the lower
    half-plane).
    """
    if alpha <= 0 or L <= 0:
        raise DomainError("pressure_1p1_quad requires alpha, L > 0")
    M = panels if panels is not None else max(24, math.ceil(0.3 * alpha * L / math.pi))

    def integrand(k):
        if k == 0.0:
            return 0.0
        return k / math.pi * _resonant_factor(k, alpha, L).real

    total = 0.0
    edges = [0.0] + [(2 * m - 1) * math.pi / (2.0 * L) for m in range(1, M + 2)]
    for i in range(len(edges) - 1):
        lo, hi = edges[i], edges[i + 1]
        pts = None
        if i > 0:
            k0 = 0.5 * (lo + hi)
            rho = 1.0 / (1.0 + 4.0 * k0 * k0 / (alpha * alpha))
            width = max((1.0 - rho) / (2.0 * L * math.sqrt(rho)), 1e-12)
            pts = [k0 + c * width for c in (-30, -3, -1, 0, 1, 3, 30)
                   if lo < k0 + c * width < hi]
        val, _ = quad(integrand, lo, hi, points=pts,
                      limit=max(spec.max_subdivisions, 400),
                      epsabs=1e-14, epsrel=1e-13)
        total += val
    K = edges[-1]

    def vertical(t):
        z = K + 1j * t
        w = np.exp(2j * z * L) / (1.0 - 2j * z / alpha) ** 2
        return (1j * z * w / (1.0 - w)).real

    tail, _ = quad(vertical, 0.0, np.inf, limit=300, epsabs=1e-14)
    total += tail / math.pi
    if not np.isfinite(total):
        raise NonConvergence("quadrature pressure did not converge")
    return total


# ----------------------------------------------------- Dirichlet endpoints

def pressure_dirichlet_comb(L: float, kappa: float, J: int) -> float:
    """Cutoff-regularized comb-minus-continuum pressure at cutoff
    K = J pi/L + kappa:  (-L^2 kappa^2 + J pi (pi - 2 L kappa))/(4 L^2 pi).

    J-independent only at kappa = pi/(2L), where it equals -pi/(16 L^2);
    any other kappa leaves a linearly growing J-dependence (the
    regularization is genuinely ambiguous there).
    """
    if L <= 0 or J < 1:
        raise DomainError("pressure_dirichlet_comb requires L > 0 and J >= 1")
    if not 0 < kappa < math.pi / L:
        raise DomainError("kappa must lie in (0, pi/L)")
    return (-L * L * kappa * kappa + J * math.pi * (math.pi - 2.0 * L * kappa)) \
        / (4.0 * L * L * math.pi)


def pressure_euler_maclaurin(L: float) -> float:
    """Smooth-cutoff endpoint -(1/2pi)(pi^2/L^2)(B_2/2) = -pi/(24 L^2)."""
    if L <= 0:
        raise DomainError("pressure_euler_maclaurin requires L > 0")
    return -(1.0 / TWO_PI) * (math.pi / L) ** 2 * bernoulli_number(2) / 2.0


def euler_maclaurin_gap(f, N: int, derivative_orders: int = 1,
                        h: float = 1e-2) -> tuple[float, float]:
    """(gap, prediction) where gap = sum_0^N f(n) - (f(N)+f(0))/2 -
    int_0^N f, and prediction truncates
    sum_j B_2j/(2j)! (f^(2j-1)(N) - f^(2j-1)(0)) at derivative_orders terms.

    Odd derivatives are taken by central differences with step h.
    """
    if N < 1:
        raise DomainError("N must be a positive integer")
    if not 1 <= derivative_orders <= 3:
        raise DomainError("derivative_orders must be in 1..3")
    s = sum(f(n) for n in range(N + 1)) - 0.5 * (f(N) + f(0))
    integral, _ = quad(f, 0.0, float(N), limit=400, epsabs=1e-13,
                       epsrel=1e-12)
    gap = s - integral

    def deriv(x, order):
        if order == 1:
            return (f(x + h) - f(x - h)) / (2.0 * h)
        if order == 3:
            return (f(x + 2 * h) - 2 * f(x + h) + 2 * f(x - h)
                    - f(x - 2 * h)) / (2.0 * h ** 3)
        return (f(x + 3 * h) - 4 * f(x + 2 * h) + 5 * f(x + h)
                - 5 * f(x - h) + 4 * f(x - 2 * h) - f(x - 3 * h)) / (2.0 * h ** 5)

    pred = 0.0
    x0, x1 = 0.0, float(N)
    for j in range(1, derivative_orders + 1):
        order = 2 * j - 1
        pred += bernoulli_number(2 * j) / math.factorial(2 * j) \
            * (deriv(x1, order) - deriv(x0, order))
    return gap, pred


# --------------------------------------------------------------- 3+1 route

@dataclass(frozen=True)
class PressureBreakdown:
    """3+1 pressure split around its leading term.

    total = leading + y0_corrections + lambda2_correction holds exactly by
    construction (the y0 piece absorbs the full mode-sum remainder).
    """

    total: float
    leading: float
    y0_corrections: float
    lambda2_correction: float
    terms_used: int


def _geometric_mode_sum(x: float) -> float:
    """sum_j j^2 e^{-jx} = e^x (e^x + 1) / (e^x - 1)^3, stable for small x."""
    em = math.expm1(x)  # e^x - 1
    return math.exp(x) * (math.exp(x) + 1.0) / em ** 3


def _mode_sum_defect_series(x: float) -> float:
    """sum_j j^2 e^{-jx} - 2/x^3 + x/120: the part of the geometric mode sum
    beyond its continuum limit and leading defect, as the rapidly convergent
    series sum_{m>=3} B_2m (2m-1)(2m-2) x^(2m-3) / (2m)! (|x| < 2 pi).

    Isolating this combination analytically avoids the catastrophic
    cancellation of sum-minus-integral for small mode spacing x.
    """
    total = 0.0
    for m in range(3, 11):
        total += bernoulli_number(2 * m) * (2 * m - 1) * (2 * m - 2) \
            * x ** (2 * m - 3) / math.factorial(2 * m)
    return total


def stairs_gap(dx: float, cap: int = 2_000_000) -> float:
    """2/3 - sum_j dx (j dx)^2 Gamma(0, j dx): the half-cell defect of the
    midpoint staircase for int_0^inf x^2 Gamma(0, x) dx = 2/3.

    Summed directly when the term count is tractable; for very small dx the
    defect is dominated by the uncovered first half cell and is returned as
    the order-of-magnitude estimate int_0^{dx/2} x^2 Gamma(0, x) dx.
    """
    if dx <= 0:
        raise DomainError("stairs_gap requires dx > 0")
    n_terms = int(45.0 / dx) + 1
    if n_terms <= cap:
        j = np.arange(1, n_terms + 1, dtype=float)
        xs = j * dx
        total = float(np.sum(dx * xs ** 2 * exp1(xs)))
        return 2.0 / 3.0 - total
    # first half cell of x^2 Gamma(0,x) ~ x^2 (-log x - gamma_E)
    val, _ = quad(lambda x: x * x * exp1(x), 0.0, dx / 2.0, limit=100)
    return val


def pressure_3p1(profile: VacuumProfile, L: float,
                 spec: QuadratureSpec = DEFAULT_SPEC) -> PressureBreakdown:
    """Mode-sum-minus-continuum pressure for the exponentially cut vacuum.

    The discrete sum runs over j with weight
    (Z j^2 pi/(2 L^3 y0)) Gamma(1, y0 j pi/L, lambda^2), truncated once
    three consecutive terms fall below rel_tol times the partial sum; the
    continuum part is (Z/(6 pi^2 y0^4)) Gamma(4, 0, lambda^2).

    For coarse mode spacing (x = pi y0/L >= 0.04, b > 0) the difference is
    taken between the directly summed modes and the continuum.  For finer
    spacing the float difference of the two nearly identical large
    quantities would lose everything, so the cancellation is done
    analytically: the
    leading term and the Bernoulli-series remainder carry the b = 0 part,
    and the b-linear part enters through the staircase defect of
    int x^2 Gamma(0, x) dx (dropped beyond O(b), which in that regime is
    astronomically small).
    """
    if profile.kind is not ProfileKind.LORENTZ_EXP:
        raise DomainError("pressure_3p1 requires a LORENTZ_EXP profile")
    if L <= 0:
        raise DomainError("plate separation must be positive")
    y0, b, Z = profile.y0, profile.lambda2, profile.Z
    if y0 / L >= 0.1:
        raise DomainError("expansion regime requires y0/L < 0.1")
    x = math.pi * y0 / L
    prefactor = Z * math.pi / (2.0 * L ** 3 * y0)
    leading = -Z * math.pi ** 2 / (240.0 * L ** 4)
    lam2_scale = Z * b / (2.0 * math.pi ** 2 * y0 ** 4)
    gap = stairs_gap(x) if b > 0.0 else 0.0
    lam2_corr = lam2_scale * gap

    j_cap = int(45.0 / x) + 1
    if b > 0.0 and x >= 0.04:
        mode_sum, terms_used = _mode_sum_direct(prefactor, x, b, spec)
        continuum = Z / (6.0 * math.pi ** 2 * y0 ** 4) * gamma_from_zero(4.0, b)
        total = mode_sum - continuum
        y0_corr = total - leading - lam2_corr
    elif b > 1e-4:
        raise DomainError("lambda2 too large for the fine-spacing expansion "
                          "(O(lambda^4) terms would not be negligible)")
    else:
        # leading + prefactor * defect-series reproduces the b = 0 value
        # without forming the large cancelling pair
        y0_corr = prefactor * _mode_sum_defect_series(x)
        total = leading + y0_corr + lam2_corr
        terms_used = j_cap
    return PressureBreakdown(
        total=total,
        leading=leading,
        y0_corrections=y0_corr,
        lambda2_correction=lam2_corr,
        terms_used=terms_used,
    )


def _mode_sum_direct(prefactor: float, x: float, b: float,
                     spec: QuadratureSpec):
    """prefactor * sum_j j^2 Gamma(1, j x, b) through a shared tail table.

    The cap j x <= 45 leaves a remainder below e^-45; the sum must be
    exhausted (not truncated against the partial sum) because the physical
    answer is the difference against a continuum term of almost the same
    size.  Requires three trailing terms below rel_tol of the partial sum
    as the decay check.
    """
    j_cap = int(45.0 / x) + 1
    j = np.arange(1, j_cap + 1, dtype=float)
    tails = _upper_tail_table(j * x, b)
    terms = prefactor * j ** 2 * tails
    total = float(np.sum(terms))
    if np.any(np.abs(terms[-3:]) > spec.rel_tol * max(abs(total), 1e-300)):
        raise NonConvergence("3+1 mode sum failed to decay within the cap")
    return total, j_cap


def _upper_tail_table(xs: np.ndarray, b: float) -> np.ndarray:
    """Gamma(1, x, b) = int_x^inf e^{-t - b/t} dt for every x in the
    ascending, evenly spaced array xs, via per-interval 12-point
    Gauss-Legendre panels (machine accurate for spacing << 1) accumulated
    from the far tail inward."""
    hi = float(xs[-1])
    if b == 0.0:
        far = upper_gamma(1.0, hi)
    else:
        far, _ = quad(lambda t: math.exp(-t - b / t), hi, np.inf, limit=200,
                      epsabs=1e-16, epsrel=1e-13)
    nodes, weights = np.polynomial.legendre.leggauss(12)
    lefts = xs[:-1]
    widths = np.diff(xs)
    # panel integrals int_{x_j}^{x_{j+1}} e^{-t - b/t} dt, all panels at once
    t = lefts[:, None] + np.outer(widths, 0.5 * (nodes + 1.0))
    g = np.exp(-t - (b / t if b else 0.0))
    panels = 0.5 * widths * (g @ weights)
    tails = np.empty_like(xs)
    tails[-1] = far
    tails[:-1] = far + np.cumsum(panels[::-1])[::-1]
    return tails


def to_physical_pressure(p_dimensionless: float) -> float:
    """Convert a dimensionless pressure to pascal (factor c hbar / ell^4)."""
    return p_dimensionless * PRESSURE_UNIT_PA
