"""Special-function kernel: Si, Ci, modified Bessel K, all-branch Lambert W,
the generalized incomplete gamma Gamma(alpha, x, b), and Bernoulli numbers.

Real-argument Si/Ci and K_nu are delegated to scipy behind the module
contract.  The pieces scipy does not provide are implemented here:

* K0 on complex arguments (series for small |z|, the representation
  K0(z) = int_0^inf exp(-z cosh t) dt for the rest of the right half-plane);
* Lambert W on any integer branch (asymptotic initializer, Halley polish);
* Gamma(alpha, x, b) = int_x^inf t^(alpha-1) exp(-t - b/t) dt.

Everything is deterministic: no table interpolation, results are bit-stable
across runs.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy.integrate import quad
from scipy.special import exp1, gamma as gamma_fn, kv, sici

from .errors import DomainError, NoConvergence, NonConvergence

EULER_GAMMA = 0.5772156649015328606


# ----------------------------------------------------------------- Si / Ci

def sine_integral(x):
    """Si(x) = int_0^x sin(t)/t dt.  Odd; tends to pi/2 as x -> inf."""
    return sici(x)[0]


def cosine_integral(x):
    """Ci(x) for x > 0; diverges like log at the origin."""
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise DomainError("cosine_integral requires x > 0")
    out = sici(x)[1]
    return float(out) if out.ndim == 0 else out


# ----------------------------------------------------------- modified Bessel

def bessel_k(order: int, x):
    """Modified Bessel function of the second kind, even order in {0, 2, 4}."""
    if order not in (0, 2, 4):
        raise DomainError("bessel_k supports orders 0, 2, 4")
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise DomainError("bessel_k requires x > 0")
    out = kv(order, x)
    return float(out) if out.ndim == 0 else out


def _k0_series(z: complex) -> complex:
    """Ascending series, accurate for |z| <= 2."""
    q = z * z / 4.0
    term = 1.0 + 0j
    i0 = term
    s = 0.0 + 0j
    h = 0.0
    for m in range(1, 40):
        term *= q / (m * m)
        h += 1.0 / m
        i0 += term
        s += term * h
        if abs(term) < 1e-18 * max(1.0, abs(i0)):
            break
    return -(np.log(z / 2.0) + EULER_GAMMA) * i0 + s


def bessel_k0_complex(z: complex) -> complex:
    """K0(z) in the right half-plane (Re z > 0), principal branch.

    Satisfies the reflection symmetry K0(conj z) = conj K0(z).
    """
    z = complex(z)
    if z.real <= 0:
        raise DomainError("bessel_k0_complex requires Re z > 0 "
                          "(branch cut on the negative real axis)")
    if abs(z) <= 2.0:
        return _k0_series(z)
    # exp(-z cosh t) decays doubly exponentially; cut the range where the
    # magnitude drops below exp(-750)
    tmax = math.acosh(max(2.0, 750.0 / z.real)) + 1.0
    re = quad(lambda t: math.exp(-z.real * math.cosh(t))
              * math.cos(z.imag * math.cosh(t)), 0.0, tmax, limit=400)[0]
    im = quad(lambda t: -math.exp(-z.real * math.cosh(t))
              * math.sin(z.imag * math.cosh(t)), 0.0, tmax, limit=400)[0]
    return complex(re, im)


# --------------------------------------------------------------- Lambert W

_BRANCH_POINT = -1.0 / math.e


def _lambert_seeds(branch: int, z: complex):
    """Candidate starting points for Halley iteration on branch `branch`."""
    seeds = []
    if branch == 0 and abs(z) < 0.25:
        # series W0(z) = z - z^2 + 3/2 z^3 - ...
        seeds.append(z * (1.0 - z + 1.5 * z * z))
    if branch in (-1, 0, 1) and abs(z - _BRANCH_POINT) < 0.4:
        p = np.sqrt(2.0 * (math.e * z + 1.0) + 0j)
        for sign in (1.0, -1.0):
            q = sign * p
            seeds.append(-1.0 + q - q * q / 3.0 + 11.0 / 72.0 * q ** 3)
    lz = np.log(z) + 2j * math.pi * branch
    if abs(lz) > 1e-300:
        seeds.append(lz - np.log(lz))
    seeds.append(lz)
    return seeds


def _halley(w: complex, z: complex, target: float, max_iter: int):
    for _ in range(max_iter):
        ew = np.exp(w)
        f = w * ew - z
        if abs(f) <= target:
            return w
        wp1 = w + 1.0
        if wp1 == 0:
            w += 1e-8
            continue
        denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1)
        if denom == 0:
            return None
        w -= f / denom
    ew = np.exp(w)
    return w if abs(w * ew - z) <= target else None


def _branch_index(w: complex, z: complex) -> int:
    # W_k(z) + ln W_k(z) = ln z + 2 pi i k  (ln principal)
    if w == 0:
        return 0
    val = (w + np.log(w) - np.log(z)) / (2j * math.pi)
    return int(round(val.real))


def lambert_w(branch: int, z: complex, tol: float = 1e-13,
              max_iter: int = 120) -> complex:
    """Solve w * exp(w) = z on the given integer branch (Halley iteration).

    Seeds from the asymptotic expansion log z + 2 pi i n - log log z (plus
    branch-point and small-z series where relevant); the converged root is
    accepted only if it verifies w + ln w = ln z + 2 pi i * branch.
    Residual |w e^w - z| is driven below tol * (1 + |z|); raises
    NoConvergence otherwise.
    """
    z = complex(z)
    if z == 0:
        if branch == 0:
            return 0.0 + 0.0j
        raise DomainError("only the principal branch is defined at z = 0")
    target = tol * (1.0 + abs(z))
    fallback = None
    for seed in _lambert_seeds(branch, z):
        w = _halley(complex(seed), z, target, max_iter)
        if w is None:
            continue
        if _branch_index(w, z) == branch:
            return w
        fallback = w if fallback is None else fallback
    # walk in from a nearby off-axis point when z sits on a branch boundary
    if z.imag == 0:
        for eps in (1e-12, -1e-12):
            try:
                w = lambert_w(branch, complex(z.real, eps), tol, max_iter)
            except NoConvergence:
                continue
            w = _halley(w, z, target, max_iter)
            if w is not None:
                return w
    raise NoConvergence(
        f"Lambert W Halley iteration failed on branch {branch} at z={z}")


# ---------------------------------------------- generalized incomplete gamma

def upper_gamma(alpha: float, x: float) -> float:
    """Classical upper incomplete gamma for real alpha (including <= 0), x > 0."""
    if x <= 0:
        raise DomainError("upper_gamma requires x > 0")
    if alpha == 0.0:
        return float(exp1(x))
    if alpha > 0 and alpha == int(alpha):
        # downward stable recurrence from Gamma(1, x) = e^{-x}
        n = int(alpha)
        g = math.exp(-x)
        for m in range(1, n):
            g = m * g + x ** m * math.exp(-x)
        return g
    if alpha < 0:
        # upward from Gamma(alpha+1, x): Gamma(a, x) = (Gamma(a+1,x) - x^a e^-x)/a
        g = upper_gamma(alpha + 1.0, x)
        return (g - x ** alpha * math.exp(-x)) / alpha
    from scipy.special import gammaincc
    return float(gammaincc(alpha, x) * gamma_fn(alpha))


def gen_incomplete_gamma(alpha: float, x: float, b: float) -> float:
    """Gamma(alpha, x, b) = int_x^inf t^(alpha-1) exp(-t - b/t) dt.

    b = 0 reduces to the classical upper incomplete gamma.  The integrand is
    double-exponentially peaked near sqrt(b); the quadrature splits at
    max(x, sqrt(b)) and substitutes t -> b/t on the lower tail so both pieces
    decay monotonically.
    """
    if x <= 0:
        raise DomainError("gen_incomplete_gamma requires x > 0")
    if b < 0:
        raise DomainError("gen_incomplete_gamma requires b >= 0")
    if b == 0.0:
        return upper_gamma(alpha, x)
    split = max(x, math.sqrt(b))

    def head(t):
        return t ** (alpha - 1.0) * math.exp(-t - b / t)

    val, _ = quad(head, split, np.inf, limit=300, epsabs=1e-14, epsrel=1e-12)
    if x < split:
        # t = b/u maps (x, split) to (b/split, b/x) with dt = -b/u^2 du
        def mirrored(u):
            return (b / u) ** (alpha - 1.0) * math.exp(-u - b / u) * b / u ** 2

        lo, hi = b / split, b / x
        v2, _ = quad(mirrored, lo, hi, limit=300, epsabs=1e-14, epsrel=1e-12)
        val += v2
    if not np.isfinite(val):
        raise NonConvergence("gen_incomplete_gamma quadrature failed")
    return val


def gamma_from_zero(alpha: float, b: float) -> float:
    """Gamma(alpha, 0, b) = 2 b^(alpha/2) K_alpha(2 sqrt(b)); finite for b > 0,
    with the b -> 0 limit handled by its Taylor series for integer alpha."""
    if b < 0:
        raise DomainError("gamma_from_zero requires b >= 0")
    if b == 0.0:
        if alpha <= 0:
            raise DomainError("Gamma(alpha, 0, 0) diverges for alpha <= 0")
        return float(gamma_fn(alpha))
    if alpha == int(alpha) and alpha > 0 and b < 1e-6:
        # sum_n (-1)^n/n! Gamma(alpha - n) b^n, truncated before the pole
        n_terms = int(alpha)
        tot = 0.0
        for n in range(n_terms):
            tot += (-1) ** n / math.factorial(n) * math.gamma(alpha - n) * b ** n
        return tot
    return float(2.0 * b ** (alpha / 2.0) * kv(alpha, 2.0 * math.sqrt(b)))


# ---------------------------------------------------------------- Bernoulli

@lru_cache(maxsize=None)
def _bernoulli_fraction(n: int) -> Fraction:
    if n == 0:
        return Fraction(1)
    if n == 1:
        return Fraction(-1, 2)
    if n % 2 == 1:
        return Fraction(0)
    # sum_{k=0}^{n} C(n+1, k) B_k = 0
    acc = Fraction(0)
    for k in range(n):
        acc += math.comb(n + 1, k) * _bernoulli_fraction(k)
    return -acc / (n + 1)


def bernoulli_number(index: int) -> float:
    """Exact Bernoulli number B_index for even index <= 20."""
    if index <= 0 or index % 2 != 0 or index > 20:
        raise DomainError("bernoulli_number requires an even index in 2..20")
    return float(_bernoulli_fraction(index))
