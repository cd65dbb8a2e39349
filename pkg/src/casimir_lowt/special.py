"""Polylogarithms, Riemann zeta, Bernoulli numbers, and summation of the
divergent endpoint series produced by the Euler-Maclaurin machinery.

The sum-minus-integral analysis generates two formally divergent
Bernoulli-weighted series, one from the m^2 ln m endpoint behaviour and one
from the m^(3/2) behaviour.  Their assigned values

    psi_constant() = zeta(3) / (4 pi^2)   ~  0.0304484570584
    phi_constant() = zeta(-3/2)           ~ -0.0254852018898

are cross-checked here by two independent routes: a Levin u-transform of
the raw divergent terms and (for the log-power case) a Borel integral.
All routines work at the current mpmath precision; see precision.py.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

import mpmath
from mpmath import mp, mpf, pi


class SummationError(ValueError):
    """Raised for invalid input to a series summation routine."""


def bernoulli_b2n(n: int) -> Fraction:
    """Exact Bernoulli number B_{2n} (B_2 = 1/6, B_4 = -1/30, ...)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    p, q = mpmath.bernfrac(2 * n)
    return Fraction(int(p), int(q))


def half_power_derivative(n: int) -> Fraction:
    """(2n-1)-th derivative of m^(3/2) at m = 1, for n >= 2.

    Closed form: -3 (4n-7)! / (2^(4n-5) (2n-4)!).
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    return Fraction(-3 * factorial(4 * n - 7), 2 ** (4 * n - 5) * factorial(2 * n - 4))


def log_power_derivative(n: int) -> int:
    """(2n-1)-th derivative of m^2 ln m at m = 1, for n >= 2: 2 (2n-4)!."""
    if n < 2:
        raise ValueError("n must be >= 2")
    return 2 * factorial(2 * n - 4)


def log_power_series_terms(count: int = 15) -> list:
    """Terms of the divergent series whose accelerated sum is psi_constant().

    First term collects the exactly-known contributions 1/9 - B_2/2; the
    rest are -B_{2n} * 2(2n-4)! / (2n)! for n = 2, 3, ...
    """
    if count < 2:
        raise ValueError("need at least 2 terms")
    terms = [mpf(1) / 9 - _b2n_mpf(1) / 2]
    for n in range(2, count + 1):
        terms.append(-_b2n_mpf(n) * log_power_derivative(n) / factorial(2 * n))
    return terms


def half_power_series_terms(count: int = 15) -> list:
    """Terms of the divergent series whose accelerated sum is phi_constant()."""
    if count < 2:
        raise ValueError("need at least 2 terms")
    terms = [mpf(1) / 2 - mpf(2) / 5 - 3 * _b2n_mpf(1) / 4]
    for n in range(2, count + 1):
        phi = half_power_derivative(n)
        terms.append(-_b2n_mpf(n) * mpf(phi.numerator) / phi.denominator / factorial(2 * n))
    return terms


def _b2n_mpf(n: int):
    b = bernoulli_b2n(n)
    return mpf(b.numerator) / b.denominator


def polylog(n: int, x):
    """Real polylogarithm Li_n(x) for integer n and |x| <= 1.

    Li_1 and below have elementary closed forms; for n <= 1 the point
    x = 1 is a pole and is rejected.
    """
    x = mpf(x)
    if abs(x) > 1:
        raise ValueError("polylog argument must satisfy |x| <= 1")
    if n <= 1 and x == 1:
        raise ValueError(f"Li_{n}(1) diverges")
    if x == 0:
        return mpf(0)
    return mpmath.polylog(n, x)


def riemann_zeta(s):
    """Riemann zeta for real s != 1, including the analytic continuation."""
    s = mpf(s)
    if s == 1:
        raise ValueError("zeta has a pole at s = 1")
    return mpmath.zeta(s)


@dataclass
class LevinResult:
    value: object
    error: object
    converged: bool


def levin_u_sum(terms, beta=1, tol=mpf("1e-11"), max_order: int = 30) -> LevinResult:
    """Levin u-transform limit of a (possibly divergent, alternating) series.

    Stops once two successive transform orders agree to `tol`; the reported
    error is the last inter-order difference.  Divergent input is fine as
    long as the transform stabilizes; otherwise the best estimate is
    returned with converged=False.
    """
    terms = [mpf(x) for x in terms]
    if len(terms) < 5:
        raise SummationError("need at least 5 terms")
    if any(not mpmath.isfinite(x) for x in terms):
        raise SummationError("non-finite term in series")

    partial = []
    acc = mpf(0)
    for x in terms:
        acc += x
        partial.append(acc)

    best = partial[-1]
    err = mpf("inf")
    prev = None
    kmax = min(len(terms) - 1, max_order)
    for k in range(1, kmax + 1):
        num = mpf(0)
        den = mpf(0)
        for j in range(k + 1):
            w = (-1) ** j * mpmath.binomial(k, j) * ((beta + j) / (beta + k)) ** (k - 1)
            omega = (beta + j) * terms[j]
            if omega == 0:
                omega = mpf(10) ** (-mp.dps - 20)
            num += w * partial[j] / omega
            den += w / omega
        if den == 0:
            continue
        est = num / den
        if prev is not None:
            diff = abs(est - prev)
            if diff < err:
                err = diff
                best = est
            if diff < tol:
                return LevinResult(est, diff, True)
        prev = est
    return LevinResult(best, err, False)


def borel_sum_psi_tilde():
    """Borel integral for the log-power Bernoulli tail sum.

    The generating function of B_{n+4}/(n+4)! is t^-4 [t/(e^t - 1) - 1 +
    t/2 - t^2/12]; the bracket is O(t^4) so the apparent divergence at the
    lower limit is illusory.  Below t = 0.1 the bracket is evaluated by its
    Taylor series to dodge catastrophic cancellation.
    """
    switch = mpf("0.1")

    def integrand(t):
        t = mpf(t)
        if t < switch:
            s = mpf(0)
            for n in range(4, 4 + 2 * _borel_series_terms(), 2):
                s += _b2n_mpf(n // 2) * t ** (n - 4) / factorial(n)
            return mpmath.exp(-t) * s
        return mpmath.exp(-t) / t ** 4 * (t / (mpmath.exp(t) - 1) - 1 + t / 2 - t * t / 12)

    return mpmath.quad(integrand, [0, switch, 1, 5, 20, 60])


def _borel_series_terms() -> int:
    # 8 even-order Taylor terms resolve the bracket to ~1e-26 at t = 0.1;
    # scale up with working precision.
    return max(8, mp.dps // 3)


def psi_from_borel():
    """Value of the log-power series via the Borel route: 1/36 - 2 * Borel tail."""
    return mpf(1) / 36 - 2 * borel_sum_psi_tilde()


def psi_constant():
    """Closed form zeta(3) / (4 pi^2) of the log-power series."""
    return mpmath.zeta(3) / (4 * pi ** 2)


def phi_constant():
    """Closed form zeta(-3/2) of the half-power series."""
    return mpmath.zeta(mpf(-3) / 2)
