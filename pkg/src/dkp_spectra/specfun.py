"""Special-function kernel built on terminating series.

Everything here reduces to a finite sum, evaluated with compensated
(Kahan) summation: rising factorials, the terminating Gauss
hypergeometric sum 2F1(-n, b; c; x), Jacobi polynomials expressed
through that sum, and associated Laguerre polynomials through the
confluent analogue.  Real, possibly negative, possibly non-integer
parameters are accepted; the only hard failure is a lower parameter
that hits a non-positive integer before the series terminates, which
would divide by zero.

No gamma functions are used anywhere.  Products sidestep the poles of
the gamma function at negative arguments, which the parameter ranges
produced by the physics modules do reach.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import PoleInDenominator

__all__ = [
    "PolyParams",
    "pochhammer_rising",
    "hyp2f1_terminating",
    "jacobi",
    "jacobi_derivative",
    "jacobi_nth_derivative",
    "laguerre",
]


@dataclass(frozen=True)
class PolyParams:
    """Degree and parameter pair of one polynomial factor.

    ``alpha`` is the Jacobi or Laguerre upper parameter, ``beta`` the
    Jacobi lower parameter (ignored for Laguerre).  Values at or below
    -1 are allowed; validity is the caller's concern.
    """

    degree: int
    alpha: float
    beta: float = 0.0

    def __post_init__(self):
        if self.degree < 0:
            raise ValueError("degree must be non-negative")
        if not (math.isfinite(self.alpha) and math.isfinite(self.beta)):
            raise ValueError("alpha and beta must be finite")


def _kahan(terms) -> float:
    """Compensated sum of an iterable of floats."""
    total = 0.0
    comp = 0.0
    for t in terms:
        y = t - comp
        s = total + y
        comp = (s - total) - y
        total = s
    return total


# Double-double helpers: an unevaluated pair (hi, lo) carries about 32
# significant digits.  The terminating Gauss sum needs them because its
# terms can cancel through ten-plus digits near the argument 1 ends of
# the Jacobi interval, where rounding of the terms themselves, not of
# the accumulation, sets the error floor.

_SPLITTER = 134217729.0  # 2**27 + 1


def _two_sum(x: float, y: float) -> tuple[float, float]:
    s = x + y
    t = s - x
    return s, (x - (s - t)) + (y - t)


def _two_prod(x: float, y: float) -> tuple[float, float]:
    p = x * y
    cx = _SPLITTER * x
    xh = cx - (cx - x)
    xl = x - xh
    cy = _SPLITTER * y
    yh = cy - (cy - y)
    yl = y - yh
    return p, ((xh * yh - p) + xh * yl + xl * yh) + xl * yl


def _dd_add(ah: float, al: float, bh: float, bl: float) -> tuple[float, float]:
    s, e = _two_sum(ah, bh)
    e += al + bl
    hi, lo = _two_sum(s, e)
    return hi, lo


def _dd_mul_d(ah: float, al: float, b: float) -> tuple[float, float]:
    p, e = _two_prod(ah, b)
    e += al * b
    hi, lo = _two_sum(p, e)
    return hi, lo


def _dd_div_d(ah: float, al: float, b: float) -> tuple[float, float]:
    q0 = ah / b
    p, e = _two_prod(q0, b)
    # remainder of the first quotient digit, then one correction step
    rh, rl = _dd_add(ah, al, -p, -e)
    q1 = (rh + rl) / b
    hi, lo = _two_sum(q0, q1)
    return hi, lo


def pochhammer_rising(x: float, k: int) -> float:
    """Rising factorial x (x+1) ... (x+k-1); 1 for k = 0."""
    if k < 0:
        raise ValueError("k must be non-negative")
    out = 1.0
    for i in range(k):
        out *= x + i
    return out


def _is_nonpositive_integer_above(c: float, floor: float) -> bool:
    """True when c is an integer in (floor, 0]."""
    return c <= 0.0 and c > floor and c == math.floor(c)


def hyp2f1_terminating(n: int, b: float, c: float, x: float) -> float:
    """Terminating Gauss sum 2F1(-n, b; c; x).

    Evaluates sum_{k=0}^{n} (-n)_k (b)_k / ((c)_k k!) x^k, carrying the
    running term and the accumulator in double-double precision so that
    alternating cancellation between large terms cannot eat into the
    result.  Raises :class:`PoleInDenominator` when c is one of
    0, -1, ..., -(n-1), where a denominator factor vanishes before the
    series terminates.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if _is_nonpositive_integer_above(c, -float(n)):
        raise PoleInDenominator(f"c = {c} is a non-positive integer above -(n={n})")

    th, tl = 1.0, 0.0
    sh, sl = 1.0, 0.0
    for k in range(n):
        # Every factor is applied exactly: k - n, k + 1 and x are exact
        # doubles, while b + k and c + k are carried as two_sum pairs so
        # no rounded scalar pollutes the cancellation-prone terms.
        th, tl = _dd_mul_d(th, tl, float(k - n))
        th, tl = _dd_mul_d(th, tl, x)
        ph, pe = _two_sum(b, float(k))
        u1h, u1l = _dd_mul_d(th, tl, ph)
        u2h, u2l = _dd_mul_d(th, tl, pe)
        th, tl = _dd_add(u1h, u1l, u2h, u2l)
        qh, qe = _two_sum(c, float(k))
        th, tl = _dd_div_d(th, tl, qh)
        # first-order correction for dividing by qh instead of qh + qe
        ch, cl = _dd_mul_d(th, tl, -qe / qh)
        th, tl = _dd_add(th, tl, ch, cl)
        th, tl = _dd_div_d(th, tl, k + 1.0)
        sh, sl = _dd_add(sh, sl, th, tl)
    return sh + sl


def jacobi(n: int, alpha: float, beta: float, x: float) -> float:
    """Jacobi polynomial P_n^(alpha, beta)(x) via the terminating Gauss sum.

    Uses P_n^(a,b)(x) = ((a+1)_n / n!) 2F1(-n, n+a+b+1; a+1; (1-x)/2).
    Degree zero returns 1 for any parameters.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return 1.0
    lead = pochhammer_rising(alpha + 1.0, n) / math.factorial(n)
    return lead * hyp2f1_terminating(n, n + alpha + beta + 1.0, alpha + 1.0, 0.5 * (1.0 - x))


def jacobi_derivative(n: int, alpha: float, beta: float, x: float) -> float:
    """d/dx of P_n^(alpha, beta) at x, through the parameter-shift identity.

    d/dx P_n^(a,b)(x) = (n+a+b+1)/2 * P_(n-1)^(a+1, b+1)(x); zero for n = 0.
    """
    if n == 0:
        return 0.0
    return 0.5 * (n + alpha + beta + 1.0) * jacobi(n - 1, alpha + 1.0, beta + 1.0, x)


def jacobi_nth_derivative(n: int, alpha: float, beta: float, x: float, order: int) -> float:
    """Repeated application of the shift identity; zero when order > n."""
    if order < 0:
        raise ValueError("order must be non-negative")
    if order > n:
        return 0.0
    pref = 1.0
    for j in range(order):
        pref *= 0.5 * (n + alpha + beta + 1.0 + j)
    return pref * jacobi(n - order, alpha + order, beta + order, x)


def laguerre(n: int, alpha: float, x: float) -> float:
    """Associated Laguerre polynomial L_n^alpha(x).

    Terminating confluent series sum_{k=0}^{n} (-1)^k C(n+alpha, n-k)
    x^k / k!, with the binomial expanded as a rising-factorial product.
    Raises :class:`PoleInDenominator` for alpha in {-1, ..., -n}.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return 1.0
    if _is_nonpositive_integer_above(alpha + 1.0, -float(n)):
        raise PoleInDenominator(f"alpha = {alpha} is an integer in [-n, -1]")

    # t_0 = C(n+alpha, n) = (alpha+1)_n / n!; its rounding is a common
    # factor on every term, so plain double precision is enough there.
    t0 = pochhammer_rising(alpha + 1.0, n) / math.factorial(n)
    th, tl = t0, 0.0
    sh, sl = t0, 0.0
    for k in range(n):
        # per-term ratio factors are applied exactly, as in the Gauss sum
        th, tl = _dd_mul_d(th, tl, -x)
        th, tl = _dd_mul_d(th, tl, float(n - k))
        qh, qe = _two_sum(alpha, k + 1.0)
        th, tl = _dd_div_d(th, tl, qh)
        ch, cl = _dd_mul_d(th, tl, -qe / qh)
        th, tl = _dd_add(th, tl, ch, cl)
        th, tl = _dd_div_d(th, tl, k + 1.0)
        sh, sl = _dd_add(sh, sl, th, tl)
    return sh + sl
