"""Parametric solver for hypergeometric-type second-order equations.

The solver handles the template

    psi'' + (c1 - c2 s) / (s (1 - c3 s)) psi'
          + (-p2 s^2 + p1 s - p0) / (s^2 (1 - c3 s)^2) psi = 0

by closing the square root in the auxiliary linear polynomial.  The
closure constant has two roots, so the machinery produces two distinct
families of polynomial solutions:

* branch ONE pairs the exponent c12 = c4 + sqrt(c8) with one
  quantization relation,
* branch TWO pairs c12 = c4 - sqrt(c8) with the other.

The two families generally describe different spectra, and for a given
physical problem at most one of them is normalizable.  The engine never
chooses: both branches are first-class, validity violations are
recorded as flags rather than raised, and a strict mode is available
where the eigenfunction builder refuses flagged constants.  Callers
with an energy-dependent template supply a family E -> problem and the
root finder scans it; the engine never differentiates through E.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Sequence

from .errors import ConstraintViolation, InvalidConstants, NoRoot
from .specfun import jacobi, laguerre

__all__ = [
    "Branch",
    "NUProblem",
    "NUConstants",
    "derive_constants",
    "quantization_residual",
    "solve_quantization",
    "build_eigenfunction",
]


class Branch(Enum):
    """Which root of the closure constant the solution family uses."""

    ONE = "branch_one"
    TWO = "branch_two"


@dataclass(frozen=True)
class NUProblem:
    """Coefficients of the generalized template equation."""

    c1: float
    c2: float
    c3: float
    p0: float
    p1: float
    p2: float

    def __post_init__(self):
        for name in ("c1", "c2", "c3", "p0", "p1", "p2"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")


@dataclass(frozen=True)
class NUConstants:
    """Derived constants of one branch, with validity flags.

    ``c10``/``c11`` are the polynomial parameters, ``c12``/``c13`` the
    exponents of the s and (1 - c3 s) factors.  For c3 = 0 the edge
    quantities c11 and c13 are undefined and stored as NaN; the
    eigenfunction then takes the exponential-times-Laguerre form.

    Flags: ``sqrt_ok`` (c8 and c9 non-negative), ``exponents_ok``
    (c12 > 0 and, when defined, c13 > 0), ``poly_params_ok`` (c10 > -1
    and, when defined, c11 > -1).  Flag failures are recorded, not
    raised; callers decide.  ``c3`` is copied from the template because
    the eigenfunction needs it.
    """

    branch: Branch
    c3: float
    c4: float
    c5: float
    c6: float
    c7: float
    c8: float
    c9: float
    c10: float
    c11: float
    c12: float
    c13: float
    sqrt_ok: bool
    exponents_ok: bool
    poly_params_ok: bool

    @property
    def valid(self) -> bool:
        return self.sqrt_ok and self.exponents_ok and self.poly_params_ok


def derive_constants(problem: NUProblem, branch: Branch) -> NUConstants:
    """Compute the shared constants c4..c9 and the branch set c10..c13."""
    c1, c2, c3 = problem.c1, problem.c2, problem.c3
    c4 = 0.5 * (1.0 - c1)
    c5 = 0.5 * (c2 - 2.0 * c3)
    c6 = c5 * c5 + problem.p2
    c7 = 2.0 * c4 * c5 - problem.p1
    c8 = c4 * c4 + problem.p0
    c9 = c3 * (c7 + c3 * c8) + c6

    sqrt_ok = c8 >= 0.0 and c9 >= 0.0
    if sqrt_ok:
        s8 = math.sqrt(c8)
        s9 = math.sqrt(c9)
        sgn = 1.0 if branch is Branch.ONE else -1.0
        c10 = 2.0 * sgn * s8
        c12 = c4 + sgn * s8
        if c3 != 0.0:
            c11 = 2.0 * s9 / c3
            c13 = -c4 + (s9 - c5) / c3
        else:
            c11 = math.nan
            c13 = math.nan
    else:
        c10 = c11 = c12 = c13 = math.nan

    exponents_ok = sqrt_ok and c12 > 0.0 and (c3 == 0.0 or c13 > 0.0)
    poly_params_ok = sqrt_ok and c10 > -1.0 and (c3 == 0.0 or c11 > -1.0)
    return NUConstants(
        branch=branch,
        c3=c3,
        c4=c4, c5=c5, c6=c6, c7=c7, c8=c8, c9=c9,
        c10=c10, c11=c11, c12=c12, c13=c13,
        sqrt_ok=sqrt_ok,
        exponents_ok=exponents_ok,
        poly_params_ok=poly_params_ok,
    )


def quantization_residual(consts: NUConstants, n: int, problem: NUProblem) -> float:
    """Left-hand side of the branch's quantization relation at degree n.

    A root of the problem family's energy-like parameter makes this
    vanish.  Raises :class:`InvalidConstants` when c8 or c9 is negative
    and the square roots would be imaginary.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if not consts.sqrt_ok:
        raise InvalidConstants("c8 and c9 must be non-negative")
    s8 = math.sqrt(consts.c8)
    s9 = math.sqrt(consts.c9)
    c2, c3 = problem.c2, problem.c3
    sgn = 1.0 if consts.branch is Branch.ONE else -1.0
    return (
        n * c2
        - (2 * n + 1) * consts.c5
        + (2 * n + 1) * (s9 + sgn * c3 * s8)
        + n * (n - 1) * c3
        + consts.c7
        + 2.0 * c3 * consts.c8
        + sgn * 2.0 * s8 * s9
    )


def solve_quantization(
    problem_family: Callable[[float], NUProblem],
    branch: Branch,
    n: int,
    bracket: tuple[float, float],
    tol: float = 1e-10,
    samples: int = 2000,
) -> list[float]:
    """All roots of the quantization residual over a parameter bracket.

    Scans ``samples`` points uniformly over the bracket for sign
    changes of the residual, then bisects each change until the
    interval shrinks below tol * max(1, |E|) and the midpoint residual
    is below tol.  Bracket points where the constants are invalid
    (imaginary square roots) are skipped.  Returns the roots in
    ascending order; raises :class:`NoRoot` when no sign change exists.
    """
    lo, hi = bracket
    if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
        raise ValueError("bracket must be a finite interval with lo < hi")
    if samples < 2:
        raise ValueError("samples must be at least 2")

    def residual(e: float) -> float:
        consts = derive_constants(problem_family(e), branch)
        if not consts.sqrt_ok:
            return math.nan
        return quantization_residual(consts, n, problem_family(e))

    grid = [lo + (hi - lo) * i / (samples - 1) for i in range(samples)]
    values = [residual(e) for e in grid]

    roots = [e for e, f in zip(grid, values) if f == 0.0]
    for (ea, fa), (eb, fb) in zip(zip(grid, values), zip(grid[1:], values[1:])):
        if math.isnan(fa) or math.isnan(fb) or fa * fb >= 0.0:
            continue
        a, b, va = ea, eb, fa
        for _ in range(200):
            mid = 0.5 * (a + b)
            fm = residual(mid)
            if fm == 0.0:
                break
            if (fm > 0.0) == (va > 0.0):
                a, va = mid, fm
            else:
                b = mid
            if (b - a) <= tol * max(1.0, abs(mid)) and abs(fm) <= tol:
                break
        roots.append(0.5 * (a + b))
    if not roots:
        raise NoRoot(f"no sign change of the degree-{n} residual in {bracket}")
    return sorted(roots)


def build_eigenfunction(consts: NUConstants, n: int, strict: bool = True):
    """Unnormalized eigenfunction evaluator s -> psi(s) for degree n.

    For c3 != 0 (edge exponent defined):

        psi(s) = s^c12 (1 - c3 s)^c13 P_n^(c10, c11)(1 - 2 c3 s)

    For c3 = 0, branch ONE degenerates to

        psi(s) = s^c12 exp(-(sqrt(c9) - c5) s) L_n^c10(2 sqrt(c9) s)

    In strict mode any validity flag failure raises
    :class:`ConstraintViolation`; with strict=False the expression is
    evaluated as printed, flags and all.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if not consts.sqrt_ok:
        raise InvalidConstants("c8 and c9 must be non-negative")
    if strict and not (consts.exponents_ok and consts.poly_params_ok):
        raise ConstraintViolation(
            "eigenfunction constants violate positivity; pass strict=False to evaluate as printed"
        )

    c12 = consts.c12
    if consts.c3 == 0.0:
        if consts.branch is not Branch.ONE:
            raise ConstraintViolation("the c3 = 0 limit is defined for branch ONE only")
        s9 = math.sqrt(consts.c9)
        rate = s9 - consts.c5
        alpha = consts.c10

        def psi_laguerre(s: float) -> float:
            return s ** c12 * math.exp(-rate * s) * laguerre(n, alpha, 2.0 * s9 * s)

        return psi_laguerre

    c3, c13 = consts.c3, consts.c13
    a10, a11 = consts.c10, consts.c11

    def psi_jacobi(s: float) -> float:
        return s ** c12 * (1.0 - c3 * s) ** c13 * jacobi(n, a10, a11, 1.0 - 2.0 * c3 * s)

    return psi_jacobi
