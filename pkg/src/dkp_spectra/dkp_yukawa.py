"""Spin-0 DKP bound states in a screened Coulomb vector potential.

The radial component F of the five-component spinor obeys a
Klein-Gordon-type second-order equation.  Replacing 1/r by
a/sinh(a r) (and its square) turns that equation into an exactly
solvable Hulthen-type problem in the variable s = exp(-2 a r), which
the parametric engine in :mod:`.nu_engine` solves on both of its
quantization branches:

* branch TWO reproduces the published eigenvalue table that the
  ``table2`` command checks against; its s-exponent is negative, so the
  associated eigenfunction grows at large r,
* branch ONE carries the decaying exponent exp(-eps r) and is the one
  an ODE eigensolver actually finds; it is exposed here as the
  "physical" spectrum.

Both quantization relations collapse to a quadratic in E once the
square is expanded: with nu = n + 1/2 + delta and
delta = sqrt((J + 1/2)^2 - g^2),

    branch TWO:  eps = + a (nu^2 + g^2)/nu - (g/nu) E
    branch ONE:  eps = - a (nu^2 + g^2)/nu + (g/nu) E

where eps = sqrt(m^2 - E^2) > 0.  Squaring introduces one spurious
root, so candidate roots are filtered by eps > 0, |E| < m, and a
residual recheck against the raw quantization relation.

All formulas live in natural units: m and a in energy, g
dimensionless, r in inverse energy.  :class:`PhysicalParams` holds the
MeV / fm user-facing inputs and converts through hbar*c.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from scipy.integrate import quad

from . import nu_engine
from .errors import (
    ConstraintViolation,
    DivergentNorm,
    DomainError,
    NoBoundState,
    SupercriticalCoupling,
)
from .nu_engine import Branch, NUProblem
from .specfun import jacobi, jacobi_nth_derivative

__all__ = [
    "HBARC_MEV_FM",
    "PhysicalParams",
    "NaturalParams",
    "QuantumNumbers",
    "EnergyLevel",
    "RadialWave",
    "SpinorSet",
    "natural_units",
    "nu_problem",
    "energy_paper",
    "energy_physical",
    "level_count",
    "radial_F",
    "spinors",
    "potential_yukawa",
    "potential_approx",
    "normalize",
]

HBARC_MEV_FM = 197.3269804


@dataclass(frozen=True)
class PhysicalParams:
    """User-facing inputs: mass in MeV, coupling in MeV*fm, screening in 1/fm."""

    mass: float
    coupling: float
    screening: float
    hbar_c: float = HBARC_MEV_FM

    def __post_init__(self):
        if not (self.mass > 0.0):
            raise ValueError("mass must be positive")
        if not (self.screening > 0.0):
            raise ValueError("screening must be positive")
        if not (self.hbar_c > 0.0):
            raise ValueError("hbar_c must be positive")
        if self.coupling < 0.0:
            raise ValueError("coupling must be non-negative")


@dataclass(frozen=True)
class NaturalParams:
    """Internal triple: m and a in energy units, g dimensionless."""

    m: float
    a: float
    g: float

    def __post_init__(self):
        if not (self.m > 0.0 and self.a > 0.0):
            raise ValueError("m and a must be positive")
        if self.g < 0.0:
            raise ValueError("g must be non-negative")


@dataclass(frozen=True)
class QuantumNumbers:
    """Radial number n and total angular momentum J, both non-negative."""

    n: int
    J: int

    def __post_init__(self):
        if self.n < 0 or self.J < 0:
            raise ValueError("n and J must be non-negative")


@dataclass(frozen=True)
class EnergyLevel:
    """One bound state with its quantization bookkeeping.

    ``epsilon`` is sqrt(m^2 - E^2), ``delta`` the coupling-shifted
    angular index, ``nu = n + 1/2 + delta``, and ``residual`` the value
    of the branch's raw quantization relation at E.
    """

    qn: QuantumNumbers
    branch: Branch
    E: float
    epsilon: float
    nu: float
    delta: float
    residual: float


def natural_units(p: PhysicalParams) -> NaturalParams:
    """Convert MeV / fm inputs to the internal natural triple."""
    return NaturalParams(m=p.mass, a=p.screening * p.hbar_c, g=p.coupling / p.hbar_c)


def nu_problem(natural: NaturalParams, J: int, E: float) -> NUProblem:
    """Template coefficients of the approximated radial equation at energy E."""
    if abs(E) >= natural.m:
        raise DomainError("|E| must be below m")
    a, g = natural.a, natural.g
    eps2 = natural.m * natural.m - E * E
    q = eps2 / (4.0 * a * a)
    return NUProblem(
        c1=1.0,
        c2=1.0,
        c3=1.0,
        p0=q,
        p1=-J * (J + 1.0) + E * g / a + 2.0 * q,
        p2=-g * g + E * g / a + q,
    )


def _delta_nu(natural: NaturalParams, qn: QuantumNumbers) -> tuple[float, float]:
    half = qn.J + 0.5
    if natural.g > half:
        raise SupercriticalCoupling(
            f"g = {natural.g} exceeds J + 1/2 = {half}; the angular index is imaginary"
        )
    delta = math.sqrt(half * half - natural.g * natural.g)
    return delta, qn.n + 0.5 + delta


def _closed_level(natural: NaturalParams, qn: QuantumNumbers, branch: Branch) -> EnergyLevel:
    """Solve the branch's quantization relation in closed form.

    The relation is linear in eps: eps = alpha + beta E.  Substituting
    eps^2 = m^2 - E^2 and squaring gives a quadratic whose two roots
    are tried in the order that stays continuous with the small-
    screening limit; a root is accepted only if the linear form is
    positive and |E| < m, which removes the root introduced by
    squaring.
    """
    delta, nu = _delta_nu(natural, qn)
    m, a, g = natural.m, natural.a, natural.g
    if g == 0.0:
        # No interaction, no binding.  The branch-TWO relation formally
        # still has eps = a*nu roots, but they belong to the growing,
        # non-normalizable family and are rejected here.
        raise NoBoundState("zero coupling binds nothing")

    radial = a * (nu * nu + g * g) / nu
    if branch is Branch.TWO:
        alpha, beta = radial, -g / nu
    else:
        alpha, beta = -radial, g / nu

    one_b2 = 1.0 + beta * beta
    disc = m * m * one_b2 - alpha * alpha
    if disc < 0.0:
        raise NoBoundState(f"discriminant negative for n={qn.n}, J={qn.J}")
    root = math.sqrt(disc)
    candidates = [(-alpha * beta - root) / one_b2, (-alpha * beta + root) / one_b2]
    if branch is Branch.ONE:
        candidates.reverse()

    for E in candidates:
        eps_lin = alpha + beta * E
        if eps_lin <= 0.0 or abs(E) >= m:
            continue
        problem = nu_problem(natural, qn.J, E)
        consts = nu_engine.derive_constants(problem, branch)
        residual = nu_engine.quantization_residual(consts, qn.n, problem)
        # Guard against the squaring artifact: a spurious root has
        # eps_lin = -eps and leaves a residual of order nu*eps/a.
        scale = max(1.0, m * m / (4.0 * a * a))
        if abs(residual) > 1e-9 * scale:
            continue
        return EnergyLevel(
            qn=qn,
            branch=branch,
            E=E,
            epsilon=math.sqrt(m * m - E * E),
            nu=nu,
            delta=delta,
            residual=residual,
        )
    raise NoBoundState(f"no accepted root for n={qn.n}, J={qn.J} on {branch.value}")


def energy_paper(natural: NaturalParams, qn: QuantumNumbers) -> EnergyLevel:
    """Branch-TWO level, the spectrum the reference table tabulates."""
    return _closed_level(natural, qn, Branch.TWO)


def energy_physical(natural: NaturalParams, qn: QuantumNumbers) -> EnergyLevel:
    """Branch-ONE level, the normalizable spectrum the ODE oracle confirms."""
    return _closed_level(natural, qn, Branch.ONE)


def level_count(natural: NaturalParams, J: int, branch: Branch, max_levels: int = 100000) -> int:
    """Number of consecutive radial levels starting at n = 0."""
    count = 0
    while count < max_levels:
        try:
            _closed_level(natural, QuantumNumbers(n=count, J=J), branch)
        except NoBoundState:
            break
        count += 1
    return count


class RadialWave:
    """Radial profile N s^p (1-s)^q P_n^(alpha, beta)(1 - 2 s), s = exp(-2 a r).

    Callable on natural-unit r > 0; analytic first and second
    derivatives come from the polynomial parameter-shift identity, with
    1 - s evaluated through expm1 so small a*r loses no precision.
    The exponent p and the polynomial parameter alpha are independent
    fields on purpose: the as-printed branch-TWO profile pairs a
    decaying exponential with a negative polynomial parameter.
    """

    def __init__(self, a: float, p: float, q: float, alpha: float, beta: float,
                 degree: int, norm: float = 1.0):
        self.a = a
        self.p = p
        self.q = q
        self.alpha = alpha
        self.beta = beta
        self.degree = degree
        self.norm = norm

    def _sv(self, r: float) -> tuple[float, float]:
        if r <= 0.0:
            raise DomainError("r must be positive")
        x = -2.0 * self.a * r
        return math.exp(x), -math.expm1(x)

    def _poly(self, s: float, order: int) -> float:
        # d^k/dx^k at x = 1 - 2 s; each s-derivative brings a factor -2.
        val = jacobi_nth_derivative(self.degree, self.alpha, self.beta, 1.0 - 2.0 * s, order)
        return val * (-2.0) ** order

    def value(self, r: float) -> float:
        s, v = self._sv(r)
        return self.norm * s ** self.p * v ** self.q * self._poly(s, 0)

    __call__ = value

    def derivative(self, r: float) -> float:
        s, v = self._sv(r)
        g1 = self._g1(s, v)
        return self.norm * (-2.0 * self.a) * s ** self.p * v ** (self.q - 1.0) * g1

    def second_derivative(self, r: float) -> float:
        s, v = self._sv(r)
        p, q = self.p, self.q
        g1 = self._g1(s, v)
        g1s = (
            -(p + q) * self._poly(s, 0)
            + (p * v - q * s + v - s) * self._poly(s, 1)
            + s * v * self._poly(s, 2)
        )
        g2 = (p - 1.0) * v * g1 - (q - 1.0) * s * g1 + s * v * g1s
        return self.norm * 4.0 * self.a * self.a * s ** p * v ** (q - 2.0) * (v * g1 + g2)

    def _g1(self, s: float, v: float) -> float:
        # d/ds of s^p v^q P equals s^(p-1) v^(q-1) g1
        return (self.p * v - self.q * s) * self._poly(s, 0) + s * v * self._poly(s, 1)


@dataclass(frozen=True)
class SpinorSet:
    """The four radial spinor components of one level.

    Evaluators take natural-unit r > 0 (the command line converts fm on
    the way in).  G is built from the same approximated potential that
    F solves, so m G = (E - U) F holds to rounding; the difference from
    the true screened Coulomb potential is what the verify command
    measures, not something hidden here.
    """

    F: Callable[[float], float]
    G: Callable[[float], float]
    H_plus: Callable[[float], float]
    H_minus: Callable[[float], float]
    alpha_J: float
    sigma_J: float
    norm_constant: float
    wave: RadialWave
    level: EnergyLevel


def radial_F(level: EnergyLevel, natural: NaturalParams, strict: bool = False) -> RadialWave:
    """Normalized radial profile of a level.

    Branch ONE uses the decaying exponent eps/(2a) paired with the
    polynomial parameter eps/a.  Branch TWO is evaluated as printed in
    the source of the reference table: decaying exponential but
    polynomial parameter -eps/a, an internally inconsistent pair whose
    parameter is below -1; strict mode refuses it.
    """
    a = natural.a
    eps, delta = level.epsilon, level.delta
    if level.branch is Branch.ONE:
        alpha = eps / a
    else:
        alpha = -eps / a
        if strict:
            raise ConstraintViolation(
                "branch-TWO polynomial parameter -eps/a is below -1; "
                "pass strict=False to evaluate as printed"
            )
    wave = RadialWave(
        a=a,
        p=eps / (2.0 * a),
        q=0.5 + delta,
        alpha=alpha,
        beta=2.0 * delta,
        degree=level.qn.n,
    )
    wave.norm = normalize(wave, eps)
    return wave


def spinors(level: EnergyLevel, natural: NaturalParams) -> SpinorSet:
    """All four radial components, derived from the first-order relations.

    G = (E - U) F / m with U the approximated potential F solves;
    H(+1) = -(alpha_J/m)(F' - (J+1) F / r);
    H(-1) = -(sigma_J/m)(F' + J F / r), identically zero at J = 0.
    """
    J = level.qn.J
    m, a, g = natural.m, natural.a, natural.g
    E = level.E
    wave = radial_F(level, natural)
    alpha_j = math.sqrt((J + 1.0) / (2.0 * J + 1.0))
    sigma_j = math.sqrt(J / (2.0 * J + 1.0))

    def u_approx(r: float) -> float:
        x = -2.0 * a * r
        return -2.0 * a * g * math.exp(x) / (-math.expm1(x))

    def f_comp(r: float) -> float:
        return wave.value(r)

    def g_comp(r: float) -> float:
        return (E - u_approx(r)) * wave.value(r) / m

    def h_plus(r: float) -> float:
        return -(alpha_j / m) * (wave.derivative(r) - (J + 1.0) * wave.value(r) / r)

    if J == 0:
        def h_minus(r: float) -> float:
            return 0.0
    else:
        def h_minus(r: float) -> float:
            return -(sigma_j / m) * (wave.derivative(r) + J * wave.value(r) / r)

    return SpinorSet(
        F=f_comp,
        G=g_comp,
        H_plus=h_plus,
        H_minus=h_minus,
        alpha_J=alpha_j,
        sigma_J=sigma_j,
        norm_constant=wave.norm,
        wave=wave,
        level=level,
    )


def potential_yukawa(natural: NaturalParams, r: float) -> float:
    """Screened Coulomb potential -g exp(-a r)/r, natural units."""
    if r <= 0.0:
        raise DomainError("r must be positive")
    return -natural.g * math.exp(-natural.a * r) / r


def potential_approx(natural: NaturalParams, r: float) -> float:
    """Exactly solvable surrogate -2 a g exp(-2 a r)/(1 - exp(-2 a r)).

    Identical to the screened Coulomb form times a r / sinh(a r), so
    its magnitude never exceeds the original.
    """
    if r <= 0.0:
        raise DomainError("r must be positive")
    x = -2.0 * natural.a * r
    return -2.0 * natural.a * natural.g * math.exp(x) / (-math.expm1(x))


def normalize(f: Callable[[float], float], epsilon: float, abs_tol: float = 1e-10) -> float:
    """Constant N with the square of N*f integrating to one.

    The integral is truncated at r = 27.7/epsilon, where the decaying
    tail exp(-eps r) is below 1e-12.  Inputs whose magnitude still
    grows across the tail are rejected as divergent.
    """
    if not (epsilon > 0.0):
        raise DomainError("epsilon must be positive")
    r_max = 27.7 / epsilon
    tail = [abs(f(x * r_max)) for x in (0.5, 0.75, 1.0)]
    if tail[0] < tail[1] < tail[2]:
        raise DivergentNorm("|f| grows towards the truncation radius")
    # Relative control: abs_tol is a bound on the normalized square, so
    # the raw integral needs the same relative accuracy whatever its size.
    epsrel = max(1e-13, min(1e-12, 0.01 * abs_tol))
    integral, _ = quad(lambda r: f(r) ** 2, 0.0, r_max,
                       epsabs=0.0, epsrel=epsrel, limit=200)
    if not (integral > 0.0 and math.isfinite(integral)):
        raise DivergentNorm("squared integral is not a positive finite number")
    return 1.0 / math.sqrt(integral)
