"""Bound-state spectroscopy for the spin-0 DKP equation with a vector
screened Coulomb potential.

Closed-form spectra and spinor components come from the parametric
engine in :mod:`.nu_engine` applied to the model in
:mod:`.dkp_yukawa`; the shooting solver in :mod:`.oracle` confirms or
refutes them independently.  The command line lives in :mod:`.cli`.
"""

from .dkp_yukawa import (
    HBARC_MEV_FM,
    EnergyLevel,
    NaturalParams,
    PhysicalParams,
    QuantumNumbers,
    RadialWave,
    SpinorSet,
    energy_paper,
    energy_physical,
    level_count,
    natural_units,
    normalize,
    nu_problem,
    potential_approx,
    potential_yukawa,
    radial_F,
    spinors,
)
from .errors import (
    ConstraintViolation,
    DivergentNorm,
    DomainError,
    InvalidConstants,
    NoBoundState,
    NoRoot,
    PoleInDenominator,
    SpectraError,
    SupercriticalCoupling,
)
from .nu_engine import (
    Branch,
    NUConstants,
    NUProblem,
    build_eigenfunction,
    derive_constants,
    quantization_residual,
    solve_quantization,
)
from .oracle import (
    OracleConfig,
    ShootResult,
    Variant,
    find_level,
    ode_residual,
    rhs,
    shoot,
    system_residual,
)
from .specfun import (
    PolyParams,
    hyp2f1_terminating,
    jacobi,
    jacobi_derivative,
    laguerre,
    pochhammer_rising,
)

__version__ = "0.1.0"
