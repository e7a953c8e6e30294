"""Time-dependent deformations of the singular oscillator.

Ermakov-driven quantum invariants, their factorization, the deformed
potentials they generate and a numerical verification suite.
"""

from .base_invariant import ModelParams, QuantumState, base_state, eigenvalue_base, psi1, varphi1
from .config import RunConfig
from .deformed_invariant import DeformedSpectrum, eigenvalue_deformed, norm_epsilon
from .ermakov import ErmakovParams, ermakov_residual, phase_integral, sigma
from .factorization import SeedParams, SeedSolution, potential_v2
from .kernels import BACKEND
from .verify import VerificationReport, inner_product, run_suite

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "DeformedSpectrum",
    "ErmakovParams",
    "ModelParams",
    "QuantumState",
    "RunConfig",
    "SeedParams",
    "SeedSolution",
    "VerificationReport",
    "base_state",
    "eigenvalue_base",
    "eigenvalue_deformed",
    "ermakov_residual",
    "inner_product",
    "norm_epsilon",
    "phase_integral",
    "potential_v2",
    "psi1",
    "run_suite",
    "sigma",
    "varphi1",
]
