import json

import numpy as np
import pytest

from singosc import base_invariant as base
from singosc.base_invariant import QuantumState
from singosc.config import RunConfig
from singosc.ermakov import ErmakovParams
from singosc.quadrature import QuadratureError, integrate
from singosc.verify import TOL, VerificationReport, inner_product, run_suite

ORDER = [
    "ermakov_residual", "invariant1_eigen", "invariant1_rayleigh", "seed_construction", "riccati_residual",
    "factorization_I1", "factorization_I2", "intertwining_I2A", "intertwining_I1Adag",
    "missing_annihilation", "missing_eigen", "invariant2_eigen", "invariant2_rayleigh",
    "orthonormality_base", "orthonormality_deformed", "missing_norm", "norm_closed_form",
    "schroedinger_psi1", "norm_conservation_psi1", "schroedinger_psi2", "norm_conservation_psi2",
    "stationary_eigenfunctions", "stationary_phase", "stationary_potential",
    "nonsingular_g0_g1", "singular_g2", "equidistant_spectrum", "equidistant_closed_form",
    "wronskian_constancy", "wronskian_value",
    "hermiticity_I1", "hermiticity_I2", "hermiticity_H2", "adjointness_A",
]


@pytest.fixture(scope="module")
def default_report():
    return run_suite(RunConfig())


# --- inner product -------------------------------------------------------------

def test_inner_product_examples():
    erm = ErmakovParams(1.0, 1.0)
    s0 = base.base_state(0, 1.0, erm)
    s1 = base.base_state(1, 1.0, erm)
    assert inner_product(s0, s0, 0.0).real == pytest.approx(1.0, abs=1e-9)
    assert abs(inner_product(s0, s1, 0.0)) < 1e-9


def test_inner_product_conjugate_symmetry():
    erm = ErmakovParams(2.0, 1.0)
    s0 = base.base_state(0, 1.0, erm)
    s2 = base.base_state(2, 1.0, erm)
    # unequal times break orthogonality, so the value is a generic complex number
    f = QuantumState(0, 0.0, "base", lambda x, t: s0.psi(x, t + 0.4), lambda t: 0.0, s0.extent)
    a = inner_product(f, s2, 0.3)
    b = inner_product(s2, f, 0.3)
    assert abs(a) > 1e-6
    assert a == pytest.approx(np.conj(b), abs=1e-12)


def test_inner_product_non_convergence():
    bad = QuantumState(0, 0.0, "base", lambda x, t: np.abs(x - 1.0) ** -0.75 + 0j, lambda t: 0.0, lambda t: 2.0)
    with pytest.raises(QuadratureError):
        inner_product(bad, bad, 0.0)


def test_quadrature_against_known_integrals():
    val, err = integrate(lambda x: np.exp(-x * x), 0.0, 10.0)
    assert val == pytest.approx(np.sqrt(np.pi) / 2, abs=1e-13)
    val, _ = integrate(lambda x: np.exp(1j * x), 0.0, np.pi)
    assert val == pytest.approx(2j, abs=1e-13)


# --- suite -----------------------------------------------------------------------

def test_default_config_all_pass(default_report):
    assert default_report.all_passed, default_report.to_text()
    assert [e.name for e in default_report.entries] == ORDER


def test_entries_carry_anchor_and_declared_tolerance(default_report):
    declared = set(TOL.values())
    for e in default_report.entries:
        assert e.anchor
        assert e.tolerance in declared


def test_notes_record_decisions(default_report):
    notes = default_report.notes
    assert notes["ermakov_variant"]["coupling_1_residual_at_a_c_1"] == pytest.approx(3.0)
    assert notes["ermakov_variant"]["adopted_max_residual"] < 1e-10
    assert notes["norm_epsilon_readings"]["matching_reading"] == "gamma"


def test_report_serialization(default_report):
    doc = json.loads(default_report.to_json())
    assert doc["summary"] == {"total": len(ORDER), "passed": len(ORDER), "failed": 0}
    assert "timing" not in doc
    timed = json.loads(default_report.to_json(timing=True))
    assert len(timed["timing"]) == len(ORDER)
    assert "34/34 checks passed" in default_report.to_text()


def test_suite_deterministic(default_report):
    again = run_suite(RunConfig())
    assert again.to_json() == default_report.to_json()


def test_kb_zero_records_seed_failure():
    rep = run_suite(RunConfig(kb=0.0))
    seed = rep.find("seed_construction")
    assert len(seed) == 1 and not seed[0].passed
    assert "kb" in seed[0].detail
    # the suite keeps going after the failure
    names = [e.name for e in rep.entries]
    assert names.index("seed_construction") < names.index("wronskian_constancy")
    assert rep.find("wronskian_constancy")[0].passed
    assert not rep.all_passed


def test_stationary_config_limits_pass():
    rep = run_suite(RunConfig(a=1.0, c=1.0))
    for name in ("stationary_eigenfunctions", "stationary_phase", "stationary_potential",
                 "nonsingular_g0_g1", "singular_g2", "equidistant_closed_form"):
        assert rep.find(name)[0].passed
    assert rep.all_passed


def test_empty_report_not_passing():
    assert not VerificationReport().all_passed
