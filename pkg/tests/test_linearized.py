import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate

from tadpole_nls.errors import DomainError
from tadpole_nls.linearized import (
    EXCEPTIONAL_TOL, check_BC_W_relation, integrate_W, nondegeneracy_mismatch, scan,
)
from tadpole_nls.scalar_model import U_STAR, potential_A_prime, soliton_phi
from tadpole_nls.wave_family import profile_at_energy, solve_from_omega, solve_from_U0

# DOP853 trace at U0 = 0.5, cross-checked by d/dE of the closed-form profile and by LSODA
W_END_0_5 = -0.7605532564927268
DW_END_0_5 = -0.7891600762472024
MISMATCH_0_5 = 2.914372733845015


def _lsoda_trace(sol):
    Up = sol.params.Uplus

    def rhs(_, y):
        U, dU, W, dW = y
        return [dU, U - 3 * U ** 5, dW, W - 15 * U ** 4 * W]

    res = integrate.solve_ivp(rhs, (0, sol.half_length), [Up, 0, -1 / potential_A_prime(Up), 0],
                              method="LSODA", rtol=1e-12, atol=1e-14)
    return res.y[2, -1], res.y[3, -1]


def test_wronskian_at_origin():
    Up = solve_from_U0(0.5).params.Uplus
    W0 = -1 / potential_A_prime(Up)
    assert -2 * Up * W0 * (1 - 3 * Up ** 4) == pytest.approx(1.0, rel=1e-15)


def test_trace_frozen():
    tr = integrate_W(solve_from_U0(0.5))
    assert tr.wronskian_defect <= 1e-8
    assert tr.W_end == pytest.approx(W_END_0_5, rel=1e-10)
    assert tr.dW_end == pytest.approx(DW_END_0_5, rel=1e-10)
    assert tr.mismatch == pytest.approx(MISMATCH_0_5, rel=1e-10)


def test_W_is_energy_derivative_of_profile():
    sol = solve_from_U0(0.5)
    E, h, z = sol.params.E, 1e-6, sol.half_length
    Up, dUp = profile_at_energy(E + h, z, derivative=True)
    Um, dUm = profile_at_energy(E - h, z, derivative=True)
    assert (Up - Um) / (2 * h) == pytest.approx(W_END_0_5, rel=1e-6)
    assert (dUp - dUm) / (2 * h) == pytest.approx(DW_END_0_5, rel=1e-6)


def test_mismatch_independent_integrator():
    sol = solve_from_U0(0.5)
    W, dW = _lsoda_trace(sol)
    _, dphi, d2phi = soliton_phi(sol.a)
    assert 2 * dW / W - d2phi / dphi == pytest.approx(nondegeneracy_mismatch(sol), abs=1e-6)


def test_mismatch_nonzero_on_grid():
    sc = scan([0.3, 0.6, 1.0, 1.5])
    assert sc.min_abs_mismatch > 0.0
    assert np.all(sc.cross > 0.0)


def test_exceptional_branch():
    sol = solve_from_U0(U_STAR)
    assert abs(sol.a - 0.5 * math.acosh(math.sqrt(3))) < 1e-15
    tr = integrate_W(sol)
    assert tr.exceptional and abs(soliton_phi(sol.a)[2]) < EXCEPTIONAL_TOL
    # a kernel element would need W'(pi eps^2) = 0
    assert abs(tr.dW_end) > 1.0
    assert abs(tr.mismatch) > 0.0


@settings(max_examples=25, deadline=None)
@given(st.floats(min_value=0.05, max_value=2.5))
def test_wronskian_identity(eps):
    tr = integrate_W(solve_from_omega(-eps ** 4))
    assert tr.wronskian_defect <= 1e-8
    assert tr.cross > 0.0


def test_wronskian_scaled_defect_at_large_eps():
    # W grows like e^{2 pi eps^2}; the identity is a difference of two huge terms,
    # so the defect is measured relative to them there
    tr = integrate_W(solve_from_omega(-3.0 ** 4))
    assert abs(tr.W_end) > 1e10
    assert tr.wronskian_defect_scaled <= 1e-12


def test_scan_counts_no_root_of_cross():
    sc = scan(np.linspace(0.05, 2.5, 40))
    assert sc.sign_changes == 0
    assert sc.min_abs_cross > 0.4


def test_bc_w_relation():
    chk = check_BC_W_relation(solve_from_U0(0.5))
    assert chk.defect <= 1e-4
    chk8 = check_BC_W_relation(solve_from_U0(0.8))
    for v in (chk8.lhs, chk8.rhs):
        assert math.isfinite(v) and v != 0.0
    assert chk8.defect <= 1e-4


def test_bc_w_relation_degenerates():
    with pytest.raises(DomainError):
        check_BC_W_relation(solve_from_U0(U_STAR))
