import math

import pytest
from hypothesis import given, settings, strategies as st

from tadpole_nls.critical import (
    WaveClass, classify, critical_frequencies, find_U1, maximize_mu_golden, omega_of_U0,
)
from tadpole_nls.errors import DomainError
from tadpole_nls.quadrature import mass_derivative_sign, monotonicity_F, monotonicity_G
from tadpole_nls.wave_family import MU_LINE, solve_from_omega

# mpmath: root of F - G and the wave there, 30 digits
U1_REF = 0.382677398266144636813714896054
OMEGA1_REF = -0.257481856627546068273764048019
MU_MAX_REF = 1.63283135077962474855859822087
OMEGA0_REF = -0.133409421068673897699081959675


@pytest.fixture(scope="module")
def crit():
    return critical_frequencies()


def test_U1_root(crit):
    assert abs(monotonicity_F(crit.U1) - monotonicity_G(crit.U1)) <= 1e-9
    assert crit.fg_residual <= 1e-9
    assert crit.U1 == pytest.approx(U1_REF, abs=1e-13)


def test_mass_derivative_changes_sign_at_U1(crit):
    assert mass_derivative_sign(crit.U1 - 0.01) > 0.0
    assert mass_derivative_sign(crit.U1 + 0.01) < 0.0


def test_frozen_triple(crit):
    assert crit.omega1 == pytest.approx(OMEGA1_REF, rel=1e-12)
    assert crit.omega0 == pytest.approx(OMEGA0_REF, rel=1e-12)
    assert crit.mu_max == pytest.approx(MU_MAX_REF, rel=1e-13)


def test_dual_routes_agree(crit):
    # F = G root against golden-section maximisation of mu(U0)
    assert crit.omega1_agreement <= 1e-6
    assert crit.U1_golden != crit.U1
    assert maximize_mu_golden() == pytest.approx(crit.U1, abs=1e-7)


def test_omega0(crit):
    assert abs(crit.mu0_residual) <= 1e-8
    assert abs(solve_from_omega(crit.omega0).mu - MU_LINE) <= 1e-8
    assert crit.omega1 < crit.omega0 < 0.0


def test_omega_of_U0_matches_solver(crit):
    assert omega_of_U0(crit.U1) == crit.omega1
    assert find_U1() == crit.U1


def test_classify_examples(crit):
    assert classify(crit.omega0 / 2) is WaveClass.GROUND_STATE
    assert classify(2 * crit.omega1) is WaveClass.SADDLE_POINT
    assert classify(0.5 * (crit.omega0 + crit.omega1)) is WaveClass.LOCAL_MINIMIZER
    assert classify(crit.omega0) is WaveClass.GROUND_STATE
    assert classify(crit.omega1) is WaveClass.SADDLE_POINT
    with pytest.raises(DomainError):
        classify(0.0)


@settings(max_examples=50, deadline=None)
@given(st.floats(min_value=-1e4, max_value=-1e-8))
def test_classify_is_monotone_partition(omega):
    crit = critical_frequencies()
    c = classify(omega, crit)
    if omega >= crit.omega0:
        assert c is WaveClass.GROUND_STATE
    elif omega > crit.omega1:
        assert c is WaveClass.LOCAL_MINIMIZER
    else:
        assert c is WaveClass.SADDLE_POINT


def test_mass_exceeds_line_value_between_critical_points(crit):
    # mu > pi/2 on (omega1, omega0) is what makes the local minimisers non-ground states
    w = 0.5 * (crit.omega0 + crit.omega1)
    assert solve_from_omega(w).mu > MU_LINE
    assert math.isclose(crit.as_dict()["omega1_agreement"], crit.omega1_agreement)
