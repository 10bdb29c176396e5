import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from overlap_entanglement.core import EnsembleConfig, ExcitationCase
from overlap_entanglement.dynamics import (
    CoefficientVector,
    coeff_closed,
    coeff_closed_common,
    coeff_closed_side,
    coeff_rhs_common,
    coeff_rhs_side,
    embed_in_qubit_space,
    expand_reduced_state,
    generator,
    reduced_state,
    reduced_state_common,
    reduced_state_side,
    unit_vector,
)
from overlap_entanglement.numerics import rk4_integrate, symmetric_eigenvalues
from overlap_entanglement import oracle

COMMON, SIDE = ExcitationCase.COMMON, ExcitationCase.SIDE


def grid(max_N=4, max_n=4):
    for N, n in itertools.product(range(1, max_N + 1), range(0, max_n + 1)):
        for case in (COMMON, SIDE):
            if case is COMMON and n == 0:
                continue
            yield case, N, n


def rk4_coefficients(case, N, n, t, steps):
    G = generator(case, N, n)
    return rk4_integrate(lambda v: G @ v, unit_vector(1), t, steps)


# -- generators against the full-space master equation ---------------------

@pytest.mark.parametrize("case, N, n", list(grid(3, 3)))
def test_generator_reproduces_lindbladian_on_basis(case, N, n):
    cfg = EnsembleConfig(N, n)
    basis = oracle.operator_basis(cfg, case)
    L_ac = oracle.build_collective_lowering(cfg, "AC")
    L_bc = oracle.build_collective_lowering(cfg, "BC")
    G = generator(case, N, n)
    for j, B in enumerate(basis):
        expected = oracle.lindblad_rhs(B, L_ac, L_bc)
        predicted = sum(G[i, j] * basis[i] for i in range(11))
        np.testing.assert_allclose(predicted, expected, atol=1e-12, err_msg=f"column {j}")


# -- right-hand sides --------------------------------------------------------

@pytest.mark.parametrize("rhs", [coeff_rhs_common, coeff_rhs_side])
def test_ground_state_is_stationary(rhs):
    np.testing.assert_array_equal(rhs(unit_vector(0), 3, 2), np.zeros(11))


def test_common_rhs_from_excited_site():
    d = coeff_rhs_common(unit_vector(1), 1, 1)
    expected = np.zeros(11)
    expected[[0, 1, 5, 6, 7]] = [4, -4, -1, -1, -2]
    np.testing.assert_array_equal(d, expected)


def test_side_rhs_from_excited_site():
    d = coeff_rhs_side(unit_vector(1), 1, 1)
    expected = np.zeros(11)
    # a5 multiplies a zero operator when N = 1 but is still driven by a1
    expected[[0, 1, 5, 7]] = [2, -2, -1, -1]
    np.testing.assert_array_equal(d, expected)


def test_rhs_accepts_coefficient_vector():
    c = CoefficientVector("common", unit_vector(1))
    np.testing.assert_array_equal(coeff_rhs_common(c, 2, 1), coeff_rhs_common(c.values, 2, 1))


symmetric_common = st.lists(st.floats(-1, 1), min_size=8, max_size=8).map(
    lambda v: np.array([v[0], v[1], v[2], v[2], v[3], v[4], v[4], v[5], v[6], v[7], v[7]])
)


@settings(max_examples=100, deadline=None)
@given(symmetric_common, st.integers(1, 6), st.integers(1, 6))
def test_common_rhs_preserves_trace(c, N, n):
    d = coeff_rhs_common(c, N, n)
    assert abs(d[0] + d[1] + 2 * N * d[2] + (n - 1) * d[4]) <= 1e-12 * (N + n) ** 2


@settings(max_examples=100, deadline=None)
@given(st.lists(st.floats(-1, 1), min_size=11, max_size=11), st.integers(1, 6), st.integers(0, 6))
def test_side_rhs_preserves_trace(a, N, n):
    d = coeff_rhs_side(a, N, n)
    assert abs(d[0] + d[1] + (N - 1) * d[2] + N * d[3] + n * d[4]) <= 1e-12 * (N + n) ** 2


# -- closed forms --------------------------------------------------------------

@pytest.mark.parametrize("case", [COMMON, SIDE])
def test_closed_form_initial_condition(case):
    np.testing.assert_allclose(coeff_closed(case, 0.0, 3, 2).values, unit_vector(1), atol=1e-15)


def test_common_closed_form_against_rk4_value():
    t = np.log(2.0) / 3.0
    assert rk4_coefficients(COMMON, 1, 1, t, 10_000)[2] == pytest.approx(1 / 36, abs=1e-9)
    assert coeff_closed_common(t, 1, 1)[2] == pytest.approx(1 / 36, abs=1e-12)


def test_common_closed_form_stationary_value():
    assert coeff_closed_common(50.0, 1, 1)[2] == pytest.approx(1 / 9, abs=1e-12)
    assert rk4_coefficients(COMMON, 1, 1, 50.0, 50_000)[2] == pytest.approx(1 / 9, abs=1e-10)


def test_side_closed_form_against_rk4_at_t1():
    reference = rk4_coefficients(SIDE, 2, 1, 1.0, 100_000)
    np.testing.assert_allclose(coeff_closed_side(1.0, 2, 1).values, reference, atol=1e-9)


def test_side_closed_form_stationary_a3():
    assert coeff_closed_side(50.0, 2, 1)[3] == pytest.approx(1 / 64, abs=1e-12)
    assert rk4_coefficients(SIDE, 2, 1, 50.0, 50_000)[3] == pytest.approx(1 / 64, abs=1e-10)


def test_common_closed_form_relations():
    c = coeff_closed_common(0.7, 3, 2).values
    assert c[2] == c[3] == c[8]
    assert c[4] == 4 * c[2] and c[9] == c[10] == 2 * c[2]
    assert c[5] == c[6] and c[7] == 2 * c[5]


def test_closed_forms_broadcast_over_time():
    t = np.array([0.0, 0.5, 2.0])
    stacked = coeff_closed_side(t, 2, 3).values
    assert stacked.shape == (11, 3)
    np.testing.assert_allclose(stacked[:, 1], coeff_closed_side(0.5, 2, 3).values)


@pytest.mark.parametrize("case, N, n", list(grid()))
def test_closed_form_solves_the_ode(case, N, n):
    h = 1e-5
    G = generator(case, N, n)
    for t in np.arange(0, 51) * 0.1:
        fd = (coeff_closed(case, t + h, N, n).values - coeff_closed(case, t - h, N, n).values) / (2 * h)
        np.testing.assert_allclose(fd, G @ coeff_closed(case, t, N, n).values, atol=1e-6)


@pytest.mark.parametrize("case, N, n", list(grid()))
def test_trace_identity_and_symmetry_along_trajectory(case, N, n):
    for t in np.linspace(0, 10, 41):
        c = coeff_closed(case, t, N, n)
        assert c.trace(N, n) == pytest.approx(1.0, abs=1e-9)
        if case is COMMON:
            v = c.values
            assert max(abs(v[2] - v[3]), abs(v[5] - v[6]), abs(v[9] - v[10])) <= 1e-12


@pytest.mark.parametrize("case, N, n", list(grid()))
def test_stationary_state_is_converged(case, N, n):
    c = coeff_closed(case, 50.0, N, n).values
    assert np.abs(generator(case, N, n) @ c).max() <= 1e-10 * (N + 2 * n) ** 2


@pytest.mark.parametrize("case, N, n", list(grid()))
def test_closed_forms_are_stable_at_huge_times(case, N, n):
    far = coeff_closed(case, 1e4, N, n).values
    assert np.isfinite(far).all()
    np.testing.assert_allclose(far, coeff_closed(case, 80.0, N, n).values, atol=1e-15)


def test_side_stationary_limits_by_hand():
    N, n = 3, 2
    s, P = N + 2 * n, N * N + 2 * N * n - N - n
    a = coeff_closed_side(1e4, N, n).values
    norm = (N * s) ** 2
    expected = {1: P**2 / norm, 2: (N + n) ** 2 / norm, 3: n**2 / norm, 4: 1 / s**2,
                5: -(N + n) * P / norm, 6: n * P / norm, 8: -n * (N + n) / norm,
                0: (N + n) / (N * s)}
    for j, value in expected.items():
        assert a[j] == pytest.approx(value, rel=1e-12), j


# -- reduced states ------------------------------------------------------------

def test_reduced_common_initial_state_is_ground():
    s = reduced_state_common(unit_vector(1), 2, 1)
    assert (s.beta, s.c2) == (1.0, 0.0)
    rho = expand_reduced_state(s)
    assert rho[0, 0] == 1.0 and np.count_nonzero(rho) == 1


def test_reduced_common_beta():
    c = np.zeros(11)
    c[2] = c[3] = 1 / 9
    assert reduced_state_common(c, 1, 1).beta == pytest.approx(7 / 9, abs=1e-15)


def test_reduced_side_initial_and_ground():
    s = reduced_state_side(unit_vector(1), 3, 2)
    assert s.beta == 0.0 and s.a1 == 1.0
    g = reduced_state_side(unit_vector(0), 3, 2)
    assert g.beta == 1.0
    assert (g.a1, g.a2, g.a3, g.a5, g.a6, g.a8) == (0, 0, 0, 0, 0, 0)


def test_reduced_side_stationary_single_pair():
    s = reduced_state(SIDE, 50.0, 1, 1)
    rho = expand_reduced_state(s)
    assert np.trace(rho) == pytest.approx(1.0, abs=1e-12)
    # N = n = 1: a1 = 1/9, a3 = 1/9, a6 = 1/9, beta = 7/9
    assert (s.beta, s.a1, s.a3, s.a6) == pytest.approx((7 / 9, 1 / 9, 1 / 9, 1 / 9), abs=1e-12)


def test_expand_common_single_pair_layout():
    c2 = 0.05
    c = np.zeros(11)
    c[2] = c[3] = c2
    rho = expand_reduced_state(reduced_state_common(c, 1, 1))
    # basis: g~, |ee>, |eg>, |ge>
    assert rho.shape == (4, 4)
    assert rho[2, 3] == rho[3, 2] == c2
    assert rho[1, 1] == 0.0 and rho[0, 0] == pytest.approx(1 - 2 * c2)


def test_expand_side_single_pair_drops_a_prime_terms():
    a = np.full(11, 0.01)
    rho = expand_reduced_state(reduced_state_side(a, 1, 1))
    assert rho.shape == (4, 4)
    assert np.count_nonzero(rho) == 1 + 2 + 2  # beta, a1, a3, a6 pair


@pytest.mark.parametrize("case, N, n", list(grid()))
def test_expanded_state_is_a_density_matrix(case, N, n):
    for t in (0.0, 0.1, 0.5, 2.0, 50.0):
        rho = expand_reduced_state(reduced_state(case, t, N, n))
        assert np.trace(rho) == pytest.approx(1.0, abs=1e-12)
        assert symmetric_eigenvalues(rho)[0] >= -1e-10


@pytest.mark.parametrize("case, N, n", [(COMMON, 1, 2), (SIDE, 2, 1), (SIDE, 1, 0), (COMMON, 2, 2)])
def test_expanded_state_matches_traced_full_state(case, N, n):
    # the structured expansion against Tr_C of the 11-operator expansion built in full space
    cfg = EnsembleConfig(N, n)
    c = coeff_closed(case, 0.8, N, n).values
    full = sum(cj * B for cj, B in zip(c, oracle.operator_basis(cfg, case)))
    expected = oracle.partial_trace_C(full, cfg)
    got = embed_in_qubit_space(expand_reduced_state(reduced_state(case, 0.8, N, n)), N)
    np.testing.assert_allclose(got, expected, atol=1e-14)
