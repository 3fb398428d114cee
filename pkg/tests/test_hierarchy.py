from fractions import Fraction
from itertools import product

import pytest

from topovertex import (
    C3,
    CONIFOLD,
    EMPTY,
    MultiSeries,
    Partition,
    QRational,
    StripDiagram,
    bracket,
    c3_generating_function,
    closed_partition_function,
    conifold_two_variable,
    general_generating_function,
    hirota_check,
    quantum_dilog,
    schur_hook,
    tau_coefficients,
)
from topovertex.hierarchy import (
    build_tau,
    hirota_residual,
    trivial_exponential_tau,
    _tau_context,
)
from topovertex.partitions import partitions_up_to
from topovertex.qalgebra import LaurentPoly, QR_ONE
from topovertex.schur import schur_in_times, times_context
from topovertex.web import BoundaryData, glued_partition_function

P = Partition


def inv_bracket(k):
    return QR_ONE / QRational(bracket(k))


# ---------------------------------------------------------------------------
# single-vertex generating function and the quantum dilogarithm


def test_c3_exp_equals_schur_sum():
    assert c3_generating_function(5, "exp") == c3_generating_function(5, "schur")


def test_c3_low_coefficients():
    z = c3_generating_function(3, "exp")
    assert z.coefficient((1, 0, 0)) == inv_bracket(1)
    assert z.coefficient((2, 0, 0)) == inv_bracket(1) ** 2 * Fraction(1, 2)


def test_quantum_dilog_routes_and_first_coefficient():
    assert quantum_dilog(6, "exp") == quantum_dilog(6, "product")
    # x-coefficient is q^(1/2)/(1-q)
    expect = QRational(LaurentPoly.monomial(1),
                       LaurentPoly({0: 1, 2: -1}))
    assert quantum_dilog(2).coefficient((1,)) == expect
    assert quantum_dilog(2).coefficient((0,)).is_one


# ---------------------------------------------------------------------------
# tau coefficients


def test_tau_coefficients_reduce_to_hooks_at_q_zero():
    coeffs = tau_coefficients(CONIFOLD, 1, 4, 2)
    for lam, a in coeffs.items():
        assert a.coefficient((0,)) == schur_hook(lam)


def test_tau_coefficients_equal_partition_function_values():
    for n_vertices in (2, 3):
        for sigma in product((1, -1), repeat=n_vertices):
            strip = StripDiagram(sigma=sigma)
            for n in range(1, n_vertices + 1):
                coeffs = tau_coefficients(strip, n, 2, 2)
                for lam in partitions_up_to(2):
                    betas = [EMPTY] * n_vertices
                    betas[n - 1] = lam
                    z = closed_partition_function(strip, tuple(betas), 2)
                    assert coeffs[lam] == z, (sigma, n, lam)


def test_conifold_a_k_relation_to_wave_coefficients():
    # the row coefficients equal the wave-function coefficients times a_empty
    from topovertex import wave_coefficients
    coeffs = tau_coefficients(CONIFOLD, 1, 3, 3)
    wave = wave_coefficients(CONIFOLD, 1, "phi", 3, 3)
    for k in (1, 2, 3):
        assert coeffs[P([k])] == wave.coeffs[k] * coeffs[EMPTY], k


def test_vertex_index_validation():
    with pytest.raises(ValueError):
        tau_coefficients(CONIFOLD, 3, 2, 2)


# ---------------------------------------------------------------------------
# Hirota probe


def test_hirota_oracle_on_known_taus():
    # single Schur polynomials are Pluecker points, hence solutions
    ctx = times_context(3, 10)
    for lam in (P([2, 1]), P([3, 1]), P([2, 2])):
        tau = schur_in_times(lam, EMPTY, ctx)
        assert hirota_residual(tau).restrict((1, 2, 3), 6).is_zero, lam


def test_hirota_oracle_rejects_non_tau():
    # 1 + s_(2,1) + s_(1) is not a point of the Grassmannian
    ctx = times_context(3, 10)
    tau = MultiSeries.constant(ctx, 1) + schur_in_times(P([1]), EMPTY, ctx) + \
        schur_in_times(P([2, 1]), EMPTY, ctx)
    assert not hirota_residual(tau).restrict((1, 2, 3), 6).is_zero


def test_hirota_trivial_exponential_tau():
    tau = trivial_exponential_tau(6)
    assert hirota_residual(tau).restrict((0, 0, 0, 1, 2, 3), 6).is_zero


def test_hirota_c3():
    assert hirota_check(C3, 1, t_degree=6, qdeg=0).ok


@pytest.mark.slow
def test_hirota_conifold_and_mutation():
    assert hirota_check(CONIFOLD, 1, t_degree=6, qdeg=2).ok
    assert not hirota_check(CONIFOLD, 1, t_degree=6, qdeg=2,
                            mutate=P([2, 1])).ok


def test_build_tau_low_orders():
    ctx = _tau_context(CONIFOLD, 1, 3)
    coeffs = tau_coefficients(CONIFOLD, 1, 3, 1)
    tau = build_tau(coeffs, ctx)
    t1 = ctx.index("t1")
    e = [0] * len(ctx.variables)
    e[t1] = 1
    assert tau.coefficient(tuple(e)) == coeffs[P([1])].coefficient((0,))


# ---------------------------------------------------------------------------
# two-variable conifold generating function


@pytest.mark.slow
def test_conifold_two_variable_three_routes():
    zp = conifold_two_variable(3, 3, "product")
    ze = conifold_two_variable(3, 3, "exponential")
    zs = conifold_two_variable(3, 3, "schur")
    assert zp == ze == zs


def test_conifold_two_variable_slices():
    z = conifold_two_variable(2, 2, "product")
    # x = 0 leaves the bare prefactor series
    pref = closed_partition_function(CONIFOLD, (EMPTY, EMPTY), 2)
    for k in range(3):
        assert z.coefficient((k, 0, 0, 0, 0)) == pref.coefficient((k,))
    # single power of the first variable at Q^0
    assert z.coefficient((0, 1, 0, 0, 0)) == inv_bracket(1)


# ---------------------------------------------------------------------------
# general generating functions


def test_z00_multi_matches_two_variable_form():
    got = general_generating_function(CONIFOLD, "z00-multi", 2, 2)
    expect = conifold_two_variable(2, 2, "product")
    assert got == expect


def test_z_alpha_slices_match_direct_gluing():
    za = general_generating_function(CONIFOLD, "z-alpha", 1, 1)
    for a0, aN, exps in ((EMPTY, EMPTY, (0, 0, 0, 0)),
                         (P([1]), EMPTY, (1, 0, 0, 0)),
                         (EMPTY, P([1]), (0, 0, 1, 0)),
                         (P([1]), P([1]), (1, 0, 1, 0))):
        glued = glued_partition_function(
            CONIFOLD, BoundaryData(alpha0=a0, alphaN=aN), 1)
        for (qe,), c in glued.coeffs.items():
            assert za.coefficient((qe,) + exps) == c, (a0, aN)


def test_z_alpha_empty_caps_reduce_to_glued():
    za = general_generating_function(CONIFOLD, "z-alpha", 0, 2)
    glued = glued_partition_function(CONIFOLD, BoundaryData(), 2)
    assert {e[0]: c for e, c in za.coeffs.items()} == \
        {e[0]: c for e, c in glued.coeffs.items()}
