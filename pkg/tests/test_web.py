from fractions import Fraction
from itertools import product

import pytest

from topovertex import (
    BlowUpError,
    BoundaryData,
    C3,
    CONIFOLD,
    EMPTY,
    Partition,
    QRational,
    StripDiagram,
    bracket,
    calibrate_framing,
    closed_partition_function,
    conifold_alternative,
    glued_partition_function,
    macmahon_series,
    regularized_power_sum,
    verify_strip_oracle,
)
from topovertex.partitions import partitions_up_to
from topovertex.qalgebra import QR_ONE
from topovertex.web import conifold_product_formula, default_framing

from oracles import plane_partition_counts, staircase_partial_sum

P = Partition
TOL = Fraction(1, 10 ** 20)


def inv_bracket(k):
    return QR_ONE / QRational(bracket(k))


# ---------------------------------------------------------------------------
# strip data


def test_strip_validation():
    with pytest.raises(ValueError):
        StripDiagram(sigma=())
    with pytest.raises(ValueError):
        StripDiagram(sigma=(1, 2))
    with pytest.raises(ValueError):
        StripDiagram(sigma=(1, -1), framing=(0, 0))
    with pytest.raises(ValueError):
        StripDiagram(sigma=(1, -1), kahler=("Q1", "Q2"))


def test_strip_json_roundtrip():
    strip = StripDiagram(sigma=(1, -1, -1))
    again = StripDiagram.from_json(strip.to_json())
    assert again.sigma == strip.sigma
    assert again.kahler == strip.kahler
    assert again.resolved_framing() == strip.resolved_framing()


def test_edge_monomials():
    strip = StripDiagram(sigma=(1, -1, 1, -1))
    assert strip.edge_monomial(1, 1) == (1, 0, 0)
    assert strip.edge_monomial(2, 3) == (0, 1, 1)


# ---------------------------------------------------------------------------
# regularized power sums


def test_regularized_sum_empty_tail():
    for k in (1, 2, 5):
        assert regularized_power_sum(EMPTY, k) == inv_bracket(k)


def test_regularized_sum_single_box():
    assert regularized_power_sum(P([1]), 1) == \
        QRational(bracket(1)) + inv_bracket(1)


def test_regularized_sum_against_partial_sums():
    v0 = Fraction(2)
    for lam, k in ((P([2, 1]), 2), (P([3]), 1), (P([1, 1, 1]), 3)):
        exact = regularized_power_sum(lam, k).evaluate(v0)
        partial = staircase_partial_sum(lam, k, v0, 500)
        assert abs(Fraction(exact) - partial) < TOL, (lam, k)


# ---------------------------------------------------------------------------
# closed formula vs glued sum


def test_single_vertex_has_no_kahler_dependence():
    z = closed_partition_function(C3, (P([2, 1]),), 3)
    assert list(z.coeffs) == [()]
    from topovertex import schur_hook
    assert z.coefficient(()) == schur_hook(P([2, 1]))


def test_conifold_first_order_coefficient():
    z = closed_partition_function(CONIFOLD, (EMPTY, EMPTY), 3)
    assert z.coefficient((1,)) == -(inv_bracket(1) * inv_bracket(1))


def test_decoupling_limit_is_schur_product():
    from topovertex import schur_hook
    for sigma in product((1, -1), repeat=3):
        strip = StripDiagram(sigma=sigma)
        betas = (P([1]), P([2]), EMPTY)
        z = closed_partition_function(strip, betas, 2)
        expect = schur_hook(P([1])) * schur_hook(P([2]))
        assert z.coefficient((0, 0)) == expect


def test_glued_equals_closed_conifold_degree_four():
    for b1 in partitions_up_to(2):
        for b2 in partitions_up_to(2):
            glued = glued_partition_function(
                CONIFOLD, BoundaryData(betas=(b1, b2)), 4)
            closed = closed_partition_function(CONIFOLD, (b1, b2), 4)
            assert glued == closed, (b1, b2)


def test_strip_oracle_n3():
    report = verify_strip_oracle(n_max=3, qdeg=3, beta_weight=2)
    assert report.ok, report.mismatches[:3]


def test_blow_up_guard():
    with pytest.raises(BlowUpError):
        glued_partition_function(CONIFOLD, BoundaryData(), 6, max_configs=5)


def test_nontrivial_boundary_matches_two_leg_reduction():
    # with both external legs on, degree-0 term is C(a0-leg) x C(aN-leg)
    from topovertex import topological_vertex
    a0, aN = P([1]), P([2])
    glued = glued_partition_function(
        CONIFOLD, BoundaryData(alpha0=a0, alphaN=aN, betas=(EMPTY, EMPTY)), 1)
    c1 = topological_vertex(EMPTY, EMPTY, a0)
    c2 = topological_vertex(aN, EMPTY, EMPTY)
    assert glued.coefficient((0,)) == c1 * c2


# ---------------------------------------------------------------------------
# framing calibration


def test_default_framing_rule():
    assert default_framing((1, -1)) == (0,)
    assert default_framing((1, 1)) == (-1,)
    assert default_framing((-1, -1)) == (1,)
    assert default_framing((1, 1, -1)) == (-1, 0)


def test_calibration_recovers_frozen_framing():
    for n in (2, 3):
        for sigma in product((1, -1), repeat=n):
            passing = calibrate_framing(sigma, qdeg=2, return_all=True)
            assert passing == [default_framing(sigma)], sigma


# ---------------------------------------------------------------------------
# conifold alternative expression


def test_alternative_empty_betas_is_prefactor():
    alt = conifold_alternative(EMPTY, EMPTY, 4)
    prod = conifold_product_formula(EMPTY, EMPTY, 4)
    assert alt == prod


@pytest.mark.parametrize("b1,b2", [(P([1]), EMPTY), (P([1]), P([1])),
                                   (P([2]), P([1, 1]))])
def test_alternative_matches_product_and_gluing(b1, b2):
    alt = conifold_alternative(b1, b2, 3)
    prod = conifold_product_formula(b1, b2, 3)
    glued = glued_partition_function(CONIFOLD, BoundaryData(betas=(b1, b2)), 3)
    assert alt == prod == glued


# ---------------------------------------------------------------------------
# MacMahon function


def test_macmahon_routes_agree():
    assert macmahon_series(5, "factor") == macmahon_series(5, "double")


def test_macmahon_normalization():
    m = macmahon_series(3)
    assert m.coefficient((0,)).is_one


def test_macmahon_counts_plane_partitions():
    # volume-graded specialization against the brute-force enumerator
    m = macmahon_series(5)
    counts = {}
    for k in range(6):
        for e, c in m.coefficient((k,)).power_series_v(10).items():
            assert e >= 0 and e % 2 == 0
            counts[e // 2] = counts.get(e // 2, 0) + c
    expected = plane_partition_counts(5)
    assert [counts.get(i, 0) for i in range(6)] == expected


def test_conifold_prefactor_is_inverse_macmahon_inverted_q():
    inv = macmahon_series(4).map_coefficients(
        lambda c: c.reciprocal_v()).inverse()
    pref = conifold_product_formula(EMPTY, EMPTY, 4)
    for k in range(5):
        assert inv.coefficient((k,)) == pref.coefficient((k,))
