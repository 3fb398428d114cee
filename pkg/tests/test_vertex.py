from topovertex import (
    EMPTY,
    LaurentPoly,
    Partition,
    QRational,
    Q_RHO,
    Spec,
    schur_hook,
    skew_schur,
    topological_vertex,
    two_leg_forms,
    verify_cyclic,
)
from topovertex.partitions import partitions_up_to
from topovertex.vertex import two_leg_identity

P = Partition


def test_empty_vertex_is_one():
    assert topological_vertex(EMPTY, EMPTY, EMPTY).is_one


def test_single_vertical_leg_is_schur_value():
    for beta in (P([1]), P([2, 1]), P([3, 1, 1])):
        assert topological_vertex(EMPTY, beta, EMPTY) == schur_hook(beta)


def test_single_first_leg():
    # C(alpha, -, -) collapses to the nu = empty term
    assert topological_vertex(P([1]), EMPTY, EMPTY) == schur_hook(P([1]))


def test_two_leg_forms_match_direct_evaluation():
    pool = list(partitions_up_to(4))
    for a in pool:
        for b in pool:
            assert topological_vertex(a, b, EMPTY) == two_leg_forms(a, b, "ab0")
            assert topological_vertex(EMPTY, a, b) == two_leg_forms(a, b, "0ab")
            assert topological_vertex(b, EMPTY, a) == two_leg_forms(a, b, "b0a")


def test_two_leg_special_cases():
    # C(-, a, b) with a empty leaves the framing-weighted conjugate value
    b = P([2, 1])
    expect = QRational.monomial(b.kappa) * schur_hook(b.conjugate())
    assert two_leg_forms(EMPTY, b, "0ab") == expect
    # C(b, -, a) with b empty and a a single box
    assert two_leg_forms(P([1]), EMPTY, "b0a") == schur_hook(P([1]))


def test_two_leg_identity_examples():
    l, m, r = two_leg_identity(P([2]), P([1, 1]))
    assert l == m == r
    l, m, r = two_leg_identity(P([1]), P([1]))
    inv1 = QRational(LaurentPoly(1)) / QRational(LaurentPoly({1: 1, -1: -1}))
    assert l == inv1 * inv1 + 1


def test_two_leg_identity_weight_4():
    pool = list(partitions_up_to(4))
    for a in pool:
        for b in pool:
            l, m, r = two_leg_identity(a, b)
            assert l == m == r, (a, b)


def test_vertex_uses_staircase_specializations():
    # one nontrivial value pinned through an independent assembly
    a, b, g = P([1]), P([1]), EMPTY
    direct = topological_vertex(a, b, g)
    expect = skew_schur(b, EMPTY, Q_RHO) * \
        skew_schur(a, EMPTY, Spec.staircase(b.conjugate()))
    assert direct == expect


def test_cyclic_small():
    report = verify_cyclic(1)
    assert report.ok


def test_cyclic_weight_two_exhaustive():
    report = verify_cyclic(2)
    assert report.ok
    # 4 partitions of weight <= 2: 64 triples plus 16 two-leg pairs
    assert report.checked == 64 + 16


def test_c111_regression_value():
    # pinned once from two independent cyclic rotations of the implementation
    v = topological_vertex(P([1]), P([1]), P([1]))
    num = LaurentPoly({-1: -1, 1: 1, 3: -1, 5: 1, 7: -1})
    den = LaurentPoly({0: 1, 2: -3, 4: 3, 6: -1})
    assert v == QRational(num, den)
    assert v == topological_vertex(P([1]), P([1]), P([1]))
