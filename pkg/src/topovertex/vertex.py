"""The topological vertex and its symmetry checks.

C(alpha, beta, gamma) is the three-partition amplitude

    s_beta(q^rho) q^(kappa(gamma)/2)
        sum_nu s_{alpha/nu}(q^(beta'+rho)) s_{gamma'/nu}(q^(beta+rho)),

a finite sum because the skew terms vanish unless nu fits inside both alpha
and the conjugate of gamma.  Cyclic symmetry in the three legs is verified
here, not proved.
"""

from __future__ import annotations

from .partitions import EMPTY, Partition, intersect, partitions_up_to, subpartitions
from .qalgebra import QR_ZERO, QRational
from .schur import Q_RHO, Spec, VerifyReport, skew_schur


_VERTEX_CACHE: dict[tuple, QRational] = {}


def topological_vertex(alpha: Partition, beta: Partition, gamma: Partition) -> QRational:
    """Exact vertex amplitude for the clockwise leg partitions."""
    key = (alpha.parts, beta.parts, gamma.parts)
    got = _VERTEX_CACHE.get(key)
    if got is not None:
        return got
    spec_bt = Spec.staircase(beta.conjugate())
    spec_b = Spec.staircase(beta)
    tp_gamma = gamma.conjugate()
    total = QR_ZERO
    for nu in subpartitions(intersect(alpha, tp_gamma)):
        total = total + skew_schur(alpha, nu, spec_bt) * skew_schur(tp_gamma, nu, spec_b)
    val = skew_schur(beta, EMPTY, Q_RHO) * QRational.monomial(gamma.kappa) * total
    _VERTEX_CACHE[key] = val
    return val


def two_leg_forms(alpha: Partition, beta: Partition, which: str) -> QRational:
    """Closed forms of the vertex with one empty leg; independent oracles.

    which selects the slot pattern: "ab0" for C(alpha,beta,empty),
    "0ab" for C(empty,alpha,beta), "b0a" for C(beta,empty,alpha).
    """
    if which == "ab0":
        return skew_schur(beta, EMPTY, Q_RHO) * \
            skew_schur(alpha, EMPTY, Spec.staircase(beta.conjugate()))
    if which == "0ab":
        return skew_schur(alpha, EMPTY, Q_RHO) * QRational.monomial(beta.kappa) * \
            skew_schur(beta.conjugate(), EMPTY, Spec.staircase(alpha))
    if which == "b0a":
        tp_alpha = alpha.conjugate()
        total = QR_ZERO
        for nu in subpartitions(intersect(beta, tp_alpha)):
            total = total + skew_schur(beta, nu, Q_RHO) * skew_schur(tp_alpha, nu, Q_RHO)
        return QRational.monomial(alpha.kappa) * total
    raise ValueError(f"unknown two-leg pattern {which!r}")


def two_leg_identity(alpha: Partition, beta: Partition) -> tuple[QRational, QRational, QRational]:
    """The three expressions whose equality encodes two-leg cyclic symmetry.

    Returns (s_a(q^rho) s_b(q^(a+rho)),
             q^((kappa(a)+kappa(b))/2) sum_nu s_{a'/nu} s_{b'/nu} at q^rho,
             s_b(q^rho) s_a(q^(b+rho))).
    """
    left = skew_schur(alpha, EMPTY, Q_RHO) * \
        skew_schur(beta, EMPTY, Spec.staircase(alpha))
    tp_a, tp_b = alpha.conjugate(), beta.conjugate()
    total = QR_ZERO
    for nu in subpartitions(intersect(tp_a, tp_b)):
        total = total + skew_schur(tp_a, nu, Q_RHO) * skew_schur(tp_b, nu, Q_RHO)
    middle = QRational.monomial(alpha.kappa + beta.kappa) * total
    right = skew_schur(beta, EMPTY, Q_RHO) * \
        skew_schur(alpha, EMPTY, Spec.staircase(beta))
    return left, middle, right


def verify_cyclic(weight_max: int) -> VerifyReport:
    """Exhaustive check of C(a,b,c) = C(b,c,a) = C(c,a,b) up to a weight cap.

    Also runs the two-leg identity chain on every pair, which exercises the
    kappa sign flip under conjugation.
    """
    report = VerifyReport(name="cyclic-symmetry")
    pool = list(partitions_up_to(weight_max))
    for a in pool:
        for b in pool:
            for c in pool:
                v1 = topological_vertex(a, b, c)
                v2 = topological_vertex(b, c, a)
                v3 = topological_vertex(c, a, b)
                report.record(v1 == v2 == v3,
                              {"triple": [a.to_json(), b.to_json(), c.to_json()],
                               "values": [v1.to_json(), v2.to_json(), v3.to_json()]})
    for a in pool:
        for b in pool:
            l, m, r = two_leg_identity(a, b)
            report.record(l == m == r,
                          {"two_leg_pair": [a.to_json(), b.to_json()],
                           "values": [l.to_json(), m.to_json(), r.to_json()]})
    return report
