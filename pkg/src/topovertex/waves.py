"""Wave functions of strip geometries and their quantum mirror curves.

Restricting the vertical-leg partition at one vertex to single rows gives
the normalized series Phi_n(x) = 1 + sum a_k x^k; single columns with an
alternating sign give its partner Psi_n(x) = 1 + sum b_k (-x)^k.  Stored
coefficients are always those of x^k in the series itself (so a_k for Phi
and (-1)^k b_k for Psi); the two functions are exchanged by inverting q,
which on coefficients is the substitution v -> 1/v.

The coefficients close in terms of two Laurent polynomials B_n(y), C_n(y)
whose coefficients are Kahler monomials.  The recurrence

    a_k = a_{k-1} q^((k-1)/2) C_n(q^(k-1)) / ([k] B_n(q^(k-1)))

is equivalent to a linear q-difference equation in the shift operator
q^(x d/dx), checked here in cross-multiplied form (never inverting an
operator denominator), and its classical q -> 1 limit is the mirror curve
x = (1 - 1/y) B_n(y)/C_n(y).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import log

from .partitions import EMPTY, Partition
from .qalgebra import (
    MultiSeries,
    QR_ONE,
    QRational,
    SeriesContext,
    bracket,
)
from .schur import VerifyReport
from .web import (
    C3,
    CONIFOLD,
    StripDiagram,
    closed_partition_function,
    strip_context,
)
from .hierarchy import quantum_dilog


class RouteDisagreement(ValueError):
    """Definition and closed-form routes differ: a convention bug somewhere."""


# ---------------------------------------------------------------------------
# the B/C Laurent polynomials and the mirror curve


@dataclass(frozen=True)
class MirrorCurve:
    """x = (1 - 1/y) B(y)/C(y) with B, C Laurent polynomials in y.

    B collects the couplings to same-type vertices, C the opposite-type
    ones; their coefficients are polynomials in the Kahler variables (and
    carry no v-dependence at all).
    """

    strip: StripDiagram
    vertex: int
    B: tuple[tuple[int, MultiSeries], ...]
    C: tuple[tuple[int, MultiSeries], ...]

    def y_inverted(self) -> "MirrorCurve":
        """The same data with y -> 1/y (the partner wave function's curve)."""
        return MirrorCurve(self.strip, self.vertex,
                           tuple((-e, c) for e, c in self.B),
                           tuple((-e, c) for e, c in self.C))

    def eval_float(self, which: str, qvals: dict[str, float], y: float) -> float:
        """Float value of B or C at numeric Kahler parameters and numeric y."""
        data = self.B if which == "B" else self.C
        total = 0.0
        for yexp, qpoly in data:
            for exps, coeff in qpoly.coeffs.items():
                mono = float(coeff.evaluate(1))
                for name, e in zip(qpoly.ctx.variables, exps):
                    if e:
                        mono *= qvals[name] ** e
                total += mono * y ** yexp
        return total

    def curve_x(self, qvals: dict[str, float], y: float) -> float:
        return (1 - 1 / y) * self.eval_float("B", qvals, y) / \
            self.eval_float("C", qvals, y)

    def to_json(self) -> dict:
        def side(data):
            return [[e, qp.to_json()] for e, qp in data]
        return {"vertex": self.vertex, "strip": self.strip.to_json(),
                "B": side(self.B), "C": side(self.C),
                "curve": "x = (1 - y^-1) * B(y) / C(y)"}


def bc_polynomials(strip: StripDiagram, n: int) -> MirrorCurve:
    """Assemble B_n(y) and C_n(y) from the strip data.

    Each other vertex m contributes one factor 1 - Q_(span) y^(+-sigma_n):
    the exponent is +sigma_n for m < n and -sigma_n for m > n, and the
    factor lands in B when sigma_m sigma_n > 0, in C otherwise.
    """
    N = strip.n_vertices
    if not 1 <= n <= N:
        raise ValueError(f"vertex index {n} out of range")
    sig_n = strip.sigma[n - 1]
    cap = sum(abs(m - n) for m in range(1, N + 1))
    ctx = strip_context(strip, max(cap, 1))
    one = MultiSeries.constant(ctx, 1)
    sides = {"B": {0: one}, "C": {0: one}}

    def mul_factor(side: dict, yexp: int, qmono: tuple[int, ...]):
        # multiply sum_e side[e] y^e by (1 - Q^qmono y^yexp)
        out = dict(side)
        for e, qpoly in side.items():
            term = qpoly * MultiSeries.monomial(ctx, qmono, QR_ONE)
            tgt = e + yexp
            out[tgt] = out.get(tgt, MultiSeries.constant(ctx, 0)) - term
        side.clear()
        side.update({e: p for e, p in out.items() if not p.is_zero})

    for m in range(1, N + 1):
        if m == n:
            continue
        if m < n:
            qmono = strip.edge_monomial(m, n - 1)
            yexp = sig_n
        else:
            qmono = strip.edge_monomial(n, m - 1)
            yexp = -sig_n
        which = "B" if strip.sigma[m - 1] * sig_n > 0 else "C"
        mul_factor(sides[which], yexp, qmono)

    pack = lambda d: tuple(sorted((e, p) for e, p in d.items()))
    return MirrorCurve(strip, n, pack(sides["B"]), pack(sides["C"]))


def mirror_curve(strip: StripDiagram, n: int) -> MirrorCurve:
    """The curve x = (1 - 1/y) B_n(y)/C_n(y) with formal Kahler variables."""
    return bc_polynomials(strip, n)


# ---------------------------------------------------------------------------
# wave coefficients, two routes


@dataclass
class WaveSeries:
    """Truncated wave function: coefficient k is that of x^k in the series."""

    kind: str
    vertex: int
    strip: StripDiagram
    coeffs: list[MultiSeries]

    def a(self, k: int) -> MultiSeries:
        """Row-restricted coefficient a_k (only for kind phi)."""
        if self.kind != "phi":
            raise ValueError("a_k lives on the phi side")
        return self.coeffs[k]

    def b(self, k: int) -> MultiSeries:
        """Column-restricted coefficient b_k (only for kind psi)."""
        if self.kind != "psi":
            raise ValueError("b_k lives on the psi side")
        return self.coeffs[k] * ((-1) ** k)

    def to_json(self) -> dict:
        return {"kind": self.kind, "vertex": self.vertex,
                "strip": self.strip.to_json(),
                "coeffs": [c.to_json() for c in self.coeffs]}


def _bc_at_shift(curve: MirrorCurve, i: int, ctx: SeriesContext):
    """(B(q^i), C(q^i)) as series in the target context; y^e -> v^(2ie)."""
    out = []
    for data in (curve.B, curve.C):
        acc = MultiSeries.constant(ctx, 0)
        for yexp, qpoly in data:
            scale = QRational.monomial(2 * i * yexp)
            for exps, coeff in qpoly.coeffs.items():
                if ctx.admits(exps):
                    acc = acc + MultiSeries.monomial(ctx, exps, coeff * scale)
        out.append(acc)
    return out


def _closed_route(strip: StripDiagram, n: int, K: int, qdeg: int) -> list[MultiSeries]:
    ctx = strip_context(strip, qdeg)
    curve = bc_polynomials(strip, n)
    coeffs = [MultiSeries.constant(ctx, 1)]
    for k in range(1, K + 1):
        bval, cval = _bc_at_shift(curve, k - 1, ctx)
        step = QRational.monomial(k - 1) / QRational(bracket(k))
        coeffs.append(coeffs[-1] * cval * bval.inverse() * step)
    return coeffs


def _definition_route(strip: StripDiagram, n: int, kind: str, K: int,
                      qdeg: int) -> list[MultiSeries]:
    N = strip.n_vertices
    empty = closed_partition_function(strip, (EMPTY,) * N, qdeg)
    norm = empty.inverse()
    out = [MultiSeries.constant(norm.ctx, 1)]
    for k in range(1, K + 1):
        shape = Partition([k]) if kind == "phi" else Partition([1] * k)
        betas = [EMPTY] * N
        betas[n - 1] = shape
        z = closed_partition_function(strip, tuple(betas), qdeg)
        coeff = z * norm
        if kind == "psi" and k % 2:
            coeff = -coeff
        out.append(coeff)
    return out


def wave_coefficients(strip: StripDiagram, n: int, kind: str, K: int,
                      qdeg: int) -> WaveSeries:
    """Wave-function coefficients, computed two independent ways.

    The definition route takes ratios of partition functions with a single
    row (phi) or column (psi) on vertex n; the closed route runs the B/C
    recurrence (inverting q for psi).  Disagreement raises RouteDisagreement
    since it signals a framing or orientation bug.  The closed-form values
    are returned.
    """
    if kind not in ("phi", "psi"):
        raise ValueError(f"unknown kind {kind!r}")
    closed = _closed_route(strip, n, K, qdeg)
    if kind == "psi":
        closed = [c.map_coefficients(lambda r: r.reciprocal_v()) for c in closed]
    definition = _definition_route(strip, n, kind, K, qdeg)
    for k, (a, b) in enumerate(zip(closed, definition)):
        if a != b:
            raise RouteDisagreement(
                f"wave coefficient {k} of {kind} at vertex {n} differs "
                f"between the closed form and the partition-function ratio")
    return WaveSeries(kind=kind, vertex=n, strip=strip, coeffs=closed)


# ---------------------------------------------------------------------------
# recurrence and q-difference checks


def verify_recurrence(wave: WaveSeries, K: int | None = None) -> VerifyReport:
    """Check c_k = c_{k-1} * q^((k-1)/2) C(q^(k-1)) / ([k] B(q^(k-1))).

    For the psi side the whole ratio is transported by v -> 1/v, matching
    the inversion of q that exchanges the two wave functions.
    """
    report = VerifyReport(name=f"recurrence-{wave.kind}")
    strip, n = wave.strip, wave.vertex
    curve = bc_polynomials(strip, n)
    ctx = wave.coeffs[0].ctx
    K = K if K is not None else len(wave.coeffs) - 1
    for k in range(1, K + 1):
        bval, cval = _bc_at_shift(curve, k - 1, ctx)
        ratio = cval * bval.inverse() * \
            (QRational.monomial(k - 1) / QRational(bracket(k)))
        if wave.kind == "psi":
            ratio = ratio.map_coefficients(lambda r: r.reciprocal_v())
        expected = wave.coeffs[k - 1] * ratio
        report.record(expected == wave.coeffs[k], {"k": k})
    return report


def verify_qdifference(wave: WaveSeries, K: int | None = None) -> VerifyReport:
    """Cross-multiplied q-difference equation on the stored coefficients.

    phi:  [k] B(q^(k-1)) c_k = q^((k-1)/2) C(q^(k-1)) c_{k-1}
    psi: -[k] B(q^(1-k)) c_k = q^(-(k-1)/2) C(q^(1-k)) c_{k-1}

    The shift operator acts diagonally on x^k, so each power of x gives one
    exact identity of Kahler series; no operator denominator is inverted.
    """
    report = VerifyReport(name=f"qdifference-{wave.kind}")
    strip, n = wave.strip, wave.vertex
    curve = bc_polynomials(strip, n)
    ctx = wave.coeffs[0].ctx
    K = K if K is not None else len(wave.coeffs) - 1
    sign = 1 if wave.kind == "phi" else -1
    for k in range(1, K + 1):
        bval, cval = _bc_at_shift(curve, sign * (k - 1), ctx)
        bracket_k = QRational(bracket(k)) * sign
        shift = QRational.monomial(sign * (k - 1))
        lhs = wave.coeffs[k] * bval * bracket_k
        rhs = wave.coeffs[k - 1] * cval * shift
        ok = lhs == rhs
        info = {"k": k}
        if not ok:
            diff = lhs - rhs
            info["first_bad_order"] = min(sum(e) for e in diff.coeffs)
        report.record(ok, info)
    return report


# ---------------------------------------------------------------------------
# infinite-product forms


def product_form_series(kind: str, K: int, qdeg: int) -> list[MultiSeries]:
    """x-coefficients of the infinite-product wave functions.

    conifold: prod_n (1 - Q q^(-n+1/2) x) / (1 - q^(-n+1/2) x); the
    logarithm resums to sum_d (1 - Q^d) x^d / (d [d]).  c3: the same with
    Q = 0, the quantum dilogarithm at inverted q.
    """
    if kind == "conifold":
        strip = CONIFOLD
    elif kind == "c3":
        strip = C3
    else:
        raise ValueError(f"unknown kind {kind!r}")
    qctx = strip_context(strip, qdeg)
    names = ("x",) + qctx.variables
    ctx = SeriesContext.per_var(names, [K] + [qdeg] * len(qctx.variables))
    expo = MultiSeries.constant(ctx, 0)
    for d in range(1, K + 1):
        inv = QR_ONE / QRational(bracket(d)) * Fraction(1, d)
        xe = [0] * len(names)
        xe[0] = d
        expo = expo + MultiSeries.monomial(ctx, tuple(xe), inv)
        if kind == "conifold" and d <= qdeg:
            xe2 = list(xe)
            xe2[1] = d
            expo = expo - MultiSeries.monomial(ctx, tuple(xe2), inv)
    full = expo.exp()
    # slice into coefficients of x^k, re-expressed in the Kahler-only ring
    out = []
    for k in range(K + 1):
        coeffs = {}
        for exps, c in full.coeffs.items():
            if exps[0] == k:
                coeffs[exps[1:]] = c
        out.append(MultiSeries(qctx, coeffs))
    return out


def product_form_check(kind: str, K: int, qdeg: int | None = None,
                       perturb: bool = False) -> VerifyReport:
    """Compare the product form with the recurrence-built wave function.

    For c3 the product form is also checked against the quantum dilogarithm
    with v -> 1/v.  `perturb` flips the sign of one Kahler coefficient and
    must make the comparison fail (negative control).
    """
    report = VerifyReport(name=f"product-form-{kind}")
    qdeg = qdeg if qdeg is not None else (K if kind == "conifold" else 0)
    strip = CONIFOLD if kind == "conifold" else C3
    wave = wave_coefficients(strip, 1, "phi", K, qdeg)
    prod = product_form_series(kind, K, qdeg)
    if perturb and kind == "conifold":
        bump = MultiSeries.variable(prod[1].ctx, strip.kahler[0])
        prod[1] = prod[1] + bump
    for k in range(K + 1):
        report.record(prod[k] == wave.coeffs[k], {"k": k})
    if kind == "c3":
        dilog = quantum_dilog(K)
        for k in range(K + 1):
            lhs = dilog.coefficient((k,)).reciprocal_v()
            report.record(wave.coeffs[k].constant_term() == lhs,
                          {"k": k, "against": "quantum dilog at 1/q"})
    return report


# ---------------------------------------------------------------------------
# classical limit of the q-difference relation


def classical_mirror_check(strip: StripDiagram, n: int,
                           points=None, tol: float = 1e-8,
                           kind: str = "phi") -> VerifyReport:
    """Numeric q -> 1 limit of the cross-multiplied recurrence vs the curve.

    For a sampled (Kahler values, y) the recurrence ratio at k with
    q^(k-1) = y must approach 1/x(y) on the emitted curve.  The deviation is
    linear in eps = v - 1 but the integer rounding of k jitters the higher
    orders, so the eps -> 0 extrapolation halves eps from 1e-4 a few times
    and Richardson-cancels the linear term on the finest pair.
    """
    report = VerifyReport(name=f"mirror-classical-{kind}")
    curve = bc_polynomials(strip, n)
    target = curve if kind == "phi" else curve.y_inverted()
    if points is None:
        qnames = strip.kahler
        points = [({name: qv for name in qnames}, y)
                  for qv, y in ((0.3, 2.0), (0.2, 3.0), (0.4, 4.0),
                                (0.25, 5.0), (0.35, 8.0))]

    def deviation(eps: float, qvals, y0: float) -> float:
        v = 1.0 + eps
        q = v * v
        k = max(2, round(log(y0) / log(q)) + 1)
        y = q ** (k - 1)
        if kind == "phi":
            xc = (1 - 1 / y) * curve.eval_float("B", qvals, y) / \
                curve.eval_float("C", qvals, y)
            ratio = v ** (k - 1) * curve.eval_float("C", qvals, y) / \
                ((v ** k - v ** (-k)) * curve.eval_float("B", qvals, y))
        else:
            yy = 1.0 / y
            xc = (1 - y) * curve.eval_float("B", qvals, yy) / \
                curve.eval_float("C", qvals, yy)
            ratio = -(v ** (1 - k)) * curve.eval_float("C", qvals, yy) / \
                ((v ** k - v ** (-k)) * curve.eval_float("B", qvals, yy))
        return xc * ratio - 1.0

    for qvals, y0 in points:
        devs = [deviation(1e-4 / 2 ** j, qvals, y0) for j in range(4)]
        extrap = 2 * devs[-1] - devs[-2]
        report.record(abs(extrap) < tol,
                      {"y": y0, "qvals": dict(qvals), "residual": extrap,
                       "sampled": devs[0]})
    return report
