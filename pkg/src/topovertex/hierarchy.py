"""Generating functions of strip partition functions and their KP structure.

Summing a vertical-leg partition against Schur polynomials of a variable set
x produces a function of the KP time variables t_k = (power sum of x)/k.
The Schur-expansion coefficients factor through two diagonal families f_k,
g_k attached to the chosen vertex; here they are evaluated exactly per
Kahler degree by splitting every infinite product into the rows of the
partition (head) and a geometric tail that resums in closed form.

The KP property itself is probed through the lowest Hirota bilinear
equation (D1^4 + 3 D2^2 - 4 D1 D3) tau . tau = 0, expanded as an exact
polynomial identity in t1, t2, t3.  The probe is validated on taus that are
known solutions (exponentials of linear forms, single Schur polynomials)
before being applied to anything produced by a strip.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product as iter_product
from math import comb

from .partitions import EMPTY, Partition, partitions_of_weight, partitions_up_to
from .qalgebra import (
    MultiSeries,
    QR_ONE,
    QRational,
    SeriesContext,
    bracket,
)
from .schur import (
    Q_RHO,
    VerifyReport,
    schur_in_times,
    skew_schur,
    times_context,
)
from .web import (
    CONIFOLD,
    BoundaryData,
    StripDiagram,
    closed_partition_function,
    glued_partition_function,
    strip_context,
)


# ---------------------------------------------------------------------------
# the one-vertex generating function and the quantum dilogarithm


def c3_generating_function(trunc: int, route: str = "exp") -> MultiSeries:
    """Generating function of single-vertex amplitudes in time variables.

    The exp route evaluates exp(sum_k t_k / [k]); the schur route sums
    s_lam(q^rho) s_lam(t) over |lam| <= trunc.  Both agree exactly, which
    pins the normalization of the time variables.
    """
    ctx = times_context(trunc, trunc)
    if route == "exp":
        expo = MultiSeries.constant(ctx, 0)
        for k in range(1, trunc + 1):
            expo = expo + MultiSeries.variable(ctx, f"t{k}",
                                               QR_ONE / QRational(bracket(k)))
        return expo.exp()
    if route == "schur":
        total = MultiSeries.constant(ctx, 0)
        for lam in partitions_up_to(trunc):
            total = total + schur_in_times(lam, EMPTY, ctx) * \
                skew_schur(lam, EMPTY, Q_RHO)
        return total
    raise ValueError(f"unknown route {route!r}")


def quantum_dilog(trunc: int, route: str = "exp") -> MultiSeries:
    """The quantum dilogarithm prod_j (1 - x q^(j-1/2))^(-1) as an x-series.

    Both routes reduce to exp(-sum_k x^k/(k[k])): one directly from the
    exponential form, the other by resumming the logarithm of the product
    over j as a geometric series.
    """
    ctx = SeriesContext.per_var(("x",), trunc)
    expo = MultiSeries.constant(ctx, 0)
    for k in range(1, trunc + 1):
        if route == "exp":
            coeff = -QR_ONE / QRational(bracket(k)) * Fraction(1, k)
        elif route == "product":
            # sum_j q^(k(j-1/2)) resums to v^k/(1 - v^(2k)) = -1/[k]
            geom = QRational.monomial(k) / (QR_ONE - QRational.monomial(2 * k))
            coeff = geom * Fraction(1, k)
        else:
            raise ValueError(f"unknown route {route!r}")
        expo = expo + MultiSeries.monomial(ctx, (k,), coeff)
    return expo.exp()


# ---------------------------------------------------------------------------
# tau coefficients through the diagonal f/g factors


def _geom_tail(d: int) -> QRational:
    """1/(1 - q^(-d)) as an exact rational function."""
    return QR_ONE / (QR_ONE - QRational.monomial(-2 * d))


def _coupling_sum(lam: Partition, d: int) -> QRational:
    """Row head plus telescoping tail of log prod_i prod_j (1-c q^(k_i-j)).

    For k_i = lam_i - i + 1 the inner j-product contributes
    q^(d(lam_i-i)) G(d) per row, and the rows beyond the length of lam
    telescope into q^(-dL) q^(-d) G(d)^2, with G(d) = 1/(1-q^(-d)).
    """
    g = _geom_tail(d)
    head = QRational.from_int(0)
    for i in range(1, lam.length + 1):
        head = head + QRational.monomial(2 * d * (lam.part(i) - i))
    tail = QRational.monomial(-2 * d * lam.length - 2 * d) * g
    return (head + tail) * g


def tau_coefficients(strip: StripDiagram, n: int, weight_cap: int,
                     qdeg: int) -> dict[Partition, MultiSeries]:
    """Schur-expansion coefficients a_lam of the vertex-n generating function.

    a_lam = s_lam(q^rho) prod_i f_(lam_i-i+1) prod_i g_(lam'_i-i+1), with the
    f/g products taken exactly per Kahler degree, times the lam-independent
    factor from vertex pairs that avoid n (so a_lam is the partition-function
    value itself).  At Q = 0 every factor is 1 and a_lam reduces to the
    hook-formula value.
    """
    N = strip.n_vertices
    if not 1 <= n <= N:
        raise ValueError(f"vertex index {n} out of range")
    ctx = strip_context(strip, qdeg)
    sig_n = strip.sigma[n - 1]
    # vertex pairs that do not touch n contribute a lam-independent factor;
    # including it makes a_lam the partition-function value itself
    spectator = MultiSeries.constant(ctx, 0)
    for m in range(1, N + 1):
        for m2 in range(m + 1, N + 1):
            if n in (m, m2):
                continue
            mono = strip.edge_monomial(m, m2 - 1)
            span = m2 - m
            sgn = strip.sigma[m - 1] * strip.sigma[m2 - 1]
            d = 1
            while d * span <= qdeg:
                coeff = _coupling_sum(EMPTY, d) * Fraction(sgn, d)
                spectator = spectator + MultiSeries.monomial(
                    ctx, tuple(d * e for e in mono), coeff)
                d += 1
    out: dict[Partition, MultiSeries] = {}
    for lam in partitions_up_to(weight_cap):
        expo = MultiSeries.constant(ctx, 0)
        tplam = lam.conjugate()
        for m in range(1, N + 1):
            if m == n:
                continue
            mono = strip.edge_monomial(min(m, n), max(m, n) - 1)
            span = abs(m - n)
            sgn = strip.sigma[m - 1] * sig_n
            # rows couple to the edges on one side of the vertex, columns to
            # the other; which side is which flips with the vertex type
            side = lam if (sig_n == 1) == (m < n) else tplam
            d = 1
            while d * span <= qdeg:
                coeff = _coupling_sum(side, d) * Fraction(sgn, d)
                expo = expo + MultiSeries.monomial(
                    ctx, tuple(d * e for e in mono), coeff)
                d += 1
        out[lam] = (expo + spectator).exp() * skew_schur(lam, EMPTY, Q_RHO)
    return out


# ---------------------------------------------------------------------------
# Hirota bilinear probe


def hirota_residual(tau: MultiSeries) -> MultiSeries:
    """(D1^4 + 3 D2^2 - 4 D1 D3) tau . tau in Hirota form.

    D-monomials expand through the product rule with alternating signs:
    D_x^n f.g = sum_j (-1)^j C(n,j) (d^(n-j) f)(d^j g).
    """
    d1 = [tau]
    for _ in range(4):
        d1.append(d1[-1].derivative("t1"))
    d2 = [tau, tau.derivative("t2")]
    d2.append(d2[-1].derivative("t2"))
    d3 = [tau, tau.derivative("t3")]
    d13 = [[d3[a].derivative("t1") if b else d3[a] for a in (0, 1)] for b in (0, 1)]

    res = None
    for j in range(5):
        term = d1[4 - j] * d1[j] * Fraction((-1) ** j * comb(4, j))
        res = term if res is None else res + term
    for j in range(3):
        res = res + d2[2 - j] * d2[j] * Fraction(3 * (-1) ** j * comb(2, j))
    for j1 in (0, 1):
        for j3 in (0, 1):
            term = d13[1 - j1][1 - j3] * d13[j1][j3] * \
                Fraction(-4 * (-1) ** (j1 + j3))
            res = res + term
    return res


def _tau_context(strip: StripDiagram | None, qdeg: int, t_cap: int) -> SeriesContext:
    names = (strip.kahler if strip is not None else ()) + ("t1", "t2", "t3")
    nq = len(names) - 3
    cons = []
    if nq:
        cons.append(((1,) * nq + (0, 0, 0), qdeg))
    cons.append(((0,) * nq + (1, 2, 3), t_cap))
    return SeriesContext(names, tuple(cons))


def build_tau(coeffs: dict[Partition, MultiSeries], ctx: SeriesContext) -> MultiSeries:
    """tau(t) = sum_lam a_lam s_lam(t) in a combined Kahler/time context."""
    tau = MultiSeries.constant(ctx, 0)
    for lam, a in coeffs.items():
        tau = tau + a.embed(ctx) * schur_in_times(lam, EMPTY, ctx)
    return tau


def hirota_check(strip: StripDiagram, n: int, t_degree: int = 6,
                 qdeg: int = 2,
                 mutate: Partition | None = None) -> VerifyReport:
    """Residual of the lowest Hirota equation for a strip generating function.

    The tau polynomial needs coefficients through weight t_degree + 4 for the
    residual to be exact through total t-weight t_degree.  `mutate` bumps one
    Schur coefficient by 1 and serves as the negative control.
    """
    report = VerifyReport(name="hirota")
    coeffs = tau_coefficients(strip, n, t_degree + 4, qdeg)
    if mutate is not None:
        ctx0 = strip_context(strip, qdeg)
        coeffs = dict(coeffs)
        coeffs[mutate] = coeffs[mutate] + MultiSeries.constant(ctx0, 1)
    ctx = _tau_context(strip, qdeg, t_degree + 4)
    tau = build_tau(coeffs, ctx)
    res = hirota_residual(tau)
    nq = len(ctx.variables) - 3
    res = res.restrict((0,) * nq + (1, 2, 3), t_degree)
    report.record(res.is_zero, {"residual_terms": len(res.coeffs)})
    return report


def trivial_exponential_tau(t_degree: int) -> MultiSeries:
    """exp(c1 t1 + c2 t2 + c3 t3) with symbolic linear coefficients.

    Built through t-weight t_degree + 4, the margin the Hirota residual
    consumes; restrict the residual to t_degree before judging it.
    """
    cap = t_degree + 4
    names = ("c1", "c2", "c3", "t1", "t2", "t3")
    cons = (((0, 0, 0, 1, 2, 3), cap),
            ((1, 0, 0, 0, 0, 0), cap),
            ((0, 1, 0, 0, 0, 0), cap // 2),
            ((0, 0, 1, 0, 0, 0), cap // 3))
    ctx = SeriesContext(names, cons)
    expo = MultiSeries.constant(ctx, 0)
    for i in (1, 2, 3):
        e = [0] * 6
        e[i - 1] = 1
        e[i + 2] = 1
        expo = expo + MultiSeries.monomial(ctx, tuple(e), QR_ONE)
    return expo.exp()


# ---------------------------------------------------------------------------
# explicit-variable generating functions


def _finite_h(ctx: SeriesContext, names: tuple[str, ...], k: int) -> MultiSeries:
    """Complete homogeneous polynomial of degree k in explicit variables."""
    if k < 0:
        return MultiSeries.constant(ctx, 0)
    acc = MultiSeries.constant(ctx, 1)
    if k == 0:
        return acc
    out = MultiSeries.constant(ctx, 0)

    def gen(i: int, rest: int, exps: dict):
        nonlocal out
        if i == len(names):
            if rest == 0:
                e = [0] * len(ctx.variables)
                for nm, x in exps.items():
                    e[ctx.index(nm)] = x
                out = out + MultiSeries.monomial(ctx, tuple(e), QR_ONE)
            return
        for x in range(rest + 1):
            if i == len(names) - 1 and x != rest:
                continue
            gen(i + 1, rest - x, {**exps, names[i]: x})

    gen(0, k, {})
    return out


def finite_schur(ctx: SeriesContext, names: tuple[str, ...], lam: Partition,
                 cache: dict | None = None) -> MultiSeries:
    """Schur polynomial of explicit series variables via Jacobi-Trudi."""
    from .schur import det_ring

    if lam == EMPTY:
        return MultiSeries.constant(ctx, 1)
    if lam.length > len(names):
        return MultiSeries.constant(ctx, 0)
    n = lam.length
    hs: dict[int, MultiSeries] = {}

    def h(k: int) -> MultiSeries:
        if k not in hs:
            if cache is not None and (names, k) in cache:
                hs[k] = cache[(names, k)]
            else:
                hs[k] = _finite_h(ctx, names, k)
                if cache is not None:
                    cache[(names, k)] = hs[k]
        return hs[k]

    rows = [[h(lam.part(i) - i + j) for j in range(1, n + 1)]
            for i in range(1, n + 1)]
    return det_ring(rows)


def conifold_two_variable(k_deg: int, qdeg: int, route: str = "product",
                          n_explicit: int = 2) -> MultiSeries:
    """Two-sided conifold generating function with explicit x variables.

    Three routes must agree: the factorized product, its exponential form in
    the two families of time variables, and the brute-force Schur sum over
    vertical-leg partitions.
    """
    x1 = tuple(f"x1_{i}" for i in range(1, n_explicit + 1))
    x2 = tuple(f"x2_{i}" for i in range(1, n_explicit + 1))
    qv = CONIFOLD.kahler[0]
    names = (qv,) + x1 + x2
    base = SeriesContext.per_var(names, [qdeg] + [k_deg] * (2 * n_explicit))
    base = base.extend(x1, k_deg).extend(x2, k_deg)

    if route == "schur":
        total = MultiSeries.constant(base, 0)
        cache: dict = {}
        for w1 in range(k_deg + 1):
            for b1 in partitions_of_weight(w1):
                if b1.length > n_explicit:
                    continue
                s1 = finite_schur(base, x1, b1, cache)
                for w2 in range(k_deg + 1):
                    for b2 in partitions_of_weight(w2):
                        if b2.length > n_explicit:
                            continue
                        z = closed_partition_function(CONIFOLD, (b1, b2), qdeg)
                        s2 = finite_schur(base, x2, b2, cache)
                        total = total + z.embed(base) * s1 * s2
        return total

    def xvar(name: str) -> MultiSeries:
        return MultiSeries.variable(base, name)

    qvar = xvar(qv)
    if route == "product":
        expo = MultiSeries.constant(base, 0)
        for d in range(1, qdeg + 1):
            inv = QR_ONE / QRational(bracket(d))
            expo = expo + MultiSeries.monomial(
                base, (d,) + (0,) * (2 * n_explicit), inv * inv * Fraction(-1, d))
        for nm in x1 + x2:
            x = xvar(nm)
            for d in range(1, k_deg + 1):
                inv = QR_ONE / QRational(bracket(d)) * Fraction(1, d)
                expo = expo + x ** d * inv
                expo = expo - (qvar * x) ** d * inv
        z = expo.exp()
        for a in x1:
            for b in x2:
                z = z * (MultiSeries.constant(base, 1) - qvar * xvar(a) * xvar(b))
        return z

    if route == "exponential":
        expo = MultiSeries.constant(base, 0)
        for d in range(1, qdeg + 1):
            inv = QR_ONE / QRational(bracket(d))
            expo = expo + MultiSeries.monomial(
                base, (d,) + (0,) * (2 * n_explicit), inv * inv * Fraction(-1, d))
        for k in range(1, k_deg + 1):
            t1k = sum((xvar(nm) ** k for nm in x1), MultiSeries.constant(base, 0)) \
                * Fraction(1, k)
            t2k = sum((xvar(nm) ** k for nm in x2), MultiSeries.constant(base, 0)) \
                * Fraction(1, k)
            inv = QR_ONE / QRational(bracket(k))
            one_minus_qk = MultiSeries.constant(base, 1) - qvar ** k
            expo = expo + one_minus_qk * (t1k + t2k) * inv
            expo = expo - qvar ** k * t1k * t2k * Fraction(k)
        return expo.exp()

    raise ValueError(f"unknown route {route!r}")


def general_generating_function(strip: StripDiagram, which: str, wcap: int,
                                qdeg: int, n_explicit: int = 2,
                                betas=None) -> MultiSeries:
    """Brute-force multivariate generating functions of strip amplitudes.

    which = "z00-multi": sum over all vertical-leg partitions against one
    explicit variable family per vertex.  which = "z-alpha": fixed verticals,
    sum over the far-left/far-right boundary partitions against families
    y and z.  Small truncations only; no integrability claim is attached.
    """
    N = strip.n_vertices
    if which == "z00-multi":
        fams = tuple(tuple(f"x{n}_{i}" for i in range(1, n_explicit + 1))
                     for n in range(1, N + 1))
        names = strip.kahler + tuple(v for fam in fams for v in fam)
        base = SeriesContext.per_var(names, [qdeg] * len(strip.kahler) +
                                     [wcap] * (N * n_explicit))
        for fam in fams:
            base = base.extend(fam, wcap)
        cache: dict = {}
        total = MultiSeries.constant(base, 0)
        pool = [b for b in partitions_up_to(wcap) if b.length <= n_explicit]
        for combo in iter_product(pool, repeat=N):
            z = closed_partition_function(strip, combo, qdeg).embed(base)
            for fam, b in zip(fams, combo):
                z = z * finite_schur(base, fam, b, cache)
            total = total + z
        return total

    if which == "z-alpha":
        betas = tuple(betas) if betas is not None else (EMPTY,) * N
        y = tuple(f"y{i}" for i in range(1, n_explicit + 1))
        z_ = tuple(f"z{i}" for i in range(1, n_explicit + 1))
        names = strip.kahler + y + z_
        base = SeriesContext.per_var(names, [qdeg] * len(strip.kahler) +
                                     [wcap] * (2 * n_explicit))
        base = base.extend(y, wcap).extend(z_, wcap)
        cache: dict = {}
        total = MultiSeries.constant(base, 0)
        pool = [a for a in partitions_up_to(wcap) if a.length <= n_explicit]
        for a0 in pool:
            for aN in pool:
                glued = glued_partition_function(
                    strip, BoundaryData(alpha0=a0, alphaN=aN, betas=betas), qdeg)
                term = glued.embed(base) * finite_schur(base, y, a0, cache) \
                    * finite_schur(base, z_, aN, cache)
                total = total + term
        return total

    raise ValueError(f"unknown generating function {which!r}")
