"""Schur and skew Schur functions at principal-type specializations.

All specialized values are produced through generating functions of the
complete/elementary symmetric functions h_k, e_k: a finite head of explicit
variables times the exact closed form for a geometric tail x_i = v^(1-2i),
then the Jacobi-Trudi determinant.  This route terminates and is exact even
for the infinite specializations; semi-standard-tableau enumeration is kept
only as a test oracle for finite variable lists.

The formal grading scale (a Kahler parameter Q attached to every variable)
is never substituted numerically: by homogeneity a skew Schur function of a
Q-scaled specialization is Q^(|lam|-|mu|) times the unscaled value, so the
Q-dependence is carried as an exact series variable.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction

from .partitions import EMPTY, Partition, intersect, partitions_of_weight, subpartitions
from .qalgebra import (
    LaurentPoly,
    MultiSeries,
    QR_ONE,
    QR_ZERO,
    QRational,
    SeriesContext,
    bracket,
)


# ---------------------------------------------------------------------------
# specializations


@dataclass(frozen=True)
class Spec:
    """A symmetric-function specialization.

    head   -- explicit values of the leading variables x_1 .. x_h
    tail   -- if true, x_i = v^(1-2i) for every i beyond the head
    scale  -- exact multiplier applied to every variable
    formal -- optional name of a degree-1 grading variable attached to the
              scale (used for the formal -Q q^rho specialization)
    """

    head: tuple[QRational, ...] = ()
    tail: bool = False
    scale: QRational = QR_ONE
    formal: str | None = None

    @staticmethod
    def staircase(beta: Partition = EMPTY) -> "Spec":
        """The shifted staircase point x_i = v^(2*beta_i - 2i + 1).

        With beta empty this is the principal specialization q^rho.
        """
        head = tuple(QRational.monomial(2 * beta.part(i) - 2 * i + 1)
                     for i in range(1, beta.length + 1))
        return Spec(head=head, tail=True)

    @staticmethod
    def finite(values) -> "Spec":
        return Spec(head=tuple(_coerce(v) for v in values), tail=False)

    @staticmethod
    def zero() -> "Spec":
        return Spec()

    def scaled(self, c, formal: str | None = None) -> "Spec":
        return replace(self, scale=self.scale * _coerce(c),
                       formal=formal if formal is not None else self.formal)

    def base(self) -> "Spec":
        """The same specialization with the formal grading stripped."""
        return replace(self, formal=None)


def _coerce(v) -> QRational:
    if isinstance(v, QRational):
        return v
    if isinstance(v, LaurentPoly):
        return QRational(v)
    return QRational(LaurentPoly(Fraction(v)))


Q_RHO = Spec.staircase()

_RATIO = QRational.monomial(-2)  # common ratio v^(-2) of the geometric tail


def power_sum(spec: Spec, d: int) -> QRational:
    """Exact power sum sum_i x_i^d of the specialized variables."""
    if spec.formal is not None:
        raise ValueError("power_sum needs a numeric specialization")
    if d < 1:
        raise ValueError("power sums need d >= 1")
    total = QR_ZERO
    for x in spec.head:
        total = total + x ** d
    if spec.tail:
        h = len(spec.head)
        lead = QRational.monomial(-d * (2 * h + 1))
        total = total + lead / (QR_ONE - QRational.monomial(-2 * d))
    return total * spec.scale ** d


_H_CACHE: dict[Spec, list[QRational]] = {}
_E_CACHE: dict[Spec, list[QRational]] = {}


def _tail_series(spec: Spec, K: int, kind: str) -> list[QRational]:
    """h_k or e_k of the pure geometric tail, as exact closed forms."""
    if not spec.tail:
        return [QR_ONE] + [QR_ZERO] * K
    h = len(spec.head)
    lead = QRational.monomial(-(2 * h + 1))
    out = [QR_ONE]
    denom = QR_ONE
    for k in range(1, K + 1):
        denom = denom * (QR_ONE - _RATIO ** k)
        val = lead ** k / denom
        if kind == "e":
            val = val * _RATIO ** (k * (k - 1) // 2)
        out.append(val)
    return out


def _conv_head(coeffs: list[QRational], spec: Spec, K: int, kind: str) -> list[QRational]:
    """Multiply a z-series by the head factors of the generating function.

    For h: each head variable contributes 1/(1 - x z); for e: (1 + x z).
    """
    for x in spec.head:
        if kind == "h":
            new = list(coeffs)
            for k in range(1, K + 1):
                new[k] = new[k] + x * new[k - 1]
            coeffs = new
        else:
            new = list(coeffs)
            for k in range(K, 0, -1):
                new[k] = new[k] + x * coeffs[k - 1]
            coeffs = new
    return coeffs


def _symmetric_list(spec: Spec, K: int, kind: str) -> list[QRational]:
    cache = _H_CACHE if kind == "h" else _E_CACHE
    got = cache.get(spec)
    if got is not None and len(got) > K:
        return got
    base = replace(spec, scale=QR_ONE, formal=None)
    coeffs = _tail_series(base, K, kind)
    coeffs = _conv_head(coeffs, base, K, kind)
    if not spec.scale.is_one:
        coeffs = [c * spec.scale ** k for k, c in enumerate(coeffs)]
    cache[spec] = coeffs
    return coeffs


def complete_homogeneous(spec: Spec, k: int) -> QRational:
    """h_k of the specialization; h_0 = 1 and h_k = 0 for k < 0."""
    if spec.formal is not None:
        raise ValueError("specialized h_k needs a numeric specialization")
    if k < 0:
        return QR_ZERO
    return _symmetric_list(spec, max(k, 8), "h")[k]


def elementary_symmetric(spec: Spec, k: int) -> QRational:
    """e_k of the specialization; e_0 = 1 and e_k = 0 for k < 0."""
    if spec.formal is not None:
        raise ValueError("specialized e_k needs a numeric specialization")
    if k < 0:
        return QR_ZERO
    return _symmetric_list(spec, max(k, 8), "e")[k]


def complete_elementary_spec(k: int, spec: Spec, kind: str = "h") -> QRational:
    """Dispatcher over the two families of determinant entries."""
    if kind == "h":
        return complete_homogeneous(spec, k)
    if kind == "e":
        return elementary_symmetric(spec, k)
    raise ValueError(f"unknown kind {kind!r}")


# ---------------------------------------------------------------------------
# determinants


def det_field(rows: list[list[QRational]]) -> QRational:
    """Determinant over the field of rational functions (Gauss elimination)."""
    n = len(rows)
    rows = [list(r) for r in rows]
    det = QR_ONE
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if not rows[r][col].is_zero:
                pivot = r
                break
        if pivot is None:
            return QR_ZERO
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = -det
        p = rows[col][col]
        det = det * p
        for r in range(col + 1, n):
            factor = rows[r][col] / p
            if factor.is_zero:
                continue
            for c in range(col, n):
                rows[r][c] = rows[r][c] - factor * rows[col][c]
    return det


def det_ring(rows) -> "MultiSeries":
    """Determinant by minor expansion, for entries in a ring without division."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    acc = None
    for j in range(n):
        entry = rows[0][j]
        if getattr(entry, "is_zero", False):
            continue
        minor = det_ring([r[:j] + r[j + 1:] for r in rows[1:]])
        term = entry * minor
        if j % 2:
            term = -term
        acc = term if acc is None else acc + term
    if acc is None:
        zero = rows[0][0] - rows[0][0]
        return zero
    return acc


# ---------------------------------------------------------------------------
# skew Schur values


_SKEW_CACHE: dict[tuple, QRational] = {}


def skew_schur(lam: Partition, mu: Partition, spec: Spec) -> QRational:
    """s_{lam/mu} at the specialization, via the Jacobi-Trudi determinant.

    Vanishes when lam does not contain mu.  The determinant route is picked
    (h over rows, or e over columns) so the matrix is as small as possible.
    """
    if spec.formal is not None:
        raise ValueError("skew_schur needs a numeric specialization; "
                         "handle formal grading by homogeneity")
    if not lam.contains(mu):
        return QR_ZERO
    if lam == mu:
        return QR_ONE
    key = (lam.parts, mu.parts, spec)
    got = _SKEW_CACHE.get(key)
    if got is not None:
        return got
    if lam.length <= lam.part(1):
        val = _jt_det(lam, mu, spec, "h")
    else:
        val = _jt_det(lam.conjugate(), mu.conjugate(), spec, "e")
    _SKEW_CACHE[key] = val
    return val


def _jt_det(lam: Partition, mu: Partition, spec: Spec, kind: str) -> QRational:
    n = lam.length
    rows = [[complete_elementary_spec(lam.part(i) - mu.part(j) - i + j, spec, kind)
             for j in range(1, n + 1)] for i in range(1, n + 1)]
    return det_field(rows)


def schur_hook(lam: Partition) -> QRational:
    """s_lam(q^rho) through the hook formula v^(kappa/2) / prod [h]."""
    num = QRational.monomial(lam.kappa // 2)
    den = QR_ONE
    for h in lam.hooks():
        den = den * QRational(bracket(h))
    return num / den


# ---------------------------------------------------------------------------
# Schur functions in KP time variables


def times_context(n_times: int, cap: int) -> SeriesContext:
    """Polynomials in t_1..t_n with the weighted grading deg t_k = k."""
    names = tuple(f"t{k}" for k in range(1, n_times + 1))
    return SeriesContext.total(names, cap, weights=tuple(range(1, n_times + 1)))


_TIMES_H: dict[tuple[SeriesContext, int, int], MultiSeries] = {}


def h_in_times(k: int, ctx: SeriesContext, sign: int = 1) -> MultiSeries:
    """h_k written in time variables: k h_k = sum_j j t_j h_{k-j}.

    With sign = -1 the odd times flip, which turns the h-family into the
    e-family.
    """
    if k < 0:
        return MultiSeries.constant(ctx, 0)
    if k == 0:
        return MultiSeries.constant(ctx, 1)
    key = (ctx, k, sign)
    got = _TIMES_H.get(key)
    if got is not None:
        return got
    names = set(ctx.variables)
    acc = MultiSeries.constant(ctx, 0)
    for j in range(1, k + 1):
        if f"t{j}" not in names:
            continue
        tj = MultiSeries.variable(ctx, f"t{j}")
        coeff = Fraction(j if sign == 1 or j % 2 == 1 else -j, k)
        acc = acc + tj * h_in_times(k - j, ctx, sign) * coeff
    _TIMES_H[key] = acc
    return acc


def schur_in_times(lam: Partition, mu: Partition, ctx: SeriesContext) -> MultiSeries:
    """s_{lam/mu} as a polynomial in the time variables (deg t_k = k)."""
    if not lam.contains(mu):
        return MultiSeries.constant(ctx, 0)
    if lam == mu:
        return MultiSeries.constant(ctx, 1)
    if lam.length <= lam.part(1):
        lam2, mu2, sign = lam, mu, 1
    else:
        lam2, mu2, sign = lam.conjugate(), mu.conjugate(), -1
    n = lam2.length
    rows = [[h_in_times(lam2.part(i) - mu2.part(j) - i + j, ctx, sign)
             for j in range(1, n + 1)] for i in range(1, n + 1)]
    return det_ring(rows)


# ---------------------------------------------------------------------------
# supersymmetric skew Schur functions


def supersymmetric_skew(lam: Partition, mu: Partition, specx: Spec, specy: Spec,
                        ctx: SeriesContext | None = None):
    """sum_nu s_{lam/nu}(x) s_{nu'/mu'}(y), the supersymmetric skew value.

    The nu-sum is finite (mu <= nu <= lam).  If specy carries a formal
    grading variable the result is a series in it, otherwise a QRational.
    """
    formal = specy.formal
    if specx.formal is not None:
        raise ValueError("formal grading on the x-side is not supported")
    tpmu = mu.conjugate()
    if formal is None:
        total = QR_ZERO
        for nu in subpartitions(lam):
            if not nu.contains(mu):
                continue
            total = total + skew_schur(lam, nu, specx) * \
                skew_schur(nu.conjugate(), tpmu, specy)
        return total
    if ctx is None:
        ctx = SeriesContext.per_var((formal,), max(lam.weight - mu.weight, 0))
    ybase = specy.base()
    i = ctx.index(formal)
    total = MultiSeries.constant(ctx, 0)
    for nu in subpartitions(lam):
        if not nu.contains(mu):
            continue
        coeff = skew_schur(lam, nu, specx) * skew_schur(nu.conjugate(), tpmu, ybase)
        if coeff.is_zero:
            continue
        e = [0] * len(ctx.variables)
        e[i] = nu.weight - mu.weight
        if not ctx.admits(tuple(e)):
            continue
        total = total + MultiSeries.monomial(ctx, tuple(e), coeff)
    return total


# ---------------------------------------------------------------------------
# Cauchy identity verifiers


@dataclass
class VerifyReport:
    """Outcome of an identity suite: pass/fail plus the first mismatches."""

    name: str
    ok: bool = True
    checked: int = 0
    mismatches: list = field(default_factory=list)

    def record(self, ok: bool, info):
        self.checked += 1
        if not ok:
            self.ok = False
            if len(self.mismatches) < 10:
                self.mismatches.append(info)

    def to_json(self) -> dict:
        return {"name": self.name, "ok": self.ok, "checked": self.checked,
                "mismatches": self.mismatches}


def _cauchy_product(specx: Spec, specy: Spec, ctx: SeriesContext, qmul: QRational,
                    dual: bool) -> MultiSeries:
    """prod (1 - Q x_i y_j)^(-1) or prod (1 + Q x_i y_j), Q-graded.

    Evaluated per Q-degree through the logarithm: the d-th term needs only
    the exact power sums of the two specializations.
    """
    cap = max(cap_ for _, cap_ in ctx.constraints)
    acc = MultiSeries.constant(ctx, 0)
    for d in range(1, cap + 1):
        pd = power_sum(specx, d) * power_sum(specy, d) * qmul ** d
        coeff = pd * Fraction((-1) ** (d - 1) if dual else 1, d)
        acc = acc + MultiSeries.monomial(ctx, (d,), coeff)
    return acc.exp()


def verify_cauchy(identity: str, specx: Spec, specy: Spec, qdeg: int,
                  q_value: QRational | None = None,
                  mu: Partition = EMPTY, nu: Partition = EMPTY) -> VerifyReport:
    """Check one of the four Cauchy identities as an exact Q-graded series.

    identity is one of plain | dual | skew | skew-dual.  The grading
    variable Q tracks |lam|; q_value optionally multiplies it numerically.
    Both sides are expanded to Q-degree qdeg and compared coefficient-wise.
    """
    report = VerifyReport(name=f"cauchy-{identity}")
    ctx = SeriesContext.per_var(("Q",), qdeg)
    qmul = q_value if q_value is not None else QR_ONE
    dual = identity.endswith("dual")

    lhs = MultiSeries.constant(ctx, 0)
    for m in range(qdeg + 1):
        for lam in partitions_of_weight(m):
            if dual:
                term = skew_schur(lam, mu, specx) * \
                    skew_schur(lam.conjugate(), nu.conjugate(), specy)
            else:
                term = skew_schur(lam, mu, specx) * skew_schur(lam, nu, specy)
            if not term.is_zero:
                lhs = lhs + MultiSeries.monomial(ctx, (m,), term * qmul ** m)

    prod = _cauchy_product(specx, specy, ctx, qmul, dual)
    if identity in ("plain", "dual"):
        if mu != EMPTY or nu != EMPTY:
            raise ValueError("plain/dual identities take empty mu, nu")
        rhs = prod
    elif identity in ("skew", "skew-dual"):
        tail = MultiSeries.constant(ctx, 0)
        for kappa in subpartitions(intersect(mu, nu)):
            if dual:
                left = skew_schur(mu.conjugate(), kappa.conjugate(), specy)
            else:
                left = skew_schur(mu, kappa, specy)
            term = left * skew_schur(nu, kappa, specx)
            if term.is_zero:
                continue
            power = mu.weight + nu.weight - kappa.weight
            if power > qdeg:
                continue
            tail = tail + MultiSeries.monomial(ctx, (power,), term * qmul ** power)
        rhs = prod * tail
    else:
        raise ValueError(f"unknown identity {identity!r}")

    for m in range(qdeg + 1):
        l, r = lhs.coefficient((m,)), rhs.coefficient((m,))
        report.record(l == r, {"Q_degree": m, "lhs": l.to_json(), "rhs": r.to_json()})
    return report
