"""Exact arithmetic kernel: Laurent polynomials and rational functions in
v = q^(1/2), and truncated multivariate power series over them.

Everything of interest here (hook products, framing weights q^(kappa/2),
principal specializations q^(-i+1/2), the symmetric q-integers [k]) lands on
integer powers of v, so one Laurent variable with arbitrary-precision
rational coefficients suffices.  No rounding happens anywhere in the ring
operations; floats appear only in `substitute_numeric`, which exists for
numeric limit cross-checks and is never used as an identity oracle.

Representation:

  LaurentPoly  =  {exponent: Fraction}, zero coefficients never stored
  QRational    =  num / den, canonical: den is an integer-primitive
                  polynomial with lowest exponent 0 and positive lowest
                  coefficient, gcd(num, den) = 1 in Q[v]
  MultiSeries  =  {exponent vector: QRational} under a SeriesContext that
                  records the variable names and the degree caps

Canonical form makes QRational equality a plain dictionary comparison;
`cross_equal` provides the independent cross-multiplied oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd as _gcd_int
from typing import Callable, Iterable, Mapping

try:
    # exact rational coefficients; gmpy2's C implementation is a drop-in
    # replacement for Fraction and an order of magnitude faster
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover
    _Q = Fraction

_SCALARS = (int, Fraction, type(_Q(0)))


class PoleError(ZeroDivisionError):
    """Denominator vanishes at the requested evaluation point."""


class TruncationMismatch(ValueError):
    """Series operands live in different truncation contexts."""


# ---------------------------------------------------------------------------
# Laurent polynomials in v


class LaurentPoly:
    """Sparse Laurent polynomial in v with Fraction coefficients.

    Instances are immutable after construction and hashable.  The zero
    polynomial has an empty term map.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[int, Fraction] | int | Fraction = ()):
        if isinstance(terms, _SCALARS):
            terms = {0: terms} if terms else {}
        clean: dict[int, Fraction] = {}
        for e, c in dict(terms).items():
            c = _Q(c)
            if c:
                clean[int(e)] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def monomial(cls, exponent: int, coeff: Fraction | int = 1) -> "LaurentPoly":
        return cls({exponent: _Q(coeff)})

    # -- structure ---------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def min_exp(self) -> int:
        if not self.terms:
            raise ValueError("zero polynomial has no exponents")
        return min(self.terms)

    def max_exp(self) -> int:
        if not self.terms:
            raise ValueError("zero polynomial has no exponents")
        return max(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(sorted(self.terms.items())))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- ring operations ----------------------------------------------------

    def __add__(self, other) -> "LaurentPoly":
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            elif e in out:
                del out[e]
        res = LaurentPoly.__new__(LaurentPoly)
        res.terms = out
        res._hash = None
        return res

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        res = LaurentPoly.__new__(LaurentPoly)
        res.terms = {e: -c for e, c in self.terms.items()}
        res._hash = None
        return res

    def __sub__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _as_poly(other) + (-self)

    def __mul__(self, other) -> "LaurentPoly":
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict[int, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                elif e in out:
                    del out[e]
        res = LaurentPoly.__new__(LaurentPoly)
        res.terms = out
        res._hash = None
        return res

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise ValueError("negative power of a LaurentPoly; use QRational")
        result = LP_ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by the monomial v^k."""
        res = LaurentPoly.__new__(LaurentPoly)
        res.terms = {e + k: c for e, c in self.terms.items()}
        res._hash = None
        return res

    def reciprocal_v(self) -> "LaurentPoly":
        """Substitute v -> 1/v (negate every exponent)."""
        res = LaurentPoly.__new__(LaurentPoly)
        res.terms = {-e: c for e, c in self.terms.items()}
        res._hash = None
        return res

    def evaluate(self, v0: Fraction) -> Fraction:
        v0 = _Q(v0)
        if v0 == 0 and self.terms and self.min_exp() < 0:
            raise PoleError("evaluation at v = 0 with negative exponents")
        return sum((c * v0 ** e for e, c in self.terms.items()), _Q(0))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "1" if e == 0 else ("v" if e == 1 else f"v^{e}")
            if e == 0:
                bits.append(str(c))
            elif c == 1:
                bits.append(mono)
            elif c == -1:
                bits.append(f"-{mono}")
            else:
                bits.append(f"{c}*{mono}")
        return " + ".join(bits).replace("+ -", "- ")

    # -- JSON ----------------------------------------------------------------

    def to_json(self) -> list:
        return [[e, str(self.terms[e])] for e in sorted(self.terms)]

    @classmethod
    def from_json(cls, data: Iterable) -> "LaurentPoly":
        return cls({int(e): Fraction(c) for e, c in data})


def _as_poly(x) -> "LaurentPoly":
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, _SCALARS):
        return LaurentPoly(x)
    return NotImplemented


LP_ZERO = LaurentPoly()
LP_ONE = LaurentPoly(1)
V = LaurentPoly.monomial(1)


def bracket(k: int) -> LaurentPoly:
    """The symmetric q-integer [k] = q^(k/2) - q^(-k/2) = v^k - v^(-k).

    [0] is the zero polynomial; callers that divide by it must reject k = 0.
    """
    if k == 0:
        return LP_ZERO
    return LaurentPoly({k: _Q(1), -k: _Q(-1)})


# ---------------------------------------------------------------------------
# integer-polynomial helpers for canonicalization (dense lists, low degree 0)


def _prim(a: list[int]) -> list[int]:
    g = 0
    for c in a:
        g = _gcd_int(g, abs(c))
    if g in (0, 1):
        return list(a)
    return [c // g for c in a]


def _strip(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pseudo_rem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder of a by b over the integers (b nonzero)."""
    a = list(a)
    lb = b[-1]
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        da = len(a) - 1
        lead = a[-1]
        a = [c * lb for c in a]
        for i, bc in enumerate(b):
            a[da - db + i] -= lead * bc
        _strip(a)
    return a


def _gcd_poly_int(a: list[int], b: list[int]) -> list[int]:
    """Primitive-PRS gcd of two integer polynomials (dense, constant term up)."""
    a = _prim(_strip(list(a)))
    b = _prim(_strip(list(b)))
    if len(a) < len(b):
        a, b = b, a
    while b:
        a, b = b, _prim(_strip(_pseudo_rem(a, b)))
    if a and a[-1] < 0:
        a = [-c for c in a]
    return a


def _div_exact_int(a: list[int], b: list[int]) -> list[int]:
    """Exact quotient of integer polynomials; remainder must vanish."""
    a = list(a)
    db = len(b) - 1
    lead = b[-1]
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c, rem = divmod(a[i], lead)
        assert rem == 0, "inexact polynomial division"
        q[i - db] = c
        if c:
            for j, bc in enumerate(b):
                a[i - db + j] -= c * bc
    assert not any(a[:db]), "inexact polynomial division"
    return q


def _poly_to_dense(p: LaurentPoly) -> tuple[int, list[Fraction]]:
    m = p.min_exp()
    out = [_Q(0)] * (p.max_exp() - m + 1)
    for e, c in p.terms.items():
        out[e - m] = c
    return m, out


def _dense_to_poly(shift: int, coeffs: list) -> LaurentPoly:
    return LaurentPoly({shift + i: _Q(c) for i, c in enumerate(coeffs) if c})


def _int_clear(coeffs: list[Fraction]) -> tuple[Fraction, list[int]]:
    """Write coeffs = scalar * primitive-integer-list with positive content."""
    lcm = 1
    for c in coeffs:
        d = int(c.denominator)
        lcm = lcm * d // _gcd_int(lcm, d)
    ints = [int(c * lcm) for c in coeffs]
    g = 0
    for c in ints:
        g = _gcd_int(g, abs(c))
    ints = [c // g for c in ints]
    return _Q(g, lcm), ints


# ---------------------------------------------------------------------------
# rational functions of v


class QRational:
    """Ratio of Laurent polynomials in v, kept in canonical reduced form.

    Canonical form: gcd(num, den) = 1 as polynomials, den is an
    integer-primitive ordinary polynomial (lowest exponent 0) whose lowest
    coefficient is positive, and num carries the monomial factor and the
    rational scale.  Equality is then a syntactic comparison; `cross_equal`
    gives the cross-multiplied oracle.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=LP_ONE):
        num = _as_poly(num)
        den = _as_poly(den)
        if den.is_zero:
            raise ZeroDivisionError("zero denominator polynomial")
        if num.is_zero:
            self.num, self.den = LP_ZERO, LP_ONE
            self._hash = None
            return
        mn, ncoef = _poly_to_dense(num)
        md, dcoef = _poly_to_dense(den)
        nscale, nint = _int_clear(ncoef)
        dscale, dint = _int_clear(dcoef)
        g = _gcd_poly_int(nint, dint)
        if len(g) > 1:
            nint = _div_exact_int(nint, g)
            dint = _div_exact_int(dint, g)
        scale = nscale / dscale
        # den: integer-primitive with positive lowest coefficient
        dlow = next(c for c in dint if c)
        if dlow < 0:
            dint = [-c for c in dint]
            scale = -scale
        self.num = _dense_to_poly(mn - md, [scale * c for c in nint])
        self.den = _dense_to_poly(0, dint)
        self._hash = None

    @classmethod
    def _raw(cls, num: LaurentPoly, den: LaurentPoly) -> "QRational":
        """Internal: trust that (num, den) is already canonical."""
        self = cls.__new__(cls)
        self.num, self.den, self._hash = num, den, None
        return self

    @classmethod
    def from_int(cls, n) -> "QRational":
        return cls(LaurentPoly(_Q(n)))

    @classmethod
    def monomial(cls, exponent: int, coeff=1) -> "QRational":
        return cls(LaurentPoly.monomial(exponent, Fraction(coeff)))

    # -- predicates ----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_one(self) -> bool:
        return self.num == LP_ONE and self.den == LP_ONE

    def __bool__(self) -> bool:
        return not self.num.is_zero

    def __eq__(self, other) -> bool:
        other = _as_qr(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def cross_equal(self, other) -> bool:
        """Equality via the cross-multiplied polynomial identity."""
        other = _as_qr(other)
        return self.num * other.den == other.num * self.den

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    # -- field operations ----------------------------------------------------

    def __add__(self, other) -> "QRational":
        other = _as_qr(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        if self.den == other.den:
            return QRational(self.num + other.num, self.den)
        return QRational(self.num * other.den + other.num * self.den,
                         self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "QRational":
        return QRational._raw(-self.num, self.den)

    def __sub__(self, other):
        other = _as_qr(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _as_qr(other) + (-self)

    def __mul__(self, other) -> "QRational":
        other = _as_qr(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero or other.is_zero:
            return QR_ZERO
        return QRational(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "QRational":
        other = _as_qr(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero:
            raise ZeroDivisionError("division by zero QRational")
        return QRational(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return _as_qr(other) / self

    def __pow__(self, n: int) -> "QRational":
        if n < 0:
            return (QR_ONE / self) ** (-n)
        result = QR_ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def reciprocal_v(self) -> "QRational":
        """Substitute v -> 1/v."""
        return QRational(self.num.reciprocal_v(), self.den.reciprocal_v())

    # -- evaluation ----------------------------------------------------------

    def evaluate(self, v0) -> Fraction:
        """Exact value at a rational point v0; raises PoleError at poles."""
        v0 = _Q(v0)
        d = self.den.evaluate(v0)
        if d == 0:
            raise PoleError(f"pole at v = {v0}")
        return self.num.evaluate(v0) / d

    def power_series_v(self, order: int) -> dict[int, Fraction]:
        """Expansion as a Laurent series in v up to v^order inclusive.

        Valid because the canonical denominator has a nonzero constant term.
        """
        d0 = self.den.terms[0]
        dmax = self.den.max_exp() if self.den.terms else 0
        shift = self.num.min_exp() if self.num.terms else 0
        # invert den as a power series to the needed order
        need = order - shift
        if need < 0:
            return {}
        inv = [_Q(0)] * (need + 1)
        inv[0] = 1 / d0
        for k in range(1, need + 1):
            acc = _Q(0)
            for j in range(1, min(k, dmax) + 1):
                c = self.den.terms.get(j)
                if c:
                    acc += c * inv[k - j]
            inv[k] = -acc / d0
        out: dict[int, Fraction] = {}
        for e, c in self.num.terms.items():
            for k in range(0, order - e + 1):
                if k <= need and inv[k]:
                    val = out.get(e + k, _Q(0)) + c * inv[k]
                    if val:
                        out[e + k] = val
                    elif e + k in out:
                        del out[e + k]
        return {e: c for e, c in out.items() if e <= order and c}

    def __repr__(self) -> str:
        if self.den == LP_ONE:
            return f"({self.num!r})"
        return f"({self.num!r}) / ({self.den!r})"

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "QRational":
        return cls(LaurentPoly.from_json(data["num"]),
                   LaurentPoly.from_json(data["den"]))


def _as_qr(x) -> "QRational":
    if isinstance(x, QRational):
        return x
    if isinstance(x, _SCALARS):
        return QRational(LaurentPoly(_Q(x)))
    if isinstance(x, LaurentPoly):
        return QRational(x)
    return NotImplemented


QR_ZERO = QRational(LP_ZERO)
QR_ONE = QRational(LP_ONE)


def substitute_numeric(r: QRational, v0) -> float:
    """Float value of r at v = v0, computed through exact rationals.

    The evaluation itself is exact; only the final conversion rounds, so the
    result carries full double precision.  Used for classical-limit
    cross-checks only, never as an identity oracle.
    """
    return float(r.evaluate(v0))


# ---------------------------------------------------------------------------
# truncated multivariate series


@dataclass(frozen=True)
class SeriesContext:
    """Variable names plus degree caps for a truncated series ring.

    Each constraint is (weights, cap) and admits exponent vectors e with
    sum(w*e) <= cap.  Every variable must get positive weight in at least one
    constraint, which makes exp/log/inverse terminate.
    """

    variables: tuple[str, ...]
    constraints: tuple[tuple[tuple[int, ...], int], ...]

    def __post_init__(self):
        for w, _cap in self.constraints:
            if len(w) != len(self.variables):
                raise ValueError("constraint weight vector has wrong length")
        for i, name in enumerate(self.variables):
            if not any(w[i] > 0 for w, _ in self.constraints):
                raise ValueError(f"variable {name!r} is unbounded")

    @classmethod
    def per_var(cls, variables: Iterable[str], caps) -> "SeriesContext":
        variables = tuple(variables)
        if isinstance(caps, int):
            caps = [caps] * len(variables)
        cons = []
        for i, cap in enumerate(caps):
            w = [0] * len(variables)
            w[i] = 1
            cons.append((tuple(w), int(cap)))
        return cls(variables, tuple(cons))

    @classmethod
    def total(cls, variables: Iterable[str], cap: int,
              weights: Iterable[int] | None = None) -> "SeriesContext":
        variables = tuple(variables)
        w = tuple(weights) if weights is not None else (1,) * len(variables)
        return cls(variables, ((w, int(cap)),))

    def extend(self, group: Iterable[str], cap: int) -> "SeriesContext":
        """Add a total-degree cap over a subset of the variables."""
        idx = {name: i for i, name in enumerate(self.variables)}
        w = [0] * len(self.variables)
        for name in group:
            w[idx[name]] = 1
        return SeriesContext(self.variables, self.constraints + ((tuple(w), cap),))

    def admits(self, exps: tuple[int, ...]) -> bool:
        for w, cap in self.constraints:
            if sum(wi * ei for wi, ei in zip(w, exps) if ei) > cap:
                return False
        return True

    def index(self, name: str) -> int:
        return self.variables.index(name)

    def trunc_json(self) -> list:
        return [{"weights": list(w), "cap": cap} for w, cap in self.constraints]


class MultiSeries:
    """Truncated multivariate power series with QRational coefficients.

    Ring operations truncate consistently: the product of two series equals
    the truncation of their exact product.  Instances are immutable.
    """

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: SeriesContext, coeffs: Mapping[tuple[int, ...], QRational] = ()):
        self.ctx = ctx
        clean: dict[tuple[int, ...], QRational] = {}
        for e, c in dict(coeffs).items():
            e = tuple(int(x) for x in e)
            if len(e) != len(ctx.variables):
                raise ValueError("exponent vector has wrong length")
            if any(x < 0 for x in e):
                raise ValueError("negative exponent in power series")
            c = _as_qr(c)
            if not ctx.admits(e):
                raise ValueError(f"exponent {e} violates truncation")
            if not c.is_zero:
                clean[e] = c
        self.coeffs = clean

    # -- constructors --------------------------------------------------------

    @classmethod
    def constant(cls, ctx: SeriesContext, value) -> "MultiSeries":
        value = _as_qr(value)
        zero = (0,) * len(ctx.variables)
        return cls(ctx, {zero: value} if not value.is_zero else {})

    @classmethod
    def variable(cls, ctx: SeriesContext, name: str, coeff=1) -> "MultiSeries":
        e = [0] * len(ctx.variables)
        e[ctx.index(name)] = 1
        return cls(ctx, {tuple(e): _as_qr(coeff)})

    @classmethod
    def monomial(cls, ctx: SeriesContext, exps: tuple[int, ...], coeff=1) -> "MultiSeries":
        return cls(ctx, {tuple(exps): _as_qr(coeff)})

    def _same(self, coeffs: dict) -> "MultiSeries":
        res = MultiSeries.__new__(MultiSeries)
        res.ctx = self.ctx
        res.coeffs = coeffs
        return res

    # -- access ---------------------------------------------------------------

    def coefficient(self, exps: tuple[int, ...]) -> QRational:
        return self.coeffs.get(tuple(exps), QR_ZERO)

    def constant_term(self) -> QRational:
        return self.coefficient((0,) * len(self.ctx.variables))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiSeries):
            return NotImplemented
        return self.ctx == other.ctx and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ctx, tuple(sorted(self.coeffs.items()))))

    # -- ring ops --------------------------------------------------------------

    def _check(self, other: "MultiSeries"):
        if self.ctx != other.ctx:
            raise TruncationMismatch("series contexts differ")

    def __add__(self, other):
        if isinstance(other, _SCALARS) or isinstance(other, QRational):
            other = MultiSeries.constant(self.ctx, other)
        if not isinstance(other, MultiSeries):
            return NotImplemented
        self._check(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            s = out.get(e, QR_ZERO) + c
            if s.is_zero:
                out.pop(e, None)
            else:
                out[e] = s
        return self._same(out)

    __radd__ = __add__

    def __neg__(self):
        return self._same({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        if isinstance(other, _SCALARS) or isinstance(other, QRational):
            other = MultiSeries.constant(self.ctx, other)
        if not isinstance(other, MultiSeries):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, _SCALARS) or isinstance(other, QRational):
            c = _as_qr(other)
            if c.is_zero:
                return self._same({})
            return self._same({e: v * c for e, v in self.coeffs.items()})
        if not isinstance(other, MultiSeries):
            return NotImplemented
        self._check(other)
        admits = self.ctx.admits
        out: dict[tuple[int, ...], QRational] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                if not admits(e):
                    continue
                s = out.get(e, QR_ZERO) + c1 * c2
                if s.is_zero:
                    out.pop(e, None)
                else:
                    out[e] = s
        return self._same(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MultiSeries":
        if n < 0:
            return self.inverse() ** (-n)
        result = MultiSeries.constant(self.ctx, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- analytic-style ops ------------------------------------------------------

    def exp(self) -> "MultiSeries":
        """Truncated exponential; requires zero constant term."""
        if not self.constant_term().is_zero:
            raise ValueError("exp needs a series with zero constant term")
        result = MultiSeries.constant(self.ctx, 1)
        term = MultiSeries.constant(self.ctx, 1)
        k = 1
        while True:
            term = term * self
            if term.is_zero:
                return result
            result = result + term * QRational.from_int(Fraction(1, _factorial(k)))
            k += 1

    def log(self) -> "MultiSeries":
        """Truncated logarithm; requires constant term 1."""
        if not self.constant_term().is_one:
            raise ValueError("log needs a series with constant term 1")
        u = self - 1
        result = MultiSeries.constant(self.ctx, 0)
        term = MultiSeries.constant(self.ctx, 1)
        k = 1
        sign = 1
        while True:
            term = term * u
            if term.is_zero:
                return result
            result = result + term * QRational.from_int(Fraction(sign, k))
            k += 1
            sign = -sign

    def inverse(self) -> "MultiSeries":
        """Multiplicative inverse; requires a unit (nonzero constant term)."""
        c0 = self.constant_term()
        if c0.is_zero:
            raise ZeroDivisionError("series with zero constant term is not a unit")
        u = self * (QR_ONE / c0) - 1
        result = MultiSeries.constant(self.ctx, 1)
        term = MultiSeries.constant(self.ctx, 1)
        sign = -1
        while True:
            term = term * u
            if term.is_zero:
                return result * (QR_ONE / c0)
            result = result + term * QRational.from_int(sign)
            sign = -sign

    def __truediv__(self, other):
        if isinstance(other, _SCALARS) or isinstance(other, QRational):
            inv = QR_ONE / _as_qr(other)
            return self * inv
        if isinstance(other, MultiSeries):
            return self * other.inverse()
        return NotImplemented

    def derivative(self, name: str) -> "MultiSeries":
        """Formal partial derivative; exact on stored coefficients."""
        i = self.ctx.index(name)
        out: dict[tuple[int, ...], QRational] = {}
        for e, c in self.coeffs.items():
            if e[i] == 0:
                continue
            e2 = list(e)
            e2[i] -= 1
            out[tuple(e2)] = c * QRational.from_int(e[i])
        return self._same(out)

    def embed(self, ctx: SeriesContext) -> "MultiSeries":
        """Reinterpret in a larger context, matching variables by name."""
        pos = [ctx.index(name) for name in self.ctx.variables]
        out: dict[tuple[int, ...], QRational] = {}
        for e, c in self.coeffs.items():
            big = [0] * len(ctx.variables)
            for p, x in zip(pos, e):
                big[p] = x
            big = tuple(big)
            if not ctx.admits(big):
                raise ValueError("embedding violates the target truncation")
            out[big] = c
        return MultiSeries(ctx, out)

    def map_coefficients(self, fn: Callable[[QRational], QRational]) -> "MultiSeries":
        out = {}
        for e, c in self.coeffs.items():
            v = fn(c)
            if not v.is_zero:
                out[e] = v
        return self._same(out)

    def restrict(self, weights: tuple[int, ...], cap: int) -> "MultiSeries":
        """Drop all terms with sum(w*e) > cap (same context)."""
        out = {e: c for e, c in self.coeffs.items()
               if sum(w * x for w, x in zip(weights, e)) <= cap}
        return self._same(out)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        bits = []
        for e in sorted(self.coeffs)[:12]:
            mono = "*".join(f"{n}^{x}" if x > 1 else n
                            for n, x in zip(self.ctx.variables, e) if x) or "1"
            bits.append(f"({self.coeffs[e]!r})*{mono}")
        more = "" if len(self.coeffs) <= 12 else f" + ... ({len(self.coeffs)} terms)"
        return " + ".join(bits) + more

    def to_json(self) -> dict:
        terms = [[list(e), self.coeffs[e].to_json()] for e in sorted(self.coeffs)]
        return {"vars": list(self.ctx.variables),
                "trunc": self.ctx.trunc_json(),
                "terms": terms}


def _factorial(k: int) -> int:
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


def series_exp_log(s: MultiSeries, mode: str) -> MultiSeries:
    """Dispatcher for the truncated exponential / logarithm."""
    if mode == "exp":
        return s.exp()
    if mode == "log":
        return s.log()
    raise ValueError(f"unknown mode {mode!r}")
