"""Polynomials, rational functions and truncated Laurent series over exact scalars.

A ``TruncatedSeries`` knows its coefficients on an explicit window
``[lead, order)``; exponents below ``lead`` are exactly zero and reading at or
past ``order`` raises ``TruncationError``.  Exact objects (polynomials,
constants) carry ``order = INF`` so that window bookkeeping propagates
pessimistically through arithmetic and silent zero-padding can never happen.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, isqrt

from .errors import TruncationError

INF = 1 << 30

Q0 = Fraction(0)
Q1 = Fraction(1)


def double_factorial(n: int) -> int:
    """n!! with the convention (-1)!! = 1."""
    out = 1
    while n > 0:
        out *= n
        n -= 2
    return out


def _cap_add(order: int, k: int) -> int:
    return INF if order >= INF else order + k


def _scalar_inv(x):
    if isinstance(x, (int, Fraction)):
        return Q1 / Fraction(x)
    return 1 / x


class TruncatedSeries:
    """Laurent series with explicit truncation window [lead, order)."""

    __slots__ = ("lead", "order", "c", "base")

    def __init__(self, lead: int, coeffs, order: int, base=None):
        if order < lead:
            raise ValueError("truncation order below leading exponent")
        c = list(coeffs)
        if order < INF:
            if len(c) > order - lead:
                raise ValueError("coefficient list longer than window")
            c = c + [Q0] * (order - lead - len(c))
        while len(c) > 0 and not c[-1] and order >= INF:
            c.pop()
        k = 0
        while k < len(c) and not c[k]:
            k += 1
        if k:
            lead += k
            c = c[k:]
        if not c and order < INF:
            lead = order
        self.lead = lead
        self.order = order
        self.c = c
        self.base = base

    # -- constructors ---------------------------------------------------------

    @staticmethod
    def zero(order: int = INF) -> "TruncatedSeries":
        return TruncatedSeries(min(order, INF), [], order)

    @staticmethod
    def from_scalar(x, order: int = INF) -> "TruncatedSeries":
        if not x:
            return TruncatedSeries.zero(order)
        if order < 1:
            return TruncatedSeries.zero(order)
        return TruncatedSeries(0, [x], order)

    @staticmethod
    def identity(order: int = INF) -> "TruncatedSeries":
        """The coordinate series z itself."""
        return TruncatedSeries.monomial(Q1, 1, order)

    @staticmethod
    def monomial(coeff, exponent: int, order: int = INF) -> "TruncatedSeries":
        if order < exponent + 1:
            return TruncatedSeries.zero(order)
        return TruncatedSeries(exponent, [coeff], order)

    # -- inspection -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.c

    def val(self) -> int:
        if not self.c:
            raise ValueError("valuation of a (window-)zero series")
        return self.lead

    def coeff(self, e: int):
        if e >= self.order:
            raise TruncationError(
                f"coefficient at exponent {e} beyond truncation order {self.order}"
            )
        if e < self.lead:
            return Q0
        i = e - self.lead
        return self.c[i] if i < len(self.c) else Q0

    def residue(self):
        """Coefficient at exponent -1; the window must certify it."""
        return self.coeff(-1)

    def truncate(self, order: int) -> "TruncatedSeries":
        if order >= self.order:
            return self
        return TruncatedSeries(
            min(self.lead, order), self.c[: max(order - self.lead, 0)], order, self.base
        )

    def window_coeffs(self) -> list:
        return list(self.c)

    def __repr__(self) -> str:
        terms = ", ".join(
            f"{self.lead + i}: {x}" for i, x in enumerate(self.c) if x
        )
        o = "INF" if self.order >= INF else str(self.order)
        return f"Series({{{terms}}}, O(z^{o}))"

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        lo = min(self.order, other.order)
        start = min(self.lead, other.lead)
        return all(self.coeff(e) == other.coeff(e) for e in range(start, lo))

    # -- linear arithmetic ------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            other = TruncatedSeries.from_scalar(other)
        order = min(self.order, other.order)
        lead = min(
            self.lead if self.c else order, other.lead if other.c else order
        )
        if order < INF:
            lead = min(lead, order)
        n = (order - lead) if order < INF else max(
            (self.lead + len(self.c)), (other.lead + len(other.c)), lead
        ) - lead
        out = [Q0] * n
        for src in (self, other):
            for i, x in enumerate(src.c):
                e = src.lead + i
                if e < order and x:
                    out[e - lead] = out[e - lead] + x
        return TruncatedSeries(lead, out, order)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(self.lead, [-x for x in self.c], self.order)

    def __sub__(self, other):
        if not isinstance(other, TruncatedSeries):
            other = TruncatedSeries.from_scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, s) -> "TruncatedSeries":
        if not s:
            return TruncatedSeries.zero(self.order)
        return TruncatedSeries(self.lead, [s * x for x in self.c], self.order)

    def shift(self, k: int) -> "TruncatedSeries":
        return TruncatedSeries(self.lead + k, self.c, _cap_add(self.order, k))

    # -- multiplicative arithmetic ----------------------------------------------

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self.scale(other)
        if not self.c or not other.c:
            if not self.c and not other.c:
                o = INF if (self.order >= INF or other.order >= INF) else self.order + other.order
            elif not self.c:
                o = _cap_add(self.order, other.lead)
            else:
                o = _cap_add(other.order, self.lead)
            return TruncatedSeries.zero(min(o, INF))
        lead = self.lead + other.lead
        order = min(_cap_add(self.order, other.lead), _cap_add(other.order, self.lead))
        n = (order - lead) if order < INF else len(self.c) + len(other.c) - 1
        out = [Q0] * n
        for i, x in enumerate(self.c):
            if not x:
                continue
            jmax = min(len(other.c), n - i)
            for j in range(jmax):
                y = other.c[j]
                if y:
                    out[i + j] = out[i + j] + x * y
        return TruncatedSeries(lead, out, order)

    __rmul__ = __mul__

    def inverse(self) -> "TruncatedSeries":
        if not self.c:
            raise ZeroDivisionError("inverting a zero series")
        v = self.lead
        a = self.c
        if self.order >= INF:
            if len(a) == 1:
                return TruncatedSeries.monomial(_scalar_inv(a[0]), -v)
            raise ValueError("truncate an exact series before inverting it")
        n = self.order - v
        a0 = a[0]
        inv0 = _scalar_inv(a0)
        out = [inv0] + [Q0] * (n - 1)
        for k in range(1, n):
            s = None
            for j in range(max(0, k - len(a) + 1), k):
                ak = a[k - j]
                if ak and out[j]:
                    t = out[j] * ak
                    s = t if s is None else s + t
            out[k] = -(s * inv0) if s is not None else Q0
        return TruncatedSeries(-v, out, self.order - 2 * v)

    def __truediv__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self.scale(_scalar_inv(other))
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int) -> "TruncatedSeries":
        if n < 0:
            return self.inverse() ** (-n)
        result = TruncatedSeries.from_scalar(Q1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def derivative(self) -> "TruncatedSeries":
        out = [
            (self.lead + i) * x for i, x in enumerate(self.c)
        ]
        return TruncatedSeries(self.lead - 1, out, _cap_add(self.order, -1))

    # -- composition-type operations ---------------------------------------------

    def compose(self, inner: "TruncatedSeries") -> "TruncatedSeries":
        """self(inner), for inner with valuation >= 1."""
        if inner.c and inner.val() < 1:
            raise ValueError("composition requires inner valuation >= 1")
        top = (self.lead + len(self.c)) if self.order >= INF else self.order
        acc = TruncatedSeries.zero(INF)
        for e in range(top - 1, max(self.lead, 0) - 1, -1):
            acc = acc * inner + self.coeff(e)
        if self.order < INF:
            acc = acc.truncate(self.order)
        if self.lead < 0:
            inv = inner.inverse()
            for e in range(self.lead, 0):
                x = self.coeff(e)
                if x:
                    acc = acc + (inv ** (-e)).scale(x)
        return acc

    def reversion(self) -> "TruncatedSeries":
        """Compositional inverse of a series with valuation exactly 1."""
        if not self.c or self.val() != 1:
            raise ValueError("reversion requires valuation exactly 1")
        target = self.order if self.order < INF else self.lead + len(self.c)
        fp = self.derivative()
        zeta = TruncatedSeries.identity()
        g = TruncatedSeries(1, [_scalar_inv(self.c[0])], 2)
        cur = 2
        while cur < target:
            cur = min(2 * cur, target)
            gw = TruncatedSeries(g.lead, g.c, cur)
            err = self.truncate(cur + 1).compose(gw) - zeta
            corr = err * fp.truncate(cur).compose(gw).inverse()
            g = (gw - corr).truncate(cur)
        return g.truncate(min(target, self.order))

    def sqrt(self, branch: int = 1, sqrt_leading=None) -> "TruncatedSeries":
        """Square root with chosen branch; leading exponent must be even."""
        if not self.c:
            raise ValueError("sqrt of a window-zero series")
        v = self.val()
        if v % 2:
            raise ValueError("sqrt requires an even leading exponent")
        c0 = self.c[0]
        if sqrt_leading is None:
            sqrt_leading = _sqrt_scalar(c0)
        elif sqrt_leading * sqrt_leading != c0:
            raise ValueError("provided square root of leading coefficient is wrong")
        src = self if self.order < INF else self.truncate(self.lead + len(self.c) + 2)
        unit = src.shift(-v).scale(_scalar_inv(c0))
        n = unit.order
        y = TruncatedSeries.from_scalar(Q1, 1)
        length = 1
        while length < n:
            length = min(2 * length, n)
            uw = unit.truncate(length)
            y = (TruncatedSeries(y.lead, y.c, length) + uw * y.inverse()).scale(
                Fraction(1, 2)
            )
        out = y.shift(v // 2).scale(sqrt_leading if branch >= 0 else -sqrt_leading)
        return out


def pole_expansion(c, d: int, order: int) -> TruncatedSeries:
    """Series of (c + z)^(-d) about z = 0, for invertible scalar c and d >= 1."""
    inv = _scalar_inv(c)
    out = []
    cur = inv ** d if isinstance(inv, (int, Fraction)) else _power(inv, d)
    sign = 1
    for k in range(max(order, 0)):
        out.append(cur * (sign * comb(d + k - 1, k)))
        cur = cur * inv
        sign = -sign
    return TruncatedSeries(0, out, order)


def _power(x, n: int):
    out = None
    base = x
    while n:
        if n & 1:
            out = base if out is None else out * base
        n >>= 1
        if n:
            base = base * base
    return out


def formal_laplace(g: TruncatedSeries) -> TruncatedSeries:
    """Gaussian moment transform: zeta^(2k) -> (2k-1)!! u^k; odd powers dropped."""
    if g.c and g.lead < 0:
        raise ValueError("formal Laplace transform requires a power series input")
    if g.order >= INF:
        top = (g.lead + len(g.c)) if g.c else 0
        out_order = INF
        kmax = (top + 1) // 2 + 1
    else:
        out_order = (g.order + 1) // 2
        kmax = out_order
    coeffs = [g.coeff(2 * k) * double_factorial(2 * k - 1) for k in range(kmax)]
    return TruncatedSeries(0, coeffs, out_order)


def _sqrt_scalar(x):
    q = Fraction(x) if isinstance(x, (int, Fraction)) else None
    if q is None:
        raise ValueError(
            "cannot take a scalar square root outside Q; pass sqrt_leading explicitly"
        )
    rn, rd = isqrt(q.numerator), isqrt(q.denominator)
    if rn * rn != q.numerator or rd * rd != q.denominator:
        raise ValueError(f"{q} is not a perfect square; enlarge the scalar field")
    return Fraction(rn, rd)


# -- polynomials ----------------------------------------------------------------


class Polynomial:
    """Dense univariate polynomial over exact scalars, ascending coefficients."""

    __slots__ = ("c",)

    def __init__(self, coeffs):
        c = list(coeffs)
        while len(c) > 1 and not c[-1]:
            c.pop()
        if not c:
            c = [Q0]
        self.c = c

    @staticmethod
    def x(power: int = 1) -> "Polynomial":
        return Polynomial([Q0] * power + [Q1])

    @staticmethod
    def const(v) -> "Polynomial":
        return Polynomial([v])

    def degree(self) -> int:
        return -1 if self.is_zero() else len(self.c) - 1

    def is_zero(self) -> bool:
        return len(self.c) == 1 and not self.c[0]

    def leading(self):
        return self.c[-1]

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.c == other.c
        return NotImplemented

    def __hash__(self):
        return hash(tuple(str(x) for x in self.c))

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.const(other)
        n = max(len(self.c), len(other.c))
        a = self.c + [Q0] * (n - len(self.c))
        b = other.c + [Q0] * (n - len(other.c))
        return Polynomial([x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return Polynomial([-x for x in self.c])

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return Polynomial([x * other for x in self.c])
        out = [Q0] * (len(self.c) + len(other.c) - 1)
        for i, x in enumerate(self.c):
            if x:
                for j, y in enumerate(other.c):
                    if y:
                        out[i + j] = out[i + j] + x * y
        return Polynomial(out)

    __rmul__ = __mul__

    def __call__(self, x):
        acc = self.c[-1]
        for v in reversed(self.c[:-1]):
            acc = acc * x + v
        return acc

    def derivative(self) -> "Polynomial":
        if len(self.c) == 1:
            return Polynomial([Q0])
        return Polynomial([i * v for i, v in enumerate(self.c)][1:])

    def taylor_at(self, alpha) -> list:
        """Coefficients of p(alpha + h) as a polynomial in h."""
        b = list(self.c)
        n = len(b)
        for i in range(n):
            for j in range(n - 2, i - 1, -1):
                b[j] = b[j] + alpha * b[j + 1]
        return b

    def to_series(self, order: int = INF) -> TruncatedSeries:
        return TruncatedSeries(0, self.c[: order if order < INF else len(self.c)], order)

    def series_at(self, alpha, order: int = INF) -> TruncatedSeries:
        t = self.taylor_at(alpha)
        return TruncatedSeries(0, t[: order if order < INF else len(t)], order)

    def divmod(self, other: "Polynomial"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        num = list(self.c)
        dn = len(other.c)
        if len(num) < dn:
            return Polynomial([Q0]), Polynomial(num)
        q = [Q0] * (len(num) - dn + 1)
        inv_lead = _scalar_inv(other.c[-1])
        for i in range(len(num) - dn, -1, -1):
            cc = num[i + dn - 1] * inv_lead
            q[i] = cc
            if cc:
                for j, d in enumerate(other.c):
                    num[i + j] = num[i + j] - cc * d
        return Polynomial(q), Polynomial(num)

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        return self * _scalar_inv(self.c[-1])

    def gcd(self, other: "Polynomial") -> "Polynomial":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        return a.monic() if not a.is_zero() else Polynomial([Q1])

    def __repr__(self):
        return f"Polynomial({self.c})"


class RationalFunction:
    """Quotient of polynomials, stored with gcd 1 and monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Polynomial | None = None, reduce: bool = True):
        if den is None:
            den = Polynomial([Q1])
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if reduce:
            g = num.gcd(den)
            if g.degree() > 0:
                num = num.divmod(g)[0]
                den = den.divmod(g)[0]
            lead_inv = _scalar_inv(den.c[-1])
            num = num * lead_inv
            den = den * lead_inv
        self.num = num
        self.den = den

    def __add__(self, other):
        other = _ratfun(other)
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        return self + (-_ratfun(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _ratfun(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _ratfun(other)
        return RationalFunction(self.num * other.den, self.den * other.num)

    def derivative(self) -> "RationalFunction":
        return RationalFunction(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def __call__(self, x):
        return self.num(x) / self.den(x)

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return (self.num * other.den - other.num * self.den).is_zero()

    def __repr__(self):
        return f"RationalFunction({self.num!r} / {self.den!r})"


def _ratfun(x) -> RationalFunction:
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, Polynomial):
        return RationalFunction(x)
    return RationalFunction(Polynomial.const(x))


def laurent_expand(f: RationalFunction, p, order: int) -> TruncatedSeries:
    """Laurent expansion of f about z = p, exact on its window up to `order`."""
    den_shift = f.den.taylor_at(p)
    v = 0
    while v < len(den_shift) and not den_shift[v]:
        v += 1
    if v == len(den_shift):
        raise ZeroDivisionError("denominator identically zero")
    work = order + 2 * v + 1
    num_series = TruncatedSeries(0, f.num.taylor_at(p)[:work], work)
    den_series = TruncatedSeries(0, den_shift[:work], work)
    return (num_series * den_series.inverse()).truncate(order)


def series_reversion(s: TruncatedSeries) -> TruncatedSeries:
    return s.reversion()


def sqrt_series(s: TruncatedSeries, branch: int = 1, sqrt_leading=None) -> TruncatedSeries:
    return s.sqrt(branch, sqrt_leading)
