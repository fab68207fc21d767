"""Exact scalars: arbitrary-precision rationals and cyclotomic field elements.

Rationals are plain ``fractions.Fraction``.  Elements of Q(zeta_m) are stored
as coefficient vectors on the power basis 1, zeta, ..., zeta^(phi(m)-1),
reduced modulo the m-th cyclotomic polynomial.  All arithmetic is exact; no
floating point enters this module.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

from .errors import ConsistencyError

Q0 = Fraction(0)
Q1 = Fraction(1)


def _poly_divmod_int(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    """Exact division of integer polynomials (den monic up to sign)."""
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for i in range(len(num) - len(den), -1, -1):
        c = num[i + len(den) - 1]
        if c % lead:
            raise ArithmeticError("non-exact polynomial division")
        c //= lead
        q[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return q, num


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_m, ascending degree."""
    if m < 1:
        raise ValueError("conductor must be positive")
    # x^m - 1 divided by the product of Phi_d over proper divisors d | m
    poly = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            poly, rem = _poly_divmod_int(poly, list(cyclotomic_polynomial(d)))
            if any(rem[i] for i in range(len(rem))):
                raise ArithmeticError("cyclotomic division left a remainder")
    return tuple(poly)


def euler_phi(m: int) -> int:
    return len(cyclotomic_polynomial(m)) - 1


class CycField:
    """Flyweight for Q(zeta_m): reduction data shared by all elements."""

    _instances: dict[int, "CycField"] = {}

    def __new__(cls, m: int):
        inst = cls._instances.get(m)
        if inst is None:
            inst = super().__new__(cls)
            inst._init(m)
            cls._instances[m] = inst
        return inst

    def _init(self, m: int) -> None:
        self.m = m
        phi = cyclotomic_polynomial(m)
        self.degree = len(phi) - 1
        # power_table[j] = vector of zeta^j on the power basis, for 0 <= j < m
        # plus the extra powers up to 2*degree - 2 needed when reducing products
        top = max(m, 2 * self.degree - 1)
        table: list[tuple[Fraction, ...]] = []
        cur = [Q0] * self.degree
        if self.degree > 0:
            cur[0] = Q1
        table.append(tuple(cur))
        # multiplication by zeta with reduction by the monic Phi_m
        red = [Fraction(-c, phi[-1]) for c in phi[:-1]]
        for _ in range(1, top):
            nxt = [Q0] + cur[:-1]
            carry = cur[-1]
            if carry:
                nxt = [a + carry * b for a, b in zip(nxt, red)]
            table.append(tuple(nxt))
            cur = nxt
        self.power_table = table
        self.zero = Cyclotomic(self, (Q0,) * self.degree)
        self.one = Cyclotomic(self, table[0])

    def element(self, coeffs) -> "Cyclotomic":
        c = [Fraction(x) for x in coeffs]
        if len(c) != self.degree:
            raise ValueError("coefficient vector has wrong length")
        return Cyclotomic(self, tuple(c))

    def from_rational(self, x) -> "Cyclotomic":
        c = [Q0] * self.degree
        c[0] = Fraction(x)
        return Cyclotomic(self, tuple(c))

    def zeta_power(self, k: int) -> "Cyclotomic":
        return Cyclotomic(self, self.power_table[k % self.m])

    def __repr__(self) -> str:
        return f"CycField({self.m})"


class Cyclotomic:
    """An element of Q(zeta_m), immutable."""

    __slots__ = ("field", "c")

    def __init__(self, field: CycField, coeffs: tuple):
        self.field = field
        self.c = coeffs

    # -- coercion -----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Cyclotomic):
            if other.field is self.field:
                return other
            m1, m2 = self.field.m, other.field.m
            if m2 % m1 == 0 and m2 != m1:
                return NotImplemented  # let the bigger field drive
            if m1 % m2 == 0:
                return other.embed(self.field)
            raise ValueError(
                f"cannot mix Q(zeta_{m1}) and Q(zeta_{m2}); embed into lcm first"
            )
        if isinstance(other, (int, Fraction)):
            return self.field.from_rational(other)
        return NotImplemented

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Cyclotomic(self.field, tuple(a + b for a, b in zip(self.c, o.c)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.field, tuple(-a for a in self.c))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Cyclotomic(self.field, tuple(a - b for a, b in zip(self.c, o.c)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return Cyclotomic(self.field, tuple(a * q for a in self.c))
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        n = self.field.degree
        raw = [Q0] * (2 * n - 1)
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(o.c):
                    if b:
                        raw[i + j] += a * b
        out = list(raw[:n])
        table = self.field.power_table
        for k in range(n, 2 * n - 1):
            ck = raw[k]
            if ck:
                row = table[k]
                for j in range(n):
                    if row[j]:
                        out[j] += ck * row[j]
        return Cyclotomic(self.field, tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        """Field inverse via extended Euclid against Phi_m."""
        if not self:
            raise ZeroDivisionError("inverting zero cyclotomic element")
        r = self.as_rational()
        if r is not None:
            return self.field.from_rational(1 / r)
        # work with Fraction coefficient lists
        phi = [Fraction(x) for x in cyclotomic_polynomial(self.field.m)]
        a = list(self.c)
        while len(a) > 1 and not a[-1]:
            a.pop()
        # extended euclid: find s with s*a = gcd (a unit) mod phi
        r0, r1 = phi, a
        s0, s1 = [Q0], [Q1]
        while True:
            if len(r1) == 1:
                if not r1[0]:
                    raise ZeroDivisionError("element not invertible (zero divisor?)")
                inv = 1 / r1[0]
                res = [x * inv for x in s1]
                res += [Q0] * (self.field.degree - len(res))
                return Cyclotomic(self.field, tuple(res[: self.field.degree]))
            q, rem = _poly_divmod_frac(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return Cyclotomic(self.field, tuple(a / q for a in self.c))
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __bool__(self) -> bool:
        return any(self.c)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            r = self.as_rational()
            return r is not None and r == other
        if isinstance(other, Cyclotomic):
            if other.field is self.field:
                return self.c == other.c
            m = lcm(self.field.m, other.field.m)
            f = CycField(m)
            return self.embed(f).c == other.embed(f).c
        return NotImplemented

    def __hash__(self):
        r = self.as_rational()
        if r is not None:
            return hash(r)
        return hash((self.field.m, self.c))

    # -- structure ----------------------------------------------------------

    def as_rational(self) -> Fraction | None:
        """The rational value, or None when a nontrivial basis power appears."""
        if any(self.c[1:]):
            return None
        return self.c[0] if self.c else Q0

    def conjugate(self) -> "Cyclotomic":
        """Complex conjugation zeta -> zeta^(-1)."""
        table = self.field.power_table
        m = self.field.m
        out = [Q0] * self.field.degree
        for j, a in enumerate(self.c):
            if a:
                row = table[(-j) % m]
                for i in range(self.field.degree):
                    if row[i]:
                        out[i] += a * row[i]
        return Cyclotomic(self.field, tuple(out))

    def is_real(self) -> bool:
        return self == self.conjugate()

    def embed(self, field: CycField) -> "Cyclotomic":
        """Embedding Q(zeta_m) -> Q(zeta_m') for m | m'."""
        if field is self.field:
            return self
        if field.m % self.field.m:
            raise ValueError("embedding requires conductor divisibility")
        step = field.m // self.field.m
        out = [Q0] * field.degree
        for j, a in enumerate(self.c):
            if a:
                row = field.power_table[(j * step) % field.m]
                for i in range(field.degree):
                    if row[i]:
                        out[i] += a * row[i]
        return Cyclotomic(field, tuple(out))

    def to_json(self) -> dict:
        return {"m": self.field.m, "coeffs": [str(x) for x in self.c]}

    def __repr__(self) -> str:
        r = self.as_rational()
        if r is not None:
            return f"Cyc({r})"
        terms = [
            f"{a}*z{self.field.m}^{j}" for j, a in enumerate(self.c) if a
        ]
        return "Cyc(" + " + ".join(terms) + ")"


def _poly_divmod_frac(num: list[Fraction], den: list[Fraction]):
    num = list(num)
    dn = len(den)
    q = [Q0] * max(len(num) - dn + 1, 1)
    inv_lead = 1 / den[-1]
    for i in range(len(num) - dn, -1, -1):
        c = num[i + dn - 1] * inv_lead
        q[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    while len(num) > 1 and not num[-1]:
        num.pop()
    return q, num


def _poly_mul(a, b):
    out = [Q0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = a + [Q0] * (n - len(a))
    b = b + [Q0] * (n - len(b))
    out = [x - y for x, y in zip(a, b)]
    while len(out) > 1 and not out[-1]:
        out.pop()
    return out


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def ambient_conductor(*ms: int) -> int:
    out = 1
    for m in ms:
        out = lcm(out, m)
    return out


# -- named constructors -----------------------------------------------------


def root_of_unity(m: int, k: int = 1, field: CycField | None = None) -> Cyclotomic:
    """zeta_m^k, reduced in CycField(m) or in a larger ambient field."""
    if m < 1:
        raise ValueError("order must be positive")
    if field is None:
        field = CycField(m)
        return field.zeta_power(k)
    if field.m % m:
        raise ValueError("ambient conductor must be a multiple of the order")
    return field.zeta_power((k * (field.m // m)) % field.m)


def imaginary_unit(field: CycField | None = None) -> Cyclotomic:
    return root_of_unity(4, 1, field)


def sine_value(k: int, r: int, field: CycField | None = None) -> Cyclotomic:
    """sin(k*pi/r), exactly, in a field containing zeta_{lcm(4, 2r)}."""
    if field is None:
        field = CycField(ambient_conductor(4, 2 * r))
    z = root_of_unity(2 * r, k, field)
    zi = root_of_unity(2 * r, -k, field)
    return (z - zi) / (2 * imaginary_unit(field))


def cosine_value(k: int, r: int, field: CycField | None = None) -> Cyclotomic:
    """cos(k*pi/r), exactly, in a field containing zeta_{2r}."""
    if field is None:
        field = CycField(2 * r)
    z = root_of_unity(2 * r, k, field)
    zi = root_of_unity(2 * r, -k, field)
    return (z + zi) / 2


def sqrt_sign_power(j: int, field: CycField) -> Cyclotomic:
    """sqrt((-1)^j) with the convention: i for odd j, 1 for even j."""
    return imaginary_unit(field) if j % 2 else field.one


def _legendre(a: int, p: int) -> int:
    s = pow(a % p, (p - 1) // 2, p)
    return -1 if s == p - 1 else s


def _sqrt_prime(p: int, field: CycField) -> Cyclotomic:
    """sqrt(p) for prime p via quadratic Gauss sums (standard embedding)."""
    if p == 2:
        z = root_of_unity(8, 1, field)
        return z - z ** 3
    g = field.zero
    for a in range(1, p):
        g = g + _legendre(a, p) * root_of_unity(p, a, field)
    if p % 4 == 1:
        return g
    # g = i*sqrt(p) when p = 3 mod 4
    return g * root_of_unity(4, -1, field)


def squarefree_part(n: int) -> int:
    s, d = 1, 2
    n = abs(n)
    while d * d <= n:
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        if e % 2:
            s *= d
        d += 1
    return s * n


def sqrt_rational(q, field: CycField) -> Cyclotomic:
    """sqrt of a rational, as an exact element of the ambient cyclotomic field.

    Uses the positive square root under the standard embedding; requires the
    conductor to be divisible by 4*s, s the squarefree part (and by 4 for the
    sign when q < 0).
    """
    q = Fraction(q)
    if q == 0:
        return field.zero
    sign = 1
    if q < 0:
        sign, q = -1, -q
    n = q.numerator * q.denominator
    s = squarefree_part(n)
    if s > 1 and field.m % (4 * s):
        raise ValueError(
            f"conductor {field.m} too small for sqrt of squarefree part {s}; "
            f"enlarge to a multiple of {4 * s}"
        )
    if sign < 0 and field.m % 4:
        raise ValueError("conductor must be divisible by 4 for imaginary roots")
    rat = Fraction(_isqrt_exact(n // s), q.denominator)
    out = field.from_rational(rat)
    d = 2
    ss = s
    while ss > 1:
        if ss % d == 0:
            out = out * _sqrt_prime(d, field)
            ss //= d
        else:
            d += 1
    if sign < 0:
        out = out * imaginary_unit(field)
    return out


def _isqrt_exact(n: int) -> int:
    from math import isqrt

    r = isqrt(n)
    if r * r != n:
        raise ValueError(f"{n} is not a perfect square")
    return r


# -- generic scalar helpers -------------------------------------------------


def as_rational_or_none(x) -> Fraction | None:
    if isinstance(x, Cyclotomic):
        return x.as_rational()
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    return None


def expect_rational(x) -> Fraction:
    r = as_rational_or_none(x)
    if r is None:
        raise ConsistencyError(f"value expected to be rational, got {x!r}")
    return r


def to_field(x, field: CycField | None):
    """Coerce an int/Fraction/Cyclotomic into the given field (None = Q)."""
    if field is None:
        if isinstance(x, Cyclotomic):
            return expect_rational(x)
        return Fraction(x)
    if isinstance(x, Cyclotomic):
        return x.embed(field)
    return field.from_rational(x)


def format_exact(x) -> str:
    r = as_rational_or_none(x)
    if r is None:
        raise ConsistencyError(f"non-rational value in rational output: {x!r}")
    return str(r)


def parse_rational(s: str) -> Fraction:
    return Fraction(s)
