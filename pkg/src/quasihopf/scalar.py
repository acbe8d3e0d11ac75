"""Exact arithmetic in the cyclotomic field Q(zeta_N).

Elements are stored on the power basis 1, zeta, ..., zeta^(phi(N)-1) as an
integer numerator vector over a single positive denominator, always in lowest
terms.  No floating point is used anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

from .errors import DivisionByZero, FieldMismatch


def _poly_divmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    """Integer polynomial division by a monic divisor (coefficients low to high)."""
    num = list(num)
    if den[-1] != 1:
        raise ValueError("divisor must be monic")
    dd = len(den) - 1
    if len(num) - 1 < dd:
        return [0], num
    quot = [0] * (len(num) - dd)
    for k in range(len(num) - 1, dd - 1, -1):
        c = num[k]
        if c:
            quot[k - dd] = c
            for j in range(dd + 1):
                num[k - dd + j] -= c * den[j]
    rem = num[:dd] or [0]
    return quot, rem


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients (low to high) of the n-th cyclotomic polynomial.

    Obtained by dividing x^n - 1 by Phi_d for every proper divisor d of n.
    """
    if n < 1:
        raise ValueError(f"cyclotomic order must be positive, got {n}")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _poly_divmod(poly, list(cyclotomic_polynomial(d)))
            if any(rem):
                raise ArithmeticError(f"Phi_{d} does not divide x^{n}-1")
    return tuple(poly)


class CyclotomicField:
    """The field Q(zeta_N); instances are cached, so ``make_field(N) is make_field(N)``."""

    __slots__ = ("N", "minpoly", "degree", "_reduction", "zero", "one", "__weakref__")

    def __init__(self, N: int):
        self.N = N
        self.minpoly = cyclotomic_polynomial(N)
        self.degree = len(self.minpoly) - 1
        deg = self.degree
        # zeta^m for deg <= m <= 2*deg - 2, written on the power basis
        red: list[list[int]] = []
        cur = [-c for c in self.minpoly[:deg]]  # zeta^deg
        for _ in range(max(deg - 1, 0)):
            red.append(cur)
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                cur = [c - top * m for c, m in zip(cur, self.minpoly[:deg])]
        self._reduction = red
        self.zero = Scalar._raw(self, (0,) * deg, 1)
        self.one = Scalar._raw(self, (1,) + (0,) * (deg - 1), 1)

    def __repr__(self) -> str:
        return f"CyclotomicField({self.N})"

    def __reduce__(self):
        return (make_field, (self.N,))

    @property
    def is_rational(self) -> bool:
        return self.degree == 1

    def __call__(self, value) -> "Scalar":
        return self.coerce(value)

    def coerce(self, value) -> "Scalar":
        if isinstance(value, Scalar):
            if value.field is not self:
                raise FieldMismatch(f"{value.field!r} vs {self!r}")
            return value
        if isinstance(value, int):
            return Scalar._raw(self, (value,) + (0,) * (self.degree - 1), 1)
        if isinstance(value, Fraction):
            return Scalar(self, (value.numerator,) + (0,) * (self.degree - 1), value.denominator)
        raise TypeError(f"cannot coerce {type(value).__name__} into {self!r}")

    def zeta(self, power: int = 1) -> "Scalar":
        """zeta_N ** power, for any integer power."""
        return self._zeta_power(power % self.N)

    def _zeta_power(self, m: int) -> "Scalar":
        deg = self.degree
        if self.N == 1:
            return self.one
        if m < deg:
            return Scalar._raw(self, tuple(1 if i == m else 0 for i in range(deg)), 1)
        _, rem = _poly_divmod([0] * m + [1], list(self.minpoly))
        rem = rem + [0] * (deg - len(rem))
        return Scalar._raw(self, tuple(rem), 1)

    def from_fractions(self, coeffs) -> "Scalar":
        coeffs = [Fraction(c) for c in coeffs]
        if len(coeffs) != self.degree:
            raise ValueError(f"expected {self.degree} coefficients, got {len(coeffs)}")
        den = 1
        for c in coeffs:
            den = den * c.denominator // gcd(den, c.denominator)
        return Scalar(self, tuple(int(c * den) for c in coeffs), den)

    def is_primitive_root(self) -> bool:
        """Check zeta^N = 1 and zeta^m != 1 for 0 < m < N."""
        z = self.zeta(1)
        acc = self.one
        for m in range(1, self.N + 1):
            acc = acc * z
            if (acc == self.one) != (m == self.N):
                return False
        return True


@lru_cache(maxsize=None)
def make_field(N: int) -> CyclotomicField:
    if not isinstance(N, int) or N < 1:
        raise ValueError(f"cyclotomic order must be a positive integer, got {N!r}")
    return CyclotomicField(N)


class Scalar:
    """An immutable element of Q(zeta_N): (sum num[i] zeta^i) / den."""

    __slots__ = ("field", "num", "den", "_hash")

    def __init__(self, field: CyclotomicField, num, den: int = 1):
        num = tuple(int(c) for c in num)
        if len(num) != field.degree:
            raise ValueError(f"expected {field.degree} coefficients, got {len(num)}")
        if den == 0:
            raise DivisionByZero("zero denominator")
        if den < 0:
            num, den = tuple(-c for c in num), -den
        g = gcd(den, *num)
        if g > 1:
            num, den = tuple(c // g for c in num), den // g
        self.field = field
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def _raw(cls, field, num, den):
        obj = object.__new__(cls)
        obj.field = field
        obj.num = num
        obj.den = den
        obj._hash = None
        return obj

    @classmethod
    def _normalized(cls, field, num, den):
        g = gcd(den, *num)
        if g != 1:
            num = tuple(c // g for c in num)
            den //= g
        return cls._raw(field, num, den)

    def _other(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            if other.field is not self.field:
                raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
            return other
        return self.field.coerce(other)

    def __bool__(self) -> bool:
        return any(self.num)

    def is_one(self) -> bool:
        return self.den == 1 and self.num[0] == 1 and not any(self.num[1:])

    def __eq__(self, other) -> bool:
        if isinstance(other, Scalar):
            return self.field is other.field and self.den == other.den and self.num == other.num
        if isinstance(other, (int, Fraction)):
            try:
                return self == self.field.coerce(other)
            except TypeError:
                return False
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.field.N, self.num, self.den))
        return self._hash

    def __neg__(self) -> "Scalar":
        return Scalar._raw(self.field, tuple(-c for c in self.num), self.den)

    def __add__(self, other) -> "Scalar":
        o = self._other(other)
        if self.den == o.den:
            num = tuple(a + b for a, b in zip(self.num, o.num))
            return Scalar._normalized(self.field, num, self.den)
        num = tuple(a * o.den + b * self.den for a, b in zip(self.num, o.num))
        return Scalar._normalized(self.field, num, self.den * o.den)

    __radd__ = __add__

    def __sub__(self, other) -> "Scalar":
        return self + (-self._other(other))

    def __rsub__(self, other) -> "Scalar":
        return self._other(other) - self

    def __mul__(self, other) -> "Scalar":
        o = self._other(other)
        field = self.field
        deg = field.degree
        if deg == 1:
            return Scalar._normalized(field, (self.num[0] * o.num[0],), self.den * o.den)
        prod = _poly_mul(self.num, o.num)
        head = prod[:deg]
        for k, c in enumerate(prod[deg:]):
            if c:
                for i, r in enumerate(field._reduction[k]):
                    head[i] += c * r
        return Scalar._normalized(field, tuple(head), self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        """Multiplicative inverse by the extended Euclidean algorithm against the minimal polynomial."""
        if not self:
            raise DivisionByZero("inverse of zero")
        field = self.field
        a = _strip([Fraction(c) for c in self.num])
        b = [Fraction(c) for c in field.minpoly]
        # invariant: s*self_poly == a (mod minpoly)
        s0, s1 = [Fraction(1)], [Fraction(0)]
        r0, r1 = a, b
        while len(r1) > 1 or r1[0] != 0:
            q, r = _frac_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _strip(_frac_sub(s0, _frac_mul(q, s1)))
        # r0 is a nonzero constant
        c = r0[0]
        coeffs = [x / c for x in s0]
        _, coeffs = _frac_divmod(coeffs, b)
        coeffs = coeffs + [Fraction(0)] * (field.degree - len(coeffs))
        return field.from_fractions(coeffs[: field.degree]) * self.den

    def __truediv__(self, other) -> "Scalar":
        return self * self._other(other).inverse()

    def __rtruediv__(self, other) -> "Scalar":
        return self._other(other) * self.inverse()

    def __pow__(self, k: int) -> "Scalar":
        if k < 0:
            return self.inverse() ** (-k)
        out, base = self.field.one, self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def coefficients(self) -> list[Fraction]:
        return [Fraction(c, self.den) for c in self.num]

    def as_fraction(self) -> Fraction:
        """The value as a rational number; raises if it has irrational part."""
        if any(self.num[1:]):
            raise ValueError(f"{self} is not rational")
        return Fraction(self.num[0], self.den)

    def to_json(self) -> dict:
        return {"num": list(self.num), "den": self.den}

    @classmethod
    def from_json(cls, field: CyclotomicField, obj) -> "Scalar":
        if isinstance(obj, int):
            return field.coerce(obj)
        try:
            num, den = obj["num"], obj["den"]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed scalar {obj!r}") from exc
        if not isinstance(den, int) or den <= 0 or not all(isinstance(c, int) for c in num):
            raise ValueError(f"malformed scalar {obj!r}")
        if len(num) != field.degree:
            raise ValueError(f"scalar {obj!r} has {len(num)} coefficients, field degree is {field.degree}")
        return cls(field, num, den)

    def __repr__(self) -> str:
        return f"Scalar({self})"

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.num):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                mono = "z" if i == 1 else f"z^{i}"
                terms.append(mono if c == 1 else "-" + mono if c == -1 else f"{c}*{mono}")
        body = " + ".join(terms).replace("+ -", "- ") or "0"
        if self.den == 1:
            return body
        return f"({body})/{self.den}" if len(terms) > 1 else f"{body}/{self.den}"


def _strip(p: list[Fraction]) -> list[Fraction]:
    while len(p) > 1 and p[-1] == 0:
        p = p[:-1]
    return p or [Fraction(0)]


def _frac_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _frac_sub(a, b):
    n = max(len(a), len(b))
    a = a + [Fraction(0)] * (n - len(a))
    b = b + [Fraction(0)] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


def _frac_divmod(num, den):
    num = _strip(list(num))
    den = _strip(list(den))
    if len(num) < len(den):
        return [Fraction(0)], num
    quot = [Fraction(0)] * (len(num) - len(den) + 1)
    lead = den[-1]
    for k in range(len(num) - len(den), -1, -1):
        c = num[k + len(den) - 1] / lead
        quot[k] = c
        if c:
            for j, d in enumerate(den):
                num[k + j] -= c * d
    return quot, _strip(num[: len(den) - 1] or [Fraction(0)])
