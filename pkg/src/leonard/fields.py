"""Exact scalar arithmetic: arbitrary-precision rationals and odd prime fields.

Every computation in this package is exact; no floating point is ever
involved.  A "scalar" is either a rational number (``gmpy2.mpq`` when
available, ``fractions.Fraction`` otherwise -- both normalize to lowest
terms with positive denominator) or a :class:`ModularInteger` residue in
GF(p).  Fields are small stateless objects that coerce, format and parse
scalars and provide the handful of operations that depend on the field
itself (square roots, dot products).

Serialization: rationals render as ``"p/q"`` (or ``"p"`` when q = 1),
prime-field elements as the decimal residue string; the modulus lives in
a header, never on the element.
"""

from __future__ import annotations

import math
from typing import Any, Sequence

try:
    from gmpy2 import mpq as _rational
except ImportError:  # pragma: no cover - gmpy2 is an optional speedup
    from fractions import Fraction as _rational

Scalar = Any


class FieldError(ArithmeticError):
    """Base class for exact-arithmetic failures."""


class FieldDegeneracyError(FieldError, ZeroDivisionError):
    """Division by a zero residue or zero rational."""


# Deterministic Miller-Rabin witnesses for n < 3.3 * 10**24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class ModularInteger:
    """A residue modulo an odd prime, with field arithmetic.

    Mixed arithmetic with plain ``int`` coerces the integer; mixing two
    residues with different moduli is an error, never a silent cast.
    """

    __slots__ = ("value", "modulus")

    def __init__(self, value: int, modulus: int):
        self.value = value % modulus
        self.modulus = modulus

    def _coerce(self, other):
        if isinstance(other, ModularInteger):
            if other.modulus != self.modulus:
                raise ValueError(
                    f"mixed moduli {self.modulus} and {other.modulus}")
            return other.value
        if isinstance(other, int):
            return other % self.modulus
        return None

    def __add__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return ModularInteger(self.value + v, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return ModularInteger(self.value - v, self.modulus)

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return ModularInteger(v - self.value, self.modulus)

    def __mul__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return ModularInteger(self.value * v, self.modulus)

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        if v == 0:
            raise FieldDegeneracyError(
                f"division by zero residue mod {self.modulus}")
        return ModularInteger(
            self.value * pow(v, -1, self.modulus), self.modulus)

    def __rtruediv__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        if self.value == 0:
            raise FieldDegeneracyError(
                f"division by zero residue mod {self.modulus}")
        return ModularInteger(
            v * pow(self.value, -1, self.modulus), self.modulus)

    def __pow__(self, exponent: int):
        if exponent < 0 and self.value == 0:
            raise FieldDegeneracyError(
                f"inverse of zero residue mod {self.modulus}")
        return ModularInteger(
            pow(self.value, exponent, self.modulus), self.modulus)

    def __neg__(self):
        return ModularInteger(-self.value, self.modulus)

    def __eq__(self, other):
        if isinstance(other, ModularInteger):
            return self.modulus == other.modulus and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.modulus
        return NotImplemented

    def __hash__(self):
        return hash((self.modulus, self.value))

    def __bool__(self):
        return self.value != 0

    def __str__(self):
        return str(self.value)

    def __repr__(self):
        return f"ModularInteger({self.value}, {self.modulus})"


def _reject_inexact(value) -> None:
    if isinstance(value, float):
        raise TypeError("floating-point values are not exact; "
                        "pass an int, a string, or a rational")


class RationalField:
    """The rational numbers with exact arbitrary-precision arithmetic."""

    kind = "rational"

    def __call__(self, value) -> Scalar:
        _reject_inexact(value)
        if isinstance(value, ModularInteger):
            raise TypeError("cannot coerce a prime-field residue to a rational")
        return _rational(value)

    @property
    def zero(self) -> Scalar:
        return _rational(0)

    @property
    def one(self) -> Scalar:
        return _rational(1)

    def parse(self, text: str) -> Scalar:
        return _rational(text)

    def format(self, x: Scalar) -> str:
        return str(x)

    def sqrt(self, x: Scalar) -> Scalar | None:
        """An exact square root of x, or None when x is not a square."""
        x = self(x)
        if x < 0:
            return None
        num, den = int(x.numerator), int(x.denominator)
        rn, rd = math.isqrt(num), math.isqrt(den)
        if rn * rn != num or rd * rd != den:
            return None
        return _rational(rn, rd)

    @staticmethod
    def dot(xs: Sequence[Scalar], ys: Sequence[Scalar]) -> Scalar:
        return sum(x * y for x, y in zip(xs, ys))

    def to_json(self) -> dict:
        return {"kind": "rational"}

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("rational")

    def __repr__(self):
        return "QQ"


class PrimeField:
    """GF(p) for an odd prime p, elements represented as residues."""

    kind = "prime"

    def __init__(self, modulus: int):
        if not is_prime(modulus):
            raise ValueError(f"modulus {modulus} is not prime")
        if modulus == 2:
            raise ValueError("modulus 2 is too small to be useful here")
        self.modulus = modulus

    def __call__(self, value) -> ModularInteger:
        _reject_inexact(value)
        if isinstance(value, ModularInteger):
            if value.modulus != self.modulus:
                raise ValueError(
                    f"residue mod {value.modulus} in field mod {self.modulus}")
            return value
        if isinstance(value, int):
            return ModularInteger(value, self.modulus)
        if isinstance(value, str):
            return self.parse(value)
        raise TypeError(f"cannot coerce {value!r} into GF({self.modulus})")

    @property
    def zero(self) -> ModularInteger:
        return ModularInteger(0, self.modulus)

    @property
    def one(self) -> ModularInteger:
        return ModularInteger(1, self.modulus)

    def parse(self, text: str) -> ModularInteger:
        # "a/b" is accepted so rational input files can be reinterpreted
        # modulo p without rewriting them.
        text = text.strip()
        if "/" in text:
            num, den = text.split("/", 1)
            return self(int(num)) / self(int(den))
        return ModularInteger(int(text), self.modulus)

    def format(self, x: ModularInteger) -> str:
        return str(self(x).value)

    def sqrt(self, x) -> ModularInteger | None:
        """A square root of x in GF(p) via Tonelli-Shanks, or None."""
        a = self(x).value
        p = self.modulus
        if a == 0:
            return self.zero
        if pow(a, (p - 1) // 2, p) != 1:
            return None
        if p % 4 == 3:
            return ModularInteger(pow(a, (p + 1) // 4, p), p)
        # Tonelli-Shanks for p = 1 (mod 4).
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = 2
        while pow(z, (p - 1) // 2, p) != p - 1:
            z += 1
        m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
        while t != 1:
            t2, i = t * t % p, 1
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m, c = i, b * b % p
            t, r = t * c % p, r * b % p
        return ModularInteger(r, p)

    def dot(self, xs: Sequence[ModularInteger],
            ys: Sequence[ModularInteger]) -> ModularInteger:
        # Hot path for matrix products: one reduction per entry.
        return ModularInteger(
            sum(x.value * y.value for x, y in zip(xs, ys)), self.modulus)

    def to_json(self) -> dict:
        return {"kind": "prime", "modulus": self.modulus}

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.modulus == self.modulus

    def __hash__(self):
        return hash(("prime", self.modulus))

    def __repr__(self):
        return f"GF({self.modulus})"


QQ = RationalField()

Field = Any  # RationalField | PrimeField


def GF(modulus: int) -> PrimeField:
    return PrimeField(modulus)


def field_from_json(obj: dict) -> Field:
    kind = obj.get("kind")
    if kind == "rational":
        return QQ
    if kind == "prime":
        return PrimeField(int(obj["modulus"]))
    raise ValueError(f"unknown field kind {kind!r}")
