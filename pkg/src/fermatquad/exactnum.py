"""Exact arithmetic foundations: prime fields, rationals, Q(sqrt(-3)).

No floating point anywhere: prime-field elements are ints reduced mod p,
quadratic-field elements carry Fraction coordinates.  Every value is
immutable, so everything here is safe to share across threads.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

RationalLike = Union[int, Fraction]


class NotInvertibleError(ZeroDivisionError):
    """Inversion of zero in a field."""


class PoleError(ZeroDivisionError):
    """Rational function evaluated at a pole."""


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin (exact for n < 3.3e24)."""
    if n < 2:
        return False
    for s in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % s == 0:
            return n == s
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


_VALIDATED_PRIMES: set[int] = set()


def _check_prime(p: int) -> None:
    if p not in _VALIDATED_PRIMES:
        if p < 3 or not is_prime(p):
            raise ValueError(f"modulus {p} is not an odd prime")
        _VALIDATED_PRIMES.add(p)


class Fp:
    """Element of the prime field F_p; the modulus travels with the value."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        _check_prime(p)
        object.__setattr__(self, "value", value % p)
        object.__setattr__(self, "p", p)

    def __setattr__(self, *a):  # immutable
        raise AttributeError("Fp values are immutable")

    def _coerce(self, other) -> "Fp":
        if isinstance(other, Fp):
            if other.p != self.p:
                raise ValueError(f"field mismatch: F_{self.p} vs F_{other.p}")
            return other
        if isinstance(other, int):
            return Fp(other, self.p)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other):
        o = self._coerce(other)
        return o if o is NotImplemented else Fp(self.value + o.value, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return o if o is NotImplemented else Fp(self.value - o.value, self.p)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        return o if o is NotImplemented else Fp(self.value * o.value, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Fp(-self.value, self.p)

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return Fp(pow(self.value, e, self.p), self.p)

    def inverse(self) -> "Fp":
        if self.value == 0:
            raise NotInvertibleError(f"0 is not invertible in F_{self.p}")
        return Fp(pow(self.value, self.p - 2, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        return o if o is NotImplemented else self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __eq__(self, other):
        if isinstance(other, int):
            return self.value == other % self.p
        return isinstance(other, Fp) and other.p == self.p and other.value == self.value

    def __hash__(self):
        return hash((self.value, self.p))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"Fp({self.value}, {self.p})"


def fp_inv(x: Fp) -> Fp:
    """Multiplicative inverse in F_p; zero input is not invertible."""
    return x.inverse()


def _frac(x: RationalLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"not a rational: {x!r}")


class QuadNum:
    """a + b*sqrt(-3) with exact rational a, b.

    The norm a^2 + 3 b^2 is positive definite, so every nonzero element
    is invertible and equality is decidable coordinatewise.
    """

    __slots__ = ("a", "b")

    def __init__(self, a: RationalLike = 0, b: RationalLike = 0):
        object.__setattr__(self, "a", _frac(a))
        object.__setattr__(self, "b", _frac(b))

    def __setattr__(self, *a):
        raise AttributeError("QuadNum values are immutable")

    # -- constructors -------------------------------------------------
    @staticmethod
    def sqrt_m3() -> "QuadNum":
        return QuadNum(0, 1)

    @classmethod
    def from_json(cls, d: dict) -> "QuadNum":
        return cls(
            Fraction(int(d["a_num"]), int(d["a_den"])),
            Fraction(int(d["b_num"]), int(d["b_den"])),
        )

    def to_json(self) -> dict:
        return {
            "a_num": str(self.a.numerator),
            "a_den": str(self.a.denominator),
            "b_num": str(self.b.numerator),
            "b_den": str(self.b.denominator),
        }

    # -- ring / field ops ---------------------------------------------
    def _coerce(self, other) -> "QuadNum":
        if isinstance(other, QuadNum):
            return other
        if isinstance(other, (int, Fraction)):
            return QuadNum(other)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other):
        o = self._coerce(other)
        return o if o is NotImplemented else QuadNum(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return o if o is NotImplemented else QuadNum(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return QuadNum(-self.a, -self.b)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        # (a + b w)(c + d w) with w^2 = -3
        return QuadNum(self.a * o.a - 3 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def conjugate(self) -> "QuadNum":
        return QuadNum(self.a, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a + 3 * self.b * self.b

    def inverse(self) -> "QuadNum":
        n = self.norm()
        if n == 0:
            raise NotInvertibleError("0 is not invertible in Q(sqrt(-3))")
        return QuadNum(self.a / n, -self.b / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        return o if o is NotImplemented else self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out, base = QuadNum(1), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return isinstance(other, QuadNum) and self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.a, self.b))

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_rational(self) -> bool:
        return self.b == 0

    def sort_key(self) -> tuple:
        return (self.a, self.b)

    def __repr__(self):
        if self.b == 0:
            return f"QuadNum({self.a})"
        return f"QuadNum({self.a}, {self.b})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}*sqrt(-3)"
        return f"{self.a} + {self.b}*sqrt(-3)"


class RationalFunction:
    """One-variable rational function with Q(sqrt(-3)) coefficients.

    Coefficient lists run low degree to high.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=(QuadNum(1),)):
        self.num = tuple(self._q(c) for c in num)
        self.den = tuple(self._q(c) for c in den)
        if all(c.is_zero() for c in self.den):
            raise ZeroDivisionError("zero denominator polynomial")

    @staticmethod
    def _q(c) -> QuadNum:
        return c if isinstance(c, QuadNum) else QuadNum(c)

    @staticmethod
    def _eval_poly(coeffs: tuple[QuadNum, ...], x: QuadNum) -> QuadNum:
        acc = QuadNum(0)
        for c in reversed(coeffs):
            acc = acc * x + c
        return acc

    def __call__(self, x: QuadNum) -> QuadNum:
        den = self._eval_poly(self.den, x)
        if den.is_zero():
            raise PoleError(f"pole at input {x}")
        return self._eval_poly(self.num, x) * den.inverse()


def quad_eval_rational(f: RationalFunction, x: QuadNum) -> QuadNum:
    """Evaluate f at x exactly; raises PoleError at a pole."""
    return f(x)
