"""Exact coefficient fields: the rationals and prime-order cyclotomic extensions.

Rational arithmetic is delegated to :class:`fractions.Fraction`, which already
guarantees lowest terms and a positive denominator.  A cyclotomic number of
prime order s is stored on the power basis 1, w, ..., w^(s-2) where
w = exp(2*pi*i/s); the relation w^(s-1) = -(1 + w + ... + w^(s-2)) makes the
representation canonical, so equality and zero tests are coordinate-wise.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

from .errors import CoefficientFieldError, InputError

Rational = Union[int, Fraction]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _check_order(s: int) -> None:
    if not is_prime(s):
        raise InputError(f"cyclotomic order must be a prime >= 2, got {s}")


@dataclass(frozen=True)
class CyclotomicNumber:
    """Element of Q(w_s) for prime s, on the basis 1, w, ..., w^(s-2)."""

    order: int
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        _check_order(self.order)
        if len(self.coords) != self.order - 1:
            raise CoefficientFieldError(
                f"expected {self.order - 1} coordinates, got {len(self.coords)}"
            )

    # -- helpers ---------------------------------------------------------

    @staticmethod
    def from_rational(q: Rational, order: int) -> "CyclotomicNumber":
        _check_order(order)
        coords = [Fraction(0)] * (order - 1)
        coords[0] = Fraction(q)
        return CyclotomicNumber(order, tuple(coords))

    @staticmethod
    def root(order: int, power: int = 1) -> "CyclotomicNumber":
        """w_order raised to ``power``, reduced to canonical coordinates."""
        _check_order(order)
        raw = [Fraction(0)] * (power % order + 1)
        raw[power % order] = Fraction(1)
        return CyclotomicNumber(order, _reduce(order, raw))

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coords[1:])

    def rational_part(self) -> Fraction:
        if not self.is_rational():
            raise CoefficientFieldError(f"{self} is not rational")
        return self.coords[0]

    def _coerce(self, other):
        if isinstance(other, CyclotomicNumber):
            if other.order != self.order:
                if other.is_rational():
                    return CyclotomicNumber.from_rational(other.coords[0], self.order)
                raise CoefficientFieldError(
                    f"cannot mix cyclotomic orders {self.order} and {other.order}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return CyclotomicNumber.from_rational(other, self.order)
        return None

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CyclotomicNumber(
            self.order, tuple(a + b for a, b in zip(self.coords, o.coords))
        )

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber(self.order, tuple(-a for a in self.coords))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CyclotomicNumber(
            self.order, tuple(a - b for a, b in zip(self.coords, o.coords))
        )

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        s = self.order
        raw = [Fraction(0)] * (2 * s - 3)
        for i, a in enumerate(self.coords):
            if a == 0:
                continue
            for j, b in enumerate(o.coords):
                if b:
                    raw[i + j] += a * b
        return CyclotomicNumber(s, _reduce(s, raw))

    __rmul__ = __mul__

    def inverse(self) -> "CyclotomicNumber":
        """Multiplicative inverse, by solving the multiplication matrix exactly."""
        if not self:
            raise ZeroDivisionError("cyclotomic division by zero")
        s = self.order
        d = s - 1
        # column j holds the coordinates of self * w^j
        cols = []
        for j in range(d):
            cols.append((self * CyclotomicNumber.root(s, j)).coords)
        # solve sum_j x_j * cols[j] = e_0 by Gaussian elimination
        aug = [[cols[j][i] for j in range(d)] + [Fraction(1 if i == 0 else 0)]
               for i in range(d)]
        for k in range(d):
            pivot = next(r for r in range(k, d) if aug[r][k] != 0)
            aug[k], aug[pivot] = aug[pivot], aug[k]
            pk = aug[k][k]
            aug[k] = [v / pk for v in aug[k]]
            for r in range(d):
                if r != k and aug[r][k] != 0:
                    f = aug[r][k]
                    aug[r] = [v - f * w for v, w in zip(aug[r], aug[k])]
        return CyclotomicNumber(s, tuple(aug[j][d] for j in range(d)))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = CyclotomicNumber.from_rational(1, self.order)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- comparisons / protocol ------------------------------------------

    def __bool__(self):
        return any(c != 0 for c in self.coords)

    def __eq__(self, other):
        if isinstance(other, CyclotomicNumber):
            if other.order == self.order:
                return self.coords == other.coords
            return (
                self.is_rational()
                and other.is_rational()
                and self.coords[0] == other.coords[0]
            )
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coords[0] == other
        return NotImplemented

    def __hash__(self):
        # rational-valued elements hash like their Fraction value
        if self.is_rational():
            return hash(self.coords[0])
        return hash((self.order, self.coords))

    def __str__(self):
        if not self:
            return "0"
        parts = []
        for k, c in enumerate(self.coords):
            if c == 0:
                continue
            if k == 0:
                parts.append(str(c))
            else:
                mono = "w" if k == 1 else f"w^{k}"
                if c == 1:
                    term = mono
                elif c == -1:
                    term = f"-{mono}"
                else:
                    term = f"{c}*{mono}"
                if parts and not term.startswith("-"):
                    term = "+" + term
                parts.append(term)
        out = parts[0]
        for t in parts[1:]:
            out += t if t.startswith(("+", "-")) else "+" + t
        return out

    def __repr__(self):
        return f"CyclotomicNumber({self.order}, {self})"


def _reduce(s: int, raw: list[Fraction]) -> tuple[Fraction, ...]:
    """Fold arbitrary w-powers onto the canonical basis 1, w, ..., w^(s-2)."""
    out = [Fraction(0)] * (s - 1)
    carry = Fraction(0)
    for e, c in enumerate(raw):
        if c == 0:
            continue
        e %= s
        if e == s - 1:
            carry += c
        else:
            out[e] += c
    if carry:
        for i in range(s - 1):
            out[i] -= carry
    return tuple(out)


def omega(order: int, power: int = 1) -> CyclotomicNumber:
    """The root of unity w_order^power as an exact cyclotomic number."""
    return CyclotomicNumber.root(order, power)


class RationalField:
    """The field Q with Fraction elements."""

    name = "QQ"
    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, value):
        if isinstance(value, bool):
            raise CoefficientFieldError("booleans are not field elements")
        if isinstance(value, (int, Fraction)):
            return Fraction(value)
        if isinstance(value, CyclotomicNumber):
            if value.is_rational():
                return value.rational_part()
            raise CoefficientFieldError(
                f"cannot coerce non-rational cyclotomic {value} into QQ; use embed()"
            )
        raise CoefficientFieldError(f"cannot coerce {value!r} into QQ")

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


@dataclass(frozen=True)
class CyclotomicField:
    """The field Q(w_s) for prime s."""

    order: int

    def __post_init__(self):
        _check_order(self.order)

    @property
    def name(self):
        return f"QQ(w{self.order})"

    @property
    def zero(self):
        return CyclotomicNumber.from_rational(0, self.order)

    @property
    def one(self):
        return CyclotomicNumber.from_rational(1, self.order)

    def coerce(self, value):
        if isinstance(value, bool):
            raise CoefficientFieldError("booleans are not field elements")
        if isinstance(value, (int, Fraction)):
            return CyclotomicNumber.from_rational(value, self.order)
        if isinstance(value, CyclotomicNumber):
            if value.order == self.order:
                return value
            if value.is_rational():
                return CyclotomicNumber.from_rational(value.coords[0], self.order)
            raise CoefficientFieldError(
                f"cannot mix cyclotomic orders {value.order} and {self.order}"
            )
        raise CoefficientFieldError(f"cannot coerce {value!r} into {self.name}")

    def __repr__(self):
        return self.name


QQ = RationalField()


@lru_cache(maxsize=None)
def cyclotomic_field(order: int) -> CyclotomicField:
    return CyclotomicField(order)


def embed(value: Rational, field) -> object:
    """Explicit embedding of a rational value into the given field."""
    return field.coerce(Fraction(value))
