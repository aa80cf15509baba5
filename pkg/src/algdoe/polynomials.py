"""Exact multivariate polynomials over Q or a prime-order cyclotomic extension.

A polynomial is a sparse map from exponent tuples to nonzero coefficients,
attached to a :class:`PolyRing` that fixes the indeterminate names and the
coefficient field.  All arithmetic is exact; there is no floating point
anywhere in this module.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .cyclotomic import QQ, CyclotomicField, CyclotomicNumber
from .errors import (
    CoefficientFieldError,
    DimensionError,
    InputError,
    ZeroPolynomialError,
)
from .orders import Monomial, TermOrder

# -- monomial helpers --------------------------------------------------------


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    """True if a divides b."""
    return all(x <= y for x, y in zip(a, b))


def mono_quot(a: Monomial, b: Monomial) -> Monomial:
    """a / b, assuming b divides a."""
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


class PolyRing:
    """Polynomial ring context: indeterminate names plus a coefficient field."""

    __slots__ = ("names", "field", "_index", "_zero", "_one")

    def __init__(self, names, field=QQ):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise InputError("duplicate indeterminate names")
        if not names:
            raise InputError("a polynomial ring needs at least one indeterminate")
        self.names = names
        self.field = field
        self._index = {n: i for i, n in enumerate(names)}
        self._zero = None
        self._one = None

    @property
    def nvars(self) -> int:
        return len(self.names)

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.names == other.names
            and self.field == other.field
        )

    def __hash__(self):
        return hash((self.names, self.field))

    def __repr__(self):
        return f"PolyRing({','.join(self.names)}; {self.field!r})"

    # -- element constructors -------------------------------------------

    def zero(self) -> "Polynomial":
        if self._zero is None:
            self._zero = Polynomial(self, {})
        return self._zero

    def one(self) -> "Polynomial":
        if self._one is None:
            self._one = self.const(1)
        return self._one

    def const(self, c) -> "Polynomial":
        c = self.field.coerce(c)
        if not c:
            return self.zero()
        return Polynomial(self, {(0,) * self.nvars: c})

    def var(self, name_or_index) -> "Polynomial":
        if isinstance(name_or_index, int):
            i = name_or_index
        else:
            try:
                i = self._index[name_or_index]
            except KeyError:
                raise InputError(f"unknown indeterminate {name_or_index!r}") from None
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): self.field.coerce(1)})

    def monomial(self, expts: Monomial, coeff=1) -> "Polynomial":
        expts = tuple(expts)
        if len(expts) != self.nvars or any(e < 0 for e in expts):
            raise DimensionError(f"bad exponent vector {expts} for {self!r}")
        c = self.field.coerce(coeff)
        if not c:
            return self.zero()
        return Polynomial(self, {expts: c})

    def poly(self, terms) -> "Polynomial":
        """Build a polynomial from an exponent-to-coefficient mapping."""
        clean = {}
        for e, c in dict(terms).items():
            e = tuple(e)
            if len(e) != self.nvars or any(x < 0 for x in e):
                raise DimensionError(f"bad exponent vector {e} for {self!r}")
            c = self.field.coerce(c)
            if c:
                clean[e] = clean.get(e, self.field.zero) + c
                if not clean[e]:
                    del clean[e]
        return Polynomial(self, clean)

    # -- conversions ------------------------------------------------------

    def embed(self, f: "Polynomial") -> "Polynomial":
        """Embed a polynomial from a rational ring with the same names."""
        if f.ring.names != self.names:
            raise DimensionError("cannot embed between different universes")
        return Polynomial(
            self, {e: self.field.coerce(c) for e, c in f.terms.items()}
        )

    def parse(self, text: str) -> "Polynomial":
        return _parse_polynomial(self, text)


class Polynomial:
    """Immutable sparse polynomial. Use :class:`PolyRing` to construct."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms

    # -- predicates -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * self.ring.nvars, self.ring.field.zero)

    def total_degree(self) -> int:
        if not self.terms:
            return 0
        return max(sum(e) for e in self.terms)

    # -- arithmetic -------------------------------------------------------

    def _compatible(self, other: "Polynomial"):
        if self.ring is other.ring:
            return
        if self.ring.names != other.ring.names:
            raise DimensionError("polynomials over different universes")
        if self.ring.field != other.ring.field:
            raise CoefficientFieldError(
                "polynomials over different coefficient fields; embed first"
            )

    def _as_poly(self, other):
        if isinstance(other, Polynomial):
            self._compatible(other)
            return other
        try:
            return self.ring.const(other)
        except CoefficientFieldError:
            return None

    def __add__(self, other):
        o = self._as_poly(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for e, c in o.terms.items():
            v = out.get(e)
            v = c if v is None else v + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        o = self._as_poly(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = self.ring.field.coerce(other)
            if not c:
                return self.ring.zero()
            return Polynomial(self.ring, {e: v * c for e, v in self.terms.items()})
        self._compatible(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = mono_mul(e1, e2)
                v = out.get(e)
                p = c1 * c2
                v = p if v is None else v + p
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise InputError("negative polynomial powers are not defined")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def mul_term(self, expts: Monomial, coeff) -> "Polynomial":
        """Multiply by a single term coeff * x^expts."""
        c = self.ring.field.coerce(coeff)
        if not c:
            return self.ring.zero()
        return Polynomial(
            self.ring, {mono_mul(e, expts): v * c for e, v in self.terms.items()}
        )

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction, CyclotomicNumber)):
            try:
                return self == self.ring.const(other)
            except CoefficientFieldError:
                return NotImplemented
        return NotImplemented

    __hash__ = None

    # -- leading data -----------------------------------------------------

    def leading_monomial(self, order: TermOrder) -> Monomial:
        if not self.terms:
            raise ZeroPolynomialError("the zero polynomial has no leading term")
        return max(self.terms, key=order.key)

    def leading_term(self, order: TermOrder):
        m = self.leading_monomial(order)
        return m, self.terms[m]

    def monic(self, order: TermOrder) -> "Polynomial":
        _, c = self.leading_term(order)
        if c == self.ring.field.one:
            return self
        inv = c ** -1
        return Polynomial(self.ring, {e: v * inv for e, v in self.terms.items()})

    def sorted_terms(self, order: TermOrder, reverse: bool = True):
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=reverse)

    # -- evaluation and display --------------------------------------------

    def evaluate(self, point):
        """Evaluate at a point given as one field element per indeterminate."""
        if len(point) != self.ring.nvars:
            raise DimensionError("point length does not match the universe")
        values = [self.ring.field.coerce(v) for v in point]
        total = self.ring.field.zero
        for e, c in self.terms.items():
            v = c
            for x, k in zip(values, e):
                if k:
                    v = v * x**k
            total = total + v
        return total

    def text(self, order: TermOrder) -> str:
        """Canonical text form: terms in descending order under ``order``."""
        return format_polynomial(self, order)

    def __repr__(self):
        if not self.terms:
            return "Polynomial<0>"
        # order-free display: sort by raw exponent tuples, largest first
        parts = _term_strings(self, sorted(self.terms, reverse=True))
        return f"Polynomial<{_join_terms(parts)}>"


def leading_term(f: Polynomial, order: TermOrder):
    """The order-maximal monomial of f with its coefficient."""
    return f.leading_term(order)


# -- division ----------------------------------------------------------------


def normal_form(f: Polynomial, divisors, order: TermOrder):
    """Multivariate division of f by an ordered list of divisors.

    Returns ``(remainder, cofactors)`` with
    ``f == sum(cofactors[i] * divisors[i]) + remainder`` holding exactly, and no
    remainder term divisible by any divisor's leading term.  When several
    leading terms divide the current term, the earliest divisor in the list is
    used, which makes the cofactors deterministic.
    """
    divisors = list(divisors)
    for g in divisors:
        if g.is_zero():
            raise ZeroPolynomialError("division by a zero polynomial")
        if g.ring != f.ring:
            f._compatible(g)
    div_data = [(g.terms, *g.leading_term(order)) for g in divisors]
    remainder, cofactors = _division(f.terms, div_data, order)
    ring = f.ring
    return Polynomial(ring, remainder), [Polynomial(ring, c) for c in cofactors]


def _division(fterms: dict, div_data, order: TermOrder):
    """Division core over raw term dicts.

    ``div_data`` holds ``(terms, leading_monomial, leading_coeff)`` per divisor
    so repeated callers can precompute leading data once.
    """
    key = order.key
    p = dict(fterms)
    remainder: dict = {}
    cofactors = [dict() for _ in div_data]
    while p:
        m = max(p, key=key)
        c = p[m]
        for i, (gterms, gm, gc) in enumerate(div_data):
            if mono_divides(gm, m):
                q = mono_quot(m, gm)
                qc = c * gc**-1
                cof = cofactors[i]
                v = cof.get(q)
                v = qc if v is None else v + qc
                if v:
                    cof[q] = v
                else:
                    cof.pop(q, None)
                for te, tc in gterms.items():
                    e = mono_mul(q, te)
                    v = p.get(e)
                    d = qc * tc
                    v = -d if v is None else v - d
                    if v:
                        p[e] = v
                    else:
                        p.pop(e, None)
                break
        else:
            remainder[m] = c
            del p[m]
    return remainder, cofactors


# -- text format ---------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<lpar>\()|(?P<rpar>\))|(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^]))"
)


def _coeff_str(c) -> str:
    if isinstance(c, CyclotomicNumber):
        if c.is_rational():
            return str(c.rational_part())
        return f"({c})"
    return str(c)


def _term_strings(f: Polynomial, monomials) -> list[str]:
    names = f.ring.names
    out = []
    for e in monomials:
        c = f.terms[e]
        factors = [
            (names[i] if k == 1 else f"{names[i]}^{k}")
            for i, k in enumerate(e)
            if k
        ]
        mono = "*".join(factors)
        cs = _coeff_str(c)
        if not mono:
            out.append(cs)
        elif cs == "1":
            out.append(mono)
        elif cs == "-1":
            out.append("-" + mono)
        else:
            out.append(f"{cs}*{mono}")
    return out


def _join_terms(parts: list[str]) -> str:
    text = parts[0]
    for p in parts[1:]:
        text += p if p.startswith("-") else "+" + p
    return text


def format_polynomial(f: Polynomial, order: TermOrder) -> str:
    if not f.terms:
        return "0"
    monomials = sorted(f.terms, key=order.key, reverse=True)
    return _join_terms(_term_strings(f, monomials))


def _parse_polynomial(ring: PolyRing, text: str) -> Polynomial:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == m.start():
            stripped = text[pos:].strip()
            if not stripped:
                break
            raise InputError(f"cannot tokenize polynomial near {stripped[:20]!r}")
        pos = m.end()
        kind = m.lastgroup
        tokens.append((kind, m.group(kind)))

    i = 0

    def peek():
        return tokens[i] if i < len(tokens) else (None, None)

    def take(kind=None):
        nonlocal i
        tok = peek()
        if kind is not None and tok[0] != kind:
            raise InputError(f"unexpected token {tok[1]!r} in polynomial")
        i += 1
        return tok

    def parse_rational() -> Fraction:
        num = int(take("num")[1])
        if peek() == ("op", "/"):
            take()
            den = int(take("num")[1])
            return Fraction(num, den)
        return Fraction(num)

    def parse_cyclotomic():
        # inside parentheses: rational combination of w powers
        total = ring.field.zero
        sign = 1
        if peek() == ("op", "-"):
            take()
            sign = -1
        while True:
            total = total + sign * parse_cyclo_term()
            tok = peek()
            if tok == ("op", "+"):
                take()
                sign = 1
            elif tok == ("op", "-"):
                take()
                sign = -1
            else:
                return total

    def parse_cyclo_term():
        kind, val = peek()
        coeff = Fraction(1)
        if kind == "num":
            coeff = parse_rational()
            if peek() == ("op", "*"):
                take()
            else:
                return ring.field.coerce(coeff)
        kind, val = take("name")
        if val != "w":
            raise InputError(f"unexpected symbol {val!r} in coefficient")
        power = 1
        if peek() == ("op", "^"):
            take()
            power = int(take("num")[1])
        if not isinstance(ring.field, CyclotomicField):
            raise InputError("cyclotomic coefficient in a rational ring")
        return coeff * CyclotomicNumber.root(ring.field.order, power)

    def parse_term():
        expts = [0] * ring.nvars
        coeff = None
        saw_factor = False
        while True:
            kind, val = peek()
            if kind == "num":
                c = parse_rational()
                coeff = c if coeff is None else coeff * c
                saw_factor = True
            elif kind == "lpar":
                take()
                c = parse_cyclotomic()
                take("rpar")
                coeff = c if coeff is None else coeff * c
                saw_factor = True
            elif kind == "name":
                take()
                if val not in ring._index:
                    raise InputError(f"unknown indeterminate {val!r}")
                power = 1
                if peek() == ("op", "^"):
                    take()
                    power = int(take("num")[1])
                expts[ring._index[val]] += power
                saw_factor = True
            else:
                raise InputError("empty term in polynomial")
            if peek() == ("op", "*"):
                take()
                continue
            break
        if not saw_factor:
            raise InputError("empty term in polynomial")
        c = ring.field.coerce(1) if coeff is None else ring.field.coerce(coeff)
        return tuple(expts), c

    terms: dict = {}
    sign = 1
    kind, val = peek()
    if kind == "op" and val in "+-":
        take()
        sign = -1 if val == "-" else 1
    while True:
        e, c = parse_term()
        c = c * sign if sign < 0 else c
        if c:
            prev = terms.get(e)
            v = c if prev is None else prev + c
            if v:
                terms[e] = v
            else:
                terms.pop(e, None)
        kind, val = peek()
        if kind is None:
            break
        if kind == "op" and val in "+-":
            take()
            sign = -1 if val == "-" else 1
        else:
            raise InputError(f"unexpected token {val!r} between terms")
    return Polynomial(ring, terms)
