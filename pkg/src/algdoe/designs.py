"""Fractional factorial designs, design ideals, and confounding analysis.

A design is a finite set of distinct runs over coded levels.  Two-level
designs are coded plus/minus one; prime-level designs carry integer labels
0..s-1 which the complex coding interprets as powers of the s-th root of
unity.  The design ideal is computed through the point-ideal intersection and
is cached per (design, order).
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from fractions import Fraction

from .cyclotomic import QQ, cyclotomic_field, is_prime, omega
from .errors import InputError, RankError, ScaleError
from .groebner import (
    Budget,
    DEFAULT_BUDGET,
    GroebnerBasis,
    buchberger,
    ideal_membership,
    point_ideal_intersection,
    standard_monomials,
)
from .orders import Monomial, TermOrder
from .polynomials import PolyRing

CODINGS = ("pm1", "integer", "complex")


@dataclass(frozen=True)
class Design:
    """n distinct runs of m factors at s coded levels each."""

    m: int
    s: int
    runs: tuple[tuple[int, ...], ...]
    coding: str = "pm1"

    def __post_init__(self):
        if self.m < 1:
            raise InputError("a design needs at least one factor")
        if not is_prime(self.s):
            raise InputError(f"level count must be prime, got {self.s}")
        if self.coding not in CODINGS:
            raise InputError(f"unknown coding {self.coding!r}")
        if self.coding == "pm1" and self.s != 2:
            raise InputError("plus-minus-one coding requires two levels")
        if self.coding != "pm1" and self.s == 2:
            raise InputError("two-level designs use plus-minus-one coding")
        if not self.runs:
            raise InputError("a design needs at least one run")
        if len(set(self.runs)) != len(self.runs):
            raise InputError("replicated runs are not allowed")
        valid = {-1, 1} if self.coding == "pm1" else set(range(self.s))
        for run in self.runs:
            if len(run) != self.m:
                raise InputError(f"run {run} has wrong length")
            if any(v not in valid for v in run):
                raise InputError(f"run {run} has an invalid coded level")

    @property
    def n(self) -> int:
        return len(self.runs)

    @property
    def var_names(self) -> tuple[str, ...]:
        return tuple(f"x{j + 1}" for j in range(self.m))

    def field(self):
        return QQ if self.coding == "pm1" else cyclotomic_field(self.s)

    def levels(self):
        """All coded levels of the ambient full factorial, as field elements."""
        if self.coding == "pm1":
            return [Fraction(-1), Fraction(1)]
        if self.coding == "complex":
            return [omega(self.s, j) for j in range(self.s)]
        return [Fraction(j) for j in range(self.s)]

    def points(self):
        """Runs as tuples of field elements."""
        if self.coding == "pm1":
            return [tuple(Fraction(v) for v in run) for run in self.runs]
        if self.coding == "complex":
            return [tuple(omega(self.s, v) for v in run) for run in self.runs]
        return [tuple(Fraction(v) for v in run) for run in self.runs]

    def ring(self) -> PolyRing:
        return PolyRing(self.var_names, self.field())


def full_factorial(m: int, s: int = 2) -> Design:
    if s == 2:
        runs = tuple(itertools.product((-1, 1), repeat=m))
        return Design(m, 2, runs, "pm1")
    runs = tuple(itertools.product(range(s), repeat=m))
    return Design(m, s, runs, "integer")


# -- design files -------------------------------------------------------------


def format_design(d: Design) -> str:
    lines = [f"m={d.m} s={d.s} coding={d.coding}"]
    for run in d.runs:
        lines.append(" ".join(str(v) for v in run))
    return "\n".join(lines) + "\n"


def parse_design(text: str) -> Design:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise InputError("empty design file")
    header = dict(
        part.split("=", 1) for part in lines[0].split() if "=" in part
    )
    try:
        m = int(header["m"])
        s = int(header.get("s", "2"))
        coding = header.get("coding", "pm1" if s == 2 else "integer")
    except (KeyError, ValueError) as exc:
        raise InputError(f"bad design header {lines[0]!r}") from exc
    runs = []
    for ln in lines[1:]:
        try:
            runs.append(tuple(int(v) for v in ln.split()))
        except ValueError as exc:
            raise InputError(f"bad design row {ln!r}") from exc
    return Design(m, s, tuple(runs), coding)


# -- defining words ------------------------------------------------------------


@dataclass(frozen=True)
class Word:
    """A defining word x^bits = sign with square-free exponent bits."""

    bits: tuple[int, ...]
    sign: int

    def __post_init__(self):
        if self.sign not in (-1, 1):
            raise InputError("word sign must be +1 or -1")
        if any(b not in (0, 1) for b in self.bits):
            raise InputError("word exponents must be 0/1")
        if not any(self.bits):
            raise InputError("the empty word is not allowed")


def gf2_independent(vectors) -> bool:
    rows = [int("".join(str(b) for b in v), 2) if any(v) else 0 for v in vectors]
    basis: list[int] = []
    for r in rows:
        for b in basis:
            r = min(r, r ^ b)
        if r == 0:
            return False
        basis.append(r)
        basis.sort(reverse=True)
    return True


def regular_design_from_words(m: int, words) -> Design:
    """The regular two-level fraction satisfying every word x^a = c.

    Words must be independent over GF(2); the result has 2^(m-s) runs where s
    is the number of words.  Runs are listed in ascending lexicographic order
    with -1 before +1, which matches tabulated orthogonal arrays.
    """
    words = tuple(words)
    for w in words:
        if len(w.bits) != m:
            raise InputError(f"word {w} does not match {m} factors")
    if not gf2_independent([w.bits for w in words]):
        raise RankError("defining words are dependent over GF(2)")
    if m > 20:
        raise ScaleError("factor count too large to enumerate the full factorial")
    runs = []
    for point in itertools.product((-1, 1), repeat=m):
        ok = True
        for w in words:
            prod = 1
            for v, b in zip(point, w.bits):
                if b:
                    prod *= v
            if prod != w.sign:
                ok = False
                break
        if ok:
            runs.append(point)
    return Design(m, 2, tuple(runs), "pm1")


# -- design ideals -------------------------------------------------------------


def design_ideal(
    d: Design, order: TermOrder, budget: Budget | None = None
) -> GroebnerBasis:
    """Reduced Groebner basis of the vanishing ideal of the design.

    Prime-level designs with more than two levels must use complex coding so
    that the coefficient field is the cyclotomic extension.
    """
    if d.s > 2 and d.coding != "complex":
        raise InputError(
            "designs with more than two levels need coding=complex for ideals"
        )
    if order.nvars != d.m:
        raise InputError("term order universe does not match the design")
    if budget is None:
        return _design_ideal_cached(d, order)
    return _design_ideal(d, order, budget)


@functools.lru_cache(maxsize=256)
def _design_ideal_cached(d: Design, order: TermOrder) -> GroebnerBasis:
    return _design_ideal(d, order, DEFAULT_BUDGET)


def _design_ideal(d: Design, order: TermOrder, budget: Budget) -> GroebnerBasis:
    pres = point_ideal_intersection(
        d.points(),
        field=d.field(),
        var_names=d.var_names,
        x_order=order,
        budget=budget,
        ambient_levels=d.levels(),
    )
    return buchberger(pres, order, budget=budget)


def est_monomials(
    d: Design, order: TermOrder, budget: Budget | None = None
) -> tuple[Monomial, ...]:
    """The standard monomials of the design ideal: an identifiable set of
    main and interaction effects, always of size n."""
    return standard_monomials(design_ideal(d, order, budget))


# -- confounding ---------------------------------------------------------------


def _square_free_over(mono: Monomial, m: int) -> None:
    if len(mono) != m:
        raise InputError("monomial does not match the factor count")
    if any(e not in (0, 1) for e in mono):
        raise InputError("effects are square-free monomials")


def _value_vector(d: Design, mono: Monomial) -> tuple[int, ...]:
    out = []
    for run in d.runs:
        prod = 1
        for v, e in zip(run, mono):
            if e:
                prod *= v
        out.append(prod)
    return tuple(out)


def is_confounded(a1: Monomial, a2: Monomial, d: Design):
    """+1 or -1 when x^a1 and x^a2 are completely confounded on the design,
    None otherwise.

    Decided by ideal membership of x^a1 - c*x^a2 in the design ideal, and
    cross-checked against direct evaluation over the runs.
    """
    if d.s != 2:
        raise InputError("confounding analysis is defined for two-level designs")
    a1, a2 = tuple(a1), tuple(a2)
    _square_free_over(a1, d.m)
    _square_free_over(a2, d.m)
    gb = design_ideal(d, TermOrder.grevlex(d.m))
    ring = gb.ring
    membership = None
    for c in (1, -1):
        f = ring.monomial(a1) - ring.monomial(a2) * c
        member, _ = ideal_membership(f, gb)
        if member:
            membership = c
            break
    values = {v1 * v2 for v1, v2 in zip(_value_vector(d, a1), _value_vector(d, a2))}
    evaluation = values.pop() if len(values) == 1 else None
    if membership != evaluation:
        raise AssertionError(
            f"membership ({membership}) and evaluation ({evaluation}) disagree"
        )
    return membership


def alias_table(d: Design, max_degree: int = 2):
    """Partition of the square-free monomials of degree <= max_degree into
    complete-confounding classes.

    Each class is a list of (monomial, sign) pairs with the sign taken
    relative to the class representative (lowest degree first, then
    lexicographic); classes are sorted by representative.
    """
    if d.s != 2:
        raise InputError("alias tables are defined for two-level designs")
    groups: dict[tuple[int, ...], list[tuple[Monomial, int]]] = {}
    monos = [
        mono
        for mono in itertools.product((0, 1), repeat=d.m)
        if sum(mono) <= max_degree
    ]
    monos.sort(key=lambda a: (sum(a), tuple(-e for e in a)))
    for mono in monos:
        vec = _value_vector(d, mono)
        sign = 1 if vec[0] == 1 else -1
        canon = tuple(v * sign for v in vec)
        groups.setdefault(canon, []).append((mono, sign))
    classes = []
    for members in groups.values():
        rep_sign = members[0][1]
        classes.append([(mono, sign * rep_sign) for mono, sign in members])
    classes.sort(key=lambda cls: (sum(cls[0][0]), tuple(-e for e in cls[0][0])))
    return classes


def monomial_name(mono: Monomial, names=None) -> str:
    if not any(mono):
        return "1"
    if names is None:
        names = [f"x{i + 1}" for i in range(len(mono))]
    return "*".join(
        names[i] if e == 1 else f"{names[i]}^{e}" for i, e in enumerate(mono) if e
    )


def parse_monomial(text: str, m: int) -> Monomial:
    """Parse 'x1*x3' style monomials; '1' is the empty monomial."""
    text = text.strip()
    expts = [0] * m
    if text == "1":
        return tuple(expts)
    for factor in text.split("*"):
        factor = factor.strip()
        if "^" in factor:
            name, power = factor.split("^", 1)
            k = int(power)
        else:
            name, k = factor, 1
        if not name.startswith("x"):
            raise InputError(f"bad factor {factor!r} in monomial")
        try:
            idx = int(name[1:]) - 1
        except ValueError as exc:
            raise InputError(f"bad factor {factor!r} in monomial") from exc
        if not 0 <= idx < m:
            raise InputError(f"factor {name} outside x1..x{m}")
        expts[idx] += k
    return tuple(expts)
