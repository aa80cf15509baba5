"""Buchberger's algorithm, reduced Groebner bases, ideal membership,
elimination, point-ideal intersection, and standard monomials.

The pair queue follows the normal strategy (smallest lcm under the active
order, ties by index), with Buchberger's coprime criterion always on and the
chain criterion behind a flag.  Exceeding the configured budget raises a
structured :class:`~algdoe.errors.BudgetError` instead of hanging.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass

from .cyclotomic import QQ
from .errors import (
    BudgetError,
    InputError,
    NonZeroDimensionalError,
    OrderMismatchError,
    ScaleError,
    ZeroPolynomialError,
)
from .orders import Monomial, TermOrder
from .polynomials import (
    PolyRing,
    Polynomial,
    _division,
    mono_divides,
    mono_lcm,
    mono_mul,
    mono_quot,
    normal_form,
)


@dataclass(frozen=True)
class Budget:
    """Resource caps for basis computations."""

    max_pairs: int = 1_000_000
    max_terms: int = 100_000


DEFAULT_BUDGET = Budget()


@dataclass(frozen=True)
class IdealPresentation:
    """An ideal given by a finite list of nonzero generators."""

    ring: PolyRing
    generators: tuple[Polynomial, ...]

    def __post_init__(self):
        if not self.generators:
            raise InputError("an ideal presentation needs at least one generator")
        for g in self.generators:
            if g.is_zero():
                raise ZeroPolynomialError("zero generator in ideal presentation")
            if g.ring != self.ring:
                raise InputError("generator ring does not match the presentation ring")


@dataclass(frozen=True)
class GroebnerBasis:
    order: TermOrder
    elements: tuple[Polynomial, ...]
    reduced: bool = False

    @property
    def ring(self) -> PolyRing:
        return self.elements[0].ring

    def leading_monomials(self) -> list[Monomial]:
        return [g.leading_monomial(self.order) for g in self.elements]


def s_polynomial(f: Polynomial, g: Polynomial, order: TermOrder) -> Polynomial:
    """lcm(LT f, LT g)/LT(f) * f  -  lcm(LT f, LT g)/LT(g) * g, exactly."""
    fm, fc = f.leading_term(order)
    gm, gc = g.leading_term(order)
    l = mono_lcm(fm, gm)
    return f.mul_term(mono_quot(l, fm), fc**-1) - g.mul_term(mono_quot(l, gm), gc**-1)


def buchberger(
    gens,
    order: TermOrder,
    budget: Budget = DEFAULT_BUDGET,
    chain_criterion: bool = True,
) -> GroebnerBasis:
    """Compute the reduced Groebner basis of the ideal generated by ``gens``.

    ``gens`` may be an :class:`IdealPresentation` or an iterable of nonzero
    polynomials over a common ring.  The output is deterministic: pairs are
    selected by smallest lcm, and the final basis is inter-reduced, monic, and
    sorted by ascending leading monomial.
    """
    if isinstance(gens, IdealPresentation):
        gens = gens.generators
    gens = list(gens)
    if not gens:
        raise InputError("no generators given")
    ring = gens[0].ring
    for g in gens:
        if g.is_zero():
            raise ZeroPolynomialError("zero polynomial among generators")
        if g.ring != ring:
            raise InputError("generators over different rings")
    if order.nvars != ring.nvars:
        raise InputError("term order universe does not match the ring")

    key = order.key
    basis: list[Polynomial] = []
    lead: list[Monomial] = []
    div_data: list = []
    heap: list = []
    done: set[tuple[int, int]] = set()
    pairs_generated = 0

    def push_pairs(j: int):
        nonlocal pairs_generated
        for i in range(j):
            l = mono_lcm(lead[i], lead[j])
            heapq.heappush(heap, (key(l), i, j))
        pairs_generated += j
        if pairs_generated > budget.max_pairs:
            raise BudgetError(
                f"pair budget exceeded ({pairs_generated} > {budget.max_pairs})"
            )

    def add(poly: Polynomial):
        monic = poly.monic(order)
        lm, lc = monic.leading_term(order)
        basis.append(monic)
        lead.append(lm)
        div_data.append((monic.terms, lm, lc))
        push_pairs(len(basis) - 1)

    for g in gens:
        add(g)

    while heap:
        _, i, j = heapq.heappop(heap)
        if (i, j) in done:
            continue
        done.add((i, j))
        li, lj = lead[i], lead[j]
        l = mono_lcm(li, lj)
        # coprime criterion: disjoint leading supports reduce to zero
        if l == mono_mul(li, lj):
            continue
        if chain_criterion and _chain_redundant(i, j, l, lead, done):
            continue
        s = s_polynomial(basis[i], basis[j], order)
        if s.is_zero():
            continue
        rterms, _ = _division(s.terms, div_data, order)
        if not rterms:
            continue
        if len(rterms) > budget.max_terms:
            raise BudgetError(
                f"term budget exceeded ({len(rterms)} > {budget.max_terms})"
            )
        add(Polynomial(ring, rterms))

    return reduce_basis(GroebnerBasis(order, tuple(basis), reduced=False))


def _chain_redundant(i, j, l, lead, done):
    for k, lk in enumerate(lead):
        if k == i or k == j:
            continue
        if mono_divides(lk, l):
            a = (min(i, k), max(i, k))
            b = (min(j, k), max(j, k))
            if a in done and b in done:
                return True
    return False


def reduce_basis(G: GroebnerBasis) -> GroebnerBasis:
    """Monic, auto-reduced, unique representative of a Groebner basis."""
    order = G.order
    key = order.key
    elements = [g.monic(order) for g in G.elements]
    elements.sort(key=lambda g: key(g.leading_monomial(order)))
    # minimalize: drop any element whose leading term another one divides
    kept: list[Polynomial] = []
    kept_lm: list[Monomial] = []
    for g in elements:
        lm = g.leading_monomial(order)
        if any(mono_divides(m, lm) for m in kept_lm):
            continue
        kept.append(g)
        kept_lm.append(lm)
    # tail-reduce each element against the others until stable
    changed = True
    while changed:
        changed = False
        for i in range(len(kept)):
            others = kept[:i] + kept[i + 1 :]
            r, _ = normal_form(kept[i], others, order)
            r = r.monic(order)
            if r.terms != kept[i].terms:
                kept[i] = r
                changed = True
    kept.sort(key=lambda g: key(g.leading_monomial(order)))
    return GroebnerBasis(order, tuple(kept), reduced=True)


def ideal_membership(f: Polynomial, G: GroebnerBasis):
    """Decide membership of f in the ideal with basis G.

    Returns ``(member, cofactors)``; when ``member`` the cofactors satisfy
    ``f == sum(cofactors[i] * G.elements[i])`` exactly.
    """
    r, cofactors = normal_form(f, G.elements, G.order)
    if r.is_zero():
        return True, cofactors
    return False, None


def eliminate(G: GroebnerBasis, drop) -> IdealPresentation:
    """Restrict a Groebner basis under an elimination order to the subring
    without the ``drop`` variables; the result generates the elimination ideal."""
    ring = G.ring
    drop_idx = frozenset(
        v if isinstance(v, int) else ring._index[v] for v in drop
    )
    if not drop_idx:
        return IdealPresentation(ring, G.elements)
    if not G.order.eliminates(drop_idx):
        raise OrderMismatchError(
            "the basis order does not eliminate the requested variables"
        )
    keep = [i for i in range(ring.nvars) if i not in drop_idx]
    sub = PolyRing(tuple(ring.names[i] for i in keep), ring.field)
    out = []
    for g in G.elements:
        if any(any(e[i] for i in drop_idx) for e in g.terms):
            continue
        out.append(Polynomial(sub, {tuple(e[i] for i in keep): c
                                    for e, c in g.terms.items()}))
    if not out:
        raise InputError("elimination produced no generators")
    return IdealPresentation(sub, tuple(out))


def point_ideal_intersection(
    points,
    field=QQ,
    var_names=None,
    x_order: TermOrder | None = None,
    budget: Budget = DEFAULT_BUDGET,
    ambient_levels=None,
) -> IdealPresentation:
    """Vanishing ideal of a finite point set, via intersection of point ideals.

    ``points`` is a sequence of distinct tuples of field elements.  One slack
    variable per point is introduced; the ideal generated by
    ``t_i * (x_j - a_ij)`` together with ``t_1 + ... + t_n - 1`` is cut down to
    the x-subring with a block order whose leading block holds the slack
    variables.  The returned generators are the reduced Groebner basis of the
    vanishing ideal with respect to ``x_order`` (grevlex by default).
    """
    points = [tuple(p) for p in points]
    if not points:
        raise InputError("need at least one point")
    if len(set(points)) != len(points):
        raise InputError("duplicate points")
    m = len(points[0])
    if any(len(p) != m for p in points):
        raise InputError("points of unequal dimension")
    n = len(points)
    if var_names is None:
        var_names = tuple(f"x{j + 1}" for j in range(m))
    if x_order is None:
        x_order = TermOrder.grevlex(m)
    if x_order.nvars != m:
        raise InputError("x_order universe does not match the points")

    names = tuple(f"t{i + 1}" for i in range(n)) + tuple(var_names)
    big = PolyRing(names, field)
    t_idx = tuple(range(n))
    if x_order.kind == "block":
        shifted = [(tuple(n + v for v in vars_), kind) for vars_, kind in x_order.blocks]
    else:
        shifted = [(tuple(n + v for v in x_order.precedence), x_order.kind)]
    elim_order = TermOrder.block([(t_idx, "grevlex")] + shifted)

    gens = []
    coerced = [[big.field.coerce(a) for a in p] for p in points]
    for i in range(n):
        for j in range(m):
            # t_i * (x_j - a_ij)
            e_tx = [0] * (n + m)
            e_tx[i] = 1
            e_tx[n + j] = 1
            e_t = [0] * (n + m)
            e_t[i] = 1
            terms = {tuple(e_tx): big.field.coerce(1)}
            a = coerced[i][j]
            if a:
                terms[tuple(e_t)] = -a
            gens.append(Polynomial(big, terms))
    partition = {tuple(1 if k == i else 0 for k in range(n)) + (0,) * m:
                 big.field.coerce(1) for i in range(n)}
    partition[(0,) * (n + m)] = big.field.coerce(-1)
    gens.append(Polynomial(big, partition))

    gb = buchberger(gens, elim_order, budget=budget)
    pres = eliminate(gb, [f"t{i + 1}" for i in range(n)])
    if ambient_levels is None:
        ambient_levels = sorted({a for p in coerced for a in p}, key=repr)
    else:
        ambient_levels = [big.field.coerce(a) for a in ambient_levels]
    _verify_vanishing(pres, coerced, ambient_levels)
    return pres


def _verify_vanishing(pres: IdealPresentation, points, levels, cap: int = 4096):
    """Evaluation check: generators vanish exactly on the given points.

    When the ambient grid ``levels^m`` is small enough the zero set is compared
    against the points exhaustively; otherwise only the vanishing direction is
    checked.
    """
    for p in points:
        for g in pres.generators:
            if g.evaluate(p):
                raise AssertionError(
                    f"generator {g!r} does not vanish on the input point {p}"
                )
    m = len(points[0])
    if len(levels) ** m > cap:
        return
    point_set = {tuple(p) for p in points}
    for q in itertools.product(levels, repeat=m):
        vanishes = all(not g.evaluate(q) for g in pres.generators)
        if vanishes != (q in point_set):
            raise AssertionError(f"variety mismatch at point {q}")


def standard_monomials(G: GroebnerBasis, cap: int = 1_000_000):
    """Monomials outside the leading-term ideal, sorted ascending.

    Requires a zero-dimensional ideal: every variable must appear as a pure
    power among the leading terms, which bounds the staircase box.
    """
    order = G.order
    nvars = G.ring.nvars
    leads = G.leading_monomials()
    bounds = [None] * nvars
    for lm in leads:
        support = [i for i, e in enumerate(lm) if e]
        if len(support) == 1:
            i = support[0]
            if bounds[i] is None or lm[i] < bounds[i]:
                bounds[i] = lm[i]
    if any(b is None for b in bounds):
        missing = [G.ring.names[i] for i, b in enumerate(bounds) if b is None]
        raise NonZeroDimensionalError(
            f"no pure power of {', '.join(missing)} among the leading terms"
        )
    size = 1
    for b in bounds:
        size *= b
        if size > cap:
            raise ScaleError(f"staircase box larger than {cap}")
    out = []
    for e in itertools.product(*(range(b) for b in bounds)):
        if not any(mono_divides(lm, e) for lm in leads):
            out.append(e)
    out.sort(key=order.key)
    return tuple(out)


def spolynomials_reduce_to_zero(G: GroebnerBasis) -> bool:
    """Certifying self-check: every S-polynomial of the basis reduces to zero."""
    elems = G.elements
    for i in range(len(elems)):
        for j in range(i + 1, len(elems)):
            s = s_polynomial(elems[i], elems[j], G.order)
            if s.is_zero():
                continue
            r, _ = normal_form(s, elems, G.order)
            if not r.is_zero():
                return False
    return True
