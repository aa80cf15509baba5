"""Markov bases via toric ideals, and exhaustive fiber enumeration.

The toric ideal of the recoded nonnegative covariate matrix is computed with
the Groebner engine: adjoin one parameter variable per constraint plus a
single auxiliary inverse variable, saturate, and eliminate.  The binomials of
the resulting reduced basis are moves that connect every fiber.
"""

from __future__ import annotations

from dataclasses import dataclass

from .covariates import CovariateMatrix, recode_integer
from .errors import BudgetError, InputError, ScaleError
from .groebner import Budget, DEFAULT_BUDGET, buchberger, eliminate
from .orders import TermOrder
from .polynomials import PolyRing, Polynomial


@dataclass(frozen=True)
class MarkovBasis:
    """Integer kernel moves of the recoded covariate matrix, stored up to sign."""

    n: int
    moves: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        for z in self.moves:
            if len(z) != self.n:
                raise InputError("move length does not match the run count")


def markov_basis(A: CovariateMatrix, budget: Budget = DEFAULT_BUDGET) -> MarkovBasis:
    """Markov basis of the fibers {y >= 0 : A'y = A'y0}.

    Computes the toric ideal of the recoded matrix by elimination with a
    single saturation variable and reads the moves off its binomial reduced
    Groebner basis.  Raises BudgetError (with a hint to use exhaustive
    enumeration) when the computation exceeds its caps.
    """
    recoded = recode_integer(A)
    n = A.n
    ncon = len(recoded)
    rows = [tuple(col[i] for col in recoded) for i in range(n)]

    names = (
        tuple(f"t{j + 1}" for j in range(ncon))
        + ("w",)
        + tuple(f"p{i + 1}" for i in range(n))
    )
    ring = PolyRing(names)
    nt = ncon + 1
    order = TermOrder.block(
        [(tuple(range(nt)), "grevlex"), (tuple(range(nt, nt + n)), "grevlex")]
    )
    one = ring.field.coerce(1)
    gens = []
    for i, row in enumerate(rows):
        e_p = (0,) * nt + tuple(1 if k == i else 0 for k in range(n))
        e_t = tuple(row) + (0,) * (1 + n)
        gens.append(Polynomial(ring, {e_p: one, e_t: -one}))
    # w * (prod t_j) * (prod p_i) - 1: saturation by all variables at once
    sat = (1,) * nt + (1,) * n
    gens.append(Polynomial(ring, {sat: one, (0,) * (nt + n): -one}))

    try:
        gb = buchberger(gens, order, budget=budget)
    except BudgetError as exc:
        raise BudgetError(
            f"{exc}; for small problems use exhaustive fiber enumeration instead"
        ) from exc
    t_free = [
        g
        for g in gb.elements
        if all(all(e[i] == 0 for i in range(nt)) for e in g.terms)
    ]
    if not t_free:
        # zero toric ideal: the kernel is trivial and every fiber is a singleton
        return MarkovBasis(n, ())
    pres = eliminate(gb, list(range(nt)))

    moves = []
    for g in pres.generators:
        if g.is_constant():
            raise AssertionError("toric elimination produced a constant")
        terms = list(g.terms.items())
        if len(terms) != 2:
            raise AssertionError(f"non-binomial generator {g!r} in toric basis")
        (e1, c1), (e2, c2) = terms
        if c1 + c2 != 0:
            raise AssertionError(f"toric binomial {g!r} is not a difference")
        pos, neg = (e1, e2) if c1 == 1 else (e2, e1)
        moves.append(tuple(a - b for a, b in zip(pos, neg)))
    moves.sort()
    return MarkovBasis(n, tuple(moves))


def kernel_residual(A: CovariateMatrix, move) -> tuple[int, ...]:
    """A~' z for a move; all zeros iff the move is a kernel vector."""
    recoded = recode_integer(A)
    return tuple(sum(c * z for c, z in zip(col, move)) for col in recoded)


def enumerate_fiber(
    A: CovariateMatrix,
    y0,
    max_total: int = 30,
    max_runs: int = 16,
):
    """The complete fiber of y0: all nonnegative integer y with A'y = A'y0.

    Bounded depth-first search over the recoded nonnegative matrix; requires
    the total of y0 and the run count to stay within the caps.
    """
    y0 = tuple(int(v) for v in y0)
    if any(v < 0 for v in y0):
        raise InputError("observations must be nonnegative integers")
    if len(y0) != A.n:
        raise InputError("observation length does not match the run count")
    total = sum(y0)
    if total > max_total:
        raise ScaleError(f"fiber total {total} exceeds the cap {max_total}")
    if A.n > max_runs:
        raise ScaleError(f"run count {A.n} exceeds the cap {max_runs}")

    recoded = recode_integer(A)
    targets = [sum(c * v for c, v in zip(col, y0)) for col in recoded]
    n = A.n
    ncon = len(recoded)
    # suffix maxima let the search prune constraints that cannot be reached
    suffix_max = []
    for col in recoded:
        sm = [0] * (n + 1)
        for i in range(n - 1, -1, -1):
            sm[i] = max(sm[i + 1], col[i])
        suffix_max.append(sm)

    out = []
    y = [0] * n

    def rec(i: int, remaining: int, partial: list[int]):
        if i == n:
            if remaining == 0 and partial == targets:
                out.append(tuple(y))
            return
        for v in range(remaining + 1):
            y[i] = v
            ok = True
            for j in range(ncon):
                acc = partial[j] + recoded[j][i] * v
                if acc > targets[j]:
                    ok = False
                    break
                if acc + suffix_max[j][i + 1] * (remaining - v) < targets[j]:
                    ok = False
                    break
            if ok:
                rec(
                    i + 1,
                    remaining - v,
                    [partial[j] + recoded[j][i] * v for j in range(ncon)],
                )
        y[i] = 0

    rec(0, total, [0] * ncon)
    out.sort()
    return out


def fiber_connected(A: CovariateMatrix, y0, basis: MarkovBasis, **caps) -> bool:
    """BFS oracle: do the basis moves connect the whole fiber of y0?"""
    fiber = set(enumerate_fiber(A, y0, **caps))
    if not fiber:
        return True
    start = tuple(int(v) for v in y0)
    seen = {start}
    frontier = [start]
    while frontier:
        cur = frontier.pop()
        for z in basis.moves:
            for sign in (1, -1):
                nxt = tuple(a + sign * b for a, b in zip(cur, z))
                if any(v < 0 for v in nxt) or nxt in seen:
                    continue
                seen.add(nxt)
                frontier.append(nxt)
    return seen == fiber
