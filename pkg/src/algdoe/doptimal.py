"""Desk-scale D-optimality search for two-level main effect models.

The criterion det(X'X), with X the n x (m+1) model matrix of the intercept
and the factor columns, is evaluated exactly over the integers by
fraction-free elimination.  Exhaustive search returns the true optimum with
every maximizer; greedy exchange is a seeded hill climb with restarts and
makes no optimality claim.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass

from .designs import Design
from .errors import InputError, ScaleError
from .indicators import DesignClass, classify_design

EXHAUSTIVE_CAP = 10_000_000


@dataclass(frozen=True)
class SearchSpec:
    m: int
    n: int
    mode: str = "exhaustive"  # or "greedy-exchange"
    seed: int = 0
    restarts: int = 20

    def __post_init__(self):
        if self.mode not in ("exhaustive", "greedy-exchange"):
            raise InputError(f"unknown search mode {self.mode!r}")
        if self.n < 1 or self.m < 1:
            raise InputError("need at least one run and one factor")
        if self.n > 2**self.m:
            raise InputError("run count exceeds the candidate pool")


@dataclass(frozen=True)
class SearchResult:
    spec: SearchSpec
    best_det: int
    optima: tuple[Design, ...]
    classifications: tuple[DesignClass, ...]
    exhaustive: bool

    def class_histogram(self) -> dict[str, int]:
        hist: dict[str, int] = {}
        for c in self.classifications:
            hist[c.tag] = hist.get(c.tag, 0) + 1
        return dict(sorted(hist.items()))


def int_det(matrix) -> int:
    """Exact integer determinant by Bareiss fraction-free elimination."""
    m = [list(map(int, row)) for row in matrix]
    n = len(m)
    if any(len(row) != n for row in m):
        raise InputError("determinant of a non-square matrix")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            pivot = next((r for r in range(k + 1, n) if m[r][k] != 0), None)
            if pivot is None:
                return 0
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _model_rows(runs) -> list[tuple[int, ...]]:
    return [(1,) + tuple(run) for run in runs]


def d_criterion(d: Design) -> int:
    """det(X'X) of the main effect model matrix, exactly."""
    if d.s != 2:
        raise InputError("the D criterion is defined for two-level designs")
    return _gram_det(_model_rows(d.runs))


def _gram_det(rows) -> int:
    n = len(rows)
    p = len(rows[0])
    if n < p:
        return 0
    if n == p:
        det = int_det(rows)
        return det * det
    gram = [
        [sum(rows[i][a] * rows[i][b] for i in range(n)) for b in range(p)]
        for a in range(p)
    ]
    return int_det(gram)


def d_optimal_search(spec: SearchSpec) -> SearchResult:
    candidates = list(itertools.product((-1, 1), repeat=spec.m))
    if spec.mode == "exhaustive":
        count = math.comb(len(candidates), spec.n)
        if count > EXHAUSTIVE_CAP:
            raise ScaleError(
                f"exhaustive search over {count} subsets exceeds the cap"
            )
        best = -1
        optima: list[tuple[tuple[int, ...], ...]] = []
        for subset in itertools.combinations(candidates, spec.n):
            det = _gram_det(_model_rows(subset))
            if det > best:
                best = det
                optima = [subset]
            elif det == best:
                optima.append(subset)
        designs = tuple(Design(spec.m, 2, runs, "pm1") for runs in optima)
        return SearchResult(
            spec, best, designs, tuple(classify_design(d) for d in designs), True
        )

    rng = random.Random(spec.seed)
    best = -1
    best_runs: tuple[tuple[int, ...], ...] | None = None
    for _ in range(max(1, spec.restarts)):
        current = rng.sample(candidates, spec.n)
        det = _gram_det(_model_rows(current))
        improved = True
        while improved:
            improved = False
            swap = None
            selected = set(current)
            for i, out_pt in enumerate(current):
                for in_pt in candidates:
                    if in_pt in selected:
                        continue
                    trial = list(current)
                    trial[i] = in_pt
                    trial_det = _gram_det(_model_rows(trial))
                    if trial_det > det:
                        det = trial_det
                        swap = (i, in_pt)
            if swap is not None:
                i, in_pt = swap
                current[i] = in_pt
                improved = True
        if det > best:
            best = det
            best_runs = tuple(sorted(current))
    design = Design(spec.m, 2, best_runs, "pm1")
    return SearchResult(
        spec, best, (design,), (classify_design(design),), False
    )
