"""Discriminant ideals from Gram matrices of a trace on the spanning set L."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

from .linalg import rank as scalar_rank
from .pialg import NotFreeError, PresentedAlgebra
from .polyring import IdealGens, MultiPoly, PolyMatrix, bareiss_det
from .scalars import CharacteristicError
from .traces import TraceMap

DEFAULT_MAX_DETS = 10**6


class BudgetExceeded(ValueError):
    pass


@dataclass
class GramMatrix:
    matrix: PolyMatrix
    kind: str
    labels: list

    def evaluate(self, point) -> list:
        return self.matrix.evaluate(point)


@dataclass
class DiscriminantResult:
    level: int
    ideal: IdealGens
    variant: str
    kind: str
    determinants: int = 0

    def to_json(self) -> dict:
        return {
            "level": self.level,
            "variant": self.variant,
            "trace": self.kind,
            "determinants": self.determinants,
            "generators": [str(g) for g in self.ideal.generators],
        }


def gram(A: PresentedAlgebra, t: TraceMap, rows: Sequence[int] | None = None,
         cols: Sequence[int] | None = None) -> GramMatrix:
    """[tr(y_i y_j)] over the selected indices of L (all of L by default)."""
    rows = list(range(A.size)) if rows is None else list(rows)
    cols = rows if cols is None else list(cols)
    M = PolyMatrix(A.center, [[t.pair(i, j) for j in cols] for i in rows])
    return GramMatrix(M, t.tag, [A.labels[i] for i in rows])


def _budget(n: int, level: int, symmetric_only: bool, max_dets: int) -> int:
    count = math.comb(n, level)
    total = count if symmetric_only else count * count
    if total > max_dets:
        raise BudgetExceeded(f"{total} determinants requested, budget is {max_dets}")
    return total


def md_generators(A: PresentedAlgebra, t: TraceMap, level: int, max_dets: int = DEFAULT_MAX_DETS,
                  dedupe: bool = True) -> DiscriminantResult:
    """All level x level minors det[tr(y_i y'_j)] over pairs of subsets of L."""
    if level < 1:
        raise ValueError("level must be positive")
    n = A.size
    if level > n:
        return DiscriminantResult(level, IdealGens(A.center, []), "MD", t.tag, 0)
    total = _budget(n, level, False, max_dets)
    G = gram(A, t).matrix
    subsets = list(itertools.combinations(range(n), level))
    gens = []
    symmetric = G.is_symmetric()
    for a, I in enumerate(subsets):
        start = a if symmetric else 0
        for J in subsets[start:]:
            d = bareiss_det(G.submatrix(I, J), allow_large=True)
            if not d.is_zero():
                gens.append(d)
    ideal = IdealGens(A.center, gens)
    if dedupe:
        ideal = ideal.deduplicated()
    return DiscriminantResult(level, ideal, "MD", t.tag, total)


def d_generators_restricted(A: PresentedAlgebra, t: TraceMap, level: int,
                            max_dets: int = DEFAULT_MAX_DETS, dedupe: bool = True) -> DiscriminantResult:
    """Principal minors det[tr(y_i y_j)] over subsets of L (a sub-ideal of D_level)."""
    if level < 1:
        raise ValueError("level must be positive")
    n = A.size
    if level > n:
        return DiscriminantResult(level, IdealGens(A.center, []), "D", t.tag, 0)
    total = _budget(n, level, True, max_dets)
    G = gram(A, t).matrix
    gens = []
    for I in itertools.combinations(range(n), level):
        d = bareiss_det(G.submatrix(I, I), allow_large=True)
        if not d.is_zero():
            gens.append(d)
    ideal = IdealGens(A.center, gens)
    if dedupe:
        ideal = ideal.deduplicated()
    return DiscriminantResult(level, ideal, "D", t.tag, total)


def free_discriminant(A: PresentedAlgebra, t: TraceMap, allow_large: bool = False) -> MultiPoly:
    """det of the Gram matrix on a free basis (well defined up to a unit)."""
    if not A.is_free:
        raise NotFreeError("the discriminant of a non-free presentation is not defined")
    return bareiss_det(gram(A, t).matrix, allow_large=allow_large)


def _guard(A: PresentedAlgebra) -> None:
    if A.field.p == 2:
        raise CharacteristicError("characteristic 2 is excluded")


def point_gram_rank(A: PresentedAlgebra, t: TraceMap, point) -> int:
    """Rank over K of the Gram matrix evaluated at a central point."""
    _guard(A)
    pt = A.center.check_point(point)
    return scalar_rank(A.field, gram(A, t).evaluate(pt))


def zero_set_membership(A: PresentedAlgebra, t: TraceMap, level: int, point) -> bool:
    """Whether the point lies in V(MD_level) (equivalently V(D_level))."""
    return point_gram_rank(A, t, point) < level
