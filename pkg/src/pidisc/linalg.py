"""Dense exact linear algebra over a FieldSpec (lists of lists of scalars)."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .scalars import FieldSpec


def rref(F: FieldSpec, rows: Sequence[Sequence], ncols: int | None = None):
    """Reduced row echelon form. Returns (nonzero rows, pivot columns)."""
    a = [list(r) for r in rows]
    if ncols is None:
        ncols = len(a[0]) if a else 0
    norm, inv = F.norm, F.inv
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        ic = inv(a[r][c])
        a[r] = [norm(x * ic) for x in a[r]]
        pr = a[r]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [norm(x - f * y) for x, y in zip(a[i], pr)]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def rank(F: FieldSpec, rows: Sequence[Sequence]) -> int:
    if not rows:
        return 0
    return len(rref(F, rows)[1])


def transpose(M: Sequence[Sequence]) -> list[list]:
    return [list(c) for c in zip(*M)]


def nullspace(F: FieldSpec, M: Sequence[Sequence], ncols: int | None = None) -> list[list]:
    """Basis of {v : M v = 0}."""
    if ncols is None:
        ncols = len(M[0]) if M else 0
    if not M:
        return [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)]
    R, piv = rref(F, M, ncols)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for row, pc in zip(R, piv):
            v[pc] = F.norm(-row[fc])
        basis.append(v)
    return basis


def solve(F: FieldSpec, M: Sequence[Sequence], b: Sequence):
    """One solution x of M x = b, or None."""
    ncols = len(M[0]) if M else 0
    aug = [list(row) + [bi] for row, bi in zip(M, b)]
    R, piv = rref(F, aug, ncols + 1)
    if ncols in piv:
        return None
    x = [0] * ncols
    for row, pc in zip(R, piv):
        x[pc] = row[ncols]
    return x


def in_column_span(F: FieldSpec, M: Sequence[Sequence], b: Sequence) -> bool:
    return solve(F, M, b) is not None


def matmul(F: FieldSpec, A, B):
    norm = F.norm
    Bt = transpose(B)
    return [[norm(sum(x * y for x, y in zip(row, col))) for col in Bt] for row in A]


def matvec(F: FieldSpec, A, v):
    norm = F.norm
    return [norm(sum(x * y for x, y in zip(row, v))) for row in A]


def det(F: FieldSpec, M) -> object:
    """Determinant by Gaussian elimination."""
    a = [list(r) for r in M]
    n = len(a)
    d = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            d = -d
        d = F.norm(d * a[c][c])
        ic = F.inv(a[c][c])
        for i in range(c + 1, n):
            if a[i][c]:
                f = F.norm(a[i][c] * ic)
                a[i] = [F.norm(x - f * y) for x, y in zip(a[i], a[c])]
    return F.norm(d)


@dataclass
class Subspace:
    """A subspace of K^dim kept in reduced row echelon form."""

    field: FieldSpec
    dim_ambient: int
    rows: list = field(default_factory=list)
    pivots: list = field(default_factory=list)

    @classmethod
    def span(cls, F: FieldSpec, vectors: Sequence[Sequence], dim_ambient: int) -> "Subspace":
        R, piv = rref(F, [list(v) for v in vectors], dim_ambient) if vectors else ([], [])
        return cls(F, dim_ambient, R, piv)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self, v: Sequence) -> list:
        """Representative of v modulo the subspace with zero pivot coordinates."""
        v = list(v)
        norm = self.field.norm
        for row, pc in zip(self.rows, self.pivots):
            c = v[pc]
            if c:
                v = [norm(x - c * y) for x, y in zip(v, row)]
        return v

    def contains(self, v: Sequence) -> bool:
        return not any(self.reduce(v))

    def add(self, vectors: Sequence[Sequence]) -> "Subspace":
        return Subspace.span(self.field, list(self.rows) + [list(v) for v in vectors], self.dim_ambient)

    def complement_indices(self) -> list[int]:
        return [i for i in range(self.dim_ambient) if i not in set(self.pivots)]

    def quotient_coords(self, v: Sequence) -> list:
        r = self.reduce(v)
        return [r[i] for i in self.complement_indices()]
