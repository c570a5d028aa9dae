"""Trace maps: regular, standard (over the central fraction field), reduced, scaled.

Values are cached on the spanning set L and on products of pairs from L,
since every Gram matrix is built from the latter.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .pialg import AlgElement, NotFreeError, PresentationError, PresentedAlgebra, pi_degree
from .polyring import MultiPoly, NotDivisible, PolyMatrix, adjugate
from .scalars import CharacteristicError

KINDS = ("regular", "standard", "reduced", "scaled")
ALIASES = {"reg": "regular", "std": "standard", "st": "standard", "red": "reduced"}


class _StandardSolver:
    """Fraction-field left-multiplication traces through the faithful coordinates.

    With Q the chosen sub-basis and T a basis of the center over P, the
    vectors coords(t*y) (t in T, y in Q) are a basis over Frac(P).  Writing
    coords(a*y_j) in that basis gives the matrix of a over Frac(C), whose
    trace is sum_t t * sum_j X[(t,j), j].
    """

    def __init__(self, A: PresentedAlgebra, qbasis: list[int]):
        self.A = A
        self.qbasis = qbasis
        emb = A.embedding
        self.T = emb.center_basis
        qel = [A.basis_element(i) for i in qbasis]
        cols = [A.coords(y * t) for t in self.T for y in qel]
        if len(cols) != emb.rank:
            raise PresentationError(
                f"sub-basis gives {len(cols)} vectors for a rank-{emb.rank} coordinate module"
            )
        M = PolyMatrix(emb.base, [[cols[j][i] for j in range(len(cols))] for i in range(emb.rank)])
        self.det, self.adj = adjugate(M)
        if self.det.is_zero():
            raise PresentationError("sub-basis is dependent over the fraction field")
        C = A.center
        self.det_c = emb.to_center(self.det)
        self.qel = qel

    def __call__(self, a: AlgElement) -> MultiPoly:
        A = self.A
        emb = A.embedding
        C = A.center
        nq = len(self.qbasis)
        num = C.zero()
        for j, y in enumerate(self.qel):
            v = A.coords(a * y)
            for ti, t in enumerate(self.T):
                row = self.adj.rows[ti * nq + j]
                acc = emb.base.zero()
                for r, x in zip(row, v):
                    if r.terms and x.terms:
                        acc = acc + r * x
                if acc.terms:
                    num = num + t * emb.to_center(acc)
        try:
            return C.exact_div(num, self.det_c)
        except NotDivisible:
            raise PresentationError("standard trace is not a central polynomial") from None


class TraceMap:
    """A central-valued, C-linear trace on a presented algebra."""

    def __init__(self, A: PresentedAlgebra, kind: str, values: list, *, scale: MultiPoly | None = None,
                 base: "TraceMap | None" = None, evaluator=None):
        self.algebra = A
        self.kind = kind
        self.values = values
        self.scale = scale
        self.base = base
        self._evaluator = evaluator
        self._pairs: dict = {}

    def __repr__(self):
        return f"TraceMap({self.kind})"

    @property
    def tag(self) -> str:
        return {"regular": "reg", "standard": "std", "reduced": "red"}.get(self.kind, self.kind)

    def __call__(self, a: AlgElement) -> MultiPoly:
        C = self.algebra.center
        out = C.zero()
        for k, c in a.coeffs.items():
            v = self.values[k]
            if v.terms:
                out = out + c * v
        return out

    def pair(self, i: int, j: int) -> MultiPoly:
        """tr(y_i y_j), cached."""
        key = (i, j)
        if key not in self._pairs:
            A = self.algebra
            self._pairs[key] = self(A.multiply(A.basis_element(i), A.basis_element(j)))
        return self._pairs[key]


def tr_regular(A: PresentedAlgebra) -> TraceMap:
    """Trace of left multiplication on the free module with basis L."""
    if not A.is_free:
        raise NotFreeError("regular trace needs a free presentation; use the standard trace")
    C = A.center
    vals = []
    for k in range(A.size):
        acc = C.zero()
        for j in range(A.size):
            c = A.table[(k, j)].get(j)
            if c is not None:
                acc = acc + c
        vals.append(acc)
    return TraceMap(A, "regular", vals)


def tr_standard(A: PresentedAlgebra, qbasis=None, force_solver: bool = False) -> TraceMap:
    """Trace of left multiplication on R tensored with the central fraction field.

    ``qbasis`` (labels or indices) must have n^2 elements independent over the
    fraction field; it defaults to the algebra's designated sub-basis.
    """
    if qbasis is None:
        q = list(A.qbasis)
    else:
        q = [A.index[x] if isinstance(x, str) else int(x) for x in qbasis]
    trivial = A.embedding.rank == A.size and len(A.embedding.center_basis) == 1
    if A.is_free and trivial and sorted(q) == list(range(A.size)) and not force_solver:
        reg = tr_regular(A)
        return TraceMap(A, "standard", reg.values)
    solver = _StandardSolver(A, q)
    vals = [solver(A.basis_element(k)) for k in range(A.size)]
    return TraceMap(A, "standard", vals, evaluator=solver)


def tr_reduced(A: PresentedAlgebra, standard: TraceMap | None = None, n: int | None = None) -> TraceMap:
    """tr_st / n, with n the PI degree; refused when char K divides n."""
    if n is None:
        n = A.pi_degree_hint or pi_degree(A)
    F = A.field
    if F.p and n % F.p == 0:
        raise CharacteristicError(f"reduced trace needs char {F.p} not dividing PI degree {n}")
    if standard is None:
        standard = tr_standard(A)
    inv = F.inv(F(n))
    return TraceMap(A, "reduced", [v.scale(inv) for v in standard.values], base=standard)


def tr_scaled(t: TraceMap, z: MultiPoly) -> TraceMap:
    """The trace z * t for a central z."""
    return TraceMap(t.algebra, "scaled", [z * v for v in t.values], scale=z, base=t)


def make_trace(A: PresentedAlgebra, kind: str) -> TraceMap:
    """Build a trace by name.  On non-free algebras ``regular`` falls back to ``standard``."""
    kind = ALIASES.get(kind, kind)
    if kind == "regular":
        return tr_regular(A) if A.is_free else tr_standard(A)
    if kind == "standard":
        return tr_standard(A)
    if kind == "reduced":
        return tr_reduced(A)
    raise ValueError(f"unknown trace kind {kind!r}")


@dataclass
class CharPoly:
    """x^n - c_1 x^(n-1) + c_2 x^(n-2) - ... + (-1)^n c_n."""

    degree: int
    coeffs: list = field(default_factory=list)

    def signed(self) -> list:
        """Coefficients of x^n, x^(n-1), ..., x^0."""
        one = self.coeffs[0].ring.one() if self.coeffs else None
        out = [one]
        for i, c in enumerate(self.coeffs, start=1):
            out.append(c if i % 2 == 0 else -c)
        return out

    def __str__(self):
        parts = ["x^%d" % self.degree]
        for i, c in enumerate(self.coeffs, start=1):
            sign = "-" if i % 2 else "+"
            power = self.degree - i
            mono = "" if power == 0 else ("*x" if power == 1 else f"*x^{power}")
            parts.append(f"{sign} ({c}){mono}")
        return " ".join(parts)


def newton_char_poly(A: PresentedAlgebra, a: AlgElement, n: int, t: TraceMap) -> CharPoly:
    """Coefficients c_i from the power-sum traces via i*s_i = sum (-1)^(j-1) s_(i-j) psi_j."""
    F = A.field
    if F.p and F.p <= n:
        raise CharacteristicError(f"Newton identities need char > {n}, got {F.p}")
    C = A.center
    psi = []
    power = A.one()
    for _ in range(n):
        power = power * a
        psi.append(t(power))
    sigma = [C.one()]
    for i in range(1, n + 1):
        acc = C.zero()
        for j in range(1, i + 1):
            term = sigma[i - j] * psi[j - 1]
            acc = acc + term if j % 2 == 1 else acc - term
        sigma.append(acc.scale(F.inv(F(i))))
    return CharPoly(n, sigma[1:])


def cayley_hamilton_check(A: PresentedAlgebra, a: AlgElement, n: int, t: TraceMap) -> bool:
    chi = newton_char_poly(A, a, n, t)
    coeffs = chi.signed()
    # Horner evaluation with central coefficients
    acc = A.central(coeffs[0])
    for c in coeffs[1:]:
        acc = acc * a + A.central(c)
    return acc.is_zero()
