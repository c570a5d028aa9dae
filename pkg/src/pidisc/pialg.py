"""Algebras presented as a finite spanning set over a central polynomial ring.

A :class:`PresentedAlgebra` stores a multiplication table
``y_i * y_j = sum_k c_ijk y_k`` with ``c_ijk`` in the center.  When the
spanning set is not a basis, an :class:`Embedding` into a free module over a
polynomial subring ``P`` of the center gives a faithful coordinate map; that
is how equality of elements and fraction-field linear algebra are decided.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .polyring import MultiPoly, PolyMatrix, PolyRing, fraction_free_rank
from .scalars import CharacteristicError, FieldSpec
from .linalg import rank as scalar_rank


class PresentationError(ValueError):
    """The presentation is inconsistent (non-square rank, non-central trace, ...)."""


class UnsupportedAlgebra(ValueError):
    pass


class NotFreeError(ValueError):
    pass


@dataclass
class Embedding:
    """Faithful P-linear coordinates R -> P^rank.

    ``var_action[v]`` is the matrix of left multiplication by the v-th center
    variable, or None when that variable is itself a variable of P acting as
    a scalar.  ``center_basis`` lists elements t of the center such that the
    t*y (y in the chosen sub-basis) form a basis over Frac(P).
    """

    base: PolyRing
    rank: int
    label_coords: list
    var_action: list
    center_basis: list
    to_center: Callable[[MultiPoly], MultiPoly]


class AlgElement:
    __slots__ = ("alg", "coeffs")

    def __init__(self, alg: "PresentedAlgebra", coeffs: dict):
        self.alg = alg
        self.coeffs = {k: v for k, v in coeffs.items() if not v.is_zero()}

    def _check(self, other):
        if not isinstance(other, AlgElement):
            return self.alg.central(other)
        if other.alg is not self.alg:
            raise ValueError("elements of different algebras")
        return other

    def __add__(self, other):
        other = self._check(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out[k] + v if k in out else v
        return AlgElement(self.alg, out)

    __radd__ = __add__

    def __neg__(self):
        return AlgElement(self.alg, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        if isinstance(other, AlgElement):
            return self.alg.multiply(self, other)
        if isinstance(other, MultiPoly):
            return AlgElement(self.alg, {k: v * other for k, v in self.coeffs.items()})
        return AlgElement(self.alg, {k: v.scale(other) for k, v in self.coeffs.items()})

    def __rmul__(self, other):
        # central coefficients commute with everything
        return self * other

    def __pow__(self, n: int):
        out = self.alg.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, AlgElement):
            other = self.alg.central(other)
        return self.alg.equal(self, other)

    def __hash__(self):
        raise TypeError("AlgElement is unhashable")

    def is_zero(self) -> bool:
        return self.alg.equal(self, self.alg.zero())

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in sorted(self.coeffs):
            c = self.coeffs[k]
            lab = self.alg.labels[k]
            cs = str(c)
            if lab == "1":
                parts.append(cs if len(c.terms) == 1 else f"({cs})")
            elif cs == "1":
                parts.append(lab)
            else:
                parts.append(f"({cs})*{lab}")
        return " + ".join(parts)

    __repr__ = __str__


class PresentedAlgebra:
    """Finite spanning set L over a central ring with structure constants."""

    def __init__(
        self,
        center: PolyRing,
        labels: Sequence[str],
        table: dict,
        identity: dict,
        *,
        is_free: bool,
        family: str = "structure_constants",
        syzygies: Sequence[dict] = (),
        embedding: Embedding | None = None,
        qbasis: Sequence[str] | None = None,
        pi_degree_hint: int | None = None,
        center_description: Sequence[str] | None = None,
    ):
        self.center = center
        self.field: FieldSpec = center.field
        self.labels = list(labels)
        self.index = {lab: i for i, lab in enumerate(self.labels)}
        if len(self.index) != len(self.labels):
            raise PresentationError("duplicate labels")
        self.table = table
        self.is_free = is_free
        self.family = family
        self.syzygies = [dict(s) for s in syzygies]
        self.pi_degree_hint = pi_degree_hint
        self.center_description = list(center_description or center.names)
        self._identity = AlgElement(self, {self.index[k] if isinstance(k, str) else k: v for k, v in identity.items()})
        if embedding is None:
            if center.relations:
                raise PresentationError("a center with relations needs an explicit embedding")
            embedding = self._trivial_embedding()
        self.embedding = embedding
        self.qbasis = [self.index[q] for q in (qbasis or self.labels)]
        self._action_cache: dict = {}

    def __repr__(self):
        return f"PresentedAlgebra({self.family}, |L|={len(self.labels)}, center={self.center.names})"

    def _trivial_embedding(self) -> Embedding:
        C = self.center
        n = len(self.labels)
        coords = [[C.one() if i == k else C.zero() for i in range(n)] for k in range(n)]
        return Embedding(C, n, coords, [None] * C.nvars, [C.one()], lambda f: f)

    # -- elements ---------------------------------------------------------

    @property
    def size(self) -> int:
        return len(self.labels)

    def zero(self) -> AlgElement:
        return AlgElement(self, {})

    def one(self) -> AlgElement:
        return self._identity

    def basis_element(self, label) -> AlgElement:
        k = self.index[label] if isinstance(label, str) else int(label)
        return AlgElement(self, {k: self.center.one()})

    def basis(self) -> list[AlgElement]:
        return [self.basis_element(i) for i in range(self.size)]

    def central(self, c) -> AlgElement:
        if not isinstance(c, MultiPoly):
            c = self.center.const(c)
        return self._identity * c

    def element(self, coeffs: dict) -> AlgElement:
        out = {}
        for lab, c in coeffs.items():
            k = self.index[lab] if isinstance(lab, str) else int(lab)
            if isinstance(c, str):
                c = self.center.parse(c)
            elif not isinstance(c, MultiPoly):
                c = self.center.const(c)
            out[k] = out[k] + c if k in out else c
        return AlgElement(self, out)

    def random_central(self, rng: random.Random, degree: int = 1, bound: int = 5) -> MultiPoly:
        C = self.center
        out = C.zero()
        for exp in C.normal_monomials(degree):
            if rng.random() < 0.5:
                out = out + C.monomial(exp, rng.randint(-bound, bound))
        return out

    def random_element(self, rng: random.Random, degree: int = 1, density: float = 0.6) -> AlgElement:
        coeffs = {}
        for k in range(self.size):
            if rng.random() < density:
                coeffs[k] = self.random_central(rng, degree)
        return AlgElement(self, coeffs)

    # -- multiplication ---------------------------------------------------

    def multiply(self, a: AlgElement, b: AlgElement) -> AlgElement:
        if a.alg is not self or b.alg is not self:
            raise ValueError("elements of a different algebra")
        out: dict = {}
        for i, ci in a.coeffs.items():
            for j, cj in b.coeffs.items():
                cij = ci * cj
                for k, c in self.table[(i, j)].items():
                    term = cij * c
                    out[k] = out[k] + term if k in out else term
        return AlgElement(self, out)

    def left_mult_matrix(self, a: AlgElement) -> PolyMatrix:
        """Matrix M with a*y_j = sum_i M_ij y_i (free algebras only)."""
        if not self.is_free:
            raise NotFreeError("left multiplication matrix needs a free presentation; use tr_standard")
        C = self.center
        n = self.size
        cols = []
        for j in range(n):
            prod = self.multiply(a, self.basis_element(j))
            cols.append([prod.coeffs.get(i, C.zero()) for i in range(n)])
        return PolyMatrix(C, [[cols[j][i] for j in range(n)] for i in range(n)])

    # -- coordinates ------------------------------------------------------

    def _var_apply(self, v: int, vec: list) -> list:
        emb = self.embedding
        act = emb.var_action[v]
        P = emb.base
        if act is None:
            pv = P.var(self.center.names[v])
            return [x * pv for x in vec]
        return [sum((act[i][j] * vec[j] for j in range(emb.rank) if not vec[j].is_zero()), P.zero()) for i in range(emb.rank)]

    def central_action(self, c: MultiPoly, vec: list) -> list:
        """Coordinates of c * (element with coordinates vec)."""
        P = self.embedding.base
        out = [P.zero()] * self.embedding.rank
        for exp, coef in c.terms.items():
            cur = vec
            for v, e in enumerate(exp):
                for _ in range(e):
                    cur = self._var_apply(v, cur)
            out = [o + x.scale(coef) for o, x in zip(out, cur)]
        return out

    def coords(self, a: AlgElement) -> list:
        emb = self.embedding
        P = emb.base
        out = [P.zero()] * emb.rank
        for k, c in a.coeffs.items():
            vec = self.central_action(c, emb.label_coords[k])
            out = [o + x for o, x in zip(out, vec)]
        return out

    def equal(self, a: AlgElement, b: AlgElement) -> bool:
        if self.is_free and not self.center.relations:
            diff = a - b
            return not diff.coeffs
        return self.coords(a) == self.coords(b)

    # -- checks -----------------------------------------------------------

    def check_associative(self, rng: random.Random, trials: int = 50) -> bool:
        for _ in range(trials):
            a, b, c = (self.random_element(rng) for _ in range(3))
            if not self.equal((a * b) * c, a * (b * c)):
                return False
        return True

    def check_identity(self) -> bool:
        one = self.one()
        return all(self.equal(one * y, y) and self.equal(y * one, y) for y in self.basis())


def _coordinate_matrix(A: PresentedAlgebra, elements: Sequence[AlgElement]) -> PolyMatrix:
    """Columns coords(t*y) for t in the center basis and y in elements."""
    emb = A.embedding
    cols = []
    for t in emb.center_basis:
        for y in elements:
            cols.append(A.coords(y * t))
    return PolyMatrix(emb.base, [[cols[j][i] for j in range(len(cols))] for i in range(emb.rank)])


def generic_rank(
    A: PresentedAlgebra,
    elements: Sequence[AlgElement] | None = None,
    samples: int = 5,
    seed: int = 0,
) -> int:
    """Dimension over the central fraction field of the span of ``elements`` (default L).

    Rank of the coordinate matrix of the t*y (t over a basis of the center
    over its polynomial subring P), maximized over random evaluations of P,
    divided by the number of t.  Spans of at most 8 elements are also ranked
    symbolically, which is then authoritative.
    """
    if elements is None:
        elements = A.basis()
    M = _coordinate_matrix(A, elements)
    P = M.ring
    F = A.field
    rng = random.Random(seed)
    best = 0
    for _ in range(max(samples, 5)):
        pt = [F.random(rng, 1000) for _ in range(P.nvars)]
        best = max(best, scalar_rank(F, M.evaluate(pt)))
    if len(elements) <= 8:
        sym = fraction_free_rank(M)
        if best > sym:
            raise PresentationError("random rank exceeds symbolic rank")
        best = sym
    s = len(A.embedding.center_basis)
    if best % s:
        raise PresentationError(f"rank {best} not divisible by the center degree {s}")
    return best // s


def pi_degree(A: PresentedAlgebra, seed: int = 0) -> int:
    r = generic_rank(A, seed=seed)
    n = math.isqrt(r)
    if n * n != r:
        raise PresentationError(f"generic rank {r} is not a perfect square")
    return n


# ---------------------------------------------------------------------------
# matrix order
# ---------------------------------------------------------------------------


def build_matrix_order(field: FieldSpec) -> PresentedAlgebra:
    """The order of M_2(K[x,y]) spanned by e11, e21, e22, x*e12, y*e12 over K[x,y]."""
    if field.p == 2:
        raise UnsupportedAlgebra("characteristic 2 is excluded")
    C = PolyRing(field, ("x", "y"))
    one, zero, x, y = C.one(), C.zero(), C.var("x"), C.var("y")
    labels = ["e11", "e21", "e22", "xe12", "ye12"]
    mats = {
        "e11": [[one, zero], [zero, zero]],
        "e21": [[zero, zero], [one, zero]],
        "e22": [[zero, zero], [zero, one]],
        "xe12": [[zero, x], [zero, zero]],
        "ye12": [[zero, y], [zero, zero]],
    }

    def mat_mul(a, b):
        return [[a[i][0] * b[0][j] + a[i][1] * b[1][j] for j in range(2)] for i in range(2)]

    def decompose(m) -> dict:
        out = {0: m[0][0], 1: m[1][0], 2: m[1][1]}
        # split the (1,2) entry as f*x + g*y
        fx, gy = {}, {}
        for e, c in m[0][1].terms.items():
            if e[0] > 0:
                fx[(e[0] - 1, e[1])] = c
            elif e[1] > 0:
                gy[(e[0], e[1] - 1)] = c
            else:
                raise PresentationError("product leaves the order")
        out[3] = C.from_dict(fx)
        out[4] = C.from_dict(gy)
        return {k: v for k, v in out.items() if not v.is_zero()}

    table = {}
    for i, a in enumerate(labels):
        for j, b in enumerate(labels):
            table[(i, j)] = decompose(mat_mul(mats[a], mats[b]))

    def flat(m):
        return [m[0][0], m[0][1], m[1][0], m[1][1]]

    emb = Embedding(C, 4, [flat(mats[lab]) for lab in labels], [None, None], [one], lambda f: f)
    return PresentedAlgebra(
        C,
        labels,
        table,
        {"e11": one, "e22": one},
        is_free=False,
        family="matrix_order",
        syzygies=[{3: y, 4: -x}],
        embedding=emb,
        qbasis=["e11", "e21", "e22", "xe12"],
        pi_degree_hint=2,
    )


# ---------------------------------------------------------------------------
# quantum affine space
# ---------------------------------------------------------------------------


@dataclass
class QuantumAffineSpace:
    """K_p[X_1..X_k]: X_i X_j = p_ij X_j X_i, PBW monomials X_1^u_1 ... X_k^u_k."""

    field: FieldSpec
    pij: list

    def __post_init__(self):
        F = self.field
        k = len(self.pij)
        self.pij = [[F(v) for v in row] for row in self.pij]
        if any(len(r) != k for r in self.pij):
            raise UnsupportedAlgebra("p_ij must be a square matrix")
        for i in range(k):
            if self.pij[i][i] != 1:
                raise UnsupportedAlgebra("p_ii must equal 1")
            for j in range(k):
                if F.mul(self.pij[i][j], self.pij[j][i]) != 1:
                    raise UnsupportedAlgebra("p_ij * p_ji must equal 1")

    @property
    def nvars(self) -> int:
        return len(self.pij)

    def mono_mul(self, u: tuple, v: tuple):
        """X^u X^v = s X^(u+v); returns (s, u+v)."""
        F = self.field
        s = 1
        for i in range(self.nvars):
            if not u[i]:
                continue
            for j in range(i):
                if v[j]:
                    s = F.mul(s, F.pow(self.pij[i][j], u[i] * v[j]))
        return s, tuple(a + b for a, b in zip(u, v))


STANDARD_PIJ = [[1, -1, -1], [-1, 1, 1], [-1, 1, 1]]


def _is_standard_pij(F: FieldSpec, pij) -> bool:
    return all(F(pij[i][j]) == F(STANDARD_PIJ[i][j]) for i in range(3) for j in range(3)) if len(pij) == 3 else False


def build_quantum_affine(field: FieldSpec, pij=None) -> PresentedAlgebra:
    """K_p[X1,X2,X3] with p12 = p13 = -1, p23 = 1, over its center K<X1^2, X2^2, X3^2, X2X3>.

    Center variables: a = X1^2, b = X2^2, c = X3^2, d = X2X3, with d^2 = b*c.
    """
    if field.p in (2, 3):
        raise UnsupportedAlgebra("characteristic 2 and 3 are excluded for this example")
    if pij is None:
        pij = STANDARD_PIJ
    qa = QuantumAffineSpace(field, [list(r) for r in pij])
    if not _is_standard_pij(field, qa.pij):
        raise UnsupportedAlgebra("a center presentation is only available for p12 = p13 = -1, p23 = 1")
    C = PolyRing(field, ("a", "b", "c", "d"), [((0, 0, 0, 2), {(0, 1, 1, 0): 1})])
    P = PolyRing(field, ("a", "b", "c"))
    labels = ["1", "X1", "X2", "X3", "X1X2", "X1X3"]
    lab_exp = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (1, 0, 1)]
    exp_index = {e: i for i, e in enumerate(lab_exp)}

    def to_label(s, u):
        q = tuple(x // 2 for x in u)
        w = tuple(x % 2 for x in u)
        dpow = 0
        if w[1] and w[2]:
            dpow = 1
            w = (w[0], 0, 0)
        return exp_index[w], C.monomial((q[0], q[1], q[2], dpow), s)

    table = {}
    for i, u in enumerate(lab_exp):
        for j, v in enumerate(lab_exp):
            s, e = qa.mono_mul(u, v)
            k, c = to_label(s, e)
            table[(i, j)] = {k: c}

    # faithful coordinates: PBW monomials over P = K[a,b,c], residues w in {0,1}^3
    residues = [(w1, w2, w3) for w1 in (0, 1) for w2 in (0, 1) for w3 in (0, 1)]
    res_index = {w: i for i, w in enumerate(residues)}

    def mono_coords(s, u):
        vec = [P.zero()] * 8
        vec[res_index[tuple(x % 2 for x in u)]] = P.monomial(tuple(x // 2 for x in u), s)
        return vec

    label_coords = [mono_coords(1, u) for u in lab_exp]
    d_action = [[P.zero()] * 8 for _ in range(8)]
    for j, w in enumerate(residues):
        s, e = qa.mono_mul(w, (0, 1, 1))
        col = mono_coords(s, e)
        for i in range(8):
            d_action[i][j] = col[i]

    def to_center(f: MultiPoly) -> MultiPoly:
        return C.from_dict({(e[0], e[1], e[2], 0): c for e, c in f.terms.items()})

    emb = Embedding(P, 8, label_coords, [None, None, None, d_action], [C.one(), C.var("d")], to_center)
    a, b, c, d = C.gens()
    # relation module of L over C (see the two-term syzygies between X2, X3 and X1X2, X1X3)
    syz = [
        {2: d, 3: -b},
        {2: c, 3: -d},
        {4: d, 5: -b},
        {4: c, 5: -d},
    ]
    alg = PresentedAlgebra(
        C,
        labels,
        table,
        {"1": C.one()},
        is_free=False,
        family="quantum_affine_space",
        syzygies=syz,
        embedding=emb,
        qbasis=["1", "X1", "X2", "X1X2"],
        pi_degree_hint=2,
        center_description=["a = X1^2", "b = X2^2", "c = X3^2", "d = X2*X3"],
    )
    alg.pbw = qa
    alg.pbw_labels = lab_exp
    alg.pbw_residues = residues
    return alg


# ---------------------------------------------------------------------------
# user tables
# ---------------------------------------------------------------------------


def build_structure_constants(
    field: FieldSpec,
    center_vars: Sequence[str],
    labels: Sequence[str],
    products: dict,
    identity: str = "1",
) -> PresentedAlgebra:
    """Free algebra over K[center_vars] from ``products[(a, b)] = {c: "poly", ...}``.

    Missing products are zero, except those involving the identity label,
    which default to the trivial ones.  Associativity is checked exactly on
    all triples of basis elements.
    """
    C = PolyRing(field, center_vars)
    idx = {lab: i for i, lab in enumerate(labels)}
    if identity not in idx:
        raise PresentationError(f"identity label {identity!r} not in the spanning set")
    table = {(i, j): {} for i in range(len(labels)) for j in range(len(labels))}
    for (la, lb), entry in products.items():
        if la not in idx or lb not in idx:
            raise PresentationError(f"unknown label in product {la}*{lb}")
        row = {}
        for lc, coef in entry.items():
            if lc not in idx:
                raise PresentationError(f"unknown label {lc!r}")
            poly = C.parse(coef) if isinstance(coef, str) else C.const(Fraction(coef))
            if not poly.is_zero():
                row[idx[lc]] = poly
        table[(idx[la], idx[lb])] = row
    one = idx[identity]
    given = {(idx[la], idx[lb]) for la, lb in products}
    for j in range(len(labels)):
        for key in ((one, j), (j, one)):
            if key not in given:
                table[key] = {j: C.one()}
            elif table[key] != {j: C.one()}:
                raise PresentationError(f"{identity!r} does not act as the identity on {labels[j]!r}")
    alg = PresentedAlgebra(C, labels, table, {identity: C.one()}, is_free=True, family="structure_constants")
    basis = alg.basis()
    for a in basis:
        for b in basis:
            ab = a * b
            for c in basis:
                if not alg.equal(ab * c, a * (b * c)):
                    raise PresentationError("structure constants are not associative")
    return alg
