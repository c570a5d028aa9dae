"""Sparse multivariate polynomials over a FieldSpec, with optional rewrite rules.

A :class:`PolyRing` is ``K[v_1..v_k]`` or a quotient of it presented by
monomial rewrite rules (``d^2 -> b*c``).  Elements are :class:`MultiPoly`
values keyed by exponent tuples; terms iterate in graded-lex order.

Determinants of :class:`PolyMatrix` values are computed by one-step Bareiss
elimination, whose divisions are exact in any integral domain.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .scalars import FieldSpec, Scalar


class NotDivisible(ArithmeticError):
    """Exact division was requested but the divisor does not divide."""


class ShapeError(ValueError):
    pass


class UnsupportedIdeal(ValueError):
    pass


def grlex_key(exp: tuple) -> tuple:
    return (sum(exp), exp)


def _add_exp(a: tuple, b: tuple) -> tuple:
    return tuple([x + y for x, y in zip(a, b)])


class PolyRing:
    """Commutative polynomial ring, possibly modulo monomial rewrite rules.

    ``relations`` is a sequence of ``(lhs, rhs)`` pairs: ``lhs`` an exponent
    tuple, ``rhs`` a dict exponent -> coefficient.  Terms divisible by ``lhs``
    are rewritten until none remain.
    """

    def __init__(self, field: FieldSpec, names: Sequence[str], relations=()):
        self.field = field
        self.names = tuple(names)
        self.nvars = len(self.names)
        if len(set(self.names)) != self.nvars:
            raise ValueError(f"duplicate variable names in {names}")
        self.relations = tuple((tuple(lhs), dict(rhs)) for lhs, rhs in relations)
        for lhs, rhs in self.relations:
            if len(lhs) != self.nvars or any(len(e) != self.nvars for e in rhs):
                raise ShapeError("relation exponent length mismatch")
        self._zero_exp = (0,) * self.nvars

    def __repr__(self):
        rel = ""
        if self.relations:
            rel = ", " + ", ".join(
                f"{MultiPoly(self, {lhs: 1}, _raw=True)} -> {MultiPoly(self, rhs, _raw=True)}"
                for lhs, rhs in self.relations
            )
        return f"PolyRing({self.field}, {list(self.names)}{rel})"

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.field == other.field
            and self.names == other.names
            and self.relations == tuple(other.relations)
        )

    def __hash__(self):
        return hash((self.field, self.names, len(self.relations)))

    # -- constructors -----------------------------------------------------

    def zero(self) -> "MultiPoly":
        return MultiPoly(self, {}, _raw=True)

    def one(self) -> "MultiPoly":
        return self.const(1)

    def const(self, c) -> "MultiPoly":
        c = self.field(c)
        return MultiPoly(self, {self._zero_exp: c} if c else {}, _raw=True)

    def var(self, name) -> "MultiPoly":
        i = self.names.index(name) if isinstance(name, str) else int(name)
        exp = [0] * self.nvars
        exp[i] = 1
        return self.monomial(tuple(exp))

    def gens(self) -> list["MultiPoly"]:
        return [self.var(i) for i in range(self.nvars)]

    def monomial(self, exp, c=1) -> "MultiPoly":
        return MultiPoly(self, {tuple(exp): self.field(c)})

    def from_dict(self, terms: dict) -> "MultiPoly":
        return MultiPoly(self, {tuple(e): self.field(c) for e, c in terms.items()})

    def parse(self, text: str) -> "MultiPoly":
        return parse_poly(text, self)

    # -- normal forms -----------------------------------------------------

    def reduce_terms(self, terms: dict) -> dict:
        """Apply rewrite rules and drop zero coefficients (terms already canonical)."""
        norm = self.field.norm
        if not self.relations:
            return {e: c for e, c in terms.items() if c}
        out: dict = {}
        stack = [(e, c) for e, c in terms.items() if c]
        while stack:
            e, c = stack.pop()
            for lhs, rhs in self.relations:
                if all(a >= b for a, b in zip(e, lhs)):
                    rest = tuple(a - b for a, b in zip(e, lhs))
                    for re_, rc in rhs.items():
                        stack.append((_add_exp(rest, re_), norm(c * rc)))
                    break
            else:
                out[e] = norm(out.get(e, 0) + c)
        return {e: c for e, c in out.items() if c}

    def is_normal_exponent(self, exp: tuple) -> bool:
        return not any(all(a >= b for a, b in zip(exp, lhs)) for lhs, _ in self.relations)

    def normal_monomials(self, max_degree: int):
        """All normal-form exponents of total degree <= max_degree, grlex ascending."""
        out = []
        for deg in range(max_degree + 1):
            for combo in itertools.combinations_with_replacement(range(self.nvars), deg):
                exp = [0] * self.nvars
                for i in combo:
                    exp[i] += 1
                exp = tuple(exp)
                if self.is_normal_exponent(exp):
                    out.append(exp)
        return sorted(set(out), key=grlex_key)

    # -- points -----------------------------------------------------------

    def check_point(self, point: Sequence) -> tuple:
        """Canonicalize a point of maxspec and verify the rewrite rules hold there."""
        if len(point) != self.nvars:
            raise ShapeError(f"point has {len(point)} coordinates, ring has {self.nvars} variables")
        pt = tuple(self.field(v) for v in point)
        for lhs, rhs in self.relations:
            lv = MultiPoly(self, {lhs: 1}, _raw=True).evaluate(pt)
            rv = MultiPoly(self, rhs, _raw=True).evaluate(pt)
            if lv != rv:
                raise InvalidPoint(f"point {pt} violates relation {self.relation_str(lhs, rhs)}")
        return pt

    def relation_str(self, lhs, rhs) -> str:
        return f"{MultiPoly(self, {lhs: 1}, _raw=True)} = {MultiPoly(self, rhs, _raw=True)}"

    def relation_polys(self) -> list["MultiPoly"]:
        """The defining relations as polynomials ``lhs - rhs`` of the free ring."""
        free = PolyRing(self.field, self.names)
        return [free.monomial(lhs) - free.from_dict(rhs) for lhs, rhs in self.relations]

    # -- quadratic-extension structure -----------------------------------

    def extension_var(self) -> int | None:
        """Index ``v`` when the rules are exactly ``{v^2 -> q}`` with q free of v."""
        if not self.relations:
            return None
        if len(self.relations) != 1:
            raise NotImplementedError("exact division needs at most one rewrite rule")
        lhs, rhs = self.relations[0]
        nz = [i for i, a in enumerate(lhs) if a]
        if len(nz) != 1 or lhs[nz[0]] != 2 or any(e[nz[0]] for e in rhs):
            raise NotImplementedError("exact division supports only rules v^2 -> q(other vars)")
        return nz[0]

    def split_extension(self, f: "MultiPoly"):
        """Write f = u + w*v with u, w free of the extension variable v."""
        v = self.extension_var()
        u, w = {}, {}
        for e, c in f.terms.items():
            if e[v] == 0:
                u[e] = c
            else:
                e2 = list(e)
                e2[v] = 0
                w[tuple(e2)] = c
        return MultiPoly(self, u, _raw=True), MultiPoly(self, w, _raw=True)

    def exact_div(self, f: "MultiPoly", g: "MultiPoly") -> "MultiPoly":
        """The unique q with q*g == f; raises NotDivisible otherwise."""
        if g.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if f.is_zero():
            return self.zero()
        v = self.extension_var()
        if v is None:
            return _poly_exact_div(f, g)
        # (f)/(h + k v) = f (h - k v) / (h^2 - k^2 q)
        h, k = self.split_extension(g)
        vv = self.var(v)
        conj = h - k * vv
        normv = h * h - k * k * (vv * vv)
        num = f * conj
        nu, nw = self.split_extension(num)
        q = _poly_exact_div(nu, normv) + _poly_exact_div(nw, normv) * vv
        if q * g != f:
            raise NotDivisible("exact division failed")
        return q

    # -- divisibility of monomials ---------------------------------------

    def monomial_divides(self, a: tuple, b: tuple) -> bool:
        """Whether x^a divides x^b in this ring (both normal-form exponents)."""
        if all(x <= y for x, y in zip(a, b)):
            return True
        # preimages of b under the monomial rules: b * (lhs / rhs)^k
        for lhs, rhs in self.relations:
            if len(rhs) != 1:
                continue
            (rexp,) = rhs
            cur = list(b)
            while all(x >= y for x, y in zip(cur, rexp)):
                cur = [x - y + z for x, y, z in zip(cur, rexp, lhs)]
                if all(x <= y for x, y in zip(a, cur)):
                    return True
        return False


class InvalidPoint(ValueError):
    pass


class MultiPoly:
    """Immutable sparse polynomial: ``terms`` maps exponent tuples to nonzero scalars."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: dict, _raw: bool = False):
        self.ring = ring
        self.terms = terms if _raw else ring.reduce_terms(terms)
        self._hash = None

    # -- predicates -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.ring._zero_exp in self.terms)

    def constant_value(self) -> Scalar:
        return self.terms.get(self.ring._zero_exp, 0)

    def is_monomial(self) -> bool:
        """A single term (a nonzero scalar multiple of a monomial)."""
        return len(self.terms) == 1

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=-1)

    def leading_term(self) -> tuple:
        e = max(self.terms, key=grlex_key)
        return e, self.terms[e]

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.ring is not self.ring and other.ring != self.ring:
                raise ValueError("polynomials from different rings")
            return other
        return self.ring.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        norm = self.ring.field.norm
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = norm(out.get(e, 0) + c)
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return MultiPoly(self.ring, out, _raw=True)

    __radd__ = __add__

    def __neg__(self):
        norm = self.ring.field.norm
        return MultiPoly(self.ring, {e: norm(-c) for e, c in self.terms.items()}, _raw=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> "MultiPoly":
        c = self.ring.field(c)
        if not c:
            return self.ring.zero()
        norm = self.ring.field.norm
        return MultiPoly(self.ring, {e: norm(v * c) for e, v in self.terms.items()}, _raw=True)

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        other = self._coerce(other)
        if not self.terms or not other.terms:
            return self.ring.zero()
        out: dict = {}
        get = out.get
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple([a + b for a, b in zip(e1, e2)])
                out[e] = get(e, 0) + c1 * c2
        norm = self.ring.field.norm
        out = {e: norm(c) for e, c in out.items()}
        if self.ring.relations:
            return MultiPoly(self.ring, out)
        return MultiPoly(self.ring, {e: c for e, c in out.items() if c}, _raw=True)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == self.ring.const(other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def exact_div(self, other) -> "MultiPoly":
        return self.ring.exact_div(self, self._coerce(other))

    def divide_scalar(self, c) -> "MultiPoly":
        return self.scale(self.ring.field.inv(self.ring.field(c)))

    def monic(self) -> "MultiPoly":
        if not self.terms:
            return self
        return self.divide_scalar(self.leading_term()[1])

    # -- evaluation -------------------------------------------------------

    def evaluate(self, point: Sequence) -> Scalar:
        if len(point) != self.ring.nvars:
            raise ShapeError(f"point has {len(point)} coordinates, expected {self.ring.nvars}")
        F = self.ring.field
        total = 0
        for e, c in self.terms.items():
            term = c
            for v, k in zip(point, e):
                if k:
                    term = term * (v ** k if not F.p else pow(v, k, F.p))
            total += term
        return F.norm(total)

    def substitute(self, images: Sequence["MultiPoly"]) -> "MultiPoly":
        """Ring homomorphism sending variable i to ``images[i]``."""
        target = images[0].ring
        out = target.zero()
        for e, c in self.terms.items():
            term = target.const(c)
            for img, k in zip(images, e):
                if k:
                    term = term * img**k
            out = out + term
        return out

    # -- printing ---------------------------------------------------------

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"MultiPoly({format_poly(self)})"


def _poly_exact_div(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """Multivariate exact division in a polynomial ring (no rewrite rules involved)."""
    ring = f.ring
    F = ring.field
    if f.is_zero():
        return ring.zero()
    eg, cg = g.leading_term()
    inv_cg = F.inv(cg)
    if len(g.terms) == 1:
        out = {}
        for e, c in f.terms.items():
            d = tuple(a - b for a, b in zip(e, eg))
            if min(d) < 0:
                raise NotDivisible(f"{g} does not divide {f}")
            out[d] = F.norm(c * inv_cg)
        return MultiPoly(ring, out, _raw=True)
    import heapq

    rem = dict(f.terms)
    heap = [(-sum(e), tuple(-a for a in e)) for e in rem]
    heapq.heapify(heap)
    gterms = [(e, c) for e, c in g.terms.items() if e != eg]
    q = {}
    norm = F.norm
    while heap:
        negdeg, negexp = heapq.heappop(heap)
        e = tuple(-a for a in negexp)
        c = rem.get(e, 0)
        if not c:
            continue
        del rem[e]
        d = tuple(a - b for a, b in zip(e, eg))
        if min(d) < 0:
            raise NotDivisible(f"{g} does not divide {f}")
        qc = norm(c * inv_cg)
        q[d] = qc
        for ge, gc in gterms:
            te = tuple([a + b for a, b in zip(d, ge)])
            old = rem.get(te, 0)
            nv = norm(old - qc * gc)
            if nv:
                if not old:
                    heapq.heappush(heap, (-sum(te), tuple(-a for a in te)))
                rem[te] = nv
            elif old:
                del rem[te]
    return MultiPoly(ring, q, _raw=True)


# ---------------------------------------------------------------------------
# text I/O
# ---------------------------------------------------------------------------


def _format_coeff(c) -> str:
    return str(c)


def format_poly(f: MultiPoly) -> str:
    if not f.terms:
        return "0"
    names = f.ring.names
    parts = []
    for e, c in f.sorted_terms():
        mono = "*".join(
            (n if k == 1 else f"{n}^{k}") for n, k in zip(names, e) if k
        )
        neg = c < 0 if not f.ring.field.p else False
        mag = -c if neg else c
        if not mono:
            body = _format_coeff(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{_format_coeff(mag)}*{mono}"
        parts.append(("-" if neg else "+", body))
    sign, body = parts[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def parse_poly(text: str, ring: PolyRing) -> MultiPoly:
    """Parse ``3*X1^2*Y2 - 1/2*X1 + 4`` (``^`` or ``**`` for powers) into ``ring``."""
    import sympy
    from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations

    symbols = {n: sympy.Symbol(n) for n in ring.names}
    try:
        expr = parse_expr(
            text,
            local_dict=symbols,
            transformations=standard_transformations + (convert_xor,),
            evaluate=True,
        )
    except (SyntaxError, TypeError, sympy.SympifyError) as exc:
        raise ValueError(f"cannot parse polynomial {text!r}: {exc}") from None
    extra = expr.free_symbols - set(symbols.values())
    if extra:
        raise ValueError(f"unknown variables {sorted(map(str, extra))} in {text!r}")
    if not ring.nvars:
        if not expr.is_Rational:
            raise ValueError(f"not a rational constant: {text!r}")
        return ring.const(Fraction(int(expr.p), int(expr.q)))
    try:
        poly = sympy.Poly(expr, *[symbols[n] for n in ring.names])
    except sympy.PolynomialError:
        raise ValueError(f"not a polynomial in {', '.join(ring.names)}: {text!r}") from None
    terms = {}
    for exp, coef in poly.terms():
        if not coef.is_Rational:
            raise ValueError(f"non-rational coefficient {coef} in {text!r}")
        terms[tuple(exp)] = ring.field(Fraction(int(coef.p), int(coef.q)))
    return MultiPoly(ring, terms)


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------


class PolyMatrix:
    """Dense rectangular matrix of MultiPoly entries over one ring."""

    def __init__(self, ring: PolyRing, rows: Sequence[Sequence]):
        self.ring = ring
        self.rows = [[e if isinstance(e, MultiPoly) else ring.const(e) for e in row] for row in rows]
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        if any(len(r) != self.ncols for r in self.rows):
            raise ShapeError("ragged matrix")

    @classmethod
    def identity(cls, ring: PolyRing, n: int) -> "PolyMatrix":
        return cls(ring, [[ring.one() if i == j else ring.zero() for j in range(n)] for i in range(n)])

    @property
    def shape(self):
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, PolyMatrix) and self.rows == other.rows

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "PolyMatrix":
        return PolyMatrix(self.ring, [[self.rows[i][j] for j in cols] for i in rows])

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(self.ring, [list(col) for col in zip(*self.rows)])

    def __mul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.ncols != other.nrows:
            raise ShapeError("inner dimensions differ")
        zero = self.ring.zero()
        out = []
        for row in self.rows:
            new = []
            for j in range(other.ncols):
                acc = zero
                for k, a in enumerate(row):
                    if a.terms:
                        b = other.rows[k][j]
                        if b.terms:
                            acc = acc + a * b
                new.append(acc)
            out.append(new)
        return PolyMatrix(self.ring, out)

    def trace(self) -> MultiPoly:
        acc = self.ring.zero()
        for i in range(min(self.nrows, self.ncols)):
            acc = acc + self.rows[i][i]
        return acc

    def evaluate(self, point) -> list[list]:
        return [[e.evaluate(point) for e in row] for row in self.rows]

    def is_symmetric(self) -> bool:
        return all(self.rows[i][j] == self.rows[j][i] for i in range(self.nrows) for j in range(i))

    def __str__(self):
        return "[" + ",\n ".join("[" + ", ".join(map(str, r)) + "]" for r in self.rows) + "]"


MAX_RATIONAL_DET = 12


def bareiss_det(M: PolyMatrix, allow_large: bool = False) -> MultiPoly:
    """Determinant by one-step fraction-free (Bareiss) elimination.

    Over Q, matrices larger than 12x12 are refused unless ``allow_large``.
    """
    if M.nrows != M.ncols:
        raise ShapeError(f"determinant of a {M.nrows}x{M.ncols} matrix")
    n = M.nrows
    ring = M.ring
    if n == 0:
        return ring.one()
    if n > MAX_RATIONAL_DET and not ring.field.p and not allow_large:
        raise ValueError(
            f"{n}x{n} determinant over QQ refused (coefficient blowup guard); pass allow_large=True"
        )
    a = [list(r) for r in M.rows]
    sign = 1
    prev = ring.one()
    for k in range(n - 1):
        if a[k][k].is_zero():
            for i in range(k + 1, n):
                if not a[i][k].is_zero():
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return ring.zero()
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                num = akk * row_i[j]
                if aik.terms and row_k[j].terms:
                    num = num - aik * row_k[j]
                row_i[j] = num if prev.is_constant() and prev.constant_value() == 1 else ring.exact_div(num, prev)
            row_i[k] = ring.zero()
        prev = akk
    det = a[n - 1][n - 1]
    return -det if sign < 0 else det


def laplace_det(M: PolyMatrix) -> MultiPoly:
    """Cofactor expansion along the first row; an independent oracle for small sizes."""
    if M.nrows != M.ncols:
        raise ShapeError("non-square matrix")
    n = M.nrows
    if n == 0:
        return M.ring.one()
    if n == 1:
        return M.rows[0][0]
    total = M.ring.zero()
    for j in range(n):
        e = M.rows[0][j]
        if e.is_zero():
            continue
        minor = M.submatrix(range(1, n), [c for c in range(n) if c != j])
        term = e * laplace_det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def minor_det(M: PolyMatrix, rows: Sequence[int], cols: Sequence[int], **kw) -> MultiPoly:
    rows, cols = list(rows), list(cols)
    if len(rows) != len(cols):
        raise ShapeError("row and column index sets differ in size")
    for i in rows:
        if not 0 <= i < M.nrows:
            raise IndexError(f"row index {i} out of range")
    for j in cols:
        if not 0 <= j < M.ncols:
            raise IndexError(f"column index {j} out of range")
    return bareiss_det(M.submatrix(rows, cols), **kw)


def adjugate(M: PolyMatrix) -> tuple[MultiPoly, PolyMatrix]:
    """(det M, adj M) with adj M * M = det M * I."""
    n = M.nrows
    if n != M.ncols:
        raise ShapeError("adjugate of a non-square matrix")
    ring = M.ring
    det = bareiss_det(M, allow_large=True)
    if n == 1:
        return det, PolyMatrix(ring, [[ring.one()]])
    adj = [[ring.zero()] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            m = minor_det(M, [r for r in range(n) if r != j], [c for c in range(n) if c != i], allow_large=True)
            adj[i][j] = m if (i + j) % 2 == 0 else -m
    return det, PolyMatrix(ring, adj)


def fraction_free_rank(M: PolyMatrix) -> int:
    """Rank over the fraction field, by Bareiss elimination with full pivoting."""
    ring = M.ring
    a = [list(r) for r in M.rows]
    nr, nc = M.nrows, M.ncols
    prev = ring.one()
    rank = 0
    for k in range(min(nr, nc)):
        piv = next(((i, j) for i in range(k, nr) for j in range(k, nc) if not a[i][j].is_zero()), None)
        if piv is None:
            break
        i0, j0 = piv
        a[k], a[i0] = a[i0], a[k]
        for row in a:
            row[k], row[j0] = row[j0], row[k]
        akk = a[k][k]
        for i in range(k + 1, nr):
            for j in range(k + 1, nc):
                num = akk * a[i][j] - a[i][k] * a[k][j]
                a[i][j] = ring.exact_div(num, prev)
            a[i][k] = ring.zero()
        prev = akk
        rank += 1
    return rank


# ---------------------------------------------------------------------------
# ideals
# ---------------------------------------------------------------------------


@dataclass
class IdealGens:
    """Generators of an ideal; zero generators are dropped."""

    ring: PolyRing
    generators: list = field(default_factory=list)

    def __post_init__(self):
        self.generators = [g for g in self.generators if not g.is_zero()]

    @property
    def monomial_flag(self) -> bool:
        return all(g.is_monomial() for g in self.generators)

    def is_zero(self) -> bool:
        return not self.generators

    def deduplicated(self) -> "IdealGens":
        """Drop scalar-multiple duplicates; sort by the canonical term order."""
        seen = {}
        for g in self.generators:
            m = g.monic()
            seen.setdefault(m, m)
        gens = sorted(seen, key=lambda g: [grlex_key(e) for e, _ in g.sorted_terms()], reverse=True)
        return IdealGens(self.ring, gens)

    def __str__(self):
        return "<" + ", ".join(map(str, self.generators)) + ">"


def _monomial_exponents(ideal: IdealGens) -> list[tuple]:
    if not ideal.monomial_flag:
        raise UnsupportedIdeal("monomial ideal comparison needs single-term generators")
    return [next(iter(g.terms)) for g in ideal.generators]


def monomial_ideal_contains(big: IdealGens, small: IdealGens) -> bool:
    ring = big.ring
    bexp = _monomial_exponents(big)
    return all(any(ring.monomial_divides(b, s) for b in bexp) for s in _monomial_exponents(small))


def monomial_ideal_equal(A: IdealGens, B: IdealGens) -> bool:
    """Equality of monomial ideals by mutual divisibility of generators."""
    return monomial_ideal_contains(A, B) and monomial_ideal_contains(B, A)


def linear_membership(f: MultiPoly, gens: IdealGens, degree_bound: int) -> bool:
    """Whether f = sum q_i g_i with deg q_i <= degree_bound - deg g_i (exact linear algebra)."""
    from .linalg import in_column_span

    ring = f.ring
    if f.is_zero():
        return True
    columns = []
    for g in gens.generators:
        room = degree_bound - g.degree()
        if room < 0:
            continue
        for exp in ring.normal_monomials(room):
            columns.append(ring.monomial(exp) * g)
    if not columns:
        return False
    support = sorted({e for c in columns for e in c.terms} | set(f.terms), key=grlex_key)
    index = {e: i for i, e in enumerate(support)}
    mat = [[0] * len(columns) for _ in support]
    for j, col in enumerate(columns):
        for e, c in col.terms.items():
            mat[index[e]][j] = c
    rhs = [0] * len(support)
    for e, c in f.terms.items():
        rhs[index[e]] = c
    return in_column_span(ring.field, mat, rhs)


def derivative(f: MultiPoly, i: int) -> MultiPoly:
    """Partial derivative in the i-th variable (on the free polynomial ring)."""
    F = f.ring.field
    out = {}
    for e, c in f.terms.items():
        if e[i]:
            e2 = list(e)
            e2[i] -= 1
            out[tuple(e2)] = F.norm(c * e[i])
    return MultiPoly(f.ring, out)


def jacobian_singular(ring: PolyRing, point) -> bool:
    """Whether the point is singular on the variety of the ring's relations.

    The relations are taken as a complete intersection: the point is singular
    when the Jacobian has rank below the number of relations there.
    """
    from .linalg import rank

    polys = ring.relation_polys()
    if not polys:
        return False
    pt = ring.check_point(point)
    jac = [[derivative(g, i).evaluate(pt) for i in range(ring.nvars)] for g in polys]
    return rank(ring.field, jac) < len(polys)


def change_of_tuples(M: PolyMatrix, z: Sequence[Sequence], zp: Sequence[Sequence]):
    """Both sides of det(z^T M z') = sum_{I,J} det(z_I) det(z'_J) det(M_IJ).

    M is l x l; z and z' are l x m scalar matrices.  Returns (lhs, rhs).
    """
    ring = M.ring
    l = M.nrows
    m = len(z[0]) if z else 0
    Z = PolyMatrix(ring, [[ring.const(v) for v in row] for row in z])
    Zp = PolyMatrix(ring, [[ring.const(v) for v in row] for row in zp])
    lhs = bareiss_det(Z.transpose() * M * Zp)
    rhs = ring.zero()
    subsets = list(itertools.combinations(range(l), m))
    for I in subsets:
        dI = laplace_det(Z.submatrix(I, range(m)))
        if dI.is_zero():
            continue
        for J in subsets:
            dJ = laplace_det(Zp.submatrix(J, range(m)))
            if dJ.is_zero():
                continue
            rhs = rhs + dI * dJ * bareiss_det(M.submatrix(I, J))
    return lhs, rhs
