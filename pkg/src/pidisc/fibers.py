"""Fiber algebras R/mR over central points and their Wedderburn data.

The radical is the kernel of the regular trace form, which is exact when
the characteristic exceeds the fiber dimension.  Blocks of the semisimple
quotient are split off with primitive central idempotents obtained by
factoring minimal polynomials of random central elements.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import sympy

from .disc import point_gram_rank
from .linalg import Subspace, nullspace, rank as scalar_rank, rref
from .pialg import AlgElement, PresentedAlgebra, pi_degree
from .polyring import MultiPoly
from .scalars import CharacteristicError, FieldSpec
from .traces import TraceMap


class FiberError(ValueError):
    pass


class FiniteAlgebra:
    """Unital associative algebra K^dim given by structure constants."""

    def __init__(self, field: FieldSpec, table: list, one: Sequence, labels: Sequence[str] | None = None):
        self.field = field
        self.dim = len(table)
        self.table = table
        self.one = list(one)
        self.labels = list(labels) if labels else [f"b{i}" for i in range(self.dim)]
        self._sparse = [[[(k, c) for k, c in enumerate(table[i][j]) if c] for j in range(self.dim)]
                        for i in range(self.dim)]

    def __repr__(self):
        return f"FiniteAlgebra(dim={self.dim}, {self.field})"

    def basis_vector(self, i: int) -> list:
        v = [0] * self.dim
        v[i] = 1
        return v

    def mul(self, u: Sequence, v: Sequence) -> list:
        out = [0] * self.dim
        sp = self._sparse
        for i, ui in enumerate(u):
            if not ui:
                continue
            row = sp[i]
            for j, vj in enumerate(v):
                if not vj:
                    continue
                c = ui * vj
                for k, t in row[j]:
                    out[k] += c * t
        norm = self.field.norm
        return [norm(x) for x in out]

    def left_matrix(self, u: Sequence) -> list:
        cols = [self.mul(u, self.basis_vector(j)) for j in range(self.dim)]
        return [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)]

    def reg_trace(self, u: Sequence):
        acc = 0
        for j in range(self.dim):
            acc += self.mul(u, self.basis_vector(j))[j]
        return self.field.norm(acc)

    def trace_form(self) -> list:
        n = self.dim
        tr = [self.reg_trace(self.basis_vector(k)) for k in range(n)]
        norm = self.field.norm
        return [[norm(sum(c * tr[k] for k, c in self._sparse[i][j])) for j in range(n)] for i in range(n)]

    # -- checks -----------------------------------------------------------

    def random_vector(self, rng: random.Random) -> list:
        return [self.field.random(rng, 5) for _ in range(self.dim)]

    def is_associative(self, rng: random.Random, trials: int = 20) -> bool:
        for _ in range(trials):
            a, b, c = (self.random_vector(rng) for _ in range(3))
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)):
                return False
        return True

    def is_unital(self) -> bool:
        return all(
            self.mul(self.one, self.basis_vector(i)) == self.basis_vector(i)
            and self.mul(self.basis_vector(i), self.one) == self.basis_vector(i)
            for i in range(self.dim)
        )

    # -- subspaces --------------------------------------------------------

    def span(self, vectors) -> Subspace:
        return Subspace.span(self.field, list(vectors), self.dim)

    def ideal_closure(self, vectors) -> Subspace:
        """Two-sided ideal generated by the given vectors."""
        S = self.span(vectors)
        while True:
            new = []
            for r in S.rows:
                for i in range(self.dim):
                    e = self.basis_vector(i)
                    new.append(self.mul(e, r))
                    new.append(self.mul(r, e))
            T = S.add(new)
            if T.dim == S.dim:
                return S
            S = T

    def is_ideal(self, S: Subspace) -> bool:
        for r in S.rows:
            for i in range(self.dim):
                e = self.basis_vector(i)
                if not S.contains(self.mul(e, r)) or not S.contains(self.mul(r, e)):
                    return False
        return True

    def product_space(self, U: Subspace, V: Subspace) -> Subspace:
        return self.span([self.mul(u, v) for u in U.rows for v in V.rows])

    def is_nilpotent_subspace(self, S: Subspace) -> bool:
        cur = S
        for _ in range(self.dim + 1):
            if cur.dim == 0:
                return True
            cur = self.product_space(cur, S)
        return cur.dim == 0

    def quotient(self, S: Subspace) -> "FiniteAlgebra":
        """F / S for a two-sided ideal S, on the complement coordinates of S."""
        comp = S.complement_indices()
        table = []
        for i in comp:
            row = []
            for j in comp:
                prod = self.mul(self.basis_vector(i), self.basis_vector(j))
                row.append(S.quotient_coords(prod))
            table.append(row)
        return FiniteAlgebra(self.field, table, S.quotient_coords(self.one), [self.labels[i] for i in comp])

    def center(self) -> list:
        """Basis of the center."""
        n = self.dim
        # rows: coordinates of z*e_j - e_j*z, linear in z
        eqs = []
        for j in range(n):
            ej = self.basis_vector(j)
            cols = []
            for i in range(n):
                ei = self.basis_vector(i)
                a = self.mul(ei, ej)
                b = self.mul(ej, ei)
                cols.append([self.field.norm(x - y) for x, y in zip(a, b)])
            for k in range(n):
                eqs.append([cols[i][k] for i in range(n)])
        return nullspace(self.field, eqs, n)


def matrix_algebra(field: FieldSpec, n: int) -> FiniteAlgebra:
    """M_n(K) on the matrix units, row-major."""
    dim = n * n
    table = [[[0] * dim for _ in range(dim)] for _ in range(dim)]
    for i, j, k, l in itertools.product(range(n), repeat=4):
        if j == k:
            table[i * n + j][k * n + l][i * n + l] = 1
    one = [1 if i == j else 0 for i in range(n) for j in range(n)]
    return FiniteAlgebra(field, table, one, [f"E{i+1}{j+1}" for i in range(n) for j in range(n)])


def truncated_polynomial_algebra(field: FieldSpec, k: int) -> FiniteAlgebra:
    """K[t]/(t^k) on 1, t, ..., t^(k-1)."""
    table = [[[1 if c == i + j else 0 for c in range(k)] for j in range(k)] for i in range(k)]
    return FiniteAlgebra(field, table, [1] + [0] * (k - 1), ["1"] + [f"t^{i}" for i in range(1, k)])


def product_algebra(*algs: FiniteAlgebra) -> FiniteAlgebra:
    F = algs[0].field
    dim = sum(a.dim for a in algs)
    table = [[[0] * dim for _ in range(dim)] for _ in range(dim)]
    one = []
    off = 0
    for a in algs:
        for i in range(a.dim):
            for j in range(a.dim):
                for k, c in enumerate(a.table[i][j]):
                    table[off + i][off + j][off + k] = c
        one.extend(a.one)
        off += a.dim
    return FiniteAlgebra(F, table, one)


# ---------------------------------------------------------------------------
# fibers of presented algebras
# ---------------------------------------------------------------------------


@dataclass
class Fiber:
    """R/mR with lifts of its basis vectors to R."""

    source: PresentedAlgebra
    point: tuple
    alg: FiniteAlgebra
    lifts: list
    _project: object = None

    def project(self, a: AlgElement) -> list:
        return self._project(a)

    @property
    def dim(self) -> int:
        return self.alg.dim


def _eval_coeffs(A: PresentedAlgebra, a: AlgElement, pt) -> list:
    v = [0] * A.size
    for k, c in a.coeffs.items():
        v[k] = c.evaluate(pt)
    return v


def _table_algebra(A: PresentedAlgebra, pt) -> FiniteAlgebra:
    n = A.size
    table = []
    for i in range(n):
        row = []
        for j in range(n):
            v = [0] * n
            for k, c in A.table[(i, j)].items():
                v[k] = c.evaluate(pt)
            row.append(v)
        table.append(row)
    return FiniteAlgebra(A.field, table, _eval_coeffs(A, A.one(), pt), A.labels)


def _syzygy_fiber(A: PresentedAlgebra, pt) -> Fiber:
    """K^L modulo the syzygies evaluated at the point."""
    full = _table_algebra(A, pt)
    vecs = []
    for s in A.syzygies:
        v = [0] * A.size
        for k, c in s.items():
            v[k] = c.evaluate(pt)
        vecs.append(v)
    S = full.span(vecs)
    if not full.is_ideal(S):
        raise FiberError("evaluated syzygies do not span an ideal")
    quo = full.quotient(S)
    comp = S.complement_indices()
    lifts = [A.basis_element(i) for i in comp]
    return Fiber(A, pt, quo, lifts, lambda a: S.quotient_coords(_eval_coeffs(A, a, pt)))


def _pbw_fiber(A: PresentedAlgebra, pt) -> Fiber:
    """Quantum affine space: specialize the PBW span over K[a,b,c], then divide by (X2X3 - delta)."""
    F = A.field
    qa = A.pbw
    residues = A.pbw_residues
    index = {w: i for i, w in enumerate(residues)}
    alpha, beta, gamma, delta = pt
    base_vals = (alpha, beta, gamma)
    table = []
    for u in residues:
        row = []
        for v in residues:
            s, e = qa.mono_mul(u, v)
            vec = [0] * len(residues)
            coef = s
            for val, k in zip(base_vals, e):
                coef = F.mul(coef, F.pow(val, k // 2)) if k >= 2 else coef
            vec[index[tuple(k % 2 for k in e)]] = coef
            row.append(vec)
        table.append(row)
    one = [1] + [0] * (len(residues) - 1)
    big = FiniteAlgebra(F, table, one, ["X1^%d*X2^%d*X3^%d" % w for w in residues])
    gen = [0] * len(residues)
    gen[index[(0, 1, 1)]] = 1
    gen[index[(0, 0, 0)]] = F.neg(delta)
    ideal = big.ideal_closure([gen])
    quo = big.quotient(ideal)
    comp = ideal.complement_indices()

    lab_exp = A.pbw_labels
    C = A.center

    def lift(w):
        if w[1] and w[2]:
            base = (w[0], 0, 0)
            return A.basis_element(lab_exp.index(base)) * C.var("d")
        return A.basis_element(lab_exp.index(w))

    def project(a: AlgElement):
        v = [0] * len(residues)
        for k, c in a.coeffs.items():
            v[index[lab_exp[k]]] = F.add(v[index[lab_exp[k]]], c.evaluate(pt))
        return ideal.quotient_coords(v)

    return Fiber(A, pt, quo, [lift(residues[i]) for i in comp], project)


def specialize(A: PresentedAlgebra, point, route: str = "auto", max_dim_guard: bool = True) -> Fiber:
    """The fiber R/mR at a central point.

    ``route`` is ``auto``, ``table`` (free presentations), ``syzygy`` or ``pbw``.
    """
    pt = A.center.check_point(point)
    if route == "auto":
        route = "pbw" if getattr(A, "pbw", None) is not None else ("table" if A.is_free else "syzygy")
    if route == "table":
        if not A.is_free:
            raise FiberError("table route needs a free presentation")
        fib = Fiber(A, pt, _table_algebra(A, pt), A.basis(), lambda a: _eval_coeffs(A, a, pt))
    elif route == "syzygy":
        fib = _syzygy_fiber(A, pt)
    elif route == "pbw":
        if getattr(A, "pbw", None) is None:
            raise FiberError("no PBW backend for this algebra")
        fib = _pbw_fiber(A, pt)
    else:
        raise ValueError(f"unknown fiber route {route!r}")
    if max_dim_guard:
        _dim_guard(A.field, fib.dim)
    return fib


def _dim_guard(F: FieldSpec, dim: int) -> None:
    if F.p and F.p <= dim:
        raise CharacteristicError(f"fiber analysis needs p > fiber dimension {dim}, got p = {F.p}")


# ---------------------------------------------------------------------------
# radical and blocks
# ---------------------------------------------------------------------------


def radical(F: FiniteAlgebra) -> Subspace:
    """Jacobson radical as the kernel of the regular trace form.

    Exact when char = 0 or char > dim.  For smaller characteristic the kernel
    is returned only if it is certified to be a nilpotent ideal (it always
    contains the radical); otherwise a CharacteristicError is raised.
    """
    K = F.span(nullspace(F.field, F.trace_form(), F.dim)) if F.dim else F.span([])
    if F.field.p and F.field.p <= F.dim:
        if not (F.is_ideal(K) and F.is_nilpotent_subspace(K)):
            raise CharacteristicError(
                f"trace-form kernel is not the radical in characteristic {F.field.p} <= dim {F.dim}"
            )
    return K


def _projective_points(F: FieldSpec, dim: int):
    """One representative per line of F_p^dim (first nonzero coordinate 1)."""
    p = F.p
    for lead in range(dim):
        for tail in itertools.product(range(p), repeat=dim - lead - 1):
            yield [0] * lead + [1] + list(tail)


def radical_oracle(F: FiniteAlgebra) -> Subspace:
    """Largest nilpotent ideal by brute force (small prime fields only).

    Grows J by ideals (a) whose square is zero modulo J, found by enumerating
    every line of F/J; stops when no such a exists, i.e. F/J is semisimple.
    """
    if not F.field.p:
        raise ValueError("oracle needs a finite field")
    J = F.span([])
    while True:
        Q = F.quotient(J)
        found = None
        basis = [Q.basis_vector(i) for i in range(Q.dim)]
        for a in _projective_points(Q.field, Q.dim):
            if all(not any(Q.mul(Q.mul(a, x), a)) for x in basis):
                found = a
                break
        if found is None:
            return J
        comp = J.complement_indices()
        lift = [0] * F.dim
        for c, v in zip(comp, found):
            lift[c] = v
        J = F.ideal_closure(list(J.rows) + [lift])


@dataclass
class BlockData:
    blocks: list  # (block_dim, e_i, n_i)
    idempotents: list

    @property
    def irreducibles(self) -> list:
        out = []
        for _, e, n in self.blocks:
            out.extend([n] * e)
        return sorted(out)

    @property
    def dim(self) -> int:
        return sum(b[0] for b in self.blocks)


def _min_poly(S: FiniteAlgebra, z: list, e: list) -> list:
    """Monic minimal polynomial of z in the unital subalgebra with identity e (low degree first)."""
    F = S.field
    powers = [e]
    while True:
        nxt = S.mul(powers[-1], z)
        cand = powers + [nxt]
        if scalar_rank(F, cand) < len(cand):
            # solve nxt = sum c_k powers_k
            ns = nullspace(F, [[cand[k][i] for k in range(len(cand))] for i in range(S.dim)], len(cand))
            vec = ns[0]
            lead = vec[-1]
            inv = F.inv(lead)
            return [F.norm(c * inv) for c in vec]
        powers.append(nxt)


def _sympy_poly(F: FieldSpec, coeffs_low_first: list, x):
    if F.p:
        return sympy.Poly([int(c) for c in reversed(coeffs_low_first)], x, modulus=F.p)
    return sympy.Poly([sympy.Rational(c.numerator, c.denominator) if isinstance(c, Fraction) else int(c)
                       for c in reversed(coeffs_low_first)], x, domain="QQ")


def _to_scalar(F: FieldSpec, c) -> object:
    c = sympy.Rational(c)
    return F(Fraction(int(c.p), int(c.q)))


def _eval_poly_at(S: FiniteAlgebra, poly, z: list, e: list) -> list:
    F = S.field
    coeffs = [_to_scalar(F, c) for c in poly.all_coeffs()]
    acc = [0] * S.dim
    for c in coeffs:
        acc = S.mul(acc, z)
        acc = [F.norm(a + c * b) for a, b in zip(acc, e)]
    return acc


def block_decompose(S: FiniteAlgebra, seed: int = 0, max_tries: int = 200) -> BlockData:
    """Wedderburn blocks of a semisimple algebra via primitive central idempotents."""
    F = S.field
    rng = random.Random(seed)
    Zb = S.center()
    x = sympy.Symbol("x")
    work = [S.one]
    done = []
    tries = 0
    while work:
        e = work.pop()
        Ze = S.span([S.mul(z, e) for z in Zb])
        k = Ze.dim
        if k == 1:
            done.append(e)
            continue
        tries += 1
        if tries > max_tries:
            raise FiberError("central idempotent splitting did not converge")
        z = [0] * S.dim
        for row in Ze.rows:
            c = F.random(rng, 20)
            z = [F.norm(a + c * b) for a, b in zip(z, row)]
        mp = _min_poly(S, z, e)
        poly = _sympy_poly(F, mp, x)
        _, factors = poly.factor_list()
        if any(mult > 1 for _, mult in factors):
            raise FiberError("algebra is not semisimple (central nilpotent found)")
        if len(factors) == 1:
            if poly.degree() == k:
                done.append(e)  # the center of this block is a field generated by z
            else:
                work.append(e)
            continue
        for f, _ in factors:
            h = sympy.Poly(poly.as_expr(), x, domain=poly.domain).quo(f)
            g = sympy.invert(h, f)
            ei = _eval_poly_at(S, g * h, z, e)
            ei = S.mul(ei, e)
            work.append(ei)
    blocks = []
    for e in done:
        bdim = S.span([S.mul(S.basis_vector(j), e) for j in range(S.dim)]).dim
        edim = S.span([S.mul(z, e) for z in Zb]).dim
        if bdim % edim:
            raise FiberError("block dimension not divisible by its center dimension")
        n = math.isqrt(bdim // edim)
        if n * n * edim != bdim:
            raise FiberError(f"block of dimension {bdim} over a degree-{edim} center is not a matrix algebra")
        blocks.append((bdim, edim, n))
    order = sorted(range(len(done)), key=lambda i: (blocks[i], done[i]))
    return BlockData([blocks[i] for i in order], [done[i] for i in order])


# ---------------------------------------------------------------------------
# trace decomposition and reports
# ---------------------------------------------------------------------------


def trace_functional(fib: Fiber, t: TraceMap) -> list:
    """tr evaluated at the point on the fiber basis (through the lifts)."""
    return [t(y).evaluate(fib.point) for y in fib.lifts]


@dataclass
class TraceDecomposition:
    coefficients: list  # s_i per block, in K
    k: list | None  # integer lifts per irreducible, or None
    representation_theoretic: bool
    consistent: bool

    def to_json(self) -> dict:
        return {
            "coefficients": [str(c) for c in self.coefficients],
            "k": self.k,
            "representation_theoretic": self.representation_theoretic,
            "consistent": self.consistent,
        }


def decompose_trace(S: FiniteAlgebra, phi: list, blocks: BlockData, n: int | None = None) -> TraceDecomposition:
    """Write the functional phi on S as sum_i s_i * (sum of irreducible traces of block i).

    s_i is read off the block identity c_i, then the identity is checked on every
    basis vector.  With n given, the s_i must lift to integers k_i >= 1 with
    sum e_i k_i n_i = n.
    """
    F = S.field
    coeffs = []
    for (bdim, e, ni), c in zip(blocks.blocks, blocks.idempotents):
        val = F.norm(sum(a * b for a, b in zip(phi, c)))
        coeffs.append(F.div(val, F(e * ni)))
    consistent = True
    for j in range(S.dim):
        b = S.basis_vector(j)
        rhs = 0
        for s, (bdim, e, ni), c in zip(coeffs, blocks.blocks, blocks.idempotents):
            if s:
                rhs += s * F.div(S.reg_trace(S.mul(b, c)), F(ni))
        if F.norm(rhs) != phi[j]:
            consistent = False
            break
    k = None
    rep = False
    if consistent and n is not None:
        lifts = [F.lift_int(s) for s in coeffs]
        if all(v is not None and 1 <= v for v in lifts):
            total = sum(e * v * ni for v, (_, e, ni) in zip(lifts, blocks.blocks))
            if total == n:
                rep = True
                k = []
                for v, (_, e, ni) in zip(lifts, blocks.blocks):
                    k.extend([v] * e)
    return TraceDecomposition(coeffs, k, rep, consistent)


def descent_check(A: PresentedAlgebra, t: TraceMap, point, samples: int = 100, seed: int = 0,
                  fiber: Fiber | None = None) -> bool:
    """tr(a)(m) = 0 for random lifts a of radical elements (plus random elements of mR)."""
    fib = fiber or specialize(A, point)
    J = radical(fib.alg)
    if J.dim == 0:
        return True
    rng = random.Random(seed)
    C = A.center
    F = A.field
    vanish = [C.var(i) - C.const(v) for i, v in enumerate(fib.point)]
    for _ in range(samples):
        coeffs = [F.random(rng, 9) for _ in J.rows]
        v = [0] * fib.dim
        for c, row in zip(coeffs, J.rows):
            v = [F.norm(a + c * b) for a, b in zip(v, row)]
        a = A.zero()
        for coef, y in zip(v, fib.lifts):
            if coef:
                a = a + y * coef
        for g in vanish:
            a = a + A.random_element(rng) * g
        if t(a).evaluate(fib.point) != 0:
            return False
    return True


@dataclass
class FiberReport:
    point: dict
    dim: int
    radical_dim: int
    ss_dim: int
    blocks: list
    irreducibles: list
    gram_ranks: dict
    azumaya: bool
    k_m: list | None
    bounds: dict
    pi_degree: int = 0

    def to_json(self) -> dict:
        def scal(v):
            return v if isinstance(v, int) else str(v)

        return {
            "point": {k: scal(v) for k, v in self.point.items()},
            "dim": self.dim,
            "radical_dim": self.radical_dim,
            "ss_dim": self.ss_dim,
            "blocks": [list(b) for b in self.blocks],
            "irreducibles": list(self.irreducibles),
            "gram_ranks": dict(self.gram_ranks),
            "azumaya": self.azumaya,
            "k_m": self.k_m,
            "bounds": dict(self.bounds),
        }


def analyze_point(A: PresentedAlgebra, traces: Sequence[TraceMap], point, n: int | None = None,
                  seed: int = 0, reduced: TraceMap | None = None) -> FiberReport:
    """Fiber dimension, radical, blocks, Gram ranks, Azumaya verdict and k_m at a point."""
    if n is None:
        n = A.pi_degree_hint or pi_degree(A)
    # no blanket p > dim guard: radical() certifies its answer in small characteristic
    fib = specialize(A, point, max_dim_guard=False)
    J = radical(fib.alg)
    S = fib.alg.quotient(J)
    blocks = block_decompose(S, seed=seed)
    ss = S.dim
    if blocks.dim != ss:
        raise FiberError("block dimensions do not add up to the semisimple quotient")
    gram_ranks = {t.tag: point_gram_rank(A, t, fib.point) for t in traces}
    azumaya = ss == n * n
    irr = blocks.irreducibles
    msum = sum(irr)
    bounds = {
        "pence_ok": azumaya or ss <= n * n - max(msum, 2),
        "sum_ok": azumaya or n >= msum,
    }
    red = reduced
    if red is None:
        red = next((t for t in traces if t.kind == "reduced"), None)
    k_m = None
    if red is not None:
        phi = trace_functional(fib, red)
        comp = J.complement_indices()
        dec = decompose_trace(S, [phi[i] for i in comp], blocks, n)
        k_m = dec.k
    names = A.center.names
    return FiberReport(
        point=dict(zip(names, fib.point)),
        dim=fib.dim,
        radical_dim=J.dim,
        ss_dim=ss,
        blocks=blocks.blocks,
        irreducibles=irr,
        gram_ranks=gram_ranks,
        azumaya=azumaya,
        k_m=k_m,
        bounds=bounds,
        pi_degree=n,
    )
