"""Cocycle-twisted products of quantized Weyl algebras at roots of unity.

Elements are written in the normal monomials x1^a1 y1^b1 ... xN^aN yN^bN of
the untwisted algebra.  A product is computed by right-multiplying by one
generator at a time (memoized); the only non-monomial step is
``y_k x_k = eps_k^-1 (x_k y_k - w_k)`` with
``w_k = 1 + sum_{j<k, same block} (eps_j - 1) y_j x_j``.  Each recursion
either lowers b_k or moves to a smaller index, so it terminates.  The twist
multiplies a product of homogeneous monomials by chi(deg u, deg v).

Basis exponents run over 0..d_i - 1; x_i^d_i = X_i and y_i^d_i = Y_i are the
central variables.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .pialg import AlgElement, PresentationError, PresentedAlgebra
from .polyring import MultiPoly, PolyRing
from .scalars import CharacteristicError, FieldError, FieldSpec


class WeylParamError(ValueError):
    pass


class BuilderBug(RuntimeError):
    """A structural identity that must hold failed: the construction is wrong."""


@dataclass
class WeylParams:
    field: FieldSpec
    lam: tuple
    epsilon: tuple
    chi: list = None

    def __post_init__(self):
        F = self.field
        self.lam = tuple(int(v) for v in self.lam)
        if not self.lam or any(v <= 0 for v in self.lam):
            raise WeylParamError("lambda must be a list of positive integers")
        if list(self.lam) != sorted(self.lam, reverse=True):
            raise WeylParamError("lambda must be non-increasing")
        N = sum(self.lam)
        self.epsilon = tuple(F(e) for e in self.epsilon)
        if len(self.epsilon) != N:
            raise WeylParamError(f"need {N} epsilon values, got {len(self.epsilon)}")
        for e in self.epsilon:
            if e == 0 or e == 1:
                raise WeylParamError("every epsilon must be a root of unity different from 1")
            F.order(e)
        if self.chi is None:
            self.chi = [[1] * N for _ in range(N)]
        self.chi = [[F(v) for v in row] for row in self.chi]
        if len(self.chi) != N or any(len(r) != N for r in self.chi):
            raise WeylParamError("chi must be an N x N matrix")
        for i in range(N):
            if self.chi[i][i] != 1:
                raise WeylParamError("chi(e_i, e_i) must be 1")
            for j in range(N):
                if self.chi[i][j] == 0 or F.mul(self.chi[i][j], self.chi[j][i]) != 1:
                    raise WeylParamError("chi must be antisymmetric: chi(f,g) chi(g,f) = 1")

    @property
    def N(self) -> int:
        return sum(self.lam)

    @property
    def block(self) -> list:
        """Block index of each generator index (0-based)."""
        out = []
        for b, size in enumerate(self.lam):
            out.extend([b] * size)
        return out

    @property
    def block_start(self) -> list:
        """n' of each index (0-based): first index of its block."""
        out, start = [], 0
        for size in self.lam:
            out.extend([start] * size)
            start += size
        return out

    def precedes_eq(self, i: int, l: int) -> bool:
        """i <= l inside one block (0-based)."""
        return self.block[i] == self.block[l] and i <= l

    @property
    def orders(self) -> list:
        return [self.field.order(e) for e in self.epsilon]


def check_center_condition(params: WeylParams) -> bool:
    """ord(eps_i) and ord(chi(e_i, e_j)) divide ord(eps_l) for all i <= l in a block and all j."""
    F = params.field
    d = params.orders
    N = params.N
    chi_ord = [[F.order(params.chi[i][j]) for j in range(N)] for i in range(N)]
    for i in range(N):
        for l in range(N):
            if not params.precedes_eq(i, l):
                continue
            if d[l] % d[i]:
                return False
            if any(d[l] % chi_ord[i][j] for j in range(N)):
                return False
    return True


class _Rewriter:
    """Untwisted products of normal monomials, memoized."""

    def __init__(self, params: WeylParams):
        self.p = params
        self.F = params.field
        self.N = params.N
        self.block = params.block
        self.eps = params.epsilon
        self.eps_inv = tuple(self.F.inv(e) for e in self.eps)
        self._gen_cache: dict = {}
        self._mono_cache: dict = {}

    def _later_x(self, mono: tuple, k: int) -> int:
        return sum(mono[2 * l] for l in range(k + 1, self.N) if self.block[l] == self.block[k])

    def rmul_gen(self, mono: tuple, kind: str, k: int) -> dict:
        key = (mono, kind, k)
        hit = self._gen_cache.get(key)
        if hit is not None:
            return hit
        F = self.F
        hi = self._later_x(mono, k)
        if kind == "y":
            m = list(mono)
            m[2 * k + 1] += 1
            out = {tuple(m): F.pow(self.eps[k], hi)}
        else:
            factor = F.pow(self.eps_inv[k], hi)
            b = mono[2 * k + 1]
            if b == 0:
                m = list(mono)
                m[2 * k] += 1
                out = {tuple(m): factor}
            else:
                head = list(mono[: 2 * k + 2]) + [0] * (2 * (self.N - k - 1))
                head[2 * k + 1] -= 1
                head = tuple(head)
                tail = mono[2 * k + 2 :]
                acc: dict = {}

                def add(d: dict, scale):
                    for m_, c_ in d.items():
                        acc[m_] = F.norm(acc.get(m_, 0) + c_ * scale)

                # head * x_k * y_k
                for m1, c1 in self.rmul_gen(head, "x", k).items():
                    add(self.rmul_gen(m1, "y", k), c1)
                # - head * w_k
                add({head: 1}, F.neg(1))
                for j in range(k):
                    if self.block[j] != self.block[k]:
                        continue
                    coef = F.neg(F.sub(self.eps[j], 1))
                    for m1, c1 in self.rmul_gen(head, "y", j).items():
                        add(self.rmul_gen(m1, "x", j), F.mul(c1, coef))
                scale = F.mul(factor, self.eps_inv[k])
                out = {}
                for m_, c_ in acc.items():
                    if c_:
                        full = m_[: 2 * k + 2] + tail
                        out[full] = F.norm(c_ * scale)
        self._gen_cache[key] = out
        return out

    def mono_mul(self, u: tuple, v: tuple) -> dict:
        key = (u, v)
        hit = self._mono_cache.get(key)
        if hit is not None:
            return hit
        F = self.F
        cur = {u: 1}
        for k in range(self.N):
            for kind, e in (("x", v[2 * k]), ("y", v[2 * k + 1])):
                for _ in range(e):
                    nxt: dict = {}
                    for m, c in cur.items():
                        for m2, c2 in self.rmul_gen(m, kind, k).items():
                            nxt[m2] = F.norm(nxt.get(m2, 0) + c * c2)
                    cur = {m: c for m, c in nxt.items() if c}
        self._mono_cache[key] = cur
        return cur


def _label(mono: tuple) -> str:
    parts = []
    for k in range(len(mono) // 2):
        for name, e in (("x", mono[2 * k]), ("y", mono[2 * k + 1])):
            if e == 1:
                parts.append(f"{name}{k+1}")
            elif e > 1:
                parts.append(f"{name}{k+1}^{e}")
    return "".join(parts) or "1"


class WeylAlgebra:
    """The twisted quantized Weyl algebra as a free module over K[X_i, Y_i]."""

    def __init__(self, params: WeylParams, verify: bool = True):
        if not check_center_condition(params):
            raise WeylParamError("center condition fails: the algebra is not free over a polynomial center")
        self.params = params
        F = params.field
        N = params.N
        self.N = N
        self.d = params.orders
        self.r = 1
        for di in self.d:
            self.r *= di
        names = []
        for k in range(N):
            names += [f"X{k+1}", f"Y{k+1}"]
        C = PolyRing(F, names)
        self.center = C
        self._rw = _Rewriter(params)
        ranges = []
        for k in range(N):
            ranges += [range(self.d[k]), range(self.d[k])]
        monos = sorted(itertools.product(*ranges), key=lambda m: (sum(m), tuple(-x for x in m)))
        self.monomials = monos
        index = {m: i for i, m in enumerate(monos)}
        self._index = index
        table = {}
        for i, u in enumerate(monos):
            for j, v in enumerate(monos):
                tw = self.twist(u, v)
                row: dict = {}
                for m, c in self._rw.mono_mul(u, v).items():
                    k, cen = self._split(m)
                    term = cen.scale(F.mul(c, tw))
                    row[k] = row[k] + term if k in row else term
                table[(i, j)] = {k: c for k, c in row.items() if not c.is_zero()}
        self.algebra = PresentedAlgebra(
            C,
            [_label(m) for m in monos],
            table,
            {index[(0,) * (2 * N)]: C.one()},
            is_free=True,
            family="weyl",
            pi_degree_hint=self.r,
        )
        self.algebra.weyl = self
        self.nprime = params.block_start
        self._z = None
        self._Z = None
        if verify:
            self.z_elements()
            self.Z_centrals()

    # -- grading and twist -----------------------------------------------

    @staticmethod
    def degree(mono: tuple) -> tuple:
        return tuple(mono[2 * k] - mono[2 * k + 1] for k in range(len(mono) // 2))

    def twist(self, u: tuple, v: tuple):
        F = self.params.field
        f, g = self.degree(u), self.degree(v)
        out = 1
        for i, fi in enumerate(f):
            if not fi:
                continue
            for l, gl in enumerate(g):
                if gl:
                    out = F.mul(out, F.pow(self.params.chi[i][l], fi * gl))
        return out

    def _split(self, mono: tuple):
        """Normal monomial -> (basis index, central monomial)."""
        red, cen = [], []
        for k in range(self.N):
            a, b = mono[2 * k], mono[2 * k + 1]
            red += [a % self.d[k], b % self.d[k]]
            cen += [a // self.d[k], b // self.d[k]]
        return self._index[tuple(red)], self.center.monomial(tuple(cen))

    # -- generators -------------------------------------------------------

    def gen(self, kind: str, k: int) -> AlgElement:
        """x_k or y_k (1-based k)."""
        m = [0] * (2 * self.N)
        m[2 * (k - 1) + (0 if kind == "x" else 1)] = 1
        return self.algebra.basis_element(self._index[tuple(m)])

    def x(self, k: int) -> AlgElement:
        return self.gen("x", k)

    def y(self, k: int) -> AlgElement:
        return self.gen("y", k)

    def monomial_element(self, mono: Sequence[int]) -> AlgElement:
        return self.algebra.basis_element(self._index[tuple(mono)])

    # -- z_i and Z_i -------------------------------------------------------

    def z_elements(self) -> list[AlgElement]:
        """z_i = 1 + sum_{j=n'}^{i} (eps_j - 1) y_j x_j, checked to be normal."""
        if self._z is not None:
            return self._z
        F = self.params.field
        A = self.algebra
        out = []
        for i in range(self.N):
            z = A.one()
            for j in range(self.nprime[i], i + 1):
                z = z + (self.y(j + 1) * self.x(j + 1)) * F.sub(self.params.epsilon[j], 1)
            comm = self.x(i + 1) * self.y(i + 1) - self.y(i + 1) * self.x(i + 1)
            if not A.equal(comm, z):
                raise BuilderBug(f"z_{i+1} differs from [x_{i+1}, y_{i+1}]")
            out.append(z)
        self._z = out
        self._check_normal(out)
        return out

    def _check_normal(self, zs) -> None:
        F = self.params.field
        A = self.algebra
        for i, z in enumerate(zs):
            for l in range(self.N):
                e = self.params.epsilon[l]
                delta = 1 if self.params.precedes_eq(l, i) else 0
                xl, yl = self.x(l + 1), self.y(l + 1)
                if not A.equal(z * xl, (xl * z) * F.pow(e, -delta)):
                    raise BuilderBug(f"z_{i+1} x_{l+1} normality fails")
                if not A.equal(z * yl, (yl * z) * F.pow(e, delta)):
                    raise BuilderBug(f"z_{i+1} y_{l+1} normality fails")

    def Z_centrals(self) -> list[MultiPoly]:
        """Z_i by the recursion, checked against z_i^d_i in the algebra."""
        if self._Z is not None:
            return self._Z
        F = self.params.field
        C = self.center
        A = self.algebra
        out = []
        for i in range(self.N):
            e = self.params.epsilon[i]
            di = self.d[i]
            Xi, Yi = C.var(f"X{i+1}"), C.var(f"Y{i+1}")
            lead = (Yi * Xi).scale(F.neg(F.pow(F.sub(1, e), di)))
            if i > self.nprime[i]:
                prev = out[i - 1] ** (di // self.d[i - 1])
            else:
                prev = C.one()
            out.append(lead + prev)
        zs = self.z_elements()
        for i, (z, Z) in enumerate(zip(zs, out)):
            if not A.equal(z ** self.d[i], A.central(Z)):
                raise BuilderBug(f"z_{i+1}^{self.d[i]} differs from Z_{i+1}")
            for k in range(self.N):
                for g in (self.x(k + 1), self.y(k + 1)):
                    if not A.equal(A.central(Z) * g, g * A.central(Z)):
                        raise BuilderBug(f"Z_{i+1} is not central")
        self._Z = out
        return out

    # -- closed-form predictions ------------------------------------------

    def predicted_discriminant(self) -> MultiPoly:
        """r * prod Z_i^(r^2 (d_i - 1) / d_i)."""
        F = self.params.field
        if F.p and self.r % F.p == 0:
            raise CharacteristicError(f"char {F.p} divides r = {self.r}")
        out = self.center.const(self.r)
        for Z, di in zip(self.Z_centrals(), self.d):
            num = self.r * self.r * (di - 1)
            if num % di:
                raise BuilderBug("non-integral discriminant exponent")
            out = out * Z ** (num // di)
        return out

    def azumaya_predicate(self, point) -> bool:
        pt = self.center.check_point(point)
        return all(Z.evaluate(pt) != 0 for Z in self.Z_centrals())


def resolve_epsilon(field: FieldSpec, entries: Sequence) -> tuple:
    """Epsilon list from {"order": d} / {"residue": v} entries or plain scalars."""
    out = []
    for item in entries:
        if isinstance(item, dict):
            if "order" in item:
                out.append(field.root_of_unity(int(item["order"])))
            elif "residue" in item:
                out.append(field(int(item["residue"])))
            else:
                raise WeylParamError(f"epsilon entry {item!r} needs 'order' or 'residue'")
        else:
            out.append(field(item))
    return tuple(out)


def build_weyl(params: WeylParams, verify: bool = True) -> WeylAlgebra:
    return WeylAlgebra(params, verify=verify)
