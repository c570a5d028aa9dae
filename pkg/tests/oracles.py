"""Independent reference computations used to freeze expected values.

None of these share code with the package: they work on words, sympy
matrices or explicit monomial sign rules.
"""

from __future__ import annotations

import sympy


class WordWeyl:
    """Rank-one quantized Weyl algebra by naive leftmost word rewriting.

    Rules: yx -> e^-1 xy - e^-1, x^d -> X, y^d -> Y.  Coefficients live in
    Z/p (p > 0) or Q, central parts are kept as exponent pairs (i, j) of X^i Y^j.
    """

    def __init__(self, p: int, d: int, eps):
        self.p, self.d = p, d
        self.eps_inv = pow(eps, -1, p) if p else sympy.Rational(1, eps)

    def _norm(self, c):
        return c % self.p if self.p else c

    def reduce(self, elem: dict) -> dict:
        out: dict = {}
        todo = list(elem.items())
        while todo:
            (w, i, j), c = todo.pop()
            c = self._norm(c)
            if not c:
                continue
            k = w.find("yx")
            if k >= 0:
                todo.append(((w[:k] + "xy" + w[k + 2:], i, j), c * self.eps_inv))
                todo.append(((w[:k] + w[k + 2:], i, j), -c * self.eps_inv))
                continue
            if "x" * self.d in w:
                k = w.find("x" * self.d)
                todo.append(((w[:k] + w[k + self.d:], i + 1, j), c))
                continue
            if "y" * self.d in w:
                k = w.find("y" * self.d)
                todo.append(((w[:k] + w[k + self.d:], i, j + 1), c))
                continue
            key = (w, i, j)
            out[key] = self._norm(out.get(key, 0) + c)
            if not out[key]:
                del out[key]
        return out

    def basis(self) -> list[str]:
        return ["x" * a + "y" * b for a in range(self.d) for b in range(self.d)]

    def mul(self, u: dict, v: dict) -> dict:
        prod: dict = {}
        for (w1, i1, j1), c1 in u.items():
            for (w2, i2, j2), c2 in v.items():
                key = (w1 + w2, i1 + i2, j1 + j2)
                prod[key] = prod.get(key, 0) + c1 * c2
        return self.reduce(prod)

    def word(self, w: str) -> dict:
        return self.reduce({(w, 0, 0): 1})

    def regular_trace(self, a: dict) -> dict:
        """Trace of left multiplication by a, as {(i, j): coeff}."""
        tr: dict = {}
        for b in self.basis():
            for (w, i, j), c in self.mul(a, self.word(b)).items():
                if w == b:
                    tr[(i, j)] = self._norm(tr.get((i, j), 0) + c)
        return {k: v for k, v in tr.items() if v}


# -- quantum affine space with p12 = p13 = -1, p23 = 1 -------------------

QA_LABELS = {
    "1": (0, 0, 0), "X1": (1, 0, 0), "X2": (0, 1, 0), "X3": (0, 0, 1),
    "X1X2": (1, 1, 0), "X1X3": (1, 0, 1),
}


def qa_product(alpha, beta):
    """Sign and exponent of X^alpha X^beta in the order X1 X2 X3."""
    sign = (-1) ** (alpha[1] * beta[0] + alpha[2] * beta[0])
    return sign, tuple(a + b for a, b in zip(alpha, beta))


def qa_central(exp):
    """Central monomial as exponents of (a, b, c, d) with a=X1^2, b=X2^2, c=X3^2, d=X2X3, or None."""
    e1, e2, e3 = exp
    if e1 % 2 or (e2 + e3) % 2:
        return None
    if e2 % 2:
        return (e1 // 2, (e2 - 1) // 2, (e3 - 1) // 2, 1)
    return (e1 // 2, e2 // 2, e3 // 2, 0)


def qa_standard_trace(exp):
    """tr_st of X^exp: 4 times the monomial when central, 0 otherwise."""
    c = qa_central(exp)
    return None if c is None else (4, c)


# -- matrix order in M_2(Q[x, y]) ------------------------------------------

def matrix_order_elements():
    x, y = sympy.symbols("x y")
    E = lambda i, j: sympy.Matrix(2, 2, lambda r, s: 1 if (r, s) == (i, j) else 0)  # noqa: E731
    return (x, y), {
        "e11": E(0, 0), "e21": E(1, 0), "e22": E(1, 1), "xe12": x * E(0, 1), "ye12": y * E(0, 1),
    }
