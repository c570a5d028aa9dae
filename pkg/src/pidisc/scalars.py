"""Exact scalars: the rationals and prime fields F_p.

Scalars are plain Python values (``int`` residues for F_p, ``int`` or
``Fraction`` for Q) and all arithmetic goes through a :class:`FieldSpec`,
which keeps them canonical.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from sympy import isprime
from sympy.ntheory import n_order
from sympy.ntheory import primitive_root as _sympy_primitive_root

Scalar = Union[int, Fraction]


class FieldError(ValueError):
    """Invalid field data (non-prime modulus, missing root of unity, ...)."""


class CharacteristicError(ValueError):
    """A computation needs a larger (or different) characteristic."""


@dataclass(frozen=True)
class FieldSpec:
    """Q (``p == 0``) or F_p with p an odd prime."""

    p: int = 0

    def __post_init__(self):
        if self.p != 0:
            if self.p < 3 or not isprime(self.p):
                raise FieldError(f"modulus {self.p} is not an odd prime")

    @classmethod
    def rational(cls) -> "FieldSpec":
        return cls(0)

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls(p)

    @property
    def mode(self) -> str:
        return "rational" if self.p == 0 else "prime"

    @property
    def char(self) -> int:
        return self.p

    def __str__(self):
        return "QQ" if self.p == 0 else f"GF({self.p})"

    # -- canonical values -------------------------------------------------

    def __call__(self, value) -> Scalar:
        if self.p:
            if isinstance(value, Fraction):
                return value.numerator * pow(value.denominator, -1, self.p) % self.p
            return int(value) % self.p
        if isinstance(value, Fraction):
            return value.numerator if value.denominator == 1 else value
        if isinstance(value, int):
            return value
        return self(Fraction(value))

    def norm(self, value: Scalar) -> Scalar:
        """Canonicalize a value produced by raw ``+ - *`` on canonical values."""
        if self.p:
            return value % self.p
        if type(value) is Fraction and value.denominator == 1:
            return value.numerator
        return value

    # -- arithmetic ---------------------------------------------------------

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        return self.norm(a + b)

    def sub(self, a: Scalar, b: Scalar) -> Scalar:
        return self.norm(a - b)

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        return self.norm(a * b)

    def neg(self, a: Scalar) -> Scalar:
        return self.norm(-a)

    def inv(self, a: Scalar) -> Scalar:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.p:
            return pow(a, -1, self.p)
        return self.norm(Fraction(1) / a)

    def div(self, a: Scalar, b: Scalar) -> Scalar:
        return self.mul(a, self.inv(b))

    def pow(self, a: Scalar, e: int) -> Scalar:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if self.p:
            return pow(a, e, self.p)
        return self.norm(Fraction(a) ** e)

    def random(self, rng, bound: int = 50) -> Scalar:
        """Uniform residue for F_p, a small integer for Q."""
        if self.p:
            return rng.randrange(self.p)
        return rng.randint(-bound, bound)

    def elements(self):
        if not self.p:
            raise FieldError("cannot enumerate QQ")
        return range(self.p)

    def lift_int(self, a: Scalar) -> int | None:
        """Integer representative: residue in [0, p) or the integer itself (None if not integral)."""
        if self.p:
            return int(a)
        if isinstance(a, Fraction):
            return None
        return int(a)

    def order(self, a: Scalar) -> int:
        """Multiplicative order of a nonzero element (only ``±1`` over Q)."""
        if a == 0:
            raise FieldError("zero has no multiplicative order")
        if self.p:
            return mult_order(a, self.p)
        if a == 1:
            return 1
        if a == -1:
            return 2
        raise FieldError(f"{a} is not a root of unity in QQ")

    def root_of_unity(self, d: int) -> Scalar:
        if self.p:
            return root_of_unity(self.p, d)
        if d == 1:
            return 1
        if d == 2:
            return -1
        raise FieldError(f"QQ has no primitive root of unity of order {d}")


def _require_prime(p: int) -> None:
    if p < 2 or not isprime(p):
        raise FieldError(f"{p} is not prime")


def primitive_root(p: int) -> int:
    """Smallest generator of the multiplicative group of F_p."""
    _require_prime(p)
    return int(_sympy_primitive_root(p))


def root_of_unity(p: int, d: int) -> int:
    """Canonical element of order ``d`` in F_p: ``g ** ((p - 1) // d)``."""
    _require_prime(p)
    if d < 1 or (p - 1) % d:
        raise FieldError(f"F_{p} has no primitive root of unity of order {d}")
    return pow(primitive_root(p), (p - 1) // d, p)


def mult_order(a: int, p: int) -> int:
    """Smallest m >= 1 with a^m = 1 in F_p."""
    _require_prime(p)
    if a % p == 0:
        raise FieldError("zero has no multiplicative order")
    return int(n_order(a % p, p))
