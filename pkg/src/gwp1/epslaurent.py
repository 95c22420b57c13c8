"""Coefficient ring: Laurent polynomials in eps with exact rational coefficients.

Every coefficient appearing in the expansions handled by this package lies in
Q[eps, 1/eps]; divisions that occur during the triangular solves are always by
monomials (or at worst by exactly-dividing Laurent polynomials), so no
rational-function field is needed.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator, Mapping, Union

Scalar = Union[int, Fraction]


def _as_fraction(x: Scalar) -> Fraction:
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


class EpsLaurent:
    """Laurent polynomial in eps: finite map {exponent: Fraction}, no zeros stored."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Mapping[int, Scalar] | None = None):
        c: dict[int, Fraction] = {}
        if coeffs:
            for e, v in coeffs.items():
                f = _as_fraction(v)
                if f:
                    c[int(e)] = f
        self.c = c

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero() -> "EpsLaurent":
        return EpsLaurent()

    @staticmethod
    def one() -> "EpsLaurent":
        return EpsLaurent({0: 1})

    @staticmethod
    def mono(exp: int, coeff: Scalar = 1) -> "EpsLaurent":
        return EpsLaurent({exp: coeff})

    @staticmethod
    def const(x: Scalar) -> "EpsLaurent":
        return EpsLaurent({0: x})

    @staticmethod
    def coerce(x: "EpsLaurent | Scalar") -> "EpsLaurent":
        if isinstance(x, EpsLaurent):
            return x
        return EpsLaurent.const(x)

    # -- ring structure -----------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.c)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = EpsLaurent.const(other)
        if not isinstance(other, EpsLaurent):
            return NotImplemented
        return self.c == other.c

    def __hash__(self) -> int:
        return hash(frozenset(self.c.items()))

    def __add__(self, other: "EpsLaurent | Scalar") -> "EpsLaurent":
        other = EpsLaurent.coerce(other)
        out = dict(self.c)
        for e, v in other.c.items():
            s = out.get(e, Fraction(0)) + v
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        r = EpsLaurent()
        r.c = out
        return r

    __radd__ = __add__

    def __neg__(self) -> "EpsLaurent":
        r = EpsLaurent()
        r.c = {e: -v for e, v in self.c.items()}
        return r

    def __sub__(self, other: "EpsLaurent | Scalar") -> "EpsLaurent":
        return self + (-EpsLaurent.coerce(other))

    def __rsub__(self, other: Scalar) -> "EpsLaurent":
        return EpsLaurent.coerce(other) - self

    def __mul__(self, other: "EpsLaurent | Scalar") -> "EpsLaurent":
        if isinstance(other, (int, Fraction)):
            f = _as_fraction(other)
            if not f:
                return EpsLaurent.zero()
            r = EpsLaurent()
            r.c = {e: v * f for e, v in self.c.items()}
            return r
        out: dict[int, Fraction] = {}
        for e1, v1 in self.c.items():
            for e2, v2 in other.c.items():
                e = e1 + e2
                s = out.get(e, Fraction(0)) + v1 * v2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        r = EpsLaurent()
        r.c = out
        return r

    __rmul__ = __mul__

    def div_exact(self, other: "EpsLaurent") -> "EpsLaurent":
        """Exact division in Q[eps, 1/eps]; raises if the quotient is not Laurent."""
        if not other:
            raise ZeroDivisionError("division by zero EpsLaurent")
        if not self:
            return EpsLaurent.zero()
        if len(other.c) == 1:
            (e, v), = other.c.items()
            r = EpsLaurent()
            r.c = {e1 - e: v1 / v for e1, v1 in self.c.items()}
            return r
        # general case: long division from the top exponent; an exact Laurent
        # quotient cannot reach below min(self) - min(other)
        num = dict(self.c)
        de = max(other.c)
        dv = other.c[de]
        qe_floor = min(self.c) - min(other.c)
        quot: dict[int, Fraction] = {}
        while num:
            ne = max(num)
            qe = ne - de
            if qe < qe_floor:
                raise ValueError("inexact EpsLaurent division")
            qv = num[ne] / dv
            quot[qe] = qv
            for e2, v2 in other.c.items():
                e = qe + e2
                s = num.get(e, Fraction(0)) - qv * v2
                if s:
                    num[e] = s
                else:
                    num.pop(e, None)
            if num and max(num) >= ne:
                raise ValueError("inexact EpsLaurent division")
        return EpsLaurent(quot)

    def __pow__(self, n: int) -> "EpsLaurent":
        if n < 0:
            raise ValueError("negative powers not supported; use div_exact")
        r = EpsLaurent.one()
        for _ in range(n):
            r = r * self
        return r

    # -- inspection ---------------------------------------------------------

    def min_exp(self) -> int:
        return min(self.c)

    def max_exp(self) -> int:
        return max(self.c)

    def exponents(self) -> Iterator[int]:
        return iter(sorted(self.c))

    def __getitem__(self, e: int) -> Fraction:
        return self.c.get(e, Fraction(0))

    def __repr__(self) -> str:
        if not self.c:
            return "0"
        parts = []
        for e in sorted(self.c):
            v = self.c[e]
            if e == 0:
                parts.append(f"{v}")
            elif e == 1:
                parts.append(f"{v}*eps")
            else:
                parts.append(f"{v}*eps^{e}")
        return " + ".join(parts)

    # -- numeric bridge -----------------------------------------------------

    def eval(self, eps):
        """Horner evaluation at a numeric eps (mpf, float, Fraction)."""
        if not self.c:
            return 0 * eps
        exps = sorted(self.c, reverse=True)
        lo = exps[-1]
        if lo < 0 and eps == 0:
            raise ZeroDivisionError("negative eps-powers present, eps must be nonzero")
        # Horner in eps on the polynomial self * eps^(-lo), then scale back
        acc = 0 * eps
        prev = None
        for e in exps:
            if prev is not None:
                acc = acc * eps ** (prev - e)
            acc = acc + self.c[e]
            prev = e
        return acc * eps ** lo

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict[str, str]:
        return {str(e): str(self.c[e]) for e in sorted(self.c)}

    @staticmethod
    def from_json(d: Mapping[str, str]) -> "EpsLaurent":
        return EpsLaurent({int(e): Fraction(v) for e, v in d.items()})


ZERO = EpsLaurent.zero()
ONE = EpsLaurent.one()
EPS = EpsLaurent.mono(1)
EPS_INV = EpsLaurent.mono(-1)
