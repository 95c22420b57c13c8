"""Truncated Laurent series in one variable z with EpsLaurent coefficients.

A ZSeries stores coefficients for z^d with -order <= d <= top; reading a
coefficient below -order raises WindowError instead of silently returning
garbage.  Every operation recomputes the largest provably valid window.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial

from .epslaurent import EpsLaurent, ONE


class WindowError(Exception):
    """Requested a coefficient outside the valid truncation window."""


class ZSeries:
    __slots__ = ("top", "order", "c")

    def __init__(self, coeffs: dict[int, EpsLaurent], top: int, order: int):
        if order < 0:
            raise ValueError("truncation order must be >= 0")
        self.top = top
        self.order = order
        self.c = {d: v for d, v in coeffs.items() if v and -order <= d <= top}

    # -- constructors -------------------------------------------------------

    @staticmethod
    def const(x, order: int) -> "ZSeries":
        return ZSeries({0: EpsLaurent.coerce(x)}, top=0, order=order)

    @staticmethod
    def zpow(k: int, order: int, coeff=1) -> "ZSeries":
        return ZSeries({k: EpsLaurent.coerce(coeff)}, top=max(k, 0), order=order)

    @staticmethod
    def zero(order: int) -> "ZSeries":
        return ZSeries({}, top=0, order=order)

    # -- access -------------------------------------------------------------

    def coeff(self, d: int) -> EpsLaurent:
        if d < -self.order:
            raise WindowError(
                f"coefficient of z^{d} outside valid window [-{self.order}, {self.top}]"
            )
        return self.c.get(d, EpsLaurent.zero())

    def residue_at_infinity(self) -> EpsLaurent:
        """Formal residue at infinity: minus the z^(-1) coefficient."""
        return -self.coeff(-1)

    def is_zero(self) -> bool:
        return not self.c

    def eq_on_window(self, other: "ZSeries") -> bool:
        order = min(self.order, other.order)
        top = max(self.top, other.top)
        for d in range(-order, top + 1):
            if self.c.get(d, EpsLaurent.zero()) != other.c.get(d, EpsLaurent.zero()):
                return False
        return True

    def __repr__(self) -> str:
        parts = [f"({self.c[d]})*z^{d}" for d in sorted(self.c, reverse=True)]
        body = " + ".join(parts) if parts else "0"
        return f"ZSeries[{body} ; window [-{self.order},{self.top}]]"

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: "ZSeries") -> "ZSeries":
        order = min(self.order, other.order)
        out = dict(self.c)
        for d, v in other.c.items():
            s = out.get(d, EpsLaurent.zero()) + v
            if s:
                out[d] = s
            else:
                out.pop(d, None)
        return ZSeries(out, top=max(self.top, other.top), order=order)

    def __neg__(self) -> "ZSeries":
        return ZSeries({d: -v for d, v in self.c.items()}, self.top, self.order)

    def __sub__(self, other: "ZSeries") -> "ZSeries":
        return self + (-other)

    def __mul__(self, other: "ZSeries") -> "ZSeries":
        # valid window of the product: coefficient at d needs all splits
        # j + (d - j) with j within self's window and d - j within other's
        order = min(self.order - other.top, other.order - self.top)
        if order < 0:
            raise WindowError("product has an empty valid window; raise the truncation")
        top = self.top + other.top
        out: dict[int, EpsLaurent] = {}
        for d1, v1 in self.c.items():
            for d2, v2 in other.c.items():
                d = d1 + d2
                if d < -order:
                    continue
                p = v1 * v2
                if not p:
                    continue
                s = out.get(d, EpsLaurent.zero()) + p
                if s:
                    out[d] = s
                else:
                    out.pop(d, None)
        return ZSeries(out, top=top, order=order)

    def scale(self, k) -> "ZSeries":
        """Multiply every coefficient by an EpsLaurent (or scalar)."""
        k = EpsLaurent.coerce(k)
        return ZSeries({d: v * k for d, v in self.c.items()}, self.top, self.order)

    def mul_zpow(self, k: int) -> "ZSeries":
        """Multiply by z^k (shifts the window)."""
        return ZSeries(
            {d + k: v for d, v in self.c.items()},
            top=self.top + k,
            order=self.order - k,
        )

    def truncate(self, order: int) -> "ZSeries":
        if order > self.order:
            raise WindowError("cannot enlarge a truncation window")
        return ZSeries({d: v for d, v in self.c.items() if d >= -order}, self.top, order)

    # -- analytic-style operations -----------------------------------------

    def shift(self, cshift: int) -> "ZSeries":
        """Expansion of z -> a(z + c): (z+c)^d expanded binomially, truncated."""
        if cshift == 0:
            return self
        out: dict[int, EpsLaurent] = {}
        for d, v in self.c.items():
            # (z+c)^d = sum_m binom(d, m) c^m z^(d-m), generalized binomial
            binom = Fraction(1)
            m = 0
            while d - m >= -self.order:
                if binom:
                    t = v * (binom * Fraction(cshift) ** m)
                    if t:
                        e = d - m
                        s = out.get(e, EpsLaurent.zero()) + t
                        if s:
                            out[e] = s
                        else:
                            out.pop(e, None)
                binom = binom * Fraction(d - m, m + 1)
                m += 1
                if d >= 0 and m > d:
                    break
        return ZSeries(out, top=self.top, order=self.order)

    def invert(self) -> "ZSeries":
        """Inverse of a series with constant term 1 and no positive part."""
        if self.top > 0 or self.coeff(0) != ONE:
            raise ValueError("invert requires constant term 1 and top degree <= 0")
        u = ZSeries({d: -v for d, v in self.c.items() if d != 0}, top=-1, order=self.order)
        # geometric series 1/(1-u) = sum u^k; u^k only reaches order -k
        acc = ZSeries.const(1, self.order)
        term = ZSeries.const(1, self.order)
        for _ in range(self.order):
            term = ZSeries(
                (term * u).c, top=0, order=self.order
            )  # window is exact here: u has top -1
            if term.is_zero():
                break
            acc = acc + term
        return ZSeries(acc.c, top=0, order=self.order)

    def invert_unit_leading(self) -> "ZSeries":
        """Inverse of a series whose top coefficient is a monomial in eps.

        Factors out the leading monomial c*eps^k*z^top and inverts the rest.
        """
        lead = self.c.get(self.top)
        if lead is None or len(lead.c) != 1:
            raise ValueError("leading coefficient must be a single eps-monomial")
        (e, v), = lead.c.items()
        inv_lead = EpsLaurent.mono(-e, 1 / v)
        body = self.mul_zpow(-self.top).scale(inv_lead)  # constant term 1
        return body.invert().scale(inv_lead).mul_zpow(-self.top)

    def exp(self) -> "ZSeries":
        """exp of a series with top degree <= -1."""
        if any(d >= 0 for d in self.c):
            raise ValueError("exp requires top degree <= -1")
        acc = ZSeries.const(1, self.order)
        term = ZSeries.const(1, self.order)
        for k in range(1, self.order + 1):
            term = ZSeries((term * self).c, top=0, order=self.order)
            if term.is_zero():
                break
            acc = acc + term.scale(Fraction(1, factorial(k)))
        return ZSeries(acc.c, top=0, order=self.order)

    def deriv(self) -> "ZSeries":
        """Termwise d/dz; the window deepens by one order."""
        out = {}
        for d, v in self.c.items():
            if d != 0:
                out[d - 1] = v * d
        return ZSeries(out, top=self.top - 1, order=self.order + 1)


def log1p_inv_z(order: int) -> ZSeries:
    """Series of log(1 + 1/z)."""
    return ZSeries(
        {-m: EpsLaurent.const(Fraction((-1) ** (m + 1), m)) for m in range(1, order + 1)},
        top=-1,
        order=order,
    )


class LogSeries:
    """P(z) + Q(z)*log(eps*z) with the log symbol never expanded."""

    __slots__ = ("plain", "logpart")

    def __init__(self, plain: ZSeries, logpart: ZSeries):
        self.plain = plain
        self.logpart = logpart

    def deriv(self) -> "LogSeries":
        p, q = self.plain, self.logpart
        return LogSeries(p.deriv() + q.mul_zpow(-1), q.deriv())

    def log_free(self) -> bool:
        return self.logpart.is_zero()
