"""Stationary descendent invariants from the connected correlation series.

The one-point series comes from the derivative pairing of the wave quartet;
n-point values come from cyclic products of the two-variable kernel divided by
the variable differences, expanded in the nested region |z_1| > ... > |z_n|,
with the relevant coefficient extracted exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import factorial

from .epslaurent import EpsLaurent
from .multiseries import NEG_INF, MultiSeries
from .waves import normalized_quartet, s1_series
from .zseries import WindowError, ZSeries


@dataclass(frozen=True)
class InvariantRecord:
    ks: tuple[int, ...]
    value: EpsLaurent
    order: int
    stability_checked: bool


def _weight(ks) -> EpsLaurent:
    """Per-insertion residue weight eps^k / (k+1)!.

    The multi-point series built from the projector matrix carries no overall
    eps power (unlike the one-point series, whose display has an explicit
    1/eps), so the eps^(k+1) of the residue integrand combines with a 1/eps
    per variable; the normalization is calibrated on <tau_0 tau_0> = eps^-2.
    """
    w = EpsLaurent.one()
    for k in ks:
        w = w * EpsLaurent.mono(k, Fraction(1, factorial(k + 1)))
    return w


@lru_cache(maxsize=None)
def one_point_invariant(k: int) -> InvariantRecord:
    """<tau_k> extracted from the z^(-k-2) coefficient of the one-point series."""
    if k < 0:
        raise ValueError("k must be >= 0")
    order = k + 3
    s1 = s1_series(order)
    # the one-point series already carries its 1/eps, so the full residue
    # weight eps^(k+1)/(k+1)! applies
    value = EpsLaurent.mono(k + 1, Fraction(1, factorial(k + 1))) * s1.coeff(-k - 2)
    return InvariantRecord((k,), value, order, True)


def _kernel_factor(i: int, j: int, n: int, order: int) -> MultiSeries:
    """K(z_i, z_j) = A(z_i)B(z_j) - Atilde(z_i)Btilde(z_j) as an n-variable series."""
    a, at, b, bt = normalized_quartet(order)
    lo = [NEG_INF] * n
    lo[i] = lo[j] = -order
    coeffs: dict[tuple, EpsLaurent] = {}
    for di, vi in a.c.items():
        for dj, vj in b.c.items():
            t = [0] * n
            t[i], t[j] = di, dj
            coeffs[tuple(t)] = vi * vj
    for di, vi in at.c.items():
        for dj, vj in bt.c.items():
            t = [0] * n
            t[i], t[j] = di, dj
            key = tuple(t)
            s = coeffs.get(key, EpsLaurent.zero()) - vi * vj
            if s:
                coeffs[key] = s
            else:
                coeffs.pop(key, None)
    return MultiSeries(n, coeffs, lo, hi=(0,) * n, hi_tot=0)


def _cycle_coefficient(ks: tuple[int, ...], order: int) -> EpsLaurent:
    """Sum over cycles through all variables of the kernel/difference product,
    evaluated at the coefficient of prod_j z_j^(-k_j - 2)."""
    n = len(ks)
    target = tuple(-k - 2 for k in ks)
    m_cap = 2 * order + max(ks) + 2
    total = EpsLaurent.zero()
    for rest in permutations(range(1, n)):
        cyc = (0,) + rest
        factors = []
        sign = 1
        for idx in range(n):
            i, j = cyc[idx], cyc[(idx + 1) % n]
            factors.append(_kernel_factor(i, j, n, order))
            lo_v, hi_v = (i, j) if i < j else (j, i)
            if i > j:
                sign = -sign
            factors.append(MultiSeries.inverse_difference(n, lo_v, hi_v, m_cap))
        # multiply in cycle order; variable cyc[idx] is complete once both of
        # its edges are in, so project it to its target exponent immediately
        acc = factors[0].mul(factors[1])
        done = [False] * n
        for idx in range(1, n):
            v = cyc[idx]
            bounds = _remaining_bounds(factors[2 * idx + 1 :], target, done, n)
            acc = acc.mul(factors[2 * idx], keep=_keeper(bounds, done))
            bounds = _remaining_bounds(factors[2 * idx + 2 :], target, done, n)
            acc = acc.mul(factors[2 * idx + 1], keep=_keeper(bounds, done))
            acc = acc.project(v, target[v])
            done[v] = True
        total = total + sign * acc.coeff(tuple(0 if done[v] else target[v] for v in range(n)))
    return total


def _remaining_bounds(remaining, target, done, n):
    """Per-variable [min, max] exponent still to come from the remaining factors."""
    bounds = []
    for v in range(n):
        if done[v]:
            bounds.append(None)
            continue
        lo = hi = 0
        for f in remaining:
            if any(t[v] for t in f.c):
                lo += f.bot(v)
                hi += f.sup(v)
        bounds.append((target[v] - hi, target[v] - lo))
    return bounds


def _keeper(bounds, done):
    def keep(t):
        for v, b in enumerate(bounds):
            if b is None:
                continue
            if not b[0] <= t[v] <= b[1]:
                return False
        return True

    return keep


@lru_cache(maxsize=None)
def n_point_invariant(ks: tuple[int, ...], check_stability: bool = True) -> InvariantRecord:
    """Connected stationary invariant <tau_{k_1} ... tau_{k_n}>.

    The truncation order is chosen from the weights; with check_stability the
    computation is repeated at doubled order and must agree exactly.
    """
    ks = tuple(int(k) for k in ks)
    if any(k < 0 for k in ks):
        raise ValueError("all k must be >= 0")
    if len(ks) == 0:
        raise ValueError("need at least one insertion")
    if len(ks) == 1:
        return one_point_invariant(ks[0])
    order = sum(k + 2 for k in ks) + len(ks)
    value = -_weight(ks) * _cycle_coefficient(ks, order)
    if check_stability:
        value2 = -_weight(ks) * _cycle_coefficient(ks, 2 * order)
        if value != value2:
            raise WindowError(
                f"invariant for ks={ks} did not stabilize between orders "
                f"{order} and {2 * order}"
            )
    return InvariantRecord(ks, value, order, check_stability)


def invariant_by_genus(ks) -> dict[int, Fraction]:
    """Split an invariant into genus contributions: genus g sits at eps^(2g-2)."""
    rec = n_point_invariant(tuple(ks))
    out: dict[int, Fraction] = {}
    for e in rec.value.exponents():
        if (e + 2) % 2 != 0 or e < -2:
            raise ValueError(f"unexpected eps-exponent {e} in invariant {ks}")
        out[(e + 2) // 2] = rec.value[e]
    return out


def free_energy(max_weight: int) -> dict[tuple[int, ...], EpsLaurent]:
    """Coefficients of the generating function in the time variables t_k.

    Returns, for every multiset ks with total weight sum(k+1) <= max_weight,
    the coefficient of prod t_k (divided by the automorphism factor of the
    multiset), i.e. <tau_{k_1}...tau_{k_n}> / prod_k m_k!.
    """
    out: dict[tuple[int, ...], EpsLaurent] = {}
    for ks in _weighted_multisets(max_weight):
        aut = Fraction(1)
        for k in set(ks):
            aut *= factorial(ks.count(k))
        rec = n_point_invariant(ks)
        val = rec.value * Fraction(1, aut)
        if val:
            out[ks] = val
    return out


def _weighted_multisets(max_weight: int, min_k: int = 0):
    """Nonempty sorted tuples ks with sum(k+1) <= max_weight and ks[i] >= min_k."""
    for k in range(min_k, max_weight):
        w = k + 1
        if w > max_weight:
            break
        yield (k,)
        for rest in _weighted_multisets(max_weight - w, k):
            yield (k,) + rest
