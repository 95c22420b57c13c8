"""Arbitrary-precision numerics: Bessel functions, Charlier polynomials, and
checks tying them to the formal wave expansions.

The polynomials are orthogonal with respect to the Poisson-type measure with
atoms at n + 1/2 (n >= 0) and weights e^(-a) a^n / n!; they are monic with
norm a^l * l!.  The module also evaluates the two numeric wave functions

    g(z) = sqrt(2*pi/eps) * J_{z+1/2}(2/eps)
    f(z) = sqrt(pi/(2*eps)) * J_{-z-1/2}(2/eps) / cos(pi*z)

which satisfy the same second-order difference equation as the formal waves
and have unit Wronskian, and it validates the scaling limit

    lim_L  pi_{L+l}(L + zeta; 1/(L eps^2)) / Gamma(L + zeta + 1/2)
         = eps^(zeta - l - 1/2) * J_{zeta - l - 1/2}(2/eps).

All truncated sums carry explicit tail bounds; precision is always an
explicit argument, applied through a local working-precision context.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from mpmath import mp

from .waves import solve_formal_wave

_GUARD_BITS = 30


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x).limit_denominator(10**12)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def _to_mpf(x):
    if isinstance(x, Fraction):
        return mp.mpf(x.numerator) / x.denominator
    return mp.mpf(x)


# ---------------------------------------------------------------------------
# Gamma and Bessel
# ---------------------------------------------------------------------------

def gamma_real(x, prec: int):
    """Gamma(x) at `prec` bits; errors on nonpositive-integer poles."""
    with mp.workprec(prec + _GUARD_BITS):
        xm = _to_mpf(x)
        if xm <= 0 and xm == mp.floor(xm):
            raise ValueError(f"Gamma pole at {x}")
        val = mp.gamma(xm)
    with mp.workprec(prec):
        return +val


def bessel_j(nu, x, prec: int):
    """J_nu(x) by its power series with an explicit geometric tail bound.

    Terms with nu+m+1 at a pole of Gamma contribute zero via the reciprocal
    Gamma.  Summation stops once the ratio bound certifies the remainder
    below the target precision.
    """
    with mp.workprec(prec + _GUARD_BITS):
        nu_m = _to_mpf(nu)
        x_m = _to_mpf(x)
        if x_m <= 0:
            raise ValueError("x must be positive")
        half = x_m / 2
        quarter_sq = half * half
        acc = mp.mpf(0)
        scale = mp.power(half, nu_m)
        m = 0
        m_fact = mp.mpf(1)
        max_abs = mp.mpf(0)
        while True:
            term = scale * (-1) ** m * quarter_sq**m / m_fact * mp.rgamma(nu_m + m + 1)
            acc += term
            max_abs = max(max_abs, abs(term))
            m += 1
            m_fact *= m
            # once m+nu is safely positive the term magnitudes decay faster
            # than a ratio-1/2 geometric series; bound the whole remainder
            if nu_m + m + 1 > 0 and m > 1:
                ratio = quarter_sq / (m * (nu_m + m))
                if ratio < mp.mpf(1) / 2:
                    next_bound = abs(scale) * quarter_sq**m / m_fact * abs(
                        mp.rgamma(nu_m + m + 1)
                    )
                    if next_bound * 2 < max(max_abs, abs(acc)) * mp.mpf(2) ** (
                        -(prec + _GUARD_BITS)
                    ) + mp.mpf(2) ** (-(prec + 4 * _GUARD_BITS)):
                        break
            if m > 10 * (prec + int(abs(nu_m)) + int(x_m) + 10):
                raise RuntimeError("Bessel series failed to converge")
    with mp.workprec(prec):
        return +acc


# ---------------------------------------------------------------------------
# Charlier polynomials (exact)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CharlierPolynomial:
    """Monic degree-l orthogonal polynomial for the half-shifted Poisson atoms."""

    ell: int
    a: Fraction
    coefficients: tuple[Fraction, ...]  # ascending powers of x

    def eval_exact(self, x: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def eval_mpf(self, x):
        acc = mp.mpf(0)
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def abs_eval(self, x):
        """Upper bound sum |c_i| x^i, monotone for x > 0 (for tail bounds)."""
        acc = mp.mpf(0)
        for c in reversed(self.coefficients):
            acc = acc * x + abs(c)
        return acc


def _poly_mul_linear(poly: list[Fraction], c0: Fraction) -> list[Fraction]:
    """Multiply a coefficient list by (c0 - x)."""
    out = [Fraction(0)] * (len(poly) + 1)
    for i, v in enumerate(poly):
        out[i] += c0 * v
        out[i + 1] -= v
    return out


def charlier_poly(ell: int, a) -> CharlierPolynomial:
    """pi_l(x; a) = (-a)^l sum_i [(-l)_i (1/2 - x)_i / i!] (-1/a)^i, exact."""
    a = _as_fraction(a)
    if ell < 0:
        raise ValueError("degree must be >= 0")
    if a <= 0:
        raise ValueError("parameter a must be positive")
    total = [Fraction(0)] * (ell + 1)
    rising = [Fraction(1)]  # (1/2 - x)_i as a coefficient list
    poch = Fraction(1)  # (-l)_i
    inv = Fraction(1)  # (-1/a)^i
    for i in range(ell + 1):
        coef = poch * inv / factorial(i)
        if coef:
            for j, v in enumerate(rising):
                total[j] += coef * v
        if i < ell:
            rising = _poly_mul_linear(rising, Fraction(1, 2) + i)
            poch *= -ell + i
            inv *= Fraction(-1) / a
    lead = Fraction(-a) ** ell
    coeffs = tuple(lead * c for c in total)
    if coeffs[-1] != 1:
        raise RuntimeError("explicit sum failed to produce a monic polynomial")
    return CharlierPolynomial(ell, a, coeffs)


def charlier_poly_recurrence(ell: int, a) -> CharlierPolynomial:
    """Same polynomial from the monic three-term recurrence
    p_{n+1} = (x - (n + a + 1/2)) p_n - n*a*p_{n-1}  (independent oracle)."""
    a = _as_fraction(a)
    if a <= 0:
        raise ValueError("parameter a must be positive")
    prev = [Fraction(1)]
    if ell == 0:
        return CharlierPolynomial(0, a, tuple(prev))
    cur = [-a - Fraction(1, 2), Fraction(1)]
    for n in range(1, ell):
        b_n = n + a + Fraction(1, 2)
        nxt = [Fraction(0)] * (len(cur) + 1)
        for i, v in enumerate(cur):
            nxt[i + 1] += v
            nxt[i] -= b_n * v
        for i, v in enumerate(prev):
            nxt[i] -= n * a * v
        prev, cur = cur, nxt
    return CharlierPolynomial(ell, a, tuple(cur))


def charlier_orthogonality_sum(ell: int, ellp: int, a, tol, prec: int = 128):
    """(sum, target): the pairing of pi_l and pi_l' against the atom weights,
    alongside the exact norm a^l l! delta_{l,l'}.

    The truncation index is raised until a geometric bound certifies the
    discarded tail below tol/4; failing that is an error.
    """
    a = _as_fraction(a)
    p = charlier_poly(ell, a)
    q = charlier_poly(ellp, a)
    deg = ell + ellp
    with mp.workprec(prec + _GUARD_BITS):
        tol_m = _to_mpf(tol)
        if tol_m <= 0:
            raise ValueError("tol must be positive")
        a_m = mp.mpf(a.numerator) / a.denominator
        weight = mp.e ** (-a_m)  # running e^(-a) a^n / n!
        acc = mp.mpf(0)
        n = 0
        n_cap = 64 * (prec + deg + int(a_m) + 4)
        while True:
            x = mp.mpf(2 * n + 1) / 2
            acc += p.eval_mpf(x) * q.eval_mpf(x) * weight
            n += 1
            weight *= a_m / n
            if a_m / (n + 1) < mp.mpf(1) / 2:
                # growth of the absolute-coefficient majorant per unit step
                g = (1 + 1 / (n + mp.mpf(1) / 2)) ** deg
                r = (a_m / (n + 1)) * g
                if r < mp.mpf(1) / 2:
                    x = mp.mpf(2 * n + 1) / 2
                    tail = p.abs_eval(x) * q.abs_eval(x) * weight / (1 - r)
                    if tail < tol_m / 4:
                        break
            if n > n_cap:
                raise RuntimeError(
                    "tail bound unachievable at the requested tolerance"
                )
        target = a_m**ell * factorial(ell) if ell == ellp else mp.mpf(0)
    with mp.workprec(prec):
        return +acc, +target


def charlier_orthogonality_check(ell: int, ellp: int, a, tol, prec: int = 128) -> bool:
    """True when the pairing matches the norm a^l l! delta within tol."""
    acc, target = charlier_orthogonality_sum(ell, ellp, a, tol, prec)
    with mp.workprec(prec + _GUARD_BITS):
        return bool(abs(acc - target) <= _to_mpf(tol))


# ---------------------------------------------------------------------------
# Numeric wave functions
# ---------------------------------------------------------------------------

def numeric_f_g(z, eps, prec: int):
    """(f(z), g(z)) through the Bessel representations at `prec` bits.

    Errors when z + 1/2 is too close to an integer, where the connection
    formula behind the f-representative degenerates.
    """
    with mp.workprec(prec + _GUARD_BITS):
        z_m = _to_mpf(z)
        eps_m = _to_mpf(eps)
        if eps_m <= 0:
            raise ValueError("eps must be positive")
        nu = z_m + mp.mpf(1) / 2
        if abs(nu - mp.nint(nu)) < mp.mpf(2) ** (-prec // 2):
            raise ValueError(
                "z + 1/2 is too close to an integer; perturb the evaluation point"
            )
        x = 2 / eps_m
        g = mp.sqrt(2 * mp.pi / eps_m) * bessel_j(nu, x, prec + _GUARD_BITS)
        f = (
            mp.sqrt(mp.pi / (2 * eps_m))
            * bessel_j(-nu, x, prec + _GUARD_BITS)
            / mp.cos(mp.pi * z_m)
        )
    with mp.workprec(prec):
        return +f, +g


def difference_equation_residual(z, eps, prec: int, which: str = "f"):
    """|w(z+1) + w(z-1) - eps*(z+1/2)*w(z)| for the numeric f or g."""
    idx = {"f": 0, "g": 1}[which]
    with mp.workprec(prec + _GUARD_BITS):
        z_m = _to_mpf(z)
        eps_m = _to_mpf(eps)
        w_up = numeric_f_g(z_m + 1, eps_m, prec + _GUARD_BITS)[idx]
        w_dn = numeric_f_g(z_m - 1, eps_m, prec + _GUARD_BITS)[idx]
        w_0 = numeric_f_g(z_m, eps_m, prec + _GUARD_BITS)[idx]
        res = abs(w_up + w_dn - eps_m * (z_m + mp.mpf(1) / 2) * w_0)
    with mp.workprec(prec):
        return +res


def numeric_wronskian(z, eps, prec: int):
    """f(z)g(z-1) - f(z-1)g(z); identically 1 for the normalized pair."""
    with mp.workprec(prec + _GUARD_BITS):
        z_m = _to_mpf(z)
        eps_m = _to_mpf(eps)
        f1, g1 = numeric_f_g(z_m, eps_m, prec + _GUARD_BITS)
        f0, g0 = numeric_f_g(z_m - 1, eps_m, prec + _GUARD_BITS)
        w = f1 * g0 - f0 * g1
    with mp.workprec(prec):
        return +w


# ---------------------------------------------------------------------------
# Numeric-vs-formal asymptotics
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AsymptoticReport:
    z: float
    eps: float
    order: int
    numeric: object
    formal: object
    abs_error: object
    rel_error: object

    def to_json(self) -> dict:
        return {
            "input": {"z": self.z, "eps": self.eps, "order": self.order},
            "value": mp.nstr(self.numeric, 17),
            "target": mp.nstr(self.formal, 17),
            "abs_error": mp.nstr(self.abs_error, 6),
            "rel_error": mp.nstr(self.rel_error, 6),
        }


def asymptotic_match_check(z, eps, order: int, prec: int) -> AsymptoticReport:
    """Compare (eps*z/e)^(-z) f(z) against the truncated formal wave series."""
    with mp.workprec(prec + _GUARD_BITS):
        z_m = _to_mpf(z)
        eps_m = _to_mpf(eps)
        f, _ = numeric_f_g(z_m, eps_m, prec + _GUARD_BITS)
        numeric = f * mp.power(eps_m * z_m / mp.e, -z_m)
        h = solve_formal_wave(+1, max(order, 1)).h
        formal = mp.mpf(0)
        for d in range(h.top, -order - 1, -1):
            formal += h.coeff(d).eval(eps_m) * mp.power(z_m, d)
        abs_err = abs(numeric - formal)
        rel_err = abs_err / abs(numeric)
    with mp.workprec(prec):
        return AsymptoticReport(
            float(z), float(eps), order, +numeric, +formal, +abs_err, +rel_err
        )


# ---------------------------------------------------------------------------
# Scaling limit
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ScalingLimitReport:
    zeta: object
    ell: int
    eps: object
    target: object
    rows: tuple  # (L, value, abs_error)
    monotone_decreasing: bool

    def to_json(self) -> dict:
        return {
            "input": {"zeta": str(self.zeta), "ell": self.ell, "eps": str(self.eps)},
            "target": mp.nstr(self.target, 17),
            "rows": [
                {"L": L, "value": mp.nstr(v, 17), "abs_error": mp.nstr(e, 6)}
                for (L, v, e) in self.rows
            ],
            "monotone_decreasing": self.monotone_decreasing,
        }


def charlier_scaling_limit_check(zeta, ell: int, eps, L_list, prec: int) -> ScalingLimitReport:
    """Ratio pi_{L+l}(L + zeta; 1/(L eps^2)) / Gamma(L + zeta + 1/2) along L_list
    against eps^(zeta - l - 1/2) J_{zeta - l - 1/2}(2/eps).

    The polynomial values are computed exactly over rationals; only the Gamma
    division and the Bessel target are floating point.
    """
    zeta_q = _as_fraction(zeta)
    eps_q = _as_fraction(eps)
    if eps_q <= 0:
        raise ValueError("eps must be positive")
    L_list = sorted(int(L) for L in L_list)
    if any(L < ell + 1 for L in L_list):
        raise ValueError("every L must be at least ell + 1")
    with mp.workprec(prec + _GUARD_BITS):
        eps_m = mp.mpf(eps_q.numerator) / eps_q.denominator
        zeta_m = mp.mpf(zeta_q.numerator) / zeta_q.denominator
        mu = zeta_m - ell - mp.mpf(1) / 2
        target = mp.power(eps_m, mu) * bessel_j(mu, 2 / eps_m, prec + _GUARD_BITS)
        rows = []
        for L in L_list:
            a = Fraction(1, L) / (eps_q * eps_q)
            poly = charlier_poly(L + ell, a)
            exact = poly.eval_exact(L + zeta_q)
            num = mp.mpf(exact.numerator) / exact.denominator
            value = num / gamma_real(L + zeta_m + mp.mpf(1) / 2, prec + _GUARD_BITS)
            rows.append((L, value, abs(value - target)))
        monotone = all(rows[i][2] > rows[i + 1][2] for i in range(len(rows) - 1))
    with mp.workprec(prec):
        return ScalingLimitReport(
            zeta_q, ell, eps_q, +target,
            tuple((L, +v, +e) for (L, v, e) in rows), monotone,
        )


# ---------------------------------------------------------------------------
# Characteristic-polynomial expectations
# ---------------------------------------------------------------------------

def char_poly_expectation(L: int, a, us, prec: int = 128):
    """det( pi_{L+k-1}(u_j) )_{j,k=1..N} / prod_{j<k} (u_k - u_j)."""
    a = _as_fraction(a)
    if L < 1:
        raise ValueError("L must be >= 1")
    us = list(us)
    n = len(us)
    with mp.workprec(prec + _GUARD_BITS):
        us_m = [mp.mpf(u) for u in us]
        for i in range(n):
            for j in range(i + 1, n):
                if us_m[i] == us_m[j]:
                    raise ValueError("evaluation points must be distinct")
        polys = [charlier_poly(L + k, a) for k in range(n)]
        mat = [[polys[k].eval_mpf(us_m[j]) for k in range(n)] for j in range(n)]
        det = _det_mpf(mat)
        vdm = mp.mpf(1)
        for j in range(n):
            for k in range(j + 1, n):
                vdm *= us_m[k] - us_m[j]
        val = det / vdm
    with mp.workprec(prec):
        return +val


def _det_mpf(mat):
    n = len(mat)
    m = [row[:] for row in mat]
    det = mp.mpf(1)
    for col in range(n):
        piv = max(range(col, n), key=lambda r: abs(m[r][col]))
        if m[piv][col] == 0:
            return mp.mpf(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        for r in range(col + 1, n):
            f = m[r][col] / m[col][col]
            for c in range(col, n):
                m[r][c] -= f * m[col][c]
    return det


def brute_force_expectation(L: int, a, us, n_max: int, prec: int = 128):
    """Direct ensemble average of prod_j det(u_j - M) for L <= 2.

    Sums over atom tuples (x_i = n_i + 1/2, n_i <= n_max) of the squared
    Vandermonde times the product weights, normalized by the same truncated
    partition sum.  The last shell n_i = n_max must sit below a ratio-1/2
    geometric bound relative to the accumulated sums, otherwise an error asks
    for a larger n_max.
    """
    a = _as_fraction(a)
    if L not in (1, 2):
        raise ValueError("brute force supports L = 1 or 2 only")
    us = list(us)
    with mp.workprec(prec + _GUARD_BITS):
        a_m = mp.mpf(a.numerator) / a.denominator
        if a_m / (n_max + 1) >= mp.mpf(1) / 4:
            raise ValueError("n_max too small for a convergent tail bound")
        us_m = [mp.mpf(u) for u in us]
        weights = []
        w = mp.e ** (-a_m)
        for nn in range(n_max + 1):
            weights.append(w)
            w *= a_m / (nn + 1)
        xs = [mp.mpf(2 * nn + 1) / 2 for nn in range(n_max + 1)]
        dets = [mp.fprod(u - x for u in us_m) for x in xs]
        if L == 1:
            num = mp.fsum(d * w for d, w in zip(dets, weights))
            den = mp.fsum(weights)
            shell = abs(dets[-1] * weights[-1]) + weights[-1]
        else:
            num = mp.mpf(0)
            den = mp.mpf(0)
            shell = mp.mpf(0)
            for i in range(n_max + 1):
                for j in range(n_max + 1):
                    vdm2 = (xs[i] - xs[j]) ** 2
                    ww = weights[i] * weights[j]
                    num += dets[i] * dets[j] * vdm2 * ww
                    den += vdm2 * ww
                    if i == n_max or j == n_max:
                        shell += abs(dets[i] * dets[j] * vdm2 * ww) + vdm2 * ww
        # ratio-1/4 weight decay makes each further shell at most ~half the
        # previous one even against polynomial growth, so 2*shell bounds the tail
        if 2 * shell > abs(den) * mp.mpf(2) ** (-prec // 2):
            raise ValueError("truncation tail too large; increase n_max")
        val = num / den
    with mp.workprec(prec):
        return +val
