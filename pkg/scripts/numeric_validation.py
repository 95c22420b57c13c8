#!/usr/bin/env python3
"""Numeric sanity sweep: difference-equation residuals, Wronskian, asymptotic
error decay, and the discrete-ensemble scaling limit, printed as a report.
"""

import argparse
import sys

sys.path.insert(0, "src")

from fractions import Fraction

from mpmath import mp

from gwp1.charlier import (
    asymptotic_match_check,
    charlier_scaling_limit_check,
    difference_equation_residual,
    numeric_wronskian,
)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--prec", type=int, default=160)
    args = ap.parse_args()
    prec = args.prec

    print("difference-equation residuals (should sit at precision level)")
    for z in ("5.25", "10.25", "20.25"):
        for eps in (Fraction(1, 2), Fraction(1), Fraction(2)):
            rf = difference_equation_residual(mp.mpf(z), eps, prec, "f")
            rg = difference_equation_residual(mp.mpf(z), eps, prec, "g")
            print(f"  z={z:>6} eps={str(eps):>4}  f: {mp.nstr(rf, 3):>12}  g: {mp.nstr(rg, 3):>12}")

    print("\nWronskian deviation from 1")
    for z in ("7.25", "12.25"):
        w = numeric_wronskian(mp.mpf(z), 1, prec)
        print(f"  z={z:>6}  |W-1| = {mp.nstr(abs(w - 1), 3)}")

    print("\nformal-series truncation error vs z (order 3: expect ~z^-4 decay)")
    prev = None
    for z in (20, 40, 80):
        rep = asymptotic_match_check(z, 1, 3, prec)
        ratio = "" if prev is None else f"  ratio vs half-z: {mp.nstr(prev / rep.abs_error, 4)}"
        print(f"  z={z:>3}  abs err {mp.nstr(rep.abs_error, 4)}{ratio}")
        prev = rep.abs_error

    print("\nscaling limit of the discrete orthogonal ensemble")
    rep = charlier_scaling_limit_check(0, 0, 1, [20, 40, 80, 160], prec)
    print(f"  target {mp.nstr(rep.target, 12)}")
    for L, v, e in rep.rows:
        print(f"  L={L:>4}  value {mp.nstr(v, 12)}  err {mp.nstr(e, 4)}")
    print(f"  monotone decrease: {rep.monotone_decreasing}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
