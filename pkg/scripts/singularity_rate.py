"""Local log-log slope of u_0(1, y) for E1 as y -> 0+.

Prints the fitted slope on decade windows next to b and the envelope rate
b + 1/12 predicted by the large-argument behaviour of 0F1(; 2/3; -w).
"""

import argparse
import math

import mpmath

from selfsim import EquationSpec, build_solution, derive_params, eval_solution
from selfsim.sampling import log_grid


def fit_slope(ys, vals):
    lx = [math.log(y) for y in ys]
    ly = [math.log(abs(v)) for v in vals]
    mx, my = sum(lx) / len(lx), sum(ly) / len(ly)
    num = sum((a - mx) * (b - my) for a, b in zip(lx, ly))
    return num / sum((a - mx) ** 2 for a in lx)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--lo", type=float, default=1e-6)
    ap.add_argument("--hi", type=float, default=1e-2)
    ap.add_argument("--points", type=int, default=1200)
    args = ap.parse_args()

    spec = EquationSpec(1, 3, 1, 0, 0)
    b = float(derive_params(spec).b)
    sol = build_solution(spec, 0, 0)
    ys = log_grid(args.lo, args.hi, args.points)
    vals = [eval_solution(sol, 1, y) for y in ys]

    flips = sum(1 for v0, v1 in zip(vals, vals[1:]) if mpmath.sign(v0) != mpmath.sign(v1))
    print(f"b = {b:.6f}   envelope rate b + 1/12 = {b + 1 / 12:.6f}")
    print(f"sign changes of u_0(1, y) on [{args.lo:.0e}, {args.hi:.0e}]: {flips}")

    decades = [d for d in range(round(math.log10(args.lo)), round(math.log10(args.hi)), 2)]
    print(f"{'window':>22}  {'plain fit':>9}  {'envelope fit':>12}")
    for d in decades:
        lo, hi = 10.0 ** d, 10.0 ** (d + 2)
        idx = [k for k, y in enumerate(ys) if lo <= y <= hi]
        sub_y = [ys[k] for k in idx]
        sub_v = [vals[k] for k in idx]
        # local maxima of |u| trace the oscillation envelope
        peaks = [k for k in range(1, len(sub_v) - 1)
                 if abs(sub_v[k]) >= abs(sub_v[k - 1]) and abs(sub_v[k]) >= abs(sub_v[k + 1])]
        plain = fit_slope(sub_y, sub_v) if all(v != 0 for v in sub_v) else float("nan")
        env = fit_slope([sub_y[k] for k in peaks], [sub_v[k] for k in peaks]) if len(peaks) > 2 else float("nan")
        print(f"[{lo:8.0e}, {hi:8.0e}]  {plain:9.4f}  {env:12.4f}")


if __name__ == "__main__":
    main()
