"""Each entry of the gauge P satisfies its own Mahler equation.

Run with:  python demos/entry_equation.py
"""

from mahler import (QQ, MahlerEquation, admissible_pair, build_companion, entry_equation,
                    extend_P, parse_expression)

eq = MahlerEquation(2, [parse_expression(c, QQ) for c in ["1", "z-1", "-2*z"]], QQ)
sys_ = build_companion(eq)
pair = admissible_pair(sys_)

for i, j in [(0, 0), (0, 1)]:
    e = entry_equation(pair, sys_, i, j)
    h = extend_P(pair, sys_, 30).P[i][j]
    print("P[%d][%d] = %s" % (i, j, h.truncate(8).format()))
    print("   annihilated by", e)
    r = e.apply(h, 14).truncate(14)
    print("   residual through order 14:", r.format() if r.coeffs else "0")
    print()
