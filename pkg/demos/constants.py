"""Constant systems phi(Y) = C Y, including one that needs Q(i).

Run with:  python demos/constants.py
"""

from mahler import QQ, dunford, exp_constant
from mahler.constants import check_exp


def show(name, C):
    E, K = exp_constant(C, QQ)
    D, U, _, _ = dunford(C, QQ)
    print(name, "over", K)
    print("   D =", [[K.format(x) for x in row] for row in D])
    print("   U =", [[K.format(x) for x in row] for row in U])
    for row in E:
        print("   ", " | ".join(x.format() for x in row))
    print("   phi(e_C) == C e_C:", check_exp(C, E))


show("rotation", [[0, 1], [-1, 0]])
show("Jordan block", [[1, 1], [0, 1]])
show("mixed", [[2, 1, 0], [0, 2, 0], [0, 0, 3]])
