"""Walk through y(z) + (z-1) y(z^2) - 2z y(z^4) = 0 step by step.

Run with:  python demos/rs_walkthrough.py
"""

from mahler import (admissible_pair, build_companion, compute_H, exp_constant, extend_P,
                    parse_expression, solve_equation, verify_basis, window_params, QQ,
                    MahlerEquation)

eq = MahlerEquation(2, [parse_expression(c, QQ) for c in ["1", "z-1", "-2*z"]], QQ)
print("equation:", eq)

sys_ = build_companion(eq)
params = window_params(sys_)
print("\nwindow (nu_P, nu_Theta, nu, mu):", params.as_tuple(), " N =", params.N)

# The subspace fixpoint hands back a gauge P and a Laurent-polynomial Theta.
pair = admissible_pair(sys_)
print("\nX_k dimensions:", [X.dim for X in pair.trace["X"]])
print("Theta:")
for row in pair.theta:
    print("   ", [t.format() for t in row])

# P is known to order mu at first; the block recurrence extends it.
longer = extend_P(pair, sys_, 8)
print("P to order 8:")
for row in longer.P:
    print("   ", [f.format() for f in row])

# Theta is upper triangular with constant diagonal, so H solves phi(H) C = Theta H.
H = compute_H(pair.theta, QQ, 2)
print("\nH[0][1] =", H[0][1].format())

res = solve_equation(eq, 8)
C = res.provenance["C"]
print("C =", [[str(x) for x in row] for row in C])
E, _ = exp_constant(C, QQ)
print("e_C =", [[x.format() for x in row] for row in E])
print("\nbasis:")
print(res.format())
print("\ncheck:", verify_basis(eq, res))
